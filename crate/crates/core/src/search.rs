//! Exhaustive search for regular subgroups of `GA(r,2)` and the `(l, k)`
//! profiles of their automorphisms.
//!
//! Matrices are packed into a `u32`, row 0 in the most significant `r` bits,
//! so integer order is the order of the concatenated row bitstrings.
//!
//! Every non-identity element `(a, M)` of a regular subgroup is fixed-point
//! free, which means `a ∉ Im(M + I)`, and since the group is a 2-group `M` is
//! unipotent. Candidates for each label are filtered by both conditions.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::affine::{
    direct_product, enumerate_automorphisms, validate_regular_subgroup, GroupAutomorphism,
    RegularSubgroup,
};
use crate::error::{parse_err, Error, Result};
use crate::gf2::{parity, BitMatrix};
use crate::hamming::PointPermutation;
use crate::invariants::{
    deficiency, distension_by_parity_checks, full_report, kernel_formula, rank_formula,
    InvariantReport, OracleLevel,
};

/// Largest `r` searched without opting in.
pub const MAX_DEFAULT_R: usize = 4;
/// Largest `r` the packed representation supports.
pub const MAX_SEARCH_R: usize = 5;

/// Published `(l, k)` rows for `r = 3, 4, 5`.
pub const TABLE1_R3: &[(usize, usize)] = &[(0, 0), (1, 2), (2, 3), (3, 3)];
pub const TABLE1_R4: &[(usize, usize)] = &[(0, 0), (1, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 3)];
pub const TABLE1_R5: &[(usize, usize)] = &[
    (0, 0),
    (1, 2),
    (1, 4),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 3),
    (3, 4),
    (3, 5),
    (4, 3),
    (4, 4),
    (4, 5),
    (5, 4),
    (5, 5),
];

/// Stored `(l, k)` pairs achievable at rank `r`. Ranks 1 and 2 only admit
/// `(0, 0)`.
pub fn stored_profile(r: usize) -> Option<&'static [(usize, usize)]> {
    match r {
        1 | 2 => Some(&[(0, 0)]),
        3 => Some(TABLE1_R3),
        4 => Some(TABLE1_R4),
        5 => Some(TABLE1_R5),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Permit `r = 5`, which is slow.
    pub allow_r5: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

fn check_r(r: usize, opts: &SearchOptions) -> Result<()> {
    let max = if opts.allow_r5 {
        MAX_SEARCH_R
    } else {
        MAX_DEFAULT_R
    };
    if !(2..=max).contains(&r) {
        return Err(Error::RankOutOfRange { r, min: 2, max });
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Precondition(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Packed `r×r` matrix arithmetic.
#[derive(Clone, Copy, Debug)]
struct Packed {
    r: usize,
    row_mask: u32,
}

impl Packed {
    fn new(r: usize) -> Self {
        Self {
            r,
            row_mask: (1 << r) - 1,
        }
    }

    fn row(&self, m: u32, i: usize) -> u32 {
        (m >> ((self.r - 1 - i) * self.r)) & self.row_mask
    }

    fn pack_rows(&self, rows: impl IntoIterator<Item = u32>) -> u32 {
        rows.into_iter().fold(0, |acc, row| (acc << self.r) | row)
    }

    fn identity(&self) -> u32 {
        self.pack_rows((0..self.r).map(|i| 1 << (self.r - 1 - i)))
    }

    fn apply(&self, m: u32, v: u32) -> u32 {
        (0..self.r).fold(0, |acc, i| {
            (acc << 1) | parity(u64::from(self.row(m, i) & v))
        })
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.pack_rows((0..self.r).map(|i| {
            let ra = self.row(a, i);
            (0..self.r)
                .filter(|&j| ra >> (self.r - 1 - j) & 1 == 1)
                .fold(0, |acc, j| acc ^ self.row(b, j))
        }))
    }

    fn rank(&self, m: u32) -> usize {
        crate::gf2::rank_of_words((0..self.r).map(|i| u64::from(self.row(m, i))))
    }

    fn unpack(&self, m: u32) -> BitMatrix {
        BitMatrix::from_rows(
            self.r,
            (0..self.r).map(|i| u64::from(self.row(m, i))).collect(),
        )
        .expect("packed rows fit")
    }

    fn all(&self) -> std::ops::Range<u32> {
        0..1u32 << (self.r * self.r)
    }

    fn is_unipotent(&self, m: u32) -> bool {
        let n = m ^ self.identity();
        let mut p = n;
        for _ in 1..self.r {
            p = self.mul(p, n);
        }
        p == 0
    }

    fn is_fixed_point_free(&self, a: u32, m: u32) -> bool {
        (0..1u32 << self.r).all(|x| self.apply(m, x) ^ x != a)
    }

    fn invertibles(&self) -> Vec<u32> {
        self.all().filter(|&m| self.rank(m) == self.r).collect()
    }
}

const UNSET: u32 = u32::MAX;

/// Partial table plus the labels assigned so far.
#[derive(Clone, Copy)]
struct State {
    table: [u32; 32],
    elems: [u32; 32],
    len: usize,
}

impl State {
    fn new(n: usize) -> Self {
        let mut table = [0; 32];
        table[..n].fill(UNSET);
        Self {
            table,
            elems: [0; 32],
            len: 0,
        }
    }
}

struct Backtrack<'a> {
    p: Packed,
    n: usize,
    cands: &'a [Vec<u32>],
    /// Per-label membership bitsets over all packed matrices, for `r <= 4`.
    valid: Vec<Vec<u64>>,
}

const QUEUE: usize = 2 * 32 * 33;

impl<'a> Backtrack<'a> {
    /// Adds `(a, m)` and closes under products. Returns `false` on a label
    /// receiving two matrices or an element that cannot lie in a regular
    /// subgroup.
    fn new(p: Packed, cands: &'a [Vec<u32>]) -> Self {
        let valid = if p.r <= 4 {
            cands
                .iter()
                .map(|list| {
                    let mut bits = vec![0u64; (p.all().end as usize).div_ceil(64)];
                    for &m in list {
                        bits[m as usize / 64] |= 1 << (m % 64);
                    }
                    bits
                })
                .collect()
        } else {
            Vec::new()
        };
        Self {
            p,
            n: 1 << p.r,
            cands,
            valid,
        }
    }

    fn allowed(&self, c: u32, m: u32) -> bool {
        match self.valid.get(c as usize) {
            Some(bits) => bits[m as usize / 64] >> (m % 64) & 1 == 1,
            None => self.cands[c as usize].binary_search(&m).is_ok(),
        }
    }

    fn assign(&self, st: &mut State, a: u32, m: u32) -> bool {
        let mut queue = [(0u32, 0u32); QUEUE];
        queue[0] = (a, m);
        let (mut head, mut tail) = (0, 1);
        while head < tail {
            let (c, mc) = queue[head];
            head += 1;
            let cur = st.table[c as usize];
            if cur != UNSET {
                if cur != mc {
                    return false;
                }
                continue;
            }
            if !self.allowed(c, mc) {
                return false;
            }
            st.table[c as usize] = mc;
            st.elems[st.len] = c;
            st.len += 1;
            for &d in &st.elems[..st.len] {
                let md = st.table[d as usize];
                queue[tail] = (c ^ self.p.apply(mc, d), self.p.mul(mc, md));
                queue[tail + 1] = (d ^ self.p.apply(md, c), self.p.mul(md, mc));
                tail += 2;
            }
        }
        true
    }

    fn next_label(&self, st: &State) -> Option<usize> {
        st.table[..self.n].iter().position(|&m| m == UNSET)
    }

    fn run(&self, st: State, out: &mut Vec<Vec<u32>>) {
        let Some(a) = self.next_label(&st) else {
            out.push(st.table[..self.n].to_vec());
            return;
        };
        for &m in &self.cands[a] {
            let mut t = st;
            if self.assign(&mut t, a as u32, m) {
                self.run(t, out);
            }
        }
    }

    /// First complete table in a shuffled candidate order.
    fn run_random(&self, st: State, rng: &mut ChaCha8Rng, budget: &mut u64) -> Option<Vec<u32>> {
        let Some(a) = self.next_label(&st) else {
            return Some(st.table[..self.n].to_vec());
        };
        let mut order: Vec<u32> = self.cands[a].clone();
        order.shuffle(rng);
        for m in order {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let mut t = st;
            if self.assign(&mut t, a as u32, m) {
                if let Some(found) = self.run_random(t, rng, budget) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn root(&self) -> State {
        let mut st = State::new(self.n);
        self.assign(&mut st, 0, self.p.identity());
        st
    }
}

fn candidates(p: Packed) -> Vec<Vec<u32>> {
    let unipotent: Vec<u32> = p
        .all()
        .into_par_iter()
        .filter(|&m| p.rank(m) == p.r && p.is_unipotent(m))
        .collect();
    (0..1u32 << p.r)
        .map(|a| {
            if a == 0 {
                vec![p.identity()]
            } else {
                unipotent
                    .iter()
                    .copied()
                    .filter(|&m| p.is_fixed_point_free(a, m))
                    .collect()
            }
        })
        .collect()
}

fn search_tables(r: usize) -> Vec<Vec<u32>> {
    let p = Packed::new(r);
    let cands = candidates(p);
    let bt = Backtrack::new(p, &cands);
    let root = bt.root();
    cands[1]
        .par_iter()
        .map(|&m| {
            let mut out = Vec::new();
            let mut st = root;
            if bt.assign(&mut st, 1, m) {
                bt.run(st, &mut out);
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn to_group(p: Packed, table: &[u32]) -> Result<RegularSubgroup> {
    validate_regular_subgroup(p.r, table.iter().map(|&m| p.unpack(m)).collect())
}

/// Every regular subgroup of `GA(r,2)`, as raw tables, in backtracking
/// order. Each listed group is validated.
pub fn enumerate_regular_subgroups(r: usize, opts: SearchOptions) -> Result<Vec<RegularSubgroup>> {
    check_r(r, &opts)?;
    let p = Packed::new(r);
    with_pool(opts.jobs, || {
        search_tables(r)
            .par_iter()
            .map(|t| to_group(p, t))
            .collect::<Result<Vec<_>>>()
    })?
}

/// Number of regular subgroups, without materializing them.
pub fn count_regular_subgroups(r: usize, opts: SearchOptions) -> Result<usize> {
    check_r(r, &opts)?;
    with_pool(opts.jobs, || search_tables(r).len())
}

/// One regular subgroup per conjugacy class under `GL(r,2)`.
///
/// Conjugating by a linear map `h` carries `τ` to `hτh⁻¹`, which is a
/// coordinate permutation preserving `H`, so `(l, k)` profiles are class
/// invariants.
pub fn conjugacy_representatives(r: usize, opts: SearchOptions) -> Result<Vec<RegularSubgroup>> {
    check_r(r, &opts)?;
    let p = Packed::new(r);
    let reps = with_pool(opts.jobs, || {
        let tables = search_tables(r);
        let gl: Vec<(u32, u32)> = p
            .invertibles()
            .into_iter()
            .map(|h| (h, inverse_packed(p, h)))
            .collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut reps = Vec::new();
        for t in tables {
            if seen.contains(&t) {
                continue;
            }
            let orbit: Vec<Vec<u32>> = gl
                .par_iter()
                .map(|&(h, hi)| {
                    let mut c = vec![0u32; t.len()];
                    for (a, &m) in t.iter().enumerate() {
                        c[p.apply(h, a as u32) as usize] = p.mul(p.mul(h, m), hi);
                    }
                    c
                })
                .collect();
            seen.extend(orbit);
            reps.push(t);
        }
        reps
    })?;
    reps.iter().map(|t| to_group(p, t)).collect()
}

fn inverse_packed(p: Packed, h: u32) -> u32 {
    let inv = p.unpack(h).inverse().expect("invertible");
    p.pack_rows((0..p.r).map(|i| inv.row(i) as u32))
}

/// A regular subgroup drawn by backtracking in a shuffled candidate order,
/// or `None` when `budget` assignment attempts run out.
pub fn random_regular_subgroup(
    r: usize,
    opts: SearchOptions,
    seed: u64,
    budget: u64,
) -> Result<Option<RegularSubgroup>> {
    check_r(r, &opts)?;
    let p = Packed::new(r);
    let cands = candidates(p);
    let bt = Backtrack::new(p, &cands);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left = budget;
    bt.run_random(bt.root(), &mut rng, &mut left)
        .map(|t| to_group(p, &t))
        .transpose()
}

/// Draws random regular subgroups until one has an automorphism with the
/// given `(l, k)`. Elementary abelian groups are skipped since their
/// automorphism groups are all of `GL(r,2)`.
pub fn hunt_witness(
    r: usize,
    lk: (usize, usize),
    opts: SearchOptions,
    seed: u64,
    attempts: usize,
) -> Result<Option<Witness>> {
    check_r(r, &opts)?;
    let p = Packed::new(r);
    let cands = candidates(p);
    let bt = Backtrack::new(p, &cands);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut left = 1 << 20;
        let Some(table) = bt.run_random(bt.root(), &mut rng, &mut left) else {
            continue;
        };
        let group = to_group(p, &table)?;
        if (0..group.order() as u32).all(|a| group.element(a).order() <= 2) {
            continue;
        }
        for aut in enumerate_automorphisms(&group)? {
            if lk_of(aut.tau())? == lk {
                return Ok(Some(Witness {
                    group,
                    automorphism: aut,
                    lk,
                }));
            }
        }
    }
    Ok(None)
}

/// `(l, k)` of every automorphism-induced permutation of `group`.
pub fn lk_profile(group: &RegularSubgroup) -> Result<BTreeSet<(usize, usize)>> {
    let mut cache = HashMap::new();
    lk_profile_cached(group, &mut cache)
}

fn lk_of(tau: &PointPermutation) -> Result<(usize, usize)> {
    Ok((distension_by_parity_checks(tau), deficiency(tau)?))
}

fn lk_profile_cached(
    group: &RegularSubgroup,
    cache: &mut HashMap<Vec<u32>, (usize, usize)>,
) -> Result<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    for aut in enumerate_automorphisms(group)? {
        let key = aut.tau().table().to_vec();
        let lk = match cache.get(&key) {
            Some(&lk) => lk,
            None => {
                let lk = lk_of(aut.tau())?;
                cache.insert(key, lk);
                lk
            }
        };
        out.insert(lk);
    }
    Ok(out)
}

/// A regular subgroup together with one automorphism.
#[derive(Clone, Debug)]
pub struct Witness {
    pub group: RegularSubgroup,
    pub automorphism: GroupAutomorphism,
    pub lk: (usize, usize),
}

/// Profiles of all groups, plus the first witness found for each pair.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub r: usize,
    pub groups: Vec<RegularSubgroup>,
    pub profiles: Vec<BTreeSet<(usize, usize)>>,
    pub lk_pairs: BTreeSet<(usize, usize)>,
    pub witnesses: Vec<Witness>,
}

type LkSet = BTreeSet<(usize, usize)>;

fn profile_groups(
    r: usize,
    groups: Vec<RegularSubgroup>,
    jobs: Option<usize>,
) -> Result<SearchResult> {
    let per_group: Vec<(LkSet, Vec<Witness>)> = with_pool(jobs, || {
        groups
            .par_iter()
            .map(|g| {
                let mut seen = BTreeSet::new();
                let mut witnesses = Vec::new();
                let mut cache = HashMap::new();
                for aut in enumerate_automorphisms(g)? {
                    let key = aut.tau().table().to_vec();
                    let lk = match cache.get(&key) {
                        Some(&lk) => lk,
                        None => {
                            let lk = lk_of(aut.tau())?;
                            cache.insert(key, lk);
                            lk
                        }
                    };
                    if seen.insert(lk) {
                        witnesses.push(Witness {
                            group: g.clone(),
                            automorphism: aut,
                            lk,
                        });
                    }
                }
                Ok((seen, witnesses))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut lk_pairs = BTreeSet::new();
    let mut witnesses: Vec<Witness> = Vec::new();
    let mut profiles = Vec::new();
    for (profile, ws) in per_group {
        for w in ws {
            if lk_pairs.insert(w.lk) {
                witnesses.push(w);
            }
        }
        profiles.push(profile);
    }
    witnesses.sort_by_key(|w| w.lk);
    Ok(SearchResult {
        r,
        groups,
        profiles,
        lk_pairs,
        witnesses,
    })
}

/// Search over every regular subgroup (not reduced by conjugacy).
pub fn search_all(r: usize, opts: SearchOptions) -> Result<SearchResult> {
    let groups = enumerate_regular_subgroups(r, opts)?;
    profile_groups(r, groups, opts.jobs)
}

/// Search over conjugacy-class representatives only.
pub fn search_classes(r: usize, opts: SearchOptions) -> Result<SearchResult> {
    let groups = conjugacy_representatives(r, opts)?;
    profile_groups(r, groups, opts.jobs)
}

/// The union of `(l, k)` profiles over all regular subgroups of `GA(r,2)`.
pub fn table1_row(r: usize, opts: SearchOptions) -> Result<BTreeSet<(usize, usize)>> {
    if r < 3 {
        return Err(Error::RankOutOfRange {
            r,
            min: 3,
            max: if opts.allow_r5 {
                MAX_SEARCH_R
            } else {
                MAX_DEFAULT_R
            },
        });
    }
    Ok(search_classes(r, opts)?.lk_pairs)
}

/// `(0,0),(1,2),...`
pub fn format_pairs(pairs: &BTreeSet<(usize, usize)>) -> String {
    pairs
        .iter()
        .map(|(l, k)| format!("({l},{k})"))
        .collect::<Vec<_>>()
        .join(",")
}

/// One `l=<int> k=<int>` line per pair.
pub fn profile_file_string(pairs: &BTreeSet<(usize, usize)>) -> String {
    let mut s = String::new();
    for (l, k) in pairs {
        writeln!(s, "l={l} k={k}").unwrap();
    }
    s
}

pub fn parse_profile_file(s: &str) -> Result<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    for (i, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut l = None;
        let mut k = None;
        for field in line.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| parse_err(i + 1, format!("expected key=value, got {field:?}")))?;
            let v: usize = value
                .parse()
                .map_err(|_| parse_err(i + 1, format!("bad integer {value:?}")))?;
            match key {
                "l" => l = Some(v),
                "k" => k = Some(v),
                _ => return Err(parse_err(i + 1, format!("unknown key {key:?}"))),
            }
        }
        match (l, k) {
            (Some(l), Some(k)) => {
                out.insert((l, k));
            }
            _ => return Err(parse_err(i + 1, "expected l=<int> k=<int>")),
        }
    }
    Ok(out)
}

/// Independent search used to cross-check [`enumerate_regular_subgroups`]:
/// grows subgroups of `GA(r,2)` one element at a time from every affine map,
/// keeps those whose translation parts are distinct, and returns the ones
/// of order `2^r` as sorted tables.
pub fn naive_regular_tables(r: usize) -> Result<BTreeSet<Vec<u32>>> {
    if !(2..=3).contains(&r) {
        return Err(Error::RankOutOfRange { r, min: 2, max: 3 });
    }
    let p = Packed::new(r);
    let n = 1usize << r;
    let elems: Vec<(u32, u32)> = p
        .invertibles()
        .into_iter()
        .flat_map(|m| (0..n as u32).map(move |a| (a, m)))
        .collect();
    let compose = |g: (u32, u32), h: (u32, u32)| (g.0 ^ p.apply(g.1, h.0), p.mul(g.1, h.1));
    let close = |set: &BTreeSet<(u32, u32)>, g: (u32, u32)| -> Option<BTreeSet<(u32, u32)>> {
        let mut out = set.clone();
        let mut frontier = vec![g];
        while let Some(x) = frontier.pop() {
            if !out.insert(x) {
                continue;
            }
            if out.len() > n {
                return None;
            }
            let current: Vec<_> = out.iter().copied().collect();
            for y in current {
                frontier.push(compose(x, y));
                frontier.push(compose(y, x));
            }
        }
        let labels: HashSet<u32> = out.iter().map(|e| e.0).collect();
        (labels.len() == out.len()).then_some(out)
    };
    let identity: BTreeSet<(u32, u32)> = [(0, p.identity())].into();
    let mut seen: HashSet<BTreeSet<(u32, u32)>> = HashSet::from([identity.clone()]);
    let mut layer = vec![identity];
    let mut regular = BTreeSet::new();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            for &g in &elems {
                if s.contains(&g) {
                    continue;
                }
                if let Some(t) = close(s, g) {
                    if seen.insert(t.clone()) {
                        if t.len() == n {
                            let mut table = vec![0u32; n];
                            for &(a, m) in &t {
                                table[a as usize] = m;
                            }
                            regular.insert(table);
                        }
                        next.push(t);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(regular)
}

/// Packed tables of the groups returned by [`enumerate_regular_subgroups`].
pub fn packed_tables(groups: &[RegularSubgroup]) -> Vec<Vec<u32>> {
    groups
        .iter()
        .map(|g| {
            let p = Packed::new(g.r());
            g.matrices()
                .iter()
                .map(|m| p.pack_rows((0..p.r).map(|i| m.row(i) as u32)))
                .collect()
        })
        .collect()
}

/// Splits `r = 3m + r2` with `r2 ∈ {3, 4, 5}`.
pub fn corollary_decomposition(r: usize) -> Result<(usize, usize)> {
    (3..=5)
        .find(|&r2| r >= r2 && (r - r2).is_multiple_of(3))
        .map(|r2| ((r - r2) / 3, r2))
        .ok_or(Error::NoDecomposition(r))
}

/// One member of the corollary family at a given `r`.
#[derive(Clone, Debug)]
pub struct CorollaryMember {
    /// `(l, k)` of the trailing block `σ`.
    pub sigma_lk: (usize, usize),
    pub report: InvariantReport,
    /// Whether an explicit permutation was built and checked by oracles.
    pub explicit: bool,
}

/// Best trailing profiles per block size: the maxima of `l + k` in the
/// stored rows.
fn best_sigma(r2: usize) -> Vec<(usize, usize)> {
    let row = stored_profile(r2).expect("r2 in 3..=5");
    let best = row.iter().map(|(l, k)| l + k).max().unwrap();
    row.iter().copied().filter(|(l, k)| l + k == best).collect()
}

/// `τ|…|τ|σ` with `m` copies of the example automorphism and `σ` of
/// maximal `(l, k)` at rank `r2`. Members backed by a stored witness are
/// built explicitly and cross-checked by the structural oracles; the rest
/// come from the additivity of `(l, k)`.
pub fn corollary1_family(r: usize) -> Result<Vec<CorollaryMember>> {
    if r < 3 {
        return Err(Error::NoDecomposition(r));
    }
    let (m, r2) = corollary_decomposition(r)?;
    let base = crate::affine::example1_tau().into_tau();
    let mut out = Vec::new();
    for sigma_lk in best_sigma(r2) {
        let witness = stored_witness(r2, sigma_lk);
        let member = match witness {
            Some(w) if r <= 10 => {
                let mut tau = w.automorphism.tau().clone();
                for _ in 0..m {
                    tau = base.concat(&tau);
                }
                let report = full_report(&tau, OracleLevel::Structural)?;
                CorollaryMember {
                    sigma_lk,
                    report,
                    explicit: true,
                }
            }
            _ => {
                let (l, k) = (3 * m + sigma_lk.0, 3 * m + sigma_lk.1);
                CorollaryMember {
                    sigma_lk,
                    report: InvariantReport {
                        r,
                        distension: l,
                        deficiency: k,
                        rank: rank_formula(r, l),
                        kernel_dim: kernel_formula(r, k),
                        preserved_star_labels: Vec::new(),
                        rank_provenance: vec![crate::invariants::Provenance::Formula],
                        kernel_provenance: vec![crate::invariants::Provenance::Formula],
                    },
                    explicit: false,
                }
            }
        };
        out.push(member);
    }
    Ok(out)
}

/// Sums of stored profiles over every way to write `r` as an ordered-free
/// sum of block sizes in `1..=5`.
pub fn composite_lk_pairs(r: usize) -> BTreeSet<(usize, usize)> {
    fn go(rest: usize, max_part: usize, acc: (usize, usize), out: &mut BTreeSet<(usize, usize)>) {
        if rest == 0 {
            out.insert(acc);
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            for &(l, k) in stored_profile(part).unwrap() {
                go(rest - part, part, (acc.0 + l, acc.1 + k), out);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(r, 5, (0, 0), &mut out);
    out
}

/// Distinct `(rank, kernel_dim)` pairs of composite codes at rank `r`,
/// restricted to kernel dimension at least `min_kernel`.
pub fn remark3_census(r: usize, min_kernel: usize) -> BTreeSet<(usize, usize)> {
    composite_lk_pairs(r)
        .into_iter()
        .map(|(l, k)| (rank_formula(r, l), kernel_formula(r, k)))
        .filter(|&(_, ker)| ker >= min_kernel)
        .collect()
}

/// Stored witnesses: a regular subgroup and an automorphism realizing a
/// given `(l, k)`. The `r = 3, 4` entries are the first ones produced by
/// [`search_classes`]; the `r = 5` entry came from [`hunt_witness`] with
/// seed 0.
pub fn stored_witness(r: usize, lk: (usize, usize)) -> Option<Witness> {
    let (mats, tau): (&[&str], &[u32]) = WITNESSES
        .iter()
        .find(|w| w.0 == r && w.1 == lk)
        .map(|w| (w.2, w.3))?;
    let group = validate_regular_subgroup(
        r,
        mats.iter()
            .map(|m| BitMatrix::parse(m).expect("stored matrix"))
            .collect(),
    )
    .expect("stored group is regular");
    let tau = PointPermutation::new(r, tau.to_vec()).expect("stored permutation");
    let automorphism = GroupAutomorphism::new(&group, tau).expect("stored automorphism");
    Some(Witness {
        group,
        automorphism,
        lk,
    })
}

type StoredWitness = (
    usize,
    (usize, usize),
    &'static [&'static str],
    &'static [u32],
);

#[rustfmt::skip]
const WITNESSES: &[StoredWitness] = &[
    (3, (1, 2), &["100,010,001", "001,010,100", "001,010,100", "100,010,001", "001,010,100", "100,010,001", "100,010,001", "001,010,100"], &[0, 1, 3, 7, 4, 5, 2, 6]),
    (3, (2, 3), &["100,010,001", "001,011,100", "001,010,100", "100,110,001", "001,110,100", "001,111,100", "100,011,001", "100,111,001"], &[0, 1, 5, 6, 4, 2, 3, 7]),
    (3, (3, 3), &["100,010,001", "001,011,100", "001,010,100", "100,110,001", "001,110,100", "001,111,100", "100,011,001", "100,111,001"], &[0, 1, 3, 5, 4, 6, 2, 7]),
    (4, (1, 2), &["1000,0100,0010,0001", "0001,0010,0100,1000", "0001,0010,0100,1010", "1000,0100,0010,0101", "0101,0010,0100,1000", "1010,0100,0010,0001", "0101,0010,0100,1010", "1010,0100,0010,0101", "0001,0010,0100,1000", "1000,0100,0010,0001", "1000,0100,0010,0101", "0001,0010,0100,1010", "1010,0100,0010,0001", "0101,0010,0100,1000", "1010,0100,0010,0101", "0101,0010,0100,1010"], &[0, 1, 4, 5, 2, 3, 15, 14, 8, 9, 12, 13, 10, 11, 7, 6]),
    (4, (2, 3), &["1000,0100,0010,0001", "0001,0010,0100,1000", "0001,1101,0010,1000", "0001,1011,1101,1000", "1000,1101,1011,0001", "1000,0010,1101,0001", "0001,0100,1011,1000", "1000,1011,0100,0001", "0001,0010,0100,1000", "1000,0100,0010,0001", "0001,1011,1101,1000", "0001,1101,0010,1000", "1000,0010,1101,0001", "1000,1101,1011,0001", "1000,1011,0100,0001", "0001,0100,1011,1000"], &[0, 1, 6, 3, 4, 7, 2, 5, 8, 9, 10, 15, 14, 13, 12, 11]),
    (4, (2, 4), &["1000,0100,0010,0001", "0001,0010,0100,1000", "0011,0010,0100,1010", "1100,0100,0010,0101", "0101,0010,0100,1100", "1010,0100,0010,0011", "1110,0100,0010,0111", "0111,0010,0100,1110", "0001,0010,0100,1000", "1000,0100,0010,0001", "1100,0100,0010,0101", "0011,0010,0100,1010", "1010,0100,0010,0011", "0101,0010,0100,1100", "0111,0010,0100,1110", "1110,0100,0010,0111"], &[0, 2, 1, 3, 8, 10, 6, 13, 4, 15, 5, 14, 12, 7, 11, 9]),
    (4, (3, 3), &["1000,0100,0010,0001", "0001,0010,0100,1000", "0001,0010,0100,1010", "1000,0100,0010,0101", "0101,0010,0100,1000", "1010,0100,0010,0001", "0101,0010,0100,1010", "1010,0100,0010,0101", "0001,0010,0100,1000", "1000,0100,0010,0001", "1000,0100,0010,0101", "0001,0010,0100,1010", "1010,0100,0010,0001", "0101,0010,0100,1000", "1010,0100,0010,0101", "0101,0010,0100,1010"], &[0, 6, 2, 12, 4, 3, 8, 7, 15, 9, 5, 11, 10, 13, 14, 1]),
    (4, (3, 4), &["1000,0100,0010,0001", "0001,0010,1011,0111", "0001,1101,1011,1000", "0111,1011,1101,1110", "1110,1101,0100,1000", "0111,0100,1101,0001", "1000,1011,0010,1110", "1110,0010,0100,0111", "0001,0010,1011,0111", "1000,0100,0010,0001", "0111,1011,1101,1110", "0001,1101,1011,1000", "0111,0100,1101,0001", "1110,1101,0100,1000", "1110,0010,0100,0111", "1000,1011,0010,1110"], &[0, 1, 5, 9, 4, 2, 11, 15, 13, 3, 10, 6, 14, 8, 12, 7]),
    (4, (4, 3), &["1000,0100,0010,0001", "0001,0010,0100,1000", "0011,1001,1111,0111", "1110,1111,1001,1100", "1100,1001,1111,1110", "0111,1111,1001,0011", "0101,0010,0100,1010", "1010,0100,0010,0101", "0001,0010,0100,1000", "1000,0100,0010,0001", "1110,1111,1001,1100", "0011,1001,1111,0111", "0111,1111,1001,0011", "1100,1001,1111,1110", "1010,0100,0010,0101", "0101,0010,0100,1010"], &[0, 2, 1, 7, 12, 13, 15, 3, 11, 9, 14, 8, 4, 5, 10, 6]),
    (5, (5, 5), &["10000,01000,00100,00010,00001", "00100,11000,00101,01100,11111", "11010,10010,10000,01101,10100", "11010,11101,00101,10111,00001", "00101,11100,11010,11101,01010", "00101,00111,00100,11000,10100", "01111,00110,01110,10010,11111", "11011,10110,01111,11100,00001", "01110,10010,01111,01101,10100", "01110,00010,10001,00011,01010", "01111,11100,11011,11101,01010", "11011,10011,10001,00111,11111", "10000,00110,11010,10010,11111", "00100,01001,10000,01000,01010", "10001,01000,01110,00010,00001", "10001,01100,11011,10011,10100", "10001,00011,01110,01001,00001", "00101,01100,00100,10011,10100", "01111,01101,01110,11001,11111", "00100,00010,10000,00011,01010", "01111,10111,11011,10110,01010", "00100,10011,00101,00111,11111", "11010,11001,10000,00110,10100", "01110,01001,10001,01000,01010", "10000,01101,11010,11001,11111", "11011,11101,01111,10111,00001", "00101,10111,11010,10110,01010", "10001,00111,11011,11000,10100", "01110,11001,01111,00110,10100", "11010,10110,00101,11100,00001", "10000,00011,00100,01001,00001", "11011,11000,10001,01100,11111"], &[0, 1, 2, 8, 4, 10, 6, 7, 19, 9, 12, 29, 14, 31, 17, 15, 5, 20, 18, 11, 24, 21, 22, 23, 16, 25, 26, 27, 13, 28, 30, 3]),
];

/// Random composite permutations built from stored witnesses, for spot
/// checks of additivity.
pub fn random_composites(
    r: usize,
    count: usize,
    seed: u64,
) -> Vec<(PointPermutation, (usize, usize))> {
    let mut blocks: Vec<(usize, (usize, usize))> = WITNESSES.iter().map(|w| (w.0, w.1)).collect();
    blocks.push((3, (3, 3)));
    blocks.push((3, (0, 0)));
    blocks.push((2, (0, 0)));
    blocks.push((1, (0, 0)));
    blocks.sort();
    blocks.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mut rest = r;
        let mut parts = Vec::new();
        while rest > 0 {
            let fitting: Vec<_> = blocks.iter().filter(|b| b.0 <= rest).collect();
            let &&(size, lk) = fitting.choose(&mut rng).unwrap();
            parts.push((size, lk));
            rest -= size;
        }
        let mut tau: Option<PointPermutation> = None;
        let mut total = (0, 0);
        for (size, lk) in parts {
            let piece = block_permutation(size, lk);
            total = (total.0 + lk.0, total.1 + lk.1);
            tau = Some(match tau {
                None => piece,
                Some(t) => t.concat(&piece),
            });
        }
        out.push((tau.unwrap(), total));
    }
    out
}

fn block_permutation(size: usize, lk: (usize, usize)) -> PointPermutation {
    if lk == (0, 0) {
        return PointPermutation::identity(size);
    }
    if size == 3 && lk == (3, 3) {
        return crate::affine::example1_tau().into_tau();
    }
    stored_witness(size, lk)
        .expect("block comes from the witness list")
        .automorphism
        .into_tau()
}

/// `G ⊗ G'` for two stored witnesses, carrying the automorphism `T|S`.
pub fn product_witness(a: &Witness, b: &Witness) -> Result<Witness> {
    let group = direct_product(&a.group, &b.group)?;
    let automorphism = crate::affine::concat_automorphism(&a.automorphism, &b.automorphism);
    Ok(Witness {
        group,
        automorphism,
        lk: (a.lk.0 + b.lk.0, a.lk.1 + b.lk.1),
    })
}
