//! The general affine group `GA(r,2)`, its regular subgroups and their
//! automorphisms.
//!
//! A regular subgroup `G` has exactly one element `g_a = (a, M_a)` sending
//! `0` to `a`, so it is stored as the table `a ↦ M_a`. Products follow
//! `g_a g_b = (g_a(b), M_a M_b)`, hence `M_{g_a(b)} = M_a M_b`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::gf2::{format_label, parse_label, BitMatrix, MAX_R};
use crate::hamming::PointPermutation;

/// The affine map `b ↦ a + M b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub a: u32,
    pub m: BitMatrix,
}

impl AffineMap {
    pub fn new(a: u32, m: BitMatrix) -> Result<Self> {
        if !m.is_invertible() {
            return Err(Error::SingularMatrix(m.to_string()));
        }
        if m.rows() < 32 && a >> m.rows() != 0 {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: 32 - a.leading_zeros() as usize,
            });
        }
        Ok(Self { a, m })
    }

    pub fn identity(r: usize) -> Self {
        Self {
            a: 0,
            m: BitMatrix::identity(r),
        }
    }

    pub fn r(&self) -> usize {
        self.m.rows()
    }

    pub fn apply(&self, b: u32) -> Result<u32> {
        Ok(self.a ^ self.m.mul_vec(u64::from(b))? as u32)
    }

    /// `g ∘ h = (g(h.a), M_g M_h)`.
    pub fn compose(&self, h: &AffineMap) -> Result<AffineMap> {
        Ok(AffineMap {
            a: self.apply(h.a)?,
            m: self.m.mul(&h.m)?,
        })
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.m.inverse().expect("affine maps are invertible");
        let a = inv.apply(u64::from(self.a)) as u32;
        AffineMap { a, m: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.m == BitMatrix::identity(self.r())
    }

    /// Order of the element in `GA(r,2)`.
    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = self.compose(&g).expect("same dimension");
            k += 1;
        }
        k
    }
}

/// A regular subgroup of `GA(r,2)` as the validated table `a ↦ M_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularSubgroup {
    r: usize,
    mats: Vec<BitMatrix>,
}

impl RegularSubgroup {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix(&self, a: u32) -> &BitMatrix {
        &self.mats[a as usize]
    }

    pub fn matrices(&self) -> &[BitMatrix] {
        &self.mats
    }

    pub fn element(&self, a: u32) -> AffineMap {
        AffineMap {
            a,
            m: self.mats[a as usize].clone(),
        }
    }

    /// `g_a(b) = a + M_a b`, i.e. the label of `g_a g_b`.
    #[inline]
    pub fn act(&self, a: u32, b: u32) -> u32 {
        a ^ self.mats[a as usize].apply(u64::from(b)) as u32
    }

    /// Cayley table: entry `a * 2^r + b` is the label of `g_a g_b`.
    pub fn cayley_table(&self) -> Vec<u32> {
        let n = self.order() as u32;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.act(a, b))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as u32;
        (0..n).all(|a| (0..n).all(|b| self.act(a, b) == self.act(b, a)))
    }

    /// Serializes to the group file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("r={}\n", self.r);
        for (a, m) in self.mats.iter().enumerate() {
            writeln!(out, "a={} M={}", format_label(a as u32, self.r), m).unwrap();
        }
        out
    }

    /// Parses and validates the group file format.
    pub fn from_file_str(s: &str) -> Result<Self> {
        let mut lines = s.split('\n');
        let header = lines.next().unwrap_or_default();
        let r: usize = header
            .strip_prefix("r=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse_err(1, "expected r=<int>"))?;
        if !(1..=MAX_R).contains(&r) {
            return Err(Error::RankOutOfRange {
                r,
                min: 1,
                max: MAX_R,
            });
        }
        let mut mats = Vec::with_capacity(1 << r);
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            if line.is_empty() {
                continue;
            }
            let (a_part, m_part) = line
                .split_once(' ')
                .ok_or_else(|| parse_err(lineno, "expected 'a=<bits> M=<rows>'"))?;
            let a = a_part
                .strip_prefix("a=")
                .ok_or_else(|| parse_err(lineno, "missing a="))
                .and_then(|v| parse_label(v, r).map_err(|_| parse_err(lineno, "bad label")))?;
            if a as usize != mats.len() {
                return Err(parse_err(
                    lineno,
                    "labels must be listed in ascending order",
                ));
            }
            let m = m_part
                .strip_prefix("M=")
                .ok_or_else(|| parse_err(lineno, "missing M="))
                .and_then(|v| BitMatrix::parse(v).map_err(|_| parse_err(lineno, "bad matrix")))?;
            if m.rows() != r || m.cols() != r {
                return Err(parse_err(lineno, format!("matrix must be {r}x{r}")));
            }
            mats.push(m);
        }
        validate_regular_subgroup(r, mats)
    }
}

/// Checks `M_0 = I`, invertibility and closure `M_{g_a(b)} = M_a M_b`.
pub fn validate_regular_subgroup(r: usize, mats: Vec<BitMatrix>) -> Result<RegularSubgroup> {
    if !(1..=MAX_R).contains(&r) {
        return Err(Error::RankOutOfRange {
            r,
            min: 1,
            max: MAX_R,
        });
    }
    let n = 1usize << r;
    if mats.len() != n {
        return Err(Error::IncompleteTable {
            expected: n,
            found: mats.len(),
        });
    }
    if mats[0] != BitMatrix::identity(r) {
        return Err(Error::NotIdentityAtZero);
    }
    for (a, m) in mats.iter().enumerate() {
        if m.rows() != r || m.cols() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: m.rows().max(m.cols()),
            });
        }
        if !m.is_invertible() {
            return Err(Error::SingularMatrix(format_label(a as u32, r)));
        }
    }
    let g = RegularSubgroup { r, mats };
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let c = g.act(a, b);
            if g.mats[c as usize] != g.mats[a as usize].mul(&g.mats[b as usize])? {
                return Err(Error::ClosureViolation {
                    a: format_label(a, r),
                    b: format_label(b, r),
                });
            }
        }
    }
    Ok(g)
}

/// The elementary abelian group of translations `{(a, I)}`.
pub fn translation_subgroup(r: usize) -> Result<RegularSubgroup> {
    if !(1..=MAX_R).contains(&r) {
        return Err(Error::RankOutOfRange {
            r,
            min: 1,
            max: MAX_R,
        });
    }
    Ok(RegularSubgroup {
        r,
        mats: vec![BitMatrix::identity(r); 1 << r],
    })
}

/// Generators of the dihedral regular subgroup of `GA(3,2)`:
/// `α = ((101), A)` of order 4 and `β = ((001), B)` of order 2.
pub fn hegedus_generators() -> (AffineMap, AffineMap) {
    let a = BitMatrix::parse("010,100,101").unwrap();
    let b = BitMatrix::parse("010,100,001").unwrap();
    (
        AffineMap::new(0b101, a).unwrap(),
        AffineMap::new(0b001, b).unwrap(),
    )
}

/// The 8-element dihedral regular subgroup of `GA(3,2)` generated by
/// [`hegedus_generators`].
pub fn hegedus_d4() -> RegularSubgroup {
    let (alpha, beta) = hegedus_generators();
    let mut mats: Vec<Option<BitMatrix>> = vec![None; 8];
    mats[0] = Some(BitMatrix::identity(3));
    let mut queue = VecDeque::from([AffineMap::identity(3)]);
    while let Some(g) = queue.pop_front() {
        for gen in [&alpha, &beta] {
            let h = g.compose(gen).unwrap();
            match &mats[h.a as usize] {
                Some(m) => assert_eq!(*m, h.m, "generators do not span a regular subgroup"),
                None => {
                    mats[h.a as usize] = Some(h.m.clone());
                    queue.push_back(h);
                }
            }
        }
    }
    let mats = mats
        .into_iter()
        .map(|m| m.expect("orbit covers F^3"))
        .collect();
    validate_regular_subgroup(3, mats).expect("dihedral subgroup is regular")
}

/// An automorphism `T` of a regular subgroup, recorded by its induced
/// permutation: `T(g_a) = g_{τ(a)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    tau: PointPermutation,
}

impl GroupAutomorphism {
    /// Validates that `tau` is induced by an automorphism of `group`:
    /// `τ(g_a(b)) = g_{τ(a)}(τ(b))` and `M_{τ(g_a(b))} = M_{τ(a)} M_{τ(b)}`.
    pub fn new(group: &RegularSubgroup, tau: PointPermutation) -> Result<Self> {
        if tau.r() != group.r() {
            return Err(Error::DimensionMismatch {
                expected: group.r(),
                found: tau.r(),
            });
        }
        let n = group.order() as u32;
        let r = group.r();
        for a in 0..n {
            for b in 0..n {
                let ab = group.act(a, b);
                let (ta, tb) = (tau.apply(a), tau.apply(b));
                if tau.apply(ab) != group.act(ta, tb) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "translation identity fails at a={}, b={}",
                        format_label(a, r),
                        format_label(b, r)
                    )));
                }
                if *group.matrix(tau.apply(ab)) != group.matrix(ta).mul(group.matrix(tb))? {
                    return Err(Error::NotAnAutomorphism(format!(
                        "matrix identity fails at a={}, b={}",
                        format_label(a, r),
                        format_label(b, r)
                    )));
                }
            }
        }
        Ok(Self { tau })
    }

    pub fn identity(r: usize) -> Self {
        Self {
            tau: PointPermutation::identity(r),
        }
    }

    pub fn tau(&self) -> &PointPermutation {
        &self.tau
    }

    pub fn into_tau(self) -> PointPermutation {
        self.tau
    }
}

/// The automorphism of [`hegedus_d4`] fixing every `α^i` and sending
/// `βα^i` to `βα^{i+1}`.
pub fn example1_tau() -> GroupAutomorphism {
    let (alpha, beta) = hegedus_generators();
    let mut powers = vec![AffineMap::identity(3)];
    for _ in 1..4 {
        let next = powers.last().unwrap().compose(&alpha).unwrap();
        powers.push(next);
    }
    let mut map = vec![0u32; 8];
    for i in 0..4 {
        let p = &powers[i];
        map[p.a as usize] = p.a;
        let from = beta.compose(p).unwrap();
        let to = beta.compose(&powers[(i + 1) % 4]).unwrap();
        map[from.a as usize] = to.a;
    }
    let tau = PointPermutation::new(3, map).expect("T permutes the labels");
    GroupAutomorphism::new(&hegedus_d4(), tau).expect("T is an automorphism")
}

/// Largest group order accepted by [`enumerate_automorphisms`].
pub const MAX_AUT_ORDER: usize = 32;

/// Label closure of `gens` inside `group` (right multiplication by gens).
fn span(table: &[u32], n: usize, gens: &[u32]) -> Vec<bool> {
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = table[x as usize * n + g as usize];
            if !inside[y as usize] {
                inside[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    inside
}

fn element_orders(table: &[u32], n: usize) -> Vec<usize> {
    (0..n)
        .map(|a| {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            k
        })
        .collect()
}

/// Greedy generating set: smallest label outside the subgroup spanned so far.
pub fn generating_set(group: &RegularSubgroup) -> Vec<u32> {
    let n = group.order();
    let table = group.cayley_table();
    let mut gens = Vec::new();
    let mut inside = span(&table, n, &gens);
    for a in 1..n as u32 {
        if !inside[a as usize] {
            gens.push(a);
            inside = span(&table, n, &gens);
        }
    }
    gens
}

struct AutSearch<'a> {
    n: usize,
    table: &'a [u32],
    gens: Vec<u32>,
    orders: Vec<usize>,
    found: Vec<Vec<u32>>,
}

const UNSET: u32 = u32::MAX;

impl AutSearch<'_> {
    /// Extends the partial map with `gens[level] ↦ image` over the subgroup
    /// generated by the first `level + 1` generators.
    fn extend(&self, map: &[u32], images: &[u32]) -> Option<Vec<u32>> {
        let mut map = map.to_vec();
        let mut used = vec![false; self.n];
        let mut queue = VecDeque::new();
        for (x, &t) in map.iter().enumerate() {
            if t != UNSET {
                used[t as usize] = true;
                queue.push_back(x as u32);
            }
        }
        while let Some(x) = queue.pop_front() {
            let tx = map[x as usize];
            for (&g, &img) in self.gens.iter().zip(images) {
                let y = self.table[x as usize * self.n + g as usize];
                let ty = self.table[tx as usize * self.n + img as usize];
                match map[y as usize] {
                    UNSET => {
                        if used[ty as usize] {
                            return None;
                        }
                        used[ty as usize] = true;
                        map[y as usize] = ty;
                        queue.push_back(y);
                    }
                    t if t != ty => return None,
                    _ => {}
                }
            }
        }
        Some(map)
    }

    fn run(&mut self, level: usize, map: Vec<u32>, images: &mut Vec<u32>) {
        if level == self.gens.len() {
            self.found.push(map);
            return;
        }
        let want = self.orders[self.gens[level] as usize];
        for cand in 1..self.n as u32 {
            if self.orders[cand as usize] != want {
                continue;
            }
            images.push(cand);
            if let Some(next) = self.extend(&map, images) {
                self.run(level + 1, next, images);
            }
            images.pop();
        }
    }
}

/// All automorphisms of `group`, sorted by their induced permutation table.
///
/// Images of a greedy generating set are chosen among elements of equal
/// order; each complete assignment is checked against the full Cayley table.
pub fn enumerate_automorphisms(group: &RegularSubgroup) -> Result<Vec<GroupAutomorphism>> {
    let n = group.order();
    if n > MAX_AUT_ORDER {
        return Err(Error::GroupTooLarge {
            order: n,
            limit: MAX_AUT_ORDER,
        });
    }
    let table = group.cayley_table();
    let mut search = AutSearch {
        n,
        table: &table,
        gens: generating_set(group),
        orders: element_orders(&table, n),
        found: Vec::new(),
    };
    let mut start = vec![UNSET; n];
    start[0] = 0;
    search.run(0, start, &mut Vec::new());
    let mut auts: Vec<GroupAutomorphism> = search
        .found
        .into_iter()
        .filter(|map| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    map[table[a * n + b] as usize] == table[map[a] as usize * n + map[b] as usize]
                })
            })
        })
        .map(|map| GroupAutomorphism {
            tau: PointPermutation::new(group.r(), map).expect("automorphisms are bijections"),
        })
        .collect();
    auts.sort();
    Ok(auts)
}

/// `G1 ⊗ G2 = {g1|g2}` with `(a|b) ↦ diag(M_a, M_b)`.
pub fn direct_product(g1: &RegularSubgroup, g2: &RegularSubgroup) -> Result<RegularSubgroup> {
    let r = g1.r + g2.r;
    if r > MAX_R {
        return Err(Error::RankOutOfRange {
            r,
            min: 1,
            max: MAX_R,
        });
    }
    let mats = g1
        .mats
        .iter()
        .flat_map(|a| g2.mats.iter().map(move |b| a.block_diag(b)))
        .collect();
    Ok(RegularSubgroup { r, mats })
}

/// `T|S` on `G1 ⊗ G2`, inducing `τ|σ`.
pub fn concat_automorphism(t: &GroupAutomorphism, s: &GroupAutomorphism) -> GroupAutomorphism {
    GroupAutomorphism {
        tau: t.tau.concat(&s.tau),
    }
}
