//! Direct checks of perfectness, minimum distance and propelinearity.
//!
//! Exhaustive checks cover `r = 3`; larger codes are sampled from a seeded
//! generator, so every report is reproducible.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::affine::RegularSubgroup;
use crate::concat::{ConcatCode, Gamma, GammaElement};
use crate::error::{parse_err, Error, Result};
use crate::gf2::BitVector;
use crate::hamming::{coset_representative, ExtHamming, PointPermutation};

pub const DEFAULT_SEED: u64 = 0x005e_ed0f_c0de;
pub const DEFAULT_SAMPLES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Randomized { samples: usize, seed: u64 },
}

impl Mode {
    pub fn randomized(samples: usize) -> Self {
        Self::Randomized {
            samples,
            seed: DEFAULT_SEED,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Self::Exhaustive => "exhaustive",
            Self::Randomized { .. } => "randomized",
        }
    }

    fn suffix(&self) -> String {
        match self {
            Self::Exhaustive => String::new(),
            Self::Randomized { samples, seed } => format!(",samples={samples},seed={seed}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Perfect,
    Distance,
    Propelinear,
    Puncture,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationPlan {
    pub mode: Mode,
    pub checks: Vec<Check>,
}

impl VerificationPlan {
    pub fn all(mode: Mode) -> Self {
        Self {
            mode,
            checks: vec![
                Check::Perfect,
                Check::Distance,
                Check::Propelinear,
                Check::Puncture,
            ],
        }
    }
}

/// One line of output: `check=<name> mode=<mode> result=pass|fail detail=<...>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub mode: Mode,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check={} mode={} result={} detail={}{}",
            self.name,
            self.mode.name(),
            if self.passed { "pass" } else { "fail" },
            self.detail,
            self.mode.suffix()
        )
    }
}

/// Membership oracle for a binary code of length at most 64, with words
/// packed as in [`BitVector::to_word`].
pub trait PackedCode: Sync {
    fn length(&self) -> usize;
    fn contains_word(&self, w: u64) -> bool;
    /// Every codeword, when the code is small enough to list.
    fn words(&self) -> Result<Vec<u64>>;
}

impl PackedCode for ConcatCode {
    fn length(&self) -> usize {
        ConcatCode::length(self)
    }
    fn contains_word(&self, w: u64) -> bool {
        ConcatCode::contains_word(self, w)
    }
    fn words(&self) -> Result<Vec<u64>> {
        if self.r() > 3 {
            return Err(Error::EnumerationGuard {
                r: self.r(),
                max: 3,
            });
        }
        Ok(self.enumerate_words()?.collect())
    }
}

/// A code given by its list of codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitCode {
    length: usize,
    words: Vec<u64>,
    set: HashSet<u64>,
}

impl ExplicitCode {
    pub fn new(length: usize, mut words: Vec<u64>) -> Result<Self> {
        if length == 0 || length > 64 {
            return Err(Error::Precondition(format!(
                "explicit codes need length 1..=64, got {length}"
            )));
        }
        if length < 64 && words.iter().any(|w| w >> length != 0) {
            return Err(Error::Precondition("codeword longer than the code".into()));
        }
        words.sort_unstable();
        words.dedup();
        let set = words.iter().copied().collect();
        Ok(Self { length, words, set })
    }

    pub fn from_code(code: &ConcatCode) -> Result<Self> {
        Self::new(code.length(), PackedCode::words(code)?)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn remove(&mut self, w: u64) -> bool {
        let present = self.set.remove(&w);
        self.words.retain(|&x| x != w);
        present
    }

    /// `n=<int> count=<int>` followed by one bitstring per codeword.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("n={} count={}\n", self.length, self.words.len());
        for &w in &self.words {
            s.push_str(&BitVector::from_word(self.length, w).to_bitstring());
            s.push('\n');
        }
        s
    }

    pub fn from_file_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let mut n = None;
        let mut count = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("count", v)) => count = v.parse::<usize>().ok(),
                _ => return Err(parse_err(1, format!("unexpected header field {field:?}"))),
            }
        }
        let (n, count) = match (n, count) {
            (Some(n), Some(c)) => (n, c),
            _ => return Err(parse_err(1, "expected n=<int> count=<int>")),
        };
        let mut words = Vec::with_capacity(count);
        for (i, line) in lines {
            let v = BitVector::from_bitstring(line.trim())
                .map_err(|e| parse_err(i + 1, e.to_string()))?;
            if v.len() != n {
                return Err(parse_err(
                    i + 1,
                    format!("expected {n} bits, found {}", v.len()),
                ));
            }
            words.push(v.to_word());
        }
        if words.len() != count {
            return Err(parse_err(
                1,
                format!("header says {count} codewords, found {}", words.len()),
            ));
        }
        let code = Self::new(n, words)?;
        if code.len() != count {
            return Err(parse_err(1, "repeated codewords"));
        }
        Ok(code)
    }
}

impl PackedCode for ExplicitCode {
    fn length(&self) -> usize {
        self.length
    }
    fn contains_word(&self, w: u64) -> bool {
        self.set.contains(&w)
    }
    fn words(&self) -> Result<Vec<u64>> {
        Ok(self.words.clone())
    }
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// Codewords within distance 1 of `v`.
fn ball_count(code: &dyn PackedCode, v: u64) -> usize {
    let n = code.length();
    usize::from(code.contains_word(v))
        + (0..n).filter(|&i| code.contains_word(v ^ (1 << i))).count()
}

/// Every vector of `F^n` has exactly one codeword at distance at most 1.
pub fn check_perfect(code: &dyn PackedCode, mode: Mode) -> Result<CheckReport> {
    let n = code.length();
    let bad = |v: &u64| ball_count(code, *v) != 1;
    let (checked, violation) = match mode {
        Mode::Exhaustive => {
            if n > 24 {
                return Err(Error::Precondition(format!(
                    "exhaustive sweep over 2^{n} vectors"
                )));
            }
            let total = 1u64 << n;
            (total, (0..total).into_par_iter().find_first(bad))
        }
        Mode::Randomized { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vs: Vec<u64> = (0..samples).map(|_| rng.gen::<u64>() & mask(n)).collect();
            (samples as u64, vs.par_iter().copied().find_first(bad))
        }
    };
    Ok(match violation {
        None => CheckReport {
            name: "perfect",
            mode,
            passed: true,
            detail: format!("vectors={checked},violations=0"),
        },
        Some(v) => CheckReport {
            name: "perfect",
            mode,
            passed: false,
            detail: format!(
                "counterexample={},ball_count={}",
                BitVector::from_word(n, v).to_bitstring(),
                ball_count(code, v)
            ),
        },
    })
}

/// Perfectness of a punctured concatenated code.
pub fn check_perfect_punctured(code: &ConcatCode, mode: Mode) -> Result<CheckReport> {
    if !code.is_punctured() {
        return Err(Error::Precondition(
            "perfectness is checked on the punctured code".into(),
        ));
    }
    if code.length() <= 64 {
        return check_perfect(code, mode);
    }
    let Mode::Randomized { samples, seed } = mode else {
        return Err(Error::Precondition(
            "exhaustive perfectness needs length <= 64".into(),
        ));
    };
    let n = code.length();
    let ball = |v: &BitVector| -> usize {
        let mut v = v.clone();
        let mut count = usize::from(code.contains(&v).unwrap_or(false));
        for i in 0..n {
            v.flip(i);
            count += usize::from(code.contains(&v).unwrap_or(false));
            v.flip(i);
        }
        count
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs: Vec<BitVector> = (0..samples)
        .map(|_| {
            BitVector::from_indices(n, (0..n).filter(|_| rng.gen::<bool>()).collect::<Vec<_>>())
        })
        .collect();
    let violation = vs.par_iter().find_first(|v| ball(v) != 1);
    Ok(CheckReport {
        name: "perfect",
        mode,
        passed: violation.is_none(),
        detail: match violation {
            None => format!("vectors={samples},violations=0"),
            Some(v) => format!("counterexample={},ball_count={}", v.to_bitstring(), ball(v)),
        },
    })
}

/// A uniform codeword of `code`.
pub fn random_codeword(code: &ConcatCode, rng: &mut impl Rng) -> BitVector {
    let r = code.r();
    let h = ExtHamming::new(r).expect("r was validated by the code");
    let random_h = |rng: &mut dyn rand::RngCore| {
        let mut v = BitVector::zeros(h.length());
        for b in h.basis() {
            if rng.gen::<bool>() {
                v ^= b;
            }
        }
        v
    };
    let a = rng.gen_range(0..1u32 << r);
    let x = &random_h(rng) ^ &coset_representative(r, a);
    let y = &random_h(rng) ^ &coset_representative(r, code.tau().apply(a));
    let full = x.concat(&y);
    if code.is_punctured() {
        full.slice(1, full.len())
    } else {
        full
    }
}

/// Minimum distance: exact over all codeword differences when enumerable,
/// otherwise the smallest distance among sampled pairs (an upper bound).
pub fn check_min_distance(code: &ConcatCode, mode: Mode) -> Result<(usize, CheckReport)> {
    let expected = if code.is_punctured() { 3 } else { 4 };
    let (d, detail) = match mode {
        Mode::Exhaustive => {
            let words = PackedCode::words(code)?;
            let d = min_pairwise_distance(&words);
            (d, format!("distance={d},codewords={}", words.len()))
        }
        Mode::Randomized { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut d = usize::MAX;
            for _ in 0..samples {
                let a = random_codeword(code, &mut rng);
                let b = random_codeword(code, &mut rng);
                if a != b {
                    d = d.min((&a ^ &b).weight());
                }
            }
            (d, format!("distance_upper_bound={d}"))
        }
    };
    let passed = match mode {
        Mode::Exhaustive => d == expected,
        Mode::Randomized { .. } => d >= expected,
    };
    Ok((
        d,
        CheckReport {
            name: "distance",
            mode,
            passed,
            detail,
        },
    ))
}

/// Minimum distance of an explicit list of packed words. Passes when it
/// reaches 3 for odd lengths and 4 for even ones.
pub fn min_distance_of_words(words: &[u64], length: usize, mode: Mode) -> CheckReport {
    let d = min_pairwise_distance(words);
    let expected = if length % 2 == 1 { 3 } else { 4 };
    CheckReport {
        name: "distance",
        mode,
        passed: d >= expected && d != usize::MAX,
        detail: format!("distance={d},codewords={}", words.len()),
    }
}

fn min_pairwise_distance(words: &[u64]) -> usize {
    words
        .par_iter()
        .enumerate()
        .map(|(i, &c)| {
            words[i + 1..]
                .iter()
                .map(|&o| (c ^ o).count_ones() as usize)
                .min()
                .unwrap_or(usize::MAX)
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn fail(name: &'static str, mode: Mode, detail: String) -> CheckReport {
    CheckReport {
        name,
        mode,
        passed: false,
        detail,
    }
}

fn random_element(gamma: &Gamma<'_>, code: &ConcatCode, rng: &mut impl Rng) -> GammaElement {
    let w = random_codeword(code, rng);
    let n = w.len() / 2;
    gamma
        .element(w.slice(0, n), w.slice(n, 2 * n))
        .expect("codewords give elements")
}

/// Propelinearity of `S_{H,τ}` through `Γ`: the orbit of zero is the code,
/// `Γ` is closed under composition, and its elements preserve the code.
///
/// `tau` need not come from an automorphism; in that case the closure
/// check is expected to fail.
pub fn check_propelinear(
    group: &RegularSubgroup,
    tau: &PointPermutation,
    mode: Mode,
) -> Result<CheckReport> {
    const NAME: &str = "propelinear";
    let gamma = Gamma::from_permutation(group, tau.clone())?;
    let code = ConcatCode::new(tau.clone())?;
    match mode {
        Mode::Exhaustive => {
            let elements = gamma.elements()?;
            let images: HashSet<u64> = elements.iter().map(|g| g.translation().to_word()).collect();
            let size = PackedCode::words(&code)?.len();
            if images.len() != elements.len() || images.len() != size {
                return Ok(fail(
                    NAME,
                    mode,
                    format!(
                        "orbit={},order={},code={size}",
                        images.len(),
                        elements.len()
                    ),
                ));
            }
            if let Some(w) = images.iter().find(|&&w| !code.contains_word(w)) {
                return Ok(fail(NAME, mode, format!("orbit_point_outside={w:b}")));
            }
            let bad_pair = elements.par_iter().find_map_first(|g| {
                elements
                    .iter()
                    .find(|h| gamma.compose(g, h).is_err())
                    .map(|h| (g.coset(), h.coset()))
            });
            if let Some((a, b)) = bad_pair {
                return Ok(fail(NAME, mode, format!("closure_violation=({a},{b})")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            let probes: Vec<BitVector> =
                (0..64).map(|_| random_codeword(&code, &mut rng)).collect();
            for g in &elements {
                for v in &probes {
                    if !code.contains(&gamma.apply(g, v)?)? {
                        return Ok(fail(
                            NAME,
                            mode,
                            format!("image_outside_code,coset={}", g.coset()),
                        ));
                    }
                }
            }
            Ok(CheckReport {
                name: NAME,
                mode,
                passed: true,
                detail: format!(
                    "order={},orbit={},pairs={},index_pairs={}",
                    elements.len(),
                    images.len(),
                    elements.len() * elements.len(),
                    group.order() * group.order()
                ),
            })
        }
        Mode::Randomized { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let g = random_element(&gamma, &code, &mut rng);
                let h = random_element(&gamma, &code, &mut rng);
                let gh = match gamma.compose(&g, &h) {
                    Ok(gh) => gh,
                    Err(e) => return Ok(fail(NAME, mode, e.to_string().replace(' ', "_"))),
                };
                let v = random_codeword(&code, &mut rng);
                let sequential = gamma.apply(&g, &gamma.apply(&h, &v)?)?;
                if gamma.apply(&gh, &v)? != sequential {
                    return Ok(fail(NAME, mode, "composition_is_not_the_product".into()));
                }
                if !code.contains(&sequential)? {
                    return Ok(fail(
                        NAME,
                        mode,
                        format!("image_outside_code,coset={}", g.coset()),
                    ));
                }
            }
            Ok(CheckReport {
                name: NAME,
                mode,
                passed: true,
                detail: format!("pairs={samples}"),
            })
        }
    }
}

/// Every permutation part fixes the first-half coordinate `0`, and the
/// punctured group acts regularly on the punctured code.
pub fn check_puncture_group(
    group: &RegularSubgroup,
    tau: &PointPermutation,
    mode: Mode,
) -> Result<CheckReport> {
    const NAME: &str = "puncture";
    let gamma = Gamma::from_permutation(group, tau.clone())?;
    let n = group.order() as u32;
    if let Some(a) = (0..n).find(|&a| gamma.pi(a)[0] != 0) {
        return Ok(fail(NAME, mode, format!("pi_moves_zero,label={a}")));
    }
    match mode {
        Mode::Exhaustive => {
            let elements = gamma.elements()?;
            let punctured = ConcatCode::new_punctured(tau.clone())?;
            let zero = BitVector::zeros(punctured.length());
            let fixed = elements
                .iter()
                .filter(|g| gamma.coordinate_permutation(g)[0] == 0)
                .count();
            let orbit: HashSet<u64> = elements
                .iter()
                .map(|g| gamma.apply_punctured(g, &zero).map(|v| v.to_word()))
                .collect::<Result<_>>()?;
            let code: HashSet<u64> = PackedCode::words(&punctured)?.into_iter().collect();
            let passed = fixed == elements.len() && orbit.len() == elements.len() && orbit == code;
            Ok(CheckReport {
                name: NAME,
                mode,
                passed,
                detail: format!(
                    "fixing_zero={fixed},orbit={},code={}",
                    orbit.len(),
                    code.len()
                ),
            })
        }
        Mode::Randomized { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let code = ConcatCode::new(tau.clone())?;
            let punctured = code.puncture()?;
            let zero = BitVector::zeros(punctured.length());
            for _ in 0..samples {
                let g = random_element(&gamma, &code, &mut rng);
                let image = gamma.apply_punctured(&g, &zero)?;
                if image != g.translation().slice(1, 2 * n as usize)
                    || !punctured.contains(&image)?
                {
                    return Ok(fail(
                        NAME,
                        mode,
                        format!("orbit_point_outside,coset={}", g.coset()),
                    ));
                }
            }
            Ok(CheckReport {
                name: NAME,
                mode,
                passed: true,
                detail: format!("labels_fixing_zero={n},elements={samples}"),
            })
        }
    }
}

/// `|S'| (1 + n) = 2^n` for `n = 2^(r+1) - 1`, compared as exponents.
pub fn sphere_packing_holds(r: usize) -> bool {
    let n = (2usize << r) - 1;
    let log_size = (2usize << r) - r - 2;
    (n + 1).is_power_of_two() && log_size + (n + 1).trailing_zeros() as usize == n
}

/// Runs the checks of `plan` on `S_{H,τ}`; the group is needed for the
/// propelinearity and puncturing checks.
pub fn run_plan(
    tau: &PointPermutation,
    group: Option<&RegularSubgroup>,
    plan: &VerificationPlan,
) -> Result<Vec<CheckReport>> {
    let code = ConcatCode::new(tau.clone())?;
    let mut out = Vec::new();
    for check in &plan.checks {
        match check {
            Check::Perfect => out.push(check_perfect_punctured(&code.puncture()?, plan.mode)?),
            Check::Distance => out.push(check_min_distance(&code, plan.mode)?.1),
            Check::Propelinear | Check::Puncture => {
                let Some(group) = group else {
                    continue;
                };
                out.push(if *check == Check::Propelinear {
                    check_propelinear(group, tau, plan.mode)?
                } else {
                    check_puncture_group(group, tau, plan.mode)?
                });
            }
        }
    }
    Ok(out)
}
