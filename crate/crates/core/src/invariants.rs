//! Distension, deficiency, rank and kernel of `S_{H,τ}`.
//!
//! Every quantity has a closed formula and at least one independent oracle:
//!
//! | quantity | formula | oracles |
//! |---|---|---|
//! | rank | `2^(r+1) - r - 2 + l` | span of `H×H ∪ {u|τ(u)}`; span of all codewords |
//! | kernel | `2^(r+1) - r - 2 - k` | `H×H` plus shifts from preserved stars; brute force `c + S = S` |
//!
//! The distension `l` and deficiency `k` are properties of `τ` alone.

use std::collections::HashSet;
use std::fmt;

use crate::concat::ConcatCode;
use crate::error::{Error, Result};
use crate::gf2::{rank_of, rank_of_words, row_reduce, BitVector, Subspace};
use crate::hamming::{coset_representative, ExtHamming, PointPermutation};

/// Where a reported value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Formula,
    SpanOracle,
    StructuralOracle,
    EnumerationOracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Formula => "formula",
            Provenance::SpanOracle => "span_oracle",
            Provenance::StructuralOracle => "structural_oracle",
            Provenance::EnumerationOracle => "enumeration_oracle",
        })
    }
}

/// How much independent confirmation [`full_report`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OracleLevel {
    None,
    Structural,
    Enumeration,
}

impl std::str::FromStr for OracleLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "structural" => Ok(Self::Structural),
            "enumeration" => Ok(Self::Enumeration),
            other => Err(Error::Precondition(format!(
                "unknown oracle level {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub r: usize,
    pub distension: usize,
    pub deficiency: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub preserved_star_labels: Vec<u32>,
    pub rank_provenance: Vec<Provenance>,
    pub kernel_provenance: Vec<Provenance>,
}

fn join(p: &[Provenance]) -> String {
    p.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("+")
}

impl InvariantReport {
    /// `r l k rank kernel_dim provenance`, tab separated.
    pub fn to_tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\trank:{};kernel:{}",
            self.r,
            self.distension,
            self.deficiency,
            self.rank,
            self.kernel_dim,
            join(&self.rank_provenance),
            join(&self.kernel_provenance)
        )
    }

    pub fn summary_line(&self) -> String {
        format!(
            "r={} l={} k={} rank={} ker={}",
            self.r, self.distension, self.deficiency, self.rank, self.kernel_dim
        )
    }
}

/// `2^r - r - 1 - dim(H ∩ τ(H))`, with `τ(H)` spanned by the images of a
/// basis of `H`.
pub fn distension(tau: &PointPermutation) -> Result<usize> {
    let h = ExtHamming::new(tau.r())?;
    let images = h
        .basis()
        .iter()
        .map(|b| tau.permute_vector(b))
        .collect::<Result<Vec<_>>>()?;
    let tau_h = row_reduce(h.length(), &images)?;
    let common = h.subspace().intersection(&tau_h)?;
    Ok(h.dim() - common.dim())
}

/// Distension from parity checks: `H ∩ τ(H)` is cut out by the checks of
/// `H` together with those of `τ(H)`, whose columns are `(1, a, τ^{-1}(a))`.
/// After relabelling, `l = rank{(1, a, τ(a))} - r - 1`.
pub fn distension_by_parity_checks(tau: &PointPermutation) -> usize {
    let r = tau.r();
    let cols =
        (0..1u64 << r).map(|a| (1u64 << (2 * r)) | (a << r) | u64::from(tau.apply(a as u32)));
    rank_of_words(cols) - r - 1
}

/// Labels `a ≠ 0` with `τ(a + c) = τ(a) + τ(c)` for all `c`, i.e. whose star
/// is carried onto the star of `τ(a)`.
pub fn preserved_stars(tau: &PointPermutation) -> Vec<u32> {
    let n = 1u32 << tau.r();
    let t = tau.table();
    (1..n)
        .filter(|&a| {
            let ta = t[a as usize];
            (1..n).all(|c| t[(a ^ c) as usize] == ta ^ t[c as usize])
        })
        .collect()
}

/// `r - log2(|preserved stars| + 1)`; fails loudly if the count plus one
/// is not a power of two.
pub fn deficiency(tau: &PointPermutation) -> Result<usize> {
    let count = preserved_stars(tau).len();
    let total = count + 1;
    if !total.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { count });
    }
    Ok(tau.r() - total.trailing_zeros() as usize)
}

pub fn rank_formula(r: usize, distension: usize) -> usize {
    (2usize << r) - r - 2 + distension
}

pub fn kernel_formula(r: usize, deficiency: usize) -> usize {
    (2usize << r) - r - 2 - deficiency
}

fn require_extended(code: &ConcatCode) -> Result<()> {
    if code.is_punctured() {
        Err(Error::Precondition(
            "oracle expects the extended code".into(),
        ))
    } else {
        Ok(())
    }
}

/// Basis of `H×H`: `h|0` and `0|h` for `h` in a basis of `H`.
fn hamming_square_basis(h: &ExtHamming) -> Vec<BitVector> {
    let zero = BitVector::zeros(h.length());
    h.basis()
        .iter()
        .map(|b| b.concat(&zero))
        .chain(h.basis().iter().map(|b| zero.concat(b)))
        .collect()
}

/// Rank of `⟨H×H ∪ {u|τ(u) : u ∈ F_0}⟩`, with `u` over the basis
/// `e_0 + e_i` of the even-weight code.
pub fn rank_span_oracle(code: &ConcatCode) -> Result<usize> {
    require_extended(code)?;
    let r = code.r();
    let h = ExtHamming::new(r)?;
    let n = h.length();
    let mut gens = hamming_square_basis(&h);
    for i in 1..n as u32 {
        let u = coset_representative(r, i);
        gens.push(u.concat(&code.tau().permute_vector(&u)?));
    }
    Ok(rank_of(2 * n, gens))
}

/// Rank of the span of every codeword; `r <= 3`.
pub fn rank_enumeration_oracle(code: &ConcatCode) -> Result<usize> {
    if code.r() > 3 {
        return Err(Error::EnumerationGuard {
            r: code.r(),
            max: 3,
        });
    }
    let n = code.length();
    Ok(rank_of(n, code.enumerate()?))
}

/// `H×H` extended by `(e_0+e_a)|(e_0+e_{τ(a)})` for `a` in a basis of the
/// preserved-star labels. Each added vector is checked to satisfy
/// `v + S = S` through `τ(a + b) = τ(a) + τ(b)` for every `b`.
pub fn kernel_structural_oracle(code: &ConcatCode) -> Result<Subspace> {
    require_extended(code)?;
    let r = code.r();
    let tau = code.tau();
    let h = ExtHamming::new(r)?;
    let mut gens = hamming_square_basis(&h);
    let mut chosen: Vec<u64> = Vec::new();
    for a in preserved_stars(tau) {
        let before = rank_of_words(chosen.iter().copied());
        chosen.push(u64::from(a));
        if rank_of_words(chosen.iter().copied()) == before {
            chosen.pop();
            continue;
        }
        let ta = tau.apply(a);
        let n = 1u32 << r;
        if let Some(b) = (0..n).find(|&b| tau.apply(a ^ b) != ta ^ tau.apply(b)) {
            return Err(Error::Precondition(format!(
                "label {a} was reported preserved but fails at b={b}"
            )));
        }
        gens.push(coset_representative(r, a).concat(&coset_representative(r, ta)));
    }
    row_reduce(code.length(), &gens)
}

/// `{c ∈ S : c + S = S}` over the enumerated code; `r <= 3`.
pub fn kernel_bruteforce_oracle(code: &ConcatCode) -> Result<Subspace> {
    if code.r() > 3 {
        return Err(Error::EnumerationGuard {
            r: code.r(),
            max: 3,
        });
    }
    let words: Vec<u64> = code.enumerate_words()?.collect();
    let set: HashSet<u64> = words.iter().copied().collect();
    let n = code.length();
    let kernel: Vec<BitVector> = words
        .iter()
        .filter(|&&c| words.iter().all(|&s| set.contains(&(c ^ s))))
        .map(|&c| BitVector::from_word(n, c))
        .collect();
    let span = row_reduce(n, &kernel)?;
    if span.dim() >= 63 || (1usize << span.dim()) != kernel.len() {
        return Err(Error::Precondition(
            "brute-force kernel is not a subspace".into(),
        ));
    }
    Ok(span)
}

fn confirm(
    field: &'static str,
    formula: usize,
    oracle_name: &'static str,
    oracle: usize,
) -> Result<()> {
    if formula == oracle {
        Ok(())
    } else {
        Err(Error::OracleMismatch {
            field,
            formula,
            oracle_name,
            oracle,
        })
    }
}

/// Every invariant of `S_{H,τ}`, cross-checked up to `level`.
pub fn full_report(tau: &PointPermutation, level: OracleLevel) -> Result<InvariantReport> {
    let r = tau.r();
    let l = distension(tau)?;
    let preserved = preserved_stars(tau);
    let k = deficiency(tau)?;
    let rank = rank_formula(r, l);
    let kernel_dim = kernel_formula(r, k);
    let mut rank_provenance = vec![Provenance::Formula];
    let mut kernel_provenance = vec![Provenance::Formula];
    if level >= OracleLevel::Structural {
        let code = ConcatCode::new(tau.clone())?;
        confirm("rank", rank, "span_oracle", rank_span_oracle(&code)?)?;
        rank_provenance.push(Provenance::SpanOracle);
        let structural = kernel_structural_oracle(&code)?;
        confirm("kernel", kernel_dim, "structural_oracle", structural.dim())?;
        kernel_provenance.push(Provenance::StructuralOracle);
        if level >= OracleLevel::Enumeration {
            confirm(
                "rank",
                rank,
                "enumeration_oracle",
                rank_enumeration_oracle(&code)?,
            )?;
            rank_provenance.push(Provenance::EnumerationOracle);
            let brute = kernel_bruteforce_oracle(&code)?;
            confirm("kernel", kernel_dim, "enumeration_oracle", brute.dim())?;
            if brute != structural {
                return Err(Error::Precondition(
                    "structural and brute-force kernels differ as subspaces".into(),
                ));
            }
            kernel_provenance.push(Provenance::EnumerationOracle);
        }
    }
    Ok(InvariantReport {
        r,
        distension: l,
        deficiency: k,
        rank,
        kernel_dim,
        preserved_star_labels: preserved,
        rank_provenance,
        kernel_provenance,
    })
}

/// Outcome of checking additivity of `(l, k)` under `τ|σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma3Check {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub combined: (usize, usize),
}

impl Lemma3Check {
    pub fn holds(&self) -> bool {
        self.combined == (self.first.0 + self.second.0, self.first.1 + self.second.1)
    }
}

/// Computes `(l, k)` of `τ`, `σ` and, directly on `F^{r1+r2}`, of `τ|σ`.
pub fn lemma3_check(tau: &PointPermutation, sigma: &PointPermutation) -> Result<Lemma3Check> {
    let joint = tau.concat(sigma);
    Ok(Lemma3Check {
        first: (distension(tau)?, deficiency(tau)?),
        second: (distension(sigma)?, deficiency(sigma)?),
        combined: (distension(&joint)?, deficiency(&joint)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::example1_tau;

    fn example() -> PointPermutation {
        example1_tau().into_tau()
    }

    #[test]
    fn distension_examples() {
        assert_eq!(distension(&PointPermutation::identity(3)).unwrap(), 0);
        assert_eq!(distension(&example()).unwrap(), 3);
        let tt = example().concat(&example());
        assert_eq!(distension(&tt).unwrap(), 6);
        assert_eq!(distension_by_parity_checks(&example()), 3);
        assert_eq!(distension_by_parity_checks(&tt), 6);
    }

    #[test]
    fn example_intersection_is_zero_and_all_one() {
        let h = ExtHamming::new(3).unwrap();
        let tau = example();
        let images: Vec<_> = h
            .basis()
            .iter()
            .map(|b| tau.permute_vector(b).unwrap())
            .collect();
        let common = h
            .subspace()
            .intersection(&row_reduce(8, &images).unwrap())
            .unwrap();
        assert_eq!(common.dim(), 1);
        assert_eq!(common.basis()[0], BitVector::ones(8));
    }

    #[test]
    fn stars_and_deficiency() {
        assert_eq!(preserved_stars(&PointPermutation::identity(3)).len(), 7);
        assert!(preserved_stars(&example()).is_empty());
        assert_eq!(deficiency(&PointPermutation::identity(4)).unwrap(), 0);
        assert_eq!(deficiency(&example()).unwrap(), 3);
        assert_eq!(deficiency(&example().concat(&example())).unwrap(), 6);
        let m = crate::gf2::BitMatrix::parse("0110,1000,0011,0001").unwrap();
        let linear = PointPermutation::from_matrix(&m).unwrap();
        assert_eq!(preserved_stars(&linear).len(), 15);
    }

    #[test]
    fn formulas() {
        assert_eq!(rank_formula(3, 3), 14);
        assert_eq!(rank_formula(3, 0), 11);
        assert_eq!(rank_formula(6, 6), 126);
        assert_eq!(kernel_formula(3, 3), 8);
        assert_eq!(kernel_formula(3, 0), 11);
        assert_eq!(kernel_formula(6, 6), 114);
    }

    #[test]
    fn oracles_on_small_codes() {
        let id = ConcatCode::new(PointPermutation::identity(3)).unwrap();
        assert_eq!(rank_span_oracle(&id).unwrap(), 11);
        assert_eq!(kernel_structural_oracle(&id).unwrap().dim(), 11);
        let ex = ConcatCode::new(example()).unwrap();
        assert_eq!(rank_span_oracle(&ex).unwrap(), 14);
        assert_eq!(kernel_structural_oracle(&ex).unwrap().dim(), 8);
        assert_eq!(rank_enumeration_oracle(&ex).unwrap(), 14);
        assert_eq!(kernel_bruteforce_oracle(&ex).unwrap().dim(), 8);
        assert!(rank_span_oracle(&ex.puncture().unwrap()).is_err());
    }

    #[test]
    fn report_examples() {
        let rep = full_report(&example(), OracleLevel::Enumeration).unwrap();
        assert_eq!(rep.summary_line(), "r=3 l=3 k=3 rank=14 ker=8");
        assert_eq!(rep.rank_provenance.len(), 3);
        let id = full_report(&PointPermutation::identity(5), OracleLevel::Structural).unwrap();
        assert_eq!((id.rank, id.kernel_dim), (57, 57));
        assert!(full_report(&PointPermutation::identity(4), OracleLevel::Enumeration).is_err());
        assert_eq!(
            rep.to_tsv_line(),
            "3\t3\t3\t14\t8\trank:formula+span_oracle+enumeration_oracle;\
             kernel:formula+structural_oracle+enumeration_oracle"
        );
    }

    #[test]
    fn additivity_examples() {
        let id = PointPermutation::identity(3);
        let c = lemma3_check(&id, &id).unwrap();
        assert!(c.holds());
        assert_eq!(c.combined, (0, 0));
        let c = lemma3_check(&example(), &example()).unwrap();
        assert!(c.holds());
        assert_eq!(c.combined, (6, 6));
        let c = lemma3_check(&example(), &id).unwrap();
        assert_eq!(c.combined, (3, 3));
    }
}
