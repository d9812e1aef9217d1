//! The concatenated code `S_{H,τ} = ⋃_a H_a × H_{τ(a)}`, its puncturing
//! `S'_{H,τ} = ⋃_a H'_a × H_{τ(a)}`, and the regular group `Γ` of
//! automorphisms acting on it.
//!
//! Coordinates: the first half carries the labels `0..2^r` in ascending
//! order, then the second half does the same. The punctured code drops the
//! first-half coordinate labelled `0`.
//!
//! Small codes (length at most 64) are also handled as packed words whose
//! integer value is the codeword's bitstring, first coordinate most
//! significant; sorting such words sorts the codewords as integers.

use std::rc::Rc;

use crate::affine::{GroupAutomorphism, RegularSubgroup};
use crate::error::{Error, Result};
use crate::gf2::{format_label, BitVector};
use crate::hamming::{
    coset_index, coset_representative, label_sum, punctured_label_sum, ExtHamming, PointPermutation,
};

/// Largest `r` for which codewords may be enumerated.
pub const MAX_ENUM_R: usize = 4;

/// `S_{H,τ}` (or its puncturing), represented implicitly by `(r, τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcatCode {
    tau: PointPermutation,
    punctured: bool,
}

impl ConcatCode {
    pub fn new(tau: PointPermutation) -> Result<Self> {
        if tau.r() < 2 {
            return Err(Error::RankOutOfRange {
                r: tau.r(),
                min: 2,
                max: crate::gf2::MAX_R,
            });
        }
        Ok(Self {
            tau,
            punctured: false,
        })
    }

    pub fn new_punctured(tau: PointPermutation) -> Result<Self> {
        Self::new(tau)?.puncture()
    }

    /// Drops the first-half coordinate labelled `0`.
    pub fn puncture(&self) -> Result<Self> {
        if self.punctured {
            return Err(Error::Precondition("code is already punctured".into()));
        }
        Ok(Self {
            tau: self.tau.clone(),
            punctured: true,
        })
    }

    /// The extended code this one was punctured from (or itself).
    pub fn extended(&self) -> Self {
        Self {
            tau: self.tau.clone(),
            punctured: false,
        }
    }

    pub fn r(&self) -> usize {
        self.tau.r()
    }

    pub fn tau(&self) -> &PointPermutation {
        &self.tau
    }

    pub fn is_punctured(&self) -> bool {
        self.punctured
    }

    pub fn half_length(&self) -> usize {
        1 << self.r()
    }

    pub fn first_half_length(&self) -> usize {
        self.half_length() - usize::from(self.punctured)
    }

    pub fn length(&self) -> usize {
        self.first_half_length() + self.half_length()
    }

    /// `log2 |S| = 2^(r+1) - r - 2`, the same for both forms.
    pub fn log2_size(&self) -> usize {
        (2 << self.r()) - self.r() - 2
    }

    pub fn size(&self) -> Option<u128> {
        1u128.checked_shl(self.log2_size() as u32)
    }

    /// Coset label of the first half, or `None` when the first half cannot
    /// start a codeword (odd weight in the extended code).
    fn first_half_coset(&self, x: &BitVector) -> Option<u32> {
        if self.punctured {
            Some(punctured_label_sum(x))
        } else {
            coset_index(x)
        }
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.length() {
            return Err(Error::DimensionMismatch {
                expected: self.length(),
                found: v.len(),
            });
        }
        let split = self.first_half_length();
        let x = v.slice(0, split);
        let y = v.slice(split, v.len());
        Ok(match (self.first_half_coset(&x), coset_index(&y)) {
            (Some(a), Some(b)) => self.tau.apply(a) == b,
            _ => false,
        })
    }

    /// Membership for a packed codeword; requires `length() <= 64`.
    pub fn contains_word(&self, w: u64) -> bool {
        debug_assert!(self.length() <= 64);
        let half = self.half_length();
        let first = self.first_half_length();
        let y = w & (u64::MAX >> (64 - half));
        let x = w >> half;
        if y.count_ones() % 2 == 1 {
            return false;
        }
        if !self.punctured && x.count_ones() % 2 == 1 {
            return false;
        }
        // bit p of a half of length m holds coordinate m - 1 - p
        let label_of_first = |p: u32| -> u32 {
            let i = first as u32 - 1 - p;
            if self.punctured {
                i + 1
            } else {
                i
            }
        };
        let a = ones(x).fold(0u32, |acc, p| acc ^ label_of_first(p));
        let b = ones(y).fold(0u32, |acc, p| acc ^ (half as u32 - 1 - p));
        self.tau.apply(a) == b
    }

    fn enum_guard(&self) -> Result<()> {
        if self.r() > MAX_ENUM_R {
            return Err(Error::EnumerationGuard {
                r: self.r(),
                max: MAX_ENUM_R,
            });
        }
        Ok(())
    }

    /// All codewords as packed words, ascending.
    pub fn enumerate_words(&self) -> Result<impl Iterator<Item = u64> + '_> {
        self.enum_guard()?;
        let r = self.r();
        let half = self.half_length();
        let h_words: Vec<u64> = ExtHamming::new(r)?
            .codewords()?
            .iter()
            .map(BitVector::to_word)
            .collect();
        let cosets: Rc<Vec<Vec<u64>>> = (0..half as u32)
            .map(|b| {
                let rep = coset_representative(r, b).to_word();
                let mut c: Vec<u64> = h_words.iter().map(|h| h ^ rep).collect();
                c.sort_unstable();
                c
            })
            .collect::<Vec<_>>()
            .into();
        let first = self.first_half_length();
        let punctured = self.punctured;
        let firsts = (0u64..1 << first).filter(move |x| punctured || x.count_ones() % 2 == 0);
        Ok(firsts.flat_map(move |x| {
            let a = ones(x).fold(0u32, |acc, p| {
                let i = first as u32 - 1 - p;
                acc ^ if punctured { i + 1 } else { i }
            });
            let cs = Rc::clone(&cosets);
            let t = self.tau.apply(a) as usize;
            (0..cs[t].len()).map(move |j| (x << half) | cs[t][j])
        }))
    }

    /// All codewords, ascending as integers.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = BitVector> + '_> {
        let n = self.length();
        Ok(self
            .enumerate_words()?
            .map(move |w| BitVector::from_word(n, w)))
    }
}

fn ones(mut w: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let p = w.trailing_zeros();
            w &= w - 1;
            Some(p)
        }
    })
}

/// Element `(x|y, π_a|π_{τ(a)})` of `Γ`, with `x ∈ H_a`, `y ∈ H_{τ(a)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaElement {
    a: u32,
    x: BitVector,
    y: BitVector,
}

impl GammaElement {
    pub fn coset(&self) -> u32 {
        self.a
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn y(&self) -> &BitVector {
        &self.y
    }

    /// The translation part `x|y`, which is also the image of zero.
    pub fn translation(&self) -> BitVector {
        self.x.concat(&self.y)
    }
}

/// The group `Γ` attached to a regular subgroup and one of its
/// automorphisms. Each `π_b(c) = M_b c` is cached as a label table.
#[derive(Clone, Debug)]
pub struct Gamma<'g> {
    group: &'g RegularSubgroup,
    tau: PointPermutation,
    perms: Vec<Vec<u32>>,
}

fn permute(table: &[u32], v: &BitVector) -> BitVector {
    BitVector::from_indices(v.len(), v.iter_ones().map(|i| table[i] as usize))
}

impl<'g> Gamma<'g> {
    pub fn new(group: &'g RegularSubgroup, aut: &GroupAutomorphism) -> Result<Self> {
        Self::from_permutation(group, aut.tau().clone())
    }

    /// Like [`Gamma::new`] but takes any zero-fixing bijection. If `tau` is
    /// not induced by an automorphism, [`Gamma::compose`] reports the
    /// closure failures.
    pub fn from_permutation(group: &'g RegularSubgroup, tau: PointPermutation) -> Result<Self> {
        if tau.r() != group.r() {
            return Err(Error::DimensionMismatch {
                expected: group.r(),
                found: tau.r(),
            });
        }
        let n = group.order() as u64;
        let perms = group
            .matrices()
            .iter()
            .map(|m| (0..n).map(|c| m.apply(c) as u32).collect())
            .collect();
        Ok(Self { group, tau, perms })
    }

    pub fn r(&self) -> usize {
        self.group.r()
    }

    pub fn group(&self) -> &RegularSubgroup {
        self.group
    }

    pub fn tau(&self) -> &PointPermutation {
        &self.tau
    }

    pub fn code(&self) -> ConcatCode {
        ConcatCode::new(self.tau.clone()).expect("r >= 2 checked by the group")
    }

    /// The label permutation `π_b`.
    pub fn pi(&self, b: u32) -> &[u32] {
        &self.perms[b as usize]
    }

    pub fn identity(&self) -> GammaElement {
        let n = self.group.order();
        GammaElement {
            a: 0,
            x: BitVector::zeros(n),
            y: BitVector::zeros(n),
        }
    }

    /// Builds the element with translation `x|y`.
    pub fn element(&self, x: BitVector, y: BitVector) -> Result<GammaElement> {
        let n = self.group.order();
        for v in [&x, &y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let a = coset_index(&x).ok_or(Error::OddWeight)?;
        let b = coset_index(&y).ok_or(Error::OddWeight)?;
        let want = self.tau.apply(a);
        if b != want {
            let r = self.r();
            return Err(Error::CosetMismatch {
                expected: format_label(want, r),
                found: format_label(b, r),
            });
        }
        Ok(GammaElement { a, x, y })
    }

    /// The full coordinate permutation `π_a|π_{τ(a)}` on `2^(r+1)` positions.
    pub fn coordinate_permutation(&self, g: &GammaElement) -> Vec<usize> {
        let n = self.group.order();
        let left = self.pi(g.a);
        let right = self.pi(self.tau.apply(g.a));
        left.iter()
            .map(|&c| c as usize)
            .chain(right.iter().map(|&c| n + c as usize))
            .collect()
    }

    /// `(x|y, π)(v) = x|y + π(v)`.
    pub fn apply(&self, g: &GammaElement, v: &BitVector) -> Result<BitVector> {
        let n = self.group.order();
        if v.len() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: v.len(),
            });
        }
        let left = &g.x ^ &permute(self.pi(g.a), &v.slice(0, n));
        let right = &g.y ^ &permute(self.pi(self.tau.apply(g.a)), &v.slice(n, 2 * n));
        Ok(left.concat(&right))
    }

    /// Action of the punctured element `(x', π')` on a vector of the
    /// punctured code (length `2^(r+1) - 1`).
    pub fn apply_punctured(&self, g: &GammaElement, v: &BitVector) -> Result<BitVector> {
        let n = self.group.order();
        if v.len() != 2 * n - 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * n - 1,
                found: v.len(),
            });
        }
        let full = BitVector::zeros(1).concat(v);
        let image = self.apply(g, &full)?;
        Ok(image.slice(1, 2 * n))
    }

    /// Composition `g · h`, checked to land back in `Γ`: the result's
    /// first half lies in `H_{g_a(b)}`, its second half in `H_{τ(g_a(b))}`,
    /// and its permutation part is `π_{g_a(b)}|π_{τ(g_a(b))}`.
    pub fn compose(&self, g: &GammaElement, h: &GammaElement) -> Result<GammaElement> {
        let (ta, tb) = (self.tau.apply(g.a), self.tau.apply(h.a));
        let w = &g.x ^ &permute(self.pi(g.a), &h.x);
        let z = &g.y ^ &permute(self.pi(ta), &h.y);
        let violation = || Error::ClosureViolation {
            a: format_label(g.a, self.r()),
            b: format_label(h.a, self.r()),
        };
        let c = coset_index(&w).ok_or_else(violation)?;
        if coset_index(&z) != Some(self.tau.apply(c)) {
            return Err(violation());
        }
        let composed_left = self.pi(h.a).iter().map(|&i| self.pi(g.a)[i as usize]);
        let composed_right = self.pi(tb).iter().map(|&i| self.pi(ta)[i as usize]);
        if !composed_left.eq(self.pi(c).iter().copied())
            || !composed_right.eq(self.pi(self.tau.apply(c)).iter().copied())
        {
            return Err(violation());
        }
        Ok(GammaElement { a: c, x: w, y: z })
    }

    /// Every element of `Γ`, in order of coset label then ascending `x`, `y`.
    /// Only for `r <= 3` (`|Γ| = 2048`).
    pub fn elements(&self) -> Result<Vec<GammaElement>> {
        let r = self.r();
        if r > 3 {
            return Err(Error::EnumerationGuard { r, max: 3 });
        }
        let h = ExtHamming::new(r)?.codewords()?;
        let n = self.group.order() as u32;
        let mut out = Vec::with_capacity(h.len() * h.len() * n as usize);
        for a in 0..n {
            let ra = coset_representative(r, a);
            let rb = coset_representative(r, self.tau.apply(a));
            for u in &h {
                for v in &h {
                    out.push(GammaElement {
                        a,
                        x: u ^ &ra,
                        y: v ^ &rb,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Sanity check used by tests: `label_sum` of both halves match the
    /// element's coset data.
    pub fn is_well_formed(&self, g: &GammaElement) -> bool {
        g.x.weight().is_multiple_of(2)
            && g.y.weight().is_multiple_of(2)
            && label_sum(&g.x) == g.a
            && label_sum(&g.y) == self.tau.apply(g.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{example1_tau, hegedus_d4, translation_subgroup};
    use crate::hamming::coset_representative;

    fn example_code() -> ConcatCode {
        ConcatCode::new(example1_tau().into_tau()).unwrap()
    }

    #[test]
    fn lengths_and_sizes() {
        let c = example_code();
        assert_eq!(c.length(), 16);
        assert_eq!(c.log2_size(), 11);
        let p = c.puncture().unwrap();
        assert_eq!(p.length(), 15);
        assert_eq!(p.size(), Some(2048));
        assert!(p.puncture().is_err());
    }

    #[test]
    fn membership_examples() {
        let c = example_code();
        assert!(c.contains(&BitVector::zeros(16)).unwrap());
        let tau = c.tau().clone();
        for a in 0..8 {
            let v = coset_representative(3, a).concat(&coset_representative(3, tau.apply(a)));
            assert!(c.contains(&v).unwrap());
        }
        let odd = BitVector::from_indices(16, [0, 8, 9]);
        assert!(!c.contains(&odd).unwrap());
        assert!(c.contains(&BitVector::zeros(15)).is_err());
        assert!(c
            .puncture()
            .unwrap()
            .contains(&BitVector::zeros(15))
            .unwrap());
    }

    #[test]
    fn packed_and_unpacked_membership_agree() {
        for code in [example_code(), example_code().puncture().unwrap()] {
            let n = code.length();
            for w in (0u64..1 << n).step_by(37) {
                let v = BitVector::from_word(n, w);
                assert_eq!(code.contains(&v).unwrap(), code.contains_word(w));
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        for code in [example_code(), example_code().puncture().unwrap()] {
            let words: Vec<u64> = code.enumerate_words().unwrap().collect();
            assert_eq!(words.len(), 2048);
            assert!(words.windows(2).all(|p| p[0] < p[1]));
            assert!(words.iter().all(|&w| code.contains_word(w)));
        }
    }

    #[test]
    fn enumeration_matches_membership_exhaustively() {
        let code = example_code();
        let listed: std::collections::HashSet<u64> = code.enumerate_words().unwrap().collect();
        let counted = (0u64..1 << 16).filter(|&w| code.contains_word(w)).count();
        assert_eq!(counted, listed.len());
        assert!((0u64..1 << 16)
            .filter(|&w| code.contains_word(w))
            .all(|w| listed.contains(&w)));
    }

    #[test]
    fn enumeration_guard() {
        let code = ConcatCode::new(PointPermutation::identity(5)).unwrap();
        assert!(code.enumerate_words().is_err());
    }

    #[test]
    fn gamma_elements() {
        let g = hegedus_d4();
        let t = example1_tau();
        let gamma = Gamma::new(&g, &t).unwrap();
        let id = gamma.identity();
        assert_eq!(
            gamma
                .element(BitVector::zeros(8), BitVector::zeros(8))
                .unwrap(),
            id
        );
        for a in 0..8 {
            let x = coset_representative(3, a);
            let y = coset_representative(3, t.tau().apply(a));
            let e = gamma.element(x.clone(), y.clone()).unwrap();
            assert_eq!(
                gamma.apply(&e, &BitVector::zeros(16)).unwrap(),
                x.concat(&y)
            );
        }
        // 0b001 is moved by τ, so H_001 is not H_τ(001)
        let bad = gamma.element(coset_representative(3, 1), coset_representative(3, 1));
        assert!(matches!(bad, Err(Error::CosetMismatch { .. })));
    }

    #[test]
    fn gamma_identity_acts_trivially() {
        let g = hegedus_d4();
        let t = example1_tau();
        let gamma = Gamma::new(&g, &t).unwrap();
        let code = gamma.code();
        for v in code.enumerate().unwrap().take(50) {
            assert_eq!(gamma.apply(&gamma.identity(), &v).unwrap(), v);
        }
    }

    #[test]
    fn composition_follows_the_group_law_on_cosets() {
        let g = hegedus_d4();
        let t = example1_tau();
        let gamma = Gamma::new(&g, &t).unwrap();
        for a in 0..8u32 {
            for b in 0..8u32 {
                let ea = gamma
                    .element(
                        coset_representative(3, a),
                        coset_representative(3, t.tau().apply(a)),
                    )
                    .unwrap();
                let eb = gamma
                    .element(
                        coset_representative(3, b),
                        coset_representative(3, t.tau().apply(b)),
                    )
                    .unwrap();
                let c = gamma.compose(&ea, &eb).unwrap();
                assert_eq!(c.coset(), g.act(a, b));
                assert!(gamma.is_well_formed(&c));
                assert_eq!(gamma.compose(&ea, &gamma.identity()).unwrap(), ea);
            }
        }
    }

    #[test]
    fn permutation_parts_fix_the_punctured_coordinate() {
        let g = translation_subgroup(3).unwrap();
        let t = GroupAutomorphism::identity(3);
        let gamma = Gamma::new(&g, &t).unwrap();
        for e in gamma.elements().unwrap().iter().step_by(97) {
            assert_eq!(gamma.coordinate_permutation(e)[0], 0);
        }
    }
}
