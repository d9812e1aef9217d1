//! The extended Hamming code `H` of length `2^r` with coordinates indexed
//! by the labels of `F^r`, its cosets `H_a = H + e_a + e_0`, the punctured
//! code `H'`, stars, and the action of label permutations on vectors.

use crate::error::{Error, Result};
use crate::gf2::{format_label, row_reduce, BitMatrix, BitVector, Subspace, MAX_R};

fn check_r(r: usize) -> Result<()> {
    if (2..=MAX_R).contains(&r) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange {
            r,
            min: 2,
            max: MAX_R,
        })
    }
}

/// XOR of the labels in the support of `x`.
pub fn label_sum(x: &BitVector) -> u32 {
    x.iter_ones().fold(0u32, |acc, a| acc ^ a as u32)
}

/// Label `a` with `x ∈ H_a`, or `None` when `x` has odd weight.
pub fn coset_index(x: &BitVector) -> Option<u32> {
    if x.weight() % 2 == 1 {
        None
    } else {
        Some(label_sum(x))
    }
}

/// The coset representative `e_a + e_0` (zero for `a = 0`).
pub fn coset_representative(r: usize, a: u32) -> BitVector {
    BitVector::from_indices(1 << r, [0, a as usize])
}

/// The extended Hamming code, stored as a canonical basis plus its
/// defining membership predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtHamming {
    r: usize,
    basis: Subspace,
}

impl ExtHamming {
    pub fn new(r: usize) -> Result<Self> {
        check_r(r)?;
        let n = 1usize << r;
        // One generator per label c of bit-weight >= 2: c together with the
        // unit labels of its bits sums to zero; e_0 fixes the parity.
        let gens: Vec<BitVector> = (1..n as u32)
            .filter(|c| c.count_ones() >= 2)
            .map(|c| {
                let mut v = BitVector::zeros(n);
                v.set(c as usize, true);
                for b in 0..r {
                    if (c >> b) & 1 == 1 {
                        v.set(1 << b, true);
                    }
                }
                if v.weight() % 2 == 1 {
                    v.set(0, true);
                }
                v
            })
            .collect();
        let basis = row_reduce(n, &gens)?;
        debug_assert_eq!(basis.dim(), n - r - 1);
        Ok(Self { r, basis })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn length(&self) -> usize {
        1 << self.r
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.basis
    }

    pub fn basis(&self) -> &[BitVector] {
        self.basis.basis()
    }

    /// Even weight and zero label sum.
    pub fn contains(&self, x: &BitVector) -> bool {
        x.len() == self.length() && x.weight().is_multiple_of(2) && label_sum(x) == 0
    }

    /// All `2^(2^r - r - 1)` codewords; only for `r <= 4`.
    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        if self.r > 4 {
            return Err(Error::EnumerationGuard { r: self.r, max: 4 });
        }
        Ok(self.basis.elements())
    }

    pub fn punctured(&self) -> PuncturedHamming {
        PuncturedHamming { r: self.r }
    }
}

/// `H'`: `H` punctured at the coordinate labelled `0`. Coordinate `i`
/// carries the nonzero label `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PuncturedHamming {
    r: usize,
}

impl PuncturedHamming {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn length(&self) -> usize {
        (1 << self.r) - 1
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        x.len() == self.length() && punctured_label_sum(x) == 0
    }

    /// Canonical basis obtained by deleting coordinate 0 from a basis of `H`.
    pub fn basis(&self) -> Result<Subspace> {
        let h = ExtHamming::new(self.r)?;
        let n = h.length();
        let punctured: Vec<BitVector> = h.basis().iter().map(|b| b.slice(1, n)).collect();
        row_reduce(n - 1, &punctured)
    }

    pub fn dim(&self) -> usize {
        (1 << self.r) - self.r - 1
    }
}

/// Label sum of a vector on the nonzero labels (coordinate `i` ↔ label `i+1`).
pub fn punctured_label_sum(x: &BitVector) -> u32 {
    x.iter_ones().fold(0u32, |acc, i| acc ^ (i as u32 + 1))
}

/// `Star(a)`: the weight-3 supports `{a, b, a+b}` of `H'` through `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub a: u32,
    /// Sorted triples, each sorted ascending.
    pub triples: Vec<[u32; 3]>,
}

pub fn star(r: usize, a: u32) -> Result<Star> {
    check_r(r)?;
    if a == 0 {
        return Err(Error::ZeroLabel);
    }
    let n = 1u32 << r;
    if a >= n {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: 32 - a.leading_zeros() as usize,
        });
    }
    let mut triples: Vec<[u32; 3]> = (1..n)
        .filter(|&b| b != a && b < (a ^ b))
        .map(|b| {
            let mut t = [a, b, a ^ b];
            t.sort_unstable();
            t
        })
        .collect();
    triples.sort_unstable();
    Ok(Star { a, triples })
}

/// A bijection of `F^r` fixing `0`, acting on coordinates of `F^{2^r}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointPermutation {
    r: usize,
    map: Vec<u32>,
}

impl PointPermutation {
    pub fn new(r: usize, map: Vec<u32>) -> Result<Self> {
        if r > MAX_R {
            return Err(Error::RankOutOfRange {
                r,
                min: 1,
                max: MAX_R,
            });
        }
        let n = 1usize << r;
        if map.len() != n {
            return Err(Error::NotZeroFixingBijection(format!(
                "table has {} entries, expected {n}",
                map.len()
            )));
        }
        if map[0] != 0 {
            return Err(Error::NotZeroFixingBijection(format!(
                "0 is sent to {}",
                format_label(map[0], r)
            )));
        }
        let mut seen = vec![false; n];
        for &t in &map {
            if t as usize >= n || std::mem::replace(&mut seen[t as usize], true) {
                return Err(Error::NotZeroFixingBijection(format!(
                    "value {t} repeated or out of range"
                )));
            }
        }
        Ok(Self { r, map })
    }

    pub fn identity(r: usize) -> Self {
        Self {
            r,
            map: (0..1u32 << r).collect(),
        }
    }

    /// The linear map `a ↦ M a`.
    pub fn from_matrix(m: &BitMatrix) -> Result<Self> {
        if !m.is_invertible() {
            return Err(Error::SingularMatrix(m.to_string()));
        }
        let r = m.rows();
        Self::new(r, (0..1u64 << r).map(|a| m.apply(a) as u32).collect())
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(a, &t)| a as u32 == t)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (a, &t) in self.map.iter().enumerate() {
            inv[t as usize] = a as u32;
        }
        Self {
            r: self.r,
            map: inv,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r);
        Self {
            r: self.r,
            map: other.map.iter().map(|&b| self.map[b as usize]).collect(),
        }
    }

    /// `τ|σ : (a|b) ↦ τ(a)|σ(b)` on `F^{r1 + r2}`.
    pub fn concat(&self, other: &Self) -> Self {
        let r2 = other.r;
        let map = self
            .map
            .iter()
            .flat_map(|&ta| other.map.iter().map(move |&sb| (ta << r2) | sb))
            .collect();
        Self {
            r: self.r + r2,
            map,
        }
    }

    /// True when `τ(a + c) = τ(a) + τ(c)` for all `a, c`.
    pub fn is_linear(&self) -> bool {
        let n = self.map.len() as u32;
        (1..n).all(|a| (0..n).all(|c| self.apply(a ^ c) == self.apply(a) ^ self.apply(c)))
    }

    /// `(τ(x))_{τ(a)} = x_a`.
    pub fn permute_vector(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.map.len() {
            return Err(Error::DimensionMismatch {
                expected: self.map.len(),
                found: x.len(),
            });
        }
        Ok(BitVector::from_indices(
            x.len(),
            x.iter_ones().map(|a| self.map[a] as usize),
        ))
    }
}

impl std::fmt::Debug for PointPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PointPermutation(r={}, {:?})", self.r, self.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn support(n: usize, s: &[usize]) -> BitVector {
        BitVector::from_indices(n, s.iter().copied())
    }

    #[test]
    fn small_codewords() {
        let h = ExtHamming::new(3).unwrap();
        assert_eq!(h.dim(), 4);
        assert!(h.contains(&support(8, &[0, 1, 2, 3])));
        assert!(!h.contains(&support(8, &[0, 1, 2, 4])));
        assert!(h.contains(&BitVector::ones(8)));
        assert!(h.basis().iter().all(|b| h.contains(b)));
    }

    #[test]
    fn dimension_formula_and_range() {
        for r in 2..=10 {
            assert_eq!(ExtHamming::new(r).unwrap().dim(), (1 << r) - r - 1);
        }
        assert!(ExtHamming::new(1).is_err());
        assert!(ExtHamming::new(17).is_err());
    }

    #[test]
    fn label_sums_and_cosets() {
        assert_eq!(label_sum(&support(8, &[0, 5])), 5);
        assert_eq!(label_sum(&BitVector::zeros(8)), 0);
        assert_eq!(label_sum(&support(8, &[1, 2, 3])), 0);
        assert_eq!(coset_index(&coset_representative(3, 6)), Some(6));
        assert_eq!(coset_index(&support(8, &[0, 1, 2, 3])), Some(0));
        assert_eq!(coset_index(&support(8, &[1, 2, 4])), None);
    }

    #[test]
    fn cosets_partition_even_weight_vectors() {
        let h = ExtHamming::new(3).unwrap();
        let mut seen = [0usize; 8];
        for w in 0u64..256 {
            let x = BitVector::from_word(8, w);
            if x.weight() % 2 == 1 {
                continue;
            }
            let a = coset_index(&x).unwrap();
            let shifted = &x ^ &coset_representative(3, a);
            assert!(h.contains(&shifted));
            seen[a as usize] += 1;
        }
        assert_eq!(seen, [16; 8]);
    }

    #[test]
    fn stars() {
        assert_eq!(star(2, 1).unwrap().triples, vec![[1, 2, 3]]);
        assert_eq!(
            star(3, 1).unwrap().triples,
            vec![[1, 2, 3], [1, 4, 5], [1, 6, 7]]
        );
        assert_eq!(star(5, 9).unwrap().triples.len(), 15);
        assert_eq!(star(3, 0), Err(Error::ZeroLabel));
        for t in star(4, 7).unwrap().triples {
            assert_eq!(t[0] ^ t[1] ^ t[2], 0);
        }
    }

    #[test]
    fn stars_cover_weight_three_words_three_times() {
        let hp = ExtHamming::new(3).unwrap().punctured();
        let mut count = std::collections::HashMap::new();
        for a in 1..8 {
            for t in star(3, a).unwrap().triples {
                *count.entry(t).or_insert(0) += 1;
            }
        }
        let mut weight3 = 0;
        for w in 0u64..128 {
            let x = BitVector::from_word(7, w);
            if x.weight() == 3 && hp.contains(&x) {
                weight3 += 1;
                let labels: Vec<u32> = x.iter_ones().map(|i| i as u32 + 1).collect();
                assert_eq!(count[&[labels[0], labels[1], labels[2]]], 3);
            }
        }
        assert_eq!(weight3, count.len());
    }

    #[test]
    fn punctured_code() {
        let hp = ExtHamming::new(3).unwrap().punctured();
        // labels 1, 2, 3 sit at coordinates 0, 1, 2
        assert!(hp.contains(&support(7, &[0, 1, 2])));
        assert!(!hp.contains(&support(7, &[0, 1])));
        assert_eq!(hp.basis().unwrap().dim(), 4);
        assert_eq!(hp.dim(), 4);
    }

    #[test]
    fn permutations_validate() {
        assert!(PointPermutation::new(2, vec![1, 0, 2, 3]).is_err());
        assert!(PointPermutation::new(2, vec![0, 1, 1, 3]).is_err());
        assert!(PointPermutation::new(2, vec![0, 1, 2]).is_err());
        let t = PointPermutation::new(2, vec![0, 2, 3, 1]).unwrap();
        assert_eq!(t.compose(&t.inverse()), PointPermutation::identity(2));
    }

    #[test]
    fn permute_vector_basics() {
        let x = support(8, &[0, 1, 2, 3]);
        assert_eq!(PointPermutation::identity(3).permute_vector(&x).unwrap(), x);
        let swap = PointPermutation::new(3, vec![0, 2, 1, 3, 4, 5, 6, 7]).unwrap();
        let twice = swap
            .permute_vector(&swap.permute_vector(&x).unwrap())
            .unwrap();
        assert_eq!(twice, x);
        assert!(swap.permute_vector(&BitVector::zeros(4)).is_err());
    }

    #[test]
    fn concat_of_permutations() {
        let t = PointPermutation::new(2, vec![0, 2, 3, 1]).unwrap();
        let id = PointPermutation::identity(1);
        let ts = t.concat(&id);
        assert_eq!(ts.r(), 3);
        for a in 0..4u32 {
            for b in 0..2u32 {
                assert_eq!(ts.apply((a << 1) | b), (t.apply(a) << 1) | b);
            }
        }
    }

    fn zero_fixing_bijection(r: usize) -> impl Strategy<Value = PointPermutation> {
        let n = 1u32 << r;
        Just((1..n).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(move |rest| {
                let mut map = vec![0];
                map.extend(rest);
                PointPermutation::new(r, map).unwrap()
            })
    }

    proptest! {
        #[test]
        fn even_vectors_land_in_their_coset(r in 2usize..=6, seed in any::<u64>()) {
            let n = 1usize << r;
            let mut x = BitVector::zeros(n);
            let mut s = seed;
            for i in 0..n {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if s >> 63 == 1 { x.set(i, true); }
            }
            if x.weight() % 2 == 1 { x.flip(0); }
            let a = coset_index(&x).unwrap();
            let h = ExtHamming::new(r).unwrap();
            prop_assert!(h.contains(&(&x ^ &coset_representative(r, a))));
        }

        #[test]
        fn permuted_code_keeps_dimension(t in zero_fixing_bijection(4)) {
            let h = ExtHamming::new(4).unwrap();
            let images: Vec<BitVector> =
                h.basis().iter().map(|b| t.permute_vector(b).unwrap()).collect();
            prop_assert_eq!(row_reduce(16, &images).unwrap().dim(), h.dim());
            for (b, img) in h.basis().iter().zip(&images) {
                prop_assert_eq!(b.weight(), img.weight());
            }
        }
    }
}
