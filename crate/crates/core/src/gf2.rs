//! Dense linear algebra over GF(2).
//!
//! Two encodings live side by side here:
//!
//! * [`BitVector`] is a long, word-packed vector. Coordinate `i` is bit
//!   `i % 64` of word `i / 64`. It carries codewords of length `2^r` and
//!   `2^(r+1)`.
//! * Elements of `F^r` ("labels") and the rows of a [`BitMatrix`] are plain
//!   integers whose binary representation *is* the bitstring: the leftmost
//!   coordinate is the most significant bit. With this choice `001` is the
//!   label `1` and `110` is the label `6`, so labels sort lexicographically
//!   and coordinates of the Hamming code are numbered `0..2^r` in that order.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::error::{parse_err, Error, Result};

/// Largest supported dimension of the label space `F^r`.
pub const MAX_R: usize = 16;

/// Formats a label of `F^r` as a bitstring, leftmost coordinate first.
pub fn format_label(a: u32, r: usize) -> String {
    (0..r)
        .map(|j| {
            if (a >> (r - 1 - j)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Parses a bitstring of exactly `r` characters into a label.
pub fn parse_label(s: &str, r: usize) -> Result<u32> {
    if s.len() != r || r > 32 {
        return Err(parse_err(0, format!("expected {r} bits, got {s:?}")));
    }
    s.chars().try_fold(0u32, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(parse_err(0, format!("invalid bit {c:?} in {s:?}"))),
    })
}

#[inline]
pub(crate) fn parity(x: u64) -> u32 {
    x.count_ones() & 1
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Vector with ones exactly at `indices`. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            assert!(i < len, "index {i} out of range for length {len}");
            v.flip(i);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, first character = coordinate 0.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(parse_err(0, format!("invalid bit {c:?}"))),
            }
        }
        Ok(v)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// Builds a vector of length `len <= 64` from the integer value of its
    /// bitstring (coordinate 0 is the most significant bit).
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (word >> (len - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Inverse of [`BitVector::from_word`].
    pub fn to_word(&self) -> u64 {
        assert!(self.len <= 64);
        self.iter_ones()
            .fold(0u64, |acc, i| acc | (1u64 << (self.len - 1 - i)))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if bit {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Positions of the set coordinates, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    /// Lowest set coordinate at or after `start`.
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut k = start >> 6;
        let mut w = self.words[k] & (!0u64 << (start & 63));
        loop {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
            k += 1;
            if k == self.words.len() {
                return None;
            }
            w = self.words[k];
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    /// `self ^= other`, restricted to words from `from_word` on.
    #[inline]
    fn xor_tail(&mut self, other: &Self, from_word: usize) {
        for (a, b) in self.words[from_word..]
            .iter_mut()
            .zip(&other.words[from_word..])
        {
            *a ^= *b;
        }
    }

    pub fn checked_xor(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(self ^ other)
    }

    /// The concatenation `self | other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Self::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Coordinates `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len);
        let mut v = Self::zeros(end - start);
        for i in self.iter_ones().skip_while(|&i| i < start) {
            if i >= end {
                break;
            }
            v.set(i - start, true);
        }
        v
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bitstring())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors of different length");
        self.xor_tail(rhs, 0);
    }
}

impl BitXor<&BitVector> for &BitVector {
    type Output = BitVector;
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

/// A matrix over GF(2) with at most 64 columns.
///
/// Row `i` is stored as an integer whose bitstring is the row, so the
/// matrix `[[0,1,0],[1,0,0],[1,0,1]]` has rows `0b010, 0b100, 0b101`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= 64, "at most 64 columns are supported");
        Self {
            rows,
            cols,
            data: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i] = 1u64 << (n - 1 - i);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols > 64 {
            return Err(Error::DimensionMismatch {
                expected: 64,
                found: cols,
            });
        }
        if let Some(&bad) = rows.iter().find(|&&row| cols < 64 && row >> cols != 0) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: 64 - bad.leading_zeros() as usize,
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses `"010,100,101"`: comma separated row bitstrings.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        let cols = parts.first().map_or(0, |p| p.len());
        let rows = parts
            .iter()
            .map(|p| parse_label(p, cols).map(u64::from))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub fn row_words(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i] >> (self.cols - 1 - j)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let mask = 1u64 << (self.cols - 1 - j);
        if bit {
            self.data[i] |= mask;
        } else {
            self.data[i] &= !mask;
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|&row| {
                (0..self.cols)
                    .filter(|&j| (row >> (self.cols - 1 - j)) & 1 == 1)
                    .fold(0u64, |acc, j| acc ^ other.data[j])
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Matrix-vector product `self · v` for a column vector given as a label.
    pub fn mul_vec(&self, v: u64) -> Result<u64> {
        if self.cols < 64 && v >> self.cols != 0 {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: 64 - v.leading_zeros() as usize,
            });
        }
        Ok(self.apply(v))
    }

    /// Unchecked matrix-vector product.
    #[inline]
    pub(crate) fn apply(&self, v: u64) -> u64 {
        self.data
            .iter()
            .fold(0u64, |acc, &row| (acc << 1) | parity(row & v) as u64)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        rank_of_words(self.data.iter().copied())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let bit = 1u64 << (n - 1 - col);
            let pivot = (col..n).find(|&i| a[i] & bit != 0)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for i in 0..n {
                if i != col && a[i] & bit != 0 {
                    a[i] ^= a[col];
                    inv[i] ^= inv[col];
                }
            }
        }
        Some(Self {
            rows: n,
            cols: n,
            data: inv,
        })
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let cols = self.cols + other.cols;
        assert!(cols <= 64);
        let data = self
            .data
            .iter()
            .map(|&row| row << other.cols)
            .chain(other.data.iter().copied())
            .collect();
        Self {
            rows: self.rows + other.rows,
            cols,
            data,
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({self})")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &row) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_label(row as u32, self.cols))?;
        }
        Ok(())
    }
}

/// Rank of a set of vectors of length at most 64 held as integers.
pub fn rank_of_words(words: impl IntoIterator<Item = u64>) -> usize {
    // basis[b] holds a vector whose highest set bit is b
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut w in words {
        while w != 0 {
            let top = 63 - w.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = w;
                rank += 1;
                break;
            }
            w ^= basis[top];
        }
    }
    rank
}

/// A linear subspace of `F^n` kept in reduced row echelon form.
///
/// Each basis vector's pivot is its lowest set coordinate, pivots ascend
/// down the basis, and every pivot column is zero in all other basis rows.
/// Two subspaces are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<BitVector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<BitVector> {
        self.basis
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut v = v.clone();
        for b in &self.basis {
            let p = b.first_one().expect("basis vectors are nonzero");
            if v.get(p) {
                v.xor_tail(b, p >> 6);
            }
        }
        v.is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut e = Eliminator::new(self.ambient);
        for v in self.basis.iter().chain(&other.basis) {
            e.insert(v.clone());
        }
        Ok(e.finish())
    }

    /// `self ∩ other`, by the Zassenhaus sum-intersection algorithm.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        subspace_intersection(self, other)
    }

    /// Enumerates all `2^dim` elements. Only sensible for small dimensions.
    pub fn elements(&self) -> Vec<BitVector> {
        assert!(self.dim() < 31, "subspace too large to enumerate");
        let mut out = vec![BitVector::zeros(self.ambient)];
        for b in &self.basis {
            let extra: Vec<_> = out.iter().map(|v| v ^ b).collect();
            out.extend(extra);
        }
        out
    }
}

/// Incremental Gaussian elimination keyed by pivot column.
pub(crate) struct Eliminator {
    ambient: usize,
    rows: Vec<BitVector>,
    pivot_row: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl Eliminator {
    pub(crate) fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; ambient],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns true when it was independent of the rows so far.
    pub(crate) fn insert(&mut self, mut v: BitVector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient");
        let mut start = 0;
        while let Some(p) = v.first_one_from(start) {
            let k = self.pivot_row[p];
            if k == NO_ROW {
                self.pivot_row[p] = self.rows.len() as u32;
                self.rows.push(v);
                return true;
            }
            v.xor_tail(&self.rows[k as usize], p >> 6);
            start = p + 1;
        }
        false
    }

    pub(crate) fn finish(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|v| v.first_one());
        let pivots: Vec<usize> = rows.iter().map(|v| v.first_one().unwrap()).collect();
        for j in (0..rows.len()).rev() {
            let p = pivots[j];
            let (head, tail) = rows.split_at_mut(j);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if row.get(p) {
                    row.xor_tail(pivot_row, p >> 6);
                }
            }
        }
        Subspace {
            ambient: self.ambient,
            basis: rows,
        }
    }
}

/// Reduces `vectors` to the canonical basis of their span.
///
/// `ambient` fixes the length for the empty input; every vector must have
/// that length.
pub fn row_reduce<'a>(
    ambient: usize,
    vectors: impl IntoIterator<Item = &'a BitVector>,
) -> Result<Subspace> {
    let mut e = Eliminator::new(ambient);
    for v in vectors {
        if v.len() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
        e.insert(v.clone());
    }
    Ok(e.finish())
}

/// GF(2) rank of a family of vectors of length `ambient`.
pub fn rank_of(ambient: usize, vectors: impl IntoIterator<Item = BitVector>) -> usize {
    let mut e = Eliminator::new(ambient);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

pub fn subspace_intersection(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    let n = u.ambient;
    if n != v.ambient {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.ambient,
        });
    }
    let mut e = Eliminator::new(2 * n);
    for a in &u.basis {
        e.insert(a.concat(a));
    }
    for b in &v.basis {
        e.insert(b.concat(&BitVector::zeros(n)));
    }
    let joint = e.finish();
    let mut out = Eliminator::new(n);
    for row in joint.basis {
        if row.first_one().unwrap() >= n {
            out.insert(row.slice(n, 2 * n));
        }
    }
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a() -> BitMatrix {
        BitMatrix::parse("010,100,101").unwrap()
    }

    fn example_b() -> BitMatrix {
        BitMatrix::parse("010,100,001").unwrap()
    }

    #[test]
    fn labels_round_trip_through_bitstrings() {
        assert_eq!(parse_label("001", 3).unwrap(), 1);
        assert_eq!(parse_label("110", 3).unwrap(), 6);
        assert_eq!(format_label(5, 3), "101");
        assert!(parse_label("01", 3).is_err());
        assert!(parse_label("0x1", 3).is_err());
    }

    #[test]
    fn product_of_example_generators() {
        let ba = example_b().mul(&example_a()).unwrap();
        assert_eq!(ba.to_string(), "100,010,101");
        assert_eq!(
            BitMatrix::identity(3).mul(&example_a()).unwrap(),
            example_a()
        );
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = example_a();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), BitMatrix::identity(3));
        assert_eq!(inv.mul(&a).unwrap(), BitMatrix::identity(3));
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = BitMatrix::identity(3);
        let b = BitMatrix::identity(4);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.mul_vec(0b1000).is_err());
    }

    #[test]
    fn matrix_vector_products() {
        // third column of A
        assert_eq!(example_a().mul_vec(0b001).unwrap(), 0b001);
        assert_eq!(example_a().mul_vec(0b101).unwrap(), 0b010);
        for v in 0..8 {
            assert_eq!(BitMatrix::identity(3).mul_vec(v).unwrap(), v);
            assert_eq!(BitMatrix::zeros(3, 3).mul_vec(v).unwrap(), 0);
        }
    }

    #[test]
    fn invertibility() {
        assert!(BitMatrix::identity(5).is_invertible());
        assert!(example_a().is_invertible());
        assert!(!BitMatrix::zeros(3, 3).is_invertible());
        assert!(BitMatrix::zeros(3, 3).inverse().is_none());
    }

    #[test]
    fn block_diagonal_layout() {
        let m = example_a().block_diag(&BitMatrix::identity(2));
        assert_eq!(m.to_string(), "01000,10000,10100,00010,00001");
    }

    #[test]
    fn row_reduce_edge_cases() {
        let v = BitVector::from_bitstring("0110").unwrap();
        assert_eq!(row_reduce(4, [&v, &v]).unwrap().dim(), 1);
        assert_eq!(row_reduce(4, []).unwrap().dim(), 0);
        let w = BitVector::zeros(5);
        assert!(row_reduce(4, [&w]).is_err());
    }

    #[test]
    fn weight_four_supports_through_zero_span_dimension_four() {
        let supports: [&[usize]; 8] = [
            &[0, 1, 2, 3],
            &[0, 1, 4, 5],
            &[0, 1, 6, 7],
            &[0, 2, 4, 6],
            &[0, 2, 5, 7],
            &[0, 3, 4, 7],
            &[0, 3, 5, 6],
            &[0, 1, 2, 3, 4, 5, 6, 7],
        ];
        let vs: Vec<_> = supports
            .iter()
            .map(|s| BitVector::from_indices(8, s.iter().copied()))
            .collect();
        assert_eq!(row_reduce(8, &vs).unwrap().dim(), 4);
    }

    #[test]
    fn intersection_trivial_cases() {
        let vs: Vec<_> = ["1100", "0110"]
            .iter()
            .map(|s| BitVector::from_bitstring(s).unwrap())
            .collect();
        let u = row_reduce(4, &vs).unwrap();
        assert_eq!(u.intersection(&u).unwrap(), u);
        assert_eq!(u.intersection(&Subspace::zero(4)).unwrap().dim(), 0);
        assert!(u.intersection(&Subspace::zero(5)).is_err());
    }

    #[test]
    fn rref_is_canonical() {
        let vs: Vec<_> = ["1110", "0111", "1001"]
            .iter()
            .map(|s| BitVector::from_bitstring(s).unwrap())
            .collect();
        let u = row_reduce(4, &vs).unwrap();
        let strings: Vec<_> = u.basis().iter().map(|b| b.to_bitstring()).collect();
        assert_eq!(strings, ["1001", "0111"]);
    }

    #[test]
    fn bitvector_basics() {
        let v = BitVector::from_indices(70, [0, 5, 64, 69]);
        assert_eq!(v.weight(), 4);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), [0, 5, 64, 69]);
        assert_eq!(v.first_one_from(6), Some(64));
        assert!((&v ^ &v).is_zero());
        let w = BitVector::from_word(5, 0b10011);
        assert_eq!(w.to_bitstring(), "10011");
        assert_eq!(w.to_word(), 0b10011);
        assert_eq!(v.slice(60, 70).to_bitstring(), "0000100001");
    }
}
