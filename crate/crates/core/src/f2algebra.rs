//! Homogeneous polynomial arithmetic over the two-element field, and dense
//! bit-matrix row reduction.
//!
//! The coefficient ring for everything downstream is `F2[x_1..x_n]` with
//! `deg x_i = 1`. A polynomial is stored as the set of monomials with
//! coefficient 1, all of the same total degree. Monomial order is graded
//! lexicographic with `x_1 > x_2 > ...`; every public enumeration and basis
//! is emitted in that order so outputs are reproducible byte for byte.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum F2AlgebraError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("divisor must be a nonzero linear form")]
    InvalidCharacter,
}

/// A monomial, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// `C(n + d - 1, d)`, the number of degree-`d` monomials in `n` variables.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All monomials of total degree `d` in `n` variables, in descending
/// graded-lex order: `x1^2, x1 x2, x2^2` for `(n, d) = (2, 2)`.
pub fn monomial_basis(n: usize, d: usize) -> Vec<Monomial> {
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::with_capacity(binomial(n + d - 1 + usize::from(d == 0), d));
    let mut exps = vec![0u32; n];
    fill_monomials(&mut exps, 0, d, &mut out);
    out
}

fn fill_monomials(exps: &mut Vec<u32>, pos: usize, remaining: usize, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining as u32;
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e as u32;
        fill_monomials(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

/// A homogeneous polynomial over F2: the set of monomials present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct F2Poly {
    nvars: usize,
    degree: usize,
    support: BTreeSet<Monomial>,
}

impl F2Poly {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        F2Poly {
            nvars,
            degree,
            support: BTreeSet::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        F2Poly {
            nvars,
            degree: 0,
            support: BTreeSet::from([Monomial::constant(nvars)]),
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        F2Poly {
            nvars,
            degree: 1,
            support: BTreeSet::from([Monomial::var(nvars, index)]),
        }
    }

    /// The linear form with the given 0/1 coefficient vector.
    pub fn linear_form(coeffs: &[u8]) -> Self {
        let nvars = coeffs.len();
        let support = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| Monomial::var(nvars, i))
            .collect();
        F2Poly {
            nvars,
            degree: 1,
            support,
        }
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(
        nvars: usize,
        degree: usize,
        monomials: I,
    ) -> Self {
        let mut support = BTreeSet::new();
        for m in monomials {
            assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
            assert_eq!(m.degree(), degree, "monomial has wrong degree");
            // presence toggles: coefficients are mod 2
            if !support.remove(&m) {
                support.insert(m);
            }
        }
        F2Poly {
            nvars,
            degree,
            support,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.support.contains(m)
    }

    /// Monomials in descending graded-lex order (the serialization order).
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.support.iter().rev()
    }

    pub fn add(&self, other: &F2Poly) -> Result<F2Poly, F2AlgebraError> {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(F2AlgebraError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let support = self
            .support
            .symmetric_difference(&other.support)
            .cloned()
            .collect();
        Ok(F2Poly {
            nvars: self.nvars,
            degree: self.degree,
            support,
        })
    }

    pub fn mul(&self, other: &F2Poly) -> F2Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let degree = self.degree + other.degree;
        let mut support = BTreeSet::new();
        for a in &self.support {
            for b in &other.support {
                let m = a.mul(b);
                if !support.remove(&m) {
                    support.insert(m);
                }
            }
        }
        F2Poly {
            nvars: self.nvars,
            degree,
            support,
        }
    }

    /// Substitute variable `index` by the polynomial `value` (degree 1 or the
    /// zero linear form); degree-preserving.
    fn substitute_linear(&self, index: usize, value: &F2Poly) -> F2Poly {
        let mut acc = F2Poly::zero(self.nvars, self.degree);
        for m in &self.support {
            let k = m.exps[index] as usize;
            let mut exps = m.exps.clone();
            exps[index] = 0;
            let mut term = F2Poly::from_monomials(
                self.nvars,
                m.degree() - k,
                [Monomial::new(exps)],
            );
            for _ in 0..k {
                term = term.mul(value);
            }
            acc = acc.add(&term).expect("degrees agree by construction");
        }
        acc
    }

    /// Coefficient polynomials of `self` viewed as a polynomial in variable
    /// `index`: entry `k` collects the monomials with exact exponent `k`,
    /// divided by `x_index^k`.
    fn coefficients_in(&self, index: usize) -> Vec<F2Poly> {
        let max = self
            .support
            .iter()
            .map(|m| m.exps[index] as usize)
            .max()
            .unwrap_or(0);
        let mut out: Vec<F2Poly> = (0..=max)
            .map(|k| F2Poly::zero(self.nvars, self.degree.saturating_sub(k)))
            .collect();
        for m in &self.support {
            let k = m.exps[index] as usize;
            let mut exps = m.exps.clone();
            exps[index] = 0;
            out[k].support.insert(Monomial::new(exps));
        }
        out
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in self.monomials() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl Serialize for F2Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.support.len()))?;
        for m in self.monomials() {
            seq.serialize_element(m.exps())?;
        }
        seq.end()
    }
}

/// Divide `p` by a nonzero linear form `ell`.
///
/// The remainder is `p` with the pivot variable of `ell` (its lowest-index
/// variable) substituted by the sum of the remaining variables of `ell`,
/// i.e. the restriction of `p` to the slice `ell = 0`. The quotient is the
/// unique polynomial with `p = ell * quotient + remainder`.
pub fn divrem_linear(p: &F2Poly, ell: &F2Poly) -> Result<(F2Poly, F2Poly), F2AlgebraError> {
    if ell.is_zero() || ell.degree() != 1 {
        return Err(F2AlgebraError::InvalidCharacter);
    }
    assert_eq!(p.nvars(), ell.nvars(), "variable count mismatch");
    let pivot = ell
        .support
        .iter()
        .map(|m| m.exps.iter().position(|&e| e != 0).expect("degree 1"))
        .min()
        .expect("nonzero");
    let mut rest = ell.clone();
    rest.support.remove(&Monomial::var(ell.nvars(), pivot));

    let remainder = p.substitute_linear(pivot, &rest);
    let num = p.add(&remainder).expect("same degree");
    let quotient_degree = p.degree().saturating_sub(1);
    if num.is_zero() {
        return Ok((F2Poly::zero(p.nvars(), quotient_degree), remainder));
    }

    // Solve (x_pivot + rest) * q = num by matching powers of the pivot
    // variable top-down: c_k = q_{k-1} + rest * q_k.
    let c = num.coefficients_in(pivot);
    let top = c.len() - 1;
    debug_assert!(top >= 1, "a multiple of ell has positive pivot degree");
    let mut q_parts: Vec<F2Poly> = vec![F2Poly::zero(p.nvars(), 0); top];
    q_parts[top - 1] = c[top].clone();
    for k in (1..top).rev() {
        q_parts[k - 1] = c[k]
            .add(&rest.mul(&q_parts[k]))
            .expect("degrees agree by construction");
    }
    let mut quotient = F2Poly::zero(p.nvars(), quotient_degree);
    let pivot_var = F2Poly::var(p.nvars(), pivot);
    for (k, part) in q_parts.iter().enumerate() {
        let mut term = part.clone();
        for _ in 0..k {
            term = term.mul(&pivot_var);
        }
        quotient = quotient.add(&term).expect("degrees agree");
    }
    debug_assert_eq!(
        ell.mul(&quotient).add(&remainder).unwrap(),
        *p,
        "division identity"
    );
    Ok((quotient, remainder))
}

/// Test divisibility of `p` by `ell^m` via `m` successive divisions; the
/// final quotient is returned when all remainders vanish.
pub fn divisible_power(
    p: &F2Poly,
    ell: &F2Poly,
    m: usize,
) -> Result<(bool, Option<F2Poly>), F2AlgebraError> {
    assert!(m >= 1, "multiplicity must be positive");
    let mut cur = p.clone();
    for _ in 0..m {
        let (q, r) = divrem_linear(&cur, ell)?;
        if !r.is_zero() {
            return Ok((false, None));
        }
        cur = q;
    }
    Ok((true, Some(cur)))
}

const WORD_BITS: usize = 64;

/// A dense bit matrix over F2, one `u64`-packed row per matrix row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    nrows: usize,
    ncols: usize,
    words: usize,
    data: Vec<u64>,
}

/// Result of `F2Matrix::rref`.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: F2Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl F2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let words = ncols.div_ceil(WORD_BITS).max(1);
        F2Matrix {
            nrows,
            ncols,
            words,
            data: vec![0; nrows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: &[Vec<u8>]) -> Self {
        let mut m = F2Matrix::zeros(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols);
            for (c, &bit) in row.iter().enumerate() {
                if bit != 0 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.nrows && c < self.ncols);
        self.data[r * self.words + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.nrows && c < self.ncols);
        let word = r * self.words + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[word] |= mask;
        } else {
            self.data[word] &= !mask;
        }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.data[r * self.words..(r + 1) * self.words]
            .iter()
            .all(|&w| w == 0)
    }

    /// Append the rows of `other` below `self`.
    pub fn vstack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.ncols, other.ncols);
        let mut out = F2Matrix::zeros(self.nrows + other.nrows, self.ncols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.ncols, self.nrows);
        for r in 0..self.nrows {
            for w in 0..self.words {
                let mut bits = self.data[r * self.words + w];
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    out.set(w * WORD_BITS + b, r, true);
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (lo, hi) = (src.min(dst), src.max(dst));
        let (head, tail) = self.data.split_at_mut(hi * self.words);
        let lo_slice = &head[lo * self.words..lo * self.words + self.words];
        let hi_slice = &mut tail[..self.words];
        if src < dst {
            for (d, s) in hi_slice.iter_mut().zip(lo_slice) {
                *d ^= s;
            }
        } else {
            // src is the hi row: xor it into the lo row via a temp copy
            let src_copy: Vec<u64> = hi_slice.to_vec();
            let head_dst = &mut head[lo * self.words..lo * self.words + self.words];
            for (d, s) in head_dst.iter_mut().zip(&src_copy) {
                *d ^= s;
            }
        }
    }

    /// Reduced row echelon form. Idempotent; pivot columns come out in
    /// strictly increasing order.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let Some(pivot_row) = (row..m.nrows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(row, pivot_row);
            for r in 0..m.nrows {
                if r != row && m.get(r, col) {
                    m.xor_row_into(row, r);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the null space `{ x : M x = 0 }`, one basis vector per row
    /// of the returned matrix, ordered by free column.
    pub fn kernel_basis(&self) -> F2Matrix {
        let Rref {
            matrix: r,
            rank,
            pivots,
        } = self.rref();
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = F2Matrix::zeros(free.len(), self.ncols);
        for (out_row, &f) in free.iter().enumerate() {
            basis.set(out_row, f, true);
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                if r.get(i, f) {
                    basis.set(out_row, p, true);
                }
            }
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(nvars: usize, degree: usize, exps: &[&[u32]]) -> F2Poly {
        F2Poly::from_monomials(
            nvars,
            degree,
            exps.iter().map(|e| Monomial::new(e.to_vec())),
        )
    }

    #[test]
    fn monomial_basis_examples() {
        let b = monomial_basis(1, 5);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], Monomial::new(vec![5]));

        let b = monomial_basis(2, 2);
        assert_eq!(
            b,
            vec![
                Monomial::new(vec![2, 0]),
                Monomial::new(vec![1, 1]),
                Monomial::new(vec![0, 2]),
            ]
        );

        // oracle: exhaustive enumeration of exponent vectors summing to 2
        let mut count = 0;
        for a in 0..=2u32 {
            for b in 0..=2u32 {
                for c in 0..=2u32 {
                    if a + b + c == 2 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 6);
        assert_eq!(monomial_basis(3, 2).len(), count);
    }

    #[test]
    fn add_examples() {
        let x1 = F2Poly::var(2, 0);
        let x2 = F2Poly::var(2, 1);
        assert!(x1.add(&x1).unwrap().is_zero());
        let sum = x1.add(&x2).unwrap();
        assert_eq!(sum, poly(2, 1, &[&[1, 0], &[0, 1]]));

        let p = poly(2, 2, &[&[2, 0], &[1, 1]]);
        let q = poly(2, 2, &[&[1, 1], &[0, 2]]);
        assert_eq!(p.add(&q).unwrap(), poly(2, 2, &[&[2, 0], &[0, 2]]));

        let mismatch = x1.add(&p);
        assert!(matches!(
            mismatch,
            Err(F2AlgebraError::DegreeMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn mul_examples() {
        let x1 = F2Poly::var(2, 0);
        let x2 = F2Poly::var(2, 1);
        let sum = x1.add(&x2).unwrap();
        // Frobenius: the cross term 2 x1 x2 vanishes
        assert_eq!(sum.mul(&sum), poly(2, 2, &[&[2, 0], &[0, 2]]));
        let p = poly(2, 2, &[&[2, 0], &[1, 1]]);
        assert_eq!(F2Poly::one(2).mul(&p), p);
        assert_eq!(sum.mul(&x1), poly(2, 2, &[&[2, 0], &[1, 1]]));
    }

    #[test]
    fn divrem_examples() {
        let x1 = F2Poly::var(2, 0);
        let x2 = F2Poly::var(2, 1);
        let ell = x1.add(&x2).unwrap();

        let p = poly(2, 2, &[&[2, 0], &[0, 2]]);
        let (q, r) = divrem_linear(&p, &ell).unwrap();
        assert_eq!(q, ell);
        assert!(r.is_zero());

        let p = poly(2, 2, &[&[1, 1]]);
        let (q, r) = divrem_linear(&p, &x1).unwrap();
        assert_eq!(q, x2);
        assert!(r.is_zero());

        let p = poly(2, 2, &[&[0, 2]]);
        let (q, r) = divrem_linear(&p, &x1).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p);

        let zero = F2Poly::zero(2, 1);
        assert!(matches!(
            divrem_linear(&p, &zero),
            Err(F2AlgebraError::InvalidCharacter)
        ));
    }

    #[test]
    fn divisible_power_examples() {
        let x = F2Poly::var(1, 0);
        let x_sq = poly(1, 2, &[&[2]]);
        let (ok, q) = divisible_power(&x_sq, &x, 2).unwrap();
        assert!(ok);
        assert_eq!(q.unwrap(), F2Poly::one(1));

        let x1 = F2Poly::var(2, 0);
        let p = poly(2, 3, &[&[2, 1]]);
        let (ok, q) = divisible_power(&p, &x1, 2).unwrap();
        assert!(ok);
        assert_eq!(q.unwrap(), F2Poly::var(2, 1));

        let p = poly(2, 2, &[&[1, 1]]);
        let (ok, q) = divisible_power(&p, &x1, 2).unwrap();
        assert!(!ok);
        assert!(q.is_none());
    }

    #[test]
    fn rref_examples() {
        let id = F2Matrix::identity(3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);

        let m = F2Matrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn serialize_sorted_exponent_vectors() {
        let p = poly(2, 2, &[&[1, 1], &[2, 0]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[2,0],[1,1]]");
    }

    #[test]
    fn display_readable() {
        let p = poly(2, 2, &[&[2, 0], &[1, 1]]);
        assert_eq!(p.to_string(), "x1^2 + x1 x2");
        assert_eq!(F2Poly::zero(2, 3).to_string(), "0");
        assert_eq!(F2Poly::one(2).to_string(), "1");
    }

    // independent elimination oracle over Vec<Vec<bool>>
    fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in 0..rows.len() {
                if r != rank && rows[r][col] {
                    let (a, b) = if r < rank {
                        let (lo, hi) = rows.split_at_mut(rank);
                        (&mut lo[r], &hi[0])
                    } else {
                        let (lo, hi) = rows.split_at_mut(r);
                        (&mut hi[0], &lo[rank])
                    };
                    for (x, y) in a.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn random_matrix_rank_vs_row_space_enumeration() {
        // deterministic pseudo-random bits
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut m = F2Matrix::zeros(10, 10);
        for r in 0..10 {
            let bits = next();
            for c in 0..10 {
                m.set(r, c, bits >> c & 1 == 1);
            }
        }
        // check each leading 5x5 submatrix against brute-force row-space size
        for offset in 0..5 {
            let mut rows_u8 = Vec::new();
            let mut sub = F2Matrix::zeros(5, 5);
            for r in 0..5 {
                let mut word = 0u8;
                for c in 0..5 {
                    let bit = m.get(r + offset, c + offset);
                    sub.set(r, c, bit);
                    word |= (bit as u8) << c;
                }
                rows_u8.push(word);
            }
            let mut space = std::collections::BTreeSet::new();
            for mask in 0u8..32 {
                let mut v = 0u8;
                for (i, row) in rows_u8.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v ^= row;
                    }
                }
                space.insert(v);
            }
            assert_eq!(1 << sub.rank(), space.len());
        }
    }

    #[test]
    fn kernel_basis_annihilates() {
        let m = F2Matrix::from_rows(
            4,
            &[vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 1, 0, 1]],
        );
        let k = m.kernel_basis();
        assert_eq!(k.nrows() + m.rank(), m.ncols());
        for r in 0..k.nrows() {
            for row in 0..m.nrows() {
                let mut parity = false;
                for c in 0..m.ncols() {
                    parity ^= m.get(row, c) && k.get(r, c);
                }
                assert!(!parity);
            }
        }
    }

    fn arb_poly(nvars: usize, degree: usize) -> impl Strategy<Value = F2Poly> {
        let basis = monomial_basis(nvars, degree);
        let len = basis.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            F2Poly::from_monomials(
                nvars,
                degree,
                basis
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(m, _)| m.clone()),
            )
        })
    }

    fn arb_linear(nvars: usize) -> impl Strategy<Value = F2Poly> {
        (1u32..(1 << nvars)).prop_map(move |bits| {
            let coeffs: Vec<u8> = (0..nvars).map(|i| (bits >> i & 1) as u8).collect();
            F2Poly::linear_form(&coeffs)
        })
    }

    proptest! {
        #[test]
        fn addition_is_commutative_and_involutive(
            (p, q) in (1usize..4, 0usize..5).prop_flat_map(|(n, d)| (arb_poly(n, d), arb_poly(n, d)))
        ) {
            prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
            prop_assert!(p.add(&p).unwrap().is_zero());
        }

        #[test]
        fn multiplication_distributes_and_associates(
            (p, q, r) in (1usize..4, 0usize..3, 0usize..3, 0usize..3).prop_flat_map(
                |(n, d1, d2, d3)| (arb_poly(n, d1), arb_poly(n, d2), arb_poly(n, d3))
            )
        ) {
            let lhs = p.mul(&q.add(&r).unwrap_or_else(|_| q.clone()));
            if q.degree() == r.degree() {
                let rhs = p.mul(&q).add(&p.mul(&r)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            prop_assert_eq!(p.mul(&q.mul(&r)), p.mul(&q).mul(&r));
        }

        #[test]
        fn divrem_reconstructs(
            (p, ell) in (1usize..4, 0usize..5).prop_flat_map(|(n, d)| (arb_poly(n, d), arb_linear(n)))
        ) {
            let (q, r) = divrem_linear(&p, &ell).unwrap();
            let recon = ell.mul(&q).add(&r).unwrap();
            prop_assert_eq!(recon, p);
        }

        #[test]
        fn rref_rank_matches_naive_oracle(
            rows in proptest::collection::vec(
                proptest::collection::vec(any::<bool>(), 1..=8), 1..=8
            ).prop_filter("rectangular", |rows| {
                rows.iter().all(|r| r.len() == rows[0].len())
            })
        ) {
            let ncols = rows[0].len();
            let as_u8: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect();
            let m = F2Matrix::from_rows(ncols, &as_u8);
            prop_assert_eq!(m.rank(), naive_rank(rows));
            // idempotence
            let r = m.rref();
            prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        }

        #[test]
        fn monomial_basis_count_is_binomial(n in 1usize..=4, d in 0usize..=10) {
            prop_assert_eq!(monomial_basis(n, d).len(), binomial(n + d - 1, d));
        }
    }
}
