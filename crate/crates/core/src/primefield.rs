//! Exact arithmetic and Gaussian elimination over `Z_D` for prime `D`.
//!
//! Vectors are plain `Vec<u32>` slices whose entries are already reduced; the
//! modulus travels with the [`FieldMatrix`] or is passed explicitly as a
//! [`Prime`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus. Construction performs a primality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(d: u64) -> Result<Self> {
        if is_prime(d) && d <= u32::MAX as u64 {
            Ok(Prime(d as u32))
        } else {
            Err(Error::NotPrime(d))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.0), "zero has no inverse mod {}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        debug_assert_eq!(a.len(), b.len());
        let p = self.0 as u64;
        (a.iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p)) as u32
    }

    /// `acc += factor * v`
    pub fn axpy(self, acc: &mut [u32], factor: u32, v: &[u32]) {
        debug_assert_eq!(acc.len(), v.len());
        if factor == 0 {
            return;
        }
        for (a, &b) in acc.iter_mut().zip(v) {
            *a = self.add(*a, self.mul(factor, b));
        }
    }

    pub fn scale(self, v: &mut [u32], factor: u32) {
        for a in v.iter_mut() {
            *a = self.mul(*a, factor);
        }
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<De: serde::Deserializer<'de>>(de: De) -> std::result::Result<Self, De::Error> {
        let raw = u64::deserialize(de)?;
        Prime::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> Prime {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    Prime(c as u32)
}

/// A single element of `Z_D`, carrying its modulus.
///
/// The arithmetic operators panic when the moduli differ; the `checked_*`
/// methods return [`Error::ModulusMismatch`] instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: Prime,
}

impl FieldElement {
    pub fn new(value: i64, modulus: Prime) -> Self {
        FieldElement { value: modulus.reduce(value), modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_modulus(self, other: Self) -> Result<Prime> {
        if self.modulus == other.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch { left: self.modulus.get(), right: other.modulus.get() })
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let p = self.same_modulus(other)?;
        Ok(FieldElement { value: p.add(self.value, other.value), modulus: p })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let p = self.same_modulus(other)?;
        Ok(FieldElement { value: p.sub(self.value, other.value), modulus: p })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let p = self.same_modulus(other)?;
        Ok(FieldElement { value: p.mul(self.value, other.value), modulus: p })
    }

    /// `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (!self.is_zero()).then(|| FieldElement { value: self.modulus.inv(self.value), modulus: self.modulus })
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("mixed-modulus addition")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("mixed-modulus subtraction")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("mixed-modulus multiplication")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement { value: self.modulus.neg(self.value), modulus: self.modulus }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Dense row-major matrix over `Z_D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    modulus: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FieldMatrix::row_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    pub reduced: FieldMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(modulus: Prime, rows: usize, cols: usize) -> Self {
        FieldMatrix { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: Prime, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus.get();
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `modulus`.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Prime, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::input(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r.iter().map(|&v| modulus.reduce(v)));
        }
        Ok(FieldMatrix { modulus, rows: rows.len(), cols, data })
    }

    /// Like [`from_rows`](Self::from_rows) for vectors that are already reduced.
    /// `cols` is needed when `rows` is empty.
    pub fn from_vectors(modulus: Prime, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::input(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r.iter().map(|&v| v % modulus.get()));
        }
        Ok(FieldMatrix { modulus, rows: rows.len(), cols, data })
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.modulus.get();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul_mat(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.modulus;
        let mut out = FieldMatrix::zeros(p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = p.add(out.data[idx], p.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::input(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|r| self.modulus.dot(self.row(r), v)).collect())
    }

    fn check_modulus(&self, other: &FieldMatrix) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch { left: self.modulus.get(), right: other.modulus.get() })
        }
    }

    /// Reduced row-echelon form, rank and pivot columns.
    pub fn row_reduce(&self) -> RowEchelon {
        let p = self.modulus;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = p.inv(m.get(lead, c));
            let start = lead * m.cols;
            p.scale(&mut m.data[start..start + m.cols], inv);
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let f = m.get(r, c);
                if f != 0 {
                    let pivot_row = m.row(lead).to_vec();
                    let rs = r * m.cols;
                    p.axpy(&mut m.data[rs..rs + m.cols], p.neg(f), &pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        RowEchelon { reduced: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// One solution of `M x = b`, free variables set to zero. `Ok(None)` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::input(format!("right-hand side has length {}, matrix has {} rows", b.len(), self.rows)));
        }
        let p = self.modulus;
        let mut aug = FieldMatrix::zeros(p, self.rows, self.cols + 1);
        for (r, &rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, rhs);
        }
        let ech = aug.row_reduce();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.reduced.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Basis of `{x : M x = 0}`; one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.modulus;
        let ech = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = p.neg(ech.reduced.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let p = self.modulus;
        let mut aug = FieldMatrix::zeros(p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let ech = aug.row_reduce();
        if ech.pivots.iter().take(n).copied().ne(0..n) || ech.rank < n {
            return None;
        }
        let mut inv = FieldMatrix::zeros(p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, ech.reduced.get(r, n + c));
            }
        }
        Some(inv)
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank of a list of vectors of length `len`.
pub fn rank_of(modulus: Prime, len: usize, vectors: &[Vec<u32>]) -> usize {
    FieldMatrix::from_vectors(modulus, len, vectors).map_or(0, |m| m.rank())
}

/// Canonical basis (nonzero RREF rows) of the span of `vectors`.
pub fn span_basis(modulus: Prime, len: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = FieldMatrix::from_vectors(modulus, len, vectors).expect("vector lengths checked by caller");
    let ech = m.row_reduce();
    (0..ech.rank).map(|r| ech.reduced.row(r).to_vec()).collect()
}

/// Whether `candidate` lies in the row span of `vectors`.
pub fn in_span(modulus: Prime, vectors: &[Vec<u32>], candidate: &[u32]) -> bool {
    let len = candidate.len();
    if candidate.iter().all(|&c| c == 0) {
        return true;
    }
    let base = rank_of(modulus, len, vectors);
    let mut ext = vectors.to_vec();
    ext.push(candidate.to_vec());
    rank_of(modulus, len, &ext) == base
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(modulus: Prime, len: usize, a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    span_basis(modulus, len, a) == span_basis(modulus, len, b)
}
