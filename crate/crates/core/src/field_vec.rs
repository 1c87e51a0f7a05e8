//! Prime-field arithmetic and the integer <-> digit-vector codec.
//!
//! An integer `a` in `[0, p^k)` is identified with the vector of its base-`p`
//! digits `a = sum_j a_j p^j`, least significant digit first. Every dense
//! vector in this crate (mass functions, spectra) is indexed this way, which
//! makes the `p = 2` ordering the natural Hadamard ordering.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Largest index space `p^k` (or `p^n`) any constructor accepts.
pub const INDEX_CAPACITY: u64 = 1 << 40;

/// A prime modulus `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub const TWO: PrimeModulus = PrimeModulus(2);

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::domain(format!("modulus {p} is not a prime")));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
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

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let m = self.0 as u64;
        let mut acc = 1u64 % m;
        let mut b = base as u64 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse by Fermat's little theorem. `a` must be non-zero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 as u64 - 2)
    }

    /// `p^k`, rejected when it exceeds `limit`.
    pub fn space_size(self, k: usize, limit: u64, what: &str) -> Result<u64> {
        let capacity = || Error::Capacity {
            what: what.to_string(),
            size: (self.0 as u128).saturating_pow(k.min(u32::MAX as usize) as u32),
            limit: limit as u128,
        };
        let mut size: u64 = 1;
        for _ in 0..k {
            size = size.checked_mul(self.0 as u64).ok_or_else(capacity)?;
            if size > limit {
                return Err(capacity());
            }
        }
        Ok(size)
    }

    /// `p^k` under the global [`INDEX_CAPACITY`].
    pub fn checked_len(self, k: usize) -> Result<usize> {
        self.space_size(k, INDEX_CAPACITY, "index space").map(|s| s as usize)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Base-`p` digits of an index, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DigitVector(Vec<u32>);

impl DigitVector {
    /// Wraps digits without checking them against a modulus.
    pub fn new(digits: Vec<u32>) -> Self {
        DigitVector(digits)
    }

    pub fn zeros(len: usize) -> Self {
        DigitVector(vec![0; len])
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// Number of non-zero digits.
    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&d| d != 0).count()
    }
}

impl Deref for DigitVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for DigitVector {
    fn from(v: Vec<u32>) -> Self {
        DigitVector(v)
    }
}

pub fn to_digits(a: u64, p: PrimeModulus, k: usize) -> Result<DigitVector> {
    let bound = p.space_size(k, u64::MAX, "digit vector")?;
    if a >= bound {
        return Err(Error::Range { value: a, bound });
    }
    let mut digits = Vec::with_capacity(k);
    let mut rest = a;
    for _ in 0..k {
        digits.push((rest % p.get() as u64) as u32);
        rest /= p.get() as u64;
    }
    Ok(DigitVector(digits))
}

pub fn from_digits(digits: &[u32], p: PrimeModulus) -> Result<u64> {
    let mut acc: u64 = 0;
    for (j, &d) in digits.iter().enumerate().rev() {
        if d >= p.get() {
            return Err(Error::domain(format!(
                "digit {d} at position {j} is not reduced mod {p}"
            )));
        }
        acc = acc
            .checked_mul(p.get() as u64)
            .and_then(|v| v.checked_add(d as u64))
            .ok_or_else(|| Error::Capacity {
                what: "digit vector".into(),
                size: u128::MAX,
                limit: u64::MAX as u128,
            })?;
    }
    Ok(acc)
}

pub fn dot_mod(u: &[u32], v: &[u32], p: PrimeModulus) -> Result<u32> {
    if u.len() != v.len() {
        return Err(Error::shape(format!(
            "dot product of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    let m = p.get() as u64;
    let s = u
        .iter()
        .zip(v)
        .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % m);
    Ok(s as u32)
}

/// `c^T = b^T G`: the codeword selected by message `b`.
pub fn matvec_mod(g: &FieldMatrix, b: &[u32]) -> Result<DigitVector> {
    if b.len() != g.rows() {
        return Err(Error::shape(format!(
            "message length {} does not match {} generator rows",
            b.len(),
            g.rows()
        )));
    }
    let p = g.modulus();
    let m = p.get() as u64;
    let mut acc = vec![0u64; g.cols()];
    for (i, &bi) in b.iter().enumerate() {
        if bi >= p.get() {
            return Err(Error::domain(format!("message digit {bi} is not reduced mod {p}")));
        }
        if bi == 0 {
            continue;
        }
        for (a, &gij) in acc.iter_mut().zip(g.row(i)) {
            *a = (*a + bi as u64 * gij as u64) % m;
        }
    }
    Ok(DigitVector(acc.into_iter().map(|v| v as u32).collect()))
}

/// Index of `a ⊖ b` (componentwise subtraction mod `p`) for indices of
/// `k`-digit vectors.
#[inline]
pub fn sub_index(mut a: usize, mut b: usize, p: usize, k: usize) -> usize {
    let mut out = 0usize;
    let mut place = 1usize;
    for _ in 0..k {
        let da = a % p;
        let db = b % p;
        out += ((da + p - db) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Index of `a ⊕ b` (componentwise addition mod `p`).
#[inline]
pub fn add_index(mut a: usize, mut b: usize, p: usize, k: usize) -> usize {
    let mut out = 0usize;
    let mut place = 1usize;
    for _ in 0..k {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Index of `−a` (componentwise negation mod `p`).
#[inline]
pub fn neg_index(a: usize, p: usize, k: usize) -> usize {
    sub_index(0, a, p, k)
}

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    p: PrimeModulus,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn new(p: PrimeModulus, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&v| v >= p.get()) {
            return Err(Error::domain(format!("matrix entry {bad} is not reduced mod {p}")));
        }
        Ok(FieldMatrix { p, rows, cols, data })
    }

    pub fn from_rows(p: PrimeModulus, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged matrix rows"));
        }
        FieldMatrix::new(p, rows.len(), cols, rows.concat())
    }

    pub fn identity(p: PrimeModulus, k: usize) -> Self {
        let mut data = vec![0; k * k];
        for i in 0..k {
            data[i * k + i] = 1;
        }
        FieldMatrix { p, rows: k, cols: k, data }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Rank over `F_p` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut m: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = p.inv(m[rank][col]);
            for v in m[rank].iter_mut() {
                *v = p.mul(*v, inv);
            }
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col];
                    for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                        *v = p.sub(*v, p.mul(f, pv));
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}
