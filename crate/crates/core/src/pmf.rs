//! Dense probability mass functions on `(F_p)^k`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field_vec::{add_index, sub_index, PrimeModulus};

/// Accepted deviation of the total mass from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Negative entries down to this value are treated as rounding dust.
pub const NEGATIVE_DUST: f64 = -1e-12;
/// Largest `p^k` for which [`group_circulant`] builds a dense matrix.
pub const CIRCULANT_LIMIT: usize = 4096;

/// Bias `ε = |P(B=0) − P(B=1)|` of a binary variable.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Bias(f64);

impl Bias {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::domain(format!("bias {epsilon} outside [0, 1]")));
        }
        Ok(Bias(epsilon))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A probability mass function on `(F_p)^k`, indexed least significant digit
/// first.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    p: PrimeModulus,
    k: usize,
    values: Vec<f64>,
}

impl Pmf {
    /// Validates length, sign and normalization. Entries in `[-1e-12, 0)` are
    /// clamped to zero and the result renormalized.
    pub fn new(p: PrimeModulus, k: usize, mut values: Vec<f64>) -> Result<Self> {
        let len = p.checked_len(k)?;
        if values.len() != len {
            return Err(Error::shape(format!(
                "{} probabilities for p={p} k={k}, expected {len}",
                values.len()
            )));
        }
        let mut clamped = false;
        for (i, v) in values.iter_mut().enumerate() {
            if !v.is_finite() || *v < NEGATIVE_DUST {
                return Err(Error::domain(format!("probability {v} at index {i}")));
            }
            if *v < 0.0 {
                *v = 0.0;
                clamped = true;
            }
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::domain(format!("probabilities sum to {total}, not 1")));
        }
        if clamped {
            values.iter_mut().for_each(|v| *v /= total);
        }
        Ok(Pmf { p, k, values })
    }

    pub fn uniform(p: PrimeModulus, k: usize) -> Result<Self> {
        let len = p.checked_len(k)?;
        Ok(Pmf {
            p,
            k,
            values: vec![1.0 / len as f64; len],
        })
    }

    pub fn point_mass(p: PrimeModulus, k: usize, index: usize) -> Result<Self> {
        let len = p.checked_len(k)?;
        if index >= len {
            return Err(Error::Range {
                value: index as u64,
                bound: len as u64,
            });
        }
        let mut values = vec![0.0; len];
        values[index] = 1.0;
        Ok(Pmf { p, k, values })
    }

    /// Binary variable with `P(0) = (1+ε)/2`.
    pub fn from_bias(epsilon: Bias) -> Self {
        Self::from_bias_oriented(epsilon, false)
    }

    /// Binary variable with bias `ε`; `one_heavy` puts the larger mass on 1.
    pub fn from_bias_oriented(epsilon: Bias, one_heavy: bool) -> Self {
        let heavy = (1.0 + epsilon.0) / 2.0;
        let light = (1.0 - epsilon.0) / 2.0;
        let values = if one_heavy {
            vec![light, heavy]
        } else {
            vec![heavy, light]
        };
        Pmf {
            p: PrimeModulus::TWO,
            k: 1,
            values,
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn bias(&self) -> Result<Bias> {
        if self.p.get() != 2 || self.k != 1 {
            return Err(Error::shape(format!(
                "bias needs a single bit, got p={} k={}",
                self.p, self.k
            )));
        }
        Ok(Bias((self.values[0] - self.values[1]).abs().min(1.0)))
    }

    /// `δ = ||μ − μ_U||_1`.
    pub fn l1_from_uniform(&self) -> f64 {
        let u = 1.0 / self.values.len() as f64;
        self.values.iter().map(|v| (v - u).abs()).sum()
    }

    /// Total variation distance, `δ / 2`.
    pub fn tvd_from_uniform(&self) -> f64 {
        self.l1_from_uniform() / 2.0
    }

    fn same_shape(&self, other: &Pmf) -> Result<()> {
        if self.p != other.p || self.k != other.k {
            return Err(Error::shape(format!(
                "mismatched pmfs: (p={}, k={}) vs (p={}, k={})",
                self.p, self.k, other.p, other.k
            )));
        }
        Ok(())
    }

    /// Parses the `.pmf` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `p=<int> k=<int>` header"))?;
        let fields = parse_header(hline, header, &["p", "k"])?;
        let p = PrimeModulus::new(fields[0]).map_err(|e| Error::parse(hline, e.to_string()))?;
        let k = fields[1] as usize;
        let len = p.checked_len(k)?;

        let mut values = Vec::with_capacity(len);
        let mut last_line = hline;
        for (ln, line) in lines {
            last_line = ln;
            for tok in line.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("invalid probability `{tok}`")))?;
                if values.len() == len {
                    return Err(Error::parse(ln, format!("more than {len} probabilities")));
                }
                values.push(v);
            }
        }
        if values.len() != len {
            return Err(Error::parse(
                last_line,
                format!("expected {len} probabilities, found {}", values.len()),
            ));
        }
        Pmf::new(p, k, values).map_err(|e| match e {
            Error::Domain(m) => Error::parse(last_line, m),
            other => other,
        })
    }

    /// Renders the `.pmf` text format, one probability per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("p={} k={}\n", self.p, self.k);
        for v in &self.values {
            let _ = writeln!(out, "{v:?}");
        }
        out
    }
}

impl FromStr for Pmf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pmf::parse(s)
    }
}

/// Parses `key=value` header fields in the given order.
pub(crate) fn parse_header(line: usize, text: &str, keys: &[&str]) -> Result<Vec<u64>> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let expected = keys.iter().map(|k| format!("{k}=<int>")).collect::<Vec<_>>().join(" ");
    if toks.len() != keys.len() {
        return Err(Error::parse(line, format!("malformed header, expected `{expected}`")));
    }
    keys.iter()
        .zip(toks)
        .map(|(key, tok)| {
            let value = tok
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| Error::parse(line, format!("malformed header, expected `{expected}`")))?;
            value
                .parse::<u64>()
                .map_err(|_| Error::parse(line, format!("invalid value for `{key}`: `{value}`")))
        })
        .collect()
}

/// `out(r) = Σ_j a(j) b(r ⊖ j)`, the distribution of the sum of independent
/// variables. Direct summation, `O(p^{2k})`.
pub fn convolve(a: &Pmf, b: &Pmf) -> Result<Pmf> {
    a.same_shape(b)?;
    let (p, k, len) = (a.p.as_usize(), a.k, a.len());
    let mut out = vec![0.0; len];
    for (j, &aj) in a.values.iter().enumerate() {
        if aj == 0.0 {
            continue;
        }
        for (i, &bi) in b.values.iter().enumerate() {
            out[add_index(j, i, p, k)] += aj * bi;
        }
    }
    Pmf::new(a.p, a.k, out)
}

/// Dense `p^k × p^k` matrix with entry `(r, j) = m(r ⊖ j)`; multiplying it by a
/// mass function convolves with `m`.
pub fn group_circulant(m: &Pmf) -> Result<Vec<Vec<f64>>> {
    let len = m.len();
    if len > CIRCULANT_LIMIT {
        return Err(Error::Capacity {
            what: "group circulant".into(),
            size: len as u128,
            limit: CIRCULANT_LIMIT as u128,
        });
    }
    let (p, k) = (m.p.as_usize(), m.k);
    Ok((0..len)
        .map(|r| (0..len).map(|j| m.values[sub_index(r, j, p, k)]).collect())
        .collect())
}

/// Joint distribution of independent coordinates; `parts[u]` governs digit `u`.
pub fn tensor(parts: &[Pmf]) -> Result<Pmf> {
    let Some(first) = parts.first() else {
        return Err(Error::shape("tensor of zero parts"));
    };
    let p = first.p;
    for (u, part) in parts.iter().enumerate() {
        if part.p != p {
            return Err(Error::domain(format!(
                "part {u} is over F_{} but part 0 is over F_{p}",
                part.p
            )));
        }
        if part.k != 1 {
            return Err(Error::shape(format!("part {u} has k={}, expected 1", part.k)));
        }
    }
    let len = p.checked_len(parts.len())?;
    // Build from the most significant digit down so digit 0 varies fastest.
    let mut values = vec![1.0];
    for part in parts.iter().rev() {
        let mut next = Vec::with_capacity(values.len() * p.as_usize());
        for &hi in &values {
            next.extend(part.values.iter().map(|&lo| hi * lo));
        }
        values = next;
    }
    debug_assert_eq!(values.len(), len);
    Pmf::new(p, parts.len(), values)
}

/// Distribution of the product of two independent bits.
pub fn product_bernoulli(a: &Pmf, b: &Pmf) -> Result<Pmf> {
    for m in [a, b] {
        if m.p.get() != 2 || m.k != 1 {
            return Err(Error::shape(format!(
                "product needs single bits, got p={} k={}",
                m.p, m.k
            )));
        }
    }
    let one = a.values[1] * b.values[1];
    let zero = a.values[0] + a.values[1] * b.values[0];
    Pmf::new(PrimeModulus::TWO, 1, vec![zero, one])
}
