//! Linear codes over `F_p` given by a full-rank `k × n` generator matrix.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field_vec::{to_digits, DigitVector, FieldMatrix, PrimeModulus};
use crate::pmf::parse_header;

/// Number of codewords of each Hamming weight, indexed `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution(Vec<u64>);

impl WeightDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, weight: usize) -> u64 {
        self.0.get(weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Codeword counts keyed by symbol composition `t`, where `t[j]` is the number
/// of coordinates equal to `j`. Keys iterate in lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompleteWeightEnumerator(BTreeMap<Vec<u32>, u64>);

impl CompleteWeightEnumerator {
    pub fn iter(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.0.iter().map(|(t, &c)| (t.as_slice(), c))
    }

    pub fn get(&self, composition: &[u32]) -> u64 {
        self.0.get(composition).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Collapses compositions with `t_0 = n − l` into `A_l`.
    pub fn hamming_marginal(&self, n: usize) -> WeightDistribution {
        let mut counts = vec![0u64; n + 1];
        for (t, &c) in &self.0 {
            counts[n - t[0] as usize] += c;
        }
        WeightDistribution(counts)
    }
}

#[derive(Debug, Clone)]
struct Enumeration {
    weights: WeightDistribution,
    cwe: CompleteWeightEnumerator,
    min_distance: usize,
}

/// An `[n, k]` linear code over `F_p`.
#[derive(Debug, Clone)]
pub struct LinearCode {
    generator: FieldMatrix,
    cache: OnceLock<Enumeration>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator
    }
}

impl LinearCode {
    /// Validates rank and capacity of the generator.
    pub fn new(generator: FieldMatrix) -> Result<Self> {
        let (k, n) = (generator.rows(), generator.cols());
        if k == 0 || n == 0 {
            return Err(Error::shape(format!("degenerate generator {k}x{n}")));
        }
        generator.modulus().checked_len(k)?;
        let rank = generator.rank();
        if rank < k {
            return Err(Error::RankDeficient { rank, k });
        }
        Ok(LinearCode {
            generator,
            cache: OnceLock::new(),
        })
    }

    pub fn from_rows(p: PrimeModulus, rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(FieldMatrix::from_rows(p, rows)?)
    }

    /// The whole message space `(F_p)^k`.
    pub fn identity(p: PrimeModulus, k: usize) -> Result<Self> {
        Self::new(FieldMatrix::identity(p, k))
    }

    /// The `[n, 1]` repetition code.
    pub fn repetition(p: PrimeModulus, n: usize) -> Result<Self> {
        Self::new(FieldMatrix::new(p, 1, n, vec![1; n])?)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.generator.modulus()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    /// `p^k`.
    pub fn size(&self) -> usize {
        self.modulus().as_usize().pow(self.k() as u32)
    }

    /// True when the code is all of `(F_p)^n`, so its bounds are the
    /// message-space bounds.
    pub fn is_full_space(&self) -> bool {
        self.k() == self.n()
    }

    /// Codeword `b^T G` for a message index.
    pub fn encode(&self, b: u64) -> Result<DigitVector> {
        let digits = to_digits(b, self.modulus(), self.k())?;
        crate::field_vec::matvec_mod(&self.generator, &digits)
    }

    /// Calls `visit(b, c)` for every message index `b` in order with its
    /// codeword `c = b^T G`. Each step adds one generator row, `O(n)`
    /// amortized per codeword.
    pub fn for_each_codeword(&self, mut visit: impl FnMut(usize, &[u32])) {
        let p = self.modulus();
        let (k, n) = (self.k(), self.n());
        let mut b = vec![0u32; k];
        let mut c = vec![0u32; n];
        let total = self.size();
        for index in 0..total {
            visit(index, &c);
            if index + 1 == total {
                break;
            }
            // Odometer step. Every digit that changes moves by +1 mod p, the
            // wrap p-1 -> 0 included, so c gains one copy of its row.
            for (i, bi) in b.iter_mut().enumerate() {
                for (cj, &g) in c.iter_mut().zip(self.generator.row(i)) {
                    *cj = p.add(*cj, g);
                }
                *bi += 1;
                if *bi < p.get() {
                    break;
                }
                *bi = 0;
            }
        }
    }

    /// All `(b, b^T G)` pairs in message index order.
    pub fn codewords(&self) -> Codewords<'_> {
        Codewords {
            code: self,
            b: vec![0; self.k()],
            c: vec![0; self.n()],
            remaining: self.size(),
        }
    }

    fn enumeration(&self) -> &Enumeration {
        self.cache.get_or_init(|| {
            let (p, n) = (self.modulus().as_usize(), self.n());
            let mut cwe: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
            let mut composition = vec![0u32; p];
            self.for_each_codeword(|_, c| {
                composition.iter_mut().for_each(|t| *t = 0);
                for &s in c {
                    composition[s as usize] += 1;
                }
                *cwe.entry(composition.clone()).or_insert(0) += 1;
            });
            let cwe = CompleteWeightEnumerator(cwe);
            let weights = cwe.hamming_marginal(n);
            let min_distance = (1..=n).find(|&l| weights.get(l) > 0).unwrap_or(n);
            Enumeration {
                weights,
                cwe,
                min_distance,
            }
        })
    }

    pub fn weight_distribution(&self) -> &WeightDistribution {
        &self.enumeration().weights
    }

    pub fn complete_weight_enumerator(&self) -> &CompleteWeightEnumerator {
        &self.enumeration().cwe
    }

    pub fn minimum_distance(&self) -> usize {
        self.enumeration().min_distance
    }

    /// Parses the `.code` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `p=<int> n=<int> k=<int>` header"))?;
        let fields = parse_header(hline, header, &["p", "n", "k"])?;
        let p = PrimeModulus::new(fields[0]).map_err(|e| Error::parse(hline, e.to_string()))?;
        let (n, k) = (fields[1] as usize, fields[2] as usize);
        if n == 0 || k == 0 || k > n {
            return Err(Error::parse(hline, format!("need 1 <= k <= n, got n={n} k={k}")));
        }
        p.checked_len(k)?;

        let mut rows = Vec::with_capacity(k);
        let mut last_line = hline;
        for (ln, line) in lines {
            last_line = ln;
            if rows.len() == k {
                return Err(Error::parse(ln, format!("more than k={k} generator rows")));
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    let v: u64 = tok
                        .parse()
                        .map_err(|_| Error::parse(ln, format!("invalid entry `{tok}`")))?;
                    if v >= p.get() as u64 {
                        return Err(Error::parse(ln, format!("entry {v} is not in [0, {p})")));
                    }
                    Ok(v as u32)
                })
                .collect::<Result<Vec<u32>>>()?;
            if row.len() != n {
                return Err(Error::parse(ln, format!("row has {} entries, expected n={n}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::parse(
                last_line,
                format!("expected k={k} generator rows, found {}", rows.len()),
            ));
        }
        LinearCode::from_rows(p, &rows)
    }

    /// Renders the `.code` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p={} n={} k={}\n", self.modulus(), self.n(), self.k());
        for i in 0..self.k() {
            let row: Vec<String> = self.generator.row(i).iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// Iterator over `(b, c)` pairs; see [`LinearCode::codewords`].
pub struct Codewords<'a> {
    code: &'a LinearCode,
    b: Vec<u32>,
    c: Vec<u32>,
    remaining: usize,
}

impl Iterator for Codewords<'_> {
    type Item = (DigitVector, DigitVector);

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let item = (DigitVector::new(self.b.clone()), DigitVector::new(self.c.clone()));
        if self.remaining > 0 {
            let p = self.code.modulus();
            for i in 0..self.b.len() {
                for (cj, &g) in self.c.iter_mut().zip(self.code.generator.row(i)) {
                    *cj = p.add(*cj, g);
                }
                self.b[i] += 1;
                if self.b[i] < p.get() {
                    break;
                }
                self.b[i] = 0;
            }
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for Codewords<'_> {}
