//! Output distribution of `Y = G X` for independent symbols `X(j)` and the
//! upper bounds on its distance from uniform.
//!
//! The `b`-th eigenvalue of `Y` factors over the codeword `c = b^T G`:
//! `λ_Y(b) = Π_j λ_{X(j)}(c_j)`. The spectral path evaluates this for every
//! message `b` and inverts once; the brute-force path sums over all of
//! `(F_p)^n` and serves as its oracle. Every bound is a sum of `|λ_Y(b)|`
//! over `b ≠ 0`, or a relaxation of that sum through the code's enumerators.

use std::time::Instant;

use num_complex::Complex64;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field_vec::{add_index, from_digits, PrimeModulus};
use crate::pmf::{parse_header, Bias, Pmf};
use crate::transforms::{lambda_star, spectrum_of, Spectrum};

/// Default cap on `p^n` for brute-force enumeration.
pub const BRUTE_FORCE_CAP: u64 = 1 << 24;
/// Cap on `p^k` for the spectral path.
pub const SPECTRAL_MESSAGE_CAP: u64 = 1 << 20;
/// Cap on block length `n` for the spectral path.
pub const SPECTRAL_LENGTH_CAP: usize = 4096;
/// Tolerance on the zeroth eigenvalue of a symbol spectrum.
const UNIT_TOLERANCE: f64 = 1e-9;
/// Exact distances below this are treated as zero when forming tightness.
const EXACT_FLOOR: f64 = 1e-300;

/// `n` independent symbols over `F_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceModel {
    p: PrimeModulus,
    symbols: Vec<Pmf>,
    iid: bool,
}

impl SourceModel {
    pub fn new(symbols: Vec<Pmf>) -> Result<Self> {
        let Some(first) = symbols.first() else {
            return Err(Error::shape("source with no symbols"));
        };
        let p = first.modulus();
        for (j, s) in symbols.iter().enumerate() {
            if s.modulus() != p {
                return Err(Error::domain(format!(
                    "symbol {j} is over F_{} but symbol 0 is over F_{p}",
                    s.modulus()
                )));
            }
            if s.dim() != 1 {
                return Err(Error::shape(format!("symbol {j} has k={}, expected 1", s.dim())));
            }
        }
        let iid = symbols.iter().all(|s| s.values() == first.values());
        Ok(SourceModel { p, symbols, iid })
    }

    /// `n` copies of one symbol distribution.
    pub fn iid(symbol: Pmf, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::shape("source with no symbols"));
        }
        Self::new(vec![symbol; n])
    }

    /// `n` i.i.d. bits of bias `ε`, zero-heavy.
    pub fn binary_bias(epsilon: Bias, n: usize) -> Result<Self> {
        Self::iid(Pmf::from_bias(epsilon), n)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Pmf] {
        &self.symbols
    }

    pub fn is_iid(&self) -> bool {
        self.iid
    }

    /// Largest `λ*` over the symbols.
    pub fn lambda_star(&self) -> f64 {
        self.symbols
            .iter()
            .map(|s| lambda_star(&spectrum_of(s)).expect("p >= 2"))
            .fold(0.0, f64::max)
    }

    /// Parses the per-symbol source format: header `p=<int> n=<int>`, then
    /// `n` rows of `p` probabilities. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `p=<int> n=<int>` header"))?;
        let fields = parse_header(hline, header, &["p", "n"])?;
        let p = PrimeModulus::new(fields[0]).map_err(|e| Error::parse(hline, e.to_string()))?;
        let n = fields[1] as usize;
        if n == 0 {
            return Err(Error::parse(hline, "need n >= 1"));
        }
        let mut symbols = Vec::with_capacity(n);
        let mut last_line = hline;
        for (ln, line) in lines {
            last_line = ln;
            if symbols.len() == n {
                return Err(Error::parse(ln, format!("more than n={n} symbol rows")));
            }
            let values = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|_| Error::parse(ln, format!("invalid probability `{tok}`")))
                })
                .collect::<Result<Vec<f64>>>()?;
            let pmf = Pmf::new(p, 1, values).map_err(|e| Error::parse(ln, e.to_string()))?;
            symbols.push(pmf);
        }
        if symbols.len() != n {
            return Err(Error::parse(
                last_line,
                format!("expected n={n} symbol rows, found {}", symbols.len()),
            ));
        }
        SourceModel::new(symbols)
    }

    fn check_against(&self, code: &LinearCode) -> Result<()> {
        if self.p != code.modulus() {
            return Err(Error::domain(format!(
                "source over F_{} but code over F_{}",
                self.p,
                code.modulus()
            )));
        }
        if self.n() != code.n() {
            return Err(Error::shape(format!(
                "source has {} symbols but code length is {}",
                self.n(),
                code.n()
            )));
        }
        Ok(())
    }

    /// Per-symbol spectra; a single shared entry when i.i.d.
    fn symbol_spectra(&self) -> Vec<Vec<Complex64>> {
        let take = if self.iid { 1 } else { self.symbols.len() };
        self.symbols[..take]
            .iter()
            .map(|s| spectrum_of(s).values().to_vec())
            .collect()
    }
}

/// Distribution of `Y = G X` by summing over every input in `(F_p)^n`.
/// Refuses inputs with `p^n > cap`.
pub fn output_pmf_bruteforce(code: &LinearCode, src: &SourceModel, cap: u64) -> Result<Pmf> {
    src.check_against(code)?;
    let p = code.modulus();
    p.space_size(code.n(), cap, "brute-force input space")?;
    let (pu, k, n) = (p.as_usize(), code.k(), code.n());

    // shift[j][v]: index of v·G(·, j), the contribution of X(j) = v to Y.
    let shifts: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let col = code.generator().column(j);
            (0..p.get())
                .map(|v| {
                    let d: Vec<u32> = col.iter().map(|&g| p.mul(g, v)).collect();
                    from_digits(&d, p).expect("reduced digits") as usize
                })
                .collect()
        })
        .collect();

    struct Walk<'a> {
        p: usize,
        k: usize,
        shifts: &'a [Vec<usize>],
        symbols: &'a [Pmf],
        out: Vec<f64>,
    }

    impl Walk<'_> {
        fn visit(&mut self, j: usize, prob: f64, y: usize) {
            if j == self.shifts.len() {
                self.out[y] += prob;
                return;
            }
            for v in 0..self.p {
                let q = self.symbols[j].get(v);
                if q != 0.0 {
                    let next = add_index(y, self.shifts[j][v], self.p, self.k);
                    self.visit(j + 1, prob * q, next);
                }
            }
        }
    }

    let mut walk = Walk {
        p: pu,
        k,
        shifts: &shifts,
        symbols: src.symbols(),
        out: vec![0.0; code.size()],
    };
    walk.visit(0, 1.0, 0);
    Pmf::new(p, k, walk.out)
}

fn check_spectral_caps(code: &LinearCode) -> Result<()> {
    code.modulus()
        .space_size(code.k(), SPECTRAL_MESSAGE_CAP, "spectral message space")?;
    if code.n() > SPECTRAL_LENGTH_CAP {
        return Err(Error::Capacity {
            what: "spectral block length".into(),
            size: code.n() as u128,
            limit: SPECTRAL_LENGTH_CAP as u128,
        });
    }
    Ok(())
}

/// `λ_Y(b) = Π_j λ_{X(j)}(c_j)` for every message `b`, `c = b^T G`.
pub fn output_spectrum(code: &LinearCode, src: &SourceModel) -> Result<Spectrum> {
    src.check_against(code)?;
    check_spectral_caps(code)?;
    let spectra = src.symbol_spectra();
    let mut values = vec![Complex64::new(0.0, 0.0); code.size()];
    code.for_each_codeword(|b, c| {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, &cj) in c.iter().enumerate() {
            if cj != 0 {
                acc *= spectra[if src.iid { 0 } else { j }][cj as usize];
            }
        }
        values[b] = acc;
    });
    Spectrum::new(code.modulus(), code.k(), values)
}

/// Distribution of `Y = G X` through the eigenvalue product and one inverse
/// transform, `O(p^k n)` plus the transform.
pub fn output_pmf_spectral(code: &LinearCode, src: &SourceModel) -> Result<Pmf> {
    output_spectrum(code, src)?.to_pmf()
}

/// Exact `δ_Y = ||μ_Y − μ_U||_1` via the spectral path.
pub fn exact_delta(code: &LinearCode, src: &SourceModel) -> Result<f64> {
    Ok(output_pmf_spectral(code, src)?.l1_from_uniform())
}

/// Sum of `|λ(b)|` over the non-zero frequencies, in index order.
fn nontrivial_modulus_sum(s: &Spectrum) -> f64 {
    s.values()[1..].iter().map(|v| v.norm()).sum()
}

/// `δ_Y ≤ Σ_{c ∈ C∖0} |Π_j λ_{X(j)}(c_j)|`. For `p = 2` each term is the bias of
/// the parity `c·X`.
pub fn bound_codeword_sum(code: &LinearCode, src: &SourceModel) -> Result<f64> {
    Ok(nontrivial_modulus_sum(&output_spectrum(code, src)?))
}

fn check_unit_interval(x: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("{what} {x} outside [0, 1]")));
    }
    Ok(())
}

/// `δ_Y ≤ Σ_{l=d}^n A_l x^l` for i.i.d. symbols with bias (or `λ*`) `x`.
pub fn bound_weight_distribution(code: &LinearCode, x: f64) -> Result<f64> {
    check_unit_interval(x, "per-symbol bias")?;
    let a = code.weight_distribution();
    let d = code.minimum_distance();
    Ok((d..=code.n())
        .map(|l| a.get(l) as f64 * x.powi(l as i32))
        .sum())
}

/// `δ_Y ≤ Σ_{t : t_0 < n} W_C(t) |Π_{u≥1} λ(u)^{t_u}|` for i.i.d. symbols with
/// spectrum `λ`.
pub fn bound_cwe(code: &LinearCode, symbol_spectrum: &Spectrum) -> Result<f64> {
    let p = code.modulus();
    if symbol_spectrum.modulus() != p || symbol_spectrum.dim() != 1 {
        return Err(Error::shape(format!(
            "symbol spectrum must have p={p} entries over F_{p}"
        )));
    }
    let zeroth = symbol_spectrum.get(0);
    if (zeroth - Complex64::new(1.0, 0.0)).norm() > UNIT_TOLERANCE {
        return Err(Error::domain(format!(
            "zeroth symbol eigenvalue is {zeroth}, expected 1"
        )));
    }
    let moduli: Vec<f64> = symbol_spectrum.values().iter().map(|v| v.norm()).collect();
    let n = code.n() as u32;
    Ok(code
        .complete_weight_enumerator()
        .iter()
        .filter(|(t, _)| t[0] < n)
        .map(|(t, count)| {
            let term: f64 = t[1..]
                .iter()
                .zip(&moduli[1..])
                .map(|(&tu, &m)| m.powi(tu as i32))
                .product();
            count as f64 * term
        })
        .sum())
}

/// `δ_Y ≤ (p^k − 1) x^d`.
pub fn bound_min_distance(code: &LinearCode, x: f64) -> Result<f64> {
    check_unit_interval(x, "per-symbol bias")?;
    Ok((code.size() - 1) as f64 * x.powi(code.minimum_distance() as i32))
}

fn check_single_symbol(m: &Pmf) -> Result<()> {
    if m.dim() != 1 {
        return Err(Error::shape(format!("expected a single symbol, got k={}", m.dim())));
    }
    Ok(())
}

/// `δ_Z ≤ √(p−1) λ*` for a single variable over `F_p`.
pub fn bound_single_variable(m: &Pmf) -> Result<f64> {
    check_single_symbol(m)?;
    let p = m.modulus().get() as f64;
    Ok((p - 1.0).sqrt() * lambda_star(&spectrum_of(m))?)
}

/// Distribution of the sum of `n` independent copies of `m`: the inverse
/// transform of `λ^n`.
pub fn sum_chain(m: &Pmf, n: u32) -> Result<Pmf> {
    check_single_symbol(m)?;
    if n == 0 {
        return Err(Error::domain("sum chain needs n >= 1"));
    }
    spectrum_of(m).powi(n).to_pmf()
}

/// `δ_{S_n} ≤ √(p−1) λ*^n`.
pub fn bound_sum_chain(m: &Pmf, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("sum chain needs n >= 1"));
    }
    check_single_symbol(m)?;
    let p = m.modulus().get() as f64;
    Ok((p - 1.0).sqrt() * lambda_star(&spectrum_of(m))?.powi(n as i32))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    /// Brute-force cross-check runs when `p^n` is at most this.
    pub brute_force_cap: u64,
    pub compute_exact: bool,
    /// Wall-clock timing makes reports differ between runs, so it is opt-in.
    pub record_timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            brute_force_cap: BRUTE_FORCE_CAP,
            compute_exact: true,
            record_timing: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tightness {
    /// `bound / exact`.
    Ratio(f64),
    /// The exact distance is zero and the bound is not.
    Infinite,
}

impl Tightness {
    fn of(bound: f64, exact: f64) -> Self {
        if exact < EXACT_FLOOR {
            if bound < EXACT_FLOOR {
                Tightness::Ratio(1.0)
            } else {
                Tightness::Infinite
            }
        } else {
            Tightness::Ratio(bound / exact)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub name: &'static str,
    /// `None` when the bound does not apply to this code and source.
    pub value: Option<f64>,
    pub tightness: Option<Tightness>,
}

impl BoundEntry {
    pub fn applicable(&self) -> bool {
        self.value.is_some()
    }
}

/// Names of every bound, in report order.
pub const BOUND_NAMES: [&str; 6] = [
    "codeword_sum",
    "cwe",
    "weight_distribution",
    "min_distance",
    "message_space_sum",
    "message_space_weight",
];

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub iid: bool,
    /// Largest per-symbol `λ*` (the bias, for bits).
    pub symbol_lambda_star: f64,
    pub exact_delta: Option<f64>,
    /// Largest entrywise gap between the spectral and brute-force output
    /// distributions, when brute force ran.
    pub brute_force_gap: Option<f64>,
    pub entries: Vec<BoundEntry>,
    pub elapsed_seconds: Option<f64>,
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.entry(name).and_then(|e| e.value)
    }

    /// Every applicable bound is at least the exact distance, within `tol`.
    pub fn is_sound(&self, tol: f64) -> bool {
        match self.exact_delta {
            Some(exact) => self
                .entries
                .iter()
                .filter_map(|e| e.value)
                .all(|v| v >= exact - tol),
            None => true,
        }
    }
}

/// Exact distance plus every bound that applies to `code` and `src`.
///
/// The codeword-sum bound always applies. The enumerator bounds need i.i.d.
/// symbols and are reported without a value otherwise. The message-space
/// entries apply only when the code is all of `(F_p)^n`.
pub fn analyze(code: &LinearCode, src: &SourceModel, options: &AnalyzeOptions) -> Result<BoundReport> {
    let started = Instant::now();
    src.check_against(code)?;
    let spectrum = output_spectrum(code, src)?;

    let (exact_delta, brute_force_gap) = if options.compute_exact {
        let spectral = spectrum.to_pmf()?;
        let gap = match output_pmf_bruteforce(code, src, options.brute_force_cap) {
            Ok(brute) => Some(
                spectral
                    .values()
                    .iter()
                    .zip(brute.values())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max),
            ),
            Err(e) if e.is_capacity() => None,
            Err(e) => return Err(e),
        };
        (Some(spectral.l1_from_uniform()), gap)
    } else {
        (None, None)
    };

    let codeword_sum = nontrivial_modulus_sum(&spectrum);
    let lambda = src.lambda_star().min(1.0);
    let iid = src.is_iid();

    let (cwe, weight, min_distance) = if iid {
        let symbol = spectrum_of(&src.symbols()[0]);
        (
            Some(bound_cwe(code, &symbol)?),
            Some(bound_weight_distribution(code, lambda)?),
            Some(bound_min_distance(code, lambda)?),
        )
    } else {
        (None, None, None)
    };
    let full = code.is_full_space();
    let values = [
        Some(codeword_sum),
        cwe,
        weight,
        min_distance,
        full.then_some(codeword_sum),
        if full { weight } else { None },
    ];

    let entries = BOUND_NAMES
        .iter()
        .zip(values)
        .map(|(&name, value)| BoundEntry {
            name,
            value,
            tightness: value.zip(exact_delta).map(|(b, e)| Tightness::of(b, e)),
        })
        .collect();

    Ok(BoundReport {
        p: code.modulus().get(),
        n: code.n(),
        k: code.k(),
        d: code.minimum_distance(),
        iid,
        symbol_lambda_star: lambda,
        exact_delta,
        brute_force_gap,
        entries,
        elapsed_seconds: options
            .record_timing
            .then(|| started.elapsed().as_secs_f64()),
    })
}
