//! Walsh-Hadamard and Fourier transforms on `(F_p)^k`.
//!
//! The Fourier matrix of `(F_p)^k` is the `k`-fold Kronecker power of the
//! `p`-point DFT matrix, so the transform runs as `k` passes of a `p`-point
//! DFT, one per digit axis. For `p = 2` this is the Walsh-Hadamard
//! transform, which gets a dedicated real butterfly.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field_vec::{neg_index, PrimeModulus};
use crate::pmf::Pmf;

/// Largest imaginary residue tolerated when turning a spectrum back into a
/// mass function.
pub const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-9;

/// Eigenvalues `λ(b) = Σ_j ω^{b·j} μ(j)` of a mass function, `ω = e^{2πi/p}`.
/// For `p = 2` these are the Walsh characteristics.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    p: PrimeModulus,
    k: usize,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(p: PrimeModulus, k: usize, values: Vec<Complex64>) -> Result<Self> {
        let len = p.checked_len(k)?;
        if values.len() != len {
            return Err(Error::shape(format!(
                "{} spectrum entries for p={p} k={k}, expected {len}",
                values.len()
            )));
        }
        Ok(Spectrum { p, k, values })
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

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Complex64 {
        self.values[index]
    }

    /// Index of `−b`, whose entry is the conjugate of entry `b` for real input.
    pub fn conjugate_index(&self, b: usize) -> usize {
        neg_index(b, self.p.as_usize(), self.k)
    }

    /// Entrywise product; the spectrum of the convolution.
    pub fn pointwise_mul(&self, other: &Spectrum) -> Result<Spectrum> {
        if self.p != other.p || self.k != other.k {
            return Err(Error::shape("spectra of different shapes"));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Spectrum { p: self.p, k: self.k, values })
    }

    /// Entrywise `n`-th power.
    pub fn powi(&self, n: u32) -> Spectrum {
        let values = self.values.iter().map(|v| pow_complex(*v, n)).collect();
        Spectrum { p: self.p, k: self.k, values }
    }

    /// Kronecker product of per-coordinate spectra; `parts[u]` governs digit
    /// `u`, matching [`crate::pmf::tensor`].
    pub fn kronecker(parts: &[Spectrum]) -> Result<Spectrum> {
        let Some(first) = parts.first() else {
            return Err(Error::shape("kronecker product of zero parts"));
        };
        let p = first.p;
        if parts.iter().any(|s| s.p != p) {
            return Err(Error::domain("spectra over different fields"));
        }
        let k = parts.iter().map(|s| s.k).sum();
        p.checked_len(k)?;
        let mut values = vec![Complex64::new(1.0, 0.0)];
        for part in parts.iter().rev() {
            let mut next = Vec::with_capacity(values.len() * part.len());
            for &hi in &values {
                next.extend(part.values.iter().map(|&lo| hi * lo));
            }
            values = next;
        }
        Ok(Spectrum { p, k, values })
    }

    /// Inverts back to a mass function. Fails if the imaginary residue exceeds
    /// [`IMAGINARY_RESIDUE_LIMIT`] or the result is not a valid distribution.
    pub fn to_pmf(&self) -> Result<Pmf> {
        let raw = inverse_fourier(self);
        let residue = raw.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
        if residue > IMAGINARY_RESIDUE_LIMIT {
            return Err(Error::domain(format!(
                "spectrum is not that of a real distribution (imaginary residue {residue:e})"
            )));
        }
        Pmf::new(self.p, self.k, raw.into_iter().map(|c| c.re).collect())
    }
}

fn pow_complex(mut base: Complex64, mut exp: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// In-place unnormalized Walsh-Hadamard transform,
/// `out(a) = Σ_b (−1)^{a·b} v(b)`.
pub fn wht_in_place(v: &mut [f64]) -> Result<()> {
    let n = v.len();
    if !n.is_power_of_two() {
        return Err(Error::shape(format!("WHT length {n} is not a power of two")));
    }
    let mut h = 1;
    while h < n {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
    Ok(())
}

pub fn wht(v: &[f64]) -> Result<Vec<f64>> {
    let mut out = v.to_vec();
    wht_in_place(&mut out)?;
    Ok(out)
}

/// `ω^m` for `m` in `[0, p)`, with `ω = e^{±2πi/p}`.
fn roots_of_unity(p: usize, inverse: bool) -> Vec<Complex64> {
    let sign = if inverse { -1.0 } else { 1.0 };
    (0..p)
        .map(|m| {
            let theta = TAU * m as f64 / p as f64;
            Complex64::new(theta.cos(), sign * theta.sin())
        })
        .collect()
}

/// One `p`-point DFT pass along every digit axis.
fn axis_passes(data: &mut [Complex64], p: usize, k: usize, inverse: bool) {
    if p == 2 {
        let mut h = 1;
        for _ in 0..k {
            for block in data.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = a + b;
                    *y = a - b;
                }
            }
            h *= 2;
        }
        return;
    }
    let roots = roots_of_unity(p, inverse);
    let mut gathered = vec![Complex64::new(0.0, 0.0); p];
    let mut stride = 1;
    for _ in 0..k {
        for block in data.chunks_exact_mut(stride * p) {
            for offset in 0..stride {
                for (t, g) in gathered.iter_mut().enumerate() {
                    *g = block[offset + t * stride];
                }
                for b in 0..p {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (t, g) in gathered.iter().enumerate() {
                        acc += roots[(b * t) % p] * g;
                    }
                    block[offset + b * stride] = acc;
                }
            }
        }
        stride *= p;
    }
}

/// `out(b) = Σ_j ω^{b·j} v(j)` over `(F_p)^k`.
pub fn fourier(v: &[Complex64], p: PrimeModulus, k: usize) -> Result<Spectrum> {
    let len = p.checked_len(k)?;
    if v.len() != len {
        return Err(Error::shape(format!(
            "fourier input of length {} for p={p} k={k}, expected {len}",
            v.len()
        )));
    }
    let mut values = v.to_vec();
    axis_passes(&mut values, p.as_usize(), k, false);
    Ok(Spectrum { p, k, values })
}

/// `out(j) = p^{−k} Σ_b conj(ω^{b·j}) s(b)`.
pub fn inverse_fourier(s: &Spectrum) -> Vec<Complex64> {
    let mut values = s.values.clone();
    axis_passes(&mut values, s.p.as_usize(), s.k, true);
    let scale = 1.0 / values.len() as f64;
    values.iter_mut().for_each(|v| *v *= scale);
    values
}

/// Spectrum of a mass function: the eigenvalues of its group circulant.
pub fn spectrum_of(m: &Pmf) -> Spectrum {
    let (p, k) = (m.modulus(), m.dim());
    if p.get() == 2 {
        let mut re = m.values().to_vec();
        wht_in_place(&mut re).expect("binary pmf length is a power of two");
        let values = re.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        return Spectrum { p, k, values };
    }
    let input: Vec<Complex64> = m.values().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fourier(&input, p, k).expect("pmf length matches its shape")
}

/// Largest modulus over the non-zero frequencies.
pub fn lambda_star(s: &Spectrum) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::shape("λ* needs at least one non-trivial frequency"));
    }
    Ok(s.values[1..].iter().map(|v| v.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_vec::{dot_mod, to_digits};
    use crate::pmf::{convolve, group_circulant, tensor, Bias};
    use proptest::prelude::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    // Independent oracle: the defining sum evaluated term by term.
    fn dft_oracle(v: &[Complex64], p: PrimeModulus, k: usize) -> Vec<Complex64> {
        let n = v.len();
        (0..n)
            .map(|b| {
                let db = to_digits(b as u64, p, k).unwrap();
                (0..n)
                    .map(|j| {
                        let dj = to_digits(j as u64, p, k).unwrap();
                        let e = dot_mod(&db, &dj, p).unwrap() as f64;
                        Complex64::from_polar(1.0, TAU * e / p.get() as f64) * v[j]
                    })
                    .sum()
            })
            .collect()
    }

    fn max_err(a: &[Complex64], b: &[Complex64]) -> f64 {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    fn arb_pmf(p: u64, k: usize) -> impl Strategy<Value = Pmf> {
        let len = (p as usize).pow(k as u32);
        prop::collection::vec(0.0f64..1.0, len).prop_filter_map("zero mass", move |w| {
            let total: f64 = w.iter().sum();
            (total > 1e-6).then(|| Pmf::new(pm(p), k, w.iter().map(|x| x / total).collect()).unwrap())
        })
    }

    fn arb_shaped_pmf() -> impl Strategy<Value = Pmf> {
        prop_oneof![
            (1usize..7).prop_flat_map(|k| arb_pmf(2, k)),
            (1usize..4).prop_flat_map(|k| arb_pmf(3, k)),
            (1usize..3).prop_flat_map(|k| arb_pmf(5, k)),
            arb_pmf(7, 1),
        ]
    }

    #[test]
    fn wht_examples() {
        for k in 0..6 {
            let u = Pmf::uniform(pm(2), k).unwrap();
            let mut want = vec![0.0; 1 << k];
            want[0] = 1.0;
            assert_eq!(wht(u.values()).unwrap(), want);
        }
        assert_eq!(wht(&[0.3, 0.7]).unwrap(), vec![1.0, 0.3 - 0.7]);

        // Two i.i.d. bits of bias ε: Σ_b (−1)^{a·b} μ(b) summed directly.
        let eps = 0.3;
        let b = Pmf::from_bias(Bias::new(eps).unwrap());
        let joint = tensor(&[b.clone(), b]).unwrap();
        let m = joint.values();
        let direct = [
            m[0] + m[1] + m[2] + m[3],
            m[0] - m[1] + m[2] - m[3],
            m[0] + m[1] - m[2] - m[3],
            m[0] - m[1] - m[2] + m[3],
        ];
        let got = wht(m).unwrap();
        for (g, d) in got.iter().zip(direct) {
            assert!((g - d).abs() < 1e-15);
        }
        let chi = [1.0, eps, eps, eps * eps];
        for (g, w) in got.iter().zip(chi) {
            assert!((g - w).abs() < 1e-15);
        }

        assert!(matches!(wht(&[1.0, 2.0, 3.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn fourier_examples() {
        let u = Pmf::uniform(pm(3), 1).unwrap();
        let s = spectrum_of(&u);
        assert!(max_err(s.values(), &[c(1.0), c(0.0), c(0.0)]) < 1e-15);

        // 1/2 + 1/4 (ω + ω²) = 1/2 − 1/4
        let m = Pmf::new(pm(3), 1, vec![0.5, 0.25, 0.25]).unwrap();
        let s = spectrum_of(&m);
        assert!(max_err(s.values(), &[c(1.0), c(0.25), c(0.25)]) < 1e-15);
        assert!((lambda_star(&s).unwrap() - 0.25).abs() < 1e-15);

        assert!(matches!(fourier(&[c(1.0); 4], pm(3), 1), Err(Error::Shape(_))));
    }

    #[test]
    fn binary_path_matches_complex_path() {
        let m = Pmf::new(pm(2), 3, vec![0.1, 0.05, 0.2, 0.15, 0.1, 0.1, 0.25, 0.05]).unwrap();
        let real = wht(m.values()).unwrap();
        let input: Vec<Complex64> = m.values().iter().map(|&x| c(x)).collect();
        let complex = fourier(&input, pm(2), 3).unwrap();
        for (r, z) in real.iter().zip(complex.values()) {
            assert_eq!(*r, z.re);
            assert_eq!(z.im, 0.0);
        }
        assert!(max_err(complex.values(), &dft_oracle(&input, pm(2), 3)) < 1e-14);
    }

    #[test]
    fn inverse_examples() {
        let mut s = vec![c(0.0); 9];
        s[0] = c(1.0);
        let back = inverse_fourier(&Spectrum::new(pm(3), 2, s).unwrap());
        assert!(max_err(&back, &[c(1.0 / 9.0); 9]) < 1e-15);

        let s = Spectrum::new(pm(3), 1, vec![c(1.0), c(1.0 / 16.0), c(1.0 / 16.0)]).unwrap();
        let m = s.to_pmf().unwrap();
        for (g, w) in m.values().iter().zip([3.0 / 8.0, 5.0 / 16.0, 5.0 / 16.0]) {
            assert!((g - w).abs() < 1e-15);
        }
        let half = Pmf::new(pm(3), 1, vec![0.5, 0.25, 0.25]).unwrap();
        let conv = convolve(&half, &half).unwrap();
        for (g, w) in m.values().iter().zip(conv.values()) {
            assert!((g - w).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_examples() {
        let eps = 0.4;
        let s = spectrum_of(&Pmf::from_bias(Bias::new(eps).unwrap()));
        assert!((s.get(1).norm() - eps).abs() < 1e-15);
        let s = spectrum_of(&Pmf::from_bias_oriented(Bias::new(eps).unwrap(), true));
        assert!((s.get(1).re + eps).abs() < 1e-15);

        let point = Pmf::point_mass(pm(5), 2, 13).unwrap();
        let s = spectrum_of(&point);
        assert!(s.values().iter().all(|v| (v.norm() - 1.0).abs() < 1e-14));
        assert!((lambda_star(&s).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(lambda_star(&spectrum_of(&Pmf::uniform(pm(2), 4).unwrap())).unwrap(), 0.0);

        let trivial = Spectrum::new(pm(2), 0, vec![c(1.0)]).unwrap();
        assert!(matches!(lambda_star(&trivial), Err(Error::Shape(_))));
    }

    #[test]
    fn to_pmf_rejects_complex_residue() {
        let s = Spectrum::new(pm(3), 1, vec![c(1.0), Complex64::new(0.1, 0.2), c(0.1)]).unwrap();
        assert!(matches!(s.to_pmf(), Err(Error::Domain(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_direct_summation(m in arb_shaped_pmf()) {
            let input: Vec<Complex64> = m.values().iter().map(|&x| c(x)).collect();
            let fast = spectrum_of(&m);
            let slow = dft_oracle(&input, m.modulus(), m.dim());
            prop_assert!(max_err(fast.values(), &slow) < 1e-12);
        }

        #[test]
        fn pmf_spectrum_invariants(m in arb_shaped_pmf()) {
            let s = spectrum_of(&m);
            prop_assert!((s.get(0) - c(1.0)).norm() < 1e-9);
            prop_assert!(s.values().iter().all(|v| v.norm() <= 1.0 + 1e-9));
            for b in 0..s.len() {
                prop_assert!((s.get(s.conjugate_index(b)) - s.get(b).conj()).norm() < 1e-12);
            }
            let ls = lambda_star(&s).unwrap();
            prop_assert!((0.0..=1.0 + 1e-9).contains(&ls));
        }

        #[test]
        fn round_trip_and_parseval(m in arb_shaped_pmf()) {
            let s = spectrum_of(&m);
            let back = inverse_fourier(&s);
            let orig: Vec<Complex64> = m.values().iter().map(|&x| c(x)).collect();
            prop_assert!(max_err(&back, &orig) <= 1e-12);

            let n = m.len() as f64;
            let lhs: f64 = s.values().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            let rhs = n.sqrt() * m.values().iter().map(|v| v * v).sum::<f64>().sqrt();
            prop_assert!((lhs - rhs).abs() < 1e-12);

            // ||μ − μ_U||_2 = p^{−k/2} ||λ − λ_U||_2
            let u = 1.0 / n;
            let l2_mass = m.values().iter().map(|v| (v - u).powi(2)).sum::<f64>().sqrt();
            let l2_spec = ((s.get(0) - c(1.0)).norm_sqr()
                + s.values()[1..].iter().map(|v| v.norm_sqr()).sum::<f64>())
            .sqrt();
            prop_assert!((l2_mass - l2_spec / n.sqrt()).abs() < 1e-12);
        }

        #[test]
        fn convolution_theorem(
            (a, b) in (0usize..3, 1usize..3).prop_flat_map(|(pi, k)| {
                let p = [2u64, 3, 5][pi];
                (arb_pmf(p, k), arb_pmf(p, k))
            })
        ) {
            let lhs = spectrum_of(&convolve(&a, &b).unwrap());
            let rhs = spectrum_of(&a).pointwise_mul(&spectrum_of(&b)).unwrap();
            prop_assert!(max_err(lhs.values(), rhs.values()) < 1e-12);
        }

        #[test]
        fn tensor_spectrum_is_kronecker(
            parts in (0usize..3, 1usize..4).prop_flat_map(|(pi, k)| {
                let p = [2u64, 3, 5][pi];
                prop::collection::vec(arb_pmf(p, 1), k)
            })
        ) {
            let joint = spectrum_of(&tensor(&parts).unwrap());
            let kron = Spectrum::kronecker(&parts.iter().map(spectrum_of).collect::<Vec<_>>()).unwrap();
            prop_assert!(max_err(joint.values(), kron.values()) < 1e-12);
        }

        #[test]
        fn circulant_eigenvectors(m in (0usize..3, 1usize..3).prop_flat_map(|(pi, k)| arb_pmf([2u64, 3, 5][pi], k))) {
            // C f_b = λ(b̄) f_b for the Fourier column f_b(j) = ω^{b·j}; the
            // eigenvalue pairs with the conjugate frequency.
            let (p, k) = (m.modulus(), m.dim());
            let circ = group_circulant(&m).unwrap();
            let s = spectrum_of(&m);
            for b in 0..m.len() {
                let db = to_digits(b as u64, p, k).unwrap();
                let col: Vec<Complex64> = (0..m.len()).map(|j| {
                    let dj = to_digits(j as u64, p, k).unwrap();
                    Complex64::from_polar(1.0, TAU * dot_mod(&db, &dj, p).unwrap() as f64 / p.get() as f64)
                }).collect();
                let eig = s.get(s.conjugate_index(b));
                for (r, row) in circ.iter().enumerate() {
                    let lhs: Complex64 = row.iter().zip(&col).map(|(a, z)| z * *a).sum();
                    prop_assert!((lhs - eig * col[r]).norm() < 1e-12);
                }
            }
        }

        #[test]
        fn wht_twice_scales(v in prop::collection::vec(-1.0f64..1.0, 1usize..6).prop_flat_map(|seed| {
            let k = seed.len();
            prop::collection::vec(-1.0f64..1.0, 1 << k)
        })) {
            let twice = wht(&wht(&v).unwrap()).unwrap();
            let n = v.len() as f64;
            for (t, x) in twice.iter().zip(&v) {
                prop_assert!((t - n * x).abs() <= 1e-12 * n.max(1.0));
            }
        }
    }
}
