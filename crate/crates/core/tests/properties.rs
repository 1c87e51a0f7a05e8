mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{pm, random_code, random_pmf};
use rngbound::analysis::{
    analyze, bound_codeword_sum, bound_cwe, bound_min_distance, bound_weight_distribution,
    exact_delta, output_pmf_spectral, AnalyzeOptions,
};
use rngbound::transforms::spectrum_of;
use rngbound::{Bias, FieldMatrix, LinearCode, SourceModel};

const TOL: f64 = 1e-9;

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn iid_bounds_are_ordered(seed in any::<u64>(), pi in 0usize..3, n in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = pm([2, 3, 5][pi]);
        let k = 1 + (seed as usize) % n.min(3);
        let code = random_code(&mut rng, p, n, k);
        let symbol = random_pmf(&mut rng, p, 1);
        let spectrum = spectrum_of(&symbol);
        let src = SourceModel::iid(symbol, n).unwrap();
        let ls = src.lambda_star();

        let exact = exact_delta(&code, &src).unwrap();
        let cs = bound_codeword_sum(&code, &src).unwrap();
        let cwe = bound_cwe(&code, &spectrum).unwrap();
        let wd = bound_weight_distribution(&code, ls).unwrap();
        let md = bound_min_distance(&code, ls).unwrap();

        prop_assert!(exact <= cs + TOL, "exact {exact} > codeword-sum {cs}");
        prop_assert!(cs <= cwe + TOL, "codeword-sum {cs} > cwe {cwe}");
        prop_assert!(cwe <= wd + TOL, "cwe {cwe} > weight-dist {wd}");
        prop_assert!(wd <= md + TOL, "weight-dist {wd} > min-dist {md}");
    }

    #[test]
    fn row_operations_preserve_the_output_law(seed in any::<u64>(), pi in 0usize..3, n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = pm([2, 3, 5][pi]);
        let k = 2.min(n);
        let code = random_code(&mut rng, p, n, k);
        let src = SourceModel::new((0..n).map(|_| random_pmf(&mut rng, p, 1)).collect()).unwrap();

        // Replace row 0 by row 0 + c·row 1, then swap the rows.
        let g = code.generator();
        let c = 1 + (seed % (u64::from(p.get()) - 1).max(1)) as u32;
        let r0: Vec<u32> = (0..n).map(|j| p.add(g.get(0, j), p.mul(c, g.get(1, j)))).collect();
        let r1: Vec<u32> = g.row(1).to_vec();
        let other = LinearCode::new(FieldMatrix::from_rows(p, &[r1, r0]).unwrap()).unwrap();

        let a = output_pmf_spectral(&code, &src).unwrap();
        let b = output_pmf_spectral(&other, &src).unwrap();
        for (x, y) in sorted(a.values()).iter().zip(sorted(b.values())) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        let opts = AnalyzeOptions::default();
        let ra = analyze(&code, &src, &opts).unwrap();
        let rb = analyze(&other, &src, &opts).unwrap();
        prop_assert!((ra.exact_delta.unwrap() - rb.exact_delta.unwrap()).abs() < 1e-12);
        for (ea, eb) in ra.entries.iter().zip(&rb.entries) {
            match (ea.value, eb.value) {
                (Some(x), Some(y)) => prop_assert!((x - y).abs() < 1e-12, "{} differs", ea.name),
                (None, None) => {}
                _ => prop_assert!(false, "{} applicability differs", ea.name),
            }
        }
    }

    #[test]
    fn repetition_bounds_are_tight(n in 1usize..=12, eps in 0.0f64..=1.0) {
        let code = LinearCode::repetition(pm(2), n).unwrap();
        let src = SourceModel::binary_bias(Bias::new(eps).unwrap(), n).unwrap();
        let want = eps.powi(n as i32);
        prop_assert!((exact_delta(&code, &src).unwrap() - want).abs() < 1e-12);
        prop_assert!((bound_weight_distribution(&code, eps).unwrap() - want).abs() < 1e-12);
        prop_assert!((bound_min_distance(&code, eps).unwrap() - want).abs() < 1e-12);
        prop_assert!((bound_codeword_sum(&code, &src).unwrap() - want).abs() < 1e-12);
    }
}
