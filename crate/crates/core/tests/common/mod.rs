#![allow(dead_code)]

use rand::Rng;
use rngbound::{LinearCode, Pmf, PrimeModulus, SourceModel};

pub fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

/// Random mass function; roughly one draw in five zeroes out a coordinate.
pub fn random_pmf<R: Rng>(rng: &mut R, p: PrimeModulus, k: usize) -> Pmf {
    let len = p.checked_len(k).unwrap();
    loop {
        let mut w: Vec<f64> = (0..len).map(|_| rng.gen::<f64>()).collect();
        if rng.gen_bool(0.2) {
            let i = rng.gen_range(0..len);
            w[i] = 0.0;
        }
        let total: f64 = w.iter().sum();
        if total > 1e-3 {
            return Pmf::new(p, k, w.into_iter().map(|x| x / total).collect()).unwrap();
        }
    }
}

pub fn random_code<R: Rng>(rng: &mut R, p: PrimeModulus, n: usize, k: usize) -> LinearCode {
    loop {
        let rows: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p.get())).collect())
            .collect();
        if let Ok(code) = LinearCode::from_rows(p, &rows) {
            return code;
        }
    }
}

pub struct Instance {
    pub code: LinearCode,
    pub source: SourceModel,
}

/// Instance `i` of the randomized family: p cycles through {2, 3, 5},
/// n ≤ 8, k ≤ min(4, n); every fourth instance is i.i.d.
pub fn random_instance<R: Rng>(rng: &mut R, i: usize) -> Instance {
    let p = pm([2, 3, 5][i % 3]);
    let n = rng.gen_range(1..=8);
    let k = rng.gen_range(1..=n.min(4));
    let code = random_code(rng, p, n, k);
    let source = if i.is_multiple_of(4) {
        SourceModel::iid(random_pmf(rng, p, 1), n).unwrap()
    } else {
        SourceModel::new((0..n).map(|_| random_pmf(rng, p, 1)).collect()).unwrap()
    };
    Instance { code, source }
}
