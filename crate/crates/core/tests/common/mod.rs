#![allow(dead_code)]

use fermion_core::{Blade, Generator, LinearMap, Matrix, Metric, Multivector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn e(n: usize, idx: &[usize]) -> Multivector {
    Multivector::blade(n, idx, 1.0).unwrap()
}

/// Every blade of grade p, coefficients uniform in [−1, 1].
pub fn random_form(rng: &mut impl Rng, n: usize, p: usize) -> Multivector {
    let terms = (0u32..1 << n)
        .map(Blade::from_bits)
        .filter(|b| b.grade() == p)
        .map(|b| (b, rng.gen_range(-1.0..=1.0)))
        .collect::<Vec<_>>();
    Multivector::from_terms(n, terms).unwrap()
}

/// Homogeneous element with a grade drawn uniformly from 0..=n.
pub fn random_homogeneous(rng: &mut impl Rng, n: usize) -> (usize, Multivector) {
    let p = rng.gen_range(0..=n);
    (p, random_form(rng, n, p))
}

/// Mixed-grade element with every blade populated.
pub fn random_multivector(rng: &mut impl Rng, n: usize) -> Multivector {
    let terms = (0u32..1 << n)
        .map(|b| (Blade::from_bits(b), rng.gen_range(-1.0..=1.0)))
        .collect::<Vec<_>>();
    Multivector::from_terms(n, terms).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// `MᵀM/n + ½·I`, mirrored so the stored matrix is exactly symmetric.
pub fn random_spd(rng: &mut impl Rng, n: usize) -> Metric {
    let m: Vec<Vec<f64>> = (0..n).map(|_| random_vector(rng, n)).collect();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let mut s: f64 = (0..n).map(|k| m[k][i] * m[k][j]).sum::<f64>() / n as f64;
            if i == j {
                s += 0.5;
            }
            g[i][j] = s;
            g[j][i] = s;
        }
    }
    Metric::new(&g).unwrap()
}

/// `H = G⁻¹A` with A antisymmetric, entries uniform in [−1, 1].
pub fn random_generator(rng: &mut impl Rng, metric: &Metric) -> Generator {
    let n = metric.dim();
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(-1.0..=1.0);
            a[(i, j)] = x;
            a[(j, i)] = -x;
        }
    }
    let h = metric.inverse().mul(&a);
    Generator::new(LinearMap::from_matrix(h).unwrap(), metric).unwrap()
}

pub fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}
