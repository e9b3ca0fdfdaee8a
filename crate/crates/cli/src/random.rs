//! Seeded random elements for the property suites.

use fermion_core::{Blade, Generator, LinearMap, Matrix, Metric, Multivector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every blade of grade `p` with a coefficient uniform in [−1, 1].
pub fn random_form(rng: &mut impl Rng, n: usize, p: usize) -> Multivector {
    let terms: Vec<(Blade, f64)> = (0u32..1 << n)
        .map(Blade::from_bits)
        .filter(|b| b.grade() == p)
        .map(|b| (b, rng.gen_range(-1.0..=1.0)))
        .collect();
    Multivector::from_terms(n, terms).expect("blades lie within dim")
}

/// A p-form with p uniform over 0..=n.
pub fn random_homogeneous(rng: &mut impl Rng, n: usize) -> Multivector {
    let p = rng.gen_range(0..=n);
    random_form(rng, n, p)
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// `(MᵀM + n·I) / n` with M uniform in [−1, 1], stored exactly symmetric.
pub fn random_metric(rng: &mut impl Rng, n: usize) -> Metric {
    let m: Vec<Vec<f64>> = (0..n).map(|_| random_vector(rng, n)).collect();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let mut s: f64 = (0..n).map(|k| m[k][i] * m[k][j]).sum();
            if i == j {
                s += n as f64;
            }
            g[i][j] = s / n as f64;
            g[j][i] = g[i][j];
        }
    }
    Metric::new(&g).expect("diagonally shifted Gram matrix is positive definite")
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
    Generator::new(LinearMap::from_matrix(h).expect("finite"), metric)
        .expect("G⁻¹A is anti-hermitian")
}
