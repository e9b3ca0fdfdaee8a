//! Property suites behind `check-identities` and `oracle-compare`.

use fermion_core::oracle::{oracle_product, DenseMultivector, OracleKind, OracleOutput};
use fermion_core::{
    bracket, clifford_product, dagger, extended_inner, wedge, Blade, DeformationParameter, Metric,
    Multivector, Result,
};

use crate::random::{random_homogeneous, rng};

/// Maximum residual of one identity over all trials.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub max: f64,
}

impl Residual {
    pub fn passes(&self, tol: f64) -> bool {
        self.max <= tol
    }
}

pub const IDENTITIES: [&str; 10] = [
    "bracket_symmetry",
    "bracket_leibniz",
    "bracket_jacobi",
    "bracket_unit",
    "dagger_anti_automorphism",
    "dagger_trace",
    "dagger_adjoint",
    "dagger_isometry",
    "deformation_zero",
    "deformation_first_order",
];

fn parity(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn grade(a: &Multivector) -> usize {
    a.homogeneous_grade().unwrap_or(0)
}

/// Weights `L_k'(0)` of the Lagrange basis on `nodes`, so that
/// `Σ_k w_k P(x_k)` is the linear coefficient of any polynomial P of degree
/// below `nodes.len()`.
fn derivative_weights(nodes: &[f64]) -> Vec<f64> {
    (0..nodes.len())
        .map(|k| {
            let denom: f64 = (0..nodes.len())
                .filter(|&j| j != k)
                .map(|j| nodes[k] - nodes[j])
                .product();
            let numer: f64 = (0..nodes.len())
                .filter(|&m| m != k)
                .map(|m| {
                    (0..nodes.len())
                        .filter(|&j| j != k && j != m)
                        .map(|j| -nodes[j])
                        .product::<f64>()
                })
                .sum();
            numer / denom
        })
        .collect()
}

/// Runs every identity on `trials` seeded triples of homogeneous forms and
/// returns the per-identity maximum residual, in [`IDENTITIES`] order.
///
/// The first-order deformation check samples `AB` at ħ = 0, ½, 1, …, n/2,
/// extracts the exact linear coefficient of that polynomial by Lagrange
/// differentiation and compares it with `½{A, B}`.
pub fn identity_suite(metric: &Metric, trials: usize, seed: u64) -> Result<Vec<Residual>> {
    let n = metric.dim();
    let mut r = rng(seed);
    let mut max = [0.0f64; IDENTITIES.len()];
    let nodes: Vec<f64> = (0..=n).map(|k| k as f64 / 2.0).collect();
    let weights = derivative_weights(&nodes);
    let one = DeformationParameter::ONE;

    for _ in 0..trials {
        let w = random_homogeneous(&mut r, n);
        let a = random_homogeneous(&mut r, n);
        let b = random_homogeneous(&mut r, n);
        let (p, q, s) = (grade(&w), grade(&a), grade(&b));
        let br = |x: &Multivector, y: &Multivector| bracket(x, y, metric);
        let prod = |x: &Multivector, y: &Multivector| clifford_product(x, y, metric, one);
        let inner = |x: &Multivector, y: &Multivector| extended_inner(x, y, metric);

        let mut res = [0.0f64; IDENTITIES.len()];
        res[0] = (&br(&a, &w)? - &(br(&w, &a)? * parity(p * q + 1))).norm_inf();
        res[1] = (&(&br(&w, &wedge(&a, &b)?)? - &wedge(&br(&w, &a)?, &b)?)
            - &(wedge(&a, &br(&w, &b)?)? * parity(p * q)))
            .norm_inf();
        res[2] = (&(&(br(&w, &br(&a, &b)?)? * parity(p * s))
            + &(br(&a, &br(&b, &w)?)? * parity(q * p)))
            + &(br(&b, &br(&w, &a)?)? * parity(s * q)))
            .norm_inf();
        res[3] = br(&Multivector::scalar(n, 1.0), &a)?.norm_inf();
        res[4] = (&dagger(&prod(&w, &a)?) - &prod(&dagger(&a), &dagger(&w))?).norm_inf();
        res[5] = (inner(&w, &a)? - prod(&dagger(&w), &a)?.scalar_part()).abs();
        res[6] = (inner(&w, &prod(&a, &b)?)? - inner(&prod(&dagger(&a), &w)?, &b)?).abs();
        res[7] = (inner(&w, &a)? - inner(&dagger(&w), &dagger(&a))?).abs();
        res[8] = (&clifford_product(&w, &a, metric, DeformationParameter::ZERO)? - &wedge(&w, &a)?)
            .norm_inf();
        let mut linear = Multivector::zero(n);
        for (&x, &c) in nodes.iter().zip(&weights) {
            let h = DeformationParameter::new(x)?;
            linear = linear.add_scaled(&clifford_product(&w, &a, metric, h)?, c);
        }
        res[9] = (&linear - &(br(&w, &a)? * 0.5)).norm_inf();

        for (m, x) in max.iter_mut().zip(res) {
            // f64::max drops NaN, so keep it sticky by hand
            *m = if m.is_nan() || x.is_nan() {
                f64::NAN
            } else {
                m.max(x)
            };
        }
    }
    Ok(IDENTITIES
        .iter()
        .zip(max)
        .map(|(&name, max)| Residual { name, max })
        .collect())
}

pub const COMPARED: [OracleKind; 4] = [
    OracleKind::Wedge,
    OracleKind::Bracket,
    OracleKind::Clifford,
    OracleKind::Inner,
];

/// Worst blade pair of one product kind.
#[derive(Clone, Debug, PartialEq)]
pub struct Deviation {
    pub kind: OracleKind,
    pub max: f64,
    pub pair: (Blade, Blade),
}

/// Compares the blade engine with the dense oracle on every pair of basis
/// blades, returning the worst pair per kind in [`COMPARED`] order.
pub fn oracle_sweep(metric: &Metric) -> Result<Vec<Deviation>> {
    let n = metric.dim();
    let blades: Vec<Blade> = (0u32..1 << n).map(Blade::from_bits).collect();
    let dense: Vec<DenseMultivector> = blades
        .iter()
        .map(|&b| DenseMultivector::from_multivector(&Multivector::from_blade(n, b, 1.0)))
        .collect::<Result<_>>()?;
    let one = DeformationParameter::ONE;
    let mut out: Vec<Deviation> = COMPARED
        .iter()
        .map(|&kind| Deviation {
            kind,
            max: 0.0,
            pair: (Blade::SCALAR, Blade::SCALAR),
        })
        .collect();
    for (i, &ba) in blades.iter().enumerate() {
        let a = Multivector::from_blade(n, ba, 1.0);
        for (j, &bb) in blades.iter().enumerate() {
            let b = Multivector::from_blade(n, bb, 1.0);
            for d in out.iter_mut() {
                let oracle = oracle_product(d.kind, &dense[i], &dense[j], metric, one)?;
                let dev = match oracle {
                    OracleOutput::Scalar(s) => (extended_inner(&a, &b, metric)? - s).abs(),
                    OracleOutput::Forms(f) => {
                        let engine = match d.kind {
                            OracleKind::Wedge => wedge(&a, &b)?,
                            OracleKind::Bracket => bracket(&a, &b, metric)?,
                            _ => clifford_product(&a, &b, metric, one)?,
                        };
                        (&engine - &f.to_multivector()).norm_inf()
                    }
                    OracleOutput::Family(_) => unreachable!("derivative is not compared"),
                };
                if dev > d.max || dev.is_nan() {
                    d.max = dev;
                    d.pair = (ba, bb);
                }
            }
        }
    }
    Ok(out)
}
