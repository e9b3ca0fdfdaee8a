//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fermion_cli::random::{random_form, random_generator, random_homogeneous, random_metric, rng};
use fermion_cli::suites::{identity_suite, oracle_sweep};
use fermion_core::maps::orthogonality_residual;
use fermion_core::{
    bracket, clifford_product, evolution_operator, evolve_observable, evolve_phase, noether_drift,
    two_form_from_generator, wedge, wick_product, DeformationParameter, EvolutionSpec, Generator,
    LinearMap, Metric, Multivector, TimeGrid,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn metrics(seed: u64, n: usize) -> [Metric; 2] {
    [Metric::identity(n), random_metric(&mut rng(seed), n)]
}

fn identity_suite_criterion() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut name = "";
    for n in [4, 5] {
        for metric in metrics(100 + n as u64, n) {
            for r in identity_suite(&metric, 200, 1).expect("suite runs") {
                if r.max > worst || r.max.is_nan() {
                    worst = r.max;
                    name = r.name;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(30),
        format!(
            "max residual {worst:.2e} ({name}), {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn oracle_criterion() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [3, 4] {
        for metric in metrics(200 + n as u64, n) {
            for d in oracle_sweep(&metric).expect("sweep runs") {
                if d.max > worst || d.max.is_nan() {
                    worst = d.max;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < Duration::from_secs(60),
        format!("max deviation {worst:.2e}, {:.2}s", elapsed.as_secs_f64()),
    )
}

fn wick_criterion() -> Outcome {
    let mut r = rng(3);
    let ms = metrics(300, 5);
    let mut worst: f64 = 0.0;
    for k in 0..500 {
        let a = random_homogeneous(&mut r, 5);
        let b = random_homogeneous(&mut r, 5);
        let m = &ms[k % 2];
        let one = DeformationParameter::ONE;
        let fast = clifford_product(&a, &b, m, one).unwrap();
        let slow = wick_product(&a, &b, m, one).unwrap();
        worst = worst.max((&fast - &slow).norm_inf());
    }
    outcome(
        worst <= 1e-12,
        format!("max deviation {worst:.2e} over 500 pairs"),
    )
}

fn canonical_criterion() -> Outcome {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let metric = if k % 2 == 0 {
            Metric::identity(5)
        } else {
            random_metric(&mut r, 5)
        };
        let h = random_generator(&mut r, &metric);
        let t = r.gen_range(-10.0..=10.0);
        let u = evolution_operator(&h, t).unwrap();
        worst = worst.max(orthogonality_residual(u.matrix(), &metric).unwrap());
    }
    outcome(worst <= 1e-10, format!("max ‖UᵀGU − G‖∞ {worst:.2e}"))
}

fn rotation() -> Generator {
    Generator::plane_rotation(&Metric::identity(2), 1, 2, 1.0).unwrap()
}

fn e(n: usize, idx: &[usize]) -> Multivector {
    Multivector::blade(n, idx, 1.0).unwrap()
}

fn evolution_criterion() -> Outcome {
    // grade-1 observable against the closed form and against exp(tH)
    let grid = TimeGrid::new(0.0, 2.0 * PI, 1000).unwrap();
    let spec = EvolutionSpec::classical(&rotation(), e(2, &[1]), grid);
    let mut phase_dev: f64 = 0.0;
    for (t, a) in evolve_observable(&spec).unwrap() {
        phase_dev = phase_dev
            .max((a.coeff(&[1]) - t.cos()).abs())
            .max((a.coeff(&[2]) - t.sin()).abs());
    }
    let mut r = rng(5);
    let metric = random_metric(&mut r, 4);
    let h = random_generator(&mut r, &metric);
    let eta0 = Multivector::vector(&[0.3, -0.7, 0.5, 0.2]);
    let spec = EvolutionSpec::classical(&h, eta0, TimeGrid::new(0.0, 2.0, 400).unwrap());
    let obs = evolve_observable(&spec).unwrap();
    for ((_, a), (_, eta)) in obs.iter().zip(evolve_phase(&spec).unwrap()) {
        phase_dev = phase_dev.max((a - &Multivector::vector(&eta)).norm_inf());
    }

    // the Hamiltonian itself is a constant of motion
    let form = two_form_from_generator(&h);
    let grid = TimeGrid::new(0.0, 5.0, 100).unwrap();
    let interaction = &form + &random_form(&mut r, 4, 3);
    let mut self_drift: f64 = 0.0;
    for spec in [
        EvolutionSpec::classical(&h, form.clone(), grid),
        EvolutionSpec::quantum(&metric, interaction.clone(), interaction, grid),
    ] {
        for (_, a) in evolve_observable(&spec).unwrap() {
            self_drift = self_drift.max((&a - &spec.initial).norm_inf());
        }
    }

    let id3 = Metric::identity(3);
    let lx = Generator::plane_rotation(&id3, 2, 3, 1.0).unwrap();
    let ly = Generator::plane_rotation(&id3, 3, 1, 1.0).unwrap();
    let scaled = LinearMap::from_matrix(lx.matrix().scale(0.5)).unwrap();
    let lx2 = Generator::new(scaled, &id3).unwrap();
    let commuting = noether_drift(&lx, &lx2, 1.0).unwrap();
    let so3 = noether_drift(&lx, &ly, 1.0).unwrap();

    outcome(
        phase_dev <= 1e-8 && self_drift <= 1e-9 && commuting <= 1e-9 && so3 > 0.1,
        format!(
            "phase dev {phase_dev:.2e}, self drift {self_drift:.2e}, \
             commuting drift {commuting:.2e}, so(3) drift {so3:.3}"
        ),
    )
}

fn first_order_residual(a: &Multivector, b: &Multivector, m: &Metric, h: f64) -> f64 {
    let ab = clifford_product(a, b, m, DeformationParameter::new(h).unwrap()).unwrap();
    let half = bracket(a, b, m).unwrap().scale(0.5);
    (&ab - &wedge(a, b).unwrap())
        .add_scaled(&half, -h)
        .norm_inf()
}

fn deformation_criterion() -> Outcome {
    let mut r = rng(6);
    let mut exact = true;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for metric in metrics(600, 4) {
        for _ in 0..50 {
            let a = random_homogeneous(&mut r, 4);
            let b = random_homogeneous(&mut r, 4);
            let zero = clifford_product(&a, &b, &metric, DeformationParameter::ZERO).unwrap();
            exact &= zero == wedge(&a, &b).unwrap();
        }
        for _ in 0..20 {
            let a = random_form(&mut r, 4, 2);
            let b = random_form(&mut r, 4, 2);
            let ratio = first_order_residual(&a, &b, &metric, 1e-3)
                / first_order_residual(&a, &b, &metric, 5e-4);
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    outcome(
        exact && (lo - 4.0).abs() <= 0.4 && (hi - 4.0).abs() <= 0.4,
        format!("ħ=0 exact: {exact}, halving ratio in [{lo:.4}, {hi:.4}]"),
    )
}

fn integrator_criterion() -> Outcome {
    let reference = evolution_operator(&rotation(), 2.0)
        .unwrap()
        .apply(&[1.0, 0.0]);
    let error = |steps: usize| {
        let grid = TimeGrid::new(0.0, 2.0, steps).unwrap();
        let spec = EvolutionSpec::classical(&rotation(), e(2, &[1]), grid);
        let (_, a) = evolve_observable(&spec).unwrap().pop().unwrap();
        (&a - &Multivector::vector(&reference)).norm_inf()
    };
    let ratios: Vec<f64> = [10, 20, 40]
        .iter()
        .map(|&s| error(s) / error(2 * s))
        .collect();
    let pass = ratios.iter().all(|r| (r - 16.0).abs() <= 3.2);
    outcome(pass, format!("error ratios {ratios:.3?}"))
}

fn determinism_criterion() -> Outcome {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rotation.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_fermion"))
        .arg("evolve")
        .arg(fixtures.join("rotation.cfg"))
        .arg(&out)
        .status()
        .unwrap();
    let golden = std::fs::read(fixtures.join("rotation.csv")).unwrap();
    let produced = std::fs::read(&out).unwrap_or_default();
    outcome(
        status.success() && produced == golden,
        format!(
            "{} bytes, identical: {}",
            produced.len(),
            produced == golden
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("identity suite", identity_suite_criterion),
        ("oracle equivalence", oracle_criterion),
        ("wick consistency", wick_criterion),
        ("canonical property", canonical_criterion),
        ("evolution consistency", evolution_criterion),
        ("deformation limits", deformation_criterion),
        ("integrator order", integrator_criterion),
        ("determinism", determinism_criterion),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict} {name}: {}", k + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
