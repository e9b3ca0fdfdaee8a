//! Dynamical evolution.
//!
//! Phase-space vectors evolve by `dη/dt = Hη` with an anti-hermitian
//! generator H, so the evolution operator `exp(tH)` is orthogonal. Observables
//! evolve by a linear ODE on Λ(Φ):
//!
//! - classical: `dA/dt = ½{H, A}` with H read as a 2-form, which reproduces
//!   `dη/dt = Hη` on grade 1 and acts as a derivation on every grade;
//! - quantum: `dA/dt = ¼[H, A]` (Clifford commutator), where H may be any
//!   anti-hermitian element. For a 2-form H this runs at half the classical
//!   rate; [`RateConvention::ClassicalMatch`] doubles it.
//!
//! Observable evolution uses fixed-step classical Runge–Kutta on the blade
//! coefficients.

use alloc::vec::Vec;

use crate::algebra::{bracket, dagger, generator_from_two_form, two_form_from_generator};
use crate::clifford::{clifford_commutator, DeformationParameter};
use crate::linalg::Matrix;
use crate::maps::{Generator, LinearMap, OrthogonalMap, MAP_TOLERANCE};
use crate::metric::Metric;
use crate::multivector::Multivector;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RateConvention {
    /// `dA/dt = ¼[H, A]`; config keyword `paper`.
    #[default]
    Quarter,
    /// `dA/dt = ½[H, A]`, matching the classical rate for 2-form Hamiltonians.
    ClassicalMatch,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Hamiltonian {
    Generator(Generator),
    Element(Multivector),
}

/// Uniform grid `t0, t0 + dt, …, t1` with `steps` intervals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t1: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t1: f64, steps: usize) -> Result<Self> {
        if !(t0.is_finite() && t1.is_finite() && t1 > t0 && steps >= 1) {
            return Err(Error::InvalidTimeGrid);
        }
        Ok(TimeGrid { t0, t1, steps })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        (self.t1 - self.t0) / self.steps as f64
    }

    /// Time of grid point `k`; the last point is exactly `t1`.
    pub fn time(&self, k: usize) -> f64 {
        if k == self.steps {
            self.t1
        } else {
            self.t0 + k as f64 * self.dt()
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(|k| self.time(k))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionSpec {
    pub metric: Metric,
    pub hamiltonian: Hamiltonian,
    pub initial: Multivector,
    pub grid: TimeGrid,
    pub mode: Mode,
    pub rate: RateConvention,
    pub hbar: DeformationParameter,
    /// RK4 steps per grid interval in [`evolve_observable`].
    pub substeps: usize,
}

impl EvolutionSpec {
    pub fn new(
        metric: Metric,
        hamiltonian: Hamiltonian,
        initial: Multivector,
        grid: TimeGrid,
        mode: Mode,
    ) -> Self {
        EvolutionSpec {
            metric,
            hamiltonian,
            initial,
            grid,
            mode,
            rate: RateConvention::Quarter,
            hbar: DeformationParameter::ONE,
            substeps: 1,
        }
    }

    /// Classical evolution under a generator.
    pub fn classical(h: &Generator, initial: Multivector, grid: TimeGrid) -> Self {
        Self::new(
            h.metric().clone(),
            Hamiltonian::Generator(h.clone()),
            initial,
            grid,
            Mode::Classical,
        )
    }

    /// Quantum evolution under an arbitrary (anti-hermitian) element.
    pub fn quantum(metric: &Metric, h: Multivector, initial: Multivector, grid: TimeGrid) -> Self {
        Self::new(
            metric.clone(),
            Hamiltonian::Element(h),
            initial,
            grid,
            Mode::Quantum,
        )
    }

    pub fn with_rate(mut self, rate: RateConvention) -> Self {
        self.rate = rate;
        self
    }

    pub fn with_hbar(mut self, hbar: DeformationParameter) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn with_substeps(mut self, substeps: usize) -> Self {
        self.substeps = substeps;
        self
    }

    /// The Hamiltonian as a generator; classical mode only accepts 2-forms.
    fn classical_generator(&self) -> Result<Generator> {
        match &self.hamiltonian {
            Hamiltonian::Generator(g) => {
                if g.metric() != &self.metric {
                    return Err(Error::ModeMismatch(
                        "generator metric differs from the evolution metric",
                    ));
                }
                Ok(g.clone())
            }
            Hamiltonian::Element(h) => {
                self.metric.check_dim(h.dim())?;
                if h.terms().any(|(b, _)| b.grade() != 2) {
                    return Err(Error::ModeMismatch(
                        "classical Hamiltonians must be pure 2-forms",
                    ));
                }
                generator_from_two_form(h, &self.metric)
            }
        }
    }

    /// The Hamiltonian as a Clifford element, validated by `H† = −H`.
    fn quantum_element(&self) -> Result<Multivector> {
        let h = match &self.hamiltonian {
            Hamiltonian::Generator(g) => two_form_from_generator(g),
            Hamiltonian::Element(h) => h.clone(),
        };
        self.metric.check_dim(h.dim())?;
        let residual = (&dagger(&h) + &h).norm_inf();
        if residual > MAP_TOLERANCE {
            return Err(Error::NotAntiHermitian(residual));
        }
        Ok(h)
    }
}

/// `exp(tH)` as a canonical transformation.
pub fn evolution_operator(h: &Generator, t: f64) -> Result<OrthogonalMap> {
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    let u = h.matrix().scale(t).expm();
    OrthogonalMap::new(LinearMap::from_matrix(u)?, h.metric())
}

/// `η(t_k) = exp((t_k − t0)H) η0` on the grid.
pub fn evolve_phase(spec: &EvolutionSpec) -> Result<Vec<(f64, Vec<f64>)>> {
    if spec.mode != Mode::Classical {
        return Err(Error::ModeMismatch("phase-space evolution is classical"));
    }
    spec.metric.check_dim(spec.initial.dim())?;
    let eta0 = spec.initial.to_vector()?;
    let h = spec.classical_generator()?;
    let grid = spec.grid;
    let mut out = Vec::with_capacity(grid.steps() + 1);
    for t in grid.times() {
        let u = h.matrix().scale(t - grid.t0()).expm();
        out.push((t, u.apply(&eta0)));
    }
    Ok(out)
}

/// Integrates the observable equation of motion selected by `spec.mode`.
pub fn evolve_observable(spec: &EvolutionSpec) -> Result<Vec<(f64, Multivector)>> {
    spec.metric.check_dim(spec.initial.dim())?;
    let metric = &spec.metric;
    match spec.mode {
        Mode::Classical => {
            let form = two_form_from_generator(&spec.classical_generator()?);
            integrate(&spec.initial, spec.grid, spec.substeps, |a| {
                Ok(bracket(&form, a, metric)?.scale(0.5))
            })
        }
        Mode::Quantum => {
            let h = spec.quantum_element()?;
            let rate = match spec.rate {
                RateConvention::Quarter => 0.25,
                RateConvention::ClassicalMatch => 0.5,
            };
            let hbar = spec.hbar;
            integrate(&spec.initial, spec.grid, spec.substeps, |a| {
                Ok(clifford_commutator(&h, a, metric, hbar)?.scale(rate))
            })
        }
    }
}

fn integrate(
    initial: &Multivector,
    grid: TimeGrid,
    substeps: usize,
    rhs: impl Fn(&Multivector) -> Result<Multivector>,
) -> Result<Vec<(f64, Multivector)>> {
    if substeps == 0 {
        return Err(Error::InvalidTimeGrid);
    }
    let dt = grid.dt() / substeps as f64;
    let mut out = Vec::with_capacity(grid.steps() + 1);
    let mut a = initial.clone();
    out.push((grid.time(0), a.clone()));
    for k in 1..=grid.steps() {
        for _ in 0..substeps {
            let k1 = rhs(&a)?;
            let k2 = rhs(&a.add_scaled(&k1, 0.5 * dt))?;
            let k3 = rhs(&a.add_scaled(&k2, 0.5 * dt))?;
            let k4 = rhs(&a.add_scaled(&k3, dt))?;
            let incr = k1
                .add_scaled(&k2, 2.0)
                .add_scaled(&k3, 2.0)
                .add_scaled(&k4, 1.0);
            a = a.add_scaled(&incr, dt / 6.0);
        }
        out.push((grid.time(k), a.clone()));
    }
    Ok(out)
}

/// Default RK4 step count used by [`noether_drift`].
pub const NOETHER_STEPS: usize = 256;

/// Integrates `dG/dt = HG − GH` from `G(0) = G` to `t1` and returns the largest
/// `‖G(t) − G(0)‖∞` seen on the grid.
pub fn noether_drift(h: &Generator, g: &Generator, t1: f64) -> Result<f64> {
    noether_drift_with_steps(h, g, t1, NOETHER_STEPS)
}

pub fn noether_drift_with_steps(
    h: &Generator,
    g: &Generator,
    t1: f64,
    steps: usize,
) -> Result<f64> {
    if h.metric() != g.metric() {
        return Err(Error::DimMismatch(h.dim(), g.dim()));
    }
    if !t1.is_finite() || steps == 0 {
        return Err(Error::InvalidTimeGrid);
    }
    let hm = h.matrix();
    let rhs = |x: &Matrix| hm.mul(x).sub(&x.mul(hm));
    let dt = t1 / steps as f64;
    let g0 = g.matrix().clone();
    let mut cur = g0.clone();
    let mut drift: f64 = 0.0;
    for _ in 0..steps {
        let k1 = rhs(&cur);
        let k2 = rhs(&cur.add(&k1.scale(0.5 * dt)));
        let k3 = rhs(&cur.add(&k2.scale(0.5 * dt)));
        let k4 = rhs(&cur.add(&k3.scale(dt)));
        let incr = k1.add(&k2.scale(2.0)).add(&k3.scale(2.0)).add(&k4);
        cur = cur.add(&incr.scale(dt / 6.0));
        drift = drift.max(cur.sub(&g0).norm_max());
    }
    Ok(drift)
}
