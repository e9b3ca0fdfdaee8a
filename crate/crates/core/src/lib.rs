//! Exterior and Clifford algebra over a real orthogonal phase space.
//!
//! Observables are elements of the exterior algebra Λ(Φ), stored as sparse
//! maps from basis blades to real coefficients. The classical structure is the
//! wedge product together with the Casalbuoni bracket; the quantum structure is
//! the Clifford product, obtained by rescaling the inner product by ħ and
//! summing Wick contractions.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, random suites
//! and the command line live in `fermion-cli`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod blade;
pub mod clifford;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod maps;
pub mod metric;
pub mod multivector;
pub mod oracle;

pub use algebra::{
    apply_orthogonal, bracket, dagger, derivative, distinguished_functionals, epsilon,
    extended_inner, generator_from_two_form, two_form_from_generator, wedge,
};
pub use blade::{Blade, MAX_DIM};
pub use clifford::{
    clifford_commutator, clifford_product, deformation_derivative, wick_product,
    DeformationParameter,
};
pub use dynamics::{
    evolution_operator, evolve_observable, evolve_phase, noether_drift, noether_drift_with_steps,
    EvolutionSpec, Hamiltonian, Mode, RateConvention, TimeGrid,
};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use maps::{Generator, LinearMap, OrthogonalMap};
pub use metric::Metric;
pub use multivector::Multivector;
