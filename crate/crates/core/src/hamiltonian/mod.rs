//! Polynomial Hamiltonian actions and the structures built from them.

pub mod brst;
pub mod build;
pub mod polynomial;
pub mod system;

pub use brst::{build_brst, check_brst_square_zero, default_cap, BrstAlgebra, BrstElement, BrstMonomial};
pub use build::{
    build_linfty, check_mc_equals_fiber, polarize, quadratic_specialization, Layout, Normalization,
    QuadraticSpecialization,
};
pub use polynomial::Polynomial;
pub use system::{
    moment_components, poisson_bracket, validate_hamiltonian_system, HamiltonianSystem, LieAlgebra, SymplecticSpace,
};
