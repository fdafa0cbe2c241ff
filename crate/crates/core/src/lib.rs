//! Exact computations with differential graded Lie algebras and
//! L∞-algebras carrying invariant forms: Maurer–Cartan equations, gauge
//! flows, tangent complexes of Hamiltonian reductions, and the L∞ and BRST
//! structures attached to polynomial Hamiltonian actions.
//!
//! Every algebraic type is generic over a [`Scalar`]. Axiom checks use the
//! exact [`Rational`] instantiation; flows and the Newton solver use `f64`.

pub mod catalog;
pub mod dgla;
pub mod error;
pub mod flow;
pub mod graded;
pub mod hamiltonian;
pub mod linfty;
pub mod maurer_cartan;
pub mod reduction;
pub mod report;

pub use error::{Error, Result};
pub use graded::{
    FloatScalar, GradedSpace, GradedVector, GradingKind, Matrix, Parity, Rational, Scalar, StructureTensor,
    Symmetry,
};
pub use report::{CheckOutcome, ValidationReport};

pub type ExactDgla = dgla::DglAlgebra<Rational>;
pub type FloatDgla = dgla::DglAlgebra<f64>;
pub type ExactLInfty = linfty::LInftyAlgebra<Rational>;
pub type FloatLInfty = linfty::LInftyAlgebra<f64>;
pub type ExactVector = GradedVector<Rational>;
pub type FloatVector = GradedVector<f64>;
pub type ExactMatrix = Matrix<Rational>;
