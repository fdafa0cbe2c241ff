//! Graded linear algebra: scalars, graded spaces, Koszul signs, structure
//! tensors and exact elimination.

pub mod complex;
pub mod koszul;
pub mod linalg;
pub mod scalar;
pub mod space;
pub mod tensor;

pub use complex::{cohomology, ChainComplex, Cohomology};
pub use koszul::{koszul_sign, permutation_sign};
pub use linalg::{rank_kernel, Matrix, RankKernel};
pub use scalar::{format_rational, parse_rational, rationalize, FloatScalar, Rational, Scalar};
pub use space::{Component, GradedSpace, GradedVector, GradingKind, Parity};
pub use tensor::{apply_tensor, StructureTensor, Symmetry};
