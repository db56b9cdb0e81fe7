//! Exact computations for the tame Hecke algebra `A = KQ/I` and the family
//! `Λ(r,s)`: minimal bimodule resolutions, Hochschild cohomology and the Ext
//! algebra.

pub mod algebra;
pub mod ext;
pub mod field;
pub mod hochschild;
pub mod resolution;
pub mod sparse;

pub use algebra::{BoundAlgebra, Path, PathElement, Quiver};
pub use field::{Field, FieldScalar};
pub use sparse::{SparseMatrix, SparseVec};
