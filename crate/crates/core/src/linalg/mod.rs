//! Exact arithmetic over prime fields: scalars, dense matrices, subspaces and
//! univariate polynomials.

mod field;
mod mat;
mod poly;

pub use field::Field;
pub use mat::{is_zero_vec, unit_vector, vec_add, vec_axpy, vec_scale, vec_sub, Mat, QuotientSpace, Subspace};
pub use poly::{is_irreducible, poly_factor, Factorization, Poly};
