//! Exact torsion-theoretic and sheaf-theoretic computations on two decidable
//! ring engines: path algebras of finite acyclic quivers over GF(p), and the
//! principal ideal domains GF(p)[x] and the integers.

pub mod budget;
pub mod engine;
pub mod error;
pub mod algebra;
pub mod lattice;
pub mod linalg;
pub mod pid;
pub mod points;
pub mod quiver;
pub mod sheaf;
pub mod sigma;
pub mod spectrum;
pub mod torsion;

pub use budget::Budget;
pub use error::{Error, Result};
