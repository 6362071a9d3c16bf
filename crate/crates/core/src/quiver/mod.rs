//! The category mod-kQ for a finite acyclic quiver Q over GF(p).

pub mod enumerate;
pub mod hom;
pub mod hull;
pub mod path_algebra;
pub mod paths;
pub mod rep;
pub mod submodules;

pub use enumerate::{all_reps, dimension_vectors, reps_with_dims};
pub use hom::{hom_basis, hom_dim, HomSpace, MapSystem};
pub use hull::injective_hull;
pub use path_algebra::{PathAlgebra, StandardKind};
pub use paths::{Arrow, Path, PathBasis, Quiver};
pub use rep::{Rep, RepMap, Subrep};
pub use submodules::{all_submodules, cyclic_submodules, is_essential};
