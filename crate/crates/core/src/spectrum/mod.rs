//! Injective spectra with their Zariski and Ziegler topologies.

mod finite;
mod pid;
mod space;

pub use finite::{generic_point_in, injective_spectrum, FinSpectrum, GenericPoint, SpectrumPoint};
pub use pid::{poly_family, PidFamilySpaces, PidPoint, PidSpectrum, SymbolicClosedSet};
pub use space::{FiniteSpace, TopologyReport};
