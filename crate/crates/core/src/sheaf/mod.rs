//! Sheaves on finite spectra and on PID spectra.

mod finite;
mod modules;
mod pid;
mod structure;

pub use finite::{FiniteSheaf, OpenSummary, PresheafOnBasis, SheafSummary};
pub use modules::{
    adjunction_check, global_sections_rep, quasicoherence_check, sheaf_hom_basis, tensor_restriction, tensor_sheaf,
    theta_naturality, theta_sheaf, torsion_sheaf, AdjunctionReport, GlobalSectionsRep, ModulePresheaf, ModuleSheaf,
    QuasicoherenceReport, TensorSheaf, ThetaSheaf, ThetaSummary, TorsionSheaf,
};
pub use pid::{
    basic_open_comparison, divides_power, global_sections_domain_check, in_stalk, BasicOpenComparison, GlobalSectionVerdict,
    PidOpen, PidSectionRing,
};
pub use structure::{
    class_of_open, minimal_basis, open_witness, summarize_algebra, AlgebraSummary, BlockSummary, StructurePresheaf, StructureSheaf,
};
