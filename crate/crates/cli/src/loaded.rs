use std::path::Path;

use injspec_core::engine::QuiverEngine;
use injspec_core::pid::{Integers, PidModule, PolyRing};
use injspec_core::Budget;

use crate::error::CliError;
use crate::format::{budget_from_env, EngineKind, RingSpec};

/// An engine built from a ring file.
#[derive(Debug)]
pub enum Loaded {
    Quiver(Box<QuiverEngine>),
    Poly { ring: PolyRing, max_degree: usize, budget: Budget },
    Int { ring: Integers, max_modulus: u64, budget: Budget },
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl Loaded {
    pub fn from_spec(spec: &RingSpec, budget: Budget) -> Result<Self, CliError> {
        Ok(match &spec.engine {
            EngineKind::Quiver { .. } => {
                Loaded::Quiver(Box::new(QuiverEngine::new(spec.field()?, spec.quiver()?, budget).map_err(|e| CliError::Input(e.to_string()))?))
            }
            EngineKind::Poly { max_degree } => Loaded::Poly { ring: PolyRing::new(spec.field()?), max_degree: *max_degree, budget },
            EngineKind::Int { max_modulus, trial_bound } => {
                Loaded::Int { ring: Integers::new(*trial_bound), max_modulus: *max_modulus, budget }
            }
        })
    }

    /// Reads a ring file, with the budget taken from the environment.
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = read_file(path)?;
        let spec = RingSpec::parse(&text).map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            e => e,
        })?;
        Loaded::from_spec(&spec, budget_from_env()?)
    }
}

/// `ℤ` and `ℤ/(m)` for `2 ≤ m ≤ max_modulus`.
pub fn int_family(max_modulus: u64) -> Vec<PidModule<i128>> {
    let mut out = vec![PidModule::free(1)];
    out.extend((2..=max_modulus as i128).map(|m| PidModule { free_rank: 0, torsion: vec![m] }));
    out
}
