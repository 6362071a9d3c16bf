use serde::Serialize;

use super::{is_torsion, tensor_unit_kernel, theta, torsion_submodule, TorsionClass};
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::quiver::{all_submodules, Rep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectnessReport {
    pub cogen: Vec<usize>,
    pub modules_tested: usize,
    /// `θ_{M,T}` is an isomorphism for every battery module.
    pub theta_iso: bool,
    /// `ker(M → M ⊗ R_T) = τ(M)` for every battery module.
    pub unit_kernel_is_torsion: bool,
    /// `G_T = {I : ρ(I) R_T = R_T}`; `None` when right ideals could not be enumerated.
    pub gabriel_filter_matches: Option<bool>,
    pub notices: Vec<String>,
    pub failures: Vec<String>,
}

impl PerfectnessReport {
    pub fn passed(&self) -> bool {
        self.theta_iso && self.unit_kernel_is_torsion && self.gabriel_filter_matches != Some(false)
    }
}

pub fn perfectness_report(eng: &QuiverEngine, t: TorsionClass, battery: &[Rep]) -> Result<PerfectnessReport> {
    let mut rep = PerfectnessReport {
        cogen: t.cogen().iter().map(|i| i + 1).collect(),
        modules_tested: battery.len(),
        theta_iso: true,
        unit_kernel_is_torsion: true,
        gabriel_filter_matches: None,
        notices: Vec::new(),
        failures: Vec::new(),
    };
    for (idx, m) in battery.iter().enumerate() {
        let th = theta(eng, m, t)?;
        if !th.is_iso {
            rep.theta_iso = false;
            rep.failures.push(format!("θ not iso on battery module {idx} (dims {:?})", m.dims()));
        }
        let k = tensor_unit_kernel(eng, m, &th.tensor)?;
        if k != torsion_submodule(eng, m, t)?.flatten() {
            rep.unit_kernel_is_torsion = false;
            rep.failures.push(format!("unit kernel ≠ τ on battery module {idx} (dims {:?})", m.dims()));
        }
    }
    match gabriel_epi_check(eng, t) {
        Ok(ok) => {
            if !ok {
                rep.failures.push("G_T differs from {I : ρ(I)R_T = R_T}".into());
            }
            rep.gabriel_filter_matches = Some(ok);
        }
        Err(Error::BudgetExceeded { what, needed, budget }) => {
            rep.notices.push(format!("condition (7) skipped: {what} needs {needed}, budget {budget}"));
        }
        Err(e) => return Err(e),
    }
    Ok(rep)
}

/// Compares `G_T = {I : R/I ∈ T}` with `{I : ρ(I) R_T = R_T}` over all right ideals.
fn gabriel_epi_check(eng: &QuiverEngine, t: TorsionClass) -> Result<bool> {
    let r = eng.regular();
    let ring = eng.localized_ring(t)?;
    let alg_t = &ring.algebra;
    let d = ring.dim();
    for ideal in all_submodules(r, eng.budget())? {
        let (quot, _) = r.quotient(&ideal);
        let in_filter = is_torsion(eng, &quot, t)?;
        let gens = ideal.flatten();
        let span = Subspace::span(
            eng.field(),
            d,
            gens.basis()
                .iter()
                .flat_map(|x| (0..d).map(move |b| (x, b)))
                .map(|(x, b)| alg_t.mul(&ring.rho(x), &alg_t.basis_element(b))),
        );
        if in_filter != (span.dim() == d) {
            return Ok(false);
        }
    }
    Ok(true)
}
