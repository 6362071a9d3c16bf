use super::{is_torsion, is_torsionfree, torsion_submodule, TorsionClass};
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::quiver::{MapSystem, Rep, RepMap, Subrep};

/// `i_T Q_T(A)` computed by the pullback formula, with every intermediate.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    pub class: TorsionClass,
    pub source: Rep,
    /// `τ(A)`.
    pub torsion: Subrep,
    /// `A' = A / τ(A)` and the projection `A → A'`.
    pub reduced: Rep,
    pub proj: RepMap,
    /// `E(A')` and the hull embedding `A' → E(A')`.
    pub hull: Rep,
    pub emb: RepMap,
    /// `Â = π⁻¹(τ(E/A'))` as a subrepresentation of the hull, as a module, and its inclusion.
    pub local_sub: Subrep,
    pub local: Rep,
    pub incl: RepMap,
    /// The unit `A → Â`.
    pub unit: RepMap,
}

pub fn localize_module(eng: &QuiverEngine, a: &Rep, t: TorsionClass) -> Result<LocalizedModule> {
    let torsion = torsion_submodule(eng, a, t)?;
    let (reduced, proj) = a.quotient(&torsion);
    let (hull, emb) = eng.hull(&reduced)?;
    let (cok, pi) = hull.quotient(&emb.image(&hull));
    let local_sub = torsion_submodule(eng, &cok, t)?.preimage_under(&pi);
    let (local, incl) = hull.restrict_to(&local_sub);
    let reduced_in_local = emb
        .corestrict(&local_sub)
        .ok_or_else(|| Error::invariant("A' ⊆ Â", "hull image escapes the pullback"))?;
    let unit = reduced_in_local.compose(&proj);

    let (over, _) = local.quotient(&reduced_in_local.image(&local));
    if !is_torsion(eng, &over, t)? {
        return Err(Error::invariant("Â/A' torsion", format!("dims {:?}", over.dims())));
    }
    let (outside, _) = hull.quotient(&local_sub);
    if !is_torsionfree(eng, &outside, t)? {
        return Err(Error::invariant("E(A')/Â torsionfree", format!("dims {:?}", outside.dims())));
    }
    if unit.kernel(a) != torsion {
        return Err(Error::invariant("ker(unit) = τ(A)", format!("kernel dims {:?}", unit.kernel(a).dims())));
    }
    Ok(LocalizedModule { class: t, source: a.clone(), torsion, reduced, proj, hull, emb, local_sub, local, incl, unit })
}

/// The map `Â → B̂` induced by `f: A → B`, via an extension `E(A') → E(B')`.
/// Every extension is checked to agree on `Â`.
pub fn localize_map(f: &RepMap, la: &LocalizedModule, lb: &LocalizedModule) -> Result<RepMap> {
    let comps = (0..la.source.dims().len())
        .map(|v| {
            let lift = la.torsion.space(v).quotient_lift();
            lb.proj.comp(v).mul(f.comp(v)).mul(&lift)
        })
        .collect();
    let g = RepMap::new(&la.reduced, &lb.reduced, comps)
        .map_err(|e| Error::invariant("induced map A' → B'", e.to_string()))?;
    if g.compose(&la.proj) != lb.proj.compose(f) {
        return Err(Error::invariant("f(τA) ⊆ τB", "induced map is not well defined"));
    }
    let mut sys = MapSystem::new(&la.hull, &lb.hull)?;
    sys.require_precomposite(&la.emb, &lb.emb.compose(&g));
    let ext = sys
        .solve()
        .ok_or_else(|| Error::invariant("hull extension", "no extension E(A') → E(B') exists"))?;
    for d in sys.homogeneous_basis() {
        if !d.compose(&la.incl).is_zero() {
            return Err(Error::invariant("extension independence", "two extensions differ on Â"));
        }
    }
    ext.compose(&la.incl)
        .corestrict(&lb.local_sub)
        .ok_or_else(|| Error::invariant("image ⊆ B̂", "localized map escapes B̂"))
}
