//! Hereditary torsion theories on the path-algebra engine and localization.
//!
//! A torsion class is stored by its cogenerating point set `U`:
//! `T_U = {M : (M, E_i) = 0 for all i ∈ U}`, with torsionfree class
//! cogenerated by `{E_i : i ∈ U}`.

mod localize;
mod perfect;
mod ring;
mod tensor;

pub use localize::{localize_map, localize_module, LocalizedModule};
pub use perfect::{perfectness_report, PerfectnessReport};
pub use ring::{module_restriction, path_algebra_structure, restriction_map, LocalizedRing, ModuleSections, Restriction};
pub use tensor::{
    sections_map, tensor_map, tensor_unit_kernel, tensor_with_localized_ring, theta, Presentation, TensorModule, Theta,
};

use serde::Serialize;

use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::quiver::{hom_basis, Rep, Subrep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorsionClass {
    n: usize,
    cogen: PointSet,
}

impl TorsionClass {
    pub fn new(n: usize, cogen: PointSet) -> Result<Self> {
        if !cogen.is_subset_of(PointSet::full(n)) {
            return Err(Error::Precondition(format!("cogenerating set {} outside 1..={n}", cogen.label())));
        }
        Ok(TorsionClass { n, cogen })
    }

    /// From 1-based point ids.
    pub fn from_points(n: usize, points: &[usize]) -> Result<Self> {
        for &p in points {
            if p == 0 || p > n {
                return Err(Error::VertexOutOfRange { vertex: p, count: n });
            }
        }
        TorsionClass::new(n, PointSet::from_points(points.iter().map(|p| p - 1)))
    }

    /// The smallest class `{0}`: cogenerated by every point.
    pub fn zero(n: usize) -> Self {
        TorsionClass { n, cogen: PointSet::full(n) }
    }

    /// The improper class of all modules.
    pub fn everything(n: usize) -> Self {
        TorsionClass { n, cogen: PointSet::EMPTY }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn cogen(&self) -> PointSet {
        self.cogen
    }

    /// Inclusion of torsion classes: `T_U ⊆ T_V` iff `V ⊆ U`.
    pub fn is_subclass_of(&self, other: &TorsionClass) -> bool {
        other.cogen.is_subset_of(self.cogen)
    }

    pub fn meet(&self, other: &TorsionClass) -> TorsionClass {
        TorsionClass { n: self.n, cogen: self.cogen.union(other.cogen) }
    }

    pub fn join(&self, other: &TorsionClass) -> TorsionClass {
        TorsionClass { n: self.n, cogen: self.cogen.intersect(other.cogen) }
    }
}

/// `τ(M)`: the joint kernel of all maps `M → E_i`, `i ∈ U`.
pub fn torsion_submodule(eng: &QuiverEngine, m: &Rep, t: TorsionClass) -> Result<Subrep> {
    let mut tau = m.full_sub();
    for i in t.cogen().iter() {
        for f in hom_basis(m, eng.injective(i))? {
            tau = tau.intersect(&f.kernel(m));
        }
    }
    Ok(tau)
}

pub fn is_torsion(eng: &QuiverEngine, m: &Rep, t: TorsionClass) -> Result<bool> {
    for i in t.cogen().iter() {
        if !hom_basis(m, eng.injective(i))?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_torsionfree(eng: &QuiverEngine, m: &Rep, t: TorsionClass) -> Result<bool> {
    Ok(torsion_submodule(eng, m, t)?.is_zero())
}

/// The smallest torsion class containing `M`: cogenerated by the points `E`
/// with `(M, E) = 0`.
pub fn generated_class(eng: &QuiverEngine, m: &Rep) -> Result<TorsionClass> {
    let mut cogen = PointSet::EMPTY;
    for i in 0..eng.n() {
        if hom_basis(m, eng.injective(i))?.is_empty() {
            cogen.insert(i);
        }
    }
    TorsionClass::new(eng.n(), cogen)
}

/// The theory `(T, F(M))` whose torsionfree class is cogenerated by `M`. Its
/// cogenerating points are the `E_i ∈ F(M)`: those whose maps into `E(M)`
/// have zero joint kernel.
pub fn cogenerated_class(eng: &QuiverEngine, m: &Rep) -> Result<TorsionClass> {
    let (e, _) = eng.hull(m)?;
    let mut cogen = PointSet::EMPTY;
    for i in 0..eng.n() {
        let ei = eng.injective(i);
        let mut k = ei.full_sub();
        for f in hom_basis(ei, &e)? {
            k = k.intersect(&f.kernel(ei));
        }
        if k.is_zero() {
            cogen.insert(i);
        }
    }
    TorsionClass::new(eng.n(), cogen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{all_reps, RepMap};
    use crate::Budget;

    fn a2() -> QuiverEngine {
        QuiverEngine::linear(2, 2).unwrap()
    }

    #[test]
    fn a2_localizations() {
        let eng = a2();
        let at2 = TorsionClass::from_points(2, &[2]).unwrap();
        let at1 = TorsionClass::from_points(2, &[1]).unwrap();
        let l2 = localize_module(&eng, eng.regular(), at2).unwrap();
        assert_eq!(l2.local.dims(), &[2, 2]);
        assert_eq!(eng.localized_ring(at2).unwrap().dim(), 4);
        let l1 = localize_module(&eng, eng.regular(), at1).unwrap();
        assert_eq!(l1.local.dims(), &[1, 0]);
        assert_eq!(eng.localized_ring(at1).unwrap().dim(), 1);
        assert_eq!(eng.localized_ring(TorsionClass::zero(2)).unwrap().dim(), 3);
        assert_eq!(eng.localized_ring(TorsionClass::everything(2)).unwrap().dim(), 0);
    }

    #[test]
    fn torsion_parts_of_the_regular_module() {
        let eng = a2();
        let r = eng.regular();
        let at1 = TorsionClass::from_points(2, &[1]).unwrap();
        assert_eq!(torsion_submodule(&eng, r, at1).unwrap().dims(), vec![0, 2]);
        let at2 = TorsionClass::from_points(2, &[2]).unwrap();
        assert!(torsion_submodule(&eng, r, at2).unwrap().is_zero());
    }

    #[test]
    fn theta_is_iso_for_all_small_modules_over_a2() {
        let eng = a2();
        let mods = all_reps(eng.field(), eng.quiver(), 3, Budget::default()).unwrap();
        for cogen in 0..4u64 {
            let t = TorsionClass::new(2, PointSet(cogen)).unwrap();
            let report = perfectness_report(&eng, t, &mods).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.gabriel_filter_matches, Some(true));
        }
    }

    #[test]
    fn restrictions_compose() {
        let eng = QuiverEngine::linear(2, 3).unwrap();
        let s = TorsionClass::zero(3);
        let t = TorsionClass::from_points(3, &[2, 3]).unwrap();
        let l = TorsionClass::from_points(3, &[3]).unwrap();
        let st = restriction_map(&eng, s, t).unwrap();
        let tl = restriction_map(&eng, t, l).unwrap();
        let sl = restriction_map(&eng, s, l).unwrap();
        assert_eq!(tl.ring_map.mul(&st.ring_map), sl.ring_map);
        let id = restriction_map(&eng, t, t).unwrap();
        assert_eq!(id.ring_map, crate::linalg::Mat::identity(eng.field(), eng.localized_ring(t).unwrap().dim()));
        assert!(restriction_map(&eng, l, s).is_err());
        let m = eng.projective(0).unwrap();
        module_restriction(&eng, &m, s, t).unwrap();
    }

    #[test]
    fn localizing_identity_and_zero() {
        let eng = a2();
        let r = eng.regular();
        let t = TorsionClass::from_points(2, &[2]).unwrap();
        let l = localize_module(&eng, r, t).unwrap();
        assert_eq!(localize_map(&RepMap::identity(r), &l, &l).unwrap(), RepMap::identity(&l.local));
        assert!(localize_map(&RepMap::zero(r, r), &l, &l).unwrap().is_zero());
    }
}
