use super::{localize_map, localize_module, LocalizedModule, TorsionClass};
use crate::algebra::{FdAlgebra, FdModule};
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::quiver::{HomSpace, PathAlgebra, Rep, RepMap};

/// `R_T = End(R̂)` in the basis of [`HomSpace`], with product `x·y = x ∘ y`,
/// and the unit ring map `R → R_T`, `r ↦ (λ_r)^`.
#[derive(Clone, Debug)]
pub struct LocalizedRing {
    pub class: TorsionClass,
    pub module: LocalizedModule,
    pub endo: HomSpace,
    pub algebra: FdAlgebra,
    /// Columns are the images of the path basis of `R`.
    pub unit_map: Mat,
}

impl LocalizedRing {
    pub(crate) fn compute(eng: &QuiverEngine, t: TorsionClass) -> Result<Self> {
        let f = eng.field();
        let module = localize_module(eng, eng.regular(), t)?;
        let endo = HomSpace::new(&module.local, &module.local)?;
        let d = endo.dim();
        let algebra = if d == 0 {
            FdAlgebra::zero(f)
        } else {
            let mut table = Vec::with_capacity(d);
            for x in endo.basis() {
                let row = endo.basis().iter().map(|y| endo.coords(&x.compose(y))).collect::<Result<Vec<_>>>()?;
                table.push(row);
            }
            let one = endo.coords(&RepMap::identity(&module.local))?;
            FdAlgebra::new(f, table, one)?
        };
        let alg = eng.algebra();
        let mut cols = Vec::with_capacity(alg.dim());
        for p in 0..alg.dim() {
            let lambda = alg.left_mult(eng.regular(), &alg.basis_element(p))?;
            cols.push(endo.coords(&localize_map(&lambda, &module, &module)?)?);
        }
        let unit_map = Mat::from_columns(f, d, &cols);
        if !path_algebra_structure(alg)?.is_ring_map_to(&algebra, &unit_map) {
            return Err(Error::invariant("R → R_T ring map", format!("at cogen {}", t.cogen().label())));
        }
        Ok(LocalizedRing { class: t, module, endo, algebra, unit_map })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `ρ(r)` for an element of `R` in path coordinates.
    pub fn rho(&self, r: &[u32]) -> Vec<u32> {
        self.unit_map.mul_vec(r)
    }

    /// The endomorphism of `R̂` with the given coordinates.
    pub fn element(&self, x: &[u32]) -> RepMap {
        self.endo.combine(x)
    }
}

/// kQ as an [`FdAlgebra`] on the path basis.
pub fn path_algebra_structure(alg: &PathAlgebra) -> Result<FdAlgebra> {
    let n = alg.dim();
    let table = (0..n)
        .map(|i| (0..n).map(|j| alg.mul(&alg.basis_element(i), &alg.basis_element(j))).collect())
        .collect();
    FdAlgebra::new(alg.field(), table, alg.one())
}

/// `M_T = (R̂, M̂)` as a right `R_T`-module under precomposition.
#[derive(Clone, Debug)]
pub struct ModuleSections {
    pub class: TorsionClass,
    pub module: LocalizedModule,
    pub hom: HomSpace,
    pub action: FdModule,
}

impl ModuleSections {
    pub fn compute(eng: &QuiverEngine, m: &Rep, t: TorsionClass) -> Result<Self> {
        let ring = eng.localized_ring(t)?;
        let module = localize_module(eng, m, t)?;
        let hom = HomSpace::new(&ring.module.local, &module.local)?;
        let mut action = Vec::with_capacity(ring.dim());
        for y in ring.endo.basis() {
            let cols = hom.basis().iter().map(|mu| hom.coords(&mu.compose(y))).collect::<Result<Vec<_>>>()?;
            action.push(Mat::from_columns(eng.field(), hom.dim(), &cols));
        }
        let action = FdModule::new(&ring.algebra, hom.dim(), action)?;
        Ok(ModuleSections { class: t, module, hom, action })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    /// `Q(g): R̂ → M̂` for a map `g: R → M`, in the hom basis.
    pub fn coords_of_localized(&self, ring: &LocalizedRing, g: &RepMap) -> Result<Vec<u32>> {
        let gl = localize_map(g, &ring.module, &self.module)?;
        self.hom.coords(&gl)
    }
}

/// The restriction `ρ_{S,T}: R_S → R_T` for `S ⊆ T` as classes.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub source: TorsionClass,
    pub target: TorsionClass,
    /// Columns are the images of the basis of `R_S`.
    pub ring_map: Mat,
}

/// Data shared by ring and module restrictions: `(R̂_S)_T` and the iso
/// `w: R̂_T → (R̂_S)_T` induced by the unit `R → R̂_S`.
struct Transport {
    twice: LocalizedModule,
    w: RepMap,
    w_inv: RepMap,
}

fn transport(eng: &QuiverEngine, m_s: &LocalizedModule, m_t: &LocalizedModule, t: TorsionClass) -> Result<Transport> {
    let twice = localize_module(eng, &m_s.local, t)?;
    let w = localize_map(&m_s.unit, m_t, &twice)?;
    let w_inv = w
        .inverse()
        .ok_or_else(|| Error::invariant("(η_S)_T iso", "localizing the S-unit at T is not invertible"))?;
    Ok(Transport { twice, w, w_inv })
}

fn check_order(s: TorsionClass, t: TorsionClass) -> Result<()> {
    if !s.is_subclass_of(&t) {
        return Err(Error::Precondition(format!(
            "restriction needs T ⊇ S: cogen {} must lie inside {}",
            t.cogen().label(),
            s.cogen().label()
        )));
    }
    Ok(())
}

pub fn restriction_map(eng: &QuiverEngine, s: TorsionClass, t: TorsionClass) -> Result<Restriction> {
    check_order(s, t)?;
    let rs = eng.localized_ring(s)?;
    let rt = eng.localized_ring(t)?;
    let tr = transport(eng, &rs.module, &rt.module, t)?;
    let mut cols = Vec::with_capacity(rs.dim());
    for phi in rs.endo.basis() {
        let phi_t = localize_map(phi, &tr.twice, &tr.twice)?;
        cols.push(rt.endo.coords(&tr.w_inv.compose(&phi_t).compose(&tr.w))?);
    }
    let ring_map = Mat::from_columns(eng.field(), rt.dim(), &cols);
    if !rs.algebra.is_ring_map_to(&rt.algebra, &ring_map) {
        return Err(Error::invariant("restriction is a ring map", format!("{} → {}", s.cogen().label(), t.cogen().label())));
    }
    if ring_map.mul(&rs.unit_map) != rt.unit_map {
        return Err(Error::invariant("restriction commutes with units", format!("{} → {}", s.cogen().label(), t.cogen().label())));
    }
    Ok(Restriction { source: s, target: t, ring_map })
}

/// `res: M_S → M_T` as a matrix in the hom bases; checked `R_S`-linear over `ρ_{S,T}`.
pub fn module_restriction(eng: &QuiverEngine, m: &Rep, s: TorsionClass, t: TorsionClass) -> Result<Mat> {
    let rho = restriction_map(eng, s, t)?;
    let rs = eng.localized_ring(s)?;
    let rt = eng.localized_ring(t)?;
    let ms = ModuleSections::compute(eng, m, s)?;
    let mt = ModuleSections::compute(eng, m, t)?;
    let ring_tr = transport(eng, &rs.module, &rt.module, t)?;
    let mod_tr = transport(eng, &ms.module, &mt.module, t)?;
    let mut cols = Vec::with_capacity(ms.dim());
    for mu in ms.hom.basis() {
        let mu_t = localize_map(mu, &ring_tr.twice, &mod_tr.twice)?;
        cols.push(mt.hom.coords(&mod_tr.w_inv.compose(&mu_t).compose(&ring_tr.w))?);
    }
    let res = Mat::from_columns(eng.field(), mt.dim(), &cols);
    for (i, act_s) in ms.action.action().iter().enumerate() {
        let image = rho.ring_map.column(i);
        let act_t = mt.action.act_matrix(&rt.algebra, &image);
        if res.mul(act_s) != act_t.mul(&res) {
            return Err(Error::invariant("res is ρ-semilinear", format!("fails on basis element {i} of R_S")));
        }
    }
    Ok(res)
}
