use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::finite::{FiniteSheaf, PresheafOnBasis};
use super::structure::{class_of_open, minimal_basis, StructureSheaf};
use crate::algebra::FdModule;
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::quiver::{hom_basis, Rep, RepMap};
use crate::spectrum::FiniteSpace;
use crate::torsion::{
    module_restriction, perfectness_report, restriction_map, sections_map, tensor_map, tensor_with_localized_ring,
    theta, LocalizedRing, ModuleSections, TensorModule, TorsionClass,
};

/// A sheaf whose stalk at `x` is a right module over the stalk ring `R_x`,
/// with stalk maps semilinear over the ring restrictions.
#[derive(Clone, Debug)]
pub struct ModuleSheaf {
    pub sheaf: FiniteSheaf,
    pub rings: Vec<Arc<LocalizedRing>>,
    pub modules: Vec<FdModule>,
}

impl ModuleSheaf {
    pub fn new(o: &StructureSheaf, sheaf: FiniteSheaf, modules: Vec<FdModule>) -> Result<Self> {
        let out = ModuleSheaf { sheaf, rings: o.stalks.clone(), modules };
        for (x, m) in out.modules.iter().enumerate() {
            if m.dim() != out.sheaf.stalk_dim(x) {
                return Err(Error::Shape(format!("stalk {} has dim {} but module dim {}", x + 1, out.sheaf.stalk_dim(x), m.dim())));
            }
        }
        let n = out.rings.len();
        for y in 0..n {
            for x in 0..n {
                if let (Some(map), Some(rho)) = (out.sheaf.map(y, x), o.sheaf.map(y, x)) {
                    for (b, act_y) in out.modules[y].action().iter().enumerate() {
                        let act_x = out.modules[x].act_matrix(&out.rings[x].algebra, &rho.column(b));
                        if map.mul(act_y) != act_x.mul(map) {
                            return Err(Error::invariant("stalk maps are semilinear", format!("{} → {}", y + 1, x + 1)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The structure sheaf as a module over itself.
    pub fn structure(o: &StructureSheaf) -> Result<Self> {
        let modules = o.stalks.iter().map(|r| FdModule::regular(&r.algebra)).collect();
        ModuleSheaf::new(o, o.sheaf.clone(), modules)
    }

    pub fn n(&self) -> usize {
        self.rings.len()
    }

    /// Right multiplication by `r ∈ R` on `⊕_x N_x`, through the units `R → R_x`.
    fn action_on_ambient(&self, r: &[u32]) -> Mat {
        let parts: Vec<Mat> = (0..self.n())
            .map(|x| self.modules[x].act_matrix(&self.rings[x].algebra, &self.rings[x].rho(r)))
            .collect();
        Mat::direct_sum(self.sheaf.field(), &parts.iter().collect::<Vec<_>>())
    }
}

/// A presheaf of modules on the minimal basis, with its values.
#[derive(Clone, Debug)]
pub struct ModulePresheaf<V> {
    pub presheaf: PresheafOnBasis,
    pub values: Vec<V>,
}

fn build_presheaf<V>(
    eng: &QuiverEngine,
    space: &FiniteSpace,
    value: impl Fn(TorsionClass) -> Result<V>,
    dim: impl Fn(&V) -> usize,
    restrict: impl Fn(&V, &V, TorsionClass, TorsionClass) -> Result<Mat>,
) -> Result<ModulePresheaf<V>> {
    let n = eng.n();
    let basis = minimal_basis(space);
    let values = basis.iter().map(|&u| value(class_of_open(n, u)?)).collect::<Result<Vec<_>>>()?;
    let mut maps = BTreeMap::new();
    for (i, &u) in basis.iter().enumerate() {
        for (j, &v) in basis.iter().enumerate() {
            if i != j && v.is_subset_of(u) {
                maps.insert((i, j), restrict(&values[i], &values[j], class_of_open(n, u)?, class_of_open(n, v)?)?);
            }
        }
    }
    let dims = values.iter().map(&dim).collect();
    let presheaf = PresheafOnBasis { field: eng.field(), n: space.n(), basis, dims, maps };
    presheaf.check_intersection_closed()?;
    presheaf.check_functoriality()?;
    Ok(ModulePresheaf { presheaf, values })
}

/// `M ⊗ R_S → M ⊗ R_T` from the ring restriction, applied to each coordinate
/// of `R_S^K`; checked semilinear.
pub fn tensor_restriction(ts: &TensorModule, tt: &TensorModule, rho: &Mat) -> Result<Mat> {
    let f = rho.field();
    let ds = ts.ring.dim();
    let cols: Vec<Vec<u32>> = (0..ts.dim())
        .map(|q| {
            let y: Vec<u32> = ts.quotient.lift(q).chunks(ds).flat_map(|c| rho.mul_vec(c)).collect();
            tt.class_of(&y)
        })
        .collect();
    let res = Mat::from_columns(f, tt.dim(), &cols);
    for (b, act_s) in ts.action.action().iter().enumerate() {
        let act_t = tt.action.act_matrix(&tt.ring.algebra, &rho.column(b));
        if res.mul(act_s) != act_t.mul(&res) {
            return Err(Error::invariant("tensor restriction is semilinear", format!("basis element {b}")));
        }
    }
    Ok(res)
}

fn stalk_index(pre: &PresheafOnBasis, space: &FiniteSpace) -> Vec<usize> {
    (0..space.n()).map(|x| pre.index_of(space.minimal_open(x)).expect("minimal opens are basic")).collect()
}

/// `U ↦ M ⊗_R O(U)` on the basis, sheafified, with its stalk tensor modules.
#[derive(Clone, Debug)]
pub struct TensorSheaf {
    pub presheaf: ModulePresheaf<TensorModule>,
    pub sheaf: ModuleSheaf,
    pub stalks: Vec<TensorModule>,
}

pub fn tensor_sheaf(eng: &QuiverEngine, o: &StructureSheaf, m: &Rep) -> Result<TensorSheaf> {
    let space = o.sheaf.space();
    let presheaf = build_presheaf(
        eng,
        space,
        |t| tensor_with_localized_ring(eng, m, t),
        |v| v.dim(),
        |a, b, s, t| tensor_restriction(a, b, &restriction_map(eng, s, t)?.ring_map),
    )?;
    let sheaf = presheaf.presheaf.sheafify(space)?;
    let stalks: Vec<TensorModule> = stalk_index(&presheaf.presheaf, space).into_iter().map(|i| presheaf.values[i].clone()).collect();
    let modules = stalks.iter().map(|s| s.action.clone()).collect();
    let sheaf = ModuleSheaf::new(o, sheaf, modules)?;
    Ok(TensorSheaf { presheaf, sheaf, stalks })
}

/// `U ↦ M_{T_U}` on the basis, sheafified, with its stalk section modules.
#[derive(Clone, Debug)]
pub struct TorsionSheaf {
    pub presheaf: ModulePresheaf<ModuleSections>,
    pub sheaf: ModuleSheaf,
    pub stalks: Vec<ModuleSections>,
}

pub fn torsion_sheaf(eng: &QuiverEngine, o: &StructureSheaf, m: &Rep) -> Result<TorsionSheaf> {
    let space = o.sheaf.space();
    let presheaf = build_presheaf(
        eng,
        space,
        |t| ModuleSections::compute(eng, m, t),
        |v| v.dim(),
        |_, _, s, t| module_restriction(eng, m, s, t),
    )?;
    let sheaf = presheaf.presheaf.sheafify(space)?;
    let stalks: Vec<ModuleSections> = stalk_index(&presheaf.presheaf, space).into_iter().map(|i| presheaf.values[i].clone()).collect();
    let modules = stalks.iter().map(|s| s.action.clone()).collect();
    let sheaf = ModuleSheaf::new(o, sheaf, modules)?;
    Ok(TorsionSheaf { presheaf, sheaf, stalks })
}

/// `Θ: M ⊗ O → M_(-)` on stalks.
#[derive(Clone, Debug)]
pub struct ThetaSheaf {
    pub components: Vec<Mat>,
    pub stalk_iso: Vec<bool>,
    pub is_iso: bool,
    /// `Θ` commutes with every stalk map.
    pub is_morphism: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaSummary {
    pub tensor_stalk_dims: Vec<usize>,
    pub torsion_stalk_dims: Vec<usize>,
    pub stalk_iso: Vec<bool>,
    pub is_iso: bool,
    pub is_morphism: bool,
}

pub fn theta_sheaf(eng: &QuiverEngine, o: &StructureSheaf, m: &Rep) -> Result<(TensorSheaf, TorsionSheaf, ThetaSheaf)> {
    let ten = tensor_sheaf(eng, o, m)?;
    let tor = torsion_sheaf(eng, o, m)?;
    let space = o.sheaf.space();
    let mut components = Vec::with_capacity(space.n());
    let mut stalk_iso = Vec::with_capacity(space.n());
    for x in 0..space.n() {
        let th = theta(eng, m, ten.stalks[x].ring.class)?;
        if th.tensor.dim() != ten.stalks[x].dim() || th.sections.dim() != tor.stalks[x].dim() {
            return Err(Error::invariant("θ stalks match the sheaves", format!("point {}", x + 1)));
        }
        stalk_iso.push(th.is_iso);
        components.push(th.matrix);
    }
    let mut is_morphism = true;
    for y in 0..space.n() {
        for x in 0..space.n() {
            if let (Some(a), Some(b)) = (ten.sheaf.sheaf.map(y, x), tor.sheaf.sheaf.map(y, x)) {
                is_morphism &= components[x].mul(a) == b.mul(&components[y]);
            }
        }
    }
    let is_iso = stalk_iso.iter().all(|&b| b);
    Ok((ten, tor, ThetaSheaf { components, stalk_iso, is_iso, is_morphism }))
}

impl ThetaSheaf {
    pub fn summary(&self, ten: &TensorSheaf, tor: &TorsionSheaf) -> ThetaSummary {
        ThetaSummary {
            tensor_stalk_dims: ten.sheaf.sheaf.stalk_dims().to_vec(),
            torsion_stalk_dims: tor.sheaf.sheaf.stalk_dims().to_vec(),
            stalk_iso: self.stalk_iso.clone(),
            is_iso: self.is_iso,
            is_morphism: self.is_morphism,
        }
    }
}

/// `Θ_N ∘ (f ⊗ O) = f_(-) ∘ Θ_M` at every stalk.
pub fn theta_naturality(eng: &QuiverEngine, o: &StructureSheaf, m: &Rep, n: &Rep, f: &RepMap) -> Result<bool> {
    for ring in &o.stalks {
        let t = ring.class;
        let tm = theta(eng, m, t)?;
        let tn = theta(eng, n, t)?;
        let f_ten = tensor_map(eng, &tm.tensor, &tn.tensor, f)?;
        let f_sec = sections_map(&tm.sections, &tn.sections, f)?;
        if tn.matrix.mul(&f_ten) != f_sec.mul(&tm.matrix) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasicoherenceReport {
    pub generators: usize,
    pub relations_dim: usize,
    pub perfect: bool,
    /// Per stalk: `K_x → P_x → M_x → 0` is exact.
    pub exact: Vec<bool>,
}

impl QuasicoherenceReport {
    pub fn passed(&self) -> bool {
        self.perfect && self.exact.iter().all(|&b| b)
    }
}

/// Applies the torsion sheaf functor to `0 → K → P → M → 0` with `P`
/// projective and checks exactness on every stalk.
pub fn quasicoherence_check(eng: &QuiverEngine, o: &StructureSheaf, m: &Rep) -> Result<QuasicoherenceReport> {
    let pres = crate::torsion::Presentation::new(eng.algebra(), m)?;
    let kernel = pres.pi.kernel(&pres.p0);
    let (k, incl) = pres.p0.restrict_to(&kernel);
    let battery = [m.clone(), pres.p0.clone(), k.clone()];
    let mut perfect = true;
    let mut exact = Vec::with_capacity(o.n());
    for ring in &o.stalks {
        let t = ring.class;
        perfect &= perfectness_report(eng, t, &battery)?.passed();
        let ks = ModuleSections::compute(eng, &k, t)?;
        let ps = ModuleSections::compute(eng, &pres.p0, t)?;
        let ms = ModuleSections::compute(eng, m, t)?;
        let a = sections_map(&ks, &ps, &incl)?;
        let b = sections_map(&ps, &ms, &pres.pi)?;
        let ok = b.mul(&a).is_zero()
            && b.rank() == ms.dim()
            && a.rank() == ks.dim()
            && ps.dim() - b.rank() == a.rank();
        exact.push(ok);
    }
    Ok(QuasicoherenceReport { generators: pres.gens.len(), relations_dim: k.total_dim(), perfect, exact })
}

/// `Γ(N)` as a right `R`-module, through the units `R → R_x`.
#[derive(Clone, Debug)]
pub struct GlobalSectionsRep {
    pub rep: Rep,
    /// `Γ(N) e_v` inside `⊕_x N_x`.
    pub pieces: Vec<Subspace>,
}

impl GlobalSectionsRep {
    pub fn to_ambient(&self, v: usize, coords: &[u32]) -> Vec<u32> {
        self.pieces[v].combine(coords)
    }
}

pub fn global_sections_rep(eng: &QuiverEngine, n: &ModuleSheaf) -> Result<GlobalSectionsRep> {
    let alg = eng.algebra();
    let whole = n.sheaf.space().whole();
    let gamma = n.sheaf.sections(whole)?;
    for x in 0..n.n() {
        if !n.sheaf.offsets(whole).contains_key(&x) {
            return Err(Error::invariant("stalk offsets cover the space", format!("point {}", x + 1)));
        }
    }
    let mut pieces = Vec::with_capacity(eng.n());
    for v in 0..eng.n() {
        let act = n.action_on_ambient(&alg.idempotent(v));
        pieces.push(gamma.image_under(&act));
    }
    let q = eng.quiver();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (ai, a) in q.arrows().iter().enumerate() {
        let p = alg
            .paths()
            .find(a.source, &[ai])
            .ok_or_else(|| Error::invariant("arrows are paths", a.name.clone()))?;
        let act = n.action_on_ambient(&alg.basis_element(p));
        let cols = pieces[a.source]
            .basis()
            .iter()
            .map(|b| {
                pieces[a.target]
                    .coords(&act.mul_vec(b))
                    .ok_or_else(|| Error::invariant("Γ(N) is an R-module", format!("arrow {}", a.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(Mat::from_columns(eng.field(), pieces[a.target].dim(), &cols));
    }
    let dims = pieces.iter().map(|s| s.dim()).collect();
    let rep = Rep::new(eng.field(), q.clone(), dims, maps)?;
    if rep.total_dim() != gamma.dim() {
        return Err(Error::invariant("Γ(N) = ⊕ Γ(N) e_v", format!("{} vs {}", rep.total_dim(), gamma.dim())));
    }
    Ok(GlobalSectionsRep { rep, pieces })
}

/// Families `(φ_x: A_x → B_x)` of `R_x`-linear maps commuting with the stalk maps.
pub fn sheaf_hom_basis(a: &ModuleSheaf, b: &ModuleSheaf) -> Vec<Vec<Mat>> {
    let f = a.sheaf.field();
    let n = a.n();
    let shape: Vec<(usize, usize)> = (0..n).map(|x| (b.modules[x].dim(), a.modules[x].dim())).collect();
    let mut off = Vec::with_capacity(n);
    let mut unknowns = 0;
    for &(r, c) in &shape {
        off.push(unknowns);
        unknowns += r * c;
    }
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |x: usize, i: usize, j: usize| off[x] + i * shape[x].1 + j;
    let mut rows = Vec::new();
    for x in 0..n {
        let (r, c) = shape[x];
        for (pa, pb) in a.modules[x].action().iter().zip(b.modules[x].action()) {
            for i in 0..r {
                for j in 0..c {
                    let mut row = vec![0u32; unknowns];
                    for k in 0..c {
                        row[var(x, i, k)] = f.add(row[var(x, i, k)], pa.get(k, j));
                    }
                    for k in 0..r {
                        row[var(x, k, j)] = f.sub(row[var(x, k, j)], pb.get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
    }
    for y in 0..n {
        for x in 0..n {
            let (Some(p), Some(q)) = (a.sheaf.map(y, x), b.sheaf.map(y, x)) else { continue };
            for i in 0..shape[x].0 {
                for j in 0..shape[y].1 {
                    let mut row = vec![0u32; unknowns];
                    for k in 0..shape[x].1 {
                        row[var(x, i, k)] = f.add(row[var(x, i, k)], p.get(k, j));
                    }
                    for k in 0..shape[y].0 {
                        row[var(y, k, j)] = f.sub(row[var(y, k, j)], q.get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
    }
    Mat::from_row_vectors(f, unknowns, &rows)
        .kernel_basis()
        .into_iter()
        .map(|v| (0..n).map(|x| Mat::from_fn(f, shape[x].0, shape[x].1, |i, j| v[var(x, i, j)])).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub sheaf_side_dim: usize,
    pub module_side_dim: usize,
    pub global_sections_dim: usize,
    /// `Ψ(Φ(φ)) = φ` on the sheaf-side basis.
    pub psi_phi_identity: bool,
    /// `Φ(Ψ(g)) = g` on the module-side basis.
    pub phi_psi_identity: bool,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.sheaf_side_dim == self.module_side_dim && self.psi_phi_identity && self.phi_psi_identity
    }
}

/// `Φ(φ)(m) = (φ_x(m ⊗ 1))_x ∈ Γ(N)`.
fn phi(eng: &QuiverEngine, m: &Rep, ten: &TensorSheaf, gamma: &GlobalSectionsRep, fam: &[Mat]) -> Result<RepMap> {
    let alg = eng.algebra();
    let mut comps = Vec::with_capacity(eng.n());
    for v in 0..eng.n() {
        let mut cols = Vec::with_capacity(m.dim(v));
        for e in 0..m.dim(v) {
            let mut basis = vec![0; m.dim(v)];
            basis[e] = 1;
            let mut amb = Vec::new();
            for (x, st) in ten.stalks.iter().enumerate() {
                amb.extend(fam[x].mul_vec(&st.unit_image(alg, v, &basis)?));
            }
            let c = gamma.pieces[v]
                .coords(&amb)
                .ok_or_else(|| Error::invariant("Φ lands in Γ(N)", format!("vertex {}", v + 1)))?;
            cols.push(c);
        }
        comps.push(Mat::from_columns(eng.field(), gamma.rep.dim(v), &cols));
    }
    RepMap::new(m, &gamma.rep, comps)
}

/// `Ψ(g)_x(m ⊗ r) = g(m)_x · r`.
fn psi(eng: &QuiverEngine, ten: &TensorSheaf, n: &ModuleSheaf, gamma: &GlobalSectionsRep, g: &RepMap) -> Result<Vec<Mat>> {
    let f = eng.field();
    let whole = n.sheaf.space().whole();
    let offsets = n.sheaf.offsets(whole);
    let images: Vec<Vec<u32>> = ten.stalks[0]
        .presentation
        .gens
        .iter()
        .map(|(i, gk)| gamma.to_ambient(*i, &g.comp(*i).mul_vec(gk)))
        .collect();
    let mut out = Vec::with_capacity(n.n());
    for (x, st) in ten.stalks.iter().enumerate() {
        let d = st.ring.dim();
        let nx = n.modules[x].dim();
        let cols: Vec<Vec<u32>> = (0..st.dim())
            .map(|q| {
                let mut acc = vec![0; nx];
                for (k, rk) in st.quotient.lift(q).chunks(d).enumerate() {
                    let chunk = &images[k][offsets[&x]..offsets[&x] + nx];
                    let moved = n.modules[x].act_matrix(&n.rings[x].algebra, rk).mul_vec(chunk);
                    acc = crate::linalg::vec_add(f, &acc, &moved);
                }
                acc
            })
            .collect();
        out.push(Mat::from_columns(f, nx, &cols));
    }
    Ok(out)
}

/// `Hom(M ⊗ O, N) ≅ Hom_R(M, Γ(N))`, both sides solved as linear systems
/// and the two mutually inverse maps checked on bases.
pub fn adjunction_check(eng: &QuiverEngine, o: &StructureSheaf, m: &Rep, n: &ModuleSheaf) -> Result<AdjunctionReport> {
    let ten = tensor_sheaf(eng, o, m)?;
    let gamma = global_sections_rep(eng, n)?;
    let sheaf_side = sheaf_hom_basis(&ten.sheaf, n);
    let module_side = hom_basis(m, &gamma.rep)?;
    let mut psi_phi_identity = true;
    for fam in &sheaf_side {
        let g = phi(eng, m, &ten, &gamma, fam)?;
        psi_phi_identity &= psi(eng, &ten, n, &gamma, &g)? == *fam;
    }
    let mut phi_psi_identity = true;
    for g in &module_side {
        let fam = psi(eng, &ten, n, &gamma, g)?;
        let is_map = sheaf_hom_basis_contains(&ten.sheaf, n, &fam);
        phi_psi_identity &= is_map && phi(eng, m, &ten, &gamma, &fam)? == *g;
    }
    Ok(AdjunctionReport {
        sheaf_side_dim: sheaf_side.len(),
        module_side_dim: module_side.len(),
        global_sections_dim: gamma.rep.total_dim(),
        psi_phi_identity,
        phi_psi_identity,
    })
}

fn sheaf_hom_basis_contains(a: &ModuleSheaf, b: &ModuleSheaf, fam: &[Mat]) -> bool {
    let linear = (0..a.n()).all(|x| a.modules[x].is_hom(&b.modules[x], &fam[x]));
    let compatible = (0..a.n()).all(|y| {
        (0..a.n()).all(|x| match (a.sheaf.map(y, x), b.sheaf.map(y, x)) {
            (Some(p), Some(q)) => fam[x].mul(p) == q.mul(&fam[y]),
            _ => true,
        })
    });
    linear && compatible
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::injective_spectrum;

    fn setup() -> (QuiverEngine, StructureSheaf) {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let spec = injective_spectrum(&eng).unwrap();
        let (_, o) = StructureSheaf::new(&eng, &spec).unwrap();
        (eng, o)
    }

    #[test]
    fn theta_on_simples() {
        let (eng, o) = setup();
        let (ten, tor, th) = theta_sheaf(&eng, &o, eng.simple(1)).unwrap();
        assert_eq!(ten.sheaf.sheaf.stalk_dims(), &[0, 2]);
        assert_eq!(tor.sheaf.sheaf.stalk_dims(), &[0, 2]);
        assert!(th.is_iso && th.is_morphism);
        let (ten, _, th) = theta_sheaf(&eng, &o, eng.simple(0)).unwrap();
        assert_eq!(ten.sheaf.sheaf.stalk_dims(), &[1, 0]);
        assert!(th.is_iso);
    }

    #[test]
    fn adjunction_for_regular() {
        let (eng, o) = setup();
        let n = ModuleSheaf::structure(&o).unwrap();
        let rep = adjunction_check(&eng, &o, eng.regular(), &n).unwrap();
        assert_eq!(rep.global_sections_dim, 5);
        assert_eq!(rep.sheaf_side_dim, 5);
        assert!(rep.passed(), "{rep:?}");
        let zero = adjunction_check(&eng, &o, &eng.zero_module(), &n).unwrap();
        assert_eq!((zero.sheaf_side_dim, zero.module_side_dim), (0, 0));
    }

    #[test]
    fn quasicoherent_simples() {
        let (eng, o) = setup();
        for m in [eng.simple(0), eng.simple(1), eng.regular()] {
            assert!(quasicoherence_check(&eng, &o, m).unwrap().passed());
        }
    }
}
