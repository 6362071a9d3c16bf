//! The subcategory `σ[M]` of modules subgenerated by `M`, and its injective
//! spectrum as the basic closed set `(M)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::points::PointSet;
use crate::quiver::{all_submodules, hom_basis, MapSystem, Rep, RepMap, Subrep};
use crate::spectrum::FinSpectrum;

fn image_sum(b: &Rep, maps: &[RepMap]) -> Subrep {
    maps.iter().fold(b.zero_sub(), |acc, f| acc.sum(&f.image(b)))
}

/// `tr(A, B) = Σ_{f: A → B} f(A)`, checked idempotent.
pub fn trace(a: &Rep, b: &Rep) -> Result<Subrep> {
    let t = image_sum(b, &hom_basis(a, b)?);
    let (tm, incl) = b.restrict_to(&t);
    let again = image_sum(&tm, &hom_basis(a, &tm)?).image_under(&incl);
    if again != t {
        return Err(Error::invariant("tr(A, tr(A, B)) = tr(A, B)", format!("dims {:?} vs {:?}", again.dims(), t.dims())));
    }
    Ok(t)
}

/// `tr(A, B)` as a module.
pub fn trace_module(a: &Rep, b: &Rep) -> Result<Rep> {
    Ok(b.restrict_to(&trace(a, b)?).0)
}

/// Every map from a submodule of `M` to `X` extends to `M`.
pub fn is_m_injective(x: &Rep, m: &Rep, budget: Budget) -> Result<bool> {
    for n in all_submodules(m, budget)? {
        let (nm, incl) = m.restrict_to(&n);
        for f in hom_basis(&nm, x)? {
            let mut sys = MapSystem::new(m, x)?;
            sys.require_precomposite(&incl, &f);
            if sys.solve().is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Equal dimension vectors and a bijective map between them, by search over
/// the hom space.
pub fn is_isomorphic(a: &Rep, b: &Rep, budget: Budget) -> Result<bool> {
    if a.dims() != b.dims() {
        return Ok(false);
    }
    if a.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(a, b)?;
    if basis.iter().any(|f| f.is_iso()) {
        return Ok(true);
    }
    let f = a.field();
    budget.check("isomorphism search", f.space_size(basis.len()))?;
    for c in f.all_vectors(basis.len()) {
        let g = basis.iter().zip(&c).fold(RepMap::zero(a, b), |acc, (h, &ci)| acc.add(&h.scale(ci)));
        if g.is_iso() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `ann(M)`, a two-sided ideal, as a subspace of `R` in path coordinates.
pub fn annihilator_ideal(eng: &QuiverEngine, m: &Rep) -> Subspace {
    let alg = eng.algebra();
    let f = eng.field();
    let d = m.total_dim();
    let cols: Vec<Vec<u32>> = (0..alg.dim())
        .map(|p| {
            let r = alg.basis_element(p);
            (0..d)
                .flat_map(|i| {
                    let mut x = vec![0; d];
                    x[i] = 1;
                    alg.act(m, &x, &r)
                })
                .collect()
        })
        .collect();
    Subspace::span(f, alg.dim(), Mat::from_columns(f, d * d, &cols).kernel_basis())
}

/// `N ∈ σ[M]`: since `R/ann(M)` embeds in `M^{dim M}`, `σ[M]` is the category
/// of modules killed by `ann(M)`.
pub fn in_sigma(eng: &QuiverEngine, m: &Rep, n: &Rep) -> bool {
    let ann = annihilator_ideal(eng, m);
    let d = n.total_dim();
    ann.basis().iter().all(|r| {
        (0..d).all(|i| {
            let mut x = vec![0; d];
            x[i] = 1;
            eng.algebra().act(n, &x, r).iter().all(|&c| c == 0)
        })
    })
}

/// Whether `N` embeds in a quotient of `M^k`, by search over the submodules
/// of `M^k`.
pub fn embeds_in_quotient_of_power(n: &Rep, m: &Rep, k: usize, budget: Budget) -> Result<bool> {
    let p = m.power(k)?;
    for x in all_submodules(&p, budget)? {
        let (q, _) = p.quotient(&x);
        if q.total_dim() < n.total_dim() || n.dims().iter().zip(q.dims()).any(|(a, b)| a > b) {
            continue;
        }
        if has_injective_hom(n, &q, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn has_injective_hom(a: &Rep, b: &Rep, budget: Budget) -> Result<bool> {
    if a.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(a, b)?;
    let f = a.field();
    budget.check("monomorphism search", f.space_size(basis.len()))?;
    for c in f.all_vectors(basis.len()) {
        let g = basis.iter().zip(&c).fold(RepMap::zero(a, b), |acc, (h, &ci)| acc.add(&h.scale(ci)));
        if g.is_injective() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `j(F) = E_R(F)`.
pub fn j_map(eng: &QuiverEngine, f: &Rep) -> Result<Rep> {
    Ok(eng.hull(f)?.0)
}

/// `j⁻¹(E) = tr(M, E)` for `E ∈ (M)`: nonzero, simple socle, `M`-injective,
/// and `E_R(tr(M, E)) ≅ E`.
pub fn j_inverse(eng: &QuiverEngine, m: &Rep, e: &Rep) -> Result<Rep> {
    if hom_basis(m, e)?.is_empty() {
        return Err(Error::Precondition("j⁻¹ needs (M, E) ≠ 0".into()));
    }
    let f = trace_module(m, e)?;
    if f.socle().total_dim() != 1 {
        return Err(Error::invariant("tr(M, E) has simple socle", format!("socle dims {:?}", f.socle().dims())));
    }
    if !is_m_injective(&f, m, eng.budget())? {
        return Err(Error::invariant("tr(M, E) is M-injective", format!("dims {:?}", f.dims())));
    }
    if !is_isomorphic(&j_map(eng, &f)?, e, eng.budget())? {
        return Err(Error::invariant("E_R(tr(M, E)) ≅ E", format!("dims {:?}", f.dims())));
    }
    Ok(f)
}

/// `E_M(N) = tr(M, E_R(N))`: `M`-injective and an essential extension of `N`.
pub fn sigma_hull(eng: &QuiverEngine, m: &Rep, n: &Rep) -> Result<Rep> {
    let (e, emb) = eng.hull(n)?;
    let t = trace(m, &e)?;
    let image = emb.image(&e);
    if !t.contains(&image) {
        return Err(Error::invariant("N ⊆ tr(M, E_R(N))", format!("dims {:?}", n.dims())));
    }
    let (tm, incl) = e.restrict_to(&t);
    if !image.contains(&tm.socle().image_under(&incl)) {
        return Err(Error::invariant("N essential in tr(M, E_R(N))", format!("dims {:?}", n.dims())));
    }
    if !is_m_injective(&tm, m, eng.budget())? {
        return Err(Error::invariant("tr(M, E_R(N)) is M-injective", format!("dims {:?}", n.dims())));
    }
    Ok(tm)
}

/// Submodules and quotients of `M^k` for `k ≤ k_max`, deduplicated.
pub fn sigma_battery(m: &Rep, k_max: usize, budget: Budget) -> Result<Vec<Rep>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in 1..=k_max {
        let p = m.power(k)?;
        for x in all_submodules(&p, budget)? {
            for r in [p.restrict_to(&x).0, p.quotient(&x).0] {
                if seen.insert(r.clone()) {
                    budget.check("σ battery", out.len() as u128 + 1)?;
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaPoint {
    /// 0-based index of `j(F)` in the spectrum.
    pub point: usize,
    pub dims: Vec<usize>,
    #[serde(skip)]
    pub module: Rep,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    /// `(M)`, 0-based.
    pub closed: PointSet,
    pub points: Vec<SigmaPoint>,
    /// `j ∘ j⁻¹ = id` and `j⁻¹ ∘ j = id` up to isomorphism.
    pub roundtrips: bool,
    pub battery: usize,
    pub pairs_checked: usize,
    /// `(N, F) = 0 ⟺ (N, E_R(F)) = 0` on every battery module and point.
    pub hom_vanishing_equivalence: bool,
    /// `j([N]_M) = [N]_R ∩ (M)` on every battery module.
    pub subspace_topology: bool,
    /// `E_M(N) = tr(M, E_R(N))` on every battery module.
    pub sigma_hulls: bool,
    /// Finite discrete spaces are spectral, so the homeomorphism needs no
    /// further hypothesis.
    pub spectral_automatic: bool,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.roundtrips && self.hom_vanishing_equivalence && self.subspace_topology && self.sigma_hulls
    }
}

pub fn sigma_spectrum(eng: &QuiverEngine, spec: &FinSpectrum, m: &Rep, k_max: usize) -> Result<SigmaReport> {
    let budget = eng.budget();
    let closed = spec.basic_closed(m)?;
    let mut points: Vec<SigmaPoint> = Vec::new();
    let mut roundtrips = true;
    for x in closed.iter() {
        let e = &spec.points[x].module;
        let f = j_inverse(eng, m, e)?;
        for p in &points {
            if is_isomorphic(&p.module, &f, budget)? {
                return Err(Error::invariant("j⁻¹ is injective", format!("points {} and {}", p.point + 1, x + 1)));
            }
        }
        let back = j_map(eng, &f)?;
        roundtrips &= is_isomorphic(&back, e, budget)?;
        roundtrips &= is_isomorphic(&trace_module(m, &back)?, &f, budget)?;
        points.push(SigmaPoint { point: x, dims: f.dims().to_vec(), module: f });
    }
    let battery = sigma_battery(m, k_max, budget)?;
    let mut pairs_checked = 0;
    let mut hom_vanishing_equivalence = true;
    let mut subspace_topology = true;
    let mut sigma_hulls = true;
    let full_open = |n: &Rep| spec.basic_open(n);
    for n in &battery {
        if !in_sigma(eng, m, n) {
            return Err(Error::invariant("battery lies in σ[M]", format!("dims {:?}", n.dims())));
        }
        let mut open_m = PointSet::EMPTY;
        for p in &points {
            pairs_checked += 1;
            let to_f = hom_basis(n, &p.module)?.is_empty();
            let to_e = hom_basis(n, &spec.points[p.point].module)?.is_empty();
            hom_vanishing_equivalence &= to_f == to_e;
            if to_f {
                open_m.insert(p.point);
            }
        }
        subspace_topology &= open_m == full_open(n)?.intersect(closed);
        if !n.is_zero() {
            match sigma_hull(eng, m, n) {
                Ok(_) => {}
                Err(Error::Invariant { .. }) => sigma_hulls = false,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(SigmaReport {
        closed,
        points,
        roundtrips,
        battery: battery.len(),
        pairs_checked,
        hom_vanishing_equivalence,
        subspace_topology,
        sigma_hulls,
        spectral_automatic: true,
    })
}

/// `G_M` truncated to the direct sum of the distinct submodules of `M^k`, `k ≤ k_max`.
pub fn generator_surrogate(m: &Rep, k_max: usize, budget: Budget) -> Result<Rep> {
    let mut seen = HashSet::new();
    let mut parts = Vec::new();
    for k in 1..=k_max {
        let p = m.power(k)?;
        for x in all_submodules(&p, budget)? {
            let r = p.restrict_to(&x).0;
            if !r.is_zero() && seen.insert(r.clone()) {
                parts.push(r);
            }
        }
    }
    if parts.is_empty() {
        return Ok(m.clone());
    }
    Rep::direct_sum(&parts.iter().collect::<Vec<_>>())
}

/// `tr(M, E) = tr(G_M, E)` for each `E`, with the surrogate generator.
pub fn trace_generator_check(m: &Rep, points: &[&Rep], k_max: usize, budget: Budget) -> Result<bool> {
    let g = generator_surrogate(m, k_max, budget)?;
    for e in points {
        if trace(m, e)? != trace(&g, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::injective_spectrum;

    #[test]
    fn traces_over_a2() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let (s1, s2) = (eng.simple(0), eng.simple(1));
        let e2 = eng.injective(1);
        assert_eq!(trace(s2, e2).unwrap().dims(), vec![0, 1]);
        assert!(trace(s1, e2).unwrap().is_zero());
        assert!(trace(e2, e2).unwrap().is_full());
    }

    #[test]
    fn m_injectivity() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let p1 = eng.projective(0).unwrap();
        assert!(!is_m_injective(eng.simple(1), &p1, eng.budget()).unwrap());
        assert!(is_m_injective(eng.simple(0), &p1, eng.budget()).unwrap());
        assert!(is_m_injective(eng.injective(0), &p1, eng.budget()).unwrap());
        assert!(!is_m_injective(eng.simple(1), eng.regular(), eng.budget()).unwrap());
    }

    #[test]
    fn sigma_of_p1() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let spec = injective_spectrum(&eng).unwrap();
        let p1 = eng.projective(0).unwrap();
        let rep = sigma_spectrum(&eng, &spec, &p1, 2).unwrap();
        assert_eq!(rep.closed, PointSet::full(2));
        assert_eq!(rep.points.len(), 2);
        assert!(rep.passed(), "{rep:?}");
        let rep = sigma_spectrum(&eng, &spec, eng.simple(0), 3).unwrap();
        assert_eq!(rep.closed, PointSet::singleton(0));
        assert_eq!(rep.points[0].dims, vec![1, 0]);
        assert!(rep.passed(), "{rep:?}");
        assert!(trace_generator_check(&p1, &[eng.injective(0), eng.injective(1)], 2, eng.budget()).unwrap());
    }

    #[test]
    fn sigma_membership_agrees_with_search() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let s1 = eng.simple(0).clone();
        for n in [eng.simple(0), eng.simple(1), eng.injective(1)] {
            assert_eq!(in_sigma(&eng, &s1, n), embeds_in_quotient_of_power(n, &s1, 2, eng.budget()).unwrap());
        }
    }
}
