use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::finite::{FiniteSheaf, PresheafOnBasis};
use crate::algebra::FdAlgebra;
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::points::PointSet;
use crate::quiver::Rep;
use crate::spectrum::{FinSpectrum, FiniteSpace};
use crate::torsion::{cogenerated_class, restriction_map, LocalizedRing, TorsionClass};

/// The class whose localization is the value on the basic open `U`: it is
/// cogenerated by the points of `U`.
pub fn class_of_open(n: usize, u: PointSet) -> Result<TorsionClass> {
    TorsionClass::new(n, u)
}

/// A module `M` with `[M] = U`: the direct sum of the simples outside `U`.
pub fn open_witness(eng: &QuiverEngine, spec: &FinSpectrum, u: PointSet) -> Result<Rep> {
    let parts: Vec<&Rep> = (0..eng.n()).filter(|&j| !u.contains(j)).map(|j| eng.simple(j)).collect();
    let m = if parts.is_empty() { eng.zero_module() } else { Rep::direct_sum(&parts)? };
    let open = spec.basic_open(&m)?;
    if open != u {
        return Err(Error::invariant("basic open realizes U", format!("[M] = {}, wanted {}", open.label(), u.label())));
    }
    Ok(m)
}

/// The minimal opens of a finite space, the whole space and `∅`, closed
/// under intersection and sorted.
pub fn minimal_basis(space: &FiniteSpace) -> Vec<PointSet> {
    let mut basis: Vec<PointSet> = (0..space.n()).map(|x| space.minimal_open(x)).collect();
    basis.push(space.whole());
    basis.push(PointSet::EMPTY);
    loop {
        let before = basis.len();
        let items = basis.clone();
        for a in &items {
            for b in &items {
                let c = a.intersect(*b);
                if !basis.contains(&c) {
                    basis.push(c);
                }
            }
        }
        if basis.len() == before {
            break;
        }
    }
    basis.sort();
    basis
}

/// Basic opens `U` closed under intersection, each with the localized ring
/// `R_{T_U}` and restriction ring maps for inclusions.
#[derive(Clone, Debug)]
pub struct StructurePresheaf {
    pub presheaf: PresheafOnBasis,
    pub rings: Vec<Arc<LocalizedRing>>,
}

impl StructurePresheaf {
    pub fn new(eng: &QuiverEngine, spec: &FinSpectrum, basis: &[PointSet]) -> Result<Self> {
        let n = eng.n();
        let mut basis = basis.to_vec();
        basis.sort();
        basis.dedup();
        let mut rings = Vec::with_capacity(basis.len());
        for &u in &basis {
            open_witness(eng, spec, u)?;
            rings.push(eng.localized_ring(class_of_open(n, u)?)?);
        }
        let mut maps = BTreeMap::new();
        for (i, &u) in basis.iter().enumerate() {
            for (j, &v) in basis.iter().enumerate() {
                if i != j && v.is_subset_of(u) {
                    let r = restriction_map(eng, class_of_open(n, u)?, class_of_open(n, v)?)?;
                    maps.insert((i, j), r.ring_map);
                }
            }
        }
        let dims = rings.iter().map(|r| r.dim()).collect();
        let presheaf = PresheafOnBasis { field: eng.field(), n, basis, dims, maps };
        presheaf.check_intersection_closed()?;
        presheaf.check_functoriality()?;
        Ok(StructurePresheaf { presheaf, rings })
    }

    /// Every subset of the spectrum as a basic open.
    pub fn full(eng: &QuiverEngine, spec: &FinSpectrum) -> Result<Self> {
        eng.budget().check("basic opens", 1u128 << eng.n())?;
        let basis: Vec<PointSet> = PointSet::all_subsets(eng.n()).collect();
        StructurePresheaf::new(eng, spec, &basis)
    }

    /// The basis of [`minimal_basis`].
    pub fn minimal(eng: &QuiverEngine, spec: &FinSpectrum, space: &FiniteSpace) -> Result<Self> {
        StructurePresheaf::new(eng, spec, &minimal_basis(space))
    }

    pub fn ring_on(&self, u: PointSet) -> Option<&Arc<LocalizedRing>> {
        self.presheaf.index_of(u).map(|i| &self.rings[i])
    }
}

/// The sheafified structure sheaf with its stalk rings.
#[derive(Clone, Debug)]
pub struct StructureSheaf {
    pub sheaf: FiniteSheaf,
    pub stalks: Vec<Arc<LocalizedRing>>,
}

impl StructureSheaf {
    pub fn new(eng: &QuiverEngine, spec: &FinSpectrum) -> Result<(StructurePresheaf, Self)> {
        let space = spec.zariski(eng, &[])?;
        let pre = StructurePresheaf::minimal(eng, spec, &space)?;
        let sheaf = pre.presheaf.sheafify(&space)?;
        let stalks = (0..space.n())
            .map(|x| pre.ring_on(space.minimal_open(x)).cloned().expect("minimal opens are basic"))
            .collect();
        Ok((pre, StructureSheaf { sheaf, stalks }))
    }

    pub fn n(&self) -> usize {
        self.stalks.len()
    }

    /// `O(U)` as an algebra: the compatible families inside `∏_{x ∈ U} R_x`.
    pub fn sections_algebra(&self, u: PointSet) -> Result<FdAlgebra> {
        let field = self.sheaf.field();
        let parts: Vec<&FdAlgebra> = u.iter().map(|x| &self.stalks[x].algebra).collect();
        let product = FdAlgebra::product(field, &parts)?;
        let sections: Subspace = self.sheaf.sections(u)?;
        if sections.dim() == 0 {
            return Ok(FdAlgebra::zero(field));
        }
        sections_subalgebra(&product, &sections)
    }

    /// The stalk at `E` is `R_{F(E)}`: its class is cogenerated by `E`.
    pub fn check_stalks(&self, eng: &QuiverEngine, spec: &FinSpectrum) -> Result<()> {
        for (x, p) in spec.points.iter().enumerate() {
            let f = cogenerated_class(eng, &p.module)?;
            let direct = eng.localized_ring(f)?;
            if self.stalks[x].class != f || direct.dim() != self.stalks[x].dim() {
                return Err(Error::invariant("stalk at E is R_F(E)", format!("point {}", x + 1)));
            }
        }
        self.sheaf.check_stalks()
    }
}

fn sections_subalgebra(product: &FdAlgebra, sections: &Subspace) -> Result<FdAlgebra> {
    product.subalgebra(sections, product.one())
}

/// Block structure of an algebra, as reported for global sections.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub block_dims: Vec<usize>,
    /// Per block: semisimple, and has an idempotent other than 0 and 1.
    pub blocks: Vec<BlockSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub dim: usize,
    pub semisimple: bool,
    pub nontrivial_idempotent: bool,
}

pub fn summarize_algebra(alg: &FdAlgebra, budget: crate::Budget) -> Result<AlgebraSummary> {
    let mut blocks = Vec::new();
    if alg.dim() > 0 {
        for e in alg.primitive_central_idempotents(budget)? {
            let b = alg.corner(&e)?;
            blocks.push(BlockSummary {
                dim: b.dim(),
                semisimple: b.is_semisimple(budget)?,
                nontrivial_idempotent: b.has_nontrivial_idempotent(budget)?,
            });
        }
    }
    blocks.sort_by_key(|b| b.dim);
    Ok(AlgebraSummary { dim: alg.dim(), block_dims: blocks.iter().map(|b| b.dim).collect(), blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::injective_spectrum;
    use crate::Budget;

    #[test]
    fn a2_global_sections() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let spec = injective_spectrum(&eng).unwrap();
        let (pre, o) = StructureSheaf::new(&eng, &spec).unwrap();
        assert_eq!(pre.ring_on(PointSet::full(2)).unwrap().dim(), 3);
        let gamma = o.sections_algebra(PointSet::full(2)).unwrap();
        let s = summarize_algebra(&gamma, Budget::default()).unwrap();
        assert_eq!(s.dim, 5);
        assert_eq!(s.block_dims, vec![1, 4]);
        assert!(s.blocks[1].semisimple && s.blocks[1].nontrivial_idempotent);
        assert_eq!(o.sections_algebra(PointSet::singleton(1)).unwrap().dim(), 4);
        assert_eq!(o.sections_algebra(PointSet::EMPTY).unwrap().dim(), 0);
        o.check_stalks(&eng, &spec).unwrap();
        let full = StructurePresheaf::full(&eng, &spec).unwrap();
        assert_eq!(full.presheaf.dims.iter().sum::<usize>(), 3 + 1 + 4);
    }
}
