use serde::Serialize;

use super::space::{FiniteSpace, TopologyReport};
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::quiver::{hom_basis, Rep};
use crate::torsion::cogenerated_class;

/// The injective spectrum of kQ: one indecomposable injective per simple.
#[derive(Clone, Debug, Serialize)]
pub struct FinSpectrum {
    pub points: Vec<SpectrumPoint>,
    /// `hom_matrix[i][j] = ((S_i, E_j) ≠ 0)`.
    pub hom_matrix: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumPoint {
    /// 1-based id.
    pub id: usize,
    /// 1-based vertex of the simple socle.
    pub socle_vertex: usize,
    pub dims: Vec<usize>,
    #[serde(skip)]
    pub module: Rep,
}

pub fn injective_spectrum(eng: &QuiverEngine) -> Result<FinSpectrum> {
    let mut points = Vec::with_capacity(eng.n());
    for i in 0..eng.n() {
        let (e, _) = eng.hull(eng.simple(i))?;
        let soc = e.socle().dims();
        if soc.iter().sum::<usize>() != 1 || soc[i] != 1 {
            return Err(Error::invariant("points have simple socle", format!("E({}) has socle dims {soc:?}", i + 1)));
        }
        points.push(SpectrumPoint { id: i + 1, socle_vertex: i + 1, dims: e.dims().to_vec(), module: e });
    }
    let mut hom_matrix = vec![vec![false; eng.n()]; eng.n()];
    for (i, row) in hom_matrix.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = !hom_basis(eng.simple(i), &points[j].module)?.is_empty();
        }
    }
    Ok(FinSpectrum { points, hom_matrix })
}

impl FinSpectrum {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// `(S_i)`.
    pub fn simple_closed(&self, i: usize) -> PointSet {
        PointSet::from_points((0..self.n()).filter(|&j| self.hom_matrix[i][j]))
    }

    /// `(M)` as the union of `(S_i)` over the composition factors of `M`.
    pub fn basic_closed_by_factors(&self, m: &Rep) -> PointSet {
        m.support().into_iter().fold(PointSet::EMPTY, |acc, i| acc.union(self.simple_closed(i)))
    }

    /// `(M) = {E : (M, E) ≠ 0}`, computed from hom spaces and cross-checked
    /// against the composition-factor union.
    pub fn basic_closed(&self, m: &Rep) -> Result<PointSet> {
        let mut direct = PointSet::EMPTY;
        for (j, p) in self.points.iter().enumerate() {
            if !hom_basis(m, &p.module)?.is_empty() {
                direct.insert(j);
            }
        }
        let factors = self.basic_closed_by_factors(m);
        if direct != factors {
            return Err(Error::invariant(
                "(C) = (A) ∪ (B)",
                format!("hom gives {}, composition factors give {}", direct.label(), factors.label()),
            ));
        }
        Ok(direct)
    }

    /// `[M]`, the basic Zariski-open complement of `(M)`.
    pub fn basic_open(&self, m: &Rep) -> Result<PointSet> {
        Ok(self.basic_closed(m)?.complement(self.n()))
    }

    /// Zariski topology: the basic closed sets `(M)` over the simples and the
    /// given modules (every `(M)` is a union of the `(S_i)`).
    pub fn zariski(&self, eng: &QuiverEngine, extra: &[Rep]) -> Result<FiniteSpace> {
        FiniteSpace::from_closed_subbasis(self.n(), &self.closed_basis(extra)?, eng.budget())
    }

    /// Ziegler topology: the sets `(M)` as basic opens.
    pub fn ziegler(&self, eng: &QuiverEngine, extra: &[Rep]) -> Result<FiniteSpace> {
        FiniteSpace::from_open_subbasis(self.n(), &self.closed_basis(extra)?, eng.budget())
    }

    pub fn closed_basis(&self, extra: &[Rep]) -> Result<Vec<PointSet>> {
        let mut basis: Vec<PointSet> = (0..self.n()).map(|i| self.simple_closed(i)).collect();
        for m in extra {
            basis.push(self.basic_closed(m)?);
        }
        basis.sort();
        basis.dedup();
        Ok(basis)
    }

    /// Zariski specialization pairs `(x, y)` with `E_x ⤳ E_y`, checked
    /// against the torsionfree test `E_x ∈ F(E_y)`.
    pub fn specialization_order(&self, eng: &QuiverEngine) -> Result<Vec<(usize, usize)>> {
        let space = self.zariski(eng, &[])?;
        let pairs = space.specialization_pairs();
        for y in 0..self.n() {
            let fy = cogenerated_class(eng, &self.points[y].module)?;
            for x in 0..self.n() {
                if fy.cogen().contains(x) != pairs.contains(&(x, y)) {
                    return Err(Error::invariant(
                        "specialization ⟺ E ∈ F(F)",
                        format!("E{} vs E{}", x + 1, y + 1),
                    ));
                }
            }
        }
        Ok(pairs)
    }

    pub fn topology_report(&self, eng: &QuiverEngine) -> Result<TopologyReport> {
        let zar = self.zariski(eng, &[])?;
        let zie = self.ziegler(eng, &[])?;
        Ok(TopologyReport::from_spaces(&zar, &zie))
    }

    pub fn generic_point_of_basic_closed(&self, eng: &QuiverEngine, m: &Rep) -> Result<GenericPoint> {
        let c = self.basic_closed(m)?;
        generic_point_in(&self.zariski(eng, &[])?, c)
    }
}

/// Outcome of a generic-point search in a closed set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenericPoint {
    /// 0-based point whose closure is the set.
    Point { index: usize },
    NotIrreducible { closed: PointSet, split: Option<(PointSet, PointSet)> },
}

pub fn generic_point_in(space: &FiniteSpace, c: PointSet) -> Result<GenericPoint> {
    if !space.is_irreducible(c) {
        return Ok(GenericPoint::NotIrreducible { closed: c, split: space.decomposition(c) });
    }
    match space.generic_points(c).as_slice() {
        [x] => Ok(GenericPoint::Point { index: *x }),
        other => Err(Error::invariant("unique generic point", format!("{} has generic points {other:?}", c.label()))),
    }
}
