use std::collections::HashMap;

use serde::Serialize;

use crate::budget::Budget;
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::quiver::{all_submodules, Rep, Subrep};
use crate::torsion::{is_torsion, TorsionClass};

/// Largest ring, in elements, whose right ideals are enumerated.
pub const MAX_RING_SIZE: u128 = 256;

/// The right ideals of `R` with `R/I` torsion, as flags over [`right_ideals`].
#[derive(Clone, Debug)]
pub struct GabrielFilter {
    pub class: TorsionClass,
    pub ideals: Vec<Subrep>,
    pub members: Vec<bool>,
}

impl GabrielFilter {
    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FilterAxioms {
    pub upward_closed: bool,
    pub intersection_closed: bool,
    pub colon_stable: bool,
    pub two_step_closed: bool,
    pub pairs_checked: usize,
}

impl FilterAxioms {
    pub fn all(&self) -> bool {
        self.upward_closed && self.intersection_closed && self.colon_stable && self.two_step_closed
    }
}

fn ring_elements(eng: &QuiverEngine) -> Result<Vec<Vec<u32>>> {
    let size = eng.field().space_size(eng.algebra().dim());
    Budget::new(MAX_RING_SIZE).check("ring elements", size)?;
    Ok(eng.field().all_vectors(eng.algebra().dim()).collect())
}

/// All right ideals of `R`, ordered by dimension.
pub fn right_ideals(eng: &QuiverEngine) -> Result<Vec<Subrep>> {
    ring_elements(eng)?;
    all_submodules(eng.regular(), eng.budget())
}

/// `(I : r) = {x : r x ∈ I}`, the kernel of `R → R/I, x ↦ r x + I`.
pub fn colon_ideal(eng: &QuiverEngine, ideal: &Subrep, r: &[u32]) -> Result<Subrep> {
    let reg = eng.regular();
    let (_, proj) = reg.quotient(ideal);
    let lr = eng.algebra().left_mult(reg, r)?;
    Ok(proj.compose(&lr).kernel(reg))
}

fn index(ideals: &[Subrep]) -> HashMap<Subrep, usize> {
    ideals.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()
}

pub fn filter_from_class(eng: &QuiverEngine, t: TorsionClass) -> Result<GabrielFilter> {
    let ideals = right_ideals(eng)?;
    let reg = eng.regular();
    let members = ideals.iter().map(|i| is_torsion(eng, &reg.quotient(i).0, t)).collect::<Result<_>>()?;
    Ok(GabrielFilter { class: t, ideals, members })
}

fn elements_of(eng: &QuiverEngine, ideal: &Subrep) -> Vec<Vec<u32>> {
    let flat = ideal.flatten();
    eng.field().all_vectors(flat.dim()).map(|c| flat.combine(&c)).collect()
}

/// Exhaustive check of the filter axioms.
pub fn filter_axioms(eng: &QuiverEngine, g: &GabrielFilter) -> Result<FilterAxioms> {
    let idx = index(&g.ideals);
    let elems = ring_elements(eng)?;
    let look = |s: &Subrep| -> Result<usize> {
        idx.get(s).copied().ok_or_else(|| Error::invariant("right ideal enumeration is complete", "ideal not listed"))
    };
    let n = g.ideals.len();
    let mut colon = vec![Vec::with_capacity(elems.len()); n];
    for (i, ideal) in g.ideals.iter().enumerate() {
        for r in &elems {
            colon[i].push(look(&colon_ideal(eng, ideal, r)?)?);
        }
    }
    let elem_index: HashMap<&Vec<u32>, usize> = elems.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut out = FilterAxioms {
        upward_closed: g.members.iter().any(|&b| b),
        intersection_closed: true,
        colon_stable: true,
        two_step_closed: true,
        pairs_checked: 0,
    };
    for i in 0..n {
        if !g.members[i] {
            continue;
        }
        for j in 0..n {
            out.pairs_checked += 1;
            if g.ideals[j].contains(&g.ideals[i]) && !g.members[j] {
                out.upward_closed = false;
            }
            if g.members[j] && !g.members[look(&g.ideals[i].intersect(&g.ideals[j]))?] {
                out.intersection_closed = false;
            }
        }
        for k in 0..elems.len() {
            out.pairs_checked += 1;
            if !g.members[colon[i][k]] {
                out.colon_stable = false;
            }
        }
    }
    for j in 0..n {
        if g.members[j] {
            continue;
        }
        for i in 0..n {
            if !g.members[i] {
                continue;
            }
            out.pairs_checked += 1;
            let all_in = elements_of(eng, &g.ideals[i]).iter().all(|r| g.members[colon[j][elem_index[r]]]);
            if all_in {
                out.two_step_closed = false;
            }
        }
    }
    Ok(out)
}

/// The theory of a filter: `M` is torsion when every element has its
/// annihilator in the filter.
pub fn filter_admits(eng: &QuiverEngine, g: &GabrielFilter, m: &Rep) -> Result<bool> {
    let idx = index(&g.ideals);
    let reg = eng.regular();
    for x in eng.field().all_vectors(m.total_dim()) {
        let ann = eng.algebra().annihilator(reg, m, &x)?;
        let k = idx.get(&ann).ok_or_else(|| Error::invariant("annihilators are right ideals", "not listed"))?;
        if !g.members[*k] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Filter → theory → filter is the identity, and the rebuilt theory agrees
/// with `T` on the battery.
pub fn filter_roundtrip(eng: &QuiverEngine, t: TorsionClass, battery: &[Rep]) -> Result<bool> {
    let g = filter_from_class(eng, t)?;
    let mut cogen = PointSet::EMPTY;
    for i in 0..eng.n() {
        if !filter_admits(eng, &g, eng.simple(i))? {
            cogen.insert(i);
        }
    }
    let rebuilt = TorsionClass::new(eng.n(), cogen)?;
    if rebuilt != t {
        return Ok(false);
    }
    for m in battery {
        if filter_admits(eng, &g, m)? != is_torsion(eng, m, t)? {
            return Ok(false);
        }
    }
    let again = filter_from_class(eng, rebuilt)?;
    Ok(again.members == g.members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_gf2_filters() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let ideals = right_ideals(&eng).unwrap();
        let trivial = filter_from_class(&eng, TorsionClass::zero(2)).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial.members[ideals.len() - 1]);
        let all = filter_from_class(&eng, TorsionClass::everything(2)).unwrap();
        assert_eq!(all.len(), ideals.len());
        for u in PointSet::all_subsets(2) {
            let t = TorsionClass::new(2, u).unwrap();
            let g = filter_from_class(&eng, t).unwrap();
            assert!(filter_axioms(&eng, &g).unwrap().all());
            assert!(filter_roundtrip(&eng, t, &[eng.regular().clone()]).unwrap());
        }
    }
}
