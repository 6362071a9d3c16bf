use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Subspace};
use crate::points::PointSet;
use crate::spectrum::FiniteSpace;

/// A sheaf of vector spaces on a finite T₀ space, given by its stalks (the
/// values on minimal opens) and the maps `F_y → F_x` for `x ⤳ y`.
#[derive(Clone, Debug)]
pub struct FiniteSheaf {
    field: Field,
    space: FiniteSpace,
    stalk_dims: Vec<usize>,
    maps: BTreeMap<(usize, usize), Mat>,
}

impl FiniteSheaf {
    /// `maps[(y, x)]` is `F_y → F_x` for every `x ⤳ y` with `x ≠ y`.
    pub fn new(field: Field, space: FiniteSpace, stalk_dims: Vec<usize>, maps: BTreeMap<(usize, usize), Mat>) -> Result<Self> {
        if !space.is_t0() {
            return Err(Error::Precondition("sheaves are built on T0 spaces".into()));
        }
        if stalk_dims.len() != space.n() {
            return Err(Error::Shape(format!("{} stalks for {} points", stalk_dims.len(), space.n())));
        }
        let n = space.n();
        for x in 0..n {
            for y in 0..n {
                let needed = x != y && space.specializes(x, y);
                match (needed, maps.get(&(y, x))) {
                    (true, Some(m)) if m.shape() == (stalk_dims[x], stalk_dims[y]) => {}
                    (true, _) => return Err(Error::Shape(format!("missing or misshapen map F_{} → F_{}", y + 1, x + 1))),
                    (false, Some(_)) => {
                        return Err(Error::Precondition(format!("map F_{} → F_{} without specialization", y + 1, x + 1)))
                    }
                    (false, None) => {}
                }
            }
        }
        let sheaf = FiniteSheaf { field, space, stalk_dims, maps };
        sheaf.check_functoriality()?;
        Ok(sheaf)
    }

    fn check_functoriality(&self) -> Result<()> {
        for (&(z, y), a) in &self.maps {
            for (&(y2, x), b) in &self.maps {
                if y2 != y {
                    continue;
                }
                let direct = &self.maps[&(z, x)];
                if *direct != b.mul(a) {
                    return Err(Error::invariant(
                        "stalk maps compose",
                        format!("F_{} → F_{} → F_{}", z + 1, y + 1, x + 1),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }
    pub fn stalk_dims(&self) -> &[usize] {
        &self.stalk_dims
    }
    pub fn stalk_dim(&self, x: usize) -> usize {
        self.stalk_dims[x]
    }
    pub fn map(&self, y: usize, x: usize) -> Option<&Mat> {
        self.maps.get(&(y, x))
    }

    /// Offsets of the stalks of `U` inside `⊕_{x ∈ U} F_x`.
    pub fn offsets(&self, u: PointSet) -> HashMap<usize, usize> {
        let mut acc = 0;
        u.iter()
            .map(|x| {
                let o = acc;
                acc += self.stalk_dims[x];
                (x, o)
            })
            .collect()
    }

    pub fn ambient_dim(&self, u: PointSet) -> usize {
        u.iter().map(|x| self.stalk_dims[x]).sum()
    }

    fn check_open(&self, u: PointSet) -> Result<()> {
        if !self.space.is_open(u) {
            return Err(Error::Precondition(format!("{} is not open", u.label())));
        }
        Ok(())
    }

    /// Rows expressing `r_{y,x}(s_y) = s_x` for `x ⤳ y` inside `U`, over the
    /// coordinates given by `offsets`, in an ambient of `width` unknowns.
    fn compatibility_rows(&self, u: PointSet, offsets: &HashMap<usize, usize>, width: usize, rows: &mut Vec<Vec<u32>>) {
        let f = self.field;
        for (&(y, x), m) in &self.maps {
            if !u.contains(x) || !u.contains(y) {
                continue;
            }
            for i in 0..self.stalk_dims[x] {
                let mut row = vec![0; width];
                for j in 0..self.stalk_dims[y] {
                    row[offsets[&y] + j] = m.get(i, j);
                }
                let c = offsets[&x] + i;
                row[c] = f.sub(row[c], 1);
                rows.push(row);
            }
        }
    }

    /// `F(U)`: compatible families of stalk elements, inside `⊕_{x ∈ U} F_x`.
    pub fn sections(&self, u: PointSet) -> Result<Subspace> {
        self.check_open(u)?;
        let width = self.ambient_dim(u);
        let offsets = self.offsets(u);
        let mut rows = Vec::new();
        self.compatibility_rows(u, &offsets, width, &mut rows);
        if rows.is_empty() {
            return Ok(Subspace::full(self.field, width));
        }
        Ok(Subspace::span(self.field, width, Mat::from_row_vectors(self.field, width, &rows).kernel_basis()))
    }

    /// Restriction `F(U) → F(V)` on ambient coordinates, `V ⊆ U`.
    pub fn restriction(&self, u: PointSet, v: PointSet) -> Result<Mat> {
        if !v.is_subset_of(u) {
            return Err(Error::Precondition(format!("{} ⊄ {}", v.label(), u.label())));
        }
        let (ou, ov) = (self.offsets(u), self.offsets(v));
        let mut m = Mat::zeros(self.field, self.ambient_dim(v), self.ambient_dim(u));
        for x in v.iter() {
            for i in 0..self.stalk_dims[x] {
                m.set(ov[&x] + i, ou[&x] + i, 1);
            }
        }
        Ok(m)
    }

    /// Restricting to the minimal open of a point and projecting to the
    /// point recovers the stalk.
    pub fn check_stalks(&self) -> Result<()> {
        for x in 0..self.space.n() {
            let ux = self.space.minimal_open(x);
            let s = self.sections(ux)?;
            let proj = self.restriction(ux, PointSet::singleton(x))?;
            if s.dim() != self.stalk_dims[x] || s.image_under(&proj).dim() != self.stalk_dims[x] {
                return Err(Error::invariant("restriction to a point recovers the stalk", format!("point {}", x + 1)));
            }
        }
        Ok(())
    }

    /// The sheaf axiom on one cover: `F(U)` maps isomorphically onto the
    /// equalizer of `∏ F(V_i) ⇉ ∏ F(V_i ∩ V_j)`.
    pub fn check_cover(&self, u: PointSet, cover: &[PointSet]) -> Result<bool> {
        if cover.iter().fold(PointSet::EMPTY, |a, v| a.union(*v)) != u {
            return Err(Error::Precondition("family does not cover".into()));
        }
        let mut starts = Vec::with_capacity(cover.len());
        let mut width = 0;
        for v in cover {
            self.check_open(*v)?;
            starts.push(width);
            width += self.ambient_dim(*v);
        }
        let mut rows = Vec::new();
        for (v, &start) in cover.iter().zip(&starts) {
            let offs: HashMap<usize, usize> = self.offsets(*v).into_iter().map(|(x, o)| (x, o + start)).collect();
            self.compatibility_rows(*v, &offs, width, &mut rows);
        }
        let f = self.field;
        for (a, (va, &sa)) in cover.iter().zip(&starts).enumerate() {
            for (vb, &sb) in cover.iter().zip(&starts).skip(a + 1) {
                let (oa, ob) = (self.offsets(*va), self.offsets(*vb));
                for x in va.intersect(*vb).iter() {
                    for i in 0..self.stalk_dims[x] {
                        let mut row = vec![0; width];
                        row[sa + oa[&x] + i] = 1;
                        row[sb + ob[&x] + i] = f.neg(1);
                        rows.push(row);
                    }
                }
            }
        }
        let equalizer_dim = if rows.is_empty() { width } else { width - Mat::from_row_vectors(f, width, &rows).rank() };
        let sections = self.sections(u)?;
        let mut image_rows: Vec<Mat> = Vec::with_capacity(cover.len());
        for v in cover {
            image_rows.push(self.restriction(u, *v)?);
        }
        let stacked = image_rows.iter().skip(1).fold(image_rows[0].clone(), |acc, m| acc.vstack(m));
        let image = sections.image_under(&stacked);
        Ok(image.dim() == sections.dim() && image.dim() == equalizer_dim)
    }

    /// The sheaf axiom for every open and every cover by opens, within the
    /// budget; returns the number of covers checked.
    pub fn check_sheaf_axiom(&self, budget: Budget) -> Result<usize> {
        let opens: Vec<PointSet> = self.space.opens().collect();
        let mut checked = 0;
        for &u in &opens {
            let inside: Vec<PointSet> = opens.iter().copied().filter(|v| v.is_subset_of(u) && !v.is_empty()).collect();
            budget.check("open covers", 1u128 << inside.len().min(127))?;
            for mask in 1u64..(1u64 << inside.len()) {
                let cover: Vec<PointSet> = (0..inside.len()).filter(|i| (mask >> i) & 1 == 1).map(|i| inside[i]).collect();
                if cover.iter().fold(PointSet::EMPTY, |a, v| a.union(*v)) != u {
                    continue;
                }
                checked += 1;
                if !self.check_cover(u, &cover)? {
                    return Err(Error::invariant("sheaf axiom", format!("open {} fails on a cover of {} sets", u.label(), cover.len())));
                }
            }
        }
        Ok(checked)
    }

    pub fn summary(&self) -> Result<SheafSummary> {
        let mut opens = Vec::new();
        for u in self.space.opens() {
            opens.push(OpenSummary { open: u, dim: self.sections(u)?.dim() });
        }
        Ok(SheafSummary { stalk_dims: self.stalk_dims.clone(), opens })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OpenSummary {
    pub open: PointSet,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SheafSummary {
    pub stalk_dims: Vec<usize>,
    pub opens: Vec<OpenSummary>,
}

/// Vector-space values on an intersection-closed family of opens, with
/// restriction maps for every proper inclusion.
#[derive(Clone, Debug)]
pub struct PresheafOnBasis {
    pub field: Field,
    pub n: usize,
    pub basis: Vec<PointSet>,
    pub dims: Vec<usize>,
    /// `maps[(u, v)]` for basis indices with `basis[v] ⊊ basis[u]`.
    pub maps: BTreeMap<(usize, usize), Mat>,
}

impl PresheafOnBasis {
    pub fn index_of(&self, u: PointSet) -> Option<usize> {
        self.basis.iter().position(|&b| b == u)
    }

    pub fn check_intersection_closed(&self) -> Result<()> {
        for &a in &self.basis {
            for &b in &self.basis {
                if self.index_of(a.intersect(b)).is_none() {
                    return Err(Error::invariant("basis closed under intersection", format!("{} ∩ {}", a.label(), b.label())));
                }
            }
        }
        Ok(())
    }

    /// `ρ_{U,W} = ρ_{V,W} ∘ ρ_{U,V}` on every chain `W ⊊ V ⊊ U`.
    pub fn check_functoriality(&self) -> Result<usize> {
        let mut chains = 0;
        for (&(u, v), a) in &self.maps {
            for (&(v2, w), b) in &self.maps {
                if v2 != v {
                    continue;
                }
                chains += 1;
                if self.maps[&(u, w)] != b.mul(a) {
                    return Err(Error::invariant(
                        "restrictions compose",
                        format!("{} ⊃ {} ⊃ {}", self.basis[u].label(), self.basis[v].label(), self.basis[w].label()),
                    ));
                }
            }
        }
        Ok(chains)
    }

    /// Stalks at minimal opens, maps along specialization.
    pub fn sheafify(&self, space: &FiniteSpace) -> Result<FiniteSheaf> {
        let n = space.n();
        let mut idx = Vec::with_capacity(n);
        for x in 0..n {
            let ux = space.minimal_open(x);
            idx.push(self.index_of(ux).ok_or_else(|| {
                Error::Precondition(format!("minimal open {} of point {} is not basic", ux.label(), x + 1))
            })?);
        }
        let mut maps = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && space.specializes(x, y) {
                    maps.insert((y, x), self.maps[&(idx[y], idx[x])].clone());
                }
            }
        }
        FiniteSheaf::new(self.field, space.clone(), idx.iter().map(|&i| self.dims[i]).collect(), maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::new(2).unwrap()
    }

    /// Sierpinski space: point 0 open (generic), point 1 closed.
    fn sierpinski() -> FiniteSpace {
        FiniteSpace::from_open_subbasis(2, &[PointSet::singleton(0)], Budget::default()).unwrap()
    }

    #[test]
    fn sierpinski_sections() {
        let f = gf2();
        let space = sierpinski();
        assert!(space.specializes(0, 1));
        let r = Mat::from_rows(f, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let sheaf = FiniteSheaf::new(f, space, vec![3, 2], BTreeMap::from([((1, 0), r)])).unwrap();
        assert_eq!(sheaf.sections(PointSet::full(2)).unwrap().dim(), 2);
        assert_eq!(sheaf.sections(PointSet::singleton(0)).unwrap().dim(), 3);
        assert_eq!(sheaf.sections(PointSet::EMPTY).unwrap().dim(), 0);
        sheaf.check_stalks().unwrap();
        assert!(sheaf.check_sheaf_axiom(Budget::default()).unwrap() > 0);
    }

    #[test]
    fn discrete_sections_are_products() {
        let f = gf2();
        let sheaf = FiniteSheaf::new(f, FiniteSpace::discrete(3), vec![1, 2, 0], BTreeMap::new()).unwrap();
        assert_eq!(sheaf.sections(PointSet::full(3)).unwrap().dim(), 3);
        assert_eq!(sheaf.check_sheaf_axiom(Budget::default()).unwrap(), 109 + 3 * 5 + 3);
        assert!(sheaf.sections(PointSet::from_points([0, 1])).is_ok());
    }

    #[test]
    fn missing_maps_are_rejected() {
        assert!(FiniteSheaf::new(gf2(), sierpinski(), vec![1, 1], BTreeMap::new()).is_err());
    }
}
