use std::sync::Arc;

use serde::Serialize;

use super::paths::{Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Subspace};

/// A finite-dimensional representation of a quiver: a right kQ-module.
///
/// Convention: an arrow `a: s → t` acts covariantly, `M_s → M_t`, and its
/// matrix has shape `dims[t] × dims[s]` acting on column vectors. Path
/// composition is left to right, so `m · (ab) = (m · a) · b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rep {
    #[serde(skip)]
    field: Field,
    #[serde(skip)]
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl Rep {
    pub fn new(field: Field, quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::Shape(format!("{} dimensions for {} vertices", dims.len(), quiver.vertex_count())));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::Shape(format!("{} matrices for {} arrows", maps.len(), quiver.arrows().len())));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::FieldMismatch { left: field.p(), right: m.field().p() });
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Shape(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Rep { field, quiver, dims, maps })
    }

    pub fn zero(field: Field, quiver: Arc<Quiver>) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Mat::zeros(field, 0, 0)).collect();
        Rep { field, quiver, dims, maps }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }
    pub fn arrow_map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Vertices `i` with `dim M_i > 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    pub fn same_category(&self, other: &Rep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.p(), right: other.field.p() });
        }
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    pub fn split<'v>(&self, flat: &'v [u32]) -> Vec<&'v [u32]> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(&flat[acc..acc + d]);
            acc += d;
        }
        out
    }

    /// Embeds a vector of `M_v` into the flattened total space.
    pub fn embed(&self, v: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.total_dim()];
        let off = self.offsets()[v];
        out[off..off + x.len()].copy_from_slice(x);
        out
    }

    /// Action of a path on a vector of `M_{path.start}`.
    pub fn act_path(&self, path: &Path, x: &[u32]) -> Vec<u32> {
        path.arrows.iter().fold(x.to_vec(), |acc, &a| self.maps[a].mul_vec(&acc))
    }

    /// Matrix of a path's action `M_{start} → M_{end}`.
    pub fn path_matrix(&self, path: &Path) -> Mat {
        path.arrows
            .iter()
            .fold(Mat::identity(self.field, self.dims[path.start]), |acc, &a| self.maps[a].mul(&acc))
    }

    pub fn direct_sum(parts: &[&Rep]) -> Result<Rep> {
        let first = parts.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        for p in parts {
            first.same_category(p)?;
        }
        let q = first.quiver.clone();
        let dims = (0..q.vertex_count()).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..q.arrows().len())
            .map(|a| Mat::direct_sum(first.field, &parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
            .collect();
        Rep::new(first.field, q, dims, maps)
    }

    pub fn power(&self, k: usize) -> Result<Rep> {
        if k == 0 {
            return Ok(Rep::zero(self.field, self.quiver.clone()));
        }
        Rep::direct_sum(&vec![self; k])
    }

    /// Smallest subrepresentation containing the given per-vertex subspaces.
    pub fn arrow_closure(&self, mut spaces: Vec<Subspace>) -> Subrep {
        let order = self.quiver.topological_order().expect("acyclic");
        for v in order {
            for (ai, a) in self.quiver.arrows().iter().enumerate() {
                if a.source == v && !spaces[v].is_zero() {
                    let img = spaces[v].image_under(&self.maps[ai]);
                    spaces[a.target] = spaces[a.target].sum(&img);
                }
            }
        }
        Subrep { spaces }
    }

    /// Submodule generated by flattened vectors of `M`.
    pub fn generated_by(&self, generators: &[Vec<u32>]) -> Result<Subrep> {
        let n = self.total_dim();
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::Shape(format!("generator length must be {n}")));
        }
        let spaces = (0..self.dims.len())
            .map(|v| {
                let off = self.offsets()[v];
                Subspace::span(self.field, self.dims[v], generators.iter().map(|g| g[off..off + self.dims[v]].to_vec()))
            })
            .collect();
        Ok(self.arrow_closure(spaces))
    }

    /// Validates per-vertex subspaces as a subrepresentation.
    pub fn subrep(&self, spaces: Vec<Subspace>) -> Result<Subrep> {
        if spaces.len() != self.dims.len() || spaces.iter().zip(&self.dims).any(|(s, &d)| s.ambient() != d) {
            return Err(Error::Shape("subspace ambient dimensions do not match".into()));
        }
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            if !spaces[a.source].image_under(&self.maps[ai]).is_subspace_of(&spaces[a.target]) {
                return Err(Error::NotArrowClosed { arrow: a.name.clone() });
            }
        }
        Ok(Subrep { spaces })
    }

    pub fn zero_sub(&self) -> Subrep {
        Subrep { spaces: self.dims.iter().map(|&d| Subspace::zero(self.field, d)).collect() }
    }

    pub fn full_sub(&self) -> Subrep {
        Subrep { spaces: self.dims.iter().map(|&d| Subspace::full(self.field, d)).collect() }
    }

    /// The subrepresentation as a representation, with its inclusion.
    pub fn restrict_to(&self, sub: &Subrep) -> (Rep, RepMap) {
        let f = self.field;
        let dims: Vec<usize> = sub.spaces.iter().map(|s| s.dim()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let src = &sub.spaces[a.source];
                let tgt = &sub.spaces[a.target];
                let cols: Vec<Vec<u32>> = src
                    .basis()
                    .iter()
                    .map(|b| tgt.coords(&self.maps[ai].mul_vec(b)).expect("subrep is arrow-closed"))
                    .collect();
                Mat::from_columns(f, tgt.dim(), &cols)
            })
            .collect();
        let rep = Rep { field: f, quiver: self.quiver.clone(), dims, maps };
        let incl = RepMap { comps: sub.spaces.iter().map(|s| s.basis_matrix()).collect() };
        (rep, incl)
    }

    /// The quotient `M / sub` in complement coordinates, with the projection.
    pub fn quotient(&self, sub: &Subrep) -> (Rep, RepMap) {
        let f = self.field;
        let proj: Vec<Mat> = sub.spaces.iter().map(|s| s.quotient_projection()).collect();
        let lift: Vec<Mat> = sub.spaces.iter().map(|s| s.quotient_lift()).collect();
        let dims: Vec<usize> = proj.iter().map(|p| p.rows()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| proj[a.target].mul(&self.maps[ai]).mul(&lift[a.source]))
            .collect();
        let rep = Rep { field: f, quiver: self.quiver.clone(), dims, maps };
        (rep, RepMap { comps: proj })
    }

    /// Largest subrepresentation on which every arrow acts as zero: at each
    /// vertex, the joint kernel of the arrows leaving it.
    pub fn socle(&self) -> Subrep {
        let f = self.field;
        let spaces = (0..self.dims.len())
            .map(|v| {
                let outgoing: Vec<&Mat> = self
                    .quiver
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == v)
                    .map(|(ai, _)| &self.maps[ai])
                    .collect();
                if outgoing.is_empty() {
                    return Subspace::full(f, self.dims[v]);
                }
                let stacked = outgoing.iter().skip(1).fold(outgoing[0].clone(), |acc, m| acc.vstack(m));
                Subspace::span(f, self.dims[v], stacked.kernel_basis())
            })
            .collect();
        Subrep { spaces }
    }

    /// Sum of the images of all arrow maps.
    pub fn radical(&self) -> Subrep {
        let mut spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(self.field, d)).collect();
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let img = Subspace::full(self.field, self.dims[a.source]).image_under(&self.maps[ai]);
            spaces[a.target] = spaces[a.target].sum(&img);
        }
        Subrep { spaces }
    }
}

/// A morphism of representations: one matrix `N_v × M_v` per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RepMap {
    comps: Vec<Mat>,
}

impl RepMap {
    /// Checks shapes and every commuting square `f_t · M_a = N_a · f_s`.
    pub fn new(src: &Rep, tgt: &Rep, comps: Vec<Mat>) -> Result<Self> {
        src.same_category(tgt)?;
        if comps.len() != src.dims.len() {
            return Err(Error::Shape("one component per vertex required".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (tgt.dims[v], src.dims[v]) {
                return Err(Error::Shape(format!(
                    "component at vertex {} must be {}x{}, got {}x{}",
                    v + 1,
                    tgt.dims[v],
                    src.dims[v],
                    c.rows(),
                    c.cols()
                )));
            }
        }
        let map = RepMap { comps };
        map.check_squares(src, tgt)?;
        Ok(map)
    }

    pub fn check_squares(&self, src: &Rep, tgt: &Rep) -> Result<()> {
        for (ai, a) in src.quiver.arrows().iter().enumerate() {
            let lhs = self.comps[a.target].mul(&src.maps[ai]);
            let rhs = tgt.maps[ai].mul(&self.comps[a.source]);
            if lhs != rhs {
                return Err(Error::NotCommuting { arrow: a.name.clone() });
            }
        }
        Ok(())
    }

    pub fn zero(src: &Rep, tgt: &Rep) -> Self {
        RepMap { comps: (0..src.dims.len()).map(|v| Mat::zeros(src.field, tgt.dims[v], src.dims[v])).collect() }
    }

    pub fn identity(m: &Rep) -> Self {
        RepMap { comps: m.dims.iter().map(|&d| Mat::identity(m.field, d)).collect() }
    }

    pub fn comps(&self) -> &[Mat] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Mat {
        &self.comps[v]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &RepMap) -> RepMap {
        RepMap { comps: self.comps.iter().zip(&first.comps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &RepMap) -> RepMap {
        RepMap { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &RepMap) -> RepMap {
        RepMap { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> RepMap {
        RepMap { comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, src: &Rep, flat: &[u32]) -> Vec<u32> {
        src.split(flat).iter().zip(&self.comps).flat_map(|(x, c)| c.mul_vec(x)).collect()
    }

    pub fn kernel(&self, src: &Rep) -> Subrep {
        let spaces = self
            .comps
            .iter()
            .zip(&src.dims)
            .map(|(c, &d)| Subspace::span(src.field, d, c.kernel_basis()))
            .collect();
        Subrep { spaces }
    }

    pub fn image(&self, tgt: &Rep) -> Subrep {
        let spaces = self
            .comps
            .iter()
            .zip(&tgt.dims)
            .map(|(c, &d)| Subspace::span(tgt.field, d, c.columns()))
            .collect();
        Subrep { spaces }
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.rows() == c.cols() && c.rank() == c.cols())
    }

    pub fn inverse(&self) -> Option<RepMap> {
        self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>().map(|comps| RepMap { comps })
    }

    /// Row-major concatenation of the components in vertex order.
    pub fn to_vec(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|c| c.entries().to_vec()).collect()
    }

    pub fn from_vec(src: &Rep, tgt: &Rep, v: &[u32]) -> RepMap {
        let mut comps = Vec::with_capacity(src.dims.len());
        let mut off = 0;
        for (vert, &sd) in src.dims.iter().enumerate() {
            let td = tgt.dims[vert];
            comps.push(Mat::from_fn(src.field, td, sd, |i, j| v[off + i * sd + j]));
            off += td * sd;
        }
        RepMap { comps }
    }

    pub fn direct_sum(field: Field, parts: &[&RepMap]) -> RepMap {
        let n = parts.first().map_or(0, |p| p.comps.len());
        RepMap { comps: (0..n).map(|v| Mat::direct_sum(field, &parts.iter().map(|p| &p.comps[v]).collect::<Vec<_>>())).collect() }
    }

    /// Corestriction through a subrepresentation containing the image.
    pub fn corestrict(&self, sub: &Subrep) -> Option<RepMap> {
        let comps = self
            .comps
            .iter()
            .zip(&sub.spaces)
            .map(|(c, s)| {
                let cols = c.columns().iter().map(|x| s.coords(x)).collect::<Option<Vec<_>>>()?;
                Some(Mat::from_columns(c.field(), s.dim(), &cols))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(RepMap { comps })
    }
}

/// A subrepresentation, stored as one canonical subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subrep {
    spaces: Vec<Subspace>,
}

impl Subrep {
    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }
    pub fn space(&self, v: usize) -> &Subspace {
        &self.spaces[v]
    }
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }
    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(|s| s.is_zero())
    }
    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(|s| s.is_full())
    }
    pub fn contains(&self, other: &Subrep) -> bool {
        other.spaces.iter().zip(&self.spaces).all(|(o, s)| o.is_subspace_of(s))
    }
    pub fn sum(&self, other: &Subrep) -> Subrep {
        Subrep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect() }
    }
    pub fn intersect(&self, other: &Subrep) -> Subrep {
        Subrep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect() }
    }
    /// Image of a subrepresentation of the source under a map.
    pub fn image_under(&self, map: &RepMap) -> Subrep {
        Subrep { spaces: self.spaces.iter().zip(map.comps()).map(|(s, c)| s.image_under(c)).collect() }
    }
    /// Preimage under a map of a subrepresentation of the target.
    pub fn preimage_under(&self, map: &RepMap) -> Subrep {
        Subrep { spaces: self.spaces.iter().zip(map.comps()).map(|(s, c)| s.preimage_under(c)).collect() }
    }

    /// The subrepresentation as one subspace of the flattened total space.
    pub fn flatten(&self) -> Subspace {
        let ambient: usize = self.spaces.iter().map(|s| s.ambient()).sum();
        let field = self.spaces.first().map(|s| s.field());
        let Some(field) = field else {
            return Subspace::zero(Field::new(2).expect("GF(2)"), 0);
        };
        let mut vectors = Vec::new();
        let mut off = 0;
        for s in &self.spaces {
            for b in s.basis() {
                let mut v = vec![0; ambient];
                v[off..off + b.len()].copy_from_slice(b);
                vectors.push(v);
            }
            off += s.ambient();
        }
        Subspace::span(field, ambient, vectors)
    }
}
