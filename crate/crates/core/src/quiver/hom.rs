use super::rep::{Rep, RepMap};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Linear system whose unknowns are the entries of a candidate map `M → N`,
/// laid out as in [`RepMap::to_vec`]. Starts with the commuting-square
/// equations; further affine constraints can be added.
pub struct MapSystem<'a> {
    src: &'a Rep,
    tgt: &'a Rep,
    offsets: Vec<usize>,
    unknowns: usize,
    rows: Vec<Vec<u32>>,
    rhs: Vec<u32>,
}

impl<'a> MapSystem<'a> {
    pub fn new(src: &'a Rep, tgt: &'a Rep) -> Result<Self> {
        src.same_category(tgt)?;
        let mut offsets = Vec::with_capacity(src.dims().len());
        let mut acc = 0;
        for v in 0..src.dims().len() {
            offsets.push(acc);
            acc += tgt.dim(v) * src.dim(v);
        }
        let mut sys = MapSystem { src, tgt, offsets, unknowns: acc, rows: Vec::new(), rhs: Vec::new() };
        sys.add_commuting_squares();
        Ok(sys)
    }

    fn var(&self, v: usize, i: usize, j: usize) -> usize {
        self.offsets[v] + i * self.src.dim(v) + j
    }

    fn add_commuting_squares(&mut self) {
        let f = self.src.field();
        for (ai, a) in self.src.quiver().arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let ma = self.src.arrow_map(ai);
            let na = self.tgt.arrow_map(ai);
            // (f_t · M_a - N_a · f_s)[i][j] = 0
            for i in 0..self.tgt.dim(t) {
                for j in 0..self.src.dim(s) {
                    let mut row = vec![0u32; self.unknowns];
                    for k in 0..self.src.dim(t) {
                        let c = ma.get(k, j);
                        if c != 0 {
                            let x = self.var(t, i, k);
                            row[x] = f.add(row[x], c);
                        }
                    }
                    for k in 0..self.tgt.dim(s) {
                        let c = na.get(i, k);
                        if c != 0 {
                            let x = self.var(s, k, j);
                            row[x] = f.sub(row[x], c);
                        }
                    }
                    self.rows.push(row);
                    self.rhs.push(0);
                }
            }
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Requires `f_v(x) = y` for `x ∈ M_v`, `y ∈ N_v`.
    pub fn require_value(&mut self, v: usize, x: &[u32], y: &[u32]) {
        let f = self.src.field();
        for (i, &yi) in y.iter().enumerate() {
            let mut row = vec![0u32; self.unknowns];
            for (j, &xj) in x.iter().enumerate() {
                if xj != 0 {
                    row[self.var(v, i, j)] = xj;
                }
            }
            self.rows.push(row);
            self.rhs.push(f.reduce(yi as i64));
        }
    }

    /// Requires `g ∘ f = h` for fixed `g: N → X` and `h: M → X`.
    pub fn require_postcomposite(&mut self, g: &RepMap, h: &RepMap) {
        let f = self.src.field();
        for v in 0..self.src.dims().len() {
            let gv = g.comp(v);
            let hv = h.comp(v);
            for i in 0..gv.rows() {
                for j in 0..self.src.dim(v) {
                    let mut row = vec![0u32; self.unknowns];
                    for k in 0..self.tgt.dim(v) {
                        let c = gv.get(i, k);
                        if c != 0 {
                            let x = self.var(v, k, j);
                            row[x] = f.add(row[x], c);
                        }
                    }
                    self.rows.push(row);
                    self.rhs.push(hv.get(i, j));
                }
            }
        }
    }

    /// Requires `f ∘ g = h` for fixed `g: X → M` and `h: X → N`.
    pub fn require_precomposite(&mut self, g: &RepMap, h: &RepMap) {
        let f = self.src.field();
        for v in 0..self.src.dims().len() {
            let gv = g.comp(v);
            let hv = h.comp(v);
            for i in 0..self.tgt.dim(v) {
                for j in 0..gv.cols() {
                    let mut row = vec![0u32; self.unknowns];
                    for k in 0..self.src.dim(v) {
                        let c = gv.get(k, j);
                        if c != 0 {
                            let x = self.var(v, i, k);
                            row[x] = f.add(row[x], c);
                        }
                    }
                    self.rows.push(row);
                    self.rhs.push(hv.get(i, j));
                }
            }
        }
    }

    fn matrix(&self) -> Mat {
        Mat::from_row_vectors(self.src.field(), self.unknowns, &self.rows)
    }

    /// One solution (free variables set to zero), if the system is consistent.
    pub fn solve(&self) -> Option<RepMap> {
        if self.unknowns == 0 {
            return if self.rhs.iter().all(|&b| b == 0) { Some(RepMap::zero(self.src, self.tgt)) } else { None };
        }
        let x = self.matrix().solve(&self.rhs)?;
        Some(RepMap::from_vec(self.src, self.tgt, &x))
    }

    /// Basis of the solutions of the homogeneous part.
    pub fn homogeneous_basis(&self) -> Vec<RepMap> {
        if self.unknowns == 0 {
            return Vec::new();
        }
        self.matrix().kernel_basis().iter().map(|v| RepMap::from_vec(self.src, self.tgt, v)).collect()
    }
}

/// The hom space `(M, N)` with a fixed basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: Rep,
    tgt: Rep,
    basis: Vec<RepMap>,
    columns: Mat,
}

impl HomSpace {
    pub fn new(src: &Rep, tgt: &Rep) -> Result<Self> {
        let basis = MapSystem::new(src, tgt)?.homogeneous_basis();
        let unknowns: usize = (0..src.dims().len()).map(|v| src.dim(v) * tgt.dim(v)).sum();
        let columns = Mat::from_columns(src.field(), unknowns, &basis.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
        Ok(HomSpace { src: src.clone(), tgt: tgt.clone(), basis, columns })
    }

    pub fn src(&self) -> &Rep {
        &self.src
    }
    pub fn tgt(&self) -> &Rep {
        &self.tgt
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[RepMap] {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of a morphism in the fixed basis.
    pub fn coords(&self, map: &RepMap) -> Result<Vec<u32>> {
        let flat = map.to_vec();
        if self.basis.is_empty() {
            return if flat.iter().all(|&x| x == 0) {
                Ok(Vec::new())
            } else {
                Err(Error::invariant("hom membership", "nonzero map into a zero hom space"))
            };
        }
        self.columns.solve(&flat).ok_or_else(|| Error::invariant("hom membership", "map is not a morphism"))
    }

    pub fn combine(&self, coords: &[u32]) -> RepMap {
        let f = self.src.field();
        let mut acc = RepMap::zero(&self.src, &self.tgt);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(f.reduce(*c as i64)));
            }
        }
        acc
    }
}

/// A basis of `(M, N)`.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<Vec<RepMap>> {
    Ok(MapSystem::new(m, n)?.homogeneous_basis())
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}
