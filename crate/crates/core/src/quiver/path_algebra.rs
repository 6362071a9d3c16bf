use std::sync::Arc;

use serde::Serialize;

use super::paths::{PathBasis, Quiver};
use super::rep::{Rep, RepMap};
use crate::error::{Error, Result};
use crate::linalg::{vec_axpy, Field, Mat};

/// Which standard module to build at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Simple,
    Projective,
    Injective,
}

const MAX_PATHS: usize = 4096;

/// The path algebra kQ of a finite acyclic quiver, with its path basis.
///
/// Elements of kQ are coordinate vectors over the path basis. Multiplication
/// is concatenation: `p · q` is "p then q".
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    field: Field,
    quiver: Arc<Quiver>,
    paths: PathBasis,
}

impl PathAlgebra {
    pub fn new(field: Field, quiver: Quiver) -> Result<Self> {
        let paths = PathBasis::new(&quiver, MAX_PATHS)?;
        Ok(PathAlgebra { field, quiver: Arc::new(quiver), paths })
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn paths(&self) -> &PathBasis {
        &self.paths
    }
    pub fn dim(&self) -> usize {
        self.paths.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// Basis element for the path with index `i`.
    pub fn basis_element(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn idempotent(&self, v: usize) -> Vec<u32> {
        self.basis_element(self.paths.trivial(v))
    }

    pub fn one(&self) -> Vec<u32> {
        let mut x = vec![0; self.dim()];
        for v in 0..self.vertex_count() {
            x[self.paths.trivial(v)] = 1;
        }
        x
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                if let Some(k) = self.paths.concat(i, j) {
                    out[k] = f.add(out[k], f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn simple(&self, i: usize) -> Result<Rep> {
        self.check(i)?;
        let dims: Vec<usize> = (0..self.vertex_count()).map(|v| usize::from(v == i)).collect();
        let maps = self.arrow_shapes(&dims).into_iter().map(|(r, c)| Mat::zeros(self.field, r, c)).collect();
        Rep::new(self.field, self.quiver.clone(), dims, maps)
    }

    /// `P_i = e_i kQ`: basis at `v` is the paths `i → v`; arrows append.
    pub fn projective(&self, i: usize) -> Result<Rep> {
        self.check(i)?;
        let at: Vec<Vec<usize>> = (0..self.vertex_count()).map(|v| self.paths.from_to(i, v)).collect();
        self.rep_from_path_sets(&at, |p, ai| self.paths.concat(p, self.arrow_path(ai)))
    }

    /// `E_i`: basis at `v` is the paths `v → i`; an arrow `a` sends `a·q` to `q`
    /// and kills paths not beginning with `a`.
    pub fn injective(&self, i: usize) -> Result<Rep> {
        self.check(i)?;
        let at: Vec<Vec<usize>> = (0..self.vertex_count()).map(|v| self.paths.from_to(v, i)).collect();
        let e = self.rep_from_path_sets(&at, |p, ai| {
            let path = self.paths.get(p);
            if path.arrows.first() == Some(&ai) {
                self.paths.find(self.quiver.arrows()[ai].target, &path.arrows[1..])
            } else {
                None
            }
        })?;
        let soc = e.socle();
        if soc.dims() != (0..self.vertex_count()).map(|v| usize::from(v == i)).collect::<Vec<_>>() {
            return Err(Error::invariant("soc(E_i) = S_i", format!("socle dims {:?} at vertex {}", soc.dims(), i + 1)));
        }
        Ok(e)
    }

    pub fn standard(&self, kind: StandardKind, i: usize) -> Result<Rep> {
        match kind {
            StandardKind::Simple => self.simple(i),
            StandardKind::Projective => self.projective(i),
            StandardKind::Injective => self.injective(i),
        }
    }

    /// The regular module `R_R`: basis at `v` is the paths ending at `v`, so
    /// flattened coordinates coincide with path indices.
    pub fn regular(&self) -> Result<Rep> {
        let at: Vec<Vec<usize>> = (0..self.vertex_count()).map(|v| self.paths.ending_at(v)).collect();
        self.rep_from_path_sets(&at, |p, ai| self.paths.concat(p, self.arrow_path(ai)))
    }

    /// Left multiplication `λ_r: R → R, x ↦ r·x`, a right-module endomorphism.
    pub fn left_mult(&self, regular: &Rep, r: &[u32]) -> Result<RepMap> {
        let comps = (0..self.vertex_count())
            .map(|v| {
                let block = self.paths.ending_at(v);
                let cols: Vec<Vec<u32>> = block
                    .iter()
                    .map(|&x| {
                        let y = self.mul(r, &self.basis_element(x));
                        block.iter().map(|&k| y[k]).collect()
                    })
                    .collect();
                Mat::from_columns(self.field, block.len(), &cols)
            })
            .collect();
        RepMap::new(regular, regular, comps)
    }

    /// The element `r` with `λ_r = φ`, read off as `φ(1)`.
    pub fn element_of_endomorphism(&self, regular: &Rep, phi: &RepMap) -> Vec<u32> {
        phi.apply(regular, &self.one())
    }

    /// `m · r` for a flattened element `m` of `M`.
    pub fn act(&self, m: &Rep, x: &[u32], r: &[u32]) -> Vec<u32> {
        let f = self.field;
        let parts = m.split(x);
        let offsets = m.offsets();
        let mut out = vec![0; m.total_dim()];
        for (pi, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = self.paths.get(pi);
            let y = m.act_path(p, parts[p.start]);
            vec_axpy(f, &mut out[offsets[p.end]..offsets[p.end] + y.len()], c, &y);
        }
        out
    }

    /// The Yoneda map `y_M(m): R → M, r ↦ m·r`.
    pub fn yoneda(&self, regular: &Rep, m: &Rep, x: &[u32]) -> Result<RepMap> {
        let parts = m.split(x);
        let comps = (0..self.vertex_count())
            .map(|v| {
                let cols: Vec<Vec<u32>> = self
                    .paths
                    .ending_at(v)
                    .iter()
                    .map(|&pi| {
                        let p = self.paths.get(pi);
                        m.act_path(p, parts[p.start])
                    })
                    .collect();
                Mat::from_columns(self.field, m.dim(v), &cols)
            })
            .collect();
        RepMap::new(regular, m, comps)
    }

    /// `ann(m)`, a right ideal, as a subrepresentation of the regular module.
    pub fn annihilator(&self, regular: &Rep, m: &Rep, x: &[u32]) -> Result<super::rep::Subrep> {
        let y = self.yoneda(regular, m, x)?;
        Ok(y.kernel(regular))
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: i + 1, count: self.vertex_count() });
        }
        Ok(())
    }

    fn arrow_path(&self, ai: usize) -> usize {
        self.paths.find(self.quiver.arrows()[ai].source, &[ai]).expect("arrow is a path")
    }

    fn arrow_shapes(&self, dims: &[usize]) -> Vec<(usize, usize)> {
        self.quiver.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect()
    }

    fn rep_from_path_sets(&self, at: &[Vec<usize>], step: impl Fn(usize, usize) -> Option<usize>) -> Result<Rep> {
        let dims: Vec<usize> = at.iter().map(|s| s.len()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Mat::zeros(self.field, dims[a.target], dims[a.source]);
                for (j, &p) in at[a.source].iter().enumerate() {
                    if let Some(q) = step(p, ai) {
                        let i = at[a.target].iter().position(|&x| x == q).expect("path lands in target block");
                        m.set(i, j, 1);
                    }
                }
                m
            })
            .collect();
        Rep::new(self.field, self.quiver.clone(), dims, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> PathAlgebra {
        PathAlgebra::new(Field::new(2).unwrap(), Quiver::linear(2)).unwrap()
    }

    #[test]
    fn a2_standard_modules() {
        let a = a2();
        let e1 = a.injective(0).unwrap();
        let e2 = a.injective(1).unwrap();
        assert_eq!(e1.dims(), &[1, 0]);
        assert_eq!(e2.dims(), &[1, 1]);
        assert_eq!(e2.arrow_map(0).get(0, 0), 1);
        assert_eq!(a.projective(0).unwrap(), e2);
        assert_eq!(a.projective(1).unwrap().dims(), &[0, 1]);
        assert_eq!(a.regular().unwrap().dims(), &[1, 2]);
    }

    #[test]
    fn left_multiplication_is_a_ring_map() {
        let a = PathAlgebra::new(Field::new(3).unwrap(), Quiver::linear(3)).unwrap();
        let r = a.regular().unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (x, y) = (a.basis_element(i), a.basis_element(j));
                let lhs = a.left_mult(&r, &a.mul(&x, &y)).unwrap();
                let rhs = a.left_mult(&r, &x).unwrap().compose(&a.left_mult(&r, &y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(a.left_mult(&r, &a.one()).unwrap(), RepMap::identity(&r));
    }

    #[test]
    fn yoneda_at_one_is_identity_on_regular() {
        let a = a2();
        let r = a.regular().unwrap();
        assert_eq!(a.yoneda(&r, &r, &a.one()).unwrap(), RepMap::identity(&r));
    }
}
