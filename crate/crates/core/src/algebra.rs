//! Finite-dimensional associative algebras given by structure constants, and
//! right modules over them.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, vec_axpy, Field, Mat, Subspace};

/// An associative unital algebra with basis `b_0..b_{n-1}` and
/// `b_i b_j = Σ_k table[i][j][k] b_k`. The zero algebra has `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FdAlgebra {
    #[serde(skip)]
    field: Field,
    dim: usize,
    table: Vec<Vec<Vec<u32>>>,
    one: Vec<u32>,
}

impl FdAlgebra {
    /// Builds and validates associativity and the unit.
    pub fn new(field: Field, table: Vec<Vec<Vec<u32>>>, one: Vec<u32>) -> Result<Self> {
        let dim = table.len();
        if one.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(Error::Shape("structure constants must be n×n×n with a unit of length n".into()));
        }
        let a = FdAlgebra { field, dim, table, one };
        a.check_axioms()?;
        Ok(a)
    }

    pub fn zero(field: Field) -> Self {
        FdAlgebra { field, dim: 0, table: Vec::new(), one: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn one(&self) -> &[u32] {
        &self.one
    }
    pub fn table(&self) -> &[Vec<Vec<u32>>] {
        &self.table
    }

    pub fn basis_element(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    vec_axpy(f, &mut out, f.mul(a, b), &self.table[i][j]);
                }
            }
        }
        out
    }

    fn check_axioms(&self) -> Result<()> {
        for i in 0..self.dim {
            let bi = self.basis_element(i);
            if self.mul(&self.one, &bi) != bi || self.mul(&bi, &self.one) != bi {
                return Err(Error::invariant("unit", format!("1 is not a two-sided unit on basis element {i}")));
            }
            for j in 0..self.dim {
                let bij = self.mul(&bi, &self.basis_element(j));
                for k in 0..self.dim {
                    let bk = self.basis_element(k);
                    if self.mul(&bij, &bk) != self.mul(&bi, &self.mul(&self.basis_element(j), &bk)) {
                        return Err(Error::invariant("associativity", format!("(b{i} b{j}) b{k} ≠ b{i} (b{j} b{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_matrix(&self, x: &[u32]) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(x, &self.basis_element(j))).collect();
        Mat::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_matrix(&self, x: &[u32]) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_element(j), x)).collect();
        Mat::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn center(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(self.field, 0);
        }
        // x is central iff x b_j - b_j x = 0 for every j
        let mut stacked = Mat::zeros(self.field, 0, self.dim);
        for j in 0..self.dim {
            let bj = self.basis_element(j);
            stacked = stacked.vstack(&self.right_matrix(&bj).sub(&self.left_matrix(&bj)));
        }
        Subspace::span(self.field, self.dim, stacked.kernel_basis())
    }

    pub fn is_idempotent(&self, x: &[u32]) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_nilpotent(&self, x: &[u32]) -> bool {
        let mut y = x.to_vec();
        for _ in 0..=self.dim {
            if is_zero_vec(&y) {
                return true;
            }
            y = self.mul(&y, x);
        }
        is_zero_vec(&y)
    }

    /// All elements of a subspace, refusing beyond the budget.
    fn elements_of(&self, s: &Subspace, budget: Budget, what: &str) -> Result<Vec<Vec<u32>>> {
        budget.check(what, self.field.space_size(s.dim()))?;
        Ok(self.field.all_vectors(s.dim()).map(|c| s.combine(&c)).collect())
    }

    /// Every idempotent of the algebra, by exhaustive search.
    pub fn idempotents(&self, budget: Budget) -> Result<Vec<Vec<u32>>> {
        let all = Subspace::full(self.field, self.dim);
        Ok(self.elements_of(&all, budget, "idempotent search")?.into_iter().filter(|x| self.is_idempotent(x)).collect())
    }

    pub fn has_nontrivial_idempotent(&self, budget: Budget) -> Result<bool> {
        let one = self.one.clone();
        Ok(self.idempotents(budget)?.iter().any(|e| !is_zero_vec(e) && *e != one))
    }

    /// Primitive central idempotents, in the order of discovery.
    pub fn primitive_central_idempotents(&self, budget: Budget) -> Result<Vec<Vec<u32>>> {
        let center = self.center();
        let central: Vec<Vec<u32>> = self
            .elements_of(&center, budget, "central idempotent search")?
            .into_iter()
            .filter(|x| !is_zero_vec(x) && self.is_idempotent(x))
            .collect();
        Ok(central
            .iter()
            .filter(|e| central.iter().all(|g| g == *e || self.mul(g, e) != *g))
            .cloned()
            .collect())
    }

    /// `e A` as an algebra with unit `e`, for a central idempotent `e`.
    pub fn corner(&self, e: &[u32]) -> Result<FdAlgebra> {
        let sub = Subspace::span(self.field, self.dim, (0..self.dim).map(|j| self.mul(e, &self.basis_element(j))));
        self.subalgebra(&sub, e)
    }

    /// A subspace closed under multiplication, with the given unit, as an algebra
    /// in the canonical basis of the subspace.
    pub fn subalgebra(&self, sub: &Subspace, unit: &[u32]) -> Result<FdAlgebra> {
        let basis = sub.basis();
        let mut table = Vec::with_capacity(basis.len());
        for x in basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in basis {
                let c = sub
                    .coords(&self.mul(x, y))
                    .ok_or_else(|| Error::invariant("subalgebra closure", "product leaves the subspace"))?;
                row.push(c);
            }
            table.push(row);
        }
        let one = sub.coords(unit).ok_or_else(|| Error::invariant("subalgebra unit", "unit not in the subspace"))?;
        FdAlgebra::new(self.field, table, one)
    }

    /// Block decomposition: dimensions of `eA` over the primitive central idempotents.
    pub fn block_dims(&self, budget: Budget) -> Result<Vec<usize>> {
        Ok(self
            .primitive_central_idempotents(budget)?
            .iter()
            .map(|e| self.left_matrix(e).rank())
            .collect())
    }

    /// Jacobson radical: `x` with `x y` nilpotent for all `y`, found by
    /// exhaustive search (the set is an ideal, so the result is a subspace).
    pub fn jacobson_radical(&self, budget: Budget) -> Result<Subspace> {
        let all = Subspace::full(self.field, self.dim);
        budget.check("radical search", self.field.space_size(2 * self.dim))?;
        let elems = self.elements_of(&all, budget, "radical search")?;
        let rad: Vec<Vec<u32>> = elems
            .iter()
            .filter(|x| elems.iter().all(|y| self.is_nilpotent(&self.mul(x, y))))
            .cloned()
            .collect();
        let span = Subspace::span(self.field, self.dim, rad.iter().cloned());
        if span.dim() > 0 && self.field.space_size(span.dim()) != rad.len() as u128 {
            return Err(Error::invariant("radical is a subspace", "nilpotent-ideal search did not return a subspace"));
        }
        Ok(span)
    }

    pub fn is_semisimple(&self, budget: Budget) -> Result<bool> {
        Ok(self.jacobson_radical(budget)?.dim() == 0)
    }

    /// Checks that `phi` (columns = images of basis elements) is a unital ring map.
    pub fn is_ring_map_to(&self, target: &FdAlgebra, phi: &Mat) -> bool {
        if phi.shape() != (target.dim, self.dim) {
            return false;
        }
        if phi.mul_vec(&self.one) != target.one {
            return false;
        }
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let lhs = phi.mul_vec(&self.table[i][j]);
                let rhs = target.mul(&phi.column(i), &phi.column(j));
                lhs == rhs
            })
        })
    }

    /// Product algebra `A × B`.
    pub fn product(field: Field, parts: &[&FdAlgebra]) -> Result<FdAlgebra> {
        let n: usize = parts.iter().map(|p| p.dim).sum();
        let mut table = vec![vec![vec![0; n]; n]; n];
        let mut one = vec![0; n];
        let mut off = 0;
        for p in parts {
            for i in 0..p.dim {
                one[off + i] = p.one[i];
                for j in 0..p.dim {
                    for k in 0..p.dim {
                        table[off + i][off + j][off + k] = p.table[i][j][k];
                    }
                }
            }
            off += p.dim;
        }
        if n == 0 {
            return Ok(FdAlgebra::zero(field));
        }
        FdAlgebra::new(field, table, one)
    }

    /// The full matrix algebra `M_n(k)` with basis the matrix units `E_{ij}`
    /// in row-major order.
    pub fn matrix_algebra(field: Field, n: usize) -> FdAlgebra {
        let d = n * n;
        let mut table = vec![vec![vec![0; d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[i * n + j][j * n + l][i * n + l] = 1;
                }
            }
        }
        let mut one = vec![0; d];
        for i in 0..n {
            one[i * n + i] = 1;
        }
        FdAlgebra::new(field, table, one).expect("matrix units satisfy the axioms")
    }
}

/// A right module over an [`FdAlgebra`]: `v · b_i = action[i] v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FdModule {
    dim: usize,
    action: Vec<Mat>,
}

impl FdModule {
    pub fn new(alg: &FdAlgebra, dim: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != alg.dim() || action.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Shape("one dim×dim action matrix per algebra basis element".into()));
        }
        let m = FdModule { dim, action };
        m.check_axioms(alg)?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    /// Matrix of right multiplication by an algebra element.
    pub fn act_matrix(&self, alg: &FdAlgebra, x: &[u32]) -> Mat {
        let mut acc = Mat::zeros(alg.field(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.action[i].scale(c));
            }
        }
        acc
    }

    fn check_axioms(&self, alg: &FdAlgebra) -> Result<()> {
        if alg.dim() == 0 {
            return if self.dim == 0 { Ok(()) } else { Err(Error::invariant("module over zero ring", "nonzero module")) };
        }
        if self.act_matrix(alg, alg.one()) != Mat::identity(alg.field(), self.dim) {
            return Err(Error::invariant("unital action", "1 does not act as the identity"));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.act_matrix(alg, &alg.table()[i][j]);
                let rhs = self.action[j].mul(&self.action[i]);
                if lhs != rhs {
                    return Err(Error::invariant("right action", format!("v·(b{i} b{j}) ≠ (v·b{i})·b{j}")));
                }
            }
        }
        Ok(())
    }

    /// Basis of the module homomorphisms `self → other` as matrices.
    pub fn hom_basis(&self, alg: &FdAlgebra, other: &FdModule) -> Vec<Mat> {
        let (n1, n2) = (self.dim, other.dim);
        let unknowns = n1 * n2;
        if unknowns == 0 {
            return Vec::new();
        }
        let f = alg.field();
        let mut rows = Vec::new();
        for (a1, a2) in self.action.iter().zip(&other.action) {
            // (F a1 - a2 F)[i][j] = 0 with F[i][k] at index i*n1+k
            for i in 0..n2 {
                for j in 0..n1 {
                    let mut row = vec![0u32; unknowns];
                    for k in 0..n1 {
                        let x = i * n1 + k;
                        row[x] = f.add(row[x], a1.get(k, j));
                    }
                    for k in 0..n2 {
                        let x = k * n1 + j;
                        row[x] = f.sub(row[x], a2.get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
        Mat::from_row_vectors(f, unknowns, &rows)
            .kernel_basis()
            .into_iter()
            .map(|v| Mat::from_fn(f, n2, n1, |i, j| v[i * n1 + j]))
            .collect()
    }

    pub fn is_hom(&self, other: &FdModule, map: &Mat) -> bool {
        map.shape() == (other.dim, self.dim)
            && self.action.iter().zip(&other.action).all(|(a1, a2)| map.mul(a1) == a2.mul(map))
    }

    /// The regular right module `A_A`.
    pub fn regular(alg: &FdAlgebra) -> FdModule {
        let action = (0..alg.dim()).map(|i| alg.right_matrix(&alg.basis_element(i))).collect();
        FdModule { dim: alg.dim(), action }
    }

    /// Restriction of scalars along a ring map `phi: B → A` (columns are images).
    pub fn restrict_scalars(&self, alg: &FdAlgebra, phi: &Mat) -> FdModule {
        let action = (0..phi.cols()).map(|i| self.act_matrix(alg, &phi.column(i))).collect();
        FdModule { dim: self.dim, action }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_algebra_m2_over_gf2() {
        let f = Field::new(2).unwrap();
        let m2 = FdAlgebra::matrix_algebra(f, 2);
        let b = Budget::default();
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.center().dim(), 1);
        assert!(m2.is_semisimple(b).unwrap());
        assert!(m2.has_nontrivial_idempotent(b).unwrap());
        assert_eq!(m2.block_dims(b).unwrap(), vec![4]);
    }

    #[test]
    fn product_blocks() {
        let f = Field::new(2).unwrap();
        let k = FdAlgebra::matrix_algebra(f, 1);
        let m2 = FdAlgebra::matrix_algebra(f, 2);
        let p = FdAlgebra::product(f, &[&k, &m2]).unwrap();
        let mut dims = p.block_dims(Budget::default()).unwrap();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
    }

    #[test]
    fn upper_triangular_has_radical() {
        // basis e1, e2, a with e1 a = a = a e2
        let f = Field::new(3).unwrap();
        let mut t = vec![vec![vec![0; 3]; 3]; 3];
        t[0][0][0] = 1;
        t[1][1][1] = 1;
        t[0][2][2] = 1;
        t[2][1][2] = 1;
        let a = FdAlgebra::new(f, t, vec![1, 1, 0]).unwrap();
        let rad = a.jacobson_radical(Budget::default()).unwrap();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&[0, 0, 1]));
        assert!(!a.is_commutative());
    }

    #[test]
    fn rejects_non_associative_tables() {
        let f = Field::new(2).unwrap();
        let mut t = vec![vec![vec![0; 2]; 2]; 2];
        t[0][0] = vec![1, 0];
        t[0][1] = vec![0, 1];
        t[1][0] = vec![0, 1];
        t[1][1] = vec![1, 1];
        // b1 b1 = b0 + b1 with b0 the unit: this is GF(4), associative
        assert!(FdAlgebra::new(f, t.clone(), vec![1, 0]).is_ok());
        t[1][1] = vec![1, 0];
        t[0][1] = vec![0, 0];
        assert!(FdAlgebra::new(f, t, vec![1, 0]).is_err());
    }
}
