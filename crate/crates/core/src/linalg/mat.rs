use std::fmt;

use serde::Serialize;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat {
    #[serde(skip)]
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Builds a matrix from integer rows, reducing entries mod p.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Mat { field, rows: rows.len(), cols, data })
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn from_row_vectors(field: Field, cols: usize, vectors: &[Vec<u32>]) -> Self {
        Self::from_fn(field, vectors.len(), cols, |i, j| vectors[i][j])
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), other.shape());
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Mat) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j));
            }
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    pub fn direct_sum(field: Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(factor, m.data[r * m.cols + j]);
                    let idx = i * m.cols + j;
                    m.data[idx] = f.sub(m.data[idx], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column (in column order).
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        kernel_with_free_columns(self).0
    }

    /// One solution of `self * x = b`, with all free variables set to zero.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = self.field;
        let mut aug = Mat::zeros(f, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, &bi) in b.iter().enumerate() {
            aug.set(i, self.cols, bi);
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n));
        let (red, pivots) = aug.rref();
        if pivots.len() < n || (0..n).any(|i| pivots[i] != i) {
            return None;
        }
        Some(red.block(0, n, n, n))
    }
}

/// Kernel basis together with the free column that indexes each basis vector.
///
/// A kernel vector's coordinates in this basis are its entries at the free columns.
fn kernel_with_free_columns(m: &Mat) -> (Vec<Vec<u32>>, Vec<usize>) {
    let f = m.field;
    let (red, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u32; m.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(red.get(r, fc));
            }
            v
        })
        .collect();
    (basis, free)
}

pub fn vec_add(f: Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: Field, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn vec_axpy(f: Field, acc: &mut [u32], c: u32, a: &[u32]) {
    if c == 0 {
        return;
    }
    for (x, &y) in acc.iter_mut().zip(a) {
        *x = f.add(*x, f.mul(c, y));
    }
}

pub fn is_zero_vec(a: &[u32]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// A subspace of GF(p)^n stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}, {:?})", self.dim(), self.ambient, self.rows)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::span(field, ambient, (0..ambient).map(|i| unit_vector(ambient, i)))
    }

    pub fn span<I, V>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let vs: Vec<Vec<u32>> = vectors.into_iter().map(|v| v.as_ref().to_vec()).collect();
        if vs.is_empty() || ambient == 0 {
            return Self::zero(field, ambient);
        }
        let m = Mat::from_row_vectors(field, ambient, &vs);
        let (red, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Subspace { field, ambient, rows, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns are the RREF basis vectors.
    pub fn basis_matrix(&self) -> Mat {
        Mat::from_columns(self.field, self.ambient, &self.rows)
    }

    /// Residue of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                vec_axpy(f, &mut r, f.neg(c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&c| v[c]).collect())
        } else {
            None
        }
    }

    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            vec_axpy(self.field, &mut out, *c, row);
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient, self.rows.iter().chain(other.rows.iter()))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // x = sum a_i u_i = sum b_j w_j  <=>  [U | -W] (a, b) = 0
        let f = self.field;
        let k = self.dim();
        let mut cols: Vec<Vec<u32>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|w| w.iter().map(|&x| f.neg(x)).collect()));
        let m = Mat::from_columns(f, self.ambient, &cols);
        let kernel = m.kernel_basis();
        Subspace::span(f, self.ambient, kernel.iter().map(|ab| self.combine(&ab[..k])))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Standard basis vectors at the non-pivot columns.
    pub fn complement_basis(&self) -> Vec<Vec<u32>> {
        self.non_pivots().into_iter().map(|c| unit_vector(self.ambient, c)).collect()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Matrix of the projection GF(p)^n -> GF(p)^n / self in complement coordinates.
    pub fn quotient_projection(&self) -> Mat {
        let np = self.non_pivots();
        let f = self.field;
        let mut m = Mat::zeros(f, np.len(), self.ambient);
        for (qi, &c) in np.iter().enumerate() {
            m.set(qi, c, 1);
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                m.set(qi, pc, f.neg(row[c]));
            }
        }
        m
    }

    /// Lift from quotient coordinates back to the standard complement.
    pub fn quotient_lift(&self) -> Mat {
        Mat::from_columns(self.field, self.ambient, &self.complement_basis())
    }

    /// Image of the subspace under a linear map.
    pub fn image_under(&self, m: &Mat) -> Subspace {
        Subspace::span(self.field, m.rows(), self.rows.iter().map(|r| m.mul_vec(r)))
    }

    /// Preimage of the subspace under a linear map `m: GF(p)^k -> ambient`.
    pub fn preimage_under(&self, m: &Mat) -> Subspace {
        let proj = self.quotient_projection().mul(m);
        Subspace::span(self.field, m.cols(), proj.kernel_basis())
    }
}

/// The subquotient `num / den` with `den ⊆ num`, with canonical coordinates.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    den: Subspace,
    residues: Subspace,
}

impl QuotientSpace {
    pub fn new(num: &Subspace, den: &Subspace) -> Self {
        debug_assert!(den.is_subspace_of(num));
        let residues = Subspace::span(num.field(), num.ambient(), num.basis().iter().map(|v| den.reduce(v)));
        QuotientSpace { den: den.clone(), residues }
    }

    pub fn dim(&self) -> usize {
        self.residues.dim()
    }

    /// Coordinates of the class of `v` (which must lie in the numerator).
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.residues
            .coords(&self.den.reduce(v))
            .expect("vector does not lie in the numerator of the quotient")
    }

    /// A representative of the `i`-th basis class.
    pub fn lift(&self, i: usize) -> &[u32] {
        &self.residues.basis()[i]
    }

    pub fn denominator(&self) -> &Subspace {
        &self.den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        let id = Mat::identity(f, 2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));

        let ones = Mat::from_rows(f, &[vec![1, 1], vec![1, 1]]).unwrap();
        let (r, p) = ones.rref();
        assert_eq!(r, Mat::from_rows(f, &[vec![1, 1], vec![0, 0]]).unwrap());
        assert_eq!(p, vec![0]);

        let z = Mat::zeros(f, 3, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2);
        assert!(Mat::identity(f, 2).kernel_basis().is_empty());
        let m = Mat::from_rows(f, &[vec![1, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
        let z = Mat::zeros(f, 2, 3);
        assert_eq!(z.kernel_basis(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = gf(2);
        assert_eq!(Mat::identity(f, 2).solve(&[1, 0]), Some(vec![1, 0]));
        let m = Mat::from_rows(f, &[vec![1, 1]]).unwrap();
        let x = m.solve(&[1]).unwrap();
        assert!(x == vec![1, 0] || x == vec![0, 1]);
        assert_eq!(Mat::zeros(f, 1, 2).solve(&[1]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(3);
        let m = Mat::from_rows(f, &[vec![1, 2], vec![0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f, 2));
        assert!(Mat::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap().inverse().is_none());
    }

    #[test]
    fn subspace_intersection_and_quotient() {
        let f = gf(2);
        let u = Subspace::span(f, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(f, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersect(&w);
        assert_eq!(i, Subspace::span(f, 3, [vec![0, 1, 0]]));
        let q = QuotientSpace::new(&u, &i);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.coords(&[1, 1, 0]), vec![1]);
        assert_eq!(q.coords(&[0, 1, 0]), vec![0]);
        let proj = i.quotient_projection();
        assert!(proj.mul_vec(&[0, 1, 0]).iter().all(|&x| x == 0));
    }
}
