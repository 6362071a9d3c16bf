use std::sync::Arc;

use super::{localize_map, LocalizedRing, ModuleSections, TorsionClass};
use crate::algebra::FdModule;
use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::linalg::{Mat, QuotientSpace, Subspace};
use crate::quiver::{PathAlgebra, Rep, RepMap};

/// A projective presentation `⊕ e_j R → ⊕ e_{i_k} R → M → 0`. Generators lift
/// a basis of `M / rad M`; relations span the kernel vertex by vertex.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// `(i_k, g_k)`: generator `g_k ∈ M_{i_k}`.
    pub gens: Vec<(usize, Vec<u32>)>,
    pub p0: Rep,
    pub pi: RepMap,
    /// `(j_l, (r_{kl})_k)` with `r_{kl} ∈ e_{i_k} R e_{j_l}` in path coordinates.
    pub relations: Vec<(usize, Vec<Vec<u32>>)>,
}

impl Presentation {
    pub fn new(alg: &PathAlgebra, m: &Rep) -> Result<Self> {
        let rad = m.radical();
        let mut gens = Vec::new();
        for v in 0..alg.vertex_count() {
            for g in rad.space(v).complement_basis() {
                gens.push((v, g));
            }
        }
        let p0 = if gens.is_empty() {
            Rep::zero(alg.field(), alg.quiver().clone())
        } else {
            let parts = gens.iter().map(|(i, _)| alg.projective(*i)).collect::<Result<Vec<_>>>()?;
            Rep::direct_sum(&parts.iter().collect::<Vec<_>>())?
        };
        let comps = (0..alg.vertex_count())
            .map(|v| {
                let mut cols = Vec::new();
                for (i, g) in &gens {
                    for p in alg.paths().from_to(*i, v) {
                        cols.push(m.act_path(alg.paths().get(p), g));
                    }
                }
                Mat::from_columns(alg.field(), m.dim(v), &cols)
            })
            .collect();
        let pi = RepMap::new(&p0, m, comps)?;
        if !pi.is_surjective() {
            return Err(Error::invariant("top generates", "lifts of M/rad M do not generate M"));
        }
        let mut pres = Presentation { gens, p0, pi, relations: Vec::new() };
        let kernel = pres.pi.kernel(&pres.p0);
        for j in 0..alg.vertex_count() {
            for x in kernel.space(j).basis() {
                let r = pres.split(alg, j, x);
                pres.relations.push((j, r));
            }
        }
        Ok(pres)
    }

    /// Splits an element of `(P_0)_j` into its components `s_k ∈ e_{i_k} R e_j`.
    pub fn split(&self, alg: &PathAlgebra, j: usize, x: &[u32]) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.gens.len());
        let mut off = 0;
        for (i, _) in &self.gens {
            let mut r = vec![0; alg.dim()];
            for p in alg.paths().from_to(*i, j) {
                r[p] = x[off];
                off += 1;
            }
            out.push(r);
        }
        out
    }

    /// Components `s_k` with `m = Σ g_k s_k`, for `m ∈ M_j`.
    pub fn lift(&self, alg: &PathAlgebra, j: usize, m: &[u32]) -> Result<Vec<Vec<u32>>> {
        let x = self
            .pi
            .comp(j)
            .solve(m)
            .ok_or_else(|| Error::invariant("presentation is onto", "element has no lift"))?;
        Ok(self.split(alg, j, &x))
    }
}

/// `M ⊗_R R_T = V_0 / W` inside `R_T^K`: `V_0 = ⊕ ρ(e_{i_k}) R_T`, and `W` is
/// spanned by the images of the relations.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub ring: Arc<LocalizedRing>,
    pub presentation: Presentation,
    pub quotient: QuotientSpace,
    pub action: FdModule,
}

impl TensorModule {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    fn k(&self) -> usize {
        self.presentation.gens.len()
    }

    /// Class of `(x_k)_k ∈ V_0`.
    pub fn class_of(&self, x: &[u32]) -> Vec<u32> {
        self.quotient.coords(x)
    }

    /// `m ⊗ 1` for `m ∈ M_j`.
    pub fn unit_image(&self, alg: &PathAlgebra, j: usize, m: &[u32]) -> Result<Vec<u32>> {
        let s = self.presentation.lift(alg, j, m)?;
        let x: Vec<u32> = s.iter().flat_map(|sk| self.ring.rho(sk)).collect();
        Ok(self.class_of(&x))
    }
}

pub fn tensor_with_localized_ring(eng: &QuiverEngine, m: &Rep, t: TorsionClass) -> Result<TensorModule> {
    let alg = eng.algebra();
    let ring = eng.localized_ring(t)?;
    let presentation = Presentation::new(alg, m)?;
    let f = eng.field();
    let d = ring.dim();
    let k = presentation.gens.len();
    let alg_t = &ring.algebra;
    let mut v0 = Vec::new();
    for (idx, (i, _)) in presentation.gens.iter().enumerate() {
        let e = ring.rho(&alg.idempotent(*i));
        for b in 0..d {
            let mut blocks = vec![vec![0; d]; k];
            blocks[idx] = alg_t.mul(&e, &alg_t.basis_element(b));
            v0.push(blocks.concat());
        }
    }
    let mut w = Vec::new();
    for (_, r) in &presentation.relations {
        for b in 0..d {
            let blocks: Vec<Vec<u32>> = r.iter().map(|rk| alg_t.mul(&ring.rho(rk), &alg_t.basis_element(b))).collect();
            w.push(blocks.concat());
        }
    }
    let v0 = Subspace::span(f, k * d, v0);
    let w = Subspace::span(f, k * d, w);
    if !w.is_subspace_of(&v0) {
        return Err(Error::invariant("relations lie in V_0", "image of the relations escapes ⊕ρ(e_i)R_T"));
    }
    let quotient = QuotientSpace::new(&v0, &w);
    let mut action = Vec::with_capacity(d);
    for y in 0..d {
        let yv = alg_t.basis_element(y);
        let cols: Vec<Vec<u32>> = (0..quotient.dim())
            .map(|q| {
                let x = quotient.lift(q);
                let moved: Vec<u32> = x.chunks(d.max(1)).flat_map(|xk| alg_t.mul(xk, &yv)).collect();
                quotient.coords(&moved)
            })
            .collect();
        action.push(Mat::from_columns(f, quotient.dim(), &cols));
    }
    let action = FdModule::new(alg_t, quotient.dim(), action)?;
    Ok(TensorModule { ring, presentation, quotient, action })
}

/// `θ_{M,T}: M ⊗_R R_T → M_T`, `m ⊗ ρ ↦ Q(y_M(m)) ∘ ρ`.
#[derive(Clone, Debug)]
pub struct Theta {
    pub tensor: TensorModule,
    pub sections: ModuleSections,
    /// `dim M_T × dim (M ⊗ R_T)`.
    pub matrix: Mat,
    pub is_iso: bool,
}

pub fn theta(eng: &QuiverEngine, m: &Rep, t: TorsionClass) -> Result<Theta> {
    let tensor = tensor_with_localized_ring(eng, m, t)?;
    let sections = ModuleSections::compute(eng, m, t)?;
    let ring = tensor.ring.clone();
    let alg = eng.algebra();
    let d = ring.dim();
    let f = eng.field();
    // θ̃ on R_T^K, column (k, b) = Q(y_M(g_k)) ∘ b
    let mut cols = Vec::with_capacity(tensor.k() * d);
    for (i, g) in &tensor.presentation.gens {
        let y = alg.yoneda(eng.regular(), m, &m.embed(*i, g))?;
        let q = localize_map(&y, &ring.module, &sections.module)?;
        for b in ring.endo.basis() {
            cols.push(sections.hom.coords(&q.compose(b))?);
        }
    }
    let full = Mat::from_columns(f, sections.dim(), &cols);
    for x in tensor.quotient.denominator().basis() {
        if !full.mul_vec(x).iter().all(|&c| c == 0) {
            return Err(Error::invariant("θ well defined", "θ does not vanish on the relations"));
        }
    }
    let qcols: Vec<Vec<u32>> = (0..tensor.dim()).map(|q| full.mul_vec(tensor.quotient.lift(q))).collect();
    let matrix = Mat::from_columns(f, sections.dim(), &qcols);
    for (a_t, a_s) in tensor.action.action().iter().zip(sections.action.action()) {
        if matrix.mul(a_t) != a_s.mul(&matrix) {
            return Err(Error::invariant("θ is R_T-linear", "θ does not commute with the R_T action"));
        }
    }
    let is_iso = matrix.rows() == matrix.cols() && matrix.rank() == matrix.cols();
    Ok(Theta { tensor, sections, matrix, is_iso })
}

/// Kernel of the unit `M → M ⊗_R R_T, m ↦ m ⊗ 1`, as a subspace of the
/// flattened module.
pub fn tensor_unit_kernel(eng: &QuiverEngine, m: &Rep, tensor: &TensorModule) -> Result<Subspace> {
    let alg = eng.algebra();
    let mut cols = Vec::with_capacity(m.total_dim());
    for v in 0..m.dims().len() {
        for e in 0..m.dim(v) {
            let mut x = vec![0; m.dim(v)];
            x[e] = 1;
            cols.push(tensor.unit_image(alg, v, &x)?);
        }
    }
    let u = Mat::from_columns(eng.field(), tensor.dim(), &cols);
    Ok(Subspace::span(eng.field(), m.total_dim(), u.kernel_basis()))
}

/// `f ⊗ R_T` in the quotient bases, from a lift of `f` to the presentations.
pub fn tensor_map(eng: &QuiverEngine, tm: &TensorModule, tn: &TensorModule, f: &RepMap) -> Result<Mat> {
    let alg = eng.algebra();
    let ring = &tm.ring;
    let alg_t = &ring.algebra;
    let d = ring.dim();
    // s[k] = components of f(g_k) over the generators of N
    let mut s = Vec::with_capacity(tm.k());
    for (i, g) in &tm.presentation.gens {
        let fg = f.comp(*i).mul_vec(g);
        s.push(tn.presentation.lift(alg, *i, &fg)?);
    }
    let cols: Vec<Vec<u32>> = (0..tm.dim())
        .map(|q| {
            let x = tm.quotient.lift(q);
            let mut out = vec![0; tn.k() * d];
            for (k, xk) in x.chunks(d.max(1)).enumerate().take(tm.k()) {
                for (l, slk) in s[k].iter().enumerate() {
                    let y = alg_t.mul(&ring.rho(slk), xk);
                    for (c, v) in y.iter().enumerate() {
                        out[l * d + c] = eng.field().add(out[l * d + c], *v);
                    }
                }
            }
            tn.class_of(&out)
        })
        .collect();
    Ok(Mat::from_columns(eng.field(), tn.dim(), &cols))
}

/// `f_T: M_T → N_T`, `μ ↦ f̂ ∘ μ`, in the hom bases.
pub fn sections_map(ms: &ModuleSections, ns: &ModuleSections, f: &RepMap) -> Result<Mat> {
    let fl = localize_map(f, &ms.module, &ns.module)?;
    let cols = ms.hom.basis().iter().map(|mu| ns.hom.coords(&fl.compose(mu))).collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_columns(ms.module.source.field(), ns.hom.dim(), &cols))
}
