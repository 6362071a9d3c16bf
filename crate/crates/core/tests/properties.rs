use std::sync::Arc;

use proptest::prelude::*;

use injspec_core::engine::QuiverEngine;
use injspec_core::linalg::{Field, Mat, Poly};
use injspec_core::points::PointSet;
use injspec_core::quiver::{hom_dim, Quiver, Rep};
use injspec_core::spectrum::FiniteSpace;
use injspec_core::torsion::{is_torsion, is_torsionfree, torsion_submodule, TorsionClass};
use injspec_core::Budget;

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(0..p, rows * cols).prop_map(move |v| {
        let f = Field::new(p).unwrap();
        Mat::from_fn(f, rows, cols, |i, j| v[i * cols + j])
    })
}

fn poly(p: u32, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..p, 0..=max_len).prop_map(move |c| Poly::from_coeffs(Field::new(p).unwrap(), c))
}

/// A representation of 1 → 2 → 3 with each vertex of dimension at most 2.
fn a3_rep() -> impl Strategy<Value = Rep> {
    (0usize..=2, 0usize..=2, 0usize..=2)
        .prop_flat_map(|(a, b, c)| (Just(vec![a, b, c]), matrix(2, b, a), matrix(2, c, b)))
        .prop_map(|(dims, m1, m2)| Rep::new(Field::new(2).unwrap(), Arc::new(Quiver::linear(3)), dims, vec![m1, m2]).unwrap())
}

fn subbasis(n: usize) -> impl Strategy<Value = Vec<PointSet>> {
    prop::collection::vec(0u64..(1 << n), 0..6).prop_map(|v| v.into_iter().map(|m| PointSet::from_points((0..64).filter(|i| (m >> i) & 1 == 1))).collect())
}

fn brute_closure(space: &FiniteSpace, s: PointSet) -> PointSet {
    space.closed_sets().into_iter().filter(|c| s.is_subset_of(*c)).fold(space.whole(), |a, c| a.intersect(c))
}

fn brute_irreducible(space: &FiniteSpace, c: PointSet) -> bool {
    let proper: Vec<PointSet> = space.closed_sets().into_iter().filter(|d| d.is_subset_of(c) && *d != c).collect();
    !c.is_empty() && !proper.iter().any(|a| proper.iter().any(|b| a.union(*b) == c))
}

proptest! {
    #[test]
    fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(3, r, c))) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in (1usize..5).prop_flat_map(|n| matrix(5, n, n))) {
        match m.inverse() {
            Some(inv) => {
                let id = Mat::identity(m.field(), m.rows());
                prop_assert_eq!(m.mul(&inv), id.clone());
                prop_assert_eq!(inv.mul(&m), id);
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn euclidean_division(a in poly(3, 6), d in poly(3, 4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.divrem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < d.degree());
        let g = a.gcd(&d);
        prop_assert!(g.divides(&a) && g.divides(&d));
    }

    #[test]
    fn finite_space_agrees_with_definitions(n in 1usize..6, sub in subbasis(5)) {
        let sub: Vec<PointSet> = sub.into_iter().map(|s| s.intersect(PointSet::full(n))).collect();
        let space = FiniteSpace::from_open_subbasis(n, &sub, Budget::default()).unwrap();
        for s in PointSet::all_subsets(n) {
            prop_assert_eq!(space.closure(s), brute_closure(&space, s));
        }
        for c in space.closed_sets() {
            prop_assert_eq!(space.is_irreducible(c), brute_irreducible(&space, c));
            if let Some((a, b)) = space.decomposition(c) {
                prop_assert!(space.is_closed(a) && space.is_closed(b) && a != c && b != c && a.union(b) == c);
            } else {
                prop_assert!(c.is_empty() || brute_irreducible(&space, c));
            }
        }
        for u in space.opens() {
            for v in space.opens() {
                prop_assert!(space.is_open(u.intersect(v)));
            }
        }
    }

    #[test]
    fn yoneda_on_random_reps(m in a3_rep()) {
        let eng = QuiverEngine::linear(2, 3).unwrap();
        for i in 0..3 {
            prop_assert_eq!(hom_dim(&eng.projective(i).unwrap(), &m).unwrap(), m.dim(i));
            prop_assert_eq!(hom_dim(&m, eng.injective(i)).unwrap(), m.dim(i));
        }
    }

    #[test]
    fn torsion_part_splits_off_a_torsionfree_quotient(m in a3_rep(), mask in 0u64..8) {
        let eng = QuiverEngine::linear(2, 3).unwrap();
        let t = TorsionClass::new(3, PointSet::from_points((0..3).filter(|i| (mask >> i) & 1 == 1))).unwrap();
        let tau = torsion_submodule(&eng, &m, t).unwrap();
        let (sub, _) = m.restrict_to(&tau);
        let (quot, _) = m.quotient(&tau);
        prop_assert!(is_torsion(&eng, &sub, t).unwrap());
        prop_assert!(is_torsionfree(&eng, &quot, t).unwrap());
    }
}
