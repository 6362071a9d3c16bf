use std::sync::Arc;

use injspec_core::engine::QuiverEngine;
use injspec_core::lattice::TorsionLattice;
use injspec_core::linalg::{Field, Mat, Poly};
use injspec_core::pid::{Integers, Pid, PolyRing};
use injspec_core::points::PointSet;
use injspec_core::quiver::{all_reps, all_submodules, hom_dim, injective_hull, Quiver, Rep, RepMap};
use injspec_core::spectrum::injective_spectrum;
use injspec_core::torsion::{is_torsion, is_torsionfree, localize_module, torsion_submodule, TorsionClass};
use injspec_core::{Budget, Error};

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

#[test]
fn linear_path_algebras_have_triangular_dimension() {
    for n in 1..=4 {
        let eng = QuiverEngine::linear(2, n).unwrap();
        assert_eq!(eng.algebra().dim(), n * (n + 1) / 2);
        assert_eq!(eng.regular().total_dim(), n * (n + 1) / 2);
    }
}

#[test]
fn standard_modules_over_a3() {
    let eng = QuiverEngine::linear(3, 3).unwrap();
    assert_eq!(eng.projective(0).unwrap().dims(), &[1, 1, 1]);
    assert_eq!(eng.projective(2).unwrap().dims(), &[0, 0, 1]);
    assert_eq!(eng.injective(0).dims(), &[1, 0, 0]);
    assert_eq!(eng.injective(2).dims(), &[1, 1, 1]);
    assert_eq!(eng.simple(1).dims(), &[0, 1, 0]);
}

#[test]
fn yoneda_and_its_dual() {
    let eng = QuiverEngine::linear(2, 3).unwrap();
    for m in all_reps(eng.field(), eng.quiver(), 3, eng.budget()).unwrap() {
        for i in 0..3 {
            assert_eq!(hom_dim(&eng.projective(i).unwrap(), &m).unwrap(), m.dim(i));
            assert_eq!(hom_dim(&m, eng.injective(i)).unwrap(), m.dim(i));
        }
    }
}

#[test]
fn kronecker_homs() {
    let q = Quiver::new(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap();
    let eng = QuiverEngine::new(gf(2), q, Budget::default()).unwrap();
    let p1 = eng.projective(0).unwrap();
    let p2 = eng.projective(1).unwrap();
    assert_eq!(p1.dims(), &[1, 2]);
    assert_eq!(hom_dim(&p2, &p1).unwrap(), 2);
    assert_eq!(hom_dim(&p1, &p2).unwrap(), 0);
}

#[test]
fn spectrum_has_one_point_per_vertex() {
    for n in 1..=4 {
        let eng = QuiverEngine::linear(2, n).unwrap();
        let spec = injective_spectrum(&eng).unwrap();
        assert_eq!(spec.n(), n);
        let zar = spec.zariski(&eng, &[]).unwrap();
        assert!(zar.is_discrete());
        assert_eq!(TorsionLattice::new(&eng).unwrap().len(), 1 << n);
    }
}

#[test]
fn torsion_over_a2() {
    let eng = QuiverEngine::linear(2, 2).unwrap();
    let t = TorsionClass::new(2, PointSet::singleton(1)).unwrap();
    assert!(is_torsion(&eng, eng.simple(0), t).unwrap());
    assert!(is_torsionfree(&eng, eng.simple(1), t).unwrap());
    assert!(is_torsionfree(&eng, &eng.projective(0).unwrap(), t).unwrap());
    // R = E2 ⊕ S2 embeds in E2²
    assert!(torsion_submodule(&eng, eng.regular(), t).unwrap().is_zero());
    let m = Rep::direct_sum(&[eng.simple(0), eng.regular()]).unwrap();
    assert_eq!(torsion_submodule(&eng, &m, t).unwrap().dims(), vec![1, 0]);
    let loc = localize_module(&eng, eng.simple(0), t).unwrap();
    assert!(loc.local.is_zero());
    let loc = localize_module(&eng, eng.regular(), t).unwrap();
    assert_eq!(loc.local.dims(), &[2, 2]);
}

#[test]
fn injective_hull_of_simples() {
    let eng = QuiverEngine::linear(2, 3).unwrap();
    for i in 0..3 {
        let (hull, emb) = injective_hull(eng.algebra(), eng.simple(i)).unwrap();
        assert_eq!(hull.dims(), eng.injective(i).dims());
        assert!(emb.is_injective());
    }
}

#[test]
fn submodule_counts() {
    let eng = QuiverEngine::linear(2, 2).unwrap();
    // R = P1 ⊕ P2 with dims (1, 2): subspaces of the 2-dim top closed under a
    let subs = all_submodules(eng.regular(), eng.budget()).unwrap();
    assert_eq!(subs.len(), 7);
    let s2 = Rep::direct_sum(&[eng.simple(1), eng.simple(1)]).unwrap();
    assert_eq!(all_submodules(&s2, eng.budget()).unwrap().len(), 5);
}

#[test]
fn broken_square_is_rejected() {
    let eng = QuiverEngine::linear(2, 2).unwrap();
    let f = eng.field();
    let p1 = eng.projective(0).unwrap();
    let e = RepMap::new(&p1, eng.simple(1), vec![Mat::zeros(f, 0, 1), Mat::identity(f, 1)]).unwrap_err();
    assert_eq!(e, Error::NotCommuting { arrow: "a1".into() });
}

#[test]
fn mismatched_arrow_map_is_a_shape_error() {
    let q = Arc::new(Quiver::linear(2));
    let e = Rep::new(gf(2), q, vec![1, 1], vec![Mat::zeros(gf(2), 2, 1)]).unwrap_err();
    assert!(matches!(e, Error::Shape(_)), "{e}");
}

#[test]
fn tiny_budget_is_an_error() {
    let eng = QuiverEngine::new(gf(2), Quiver::linear(3), Budget::new(10)).unwrap();
    let e = all_reps(eng.field(), eng.quiver(), 4, eng.budget()).unwrap_err();
    assert!(matches!(e, Error::BudgetExceeded { .. }), "{e}");
}

#[test]
fn irreducible_polynomial_counts() {
    // Gauss: 2, 1, 2, 3, 6 monic irreducibles over GF(2) of degree 1..=5
    let ring = PolyRing::new(gf(2));
    let mut counts = [0usize; 6];
    for p in ring.primes_up_to(5) {
        counts[p.degree().unwrap()] += 1;
    }
    assert_eq!(counts[1..], [2, 1, 2, 3, 6]);
    let ring3 = PolyRing::new(gf(3));
    assert_eq!(ring3.primes_up_to(2).len(), 3 + 3);
}

#[test]
fn polynomial_arithmetic() {
    let f = gf(2);
    let x1 = Poly::parse(f, "x+1").unwrap();
    let sq = x1.mul(&x1);
    assert_eq!(sq, Poly::parse(f, "x^2+1").unwrap());
    assert!(x1.divides(&sq));
    let x = Poly::x(f);
    assert_eq!(x.gcd(&sq), Poly::one(f));
    let ring = PolyRing::new(f);
    assert_eq!(ring.factor(&sq).unwrap(), vec![(x1, 2)]);
}

#[test]
fn integers() {
    let z = Integers::default();
    assert_eq!(z.primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    assert_eq!(z.factor(&-360).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
    assert!(z.is_unit(&-1));
    assert!(z.divides(&6, &-18));
}
