//! One pass/fail line per acceptance criterion, with its runtime limit.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use injspec_cli::sheaf::poly_candidates;
use injspec_core::engine::QuiverEngine;
use injspec_core::lattice::{
    filter_axioms, filter_from_class, filter_roundtrip, golan_homeomorphism_check, is_prime, right_ideals,
    stability_witness, TorsionLattice,
};
use injspec_core::linalg::{Field, Mat, Poly};
use injspec_core::pid::{fraction_exactness_check, Integers, Pid, PidTorsionClass, PolyRing, PrimeSet};
use injspec_core::points::PointSet;
use injspec_core::quiver::{all_reps, all_submodules, hom_basis, Quiver, Rep, RepMap};
use injspec_core::sheaf::{basic_open_comparison, global_sections_domain_check, summarize_algebra, StructureSheaf};
use injspec_core::sigma::{sigma_spectrum, trace_generator_check};
use injspec_core::spectrum::{injective_spectrum, poly_family, FinSpectrum, PidSpectrum};
use injspec_core::torsion::{localize_module, perfectness_report, TorsionClass};
use injspec_core::{Budget, Error, Result};

type Outcome = Result<std::result::Result<String, String>>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn pass(detail: impl Into<String>) -> Outcome {
    Ok(Ok(detail.into()))
}

fn fail(detail: impl Into<String>) -> Outcome {
    Ok(Err(detail.into()))
}

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn closed_by_hom(spec: &FinSpectrum, m: &Rep) -> Result<PointSet> {
    let mut s = PointSet::EMPTY;
    for (j, p) in spec.points.iter().enumerate() {
        if !hom_basis(m, &p.module)?.is_empty() {
            s.insert(j);
        }
    }
    Ok(s)
}

fn c1_global_sections() -> Outcome {
    let eng = QuiverEngine::linear(2, 2)?;
    let spec = injective_spectrum(&eng)?;
    let (_, o) = StructureSheaf::new(&eng, &spec)?;
    let g = summarize_algebra(&o.sections_algebra(PointSet::full(2))?, eng.budget())?;
    let four = g.blocks.iter().find(|b| b.dim == 4);
    let ok = g.dim == 5 && g.block_dims == [1, 4] && four.is_some_and(|b| b.semisimple && b.nontrivial_idempotent);
    let detail = format!("dim {}, blocks {:?}", g.dim, g.block_dims);
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn c2_stalks() -> Outcome {
    let eng = QuiverEngine::linear(2, 2)?;
    let mut seen = Vec::new();
    for (cogen, dims, end) in [(1, [2, 2], 4), (0, [1, 0], 1)] {
        let t = TorsionClass::new(2, PointSet::singleton(cogen))?;
        let loc = localize_module(&eng, eng.regular(), t)?;
        let ring = eng.localized_ring(t)?;
        let got = (loc.local.dims().to_vec(), ring.dim(), hom_basis(&loc.local, &loc.local)?.len());
        seen.push(format!("E{}: Â {:?}, End {}", cogen + 1, got.0, got.1));
        if got != (dims.to_vec(), end, end) {
            return fail(seen.join("; "));
        }
    }
    pass(seen.join("; "))
}

fn domain_check<R: Pid>(ring: &R, cands: &[(R::Elem, R::Elem)]) -> Result<(usize, usize, usize)> {
    let v = global_sections_domain_check(ring, cands)?;
    let mut rejected = 0;
    let mut reductions = 0;
    for ((a, d), verdict) in cands.iter().zip(&v) {
        let integral = ring.divides(d, a);
        if verdict.accepted != integral || (!integral && verdict.witness.is_none()) {
            return Err(Error::Precondition(format!("wrong verdict on {}", verdict.candidate)));
        }
        rejected += usize::from(!integral);
        reductions += usize::from(!ring.is_unit(&ring.gcd(a, d)) && !ring.is_unit(d));
    }
    Ok((v.len(), rejected, reductions))
}

fn c3_domain_global_sections() -> Outcome {
    let mut parts = Vec::new();
    for (p, deg) in [(2, 3), (3, 2)] {
        let ring = PolyRing::new(gf(p));
        let cands = poly_candidates(&ring, deg);
        match domain_check(&ring, &cands) {
            Ok((n, rejected, reductions)) if n >= 100 && reductions > 0 => {
                parts.push(format!("GF({p})[x]: {n} candidates, {rejected} rejected, {reductions} reducible"))
            }
            Ok(x) => return fail(format!("GF({p})[x]: {x:?}")),
            Err(e) => return fail(e.to_string()),
        }
    }
    pass(parts.join("; "))
}

fn c4_basic_opens() -> Outcome {
    let ring = PolyRing::new(gf(2));
    let dens: Vec<Poly> = (0..=4).flat_map(|d| Poly::monic_of_degree(ring.field(), d)).collect();
    let mut n = 0;
    for f in (1..=4).flat_map(|d| Poly::monic_of_degree(ring.field(), d)) {
        let c = basic_open_comparison(&ring, &f, &dens)?;
        if !c.passed() {
            return fail(format!("f = {f}: {c:?}"));
        }
        n += 1;
    }
    pass(format!("{n} moduli f, {} denominators each", dens.len()))
}

fn c5_golan() -> Outcome {
    let mut parts = Vec::new();
    for n in [2, 3] {
        let eng = QuiverEngine::linear(2, n)?;
        let spec = injective_spectrum(&eng)?;
        let battery = all_reps(eng.field(), eng.quiver(), 3, eng.budget())?;
        let g = golan_homeomorphism_check(&eng, &spec, &battery)?;
        if !g.bijective {
            return fail(format!("A{n} not bijective"));
        }
        parts.push(format!("A{n}: {} opens", g.opens_checked));
    }
    pass(parts.join("; "))
}

fn c6_primes() -> Outcome {
    let mut parts = Vec::new();
    for (n, size) in [(2, 4), (3, 8)] {
        let eng = QuiverEngine::linear(2, n)?;
        let lattice = TorsionLattice::new(&eng)?;
        lattice.check_primes()?;
        let agree = lattice.elements().iter().all(|&t| is_prime(t) == lattice.is_cap_irreducible(t));
        if lattice.len() != size || !agree {
            return fail(format!("A{n}: {} elements, agree {agree}", lattice.len()));
        }
        parts.push(format!("A{n}: {size} elements"));
    }
    pass(parts.join("; "))
}

fn c7_closed_union() -> Outcome {
    let mut pairs = 0;
    let mut modules = 0;
    for n in [2, 3] {
        let eng = QuiverEngine::linear(2, n)?;
        let spec = injective_spectrum(&eng)?;
        for c in all_reps(eng.field(), eng.quiver(), 4, eng.budget())? {
            modules += 1;
            let cc = closed_by_hom(&spec, &c)?;
            for sub in all_submodules(&c, eng.budget())? {
                let (a, _) = c.restrict_to(&sub);
                let (b, _) = c.quotient(&sub);
                let union = closed_by_hom(&spec, &a)?.union(closed_by_hom(&spec, &b)?);
                if union != cc || spec.basic_closed(&c)? != cc {
                    return fail(format!("C dims {:?}, A dims {:?}", c.dims(), a.dims()));
                }
                pairs += 1;
            }
        }
    }
    pass(format!("{modules} modules, {pairs} pairs"))
}

fn c8_topology() -> Outcome {
    let mut count = 0;
    let quivers = [
        Quiver::new(2, &[("a", 1, 2)]).unwrap(),
        Quiver::new(3, &[("a", 1, 2), ("b", 2, 3)]).unwrap(),
        Quiver::new(3, &[("a", 2, 1), ("b", 2, 3)]).unwrap(),
        Quiver::new(3, &[("a", 1, 2), ("b", 3, 2)]).unwrap(),
        Quiver::new(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap(),
        Quiver::new(4, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4)]).unwrap(),
    ];
    for (i, q) in quivers.into_iter().enumerate() {
        for p in [2, 3] {
            let eng = QuiverEngine::new(gf(p), q.clone(), Budget::default())?;
            let spec = injective_spectrum(&eng)?;
            let battery = all_reps(eng.field(), eng.quiver(), 2, eng.budget())?;
            let r = spec.topology_report(&eng)?;
            let zar = spec.zariski(&eng, &battery)?;
            let zie = spec.ziegler(&eng, &battery)?;
            let rb = injspec_core::spectrum::TopologyReport::from_spaces(&zar, &zie);
            spec.specialization_order(&eng)?;
            if !r.all() || !rb.all() {
                return fail(format!("quiver {i} over GF({p}): {r:?}"));
            }
            count += 1;
        }
    }
    for p in [2, 3] {
        let ring = PolyRing::new(gf(p));
        let r = PidSpectrum::new(ring).topology_report(&poly_family(&ring, 3), Budget::default())?;
        if !r.all() {
            return fail(format!("GF({p})[x]: {r:?}"));
        }
        count += 1;
    }
    let z = Integers::default();
    let r = PidSpectrum::new(z).topology_report(&injspec_cli::int_family(30), Budget::default())?;
    if !r.all() {
        return fail(format!("Z: {r:?}"));
    }
    pass(format!("{} spectra", count + 1))
}

fn c9_perfectness() -> Outcome {
    let mut reports = 0;
    for n in [2, 3] {
        let eng = QuiverEngine::linear(2, n)?;
        let battery = all_reps(eng.field(), eng.quiver(), 3, eng.budget())?;
        for &t in TorsionLattice::new(&eng)?.elements() {
            let r = perfectness_report(&eng, t, &battery)?;
            if !r.passed() {
                return fail(format!("A{n} cogen {}: {:?}", t.cogen().label(), r.failures));
            }
            reports += 1;
        }
    }
    let ring = PolyRing::new(gf(2));
    let polys: Vec<Poly> = (1..=3).flat_map(|d| Poly::monic_of_degree(ring.field(), d)).collect();
    let primes = ring.primes_up_to(2);
    let mut classes = vec![PidTorsionClass::zero(), PidTorsionClass::torsion_modules(), PidTorsionClass::everything()];
    for p in &primes {
        classes.push(PidTorsionClass::new(PrimeSet::Finite(BTreeSet::from([p.clone()])), false));
        classes.push(PidTorsionClass::new(PrimeSet::Cofinite(BTreeSet::from([p.clone()])), true));
    }
    let mut spot = 0;
    for t in &classes {
        for a in &polys {
            for b in &polys {
                if a.degree().unwrap_or(0) + b.degree().unwrap_or(0) > 3 {
                    continue;
                }
                if !fraction_exactness_check(&ring, t, a, b)? {
                    return fail(format!("GF(2)[x] R/({a}) → R/({a}·{b})"));
                }
                spot += 1;
            }
        }
    }
    pass(format!("{reports} quiver classes, {spot} GF(2)[x] spot-checks"))
}

fn c10_gabriel() -> Outcome {
    let eng = QuiverEngine::linear(2, 2)?;
    let size = eng.field().space_size(eng.algebra().dim());
    let ideals = right_ideals(&eng)?.len();
    let battery = all_reps(eng.field(), eng.quiver(), 3, eng.budget())?;
    let lattice = TorsionLattice::new(&eng)?;
    for &t in lattice.elements() {
        let g = filter_from_class(&eng, t)?;
        let ax = filter_axioms(&eng, &g)?;
        if !ax.all() || !filter_roundtrip(&eng, t, &battery)? {
            return fail(format!("cogen {}: {ax:?}", t.cogen().label()));
        }
    }
    if size != 8 || lattice.len() != 4 {
        return fail(format!("ring size {size}, {} theories", lattice.len()));
    }
    pass(format!("{size} elements, {ideals} right ideals, {} theories", lattice.len()))
}

fn c11_sigma() -> Outcome {
    let a2 = QuiverEngine::linear(2, 2)?;
    let a3 = QuiverEngine::linear(2, 3)?;
    let cases: Vec<(&str, &QuiverEngine, Rep, usize)> = vec![
        ("P1/A2", &a2, a2.projective(0)?, 3),
        ("S1/A2", &a2, a2.simple(0).clone(), 3),
        ("R/A2", &a2, a2.regular().clone(), 2),
        ("P1/A3", &a3, a3.projective(0)?, 3),
    ];
    let mut parts = Vec::new();
    for (name, eng, m, k) in cases {
        let spec = injective_spectrum(eng)?;
        let r = sigma_spectrum(eng, &spec, &m, k)?;
        let points: Vec<&Rep> = r.points.iter().map(|p| &spec.points[p.point].module).collect();
        let traces = trace_generator_check(&m, &points, 2, eng.budget())?;
        if !r.passed() || !traces {
            return fail(format!("{name}: {r:?}, traces {traces}"));
        }
        parts.push(format!("{name}: {} pts, battery {} (k ≤ {k})", r.points.len(), r.battery));
    }
    pass(parts.join("; "))
}

fn c12_stability() -> Outcome {
    let mut classes = 0;
    let poly_rings = [PolyRing::new(gf(2)), PolyRing::new(gf(3))];
    for ring in &poly_rings {
        let points = PidSpectrum::new(*ring).points_up_to(3);
        for t in pid_family(ring, 2) {
            if let Some(w) = t.stability_witness(ring, &points)? {
                return fail(format!("{}: witness {w}", ring.name()));
            }
            classes += 1;
        }
    }
    let z = Integers::default();
    let points = PidSpectrum::new(z).points_up_to(30);
    for t in pid_family(&z, 30) {
        if let Some(w) = t.stability_witness(&z, &points)? {
            return fail(format!("Z: witness {w}"));
        }
        classes += 1;
    }
    let eng = QuiverEngine::linear(2, 2)?;
    let w = stability_witness(&eng, TorsionClass::new(2, PointSet::singleton(0))?)?;
    if w != Some(1) {
        return fail(format!("kA2 cogen {{E1}}: witness {w:?}"));
    }
    pass(format!("{classes} PID classes stable; kA2 cogen {{E1}} unstable, witness E2"))
}

fn pid_family<R: Pid>(ring: &R, bound: u64) -> Vec<PidTorsionClass<R::Elem>> {
    let primes = ring.primes_up_to(bound);
    let mut out = vec![PidTorsionClass::zero(), PidTorsionClass::torsion_modules(), PidTorsionClass::everything()];
    for p in &primes {
        out.push(PidTorsionClass::new(PrimeSet::Finite(BTreeSet::from([p.clone()])), false));
        out.push(PidTorsionClass::new(PrimeSet::Cofinite(BTreeSet::from([p.clone()])), true));
    }
    if primes.len() >= 2 {
        let two: BTreeSet<_> = primes[..2].iter().cloned().collect();
        out.push(PidTorsionClass::new(PrimeSet::Finite(two.clone()), false));
        out.push(PidTorsionClass::new(PrimeSet::Cofinite(two), true));
    }
    out
}

fn c13_negative_control() -> Outcome {
    let eng = QuiverEngine::linear(2, 2)?;
    let p1 = eng.projective(0)?;
    let s2 = eng.simple(1).clone();
    let f = eng.field();
    let broken = RepMap::new(&p1, &s2, vec![Mat::zeros(f, 0, 1), Mat::identity(f, 1)]);
    if !matches!(broken, Err(Error::NotCommuting { .. })) {
        return fail(format!("corrupted RepMap accepted: {broken:?}"));
    }
    let dir = env!("CARGO_MANIFEST_DIR");
    let out = Command::new(env!("CARGO_BIN_EXE_injspec"))
        .args(["check", &format!("{dir}/../../rings/a2.ring"), "--modules", &format!("{dir}/../../rings/a2_corrupted.modules")])
        .env_remove("INJSPEC_BUDGET")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(1) || !stdout.contains("\"invariant\": \"commuting square for arrow a\"") {
        return fail(format!("exit {:?}", out.status.code()));
    }
    pass("RepMap::new rejects; check exits 1 naming `commuting square for arrow a`")
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "kA2 global sections k ⊕ M2(k)", 1, c1_global_sections),
        (2, "kA2 stalks", 1, c2_stalks),
        (3, "domain global sections are R", 1, c3_domain_global_sections),
        (4, "sections over basic opens are R[1/f]", 5, c4_basic_opens),
        (5, "injspec ≅ torspec on kA2, kA3", 5, c5_golan),
        (6, "prime ⟺ ∩-irreducible", 5, c6_primes),
        (7, "(C) = (A) ∪ (B)", 30, c7_closed_union),
        (8, "T0, Ziegler sober, order reversal", 5, c8_topology),
        (9, "perfectness battery", 30, c9_perfectness),
        (10, "Gabriel filter axioms and roundtrip", 5, c10_gabriel),
        (11, "σ[M] isolation", 30, c11_sigma),
        (12, "stability contrast", 1, c12_stability),
        (13, "negative control", 1, c13_negative_control),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = took <= Duration::from_secs(limit);
        let verdict = if ok && in_time { "PASS" } else { "FAIL" };
        failed += usize::from(!(ok && in_time));
        println!("{verdict} {n:>2} {name} [{:.3}s, limit {limit}s] {detail}", took.as_secs_f64());
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
