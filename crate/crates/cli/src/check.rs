use std::collections::BTreeSet;

use serde::Serialize;

use injspec_core::engine::QuiverEngine;
use injspec_core::lattice::{
    check_critical_invariants, critical_subobject, filter_axioms, filter_from_class, filter_roundtrip, golan_homeomorphism_check,
    is_torsion_critical, stability_witness, TorsionLattice,
};
use injspec_core::linalg::Poly;
use injspec_core::pid::{fraction_exactness_check, Pid, PidModule, PidTorsionClass, PolyRing, PrimeSet};
use injspec_core::quiver::{all_reps, Rep};
use injspec_core::sheaf::{
    adjunction_check, basic_open_comparison, global_sections_domain_check, quasicoherence_check, theta_sheaf,
    ModuleSheaf, StructureSheaf,
};
use injspec_core::sigma::{sigma_spectrum, trace_generator_check};
use injspec_core::spectrum::{injective_spectrum, poly_family, FinSpectrum, PidSpectrum, TopologyReport};
use injspec_core::torsion::perfectness_report;
use injspec_core::{Error as CoreError, Result as CoreResult};

use crate::error::{invariant_of, CliError};
use crate::format::QuiverModules;
use crate::loaded::{int_family, Loaded};
use crate::sheaf::poly_candidates;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Topology,
    Torsion,
    Sheaf,
    Sigma,
    Gabriel,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Topology, Suite::Torsion, Suite::Sheaf, Suite::Sigma, Suite::Gabriel];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Topology => "topology",
            Suite::Torsion => "torsion",
            Suite::Sheaf => "sheaf",
            Suite::Sigma => "sigma",
            Suite::Gabriel => "gabriel",
        }
    }

    /// `all` or one suite name.
    pub fn parse_selection(text: &str) -> Result<Vec<Suite>, CliError> {
        if text == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .copied()
            .find(|s| s.name() == text)
            .map(|s| vec![s])
            .ok_or_else(|| CliError::Input(format!("unknown suite `{text}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub ring: String,
    pub passed: bool,
    pub failures: Vec<String>,
    pub suites: Vec<SuiteResult>,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes") + "\n"
    }
}

/// Collects checks; budget exhaustion aborts the whole run as an input error.
struct Recorder {
    checks: Vec<CheckResult>,
    aborted: Option<CliError>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new(), aborted: None }
    }

    fn record(&mut self, name: impl Into<String>, invariant: &str, outcome: CoreResult<bool>, detail: Option<String>) {
        let name = name.into();
        let r = match outcome {
            Ok(true) => CheckResult { name, status: Status::Pass, invariant: None, detail },
            Ok(false) => CheckResult { name, status: Status::Fail, invariant: Some(invariant.into()), detail },
            Err(e @ CoreError::BudgetExceeded { .. }) => {
                self.aborted.get_or_insert(CliError::Input(e.to_string()));
                return;
            }
            Err(e) => CheckResult {
                name,
                status: Status::Fail,
                invariant: Some(invariant_of(&e).unwrap_or_else(|| invariant.into())),
                detail: Some(match detail {
                    Some(d) => format!("{d}: {e}"),
                    None => e.to_string(),
                }),
            },
        };
        self.checks.push(r);
    }

    fn not_applicable(&mut self, name: &str, detail: &str) {
        self.checks.push(CheckResult {
            name: name.into(),
            status: Status::NotApplicable,
            invariant: None,
            detail: Some(detail.into()),
        });
    }

    /// Runs `f` and records its error as a failed check, or returns its value.
    fn attempt<T>(&mut self, name: &str, invariant: &str, f: impl FnOnce() -> CoreResult<T>) -> Option<T> {
        match f() {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(name, invariant, Err(e), None);
                None
            }
        }
    }

    fn take(&mut self) -> Vec<CheckResult> {
        std::mem::take(&mut self.checks)
    }
}

fn topology_checks(rec: &mut Recorder, prefix: &str, r: CoreResult<TopologyReport>) {
    match r {
        Ok(r) => {
            rec.record(format!("{prefix}t0"), "Zariski topology is T0", Ok(r.t0), None);
            rec.record(format!("{prefix}ziegler_sober"), "Ziegler topology is sober", Ok(r.ziegler_sober), None);
            rec.record(format!("{prefix}duality"), "Ziegler specialization reverses Zariski", Ok(r.duality), None);
            rec.record(format!("{prefix}spectral"), "Zariski topology is spectral", Ok(r.spectral), None);
        }
        Err(e) => rec.record(format!("{prefix}topology"), "spectrum topology", Err(e), None),
    }
}

/// The modules every quiver suite runs on: all modules up to a small total
/// dimension, the standard modules and the file modules, deduplicated in order.
pub fn quiver_battery(eng: &QuiverEngine, file: &[(String, Rep)]) -> CoreResult<Vec<Rep>> {
    let max_total = if eng.n() <= 2 { 3 } else { 2 };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |m: Rep, out: &mut Vec<Rep>| {
        let key = format!("{:?}{:?}", m.dims(), m.maps());
        if seen.insert(key) {
            out.push(m);
        }
    };
    for m in all_reps(eng.field(), eng.quiver(), max_total, eng.budget())? {
        push(m, &mut out);
    }
    for m in standard_modules(eng)? {
        push(m.1, &mut out);
    }
    for (_, m) in file {
        push(m.clone(), &mut out);
    }
    Ok(out)
}

fn standard_modules(eng: &QuiverEngine) -> CoreResult<Vec<(String, Rep)>> {
    let mut out = vec![("R".to_string(), eng.regular().clone())];
    for i in 0..eng.n() {
        out.push((format!("S{}", i + 1), eng.simple(i).clone()));
        out.push((format!("P{}", i + 1), eng.projective(i)?));
        out.push((format!("E{}", i + 1), eng.injective(i).clone()));
    }
    Ok(out)
}

pub fn run(eng: &Loaded, modules: Option<&QuiverModules>, suites: &[Suite]) -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    let mut rec = Recorder::new();
    let ring = match eng {
        Loaded::Quiver(q) => {
            let file = modules.cloned().unwrap_or_default();
            if !file.morphisms.is_empty() || !file.modules.is_empty() {
                module_checks(&mut rec, q, &file);
                out.push(SuiteResult { suite: "modules".into(), checks: rec.take() });
            }
            let spec = injective_spectrum(q)?;
            let battery = quiver_battery(q, &file.modules)?;
            for &s in suites {
                match s {
                    Suite::Topology => quiver_topology(&mut rec, q, &spec, &battery),
                    Suite::Torsion => quiver_torsion(&mut rec, q, &battery),
                    Suite::Sheaf => quiver_sheaf(&mut rec, q, &spec, &file),
                    Suite::Sigma => quiver_sigma(&mut rec, q, &spec, &file),
                    Suite::Gabriel => quiver_gabriel(&mut rec, q, &battery),
                }
                out.push(SuiteResult { suite: s.name().into(), checks: rec.take() });
            }
            let arrows: Vec<String> =
                q.quiver().arrows().iter().map(|a| format!("{}: {} → {}", a.name, a.source + 1, a.target + 1)).collect();
            format!("GF({})Q, {} vertices; {}", q.field().p(), q.n(), arrows.join(", "))
        }
        Loaded::Poly { ring, max_degree, budget } => {
            for &s in suites {
                match s {
                    Suite::Topology => topology_checks(&mut rec, "", PidSpectrum::new(*ring).topology_report(&poly_family(ring, *max_degree), *budget)),
                    Suite::Torsion => poly_torsion(&mut rec, ring, *max_degree),
                    Suite::Sheaf => poly_sheaf(&mut rec, ring, *max_degree),
                    Suite::Sigma | Suite::Gabriel => rec.not_applicable(s.name(), "quiver engine only"),
                }
                out.push(SuiteResult { suite: s.name().into(), checks: rec.take() });
            }
            ring.name()
        }
        Loaded::Int { ring, max_modulus, budget } => {
            for &s in suites {
                match s {
                    Suite::Topology => topology_checks(&mut rec, "", PidSpectrum::new(*ring).topology_report(&int_family(*max_modulus), *budget)),
                    Suite::Torsion => int_torsion(&mut rec, ring, *max_modulus),
                    Suite::Sheaf => int_sheaf(&mut rec, ring, *max_modulus),
                    Suite::Sigma | Suite::Gabriel => rec.not_applicable(s.name(), "quiver engine only"),
                }
                out.push(SuiteResult { suite: s.name().into(), checks: rec.take() });
            }
            ring.name()
        }
    };
    if let Some(e) = rec.aborted {
        return Err(e);
    }
    let failures: Vec<String> = out
        .iter()
        .flat_map(|s| s.checks.iter().filter(|c| c.status == Status::Fail).map(move |c| format!("{}/{}", s.suite, c.name)))
        .collect();
    Ok(Verdict { ring, passed: failures.is_empty(), failures, suites: out })
}

fn module_checks(rec: &mut Recorder, eng: &QuiverEngine, file: &QuiverModules) {
    for (name, _) in &file.modules {
        rec.record(format!("module {name}"), "module shapes", Ok(true), None);
    }
    for f in &file.morphisms {
        let (s, t) = (file.resolve(eng, &f.src), file.resolve(eng, &f.tgt));
        let outcome = match (s, t) {
            (Some(s), Some(t)) => f.build(&s, &t).map(|_| true),
            _ => Ok(false),
        };
        let detail = Some(format!("line {}: {} -> {}", f.line, f.src, f.tgt));
        rec.record(format!("morphism {}", f.name), "morphism endpoints exist", outcome, detail);
    }
}

fn quiver_topology(rec: &mut Recorder, eng: &QuiverEngine, spec: &FinSpectrum, battery: &[Rep]) {
    topology_checks(rec, "", spec.topology_report(eng));
    rec.record("specialization", "specialization ⟺ E ∈ F(F)", spec.specialization_order(eng).map(|_| true), None);
    let closed = battery.iter().try_for_each(|m| spec.basic_closed(m).map(|_| ()));
    rec.record("closed_sets", "(C) = (A) ∪ (B)", closed.map(|_| true), Some(format!("{} modules", battery.len())));
    if let Some(extended) = rec.attempt("extended_topology", "spectrum topology", || {
        Ok(TopologyReport::from_spaces(&spec.zariski(eng, battery)?, &spec.ziegler(eng, battery)?))
    }) {
        topology_checks(rec, "battery_", Ok(extended));
    }
    match golan_homeomorphism_check(eng, spec, battery) {
        Ok(g) => rec.record("golan", "h is a bijection onto primes matching basic opens", Ok(g.bijective), Some(format!("{} opens", g.opens_checked))),
        Err(e) => rec.record("golan", "h is a bijection onto primes matching basic opens", Err(e), None),
    }
}

fn quiver_torsion(rec: &mut Recorder, eng: &QuiverEngine, battery: &[Rep]) {
    let Some(lattice) = rec.attempt("lattice", "torsion lattice", || TorsionLattice::new(eng)) else {
        return;
    };
    rec.record("lattice_order", "lattice order matches class inclusion", lattice.verify_order(eng, battery).map(|_| true), None);
    rec.record("primes", "prime ⟺ ∩-irreducible", lattice.check_primes().map(|_| true), None);
    rec.record("sum_of_primes", "every class is a meet of primes", lattice.check_sum_of_primes(eng).map(|_| true), None);
    rec.record("compact", "compact elements have witnesses", lattice.compact_elements(eng).map(|_| true), None);
    for &t in lattice.elements() {
        let name = format!("perfect {}", t.cogen().label());
        match perfectness_report(eng, t, battery) {
            Ok(r) => rec.record(name, "θ iso and unit kernel = τ(M)", Ok(r.passed()), (!r.failures.is_empty()).then(|| r.failures.join("; "))),
            Err(e) => rec.record(name, "θ iso and unit kernel = τ(M)", Err(e), None),
        }
    }
    let mut critical_count = 0;
    let critical = battery.iter().filter(|m| !m.is_zero()).try_for_each(|m| {
        let a = critical_subobject(eng, m)?;
        check_critical_invariants(eng, &a)?;
        if is_torsion_critical(eng, m)? {
            critical_count += 1;
            check_critical_invariants(eng, m)?;
        }
        Ok(())
    });
    let detail = Some(format!("{critical_count} torsion-critical battery modules"));
    rec.record("critical", "critical subobject invariants", critical.map(|_| true), detail);
    let mut unstable = Vec::new();
    let stable = lattice.elements().iter().try_for_each(|&t| {
        if let Some(x) = stability_witness(eng, t)? {
            unstable.push(format!("{} (witness E{})", t.cogen().label(), x + 1));
        }
        Ok(())
    });
    let detail = (!unstable.is_empty()).then(|| format!("unstable: {}", unstable.join(", ")));
    rec.record("stability", "stability witness", stable.map(|_| true), detail);
}

fn quiver_sheaf(rec: &mut Recorder, eng: &QuiverEngine, spec: &FinSpectrum, file: &QuiverModules) {
    let Some((_, o)) = rec.attempt("structure_sheaf", "structure sheaf", || StructureSheaf::new(eng, spec)) else {
        return;
    };
    rec.record("stalks", "stalk at E is R_F(E)", o.check_stalks(eng, spec).map(|_| true), None);
    rec.record("sheaf_axiom", "sheaf axiom", o.sheaf.check_sheaf_axiom(eng.budget()).map(|_| true), None);
    let mut modules = match standard_modules(eng) {
        Ok(m) => m,
        Err(e) => return rec.record("modules", "standard modules", Err(e), None),
    };
    modules.extend(file.modules.iter().cloned());
    for (name, m) in &modules {
        let theta = theta_sheaf(eng, &o, m).map(|(_, _, th)| th.is_iso && th.is_morphism);
        rec.record(format!("theta {name}"), "Θ is an isomorphism of sheaves", theta, None);
        let qc = quasicoherence_check(eng, &o, m).map(|r| r.passed());
        rec.record(format!("quasicoherent {name}"), "quasicoherence", qc, None);
    }
    let adj = ModuleSheaf::structure(&o).and_then(|n| adjunction_check(eng, &o, eng.regular(), &n));
    match adj {
        Ok(r) => rec.record("adjunction R", "Hom(M~, N) ≅ Hom(M, Γ N)", Ok(r.passed()), Some(format!("{} = {}", r.sheaf_side_dim, r.module_side_dim))),
        Err(e) => rec.record("adjunction R", "Hom(M~, N) ≅ Hom(M, Γ N)", Err(e), None),
    }
}

fn quiver_sigma(rec: &mut Recorder, eng: &QuiverEngine, spec: &FinSpectrum, file: &QuiverModules) {
    let mut modules: Vec<(String, Rep)> = vec![("R".into(), eng.regular().clone())];
    for i in 0..eng.n() {
        modules.push((format!("S{}", i + 1), eng.simple(i).clone()));
        if let Some(p) = rec.attempt("modules", "standard modules", || eng.projective(i)) {
            modules.push((format!("P{}", i + 1), p));
        }
    }
    modules.extend(file.modules.iter().filter(|(_, m)| !m.is_zero()).cloned());
    for (name, m) in &modules {
        let k_max = if m.total_dim() <= 4 { 2 } else { 1 };
        match sigma_spectrum(eng, spec, m, k_max) {
            Ok(r) => {
                let detail = Some(format!("{} points, battery {} from M^k, k ≤ {k_max}", r.points.len(), r.battery));
                rec.record(format!("sigma {name}"), "j is a homeomorphism onto (M)", Ok(r.passed()), detail);
                let points: Vec<&Rep> = r.points.iter().map(|p| &spec.points[p.point].module).collect();
                rec.record(format!("traces {name}"), "tr(M, E) = tr(G_M, E)", trace_generator_check(m, &points, k_max, eng.budget()), None);
            }
            Err(e) => rec.record(format!("sigma {name}"), "j is a homeomorphism onto (M)", Err(e), None),
        }
    }
}

fn quiver_gabriel(rec: &mut Recorder, eng: &QuiverEngine, battery: &[Rep]) {
    let Some(lattice) = rec.attempt("lattice", "torsion lattice", || TorsionLattice::new(eng)) else {
        return;
    };
    for &t in lattice.elements() {
        let label = t.cogen().label();
        let axioms = filter_from_class(eng, t).and_then(|g| filter_axioms(eng, &g)).map(|a| a.all());
        rec.record(format!("axioms {label}"), "Gabriel filter axioms", axioms, None);
        rec.record(format!("roundtrip {label}"), "filter → theory → filter", filter_roundtrip(eng, t, battery), None);
    }
}

/// E.g. `cogen {x}`, `cogen all but {x} + E(R)`.
fn class_label<E: Ord + Clone + std::fmt::Display>(t: &PidTorsionClass<E>) -> String {
    let list = |s: &BTreeSet<E>| s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
    let closed = match t.cogen() {
        PrimeSet::Finite(s) => format!("{{{}}}", list(s)),
        PrimeSet::Cofinite(s) => format!("all but {{{}}}", list(s)),
    };
    format!("cogen {closed}{}", if t.generic() { " + E(R)" } else { "" })
}

fn pid_classes<R: Pid>(ring: &R, bound: u64) -> Vec<PidTorsionClass<R::Elem>> {
    let primes = ring.primes_up_to(bound);
    let mut out = vec![PidTorsionClass::zero(), PidTorsionClass::torsion_modules(), PidTorsionClass::everything()];
    for p in primes.iter().take(3) {
        let s = BTreeSet::from([p.clone()]);
        out.push(PidTorsionClass::new(PrimeSet::Finite(s.clone()), false));
        out.push(PidTorsionClass::new(PrimeSet::Cofinite(s), true));
    }
    out
}

fn pid_stability<R: Pid>(rec: &mut Recorder, ring: &R, bound: u64) {
    let points = PidSpectrum::new(ring.clone()).points_up_to(bound);
    for t in pid_classes(ring, bound) {
        let name = format!("stable {}", class_label(&t));
        rec.record(name, "every PID torsion theory is stable", t.stability_witness(ring, &points).map(|w| w.is_none()), None);
    }
}

fn poly_torsion(rec: &mut Recorder, ring: &PolyRing, max_degree: usize) {
    pid_stability(rec, ring, 2);
    let polys: Vec<Poly> = (1..=max_degree.min(3)).flat_map(|d| Poly::monic_of_degree(ring.field(), d)).collect();
    for t in pid_classes(ring, 2) {
        let name = format!("exactness {}", class_label(&t));
        let ok = polys.iter().take(6).try_fold(true, |ok, a| {
            polys.iter().take(6).try_fold(ok, |ok, b| Ok::<_, CoreError>(ok && fraction_exactness_check(ring, &t, a, b)?))
        });
        rec.record(name, "localization at fractions is exact", ok, None);
    }
}

fn int_torsion(rec: &mut Recorder, ring: &injspec_core::pid::Integers, max_modulus: u64) {
    pid_stability(rec, ring, max_modulus.clamp(2, 30));
    let m = PidModule::free(1);
    for t in pid_classes(ring, max_modulus.clamp(2, 30)) {
        let name = format!("free not torsion {}", class_label(&t));
        let expect = t.generic() || !t.cogen().is_empty();
        rec.record(name, "R is torsion only for the class of everything", t.is_torsion(ring, &m).map(|b| b != expect), None);
    }
}

fn poly_sheaf(rec: &mut Recorder, ring: &PolyRing, max_degree: usize) {
    let cands = poly_candidates(ring, max_degree.min(2));
    let gs = global_sections_domain_check(ring, &cands).map(|v| v.iter().all(|x| x.accepted == x.reduced.ends_with("/(1)")));
    rec.record("global_sections", "Γ(O) = R", gs, Some(format!("{} candidates", cands.len())));
    let dens: Vec<Poly> = (0..=max_degree).flat_map(|d| Poly::monic_of_degree(ring.field(), d)).collect();
    for f in (1..=max_degree).flat_map(|d| Poly::monic_of_degree(ring.field(), d)) {
        let c = basic_open_comparison(ring, &f, &dens).map(|c| c.passed());
        rec.record(format!("basic_open {f}"), "sections over [R/(f)] = R[1/f]", c, None);
    }
}

fn int_sheaf(rec: &mut Recorder, ring: &injspec_core::pid::Integers, max_modulus: u64) {
    let bound = max_modulus.max(2) as i128;
    let cands: Vec<(i128, i128)> = (1..=bound).flat_map(|d| (-3..=3).map(move |a| (a, d))).collect();
    let gs = global_sections_domain_check(ring, &cands).map(|v| v.iter().all(|x| x.accepted == x.reduced.ends_with("/(1)")));
    rec.record("global_sections", "Γ(O) = R", gs, Some(format!("{} candidates", cands.len())));
    let dens: Vec<i128> = (1..=bound).collect();
    for f in 2..=bound {
        let c = basic_open_comparison(ring, &f, &dens).map(|c| c.passed());
        rec.record(format!("basic_open {f}"), "sections over [R/(f)] = R[1/f]", c, None);
    }
}
