use std::collections::BTreeSet;
use std::fmt::Write as _;

use injspec_core::linalg::Poly;
use injspec_core::pid::{Pid, PolyRing};
use injspec_core::points::PointSet;
use injspec_core::sheaf::{
    basic_open_comparison, global_sections_domain_check, theta_sheaf, PidOpen, PidSectionRing, StructureSheaf,
};
use injspec_core::spectrum::injective_spectrum;

use crate::describe::describe_algebra;
use crate::error::CliError;
use crate::format::QuiverModules;
use crate::localize::{parse_points, quiver_module};
use crate::loaded::Loaded;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Global,
    Open(String),
    Module(String),
}

pub fn run(eng: &Loaded, modules: Option<&QuiverModules>, target: &Target) -> Result<String, CliError> {
    match eng {
        Loaded::Quiver(q) => {
            let spec = injective_spectrum(q)?;
            let (_, o) = StructureSheaf::new(q, &spec)?;
            o.check_stalks(q, &spec)?;
            let mut s = String::new();
            let stalks: Vec<usize> = o.stalks.iter().map(|r| r.dim()).collect();
            writeln!(s, "k = GF({}); stalk dims {stalks:?}", q.field().p()).unwrap();
            match target {
                Target::Global => {
                    let g = o.sections_algebra(PointSet::full(o.n()))?;
                    writeln!(s, "Γ(O) dim {} = {}", g.dim(), describe_algebra(&g, "k", q.budget())?).unwrap();
                }
                Target::Open(text) => {
                    let u = parse_points(text, o.n())?;
                    let g = o.sections_algebra(u)?;
                    writeln!(s, "O({}) dim {} = {}", open_label(u), g.dim(), describe_algebra(&g, "k", q.budget())?)
                        .unwrap();
                }
                Target::Module(name) => {
                    let (_, m) = quiver_module(eng, modules, name)?;
                    let (ten, tor, th) = theta_sheaf(q, &o, &m)?;
                    let sum = th.summary(&ten, &tor);
                    writeln!(s, "M = {name}: tensor stalks {:?}; torsion stalks {:?}", sum.tensor_stalk_dims, sum.torsion_stalk_dims)
                        .unwrap();
                    writeln!(
                        s,
                        "Θ: morphism {}; iso {}; stalkwise {:?}",
                        yes(sum.is_morphism),
                        yes(sum.is_iso),
                        sum.stalk_iso
                    )
                    .unwrap();
                    if !sum.is_morphism || !sum.is_iso {
                        return Err(CliError::Invariant { invariant: "Θ is an isomorphism of sheaves".into(), detail: s });
                    }
                }
            }
            Ok(s)
        }
        Loaded::Poly { ring, max_degree, .. } => poly_sheaf(ring, *max_degree, target),
        Loaded::Int { .. } => Err(CliError::Input("sheaf supports the quiver and poly engines".into())),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn open_label(u: PointSet) -> String {
    let items: Vec<String> = u.iter().map(|i| format!("E{}", i + 1)).collect();
    format!("{{{}}}", items.join(","))
}

/// Fractions `a/d` with `deg a, deg d ≤ max_degree`, `d` monic.
pub fn poly_candidates(ring: &PolyRing, max_degree: usize) -> Vec<(Poly, Poly)> {
    let f = ring.field();
    let nums: Vec<Poly> = (0..=max_degree)
        .flat_map(|d| Poly::monic_of_degree(f, d))
        .flat_map(|p| f.elements().skip(1).map(move |c| p.scale(c)))
        .collect();
    let dens: Vec<Poly> = (0..=max_degree).flat_map(|d| Poly::monic_of_degree(f, d)).collect();
    let mut out = Vec::new();
    for d in &dens {
        for a in &nums {
            out.push((a.clone(), d.clone()));
        }
    }
    out
}

fn poly_sheaf(ring: &PolyRing, max_degree: usize, target: &Target) -> Result<String, CliError> {
    let mut s = String::new();
    match target {
        Target::Global => {
            let cands = poly_candidates(ring, max_degree.min(2));
            let v = global_sections_domain_check(ring, &cands)?;
            let accepted = v.iter().filter(|x| x.accepted).count();
            writeln!(s, "Γ(O) = {}", ring.name()).unwrap();
            writeln!(s, "{} candidates: {accepted} polynomials accepted, {} rejected at a stalk", v.len(), v.len() - accepted)
                .unwrap();
        }
        Target::Open(text) => {
            let mut primes = BTreeSet::new();
            let mut f = ring.one();
            for item in text.trim_matches(|c| c == '{' || c == '}').split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let p = ring.parse(item).map_err(|e| CliError::Input(e.to_string()))?;
                f = ring.mul(&f, &p);
                primes.insert(p);
            }
            let u = PidSectionRing::new(ring, PidOpen::Complement(primes.clone())).map_err(|e| CliError::Input(e.to_string()))?;
            let names: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
            let inv: Vec<String> = names.iter().map(|p| format!("1/({p})")).collect();
            let label = if names.is_empty() { ring.name() } else { format!("{}[{}]", ring.name(), inv.join(", ")) };
            writeln!(s, "O(U) = {label}: denominators supported on {{{}}}", names.join(", ")).unwrap();
            if !u.is_zero_ring() && !primes.is_empty() {
                let dens: Vec<Poly> = (0..=max_degree).flat_map(|d| Poly::monic_of_degree(ring.field(), d)).collect();
                let c = basic_open_comparison(ring, &f, &dens)?;
                if !c.passed() {
                    return Err(CliError::Invariant { invariant: "sections over [R/(f)] = R[1/f]".into(), detail: format!("{c:?}") });
                }
                writeln!(s, "agrees with the localization at the class of U on {} denominators", c.battery).unwrap();
            }
        }
        Target::Module(_) => return Err(CliError::Input("--module needs a quiver engine".into())),
    }
    Ok(s)
}
