use std::fmt::Write as _;

use serde::Serialize;

use injspec_core::points::PointSet;
use injspec_core::quiver::Rep;
use injspec_core::torsion::{localize_module, theta, torsion_submodule, TorsionClass};

use crate::describe::describe_algebra;
use crate::error::CliError;
use crate::format::QuiverModules;
use crate::loaded::Loaded;

/// Points of a finite spectrum: `1,2`, `{E1,E2}`, `{}`, or `all`.
pub fn parse_points(text: &str, n: usize) -> Result<PointSet, CliError> {
    let t = text.trim();
    if t == "all" {
        return Ok(PointSet::full(n));
    }
    let t = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(t);
    let mut s = PointSet::EMPTY;
    for item in t.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let digits = item.strip_prefix('E').unwrap_or(item);
        let i: usize = digits.parse().map_err(|_| CliError::Input(format!("bad point `{item}`")))?;
        if i == 0 || i > n {
            return Err(CliError::Input(format!("point {i} out of range 1..={n}")));
        }
        s.insert(i - 1);
    }
    Ok(s)
}

/// A quiver engine and the module named on the command line.
pub fn quiver_module<'a>(
    eng: &'a Loaded,
    modules: Option<&QuiverModules>,
    name: &str,
) -> Result<(&'a injspec_core::engine::QuiverEngine, Rep), CliError> {
    let Loaded::Quiver(q) = eng else {
        return Err(CliError::Input("this command needs a quiver engine".into()));
    };
    let empty = QuiverModules::default();
    let m = modules.unwrap_or(&empty).resolve(q, name).ok_or_else(|| CliError::Input(format!("unknown module `{name}`")))?;
    Ok((q, m))
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizeReport {
    pub module: String,
    pub cogen: PointSet,
    pub dims: Vec<usize>,
    pub torsion_dims: Vec<usize>,
    pub local_dims: Vec<usize>,
    pub end_dim: usize,
    /// `End(Â)` as blocks over `GF(p)`, given for `M = R` where it is `R_T`.
    pub end_structure: Option<String>,
    /// `R_T` as blocks, e.g. `M₂(k)`.
    pub ring_structure: String,
    /// `table[i][j]` is the product `e_i e_j` of basis elements of `R_T`.
    pub ring_table: Vec<Vec<Vec<u32>>>,
    pub ring_one: Vec<u32>,
    pub theta_iso: bool,
}

pub fn report(eng: &Loaded, modules: Option<&QuiverModules>, name: &str, cogen: &str) -> Result<LocalizeReport, CliError> {
    let (q, m) = quiver_module(eng, modules, name)?;
    let t = TorsionClass::new(q.n(), parse_points(cogen, q.n())?)?;
    let tau = torsion_submodule(q, &m, t)?;
    let loc = localize_module(q, &m, t)?;
    let end_dim = injspec_core::quiver::hom_dim(&loc.local, &loc.local)?;
    let ring = q.localized_ring(t)?;
    let th = theta(q, &m, t)?;
    Ok(LocalizeReport {
        module: name.to_string(),
        cogen: t.cogen(),
        dims: m.dims().to_vec(),
        torsion_dims: tau.dims(),
        local_dims: loc.local.dims().to_vec(),
        end_dim,
        end_structure: if name == "R" {
            Some(describe_algebra(&ring.algebra, &format!("GF({})", q.field().p()), q.budget())?)
        } else {
            None
        },
        ring_structure: describe_algebra(&ring.algebra, "k", q.budget())?,
        ring_table: ring.algebra.table().to_vec(),
        ring_one: ring.algebra.one().to_vec(),
        theta_iso: th.is_iso,
    })
}

fn tuple(d: &[usize]) -> String {
    let items: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", items.join(","))
}

fn vector(v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("e{}", i + 1) } else { format!("{c}e{}", i + 1) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn render(r: &LocalizeReport, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(r).expect("localize report serializes") + "\n";
    }
    let mut s = String::new();
    writeln!(s, "{} dims {} at cogen {}", r.module, tuple(&r.dims), r.cogen.label()).unwrap();
    writeln!(s, "τ(M) dims {}", tuple(&r.torsion_dims)).unwrap();
    if r.local_dims.iter().all(|&d| d == 0) {
        writeln!(s, "Â = 0").unwrap();
    } else if let Some(e) = &r.end_structure {
        writeln!(s, "Â dim {}; End ≅ {e}, dim {}", tuple(&r.local_dims), r.end_dim).unwrap();
    } else {
        writeln!(s, "Â dim {}; End dim {}", tuple(&r.local_dims), r.end_dim).unwrap();
    }
    writeln!(s, "R_T dim {} = {}; 1 = {}", r.ring_table.len(), r.ring_structure, vector(&r.ring_one)).unwrap();
    for (i, row) in r.ring_table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.iter().any(|&c| c != 0) {
                writeln!(s, "  e{}·e{} = {}", i + 1, j + 1, vector(v)).unwrap();
            }
        }
    }
    writeln!(s, "θ iso: {}", if r.theta_iso { "yes" } else { "no" }).unwrap();
    s
}

pub fn run(eng: &Loaded, modules: Option<&QuiverModules>, name: &str, cogen: &str, json: bool) -> Result<String, CliError> {
    Ok(render(&report(eng, modules, name, cogen)?, json))
}
