//! The plain-text ring and module files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use injspec_core::linalg::{Field, Mat, Poly};
use injspec_core::pid::{Integers, Pid, PidModule, PolyRing};
use injspec_core::quiver::{Quiver, Rep, RepMap};
use injspec_core::{Budget, Error as CoreError};

use crate::error::CliError;

pub const RING_HEADER: &str = "injspec-ring v1";
pub const MODULE_HEADER: &str = "injspec-modules v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineKind {
    Quiver { vertices: usize, arrows: Vec<(String, usize, usize)> },
    Poly { max_degree: usize },
    Int { max_modulus: u64, trial_bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub field: Option<u32>,
    pub engine: EngineKind,
}

/// Non-blank lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn perr(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

fn num<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| perr(line, format!("bad {what} `{s}`")))
}

fn check_header(text: &str, header: &str) -> Result<(), CliError> {
    match lines(text).next() {
        Some((_, l)) if l == header => Ok(()),
        Some((n, l)) => Err(perr(n, format!("expected header `{header}`, found `{l}`"))),
        None => Err(CliError::Input(format!("empty file, expected header `{header}`"))),
    }
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        check_header(text, RING_HEADER)?;
        let mut field = None;
        let mut engine: Option<String> = None;
        let mut vertices = None;
        let mut arrows = Vec::new();
        let mut params: BTreeMap<&str, (usize, u64)> = BTreeMap::new();
        for (n, l) in lines(text).skip(1) {
            let words: Vec<&str> = l.split_whitespace().collect();
            let arity = |k: usize| {
                if words.len() == k + 1 {
                    Ok(())
                } else {
                    Err(perr(n, format!("`{}` takes {k} argument(s)", words[0])))
                }
            };
            match words[0] {
                "field" => {
                    arity(1)?;
                    field = Some(num::<u32>(n, words[1], "field modulus")?);
                }
                "engine" => {
                    arity(1)?;
                    if !matches!(words[1], "quiver" | "poly" | "int") {
                        return Err(perr(n, format!("unknown engine `{}`", words[1])));
                    }
                    engine = Some(words[1].to_string());
                }
                "vertices" => {
                    arity(1)?;
                    vertices = Some(num::<usize>(n, words[1], "vertex count")?);
                }
                "arrow" => {
                    arity(3)?;
                    arrows.push((n, words[1].to_string(), num(n, words[2], "vertex")?, num(n, words[3], "vertex")?));
                }
                k @ ("max_degree" | "max_modulus" | "trial_bound") => {
                    arity(1)?;
                    params.insert(k, (n, num(n, words[1], k)?));
                }
                k => return Err(perr(n, format!("unknown key `{k}`"))),
            }
        }
        let engine = engine.ok_or_else(|| CliError::Input("missing `engine` line".into()))?;
        let reject = |keys: &[&str]| -> Result<(), CliError> {
            for k in keys {
                if let Some((n, _)) = params.get(k) {
                    return Err(perr(*n, format!("`{k}` does not apply to engine {engine}")));
                }
            }
            Ok(())
        };
        let kind = match engine.as_str() {
            "quiver" => {
                reject(&["max_degree", "max_modulus", "trial_bound"])?;
                let vertices = vertices.ok_or_else(|| CliError::Input("quiver engine needs a `vertices` line".into()))?;
                if field.is_none() {
                    return Err(CliError::Input("quiver engine needs a `field` line".into()));
                }
                for (n, name, s, t) in &arrows {
                    for v in [s, t] {
                        if *v == 0 || *v > vertices {
                            return Err(perr(*n, format!("arrow {name}: vertex {v} out of range 1..={vertices}")));
                        }
                    }
                }
                EngineKind::Quiver { vertices, arrows: arrows.into_iter().map(|(_, a, s, t)| (a, s, t)).collect() }
            }
            _ if vertices.is_some() || !arrows.is_empty() => {
                return Err(CliError::Input(format!("quiver data given for engine {engine}")));
            }
            "poly" => {
                reject(&["max_modulus", "trial_bound"])?;
                if field.is_none() {
                    return Err(CliError::Input("poly engine needs a `field` line".into()));
                }
                EngineKind::Poly { max_degree: params.get("max_degree").map_or(3, |p| p.1 as usize) }
            }
            _ => {
                reject(&["max_degree"])?;
                if field.is_some() {
                    return Err(CliError::Input("int engine takes no `field` line".into()));
                }
                EngineKind::Int {
                    max_modulus: params.get("max_modulus").map_or(30, |p| p.1),
                    trial_bound: params.get("trial_bound").map_or(Integers::DEFAULT_TRIAL_BOUND, |p| p.1),
                }
            }
        };
        Ok(RingSpec { field, engine: kind })
    }

    pub fn write(&self) -> String {
        let mut s = format!("{RING_HEADER}\n");
        if let Some(p) = self.field {
            writeln!(s, "field {p}").unwrap();
        }
        match &self.engine {
            EngineKind::Quiver { vertices, arrows } => {
                writeln!(s, "engine quiver\nvertices {vertices}").unwrap();
                for (a, x, y) in arrows {
                    writeln!(s, "arrow {a} {x} {y}").unwrap();
                }
            }
            EngineKind::Poly { max_degree } => writeln!(s, "engine poly\nmax_degree {max_degree}").unwrap(),
            EngineKind::Int { max_modulus, trial_bound } => {
                writeln!(s, "engine int\nmax_modulus {max_modulus}\ntrial_bound {trial_bound}").unwrap()
            }
        }
        s
    }

    pub fn field(&self) -> Result<Field, CliError> {
        Field::new(self.field.unwrap_or(2)).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn quiver(&self) -> Result<Quiver, CliError> {
        match &self.engine {
            EngineKind::Quiver { vertices, arrows } => {
                let arrows: Vec<(&str, usize, usize)> = arrows.iter().map(|(a, s, t)| (a.as_str(), *s, *t)).collect();
                Quiver::new(*vertices, &arrows).map_err(|e| CliError::Input(e.to_string()))
            }
            _ => Err(CliError::Input("not a quiver engine".into())),
        }
    }
}

/// Budget from `INJSPEC_BUDGET`, or the default.
pub fn budget_from_env() -> Result<Budget, CliError> {
    match std::env::var("INJSPEC_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Budget::new)
            .map_err(|_| CliError::Input(format!("INJSPEC_BUDGET must be a positive integer, got `{v}`"))),
        Err(_) => Ok(Budget::default()),
    }
}

/// Named quiver modules and morphisms from a module file, with the source
/// line of each entry.
#[derive(Clone, Debug, Default)]
pub struct QuiverModules {
    pub modules: Vec<(String, Rep)>,
    pub morphisms: Vec<NamedMorphism>,
}

#[derive(Clone, Debug)]
pub struct NamedMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub line: usize,
    /// Components as written; not yet checked against the arrows.
    pub comps: Vec<Mat>,
}

impl NamedMorphism {
    /// Builds the map, checking every commuting square.
    pub fn build(&self, src: &Rep, tgt: &Rep) -> Result<RepMap, CoreError> {
        RepMap::new(src, tgt, self.comps.clone())
    }
}

/// Built-in module names: `R`, `0`, `S<i>`, `P<i>`, `E<i>`.
pub fn builtin(eng: &injspec_core::engine::QuiverEngine, name: &str) -> Option<Rep> {
    match name {
        "R" => return Some(eng.regular().clone()),
        "0" => return Some(eng.zero_module()),
        _ => {}
    }
    let (kind, idx) = name.split_at(1);
    let i: usize = idx.parse().ok()?;
    if i == 0 || i > eng.n() {
        return None;
    }
    match kind {
        "S" => Some(eng.simple(i - 1).clone()),
        "P" => eng.projective(i - 1).ok(),
        "E" => Some(eng.injective(i - 1).clone()),
        _ => None,
    }
}

fn is_builtin_name(name: &str) -> bool {
    name == "R" || name == "0" || {
        let (k, i) = name.split_at(1);
        matches!(k, "S" | "P" | "E") && !i.is_empty() && i.chars().all(|c| c.is_ascii_digit())
    }
}

fn read_rows<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    field: Field,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Mat, CliError> {
    let mut m = Mat::zeros(field, rows, cols);
    for r in 0..rows {
        let (n, l) = it.next().ok_or_else(|| CliError::Input(format!("{what}: file ends inside a matrix")))?;
        let entries: Vec<i64> = l.split_whitespace().map(|w| num(n, w, "matrix entry")).collect::<Result<_, _>>()?;
        if entries.len() != cols {
            return Err(perr(n, format!("{what}: row has {} entries, expected {cols}", entries.len())));
        }
        for (c, &e) in entries.iter().enumerate() {
            m.set(r, c, field.reduce(e));
        }
    }
    Ok(m)
}

impl QuiverModules {
    /// Parses a module file. Shapes are checked here; commuting squares of
    /// morphisms are left to [`NamedMorphism::build`].
    pub fn parse(text: &str, eng: &injspec_core::engine::QuiverEngine) -> Result<Self, CliError> {
        check_header(text, MODULE_HEADER)?;
        let field = eng.field();
        let q: &Arc<Quiver> = eng.quiver();
        let mut out = QuiverModules::default();
        let mut it = lines(text).skip(1).peekable();
        while let Some((n, l)) = it.next() {
            let words: Vec<&str> = l.split_whitespace().collect();
            match words.as_slice() {
                ["module", name] => {
                    if is_builtin_name(name) || out.get(name).is_some() {
                        return Err(perr(n, format!("module name `{name}` is reserved or repeated")));
                    }
                    let (dn, dl) = it.next().ok_or_else(|| perr(n, "module without `dims`"))?;
                    let dw: Vec<&str> = dl.split_whitespace().collect();
                    if dw.first() != Some(&"dims") || dw.len() != q.vertex_count() + 1 {
                        return Err(perr(dn, format!("expected `dims` with {} entries", q.vertex_count())));
                    }
                    let dims: Vec<usize> = dw[1..].iter().map(|w| num(dn, w, "dimension")).collect::<Result<_, _>>()?;
                    let mut maps: Vec<Option<Mat>> = vec![None; q.arrows().len()];
                    loop {
                        let (mn, ml) = it.next().ok_or_else(|| perr(n, format!("module {name} has no `end`")))?;
                        let mw: Vec<&str> = ml.split_whitespace().collect();
                        match mw.as_slice() {
                            ["end"] => break,
                            ["map", a] => {
                                let ai = q.arrow_index(a).ok_or_else(|| perr(mn, format!("unknown arrow `{a}`")))?;
                                if maps[ai].is_some() {
                                    return Err(perr(mn, format!("arrow `{a}` given twice")));
                                }
                                let arrow = &q.arrows()[ai];
                                let what = format!("module {name}, map {a}");
                                maps[ai] = Some(read_rows(&mut it, field, dims[arrow.target], dims[arrow.source], &what)?);
                            }
                            _ => return Err(perr(mn, format!("expected `map <arrow>` or `end`, found `{ml}`"))),
                        }
                    }
                    let maps = maps
                        .into_iter()
                        .zip(q.arrows())
                        .map(|(m, a)| m.unwrap_or_else(|| Mat::zeros(field, dims[a.target], dims[a.source])))
                        .collect();
                    let rep = Rep::new(field, q.clone(), dims, maps).map_err(|e| perr(n, e))?;
                    out.modules.push((name.to_string(), rep));
                }
                ["morphism", name, src, tgt] => {
                    let s = out.resolve(eng, src).ok_or_else(|| perr(n, format!("unknown module `{src}`")))?;
                    let t = out.resolve(eng, tgt).ok_or_else(|| perr(n, format!("unknown module `{tgt}`")))?;
                    let mut comps: Vec<Option<Mat>> = vec![None; q.vertex_count()];
                    loop {
                        let (cn, cl) = it.next().ok_or_else(|| perr(n, format!("morphism {name} has no `end`")))?;
                        let cw: Vec<&str> = cl.split_whitespace().collect();
                        match cw.as_slice() {
                            ["end"] => break,
                            ["comp", v] => {
                                let v: usize = num(cn, v, "vertex")?;
                                if v == 0 || v > q.vertex_count() || comps[v - 1].is_some() {
                                    return Err(perr(cn, format!("bad or repeated vertex {v}")));
                                }
                                let what = format!("morphism {name}, comp {v}");
                                comps[v - 1] = Some(read_rows(&mut it, field, t.dim(v - 1), s.dim(v - 1), &what)?);
                            }
                            _ => return Err(perr(cn, format!("expected `comp <vertex>` or `end`, found `{cl}`"))),
                        }
                    }
                    let comps = comps
                        .into_iter()
                        .enumerate()
                        .map(|(v, c)| c.unwrap_or_else(|| Mat::zeros(field, t.dim(v), s.dim(v))))
                        .collect();
                    out.morphisms.push(NamedMorphism {
                        name: name.to_string(),
                        src: src.to_string(),
                        tgt: tgt.to_string(),
                        line: n,
                        comps,
                    });
                }
                _ => return Err(perr(n, format!("expected `module` or `morphism`, found `{l}`"))),
            }
        }
        Ok(out)
    }

    pub fn get(&self, name: &str) -> Option<&Rep> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn resolve(&self, eng: &injspec_core::engine::QuiverEngine, name: &str) -> Option<Rep> {
        self.get(name).cloned().or_else(|| builtin(eng, name))
    }
}

fn write_rows(s: &mut String, m: &Mat) {
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
}

/// Writes modules (and no morphisms) so that [`QuiverModules::parse`] reads
/// them back unchanged. Zero maps are omitted.
pub fn write_quiver_modules(modules: &[(String, Rep)]) -> String {
    let mut s = format!("{MODULE_HEADER}\n");
    for (name, m) in modules {
        let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
        writeln!(s, "module {name}\ndims {}", dims.join(" ")).unwrap();
        for (a, map) in m.quiver().arrows().iter().zip(m.maps()) {
            if !map.is_zero() {
                writeln!(s, "map {}", a.name).unwrap();
                write_rows(&mut s, map);
            }
        }
        writeln!(s, "end").unwrap();
    }
    s
}

pub fn write_morphism(s: &mut String, name: &str, src: &str, tgt: &str, f: &[Mat]) {
    writeln!(s, "morphism {name} {src} {tgt}").unwrap();
    for (v, c) in f.iter().enumerate() {
        if !c.is_zero() {
            writeln!(s, "comp {}", v + 1).unwrap();
            write_rows(s, c);
        }
    }
    writeln!(s, "end").unwrap();
}

/// Named PID modules `R^r ⊕ ⊕ R/(d_i)`.
#[derive(Clone, Debug)]
pub struct PidModules<E> {
    pub modules: Vec<(String, PidModule<E>)>,
}

impl<E: Clone + std::fmt::Display> PidModules<E> {
    pub fn parse<R: Pid<Elem = E>>(text: &str, ring: &R) -> Result<Self, CliError> {
        check_header(text, MODULE_HEADER)?;
        let mut modules = Vec::new();
        let mut it = lines(text).skip(1);
        while let Some((n, l)) = it.next() {
            let words: Vec<&str> = l.split_whitespace().collect();
            let ["module", name] = words.as_slice() else {
                return Err(perr(n, format!("expected `module <name>`, found `{l}`")));
            };
            if *name == "R" || modules.iter().any(|(m, _)| m == name) {
                return Err(perr(n, format!("module name `{name}` is reserved or repeated")));
            }
            let mut free = 0;
            let mut torsion = Vec::new();
            loop {
                let (mn, ml) = it.next().ok_or_else(|| perr(n, format!("module {name} has no `end`")))?;
                if ml == "end" {
                    break;
                }
                if let Some(r) = ml.strip_prefix("free ") {
                    free = num(mn, r.trim(), "free rank")?;
                } else if let Some(r) = ml.strip_prefix("torsion ") {
                    for f in r.split(';').map(str::trim).filter(|f| !f.is_empty()) {
                        torsion.push(ring.parse(f).map_err(|e| perr(mn, e))?);
                    }
                } else {
                    return Err(perr(mn, format!("expected `free`, `torsion` or `end`, found `{ml}`")));
                }
            }
            modules.push((name.to_string(), PidModule::new(ring, free, torsion).map_err(|e| perr(n, e))?));
        }
        Ok(PidModules { modules })
    }

    pub fn resolve(&self, name: &str) -> Option<PidModule<E>> {
        if name == "R" {
            return Some(PidModule::free(1));
        }
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m.clone())
    }
}

pub fn write_pid_modules<E: std::fmt::Display>(modules: &[(String, PidModule<E>)]) -> String {
    let mut s = format!("{MODULE_HEADER}\n");
    for (name, m) in modules {
        writeln!(s, "module {name}").unwrap();
        if m.free_rank > 0 {
            writeln!(s, "free {}", m.free_rank).unwrap();
        }
        if !m.torsion.is_empty() {
            let t: Vec<String> = m.torsion.iter().map(|d| d.to_string()).collect();
            writeln!(s, "torsion {}", t.join("; ")).unwrap();
        }
        writeln!(s, "end").unwrap();
    }
    s
}

/// The concrete PID of a ring file.
pub fn poly_ring(spec: &RingSpec) -> Result<PolyRing, CliError> {
    Ok(PolyRing::new(spec.field()?))
}

pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly, CliError> {
    ring.parse(text).map_err(|e| CliError::Input(e.to_string()))
}
