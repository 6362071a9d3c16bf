use std::fmt::Write as _;

use serde::Serialize;

use injspec_core::pid::{Pid, PidModule};
use injspec_core::points::PointSet;
use injspec_core::spectrum::{injective_spectrum, poly_family, FiniteSpace, PidSpectrum, TopologyReport};

use crate::error::CliError;
use crate::loaded::{int_family, Loaded};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointExport {
    pub id: usize,
    /// `null` for PID points.
    pub socle_vertex: Option<usize>,
    /// `null` for PID points.
    pub dims: Option<Vec<usize>>,
    pub label: String,
}

/// The exported spectrum. Point ids are 1-based throughout.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumExport {
    pub ring: String,
    pub points: Vec<PointExport>,
    pub closed_basis: Vec<PointSet>,
    pub specialization: Vec<[usize; 2]>,
    pub report: TopologyReport,
    #[serde(skip)]
    pub discrete: bool,
    #[serde(skip)]
    pub summary: Option<String>,
}

fn specialization(space: &FiniteSpace) -> Vec<[usize; 2]> {
    space.specialization_pairs().into_iter().map(|(x, y)| [x + 1, y + 1]).collect()
}

pub fn export(eng: &Loaded) -> Result<SpectrumExport, CliError> {
    match eng {
        Loaded::Quiver(eng) => {
            let spec = injective_spectrum(eng)?;
            let zar = spec.zariski(eng, &[])?;
            spec.specialization_order(eng)?;
            let points = spec
                .points
                .iter()
                .map(|p| PointExport {
                    id: p.id,
                    socle_vertex: Some(p.socle_vertex),
                    dims: Some(p.dims.clone()),
                    label: format!("E{}", p.id),
                })
                .collect();
            Ok(SpectrumExport {
                ring: format!("GF({})Q, {} vertices", eng.field().p(), eng.n()),
                points,
                closed_basis: spec.closed_basis(&[])?,
                specialization: specialization(&zar),
                report: spec.topology_report(eng)?,
                discrete: zar.is_discrete(),
                summary: None,
            })
        }
        Loaded::Poly { ring, max_degree, budget } => {
            let family = poly_family(ring, *max_degree);
            pid_export(ring, &family, *budget, format!("family R, R/(f) with f monic, deg f ≤ {max_degree}"))
        }
        Loaded::Int { ring, max_modulus, budget } => {
            let family = int_family(*max_modulus);
            pid_export(ring, &family, *budget, format!("family R, R/(m) with 2 ≤ m ≤ {max_modulus}"))
        }
    }
}

fn pid_export<R: Pid>(
    ring: &R,
    family: &[PidModule<R::Elem>],
    budget: injspec_core::Budget,
    family_label: String,
) -> Result<SpectrumExport, CliError> {
    let spec = PidSpectrum::new(ring.clone());
    let spaces = spec.family_spaces(family, budget)?;
    let points: Vec<PointExport> = spaces
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| PointExport { id: i + 1, socle_vertex: None, dims: None, label: p.to_string() })
        .collect();
    let mut closed_basis = Vec::new();
    for m in family {
        let c = spec.basic_closed(m)?;
        let set = PointSet::from_points((0..spaces.points.len()).filter(|&i| c.contains(&spaces.points[i])));
        if !closed_basis.contains(&set) {
            closed_basis.push(set);
        }
    }
    closed_basis.sort();
    let closed = spaces.points.len() - 1;
    let summary = format!(
        "{}: generic point E(R) and closed points E(R/(p)), p prime; {family_label}: {} points ({closed} closed + generic)",
        ring.name(),
        spaces.points.len()
    );
    Ok(SpectrumExport {
        ring: ring.name(),
        points,
        closed_basis,
        specialization: specialization(&spaces.zariski),
        report: spec.topology_report(family, budget)?,
        discrete: spaces.zariski.is_discrete(),
        summary: Some(summary),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render(x: &SpectrumExport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(x).expect("spectrum export serializes") + "\n",
        Format::Dot => {
            let mut s = String::from("digraph injspec {\n");
            for p in &x.points {
                let dims = p.dims.as_ref().map(|d| format!(" {d:?}")).unwrap_or_default();
                writeln!(s, "  p{} [label=\"{}{}\"];", p.id, p.label.replace('"', "'"), dims).unwrap();
            }
            for [a, b] in &x.specialization {
                if a != b {
                    writeln!(s, "  p{a} -> p{b};").unwrap();
                }
            }
            for (i, c) in x.closed_basis.iter().enumerate() {
                let ids: Vec<String> = c.iter().map(|j| format!("p{}", j + 1)).collect();
                writeln!(s, "  // closed basis set {}: {{{}}}", i + 1, ids.join(", ")).unwrap();
            }
            s.push_str("}\n");
            s
        }
        Format::Text => {
            let r = &x.report;
            let mut s = String::new();
            if let Some(sum) = &x.summary {
                writeln!(s, "{sum}").unwrap();
            }
            writeln!(
                s,
                "{} points; {}; T0: {}; ziegler_sober: {}; duality: {}; spectral: {}",
                x.points.len(),
                if x.discrete { "discrete" } else { "not discrete" },
                yes(r.t0),
                yes(r.ziegler_sober),
                yes(r.duality),
                yes(r.spectral)
            )
            .unwrap();
            for p in &x.points {
                match &p.dims {
                    Some(d) => writeln!(s, "  {}: socle S{}, dims {d:?}", p.label, p.socle_vertex.unwrap_or(0)).unwrap(),
                    None => writeln!(s, "  {}", p.label).unwrap(),
                }
            }
            let basis: Vec<String> = x.closed_basis.iter().map(|c| c.label()).collect();
            writeln!(s, "closed basis: {}", basis.join(" ")).unwrap();
            let spec: Vec<String> =
                x.specialization.iter().filter(|[a, b]| a != b).map(|[a, b]| format!("{a}⤳{b}")).collect();
            writeln!(s, "specialization: {}", if spec.is_empty() { "trivial".into() } else { spec.join(" ") }).unwrap();
            s
        }
    }
}

/// Runs the command; an unmet topology check is an invariant failure.
pub fn run(eng: &Loaded, format: Format) -> Result<String, CliError> {
    let x = export(eng)?;
    if !x.report.all() {
        return Err(CliError::Invariant {
            invariant: "spectrum topology".into(),
            detail: format!("{:?}", x.report),
        });
    }
    Ok(render(&x, format))
}
