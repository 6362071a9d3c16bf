use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use injspec_cli::format::{write_morphism, write_pid_modules, write_quiver_modules, EngineKind, PidModules, QuiverModules, RingSpec};
use injspec_core::engine::QuiverEngine;
use injspec_core::linalg::Field;
use injspec_core::pid::{Pid, PidModule, PolyRing};
use injspec_core::quiver::{all_reps, hom_basis, Quiver};
use injspec_core::Budget;

fn ring(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../rings").join(name)
}

fn schema(name: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn injspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_injspec")).args(args).env_remove("INJSPEC_BUDGET").output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = injspec(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn validate(schema_name: &str, text: &str) {
    let instance: serde_json::Value = serde_json::from_str(text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema(schema_name)).unwrap();
    let msgs: Vec<String> = match compiled.validate(&instance) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{schema_name}: {}", msgs.join("; "));
}

#[test]
fn a2_spectrum_summary() {
    let out = run_ok(&["spectrum", path(&ring("a2.ring"))]);
    assert!(out.starts_with("2 points; discrete; T0: yes; ziegler_sober: yes"), "{out}");
}

#[test]
fn poly_spectrum_is_symbolic() {
    let out = run_ok(&["spectrum", path(&ring("gf2x.ring"))]);
    assert!(out.contains("generic point E(R)"), "{out}");
    assert!(out.contains("T0: yes; ziegler_sober: yes"), "{out}");
    assert!(out.contains("6⤳1"), "{out}");
}

#[test]
fn spectrum_json_matches_schema() {
    for r in ["a2.ring", "a3.ring", "gf2x.ring", "gf3x.ring", "z.ring"] {
        let out = run_ok(&["spectrum", path(&ring(r)), "--json"]);
        validate("spectrum.schema.json", &out);
    }
    let v: serde_json::Value = serde_json::from_str(&run_ok(&["spectrum", path(&ring("a2.ring")), "--json"])).unwrap();
    assert_eq!(v["points"][1]["dims"], serde_json::json!([1, 1]));
    assert_eq!(v["closed_basis"], serde_json::json!([[1], [2]]));
}

#[test]
fn schema_rejects_a_broken_export() {
    let schema = jsonschema::JSONSchema::compile(&schema("spectrum.schema.json")).unwrap();
    let bad = serde_json::json!({"points": [{"id": 0, "socle_vertex": 1, "dims": [1]}], "closed_basis": [], "specialization": [], "report": {}});
    assert!(!schema.is_valid(&bad));
}

#[test]
fn dot_is_a_digraph() {
    for r in ["a3.ring", "gf2x.ring"] {
        let out = run_ok(&["spectrum", path(&ring(r)), "--dot"]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.first(), Some(&"digraph injspec {"));
        assert_eq!(lines.last(), Some(&"}"));
        for l in &lines[1..lines.len() - 1] {
            let l = l.trim();
            let node = l.starts_with('p') && l.contains(" [label=\"") && l.ends_with("\"];");
            let edge = l.starts_with('p') && l.contains(" -> p") && l.ends_with(';') && !l.contains('[');
            assert!(node || edge || l.starts_with("//"), "bad DOT line `{l}`");
        }
    }
    assert!(run_ok(&["spectrum", path(&ring("gf2x.ring")), "--dot"]).contains("p6 -> p1;"));
}

#[test]
fn malformed_ring_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.ring");
    std::fs::write(&f, "injspec-ring v1\nfield 2\nengine quiver\nvertices 2\narrow a 1 3\n").unwrap();
    let out = injspec(&["spectrum", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));
    std::fs::write(&f, "field 2\n").unwrap();
    assert_eq!(injspec(&["spectrum", f.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(injspec(&["spectrum", "/nonexistent/ring"]).status.code(), Some(2));
    assert_eq!(injspec(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn localize_examples() {
    let a2 = ring("a2.ring");
    let out = run_ok(&["localize", path(&a2), "--cogen", "2"]);
    assert!(out.contains("Â dim (2,2); End ≅ M₂(GF(2)), dim 4"), "{out}");
    assert!(out.contains("θ iso: yes"));
    let out = run_ok(&["localize", path(&a2), "--cogen", "1"]);
    assert!(out.contains("Â dim (1,0); End ≅ GF(2), dim 1"), "{out}");
    let out = run_ok(&["localize", path(&a2), "--module", "S1", "--cogen", "2"]);
    assert!(out.contains("Â = 0"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&run_ok(&["localize", path(&a2), "--cogen", "2", "--json"])).unwrap();
    assert_eq!(json["ring_table"].as_array().unwrap().len(), 4);
}

#[test]
fn localize_module_from_file() {
    let out = run_ok(&["localize", path(&ring("a2.ring")), "--modules", path(&ring("a2.modules")), "--module", "N", "--cogen", "1"]);
    assert!(out.contains("Â dim (1,0)"), "{out}");
    assert_eq!(injspec(&["localize", path(&ring("a2.ring")), "--module", "Q", "--cogen", "1"]).status.code(), Some(2));
}

#[test]
fn sheaf_examples() {
    let a2 = ring("a2.ring");
    assert!(run_ok(&["sheaf", path(&a2), "--global"]).contains("Γ(O) dim 5 = k ⊕ M₂(k)"));
    assert!(run_ok(&["sheaf", path(&a2), "--open", "{E2}"]).contains("O({E2}) dim 4 = M₂(k)"));
    assert!(run_ok(&["sheaf", path(&a2), "--open", "{}"]).contains("dim 0 = 0"));
    let out = run_ok(&["sheaf", path(&a2), "--module", "P1"]);
    assert!(out.contains("Θ: morphism yes; iso yes"), "{out}");
    assert!(run_ok(&["sheaf", path(&ring("gf2x.ring")), "--global"]).contains("Γ(O) = GF(2)[x]"));
    assert!(run_ok(&["sheaf", path(&ring("gf3x.ring")), "--global"]).contains("Γ(O) = GF(3)[x]"));
    let out = run_ok(&["sheaf", path(&ring("gf2x.ring")), "--open", "x"]);
    assert!(out.contains("GF(2)[x][1/(x)]"), "{out}");
}

#[test]
fn check_passes_and_is_deterministic() {
    for r in ["a2.ring", "a3.ring", "gf2x.ring", "z.ring"] {
        let first = run_ok(&["check", path(&ring(r)), "--suite", "all"]);
        validate("check.schema.json", &first);
        let v: serde_json::Value = serde_json::from_str(&first).unwrap();
        assert_eq!(v["passed"], true, "{r}");
        assert_eq!(first, run_ok(&["check", path(&ring(r)), "--suite", "all"]), "{r}");
    }
    let v: serde_json::Value =
        serde_json::from_str(&run_ok(&["check", path(&ring("a2.ring")), "--suite", "torsion"])).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
}

#[test]
fn check_with_modules_file_passes() {
    let out = run_ok(&["check", path(&ring("a2.ring")), "--modules", path(&ring("a2.modules"))]);
    assert!(out.contains("\"morphism proj\""));
}

#[test]
fn corrupted_module_file_fails_check_with_invariant() {
    let out = injspec(&["check", path(&ring("a2.ring")), "--modules", path(&ring("a2_corrupted.modules"))]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["failures"], serde_json::json!(["modules/morphism bad"]));
    assert_eq!(v["suites"][0]["checks"][1]["invariant"], "commuting square for arrow a");
}

#[test]
fn budget_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_injspec"))
        .args(["check", path(&ring("a3.ring"))])
        .env("INJSPEC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn unknown_ring_keys_are_rejected() {
    let e = RingSpec::parse("injspec-ring v1\nfield 2\nengine poly\nvertices 2\n").unwrap_err();
    assert_eq!(e.exit_code(), 2);
    let e = RingSpec::parse("injspec-ring v1\nengine int\nmax_degree 2\n").unwrap_err();
    assert!(e.to_string().contains("line 3"), "{e}");
    let e = RingSpec::parse("injspec-ring v1\nfield 2\nengine quiver\nvertices 2\ncolour red\n").unwrap_err();
    assert!(e.to_string().contains("line 5: unknown key `colour`"), "{e}");
}

#[test]
fn ring_files_round_trip() {
    for r in ["a2.ring", "a3.ring", "gf2x.ring", "gf3x.ring", "z.ring"] {
        let spec = RingSpec::parse(&std::fs::read_to_string(ring(r)).unwrap()).unwrap();
        assert_eq!(RingSpec::parse(&spec.write()).unwrap(), spec);
    }
    let spec = RingSpec::parse(&std::fs::read_to_string(ring("a3.ring")).unwrap()).unwrap();
    assert_eq!(spec.engine, EngineKind::Quiver { vertices: 3, arrows: vec![("a".into(), 1, 2), ("b".into(), 2, 3)] });
}

#[test]
fn every_small_rep_round_trips() {
    let cases = [
        (2, Quiver::new(3, &[("a", 1, 2), ("b", 2, 3)]).unwrap(), 3),
        (3, Quiver::new(2, &[("a", 1, 2)]).unwrap(), 3),
        (2, Quiver::new(3, &[("a", 1, 3), ("b", 2, 3), ("c", 1, 2)]).unwrap(), 3),
        (2, Quiver::new(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap(), 2),
    ];
    for (p, q, max_total) in cases {
        let eng = QuiverEngine::new(Field::new(p).unwrap(), q, Budget::default()).unwrap();
        let reps = all_reps(eng.field(), eng.quiver(), max_total, eng.budget()).unwrap();
        let named: Vec<(String, _)> = reps.into_iter().enumerate().map(|(i, r)| (format!("M{i}"), r)).collect();
        let text = write_quiver_modules(&named);
        let back = QuiverModules::parse(&text, &eng).unwrap();
        assert_eq!(back.modules.len(), named.len());
        for ((n1, r1), (n2, r2)) in named.iter().zip(&back.modules) {
            assert_eq!(n1, n2);
            assert_eq!(r1, r2);
        }
    }
}

#[test]
fn morphisms_round_trip() {
    let eng = QuiverEngine::linear(2, 3).unwrap();
    let (e1, p1) = (eng.injective(0).clone(), eng.projective(0).unwrap());
    let mut text = write_quiver_modules(&[]);
    let maps = hom_basis(&p1, &e1).unwrap();
    for (i, f) in maps.iter().enumerate() {
        write_morphism(&mut text, &format!("f{i}"), "P1", "E1", f.comps());
    }
    let back = QuiverModules::parse(&text, &eng).unwrap();
    assert_eq!(back.morphisms.len(), maps.len());
    for (m, f) in back.morphisms.iter().zip(&maps) {
        assert_eq!(&m.build(&p1, &e1).unwrap(), f);
    }
}

#[test]
fn module_file_errors_carry_lines() {
    let eng = QuiverEngine::linear(2, 2).unwrap();
    let e = QuiverModules::parse("injspec-modules v1\nmodule M\ndims 1 1\nmap a1\n1 1\nend\n", &eng).unwrap_err();
    assert!(e.to_string().contains("line 5"), "{e}");
    let e = QuiverModules::parse("injspec-modules v1\nmodule S1\ndims 1 0\nend\n", &eng).unwrap_err();
    assert!(e.to_string().contains("reserved"), "{e}");
    let e = QuiverModules::parse("injspec-modules v1\nmodule M\ndims 1 1\nmap z\nend\n", &eng).unwrap_err();
    assert!(e.to_string().contains("unknown arrow"), "{e}");
}

#[test]
fn pid_modules_round_trip() {
    let r = PolyRing::new(Field::new(3).unwrap());
    let mods = vec![
        ("A".to_string(), PidModule::new(&r, 2, vec![r.parse("x^2+1").unwrap(), r.parse("x").unwrap()]).unwrap()),
        ("B".to_string(), PidModule::free(1)),
        ("C".to_string(), PidModule::cyclic(&r, r.parse("2x+1").unwrap()).unwrap()),
    ];
    let text = write_pid_modules(&mods);
    let back = PidModules::parse(&text, &r).unwrap();
    assert_eq!(back.modules, mods);
    assert_eq!(back.resolve("R"), Some(PidModule::free(1)));
}
