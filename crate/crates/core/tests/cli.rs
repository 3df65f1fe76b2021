use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qdesign::io::save_bipartite;
use qdesign::quantum::{seeded_rng, DensityMatrix, StateVector};
use qdesign::steering::BipartiteDensityMatrix;

fn qdesign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdesign")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_builtin_designs() {
    assert_eq!(qdesign(&["verify", "--design", "octahedron", "--t", "3"]).status.code(), Some(0));
    assert_eq!(
        qdesign(&["verify", "--design", "icosahedron", "-s", "5", "--method", "operator"]).status.code(),
        Some(0)
    );
    let o = qdesign(&["verify", "--design", "octahedron", "--t", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("residual = 8.333e-3"), "{}", stdout(&o));
}

#[test]
fn verify_reports_bad_vector() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"dimension": 2, "strength": 2, "vectors": [[[1,0],[0,0]], [[0,0],[1,0]], [[0.9,0],[0,0]]]}"#)
        .unwrap();
    let o = qdesign(&["verify", "--design", path_str(&bad), "--t", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("vector 2"), "{}", stderr(&o));
}

#[test]
fn sweep_is_byte_for_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = qdesign(&[
            "sweep",
            "--design",
            "octahedron",
            "--points",
            "200",
            "--alphas",
            "3,6,inf",
            "--output",
            path_str(out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "beta_bar,bound_prior,bound_prop1,bound_prop1_nr,bound_prop2_alpha_3,bound_prop2_alpha_6,bound_prop2_alpha_inf"
    );
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((first[0] - 1.0 / 36.0).abs() < 1e-12);
    assert!((first[2] - 6f64.ln()).abs() < 1e-10);
    assert_eq!(text.lines().count(), 201);
}

#[test]
fn sweep_json_and_mub_columns() {
    let o = qdesign(&["sweep", "--design", "octahedron", "--grouping", "mub", "--points", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    for r in rows {
        let gap = r["bound_purity_mub"].as_f64().unwrap() - r["bound_prop1"].as_f64().unwrap();
        assert!(gap.abs() < 1e-12);
    }
}

#[test]
fn sweep_with_grouping_file_and_bad_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("groups.json");
    fs::write(&g, r#"{"groups": [[0,1],[2,3],[4,5]]}"#).unwrap();
    let o = qdesign(&["sweep", "--design", "octahedron", "--grouping", path_str(&g), "--points", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().ends_with("bound_purity_mub"));

    fs::write(&g, r#"{"groups": [[0,2],[1,3],[4,5]]}"#).unwrap();
    let o = qdesign(&["sweep", "--design", "octahedron", "--grouping", path_str(&g)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("block 0"), "{}", stderr(&o));

    let unwritable = dir.path().join("missing").join("out.csv");
    let o = qdesign(&["sweep", "--design", "octahedron", "--output", path_str(&unwritable)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audits_find_no_violations() {
    let o = qdesign(&["audit", "--design", "octahedron", "--samples", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("violations: 0"));
    let o = qdesign(&["audit", "--design", "icosidodecahedron", "--samples", "1000", "--alphas", "5,inf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("violations: 0"));
}

#[test]
fn audit_logs_saturation_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = qdesign(&[
            "audit",
            "--design",
            "icosahedron",
            "--samples",
            "50",
            "--seed",
            "3",
            "--include-maximally-mixed",
            "--format",
            "json",
            "--output",
            path_str(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["violations"], 0);
    assert_eq!(v["saturation_events"][0], 0);
}

fn write_state(dir: &Path, name: &str, state: &BipartiteDensityMatrix) -> String {
    let path = dir.join(name);
    save_bipartite(state, &path).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn steering_files() {
    let dir = tempfile::tempdir().unwrap();
    let up = DensityMatrix::from_pure(&StateVector::basis(2, 0).unwrap());
    let mixed = DensityMatrix::maximally_mixed(2).unwrap();
    let product = write_state(dir.path(), "product.json", &BipartiteDensityMatrix::product(&up, &mixed).unwrap());
    let bell = write_state(dir.path(), "bell.json", &BipartiteDensityMatrix::maximally_entangled(2).unwrap());
    let mut rng = seeded_rng(4);
    let sep = write_state(dir.path(), "sep.json", &BipartiteDensityMatrix::random_separable(2, 3, &mut rng).unwrap());

    for file in [&product, &sep] {
        let o = qdesign(&["steering", "--state", file, "--alphas", "3,5,inf"]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert_eq!(out.matches("satisfied").count(), 4, "{out}");
        assert!(!out.contains("VIOLATED"));
    }
    let o = qdesign(&["steering", "--state", &bell, "--design", "octahedron", "--grouping", "mub"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("VIOLATED").count(), 2, "{}", stdout(&o));

    let o = qdesign(&["steering", "--state", &bell, "--mode", "maxprob", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["satisfied"], false);

    let broken = dir.path().join("broken.json");
    fs::write(&broken, r#"{"dimensions": [2, 2], "entries": [[[1, 0], [0, 0]]]}"#).unwrap();
    assert_eq!(qdesign(&["steering", "--state", path_str(&broken)]).status.code(), Some(2));
}
