use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gwzero_core::{bundled, CorrelatorTable, TableFormat};

fn gwzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwzero")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p2_json() -> String {
    bundled::p2().to_json()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_bundled_and_files() {
    for name in bundled::NAMES {
        let o = gwzero(&["validate", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p2.json", &p2_json());
    assert_eq!(gwzero(&["validate", &path]).status.code(), Some(0));
}

#[test]
fn validate_rejects_bad_rational() {
    let dir = tempfile::tempdir().unwrap();
    let text = p2_json().replacen("\"1/1\"", "\"1/0\"", 1);
    let path = write(dir.path(), "bad.json", &text);
    let o = gwzero(&["validate", &path]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn validate_reports_degenerate_pairing() {
    let dir = tempfile::tempdir().unwrap();
    let mut raw = gwzero_core::target::RawTarget::from(&bundled::p2());
    for q in raw.pairing[1].iter_mut() {
        q.0 = gwzero_core::algebra::int(0);
    }
    let path = write(dir.path(), "deg.json", &to_file(&raw));
    let o = gwzero(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("pairing degenerate"), "{}", stdout(&o));
}

fn to_file(raw: &gwzero_core::target::RawTarget) -> String {
    raw.clone().into_target().unwrap().to_json()
}

#[test]
fn reconstruct_plane_cubics() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let o = gwzero(&["reconstruct", "p2", "--max-c1", "15", "--max-n", "14", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("seeds"), "{}", stdout(&o));
    let table = CorrelatorTable::import(&fs::read_to_string(&out).unwrap(), TableFormat::Csv).unwrap();
    let p2 = bundled::p2();
    let key = gwzero_core::CorrelatorKey::parse(&p2, "3:2,2,2,2,2,2,2,2").unwrap();
    assert_eq!(table.get(&key).unwrap().value, gwzero_core::algebra::int(12));
}

#[test]
fn reconstruct_names_missing_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let mut raw = gwzero_core::target::RawTarget::from(&bundled::p2());
    raw.seeds.clear();
    let path = write(dir.path(), "noseed.json", &to_file(&raw));
    let o = gwzero(&["reconstruct", &path, "--max-c1", "15", "--max-n", "14"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("1:1,2,2") && err.contains("⟨H,H2,H2⟩_1"), "{err}");
}

#[test]
fn reconstruct_p1_obeys_selection() {
    let o = gwzero(&["reconstruct", "p1", "--max-c1", "10", "--max-n", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let table = CorrelatorTable::import(&stdout(&o), TableFormat::Json).unwrap();
    let p1 = bundled::p1();
    assert!(!table.is_empty());
    for (k, e) in table.iter() {
        if e.value != gwzero_core::algebra::int(0) {
            let total: gwzero_core::Rational = k.classes.iter().map(|&c| p1.st_degree(c)).sum();
            assert_eq!(total, p1.selection_degree(k.n(), &k.beta).unwrap(), "{k}");
        }
    }
}

#[test]
fn reconstruct_output_is_deterministic() {
    let run = |jobs: &str| stdout(&gwzero(&["reconstruct", "p1xp1", "--max-c1", "10", "--max-n", "8", "--jobs", jobs]));
    let a = run("1");
    assert!(!a.is_empty());
    assert_eq!(a, run("4"));
}

#[test]
fn reconstruct_trace() {
    let o = gwzero(&["reconstruct", "p2", "--max-c1", "6", "--max-n", "5", "--trace", "2:2,2,2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("[WDVV"), "{}", stderr(&o));
}

#[test]
fn wdvv_passes_and_catches_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    let o = gwzero(&["reconstruct", "p2", "--max-c1", "12", "--max-n", "10", "-o", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = gwzero(&["wdvv", "p2", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let text = fs::read_to_string(&good).unwrap().replace("12/1,reconstructed", "13/1,reconstructed");
    let bad = write(dir.path(), "bad.csv", &text);
    let o = gwzero(&["wdvv", "p2", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(i,j,h,l)"), "{}", stderr(&o));

    let empty = write(dir.path(), "empty.csv", "beta,classes,value,provenance\n");
    let o = gwzero(&["wdvv", "p2", &empty, "--max-c1", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = gwzero(&["wdvv", "p2", &empty, "--max-c1", "3", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn small_quantum_products() {
    let q = |args: &[&str]| stdout(&gwzero(args)).trim().to_string();
    assert_eq!(q(&["qmul", "p2", "H", "H", "H"]), "q·T_0");
    assert_eq!(q(&["qmul", "p2", "T0", "H2"]), "T_2");
    assert_eq!(q(&["qmul", "p1", "H", "H"]), "q·T_0");
    assert_eq!(q(&["qmul", "p2", "H2", "H2"]), "q·T_1");
    let o = gwzero(&["qmul", "p2", "X"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn potential_export() {
    let o = gwzero(&["potential", "p2", "--max-c1", "3", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("\"coefficient\": \"1/2\""), "{text}");
}

#[test]
fn explain_single_nodes() {
    let o = gwzero(&["explain", "p2", "1:1,2,2"]);
    assert_eq!(stdout(&o), "⟨H,H2,H2⟩_1 = 1/1  [seed]\n");
    let o = gwzero(&["explain", "p2", "1:H2,H2,H2"]);
    assert_eq!(stdout(&o), "⟨H2,H2,H2⟩_1 = 0/1  [grading ⇒ 0]\n");
    let o = gwzero(&["explain", "p2", "nonsense"]);
    assert_eq!(o.status.code(), Some(3));
}
