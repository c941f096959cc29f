use std::io::Write;
use std::process::{Command, Output};

use flipchain::report::{ChamberReport, StabilityReport, VerifyReport};
use flipchain_core::betti::BettiReport;

fn flipchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flipchain")).args(args).env_remove("FLIPCHAIN_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn model_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

const KERNEL_LINE: &str = r#"{
  "genus": 2,
  "frame_degree": 0,
  "type": {"rank": 2, "degree": -5, "framing_nonzero": true, "delta_iso": true},
  "subs": [
    {"id": "K", "rank": 1, "degree": -3, "fr": false},
    {"id": "L", "rank": 1, "degree": -2, "fr": true}
  ]
}"#;

#[test]
fn chambers_text() {
    let o = flipchain(&["chambers", "--d", "-5", "--g", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("walls: 1, 3"), "{text}");
    assert!(text.contains("FM^4   (3, 5]"), "{text}");
}

#[test]
fn chambers_csv_and_latex() {
    let csv = stdout(&flipchain(&["chambers", "--d", "-5", "--g", "2", "--format", "csv"]));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some(
            "position,fm_index,lower,upper,right_closed,representative,rank_minus,rank_plus,dim_pw_minus,dim_pw_plus,codim_minus,codim_plus"
        )
    );
    assert_eq!(lines.count(), 3);
    let tex = stdout(&flipchain(&["chambers", "--d", "-6", "--g", "2", "--format", "latex"]));
    assert!(tex.contains("\\begin{tabular}") && tex.contains("\\end{tabular}"), "{tex}");
}

#[test]
fn chamber_json_round_trip() {
    let o = flipchain(&["chambers", "--d", "-7", "--g", "3", "--json"]);
    let r: ChamberReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r, ChamberReport::build(-7, 3).unwrap());
    assert_eq!(r.data.walls, vec![1, 3, 5]);
}

#[test]
fn betti_json_agrees() {
    let o = flipchain(&["betti", "--d", "-5", "--g", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: BettiReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.consistent());
    assert!(r.entries.iter().all(|e| e.agree));
    assert_eq!(r, BettiReport::build(-5, 2, None).unwrap());
}

#[test]
fn betti_csv_header() {
    let csv = stdout(&flipchain(&["betti", "--d", "-6", "--g", "2", "--chamber", "4", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("d,g,i,agree,palindromic,nonneg,degree,poincare,betti"));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn invalid_cells_exit_2() {
    for args in [
        &["chambers", "--d", "0", "--g", "2"][..],
        &["chambers", "--d", "4", "--g", "2"],
        &["betti", "--d", "-5", "--g", "1"],
        &["betti", "--d", "-5", "--g", "2", "--chamber", "9"],
        &["chambers", "--d", "x", "--g", "2"],
    ] {
        let o = flipchain(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_models_exit_2() {
    let missing = flipchain(&["stability-check", "--model", "/nonexistent/model.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let garbage = model_file("{ not json");
    let o = flipchain(&["stability-check", "--model", garbage.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    // rank-2 subobject inside a rank-2 object
    let bad = model_file(&KERNEL_LINE.replace(r#""rank": 1, "degree": -3"#, r#""rank": 2, "degree": -3"#));
    let o = flipchain(&["stability-check", "--model", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn stability_check_at_given_sigmas() {
    let f = model_file(KERNEL_LINE);
    let path = f.path().to_str().unwrap();
    let o = flipchain(&["stability-check", "--model", path, "--sigma", "1/2", "1", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: StabilityReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.entries.len(), 3);
    // K is harmless iff σ ≤ d − 2·deg K = 1; L iff σ ≥ 2·deg L − d = 1
    let semistable: Vec<bool> = r.entries.iter().map(|e| e.fm.semistable).collect();
    let stable: Vec<bool> = r.entries.iter().map(|e| e.fm.stable).collect();
    assert_eq!(semistable, vec![false, true, false]);
    assert_eq!(stable, vec![false, false, false]);
    let csv = stdout(&flipchain(&["stability-check", "--model", path, "--format", "csv"]));
    assert!(csv.starts_with(
        "sigma,location,fm_semistable,fm_stable,pair_semistable,pair_stable,max_destabilizer,hn_steps,hn_slopes,equivalence,witness\n"
    ));
}

#[test]
fn stability_check_defaults_to_chamber_points() {
    let f = model_file(KERNEL_LINE);
    let o = flipchain(&["stability-check", "--model", f.path().to_str().unwrap(), "--json"]);
    let r: StabilityReport = serde_json::from_slice(&o.stdout).unwrap();
    // three chamber representatives and two walls for d = −5
    assert_eq!(r.entries.len(), 5);
    assert!(r.entries.iter().all(|e| e.location.is_some()));
}

#[test]
fn verify_all_passes_and_round_trips() {
    let o = flipchain(&["verify-all", "--grid", "3", "-8", "--seed", "7", "--models", "300", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: VerifyReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.passed());
    assert_eq!(r.cells.len(), 2 * 8);
    assert_eq!(r.suite.seed, 7);
}

#[test]
fn verify_all_default_grid() {
    let o = flipchain(&["verify-all", "--grid", "5", "-15", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-all", "--grid", "3", "-6", "--seed", "11", "--models", "200", "--format", "csv"];
    let a = flipchain(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_flipchain")).args(args).env("FLIPCHAIN_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(flipchain(&["betti", "--d", "-9", "--g", "3"]).stdout, flipchain(&["betti", "--d", "-9", "--g", "3"]).stdout);
}

#[test]
fn thread_variable_is_validated() {
    for bad in ["0", "many", "-3"] {
        let o = Command::new(env!("CARGO_BIN_EXE_flipchain"))
            .args(["verify-all", "--grid", "2", "-4", "--models", "20"])
            .env("FLIPCHAIN_THREADS", bad)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(2), "FLIPCHAIN_THREADS={bad}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_flipchain"))
        .args(["verify-all", "--grid", "2", "-4", "--models", "20"])
        .env("FLIPCHAIN_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
