use std::path::PathBuf;
use std::process::{Command, Output};

use polyprism::closed_forms::kfstar_closed;
use polyprism::exact::parse_rational;
use polyprism::graph::GraphJson;
use polyprism::verify::{DECOMPOSITION_TOL, DEGREE_PRODUCT_TOL, SPECTRAL_TOL};
use polyprism::{Graph, InvariantReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyprism"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polyprism-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_json_prism_round_trips() {
    let path = temp_path("prism2.json");
    let out = run(&[
        "gen",
        "--family",
        "prism-polyomino",
        "--n",
        "2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("12 vertices, 34 edges"));
    let json: GraphJson = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json.nodes.len(), 12);
    assert_eq!(json.edges.len(), 34);
    let g = Graph::from_json_value(&json).unwrap();
    let direct = polyprism::graph::strong_prism_polyomino(2).unwrap();
    assert_eq!(g.edges(), direct.edges());
}

#[test]
fn gen_dot_cycle() {
    let out = run(&["gen", "--family", "cycle", "--n", "4", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.matches(" -- ").count(), 4);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["gen", "--family", "cycle", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n >= 3"));
    assert_eq!(
        run(&["gen", "--family", "hexagon", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["invariants", "--family", "path"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--min-n", "5", "--max-n", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["sweep", "--max-n", "1"]).status.code(), Some(2));
}

#[test]
fn invariants_exact_prism() {
    let out = run(&[
        "invariants",
        "--family",
        "prism-polyomino",
        "--n",
        "2",
        "--exact",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["tau"], "19906560");
    assert_eq!(v["gutman"], "3274");
    assert_eq!(v["closed_forms"]["kf_star"]["rational"], "11726/15");
    assert_eq!(v["closed_forms"]["tau_matches"], true);
    assert!(v.get("generated_at").is_none());

    // exact fields survive a parse/serialize cycle unchanged
    let report: InvariantReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json_pretty() + "\n", text);
}

#[test]
fn invariants_tree_and_boundary() {
    let out = run(&[
        "invariants",
        "--family",
        "path",
        "--n",
        "3",
        "--no-timestamp",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["wiener"], "4");
    assert!((v["kf"].as_f64().unwrap() - 4.0).abs() < 1e-12);

    let out = run(&[
        "invariants",
        "--family",
        "prism-polyomino",
        "--n",
        "1",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["warnings"][0]
        .as_str()
        .unwrap()
        .contains("pattern-regime: false"));
}

#[test]
fn invariants_timestamp_and_determinism() {
    let args = [
        "invariants",
        "--family",
        "prism-polyomino",
        "--n",
        "3",
        "--exact",
        "--no-timestamp",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let stamped = run(&["invariants", "--family", "cycle", "--n", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&stamped)).unwrap();
    assert!(v["generated_at"].as_u64().is_some());
}

#[test]
fn invariants_csv() {
    let out = run(&[
        "invariants",
        "--family",
        "complete",
        "--n",
        "5",
        "--format",
        "csv",
    ]);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    assert_eq!(header, InvariantReport::CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][8], "125");
}

#[test]
fn verify_full_range_passes() {
    let out = run(&[
        "verify", "--min-n", "2", "--max-n", "12", "--checks", "all", "--jobs", "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let table = stdout(&out);
    assert_eq!(
        table.lines().filter(|l| l.contains(" PASS ")).count(),
        11 * 9
    );
}

#[test]
fn verify_rows_are_ordered_and_job_independent() {
    let base = ["verify", "--min-n", "1", "--max-n", "5", "--format", "csv"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let many = run(&[&base[..], &["--jobs", "3"]].concat());
    assert_eq!(one.stdout, many.stdout);
    let mut rdr = csv::Reader::from_reader(one.stdout.as_slice());
    let keys: Vec<(usize, String)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].to_owned())
        })
        .collect();
    assert_eq!(keys.len(), 5 * 9);
    assert!(keys.windows(2).all(|w| w[0].0 <= w[1].0));
}

#[test]
fn verify_boundary_is_informational() {
    let out = run(&[
        "verify",
        "--min-n",
        "1",
        "--max-n",
        "1",
        "--checks",
        "tau,coeffs",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout(&out);
    assert!(table.contains("closed form and Matrix-Tree count agree"));
    assert!(!table.contains("PASS") && !table.contains("FAIL"));
}

#[test]
fn verify_ls_spectrum_and_alias() {
    let out = run(&[
        "verify",
        "--min-n",
        "2",
        "--max-n",
        "6",
        "--checks",
        "ls-spectrum",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["pass"] == true));
    let out = run(&[
        "verify", "--min-n", "2", "--max-n", "3", "--checks", "lemma22",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degree-product"));
}

#[test]
fn verify_help_lists_fixed_tolerances() {
    let help = stdout(&run(&["verify", "--help"]));
    for tol in [SPECTRAL_TOL, DECOMPOSITION_TOL, DEGREE_PRODUCT_TOL] {
        assert!(
            help.contains(&format!("{tol:e}")),
            "{tol:e} missing from help"
        );
    }
}

#[test]
fn sweep_csv() {
    let path = temp_path("sweep.csv");
    let out = run(&[
        "sweep",
        "--max-n",
        "100",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rdr.headers().unwrap(),
        vec![
            "n",
            "kf_star_exact",
            "tau_exact",
            "gutman_exact",
            "ratio_decimal",
            "pattern_regime"
        ]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 99);
    assert_eq!(&rows[0][0], "2");
    assert_eq!(&rows[0][1], "11726/15");
    assert_eq!(&rows[0][2], "19906560");
    assert_eq!(&rows[0][3], "3274");
    for r in &rows {
        let n: usize = r[0].parse().unwrap();
        assert_eq!(
            parse_rational(&r[1]).unwrap(),
            kfstar_closed(n).unwrap().value
        );
        assert_eq!(r[4].split('.').nth(1).unwrap().len(), 20);
        assert_eq!(&r[5], "true");
    }
    let last: f64 = rows[98][4].parse().unwrap();
    assert!(last > 0.125 && last - 0.125 < 0.005);
}

#[test]
fn sweep_unwritable_path_fails() {
    let out = run(&[
        "sweep",
        "--max-n",
        "3",
        "--output",
        "/nonexistent-dir/out.csv",
    ]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("cannot write"));
}
