use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/patches").join(name)
}

fn triortho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triortho"))
        .args(args)
        .env_remove("TRIORTHO_THREADS")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("triortho-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn verify_passes_and_writes_numbers_as_strings() {
    let out = triortho(&["verify-theorem2", "--n", "1..3", "--grid", "4", "--line-points", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["mismatches"], 0);
    let first = &r["records"][0];
    assert!(first["c"].is_string() && first["d"].is_string());
    assert!(first["distance_to_exceptional"].is_string());
}

#[test]
fn verify_flags_overlapping_line_points() {
    let r = report(&triortho(&["verify-theorem2", "--n", "2", "--grid", "2", "--line-points", "4", "--mode", "exact"]));
    let records = r["records"].as_array().unwrap();
    let above: Vec<&Value> = records.iter().filter(|p| p["origin"] == "d=c+1").collect();
    assert!(!above.is_empty());
    assert!(above.iter().all(|p| p["geometrically_invalid"] == true && p["exact"]["dim"] == 1));
}

#[test]
fn verify_rejects_out_of_range_degrees() {
    assert_eq!(triortho(&["verify-theorem2", "--n", "0..2"]).status.code(), Some(2));
    assert_eq!(triortho(&["verify-theorem2", "--n", "1..9"]).status.code(), Some(2));
}

#[test]
fn out_flag_matches_stdout() {
    let path = scratch("report.json");
    let square = fixture("square.json");
    let args = ["patch", "--patch", square.to_str().unwrap(), "--n", "1..2"];
    let stdout = triortho(&args).stdout;
    let mut with_out = args.to_vec();
    let p = path.display().to_string();
    with_out.extend(["--out", &p]);
    let quiet = triortho(&with_out);
    assert_eq!(quiet.status.code(), Some(0));
    assert!(quiet.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn critical_pair_patch_reduces_over_four_triangles() {
    let out = triortho(&["patch", "--patch", fixture("case_c.json").to_str().unwrap(), "--n", "2..4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["barycenters"]["exists_noncollinear_triple"], true);
    for degree in r["exact"].as_array().unwrap() {
        let pairs = degree["pairs"].as_array().unwrap();
        assert!(pairs.iter().filter(|p| p["dim"] == 1).count() >= 2, "n={}", degree["n"]);
        assert!(degree["windows"]["4"].as_array().unwrap().iter().all(|d| d == 0));
        assert_eq!(degree["patch_dim"], 0);
    }
}

#[test]
fn patch_input_errors_exit_two() {
    let malformed = scratch("malformed.json");
    std::fs::write(&malformed, "{\"z\": [\"0\", \"0\"],\n \"ring\": [[\"1\", \"0\"],, ]}").unwrap();
    let out = triortho(&["patch", "--patch", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let clockwise = scratch("clockwise.json");
    std::fs::write(&clockwise, r#"{"z": ["0", "0"], "ring": [["1", "0"], ["0", "-1"], ["-1", "0"], ["0", "1"]]}"#).unwrap();
    assert_eq!(triortho(&["patch", "--patch", clockwise.to_str().unwrap()]).status.code(), Some(2));

    let overlap = scratch("overlap.json");
    std::fs::write(
        &overlap,
        r#"{"z": ["0", "0"], "ring": [["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"], ["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"]]}"#,
    )
    .unwrap();
    assert_eq!(triortho(&["patch", "--patch", overlap.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(triortho(&["patch", "--patch", "/nonexistent/patch.json"]).status.code(), Some(2));
}

#[test]
fn bad_thread_count_exits_two() {
    for v in ["0", "many", "-3"] {
        let out = Command::new(env!("CARGO_BIN_EXE_triortho"))
            .args(["constants", "--n", "0..1"])
            .env("TRIORTHO_THREADS", v)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "TRIORTHO_THREADS={v}");
    }
}

#[test]
fn constants_table_and_sweep_csv() {
    let csv = scratch("sweep.csv");
    let out = triortho(&[
        "constants", "--n", "0..3", "--q", "4", "--samples", "6", "--seed", "3", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["c_doubleprime"][0]["exact"], "1/60");
    assert_eq!(r["sweeps"][0]["inequality_holds"], true);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let header = reader.headers().unwrap().clone();
    assert_eq!(header.len(), 7 + 4 * 4 + 3);
    assert_eq!(&header[7], "alpha_1");
    assert_eq!(&header[header.len() - 1], "c_check");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.iter().filter(|r| &r[6] == "false").count(), 6);
    assert!(rows.iter().any(|r| &r[6] == "true"));

    let again = triortho(&[
        "constants", "--n", "0..3", "--q", "4", "--samples", "6", "--seed", "3", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn empty_sweep_family_exits_two() {
    let out = triortho(&["constants", "--q", "3", "--delta", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
}
