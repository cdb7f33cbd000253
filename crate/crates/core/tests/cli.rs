use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn lowcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowcorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn field_info_reports_provenance() {
    let out = lowcorr(&["field-info", "--p", "7", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["q"], 343);
    assert_eq!(v["N"], 171);
    assert_eq!(v["family_size"], 684);
    assert_eq!(v["modulus"].as_array().unwrap().len(), 4);
}

#[test]
fn gen_family_writes_dump() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("family.txt");
    let out = lowcorr(&[
        "gen-family",
        "--p",
        "3",
        "--n",
        "3",
        "--d",
        "N+1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["d"], 14);
    let members: Vec<&str> = lines.collect();
    assert_eq!(members.len(), 52);
    assert!(members[0].starts_with("0,0,0:"));
    assert_eq!(members[0].split(':').nth(1).unwrap().split(' ').count(), 13);
}

#[test]
fn spectrum_is_byte_identical_across_thread_counts() {
    let dir = tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("spectrum-{threads}.json"));
        let out = lowcorr(&[
            "spectrum",
            "--p",
            "3",
            "--n",
            "5",
            "--threads",
            threads,
            "--naive",
            "sampled",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        files.push(fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let reports: serde_json::Value = serde_json::from_slice(&files[0]).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[2]["interpretation"], "merged");
    assert!(reports.iter().all(|r| r["pass"] == true));
}

#[test]
fn spectrum_single_family_fields() {
    let out = lowcorr(&["spectrum", "--p", "3", "--n", "3", "--d", "4"]);
    assert!(out.status.success());
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["d"], 4);
    assert_eq!(r["N"], 13);
    assert_eq!(r["naive_check"]["mode"], "full");
    assert_eq!(r["naive_check"]["mismatches"], 0);
    assert_eq!(r["naive_check"]["value_sets_equal"], true);
    assert!(r["c_max"].as_f64().unwrap() <= r["bound"].as_f64().unwrap());
    assert_eq!(r["beta"], serde_json::json!([1, 0, 0]));
}

#[test]
fn table1_csv_schema_and_exit_codes() {
    let out = lowcorr(&["table1", "--p", "3", "--n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p,n,N,cmax_over_sqrtN,distinct_values,bound,pass")
    );
    assert_eq!(lines.next(), Some("3,7,1093,2.1219,6,70.6481,true"));

    let out = lowcorr(&["table1", "--p", "3", "--n", "3", "--naive", "off"]);
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1), Some("3,3,13,2.1662,6,8.2942,false"));
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));

    let out = lowcorr(&["table1", "--p", "5", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weil_sweep_all_trials_pass() {
    let run = || {
        lowcorr(&[
            "weil-sweep",
            "--p",
            "3",
            "--n",
            "3",
            "--seed",
            "7",
            "--trials",
            "200",
        ])
    };
    let out = run();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("200/200 trials pass"));
    assert_eq!(out.stdout, run().stdout);

    let out = lowcorr(&[
        "weil-sweep",
        "--p",
        "3",
        "--n",
        "3",
        "--seed",
        "7",
        "--trials",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["trials"], 5);
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"] == true));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lowcorr(&["spectrum", "--p", "3"]).status.code(), Some(2));
    assert_eq!(
        lowcorr(&["spectrum", "--p", "3", "--n", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lowcorr(&["weil-sweep", "--p", "3", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lowcorr(&["gen-family", "--p", "3", "--n", "3", "--beta", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lowcorr(&["nonsense"]).status.code(), Some(2));
}
