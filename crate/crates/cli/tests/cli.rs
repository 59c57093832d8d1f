// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_reserving-impact");

fn belgian_csv() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/belgian.csv")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cells(csv: &str) -> Vec<(usize, usize, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// Published impacts on the accident-year 8 reserve, 4 dp.
const TABLE_R8: [&[f64]; 10] = [
    &[
        -0.1762, -0.1762, -0.1762, 0.0649, 0.0955, 0.1346, 0.1961, 0.2899, 0.4679, 0.9748,
    ],
    &[
        -0.1479, -0.1479, -0.1479, 0.0932, 0.1238, 0.1628, 0.2244, 0.3182, 0.4962,
    ],
    &[-0.1262, -0.1262, -0.1262, 0.1149, 0.1455, 0.1845, 0.2461, 0.3398],
    &[-0.1067, -0.1067, -0.1067, 0.1344, 0.1650, 0.2040, 0.2656],
    &[-0.0878, -0.0878, -0.0878, 0.1533, 0.1839, 0.2229],
    &[-0.0667, -0.0667, -0.0667, 0.1744, 0.2050],
    &[-0.0394, -0.0394, -0.0394, 0.2017],
    &[0.8037, 0.8037, 0.8037],
    &[0.0, 0.0],
    &[0.0],
];

#[test]
fn impact_reserve_ay_matches_published_table() {
    let o = run(&[
        "impact",
        belgian_csv().to_str().unwrap(),
        "--stat",
        "reserve-ay",
        "--year",
        "8",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let got = cells(&stdout(&o));
    assert_eq!(got.len(), 55);
    for (k, j, v) in got {
        let expect = TABLE_R8[k - 1][j - 1];
        assert!((v - expect).abs() <= 5e-5, "({k},{j}) {v} vs {expect}");
    }
}

#[test]
fn verify_reserve_total_passes() {
    let o = run(&["verify", belgian_csv().to_str().unwrap(), "--stat", "reserve-total"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("label,k,j,analytic,numeric,rel_error\n"));
    assert_eq!(out.lines().count(), 56);
}

#[test]
fn verification_failure_exits_3() {
    let o = run(&[
        "verify",
        belgian_csv().to_str().unwrap(),
        "--stat",
        "reserve-total",
        "--fd-step",
        "0.5",
        "--tolerance",
        "1e-12",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_byte_stable() {
    let input = belgian_csv();
    for args in [
        vec!["impact", "--stat", "quantile"],
        vec!["impact", "--stat", "rmse-ay", "--year", "8", "--format", "json"],
        vec!["heatmap", "--stat", "reserve-ay", "--year", "8"],
        vec!["reserves"],
    ] {
        let mut full = vec![args[0], input.to_str().unwrap()];
        full.extend_from_slice(&args[1..]);
        let a = run(&full);
        let b = run(&full);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_schema() {
    let o = run(&[
        "impact",
        belgian_csv().to_str().unwrap(),
        "--stat",
        "reserve-total",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["statistic"], "reserve-total");
    assert!(v["target"].is_null());
    assert_eq!(v["I"], 10);
    assert_eq!(v["cells"].as_array().unwrap().len(), 55);
    let total = v["summary"]["value_of_statistic"].as_f64().unwrap();
    assert!((total - 1_463_388_942.0).abs() < 1.0, "{total}");
}

#[test]
fn reserves_summary() {
    let o = run(&["reserves", belgian_csv().to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "i,latest,ultimate,reserve,rmse,bf_reserve");
    assert_eq!(lines.len(), 12);
    assert!(lines[11].starts_with("total,"));
    // chain-ladder priors make BF equal to chain-ladder
    let last: Vec<&str> = lines[10].split(',').collect();
    assert_eq!(last[3], last[5]);
}

#[test]
fn marginal_sums_to_reserve() {
    let input = belgian_csv();
    let o = run(&[
        "marginal",
        input.to_str().unwrap(),
        "--stat",
        "reserve-ay",
        "--year",
        "8",
    ]);
    assert!(o.status.success());
    let sum: f64 = cells(&stdout(&o)).iter().map(|c| c.2).sum();
    let r = run(&["reserves", input.to_str().unwrap()]);
    let line = stdout(&r).lines().nth(8).unwrap().to_string();
    let reserve: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
    assert!((sum - reserve).abs() <= 1e-9 * reserve, "{sum} vs {reserve}");

    let o = run(&["marginal", input.to_str().unwrap(), "--stat", "mse-total"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn priors_file() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("i,mu\n");
    for i in 1..=10 {
        text.push_str(&format!("{i},{}\n", 1.0e9 + i as f64));
    }
    let priors = write_temp(&dir, "priors.csv", &text);
    let o = run(&[
        "impact",
        belgian_csv().to_str().unwrap(),
        "--stat",
        "bf-total",
        "--priors",
        priors.to_str().unwrap(),
        "--verify",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let bad = write_temp(&dir, "bad.csv", "1,10\n2,-5\n");
    let o = run(&[
        "reserves",
        belgian_csv().to_str().unwrap(),
        "--priors",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write_temp(&dir, "ragged.csv", "I=3\n1,2,3\n4,5,6\n7\n");
    let o = run(&["impact", ragged.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 2"));

    let empty = write_temp(&dir, "empty.csv", "");
    let o = run(&["impact", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let negative = write_temp(&dir, "neg.csv", "I=4\n1,2,3,4\n1,-2,3\n1,2\n1\n");
    let o = run(&["impact", negative.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["impact", dir.path().join("missing.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    let input = belgian_csv();
    let input = input.to_str().unwrap();
    for args in [
        vec!["impact", input, "--stat", "reserve-ay"],
        vec!["impact", input, "--stat", "reserve-total", "--year", "3"],
        vec!["impact", input, "--stat", "quantile", "--q", "1"],
        vec!["impact", input, "--stat", "reserve-ay", "--year", "11"],
        vec!["impact", input, "--stat", "nonsense"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn heatmap_signs_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r8.svg");
    let o = run(&[
        "heatmap",
        belgian_csv().to_str().unwrap(),
        "--stat",
        "reserve-ay",
        "--year",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    let fill = |k: usize, j: usize| -> (u8, u8, u8) {
        let key = format!(r#"data-k="{k}" data-j="{j}""#);
        let at = svg.find(&key).unwrap();
        let f = &svg[at..][svg[at..].find("fill=\"#").unwrap() + 7..][..6];
        let h = |i: usize| u8::from_str_radix(&f[i..i + 2], 16).unwrap();
        (h(0), h(2), h(4))
    };
    // negative cells lean blue, positive cells lean red
    let (r, _, b) = fill(1, 1);
    assert!(b > r);
    let (r, _, b) = fill(1, 10);
    assert!(r > b);
    assert_eq!(fill(1, 10), (178, 24, 43));
    assert!(svg.contains("min -0.1762"));
    assert!(svg.contains("max 0.9748"));

    let unwritable = dir.path().join("no/such/dir/x.svg");
    let o = run(&[
        "heatmap",
        belgian_csv().to_str().unwrap(),
        "--out",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn heatmap_of_zero_impacts_is_neutral() {
    // year 1 is fully developed, so its reserve has zero impact everywhere
    let o = run(&[
        "heatmap",
        belgian_csv().to_str().unwrap(),
        "--stat",
        "reserve-ay",
        "--year",
        "1",
    ]);
    assert!(o.status.success());
    let svg = stdout(&o);
    assert_eq!(svg.matches(r##"fill="#f7f7f7" stroke="white""##).count(), 55);
    assert!(svg.contains("min 0.0000"));
    assert!(svg.contains("max 0.0000"));
}

#[test]
fn quantile_corners() {
    let o = run(&[
        "impact",
        belgian_csv().to_str().unwrap(),
        "--stat",
        "quantile",
        "--q",
        "0.995",
    ]);
    assert!(o.status.success());
    let got = cells(&stdout(&o));
    let at = |k: usize, j: usize| got.iter().find(|c| c.0 == k && c.1 == j).unwrap().2;
    assert!(at(1, 1) < 0.0);
    let (lo, hi) = got
        .iter()
        .fold((f64::MAX, f64::MIN), |(l, h), c| (l.min(c.2), h.max(c.2)));
    assert_eq!(hi, at(1, 10));
    assert!(at(10, 1) > 0.0);
    let second = got
        .iter()
        .filter(|c| (c.0, c.1) != (1, 10))
        .map(|c| c.2)
        .fold(f64::MIN, f64::max);
    assert_eq!(second, at(10, 1));
    assert!(lo < 0.0);
}
