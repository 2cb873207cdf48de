use std::path::Path;
use std::process::{Command, Output};

use qnlimit::IfoConfig;

fn qnlimit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnlimit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn default_budget_has_three_columns_and_1000_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let o = qnlimit(&[
        "budget",
        "--curves",
        "sql,loss_limit_a4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["f_hz", "sql", "loss_limit_a4"]);
    assert_eq!(rows.len(), 1000);
    assert!(rows.iter().all(|r| r.len() == 3));
    assert_eq!(rows[0][0], 5.0);
    assert_eq!(rows[999][0], 5000.0);
}

#[test]
fn csv_uses_twelve_significant_digits() {
    let o = qnlimit(&["budget", "--points", "2", "--curves", "sql"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    for field in row.split(',') {
        let mantissa = field.split('e').next().unwrap();
        assert_eq!(mantissa.replace(['.', '-'], "").len(), 12, "{field}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, fmt: &str| {
        let p = dir.path().join(name);
        let o = qnlimit(&[
            "budget",
            "--curves",
            "sql,qcrb,full_optimal,fdt_floor,full_fixed_zeta(1.4)",
            "--points",
            "300",
            "--format",
            fmt,
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.csv", "csv"), run("b.csv", "csv"));
    assert_eq!(run("a.json", "json"), run("b.json", "json"));
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let json = dir.path().join("b.json");
    for (p, fmt) in [(&csv, "csv"), (&json, "json")] {
        let o = qnlimit(&[
            "budget",
            "--curves",
            "sql,loss_limit_a1,full_optimal",
            "--points",
            "64",
            "--format",
            fmt,
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let (header, rows) = read_csv(&csv);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let cols = doc["columns"].as_array().unwrap();
    assert_eq!(cols.len(), header.len());
    for (j, col) in cols.iter().enumerate() {
        assert_eq!(col["name"], header[j].as_str());
        for (i, v) in col["values"].as_array().unwrap().iter().enumerate() {
            let twelve = |x: f64| format!("{x:.11e}");
            assert_eq!(twelve(v.as_f64().unwrap()), twelve(rows[i][j]));
        }
    }
    let meta = &doc["metadata"];
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["config_sha256"].as_str().unwrap().len(), 64);
    assert!(meta["constants"]["hbar"].as_f64().unwrap() > 0.0);
}

#[test]
fn asd_is_square_root_of_psd() {
    let psd = qnlimit(&["budget", "--points", "5", "--curves", "sql"]);
    let asd = qnlimit(&["budget", "--points", "5", "--curves", "sql", "--asd"]);
    let parse = |o: &Output| -> Vec<f64> {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    for (p, a) in parse(&psd).iter().zip(parse(&asd)) {
        assert!((a * a / p - 1.0).abs() < 1e-10);
    }
}

#[test]
fn loss_limit_slopes_in_emitted_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let o = qnlimit(&[
        "budget",
        "--curves",
        "loss_limit_a4",
        "--fmin",
        "0.1",
        "--fmax",
        "100000",
        "--asd",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (_, rows) = read_csv(&out);
    let slope = |a: &[f64], b: &[f64]| (b[1] / a[1]).ln() / (b[0] / a[0]).ln();
    // flat below γ/2π ≈ 42 Hz
    assert!(slope(&rows[0], &rows[100]).abs() < 1e-3);
    // ASD ∝ Ω well above it once the SRC term dominates
    let n = rows.len();
    assert!((slope(&rows[n - 50], &rows[n - 1]) - 1.0).abs() < 0.05);
}

#[test]
fn squeezed_full_optimal_stays_above_loss_limit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = IfoConfig {
        r_input: qnlimit::quadrature::r_from_db(30.0),
        ..IfoConfig::aligo_like()
    };
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(&cfg_path, cfg.to_json_pretty()).unwrap();
    let out = dir.path().join("b.csv");
    let o = qnlimit(&[
        "budget",
        "--config",
        cfg_path.to_str().unwrap(),
        "--fmin",
        "1",
        "--curves",
        "full_optimal,loss_limit_a4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = read_csv(&out);
    assert!(
        rows.iter().all(|r| r[1] > r[2]),
        "full_optimal dips below the loss limit"
    );
}

#[test]
fn corrupt_config_exits_2_with_field_name() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = IfoConfig::aligo_like();
    cfg.t_src = 1.5;
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&cfg).unwrap()).unwrap();
    for verb in ["budget", "validate"] {
        let o = qnlimit(&[verb, "--config", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("T_src"));
    }
}

#[test]
fn bad_requests_exit_2() {
    assert_eq!(
        qnlimit(&["budget", "--fmin", "0.01"]).status.code(),
        Some(2)
    );
    assert_eq!(qnlimit(&["budget", "--points", "1"]).status.code(), Some(2));
    assert_eq!(
        qnlimit(&["budget", "--curves", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qnlimit(&["budget", "--format", "xml"]).status.code(),
        Some(2)
    );
    let o = qnlimit(&["budget", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degeneracy_exits_3_and_names_frequency() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = IfoConfig {
        internal_sqz: qnlimit::ifo::InternalSqueezing::None,
        ..IfoConfig::aligo_like()
    };
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, cfg.to_json_pretty()).unwrap();
    let o = qnlimit(&[
        "budget",
        "--config",
        path.to_str().unwrap(),
        "--curves",
        "full_fixed_zeta(0)",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Hz"));
}

#[test]
fn validate_default_passes() {
    let o = qnlimit(&["validate", "--seed", "11"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{text}");
    assert!(text.lines().count() >= 9);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn validate_report_is_deterministic() {
    let a = qnlimit(&["validate", "--seed", "4"]).stdout;
    let b = qnlimit(&["validate", "--seed", "4"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn config_template_round_trips() {
    let o = qnlimit(&["print-config-template"]);
    assert!(o.status.success());
    let cfg = IfoConfig::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(cfg, IfoConfig::aligo_like());
}
