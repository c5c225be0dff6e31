use std::process::{Command, Output};

fn swave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swave"))
        .args(args)
        .output()
        .expect("run swave")
}

fn table(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader
        .headers()
        .unwrap()
        .iter()
        .map(str::to_owned)
        .collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn field(header: &[String], row: &[String], name: &str) -> f64 {
    let i = header.iter().position(|h| h == name).unwrap();
    row[i].parse().unwrap()
}

#[test]
fn sodium_on_glass_point() {
    let out = swave(&["--omega", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    assert_eq!(
        h,
        [
            "omega_ratio",
            "d_nm",
            "theta_deg",
            "eps1",
            "eps2",
            "T",
            "R",
            "A",
            "terms_used",
            "tail_bound"
        ]
    );
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert!((field(&h, r, "T") - 0.076_634_135_938_7).abs() < 1e-8);
    assert!((field(&h, r, "R") - 0.921_213_897_102_5).abs() < 1e-8);
    assert!((field(&h, r, "A") - 0.002_151_966_958_8).abs() < 1e-8);
}

#[test]
fn total_internal_reflection_point() {
    let out = swave(&[
        "--eps1",
        "2.25",
        "--eps2",
        "1",
        "--theta-deg",
        "60",
        "--omega",
        "1.2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    assert_eq!(field(&h, &rows[0], "T"), 0.0);
    assert!(field(&h, &rows[0], "R") > 0.9);
}

#[test]
fn theta_sweep_reports_degrees() {
    let out = swave(&["--sweep", "theta:0:89.9:4", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    assert!(h.iter().any(|c| c == "T_oracle"));
    let angles: Vec<f64> = rows.iter().map(|r| field(&h, r, "theta_deg")).collect();
    assert_eq!(angles[0], 0.0);
    assert_eq!(angles[3], 89.9);
    assert!(field(&h, &rows[3], "R") > 0.98);
}

#[test]
fn config_file_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let csv = dir.path().join("out.csv");
    std::fs::write(
        &cfg,
        "# thin film on mica\neps2 = mica\nsweep = d_nm:50:150:3\n",
    )
    .unwrap();
    let out = swave(&[
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1.0,50.0,0.0,1.0,8.0,"));
    assert!(lines[3].starts_with("1.0,150.0,0.0,1.0,8.0,"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--eps2", "plastic"][..],
        &["--theta-deg", "95"],
        &["--sweep", "omega:0:2:10"],
        &["--sweep", "omega:0.1:2:10", "--sweep", "d_nm:10:20:2"],
        &["--unknown"],
    ] {
        let out = swave(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn failed_points_exit_three_with_error_column() {
    let out = swave(&["--eps-coll", "0", "--sweep", "omega:0.5:1.5:3"]);
    assert_eq!(out.status.code(), Some(3));
    let (h, rows) = table(&out);
    assert_eq!(h.last().unwrap(), "error");
    assert_eq!(rows.len(), 3);
    let failed: Vec<&Vec<String>> = rows
        .iter()
        .filter(|r| !r.last().unwrap().is_empty())
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(field(&h, failed[0], "T").is_nan());
    assert_eq!(field(&h, failed[0], "omega_ratio"), 1.0);
}

#[test]
fn unwritable_output_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let out = swave(&["--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn help_exits_zero() {
    let out = swave(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("--sweep"));
}
