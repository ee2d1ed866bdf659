use std::process::{Command, Output};

fn skq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skq"))
        .args(args)
        .env_remove("SKQ_WORK_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const S35: &[&str] = &[
    "--p",
    "5",
    "--k",
    "3",
    "--f",
    "[[0,0,1]]",
    "--g",
    "[[0,0,0,1]]",
];

#[test]
fn spectrum_reports_remark1_witness() {
    let o = skq(&[&["spectrum"], S35].concat());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], 20);
    assert_eq!(v["components"], 1);
    assert_eq!(v["moments"]["m1"], 0);
    assert_eq!(v["moments"]["m2"], 125 * 20);
    let total: u64 = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["multiplicity"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 125);
    assert!(String::from_utf8_lossy(&o.stderr).contains("λ_min < −5"));
}

#[test]
fn spectrum_csv_has_fixed_header() {
    let o = skq(&[&["spectrum", "--format", "csv"], S35].concat());
    assert!(stdout(&o).starts_with("value,multiplicity,coeffs,witness_w\n20,1,"));
}

#[test]
fn exit_codes() {
    let even_g = skq(&[
        "spectrum",
        "--p",
        "5",
        "--k",
        "3",
        "--f",
        "[[0,0,1]]",
        "--g",
        "[[1,0,0,1]]",
    ]);
    assert_eq!(even_g.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&even_g.stderr).contains("not odd"));

    assert_eq!(
        skq(&["verify", "thm3", "--q", "7", "--k", "4"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        skq(&[&["spectrum", "--work-cap", "10"], S35].concat())
            .status
            .code(),
        Some(3)
    );
    assert_eq!(skq(&["spectrum", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn work_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_skq"))
        .args([&["spectrum"], S35].concat())
        .env("SKQ_WORK_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_thm3_passes() {
    let o = skq(&["verify", "thm3", "--q", "5", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["verdict"], "PASS");
    assert_eq!(v[0]["hypothesis_ok"], true);
}

#[test]
fn verify_remark3_lists_each_q() {
    let o = skq(&["verify", "remark3", "--qmax", "49"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn verify_other_claims() {
    for args in [
        &["verify", "remark1", "--q", "7"][..],
        &["verify", "remark2", "--q", "7", "--k", "4", "--n", "2"],
        &["verify", "thm4", "--q", "11", "--k", "3"],
        &[
            "verify",
            "lemma51",
            "--p",
            "7",
            "--k",
            "3",
            "--f",
            "[[0,0,1]]",
            "--g",
            "[[0,1,0,1]]",
        ],
        &[
            "verify",
            "lemma61",
            "--p",
            "5",
            "--k",
            "4",
            "--f",
            "[[0,0,1],[0,0,0,1]]",
            "--g",
            "[[0,0,0,1],[0,0,0,1]]",
        ],
        &["verify", "cheeger", "--cycle", "8"],
        &[
            "verify", "cheeger", "--p", "2", "--k", "3", "--f", "[[0,1]]", "--g", "[[0,1]]",
        ],
        &[
            &["verify", "cover"],
            S35,
            &["--f-next", "[0,0,0,1]", "--g-next", "[0,0,0,1]"],
        ]
        .concat(),
    ] {
        let o = skq(args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    assert_eq!(
        skq(&["verify", "remark2", "--q", "11", "--k", "4", "--n", "2"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn family_trend_and_gating() {
    let o = skq(&[
        "family", "--f", "X^2,X^3", "--g", "X^3,X^3", "--qs", "5,11,17",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["decreasing"], true);

    let single = skq(&["family", "--f", "X^2", "--g", "X^3", "--qs", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&single)).unwrap();
    assert_eq!(v["decreasing"], serde_json::Value::Null);

    // d_g = 3 ≥ p at q = 3 only.
    let gated = skq(&[
        "family", "--f", "X^2", "--g", "X^3", "--qs", "9,5", "--format", "csv",
    ]);
    let text = stdout(&gated);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows[0],
        "q,lambda2,gap,lambda2_over_q2,cheeger_lower,status"
    );
    assert!(rows[1].starts_with("9,,,,,hypothesis-violated"));
    assert!(rows[2].starts_with("5,"));
}

#[test]
fn exports() {
    let edges = skq(&[
        "export", "edges", "--format", "edgelist", "--p", "2", "--k", "3", "--f", "[[0,1]]", "--g",
        "[[0,1]]",
    ]);
    assert_eq!(stdout(&edges).lines().count(), 8);

    let cs = skq(&[&["export", "connection-set"], S35].concat());
    let text = stdout(&cs);
    assert_eq!(text.lines().count(), 20);
    assert!(text.lines().all(|l| l.split(' ').count() == 3));

    let s = skq(&[
        "export",
        "edges",
        "--format",
        "edgelist",
        "--p",
        "3",
        "--k",
        "3",
        "--f",
        "[[0,0,1]]",
        "--g",
        "[[0,1]]",
    ]);
    let points = skq(&[
        "export",
        "distance-two",
        "--format",
        "edgelist",
        "--family",
        "wenger",
        "--q",
        "3",
        "--side",
        "points",
    ]);
    assert_eq!(points.stdout, s.stdout);
    let lines = skq(&[
        "export",
        "distance-two",
        "--format",
        "edgelist",
        "--family",
        "wenger",
        "--q",
        "3",
        "--side",
        "lines",
    ]);
    assert_eq!(stdout(&lines).lines().count(), 81);
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = skq(&[
            &[
                "spectrum",
                "--output",
                path.to_str().unwrap(),
                "--threads",
                "3",
            ],
            S35,
        ]
        .concat());
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "work_cap = 10\n").unwrap();
    let capped = skq(&[&["spectrum", "--config", cfg.to_str().unwrap()], S35].concat());
    assert_eq!(capped.status.code(), Some(3));
    std::fs::write(&cfg, "unknown = 1\n").unwrap();
    assert_eq!(
        skq(&[&["spectrum", "--config", cfg.to_str().unwrap()], S35].concat())
            .status
            .code(),
        Some(2)
    );

    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"p":5,"e":1,"k":3,"f":[[0,0,1]],"g":[[0,0,0,1]]}"#,
    )
    .unwrap();
    let o = skq(&["spectrum", "--spec-file", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}
