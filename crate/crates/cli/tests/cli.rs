use std::process::{Command, Output};

use serde_json::Value;

fn gorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decompose_sp2_over_sp1() {
    let out = gorbit(&["decompose", "--space", "table1/row8?n=1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "gorbit.decompose/1");
    assert_eq!(v["tool"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["tolerance"]["feas_tol"], 1e-8);
    let subs = v["decomposition"]["submodules"].as_array().unwrap();
    let shape: Vec<(u64, &str, &str)> = subs
        .iter()
        .map(|s| {
            (
                s["dim"].as_u64().unwrap(),
                s["type"].as_str().unwrap(),
                s["size_class"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        shape,
        vec![(4, "quaternionic", "large"), (3, "trivial", "trivial")]
    );
    assert!(v.get("wall_clock_seconds").is_none());
}

#[test]
fn decompose_spin8_over_g2_pairs_isomorphic_blocks() {
    let v = json(&gorbit(&["decompose", "--space", "table1/row10"]));
    let subs = v["decomposition"]["submodules"].as_array().unwrap();
    assert_eq!(subs.len(), 2);
    assert!(subs.iter().all(|s| s["dim"] == 7));
    assert_eq!(subs[0]["isomorphism_class"], subs[1]["isomorphism_class"]);
    let comps = v["decomposition"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["canonical_split"], false);
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        vec!["decompose", "--space", "table1/row4"],
        vec!["decompose", "--space", "table1/row6?n=9"],
        vec!["decompose", "--space", "table1/row8?n=x"],
        vec!["decompose"],
        vec![
            "check-go",
            "--space",
            "table1/row6?n=3",
            "--alpha",
            "1,1,2",
            "--samples",
            "0",
        ],
        vec!["check-go", "--space", "table1/row8?n=1", "--alpha", "1,-2"],
        vec!["check-go", "--space", "table1/row8?n=1", "--alpha", "1,2,3"],
        vec!["nat-red", "--space", "ledger-obata?k=2", "--gamma", "1,0"],
        vec!["nat-red", "--space", "ledger-obata?k=2", "--gamma", "1,2,3"],
        vec!["check-go", "--bogus"],
    ] {
        let out = gorbit(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn check_go_exit_codes() {
    let out = gorbit(&["check-go", "--space", "table1/row9?n=2", "--alpha", "1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["verdict"], "go-consistent");
    assert_eq!(v["condition"], true);
    assert_eq!(v["linear_graph"]["accepted"], false);

    let out = gorbit(&[
        "check-go",
        "--space",
        "table1/row6?n=3",
        "--alpha",
        "1,1,2",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["report"]["verdict"], "not-go");
    let w = &v["report"]["certificate"];
    assert_eq!(w["x"].as_array().unwrap().len(), 13);
    assert!(w["residual"].as_f64().unwrap() > 1e-4);
}

#[test]
fn normal_metric_on_any_space() {
    let out = gorbit(&["check-go", "--space", "su2+su3/su2", "--alpha", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["linear_graph"]["accepted"], true);
}

#[test]
fn nat_red_accepts_and_rejects() {
    let out = gorbit(&["nat-red", "--space", "ledger-obata?k=2", "--gamma", "1,-2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let metric = v["certificate"]["metric"].as_array().unwrap();
    assert_eq!(metric.len(), 1);
    assert!((metric[0]["alpha"].as_f64().unwrap() - 4.0).abs() < 1e-10);

    let out = gorbit(&["nat-red", "--space", "ledger-obata?k=2", "--gamma", "-1,-2"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["certificate"]["accepted"], false);
}

#[test]
fn reruns_are_byte_identical() {
    let args = [
        "check-go",
        "--space",
        "table1/row8?n=1",
        "--alpha",
        "1,2",
        "--seed",
        "3",
    ];
    assert_eq!(gorbit(&args).stdout, gorbit(&args).stdout);
    let args = ["campaign", "--space", "table1/row8?n=1", "--seed", "1,2"];
    let a = gorbit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, gorbit(&args).stdout);
    let v = json(&a);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["seed"], serde_json::json!([1, 2]));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("gorbit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"space": "table1/row8?n=1", "alpha": [1.0, 1.0], "seed": 5, "tol": {"rel_rank_tol": 1e-10, "feas_tol": 1e-9, "margin_factor": 1e4}}"#,
    )
    .unwrap();
    let out_path = dir.join("report.json");
    let out = gorbit(&[
        "check-go",
        "--config",
        cfg.to_str().unwrap(),
        "--alpha",
        "1,2",
        "--out",
        out_path.to_str().unwrap(),
        "--timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["tolerance"]["feas_tol"], 1e-9);
    assert_eq!(v["metric"]["alphas"], serde_json::json!([1.0, 2.0]));
    assert!(v["wall_clock_seconds"].as_f64().is_some());

    std::fs::write(&cfg, r#"{"spaces": "table1/row8?n=1"}"#).unwrap();
    let out = gorbit(&["decompose", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn list_spaces_covers_every_row() {
    let v = json(&gorbit(&["list-spaces"]));
    let ids: Vec<&str> = v["spaces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["id"].as_str().unwrap())
        .collect();
    for want in [
        "table1/row1",
        "table1/row6?n=5",
        "table1/row11",
        "ledger-obata?k=2",
    ] {
        assert!(ids.contains(&want), "{want}");
    }
}
