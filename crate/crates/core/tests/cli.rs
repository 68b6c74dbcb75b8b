use std::process::Command;

fn chowver(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chowver"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn suite_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout) = chowver(&[
        "suite",
        "--g",
        "5",
        "--max-degree",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["genus"], 5);
    assert_eq!(report["max_degree"], 6);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
    assert!(report["version"].is_string());
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |s: String| {
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["elapsed_ms"] = 0.into();
        }
        v
    };
    let args = [
        "suite",
        "--g",
        "3",
        "--max-degree",
        "5",
        "--suite",
        "transfer,thm14-ideal",
    ];
    let (a, b) = (chowver(&args).1, chowver(&[&args[..], &["--sequential"]].concat()).1);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn exit_codes() {
    assert_eq!(chowver(&["suite", "--g", "4"]).0, 2);
    assert_eq!(chowver(&["suite", "--g", "3", "--suite", "nonexistent"]).0, 2);
    assert_eq!(
        chowver(&[
            "suite",
            "--g",
            "3",
            "--max-degree",
            "5",
            "--suite",
            "thm14-ideal",
            "--perturb",
            "2",
            "c2",
            "1"
        ])
        .0,
        1
    );
    assert_eq!(
        chowver(&["suite", "--g", "3", "--suite", "cor-H11", "--inject-fault"]).0,
        1
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_chowver"))
        .args(["suite", "--g", "3", "--suite", "rh-ring"])
        .env("CHOWVER_STEP_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn hilbert_markdown_table() {
    let (code, out) = chowver(&[
        "hilbert",
        "--ring",
        "rh",
        "--g",
        "7",
        "--max-degree",
        "10",
        "--format",
        "md",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("| 0 | Z |"), "{out}");
    assert!(out.contains("| 1 | Z/2 + Z/4 |"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("| ")).count(), 12);
    let (_, out) = chowver(&[
        "hilbert",
        "--ring",
        "d",
        "--g",
        "3",
        "--max-degree",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][1]["display"], "(Z/2)^2");
}

#[test]
fn ring_file_round_trip() {
    let (code, dumped) = chowver(&["dump-ring", "--ring", "d", "--g", "3"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.ring");
    std::fs::write(&path, &dumped).unwrap();
    let p = path.to_str().unwrap();
    let (_, from_file) = chowver(&["hilbert", "--ring-file", p, "--max-degree", "6"]);
    let (_, built_in) = chowver(&["hilbert", "--ring", "d", "--g", "3", "--max-degree", "6"]);
    assert_eq!(from_file, built_in);
    let (code, out) = chowver(&["member", "--ring-file", p, "--poly", "b1^2*b2 - 2*b2^2 + b2^2"]);
    assert_eq!(code, 0, "{out}");
    let (code, gb) = chowver(&["gb", "--ring-file", p]);
    assert_eq!(code, 0);
    assert!(gb.lines().count() > 3);
    std::fs::write(&path, "ring broken\nvar x 0\n").unwrap();
    assert_eq!(chowver(&["gb", "--ring-file", p]).0, 2);
}
