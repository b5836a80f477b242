use std::process::{Command, Output};

fn unirat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unirat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_identities_emits_json_lines() {
    let o = unirat(&["verify-identities"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 30);
    assert!(lines.iter().all(|l| l["ok"] == true));
    let ids: Vec<&str> = lines.iter().map(|l| l["id"].as_str().unwrap()).collect();
    for id in ["I.1", "VIII", "XIV", "**.2", "H-equiv", "not-square"] {
        assert!(ids.contains(&id), "missing {id}");
    }
}

#[test]
fn parametrize_is_one_map() {
    let o = unirat(&["parametrize"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for key in ["a", "alpha", "b", "beta"] {
        assert_eq!(v[key]["num"]["vars"], serde_json::json!(["s", "t", "v"]));
    }
}

#[test]
fn jacobian_rank_default_and_custom_point() {
    let o = unirat(&["jacobian-rank"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["rank"], 3);
    assert_eq!(v["matrix"][2], serde_json::json!(["4", "0", "0"]));

    let o = unirat(&["jacobian-rank", "--point", "1/2,-3,2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn jacobian_rank_usage_errors() {
    assert_eq!(
        unirat(&["jacobian-rank", "--point", "1,2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        unirat(&["jacobian-rank", "--point", "a,b,c"]).status.code(),
        Some(2)
    );
    // pole of phi
    assert_eq!(
        unirat(&["jacobian-rank", "--point", "2,2,1"]).status.code(),
        Some(2)
    );
}

#[test]
fn sample_count_and_seed() {
    let o = unirat(&["sample", "--count", "3", "--seed", "9", "--prec", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    for (k, l) in lines.iter().enumerate() {
        assert_eq!(l["index"], k);
        assert_eq!(l["lift"]["precision"], 64);
        assert_eq!(l["lift"]["ok"], true);
    }
    assert_ne!(
        text,
        stdout(&unirat(&[
            "sample", "--count", "3", "--seed", "10", "--prec", "64"
        ]))
    );
}

#[test]
fn search_report_and_bad_prime() {
    let o = unirat(&["no-rational-point", "--prime", "5", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(r#"{"prime":5,"dmax":1,"candidates_pruned":"#));
    assert!(stdout(&o).contains(r#""solutions":[]"#));

    let o = unirat(&["no-rational-point", "--prime", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 mod 4"));
    assert_eq!(
        unirat(&["no-rational-point", "--prime", "13", "--max-degree", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn conic_info_lines() {
    let o = unirat(&["conic-info", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(r#""on_conic":true"#));
    assert!(text.contains(r#""id":"recover-v""#));
    assert_eq!(text.matches("parity_degree").count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    let bad = unirat(&["frobnicate"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    assert_eq!(
        unirat(&["parametrize", "--no-such-flag"]).status.code(),
        Some(2)
    );
    assert_eq!(unirat(&["sample", "--prec", "32"]).status.code(), Some(2));
    assert_eq!(unirat(&["sample", "--count", "0"]).status.code(), Some(2));
    assert_eq!(unirat(&[]).status.code(), Some(2));
}

#[test]
fn help_documents_every_flag() {
    let o = unirat(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for flag in [
        "--seed",
        "--prec",
        "--prime",
        "--max-degree",
        "--threads",
        "--point",
        "--count",
        "--out",
    ] {
        assert!(text.contains(flag), "help lacks {flag}");
    }
    for cmd in [
        "verify-identities",
        "parametrize",
        "sample",
        "jacobian-rank",
        "no-rational-point",
        "conic-info",
    ] {
        assert!(text.contains(cmd), "help lacks {cmd}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("unirat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("phi.json");
    let o = unirat(&["parametrize", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, unirat(&["parametrize"]).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn flags_before_subcommand() {
    let a = unirat(&["--seed", "4", "--count", "2", "sample"]);
    let b = unirat(&["sample", "--seed", "4", "--count", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
