//! The `orbichar` binary as a subprocess.

use std::process::{Command, Output};

use serde_json::Value;

fn orbichar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbichar"))
        .args(args)
        .env_remove("ORBICHAR_HOM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = orbichar(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

#[test]
fn chi_values() {
    let sig = r#"{"genus":0,"cones":[{"order":5,"count":"2"},{"order":10,"count":"1"}]}"#;
    assert_eq!(stdout(&["chi", "--sig", sig, "--gamma", "Z^2"]), "19");
    assert_eq!(stdout(&["chi", "--sig", "Σ_0()", "--gamma", "Z^9"]), "2");
    assert_eq!(
        stdout(&["chi", "--sig", "Σ_1(2)", "--gamma", "trivial"]),
        "-1/2"
    );
    assert_eq!(
        stdout(&["chi", "--sig", "S_0(4,8,8)", "--seq-len", "2"]),
        "-1/2,2,19"
    );
}

#[test]
fn signature_from_file() {
    let dir = std::env::temp_dir().join(format!("orbichar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sig.json");
    std::fs::write(&path, r#"{"genus":1,"cones":[{"order":2,"count":"1"}]}"#).unwrap();
    assert_eq!(stdout(&["chi", "--sig", path.to_str().unwrap()]), "-1/2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(
        orbichar(&["chi", "--sig", "{not json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        orbichar(&["chi", "--sig", "Σ_0(5)", "--gamma", "Z^"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        orbichar(&["mirrored", "--b0", "3,4"]).status.code(),
        Some(3)
    );
    assert_eq!(
        orbichar(&["reconstruct", "--seq", "0,2,5"]).status.code(),
        Some(2)
    );
    let budget = Command::new(env!("CARGO_BIN_EXE_orbichar"))
        .args(["quotient", "--rotation", "6,1", "--gamma", "Z^3"])
        .env("ORBICHAR_HOM_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(3));
}

#[test]
fn construct_emits_verified_families() {
    let pair: Value = serde_json::from_str(&stdout(&[
        "construct",
        "--L",
        "2",
        "--g",
        "0",
        "--orders",
        "2",
    ]))
    .unwrap();
    let family = pair["family"].as_array().unwrap();
    assert_eq!(family.len(), 2);
    assert_eq!(family[0]["genus"], 0);
    assert!(pair["verification"]["sequences_agree"].as_bool().unwrap());
    assert_eq!(
        pair["verification"]["sequences"][0],
        serde_json::json!(["-1/2", "2", "19"])
    );

    let four: Value = serde_json::from_str(&stdout(&[
        "construct",
        "--L",
        "3",
        "--g",
        "0",
        "--orders",
        "2,3",
        "--N",
        "4",
    ]))
    .unwrap();
    assert_eq!(four["family"].as_array().unwrap().len(), 4);
    assert!(four["verification"]["pairwise_distinct"].as_bool().unwrap());
    assert_eq!(
        four["verification"]["sequences"][0]
            .as_array()
            .unwrap()
            .len(),
        4
    );

    let genus5: Value = serde_json::from_str(&stdout(&[
        "construct",
        "--L",
        "2",
        "--g",
        "5",
        "--orders",
        "7",
    ]))
    .unwrap();
    assert_eq!(genus5["family"][1]["genus"], 5);

    let product: Value = serde_json::from_str(&stdout(&[
        "construct",
        "--L",
        "4",
        "--orders",
        "2,4,5,7",
        "--equalize",
        "product",
    ]))
    .unwrap();
    assert_eq!(product["equalize"], "product");
}

#[test]
fn reconstruct_enumerate_search() {
    assert_eq!(stdout(&["reconstruct", "--seq", "2,2,2,2"]), "Σ_0()");
    assert_eq!(
        stdout(&["reconstruct", "--seq", "-1/2,2,19,149,1249,11249"]),
        "Σ_0(5,5,10)"
    );
    let listed = stdout(&["enumerate", "--chi-es", "-4"]);
    assert!(listed.lines().any(|l| l == "Σ_0(3^9)"));
    assert!(listed.lines().any(|l| l == "Σ_0(4^8)"));
    let json_lines = stdout(&["enumerate", "--chi-es", "1/2", "--json"]);
    for line in json_lines.lines() {
        let _: Value = serde_json::from_str(line).unwrap();
    }
    assert_eq!(json_lines.lines().count(), 3);
    let groups = stdout(&[
        "search", "--g-max", "0", "--k-max", "3", "--m-max", "10", "--L", "2",
    ]);
    assert!(groups.contains("Σ_0(5,5,10)") && groups.contains("Σ_0(4,8,8)"));
}

#[test]
fn quotients() {
    assert_eq!(
        stdout(&["quotient", "--rotation", "6,1", "--gamma", "Z"]),
        "2"
    );
    assert_eq!(
        stdout(&["quotient", "--rotation", "6,2", "--gamma", "Z"]),
        "2"
    );
    let fpc = r#"[{"subgroup":[0],"chi":2},{"subgroup":[0,1],"chi":2}]"#;
    assert_eq!(
        stdout(&["quotient", "--group", "C2", "--fpc", fpc, "--gamma", "Z"]),
        "2"
    );
    let missing = orbichar(&[
        "quotient",
        "--group",
        "C2",
        "--fpc",
        r#"[{"subgroup":[0],"chi":2}]"#,
        "--gamma",
        "Z",
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("[0, 1]"));
}

#[test]
fn verify_paper_examples() {
    for id in [
        "sameESCsameg",
        "sameLESC",
        "basecase",
        "noneffective",
        "nonorientable",
        "generaldim",
    ] {
        let out = orbichar(&["verify-paper", id]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{id}:\n{text}");
        assert!(!text.contains("FAIL"));
    }
    let text = stdout(&["verify-paper", "nonorientable"]);
    assert!(text.contains("-1867/1155"));
}

#[test]
fn deterministic_output() {
    let args = [
        "search", "--g-max", "1", "--k-max", "3", "--m-max", "12", "--L", "2", "--json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}
