use std::path::Path;
use std::process::{Command, Output};

fn tropvar(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropvar")).current_dir(dir).args(args).output().expect("run tropvar")
}

fn json(bytes: &[u8]) -> serde_json::Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("tropvar-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn construct_verify_falsify() {
    let dir = scratch("flow");
    let out = tropvar(&dir, &["construct", "ut-sep", "--n", "4", "--out", "id.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("id.json").exists() && dir.join("id.witness.json").exists());

    let out = tropvar(&dir, &["verify", "--identity", "id.json", "--shape", "ut", "--dim", "4", "--trials", "1000", "--seed", "7"]);
    assert!(out.status.success());
    let report = json(&out.stdout);
    assert_eq!(report["outcome"]["result"], "no_counterexample");
    assert_eq!(report["target"], "UT_4");

    let out = tropvar(&dir, &["falsify", "--identity", "id.json", "--witness", "id.witness.json"]);
    assert!(out.status.success());
    let report = json(&out.stdout);
    assert_eq!(report["outcome"]["result"], "counterexample");
    assert_eq!(report["outcome"]["mismatch"]["row"], 1);
    assert_eq!(report["outcome"]["mismatch"]["col"], 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn counterexample_exit_code() {
    let dir = scratch("commute");
    std::fs::write(dir.join("id.json"), "").unwrap();
    let out = tropvar(&dir, &["verify", "--identity", "id.json", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(2), "unparsable identity is a usage error");

    let out = tropvar(&dir, &["construct", "m2-falsifier", "--out", "m2.json"]);
    assert!(out.status.success());
    let out = tropvar(&dir, &["verify", "--identity", "m2.json", "--dim", "3", "--trials", "2000"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stdout)["outcome"]["result"], "counterexample");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn plactic_tools() {
    let dir = std::env::temp_dir();
    let out = tropvar(&dir, &["plactic", "canon", "3412"]);
    assert_eq!(json(&out.stdout)["rows"], serde_json::json!([[1, 2], [3, 4]]));
    let out = tropvar(&dir, &["plactic", "closure", "231"]);
    let class = json(&out.stdout);
    assert!(class["class"].as_array().unwrap().contains(&serde_json::json!("213")));
    let out = tropvar(&dir, &["plactic", "rho", "2"]);
    let image = json(&out.stdout);
    assert_eq!(image["matrix"]["dim"], 16);
    assert_eq!(image["legend"][0], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(tropvar(&dir, &["plactic", "canon", "15"]).status.code(), Some(2));
}
