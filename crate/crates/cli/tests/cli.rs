use std::process::Command;

use serde_json::Value;

fn klrd(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_klrd")).args(args).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8_lossy(&out.stderr).to_string())
}

fn fixture() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/permutation_p_p5.json").to_string()
}

#[test]
fn relations_pass_and_report_header() {
    let (code, j, _) = klrd(&["verify-relations", "--m", "2", "--labels", "p,p^3,-p^5"]);
    assert_eq!(code, 0);
    assert_eq!(j["passed"], true);
    assert_eq!(j["header"]["tool"], "klrd");
    assert_eq!(j["command"], "verify-relations");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(klrd(&["verify-relations", "--m", "0", "--labels", "p"]).0, 2);
    assert_eq!(klrd(&["gdim", "--nu", "p,p^-1", "--from", "p^3", "--to", "p"]).0, 2);
    assert_eq!(klrd(&["transport", "--module", "/nonexistent.json"]).0, 2);
    assert_eq!(klrd(&["orbit", "--nu", "p^2"]).0, 2);
}

#[test]
fn gdim_of_rank_one_block() {
    let (code, j, _) = klrd(&["gdim", "--nu", "p,p^-1", "--from", "p", "--to", "p", "--order", "6"]);
    assert_eq!(code, 0);
    // k[kappa] in even degrees
    assert_eq!(j["result"]["gdim"], "1+v^2+v^4+v^6");
}

#[test]
fn orbit_parts_have_equal_size() {
    let (code, j, _) = klrd(&["orbit", "--nu", "p,p^-1,p^3,p^-3"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["plus"].as_array().unwrap().len(), 4);
    assert_eq!(j["result"]["minus"].as_array().unwrap().len(), 4);
}

#[test]
fn ef_check_on_phi() {
    let (code, j, _) = klrd(&["ef-check", "--i", "p", "--j", "p", "--a", "phi+"]);
    assert_eq!(code, 0);
    assert_eq!(j["passed"], true);
}

#[test]
fn transport_fixture_round_trip() {
    let dir = std::env::temp_dir().join(format!("klrd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("hecke.json");
    let (code, j, _) = klrd(&["transport", "--module", &fixture(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{j}");
    let h: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(h["m"], 2);
    assert_eq!(h["T"].as_array().unwrap().len(), 2);
    let (code, _, _) = klrd(&["transport", "--module", &fixture(), "--f", "cayley"]);
    assert_eq!(code, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_module_names_the_field() {
    let dir = std::env::temp_dir().join(format!("klrd-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut m: Value = serde_json::from_str(&std::fs::read_to_string(fixture()).unwrap()).unwrap();
    m["sigma"][0][0]["matrix"] = serde_json::json!([["x"]]);
    let path = dir.join("bad.json");
    std::fs::write(&path, m.to_string()).unwrap();
    let (code, _, err) = klrd(&["transport", "--module", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("/sigma/0/0/matrix"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn module_and_demo() {
    let (code, j, _) = klrd(&["module", "--seq", "p", "--truncated", "3"]);
    assert_eq!(code, 0);
    assert_eq!(j["blocks"][0]["dim"], 3);
    let (code, j, _) = klrd(&["demo"]);
    assert_eq!(code, 0);
    assert_eq!(j["passed"], true);
}
