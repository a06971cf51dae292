use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn present_text_and_json() {
    let o = run(&["present", "--n", "1", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "gens: F(1); rels: F(1)^2");

    let o = run(&["present", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
    assert_eq!(v["relators"].as_array().unwrap().len(), 7);
}

#[test]
fn present_rejects_large_n() {
    let o = run(&["present", "--n", "9"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());
}

#[test]
fn eval_and_factor() {
    let o = run(&["eval", "--n", "2", "--word", "F(1) E(2,1)"]);
    assert_eq!(stdout(&o).trim(), "-1,0;2,1");
    let o = run(&["factor", "--n", "2", "--matrix", "1,4;0,1"]);
    assert_eq!(stdout(&o).trim(), "E(1,2)^2");
}

#[test]
fn factor_non_member_exits_2() {
    let o = run(&["factor", "--n", "2", "--matrix", "1,1;0,1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in Gamma_2(2)"));
}

#[test]
fn parse_errors_exit_1_with_position() {
    let o = run(&["eval", "--n", "2", "--word", "E(1,2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 5"));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failed"], 0);
    let relator_checks = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["label"].as_str().unwrap().contains(':'))
        .count();
    assert_eq!(relator_checks, 37);

    assert_eq!(code(&run(&["verify", "--appendix"])), 0);
    assert_eq!(code(&run(&["verify", "--edges"])), 0);
    assert_eq!(code(&run(&["verify", "--abelian"])), 0);
    assert_eq!(code(&run(&["verify", "--n", "0"])), 1);
}

#[test]
fn roundtrip_is_deterministic() {
    let args = ["verify", "--roundtrip", "--n", "3", "--trials", "20", "--seed", "11", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rs_prints_table_and_final_presentation() {
    let o = run(&["rs"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("i  w=x"));
    assert!(text.contains("final: gens: E(1,2), E(2,1), F(1), F(2)"));
}

#[test]
fn complex_and_assemble() {
    let o = run(&["complex", "--n", "3"]);
    assert!(stdout(&o).contains("[7, 21, 28]"));
    let o = run(&["assemble", "--n", "4", "--identified", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 16);
    assert_eq!(v["relators"].as_array().unwrap().len(), 122);
}
