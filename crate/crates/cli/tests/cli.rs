use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudoalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn current_sl2_verifies() {
    let o = run(&["verify", "--structure", "cur:sl2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn virasoro_cohomology() {
    let o = run(&["--format", "json", "cohomology", "central", "--structure", "wd:dim1", "--dmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["dimension"], 1);
    assert_eq!(v["result"]["representatives"][0], "d^(3)");
    assert_eq!(v["seed"], 1);
}

#[test]
fn symmetric_alpha_fails_skew_commutativity() {
    let o = run(&["verify", "--structure", "rank1", "--alpha", "d^(1)#d^(1)"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("[FAIL] skew-commutativity"));
    assert!(s.contains("witness"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["verify", "--structure", "nope:x"]).status.code(), Some(2));
    assert_eq!(run(&["bracket", "--structure", "wd:dim1", "--left", "e_5", "--right", "e_1"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "central"]).status.code(), Some(2));
    assert_eq!(run(&["poisson", "catalog", "--family", "h", "--r", "3", "--N", "3"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "--seed", "11", "verify", "--structure", "wd:aff"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn brackets_and_forms() {
    let o = run(&["bracket", "--structure", "wd:dim1", "--left", "d1", "--right", "d1"]);
    assert_eq!(stdout(&o).trim(), "-(1 # 1) @ d^(1) d1 + 2*(d^(1) # 1) @ d1");
    let o = run(&["forms", "d", "--algebra", "abelian2", "--form", "e*^(1)"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["forms", "verify", "--algebra", "aff", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn poisson_files() {
    let o = run(&["poisson", "verify", &data("h22_psi.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not trivial"));
    let o = run(&["poisson", "verify", &data("w11_perturbed.json")]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["poisson", "export", "--structure", "wd:dim1"]);
    assert!(stdout(&o).contains("[u_λ u]"));
    let o = run(&["poisson", "import", &data("h22_psi.json")]);
    assert!(stdout(&o).contains("central terms: β(1,1) = -d^(1,0)"));
}

#[test]
fn catalog_lists_names() {
    let o = run(&["catalog"]);
    assert!(stdout(&o).contains("k-type"));
    let o = run(&["catalog", "h-type:abelian2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generators: e"));
}
