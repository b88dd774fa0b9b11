use std::path::PathBuf;
use std::process::{Command, Output};

fn graph(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../graphs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tuttehom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tuttehom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn triangle_table_has_two_torsion() {
    let o = tuttehom(&["homology", &graph("k3.g")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "1\t2\t0\t0\t[2]"), "{out}");
    assert!(out.contains("H^1 = Z{(1,0)} ⊕ Z_2{(2,0)}"));
    assert!(out.contains("euler  -y - x - x*y + x^3"));
}

#[test]
fn single_loop_json() {
    let o = tuttehom(&["homology", &graph("l1.g"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["homology"].as_array().unwrap();
    let got: Vec<(u64, i64, i64)> = rows
        .iter()
        .map(|r| (r["i"].as_u64().unwrap(), r["p"].as_i64().unwrap(), r["q"].as_i64().unwrap()))
        .collect();
    assert_eq!(got, vec![(1, 0, 1), (1, 1, 1)]);
}

#[test]
fn json_is_byte_stable() {
    let a = tuttehom(&["verify", &graph("fig1.g"), "--json", "--seed", "9"]);
    let b = tuttehom(&["verify", &graph("fig1.g"), "--json", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn edgeless_pair() {
    let o = tuttehom(&["homology", &graph("edgeless2.g"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let free: Vec<(i64, u64)> = v["homology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["p"].as_i64().unwrap(), r["free"].as_u64().unwrap()))
        .collect();
    assert_eq!(free, vec![(0, 1), (1, 2), (2, 1)]);
}

#[test]
fn tutte_polynomials() {
    let cases = [
        ("k3.g", "T          y + x + x^2", "T-hat      -y - x - x*y + x^3"),
        ("l1.g", "T          y", "T-hat      -y - x*y"),
        ("p2.g", "T          y + x", "T-hat      y + x + x*y + x^2"),
    ];
    for (file, t, hat) in cases {
        let o = tuttehom(&["tutte", &graph(file)]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.contains(t) && out.contains(hat) && out.contains("round trip pass"), "{out}");
    }
}

#[test]
fn verify_selected_checks() {
    let o = tuttehom(&["verify", &graph("fig1.g"), "--checks", "d2,euler"]);
    assert_eq!(o.status.code(), Some(0));
    let o = tuttehom(&["verify", &graph("k3.g"), "--checks", "les"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("gamma* rank i=0: 1"));
}

#[test]
fn verify_small_corpus() {
    let o = tuttehom(&["verify", "--corpus", "--max-edges", "3", "--checks", "euler,d2,ses,les,pendant"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn other_systems() {
    let o = tuttehom(&["homology", "complete:3", "--system", "chromatic"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("euler  -x + x^3"));
    let o = tuttehom(&["verify", &graph("k3.g"), "--system", "zero-b0", "--checks", "euler,d2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn custom_system_from_file() {
    let path = std::env::temp_dir().join(format!("tuttehom-custom-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"A":{"basis":["1","x"],"deg":[[0,0],[1,0]],"mult":[[[1,0],[0,1]],[[0,1],[0,0]]],"unit":[1,0]},
            "B":{"basis":["1","y"],"deg":[[0,0],[0,1]],"b0":[1,0]}}"#,
    )
    .unwrap();
    let spec = format!("custom:{}", path.display());
    let o = tuttehom(&["verify", &graph("l1.g"), "--system", &spec, "--checks", "euler"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tuttehom(&["homology", "/no/such/file.g"]).status.code(), Some(2));
    assert_eq!(tuttehom(&["verify", &graph("k3.g"), "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(tuttehom(&["homology", &graph("k3.g"), "--max-edges", "15"]).status.code(), Some(2));
    assert_eq!(tuttehom(&["homology", &graph("k3.g"), "--system", "bogus"]).status.code(), Some(2));
    assert_eq!(tuttehom(&["homology", &graph("k3.g"), "--max-edges", "2"]).status.code(), Some(2));
    assert_eq!(tuttehom(&["verify"]).status.code(), Some(2));
    assert_eq!(tuttehom(&["homology", "cycle:40"]).status.code(), Some(2));
}

#[test]
fn families_listing() {
    let o = tuttehom(&["families", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}
