use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobarlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn phi_on_a_generator() {
    let o = run(&["phi", "--model", "deltabar2", "--generator", "(012)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "+1·[t((012))^-1 * t(s1 (12))^-1]");
}

#[test]
fn psi_on_an_inverse_generator() {
    let o = run(&["psi", "--model", "deltabar2", "--word", "[t((012))^-1]", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "+1·[s-1 (012) | inv (12)]");
}

#[test]
fn homology_of_s3() {
    let o = run(&["homology", "--model", "sphere3", "--max-degree", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let betti: Vec<u64> = v.as_array().unwrap().iter().map(|g| g["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, [1, 0, 1, 0, 1]);
}

#[test]
fn homotopy_residual_vanishes() {
    let o = run(&["homotopy", "--model", "sphere2", "--word", "[t(sigma) * t(sigma)]", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("residual:\n0"));
}

#[test]
fn verify_passes_on_s2() {
    let o = run(&["verify", "--model", "sphere2", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bad_input_exits_with_2() {
    assert_eq!(run(&["model", "--model", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--model", "deltabar2"]).status.code(), Some(2));
    assert_eq!(run(&["psi", "--model", "sphere2", "--word", "[t(bogus)]", "--degree", "1"]).status.code(), Some(2));
}
