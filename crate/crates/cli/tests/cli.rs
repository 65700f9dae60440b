use std::process::{Command, Output};

fn dimerlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimerlab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(machine: &'a str, key: &str) -> Option<&'a str> {
    machine.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('\t'))
}

#[test]
fn validate_fixture_and_file() {
    let o = dimerlab(&["validate", "c3_hex"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid: 1 vertices, 3 arrows, 2 faces"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.dimer");
    let text = stdout(&dimerlab(&["fixtures", "--emit", "c3_hex"]));
    std::fs::write(&path, text).unwrap();
    let o = dimerlab(&["--machine", "validate", path.to_str().unwrap()]);
    assert_eq!(field(&stdout(&o), "valid"), Some("yes"));
}

#[test]
fn unknown_input_exits_2() {
    let o = dimerlab(&["validate", "no_such_fixture"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no file or fixture"));
}

#[test]
fn cancellativity_verdicts() {
    let o = dimerlab(&["--machine", "cancellative", "fig1iii_Q"]);
    let m = stdout(&o);
    assert_eq!(field(&m, "cancellative"), Some("no"));
    assert!(!field(&m, "uncovered").unwrap().is_empty());
    let o = dimerlab(&["--machine", "cancellative", "fig1i_Qp"]);
    assert_eq!(field(&stdout(&o), "cancellative"), Some("yes"));
}

#[test]
fn simple_matchings_of_c3() {
    let o = dimerlab(&["--machine", "simple", "c3_hex"]);
    assert_eq!(field(&stdout(&o), "simple_matchings"), Some("3"));
}

#[test]
fn pairs_found_on_a_non_cancellative_quiver() {
    let o = dimerlab(&["--machine", "pairs", "fig1iii_Q", "--max-len", "2", "--limit", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "pairs"), Some("1"));
}

/// Source and arrow list of a built-in map.
fn map_spec(name: &str) -> (String, String) {
    let list = stdout(&dimerlab(&["--machine", "fixtures", "--list"]));
    let spec = list
        .lines()
        .filter_map(|l| l.strip_prefix("map\t"))
        .find(|l| l.starts_with(&format!("{name} ")))
        .unwrap();
    let parts: Vec<&str> = spec.split(' ').collect();
    (parts[1].to_string(), parts[2].to_string())
}

#[test]
fn contract_writes_the_target() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("target.dimer");
    let (source, arrows) = map_spec("fig1i_map");
    let o = dimerlab(&[
        "--machine",
        "contract",
        &source,
        "--arrows",
        &arrows,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = stdout(&o);
    let o = dimerlab(&["--machine", "validate", out.to_str().unwrap()]);
    let v = stdout(&o);
    assert_eq!(field(&v, "valid"), Some("yes"));
    assert_eq!(field(&v, "vertices"), field(&m, "vertices"));
}

#[test]
fn contracting_a_face_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.dimer");
    let o = dimerlab(&[
        "contract",
        "non_example_unit",
        "--arrows",
        "a",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn check_cyclic_on_figure_maps_and_control() {
    for name in ["fig1i_map", "fig1ii_map", "fig1iii_map", "fig1iv_map"] {
        let (source, arrows) = map_spec(name);
        let o = dimerlab(&["--machine", "check-cyclic", &source, &arrows]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert_eq!(field(&stdout(&o), "cyclic"), Some("yes"), "{name}");
    }
    let o = dimerlab(&["--machine", "check-cyclic", "fig1iii_Q", "c,r"]);
    let m = stdout(&o);
    assert_eq!(field(&m, "cyclic"), Some("no"));
    assert_eq!(field(&m, "discrepancy"), Some("m1"));
}

#[test]
fn c3_is_commutative() {
    let o = dimerlab(&["--machine", "center", "c3_hex"]);
    assert_eq!(o.status.code(), Some(0));
    let center = stdout(&o);
    let o = dimerlab(&["--machine", "cycle-algebra", "c3_hex"]);
    let cycles = stdout(&o);
    assert_eq!(field(&center, "center.generators"), Some("3"));
    for k in 0..3 {
        let key = format!(".generator.{k}");
        assert_eq!(
            field(&center, &format!("center{key}")),
            field(&cycles, &format!("cycle_algebra{key}"))
        );
    }
}

#[test]
fn tiny_bounds_report_unsaturated_with_exit_3() {
    let o = dimerlab(&["center", "fig1i_Qp", "--max-len", "1", "--box", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("unsaturated"));
}

#[test]
fn representation_values() {
    let o = dimerlab(&["--machine", "rep", "c3_hex@", "--values", "m0=2,m1=1/2,m2=-3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = stdout(&o);
    assert_eq!(field(&m, "relations"), Some("satisfied"));
    assert_eq!(field(&m, "simple"), Some("yes"));
    let values: Vec<&str> = ["x", "y", "z"]
        .iter()
        .map(|a| field(&m, &format!("arrow.{a}")).unwrap())
        .collect();
    let mut sorted = values.clone();
    sorted.sort();
    assert_eq!(sorted, ["-3", "1/2", "2"]);

    let o = dimerlab(&["rep", "c3_hex@", "--values", "m0=2,m1=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let o = dimerlab(&[
            "render",
            "fig1iii_Q",
            "--out",
            out.to_str().unwrap(),
            "--contracted",
            "c",
            "--matching",
            "m0",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("id=\"arrow-c\""));
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn fixtures_list_and_emit() {
    let o = dimerlab(&["fixtures", "--list"]);
    assert!(stdout(&o).lines().any(|l| l == "c3_hex"));
    let o = dimerlab(&["fixtures", "--emit", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}
