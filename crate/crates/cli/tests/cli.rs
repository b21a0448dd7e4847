use std::path::PathBuf;
use std::process::{Command, Output};

fn finrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finrep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

const SMALL: [&str; 6] = ["--n", "1", "--t", "2", "--q", "2"];

#[test]
fn build_prints_counts() {
    let o = finrep(&["build", "x", "--n", "1", "--t", "2", "--q", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("points=81"), "{s}");
    assert!(s.contains("lines=36"), "{s}");
}

#[test]
fn build_writes_json_that_matches_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coset.json");
    let p = path.to_str().unwrap();
    let o = finrep(&["build", "coset", "--n", "1", "--t", "2", "--q", "2", "--out", p]);
    assert!(o.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    let exported = stdout(&finrep(&["export", "coset", "--n", "1", "--t", "2", "--q", "2"]));
    assert_eq!(written, exported);
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["schema"], "finrep.incidence/1");
}

#[test]
fn zero_dimension_is_a_usage_error() {
    let o = finrep(&["build", "x", "--n", "0", "--t", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_field_and_format_are_usage_errors() {
    assert_eq!(finrep(&["build", "x", "--n", "1", "--t", "2", "--q", "6"]).status.code(), Some(2));
    assert_eq!(finrep(&["build", "x", "--n", "1", "--t", "2"]).status.code(), Some(2));
    assert_eq!(finrep(&["export", "x", "--n", "1", "--t", "2", "--q", "2", "--format", "xml"]).status.code(), Some(2));
    let o = finrep(&["build", "x", "--n", "1", "--t", "2", "--q", "4", "--field", "2^3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn field_spec_and_order_agree() {
    let a = stdout(&finrep(&["build", "x", "--n", "1", "--t", "2", "--q", "4"]));
    let b = stdout(&finrep(&["build", "x", "--n", "1", "--t", "2", "--field", "2^2/x2+x+1"]));
    assert_eq!(a, b);
    assert!(a.contains("points=256 lines=80"), "{a}");
}

#[test]
fn cayley_dimacs_export_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.dimacs");
    let second = dir.path().join("b.dimacs");
    for path in [&first, &second] {
        let mut args = vec!["export", "cayley", "--format", "dimacs", "--out", path.to_str().unwrap()];
        args.extend(SMALL);
        assert!(finrep(&args).status.success());
    }
    let a = std::fs::read(&first).unwrap();
    assert_eq!(a, std::fs::read(&second).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.lines().any(|l| l == "p edge 16 72"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 72);
}

#[test]
fn pointgraph_json_has_graph_schema() {
    let mut args = vec!["export", "pointgraph"];
    args.extend(SMALL);
    let v: serde_json::Value = serde_json::from_str(&stdout(&finrep(&args))).unwrap();
    assert_eq!(v["schema"], "finrep.graph/1");
    assert_eq!(v["vertices"], 16);
    assert_eq!(v["edges"].as_array().unwrap().len(), 72);
}

#[test]
fn orders_report_shows_the_factorization() {
    let o = finrep(&["verify", "orders", "--n", "1", "--t", "2", "--q", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "identity"), Some("93312=3x31104"));
    assert_eq!(value(&s, "result"), Some("pass"));
}

#[test]
fn property_star_failure_exits_one_with_witness() {
    let o = finrep(&["verify", "property-star", "--input", &fixture("two_lines_no_meet_pg2_3.json")]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert_eq!(value(&s, "result"), Some("fail"));
    assert_eq!(value(&s, "witness_meet"), Some("[0,0,1]"));
    assert_eq!(value(&s, "meet_in_set"), Some("false"));
    assert_eq!(value(&s, "oracle_agrees"), Some("true"));
}

#[test]
fn closure_of_a_fixture_is_a_subplane() {
    let o = finrep(&["verify", "closure", "--input", &fixture("two_lines_pg2_3.json")]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "closure_size"), Some("13"));
    assert_eq!(value(&s, "subgeometry_order"), Some("3"));
}

#[test]
fn budget_overrun_exits_three() {
    let o = finrep(&["verify", "group", "--n", "1", "--t", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = finrep(&["build", "x", "--n", "2", "--t", "2", "--q", "3", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn iso_report_counts_flags() {
    let mut args = vec!["verify", "iso-x-coset"];
    args.extend(SMALL);
    let s = stdout(&finrep(&args));
    assert_eq!(value(&s, "flags"), Some("48/48"));
}

#[test]
fn json_report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut args = vec!["verify", "srg", "--out", path.to_str().unwrap()];
    args.extend(SMALL);
    assert!(finrep(&args).status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "finrep.report/1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["details"]["k"], 9);
    assert_eq!(v["details"]["mu"], 6);
}

#[test]
fn every_check_is_wired() {
    let checks = [
        "iso-x-coset",
        "iso-coset-linrep",
        "iso-x-linrep",
        "barlotti",
        "orders",
        "brute",
        "srg",
        "closure",
        "star-oracle",
        "directions",
        "group",
        "spread",
        "closure-extension",
    ];
    for c in checks {
        let mut args = vec!["verify", c, "--samples", "10"];
        args.extend(SMALL);
        let o = finrep(&args);
        let s = stdout(&o);
        assert!(o.status.success(), "{c}: {s}{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(value(&s, "check"), Some(c));
        assert_eq!(value(&s, "result"), Some("pass"));
    }
    let o = finrep(&["verify", "property-star", "--input", &fixture("two_lines_pg2_3.json")]);
    assert_eq!(value(&stdout(&o), "check"), Some("property-star"));
}

#[test]
fn brute_force_on_each_model_agrees() {
    for on in ["x", "coset", "linrep", "genlinrep"] {
        let mut args = vec!["verify", "brute", "--on", on];
        args.extend(SMALL);
        let s = stdout(&finrep(&args));
        assert_eq!(value(&s, "order"), Some("576"), "{on}");
    }
}

#[test]
fn linrep_from_input_set() {
    let o = finrep(&["build", "linrep", "--input", &fixture("two_lines_pg2_3.json")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // 27 affine points of AG(3, 3); 9 parallel lines per point of the set
    assert!(stdout(&o).starts_with("points=27 lines=63 "));
}
