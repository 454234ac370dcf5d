use std::process::{Command, Output};

use serde_json::Value;

fn resurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resurf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn residue_of_one_over_xy() {
    let o = resurf(&["res2", "--surface", "p1xp1", "--q", "5", "--form", "1/(x*y)", "--curve", "line(0,1,0)", "--point", "(0,0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn residue_sum_over_conjugate_points() {
    let o = resurf(&["verify-rf1", "--q", "5", "--form", "1/(y*(x^2+2))", "--curve", "line(0,1,0)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["sum"], "0");
    assert_eq!(v["points"][0]["degree"], 2);
}

#[test]
fn demo_passes_and_is_deterministic() {
    let args = ["demo-p1xp1", "--q", "5", "--m", "1", "--n", "2", "--json"];
    let (a, b) = (resurf(&args), resurf(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["claims"].as_array().unwrap().len(), 4);
    assert_eq!(v["claims"][3]["witness"]["dim_d1_d3"], 10);
}

#[test]
fn exit_codes() {
    let usage = resurf(&["res2", "--q", "5"]);
    assert_eq!(usage.status.code(), Some(2));
    let parse = resurf(&["res2", "--q", "5", "--form", "1/(x*", "--curve", "E", "--point", "(0,0)"]);
    assert_eq!(parse.status.code(), Some(2));
    let singular = resurf(&[
        "res2", "--q", "5", "--form", "1/(y^2-x^3)", "--curve", "curve(y^2-x^3)", "--point", "(0,0)",
    ]);
    assert_eq!(singular.status.code(), Some(3));
    let broken = resurf(&[
        "check-convenient", "--surface", "p2", "--q", "5", "--delta", "list:(0,0);(1,0);(0,1)",
        "--da", "line(0,1,0)+line(0,1,-1)", "--db", "line(1,0,0)+line(1,0,-1)",
    ]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(json(&broken)["witness"]["violation"].as_str().unwrap().contains("condition (2)"));
}

#[test]
fn convenient_pair_certificate() {
    let o = resurf(&[
        "check-convenient", "--surface", "p2", "--q", "5", "--delta", "list:(0,0);(1,0);(0,1)",
        "--da", "line(0,1,0)+line(0,1,-1)", "--db", "line(1,0,0)+line(1,0,-1)-line(1,1,-2)", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["certificate"]["delta_points"].as_array().unwrap().len(), 3);
}

#[test]
fn code_verbs_round_trip() {
    let rs = resurf(&["code-build", "--q", "7", "--kind", "rs", "--k", "3", "--json"]);
    let v = json(&rs);
    let code = v["code"].to_string();
    let dual = json(&resurf(&["code-dual", "--code", &code, "--json"]));
    assert_eq!(dual["dim"], 4);
    let t = json(&resurf(&["code-tensor", "--code", &code, "--code", &dual["code"].to_string(), "--json"]));
    assert_eq!((t["dim"].clone(), t["length"].clone()), (12.into(), 49.into()));
    let hull = json(&resurf(&["code-tensor", "--code", &t["code"].to_string(), "--na", "7", "--nb", "7", "--json"]));
    assert_eq!(hull["elementary"], true);
    let f4 = json(&resurf(&["code-build", "--q", "4", "--kind", "functional", "--divisor", "E+F", "--distance", "--json"]));
    assert_eq!((f4["dim"].clone(), f4["min_distance"].clone()), (4.into(), 9.into()));
    assert_eq!(f4["code"]["m"], 2);
}

#[test]
fn riemann_roch_and_field_info() {
    let rr = json(&resurf(&["rr-basis", "--q", "5", "--divisor", "2*E - line(1,0,0)", "--json"]));
    assert_eq!(rr["dim"], 2);
    let fi = json(&resurf(&["field-info", "--p", "3", "--m-ext", "2", "--json"]));
    assert_eq!(fi["q"], 9);
    assert_eq!(fi["elements"].as_array().unwrap().len(), 9);
}

#[test]
fn orthogonality_and_duality_verbs() {
    for verb in ["verify-orth", "verify-diff-func"] {
        let o = resurf(&[verb, "--surface", "p2", "--q", "7", "--delta", "list:(0,0);(1,2);(2,4)", "--divisor", "Linf", "--json"]);
        assert_eq!(o.status.code(), Some(0), "{verb}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json(&o)["pass"], true);
    }
}

#[test]
fn expansion() {
    let o = resurf(&["expand", "--q", "5", "--form", "1/(x*y*(1-y))", "--precision", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["residue2"], "1");
}
