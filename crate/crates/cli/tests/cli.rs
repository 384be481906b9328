use std::process::{Command, Output};

use greenmat::green::GreenSequence;
use greenmat::mtri::MtriRecord;
use greenmat::{Chirotope, Triangulation};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greenmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn table1_matches() {
    let out = run(&["table1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["values_matched"], 45);
    assert_eq!(v["signs_matched"], 45);
    assert_eq!(v["rows"].as_array().unwrap().len(), 15);
}

#[test]
fn bijection_all_pentagons() {
    let out = run(&["bijection", "--m", "5", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 5);
    for r in recs {
        assert_eq!(r["matched"], true);
        assert_eq!(r["classes"], 2);
        assert_eq!(r["stackable"], 2);
    }
}

#[test]
fn mgs_square_classes() {
    let out = run(&["mgs", "--m", "4", "--arcs", "2-4", "--classes"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["length"], 1);
    assert_eq!(recs[0]["delta"], serde_json::json!([[1, 2, 3, 4]]));
}

#[test]
fn mgs_sequences_parse_back() {
    let out = run(&["mgs", "--m", "6", "--arcs", "2-6,3-6,4-6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let t = Triangulation::parse(6, "2-6,3-6,4-6").unwrap();
    let mut n = 0;
    for l in text.lines() {
        let g: GreenSequence = serde_json::from_str(l).unwrap();
        assert_eq!(g.t, t);
        assert_eq!(serde_json::to_string(&g).unwrap(), l);
        n += 1;
    }
    assert!(n > 0);
}

#[test]
fn cluster_tilting_input_is_shifted() {
    let by_ct = run(&["triangulations", "--m", "5", "--ct", "1-3,1-4"]);
    let by_arcs = run(&["triangulations", "--m", "5", "--arcs", "2-5,3-5"]);
    assert_eq!(by_ct.status.code(), Some(0));
    assert_eq!(by_ct.stdout, by_arcs.stdout);
    let text = String::from_utf8(by_arcs.stdout).unwrap();
    let recs: Vec<MtriRecord> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r.stackable));
}

#[test]
fn chirotope_parses_back() {
    let out = run(&["chirotope", "--m", "6", "--arcs", "2-6,3-6,4-6"]);
    assert_eq!(out.status.code(), Some(0));
    let c: Chirotope = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        c,
        Chirotope::from_triangulation(&Triangulation::parse(6, "2-6,3-6,4-6").unwrap())
    );
}

#[test]
fn text_format() {
    let out = run(&["chirotope", "--m", "4", "--arcs", "1-3", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1,2,3,4 -\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["chirotope", "--m", "6"],
        vec!["chirotope", "--m", "6", "--arcs", "1-3,2-4,1-4"],
        vec![
            "chirotope",
            "--m",
            "6",
            "--arcs",
            "2-6,3-6,4-6",
            "--ct",
            "2-6,3-6,4-6",
        ],
        vec![
            "mgs",
            "--m",
            "10",
            "--arcs",
            "2-10,3-10,4-10,5-10,6-10,7-10,8-10",
        ],
        vec!["bijection", "--m", "5", "--all", "--arcs", "2-5,3-5"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = run(&[
        "triangulations",
        "--m",
        "8",
        "--arcs",
        "2-8,3-8,4-8,5-8,6-8",
        "--budget",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "realize",
        "--m",
        "7",
        "--arcs",
        "1-3,1-5,1-6,3-5",
        "--budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(lines(&out)[0]["verified"], false);
}

#[test]
fn realize_is_deterministic() {
    let args = [
        "realize",
        "--m",
        "6",
        "--arcs",
        "3-6,2-6,3-5",
        "--seed",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(lines(&a)[0]["verified"], true);
}

#[test]
fn facets_circuits_cocircuits() {
    let f = lines(&run(&["facets", "--m", "6", "--arcs", "2-6,3-6,4-6"]));
    assert_eq!(
        f[0]["upper"],
        serde_json::json!([[1, 2, 6], [2, 3, 6], [3, 4, 6], [4, 5, 6]])
    );
    let c = lines(&run(&["circuits", "--m", "6", "--arcs", "2-6,3-6,4-6"]));
    assert_eq!(c.len(), 6);
    let d = lines(&run(&["cocircuits", "--m", "6", "--arcs", "2-6,3-6,4-6"]));
    assert_eq!(d.len(), 20);
    let a = run(&["axioms", "--m", "6", "--arcs", "2-6,3-6,4-6"]);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn conjecture_sweep() {
    let out = run(&["conjectures", "--limit", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 2 + 5 + 14);
    assert!(recs
        .iter()
        .all(|r| r["non_stackable"].as_array().unwrap().is_empty() && r["realised"] == true));
}
