//! End-to-end runs of the `lmapper` binary on the shipped assets.

use std::path::PathBuf;
use std::process::{Command, Output};

use leray_mapper::io::GraphJson;

fn asset(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../assets")
        .join(name)
        .display()
        .to_string()
}

fn lmapper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmapper"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lmapper-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn dot_parses(text: &str) {
    graphviz_rust::parse(text).unwrap_or_else(|e| panic!("invalid DOT: {e}\n{text}"));
}

#[test]
fn build_hexagon_fine() {
    let out = tmp("hex.json");
    let dot = tmp("hex.dot");
    let o = lmapper(&[
        "build",
        "--complex",
        &asset("hexagon.scx"),
        "--cover",
        &asset("hexagon_fine.cov"),
        "--field",
        "q",
        "--max-deg",
        "0",
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let g = GraphJson::parse(&text).unwrap();
    assert_eq!(g.field, "q");
    assert_eq!((g.nodes.len(), g.edges.len()), (4, 4));
    assert!(g.nodes.iter().all(|n| n.betti == vec![1]));
    assert!(g.shapes_consistent());
    assert_eq!(g.emit(), text);
    let dot = std::fs::read_to_string(&dot).unwrap();
    dot_parses(&dot);
    assert_eq!(dot.matches("b=(1)").count(), 8);
}

#[test]
fn build_torus_is_deterministic() {
    let run = |name: &str| {
        let out = tmp(name);
        let dot = tmp(&format!("{name}.dot"));
        let o = lmapper(&[
            "build",
            "--complex",
            &asset("torus.scx"),
            "--cover",
            &asset("torus_uniform4.cov"),
            "--out",
            out.to_str().unwrap(),
            "--dot",
            dot.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        (
            std::fs::read_to_string(out).unwrap(),
            std::fs::read_to_string(dot).unwrap(),
        )
    };
    let (a, dot) = run("torus-a.json");
    let (b, _) = run("torus-b.json");
    assert_eq!(a, b);
    dot_parses(&dot);
    let g = GraphJson::parse(&a).unwrap();
    let cylinders = g
        .nodes
        .iter()
        .filter(|n| n.betti.get(1) == Some(&1))
        .count();
    assert_eq!(cylinders, 2);
    // the two parallel edges between the middle nodes survive in DOT
    assert_eq!(dot.matches("n1 -- n2").count(), 2);
}

#[test]
fn dot_valid_for_every_shipped_complex() {
    for (complex, cover) in [
        ("hexagon.scx", "hexagon_coarse.cov"),
        ("hexagon.scx", "single.cov"),
        ("hexagon_subdivided.scx", "torus_uniform4.cov"),
    ] {
        let out = tmp(&format!("{complex}-{cover}.json"));
        let dot = tmp(&format!("{complex}-{cover}.dot"));
        let o = lmapper(&[
            "build",
            "--complex",
            &asset(complex),
            "--cover",
            &asset(cover),
            "--out",
            out.to_str().unwrap(),
            "--dot",
            dot.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{complex} {cover}: {}",
            stderr(&o)
        );
        dot_parses(&std::fs::read_to_string(dot).unwrap());
    }
}

#[test]
fn query_reproduces_both_covers() {
    let q = |cover: &str, lo: &str, hi: &str| {
        lmapper(&[
            "query",
            "--complex",
            &asset("hexagon.scx"),
            "--cover",
            &asset(cover),
            "--max-deg",
            "0",
            "--interval",
            lo,
            hi,
        ])
    };
    let o = q("hexagon_coarse.cov", "1.3", "1.7");
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("C(V)      [1]"), "{s}");
    assert!(s.contains("L(V)      [2]"), "{s}");
    assert!(s.trim_end().ends_with("MISMATCH"));

    let s = stdout(&q("hexagon_fine.cov", "1.3", "1.7"));
    assert!(s.contains("C(V)      [2]"), "{s}");
    assert!(s.trim_end().ends_with("\nMATCH"));

    let s = stdout(&q("hexagon_fine.cov", "-9", "-8"));
    assert!(s.contains("C(V)      [0]") && s.contains("L(V)      [0]"));
    assert!(s.trim_end().ends_with("\nMATCH"));
}

#[test]
fn verify_prop_hexagon() {
    let o = lmapper(&[
        "verify-prop",
        "--complex",
        &asset("hexagon.scx"),
        "--cover",
        &asset("hexagon_fine.cov"),
        "--samples",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("50 of 50 passed"));

    let o = lmapper(&[
        "verify-prop",
        "--complex",
        &asset("hexagon.scx"),
        "--cover",
        &asset("hexagon_fine.cov"),
        "--samples",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 of 0 passed"));
}

#[test]
fn validation_errors_exit_2() {
    // the plain hexagon's edges do not fit in a 4-element uniform cover
    let o = lmapper(&[
        "verify-prop",
        "--complex",
        &asset("hexagon.scx"),
        "--cover",
        &asset("torus_uniform4.cov"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not admissible"), "{}", stderr(&o));

    let o = lmapper(&[
        "build",
        "--complex",
        &asset("hexagon.scx"),
        "--cover",
        &asset("triple.cov"),
        "--out",
        "/dev/null",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("elements 0, 1, 2"));
}

#[test]
fn parse_errors_exit_3() {
    let bad = tmp("bad.scx");
    std::fs::write(&bad, "v 0 0\nv 1 1\ns 0 1\ns 1 9\n").unwrap();
    let o = lmapper(&[
        "build",
        "--complex",
        bad.to_str().unwrap(),
        "--cover",
        &asset("hexagon_fine.cov"),
        "--out",
        "/dev/null",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains(":4:"), "{}", stderr(&o));

    let bad = tmp("bad.cov");
    std::fs::write(&bad, "i 0 1\ni 3 2\n").unwrap();
    let o = lmapper(&["nerve", "--cover", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains(":2:"));
}

#[test]
fn nerve_command() {
    let o = lmapper(&["nerve", "--cover", &asset("hexagon_fine.cov")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("vertices 3")
            && s.contains("edges 2")
            && s.contains("0 -- 1")
            && s.contains("1 -- 2")
    );

    let s = stdout(&lmapper(&["nerve", "--cover", &asset("single.cov")]));
    assert!(s.contains("vertices 1") && s.contains("edges 0"));

    let o = lmapper(&["nerve", "--cover", &asset("triple.cov")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("0, 1, 2"));

    let o = lmapper(&[
        "nerve",
        "--cover",
        &asset("torus_uniform4.cov"),
        "--complex",
        &asset("torus.scx"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("edges 3"));
}

#[test]
fn converge_command() {
    let csv = tmp("hex.csv");
    let o = lmapper(&[
        "converge",
        "--complex",
        &asset("hexagon_subdivided.scx"),
        "--base-n",
        "2",
        "--levels",
        "4",
        "--samples",
        "20",
        "--seed",
        "42",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let table = std::fs::read_to_string(csv).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[3].ends_with(",0,pass"), "{table}");

    let o = lmapper(&[
        "converge",
        "--complex",
        &asset("hexagon_subdivided.scx"),
        "--levels",
        "1",
        "--samples",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn help_and_version() {
    assert_eq!(lmapper(&["--help"]).status.code(), Some(0));
    assert_eq!(lmapper(&["--version"]).status.code(), Some(0));
    assert_eq!(lmapper(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lmapper(&["query", "--complex", "x"]).status.code(), Some(1));
}
