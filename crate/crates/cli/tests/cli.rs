use std::path::Path;
use std::process::{Command, Output};

fn quadlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadlab"))
        .args(args)
        .env_remove("QUADLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(dir: &Path, name: &str) -> String {
    let p = dir.join(format!("{name}.json"));
    let o = quadlab(&["gen", name, "-o", p.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_k6_has_w3() {
    let o = quadlab(&["gen", "k6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let vs = v["vertices"].as_array().unwrap();
    assert_eq!(vs.len(), 6);
    assert_eq!(vs[2], serde_json::json!(["2", "0", "1"]));
}

#[test]
fn gen_unknown_lists_names() {
    let o = quadlab(&["gen", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k14"));
}

#[test]
fn analyze_k6_and_k14() {
    let dir = tempfile::tempdir().unwrap();
    let k6 = gen(dir.path(), "k6");
    let o = quadlab(&["analyze", &k6, "--json", "--no-timing"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["quadrisecants"].as_array().unwrap().len(), 1);
    assert_eq!(r["self_intersections"]["is_embedded"], false);
    assert_eq!(r["verdict"], "FAILS-embedding");
    assert!(r.get("timings").is_none());

    let k14 = gen(dir.path(), "k14");
    let o = quadlab(&["verify-conjecture", &k14]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "FAILS-type");
}

#[test]
fn analyze_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let k = gen(dir.path(), "k14");
    let a = quadlab(&["analyze", &k, "--json", "--no-timing", "--threads", "1"]);
    let b = quadlab(&["analyze", &k, "--json", "--no-timing", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("tri.json");
    std::fs::write(&tri, r#"{"name":"tri","vertices":[["0","0","0"],["1","0","0"],["0","1","0"]]}"#).unwrap();
    let o = quadlab(&["analyze", tri.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    assert_eq!(quadlab(&["analyze", missing.to_str().unwrap()]).status.code(), Some(2));

    // A planar square: every quadruple of edges has infinitely many transversals.
    let flat = dir.path().join("flat.json");
    std::fs::write(
        &flat,
        r#"{"name":"flat","vertices":[["0","0","0"],["1","0","0"],["1","1","0"],["0","1","0"]]}"#,
    )
    .unwrap();
    assert_eq!(quadlab(&["analyze", flat.to_str().unwrap()]).status.code(), Some(3));

    let quad = dir.path().join("quad.json");
    std::fs::write(
        &quad,
        r#"{"name":"quad","vertices":[["0","0","0"],["4","1","0"],["3","5","1"],["-1","3","2"]]}"#,
    )
    .unwrap();
    let out = dir.path().join("out.json");
    let o = quadlab(&["construct", "k-star", quad.to_str().unwrap(), "--eta", "0", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_k_star_writes_knot_and_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let quad = dir.path().join("quad.json");
    std::fs::write(
        &quad,
        r#"{"name":"quad","vertices":[["0","0","0"],["4","1","0"],["3","5","1"],["-1","3","2"]]}"#,
    )
    .unwrap();
    let out = dir.path().join("star.json");
    let o = quadlab(&["construct", "k-star", quad.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let k: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(k["vertices"].as_array().unwrap().len(), 10);
    let t = std::fs::read_to_string(dir.path().join("star.json.transcript.json")).unwrap();
    let t: serde_json::Value = serde_json::from_str(&t).unwrap();
    assert_eq!(t["construction"]["kind"], "k-star");
    let v = quadlab(&["verify-conjecture", out.to_str().unwrap(), "--skip-classify"]);
    assert_eq!(stdout(&v).trim(), "FAILS-embedding");
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let k6 = gen(dir.path(), "k6");
    let obj = stdout(&quadlab(&["export", &k6, "--format", "obj"]));
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 6);
    assert!(obj.contains("l 1 2 3 4 5 6 1"));

    let k14 = gen(dir.path(), "k14");
    let csv = stdout(&quadlab(&["export", &k14, "--format", "csv", "--precision", "30"]));
    let row = csv.lines().nth(6).unwrap();
    // W6 = (-1, 1/10, -171/20)
    assert_eq!(row, "6,-1,0.1,-8.55");

    let report = dir.path().join("k14.report.json");
    let o = quadlab(&["analyze", &k14, "--no-timing", "-o", report.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = stdout(&quadlab(&["export", report.to_str().unwrap(), "--format", "csv", "--precision", "30"]));
    assert_eq!(csv.lines().count(), 1 + 16);
    assert!(csv.starts_with("line,edge,parameter,x,y,z"));

    let bad = quadlab(&["export", &k6, "--format", "stl"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn seed_from_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_quadlab"))
        .args(["gen", "random", "--edges", "6"])
        .env("QUADLAB_SEED", "11")
        .output()
        .unwrap();
    let b = quadlab(&["gen", "random", "--edges", "6", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = quadlab(&["gen", "random", "--edges", "6", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}
