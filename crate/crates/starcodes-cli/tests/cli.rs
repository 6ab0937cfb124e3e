use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starcodes")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("starcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const PARITY3: &str = "2^1/3\n3 2\n1 0 1\n0 1 1\n";

#[test]
fn seq_reproduces_reed_solomon_dimensions() {
    let out = run(&["seq", "--family", "rs:q=5,n=5,k=3", "--tmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 3, 5, 5, 5]));
    assert_eq!(v["result"]["dmin"], serde_json::json!([5, 3, 1, 1, 1]));

    let csv = run(&["--format", "csv", "seq", "--family", "rs:q=5,n=5,k=3", "--tmax", "4"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let dims: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(dims.join(","), "1,3,5,5,5");
}

#[test]
fn zeroth_power_is_all_ones() {
    let p = write_temp("parity.code", PARITY3);
    let out = run(&["power", "--in", p.to_str().unwrap(), "--t", "0", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[1..], &["3 1", "1 1 1"]);
}

#[test]
fn trisymmetric_complexity_of_gf4() {
    let v = json(&run(&["mu", "--q", "2", "--k", "2", "--variant", "tri"]));
    assert_eq!(v["result"]["value"], 3);
}

#[test]
fn text_output_round_trips() {
    let out = run(&["product", "--family", "rm:q=2,r=1,m=3", "--family", "rm:q=2,r=1,m=3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let p = write_temp("square.code", &String::from_utf8(out.stdout).unwrap());
    let back = json(&run(&["power", "--in", p.to_str().unwrap(), "--t", "1"]));
    let direct = json(&run(&["power", "--family", "rm:q=2,r=2,m=3", "--t", "1"]));
    assert_eq!(back["result"], direct["result"]);
}

#[test]
fn bounds_spellings_agree() {
    let a = run(&["bounds:ddual", "--family", "rs:q=5,n=5,k=2", "--family", "rs:q=5,n=5,k=2"]);
    let b = run(&["bounds", "ddual", "--family", "rs:q=5,n=5,k=2", "--family", "rs:q=5,n=5,k=2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["verified"], true);
}

#[test]
fn failed_verification_exits_one() {
    let p = write_temp("bad_chain.code", &format!("{PARITY3}{PARITY3}"));
    let out = run(&["lattice-check", "--chain", p.to_str().unwrap(), "--lift", "naive"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["verified"], false);
    assert!(!v["result"]["witness"].is_null());
    assert_eq!(run(&["lattice-invariants", "--chain", p.to_str().unwrap(), "--lift", "naive"]).status.code(), Some(1));
}

#[test]
fn reed_muller_chain_is_accepted() {
    let p = write_temp("rm_chain.code", "2^1/3\n4 3\n1 1 1 1\n0 1 0 1\n0 0 1 1\n");
    let out = run(&["lattice-check", "--chain", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let inv = json(&run(&["lattice-invariants", "--chain", p.to_str().unwrap()]));
    assert_eq!(inv["result"]["lattice"], true);
}

#[test]
fn parse_errors_name_file_line_and_column() {
    let p = write_temp("broken.code", "2^1/3\n3 2\n1 0 7\n0 1 1\n");
    let out = run(&["weights", "--in", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("broken.code") && err.contains("line 3") && err.contains("column 5"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["no-such-command"],
        vec!["power", "--family", "rs:q=5,n=5,k=3"],
        vec!["power", "--family", "rs:q=6,n=5,k=3", "--t", "2"],
        vec!["weights", "--family", "random:q=2,n=5,k=2"],
        vec!["--format", "csv", "weights", "--family", "rs:q=5,n=5,k=3"],
        vec!["weights", "--in", "/nonexistent/file.code"],
        vec!["kashyap", "--family", "rs:q=5,n=5,k=3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = ["--seed", "17", "weights", "--family", "random:q=3,n=6,k=3"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["weights", "--family", "random:q=3,n=6,k=3,seed=17"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn structural_subcommands_run() {
    let fam = ["--family", "partition:q=2,n=6,d=2"];
    for cmd in ["regularity", "decompose", "slices", "algebra", "weights"] {
        let out = run(&[&[cmd][..], &fam[..]].concat());
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", stderr(&out));
    }
    let dec = json(&run(&["decompose", "--family", "parity:q=2,n=3"]));
    assert_eq!(dec["result"]["indecomposable"], true);
    let k = json(&run(&["kashyap", "--family", "parity:q=2,n=3", "--family", "parity:q=2,n=3"]));
    assert!(k["result"].is_object());
}

#[test]
fn appendix_subcommands_run() {
    let w = json(&run(&["waring", "--t", "3", "--q", "4"]));
    assert_eq!(w["result"]["value"], "inf");
    let n = json(&run(&["necklace", "--r", "9", "--entries", "8,7,4,2,2"]));
    assert!(n["result"]["result"]["entries"].is_array());
    let o = json(&run(&["orbits", "--q", "2", "--r", "3", "--t", "3"]));
    assert_eq!(o["result"]["max_degree"], 7);
    let u = run(&["universal-check", "--q", "2", "--r", "3", "--t", "3"]);
    assert_eq!(u.status.code(), Some(0));
    let s = json(&run(&["symalg", "--q", "2", "--k", "2", "--t", "3", "--form", "twisted"]));
    assert_eq!(s["verified"], true);
    assert_eq!(s["result"]["algorithm"]["length"], 3);
    let c = run(&["concat-verify", "--family", "rs:q=9,n=8,k=2", "--q", "3", "--t", "2"]);
    assert_eq!(c.status.code(), Some(0), "{}", stderr(&c));
    let f = run(&["fundamental", "--q", "2", "--n", "4", "--d", "2"]);
    assert_eq!(f.status.code(), Some(0));
}
