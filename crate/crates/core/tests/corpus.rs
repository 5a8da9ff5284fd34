use std::fs;
use std::path::{Path, PathBuf};

use cy3_core::arith::QuadSurd;
use cy3_core::problem::parse_problem;
use cy3_core::report::parse_report;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let s = fs::read_to_string(&p).unwrap();
            (p, s)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn problem_seeds() {
    for (path, text) in seeds("parse_problem") {
        let parsed = parse_problem(&text);
        if path.ends_with("zero_c2.json") {
            assert!(parsed.is_err());
        } else {
            let p = parsed.unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(parse_problem(&p.to_json()).unwrap().cubic, p.cubic);
        }
    }
}

#[test]
fn surd_seeds_round_trip() {
    for (path, text) in seeds("parse_surd") {
        let x: QuadSurd = text.parse().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(x.to_string().parse::<QuadSurd>().unwrap(), x);
    }
}

#[test]
fn report_seeds() {
    for (path, text) in seeds("parse_report") {
        let r = parse_report(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_report(&r.to_json()).unwrap(), r);
    }
}
