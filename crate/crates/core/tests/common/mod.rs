//! Helpers shared by the integration tests. The reference evaluations here
//! work from lock spans directly, never through the area algebra.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use cubicalc::interval::Rational;
use cubicalc::pv::{parse, PvProgram};
use num_bigint::BigInt;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// Every program of the corpus, by file name.
pub fn corpus() -> Vec<(String, PvProgram)> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "pv"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let prog = parse(&fs::read_to_string(&p).unwrap()).unwrap();
            (name, prog)
        })
        .collect()
}

pub fn program(name: &str) -> PvProgram {
    corpus().into_iter().find(|(n, _)| n == name).unwrap().1
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Membership in the model, straight from the definition: inside the state
/// box, and no two threads inside open lock spans of the same mutex.
pub fn direct_member(prog: &PvProgram, p: &[Rational]) -> bool {
    let threads = prog.threads();
    if p.len() != threads.len() {
        return false;
    }
    let zero = q(0, 1);
    for (x, t) in p.iter().zip(&threads) {
        if *x < zero || *x > q(t.body.len() as i64 + 1, 1) {
            return false;
        }
    }
    let holds = prog.validate().unwrap();
    let inside = |x: &Rational, lo: usize, hi: usize| q(lo as i64, 1) < *x && *x < q(hi as i64, 1);
    !holds.iter().enumerate().any(|(k, a)| {
        holds[k + 1..].iter().any(|b| {
            a.thread != b.thread
                && a.resource == b.resource
                && inside(&p[a.thread], a.p_pos, a.v_pos)
                && inside(&p[b.thread], b.p_pos, b.v_pos)
        })
    })
}
