//! Shared inputs for the criterion benchmarks.

use veering::{orient, parse_tgl, Triangulation};

/// s227 gluing data, oriented.
pub fn s227() -> Triangulation {
    load(include_str!("../../core/tests/data/s227.tgl"))
}

pub fn m004() -> Triangulation {
    load(include_str!("../../core/tests/data/m004.tgl"))
}

fn load(text: &str) -> Triangulation {
    let tri = parse_tgl(text).expect("fixture parses");
    orient(&tri).expect("fixture is orientable").triangulation
}
