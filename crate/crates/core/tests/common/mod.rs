#![allow(dead_code)]

use perqwalk::graphs::parse_graph;
use perqwalk::{CVector, StateGraph, StructureGraph, C64};

pub fn load(name: &str) -> StructureGraph {
    let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
    parse_graph(&std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))).unwrap()
}

pub fn state3(name: &str) -> StateGraph {
    StateGraph::new(&load(name), Some(3)).unwrap()
}

/// Unit state on the three edges leaving vertex 0 with equal amplitudes.
pub fn symmetric_at_v0(dim: usize) -> CVector {
    CVector::from_fn(dim, |i, _| if i < 3 { C64::from(1.0 / 3f64.sqrt()) } else { C64::from(0.0) })
}

pub const PLANAR_CUBIC: [&str; 5] = ["cube", "dodecahedron", "k4", "prism", "noncolorable"];
pub const WITH_LOOPS: [&str; 6] = ["triangle", "path3", "honeycomb", "hexagon", "line5", "single"];
