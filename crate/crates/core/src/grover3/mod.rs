//! Grover walks on graphs of maximal degree three, padded with loops to a
//! 3-regular state graph.
//!
//! - [`trapped_basis`]: localized common eigenstates at `-1` for the
//!   reflecting walk, built from faces, paths and loops.
//! - [`edge_3_color`]: decides whether a distribution of cyclic local
//!   permutations admits common eigenstates at `e^{+-i pi/3}`.

mod coloring;
mod trapped;

pub use coloring::{
    edge_3_color, eigenstate_from_coloring, find_structure_coloring, permutations_from_coloring, Color, ColoringOutcome, Conflict, EdgeColoring, Phase,
};
pub use trapped::{condition_rank_check, trapped_basis, trapped_dimension, RankCheck, TrappedKind, TrappedState};

use crate::error::{Error, Result};
use crate::graphs::{StateGraph, StructureGraph};

pub(crate) fn check_max_degree(g: &StructureGraph) -> Result<()> {
    for v in 0..g.vertex_count() {
        if g.degree(v) > 3 {
            return Err(Error::DegreeExceeded { vertex: v, degree: g.degree(v), limit: 3 });
        }
    }
    Ok(())
}

pub(crate) fn check_cubic_state_graph(sg: &StateGraph) -> Result<()> {
    check_max_degree(sg.structure())?;
    for v in 0..sg.vertex_count() {
        if sg.degree(v) != 3 {
            return Err(Error::InvalidInput(format!("state graph vertex {v} has degree {}, expected 3", sg.degree(v))));
        }
    }
    Ok(())
}
