use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{check_cubic_state_graph, check_max_degree};
use crate::attractors::CommonEigenstate;
use crate::error::{Error, Result};
use crate::graphs::{StateGraph, StructureGraph};
use crate::linalg::{CVector, C64};
use crate::walk::{PermutationSpec, Rotation};

/// `r = 1`, `g = e^{2 i pi / 3}`, `b = e^{-2 i pi / 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    R,
    G,
    B,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::G, Color::B];

    /// Power of `omega = e^{2 i pi / 3}`.
    pub fn exponent(self) -> i64 {
        match self {
            Color::R => 0,
            Color::G => 1,
            Color::B => 2,
        }
    }

    pub fn from_exponent(k: i64) -> Self {
        Self::ALL[k.rem_euclid(3) as usize]
    }

    pub fn value(self) -> C64 {
        C64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.exponent() as f64 / 3.0)
    }

    /// Swaps `g` and `b`.
    pub fn conj(self) -> Self {
        Self::from_exponent(-self.exponent())
    }

    pub fn letter(self) -> char {
        match self {
            Color::R => 'r',
            Color::G => 'g',
            Color::B => 'b',
        }
    }
}

/// The two non-trivial eigenvalues of `G_3 P^{CW}` and `G_3 P^{CCW}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    /// `e^{i pi / 3}`
    Alpha2,
    /// `e^{-i pi / 3}`
    Alpha3,
}

impl Phase {
    pub fn value(self) -> C64 {
        C64::from_polar(1.0, self.sign() as f64 * std::f64::consts::FRAC_PI_3)
    }

    fn sign(self) -> i64 {
        match self {
            Phase::Alpha2 => 1,
            Phase::Alpha3 => -1,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            Phase::Alpha2 => Phase::Alpha3,
            Phase::Alpha3 => Phase::Alpha2,
        }
    }
}

/// Color exponent gained from one slot to the next at a vertex with the
/// given rotation.
fn step(rotation: Rotation, phase: Phase) -> Result<i64> {
    let dir = match rotation {
        Rotation::Cw => 1,
        Rotation::Ccw => -1,
        Rotation::Identity => return Err(Error::InvalidInput("coloring needs cyclic local permutations".into())),
    };
    Ok(dir * phase.sign())
}

/// A color on every directed edge of the state graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn conj(&self) -> Self {
        EdgeColoring { colors: self.colors.iter().map(|c| c.conj()).collect() }
    }

    /// Paired edges share colors and every vertex shows three colors.
    pub fn is_proper(&self, sg: &StateGraph) -> bool {
        let shift = (0..sg.dim()).all(|i| self.colors[i] == self.colors[sg.partner(i)]);
        let coin = (0..sg.vertex_count()).all(|v| {
            let mut seen = [false; 3];
            sg.outgoing(v).all(|i| !std::mem::replace(&mut seen[self.colors[i].exponent() as usize], true))
        });
        shift && coin
    }

    /// Whether the colors follow the order required by the local
    /// permutations at eigenvalue `phase`.
    pub fn follows(&self, sg: &StateGraph, perms: &PermutationSpec, phase: Phase) -> Result<bool> {
        for v in 0..sg.vertex_count() {
            let rot = perms.rotation_at(v).ok_or_else(|| Error::InvalidPermutation { vertex: v, message: "not cyclic".into() })?;
            let s = step(rot, phase)?;
            let r = sg.outgoing(v);
            for i in r.clone() {
                let j = r.start + (i - r.start + 1) % r.len();
                if (self.colors[j].exponent() - self.colors[i].exponent() - s).rem_euclid(3) != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(self.is_proper(sg))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Conflict {
    /// Two edges leaving `vertex` would share a color.
    SameColorAtVertex { vertex: usize, edges: (usize, usize) },
    /// The two directed edges of one structure edge got different colors.
    PairedMismatch { edge: usize, partner: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ColoringOutcome {
    Consistent { coloring: EdgeColoring },
    Conflict { conflict: Conflict },
}

impl ColoringOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ColoringOutcome::Consistent { .. })
    }

    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            ColoringOutcome::Consistent { coloring } => Some(coloring),
            ColoringOutcome::Conflict { .. } => None,
        }
    }
}

/// Propagates colors from edge 0 (colored `r`) using the slot order at each
/// vertex and equality on paired edges.
pub fn edge_3_color(sg: &StateGraph, perms: &PermutationSpec, phase: Phase) -> Result<ColoringOutcome> {
    check_cubic_state_graph(sg)?;
    perms.validate(sg)?;
    let mut steps = Vec::with_capacity(sg.vertex_count());
    for v in 0..sg.vertex_count() {
        let rot = perms.rotation_at(v).ok_or_else(|| Error::InvalidPermutation { vertex: v, message: "not cyclic".into() })?;
        steps.push(step(rot, phase)?);
    }

    let mut colors: Vec<Option<Color>> = vec![None; sg.dim()];
    let mut queue = VecDeque::new();
    colors[0] = Some(Color::R);
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let c = colors[i].expect("queued edges are colored");
        let v = sg.edge(i).origin;
        let r = sg.outgoing(v);
        for j in r.clone() {
            let want = Color::from_exponent(c.exponent() + steps[v] * (j as i64 - i as i64));
            match colors[j] {
                None => {
                    colors[j] = Some(want);
                    queue.push_back(j);
                }
                Some(have) if have != want => {
                    let k = r.clone().find(|&k| k != j && Color::from_exponent(c.exponent() + steps[v] * (k as i64 - i as i64)) == have).unwrap_or(i);
                    return Ok(ColoringOutcome::Conflict { conflict: Conflict::SameColorAtVertex { vertex: v, edges: (j.min(k), j.max(k)) } });
                }
                _ => {}
            }
        }
        let p = sg.partner(i);
        match colors[p] {
            None => {
                colors[p] = Some(c);
                queue.push_back(p);
            }
            Some(have) if have != c => {
                return Ok(ColoringOutcome::Conflict { conflict: Conflict::PairedMismatch { edge: i.min(p), partner: i.max(p) } });
            }
            _ => {}
        }
    }
    // the state graph is connected, so every edge is reached
    let colors = colors.into_iter().map(|c| c.expect("connected")).collect();
    Ok(ColoringOutcome::Consistent { coloring: EdgeColoring { colors } })
}

/// Unit-norm common eigenstate whose entries are the colors.
pub fn eigenstate_from_coloring(sg: &StateGraph, perms: &PermutationSpec, coloring: &EdgeColoring, phase: Phase) -> Result<CommonEigenstate> {
    if coloring.colors.len() != sg.dim() || !coloring.follows(sg, perms, phase)? {
        return Err(Error::InvalidInput("coloring is not consistent with the walk".into()));
    }
    let scale = 1.0 / (sg.dim() as f64).sqrt();
    let vector = CVector::from_iterator(sg.dim(), coloring.colors.iter().map(|c| c.value() * scale));
    Ok(CommonEigenstate { alpha: phase.value(), vector })
}

/// Local permutations for which the given structure-edge coloring is a
/// common eigenstate at `phase`. Loops take the colors missing at their
/// vertex in slot order.
pub fn permutations_from_coloring(sg: &StateGraph, structure_colors: &[Color], phase: Phase) -> Result<(PermutationSpec, EdgeColoring)> {
    check_cubic_state_graph(sg)?;
    let g = sg.structure();
    if structure_colors.len() != g.edge_count() {
        return Err(Error::DimensionMismatch(format!("{} colors for {} edges", structure_colors.len(), g.edge_count())));
    }
    let mut colors = vec![Color::R; sg.dim()];
    let mut rotations = Vec::with_capacity(sg.vertex_count());
    for v in 0..sg.vertex_count() {
        let mut used = [false; 3];
        let mut free_slots = Vec::new();
        for i in sg.outgoing(v) {
            match sg.structure_edge(i) {
                Some(e) => {
                    let c = structure_colors[e];
                    if std::mem::replace(&mut used[c.exponent() as usize], true) {
                        return Err(Error::InvalidInput(format!("edge coloring is not proper at vertex {v}")));
                    }
                    colors[i] = c;
                }
                None => free_slots.push(i),
            }
        }
        let free: Vec<Color> = Color::ALL.into_iter().filter(|c| !used[c.exponent() as usize]).collect();
        for (i, c) in free_slots.into_iter().zip(free) {
            colors[i] = c;
        }
        let r = sg.outgoing(v);
        let delta = (colors[r.start + 1].exponent() - colors[r.start].exponent()).rem_euclid(3);
        // delta = +1 means the colors increase along the slots
        let dir = if delta == 1 { 1 } else { -1 } * phase.sign();
        rotations.push(if dir == 1 { Rotation::Cw } else { Rotation::Ccw });
    }
    let perms = PermutationSpec::from_rotations(sg, &rotations)?;
    Ok((perms, EdgeColoring { colors }))
}

/// Proper 3-coloring of the structure edges by exhaustive search, if one
/// exists.
pub fn find_structure_coloring(g: &StructureGraph) -> Result<Option<Vec<Color>>> {
    check_max_degree(g)?;
    let m = g.edge_count();
    // breadth-first edge order keeps constraints local
    let mut order = Vec::with_capacity(m);
    let mut placed = vec![false; m];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            if !placed[e] {
                placed[e] = true;
                order.push(e);
            }
            let w = g.edge(e).other(v);
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let mut colors: Vec<Option<Color>> = vec![None; m];
    fn search(g: &StructureGraph, order: &[usize], k: usize, colors: &mut Vec<Option<Color>>) -> bool {
        let Some(&e) = order.get(k) else { return true };
        let edge = g.edge(e);
        for c in Color::ALL {
            let clash = [edge.a, edge.b].iter().any(|&v| g.incident(v).iter().any(|&f| f != e && colors[f] == Some(c)));
            if clash {
                continue;
            }
            colors[e] = Some(c);
            if search(g, order, k + 1, colors) {
                return true;
            }
            colors[e] = None;
        }
        false
    }
    if search(g, &order, 0, &mut colors) {
        Ok(Some(colors.into_iter().map(|c| c.expect("complete")).collect()))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;
    use crate::linalg::max_abs;
    use crate::walk::grover_coin;

    fn state(name: &str) -> StateGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        let g = parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap();
        StateGraph::new(&g, Some(3)).unwrap()
    }

    #[test]
    fn local_rule_matches_grover_eigenvectors() {
        let g3 = grover_coin(3).unwrap();
        for rot in [Rotation::Cw, Rotation::Ccw] {
            let p = crate::linalg::permutation_matrix(&PermutationSpec::rotation_map(3, rot));
            for phase in [Phase::Alpha2, Phase::Alpha3] {
                let s = step(rot, phase).unwrap();
                let v = CVector::from_fn(3, |j, _| Color::from_exponent(s * j as i64).value());
                let r = &g3 * &p * &v - &v * phase.value();
                assert!(max_abs(&crate::linalg::from_columns(3, &[r])) < 1e-14);
            }
        }
    }

    #[test]
    fn honeycomb_cyclic_is_consistent() {
        let sg = state("honeycomb");
        let perms = PermutationSpec::uniform(&sg, Rotation::Cw);
        let out = edge_3_color(&sg, &perms, Phase::Alpha2).unwrap();
        let coloring = out.coloring().expect("consistent");
        assert!(coloring.follows(&sg, &perms, Phase::Alpha2).unwrap());
        // parallel edges (same direction class prefix) share a color
        let g = sg.structure();
        for class in ["v", "p", "m"] {
            let cs: std::collections::BTreeSet<Color> =
                (0..g.edge_count()).filter(|&e| g.edge(e).label.starts_with(class)).map(|e| coloring.colors[sg.pair(e).0]).collect();
            assert_eq!(cs.len(), 1, "{class}");
        }
        let conj = coloring.conj();
        assert!(conj.follows(&sg, &perms, Phase::Alpha3).unwrap());
    }

    #[test]
    fn cube_cyclic_conflicts() {
        let sg = state("cube");
        let out = edge_3_color(&sg, &PermutationSpec::uniform(&sg, Rotation::Cw), Phase::Alpha2).unwrap();
        assert!(!out.is_consistent());
    }

    #[test]
    fn round_trip_through_structure_coloring() {
        for name in ["cube", "dodecahedron", "honeycomb", "prism", "k4", "hexagon", "path3", "single"] {
            let sg = state(name);
            let colors = find_structure_coloring(sg.structure()).unwrap().expect(name);
            for phase in [Phase::Alpha2, Phase::Alpha3] {
                let (perms, lifted) = permutations_from_coloring(&sg, &colors, phase).unwrap();
                assert!(lifted.follows(&sg, &perms, phase).unwrap(), "{name}");
                assert!(edge_3_color(&sg, &perms, phase).unwrap().is_consistent(), "{name}");
            }
        }
    }

    #[test]
    fn noncolorable_graph_has_no_coloring() {
        let sg = state("noncolorable");
        assert!(find_structure_coloring(sg.structure()).unwrap().is_none());
        assert!(find_structure_coloring(state("petersen").structure()).unwrap().is_none());
    }

    #[test]
    fn improper_input_is_rejected() {
        let sg = state("triangle");
        assert!(permutations_from_coloring(&sg, &[Color::R, Color::R, Color::G], Phase::Alpha2).is_err());
    }
}
