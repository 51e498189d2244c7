//! Excitation transport towards an absorbing sink.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{Configuration, StateGraph};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::percolation::{Channel, DensityMatrix, PercolationScheme};
use crate::walk::{CoinSpec, PermutationSpec, Variant, WalkSpec};

const OVERLAP_TOL: f64 = 1e-12;

/// Set of absorbing vertices and the directed edges leaving them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sink {
    vertices: Vec<usize>,
    mask: Vec<bool>,
}

impl Sink {
    pub fn new(sg: &StateGraph, vertices: &[usize]) -> Result<Self> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&v) = vs.iter().find(|&&v| v >= sg.vertex_count()) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(Sink { mask: sg.vertex_mask(&vs), vertices: vs })
    }

    pub fn empty(sg: &StateGraph) -> Self {
        Sink { vertices: Vec::new(), mask: vec![false; sg.dim()] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Basis indices inside the sink, ascending.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Orthogonal projector `T`.
    pub fn projector(&self) -> CMatrix {
        let d = CVector::from_iterator(self.mask.len(), self.mask.iter().map(|&m| C64::from(m as u8 as f64)));
        CMatrix::from_diagonal(&d)
    }
}

/// Survival probabilities `p(t) = Tr rho(t)` for `t = 0..=steps`.
#[derive(Clone, Debug)]
pub struct SinkRun {
    pub survival: Vec<f64>,
    pub final_state: DensityMatrix,
}

impl SinkRun {
    /// `q(t) = 1 - p(t)`.
    pub fn absorbed(&self) -> Vec<f64> {
        self.survival.iter().map(|p| 1.0 - p).collect()
    }

    pub fn final_efficiency(&self) -> f64 {
        1.0 - self.survival.last().copied().unwrap_or(1.0)
    }
}

pub fn evolve_with_sink(rho0: &DensityMatrix, w: &WalkSpec, scheme: &PercolationScheme, sink: &Sink, steps: usize) -> Result<SinkRun> {
    if rho0.dim() != w.dim() || sink.mask.len() != w.dim() {
        return Err(Error::DimensionMismatch(format!("state of dimension {} for walk of dimension {}", rho0.dim(), w.dim())));
    }
    let ch = Channel::from_scheme(w, scheme)?.with_sink(&sink.mask);
    Ok(run_channel(rho0, &ch, steps))
}

pub fn run_channel(rho0: &DensityMatrix, ch: &Channel, steps: usize) -> SinkRun {
    let mut rho = rho0.matrix().clone();
    let mut survival = Vec::with_capacity(steps + 1);
    survival.push(linalg::trace(&rho).re);
    for _ in 0..steps {
        rho = ch.apply(&rho);
        survival.push(linalg::trace(&rho).re);
    }
    SinkRun { survival, final_state: DensityMatrix::from_unchecked(rho) }
}

/// Filters trapped states down to a basis of the ones orthogonal to the
/// sink, one sink basis state at a time: no overlap keeps the set, a single
/// overlap drops that state, several overlaps are replaced by combinations
/// with the first overlapping state that cancel the overlap.
pub fn sr_trapped_basis(trapped: &[CVector], sink: &Sink) -> Vec<CVector> {
    let mut current: Vec<CVector> = trapped.to_vec();
    for i in sink.indices() {
        let scale = current.iter().map(|s| s.norm()).fold(0.0, f64::max);
        let hits: Vec<usize> = (0..current.len()).filter(|&k| current[k][i].norm() > OVERLAP_TOL * scale.max(1.0)).collect();
        match hits.as_slice() {
            [] => {}
            [k] => {
                current.remove(*k);
            }
            [first, rest @ ..] => {
                let pivot = current[*first].clone();
                let c1 = pivot[i];
                let mut next = Vec::with_capacity(current.len() - 1);
                for (k, s) in current.iter().enumerate() {
                    if k == *first {
                        continue;
                    }
                    if rest.contains(&k) {
                        let mut v = s - &pivot * (s[i] / c1);
                        // exact zero on the constrained entry
                        v[i] = C64::from(0.0);
                        next.push(v);
                    } else {
                        next.push(s.clone());
                    }
                }
                current = next;
            }
        }
    }
    current
}

/// Orthonormal basis of the span of `sr`.
pub fn orthonormal_span(sr: &[CVector]) -> Vec<CVector> {
    linalg::gram_schmidt(sr, 1e-10).0
}

/// Asymptotic absorption probability `1 - ||Pi psi||^2` where `Pi`
/// projects onto the span of `sr`.
pub fn transfer_efficiency(psi0: &CVector, sr: &[CVector]) -> Result<f64> {
    let n = psi0.norm();
    if (n - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidState(format!("state norm {n} is not 1")));
    }
    if let Some(s) = sr.iter().find(|s| s.len() != psi0.len()) {
        return Err(Error::DimensionMismatch(format!("trapped state of length {} for state of length {}", s.len(), psi0.len())));
    }
    let trapped: f64 = orthonormal_span(sr).iter().map(|b| b.dotc(psi0).norm_sqr()).sum();
    Ok((1.0 - trapped).clamp(0.0, 1.0))
}

/// Best and worst initial states supported on one vertex.
#[derive(Clone, Debug, Serialize)]
pub struct EfficiencyExtremes {
    pub vertex: usize,
    pub min: f64,
    pub max: f64,
    #[serde(skip)]
    pub min_state: CVector,
    #[serde(skip)]
    pub max_state: CVector,
}

/// Extremes of `transfer_efficiency` over unit states on the edges leaving
/// `vertex`, from the eigenvalues of the compressed trapping projector.
pub fn efficiency_extremes(sg: &StateGraph, sr: &[CVector], vertex: usize) -> Result<EfficiencyExtremes> {
    if vertex >= sg.vertex_count() {
        return Err(Error::UnknownVertex(vertex));
    }
    let local: Vec<usize> = sg.outgoing(vertex).collect();
    let basis = orthonormal_span(sr);
    let d = local.len();
    let mut m = CMatrix::zeros(d, d);
    for b in &basis {
        for (r, &i) in local.iter().enumerate() {
            for (c, &j) in local.iter().enumerate() {
                m[(r, c)] += b[i] * b[j].conj();
            }
        }
    }
    let (vals, vecs) = linalg::hermitian_eigen(&m);
    let embed = |col: usize| {
        let mut v = CVector::zeros(sg.dim());
        for (r, &i) in local.iter().enumerate() {
            v[i] = vecs[(r, col)];
        }
        v
    };
    Ok(EfficiencyExtremes {
        vertex,
        min: (1.0 - vals[d - 1]).clamp(0.0, 1.0),
        max: (1.0 - vals[0]).clamp(0.0, 1.0),
        min_state: embed(d - 1),
        max_state: embed(0),
    })
}

/// For every inner face, `+1` on the directed edges along the boundary walk
/// and `-1` on their partners. These are eigenvectors of the reflecting
/// Grover walk with all edges open, but not of the percolated walk.
pub fn nonpercolated_trapped_extension(sg: &StateGraph) -> Result<Vec<CVector>> {
    let faces = sg.structure().faces()?;
    let w = WalkSpec::new(sg.clone(), CoinSpec::grover(sg), PermutationSpec::identity(sg), Variant::U1)?;
    let u = w.step_operator(&Configuration::all(sg.structure()))?;
    let mut out = Vec::new();
    for f in faces.iter().filter(|f| !f.is_outer && !f.is_empty()) {
        let mut v = CVector::zeros(sg.dim());
        for d in &f.darts {
            let i = sg.dart_index(d);
            v[i] += C64::from(1.0);
            v[sg.partner(i)] -= C64::from(1.0);
        }
        let res = (&u * &v - &v).norm() / v.norm();
        if res > 1e-10 {
            return Err(Error::Numerical(format!("face state residual {res:e}")));
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;
    use crate::grover3::trapped_basis;

    fn state(name: &str) -> StateGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        let g = parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap();
        StateGraph::new(&g, Some(3)).unwrap()
    }

    fn cube_sr() -> (StateGraph, Sink, Vec<CVector>) {
        let sg = state("cube");
        let sink = Sink::new(&sg, &[7]).unwrap();
        let trapped: Vec<CVector> = trapped_basis(&sg).unwrap().iter().map(|s| s.raw()).collect();
        let sr = sr_trapped_basis(&trapped, &sink);
        (sg, sink, sr)
    }

    #[test]
    fn projector_is_orthogonal() {
        let sg = state("cube");
        let sink = Sink::new(&sg, &[7, 0]).unwrap();
        let t = sink.projector();
        assert!(linalg::max_abs_diff(&(&t * &t), &t) < 1e-15);
        assert!(linalg::hermiticity_defect(&t) < 1e-15);
        assert_eq!(sink.rank(), 6);
        assert!(Sink::new(&sg, &[8]).is_err());
    }

    #[test]
    fn cube_keeps_three_face_states() {
        let (sg, sink, sr) = cube_sr();
        assert_eq!(sr.len(), 3);
        for s in &sr {
            assert!(sink.indices().iter().all(|&i| s[i].norm() < 1e-12));
        }
        // v7 touches three faces, only two of them inner
        let faces = sg.structure().faces().unwrap();
        let away = faces.iter().filter(|f| !f.is_outer && !f.vertices().contains(&7)).count();
        assert_eq!(away, 3);
    }

    #[test]
    fn cube_efficiency_range() {
        let (sg, _, sr) = cube_sr();
        let psi0 = CVector::from_fn(24, |i, _| if i < 3 { C64::from(1.0 / 3f64.sqrt()) } else { C64::from(0.0) });
        assert!((transfer_efficiency(&psi0, &sr).unwrap() - 1.0).abs() < 1e-10);
        let ext = efficiency_extremes(&sg, &sr, 0).unwrap();
        assert!((ext.min - 0.7).abs() < 1e-6, "{}", ext.min);
        assert!((ext.max - 1.0).abs() < 1e-10);
    }

    #[test]
    fn empty_sink_returns_input() {
        let sg = state("cube");
        let trapped: Vec<CVector> = trapped_basis(&sg).unwrap().iter().map(|s| s.raw()).collect();
        assert_eq!(sr_trapped_basis(&trapped, &Sink::empty(&sg)), trapped);
    }

    fn sink_free_dimension(states: &[CVector], sink: &Sink) -> usize {
        let m = linalg::from_columns(states[0].len(), states);
        let t = sink.projector();
        states.len() - linalg::rank(&(&t * &m), 1e-10)
    }

    #[test]
    fn filtered_dimension_matches_projection_rank() {
        for (name, sinks) in [("cube", vec![vec![1], vec![0, 7], vec![3]]), ("honeycomb", vec![vec![0], vec![5, 17], vec![11]])] {
            let sg = state(name);
            let trapped: Vec<CVector> = trapped_basis(&sg).unwrap().iter().map(|s| s.raw()).collect();
            for vs in sinks {
                let sink = Sink::new(&sg, &vs).unwrap();
                let sr = sr_trapped_basis(&trapped, &sink);
                assert_eq!(sr.len(), sink_free_dimension(&trapped, &sink), "{name} {vs:?}");
                assert_eq!(orthonormal_span(&sr).len(), sr.len());
                for s in &sr {
                    assert!(sink.indices().iter().all(|&i| s[i].norm() < 1e-12));
                }
            }
        }
    }

    #[test]
    fn extension_has_alternating_partners() {
        let sg = state("cube");
        let ext = nonpercolated_trapped_extension(&sg).unwrap();
        assert_eq!(ext.len(), 5);
        for v in &ext {
            for i in 0..sg.dim() {
                assert!((v[i] + v[sg.partner(i)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn sink_everywhere_absorbs_at_once() {
        let sg = state("path3");
        let g = sg.structure().clone();
        let w = WalkSpec::new(sg.clone(), CoinSpec::grover(&sg), PermutationSpec::identity(&sg), Variant::U3).unwrap();
        let all = Sink::new(&sg, &[0, 1, 2]).unwrap();
        let rho = DensityMatrix::pure(&crate::walk::basis_state(sg.dim(), 0));
        let run = evolve_with_sink(&rho, &w, &PercolationScheme::Full { p: 0.5 }, &all, 3).unwrap();
        assert!(run.absorbed()[1] > 1.0 - 1e-12);
        let none = evolve_with_sink(&rho, &w, &PercolationScheme::Full { p: 0.5 }, &Sink::empty(&sg), 20).unwrap();
        assert!(none.survival.iter().all(|p| (p - 1.0).abs() < 1e-12));
        let _ = g;
    }
}
