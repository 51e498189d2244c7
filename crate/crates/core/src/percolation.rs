//! Percolation schemes, the random unitary channel and Monte Carlo
//! trajectories.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{Configuration, StructureGraph};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::walk::{reflect_map, WalkSpec};

/// Default cap on enumerated configurations.
pub const DEFAULT_CAP: usize = 1 << 20;

const CHUNK: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedConfiguration {
    pub open: Vec<String>,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PercolationScheme {
    /// Every edge open independently with probability `p`.
    Full {
        p: f64,
    },
    SingleOpen,
    SingleClosed,
    ClosedVertex,
    /// All edges always open.
    Unpercolated,
    Explicit {
        configurations: Vec<WeightedConfiguration>,
    },
}

impl PercolationScheme {
    /// Accepts a JSON object or a bare name (`single_open`, `full:0.3`, ...).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Ok(serde_json::from_str(s)?);
        }
        let scheme = match s {
            "single_open" => Self::SingleOpen,
            "single_closed" => Self::SingleClosed,
            "closed_vertex" => Self::ClosedVertex,
            "unpercolated" | "none" => Self::Unpercolated,
            "full" => Self::Full { p: 0.5 },
            _ => match s.strip_prefix("full:") {
                Some(p) => Self::Full { p: p.parse().map_err(|_| Error::InvalidScheme(format!("bad probability `{p}`")))? },
                None => return Err(Error::InvalidScheme(format!("unknown scheme `{s}`"))),
            },
        };
        Ok(scheme)
    }

    pub fn explicit(g: &StructureGraph, configs: &[(Configuration, f64)]) -> Self {
        PercolationScheme::Explicit {
            configurations: configs
                .iter()
                .map(|(k, p)| WeightedConfiguration { open: k.labels(g).into_iter().map(String::from).collect(), probability: *p })
                .collect(),
        }
    }

    /// Single-closed configurations plus the empty one, uniform weights.
    pub fn single_closed_with_empty(g: &StructureGraph) -> Self {
        let mut configs: Vec<Configuration> = (0..g.edge_count())
            .map(|e| {
                let mut k = Configuration::all(g);
                k.set(e, false);
                k
            })
            .collect();
        configs.push(Configuration::empty(g));
        let w = 1.0 / configs.len() as f64;
        let list: Vec<(Configuration, f64)> = configs.into_iter().map(|k| (k, w)).collect();
        Self::explicit(g, &list)
    }

    pub fn enumerate(&self, g: &StructureGraph) -> Result<Vec<(Configuration, f64)>> {
        self.enumerate_capped(g, DEFAULT_CAP)
    }

    pub fn enumerate_capped(&self, g: &StructureGraph, cap: usize) -> Result<Vec<(Configuration, f64)>> {
        let m = g.edge_count();
        let out = match self {
            PercolationScheme::Full { p } => {
                check_p(*p)?;
                let count: u128 = 1u128 << m.min(127);
                if m >= 127 || count > cap as u128 {
                    return Err(Error::TooManyConfigurations { count, cap });
                }
                (0..count as u64)
                    .map(|bits| {
                        let mask: Vec<bool> = (0..m).map(|e| bits >> e & 1 == 1).collect();
                        let open = mask.iter().filter(|&&o| o).count() as i32;
                        (Configuration::from_mask(mask), p.powi(open) * (1.0 - p).powi(m as i32 - open))
                    })
                    .collect()
            }
            PercolationScheme::SingleOpen | PercolationScheme::SingleClosed => {
                if m == 0 {
                    return Err(Error::InvalidScheme("graph has no edges".into()));
                }
                let open = matches!(self, PercolationScheme::SingleOpen);
                (0..m)
                    .map(|e| {
                        let mut k = if open { Configuration::empty(g) } else { Configuration::all(g) };
                        k.set(e, open);
                        (k, 1.0 / m as f64)
                    })
                    .collect()
            }
            PercolationScheme::ClosedVertex => {
                let n = g.vertex_count();
                let mut merged: BTreeMap<Configuration, f64> = BTreeMap::new();
                let mut order = Vec::new();
                for v in 0..n {
                    let mut k = Configuration::all(g);
                    for &e in g.incident(v) {
                        k.set(e, false);
                    }
                    let slot = merged.entry(k.clone()).or_insert_with(|| {
                        order.push(k);
                        0.0
                    });
                    *slot += 1.0 / n as f64;
                }
                order
                    .into_iter()
                    .map(|k| {
                        let p = merged[&k];
                        (k, p)
                    })
                    .collect()
            }
            PercolationScheme::Unpercolated => vec![(Configuration::all(g), 1.0)],
            PercolationScheme::Explicit { configurations } => {
                if configurations.is_empty() {
                    return Err(Error::InvalidScheme("no configurations".into()));
                }
                if configurations.len() > cap {
                    return Err(Error::TooManyConfigurations { count: configurations.len() as u128, cap });
                }
                let mut total = 0.0;
                let mut out = Vec::with_capacity(configurations.len());
                for wc in configurations {
                    if wc.probability.is_nan() || wc.probability <= 0.0 {
                        return Err(Error::InvalidScheme(format!("probability {} is not positive", wc.probability)));
                    }
                    total += wc.probability;
                    out.push((Configuration::from_labels(g, &wc.open)?, wc.probability));
                }
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidScheme(format!("probabilities sum to {total}")));
                }
                out
            }
        };
        Ok(out)
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidScheme(format!("full percolation needs 0 < p < 1, got {p}")))
    }
}

/// True when every unordered pair of edges shows at least three of the four
/// joint open/closed patterns in the support, and every edge is seen both
/// open and closed.
pub fn equivalent_to_full(configs: &[(Configuration, f64)], edge_count: usize) -> bool {
    let support: Vec<&Configuration> = configs.iter().filter(|(_, p)| *p > 0.0).map(|(k, _)| k).collect();
    for e in 0..edge_count {
        let open = support.iter().any(|k| k.is_open(e));
        let closed = support.iter().any(|k| !k.is_open(e));
        if !(open && closed) {
            return false;
        }
    }
    for e in 0..edge_count {
        for f in e + 1..edge_count {
            let mut seen = [false; 4];
            for k in &support {
                seen[(k.is_open(e) as usize) << 1 | k.is_open(f) as usize] = true;
            }
            if seen.iter().filter(|&&s| s).count() < 3 {
                return false;
            }
        }
    }
    true
}

/// Hermitian, positive semidefinite matrix over the directed-edge basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidState("density matrix is not square".into()));
        }
        let h = linalg::hermiticity_defect(&m);
        if h > 1e-12 {
            return Err(Error::InvalidState(format!("not Hermitian (defect {h:e})")));
        }
        let (vals, _) = linalg::hermitian_eigen(&m);
        if let Some(&min) = vals.first() {
            if min < -1e-10 {
                return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(DensityMatrix(m))
    }

    pub fn from_unchecked(m: CMatrix) -> Self {
        DensityMatrix(m)
    }

    pub fn pure(psi: &CVector) -> Self {
        DensityMatrix(psi * psi.adjoint())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(CMatrix::identity(dim, dim) / C64::from(dim as f64))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.0).re
    }

    pub fn purity(&self) -> f64 {
        linalg::hs_inner(&self.0, &self.0).re
    }

    /// Probability of finding the walker on the outgoing edges of each vertex.
    pub fn populations(&self, degrees: &[usize]) -> Vec<f64> {
        let mut out = Vec::with_capacity(degrees.len());
        let mut i = 0;
        for &d in degrees {
            out.push((i..i + d).map(|j| self.0[(j, j)].re).sum());
            i += d;
        }
        out
    }
}

/// The map `rho -> sum_K pi_K (I - T) U_K rho U_K^dagger (I - T)`, with the
/// sink projector `T` optional.
#[derive(Clone, Debug)]
pub struct Channel {
    a: CMatrix,
    a_adj: CMatrix,
    b: Option<(CMatrix, CMatrix)>,
    terms: Vec<(Vec<usize>, f64)>,
    keep: Option<Vec<bool>>,
}

impl Channel {
    pub fn new(w: &WalkSpec, configs: &[(Configuration, f64)]) -> Result<Self> {
        let edges = w.structure().edge_count();
        let mut terms = Vec::with_capacity(configs.len());
        for (k, p) in configs {
            if k.len() != edges {
                return Err(Error::DimensionMismatch(format!("configuration over {} edges, graph has {}", k.len(), edges)));
            }
            terms.push((reflect_map(w.state_graph(), k), *p));
        }
        let (a, b) = w.factors();
        Ok(Channel {
            a_adj: a.adjoint(),
            a,
            b: b.map(|b| {
                let adj = b.adjoint();
                (b, adj)
            }),
            terms,
            keep: None,
        })
    }

    pub fn from_scheme(w: &WalkSpec, scheme: &PercolationScheme) -> Result<Self> {
        Self::new(w, &scheme.enumerate(w.structure())?)
    }

    /// Adds absorption on the basis states where `sink[i]` is true.
    pub fn with_sink(mut self, sink: &[bool]) -> Self {
        self.keep = if sink.iter().any(|&s| s) { Some(sink.iter().map(|&s| !s).collect()) } else { None };
        self
    }

    pub fn configuration_count(&self) -> usize {
        self.terms.len()
    }

    /// One application. Configurations are summed in fixed-size chunks whose
    /// partial sums are combined in order, so results do not depend on the
    /// number of threads.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let n = rho.nrows();
        let m = match &self.b {
            Some((b, b_adj)) => b * rho * b_adj,
            None => rho.clone(),
        };
        let partials: Vec<CMatrix> = self
            .terms
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut acc = CMatrix::zeros(n, n);
                for (k, p) in chunk {
                    let p = C64::from(*p);
                    for col in 0..n {
                        let kc = k[col];
                        for row in 0..n {
                            acc[(row, col)] += p * m[(k[row], kc)];
                        }
                    }
                }
                acc
            })
            .collect();
        let mut sum = CMatrix::zeros(n, n);
        for part in partials {
            sum += part;
        }
        let mut out = &self.a * sum * &self.a_adj;
        if let Some(keep) = &self.keep {
            for col in 0..n {
                for row in 0..n {
                    if !keep[row] || !keep[col] {
                        out[(row, col)] = C64::from(0.0);
                    }
                }
            }
        }
        out
    }
}

/// One channel step.
pub fn channel_step(rho: &DensityMatrix, w: &WalkSpec, scheme: &PercolationScheme) -> Result<DensityMatrix> {
    let ch = Channel::from_scheme(w, scheme)?;
    Ok(DensityMatrix(ch.apply(&rho.0)))
}

/// `[rho(0), rho(1), ..., rho(t)]`.
pub fn evolve(rho0: &DensityMatrix, w: &WalkSpec, scheme: &PercolationScheme, t: usize) -> Result<Vec<DensityMatrix>> {
    let ch = Channel::from_scheme(w, scheme)?;
    Ok(evolve_channel(rho0, &ch, t))
}

pub fn evolve_channel(rho0: &DensityMatrix, ch: &Channel, t: usize) -> Vec<DensityMatrix> {
    let mut out = Vec::with_capacity(t + 1);
    out.push(rho0.clone());
    for s in 0..t {
        let next = ch.apply(&out[s].0);
        out.push(DensityMatrix(next));
    }
    out
}

/// Draws configurations for Monte Carlo runs.
#[derive(Clone, Debug)]
pub enum Sampler {
    Bernoulli { dist: Bernoulli, edges: usize },
    Weighted { configs: Vec<Configuration>, index: WeightedIndex<f64> },
}

impl Sampler {
    pub fn new(scheme: &PercolationScheme, g: &StructureGraph) -> Result<Self> {
        if let PercolationScheme::Full { p } = scheme {
            check_p(*p)?;
            return Ok(Sampler::Bernoulli { dist: Bernoulli::new(*p).expect("checked"), edges: g.edge_count() });
        }
        let list = scheme.enumerate(g)?;
        let index = WeightedIndex::new(list.iter().map(|(_, p)| *p)).map_err(|e| Error::InvalidScheme(e.to_string()))?;
        Ok(Sampler::Weighted { configs: list.into_iter().map(|(k, _)| k).collect(), index })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Configuration {
        match self {
            Sampler::Bernoulli { dist, edges } => Configuration::from_mask((0..*edges).map(|_| dist.sample(rng)).collect()),
            Sampler::Weighted { configs, index } => configs[index.sample(rng)].clone(),
        }
    }
}

/// RNG for trajectory `stream` of a run seeded with `seed`.
pub fn trajectory_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn run_trajectory(psi0: &CVector, w: &WalkSpec, sampler: &Sampler, t: usize, rng: &mut ChaCha8Rng) -> CVector {
    let mut last = psi0.clone();
    walk_trajectory(psi0, w, sampler, t, rng, |s, psi| {
        if s == t {
            last = psi.clone();
        }
    });
    last
}

/// Runs `t` steps, calling `visit(step, psi)` for every state including
/// the initial one.
fn walk_trajectory<F: FnMut(usize, &CVector)>(psi0: &CVector, w: &WalkSpec, sampler: &Sampler, t: usize, rng: &mut ChaCha8Rng, mut visit: F) {
    let (a, b) = w.factors();
    let sg = w.state_graph();
    let mut psi = psi0.clone();
    visit(0, &psi);
    for step in 1..=t {
        let k = sampler.sample(rng);
        let x = match &b {
            Some(b) => b * &psi,
            None => psi,
        };
        let map = reflect_map(sg, &k);
        let mut y = CVector::zeros(x.len());
        for (i, &j) in map.iter().enumerate() {
            y[j] = x[i];
        }
        psi = &a * y;
        visit(step, &psi);
    }
}

/// A single trajectory: a fresh configuration is drawn every step.
pub fn sample_trajectory(psi0: &CVector, w: &WalkSpec, scheme: &PercolationScheme, t: usize, seed: u64) -> Result<CVector> {
    let sampler = Sampler::new(scheme, w.structure())?;
    let mut rng = trajectory_rng(seed, 0);
    Ok(run_trajectory(psi0, w, &sampler, t, &mut rng))
}

/// Average of `|psi(t)><psi(t)|` over `count` trajectories; trajectory `j`
/// uses stream `j` of `seed`.
pub fn average_trajectories(psi0: &CVector, w: &WalkSpec, scheme: &PercolationScheme, t: usize, count: usize, seed: u64) -> Result<CMatrix> {
    let sampler = Sampler::new(scheme, w.structure())?;
    let n = psi0.len();
    let ids: Vec<u64> = (0..count as u64).collect();
    let partials: Vec<CMatrix> = ids
        .par_chunks(64)
        .map(|chunk| {
            let mut acc = CMatrix::zeros(n, n);
            for &j in chunk {
                let mut rng = trajectory_rng(seed, j);
                let psi = run_trajectory(psi0, w, &sampler, t, &mut rng);
                acc += &psi * psi.adjoint();
            }
            acc
        })
        .collect();
    let mut sum = CMatrix::zeros(n, n);
    for p in partials {
        sum += p;
    }
    Ok(sum / C64::from(count.max(1) as f64))
}

/// Trajectory averages of `|psi(s)><psi(s)|` for every `s` in `0..=t`,
/// with the same streams as [`average_trajectories`].
pub fn average_trajectory_series(psi0: &CVector, w: &WalkSpec, scheme: &PercolationScheme, t: usize, count: usize, seed: u64) -> Result<Vec<CMatrix>> {
    let sampler = Sampler::new(scheme, w.structure())?;
    let n = psi0.len();
    let ids: Vec<u64> = (0..count as u64).collect();
    let partials: Vec<Vec<CMatrix>> = ids
        .par_chunks(64)
        .map(|chunk| {
            let mut acc = vec![CMatrix::zeros(n, n); t + 1];
            for &j in chunk {
                let mut rng = trajectory_rng(seed, j);
                walk_trajectory(psi0, w, &sampler, t, &mut rng, |s, psi| acc[s] += psi * psi.adjoint());
            }
            acc
        })
        .collect();
    let mut sum = vec![CMatrix::zeros(n, n); t + 1];
    for part in partials {
        for (s, m) in part.into_iter().enumerate() {
            sum[s] += m;
        }
    }
    let scale = C64::from(count.max(1) as f64);
    Ok(sum.into_iter().map(|m| m / scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{parse_graph, StateGraph};
    use crate::walk::{basis_state, CoinSpec, PermutationSpec, Rotation, Variant};

    fn corpus(name: &str) -> StructureGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn path_walk() -> WalkSpec {
        let g = corpus("path3");
        let sg = StateGraph::new(&g, None).unwrap();
        WalkSpec::new(sg.clone(), CoinSpec::grover(&sg), PermutationSpec::identity(&sg), Variant::U3).unwrap()
    }

    #[test]
    fn full_on_path_matches_product_weights() {
        let g = corpus("path3");
        let p = 0.3;
        let list = PercolationScheme::Full { p }.enumerate(&g).unwrap();
        assert_eq!(list.len(), 4);
        let lookup = |labels: &[&str]| {
            let k = Configuration::from_labels(&g, labels).unwrap();
            list.iter().find(|(c, _)| *c == k).unwrap().1
        };
        assert!((lookup(&[]) - 0.49).abs() < 1e-15);
        assert!((lookup(&["B"]) - 0.21).abs() < 1e-15);
        assert!((lookup(&["C"]) - 0.21).abs() < 1e-15);
        assert!((lookup(&["B", "C"]) - 0.09).abs() < 1e-15);
    }

    #[test]
    fn degenerate_and_capped_enumerations() {
        let single = corpus("single");
        let list = PercolationScheme::Full { p: 0.5 }.enumerate(&single).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].1, 1.0);
        let cube = corpus("cube");
        assert!(matches!(PercolationScheme::Full { p: 0.5 }.enumerate_capped(&cube, 1000), Err(Error::TooManyConfigurations { count: 4096, cap: 1000 })));
        assert!(PercolationScheme::Full { p: 1.0 }.enumerate(&cube).is_err());
        let sc = PercolationScheme::SingleClosed.enumerate(&cube).unwrap();
        assert_eq!(sc.len(), 12);
        assert!(sc.iter().all(|(k, _)| k.open_count() == 11));
    }

    #[test]
    fn explicit_probabilities_must_sum_to_one() {
        let g = corpus("path3");
        let bad = PercolationScheme::parse(r#"{"kind":"explicit","configurations":[{"open":["B"],"probability":0.5}]}"#).unwrap();
        assert!(matches!(bad.enumerate(&g), Err(Error::InvalidScheme(_))));
        let good =
            PercolationScheme::parse(r#"{"kind":"explicit","configurations":[{"open":["B"],"probability":0.5},{"open":[],"probability":0.5}]}"#).unwrap();
        assert_eq!(good.enumerate(&g).unwrap().len(), 2);
        assert_eq!(PercolationScheme::parse("full:0.25").unwrap(), PercolationScheme::Full { p: 0.25 });
    }

    #[test]
    fn closed_vertex_merges_duplicates() {
        let g = corpus("single");
        let list = PercolationScheme::ClosedVertex.enumerate(&g).unwrap();
        assert_eq!(list.len(), 1);
        let tri = corpus("triangle");
        assert_eq!(PercolationScheme::ClosedVertex.enumerate(&tri).unwrap().len(), 3);
    }

    #[test]
    fn equivalence_rule() {
        let tri = corpus("triangle");
        let eq = |s: PercolationScheme| equivalent_to_full(&s.enumerate(&tri).unwrap(), 3);
        assert!(eq(PercolationScheme::SingleOpen));
        assert!(eq(PercolationScheme::SingleClosed));
        assert!(eq(PercolationScheme::Full { p: 0.5 }));
        // each closed-vertex configuration of a triangle leaves one edge open,
        // the same as single_open
        assert!(eq(PercolationScheme::ClosedVertex));
        assert!(!equivalent_to_full(&[(Configuration::empty(&tri), 1.0)], 3));
        assert!(!eq(PercolationScheme::Unpercolated));
    }

    #[test]
    fn single_configuration_is_unitary_conjugation() {
        let w = path_walk();
        let g = w.structure().clone();
        let psi = basis_state(w.dim(), 0);
        let rho = DensityMatrix::pure(&psi);
        let next = channel_step(&rho, &w, &PercolationScheme::Unpercolated).unwrap();
        let u = w.step_operator(&Configuration::all(&g)).unwrap();
        let up = &u * &psi;
        assert!(linalg::max_abs_diff(next.matrix(), &(&up * up.adjoint())) < 1e-14);
        assert!((next.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn channel_matches_direct_kraus_sum() {
        let g = corpus("cube");
        let w = WalkSpec::grover3(&g, Rotation::Cw, Variant::U1).unwrap();
        let configs = PercolationScheme::SingleOpen.enumerate(&g).unwrap();
        let ch = Channel::new(&w, &configs).unwrap();
        let psi = CVector::from_fn(24, |i, _| C64::new((i as f64).sin(), (i as f64 * 0.3).cos()));
        let psi = &psi / C64::from(psi.norm());
        let rho = &psi * psi.adjoint();
        let mut want = CMatrix::zeros(24, 24);
        for (k, p) in &configs {
            let u = w.step_operator(k).unwrap();
            want += &u * &rho * u.adjoint() * C64::from(*p);
        }
        assert!(linalg::max_abs_diff(&ch.apply(&rho), &want) < 1e-14);
    }

    #[test]
    fn trace_and_determinism() {
        let w = path_walk();
        let rho0 = DensityMatrix::pure(&basis_state(w.dim(), 1));
        let series = evolve(&rho0, &w, &PercolationScheme::Full { p: 0.5 }, 100).unwrap();
        assert_eq!(series.len(), 101);
        for r in &series {
            assert!((r.trace() - 1.0).abs() < 1e-12);
        }
        assert_eq!(evolve(&rho0, &w, &PercolationScheme::Full { p: 0.5 }, 0).unwrap(), vec![rho0.clone()]);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let one = pool.install(|| evolve(&rho0, &w, &PercolationScheme::Full { p: 0.5 }, 10).unwrap());
        let many = evolve(&rho0, &w, &PercolationScheme::Full { p: 0.5 }, 10).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn trajectories_are_reproducible() {
        let w = path_walk();
        let psi = basis_state(w.dim(), 1);
        let s = PercolationScheme::Full { p: 0.5 };
        let a = sample_trajectory(&psi, &w, &s, 30, 7).unwrap();
        let b = sample_trajectory(&psi, &w, &s, 30, 7).unwrap();
        assert_eq!(a, b);
        let fixed = w.apply_fixed(&psi, &Configuration::all(w.structure()), 30).unwrap();
        let single = sample_trajectory(&psi, &w, &PercolationScheme::Unpercolated, 30, 1).unwrap();
        assert!((fixed - single).norm() < 1e-14);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(CMatrix::from_row_slice(2, 2, &[C64::from(1.0), C64::new(0.0, 1.0), C64::from(0.0), C64::from(0.0)])).is_err());
        assert!(DensityMatrix::new(CMatrix::from_diagonal_element(2, 2, C64::from(-0.5))).is_err());
        assert!(DensityMatrix::new(CMatrix::identity(3, 3) / C64::from(3.0)).is_ok());
    }
}
