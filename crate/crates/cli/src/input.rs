use anyhow::{anyhow, bail, Context};
use perqwalk::graphs::parse_graph;
use perqwalk::percolation::DensityMatrix;
use perqwalk::transport::Sink;
use perqwalk::walk::{basis_state, CoinConfig, PermutationConfig, WalkConfig};
use perqwalk::{CVector, PercolationScheme, StructureGraph, WalkSpec, C64};

use crate::Common;

pub fn graph(c: &Common) -> anyhow::Result<StructureGraph> {
    let path = c.graph.as_ref().ok_or_else(|| anyhow!("--graph is required"))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn walk_config(c: &Common, g: &StructureGraph) -> anyhow::Result<WalkConfig> {
    match &c.walk {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            WalkConfig::from_json(&text).with_context(|| format!("parsing {}", path.display()))
        }
        None => Ok(WalkConfig {
            target_degree: Some(g.max_degree().max(1)),
            coin: CoinConfig::Preset("grover".into()),
            permutation: PermutationConfig::Preset("identity".into()),
            variant: Default::default(),
        }),
    }
}

pub fn walk(c: &Common, g: &StructureGraph) -> anyhow::Result<WalkSpec> {
    Ok(walk_config(c, g)?.build(g)?)
}

pub fn scheme(c: &Common) -> anyhow::Result<PercolationScheme> {
    Ok(PercolationScheme::parse(c.scheme.as_deref().unwrap_or("full:0.5"))?)
}

pub fn scheme_for_attractors(c: &Common, g: &StructureGraph) -> anyhow::Result<PercolationScheme> {
    match &c.scheme {
        Some(s) => Ok(PercolationScheme::parse(s)?),
        None => Ok(PercolationScheme::single_closed_with_empty(g)),
    }
}

pub fn sink(c: &Common, w: &WalkSpec) -> anyhow::Result<Sink> {
    Ok(Sink::new(w.state_graph(), &c.sink)?)
}

/// `vertex:V` (equal amplitudes on the edges leaving `V`), `edge:I`
/// (basis state), `label:NAME@V`, `mixed`, or a JSON list of `[re, im]`.
pub fn initial_state(spec: &str, w: &WalkSpec) -> anyhow::Result<DensityMatrix> {
    let sg = w.state_graph();
    let n = sg.dim();
    let spec = spec.trim();
    if spec == "mixed" {
        return Ok(DensityMatrix::maximally_mixed(n));
    }
    let psi = if spec.starts_with('[') {
        let entries: Vec<[f64; 2]> = serde_json::from_str(spec).context("initial state")?;
        if entries.len() != n {
            bail!("initial state has {} entries, walk dimension is {n}", entries.len());
        }
        CVector::from_iterator(n, entries.iter().map(|z| C64::new(z[0], z[1])))
    } else if let Some(v) = spec.strip_prefix("vertex:") {
        let v: usize = v.parse().context("vertex index")?;
        if v >= sg.vertex_count() {
            return Err(perqwalk::Error::UnknownVertex(v).into());
        }
        let r = sg.outgoing(v);
        if r.is_empty() {
            bail!("vertex {v} has no outgoing edges");
        }
        let amp = C64::from(1.0 / (r.len() as f64).sqrt());
        CVector::from_fn(n, |i, _| if r.contains(&i) { amp } else { C64::from(0.0) })
    } else if let Some(i) = spec.strip_prefix("edge:") {
        let i: usize = i.parse().context("edge index")?;
        if i >= n {
            bail!("edge index {i} out of range for dimension {n}");
        }
        basis_state(n, i)
    } else if let Some(label) = spec.strip_prefix("label:") {
        let i = (0..n).find(|&i| sg.label(i) == label).ok_or_else(|| anyhow!("no directed edge labelled `{label}`"))?;
        basis_state(n, i)
    } else {
        bail!("unknown initial state `{spec}`");
    };
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(perqwalk::Error::InvalidState(format!("norm {norm} is not 1")).into());
    }
    Ok(DensityMatrix::pure(&psi))
}
