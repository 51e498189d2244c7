use clap::Args;
use perqwalk::grover3::trapped_basis;
use perqwalk::linalg::max_abs_diff;
use perqwalk::percolation::DensityMatrix;
use perqwalk::transport::{efficiency_extremes, evolve_with_sink, nonpercolated_trapped_extension, sr_trapped_basis, transfer_efficiency};
use perqwalk::{CVector, CoinSpec, PercolationScheme, PermutationSpec, WalkSpec, C64};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::output::{self, num};
use crate::{input, CmdResult, Common, Format};

#[derive(Debug, Args)]
pub struct TransportArgs {
    /// Vertex holding the initial excitation.
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    /// Use the walk without percolation and its additional trapped states.
    #[arg(long)]
    pub nonpercolated: bool,
}

#[derive(Serialize)]
struct StateReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<f64>,
    simulated: f64,
}

#[derive(Serialize)]
struct Report {
    sink: Vec<usize>,
    source: usize,
    steps: usize,
    percolated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sr_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extremes: Option<[f64; 2]>,
    states: BTreeMap<String, StateReport>,
}

/// Reflecting Grover walk on a 3-regular state graph.
fn is_reflecting_grover(w: &WalkSpec) -> bool {
    let sg = w.state_graph();
    sg.degrees().iter().all(|&d| d == 3)
        && max_abs_diff(w.coin_matrix(), &CoinSpec::grover(sg).matrix()) < 1e-14
        && w.permutation() == &PermutationSpec::identity(sg)
}

pub fn run(c: &Common, a: &TransportArgs) -> CmdResult {
    let g = input::graph(c)?;
    let w = input::walk(c, &g)?;
    let sg = w.state_graph();
    let sink = input::sink(c, &w)?;
    let scheme = if a.nonpercolated { PercolationScheme::Unpercolated } else { input::scheme(c)? };
    if a.source >= sg.vertex_count() {
        return Err(perqwalk::Error::UnknownVertex(a.source).into());
    }
    let local = sg.outgoing(a.source);
    if local.is_empty() {
        return Err(anyhow::anyhow!("source vertex {} has no outgoing edges", a.source).into());
    }
    let amp = C64::from(1.0 / (local.len() as f64).sqrt());
    let symmetric = CVector::from_fn(sg.dim(), |i, _| if local.contains(&i) { amp } else { C64::from(0.0) });

    let mut sr_dimension = None;
    let mut extremes = None;
    let mut initial: Vec<(String, CVector, Option<f64>)> = Vec::new();
    if is_reflecting_grover(&w) {
        let trapped: Vec<CVector> = trapped_basis(sg)?.iter().map(|s| s.raw()).collect();
        let mut sr = sr_trapped_basis(&trapped, &sink);
        if a.nonpercolated {
            sr.extend(sr_trapped_basis(&nonpercolated_trapped_extension(sg)?, &sink));
        }
        let span = perqwalk::transport::orthonormal_span(&sr);
        sr_dimension = Some(span.len());
        let ext = efficiency_extremes(sg, &sr, a.source)?;
        // without a sink nothing is ever absorbed
        let q = |x: f64| if sink.is_empty() { 0.0 } else { x };
        extremes = Some([q(ext.min), q(ext.max)]);
        initial.push(("symmetric".into(), symmetric.clone(), Some(q(transfer_efficiency(&symmetric, &sr)?))));
        initial.push(("min".into(), ext.min_state.clone(), Some(q(ext.min))));
        initial.push(("max".into(), ext.max_state.clone(), Some(q(ext.max))));
    } else {
        initial.push(("symmetric".into(), symmetric, None));
    }

    let mut series = Vec::new();
    let mut states = BTreeMap::new();
    for (name, psi, analytic) in &initial {
        let run = evolve_with_sink(&DensityMatrix::pure(psi), &w, &scheme, &sink, c.steps)?;
        states.insert(name.clone(), StateReport { analytic: *analytic, simulated: run.final_efficiency() });
        series.push((name.clone(), run.absorbed()));
    }

    match c.format {
        Format::Json => output::json(
            c,
            &Report { sink: sink.vertices().to_vec(), source: a.source, steps: c.steps, percolated: !a.nonpercolated, sr_dimension, extremes, states },
        )?,
        Format::Csv => {
            let mut header = vec!["step".to_string()];
            header.extend(series.iter().map(|(n, _)| format!("q_{n}")));
            let rows: Vec<Vec<String>> = (0..=c.steps)
                .map(|t| {
                    let mut row = vec![t.to_string()];
                    row.extend(series.iter().map(|(_, q)| num(q[t])));
                    row
                })
                .collect();
            output::csv(c, &header, &rows)?;
        }
    }
    Ok(())
}
