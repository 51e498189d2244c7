use anyhow::bail;
use clap::Args;
use perqwalk::percolation::{average_trajectory_series, Channel, DensityMatrix};
use perqwalk::CMatrix;
use serde::Serialize;

use crate::output::{self, num};
use crate::{input, CmdResult, Common, Format};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// `vertex:V`, `edge:I`, `label:NAME@V`, `mixed` or a JSON list of `[re, im]`.
    #[arg(long, default_value = "vertex:0")]
    pub initial: String,
    /// Average this many Monte Carlo trajectories instead of the exact channel.
    #[arg(long)]
    pub trajectories: Option<usize>,
}

#[derive(Serialize)]
struct Row {
    step: usize,
    trace: f64,
    purity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    absorbed: Option<f64>,
    populations: Vec<f64>,
}

pub fn run(c: &Common, a: &SimulateArgs) -> CmdResult {
    let g = input::graph(c)?;
    let w = input::walk(c, &g)?;
    let scheme = input::scheme(c)?;
    let sink = input::sink(c, &w)?;
    let rho0 = input::initial_state(&a.initial, &w)?;

    let states: Vec<CMatrix> = match a.trajectories {
        Some(count) => {
            if !sink.is_empty() {
                return Err(anyhow::anyhow!("--trajectories does not support a sink").into());
            }
            let (vals, vecs) = perqwalk::linalg::hermitian_eigen(rho0.matrix());
            if vals.iter().rev().nth(1).is_some_and(|v| v.abs() > 1e-12) {
                bail_mixed()?;
            }
            let psi = vecs.column(vecs.ncols() - 1).into_owned();
            average_trajectory_series(&psi, &w, &scheme, c.steps, count, c.seed)?
        }
        None => {
            let ch = Channel::from_scheme(&w, &scheme)?.with_sink(sink.mask());
            let mut out = Vec::with_capacity(c.steps + 1);
            out.push(rho0.matrix().clone());
            for s in 0..c.steps {
                let next = ch.apply(&out[s]);
                out.push(next);
            }
            out
        }
    };

    let degrees = w.state_graph().degrees();
    let rows: Vec<Row> = states
        .into_iter()
        .enumerate()
        .map(|(step, m)| {
            let rho = DensityMatrix::from_unchecked(m);
            let trace = rho.trace();
            Row { step, trace, purity: rho.purity(), absorbed: (!sink.is_empty()).then_some(1.0 - trace), populations: rho.populations(&degrees) }
        })
        .collect();

    match c.format {
        Format::Json => output::json(c, &rows)?,
        Format::Csv => {
            let mut header = vec!["step".to_string(), "trace".into(), "purity".into()];
            if !sink.is_empty() {
                header.push("absorbed".into());
            }
            header.extend((0..g.vertex_count()).map(|v| format!("p_v{v}")));
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.step.to_string(), num(r.trace), num(r.purity)];
                    row.extend(r.absorbed.map(num));
                    row.extend(r.populations.iter().copied().map(num));
                    row
                })
                .collect();
            output::csv(c, &header, &cells)?;
        }
    }
    Ok(())
}

fn bail_mixed() -> anyhow::Result<()> {
    bail!("--trajectories needs a pure initial state")
}
