use anyhow::Context;
use clap::Args;
use perqwalk::attractors::{attractor_space, basis_residuals, brute_force_attractors, common_eigenstates, p_attractors, AttractorDump, EIG_TOL};
use perqwalk::linalg;
use perqwalk::linalg::canonical_arg;
use perqwalk::percolation::equivalent_to_full;
use serde::Serialize;
use std::path::PathBuf;

use crate::output::{self, num};
use crate::{input, CmdResult, Common, Format};

#[derive(Debug, Args)]
pub struct AttractorsArgs {
    /// Write every attractor matrix to this JSON file.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Accept schemes that are not certified equivalent to full percolation.
    #[arg(long)]
    pub force: bool,
}

#[derive(Serialize)]
struct Eigenvalue {
    lambda: [f64; 2],
    arg_over_pi: f64,
    count: usize,
    p_attractors: usize,
    non_p_attractors: usize,
}

#[derive(Serialize)]
struct Summary {
    dim: usize,
    configurations: usize,
    certified: bool,
    attractors: usize,
    max_residual: f64,
    gram_residual: f64,
    eigenvalues: Vec<Eigenvalue>,
}

pub fn run(c: &Common, a: &AttractorsArgs) -> CmdResult {
    let g = input::graph(c)?;
    let w = input::walk(c, &g)?;
    let configs = input::scheme_for_attractors(c, &g)?.enumerate(&g)?;
    let certified = equivalent_to_full(&configs, g.edge_count());
    let basis = if a.force { attractor_space(&w, &configs)? } else { brute_force_attractors(&w, &configs)? };
    let xs: Vec<_> = basis.elements.iter().map(|x| (x.lambda, &x.matrix)).collect();
    let residuals = basis_residuals(&w, &configs, &xs)?;

    // dimension of the p-attractor span per eigenvalue
    let p_all = p_attractors(&common_eigenstates(&w)?);
    let mut p_span: Vec<(perqwalk::C64, usize)> = Vec::new();
    for (lambda, _) in linalg::cluster(&p_all.iter().map(|x| x.lambda).collect::<Vec<_>>(), EIG_TOL) {
        let vecs: Vec<perqwalk::CVector> = p_all.iter().filter(|x| (x.lambda - lambda).norm() <= EIG_TOL).map(|x| linalg::vec_rows(&x.matrix)).collect();
        p_span.push((lambda, linalg::gram_schmidt(vecs.iter(), perqwalk::attractors::NULL_TOL).0.len()));
    }

    let eigenvalues = basis
        .spectrum()
        .into_iter()
        .map(|(lambda, count)| {
            let p = p_span.iter().find(|(l, _)| (l - lambda).norm() <= EIG_TOL).map_or(0, |(_, k)| *k).min(count);
            Eigenvalue {
                lambda: [lambda.re, lambda.im],
                arg_over_pi: canonical_arg(lambda) / std::f64::consts::PI,
                count,
                p_attractors: p,
                non_p_attractors: count - p,
            }
        })
        .collect();
    let summary = Summary {
        dim: w.dim(),
        configurations: configs.len(),
        certified,
        attractors: basis.len(),
        max_residual: residuals.iter().copied().fold(0.0, f64::max),
        gram_residual: basis.gram_residual(),
        eigenvalues,
    };

    if let Some(path) = &a.dump {
        let text = serde_json::to_string(&AttractorDump::new(&basis, &residuals)).context("serializing attractors")?;
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }

    match c.format {
        Format::Json => output::json(c, &summary)?,
        Format::Csv => {
            let header: Vec<String> = ["lambda_re", "lambda_im", "arg_over_pi", "count", "p_attractors", "non_p_attractors"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = summary
                .eigenvalues
                .iter()
                .map(|e| {
                    vec![
                        num(e.lambda[0]),
                        num(e.lambda[1]),
                        num(e.arg_over_pi),
                        e.count.to_string(),
                        e.p_attractors.to_string(),
                        e.non_p_attractors.to_string(),
                    ]
                })
                .collect();
            output::csv(c, &header, &rows)?;
        }
    }
    Ok(())
}
