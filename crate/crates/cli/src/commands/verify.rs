use std::io::Write;

use anyhow::anyhow;
use clap::Args;
use perqwalk::attractors::{attractor_space, common_eigenstates, count_at, eigenstate_residual, span_distance};
use perqwalk::grover3::{condition_rank_check, trapped_basis};
use perqwalk::linalg::{self, max_abs_diff, unitarity_defect};
use perqwalk::percolation::Channel;
use perqwalk::transport::{evolve_with_sink, Sink};
use perqwalk::walk::{grover_coin, reflect_map};
use perqwalk::{CMatrix, Configuration, DensityMatrix, PercolationScheme, StateGraph, WalkSpec, C64};
use serde::Serialize;

use crate::output;
use crate::{input, CmdResult, Common, Format};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest edge count for the restricted-scheme comparison.
    #[arg(long, default_value_t = 12)]
    pub max_edges_for_equivalence: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check { name, status: Status::Skip, detail: why.to_string() }
}

fn is_grover(w: &WalkSpec) -> bool {
    w.coin().blocks().iter().all(|b| grover_coin(b.nrows()).is_ok_and(|g| max_abs_diff(b, &g) < 1e-14))
}

pub fn run(c: &Common, a: &VerifyArgs) -> CmdResult {
    let g = input::graph(c)?;
    let w = input::walk_config(c, &g)?.build_unchecked(&g)?;
    let scheme = input::scheme(c)?;
    let configs = scheme.enumerate(&g)?;
    let sg = w.state_graph();
    let mut checks = Vec::new();

    let coin = w.coin().blocks().iter().map(unitarity_defect).fold(0.0, f64::max);
    checks.push(check("coin unitarity", coin <= 1e-12, format!("defect {coin:.1e}")));

    let mut unitary: f64 = 0.0;
    let mut involution = true;
    for (k, _) in &configs {
        unitary = unitary.max(unitarity_defect(&w.step_operator(k)?));
        let map = reflect_map(sg, k);
        involution &= (0..map.len()).all(|i| map[map[i]] == i);
    }
    checks.push(check("step operator unitarity", unitary <= 1e-12, format!("defect {unitary:.1e} over {} configurations", configs.len())));
    checks.push(check("reflecting shift involution", involution, format!("{} configurations", configs.len())));

    let partner = (0..sg.dim()).all(|i| sg.partner(sg.partner(i)) == i);
    checks.push(check("partner involution", partner, format!("dimension {}", sg.dim())));

    let ch = Channel::new(&w, &configs)?;
    let mut rho = DensityMatrix::maximally_mixed(sg.dim()).into_matrix();
    if sg.dim() > 0 {
        rho[(0, 0)] += C64::from(1.0);
        rho /= C64::from(2.0);
    }
    let mut drift: f64 = 0.0;
    for _ in 0..c.steps {
        rho = ch.apply(&rho);
        drift = drift.max((linalg::trace(&rho).re - 1.0).abs());
    }
    checks.push(check("channel trace preservation", drift <= 1e-9, format!("drift {drift:.1e} over {} steps", c.steps)));

    let sink = if c.sink.is_empty() { Sink::new(sg, &[0])? } else { input::sink(c, &w)? };
    let run = evolve_with_sink(&DensityMatrix::maximally_mixed(sg.dim()), &w, &scheme, &sink, c.steps)?;
    let rise = run.survival.windows(2).map(|p| p[1] - p[0]).fold(f64::NEG_INFINITY, f64::max);
    checks.push(check("sink survival monotone", rise <= 1e-12, format!("largest increase {rise:.1e}, sink {:?}", sink.vertices())));

    if is_grover(&w) {
        let worst = w
            .coin()
            .blocks()
            .iter()
            .map(|b| {
                let d = b.nrows();
                let shift: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
                let swap: Vec<usize> = (0..d).map(|i| if d > 1 && i < 2 { 1 - i } else { i }).collect();
                max_abs_diff(&perqwalk::walk::relabel(b, &shift), b).max(max_abs_diff(&perqwalk::walk::relabel(b, &swap), b))
            })
            .fold(0.0, f64::max);
        checks.push(check("Grover permutation invariance", worst <= 1e-14, format!("deviation {worst:.1e}")));
    } else {
        checks.push(skip("Grover permutation invariance", "coin is not Grover"));
    }

    let cubic = sg.degrees().iter().all(|&d| d == 3);
    if cubic {
        let r = condition_rank_check(sg)?;
        checks.push(check("rank criterion", r.consistent(), format!("deficiency {}, bipartite without loops {}", r.deficiency, r.predicted_dependent)));
    } else {
        checks.push(skip("rank criterion", "state graph is not 3-regular"));
    }

    if cubic && is_grover(&w) && w.permutation() == &perqwalk::PermutationSpec::identity(sg) && (g.has_rotation() || g.max_degree() <= 2) {
        checks.push(trapped_check(&w, sg)?);
    } else {
        checks.push(skip("trapped basis", "needs a planar reflecting Grover walk of degree 3"));
    }

    match common_eigenstates(&w) {
        Ok(states) => {
            let keys: Vec<Configuration> = configs.iter().map(|(k, _)| k.clone()).collect();
            let mut worst: f64 = 0.0;
            for s in &states {
                worst = worst.max(eigenstate_residual(&w, &keys, s)?);
            }
            checks.push(check("common eigenstates", worst <= 1e-10, format!("{} states, residual {worst:.1e}", states.len())));
        }
        Err(e) => checks.push(check("common eigenstates", false, e.to_string())),
    }

    if g.edge_count() == 0 || g.edge_count() > a.max_edges_for_equivalence {
        checks.push(skip("restricted scheme equivalence", "edge count outside the supported range"));
    } else {
        checks.push(equivalence_check(&w, &g));
    }

    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    match c.format {
        Format::Json => output::json(c, &checks)?,
        Format::Csv => {
            let mut out = output::sink(c)?;
            for ch in &checks {
                let tag = match ch.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                writeln!(out, "{tag} {}: {}", ch.name, ch.detail).map_err(anyhow::Error::from)?;
            }
            out.flush().map_err(anyhow::Error::from)?;
        }
    }
    if failed > 0 {
        return Err(anyhow!("{failed} check(s) failed").into());
    }
    Ok(())
}

fn trapped_check(w: &WalkSpec, sg: &StateGraph) -> anyhow::Result<Check> {
    let basis = trapped_basis(sg)?;
    let exact = basis.iter().all(|s| s.satisfies_conditions(sg));
    let numeric = count_at(&common_eigenstates(w)?, C64::from(-1.0));
    Ok(check("trapped basis", exact && basis.len() == numeric, format!("{} states, numeric eigenspace {numeric}", basis.len())))
}

fn equivalence_check(w: &WalkSpec, g: &perqwalk::StructureGraph) -> Check {
    let attempt = || -> perqwalk::Result<(bool, String)> {
        let full = attractor_space(w, &PercolationScheme::Full { p: 0.5 }.enumerate(g)?)?;
        let mut ok = true;
        let mut parts = vec![format!("full {}", full.len())];
        for (name, scheme) in [
            ("single_open", PercolationScheme::SingleOpen),
            ("single_closed", PercolationScheme::SingleClosed),
            ("closed_vertex", PercolationScheme::ClosedVertex),
        ] {
            let b = attractor_space(w, &scheme.enumerate(g)?)?;
            let m: Vec<CMatrix> = b.matrices();
            let d = span_distance(&m, &full.matrices());
            ok &= b.len() == full.len() && d <= 1e-8;
            parts.push(format!("{name} {} ({d:.1e})", b.len()));
        }
        Ok((ok, parts.join(", ")))
    };
    match attempt() {
        Ok((ok, detail)) => check("restricted scheme equivalence", ok, detail),
        Err(e) => check("restricted scheme equivalence", false, e.to_string()),
    }
}
