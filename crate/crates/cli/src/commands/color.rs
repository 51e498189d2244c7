use anyhow::anyhow;
use clap::{Args, ValueEnum};
use perqwalk::grover3::{edge_3_color, find_structure_coloring, permutations_from_coloring, ColoringOutcome, Conflict, EdgeColoring, Phase};
use perqwalk::walk::{PermutationConfig, Rotation, WalkConfig};
use perqwalk::{PermutationSpec, StateGraph};
use serde::Serialize;

use crate::output;
use crate::{input, CmdResult, Common, Format};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PhaseArg {
    /// `e^{i pi/3}`
    Alpha2,
    /// `e^{-i pi/3}`
    Alpha3,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[arg(long, value_enum, default_value_t = PhaseArg::Alpha2)]
    pub phase: PhaseArg,
    /// Search a proper coloring of the structure edges and derive the local
    /// permutations from it.
    #[arg(long)]
    pub from_structure_coloring: bool,
    /// Only decide whether the structure graph has a proper 3-edge-coloring.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Serialize)]
struct EdgeColor {
    index: usize,
    label: String,
    color: char,
}

#[derive(Serialize)]
struct Report {
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    conflict: Option<Conflict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotations: Option<Vec<Option<Rotation>>>,
    colors: Vec<EdgeColor>,
}

fn table(sg: &StateGraph, c: &EdgeColoring) -> Vec<EdgeColor> {
    (0..sg.dim()).map(|i| EdgeColor { index: i, label: sg.label(i), color: c.colors[i].letter() }).collect()
}

pub fn run(c: &Common, a: &ColorArgs) -> CmdResult {
    let g = input::graph(c)?;
    let phase = match a.phase {
        PhaseArg::Alpha2 => Phase::Alpha2,
        PhaseArg::Alpha3 => Phase::Alpha3,
    };
    if a.exhaustive {
        let found = find_structure_coloring(&g)?;
        let colors: Vec<EdgeColor> =
            found.iter().flatten().enumerate().map(|(e, col)| EdgeColor { index: e, label: g.edge(e).label.clone(), color: col.letter() }).collect();
        let report = Report { consistent: found.is_some(), conflict: None, rotations: None, colors };
        if found.is_none() && c.format == Format::Csv {
            eprintln!("no proper 3-coloring");
        }
        return emit(c, &report);
    }

    let sg = StateGraph::new(&g, Some(3))?;
    let (perms, outcome) = if a.from_structure_coloring {
        let colors = find_structure_coloring(&g)?.ok_or_else(|| anyhow!("no proper 3-coloring"))?;
        let (perms, coloring) = permutations_from_coloring(&sg, &colors, phase)?;
        (perms, ColoringOutcome::Consistent { coloring })
    } else {
        let mut cfg: WalkConfig = input::walk_config(c, &g)?;
        if c.walk.is_none() {
            cfg.permutation = PermutationConfig::Preset("cw".into());
        }
        cfg.target_degree = Some(3);
        let w = cfg.build(&g)?;
        let perms: PermutationSpec = w.permutation().clone();
        let outcome = edge_3_color(&sg, &perms, phase)?;
        (perms, outcome)
    };
    let rotations = Some((0..sg.vertex_count()).map(|v| perms.rotation_at(v)).collect());
    let report = match outcome {
        ColoringOutcome::Consistent { coloring } => Report { consistent: true, conflict: None, rotations, colors: table(&sg, &coloring) },
        ColoringOutcome::Conflict { conflict } => Report { consistent: false, conflict: Some(conflict), rotations, colors: Vec::new() },
    };
    emit(c, &report)
}

fn emit(c: &Common, report: &Report) -> CmdResult {
    match c.format {
        Format::Json => output::json(c, report)?,
        Format::Csv => {
            if let Some(conflict) = &report.conflict {
                eprintln!("conflict: {}", serde_json::to_string(conflict).map_err(anyhow::Error::from)?);
            }
            let header: Vec<String> = ["index", "label", "color"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = report.colors.iter().map(|e| vec![e.index.to_string(), e.label.clone(), e.color.to_string()]).collect();
            output::csv(c, &header, &rows)?;
        }
    }
    Ok(())
}
