//! Readers for the on-disk formats.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;
use syncgame::bcs::LinearSystemZ2;
use syncgame::game::{CondProb, GameJson, QuantumWitness, SyncGame, WitnessJson};
use syncgame::graph::{parse_graph, Graph};
use syncgame::ncalg::{parse_poly, parse_presentation, NCPoly, Presentation};
use syncgame::qgraph::{QuantumGraph, QuantumGraphJson};

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn graph(path: &Path) -> anyhow::Result<Graph> {
    let text = read(path)?;
    parse_graph(&text)
        .map_err(syncgame::Error::from)
        .with_context(|| format!("parsing graph {}", path.display()))
}

/// A quantum-graph JSON file, or a classical graph promoted to one.
pub fn quantum_graph(path: &Path) -> anyhow::Result<QuantumGraph> {
    let text = read(path)?;
    if let Ok(j) = serde_json::from_str::<QuantumGraphJson>(&text) {
        return QuantumGraph::from_json(&j)
            .map_err(syncgame::Error::from)
            .with_context(|| format!("loading quantum graph {}", path.display()));
    }
    let g = parse_graph(&text)
        .map_err(syncgame::Error::from)
        .with_context(|| format!("{} is neither a quantum graph nor a graph", path.display()))?;
    Ok(QuantumGraph::from_classical(&g).map_err(syncgame::Error::from)?)
}

pub fn game(path: &Path) -> anyhow::Result<SyncGame> {
    let text = read(path)?;
    let j: GameJson =
        serde_json::from_str(&text).with_context(|| format!("parsing game {}", path.display()))?;
    Ok(SyncGame::from_json(&j).map_err(syncgame::Error::from)?)
}

pub fn witness(path: &Path) -> anyhow::Result<QuantumWitness> {
    let text = read(path)?;
    let j: WitnessJson =
        serde_json::from_str(&text).with_context(|| format!("parsing witness {}", path.display()))?;
    Ok(QuantumWitness::from_json(&j).map_err(syncgame::Error::from)?)
}

pub fn presentation(path: &Path) -> anyhow::Result<Presentation> {
    let text = read(path)?;
    parse_presentation(&text)
        .map_err(syncgame::Error::from)
        .with_context(|| format!("parsing presentation {}", path.display()))
}

pub fn system(path: &Path) -> anyhow::Result<LinearSystemZ2> {
    let text = read(path)?;
    LinearSystemZ2::parse(&text)
        .map_err(syncgame::Error::from)
        .with_context(|| format!("parsing system {}", path.display()))
}

/// Strategy files: a deterministic map, an explicit correlation table, or a
/// quantum witness.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum StrategyJson {
    Map {
        map: Vec<usize>,
    },
    Table {
        inputs: usize,
        outputs: usize,
        /// `p(a, b | v, w)` flattened in `[v][w][a][b]` order.
        p: Vec<f64>,
    },
    Witness(WitnessJson),
}

pub enum Strategy {
    Correlation(CondProb, &'static str),
    Witness(QuantumWitness),
}

pub fn strategy(path: &Path, n_outputs: usize) -> anyhow::Result<Strategy> {
    let text = read(path)?;
    let j: StrategyJson = serde_json::from_str(&text)
        .with_context(|| format!("parsing strategy {}", path.display()))?;
    let s = match j {
        StrategyJson::Map { map } => Strategy::Correlation(
            CondProb::deterministic(&map, n_outputs).map_err(syncgame::Error::from)?,
            "deterministic",
        ),
        StrategyJson::Table { inputs, outputs, p } => Strategy::Correlation(
            CondProb::from_table(inputs, outputs, &p).map_err(syncgame::Error::from)?,
            "correlation",
        ),
        StrategyJson::Witness(w) => {
            Strategy::Witness(QuantumWitness::from_json(&w).map_err(syncgame::Error::from)?)
        }
    };
    Ok(s)
}

/// Generator images, one `name -> polynomial` per line with `#` comments.
/// Letters of `src` that are not listed default to the adjoint of their
/// partner's image.
pub fn hom_map(path: &Path, src: &Presentation, dst: &Presentation) -> anyhow::Result<Vec<NCPoly>> {
    let text = read(path)?;
    let (sal, dal) = (src.alphabet(), dst.alphabet());
    let mut images: Vec<Option<NCPoly>> = vec![None; sal.len()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (name, rhs) = content
            .split_once("->")
            .ok_or_else(|| anyhow!("{}:{line}: expected `name -> polynomial`", path.display()))?;
        let l = sal
            .letter(name.trim())
            .ok_or_else(|| anyhow!("{}:{line}: unknown source letter `{}`", path.display(), name.trim()))?;
        let img = parse_poly(rhs, dal)
            .map_err(syncgame::Error::from)
            .with_context(|| format!("{}:{line}", path.display()))?;
        if images[l as usize].replace(img).is_some() {
            bail!("{}:{line}: `{}` mapped twice", path.display(), name.trim());
        }
    }
    for l in 0..sal.len() {
        if images[l].is_none() {
            let partner = sal.star(l as _) as usize;
            images[l] = images[partner].as_ref().map(|p| p.star(dal));
        }
    }
    images
        .into_iter()
        .enumerate()
        .map(|(l, img)| img.ok_or_else(|| anyhow!("no image for `{}`", sal.name(l as _))))
        .collect()
}
