//! Command implementations. Each returns the payload to print.

use std::path::Path;

use anyhow::Context;
use serde_json::{json, Value};
use syncgame::bcs::{magic_square_witness, sync_bcs_game};
use syncgame::certificates::{
    biguint_json, classical_qaut_certificate_with, degree_obstruction, isospectrality_obstruction,
    AMBIGUITY_FLOOR,
};
use syncgame::game::{
    hom_game, is_perfect_strategy, iso_game, perfect_deterministic_search, strategy_from_witness,
    verify_magic_unitary_witness, SyncGame,
};
use syncgame::game_algebra::{algebra_of_game, iso_algebra, iso_game_algebra};
use syncgame::graph::{automorphism_order, char_poly, is_isomorphic, CharPoly};
use syncgame::ncalg::{
    complete, find_boolean_character, triviality_status, verify_homomorphism, CompletionOptions,
    Presentation, Triviality,
};
use syncgame::qgraph::check_quantum_adjacency;
use syncgame::{repro, Error};

use crate::config::Config;
use crate::inputs::{self, Strategy};
use crate::{AlgebraCmd, BuildKind, CertCmd, Command, GameCmd, GraphCmd, QgraphCmd, ReproCmd, WitnessCmd};

/// Partial assignments explored when looking for a `{0, 1}` character.
const CHARACTER_BUDGET: u64 = 1_000_000;

pub enum Payload {
    Json(Value),
    /// Printed verbatim (presentation text).
    Raw(String),
}

impl From<Value> for Payload {
    fn from(v: Value) -> Self {
        Self::Json(v)
    }
}

type Out = anyhow::Result<Payload>;

fn lib<T, E: Into<Error>>(r: Result<T, E>) -> anyhow::Result<T> {
    r.map_err(|e| anyhow::Error::new(e.into()))
}

pub fn run(cmd: &Command, cfg: &Config) -> Out {
    match cmd {
        Command::Graph(c) => graph(c),
        Command::Qgraph(c) => qgraph(c, cfg),
        Command::Game(c) => game(c),
        Command::Algebra(c) => algebra(c, cfg),
        Command::Witness(c) => witness(c, cfg),
        Command::Cert(c) => cert(c, cfg),
        Command::Repro(c) => repro_cmd(c, cfg),
    }
}

fn completion(cfg: &Config) -> CompletionOptions {
    CompletionOptions {
        degree_bound: cfg.degree_bound,
        rule_cap: cfg.rule_cap,
        track: false,
    }
}

fn poly_json(p: &CharPoly) -> Value {
    json!({
        "char_poly": p.to_string(),
        "coefficients": p.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "distinct_eigenvalues": p.distinct_roots(),
        "simple_spectrum": p.distinct_roots() == p.degree(),
    })
}

fn graph(c: &GraphCmd) -> Out {
    let v = match c {
        GraphCmd::Info { file } => {
            let g = inputs::graph(file)?;
            let mut v = poly_json(&char_poly(&g));
            v["n"] = json!(g.n());
            v["edges"] = json!(g.edge_count());
            v["degrees"] = json!(g.degrees());
            v["regular_degree"] = json!(g.regular_degree());
            v["aut_order"] = biguint_json(&lib(automorphism_order(&g))?);
            v
        }
        GraphCmd::Charpoly { file } => poly_json(&char_poly(&inputs::graph(file)?)),
        GraphCmd::Aut { file } => {
            json!({"aut_order": biguint_json(&lib(automorphism_order(&inputs::graph(file)?))?)})
        }
        GraphCmd::Iso { file, file2 } => {
            let (x, y) = (inputs::graph(file)?, inputs::graph(file2)?);
            let map = lib(is_isomorphic(&x, &y))?;
            json!({"isomorphic": map.is_some(), "map": map})
        }
    };
    Ok(v.into())
}

fn qgraph(c: &QgraphCmd, cfg: &Config) -> Out {
    let v = match c {
        QgraphCmd::Check { file } => {
            let qg = inputs::quantum_graph(file)?;
            let rep = lib(check_quantum_adjacency(&qg, cfg.tol))?;
            let mut v = serde_json::to_value(rep)?;
            v["pass"] = json!(rep.pass());
            v["max_residual"] = json!(rep.max_residual());
            v["delta"] = json!(qg.delta());
            v["blocks"] = json!(qg.qset().blocks());
            v
        }
        QgraphCmd::FromClassical { file } => {
            let g = inputs::graph(file)?;
            let qg = lib(syncgame::qgraph::QuantumGraph::from_classical(&g))?;
            serde_json::to_value(qg.to_json())?
        }
    };
    Ok(v.into())
}

fn build_game(kind: &BuildKind) -> anyhow::Result<SyncGame> {
    Ok(match kind {
        BuildKind::Hom { x, y } => lib(hom_game(&inputs::graph(x)?, &inputs::graph(y)?))?,
        BuildKind::Iso { x, y, .. } => lib(iso_game(&inputs::graph(x)?, &inputs::graph(y)?))?,
        BuildKind::Syncbcs { system } => lib(sync_bcs_game(&inputs::system(system)?))?,
    })
}

fn write_out(path: &Path, text: &str, summary: Value) -> Out {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    let mut v = summary;
    v["written"] = json!(path.display().to_string());
    Ok(v.into())
}

fn game(c: &GameCmd) -> Out {
    match c {
        GameCmd::Build { kind, out } => {
            let g = build_game(kind)?;
            let v = serde_json::to_value(g.to_json())?;
            match out {
                Some(path) => write_out(
                    path,
                    &serde_json::to_string_pretty(&v)?,
                    json!({"inputs": g.n_inputs(), "outputs": g.n_outputs(), "zeros": g.zero_count()}),
                ),
                None => Ok(v.into()),
            }
        }
        GameCmd::Solve { file } => {
            let g = inputs::game(file)?;
            let h = lib(perfect_deterministic_search(&g))?;
            let named = h.as_ref().map(|h| {
                h.iter()
                    .enumerate()
                    .map(|(v, &a)| (g.inputs()[v].clone(), json!(g.outputs()[a])))
                    .collect::<serde_json::Map<_, _>>()
            });
            Ok(json!({"winning": h.is_some(), "map": h, "assignment": named}).into())
        }
        GameCmd::VerifyStrategy { game, strategy } => {
            let g = inputs::game(game)?;
            let v = match inputs::strategy(strategy, g.n_outputs())? {
                Strategy::Correlation(p, kind) => {
                    json!({"kind": kind, "perfect": lib(is_perfect_strategy(&p, &g))?})
                }
                Strategy::Witness(w) => {
                    let check = w.check();
                    let p = lib(strategy_from_witness(&w, &g))?;
                    json!({
                        "kind": "quantum",
                        "d": w.dim(),
                        "projection": check.projection,
                        "row_sums": check.row_sums,
                        "perfect": lib(is_perfect_strategy(&p, &g))?,
                    })
                }
            };
            Ok(v.into())
        }
    }
}

fn build_algebra(kind: &BuildKind) -> anyhow::Result<Presentation> {
    let ga = match kind {
        BuildKind::Hom { .. } | BuildKind::Syncbcs { .. } => algebra_of_game(&build_game(kind)?),
        BuildKind::Iso { x, y, full } => {
            let (x, y) = (inputs::graph(x)?, inputs::graph(y)?);
            if *full {
                lib(iso_game_algebra(&x, &y))?
            } else {
                lib(iso_algebra(&x, &y))?
            }
        }
    };
    Ok(ga.pres)
}

fn algebra(c: &AlgebraCmd, cfg: &Config) -> Out {
    match c {
        AlgebraCmd::Build { kind, out } => {
            let p = build_algebra(kind)?;
            let text = p.to_text();
            match out {
                Some(path) => write_out(
                    path,
                    &text,
                    json!({"generators": p.alphabet().len(), "relations": p.relations().len()}),
                ),
                None => Ok(Payload::Raw(text)),
            }
        }
        AlgebraCmd::Triviality { pres, system_out } => {
            let p = inputs::presentation(pres)?;
            let eval = find_boolean_character(&p, CHARACTER_BUDGET);
            let rep = lib(triviality_status(&p, &completion(cfg), eval.as_deref()))?;
            let mut v = json!({
                "verdict": rep.verdict.label(),
                "degree_bound": cfg.degree_bound,
                "generators": p.alphabet().len(),
                "relations": p.relations().len(),
            });
            match &rep.verdict {
                Triviality::TrivialCertified(cert) => {
                    v["certificate"] = json!({
                        "steps": cert.entries.len(),
                        "replay": match cert.replay() {
                            Ok(()) => "ok".to_string(),
                            Err(e) => format!("{e:?}"),
                        },
                    });
                }
                Triviality::NontrivialCertified(values) => {
                    let al = p.alphabet();
                    v["character"] = (0..al.len())
                        .map(|l| (al.name(l as _).to_string(), json!(values[l].to_string())))
                        .collect::<serde_json::Map<_, _>>()
                        .into();
                }
                Triviality::InconclusiveUpTo(_) => {}
            }
            if let Some(rs) = &rep.system {
                v["rules"] = json!(rs.len());
                v["saturated"] = json!(rs.saturated);
                v["capped"] = json!(rs.capped);
                if let Some(path) = system_out {
                    let text = serde_json::to_string_pretty(&rs.to_json())?;
                    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                }
            }
            Ok(v.into())
        }
        AlgebraCmd::VerifyHom { src, dst, map } => {
            let (sp, dp) = (inputs::presentation(src)?, inputs::presentation(dst)?);
            let images = inputs::hom_map(map, &sp, &dp)?;
            let rs = complete(&dp, &completion(cfg));
            let rep = lib(verify_homomorphism(&sp, &rs, &images))?;
            let mut v = rep.to_json(sp.alphabet(), dp.alphabet());
            v["degree_bound"] = json!(cfg.degree_bound);
            v["target_collapsed"] = json!(rs.collapsed);
            Ok(v.into())
        }
    }
}

fn witness(c: &WitnessCmd, cfg: &Config) -> Out {
    let v = match c {
        WitnessCmd::Verify { witness, x, y } => {
            let w = inputs::witness(witness)?;
            let (x, y) = (inputs::graph(x)?, inputs::graph(y)?);
            let rep = lib(verify_magic_unitary_witness(&w, &x, &y, cfg.tol))?;
            let mut v = serde_json::to_value(rep)?;
            v["pass"] = json!(rep.pass());
            v["max_residual"] = json!(rep.max_residual());
            v
        }
        WitnessCmd::MagicSquare => serde_json::to_value(magic_square_witness().to_json())?,
    };
    Ok(v.into())
}

fn cert(c: &CertCmd, cfg: &Config) -> Out {
    let v = match c {
        CertCmd::Qaut { file } => {
            let g = inputs::graph(file)?;
            let floor = AMBIGUITY_FLOOR.min(cfg.support_eps / 10.0);
            lib(classical_qaut_certificate_with(&g, cfg.support_eps, floor))?.to_json()
        }
        CertCmd::Degree { x, y } => degree_obstruction(&inputs::graph(x)?, &inputs::graph(y)?).to_json(),
        CertCmd::Isospectral { x, y } => {
            isospectrality_obstruction(&inputs::graph(x)?, &inputs::graph(y)?).to_json()
        }
    };
    Ok(v.into())
}

fn repro_cmd(c: &ReproCmd, cfg: &Config) -> Out {
    let v = match c {
        ReproCmd::Frucht => repro::frucht_report()?,
        ReproCmd::Niso { subset } => repro::niso_report(subset.as_deref())?,
        ReproCmd::MagicSquare => repro::magic_square_report(cfg.tol)?,
        ReproCmd::EquivalenceMaps { system } => {
            repro::equivalence_maps_report(&inputs::system(system)?, &completion(cfg))?
        }
    };
    Ok(v.into())
}
