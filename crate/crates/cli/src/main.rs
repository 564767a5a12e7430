//! `syncgame`: command-line front end for games, algebras, quantum graphs and
//! certificates. Every command prints one JSON document on stdout (or an
//! indented text rendering with `--format text`); failures print
//! `{"error": {...}}` on stderr and exit nonzero.

mod commands;
mod config;
mod inputs;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Config, Format, Overrides, CONFIG_ENV};

#[derive(Debug, Parser)]
#[command(name = "syncgame", version, about = "Synchronous games, game algebras and quantum graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Completion degree bound.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Completion stops once this many rules are live.
    #[arg(long, global = true)]
    rule_cap: Option<usize>,
    /// Numerical tolerance for witness and axiom residuals.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Eigenvector entries below this are treated as zero.
    #[arg(long, global = true)]
    support_eps: Option<f64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            degree_bound: self.degree,
            rule_cap: self.rule_cap,
            tol: self.tol,
            support_eps: self.support_eps,
            threads: self.threads,
            format: self.format,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Quantum graphs.
    #[command(subcommand)]
    Qgraph(QgraphCmd),
    /// Synchronous games.
    #[command(subcommand)]
    Game(GameCmd),
    /// Game algebras and finitely presented *-algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Quantum strategies.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Spectral and degree certificates.
    #[command(subcommand)]
    Cert(CertCmd),
    /// Reproductions of the named examples.
    #[command(subcommand)]
    Repro(ReproCmd),
}

#[derive(Debug, Subcommand)]
pub enum GraphCmd {
    /// Size, degrees and spectral summary.
    Info { file: PathBuf },
    /// Exact characteristic polynomial.
    Charpoly { file: PathBuf },
    /// Order of the automorphism group.
    Aut { file: PathBuf },
    /// Exhaustive isomorphism search.
    Iso { file: PathBuf, file2: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum QgraphCmd {
    /// Checks the quantum adjacency axioms (classical graphs are promoted).
    Check { file: PathBuf },
    /// Emits the quantum-graph JSON of a classical graph.
    FromClassical { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum BuildKind {
    /// Homomorphisms X -> Y.
    Hom { x: PathBuf, y: PathBuf },
    /// Isomorphisms X -> Y.
    Iso {
        x: PathBuf,
        y: PathBuf,
        /// Use the full game on V(X) ⊔ V(Y) instead of the reduced form.
        #[arg(long)]
        full: bool,
    },
    /// The synchronous BCS game of a linear system.
    Syncbcs { system: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum GameCmd {
    /// Emits the game JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        /// Write to this file instead of stdout.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Searches for a winning deterministic strategy.
    Solve { file: PathBuf },
    /// Checks that a strategy never loses.
    VerifyStrategy { game: PathBuf, strategy: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Emits the presentation text of a game algebra.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Certifies the algebra trivial or nontrivial, if possible.
    Triviality {
        pres: PathBuf,
        /// Also write the completed rewrite system as JSON.
        #[arg(long)]
        system_out: Option<PathBuf>,
    },
    /// Checks a generator map SRC -> DST against every SRC relation.
    VerifyHom {
        src: PathBuf,
        dst: PathBuf,
        map: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCmd {
    /// Verifies a quantum isomorphism witness indexed by V(X) x V(Y).
    Verify { witness: PathBuf, x: PathBuf, y: PathBuf },
    /// Emits the built-in magic-square witness.
    MagicSquare,
}

#[derive(Debug, Subcommand)]
pub enum CertCmd {
    /// Simple-spectrum certificate for a trivial quantum automorphism group.
    Qaut { file: PathBuf },
    /// Degree-class obstruction to quantum isomorphism.
    Degree { x: PathBuf, y: PathBuf },
    /// Isospectrality obstruction to quantum isomorphism.
    Isospectral { x: PathBuf, y: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ReproCmd {
    /// Rigidity of the Frucht graph.
    Frucht,
    /// The isospectral, non-isomorphic pair from the Frucht graph.
    Niso {
        /// Six distinct Frucht vertices, comma separated.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// The magic-square quantum isomorphism.
    MagicSquare,
    /// The generator maps between the BCS, isomorphism and homomorphism
    /// algebras of a linear system.
    EquivalenceMaps { system: PathBuf },
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    let v = serde_json::json!({"error": {"kind": kind, "message": message}});
    eprintln!("{v}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail("usage", e.render().to_string().trim().to_string(), 2);
        }
    };
    let env_path = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    let cfg = match Config::resolve(env_path.as_deref(), &cli.global.overrides()) {
        Ok(c) => c,
        Err(e) => return fail("config", format!("{e:#}"), 2),
    };
    let run = || commands::run(&cli.command, &cfg);
    let result = match cfg.threads {
        Some(t) => syncgame::par::with_threads(t, run),
        None => run(),
    };
    match result {
        Ok(payload) => {
            let text = match payload {
                commands::Payload::Json(v) => output::render(&v, cfg.format) + "\n",
                commands::Payload::Raw(text) => text,
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => fail(output::error_kind(&e), format!("{e:#}"), 1),
    }
}
