//! Command-line grammar and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use shiftlab_core::approx::{rauzy_graph, LanguageOracle};
use shiftlab_core::bfree::de_table;
use shiftlab_core::measures::{block_distribution, markov_entropy, parry_measure, BlockSource};
use shiftlab_core::sgap::{inner_approx_point, SGapSet};
use shiftlab_core::sofic::{irreducible_presentation, topological_entropy, LabeledGraph};
use shiftlab_core::{Alphabet, Error, PeriodicPoint};

use crate::error::CliError;
use crate::{certificate, io, verify};

#[derive(Debug, Parser)]
#[command(
    name = "shiftlab",
    version,
    about = "Density-metric experiments on shift spaces"
)]
struct Cli {
    /// seed for sampled suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Markov approximations
    #[command(subcommand)]
    Approx(ApproxCmd),
    /// Density distances
    #[command(subcommand)]
    Dist(DistCmd),
    /// B-free shifts
    #[command(subcommand)]
    Bfree(BfreeCmd),
    /// S-gap shifts
    #[command(subcommand)]
    Sgap(SgapCmd),
    /// Invariant measures
    #[command(subcommand)]
    Measures(MeasuresCmd),
    /// Run the pinned checks for a worked example
    Verify {
        /// one of ex-4-nondbar, ex-6-bfree-nondbar, lemma-glue, sgap-surgery, de-convergence, parry-entropy
        id: String,
    },
}

#[derive(Debug, Subcommand)]
enum ApproxCmd {
    /// Order-n Rauzy graph of a shift description
    Rauzy {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Debug, Subcommand)]
enum DistCmd {
    /// Exact distance from an eventually periodic point to a sofic shift
    PointSofic {
        #[arg(long)]
        point: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = shiftlab_core::metrics::DEFAULT_HORIZON)]
        horizon: usize,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Debug, Subcommand)]
enum BfreeCmd {
    /// Davenport–Erdős deficiency table
    DeTable {
        #[arg(long)]
        gens: String,
        /// `a..b` or a list
        #[arg(long)]
        k: String,
        #[arg(long = "N")]
        n: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum SgapCmd {
    /// Surgery of a gap sequence into the truncated S-gap shift
    InnerApprox {
        #[arg(long = "S")]
        s: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gaps: String,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Debug, Subcommand)]
enum MeasuresCmd {
    /// Parry measure of a right-resolving graph
    Parry {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        emit: Emit,
    },
    /// k-block distribution of a periodic point or of the Parry measure of a graph
    Blocks {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        point: Option<String>,
        #[arg(long, default_value = "01")]
        alphabet: String,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Debug, Args)]
struct Emit {
    /// write JSON here instead of standard output
    #[arg(long)]
    emit: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                | ErrorKind::MissingSubcommand => 64,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit_text(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => io::write(p, &format!("{text}\n")),
        None => writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Right-resolving irreducible presentation carrying the measure of maximal
/// entropy.
fn parry_presentation(g: &LabeledGraph) -> Result<LabeledGraph, CliError> {
    Ok(irreducible_presentation(g)?.ok_or(Error::Reducible)?)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Approx(ApproxCmd::Rauzy { spec, order, emit }) => {
            let spec = io::read_spec(&spec)?;
            let mut oracle = LanguageOracle::new(spec)?;
            let g = rauzy_graph(&mut oracle, order)?;
            emit_text(emit.emit.as_deref(), &io::graph_to_json(&g), out)
        }
        Command::Dist(DistCmd::PointSofic {
            point,
            graph,
            horizon,
            emit,
        }) => {
            let g = io::read_graph(&graph)?;
            let p = PeriodicPoint::parse(g.alphabet(), &point)?;
            let cert = certificate::point_sofic(&p, &g, horizon)?;
            emit_text(emit.emit.as_deref(), &cert.to_json(), out)?;
            if !cert.consistent() {
                return Err(CliError::Verify("certificate cross-checks disagree".into()));
            }
            Ok(())
        }
        Command::Bfree(BfreeCmd::DeTable { gens, k, n, csv }) => {
            let stream = io::parse_stream(&gens)?;
            let ks = io::parse_range(&k)?;
            let rows = de_table(&stream, &ks, io::parse_u64(&n)?)?;
            let mut text = String::from("k,deficiency,tail_bound\n");
            for r in &rows {
                text.push_str(&format!("{},{},{}\n", r.k, r.deficiency, r.tail_bound));
            }
            match csv {
                Some(p) => io::write(&p, &text),
                None => write!(out, "{text}").map_err(|e| CliError::Io(e.to_string())),
            }
        }
        Command::Sgap(SgapCmd::InnerApprox { s, k, gaps, emit }) => {
            let s = SGapSet::new(io::parse_list(&s)?)?;
            let ts = io::parse_list(&gaps)?;
            let r = inner_approx_point(&ts, &s, k)?;
            let a = Alphabet::binary();
            let doc = json!({
                "point": r.point.render(&a),
                "frobenius_l": r.frobenius_l,
                "s_max": r.s_max,
                "density": r.density.to_string(),
                "sup_realized": r.sup_realized.to_string(),
                "sup_bound": r.sup_bound.to_string(),
                "gaps": r.gaps.iter().map(|g| json!({
                    "gap": g.gap,
                    "replaced": g.replaced,
                    "block": a.render(&g.block),
                    "realized": g.realized.to_string(),
                    "bound": g.bound.to_string(),
                })).collect::<Vec<_>>(),
            });
            emit_text(emit.emit.as_deref(), &pretty(&doc), out)
        }
        Command::Measures(MeasuresCmd::Parry { graph, emit }) => {
            let g = parry_presentation(&io::read_graph(&graph)?)?;
            let m = parry_measure(&g)?;
            let doc = json!({
                "graph": serde_json::to_value(io::GraphFile::from_graph(&g)).expect("serializes"),
                "edge_probs": m.edge_probs(),
                "stationary": m.stationary(),
                "entropy": markov_entropy(&m),
                "topological_entropy": topological_entropy(&g)?,
            });
            emit_text(emit.emit.as_deref(), &pretty(&doc), out)
        }
        Command::Measures(MeasuresCmd::Blocks {
            point,
            alphabet,
            graph,
            k,
            emit,
        }) => {
            let (dist, a) = match (point, graph) {
                (Some(p), _) => {
                    let a = Alphabet::new(alphabet.chars())?;
                    let p = PeriodicPoint::parse(&a, &p)?;
                    (block_distribution(BlockSource::Point(&p), k)?, a)
                }
                (None, Some(path)) => {
                    let g = parry_presentation(&io::read_graph(&path)?)?;
                    let m = parry_measure(&g)?;
                    (
                        block_distribution(BlockSource::Markov(&m), k)?,
                        g.alphabet().clone(),
                    )
                }
                (None, None) => {
                    return Err(CliError::Validation(
                        "one of --point or --graph is required".into(),
                    ))
                }
            };
            let doc = json!({ "k": k, "blocks": io::blocks_to_json(&dist, &a) });
            emit_text(emit.emit.as_deref(), &pretty(&doc), out)
        }
        Command::Verify { id } => {
            let report = verify::run(&id, cli.seed)?;
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let detail = serde_json::to_string(&c.detail).expect("serializes");
                writeln!(out, "{status} {}: {detail}", c.claim)
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            let failed = report.checks.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                return Err(CliError::Verify(format!(
                    "{id}: {failed} of {} checks failed",
                    report.checks.len()
                )));
            }
            writeln!(out, "PASS {id} ({} checks)", report.checks.len())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
