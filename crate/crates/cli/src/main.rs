use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sandpile_cli::commands;
use sandpile_cli::input::{load_ribbon, parse_divisor};
use sandpile_cli::report::{CliResult, Pairs, RunConfig};
use sandpile_cli::suites::{render, run_suite, Suite};
use sandpile_core::matroid::MatroidVariant;
use sandpile_core::torsor::Variant;
use sandpile_core::Divisor;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "sandpile",
    version,
    about = "Sandpile groups, rotor-routing torsors and the BBY action"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors and order of the sandpile group.
    Group { graph: PathBuf },
    /// All spanning trees.
    Trees { graph: PathBuf },
    /// Faces and genus of a ribbon graph.
    Genus {
        graph: PathBuf,
        /// Print Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Route the divisor chip - sink starting from a tree.
    Route {
        graph: PathBuf,
        #[arg(long)]
        chip: String,
        #[arg(long)]
        sink: String,
        /// Comma-separated edge ids or a JSON file.
        #[arg(long)]
        tree: String,
        #[arg(long, default_value = "r")]
        variant: Variant,
        #[arg(long)]
        trace: bool,
    },
    /// Act on a tree with the class of a degree-zero divisor.
    Act {
        graph: PathBuf,
        #[arg(long)]
        tree: String,
        /// `v:k,...` or a JSON file mapping vertex ids to chips.
        #[arg(long, conflicts_with_all = ["chip", "sink"])]
        divisor: Option<String>,
        #[arg(long, requires = "sink")]
        chip: Option<String>,
        #[arg(long, requires = "chip")]
        sink: Option<String>,
        #[arg(long, default_value = "r")]
        variant: Variant,
    },
    /// Move sequences between spanning trees.
    #[command(subcommand)]
    Moves(MovesCommand),
    /// Telescope graphs.
    #[command(subcommand)]
    Telescope(TelescopeCommand),
    /// The basis action on a regular matroid.
    #[command(subcommand)]
    Bby(BbyCommand),
    /// Run a verification suite and emit a report.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum MovesCommand {
    /// A shortest sequence of source-turn (or leaf-swap) moves.
    Path {
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        leaf_swap: bool,
    },
}

#[derive(Subcommand)]
enum TelescopeCommand {
    /// Build the telescope with the given fan sizes, one per ring vertex.
    Build {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Compare single-step trees with the telescope shape at (c, g).
    Check {
        graph: PathBuf,
        #[arg(long)]
        c: String,
        #[arg(long)]
        g: String,
    },
}

#[derive(Subcommand)]
enum BbyCommand {
    /// Act with the class of a sum of elements on a basis.
    Act {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        signatures: Option<PathBuf>,
        /// Element labels joined by `+` or `,`.
        #[arg(long)]
        class: String,
        #[arg(long)]
        basis: String,
        #[arg(long, default_value = "bby", value_parser = parse_matroid_variant)]
        variant: MatroidVariant,
    },
    /// Bases, signed circuits and cocircuits, and the group order.
    Info {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        signatures: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 5)]
    max_edges: usize,
    #[arg(long, default_value_t = 9)]
    max_elements: usize,
    /// Largest ring index for telescope sweeps.
    #[arg(long, default_value_t = 2)]
    telescope_n: usize,
    /// Largest fan size for telescope sweeps.
    #[arg(long, default_value_t = 2)]
    telescope_k: usize,
    /// A variant name or `all`.
    #[arg(long, default_value = "r")]
    variant: String,
    #[arg(long, value_enum, default_value = "adjacent")]
    pairs: Pairs,
    #[arg(long)]
    include_nonplanar: bool,
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, env = "SANDPILE_WORKERS", default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sample: Option<usize>,
}

fn parse_matroid_variant(s: &str) -> Result<MatroidVariant, String> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|_| format!("unknown variant {s:?}"))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Group { graph } => print(&commands::group(&graph)?),
        Command::Trees { graph } => print(&commands::trees(&graph)?),
        Command::Genus { graph, dot } => {
            if dot {
                emit(load_ribbon(&graph)?.to_dot().trim_end());
            } else {
                print(&commands::genus(&graph)?);
            }
        }
        Command::Route {
            graph,
            chip,
            sink,
            tree,
            variant,
            trace,
        } => print(&commands::route(&graph, &chip, &sink, &tree, variant, trace)?),
        Command::Act {
            graph,
            tree,
            divisor,
            chip,
            sink,
            variant,
        } => {
            let g = load_ribbon(&graph)?;
            let d = match (divisor, chip, sink) {
                (Some(d), _, _) => parse_divisor(g.graph(), &d)?,
                (None, Some(c), Some(s)) => {
                    let g = g.graph();
                    Divisor::chip(g.num_vertices(), g.vertex_index(&c)?, g.vertex_index(&s)?)
                }
                _ => {
                    return Err(sandpile_cli::CliError::Input(
                        "give --divisor or --chip and --sink".into(),
                    ))
                }
            };
            print(&commands::act(&graph, &tree, &d, variant)?);
        }
        Command::Moves(MovesCommand::Path {
            graph,
            from,
            to,
            leaf_swap,
        }) => print(&commands::moves_path(&graph, &from, &to, leaf_swap)?),
        Command::Telescope(TelescopeCommand::Build { k, dot }) => {
            let rg = commands::telescope_build(&k)?;
            if dot {
                emit(rg.to_dot().trim_end());
            } else {
                print(&serde_json::to_value(rg.to_json()).expect("serializable"));
            }
        }
        Command::Telescope(TelescopeCommand::Check { graph, c, g }) => {
            print(&commands::telescope_check(&graph, &c, &g)?)
        }
        Command::Bby(BbyCommand::Act {
            matroid,
            signatures,
            class,
            basis,
            variant,
        }) => print(&commands::bby_act(
            &matroid,
            signatures.as_deref(),
            &class,
            &basis,
            variant,
        )?),
        Command::Bby(BbyCommand::Info { matroid, signatures }) => {
            print(&commands::bby_info(&matroid, signatures.as_deref())?)
        }
        Command::Verify(args) => {
            let variants = if args.variant == "all" {
                Variant::ALL.to_vec()
            } else {
                vec![args.variant.parse()?]
            };
            let cfg = RunConfig {
                max_edges: args.max_edges,
                max_elements: args.max_elements,
                telescope_n: args.telescope_n,
                telescope_k: args.telescope_k,
                variants,
                pairs: args.pairs,
                include_nonplanar: args.include_nonplanar,
                trace: args.trace,
                report: args.report.clone(),
                workers: args.workers,
                seed: args.seed,
                sample: args.sample,
            };
            let report = run_suite(args.suite, &cfg)?;
            let text = render(&report);
            if let Some(path) = &args.report {
                std::fs::write(path, format!("{text}\n"))?;
            }
            emit(&text);
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("sandpile: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
