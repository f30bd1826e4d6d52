//! Command-line front end of the benchmark harness.
//!
//! Exit codes: 0 on success, 1 on usage or parameter errors, 2 when any
//! benchmark cell failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};

use crate::bench::{paper_grid, run_suite, to_csv, to_table, BenchConfig, GraphSource, Method};
use crate::graph::{parse_edge_list, LatticeParams};
use crate::ordering::{Strategy, TieMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Lp,
    Multilevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Random,
    Natural,
    Deg,
    Pag,
    Clo,
    Bet,
    My,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TieArg {
    Stable,
    Randomtie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

/// Mean modularity of centrality-ordered label propagation and multilevel
/// clustering on ring lattices (Watts-Strogatz with p = 0, dim = 1).
#[derive(Debug, Parser)]
#[command(name = "ordbench")]
struct Args {
    /// Clustering method (required unless --paper-tables is given).
    #[arg(long, value_enum)]
    method: Option<MethodArg>,

    /// Node visit order.
    #[arg(long, value_enum, default_value = "all")]
    order: OrderArg,

    /// Number of lattice nodes.
    #[arg(long)]
    n: Option<usize>,

    /// Lattice neighborhood radius.
    #[arg(long)]
    nei: Option<usize>,

    /// Seeded repetitions per cell.
    #[arg(long, default_value_t = 1000)]
    reps: usize,

    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Tie-breaking between equal centrality scores.
    #[arg(long, value_enum, default_value = "stable")]
    tie: TieArg,

    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,

    /// Run both reference grids (label propagation and multilevel).
    #[arg(long)]
    paper_tables: bool,

    /// Edge-list file to benchmark instead of a generated lattice.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

fn strategies(order: OrderArg) -> Vec<Strategy> {
    match order {
        OrderArg::Random => vec![Strategy::Random],
        OrderArg::Natural => vec![Strategy::Natural],
        OrderArg::Deg => vec![Strategy::Degree],
        OrderArg::Pag => vec![Strategy::PageRank],
        OrderArg::Clo => vec![Strategy::Closeness],
        OrderArg::Bet => vec![Strategy::Betweenness],
        OrderArg::My => vec![Strategy::Combined],
        OrderArg::All => Strategy::ALL.to_vec(),
    }
}

fn build_grid(args: &Args) -> Result<Vec<BenchConfig>, String> {
    if args.reps == 0 {
        return Err("--reps must be at least 1".into());
    }
    let tie_mode = match args.tie {
        TieArg::Stable => TieMode::Stable,
        TieArg::Randomtie => TieMode::Random,
    };
    if args.paper_tables {
        return Ok(paper_grid(args.reps, args.seed, tie_mode));
    }
    let method = match args.method {
        Some(MethodArg::Lp) => Method::LabelPropagation,
        Some(MethodArg::Multilevel) => Method::Multilevel,
        None => return Err("--method is required unless --paper-tables is given".into()),
    };
    let source = match (&args.graph, args.n, args.nei) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let graph = parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            GraphSource::Provided {
                name: path.display().to_string(),
                graph: Arc::new(graph),
            }
        }
        (None, Some(n), Some(nei)) => {
            GraphSource::Lattice(LatticeParams::new(n, nei).map_err(|e| e.to_string())?)
        }
        (None, _, _) => return Err("either --graph or both --n and --nei are required".into()),
    };
    Ok(vec![BenchConfig {
        method,
        strategies: strategies(args.order),
        source,
        reps: args.reps,
        master_seed: args.seed,
        tie_mode,
    }])
}

/// Parses `argv`, runs the requested cells and writes the report to `out`.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let grid = match build_grid(&args) {
        Ok(grid) => grid,
        Err(message) => {
            let _ = writeln!(err, "error: {message}\n\nFor more information, try '--help'.");
            return 1;
        }
    };

    let suite = match args.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| run_suite(&grid)),
            Err(e) => {
                let _ = writeln!(err, "error: cannot start {jobs} workers: {e}");
                return 1;
            }
        },
        None => run_suite(&grid),
    };

    let report = match args.format {
        FormatArg::Table => to_table(&suite),
        FormatArg::Csv => to_csv(&suite),
    };
    if out.write_all(report.as_bytes()).is_err() {
        return 1;
    }
    for row in &suite.rows {
        for (strategy, cell) in row.config.strategies.iter().zip(&row.cells) {
            if let Err(e) = cell {
                let _ = writeln!(
                    err,
                    "cell {} {} {} failed: {e}",
                    row.config.method,
                    row.config.source.label(),
                    strategy
                );
            }
        }
    }
    if suite.failures() > 0 {
        2
    } else {
        0
    }
}
