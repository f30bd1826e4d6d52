//! Benchmark harness: mean modularity of ordered label propagation and
//! multilevel clustering over seeded repetitions on ring lattices.
//!
//! With rewiring probability 0 the lattice is deterministic, so every
//! repetition runs on the same graph and only the algorithmic randomness
//! (random orders, random tie-breaks) differs between repetitions.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::centrality::{
    betweenness_scores, closeness_scores, degree_scores, pagerank_scores, CentralityScores,
    PageRankParams,
};
use crate::error::{Error, Result};
use crate::graph::{ring_lattice, Graph, LatticeParams};
use crate::label_propagation::{label_propagation, DEFAULT_MAX_SWEEPS};
use crate::multilevel::multilevel;
use crate::ordering::{
    ascending_order, ascending_order_combined, natural_order, random_order, NodeOrder, RngSeed,
    Strategy, TieMode,
};
use crate::quality::modularity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    LabelPropagation,
    Multilevel,
}

impl Method {
    pub fn token(self) -> &'static str {
        match self {
            Method::LabelPropagation => "lp",
            Method::Multilevel => "multilevel",
        }
    }

    fn id(self) -> u64 {
        match self {
            Method::LabelPropagation => 1,
            Method::Multilevel => 2,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lp" => Ok(Method::LabelPropagation),
            "multilevel" => Ok(Method::Multilevel),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub enum GraphSource {
    Lattice(LatticeParams),
    /// A graph loaded from an edge-list file; `name` labels it in reports.
    Provided { name: String, graph: Arc<Graph> },
}

impl GraphSource {
    pub fn node_count(&self) -> usize {
        match self {
            GraphSource::Lattice(p) => p.n,
            GraphSource::Provided { graph, .. } => graph.node_count(),
        }
    }

    pub fn nei(&self) -> Option<usize> {
        match self {
            GraphSource::Lattice(p) => Some(p.nei),
            GraphSource::Provided { .. } => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GraphSource::Lattice(p) => format!("n={}, nei={}", p.n, p.nei),
            GraphSource::Provided { name, .. } => name.clone(),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSource::Lattice(p) => ring_lattice(*p),
            GraphSource::Provided { graph, .. } => Ok(Graph::clone(graph)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub method: Method,
    pub strategies: Vec<Strategy>,
    pub source: GraphSource,
    pub reps: usize,
    pub master_seed: u64,
    pub tie_mode: TieMode,
}

impl BenchConfig {
    pub fn lattice(
        method: Method,
        strategies: Vec<Strategy>,
        n: usize,
        nei: usize,
        reps: usize,
        master_seed: u64,
        tie_mode: TieMode,
    ) -> Result<Self> {
        let config = Self {
            method,
            strategies,
            source: GraphSource::Lattice(LatticeParams::new(n, nei)?),
            reps,
            master_seed,
            tie_mode,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidInput("reps must be at least 1".into()));
        }
        if let GraphSource::Lattice(p) = self.source {
            LatticeParams::new(p.n, p.nei)?;
        }
        Ok(())
    }
}

/// The lattice sizes of the reference tables.
pub const PAPER_LATTICES: [(usize, usize); 6] = [(50, 4), (50, 5), (50, 6), (100, 7), (100, 8), (100, 9)];

/// Both reference grids: label propagation against a random baseline and
/// multilevel against the natural baseline, each with the five centrality
/// orders.
pub fn paper_grid(reps: usize, master_seed: u64, tie_mode: TieMode) -> Vec<BenchConfig> {
    let with_baseline = |baseline: Strategy| {
        std::iter::once(baseline)
            .chain(Strategy::CENTRALITY)
            .collect::<Vec<_>>()
    };
    [
        (Method::LabelPropagation, Strategy::Random),
        (Method::Multilevel, Strategy::Natural),
    ]
    .into_iter()
    .flat_map(|(method, baseline)| {
        let strategies = with_baseline(baseline);
        PAPER_LATTICES.into_iter().map(move |(n, nei)| BenchConfig {
            method,
            strategies: strategies.clone(),
            source: GraphSource::Lattice(LatticeParams { n, nei }),
            reps,
            master_seed,
            tie_mode,
        })
    })
    .collect()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `parts` into `seed` with the SplitMix64 finalizer, one round per part.
pub fn mix_seed(seed: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(seed), |h, &p| splitmix64(h ^ splitmix64(p)))
}

fn strategy_id(s: Strategy) -> u64 {
    Strategy::ALL.iter().position(|&t| t == s).unwrap() as u64 + 1
}

/// Seed of repetition `rep` of one cell.
pub fn rep_seed(config: &BenchConfig, strategy: Strategy, rep: usize) -> u64 {
    mix_seed(
        config.master_seed,
        &[
            config.method.id(),
            strategy_id(strategy),
            config.source.node_count() as u64,
            config.source.nei().map_or(u64::MAX, |v| v as u64),
            rep as u64,
        ],
    )
}

/// Seeds of the two independent streams of one repetition: node order, then
/// the clustering algorithm's own tie-breaking.
pub fn rep_stream_seeds(rep_seed: u64) -> (RngSeed, RngSeed) {
    (RngSeed(mix_seed(rep_seed, &[1])), RngSeed(mix_seed(rep_seed, &[2])))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

/// Two-pass mean and sample standard deviation (zero for a single value).
/// All fields are NaN for an empty sample.
pub fn summarize(values: &[f64]) -> Summary {
    if values.is_empty() {
        return Summary {
            mean: f64::NAN,
            std: f64::NAN,
            min: f64::NAN,
            max: f64::NAN,
        };
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() > 1 {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Summary {
        mean: mean.clamp(min, max),
        std,
        min,
        max,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub method: Method,
    pub strategy: Strategy,
    pub tie_mode: TieMode,
    pub source: String,
    pub n: usize,
    pub nei: Option<usize>,
    pub seed: u64,
    pub rep_count: usize,
    /// Label propagation runs that hit the sweep limit; excluded from `summary`.
    pub nonconverged: usize,
    pub summary: Summary,
    /// Modularity of every converged repetition, in repetition order.
    pub values: Vec<f64>,
}

/// Order-producing scores, computed once per cell.
pub enum Ranking {
    Random,
    Natural,
    Scores(CentralityScores),
    Lexicographic {
        bet: CentralityScores,
        clo: CentralityScores,
    },
}

impl Ranking {
    pub fn compute(g: &Graph, strategy: Strategy) -> Result<Self> {
        Ok(match strategy {
            Strategy::Random => Ranking::Random,
            Strategy::Natural => Ranking::Natural,
            Strategy::Degree => Ranking::Scores(degree_scores(g)),
            Strategy::PageRank => Ranking::Scores(pagerank_scores(g, PageRankParams::default())?),
            Strategy::Closeness => Ranking::Scores(closeness_scores(g)?),
            Strategy::Betweenness => Ranking::Scores(betweenness_scores(g)),
            Strategy::Combined => Ranking::Lexicographic {
                bet: betweenness_scores(g),
                clo: closeness_scores(g)?,
            },
        })
    }

    pub fn order(&self, n: usize, tie_mode: TieMode, seed: RngSeed) -> NodeOrder {
        let mut rng = seed.rng();
        match self {
            Ranking::Random => random_order(n, &mut rng),
            Ranking::Natural => natural_order(n),
            Ranking::Scores(s) => ascending_order(s, tie_mode, &mut rng),
            Ranking::Lexicographic { bet, clo } => {
                ascending_order_combined(bet, clo, tie_mode, &mut rng)
            }
        }
    }
}

/// One repetition's modularity, or `None` when label propagation did not settle.
fn run_rep(
    g: &Graph,
    ranking: &Ranking,
    config: &BenchConfig,
    strategy: Strategy,
    rep: usize,
) -> Result<Option<f64>> {
    let (order_seed, algo_seed) = rep_stream_seeds(rep_seed(config, strategy, rep));
    let order = ranking.order(g.node_count(), config.tie_mode, order_seed);
    let mut rng = algo_seed.rng();
    let partition = match config.method {
        Method::LabelPropagation => {
            match label_propagation(g, &order, &mut rng, DEFAULT_MAX_SWEEPS) {
                Ok(p) => p,
                Err(Error::LabelsNotStable { .. }) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        Method::Multilevel => multilevel(g, &order, &mut rng)?,
    };
    Ok(Some(modularity(g, &partition)?.value()))
}

/// Runs every repetition of one (config, strategy) cell.
pub fn run_cell(config: &BenchConfig, strategy: Strategy) -> Result<CellResult> {
    config.validate()?;
    let g = config.source.build()?;
    let ranking = Ranking::compute(&g, strategy)?;
    let outcomes = (0..config.reps)
        .into_par_iter()
        .map(|rep| run_rep(&g, &ranking, config, strategy, rep))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = outcomes.iter().flatten().copied().collect();
    Ok(CellResult {
        method: config.method,
        strategy,
        tie_mode: config.tie_mode,
        source: config.source.label(),
        n: g.node_count(),
        nei: config.source.nei(),
        seed: config.master_seed,
        rep_count: config.reps,
        nonconverged: outcomes.len() - values.len(),
        summary: summarize(&values),
        values,
    })
}

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub config: BenchConfig,
    pub cells: Vec<std::result::Result<CellResult, Error>>,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteResult {
    pub rows: Vec<SuiteRow>,
}

impl SuiteResult {
    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| &r.cells)
            .filter(|c| c.is_err())
            .count()
    }

    pub fn cells(&self) -> impl Iterator<Item = &CellResult> {
        self.rows.iter().flat_map(|r| r.cells.iter().flatten())
    }

    pub fn find(&self, method: Method, strategy: Strategy, n: usize, nei: usize) -> Option<&CellResult> {
        self.cells().find(|c| {
            c.method == method && c.strategy == strategy && c.n == n && c.nei == Some(nei)
        })
    }
}

/// Runs every cell of the grid. Cells run concurrently, but rows and columns
/// come out in grid order and a failing cell does not stop the others.
pub fn run_suite(grid: &[BenchConfig]) -> SuiteResult {
    let jobs: Vec<(usize, Strategy)> = grid
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.strategies.iter().map(move |&s| (i, s)))
        .collect();
    let mut results = jobs
        .par_iter()
        .map(|&(i, s)| run_cell(&grid[i], s))
        .collect::<Vec<_>>()
        .into_iter();
    let rows = grid
        .iter()
        .map(|config| SuiteRow {
            config: config.clone(),
            cells: results.by_ref().take(config.strategies.len()).collect(),
        })
        .collect();
    SuiteResult { rows }
}

pub const CSV_HEADER: &str = "method,order,tie,n,nei,reps,seed,mean_q,std_q,min_q,max_q,nonconverged";

/// One line per cell, full floating-point precision. Failed cells are
/// omitted here and reported on stderr by the CLI.
pub fn to_csv(result: &SuiteResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_HEADER}");
    for c in result.cells() {
        let s = c.summary;
        let nei = c.nei.map_or(String::new(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            c.method, c.strategy, c.tie_mode, c.n, nei, c.rep_count, c.seed, s.mean, s.std, s.min,
            s.max, c.nonconverged
        );
    }
    out
}

fn column_title(s: Strategy) -> String {
    format!("{} ord.", s.token())
}

/// Human-readable tables, one per run of rows sharing method, tie mode and
/// columns. Means are printed to four decimals.
pub fn to_table(result: &SuiteResult) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < result.rows.len() {
        let head = &result.rows[i].config;
        let same_block = |c: &BenchConfig| {
            c.method == head.method
                && c.tie_mode == head.tie_mode
                && c.strategies == head.strategies
                && c.reps == head.reps
        };
        let end = i + result.rows[i..]
            .iter()
            .take_while(|r| same_block(&r.config))
            .count();
        let block = &result.rows[i..end];

        let _ = writeln!(
            out,
            "# {}: mean modularity over {} seeded repetitions, ties={}, seed={}",
            head.method, head.reps, head.tie_mode, head.master_seed
        );
        let _ = writeln!(
            out,
            "# repetitions reuse one deterministic graph; only algorithmic randomness varies"
        );
        let label_width = block
            .iter()
            .map(|r| r.config.source.label().len())
            .chain(std::iter::once("Parameters".len()))
            .max()
            .unwrap_or(0);
        let titles: Vec<String> = head.strategies.iter().map(|&s| column_title(s)).collect();
        let widths: Vec<usize> = titles.iter().map(|t| t.len().max(8)).collect();

        let _ = write!(out, "{:<label_width$}", "Parameters");
        for (t, w) in titles.iter().zip(&widths) {
            let _ = write!(out, " | {t:>w$}");
        }
        let _ = writeln!(out);
        let rule = label_width + widths.iter().map(|w| w + 3).sum::<usize>();
        let _ = writeln!(out, "{}", "-".repeat(rule));

        let mut notes = Vec::new();
        for row in block {
            let _ = write!(out, "{:<label_width$}", row.config.source.label());
            for (cell, w) in row.cells.iter().zip(&widths) {
                let text = match cell {
                    Ok(c) => {
                        if c.nonconverged > 0 {
                            notes.push(format!(
                                "{} {}: {} of {} repetitions did not converge",
                                c.source, c.strategy, c.nonconverged, c.rep_count
                            ));
                        }
                        format!("{:.4}", c.summary.mean)
                    }
                    Err(_) => "error".to_string(),
                };
                let _ = write!(out, " | {text:>w$}");
            }
            let _ = writeln!(out);
        }
        for note in notes {
            let _ = writeln!(out, "# {note}");
        }
        let _ = writeln!(out);
        i = end;
    }
    out
}
