//! Command-line surface: argument types, dispatch and report assembly.

mod render;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closure::{
    analyze, dense_closure_oracle, detect_permutation_symmetries, exact_closure, lie_closure,
    AnalysisOptions, ClosureOptions, ClosureReport, ExactStrategy, Mode, SymmetrySearch,
    DEFAULT_BIT_BUDGET, DEFAULT_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::forcing::{
    forcing_run, forcing_to_universality, minimal_forcing_search, sampled_forcing_coefficients,
    ForcingMode, ForcingOptions, ForcingState, ForcingUniversality, MinimalForcing,
};
use crate::hamlib::{parse_graph, parse_spec, Family, GraphSpec, ProblemSpec, Vertex, DEFAULT_SEED};
use crate::pauli::{parse_operator, Scalar, DEFAULT_DENSE_LIMIT};
use crate::verify::{
    run_all, verify_cnot_identity, verify_even_odd, verify_grid_recursion, verify_hyper_step,
    verify_lemma_decouple, verify_sep_generators, verify_separation_x, VerifyParams, VerifyReport,
};

pub use render::Render;

#[derive(Debug, Parser)]
#[command(name = "qaoalie", version)]
#[command(about = "Lie-algebraic universality analysis for QAOA Hamiltonian families")]
pub struct Cli {
    /// Coefficient sampling seed; overrides the seed stored in a spec file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Relative rank tolerance (float mode only).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Number of consecutive seeds the closure is recomputed with.
    #[arg(long, global = true, default_value_t = 1)]
    pub stability: usize,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Largest qubit count for dense-matrix paths.
    #[arg(long, global = true, default_value_t = DEFAULT_DENSE_LIMIT)]
    pub max_dense: usize,

    /// Largest numerator/denominator bit length tolerated in exact mode.
    #[arg(long, global = true, default_value_t = DEFAULT_BIT_BUDGET)]
    pub bit_budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcessArg {
    Zero,
    Generalized,
    Hyper,
}

impl From<ProcessArg> for ForcingMode {
    fn from(p: ProcessArg) -> Self {
        match p {
            ProcessArg::Zero => ForcingMode::Zero,
            ProcessArg::Generalized => ForcingMode::Generalized,
            ProcessArg::Hyper => ForcingMode::Hyper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    All,
    Lemma1,
    EvenOdd,
    Separation,
    Lemma4,
    Cnot,
    Grid,
    Hyper,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closure dimension and universality verdict for a problem file
    Closure {
        #[arg(long)]
        spec: PathBuf,
        /// Cross-check the dimension with the dense oracle.
        #[arg(long)]
        oracle: bool,
        /// Keep bracketing after the full algebra is reached.
        #[arg(long)]
        no_early_exit: bool,
    },
    /// Test whether an operator lies in the generated algebra
    Member {
        #[arg(long)]
        spec: PathBuf,
        /// Operator text, e.g. `Z1*Z2` or `1/2*Y2*Z3 - Z2*Y3`.
        #[arg(long)]
        target: String,
    },
    /// Run a forcing process from an initial set
    Force {
        /// Graph document or problem file with a graph.
        #[arg(long)]
        graph: PathBuf,
        /// Initial vertices, comma separated; defaults to the file's infected set.
        #[arg(long, value_delimiter = ',')]
        set: Vec<Vertex>,
        /// Initial 2-edge `u-v` (hyper process); repeatable.
        #[arg(long = "edge", value_parser = parse_pair)]
        edges: Vec<(Vertex, Vertex)>,
        #[arg(long, value_enum, default_value_t = ProcessArg::Zero)]
        process: ProcessArg,
        /// Also compute the closure and check the predicted memberships.
        #[arg(long)]
        closure: bool,
    },
    /// Minimum forcing sets by exhaustive search
    ForceSearch {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ProcessArg::Zero)]
        process: ProcessArg,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Qubit permutations fixing both Hamiltonians
    Symmetry {
        #[arg(long)]
        spec: PathBuf,
        /// Node budget for the involution search above the exhaustive limit.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Replay the constructive derivations as exact identities
    Verify {
        #[arg(long, value_enum, default_value_t = CaseArg::All)]
        case: CaseArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        side: Option<usize>,
    },
    /// Closure, symmetry and forcing results for one problem file
    Report {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(Vertex, Vertex), String> {
    let (a, b) = s
        .split_once('-')
        .ok_or_else(|| format!("expected `u-v`, got `{s}`"))?;
    let u = a.trim().parse().map_err(|_| format!("bad vertex `{a}`"))?;
    let v = b.trim().parse().map_err(|_| format!("bad vertex `{b}`"))?;
    Ok((u, v))
}

/// Result of one subcommand.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Output {
    Closure(ClosureOutput),
    Member(MemberReport),
    Force(ForceReport),
    ForceSearch(MinimalForcing),
    Symmetry(SymmetryReport),
    Verify(VerifyReport),
    Report(AggregateReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureOutput {
    #[serde(flatten)]
    pub report: ClosureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_dimension: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberTerm {
    pub row: usize,
    pub pivot: String,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberReport {
    pub target: String,
    pub n: usize,
    pub member: bool,
    pub dimension: usize,
    pub mode: String,
    pub seed: u64,
    /// Expansion over the echelon basis when `member`.
    pub coefficients: Vec<MemberTerm>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ForceReport {
    pub mode: ForcingMode,
    pub initial_vertices: Vec<Vertex>,
    pub initial_2edges: Vec<(Vertex, Vertex)>,
    pub forcing: bool,
    pub state: ForcingState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universality: Option<ForcingUniversality>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub n: usize,
    pub family: Family,
    #[serde(flatten)]
    pub search: SymmetrySearch,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateReport {
    pub closure: ClosureReport,
    pub symmetry: SymmetrySearch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forcing: Option<ForcingUniversality>,
}

impl Output {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        match self {
            Output::Closure(o) => o.text(),
            Output::Member(o) => o.text(),
            Output::Force(o) => o.text(),
            Output::ForceSearch(o) => o.text(),
            Output::Symmetry(o) => o.text(),
            Output::Verify(o) => o.text(),
            Output::Report(o) => o.text(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path, seed: Option<u64>) -> Result<ProblemSpec> {
    let spec = parse_spec(&read(path)?)?;
    match seed {
        Some(s) => spec.with_seed(s),
        None => Ok(spec),
    }
}

/// A bare graph document, or the graph (and coefficients) of a problem file.
fn load_graph(path: &Path, seed: Option<u64>) -> Result<(GraphSpec, Option<ProblemSpec>)> {
    let text = read(path)?;
    let is_spec = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("family").is_some())
        .unwrap_or(false);
    if is_spec {
        let spec = parse_spec(&text)?;
        let spec = match seed {
            Some(s) => spec.with_seed(s)?,
            None => spec,
        };
        let g = spec
            .graph
            .clone()
            .ok_or_else(|| Error::schema("graph", "problem file has no graph"))?;
        Ok((g, Some(spec)))
    } else {
        Ok((parse_graph(&text)?, None))
    }
}

impl Cli {
    fn analysis_mode(&self) -> Result<Mode> {
        match (self.mode, self.tolerance) {
            (ModeArg::Exact, Some(_)) => Err(Error::InvalidArgument(
                "--tolerance only applies with --mode float".into(),
            )),
            (ModeArg::Exact, None) => Ok(Mode::Exact),
            (ModeArg::Float, t) => {
                let tolerance = t.unwrap_or(DEFAULT_TOLERANCE);
                if !(tolerance.is_finite() && tolerance > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "--tolerance must be positive and finite, got {tolerance}"
                    )));
                }
                Ok(Mode::Float { tolerance })
            }
        }
    }

    fn closure_options(&self, early_exit: bool) -> Result<ClosureOptions> {
        let mode = self.analysis_mode()?;
        Ok(ClosureOptions {
            tolerance: match mode {
                Mode::Float { tolerance } => tolerance,
                Mode::Exact => DEFAULT_TOLERANCE,
            },
            bit_budget: self.bit_budget,
            threads: self.threads,
            early_exit,
        })
    }

    fn analysis(&self, early_exit: bool) -> Result<AnalysisOptions> {
        if self.stability == 0 {
            return Err(Error::InvalidArgument("--stability must be at least 1".into()));
        }
        Ok(AnalysisOptions {
            mode: self.analysis_mode()?,
            closure: self.closure_options(early_exit)?,
            strategy: ExactStrategy::Auto,
            stability: self.stability,
            symmetry_budget: None,
        })
    }

    fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// Run the parsed command on a dedicated pool when `--threads` is given.
pub fn execute(cli: &Cli) -> Result<Output> {
    match cli.threads {
        Some(0) => Err(Error::InvalidArgument("--threads must be at least 1".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Closure {
            spec,
            oracle,
            no_early_exit,
        } => cmd_closure(cli, spec, *oracle, !*no_early_exit).map(Output::Closure),
        Command::Member { spec, target } => cmd_member(cli, spec, target).map(Output::Member),
        Command::Force {
            graph,
            set,
            edges,
            process,
            closure,
        } => cmd_force(cli, graph, set, edges, (*process).into(), *closure).map(Output::Force),
        Command::ForceSearch {
            graph,
            process,
            max_size,
        } => {
            let (g, _) = load_graph(graph, cli.seed)?;
            let max = max_size.unwrap_or(g.vertices.len());
            minimal_forcing_search(&g, (*process).into(), max).map(Output::ForceSearch)
        }
        Command::Symmetry { spec, budget } => {
            let spec = load_spec(spec, cli.seed)?;
            let (hz, hx) = spec.hamiltonians()?;
            Ok(Output::Symmetry(SymmetryReport {
                n: spec.n,
                family: spec.family,
                search: detect_permutation_symmetries(&hz, &hx, *budget)?,
            }))
        }
        Command::Verify { case, n, k, side } => cmd_verify(cli, *case, *n, *k, *side).map(Output::Verify),
        Command::Report { spec } => cmd_report(cli, spec).map(Output::Report),
    }
}

fn cmd_closure(cli: &Cli, path: &Path, oracle: bool, early_exit: bool) -> Result<ClosureOutput> {
    let spec = load_spec(path, cli.seed)?;
    let report = analyze(&spec, &cli.analysis(early_exit)?)?;
    let oracle_dimension = if oracle {
        if spec.n > cli.max_dense {
            return Err(Error::DenseLimit {
                n: spec.n,
                limit: cli.max_dense,
            });
        }
        let (hz, hx) = spec.hamiltonians()?;
        Some(dense_closure_oracle(&[hz, hx])?)
    } else {
        None
    };
    Ok(ClosureOutput {
        report,
        oracle_dimension,
    })
}

fn cmd_member(cli: &Cli, path: &Path, target: &str) -> Result<MemberReport> {
    let spec = load_spec(path, cli.seed)?;
    let t = parse_operator(target, spec.n)?;
    let (hz, hx) = spec.hamiltonians()?;
    let opts = cli.closure_options(false)?;
    let mode = cli.analysis_mode()?;
    let (member, dimension, coefficients) = match mode {
        Mode::Exact => {
            let c = exact_closure(&[hz, hx], &opts, ExactStrategy::Auto)?;
            let m = c.basis.membership(&t)?;
            let member = m.is_some();
            let terms = m
                .unwrap_or_default()
                .into_iter()
                .map(|(row, k)| MemberTerm {
                    row,
                    pivot: c.basis.pivots()[row].to_string(),
                    coeff: k.to_string(),
                })
                .collect::<Vec<_>>();
            (member, c.dimension(), terms)
        }
        Mode::Float { .. } => {
            let (b, _) = lie_closure(&[hz.to_float(), hx.to_float()], &opts)?;
            let m = b.membership(&t.to_float())?;
            let member = m.is_some();
            let terms = m
                .unwrap_or_default()
                .into_iter()
                .map(|(row, k)| MemberTerm {
                    row,
                    pivot: b.pivots()[row].to_string(),
                    coeff: format!("{:.12e}", k.to_f64()),
                })
                .collect();
            (member, b.dimension(), terms)
        }
    };
    Ok(MemberReport {
        target: t.to_string(),
        n: spec.n,
        member,
        dimension,
        mode: mode.name().into(),
        seed: spec.seed,
        coefficients,
    })
}

fn cmd_force(
    cli: &Cli,
    path: &Path,
    set: &[Vertex],
    edges: &[(Vertex, Vertex)],
    mode: ForcingMode,
    closure: bool,
) -> Result<ForceReport> {
    let (g, spec) = load_graph(path, cli.seed)?;
    let s1: BTreeSet<Vertex> = if set.is_empty() {
        g.infected_vertices.iter().copied().collect()
    } else {
        set.iter().copied().collect()
    };
    let s2: BTreeSet<(Vertex, Vertex)> = if edges.is_empty() {
        g.infected_2edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
    } else {
        edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
    };
    for v in s1.iter().chain(s2.iter().flat_map(|(u, v)| [u, v])) {
        if !g.vertices.contains(v) {
            return Err(Error::InvalidArgument(format!("vertex {v} is not in the graph")));
        }
    }
    let state = forcing_run(&g, &s1, &s2, mode, ForcingOptions::default())?;
    let universality = if closure {
        let coeffs = match &spec {
            Some(s) => s.coefficients.clone(),
            None => sampled_forcing_coefficients(&g, &s1, mode, cli.seed_or_default())?,
        };
        Some(forcing_to_universality(&g, &s1, &s2, mode, &coeffs, &cli.closure_options(true)?)?)
    } else {
        None
    };
    Ok(ForceReport {
        mode,
        initial_vertices: s1.into_iter().collect(),
        initial_2edges: s2.into_iter().collect(),
        forcing: state.covers(&g),
        state,
        universality,
    })
}

fn cmd_verify(cli: &Cli, case: CaseArg, n: Option<usize>, k: Option<usize>, side: Option<usize>) -> Result<VerifyReport> {
    let seed = cli.seed_or_default();
    let chain = |n: usize| -> Result<_> { Ok(ProblemSpec::chain(n, seed)?.coefficients) };
    let cases = match case {
        CaseArg::All => return run_all(seed, &VerifyParams::default()),
        CaseArg::Lemma1 => {
            let n = n.unwrap_or(3);
            vec![verify_lemma_decouple(n, &chain(n)?)?]
        }
        CaseArg::EvenOdd => {
            let n = n.unwrap_or(5);
            vec![verify_even_odd(n, &chain(n)?)?]
        }
        CaseArg::Separation => {
            let n = n.unwrap_or(5);
            vec![verify_sep_generators(n, &chain(n)?)?]
        }
        CaseArg::Lemma4 => {
            let n = n.unwrap_or(5);
            let c = chain(n)?;
            match k {
                Some(k) => vec![verify_separation_x(n, k, &c)?],
                None => (1..=n).map(|k| verify_separation_x(n, k, &c)).collect::<Result<_>>()?,
            }
        }
        CaseArg::Cnot => vec![verify_cnot_identity()],
        CaseArg::Grid => {
            let side = side.unwrap_or(2);
            let c = ProblemSpec::sampled(Family::Grid, side * side + 2, Some(side), None, seed)?.coefficients;
            vec![verify_grid_recursion(side, &c)?]
        }
        CaseArg::Hyper => {
            let n = n.unwrap_or(3);
            let c = ProblemSpec::sampled(Family::Hyperchain, n, None, None, seed)?.coefficients;
            vec![verify_hyper_step(n, &c)?]
        }
    };
    Ok(VerifyReport::from_cases(seed, cases))
}

fn cmd_report(cli: &Cli, path: &Path) -> Result<AggregateReport> {
    let spec = load_spec(path, cli.seed)?;
    let closure = analyze(&spec, &cli.analysis(true)?)?;
    let (hz, hx) = spec.hamiltonians()?;
    let symmetry = detect_permutation_symmetries(&hz, &hx, None)?;
    let forcing = match (&spec.graph, spec.family) {
        (Some(g), Family::Graph | Family::MultitypeGraph) if !g.infected_vertices.is_empty() => {
            let mode = if !g.hyperedges.is_empty() {
                ForcingMode::Hyper
            } else if spec.family == Family::MultitypeGraph {
                ForcingMode::Generalized
            } else {
                ForcingMode::Zero
            };
            let s1 = g.infected_vertices.iter().copied().collect();
            let s2 = g.infected_2edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            Some(forcing_to_universality(g, &s1, &s2, mode, &spec.coefficients, &cli.closure_options(true)?)?)
        }
        _ => None,
    };
    Ok(AggregateReport {
        closure,
        symmetry,
        forcing,
    })
}

/// Parse arguments, run, write the report; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|out| {
        let body = match cli.output {
            OutputFormat::Json => out.to_json(),
            OutputFormat::Text => out.to_text(),
        };
        match &cli.out {
            Some(p) => fs::write(p, format!("{body}\n")).map_err(Error::from),
            None => match writeln!(std::io::stdout().lock(), "{body}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(Error::from),
            },
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
