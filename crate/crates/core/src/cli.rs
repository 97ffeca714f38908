//! The `branchwise` command line.
//!
//! Exit codes: 0 on success, 1 for invalid or infeasible input, 2 when a
//! solver invariant breaks or the oracle disagrees, 64 for usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cbv::solve_cbv;
use crate::corpus;
use crate::decomp::decompose;
use crate::error::Error;
use crate::graph::{Graph, WeightedGraph};
use crate::ilp::SearchBudget;
use crate::io::{
    parse_graph, to_json, Certificate, CoverJson, Format, ParseNodeJson, ParsedGraph, TreeJson,
};
use crate::mbv::{solve_mbv, solve_pp, solve_psc, SolverConfig};
use crate::reference::{
    verify_cover, verify_spanning_tree, verify_weighted_tree, CoverKind, Oracle, DEFAULT_ORACLE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "branchwise",
    version,
    about = "Spanning trees with few branch vertices"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spanning tree with the fewest branch vertices.
    Mbv(SolveArgs),
    /// Spanning tree with the cheapest branch vertices (costs default to 1).
    Cbv(SolveArgs),
    /// Smallest cover by one spider and paths.
    Psc(SolveArgs),
    /// Smallest partition into paths.
    Pp(SolveArgs),
    /// Modular decomposition tree as nested JSON.
    Decompose(InputArgs),
    /// Exhaustive-search values for a small graph.
    Oracle(OracleArgs),
    /// Check a certificate written by another command against its graph.
    Verify(VerifyArgs),
    /// Write a seeded random graph as an edge list.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file.
    pub input: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_format)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Compare the answer with exhaustive search when the graph is small.
    #[arg(long)]
    pub oracle_check: bool,
    /// Node budget per feasibility search (default: $BRANCHWISE_BUDGET or 10^7).
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Largest vertex count accepted; raising it can take very long.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// JSON certificate from `mbv`, `cbv`, `psc` or `pp`.
    pub certificate: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Random spanning tree plus random extra edges.
    Connected,
    /// Each pair independently.
    Random,
    /// Random series-parallel composition.
    Cograph,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "connected")]
    pub family: Family,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Extra-edge probability.
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add weight lines with costs drawn from 1..=max-weight.
    #[arg(long)]
    pub max_weight: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

/// Parses `args` (program name first) and runs the command. Returns the
/// exit code; results go to stdout or `--output`, diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

/// Outcome of a command: text to emit and the exit code to return.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

pub fn execute(cfg: &RunConfig) -> i32 {
    let (result, output) = match &cfg.command {
        Command::Mbv(a) => (cmd_mbv(a), &a.io.output),
        Command::Cbv(a) => (cmd_cbv(a), &a.io.output),
        Command::Psc(a) => (cmd_cover(a, CoverKind::PathSpider), &a.io.output),
        Command::Pp(a) => (cmd_cover(a, CoverKind::Paths), &a.io.output),
        Command::Decompose(a) => (cmd_decompose(a), &a.output),
        Command::Oracle(a) => (cmd_oracle(a), &a.io.output),
        Command::Verify(a) => (cmd_verify(a), &a.io.output),
        Command::Gen(a) => (cmd_gen(a), &a.output),
    };
    match result {
        Ok(out) => match emit(&out.text, output.as_deref()) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INVALID
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn emit(text: &str, output: Option<&Path>) -> std::io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(io: &InputArgs) -> Result<ParsedGraph, Error> {
    let text = fs::read_to_string(&io.input)
        .map_err(|e| Error::Io(format!("{}: {e}", io.input.display())))?;
    parse_graph(&text, io.format)
}

fn solver_config(a: &SolveArgs) -> SolverConfig {
    SolverConfig {
        budget: a
            .budget
            .map(SearchBudget)
            .unwrap_or_else(SearchBudget::from_env),
    }
}

/// `Some(agrees)` when the oracle accepts the graph size, `None` otherwise.
fn oracle_verdict<T: PartialEq>(
    enabled: bool,
    g: &Graph,
    ours: T,
    oracle: impl FnOnce(&Oracle) -> Result<T, Error>,
) -> Result<Option<bool>, Error> {
    if !enabled {
        return Ok(None);
    }
    let o = Oracle::default();
    if g.vertex_count() > o.cap() {
        eprintln!(
            "warning: {} vertices exceed the oracle cap of {}; skipping the check",
            g.vertex_count(),
            o.cap()
        );
        return Ok(None);
    }
    Ok(Some(oracle(&o)? == ours))
}

fn verdict_code(agrees: Option<bool>) -> i32 {
    if agrees == Some(false) {
        eprintln!("error: the oracle disagrees with the solver");
        EXIT_INTERNAL
    } else {
        EXIT_OK
    }
}

fn cmd_mbv(a: &SolveArgs) -> Result<Outcome, Error> {
    let g = read_input(&a.io)?.graph;
    let answer = solve_mbv(&g, &solver_config(a))?;
    let mut json = TreeJson::from_mbv(&answer);
    json.oracle_agrees = oracle_verdict(a.oracle_check, &g, answer.b, |o| Ok(o.b(&g)?.0))?;
    Ok(Outcome {
        code: verdict_code(json.oracle_agrees),
        text: to_json(&json),
    })
}

fn cmd_cbv(a: &SolveArgs) -> Result<Outcome, Error> {
    let wg = read_input(&a.io)?.weighted()?;
    let answer = solve_cbv(&wg, &solver_config(a))?;
    let mut json = TreeJson::from_cbv(&answer);
    json.oracle_agrees =
        oracle_verdict(a.oracle_check, wg.graph(), answer.cost, |o| Ok(o.w(&wg)?.0))?;
    Ok(Outcome {
        code: verdict_code(json.oracle_agrees),
        text: to_json(&json),
    })
}

fn cmd_cover(a: &SolveArgs, kind: CoverKind) -> Result<Outcome, Error> {
    let g = read_input(&a.io)?.graph;
    let config = solver_config(a);
    let json = match kind {
        CoverKind::PathSpider => {
            let (spi, cover) = solve_psc(&g, &config)?;
            let mut j = CoverJson::psc(spi, &cover);
            j.oracle_agrees = oracle_verdict(a.oracle_check, &g, spi, |o| o.spi(&g))?;
            j
        }
        CoverKind::Paths => {
            let (ham, cover) = solve_pp(&g, &config)?;
            let mut j = CoverJson::pp(ham, &cover);
            j.oracle_agrees = oracle_verdict(a.oracle_check, &g, ham, |o| o.ham(&g))?;
            j
        }
    };
    Ok(Outcome {
        code: verdict_code(json.oracle_agrees),
        text: to_json(&json),
    })
}

fn cmd_decompose(a: &InputArgs) -> Result<Outcome, Error> {
    let g = read_input(a)?.graph;
    let tree = decompose(&g)?;
    Ok(Outcome::ok(to_json(&ParseNodeJson::from(&tree))))
}

fn cmd_oracle(a: &OracleArgs) -> Result<Outcome, Error> {
    let parsed = read_input(&a.io)?;
    if a.cap > DEFAULT_ORACLE_CAP {
        eprintln!(
            "warning: oracle cap raised from {DEFAULT_ORACLE_CAP} to {}; this may take very long",
            a.cap
        );
    }
    let oracle = Oracle::with_cap(a.cap);
    let report = match parsed.costs {
        Some(_) => oracle.report_weighted(&parsed.weighted()?)?,
        None => oracle.report(&parsed.graph)?,
    };
    Ok(Outcome::ok(to_json(&report)))
}

#[derive(serde::Serialize)]
struct VerifyReport {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect: Option<String>,
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let parsed = read_input(&a.io)?;
    let text = fs::read_to_string(&a.certificate)
        .map_err(|e| Error::Io(format!("{}: {e}", a.certificate.display())))?;
    let cert: Certificate = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let defect = match &cert {
        Certificate::Tree(t) => {
            let tree = t.tree();
            let check = if t.cost.is_some() {
                verify_weighted_tree(&parsed.weighted()?, &tree)
            } else {
                verify_spanning_tree(&parsed.graph, &tree)
            };
            let mut defect = check.err().map(|d| d.to_string());
            if defect.is_none() {
                if let Some(b) = t.b.filter(|&b| b != tree.branch.len()) {
                    defect = Some(format!(
                        "b = {b} but the tree has {} branch vertices",
                        tree.branch.len()
                    ));
                }
            }
            defect
        }
        Certificate::Cover(c) => {
            let kind = if c.spi.is_some() {
                CoverKind::PathSpider
            } else {
                CoverKind::Paths
            };
            let pieces = c.pieces();
            let claimed = c.spi.or(c.ham).map(|v| v as usize);
            match verify_cover(&parsed.graph, &pieces, kind) {
                Err(d) => Some(d.to_string()),
                Ok(()) if claimed.is_some_and(|v| v != pieces.len()) => Some(format!(
                    "claims {} pieces but lists {}",
                    claimed.unwrap_or_default(),
                    pieces.len()
                )),
                Ok(()) => None,
            }
        }
    };
    let report = VerifyReport {
        valid: defect.is_none(),
        defect,
    };
    Ok(Outcome {
        code: if report.valid { EXIT_OK } else { EXIT_INVALID },
        text: to_json(&report),
    })
}

/// Edge-list text for `g`, with weight lines for costs other than 1.
pub fn write_edgelist(g: &Graph, costs: Option<&[u64]>) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    for (v, &c) in costs.unwrap_or(&[]).iter().enumerate() {
        if c != 1 {
            let _ = writeln!(out, "w {v} {c}");
        }
    }
    out
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome, Error> {
    if !(0.0..=1.0).contains(&a.p) {
        return Err(Error::Parse {
            line: 0,
            message: format!("probability {} outside [0, 1]", a.p),
        });
    }
    let mut rng = corpus::rng(a.seed);
    let g = match a.family {
        Family::Connected => corpus::random_connected(a.n, a.p, &mut rng),
        Family::Random => corpus::random_graph(a.n, a.p, &mut rng),
        Family::Cograph => corpus::random_cograph(a.n, &mut rng),
    };
    let text = match a.max_weight {
        Some(0) => {
            return Err(Error::Parse {
                line: 0,
                message: "--max-weight must be at least 1".into(),
            })
        }
        Some(hi) => {
            let wg: WeightedGraph = corpus::random_weights(g, 1, hi, &mut rng);
            write_edgelist(wg.graph(), Some(wg.costs()))
        }
        None => write_edgelist(&g, None),
    };
    Ok(Outcome::ok(text))
}
