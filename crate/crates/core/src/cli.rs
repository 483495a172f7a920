//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check found a violation, 2 malformed input or
//! parameters, 3 invalid weights, 4 algorithm does not fit the instance,
//! 5 refused by a resource guard.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algorithms::{
    boruvka, greedy, kuw_blocks, kuw_with, reduction_optimize, KuwSchedule, Kuw, ReductionOptions, RunReport,
};
use crate::error::MatroidError;
use crate::fixtures;
use crate::generate::{random_binary, random_graph, random_weights, rng_from_seed};
use crate::ground::{ElementSet, GroundSet};
use crate::instance::{Instance, Source};
use crate::lattice::{build_flat_lattice, is_geometric};
use crate::oracle::{Oracle, Unmetered};
use crate::verify::{
    check_axioms, check_cocircuit_certificate, check_duality_lemmas, check_tutte_white_agreement, check_white,
    AxiomOutcome, CertificateKind, WhiteOutcome,
};
use crate::weights::{format_weights, parse_weights, validate_weights, WeightCheck, WeightMap};

pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_WEIGHTS: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_GUARD: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "binmat", version, about = "Matroid optimization over an adaptive independence oracle")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Raise the ground-set size limit of exhaustive checks.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a minimum-weight basis.
    Solve(SolveArgs),
    /// Run brute-force checkers.
    Verify(VerifyArgs),
    /// Write an instance.
    Gen(GenArgs),
    /// List the flats, or draw the Hasse diagram.
    Lattice(LatticeArgs),
    /// Run block-wise basis search alone.
    Basis(BasisArgs),
}

/// Exactly one instance source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Binary matrix file.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Graph file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Uniform matroid `n,r`, or a file holding it.
    #[arg(long)]
    pub uniform: Option<String>,
    /// A built-in instance.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Greedy,
    Boruvka,
    ReductionKuw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    Speculative,
    Sequential,
}

impl From<Schedule> for KuwSchedule {
    fn from(s: Schedule) -> Self {
        match s {
            Schedule::Speculative => KuwSchedule::Speculative,
            Schedule::Sequential => KuwSchedule::Sequential,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Weights file; defaults to 1..n in element order.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algo::ReductionKuw)]
    pub algo: Algo,
    #[arg(long, value_enum, default_value_t = Schedule::Speculative)]
    pub schedule: Schedule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Certificate,
    White,
    Tutte,
    Duality,
    Axioms,
    LatticeGeometric,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Comma-separated checks; all of them by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<Check>,
    /// Candidate basis for the certificate check; the reduction's answer by default.
    #[arg(long, value_delimiter = ',')]
    pub solution: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Directory for the instance and weights files; stdout otherwise.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Uniform random matrix over GF(2).
    RandomBinary {
        rows: usize,
        n: usize,
        /// Keep an all-zero draw instead of redrawing.
        #[arg(long)]
        allow_rank_zero: bool,
    },
    /// Connected random multigraph without self-loops.
    RandomGraph { vertices: usize, edges: usize },
    /// A built-in instance.
    Fixture { name: String },
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Print the Hasse diagram in DOT.
    #[arg(long)]
    pub emit_dot: bool,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Schedule::Speculative)]
    pub schedule: Schedule,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        let code = match e {
            MatroidError::IncompleteWeights { .. } | MatroidError::InvalidWeight { .. } => EXIT_WEIGHTS,
            MatroidError::ResourceGuard { .. } => EXIT_GUARD,
            MatroidError::FaultyOracle(_) | MatroidError::InvalidContraction(_) => EXIT_VIOLATION,
            _ => EXIT_MALFORMED,
        };
        CliError::new(code, e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Output of a successful command and its exit code.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Solve(a) => solve(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Gen(a) => gen(cli, a),
        Command::Lattice(a) => lattice(cli, a),
        Command::Basis(a) => basis(cli, a),
    }
}

struct Loaded {
    instance: Instance,
    fixture_weights: Option<WeightMap<f64>>,
}

fn load(source: &SourceArgs) -> CliResult<Loaded> {
    let instance = if let Some(p) = &source.matrix {
        Instance::load_binary(p)?
    } else if let Some(p) = &source.graph {
        Instance::load_graph(p)?
    } else if let Some(spec) = &source.uniform {
        Instance::load_uniform(spec)?
    } else if let Some(name) = &source.fixture {
        let f = fixture(name)?;
        return Ok(Loaded {
            instance: f.instance,
            fixture_weights: Some(f.weights),
        });
    } else {
        return Err(CliError::new(EXIT_MALFORMED, "no instance given"));
    };
    Ok(Loaded {
        instance,
        fixture_weights: None,
    })
}

fn fixture(name: &str) -> CliResult<fixtures::Fixture> {
    fixtures::by_name(name).ok_or_else(|| {
        CliError::new(
            EXIT_MALFORMED,
            format!("unknown fixture {name:?}; known: {}", fixtures::NAMES.join(", ")),
        )
    })
}

/// Weights from `path`, else the fixture's, else `1..n`. Always injective.
fn load_weights(path: Option<&Path>, loaded: &Loaded) -> CliResult<WeightMap<f64>> {
    let ground = &loaded.instance.ground;
    let w = match (path, &loaded.fixture_weights) {
        (Some(p), _) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::new(EXIT_WEIGHTS, format!("{}: {e}", p.display())))?;
            parse_weights::<f64>(&text, ground).map_err(|e| CliError::new(EXIT_WEIGHTS, e.to_string()))?
        }
        (None, Some(w)) => w.clone(),
        (None, None) => WeightMap::by_index(ground.len()),
    };
    match validate_weights(&w, ground)? {
        WeightCheck::Ok => Ok(w),
        WeightCheck::Duplicates(d) => {
            let (a, b) = d[0];
            Err(CliError::new(
                EXIT_WEIGHTS,
                format!("weights must be distinct: {} and {} share a weight", ground.name(a), ground.name(b)),
            ))
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn solve(cli: &Cli, a: &SolveArgs) -> CliResult<Outcome> {
    let loaded = load(&a.source)?;
    let w = load_weights(a.weights.as_deref(), &loaded)?;
    let inst = &loaded.instance;
    let session = inst.session();
    let mut stderr = String::new();
    let report: RunReport<f64> = match a.algo {
        Algo::Greedy => greedy(&session, &w)?,
        Algo::Boruvka => {
            let g = inst
                .as_graph()
                .ok_or_else(|| CliError::new(EXIT_MISMATCH, "boruvka needs a graph instance (--graph)"))?;
            boruvka(g, &w)?
        }
        Algo::ReductionKuw => {
            if matches!(inst.source, Source::Uniform(u) if u.r() >= 2 && u.n() >= u.r() + 2) {
                stderr.push_str("note: this uniform matroid is not binary; the result may be suboptimal\n");
            }
            let search = Kuw {
                schedule: a.schedule.into(),
            };
            reduction_optimize(&session, &w, &search, ReductionOptions::default())?
        }
    };
    let stdout = if cli.json {
        let mut v = report.to_json(&inst.ground);
        v["seed"] = json!(cli.seed);
        to_json(&v)
    } else {
        let g = &inst.ground;
        let mut rows = vec![
            ("algorithm", report.algorithm.clone()),
            ("solution", g.format(report.solution)),
            ("weight", report.total_weight.to_string()),
            ("rounds", report.rounds.to_string()),
            ("queries", report.queries.to_string()),
            ("basis_calls", report.basis_calls.to_string()),
        ];
        if a.algo == Algo::ReductionKuw {
            rows.push(("iterations", report.outer_iterations.to_string()));
        }
        table(&rows)
    };
    Ok(Outcome { code: 0, stdout, stderr })
}

fn parse_solution(names: &[String], ground: &GroundSet) -> CliResult<ElementSet> {
    ground.set_of(names).map_err(|e| CliError::new(EXIT_MALFORMED, e.to_string()))
}

fn verify(cli: &Cli, a: &VerifyArgs) -> CliResult<Outcome> {
    let loaded = load(&a.source)?;
    let inst = &loaded.instance;
    let g = &inst.ground;
    let session = inst.session();
    let checks = if a.checks.is_empty() {
        vec![
            Check::Certificate,
            Check::White,
            Check::Tutte,
            Check::Duality,
            Check::Axioms,
            Check::LatticeGeometric,
        ]
    } else {
        a.checks.clone()
    };
    let names = |s: ElementSet| json!(g.names_of(s));
    let mut results: Vec<(String, bool, Value, String)> = Vec::new();
    for check in checks {
        let (name, ok, details, summary) = match check {
            Check::Certificate => {
                let w = load_weights(a.weights.as_deref(), &loaded)?;
                let x = match &a.solution {
                    Some(list) => parse_solution(list, g)?,
                    None => reduction_optimize(&session, &w, &Kuw::default(), ReductionOptions::default())?.solution,
                };
                let c = check_cocircuit_certificate(&session, &w, x, cli.max_n)?;
                let mut details = json!({
                    "kind": c.kind,
                    "candidate": names(x),
                    "cocircuit_minima": names(c.minima),
                });
                let mut summary = format!("{:?} for {}", c.kind, g.format(x)).to_lowercase();
                if let Some(ex) = c.exchange {
                    details["exchange"] = json!({
                        "cocircuit": names(ex.cocircuit),
                        "remove": g.names()[ex.remove],
                        "add": g.names()[ex.add],
                    });
                    let _ = write!(
                        summary,
                        "; swap {} for {} in cocircuit {}",
                        g.names()[ex.remove],
                        g.names()[ex.add],
                        g.format(ex.cocircuit)
                    );
                }
                if let Some(note) = &c.note {
                    details["note"] = json!(note);
                    let _ = write!(summary, "; {note}");
                }
                ("certificate", c.kind == CertificateKind::Optimal, details, summary)
            }
            Check::White => match check_white(&session, cli.max_n)? {
                WhiteOutcome::Ok => ("white", true, json!({}), "symmetric differences are circuits".into()),
                WhiteOutcome::Counterexample { first, second } => (
                    "white",
                    false,
                    json!({ "first": names(first), "second": names(second), "difference": names(first ^ second) }),
                    format!(
                        "{} and {} form a modular pair but {} is not a circuit",
                        g.format(first),
                        g.format(second),
                        g.format(first ^ second)
                    ),
                ),
            },
            Check::Tutte => {
                let r = check_tutte_white_agreement(&session, cli.max_n)?;
                let interval = |i: Option<crate::lattice::Interval>| {
                    i.map(|i| json!({ "bottom": names(i.bottom), "top": names(i.top), "size": i.size }))
                };
                let summary = format!(
                    "white says {}, lattice says {}",
                    if r.binary_by_white() { "binary" } else { "not binary" },
                    if r.binary_by_lattice() { "binary" } else { "not binary" }
                );
                let details = json!({
                    "binary_by_white": r.binary_by_white(),
                    "binary_by_lattice": r.binary_by_lattice(),
                    "primal_interval": interval(r.primal_interval),
                    "dual_interval": interval(r.dual_interval),
                });
                ("tutte", r.agree(), details, summary)
            }
            Check::Duality => {
                let r = check_duality_lemmas(&session, cli.max_n)?;
                let summary = format!(
                    "{} hyperplanes, {} pairs, {} mismatches",
                    r.hyperplanes,
                    r.pairs_checked,
                    r.modular_mismatches.len()
                );
                let details = json!({
                    "hyperplanes": r.hyperplanes,
                    "cocircuits_are_dual_circuits": r.cocircuits_are_dual_circuits,
                    "pairs_checked": r.pairs_checked,
                    "modular_mismatches": r.modular_mismatches.iter().map(|&(a, b)| json!([names(a), names(b)])).collect::<Vec<_>>(),
                });
                ("duality", r.ok(), details, summary)
            }
            Check::Axioms => {
                let r = check_axioms(&session, cli.max_n)?;
                let (details, summary) = match r {
                    AxiomOutcome::Ok => (json!({}), "independence axioms hold".to_string()),
                    AxiomOutcome::EmptySetDependent => (json!({}), "the empty set is dependent".to_string()),
                    AxiomOutcome::Hereditary { set, subset } => (
                        json!({ "set": names(set), "subset": names(subset) }),
                        format!("{} is independent but {} is not", g.format(set), g.format(subset)),
                    ),
                    AxiomOutcome::Exchange { smaller, larger } => (
                        json!({ "smaller": names(smaller), "larger": names(larger) }),
                        format!("{} cannot be extended from {}", g.format(smaller), g.format(larger)),
                    ),
                };
                ("axioms", r == AxiomOutcome::Ok, details, summary)
            }
            Check::LatticeGeometric => {
                let lat = build_flat_lattice(&Unmetered(&session), cli.max_n)?;
                let ok = is_geometric(&lat);
                (
                    "lattice-geometric",
                    ok,
                    json!({ "flats": lat.len() }),
                    format!("{} flats, {}", lat.len(), if ok { "geometric" } else { "not geometric" }),
                )
            }
        };
        results.push((name.to_string(), ok, details, summary));
    }
    let all_ok = results.iter().all(|r| r.1);
    let stdout = if cli.json {
        let list: Vec<Value> = results
            .iter()
            .map(|(name, ok, details, _)| json!({ "check": name, "ok": ok, "details": details }))
            .collect();
        to_json(&json!({ "ok": all_ok, "checks": list }))
    } else {
        let rows: Vec<(&str, String)> = results
            .iter()
            .map(|(name, ok, _, summary)| (name.as_str(), format!("{}  {summary}", if *ok { "ok  " } else { "FAIL" })))
            .collect();
        table(&rows)
    };
    Ok(Outcome {
        code: if all_ok { 0 } else { EXIT_VIOLATION },
        stdout,
        stderr: String::new(),
    })
}

fn gen(cli: &Cli, a: &GenArgs) -> CliResult<Outcome> {
    let mut rng = rng_from_seed(cli.seed);
    let (stem, instance, weights) = match &a.kind {
        GenKind::RandomBinary {
            rows,
            n,
            allow_rank_zero,
        } => {
            let rep = random_binary(*rows, *n, *allow_rank_zero, &mut rng)?;
            let inst = Instance::binary(rep, GroundSet::numbered(*n)?)?;
            let w = random_weights(*n, &mut rng);
            (format!("random-binary-{rows}x{n}-s{}", cli.seed), inst, w)
        }
        GenKind::RandomGraph { vertices, edges } => {
            let inst = Instance::graph(random_graph(*vertices, *edges, &mut rng)?);
            let w = random_weights(*edges, &mut rng);
            (format!("random-graph-{vertices}v{edges}e-s{}", cli.seed), inst, w)
        }
        GenKind::Fixture { name } => {
            let f = fixture(name)?;
            (f.name.to_string(), f.instance, f.weights)
        }
    };
    let Some(dir) = &a.out else {
        return Ok(Outcome::ok(instance.to_text()));
    };
    fs::create_dir_all(dir).map_err(|e| CliError::new(EXIT_MALFORMED, format!("{}: {e}", dir.display())))?;
    let inst_path = dir.join(format!("{stem}.{}", instance.extension()));
    let w_path = dir.join(format!("{stem}.weights"));
    let write = |p: &Path, text: String| {
        fs::write(p, text).map_err(|e| CliError::new(EXIT_MALFORMED, format!("{}: {e}", p.display())))
    };
    write(&inst_path, instance.to_text())?;
    write(&w_path, format_weights(&weights, &instance.ground))?;
    let stdout = if cli.json {
        to_json(&json!({
            "instance": inst_path.display().to_string(),
            "weights": w_path.display().to_string(),
            "seed": cli.seed,
        }))
    } else {
        format!("{}\n{}\n", inst_path.display(), w_path.display())
    };
    Ok(Outcome::ok(stdout))
}

fn lattice(cli: &Cli, a: &LatticeArgs) -> CliResult<Outcome> {
    let loaded = load(&a.source)?;
    let g = &loaded.instance.ground;
    let session = loaded.instance.session();
    let lat = build_flat_lattice(&session, cli.max_n)?;
    if a.emit_dot {
        return Ok(Outcome::ok(lat.to_dot(g)));
    }
    let by_rank = lat.by_rank();
    let coatoms: Vec<ElementSet> = if lat.len() > 1 {
        lat.coatoms().into_iter().map(|i| lat.flat(i)).collect()
    } else {
        Vec::new()
    };
    let stdout = if cli.json {
        to_json(&json!({
            "flats": lat.len(),
            "rank": lat.rank(),
            "by_rank": by_rank.iter().map(|level| level.iter().map(|&f| g.names_of(f)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "coatoms": coatoms.iter().map(|&f| g.names_of(f)).collect::<Vec<_>>(),
            "geometric": is_geometric(&lat),
        }))
    } else {
        let mut out = String::new();
        for (r, level) in by_rank.iter().enumerate() {
            let sets: Vec<String> = level.iter().map(|&f| g.format(f)).collect();
            let _ = writeln!(out, "rank {r}: {}", sets.join(" "));
        }
        let _ = writeln!(out, "flats: {}", lat.len());
        let sets: Vec<String> = coatoms.iter().map(|&f| g.format(f)).collect();
        let _ = writeln!(out, "coatoms: {}", sets.join(" "));
        out
    };
    Ok(Outcome::ok(stdout))
}

fn basis(cli: &Cli, a: &BasisArgs) -> CliResult<Outcome> {
    let loaded = load(&a.source)?;
    let g = &loaded.instance.ground;
    let session = loaded.instance.session();
    let blocks = kuw_blocks(session.active());
    let b = kuw_with(&session, blocks.clone(), a.schedule.into(), None)?;
    session.record_basis_call();
    let cost = session.ledger();
    let stdout = if cli.json {
        to_json(&json!({
            "basis": g.names_of(b),
            "blocks": blocks.iter().map(|&z| g.names_of(z)).collect::<Vec<_>>(),
            "rounds": cost.rounds,
            "queries": cost.queries,
            "per_round_sizes": cost.per_round_sizes,
        }))
    } else {
        let blocks: Vec<String> = blocks.iter().map(|&z| g.format(z)).collect();
        table(&[
            ("basis", g.format(b)),
            ("blocks", blocks.join(" ")),
            ("rounds", cost.rounds.to_string()),
            ("queries", cost.queries.to_string()),
        ])
    };
    Ok(Outcome::ok(stdout))
}
