//! Command-line front end: argument parsing, command dispatch and report
//! rendering. [`run`] never touches the process; `main` prints its outcome.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use hyperhom::chain::Flavor;
use hyperhom::golden;
use hyperhom::homology::{inf_sup_check, relative_embedded_homology, HomologyGroup};
use hyperhom::hypergraph::{Hypergraph, HypergraphPair};
use hyperhom::io::{parse_hypergraph, parse_rational, Format, HypergraphDocument};
use hyperhom::persistence::{
    barcode, build_filtration, distinct_values, format_value, persistent_les_check, rank_invariant_2d,
    relative_persistence, Barcode, Filtration, FiltrationSpec, RankInvariant2D,
};
use hyperhom::scalar::CoefficientSpec;
use hyperhom::sequences::{
    cell_structure, delta_h_proposition_check, les_check, les_diagram_check, mayer_vietoris_check, row_name,
    subadditivity_check, ROW_FLAVORS,
};
use hyperhom::topology::{
    closed_complement, core, neighborhood, openness, path_distance, topology_axioms_check, topology_operator,
    CoreIteration, TopologyKind, DEFAULT_OPEN_CAP,
};
use hyperhom::{Error, Rational};

pub const SCHEMA: &str = "hyperhom.report/v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "hyperhom", version, about = "Exact embedded homology, topology and persistence of hypergraphs")]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true, env = "HYPERHOM_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Plain,
    Json,
}

#[derive(Args, Debug)]
struct Input {
    /// Hypergraph file in the plain line format or JSON.
    file: PathBuf,

    /// Overrides detection from the extension and contents.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Named sub-hypergraph used as `A` (default: empty).
    #[arg(long)]
    sub: Option<String>,

    /// Named sub-hypergraph used as the total space (default: the main list).
    #[arg(long)]
    total: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Embedded homology of H, or relative homology of (H, A).
    Homology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "z", value_parser = parse_coeff)]
        coeff: CoefficientSpec,
        #[arg(long, default_value = "inf", value_parser = parse_flavor)]
        flavor: Flavor,
    },
    /// Topological operators on a sub-hypergraph.
    Topology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        op: TopologyOp,
        /// Iterations of `n` or `cor`.
        #[arg(long, default_value_t = 1)]
        iterate: usize,
        #[arg(long, value_enum, default_value_t = CoreMode::Nested)]
        mode: CoreMode,
    },
    /// Hyperedge path distance, e.g. `distance h.hg "v0 v1" v3`.
    Distance {
        #[command(flatten)]
        input: Input,
        from: String,
        to: String,
    },
    /// Barcodes of a filtration, or the two-parameter rank invariant.
    Persist {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FiltrationKind::Sublevel)]
        filtration: FiltrationKind,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Comma-separated thresholds for sublevel filtrations (default: the distinct values).
        #[arg(long)]
        grid: Option<String>,
        /// Sub-hypergraph `A` of the core/neighborhood filtration.
        #[arg(long)]
        sub: Option<String>,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = CoreMode::Nested)]
        mode: CoreMode,
        #[arg(long, default_value = "q", value_parser = parse_coeff)]
        coeff: CoefficientSpec,
        #[arg(long, default_value = "inf", value_parser = parse_flavor)]
        flavor: Flavor,
        /// Persistence of `H(H, A_t)` with the filtration steps as `A_t`.
        #[arg(long, conflicts_with = "rank_invariant")]
        relative: bool,
        /// Ranks of `H(f(H_b), f(H_a))` over the grid for the δ, embedded and Δ rows.
        #[arg(long)]
        rank_invariant: bool,
    },
    /// Runs structural checks; exits 1 if any fails.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Hypergraph file (not needed for `paper-examples` alone).
    file: Option<PathBuf>,

    #[arg(long, value_enum)]
    format: Option<InputFormat>,

    /// Checks to run; repeat the flag or separate with commas.
    #[arg(long = "check", value_enum, value_delimiter = ',', required = true)]
    checks: Vec<Check>,

    #[command(flatten)]
    pair: PairArgs,

    /// Inner sub-hypergraph `B ⊆ A` for `les-triple` and `subadd`.
    #[arg(long)]
    inner: Option<String>,

    /// First Mayer–Vietoris pair as `TOTAL:SUB`; `.` is the main list, an empty name the empty hypergraph.
    #[arg(long)]
    left: Option<String>,

    /// Second Mayer–Vietoris pair, same syntax as `--left`.
    #[arg(long)]
    right: Option<String>,

    /// Coefficients for checks that use them (default: z for `cell`, q otherwise).
    #[arg(long, value_parser = parse_coeff)]
    coeff: Option<CoefficientSpec>,

    /// Degree range `LO:HI` for `th1` and `persistent-les` (default: all degrees, from 1 for `th1`).
    #[arg(long)]
    degrees: Option<String>,

    #[arg(long, default_value_t = 2)]
    kmax: usize,

    #[arg(long, value_enum, default_value_t = CoreMode::Nested)]
    mode: CoreMode,

    /// Largest hyperedge count for which `topology-axioms` enumerates every subset.
    #[arg(long, default_value_t = DEFAULT_OPEN_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TopologyOp {
    Complement,
    ClosedComplement,
    Bd,
    Int,
    Cl,
    N,
    Cor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CoreMode {
    Nested,
    Literal,
}

impl From<CoreMode> for CoreIteration {
    fn from(m: CoreMode) -> Self {
        match m {
            CoreMode::Nested => CoreIteration::Nested,
            CoreMode::Literal => CoreIteration::Literal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FiltrationKind {
    Sublevel,
    CoreNeighborhood,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Les,
    LesTriple,
    Mv,
    Subadd,
    Cell,
    Th1,
    TopologyAxioms,
    InfSupIso,
    PersistentLes,
    PaperExamples,
}

impl Check {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn default_coeff(self) -> CoefficientSpec {
        match self {
            Check::Cell | Check::InfSupIso | Check::Subadd | Check::TopologyAxioms | Check::PaperExamples => {
                CoefficientSpec::Integers
            }
            _ => CoefficientSpec::Rationals,
        }
    }

    fn uses_coeff(self) -> bool {
        !matches!(self, Check::Subadd | Check::TopologyAxioms | Check::InfSupIso | Check::PaperExamples)
    }
}

fn parse_coeff(s: &str) -> Result<CoefficientSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure while executing a command, before any report exists.
#[derive(Debug)]
enum Failure {
    Input(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Engine(e) if e.is_input_error() => EXIT_INPUT,
            Failure::Engine(_) => EXIT_CHECK_FAILED,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) => m.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

type Outcomes<T> = std::result::Result<T, Failure>;

/// Result of one command before rendering.
struct Computed {
    coefficients: Option<String>,
    results: Value,
    text: String,
    table: Vec<Vec<String>>,
    warnings: Vec<String>,
    passed: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    schema: &'static str,
    command: &'a [String],
    engine: String,
    coefficients: Option<String>,
    status: &'static str,
    results: Value,
    warnings: Vec<String>,
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();

    let computed = match cli.threads {
        Some(0) => Err(Failure::Input("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(Failure::Input(format!("cannot start {n} worker threads: {e}"))),
        },
        None => execute(&cli.command),
    };
    match computed {
        Ok(c) => render(cli.output, &echo, c),
        Err(f) => Outcome {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

fn render(output: Output, echo: &[String], c: Computed) -> Outcome {
    let code = if c.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
    let mut stderr = String::new();
    let stdout = match output {
        Output::Json => {
            let report = Report {
                schema: SCHEMA,
                command: echo,
                engine: format!("hyperhom {}", env!("CARGO_PKG_VERSION")),
                coefficients: c.coefficients,
                status: if c.passed { "pass" } else { "fail" },
                results: c.results,
                warnings: c.warnings,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Output::Csv => {
            for w in &c.warnings {
                stderr.push_str(&format!("warning: {w}\n"));
            }
            to_csv(&c.table)
        }
        Output::Text => {
            let mut s = c.text;
            for w in &c.warnings {
                s.push_str(&format!("warning: {w}\n"));
            }
            s
        }
    };
    Outcome { code, stdout, stderr }
}

fn to_csv(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn load(path: &Path, format: Option<InputFormat>) -> Outcomes<HypergraphDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let format = match format {
        Some(InputFormat::Plain) => Format::Plain,
        Some(InputFormat::Json) => Format::Json,
        None => Format::detect(path.to_str(), &text),
    };
    parse_hypergraph(&text, format).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A named sub, `.` for the main list, or the empty hypergraph for `""`.
fn named(doc: &HypergraphDocument, name: &str) -> Outcomes<Hypergraph> {
    Ok(match name {
        "." => doc.hypergraph().clone(),
        "" => Hypergraph::new(),
        n => doc.sub(n)?.clone(),
    })
}

fn pair_of(doc: &HypergraphDocument, args: &PairArgs) -> Outcomes<HypergraphPair> {
    let total = match &args.total {
        Some(t) => named(doc, t)?,
        None => doc.hypergraph().clone(),
    };
    let sub = match &args.sub {
        Some(s) => named(doc, s)?,
        None => Hypergraph::new(),
    };
    Ok(HypergraphPair::new(total, sub)?)
}

fn pair_name(args: &PairArgs) -> String {
    format!(
        "({}, {})",
        args.total.as_deref().unwrap_or("H"),
        args.sub.as_deref().unwrap_or("∅")
    )
}

fn execute(cmd: &Command) -> Outcomes<Computed> {
    match cmd {
        Command::Homology { input, pair, coeff, flavor } => homology_cmd(input, pair, *coeff, *flavor),
        Command::Topology { input, pair, op, iterate, mode } => topology_cmd(input, pair, *op, *iterate, *mode),
        Command::Distance { input, from, to } => distance_cmd(input, from, to),
        Command::Persist {
            input,
            filtration,
            degree,
            grid,
            sub,
            kmax,
            mode,
            coeff,
            flavor,
            relative,
            rank_invariant,
        } => {
            let doc = load(&input.file, input.format)?;
            let h = doc.hypergraph();
            if *rank_invariant {
                if *filtration != FiltrationKind::Sublevel {
                    return Err(Failure::Input("--rank-invariant needs --filtration sublevel".into()));
                }
                let grid = thresholds(&doc, grid.as_deref())?;
                let ri = rank_invariant_2d(h, doc.values(), &grid, *degree, *coeff)?;
                return Ok(rank_invariant_output(&ri));
            }
            let filt = match filtration {
                FiltrationKind::Sublevel => {
                    if sub.is_some() {
                        return Err(Failure::Input("--sub only applies to --filtration core-neighborhood".into()));
                    }
                    let thresholds = thresholds(&doc, grid.as_deref())?;
                    build_filtration(h, &FiltrationSpec::Sublevel { values: doc.values().clone(), thresholds })?
                }
                FiltrationKind::CoreNeighborhood => {
                    let name = sub
                        .as_deref()
                        .ok_or_else(|| Failure::Input("--filtration core-neighborhood needs --sub".into()))?;
                    build_filtration(
                        h,
                        &FiltrationSpec::IteratedCoreNeighborhood {
                            sub: named(&doc, name)?,
                            kmax: *kmax,
                            mode: (*mode).into(),
                        },
                    )?
                }
            };
            let bc = if *relative {
                relative_persistence(h, &filt, *degree, *coeff)?
            } else {
                barcode(&filt, *degree, *coeff, *flavor)?
            };
            Ok(barcode_output(&doc, &filt, &bc))
        }
        Command::Verify(args) => verify_cmd(args),
    }
}

fn thresholds(doc: &HypergraphDocument, grid: Option<&str>) -> Outcomes<Vec<Rational>> {
    if doc.values().len() != doc.hypergraph().len() {
        return Err(Failure::Input(
            "sublevel filtrations need a value on every hyperedge (`: value` suffix or `values` field)".into(),
        ));
    }
    match grid {
        None => Ok(distinct_values(doc.values())),
        Some(g) => g
            .split(',')
            .map(|t| parse_rational(t.trim()).ok_or_else(|| Failure::Input(format!("bad grid value '{}'", t.trim()))))
            .collect(),
    }
}

fn homology_cmd(input: &Input, args: &PairArgs, coeff: CoefficientSpec, flavor: Flavor) -> Outcomes<Computed> {
    let doc = load(&input.file, input.format)?;
    let pair = pair_of(&doc, args)?;
    let groups = relative_embedded_homology(&pair, coeff, flavor)?;
    let mut warnings = Vec::new();
    if coeff == CoefficientSpec::Integers && flavor == Flavor::Inf {
        warnings.extend(golden::homology_discrepancy(&pair, &groups));
    }
    let rows: Vec<Value> = groups
        .iter()
        .enumerate()
        .map(|(n, g)| {
            json!({
                "degree": n,
                "betti": g.betti,
                "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "group": g.render(coeff),
            })
        })
        .collect();
    let mut table = vec![vec!["degree".into(), "betti".into(), "torsion".into(), "group".into()]];
    let mut text = String::new();
    for (n, g) in groups.iter().enumerate() {
        text.push_str(&format!("H_{n} = {}\n", g.render(coeff)));
        table.push(vec![n.to_string(), g.betti.to_string(), torsion_list(g), g.render(coeff)]);
    }
    Ok(Computed {
        coefficients: Some(coeff.to_string()),
        results: json!({
            "pair": pair_name(args),
            "flavor": flavor.name(),
            "homology": rows,
        }),
        text,
        table,
        warnings,
        passed: true,
    })
}

fn torsion_list(g: &HomologyGroup) -> String {
    g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn topology_cmd(
    input: &Input,
    args: &PairArgs,
    op: TopologyOp,
    iterate: usize,
    mode: CoreMode,
) -> Outcomes<Computed> {
    let doc = load(&input.file, input.format)?;
    let pair = pair_of(&doc, args)?;
    let mut warnings = Vec::new();
    let (name, set) = match op {
        TopologyOp::Complement => ("complement", topology_operator(&pair, TopologyKind::Complement)),
        TopologyOp::ClosedComplement => {
            warnings.extend(golden::closed_complement_discrepancy(&pair));
            ("closed-complement", closed_complement(&pair))
        }
        TopologyOp::Bd => ("bd", topology_operator(&pair, TopologyKind::Boundary)),
        TopologyOp::Int => ("int", topology_operator(&pair, TopologyKind::Interior)),
        TopologyOp::Cl => ("cl", topology_operator(&pair, TopologyKind::Closure)),
        TopologyOp::N => ("n", neighborhood(&pair, iterate)?),
        TopologyOp::Cor => ("cor", core(&pair, iterate, mode.into())?),
    };
    let flags = openness(&HypergraphPair::new(pair.total().clone(), set.clone())?);
    let rendered = doc.render(&set);
    let mut table = vec![vec!["hyperedge".to_string()]];
    table.extend(doc.edge_labels(&set).into_iter().map(|e| vec![e.join(" ")]));
    Ok(Computed {
        coefficients: None,
        results: json!({
            "pair": pair_name(args),
            "op": name,
            "iterate": iterate,
            "mode": if op == TopologyOp::Cor { Some(format!("{mode:?}").to_lowercase()) } else { None },
            "set": rendered,
            "hyperedges": doc.edge_labels(&set),
            "open": flags.is_open,
            "closed": flags.is_closed,
        }),
        text: format!("{rendered}\n"),
        table,
        warnings,
        passed: true,
    })
}

fn distance_cmd(input: &Input, from: &str, to: &str) -> Outcomes<Computed> {
    let doc = load(&input.file, input.format)?;
    let (a, b) = (doc.parse_edge(from)?, doc.parse_edge(to)?);
    let d = path_distance(doc.hypergraph(), &a, &b)?;
    let (ra, rb) = (doc.render_edge(&a), doc.render_edge(&b));
    Ok(Computed {
        coefficients: None,
        results: json!({ "from": ra, "to": rb, "distance": d.to_string() }),
        text: format!("{d}\n"),
        table: vec![
            vec!["from".into(), "to".into(), "distance".into()],
            vec![ra, rb, d.to_string()],
        ],
        warnings: Vec::new(),
        passed: true,
    })
}

fn barcode_output(doc: &HypergraphDocument, filt: &Filtration, bc: &Barcode) -> Computed {
    let steps: Vec<Value> = (0..filt.len())
        .map(|i| {
            json!({
                "label": filt.labels()[i],
                "value": format_value(&filt.values()[i]),
                "hyperedges": filt.step(i).len(),
                "betti": bc.betti[i],
            })
        })
        .collect();
    let mut table = vec![vec!["degree".into(), "birth".into(), "death".into(), "multiplicity".into()]];
    table.extend(bc.csv_rows().into_iter().map(Vec::from));
    let mut text = format!("H_{} barcode over {} ({}):\n", bc.degree, bc.coefficients, bc.flavor);
    for b in &bc.bars {
        let death = b.death.map_or_else(|| "inf".to_string(), |d| bc.labels[d].clone());
        text.push_str(&format!("  [{}, {}) x{}\n", bc.labels[b.birth], death, b.multiplicity));
    }
    if bc.bars.is_empty() {
        text.push_str("  (no bars)\n");
    }
    let passed = bc.round_trip_holds() && bc.betti_consistent();
    let mut warnings = Vec::new();
    if !passed {
        warnings.push("bars do not reproduce the persistent ranks".into());
    }
    Computed {
        coefficients: Some(bc.coefficients.clone()),
        results: json!({
            "hypergraph": doc.render(filt.top()),
            "steps": steps,
            "barcode": bc,
        }),
        text,
        table,
        warnings,
        passed,
    }
}

fn rank_invariant_output(ri: &RankInvariant2D) -> Computed {
    let mut header = vec!["degree".to_string(), "a".into(), "b".into()];
    header.extend(ROW_FLAVORS.iter().map(|&f| row_name(f).to_string()));
    let mut table = vec![header];
    let mut text = format!(
        "rank H_{}(f(H_b), f(H_a)) over {}, rows {}:\n",
        ri.degree,
        ri.coefficients,
        ri.flavors.join(", ")
    );
    for c in &ri.cells {
        let mut row = vec![ri.degree.to_string(), ri.grid[c.a].clone(), ri.grid[c.b].clone()];
        row.extend(c.ranks.iter().map(ToString::to_string));
        table.push(row);
        text.push_str(&format!("  a={} b={}: {:?}\n", ri.grid[c.a], ri.grid[c.b], c.ranks));
    }
    text.push_str(&format!(
        "triples checked: {}, violations: {}; squares checked: {}, failed: {}\n",
        ri.triples_checked,
        ri.violations.len(),
        ri.squares_checked,
        ri.failed_squares.len()
    ));
    Computed {
        coefficients: Some(ri.coefficients.clone()),
        results: serde_json::to_value(ri).expect("serializable"),
        text,
        table,
        warnings: Vec::new(),
        passed: ri.holds(),
    }
}

#[derive(Serialize)]
struct CheckOutcome {
    check: String,
    /// `pass`, `fail` or `not-applicable`.
    status: &'static str,
    coefficients: Option<String>,
    summary: String,
    details: Value,
    #[serde(skip)]
    warnings: Vec<String>,
}

impl CheckOutcome {
    fn new(check: Check, coeff: Option<CoefficientSpec>, passed: bool, summary: String, details: Value) -> Self {
        CheckOutcome {
            check: check.name(),
            status: if passed { "pass" } else { "fail" },
            coefficients: coeff.map(|c| c.to_string()),
            summary,
            details,
            warnings: Vec::new(),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_range(s: &str) -> Outcomes<(usize, usize)> {
    let bad = || Failure::Input(format!("bad degree range '{s}' (expected LO:HI)"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn mv_pair(doc: &HypergraphDocument, spec: Option<&str>, flag: &str) -> Outcomes<HypergraphPair> {
    let spec = spec.ok_or_else(|| Failure::Input(format!("mv needs --{flag} TOTAL:SUB")))?;
    let (t, s) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Input(format!("--{flag} expects TOTAL:SUB, got '{spec}'")))?;
    Ok(HypergraphPair::new(named(doc, t)?, named(doc, s)?)?)
}

fn verify_cmd(args: &VerifyArgs) -> Outcomes<Computed> {
    let mut checks = args.checks.clone();
    checks.dedup();
    let doc = match &args.file {
        Some(f) => Some(load(f, args.format)?),
        None if checks.iter().all(|&c| c == Check::PaperExamples) => None,
        None => return Err(Failure::Input("a hypergraph file is required for these checks".into())),
    };
    if let Some(c) = args.coeff {
        if let Some(bad) = checks.iter().find(|k| !k.uses_coeff()) {
            return Err(Failure::Input(format!("--coeff {c} does not apply to check {}", bad.name())));
        }
    }
    // Resolve every input up front so that bad flags fail before any work.
    let plans = checks
        .iter()
        .map(|&c| plan(c, doc.as_ref(), args))
        .collect::<Outcomes<Vec<Plan>>>()?;
    let results: Vec<Outcomes<CheckOutcome>> = plans.into_par_iter().map(run_plan).collect();
    let mut outcomes = Vec::new();
    for r in results {
        outcomes.push(r?);
    }

    let passed = outcomes.iter().all(|o| o.status != "fail");
    let mut text = String::new();
    let mut table = vec![vec!["check".to_string(), "status".into(), "summary".into()]];
    let mut warnings = Vec::new();
    for o in &mut outcomes {
        text.push_str(&format!("{} {}: {}\n", o.status.to_uppercase(), o.check, o.summary));
        table.push(vec![o.check.clone(), o.status.into(), o.summary.clone()]);
        warnings.append(&mut o.warnings);
    }
    Ok(Computed {
        coefficients: None,
        results: json!({ "checks": outcomes }),
        text,
        table,
        warnings,
        passed,
    })
}

/// One check with its inputs resolved.
enum Plan {
    Les { pair: HypergraphPair, inner: Option<Hypergraph>, check: Check, coeff: CoefficientSpec },
    Mv { p: HypergraphPair, q: HypergraphPair, coeff: CoefficientSpec },
    Subadd { h: Hypergraph, a: Hypergraph, b: Hypergraph },
    Cell { h: Hypergraph, coeff: CoefficientSpec },
    Th1 { h: Hypergraph, range: (usize, usize), coeff: CoefficientSpec },
    Axioms { h: Hypergraph, cap: usize },
    InfSup { pairs: Vec<(String, HypergraphPair)> },
    PersistentLes { pair: HypergraphPair, kmax: usize, mode: CoreIteration, range: (usize, usize), coeff: CoefficientSpec },
    Paper,
}

fn plan(check: Check, doc: Option<&HypergraphDocument>, args: &VerifyArgs) -> Outcomes<Plan> {
    let coeff = args.coeff.unwrap_or(check.default_coeff());
    let Some(doc) = doc else {
        return Ok(Plan::Paper);
    };
    let pair = || pair_of(doc, &args.pair);
    let inner = || -> Outcomes<Hypergraph> {
        let name = args
            .inner
            .as_deref()
            .ok_or_else(|| Failure::Input(format!("{} needs --inner B", check.name())))?;
        named(doc, name)
    };
    let top_dim = || doc.hypergraph().max_dim().unwrap_or(0);
    Ok(match check {
        Check::Les => Plan::Les { pair: pair()?, inner: None, check, coeff },
        Check::LesTriple => Plan::Les { pair: pair()?, inner: Some(inner()?), check, coeff },
        Check::Mv => Plan::Mv {
            p: mv_pair(doc, args.left.as_deref(), "left")?,
            q: mv_pair(doc, args.right.as_deref(), "right")?,
            coeff,
        },
        Check::Subadd => {
            let p = pair()?;
            Plan::Subadd { h: p.total().clone(), a: p.sub().clone(), b: inner()? }
        }
        Check::Cell => Plan::Cell { h: pair()?.total().clone(), coeff },
        Check::Th1 => {
            let range = match &args.degrees {
                Some(r) => parse_range(r)?,
                None => (1.min(top_dim()), top_dim()),
            };
            Plan::Th1 { h: pair()?.total().clone(), range, coeff }
        }
        Check::TopologyAxioms => Plan::Axioms { h: pair()?.total().clone(), cap: args.cap },
        Check::InfSupIso => {
            let pairs = if args.pair.sub.is_some() || args.pair.total.is_some() {
                vec![(pair_name(&args.pair), pair()?)]
            } else {
                // Every named sub that fits, and the absolute case.
                let h = doc.hypergraph();
                let mut v = vec![("(H, ∅)".to_string(), HypergraphPair::new(h.clone(), Hypergraph::new())?)];
                for (name, s) in doc.subs() {
                    v.push((format!("(H, {name})"), HypergraphPair::new(h.clone(), s.clone())?));
                }
                v
            };
            Plan::InfSup { pairs }
        }
        Check::PersistentLes => {
            let range = match &args.degrees {
                Some(r) => parse_range(r)?,
                None => (0, top_dim()),
            };
            Plan::PersistentLes { pair: pair()?, kmax: args.kmax, mode: args.mode.into(), range, coeff }
        }
        Check::PaperExamples => Plan::Paper,
    })
}

fn run_plan(plan: Plan) -> Outcomes<CheckOutcome> {
    Ok(match plan {
        Plan::Les { pair, inner, check, coeff } => {
            let (h, a) = (pair.total(), pair.sub());
            let report = les_check(h, a, inner.as_ref(), coeff)?;
            let diagram = les_diagram_check(h, a, inner.as_ref(), coeff)?;
            let passed = report.is_exact() && diagram.holds();
            let summary = format!(
                "{} junctions, {} identities, {} diagram squares; {} failures",
                report.junctions.len(),
                report.identities.len(),
                diagram.squares.len(),
                report.failures.len()
                    + diagram.rows.iter().map(|r| r.failures.len()).sum::<usize>()
                    + diagram.squares.iter().filter(|s| !s.commutes).count()
            );
            CheckOutcome::new(check, Some(coeff), passed, summary, json!({ "sequence": report, "diagram": diagram }))
        }
        Plan::Mv { p, q, coeff } => {
            let report = mayer_vietoris_check(&p, &q, coeff)?;
            if let Some(pre) = &report.precondition {
                let mut o = CheckOutcome::new(Check::Mv, Some(coeff), true, pre.clone(), to_value(&report));
                o.status = "not-applicable";
                o
            } else {
                let summary = format!("{} junctions; {} failures", report.junctions.len(), report.failures.len());
                CheckOutcome::new(Check::Mv, Some(coeff), report.is_exact(), summary, to_value(&report))
            }
        }
        Plan::Subadd { h, a, b } => {
            let report = subadditivity_check(&h, &a, &b)?;
            let bad = report.rows.iter().filter(|r| !r.holds).count();
            let summary = format!("{} degrees, {bad} violations", report.rows.len());
            CheckOutcome::new(Check::Subadd, None, report.holds(), summary, to_value(&report))
        }
        Plan::Cell { h, coeff } => {
            let report = cell_structure(&h, coeff)?;
            let summary = format!(
                "{} skeletal rows; cell complex homology {} the embedded homology",
                report.skeletal.len(),
                if report.comparison_holds { "matches" } else { "differs from" }
            );
            CheckOutcome::new(Check::Cell, Some(coeff), report.holds(), summary, to_value(&report))
        }
        Plan::Th1 { h, range, coeff } => {
            let report = delta_h_proposition_check(&h, range.0, range.1, coeff)?;
            let mut o = CheckOutcome::new(
                Check::Th1,
                Some(coeff),
                report.holds(),
                format!("degrees {}..={}, H_n(H) dims {:?}", range.0, range.1, report.hypothesis_dims),
                to_value(&report),
            );
            if !report.applicable {
                o.status = "not-applicable";
                o.summary = format!("H_n(H) is not zero on degrees {}..={}: {:?}", range.0, range.1, report.hypothesis_dims);
            }
            o
        }
        Plan::Axioms { h, cap } => {
            let report = topology_axioms_check(&h, cap)?;
            let summary = format!(
                "{} subsets, {} opens, {} failures",
                report.subsets_checked,
                report.opens,
                report.failures.len()
            );
            CheckOutcome::new(Check::TopologyAxioms, None, report.holds(), summary, to_value(&report))
        }
        Plan::InfSup { pairs } => {
            let mut details = Vec::new();
            let mut passed = true;
            for (name, pair) in &pairs {
                let report = inf_sup_check(pair)?;
                passed &= report.holds();
                details.push(json!({ "pair": name, "holds": report.holds(), "report": report }));
            }
            let summary = format!("{} pairs, Inf and Sup quotients {}", pairs.len(), if passed { "agree" } else { "differ" });
            CheckOutcome::new(Check::InfSupIso, Some(CoefficientSpec::Integers), passed, summary, Value::Array(details))
        }
        Plan::PersistentLes { pair, kmax, mode, range, coeff } => {
            let report = persistent_les_check(pair.total(), pair.sub(), kmax, mode, range, coeff)?;
            let summary = format!(
                "{} indices ({}), {} ladder squares",
                report.indices.len(),
                report.labels.join(" ⊆ "),
                report.ladder.len()
            );
            CheckOutcome::new(Check::PersistentLes, Some(coeff), report.holds(), summary, to_value(&report))
        }
        Plan::Paper => {
            let suite = golden::paper_examples()?;
            let total = suite.cases.len();
            let bad = suite.mismatches().count();
            let summary = format!("{} of {total} cases match", total - bad);
            let mut o = CheckOutcome::new(Check::PaperExamples, None, suite.passed(), summary, to_value(&suite.cases));
            o.warnings = suite.warnings;
            o
        }
    })
}
