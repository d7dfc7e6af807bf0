//! Thin command-line front end over the `autcoh` library.
//!
//! Subcommands: `predict` (closed-form verdicts), `compute` (cohomology of a
//! named group), `chief-series` (Sylow chief series), `verify` (one named
//! check suite), `report` (all suites to JSON/CSV).  Exit code 0 when all
//! checks pass, 1 when any fails, 2 on invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use autcoh::checks::{merged_csv, merged_json, run_all, run_suite, SuiteReport};
use autcoh::cohomology::brute::BRUTE_CAP;
use autcoh::cohomology::group::{cyclic, g1, g2, g3, g4, CoordinateGroup};
use autcoh::cohomology::maps::{invariant_subspace, pc_invariant_subspace, ClassSpace};
use autcoh::cohomology::{
    h1_dim, h2_brute, h2_pc, pc_from_chief_series, GroupTable, MatrixGroup, NaturalAction, PcGroup,
};
use autcoh::criteria::{predict, ActionKind};
use autcoh::linalg::p_pow;
use autcoh::series::{chief_series, SeriesOrder};
use autcoh::structures::{enumerate_diagonal, Partition};
use autcoh::{Error, Result};

/// Cap on element enumeration (table construction is quadratic in it).
const ENUMERATION_CAP: u128 = 1 << 20;

#[derive(Parser)]
#[command(
    name = "autcoh",
    version,
    about = "Exact cohomology of automorphism groups of finite abelian p-groups",
    long_about = "Exact cohomology of automorphism groups of finite abelian p-groups.\n\
                  All computed values are deterministic (fixed internal seeds); only the\n\
                  reported wall times vary between runs."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form vanishing/nonvanishing verdict for H^degree
    Predict(PredictArgs),
    /// Compute H^1 or H^2 of a named group
    Compute(ComputeArgs),
    /// Build and verify a chief series of the Sylow subgroup
    ChiefSeries(ChiefSeriesArgs),
    /// Run one named verification suite
    Verify(VerifyArgs),
    /// Run every suite and write a machine-readable report
    Report(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ActionArg {
    /// Coefficients F_p with trivial action
    Trivial,
    /// The group acts on A_lambda as automorphisms
    Natural,
}

impl From<ActionArg> for ActionKind {
    fn from(a: ActionArg) -> Self {
        match a {
            ActionArg::Trivial => ActionKind::Trivial,
            ActionArg::Natural => ActionKind::Natural,
        }
    }
}

impl ActionArg {
    fn name(self) -> &'static str {
        match self {
            ActionArg::Trivial => "trivial",
            ActionArg::Natural => "natural",
        }
    }
}

#[derive(Args)]
struct PredictArgs {
    /// Partition parts, comma-separated (e.g. 3,2,1)
    #[arg(long)]
    partition: String,
    #[arg(long)]
    prime: u64,
    /// Cohomological degree (1 or 2)
    #[arg(long)]
    degree: u8,
    #[arg(long, value_enum, default_value = "trivial")]
    action: ActionArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    /// Sylow p-subgroup P_lambda (needs --partition)
    Pl,
    /// Full automorphism group G_lambda (needs --partition)
    Gl,
    /// First named coordinate group (order p^2)
    G1,
    /// Second named coordinate group (order p^4)
    G2,
    /// Third named coordinate group (order p^5)
    G3,
    /// Fourth named coordinate group (order p^6)
    G4,
    /// Cyclic group Z/p^r for the single-part partition (r)
    Cyclic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    /// Table-driven streamed linear algebra
    Brute,
    /// Polycyclic presentation with tails (degree 2, p-groups)
    Pc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InvariantsArg {
    /// Classes fixed by the restricted diagonal subgroup D_lambda
    Dl,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Partition parts, comma-separated; required for pl|gl|cyclic
    #[arg(long)]
    partition: Option<String>,
    #[arg(long)]
    prime: u64,
    /// Cohomological degree (1 or 2)
    #[arg(long)]
    degree: u8,
    #[arg(long, value_enum, default_value = "trivial")]
    action: ActionArg,
    #[arg(long, value_enum, default_value = "brute")]
    engine: EngineArg,
    /// Restrict to the invariant subspace under the named torus action
    #[arg(long, value_enum)]
    invariants: Option<InvariantsArg>,
    /// Size cap for the quadratic-cost degree-2 solver
    #[arg(long, default_value_t = BRUTE_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    /// The base total order on coordinates
    To,
    /// The modified order (commutator coordinates first)
    Mto,
}

#[derive(Args)]
struct ChiefSeriesArgs {
    /// Partition parts, comma-separated (e.g. 2,1)
    #[arg(long)]
    partition: String,
    #[arg(long)]
    prime: u64,
    #[arg(long, value_enum)]
    order: OrderArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Desk,
    Identity,
    Hs,
    Criterion,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Desk => "desk",
            SuiteArg::Identity => "identity",
            SuiteArg::Hs => "hs",
            SuiteArg::Criterion => "criterion",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Only run checks pinned at this prime
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct ReportArgs {
    /// Output file path
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::Invalid(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Returns whether every executed check passed (non-verification commands
/// report success unless they error out).
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Predict(args) => cmd_predict(args),
        Command::Compute(args) => cmd_compute(args),
        Command::ChiefSeries(args) => cmd_chief_series(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn cmd_predict(args: PredictArgs) -> Result<bool> {
    let partition = Partition::parse(&args.partition)?;
    let prediction = predict(&partition, args.prime, args.degree, args.action.into())?;
    println!("{}", to_json(&prediction)?);
    Ok(true)
}

/// What `compute` resolved its `--group` to.
enum ResolvedGroup {
    Matrix(MatrixGroup),
    Coordinate(CoordinateGroup),
    Cyclic(GroupTable),
}

impl ResolvedGroup {
    fn table(&self) -> &GroupTable {
        match self {
            ResolvedGroup::Matrix(mg) => &mg.table,
            ResolvedGroup::Coordinate(cg) => &cg.table,
            ResolvedGroup::Cyclic(t) => t,
        }
    }
}

#[derive(Serialize)]
struct ComputeOutput {
    group: String,
    prime: u64,
    degree: u8,
    action: &'static str,
    engine: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<&'static str>,
    /// Dimension of the requested space (the invariant part when
    /// `--invariants` is given).
    dim: usize,
    /// Dimension of the full cohomology space, when it differs from `dim`.
    #[serde(skip_serializing_if = "Option::is_none")]
    full_dim: Option<usize>,
    /// Cyclic factor orders, for the natural action over Z/p^e.
    #[serde(skip_serializing_if = "Option::is_none")]
    orders: Option<Vec<u64>>,
}

fn cmd_compute(args: ComputeArgs) -> Result<bool> {
    if !(1..=2).contains(&args.degree) {
        return Err(Error::Invalid("degree must be 1 or 2".into()));
    }
    let partition = args.partition.as_deref().map(Partition::parse).transpose()?;
    let needs_partition = matches!(args.group, GroupArg::Pl | GroupArg::Gl | GroupArg::Cyclic);
    if needs_partition && partition.is_none() {
        return Err(Error::Invalid("this group kind requires --partition".into()));
    }
    if !needs_partition && partition.is_some() {
        return Err(Error::Invalid("coordinate groups are determined by --prime alone; drop --partition".into()));
    }

    let p = args.prime;
    let (resolved, label) = match args.group {
        GroupArg::Pl => {
            let lam = partition.as_ref().unwrap();
            (ResolvedGroup::Matrix(MatrixGroup::sylow(lam, p, ENUMERATION_CAP)?), format!("pl{}@{p}", lam.label()))
        }
        GroupArg::Gl => {
            let lam = partition.as_ref().unwrap();
            (ResolvedGroup::Matrix(MatrixGroup::full(lam, p, ENUMERATION_CAP)?), format!("gl{}@{p}", lam.label()))
        }
        GroupArg::G1 => (ResolvedGroup::Coordinate(g1(p)?), format!("g1@{p}")),
        GroupArg::G2 => (ResolvedGroup::Coordinate(g2(p)?), format!("g2@{p}")),
        GroupArg::G3 => (ResolvedGroup::Coordinate(g3(p)?), format!("g3@{p}")),
        GroupArg::G4 => (ResolvedGroup::Coordinate(g4(p)?), format!("g4@{p}")),
        GroupArg::Cyclic => {
            let lam = partition.as_ref().unwrap();
            if lam.k() != 1 || lam.rank() != 1 {
                return Err(Error::Invalid("cyclic groups take a single-part partition (r), meaning Z/p^r".into()));
            }
            let n = p_pow(p, lam.lambda(1));
            (ResolvedGroup::Cyclic(cyclic(n)?), format!("cyclic({n})"))
        }
    };

    let mut out = ComputeOutput {
        group: label,
        prime: p,
        degree: args.degree,
        action: args.action.name(),
        engine: if args.engine == EngineArg::Brute { "brute" } else { "pc" },
        invariants: args.invariants.map(|_| "dl"),
        dim: 0,
        full_dim: None,
        orders: None,
    };

    match args.action {
        ActionArg::Natural => {
            let ResolvedGroup::Matrix(mg) = resolved else {
                return Err(Error::Invalid("the natural action needs a matrix group (pl or gl)".into()));
            };
            if args.engine == EngineArg::Pc {
                return Err(Error::Invalid("the natural action is solved over Z/p^e; use --engine brute".into()));
            }
            if args.invariants.is_some() {
                return Err(Error::Invalid("--invariants applies to the trivial action only".into()));
            }
            let action = NaturalAction::new(mg)?;
            let inv = if args.degree == 1 { action.h1()? } else { action.h2()? };
            out.dim = inv.orders.len();
            out.orders = Some(inv.orders);
        }
        ActionArg::Trivial => {
            compute_trivial(&args, resolved, &mut out)?;
        }
    }
    println!("{}", to_json(&out)?);
    Ok(true)
}

fn compute_trivial(args: &ComputeArgs, resolved: ResolvedGroup, out: &mut ComputeOutput) -> Result<()> {
    let p = args.prime;
    if args.degree == 1 {
        if args.engine == EngineArg::Pc {
            return Err(Error::Invalid("the pc engine computes degree 2; use --engine brute for degree 1".into()));
        }
        if args.invariants.is_some() {
            return Err(Error::Invalid("--invariants is a degree-2 operation".into()));
        }
        out.dim = h1_dim(resolved.table(), p)?;
        return Ok(());
    }

    // degree 2: conjugation permutations of the torus, when requested
    let perms = match (&resolved, args.invariants) {
        (_, None) => None,
        (ResolvedGroup::Matrix(mg), Some(_)) => {
            if args.group == GroupArg::Gl {
                return Err(Error::Invalid(
                    "the diagonal torus acts by conjugation on pl; for gl the action is inner and fixes everything".into(),
                ));
            }
            let partition = mg.elements[0].partition().clone();
            let mut perms = Vec::new();
            for d in enumerate_diagonal(&partition, p)? {
                perms.push(mg.conj_permutation(&d)?);
            }
            Some(perms)
        }
        (ResolvedGroup::Coordinate(cg), Some(_)) => Some(cg.torus_permutations()?),
        (ResolvedGroup::Cyclic(_), Some(_)) => {
            return Err(Error::Invalid("cyclic groups carry no distinguished torus action".into()))
        }
    };

    match args.engine {
        EngineArg::Brute => {
            let table = resolved.table();
            let space = h2_brute(table, p, args.cap)?;
            match perms {
                None => out.dim = space.dim,
                Some(perms) => {
                    let cs = ClassSpace::new(table, p, &space)?;
                    let inv = invariant_subspace(table, p, &space, &cs, &perms)?;
                    out.dim = inv.dim;
                    out.full_dim = Some(space.dim);
                }
            }
        }
        EngineArg::Pc => {
            let (pc, _mg);
            let pc_ref: &PcGroup = match &resolved {
                ResolvedGroup::Matrix(mg) => {
                    if args.group == GroupArg::Gl {
                        return Err(Error::Invalid("the pc engine needs a p-group; gl is not one".into()));
                    }
                    let partition = mg.elements[0].partition().clone();
                    (pc, _mg) = pc_from_chief_series(&partition, p, ENUMERATION_CAP)?;
                    &pc
                }
                ResolvedGroup::Coordinate(cg) => {
                    pc = pc_group_of_coordinate(cg, p, args.group)?;
                    &pc
                }
                ResolvedGroup::Cyclic(table) => {
                    let r = (table.size() as f64).log(p as f64).round() as u32;
                    let gens: Vec<usize> = (0..r).map(|k| p_pow(p, k) as usize).collect();
                    pc = PcGroup::from_table(table, p, &gens)?;
                    &pc
                }
            };
            let coh = h2_pc(&pc_ref.pres)?;
            match perms {
                None => out.dim = coh.dim,
                Some(perms) => {
                    let inv = pc_invariant_subspace(pc_ref, &coh, &perms)?;
                    out.dim = inv.dim;
                    out.full_dim = Some(coh.dim);
                }
            }
        }
    }
    Ok(())
}

/// Polycyclic generating sequences for the named coordinate groups:
/// non-central coordinates first, commutator targets last.
fn pc_group_of_coordinate(cg: &CoordinateGroup, p: u64, kind: GroupArg) -> Result<PcGroup> {
    let gens: Vec<usize> = match kind {
        GroupArg::G1 => vec![cg.encode(&[1, 0]), cg.encode(&[0, 1])],
        GroupArg::G2 => vec![
            cg.encode(&[0, 1, 0, 0]),
            cg.encode(&[0, 0, 0, 1]),
            cg.encode(&[1, 0, 0, 0]),
            cg.encode(&[0, 0, 1, 0]),
        ],
        GroupArg::G3 => vec![
            cg.encode(&[0, 1, 0, 0, 0]),
            cg.encode(&[0, 0, 1, 0, 0]),
            cg.encode(&[0, 0, 0, 0, 1]),
            cg.encode(&[1, 0, 0, 0, 0]),
            cg.encode(&[0, 0, 0, 1, 0]),
        ],
        GroupArg::G4 => vec![
            cg.encode(&[0, 1, 0, 0, 0, 0]),
            cg.encode(&[0, 0, 1, 0, 0, 0]),
            cg.encode(&[0, 0, 0, 0, 0, 1]),
            cg.encode(&[1, 0, 0, 0, 0, 0]),
            cg.encode(&[0, 0, 0, 1, 0, 0]),
            cg.encode(&[0, 0, 0, 0, 1, 0]),
        ],
        _ => return Err(Error::Internal("not a coordinate group".into())),
    };
    PcGroup::from_table(&cg.table, p, &gens)
}

#[derive(Serialize)]
struct ChiefSeriesOutput {
    partition: String,
    prime: u64,
    order: &'static str,
    length: usize,
    /// Coordinate added at each level, lowest first.
    coords: Vec<String>,
    /// Subgroup orders p^0, p^1, …, p^len.
    subgroup_orders: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    derived_level: Option<usize>,
    verified: bool,
}

fn cmd_chief_series(args: ChiefSeriesArgs) -> Result<bool> {
    let partition = Partition::parse(&args.partition)?;
    let order = match args.order {
        OrderArg::To => SeriesOrder::Base,
        OrderArg::Mto => SeriesOrder::Modified,
    };
    let series = chief_series(&partition, args.prime, order, ENUMERATION_CAP)?;
    series.verify()?;
    let out = ChiefSeriesOutput {
        partition: partition.label(),
        prime: args.prime,
        order: if args.order == OrderArg::To { "to" } else { "mto" },
        length: series.len(),
        coords: series.coords.iter().map(|c| c.to_string()).collect(),
        subgroup_orders: (0..=series.len() as u32).map(|i| p_pow(args.prime, i)).collect(),
        derived_level: series.derived_level(),
        verified: true,
    };
    println!("{}", to_json(&out)?);
    Ok(true)
}

fn print_suite(report: &SuiteReport) {
    println!("suite {}", report.suite);
    let (mut pass, mut fail, mut skip) = (0usize, 0usize, 0usize);
    for c in &report.checks {
        match c.status.to_string().as_str() {
            "pass" => pass += 1,
            "fail" => fail += 1,
            _ => skip += 1,
        }
        println!("  {:<28} {:<8} expected: {:<42} computed: {} ({} ms)", c.id, c.status, c.expected, c.computed, c.ms);
    }
    println!("  {} checks: {pass} passed, {fail} failed, {skip} skipped", report.checks.len());
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let report = run_suite(args.suite.name(), args.prime)?;
    print_suite(&report);
    Ok(report.all_pass())
}

fn cmd_report(args: ReportArgs) -> Result<bool> {
    let reports = run_all(None)?;
    let body = match args.format {
        FormatArg::Json => merged_json(&reports)?,
        FormatArg::Csv => merged_csv(&reports)?,
    };
    fs::write(&args.out, &body)
        .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", args.out.display())))?;
    let mut all = true;
    for r in &reports {
        print_suite(r);
        all &= r.all_pass();
    }
    println!("report written to {}", args.out.display());
    Ok(all)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))
}
