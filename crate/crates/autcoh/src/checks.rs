//! Named verification registry behind the `verify` and `report` commands.
//!
//! Every check is a frozen fact with a stable string ID, grouped into four
//! suites:
//!
//! * `desk` — group orders, index-set counts, commutator subgroups, chief
//!   series, cyclic `H²`, the carry-class scaling law, and the invariant
//!   dimensions of the four named coordinate groups;
//! * `identity` — the dual-number matrix identity and the digit
//!   decomposition identities on Sylow groups;
//! * `hs` — instances of the extended five-term exact sequence;
//! * `criterion` — gap predictions against computed `H¹`, nonvanishing
//!   witnesses, natural-action values, annihilator bounds, and the
//!   invariant/stable vanishing route for `H²` of a full automorphism group.
//!
//! The runner recomputes each fact, compares against the frozen string, and
//! records `pass`/`fail`/`skipped` with wall time.  A computation refused by
//! a size cap reports `skipped`, never `fail`.  Output ordering is fixed by
//! check ID, so reports are byte-stable run over run.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::cohomology::brute::{coboundary_table, BRUTE_CAP};
use crate::cohomology::cochains::{
    carry_pullback, difference_table, digit_coboundary_table, multiple_table, product_table,
};
use crate::cohomology::group::{cyclic, g1, g2, g3, g4, quotient, CoordinateGroup};
use crate::cohomology::maps::{
    hs_exactness, invariant_subspace, pc_invariant_subspace, stable_subspace, ClassSpace, HsReport,
};
use crate::cohomology::{
    carry_cocycle, cyclic_class_sum, h1_dim, h2_brute, h2_pc, inflation_decomposition_check,
    is_coboundary, verify_cocycle, CohomologyInvariants, MatrixGroup, NaturalAction, PcGroup,
    SampleMode,
};
use crate::criteria::{
    annihilator_check, h1_nonvanishing_witness, h2_nonvanishing_witness, predict, ActionKind,
    Certificate, CERTIFICATE_CAP,
};
use crate::identity::{random_check, verify_proposition, verify_theorem};
use crate::series::{abelian_invariants, chief_series, det_mod, p_rank, Quotient, SeriesOrder};
use crate::structures::{enumerate_diagonal, group_order, AutMatrix, Coord, IndexSet, Partition};
use crate::{Error, Result};

/// The four suite names, in canonical order.
pub const SUITES: [&str; 4] = ["desk", "identity", "hs", "criterion"];

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// One executed check: frozen expectation, recomputed value, wall time.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub ms: u128,
}

/// All records of one suite, ordered by check ID.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    /// No check failed (skipped checks do not count as failures).
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))
    }

    /// CSV with columns `id,status,expected,computed,ms`.
    pub fn to_csv(&self) -> Result<String> {
        csv_of_checks(&self.checks)
    }
}

/// One JSON document holding several suite reports (the `report` command).
pub fn merged_json(reports: &[SuiteReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Internal(e.to_string()))
}

/// One CSV holding all checks of several suites, ordered by check ID.
pub fn merged_csv(reports: &[SuiteReport]) -> Result<String> {
    let mut all: Vec<CheckRecord> = reports.iter().flat_map(|r| r.checks.clone()).collect();
    all.sort_by(|a, b| a.id.cmp(&b.id));
    csv_of_checks(&all)
}

fn csv_of_checks(checks: &[CheckRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(["id", "status", "expected", "computed", "ms"]).map_err(io_err)?;
    for c in checks {
        w.write_record([&c.id, &c.status.to_string(), &c.expected, &c.computed, &c.ms.to_string()])
            .map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

struct Check {
    id: &'static str,
    suite: &'static str,
    /// The prime the instance lives at, for `--prime` filtering; `None` for
    /// prime-independent checks.
    prime: Option<u64>,
    expected: &'static str,
    run: fn() -> Result<String>,
}

/// Run one suite, optionally restricted to checks at a given prime.
pub fn run_suite(suite: &str, prime: Option<u64>) -> Result<SuiteReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Invalid(format!(
            "unknown suite `{suite}`; expected one of desk|identity|hs|criterion"
        )));
    }
    let mut selected: Vec<Check> = registry()
        .into_iter()
        .filter(|c| c.suite == suite && prime.map_or(true, |p| c.prime == Some(p)))
        .collect();
    selected.sort_by(|a, b| a.id.cmp(b.id));
    let mut checks = Vec::with_capacity(selected.len());
    for check in &selected {
        let start = Instant::now();
        let (status, computed) = match (check.run)() {
            Ok(value) if value == check.expected => (Status::Pass, value),
            Ok(value) => (Status::Fail, value),
            Err(e @ Error::CapExceeded { .. }) => (Status::Skipped, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        checks.push(CheckRecord {
            id: check.id.to_string(),
            status,
            expected: check.expected.to_string(),
            computed,
            ms: start.elapsed().as_millis(),
        });
    }
    Ok(SuiteReport { suite: suite.to_string(), checks })
}

/// Run every suite in canonical order.
pub fn run_all(prime: Option<u64>) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, prime)).collect()
}

// ---------------------------------------------------------------------------
// the registry
// ---------------------------------------------------------------------------

#[rustfmt::skip]
fn registry() -> Vec<Check> {
    vec![
        // desk: orders and counts
        Check { id: "order-sylow-2-1-p3", suite: "desk", prime: Some(3), expected: "27",
                run: || order_sylow(&[2, 1], 3) },
        Check { id: "order-aut-2-1-p3", suite: "desk", prime: Some(3), expected: "108",
                run: || order_full(&[2, 1], 3) },
        Check { id: "order-aut-2-1-p5", suite: "desk", prime: Some(5), expected: "2000",
                run: || order_full(&[2, 1], 5) },
        Check { id: "order-aut-3-1-p3", suite: "desk", prime: Some(3), expected: "324",
                run: || order_full(&[3, 1], 3) },
        Check { id: "order-torus-2-1-p3", suite: "desk", prime: Some(3), expected: "4",
                run: || order_torus(&[2, 1], 3) },
        Check { id: "index-set-2-1", suite: "desk", prime: None, expected: "s=3 t=2 t1=1",
                run: || index_counts(&[2, 1]) },
        Check { id: "index-set-2-1-1", suite: "desk", prime: None, expected: "s=6 t=3 t1=0",
                run: || index_counts(&[2, 1, 1]) },
        Check { id: "index-set-1-1-1", suite: "desk", prime: None, expected: "s=3 t=2 t1=0",
                run: || index_counts(&[1, 1, 1]) },
        // desk: commutator subgroups against the determinant-one subgroup
        Check { id: "commutator-gl2-z2", suite: "desk", prime: Some(2), expected: "order=3 sl=6 proper",
                run: || commutator_vs_sl(&[1, 1], 2) },
        Check { id: "commutator-gl2-z3", suite: "desk", prime: Some(3), expected: "order=24 sl=24 equal",
                run: || commutator_vs_sl(&[1, 1], 3) },
        Check { id: "commutator-gl2-z4", suite: "desk", prime: Some(2), expected: "order=24 sl=48 proper",
                run: || commutator_vs_sl(&[2, 2], 2) },
        Check { id: "commutator-gl2-z9", suite: "desk", prime: Some(3), expected: "order=648 sl=648 equal",
                run: || commutator_vs_sl(&[2, 2], 3) },
        Check { id: "commutator-gl3-z2", suite: "desk", prime: Some(2), expected: "order=168 sl=168 equal",
                run: || commutator_vs_sl(&[1, 1, 1], 2) },
        // desk: chief series
        Check { id: "chief-series-2-1-p3-to", suite: "desk", prime: Some(3), expected: "len=3 ok",
                run: || chief_check(&[2, 1], SeriesOrder::Base) },
        Check { id: "chief-series-2-1-p3-mto", suite: "desk", prime: Some(3), expected: "len=3 derived=1 ok",
                run: || chief_check(&[2, 1], SeriesOrder::Modified) },
        Check { id: "chief-series-2-1-1-p3-to", suite: "desk", prime: Some(3), expected: "len=6 ok",
                run: || chief_check(&[2, 1, 1], SeriesOrder::Base) },
        Check { id: "chief-series-2-1-1-p3-mto", suite: "desk", prime: Some(3), expected: "len=6 derived=3 ok",
                run: || chief_check(&[2, 1, 1], SeriesOrder::Modified) },
        Check { id: "sylow-ab-rank-2-1-p3", suite: "desk", prime: Some(3), expected: "rank=2 t=2 elementary",
                run: || sylow_ab_rank(&[2, 1]) },
        Check { id: "sylow-ab-rank-2-1-1-p3", suite: "desk", prime: Some(3), expected: "rank=3 t=3 elementary",
                run: || sylow_ab_rank(&[2, 1, 1]) },
        // desk: cyclic H² and the carry scaling law
        Check { id: "cyclic-h2-p3-e1", suite: "desk", prime: Some(3), expected: "dim=1",
                run: || cyclic_h2(3, 3) },
        Check { id: "cyclic-h2-p3-e2", suite: "desk", prime: Some(3), expected: "dim=1",
                run: || cyclic_h2(9, 3) },
        Check { id: "cyclic-h2-p5-e1", suite: "desk", prime: Some(5), expected: "dim=1",
                run: || cyclic_h2(5, 5) },
        Check { id: "cyclic-h2-p5-e2", suite: "desk", prime: Some(5), expected: "dim=1",
                run: || cyclic_h2(25, 5) },
        Check { id: "carry-multiples-p5", suite: "desk", prime: Some(5), expected: "sums=1,2,3,4 distinct",
                run: carry_multiples },
        Check { id: "carry-pullback-p5", suite: "desk", prime: Some(5), expected: "scaled-eq=1,7,18,24 identity-eq=1",
                run: carry_pullbacks },
        // desk: invariant dimensions of the named coordinate groups
        Check { id: "invariant-g1-p3", suite: "desk", prime: Some(3), expected: "dim=1",
                run: || invariant_dim_brute(g1(3)?) },
        Check { id: "invariant-g2-p3", suite: "desk", prime: Some(3), expected: "dim=0",
                run: || invariant_dim_brute(g2(3)?) },
        Check { id: "invariant-g3-p3", suite: "desk", prime: Some(3), expected: "dim=1",
                run: || invariant_dim_brute(g3(3)?) },
        Check { id: "invariant-g4-p3", suite: "desk", prime: Some(3), expected: "dim=2",
                run: invariant_dim_g4 },

        // identity
        Check { id: "identity-hand-n3", suite: "identity", prime: None, expected: "ok",
                run: identity_hand },
        Check { id: "identity-random-sweep", suite: "identity", prime: None, expected: "dims=2-5 trials=250 total=1000",
                run: identity_random },
        Check { id: "inflation-decomp-2-1-p3", suite: "identity", prime: Some(3), expected: "t1=1 pairs=729",
                run: || inflation_report(&[2, 1], SampleMode::Exhaustive) },
        Check { id: "inflation-decomp-3-2-1-p3", suite: "identity", prime: Some(3), expected: "t1=2 pairs=500",
                run: || inflation_report(&[3, 2, 1], SampleMode::Sampled { pairs: 500, seed: 0xDEC0 }) },
        Check { id: "inflation-decomp-1-1-1-p3", suite: "identity", prime: Some(3), expected: "matches pairs=729",
                run: inflation_heisenberg },
        Check { id: "digit-coboundaries-1-1-1-p3", suite: "identity", prime: Some(3), expected: "slots=3 all-coboundaries",
                run: digit_coboundaries_heisenberg },
        Check { id: "product-cocycle-1-1-1-p3", suite: "identity", prime: Some(3), expected: "coboundary certified",
                run: product_cocycle_heisenberg },

        // hs: exactness of the extended five-term sequence
        Check { id: "hs-cyclic-z9", suite: "hs", prime: Some(3),
                expected: "h1q=1 h1g=1 h1h=1 h2q=1 h2g=1 inf1=1 res1=0 tra=1 inf2=0 rtheta=1",
                run: hs_cyclic_tower },
        Check { id: "hs-chief-level1-2-1-p3", suite: "hs", prime: Some(3),
                expected: "h1q=2 h1g=2 h1h=1 h2q=3 h2g=4 inf1=2 res1=0 tra=1 inf2=2 rtheta=2",
                run: || chief_extension_report(1) },
        Check { id: "hs-chief-level2-2-1-p3", suite: "hs", prime: Some(3),
                expected: "h1q=1 h1g=2 h1h=1 h2q=1 h2g=3 inf1=1 res1=1 tra=0 inf2=1 rtheta=2",
                run: || chief_extension_report(2) },
        Check { id: "hs-chief-level3-2-1-p3", suite: "hs", prime: Some(3),
                expected: "h1q=0 h1g=1 h1h=1 h2q=0 h2g=1 inf1=0 res1=1 tra=0 inf2=0 rtheta=1",
                run: || chief_extension_report(3) },

        // criterion: closed-form predictions
        Check { id: "predict-table", suite: "criterion", prime: None,
                expected: "nonvanishes vanishes unknown unknown vanishes vanishes unknown nonvanishes",
                run: predict_table },
        Check { id: "criterion-h1-p3-1", suite: "criterion", prime: Some(3), expected: "vanishes h1=0",
                run: || criterion_h1(&[1], 3) },
        Check { id: "criterion-h1-p3-1-1", suite: "criterion", prime: Some(3), expected: "vanishes h1=0",
                run: || criterion_h1(&[1, 1], 3) },
        Check { id: "criterion-h1-p3-2", suite: "criterion", prime: Some(3), expected: "nonvanishes h1=1",
                run: || criterion_h1(&[2], 3) },
        Check { id: "criterion-h1-p3-2-1", suite: "criterion", prime: Some(3), expected: "vanishes h1=0",
                run: || criterion_h1(&[2, 1], 3) },
        Check { id: "criterion-h1-p3-3-1", suite: "criterion", prime: Some(3), expected: "nonvanishes h1=1",
                run: || criterion_h1(&[3, 1], 3) },
        Check { id: "criterion-h1-p5-1", suite: "criterion", prime: Some(5), expected: "vanishes h1=0",
                run: || criterion_h1(&[1], 5) },
        Check { id: "criterion-h1-p5-1-1", suite: "criterion", prime: Some(5), expected: "vanishes h1=0",
                run: || criterion_h1(&[1, 1], 5) },
        Check { id: "criterion-h1-p5-2", suite: "criterion", prime: Some(5), expected: "nonvanishes h1=1",
                run: || criterion_h1(&[2], 5) },
        Check { id: "criterion-h1-p5-2-1", suite: "criterion", prime: Some(5), expected: "vanishes h1=0",
                run: || criterion_h1(&[2, 1], 5) },
        // |G_(3,1)(5)| = 10000 exceeds the 5000 cap: reported as skipped
        Check { id: "criterion-h1-p5-3-1", suite: "criterion", prime: Some(5), expected: "nonvanishes h1=1",
                run: || criterion_h1(&[3, 1], 5) },
        // criterion: constructive witnesses
        Check { id: "h1-witness-3-1-p3", suite: "criterion", prime: Some(3), expected: "hom gen=2",
                run: h1_witness_31 },
        Check { id: "h2-witness-2-p3", suite: "criterion", prime: Some(3), expected: "cyclic block=1 order=6 sum=1",
                run: || h2_witness(&[2]) },
        Check { id: "h2-witness-3-p3", suite: "criterion", prime: Some(3), expected: "cyclic block=1 order=18 sum=1",
                run: || h2_witness(&[3]) },
        Check { id: "h2-witness-3-1-p3", suite: "criterion", prime: Some(3), expected: "exact-solve order=324",
                run: || h2_witness(&[3, 1]) },
        // criterion: natural action
        Check { id: "natural-gl2-z2", suite: "criterion", prime: Some(2), expected: "h1=[] h2=[]",
                run: || natural_full(&[1, 1], 2) },
        Check { id: "natural-gl2-z3", suite: "criterion", prime: Some(3), expected: "h1=[] h2=[]",
                run: || natural_full(&[1, 1], 3) },
        Check { id: "natural-sign-2-1-p2", suite: "criterion", prime: Some(2), expected: "h1=[2,2] h2=[2,2]",
                run: natural_sign_21 },
        Check { id: "natural-aut-z4", suite: "criterion", prime: Some(2), expected: "h1=[2] h2=[2]",
                run: natural_aut_z4 },
        Check { id: "natural-jordan-p3", suite: "criterion", prime: Some(3), expected: "h1=[3] h2=[3]",
                run: natural_jordan },
        Check { id: "annihilator-gl2-z3-q2", suite: "criterion", prime: Some(3), expected: "deg1=true deg2=true",
                run: annihilator_gl2_z3 },
        Check { id: "annihilator-sign-z4-q3", suite: "criterion", prime: Some(2), expected: "deg1=true deg2=true",
                run: annihilator_sign },
        // criterion: stable classes and the vanishing route
        Check { id: "stable-gl2-z3", suite: "criterion", prime: Some(3), expected: "h2p=1 stable=0 h2g=0",
                run: stable_gl2_z3 },
        Check { id: "stable-sylow-2-1-p3", suite: "criterion", prime: Some(3), expected: "h2p=4 stable=4",
                run: stable_sylow_self },
        Check { id: "vanishing-2-1-p5", suite: "criterion", prime: Some(5), expected: "h2p=4 inv=0 stable=0",
                run: vanishing_route_21_p5 },
    ]
}

// ---------------------------------------------------------------------------
// desk runners
// ---------------------------------------------------------------------------

fn order_full(parts: &[u32], p: u64) -> Result<String> {
    let partition = Partition::new(parts)?;
    let formula = group_order(&partition, p);
    let full = MatrixGroup::full(&partition, p, 1 << 14)?;
    if full.table.size() as u128 != formula {
        return Err(Error::Inconsistent(format!(
            "enumerated {} elements, order formula gives {formula}",
            full.table.size()
        )));
    }
    Ok(formula.to_string())
}

fn order_sylow(parts: &[u32], p: u64) -> Result<String> {
    let partition = Partition::new(parts)?;
    let sylow = MatrixGroup::sylow(&partition, p, 1 << 14)?;
    let coords = IndexSet::new(&partition).coords().len() as u32;
    if sylow.table.size() as u128 != (p as u128).pow(coords) {
        return Err(Error::Inconsistent(format!(
            "enumerated {} elements, p^|S| gives {}",
            sylow.table.size(),
            (p as u128).pow(coords)
        )));
    }
    Ok(sylow.table.size().to_string())
}

fn order_torus(parts: &[u32], p: u64) -> Result<String> {
    let partition = Partition::new(parts)?;
    let torus = enumerate_diagonal(&partition, p)?;
    let formula = (p - 1).pow(partition.rank() as u32) as usize;
    if torus.len() != formula {
        return Err(Error::Inconsistent(format!(
            "enumerated {} diagonal elements, (p-1)^r gives {formula}",
            torus.len()
        )));
    }
    Ok(torus.len().to_string())
}

fn index_counts(parts: &[u32]) -> Result<String> {
    let partition = Partition::new(parts)?;
    let index = IndexSet::new(&partition);
    let s = index.coords().len();
    let t = s - index.s_minus_t().len();
    let t1 = index.t1().len();
    Ok(format!("s={s} t={t} t1={t1}"))
}

fn commutator_vs_sl(parts: &[u32], p: u64) -> Result<String> {
    let partition = Partition::new(parts)?;
    let full = MatrixGroup::full(&partition, p, 1 << 22)?;
    let derived = full.table.commutator_subgroup();
    let mut sl = 0usize;
    for m in &full.elements {
        if det_mod(m)? == 1 {
            sl += 1;
        }
    }
    // commutators always have determinant one, so counting decides containment
    let relation = if derived.len() == sl { "equal" } else { "proper" };
    Ok(format!("order={} sl={sl} {relation}", derived.len()))
}

fn chief_check(parts: &[u32], order: SeriesOrder) -> Result<String> {
    let partition = Partition::new(parts)?;
    let series = chief_series(&partition, 3, order, 1 << 14)?;
    series.verify()?;
    match series.derived_level() {
        Some(dl) => {
            let whole = series.subgroups[series.len()].clone();
            let sylow = MatrixGroup::from_elements("P", whole)?;
            let derived: HashSet<&AutMatrix> = sylow
                .table
                .commutator_subgroup()
                .into_iter()
                .map(|i| &sylow.elements[i])
                .collect();
            let level: HashSet<&AutMatrix> = series.subgroups[dl].iter().collect();
            if derived != level {
                return Err(Error::Inconsistent(
                    "the pinned chief-series level differs from the derived subgroup".into(),
                ));
            }
            Ok(format!("len={} derived={dl} ok", series.len()))
        }
        None => Ok(format!("len={} ok", series.len())),
    }
}

fn sylow_ab_rank(parts: &[u32]) -> Result<String> {
    let p = 3u64;
    let partition = Partition::new(parts)?;
    let sylow = MatrixGroup::sylow(&partition, p, 1 << 14)?;
    let derived: Vec<AutMatrix> = sylow
        .table
        .commutator_subgroup()
        .into_iter()
        .map(|i| sylow.elements[i].clone())
        .collect();
    let q = Quotient::new(&sylow.elements, &derived)?;
    let invariants = abelian_invariants(&q)?;
    let rank = p_rank(&invariants, p);
    let index = IndexSet::new(&partition);
    let t = index.coords().len() - index.s_minus_t().len();
    let shape = if invariants.iter().all(|&o| o == p) { "elementary" } else { "mixed" };
    Ok(format!("rank={rank} t={t} {shape}"))
}

fn cyclic_h2(n: u64, p: u64) -> Result<String> {
    let g = cyclic(n)?;
    let space = h2_brute(&g, p, BRUTE_CAP)?;
    Ok(format!("dim={}", space.dim))
}

fn carry_multiples() -> Result<String> {
    let p = 5u64;
    let (g, f) = carry_cocycle(p, 2)?;
    verify_cocycle(&g, p, &f)?;
    let mut sums = Vec::new();
    for k in 1..p {
        let kf = multiple_table(&f, k, p);
        sums.push(cyclic_class_sum(&g, p, &kf, 1).to_string());
        for k2 in 1..k {
            let d = difference_table(&kf, &multiple_table(&f, k2, p), p);
            if is_coboundary(&g, p, &d)?.is_some() {
                return Err(Error::Inconsistent(format!("{k}·f and {k2}·f are cohomologous")));
            }
        }
    }
    Ok(format!("sums={} distinct", sums.join(",")))
}

fn carry_pullbacks() -> Result<String> {
    let p = 5u64;
    let (g, f) = carry_cocycle(p, 2)?;
    let mut scaled = Vec::new();
    let mut ident = Vec::new();
    // the units of (Z/25)^* of order dividing 4, one per residue mod 5
    for sigma in [1u64, 7, 18, 24] {
        let pulled = carry_pullback(p, 2, sigma)?;
        verify_cocycle(&g, p, &pulled)?;
        let d = difference_table(&pulled, &multiple_table(&f, sigma % p, p), p);
        if is_coboundary(&g, p, &d)?.is_some() {
            scaled.push(sigma.to_string());
        }
        let d0 = difference_table(&pulled, &f, p);
        if is_coboundary(&g, p, &d0)?.is_some() {
            ident.push(sigma.to_string());
        }
    }
    Ok(format!("scaled-eq={} identity-eq={}", scaled.join(","), ident.join(",")))
}

fn invariant_dim_brute(cg: CoordinateGroup) -> Result<String> {
    let p = cg.p();
    let space = h2_brute(&cg.table, p, BRUTE_CAP)?;
    let cs = ClassSpace::new(&cg.table, p, &space)?;
    let perms = cg.torus_permutations()?;
    let inv = invariant_subspace(&cg.table, p, &space, &cs, &perms)?;
    Ok(format!("dim={}", inv.dim))
}

fn invariant_dim_g4() -> Result<String> {
    let cg = g4(3)?;
    // polycyclic generating sequence: non-central coordinates first, the
    // central ones (commutator targets a, d, e) last
    let gens = [
        cg.encode(&[0, 1, 0, 0, 0, 0]),
        cg.encode(&[0, 0, 1, 0, 0, 0]),
        cg.encode(&[0, 0, 0, 0, 0, 1]),
        cg.encode(&[1, 0, 0, 0, 0, 0]),
        cg.encode(&[0, 0, 0, 1, 0, 0]),
        cg.encode(&[0, 0, 0, 0, 1, 0]),
    ];
    let pc = PcGroup::from_table(&cg.table, 3, &gens)?;
    let coh = h2_pc(&pc.pres)?;
    let perms = cg.torus_permutations()?;
    let inv = pc_invariant_subspace(&pc, &coh, &perms)?;
    Ok(format!("dim={}", inv.dim))
}

// ---------------------------------------------------------------------------
// identity runners
// ---------------------------------------------------------------------------

fn identity_hand() -> Result<String> {
    let a: [i128; 9] = [0, 2, -1, 3, 0, 4, 1, -2, 0];
    let b: [i128; 9] = [0, -3, 5, 2, 0, 1, -4, 6, 0];
    verify_proposition(3, &a, &b, &[5, -7, 2], &[-1, 3, 8])?;
    verify_theorem(3, &a, &b)?;
    Ok("ok".into())
}

fn identity_random() -> Result<String> {
    let report = random_check(5, 250, 0xC0FFEE)?;
    let first = report.dimensions.first().copied().unwrap_or(0);
    let last = report.dimensions.last().copied().unwrap_or(0);
    Ok(format!(
        "dims={first}-{last} trials={} total={}",
        report.trials_per_dimension, report.total_instances
    ))
}

fn inflation_report(parts: &[u32], mode: SampleMode) -> Result<String> {
    let partition = Partition::new(parts)?;
    let rep = inflation_decomposition_check(&partition, 3, mode)?;
    Ok(format!("t1={} pairs={}", rep.t1.len(), rep.pairs_checked))
}

/// The three strictly-lower digit slots of the unipotent 3×3 group.
fn heisenberg_slots() -> (Coord, Coord, Coord) {
    let c21 = Coord { l: 0, i: 2, j: 1, m: 1, n: 1 };
    let c32 = Coord { l: 0, i: 3, j: 2, m: 1, n: 1 };
    let c31 = Coord { l: 0, i: 3, j: 1, m: 1, n: 1 };
    (c21, c32, c31)
}

fn inflation_heisenberg() -> Result<String> {
    let partition = Partition::new(&[1, 1, 1])?;
    let group = MatrixGroup::sylow(&partition, 3, 1 << 14)?;
    let (c21, c32, c31) = heisenberg_slots();
    // on the single-block staircase the decomposition identity collapses to
    // ∂w₃₁ = w₃₂ ⊗ w₂₁, checked entry by entry
    let v = digit_coboundary_table(&group, 3, &c31);
    let u = product_table(&group, 3, &c32, &c21);
    if u != v {
        return Err(Error::Inconsistent("the corner coboundary is not the digit pairing".into()));
    }
    let n = group.table.size();
    Ok(format!("matches pairs={}", n * n))
}

fn digit_coboundaries_heisenberg() -> Result<String> {
    let partition = Partition::new(&[1, 1, 1])?;
    let group = MatrixGroup::sylow(&partition, 3, 1 << 14)?;
    let index = IndexSet::new(&partition);
    let mut count = 0usize;
    for s in index.coords() {
        let v = digit_coboundary_table(&group, 3, s);
        verify_cocycle(&group.table, 3, &v)?;
        if is_coboundary(&group.table, 3, &v)?.is_none() {
            return Err(Error::Inconsistent(format!("v_{s} is not a coboundary")));
        }
        count += 1;
    }
    Ok(format!("slots={count} all-coboundaries"))
}

fn product_cocycle_heisenberg() -> Result<String> {
    let partition = Partition::new(&[1, 1, 1])?;
    let group = MatrixGroup::sylow(&partition, 3, 1 << 14)?;
    let (c21, c32, _) = heisenberg_slots();
    let u = product_table(&group, 3, &c32, &c21);
    verify_cocycle(&group.table, 3, &u)?;
    let Some(phi) = is_coboundary(&group.table, 3, &u)? else {
        return Err(Error::Inconsistent("the digit pairing is not a coboundary".into()));
    };
    if coboundary_table(&group.table, 3, &phi) != u {
        return Err(Error::Inconsistent("the certificate does not reproduce the pairing".into()));
    }
    Ok("coboundary certified".into())
}

// ---------------------------------------------------------------------------
// hs runners
// ---------------------------------------------------------------------------

fn fmt_hs(r: &HsReport) -> String {
    format!(
        "h1q={} h1g={} h1h={} h2q={} h2g={} inf1={} res1={} tra={} inf2={} rtheta={}",
        r.h1_q,
        r.h1_g,
        r.h1_h,
        r.h2_q,
        r.h2_g,
        r.rank_inf1,
        r.rank_res1,
        r.rank_tra,
        r.rank_inf2,
        r.rank_res_theta
    )
}

fn hs_cyclic_tower() -> Result<String> {
    let g = cyclic(9)?;
    let report = hs_exactness(&g, &[0, 3, 6], 3, BRUTE_CAP)?;
    Ok(fmt_hs(&report))
}

/// The central extension `1 → N_i/N_{i-1} → P/N_{i-1} → P/N_i → 1` cut from
/// the modified-order chief series of `P_(2,1)` at p = 3 (levels i = 1..3).
fn chief_extension_report(level: usize) -> Result<String> {
    let partition = Partition::new(&[2, 1])?;
    let series = chief_series(&partition, 3, SeriesOrder::Modified, 1 << 14)?;
    if level == 0 || level > series.len() {
        return Err(Error::Invalid(format!("level must be in 1..={}", series.len())));
    }
    let whole = series.subgroups[series.len()].clone();
    let sylow = MatrixGroup::from_elements("P", whole)?;
    let locate = |members: &[AutMatrix]| -> Result<Vec<usize>> {
        members
            .iter()
            .map(|m| {
                sylow
                    .index_of(m)
                    .ok_or_else(|| Error::Internal("series element missing from the group".into()))
            })
            .collect()
    };
    let kernel = locate(&series.subgroups[level])?;
    let report = if level == 1 {
        hs_exactness(&sylow.table, &kernel, 3, BRUTE_CAP)?
    } else {
        let normal = locate(&series.subgroups[level - 1])?;
        let q = quotient(&sylow.table, &normal, "P/N")?;
        let mut h_members: Vec<usize> = kernel.iter().map(|&i| q.proj[i]).collect();
        h_members.sort_unstable();
        h_members.dedup();
        hs_exactness(&q.table, &h_members, 3, BRUTE_CAP)?
    };
    Ok(fmt_hs(&report))
}

// ---------------------------------------------------------------------------
// criterion runners
// ---------------------------------------------------------------------------

fn predict_table() -> Result<String> {
    let rows: [(&[u32], u64, u8, ActionKind); 8] = [
        (&[3, 1], 5, 2, ActionKind::Trivial),
        (&[2, 1], 5, 2, ActionKind::Trivial),
        (&[2, 1], 3, 2, ActionKind::Trivial),
        (&[2, 1], 2, 1, ActionKind::Trivial),
        (&[3, 2, 1], 5, 2, ActionKind::Trivial),
        (&[2, 1], 3, 2, ActionKind::Natural),
        (&[2, 1], 2, 2, ActionKind::Natural),
        (&[2], 3, 1, ActionKind::Trivial),
    ];
    let mut verdicts = Vec::with_capacity(rows.len());
    for (parts, p, degree, action) in rows {
        let partition = Partition::new(parts)?;
        verdicts.push(predict(&partition, p, degree, action)?.verdict.to_string());
    }
    Ok(verdicts.join(" "))
}

fn criterion_h1(parts: &[u32], p: u64) -> Result<String> {
    let partition = Partition::new(parts)?;
    let prediction = predict(&partition, p, 1, ActionKind::Trivial)?;
    let full = MatrixGroup::full(&partition, p, 5000)?;
    let dim = h1_dim(&full.table, p)?;
    Ok(format!("{} h1={dim}", prediction.verdict))
}

fn h1_witness_31() -> Result<String> {
    let partition = Partition::new(&[3, 1])?;
    let witness = h1_nonvanishing_witness(&partition, 3)?;
    let full = MatrixGroup::full(&partition, 3, 1 << 14)?;
    let n = full.table.size();
    let values: Vec<u64> = full
        .elements
        .iter()
        .map(|m| witness.eval(m))
        .collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            if values[full.table.mul(i, j)] != (values[i] + values[j]) % 3 {
                return Err(Error::Inconsistent(format!(
                    "witness is not a homomorphism at pair ({i}, {j})"
                )));
            }
        }
    }
    let gen_value = witness.eval(&witness.generator()?)?;
    if gen_value == 0 {
        return Err(Error::Inconsistent("witness vanishes on its designated generator".into()));
    }
    Ok(format!("hom gen={gen_value}"))
}

fn h2_witness(parts: &[u32]) -> Result<String> {
    let partition = Partition::new(parts)?;
    let (_, certificate) = h2_nonvanishing_witness(&partition, 3, CERTIFICATE_CAP)?;
    Ok(match certificate {
        Certificate::CyclicRestriction { block, order, class_sum } => {
            format!("cyclic block={block} order={order} sum={class_sum}")
        }
        Certificate::ExactSolve { group_order } => format!("exact-solve order={group_order}"),
    })
}

fn fmt_orders(inv: &CohomologyInvariants) -> String {
    let orders: Vec<String> = inv.orders.iter().map(ToString::to_string).collect();
    format!("[{}]", orders.join(","))
}

fn natural_report(group: MatrixGroup) -> Result<String> {
    let action = NaturalAction::new(group)?;
    Ok(format!("h1={} h2={}", fmt_orders(&action.h1()?), fmt_orders(&action.h2()?)))
}

fn natural_full(parts: &[u32], p: u64) -> Result<String> {
    let partition = Partition::new(parts)?;
    natural_report(MatrixGroup::full(&partition, p, 1 << 14)?)
}

fn natural_sign_21() -> Result<String> {
    let partition = Partition::new(&[2, 1])?;
    let id = AutMatrix::identity(&partition, 2)?;
    let minus = AutMatrix::from_entries(&partition, 2, vec![3, 0, 0, 1])?;
    natural_report(MatrixGroup::from_elements("sign", vec![id, minus])?)
}

fn natural_aut_z4() -> Result<String> {
    let partition = Partition::new(&[2])?;
    let id = AutMatrix::identity(&partition, 2)?;
    let minus = AutMatrix::from_entries(&partition, 2, vec![3])?;
    natural_report(MatrixGroup::from_elements("aut-z4", vec![id, minus])?)
}

fn natural_jordan() -> Result<String> {
    let partition = Partition::new(&[1, 1])?;
    let id = AutMatrix::identity(&partition, 3)?;
    let j = AutMatrix::from_entries(&partition, 3, vec![1, 0, 1, 1])?;
    let jj = j.mul(&j);
    natural_report(MatrixGroup::from_elements("jordan", vec![id, j, jj])?)
}

fn annihilator_gl2_z3() -> Result<String> {
    let partition = Partition::new(&[1, 1])?;
    let full = MatrixGroup::full(&partition, 3, 1 << 14)?;
    let d1 = annihilator_check(full.clone(), 2, 1)?;
    let d2 = annihilator_check(full, 2, 2)?;
    Ok(format!("deg1={d1} deg2={d2}"))
}

fn annihilator_sign() -> Result<String> {
    let partition = Partition::new(&[2, 1])?;
    let id = AutMatrix::identity(&partition, 2)?;
    let minus = AutMatrix::from_entries(&partition, 2, vec![3, 0, 0, 1])?;
    let group = MatrixGroup::from_elements("sign", vec![id, minus])?;
    let d1 = annihilator_check(group.clone(), 3, 1)?;
    let d2 = annihilator_check(group, 3, 2)?;
    Ok(format!("deg1={d1} deg2={d2}"))
}

fn sylow_members(full: &MatrixGroup) -> Vec<usize> {
    (0..full.table.size()).filter(|&i| full.elements[i].is_unipotent_mod_p()).collect()
}

fn stable_gl2_z3() -> Result<String> {
    let partition = Partition::new(&[1, 1])?;
    let full = MatrixGroup::full(&partition, 3, 1 << 14)?;
    let stable = stable_subspace(&full.table, &sylow_members(&full), 3, BRUTE_CAP)?;
    let direct = h2_brute(&full.table, 3, BRUTE_CAP)?;
    Ok(format!("h2p={} stable={} h2g={}", stable.space.dim, stable.dim, direct.dim))
}

fn stable_sylow_self() -> Result<String> {
    let partition = Partition::new(&[2, 1])?;
    let sylow = MatrixGroup::sylow(&partition, 3, 1 << 14)?;
    let all: Vec<usize> = (0..sylow.table.size()).collect();
    let stable = stable_subspace(&sylow.table, &all, 3, BRUTE_CAP)?;
    Ok(format!("h2p={} stable={}", stable.space.dim, stable.dim))
}

/// `H²(P, F₅)^D = 0` and stability over the full group force
/// `H²(G_(2,1)(F₅), F₅) = 0` without ever solving on the 2000-element group.
fn vanishing_route_21_p5() -> Result<String> {
    let p = 5u64;
    let partition = Partition::new(&[2, 1])?;
    let sylow = MatrixGroup::sylow(&partition, p, 1 << 14)?;
    let space = h2_brute(&sylow.table, p, BRUTE_CAP)?;
    let cs = ClassSpace::new(&sylow.table, p, &space)?;
    let mut perms = Vec::new();
    for d in enumerate_diagonal(&partition, p)? {
        perms.push(sylow.conj_permutation(&d)?);
    }
    let inv = invariant_subspace(&sylow.table, p, &space, &cs, &perms)?;
    let full = MatrixGroup::full(&partition, p, 1 << 14)?;
    let stable = stable_subspace(&full.table, &sylow_members(&full), p, BRUTE_CAP)?;
    Ok(format!("h2p={} inv={} stable={}", space.dim, inv.dim, stable.dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_sorted_per_suite_and_well_formed() {
        let checks = registry();
        let mut ids = HashSet::new();
        for c in &checks {
            assert!(SUITES.contains(&c.suite), "unknown suite {}", c.suite);
            assert!(ids.insert(c.id), "duplicate id {}", c.id);
            assert!(!c.expected.is_empty(), "{} has no frozen expectation", c.id);
            assert!(
                c.id.chars().all(|ch| ch.is_ascii_lowercase() || ch.is_ascii_digit() || ch == '-'),
                "{} is not kebab-case",
                c.id
            );
        }
    }

    #[test]
    fn identity_suite_passes() {
        let report = run_suite("identity", None).unwrap();
        assert_eq!(report.checks.len(), 7);
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "{}: {} vs {}", c.id, c.expected, c.computed);
        }
        assert!(report.all_pass());
    }

    #[test]
    fn prime_filter_restricts_checks() {
        let all = run_suite("identity", None).unwrap();
        let p3 = run_suite("identity", Some(3)).unwrap();
        assert!(p3.checks.len() < all.checks.len());
        assert!(p3.checks.iter().all(|c| c.id.contains("p3")));
    }

    #[test]
    fn unknown_suite_is_invalid() {
        assert!(matches!(run_suite("nope", None), Err(Error::Invalid(_))));
    }

    #[test]
    fn report_serialization_shapes() {
        let report = SuiteReport {
            suite: "desk".into(),
            checks: vec![CheckRecord {
                id: "example".into(),
                status: Status::Pass,
                expected: "1".into(),
                computed: "1".into(),
                ms: 5,
            }],
        };
        let json: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        assert_eq!(json["suite"], "desk");
        assert_eq!(json["checks"][0]["id"], "example");
        assert_eq!(json["checks"][0]["status"], "pass");
        assert_eq!(json["checks"][0]["ms"], 5);
        let csv = report.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("id,status,expected,computed,ms"));
        assert_eq!(lines.next(), Some("example,pass,1,1,5"));
        let merged = merged_csv(&[report.clone(), report]).unwrap();
        assert_eq!(merged.lines().count(), 3);
    }
}
