//! Runs checks over seeded ensembles and aggregates the results.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::eigen::spectral_norm;
use crate::ensembles::{generate_matrix, generate_pair, EnsembleKind, EnsembleSpec};
use crate::error::{Error, Hypothesis, Result};
use crate::lab::checks::{self, CheckOpts, SpecialForm};
use crate::lab::report::InequalityReport;
use crate::matrix::CMat;
use crate::norms::NormSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    BasicBounds,
    Kittaneh,
    Dragomir,
    InfUpper,
    LowerBound,
    Chain,
    Commutator,
    UnitaryCommutator,
    SelfCommutator,
    Product,
    CommutingProduct,
    OmegaUpper,
    WOmegaChain,
    OmegaEquality,
    SpecialForms,
    C2Corollary,
    HsIdentity,
}

impl CheckId {
    pub const ALL: [CheckId; 17] = [
        CheckId::BasicBounds,
        CheckId::Kittaneh,
        CheckId::Dragomir,
        CheckId::InfUpper,
        CheckId::LowerBound,
        CheckId::Chain,
        CheckId::Commutator,
        CheckId::UnitaryCommutator,
        CheckId::SelfCommutator,
        CheckId::Product,
        CheckId::CommutingProduct,
        CheckId::OmegaUpper,
        CheckId::WOmegaChain,
        CheckId::OmegaEquality,
        CheckId::SpecialForms,
        CheckId::C2Corollary,
        CheckId::HsIdentity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckId::BasicBounds => "basic_bounds",
            CheckId::Kittaneh => "kittaneh",
            CheckId::Dragomir => "dragomir",
            CheckId::InfUpper => "inf_upper",
            CheckId::LowerBound => "lower_bound",
            CheckId::Chain => "chain",
            CheckId::Commutator => "commutator",
            CheckId::UnitaryCommutator => "unitary_commutator",
            CheckId::SelfCommutator => "self_commutator",
            CheckId::Product => "product",
            CheckId::CommutingProduct => "commuting_product",
            CheckId::OmegaUpper => "omega_upper",
            CheckId::WOmegaChain => "w_omega_chain",
            CheckId::OmegaEquality => "omega_equality",
            CheckId::SpecialForms => "special_forms",
            CheckId::C2Corollary => "c2_corollary",
            CheckId::HsIdentity => "hs_identity",
        }
    }

    /// Norm ids swept by default for checks parameterized by a norm; empty for
    /// checks with a fixed norm.
    pub fn default_norms(self) -> &'static [&'static str] {
        match self {
            CheckId::InfUpper => &["op", "schatten:2", "schatten:1"],
            CheckId::LowerBound
            | CheckId::Chain
            | CheckId::Commutator
            | CheckId::UnitaryCommutator
            | CheckId::SelfCommutator
            | CheckId::Product
            | CheckId::CommutingProduct => &["op", "schatten:2"],
            _ => &[],
        }
    }

    pub fn takes_norm(self) -> bool {
        !self.default_norms().is_empty()
    }

    /// Whether samples of `kind` (after the adapters below) satisfy the
    /// structural hypotheses of this check.
    pub fn applies_to(self, kind: EnsembleKind) -> bool {
        match self {
            CheckId::Chain | CheckId::Commutator | CheckId::Product | CheckId::C2Corollary => true,
            CheckId::UnitaryCommutator => kind.is_hermitian() || kind.is_pair(),
            CheckId::CommutingProduct => kind.is_pair(),
            CheckId::SpecialForms => special_form(kind).is_some(),
            _ => !kind.is_pair(),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parse {
                field: "checks".into(),
                message: format!("unknown check {s:?}"),
            })
    }
}

/// The closed-form identity exercised by `special_forms` on each kind.
pub fn special_form(kind: EnsembleKind) -> Option<SpecialForm> {
    match kind {
        EnsembleKind::Normal | EnsembleKind::HaarUnitary => Some(SpecialForm::Normal),
        EnsembleKind::SquareZero => Some(SpecialForm::SquareZero),
        EnsembleKind::Hermitian | EnsembleKind::HermitianContraction => Some(SpecialForm::SelfAdjoint),
        _ => None,
    }
}

pub const DEFAULT_ENSEMBLES: [&str; 10] = [
    "ginibre:2",
    "ginibre:4",
    "ginibre:6",
    "hermitian:4",
    "normal:4",
    "unitary:3",
    "nil:4",
    "contraction:4",
    "commute:4",
    "anticommute:4",
];

pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_TRIALS: usize = 100;

/// Relative deviation under which a Omega-equality input is recorded.
pub const NEAR_EQUALITY_TOL: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Ensembles to sample; their seeds are replaced by `base_seed + trial`.
    pub ensembles: Vec<EnsembleSpec>,
    pub checks: Vec<CheckId>,
    /// Norms for norm-parameterized checks; `None` uses each check's defaults.
    pub norms: Option<Vec<NormSpec>>,
    pub trials: usize,
    pub base_seed: u64,
    pub opts: CheckOpts,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            ensembles: DEFAULT_ENSEMBLES
                .iter()
                .map(|id| EnsembleSpec::parse(id, 0).expect("valid default ensemble"))
                .collect(),
            checks: CheckId::ALL.to_vec(),
            norms: None,
            trials: DEFAULT_TRIALS,
            base_seed: DEFAULT_SEED,
            opts: CheckOpts::default(),
        }
    }
}

/// Inputs handed to a check for one trial.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckInput {
    Single(CMat),
    Pair(CMat, CMat),
    Special(CMat, SpecialForm),
}

fn to_unit_ball(a: CMat) -> CMat {
    let n = spectral_norm(&a);
    if n > 1.0 {
        a.scale_real(1.0 / n)
    } else {
        a
    }
}

/// Draws the input of `check` from `spec`. Checks that need operator-norm
/// contractions rescale samples with norm above one onto the unit sphere.
pub fn prepare_input(check: CheckId, spec: &EnsembleSpec) -> Result<CheckInput> {
    Ok(match check {
        CheckId::Chain
        | CheckId::Commutator
        | CheckId::Product
        | CheckId::C2Corollary
        | CheckId::CommutingProduct => {
            let (t, s) = generate_pair(spec)?;
            CheckInput::Pair(t, s)
        }
        CheckId::UnitaryCommutator => {
            let (t, s) = generate_pair(spec)?;
            CheckInput::Pair(to_unit_ball(t), to_unit_ball(s))
        }
        CheckId::SelfCommutator => CheckInput::Single(to_unit_ball(generate_matrix(spec)?)),
        CheckId::SpecialForms => {
            let form = special_form(spec.kind).ok_or(Error::Inapplicable(Hypothesis::Normal))?;
            CheckInput::Special(generate_matrix(spec)?, form)
        }
        _ => CheckInput::Single(generate_matrix(spec)?),
    })
}

/// Dispatches `check` on `input`.
pub fn run_check(check: CheckId, input: &CheckInput, norm: Option<&NormSpec>, opts: &CheckOpts) -> Result<Vec<InequalityReport>> {
    let norm_or_op = || norm.cloned().unwrap_or_else(NormSpec::operator);
    let wrong_input = || Error::InvalidMatrix(format!("check {check} received the wrong kind of input"));
    match (check, input) {
        (CheckId::BasicBounds, CheckInput::Single(t)) => checks::check_basic_bounds(t, opts),
        (CheckId::Kittaneh, CheckInput::Single(t)) => checks::check_kittaneh(t, opts),
        (CheckId::Dragomir, CheckInput::Single(t)) => checks::check_dragomir(t, opts),
        (CheckId::InfUpper, CheckInput::Single(t)) => checks::check_inf_upper(t, &norm_or_op(), opts),
        (CheckId::LowerBound, CheckInput::Single(t)) => checks::check_lower_bound(t, &norm_or_op(), opts),
        (CheckId::Chain, CheckInput::Pair(t, s)) => checks::check_chain(t, s, &norm_or_op(), opts),
        (CheckId::Commutator, CheckInput::Pair(t, s)) => checks::check_commutator(t, s, &norm_or_op(), opts),
        (CheckId::UnitaryCommutator, CheckInput::Pair(t, s)) => {
            checks::check_unitary_commutator(t, s, &norm_or_op(), opts)
        }
        (CheckId::SelfCommutator, CheckInput::Single(t)) => checks::check_self_commutator(t, &norm_or_op(), opts),
        (CheckId::Product, CheckInput::Pair(t, s)) => checks::check_product(t, s, &norm_or_op(), opts),
        (CheckId::CommutingProduct, CheckInput::Pair(t, s)) => {
            checks::check_commuting_product(t, s, &norm_or_op(), opts)
        }
        (CheckId::OmegaUpper, CheckInput::Single(t)) => checks::check_omega_upper(t, opts),
        (CheckId::WOmegaChain, CheckInput::Single(t)) => checks::check_w_omega_chain(t, opts),
        (CheckId::OmegaEquality, CheckInput::Single(t)) => checks::check_omega_equality(t, opts),
        (CheckId::SpecialForms, CheckInput::Special(t, form)) => checks::check_special_forms(t, *form, opts),
        (CheckId::C2Corollary, CheckInput::Pair(t, s)) => checks::check_c2_corollary(t, s, opts),
        (CheckId::HsIdentity, CheckInput::Single(t)) => checks::check_hs_identity(t, opts),
        _ => Err(wrong_input()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Reports(Vec<InequalityReport>),
    Inapplicable(Hypothesis),
}

/// One `(check, ensemble, norm, trial)` evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub check: CheckId,
    pub ensemble: String,
    pub norm: Option<String>,
    pub trial: usize,
    pub seed: u64,
    pub outcome: Outcome,
}

/// Aggregate of one record name over the trials of a cell.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSummary {
    pub name: String,
    pub count: usize,
    pub min_slack: f64,
    /// Closest approach to equality.
    pub min_abs_slack: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub name: String,
    pub trial: usize,
    pub seed: u64,
    pub slack: f64,
    pub input_digest: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NearEquality {
    pub ensemble: String,
    pub seed: u64,
    pub deviation: f64,
    pub input_digest: String,
}

/// Results for one `(check, ensemble, norm)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub check: CheckId,
    pub ensemble: String,
    pub norm: Option<String>,
    pub trials: usize,
    pub inapplicable: usize,
    pub hypothesis: Option<Hypothesis>,
    /// The first hard error; remaining trials of the cell are skipped.
    pub error: Option<String>,
    pub links: Vec<LinkSummary>,
    /// Every failed record, in trial order.
    pub failures: Vec<Failure>,
}

impl CellSummary {
    pub fn failure_count(&self) -> usize {
        self.failures.len()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub records: Vec<TrialRecord>,
    pub cells: Vec<CellSummary>,
    pub near_equalities: Vec<NearEquality>,
}

impl SuiteReport {
    pub fn failure_count(&self) -> usize {
        self.cells.iter().map(CellSummary::failure_count).sum()
    }

    pub fn error_count(&self) -> usize {
        self.cells.iter().filter(|c| c.error.is_some()).count()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0 && self.error_count() == 0
    }

    /// Minimum slack and failure count per check, over all cells.
    pub fn per_check(&self) -> BTreeMap<CheckId, (f64, usize)> {
        let mut out = BTreeMap::new();
        for cell in &self.cells {
            let e = out.entry(cell.check).or_insert((f64::INFINITY, 0));
            for l in &cell.links {
                e.0 = e.0.min(l.min_slack);
            }
            e.1 += cell.failure_count();
        }
        out
    }

    /// Summaries of the record `name` across all cells.
    pub fn link(&self, name: &str) -> Vec<(&CellSummary, &LinkSummary)> {
        self.cells
            .iter()
            .flat_map(|c| c.links.iter().filter(|l| l.name == name).map(move |l| (c, l)))
            .collect()
    }
}

fn resolve_norms(check: CheckId, norms: &Option<Vec<NormSpec>>) -> Result<Vec<Option<NormSpec>>> {
    if !check.takes_norm() {
        return Ok(vec![None]);
    }
    match norms {
        Some(list) => Ok(list.iter().cloned().map(Some).collect()),
        None => check
            .default_norms()
            .iter()
            .map(|id| NormSpec::parse(id).map(Some))
            .collect(),
    }
}

/// [`run_suite`] with a custom check runner, used to test the harness itself.
pub fn run_suite_with<F>(config: &SuiteConfig, runner: F) -> Result<SuiteReport>
where
    F: Fn(CheckId, &CheckInput, Option<&NormSpec>, &CheckOpts) -> Result<Vec<InequalityReport>>,
{
    let mut report = SuiteReport::default();
    for &check in &config.checks {
        let norms = resolve_norms(check, &config.norms)?;
        for ens in config.ensembles.iter().filter(|e| check.applies_to(e.kind)) {
            for norm in &norms {
                run_cell(config, check, ens, norm.as_ref(), &runner, &mut report);
            }
        }
    }
    Ok(report)
}

fn run_cell<F>(
    config: &SuiteConfig,
    check: CheckId,
    ens: &EnsembleSpec,
    norm: Option<&NormSpec>,
    runner: &F,
    report: &mut SuiteReport,
) where
    F: Fn(CheckId, &CheckInput, Option<&NormSpec>, &CheckOpts) -> Result<Vec<InequalityReport>>,
{
    let mut cell = CellSummary {
        check,
        ensemble: ens.id(),
        norm: norm.map(|n| n.id.clone()),
        trials: 0,
        inapplicable: 0,
        hypothesis: None,
        error: None,
        links: Vec::new(),
        failures: Vec::new(),
    };
    let mut links: BTreeMap<String, LinkSummary> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for trial in 0..config.trials {
        let seed = config.base_seed.wrapping_add(trial as u64);
        let spec = ens.with_seed(seed);
        let result = prepare_input(check, &spec).and_then(|input| runner(check, &input, norm, &config.opts));
        cell.trials += 1;
        let outcome = match result {
            Ok(rs) => {
                for r in &rs {
                    let l = links.entry(r.name.clone()).or_insert_with(|| {
                        order.push(r.name.clone());
                        LinkSummary {
                            name: r.name.clone(),
                            count: 0,
                            min_slack: f64::INFINITY,
                            min_abs_slack: f64::INFINITY,
                            failures: 0,
                        }
                    });
                    l.count += 1;
                    l.min_slack = l.min_slack.min(r.slack);
                    l.min_abs_slack = l.min_abs_slack.min(r.slack.abs());
                    if !r.holds {
                        l.failures += 1;
                        cell.failures.push(Failure {
                            name: r.name.clone(),
                            trial,
                            seed,
                            slack: r.slack,
                            input_digest: r.input_digest.clone(),
                        });
                    }
                    if r.name == "omega_equality.forward" {
                        let dev = r.terms.get("condition_i_deviation").copied().unwrap_or(f64::INFINITY);
                        if dev <= NEAR_EQUALITY_TOL {
                            report.near_equalities.push(NearEquality {
                                ensemble: ens.id(),
                                seed,
                                deviation: dev,
                                input_digest: r.input_digest.clone(),
                            });
                        }
                    }
                }
                Outcome::Reports(rs)
            }
            Err(Error::Inapplicable(h)) => {
                cell.inapplicable += 1;
                cell.hypothesis.get_or_insert(h.clone());
                Outcome::Inapplicable(h)
            }
            Err(e) => {
                cell.error = Some(format!("trial {trial} (seed {seed}): {e}"));
                break;
            }
        };
        report.records.push(TrialRecord {
            check,
            ensemble: ens.id(),
            norm: cell.norm.clone(),
            trial,
            seed,
            outcome,
        });
    }
    cell.links = order.into_iter().map(|n| links.remove(&n).expect("inserted")).collect();
    report.cells.push(cell);
}

/// Executes every selected check over every applicable ensemble and norm.
/// Trial `i` uses seed `base_seed + i`.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_with(config, run_check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(checks: &[CheckId], ensembles: &[&str], trials: usize) -> SuiteConfig {
        SuiteConfig {
            ensembles: ensembles.iter().map(|e| EnsembleSpec::parse(e, 0).unwrap()).collect(),
            checks: checks.to_vec(),
            trials,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn check_ids_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.id().parse::<CheckId>().unwrap(), c);
        }
        assert!("nope".parse::<CheckId>().is_err());
    }

    #[test]
    fn applicability() {
        use EnsembleKind as K;
        assert!(CheckId::Kittaneh.applies_to(K::Ginibre));
        assert!(!CheckId::Kittaneh.applies_to(K::CommutingHermitianPair));
        assert!(CheckId::CommutingProduct.applies_to(K::AnticommutingHermitianPair));
        assert!(!CheckId::CommutingProduct.applies_to(K::Ginibre));
        assert!(CheckId::UnitaryCommutator.applies_to(K::HermitianContraction));
        assert!(!CheckId::UnitaryCommutator.applies_to(K::Ginibre));
        assert!(CheckId::SpecialForms.applies_to(K::SquareZero));
        assert!(!CheckId::SpecialForms.applies_to(K::Ginibre));
    }

    #[test]
    fn empty_ensemble_list_gives_empty_report() {
        let r = run_suite(&small(&CheckId::ALL, &[], 5)).unwrap();
        assert!(r.records.is_empty() && r.cells.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let cfg = small(&[CheckId::Kittaneh, CheckId::Chain, CheckId::SpecialForms], &["ginibre:3", "nil:3"], 4);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
        // kittaneh on both, chain on both with two norms, special forms on nil only.
        assert_eq!(a.cells.len(), 2 + 4 + 1);
        assert!(a.records.iter().all(|r| r.seed == DEFAULT_SEED + r.trial as u64));
    }

    #[test]
    fn corrupted_check_is_surfaced_with_witness() {
        let cfg = small(&[CheckId::Kittaneh], &["ginibre:3"], 3);
        let r = run_suite_with(&cfg, |c, i, n, o| {
            Ok(run_check(c, i, n, o)?.into_iter().map(|r| { let rhs = r.rhs - 1.0; r.with_rhs(rhs) }).collect())
        })
        .unwrap();
        assert!(!r.passed());
        assert_eq!(r.failure_count(), 3);
        let f = &r.cells[0].failures[0];
        assert_eq!(f.seed, DEFAULT_SEED);
        assert_eq!(f.input_digest.len(), 16);
    }

    #[test]
    fn hard_errors_stop_only_their_cell() {
        let cfg = small(&[CheckId::Kittaneh, CheckId::Dragomir], &["ginibre:2"], 3);
        let r = run_suite_with(&cfg, |c, i, n, o| {
            if c == CheckId::Kittaneh {
                Err(Error::NormEvaluation("boom".into()))
            } else {
                run_check(c, i, n, o)
            }
        })
        .unwrap();
        assert_eq!(r.error_count(), 1);
        assert!(r.cells[0].error.as_deref().unwrap().contains("boom"));
        assert_eq!(r.cells[1].trials, 3);
        assert!(r.cells[1].error.is_none());
    }

    #[test]
    fn inapplicable_norm_is_not_a_pass_or_failure() {
        let cfg = SuiteConfig {
            norms: Some(vec![NormSpec::numerical_radius()]),
            ..small(&[CheckId::LowerBound], &["ginibre:2"], 2)
        };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.cells[0].inapplicable, 2);
        assert_eq!(r.cells[0].hypothesis, Some(Hypothesis::AlgebraNorm));
        assert!(r.cells[0].links.is_empty());
        assert_eq!(r.failure_count(), 0);
    }
}
