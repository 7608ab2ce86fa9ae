//! Batch verification front-end: load a family description from JSON,
//! build its exchange tensor, run a configurable battery of checks, and
//! assemble a report that renders as text or round-trips through JSON.
//!
//! Checks run in a fixed dependency order.  The axiom battery always
//! runs first — even when it is not among the selected checks — because
//! every other suite interprets the tensor as a quadratic algebra and is
//! meaningless when the defining identities fail.  On an axiom failure
//! the dependent checks are reported as `blocked`, not failed; likewise
//! the sphere quotients need central ideal generators, so a centrality
//! failure blocks `quotients`.  A check that does not apply to a family
//! (the ± invariance suite on non-quaternionic kinds) is `skipped`.
//! Blocked and skipped results never count against the overall verdict.
//!
//! Everything after the axiom battery is independent, so those checks
//! run concurrently; the report is assembled at a single join point in
//! the fixed order above.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraElement, Block, Engine, QuotientKind, Strategy, Word};
use crate::families::{make_family, FamilyError, FamilyKind, FamilySpec, Mode};
use crate::koszul::{
    check_pbw_conditions, dual_relations_annihilate, koszul_dual_relations, koszul_homology,
    koszul_intersection_dims, SkewEngine,
};
use crate::linalg::rank_of;
use crate::quaternion::{Quaternion, Side, Sign};
use crate::rmatrix::{check_axioms, AxiomReport, CheckOutcome, RMatrix};
use crate::scalar::{ApproxComplex, GaussianRational, Scalar};

/// Default degree cap for the graded-dimension table.
pub const DEFAULT_MAX_DEGREE: usize = 4;
/// Default internal-weight cap for the homology table.
pub const DEFAULT_MAX_WEIGHT: usize = 3;

/// Number of random samples per quotient kind in the `quotients` suite.
const QUOTIENT_SAMPLES: usize = 20;
/// Random words drawn by the `confluence` suite.
const CONFLUENCE_TRIALS: usize = 200;
/// Maximum word length for the `confluence` suite.
const CONFLUENCE_MAX_LEN: usize = 5;

/// The check suites, in their fixed execution (and report) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Axioms,
    Dims,
    Center,
    Koszul,
    Clifford,
    Pbw,
    Quotients,
    Symmetry,
    Confluence,
}

impl CheckKind {
    /// Every suite, in dependency order.
    pub fn all() -> Vec<CheckKind> {
        vec![
            CheckKind::Axioms,
            CheckKind::Dims,
            CheckKind::Center,
            CheckKind::Koszul,
            CheckKind::Clifford,
            CheckKind::Pbw,
            CheckKind::Quotients,
            CheckKind::Symmetry,
            CheckKind::Confluence,
        ]
    }

    fn name(&self) -> &'static str {
        match self {
            CheckKind::Axioms => "axioms",
            CheckKind::Dims => "dims",
            CheckKind::Center => "center",
            CheckKind::Koszul => "koszul",
            CheckKind::Clifford => "clifford",
            CheckKind::Pbw => "pbw",
            CheckKind::Quotients => "quotients",
            CheckKind::Symmetry => "symmetry",
            CheckKind::Confluence => "confluence",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        CheckKind::all()
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CliError::UnknownCheck(s.to_string()))
    }
}

/// What happened to one suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not run because a prerequisite suite failed.
    Blocked,
    /// Not applicable to this family.
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Blocked => "blocked",
            CheckStatus::Skipped => "skipped",
        })
    }
}

/// One suite's outcome: status, wall time, human-readable detail lines,
/// and an optional structured payload (dimension tables, homology
/// tables, residual summaries).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub status: CheckStatus,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl CheckResult {
    fn finished(
        check: CheckKind,
        started: Instant,
        pass: bool,
        details: Vec<String>,
        data: Option<Value>,
    ) -> Self {
        CheckResult {
            check,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            millis: started.elapsed().as_millis() as u64,
            details,
            data,
        }
    }

    fn unrun(check: CheckKind, status: CheckStatus, why: &str) -> Self {
        CheckResult {
            check,
            status,
            millis: 0,
            details: vec![why.to_string()],
            data: None,
        }
    }
}

/// The full report: an echo of the family that was checked, one result
/// per selected suite in dependency order, and the overall verdict.  The
/// verdict passes iff no selected suite failed; blocked and skipped
/// suites do not count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub family: FamilySpec,
    pub results: Vec<CheckResult>,
    pub overall_pass: bool,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self, serde_json::Error> {
        serde_json::from_value(v.clone())
    }

    /// Human-readable rendering: one line per suite, indented detail
    /// lines, and the verdict.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let sign = match self.family.sign {
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        let mode = match self.family.mode() {
            Mode::Exact => "exact",
            Mode::Float => "float",
        };
        let _ = writeln!(
            out,
            "family: kind={} sign={} mode={}",
            self.family.kind, sign, mode
        );
        for r in &self.results {
            let _ = writeln!(out, "{:<11} {:<8} {:>6} ms", r.check, r.status, r.millis);
            for d in &r.details {
                let _ = writeln!(out, "    {d}");
            }
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.overall_pass { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// How the binary should print the report on stdout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Everything one verification run needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub spec_path: PathBuf,
    /// Suites to run; subset of [`CheckKind::all`], order irrelevant.
    pub checks: Vec<CheckKind>,
    /// Degree cap for the graded-dimension table (≥ 1).
    pub max_degree: usize,
    /// Internal-weight cap for the homology table (≥ 1).
    pub max_weight: usize,
    /// Overrides the `mode` field of the loaded family when set.
    pub mode_override: Option<Mode>,
    pub output: OutputFormat,
    /// Also write the JSON report here when set.
    pub out_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(spec_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            spec_path: spec_path.into(),
            checks: CheckKind::all(),
            max_degree: DEFAULT_MAX_DEGREE,
            max_weight: DEFAULT_MAX_WEIGHT,
            mode_override: None,
            output: OutputFormat::Text,
            out_path: None,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.checks.is_empty() {
            return Err(CliError::BadConfig("no checks selected".to_string()));
        }
        if self.max_degree == 0 || self.max_weight == 0 {
            return Err(CliError::BadConfig(
                "degree and weight caps must be positive".to_string(),
            ));
        }
        Ok(())
    }

    /// The selected suites in canonical order, deduplicated.
    fn selected(&self) -> Vec<CheckKind> {
        CheckKind::all()
            .into_iter()
            .filter(|k| self.checks.contains(k))
            .collect()
    }
}

/// Input-side failures.  Every variant maps to process exit code 2;
/// check failures are not errors but a failing [`CheckReport`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("family description does not parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("unknown check `{0}` (valid: axioms, dims, center, koszul, clifford, pbw, quotients, symmetry, confluence)")]
    UnknownCheck(String),
    #[error("bad configuration: {0}")]
    BadConfig(String),
}

/// Load the family description, build its tensor, run the selected
/// suites, and (when configured) write the JSON report to disk.
pub fn run(config: &RunConfig) -> Result<CheckReport, CliError> {
    config.validate()?;
    let raw = fs::read_to_string(&config.spec_path).map_err(|e| CliError::Io {
        path: config.spec_path.display().to_string(),
        message: e.to_string(),
    })?;
    let value: Value = serde_json::from_str(&raw).map_err(|e| CliError::Parse(e.to_string()))?;
    let spec = FamilySpec::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
    let report = run_on_spec(&spec, config)?;
    if let Some(path) = &config.out_path {
        let pretty =
            serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
        fs::write(path, pretty).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(report)
}

/// Run the selected suites on an already-parsed family description,
/// dispatching on the requested arithmetic.
pub fn run_on_spec(spec: &FamilySpec, config: &RunConfig) -> Result<CheckReport, CliError> {
    config.validate()?;
    let mut spec = spec.clone();
    if let Some(mode) = config.mode_override {
        spec.mode = Some(mode);
    }
    match spec.mode() {
        Mode::Exact => {
            let r: RMatrix<GaussianRational> = make_family(&spec)?;
            Ok(run_checks_on(&spec, r, config))
        }
        Mode::Float => {
            let r: RMatrix<ApproxComplex> = make_family(&spec)?;
            Ok(run_checks_on(&spec, r, config))
        }
    }
}

/// The check pipeline on a tensor that already exists.  `run` calls this
/// after building the family; it is public so the pipeline can also be
/// driven on hand-modified tensors (e.g. to confirm that a corrupted
/// entry is caught and reported with its defect indices).
pub fn run_checks_on<S: Scalar>(
    spec: &FamilySpec,
    r: RMatrix<S>,
    config: &RunConfig,
) -> CheckReport {
    let selected = config.selected();

    // The axiom battery gates everything else, so it runs regardless of
    // whether it was selected.
    let started = Instant::now();
    let axioms = check_axioms(&r);
    let axioms_result = CheckResult::finished(
        CheckKind::Axioms,
        started,
        axioms.all_pass,
        axiom_details(&axioms),
        Some(serde_json::to_value(&axioms).expect("axiom report serializes")),
    );
    let engine = axioms.all_pass.then(|| Engine::new_unchecked(r.clone()));

    // The quotient suite additionally needs the sphere ideals central;
    // the centrality outcomes are computed once and shared with the
    // `center` suite so it reports exactly what gated `quotients`.
    let wants_center = selected
        .iter()
        .any(|k| matches!(k, CheckKind::Center | CheckKind::Quotients));
    let center_outcome: Option<(u64, Vec<(String, bool)>)> = match (&engine, wants_center) {
        (Some(e), true) => {
            let t = Instant::now();
            let items = vec![
                ("‖x1‖²".to_string(), e.norm_square(Block::X1)),
                ("‖x2‖²".to_string(), e.norm_square(Block::X2)),
                ("‖x‖²".to_string(), e.norm_square_total()),
            ];
            let outcomes = items
                .into_iter()
                .map(|(label, elem)| {
                    let central = e.is_central(&elem);
                    (label, central)
                })
                .collect();
            Some((t.elapsed().as_millis() as u64, outcomes))
        }
        _ => None,
    };
    let center_pass = center_outcome
        .as_ref()
        .map(|(_, v)| v.iter().all(|(_, ok)| *ok));

    // Everything downstream of the axioms is mutually independent.
    let rest: Vec<CheckKind> = selected
        .iter()
        .copied()
        .filter(|k| *k != CheckKind::Axioms)
        .collect();
    let mut results: Vec<CheckResult> = rest
        .par_iter()
        .map(|kind| {
            run_one(
                *kind,
                spec,
                &r,
                engine.as_ref(),
                &axioms,
                center_outcome.as_ref(),
                center_pass,
                config,
            )
        })
        .collect();

    if selected.contains(&CheckKind::Axioms) {
        results.insert(0, axioms_result);
    }
    let overall_pass = results.iter().all(|r| r.status != CheckStatus::Fail);
    CheckReport {
        family: spec.clone(),
        results,
        overall_pass,
    }
}

#[allow(clippy::too_many_arguments)]
fn run_one<S: Scalar>(
    kind: CheckKind,
    spec: &FamilySpec,
    r: &RMatrix<S>,
    engine: Option<&Engine<S>>,
    axioms: &AxiomReport,
    center_outcome: Option<&(u64, Vec<(String, bool)>)>,
    center_pass: Option<bool>,
    config: &RunConfig,
) -> CheckResult {
    let Some(e) = engine else {
        let why = format!(
            "axiom preconditions failed ({})",
            axioms.failing_names().join(", ")
        );
        return CheckResult::unrun(kind, CheckStatus::Blocked, &why);
    };
    match kind {
        CheckKind::Axioms => unreachable!("handled by the caller"),
        CheckKind::Dims => check_dims(e, config),
        CheckKind::Center => {
            let (millis, outcomes) = center_outcome.expect("computed for selected center");
            let mut details = Vec::new();
            for (label, ok) in outcomes {
                details.push(format!(
                    "{label} central: {}",
                    if *ok { "yes" } else { "NO" }
                ));
            }
            CheckResult {
                check: CheckKind::Center,
                status: if center_pass == Some(true) {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                millis: *millis,
                details,
                data: Some(json!({
                    "central": outcomes
                        .iter()
                        .map(|(l, ok)| json!({"element": l, "central": ok}))
                        .collect::<Vec<_>>()
                })),
            }
        }
        CheckKind::Koszul => check_koszul(r, config),
        CheckKind::Clifford => check_clifford(r, e),
        CheckKind::Pbw => check_pbw(r),
        CheckKind::Quotients => {
            if center_pass == Some(true) {
                check_quotients(e)
            } else {
                CheckResult::unrun(
                    CheckKind::Quotients,
                    CheckStatus::Blocked,
                    "sphere ideal generators are not central",
                )
            }
        }
        CheckKind::Symmetry => {
            if spec.kind == FamilyKind::Quaternionic {
                check_symmetry(spec, e)
            } else {
                CheckResult::unrun(
                    CheckKind::Symmetry,
                    CheckStatus::Skipped,
                    "the ± invariance statement applies to the quaternionic family",
                )
            }
        }
        CheckKind::Confluence => check_confluence(e),
    }
}

fn outcome_line(name: &str, o: &CheckOutcome) -> String {
    if o.pass {
        format!("{name}: pass")
    } else {
        let mut line = format!(
            "{name}: FAIL ({} defects, max residual {:.3e})",
            o.defect_count, o.max_residual
        );
        if let Some(d) = o.defects.first() {
            line.push_str(&format!("; first defect at {:?} = {}", d.indices, d.value));
        }
        line
    }
}

fn axiom_details(report: &AxiomReport) -> Vec<String> {
    let mut out = vec![
        outcome_line("reality", &report.reality),
        outcome_line("involution", &report.involution),
    ];
    for group in [&report.yang_baxter, &report.centrality, &report.euclidean] {
        for check in group {
            out.push(outcome_line(&check.name, &check.outcome));
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Graded dimensions by direct enumeration of normal monomials, against
/// the closed form C(N+n−1, n), plus the degree-2 dimension recomputed
/// from the relation rank (N² − #relations).
fn check_dims<S: Scalar>(e: &Engine<S>, config: &RunConfig) -> CheckResult {
    let t = Instant::now();
    let n = e.n();
    let mut pass = true;
    let mut details = Vec::new();
    let mut counted = Vec::new();
    for d in 0..=config.max_degree {
        let got = e.graded_dimension(d);
        let expected = binomial(n + d.saturating_sub(1), d);
        counted.push(got);
        if got != expected {
            pass = false;
            details.push(format!(
                "degree {d}: counted {got}, closed form gives {expected}"
            ));
        }
    }
    let from_relations = e.quadratic_dimension_from_relations();
    let expected2 = binomial(n + 1, 2);
    if from_relations != expected2 {
        pass = false;
        details.push(format!(
            "degree 2 from relation rank: {from_relations}, expected {expected2}"
        ));
    }
    details.push(format!(
        "dimensions through degree {}: {:?}",
        config.max_degree, counted
    ));
    details.push(format!(
        "degree 2 from relation rank: {from_relations}"
    ));
    let data = json!({
        "by_counting": counted,
        "degree2_from_relations": from_relations,
    });
    CheckResult::finished(CheckKind::Dims, t, pass, details, Some(data))
}

/// Dual relation count/rank, exactness of the pairing with the algebra
/// relations, the intersection-model dimensions against C(N, k), and the
/// homology table through the configured weight.
fn check_koszul<S: Scalar>(r: &RMatrix<S>, config: &RunConfig) -> CheckResult {
    let t = Instant::now();
    let n = r.n();
    let mut pass = true;
    let mut details = Vec::new();

    let duals = koszul_dual_relations(r);
    let dual_rank = rank_of(duals.iter().map(|d| d.tensor.clone()));
    let expected_relations = binomial(n + 1, 2);
    if duals.len() != expected_relations || dual_rank != expected_relations {
        pass = false;
    }
    details.push(format!(
        "dual relations: {} of expected {expected_relations}, rank {dual_rank}",
        duals.len()
    ));

    let annihilate = dual_relations_annihilate(r);
    if !annihilate {
        pass = false;
    }
    details.push(format!(
        "dual/primal pairing annihilates: {}",
        if annihilate { "yes" } else { "NO" }
    ));

    let depth = config.max_weight.min(n);
    let inter = koszul_intersection_dims(r, depth);
    let expected_inter: Vec<usize> = (0..=depth).map(|k| binomial(n, k)).collect();
    if inter != expected_inter {
        pass = false;
        details.push(format!(
            "intersection dimensions {inter:?} differ from {expected_inter:?}"
        ));
    } else {
        details.push(format!("intersection dimensions through k={depth}: {inter:?}"));
    }

    let homology = match koszul_homology(r, config.max_weight) {
        Ok(table) => table,
        Err(err) => {
            details.push(format!("homology construction failed: {err}"));
            return CheckResult::finished(CheckKind::Koszul, t, false, details, None);
        }
    };
    if !homology.boundary_square_is_zero {
        pass = false;
        details.push("boundary does not square to zero".to_string());
    }
    if !homology.is_resolution_of_scalars() {
        pass = false;
        details.push("homology does not vanish in positive degrees".to_string());
    } else {
        details.push(format!(
            "homology vanishes in positive degrees through weight {}",
            config.max_weight
        ));
    }
    let data = json!({
        "dual_relation_count": duals.len(),
        "dual_relation_rank": dual_rank,
        "intersection_dims": inter,
        "homology": homology.to_json(),
    });
    CheckResult::finished(CheckKind::Koszul, t, pass, details, Some(data))
}

/// Clifford span against 2^N (full product span for N ≤ 4, basis count
/// for larger N) and the symbolic square identities for Γ(x).
fn check_clifford<S: Scalar>(r: &RMatrix<S>, e: &Engine<S>) -> CheckResult {
    let t = Instant::now();
    let n = r.n();
    let mut pass = true;
    let mut details = Vec::new();
    let cl = match SkewEngine::clifford(r) {
        Ok(cl) => cl,
        Err(err) => {
            details.push(format!("deformation construction failed: {err}"));
            return CheckResult::finished(CheckKind::Clifford, t, false, details, None);
        }
    };
    let expected = 1usize << n;
    let span = if n <= 4 {
        let s = cl.product_span_dimension();
        details.push(format!("product span: {s} of 2^{n} = {expected}"));
        s
    } else {
        let s = cl.total_dimension();
        details.push(format!("basis count: {s} of 2^{n} = {expected}"));
        s
    };
    if span != expected {
        pass = false;
    }
    let gamma = match crate::koszul::verify_gamma_square(&cl, e) {
        Ok(g) => g,
        Err(err) => {
            details.push(format!("square identities not comparable: {err}"));
            return CheckResult::finished(CheckKind::Clifford, t, false, details, None);
        }
    };
    if !gamma.all_pass() {
        pass = false;
    }
    for (label, ok) in [
        ("block-1 squares", gamma.block1),
        ("block-2 squares", gamma.block2),
        ("mixed terms cancel", gamma.mixed),
        ("(Γ(x))² = 1 ⊗ ‖x‖²", gamma.total),
    ] {
        details.push(format!("{label}: {}", if ok { "pass" } else { "FAIL" }));
    }
    let data = json!({
        "span": span,
        "gamma_square": serde_json::to_value(&gamma).expect("report serializes"),
    });
    CheckResult::finished(CheckKind::Clifford, t, pass, details, Some(data))
}

/// The two Poincaré–Birkhoff–Witt conditions for the unit-deformed
/// quadratic relations.
fn check_pbw<S: Scalar>(r: &RMatrix<S>) -> CheckResult {
    let t = Instant::now();
    let report = check_pbw_conditions(r);
    let details = vec![
        format!(
            "relations: {} with quadratic rank {}",
            report.relation_count, report.relation_rank
        ),
        format!(
            "condition (i) independent quadratic parts: {}",
            if report.condition_i { "pass" } else { "FAIL" }
        ),
        format!(
            "condition (ii) on {} overlap combinations: {}",
            report.overlap_kernel_dim,
            if report.condition_ii { "pass" } else { "FAIL" }
        ),
    ];
    let data = serde_json::to_value(&report).expect("report serializes");
    CheckResult::finished(CheckKind::Pbw, t, report.all_pass(), details, Some(data))
}

/// A random element of degree ≤ 4: a short sum of reduced random words
/// with small Gaussian-integer coefficients.
fn sample_element<S: Scalar>(e: &Engine<S>, rng: &mut ChaCha8Rng) -> AlgebraElement<S> {
    let n = e.n();
    let mut out = AlgebraElement::zero();
    for _ in 0..rng.random_range(1..=2usize) {
        let len = rng.random_range(1..=4usize);
        let word: Word = (0..len)
            .map(|_| e.gen_of_flat(rng.random_range(0..n)))
            .collect();
        let mut re = rng.random_range(-2..=2i64);
        let im = rng.random_range(-2..=2i64);
        if re == 0 && im == 0 {
            re = 1;
        }
        let coeff = S::int(re) + S::i() * S::int(im);
        out = out.add(&e.normal_form_with(&word, coeff, Strategy::Leftmost));
    }
    out
}

/// Sampled idempotence and multiplicativity of sphere reduction, for all
/// three quotient kinds.
fn check_quotients<S: Scalar>(e: &Engine<S>) -> CheckResult {
    let t = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    let kinds = [
        (QuotientKind::Torus, "torus"),
        (QuotientKind::SevenSphere, "seven-sphere"),
        (QuotientKind::ProductSpheres, "product-of-spheres"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (kind, label) in kinds {
        let mut idem_fail = 0usize;
        let mut mult_fail = 0usize;
        for _ in 0..QUOTIENT_SAMPLES {
            let x = sample_element(e, &mut rng);
            let y = sample_element(e, &mut rng);
            let rx = match e.reduce_mod_spheres(&x, kind) {
                Ok(v) => v,
                Err(err) => {
                    details.push(format!("{label}: reduction failed: {err}"));
                    pass = false;
                    break;
                }
            };
            let rrx = e.reduce_mod_spheres(&rx, kind).expect("ideal verified");
            if rrx != rx {
                idem_fail += 1;
            }
            let ry = e.reduce_mod_spheres(&y, kind).expect("ideal verified");
            let lhs = e
                .reduce_mod_spheres(&e.multiply(&x, &y), kind)
                .expect("ideal verified");
            let rhs = e
                .reduce_mod_spheres(&e.multiply(&rx, &ry), kind)
                .expect("ideal verified");
            if lhs != rhs {
                mult_fail += 1;
            }
        }
        if idem_fail > 0 || mult_fail > 0 {
            pass = false;
        }
        details.push(format!(
            "{label}: {QUOTIENT_SAMPLES} samples, {idem_fail} idempotence failures, {mult_fail} multiplicativity failures"
        ));
    }
    let data = json!({"samples_per_kind": QUOTIENT_SAMPLES});
    CheckResult::finished(CheckKind::Quotients, t, pass, details, Some(data))
}

/// Relation invariance under the quaternion pair action on the matching
/// side: right translations preserve the + family, left translations the
/// − family.  Five rational unit pairs, the identity among them.
fn check_symmetry<S: Scalar>(spec: &FamilySpec, e: &Engine<S>) -> CheckResult {
    let t = Instant::now();
    let side = match spec.sign {
        Sign::Plus => Side::Right,
        Sign::Minus => Side::Left,
    };
    let one = Quaternion::<S>::one;
    let q35 = || Quaternion {
        c: [S::rat(3, 5), S::rat(4, 5), S::zero(), S::zero()],
    };
    let qj = || Quaternion {
        c: [S::rat(3, 5), S::zero(), S::rat(4, 5), S::zero()],
    };
    let qk = || Quaternion {
        c: [S::zero(), S::zero(), S::rat(3, 5), S::rat(4, 5)],
    };
    let q3 = || Quaternion {
        c: [S::rat(1, 3), S::rat(2, 3), S::rat(2, 3), S::zero()],
    };
    let pairs: Vec<(&str, Quaternion<S>, Quaternion<S>)> = vec![
        ("(1, 1)", one(), one()),
        ("(3/5+4/5 i, 1)", q35(), one()),
        ("(1, 3/5+4/5 j)", one(), qj()),
        ("(3/5+4/5 i, 3/5+4/5 j)", q35(), qj()),
        ("(1/3+2/3 i+2/3 j, 3/5 j+4/5 k)", q3(), qk()),
    ];
    let mut pass = true;
    let mut details = Vec::new();
    for (label, q1, q2) in pairs {
        match e.check_relation_invariance(&q1, &q2, side) {
            Ok(report) if report.all_pass() => {
                details.push(format!(
                    "pair {label}: {} relations preserved",
                    report.relations_checked
                ));
            }
            Ok(report) => {
                pass = false;
                details.push(format!(
                    "pair {label}: {} of {} relations NOT preserved",
                    report.failures.len(),
                    report.relations_checked
                ));
            }
            Err(err) => {
                pass = false;
                details.push(format!("pair {label}: {err}"));
            }
        }
    }
    let side_name = match side {
        Side::Right => "right",
        Side::Left => "left",
    };
    details.push(format!("action side: {side_name}"));
    let data = json!({"side": side_name, "pairs_checked": 5});
    CheckResult::finished(CheckKind::Symmetry, t, pass, details, Some(data))
}

/// Randomized strategy-agreement and double-rewrite evidence.
fn check_confluence<S: Scalar>(e: &Engine<S>) -> CheckResult {
    let t = Instant::now();
    let report = e.check_confluence_sample(CONFLUENCE_TRIALS, CONFLUENCE_MAX_LEN, 11);
    let details = vec![format!(
        "{} words: {} strategy disagreements, {} involution failures",
        report.words_checked, report.strategy_disagreements, report.involution_failures
    )];
    let data = serde_json::to_value(&report).expect("report serializes");
    CheckResult::finished(
        CheckKind::Confluence,
        t,
        report.all_pass(),
        details,
        Some(data),
    )
}
