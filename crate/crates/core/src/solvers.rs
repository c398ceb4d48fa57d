//! Hypothesis checks and constructive iterations for the contraction
//! results, every step verified against the bound the underlying argument
//! promises.
//!
//! Two iteration families are provided.
//!
//! **Weighted orbit iteration** ([`picard_solve`]): for a single-valued map
//! `f` carrying a weight table `w`, under the hypotheses
//!
//! - weight propagation: `w(x, y) ≥ 1 ⇒ w(fx, fy) ≥ 1`,
//! - weighted contraction: `w(x, y)·d(fx, fy) ≤ γ(d(x, y))` for a
//!   certified comparison function `γ`,
//! - a seed whose step weight is at least 1,
//!
//! the orbit `x, fx, f²x, …` has step distances dominated by `γⁿ` of the
//! first step. The solver walks the orbit, logs the promised bound next to
//! the actual distance at every step, and stops at an exact fixed point, an
//! exact state revisit (possible only through zero-distance cycles), or the
//! iteration budget.
//!
//! **Descent iterations** ([`startpoint_solve`], [`endpoint_solve`],
//! [`fixed_point_solve`]): for a set-valued map `F` and a factor
//! `c ∈ (0, 1)`, repeatedly move to an image point whose own value is at
//! most `c` times the move's cost. Values strictly shrink by a factor of
//! `c` per step, which forces geometric decay (`cⁿ` step bounds, a
//! `cⁿ/(1−c)` bound on the whole remaining path) and termination at a
//! value-zero point: a startpoint, an endpoint, or — for the symmetric
//! variant on a `T0` space — a point that is simultaneously fixed, a
//! startpoint, and an endpoint. A point may also have *no* admissible
//! successor; the solver then stops and reports the violated hypothesis
//! with the least-violating candidate. [`startpoint_feasibility_audit`]
//! checks that hypothesis pointwise up front, separating instances where
//! it holds everywhere from the boundary pattern where it fails only at
//! points that already are startpoints (there the descent still succeeds
//! from every seed, because it stops before ever needing a successor).
//!
//! The audits [`mix_equivalence_report`] and [`single_map_audit`] verify,
//! on concrete instances, what the image-contraction hypotheses promise:
//! level sets whose pairwise symmetrized distances obey the `2/n` gap
//! inequality, and — for contractive single maps on `T0` spaces — a fixed
//! point witnessing zero approximate start/end/mix values.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::funcspec::{CertificationRecord, FunctionSpec};
use crate::hyperspace::hausdorff;
use crate::multimaps::{
    approx_value, classify_point, level_sets, ApproxReport, LevelSets, MapError,
    PointClassification, SetValuedMap, SingleMap, ValueKind,
};
use crate::rational::{in_open_unit_interval, ratio, ExtendedRational, Rational};
use crate::space::{FiniteQuasiSpace, Point, PointSet, Side, SpaceError};

/// Orbit length for the comparison-function summability probe.
pub const ORBIT_PROBE_HORIZON: usize = 50;

/// Errors from the solver layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverError {
    Space(SpaceError),
    Map(MapError),
    /// The operation needs a weight table on the single-valued map.
    MissingWeights,
    /// The control function failed certification for its role.
    NotCertified {
        role: &'static str,
        record: CertificationRecord,
    },
    /// Descent factors must lie strictly between 0 and 1.
    FactorOutOfRange { value: Rational },
    /// The conclusion needs the `T0` separation property.
    RequiresT0,
    /// An internal re-verification failed; this is a bug in this crate.
    Internal { detail: String },
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::Space(err) => write!(f, "{err}"),
            SolverError::Map(err) => write!(f, "{err}"),
            SolverError::MissingWeights => {
                write!(f, "this solver needs a weight table on the map")
            }
            SolverError::NotCertified { role, .. } => {
                write!(f, "control function failed certification as a {role}")
            }
            SolverError::FactorOutOfRange { value } => {
                write!(f, "factor must lie strictly between 0 and 1, got {value}")
            }
            SolverError::RequiresT0 => {
                write!(f, "this operation is only sound on T0 spaces")
            }
            SolverError::Internal { detail } => {
                write!(f, "internal re-verification failed: {detail}")
            }
        }
    }
}

impl core::error::Error for SolverError {}

impl From<SpaceError> for SolverError {
    fn from(err: SpaceError) -> Self {
        SolverError::Space(err)
    }
}

impl From<MapError> for SolverError {
    fn from(err: MapError) -> Self {
        SolverError::Map(err)
    }
}

/// One ordered pair of points with the two sides of an inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFinding {
    pub x: Point,
    pub y: Point,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Result of the weight-propagation check `w(x, y) ≥ 1 ⇒ w(fx, fy) ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Pairs breaking propagation: `lhs` is `w(x, y)`, `rhs` the failing
    /// `w(fx, fy)`.
    pub failures: Vec<PairFinding>,
}

/// Checks weight propagation over all ordered pairs.
pub fn check_weight_propagation(
    space: &FiniteQuasiSpace,
    map: &SingleMap,
) -> Result<AdmissibilityReport, SolverError> {
    check_single_map(space, map)?;
    if !map.has_weights() {
        return Err(SolverError::MissingWeights);
    }
    let one = Rational::one();
    let mut failures = Vec::new();
    for x in 0..space.len() {
        for y in 0..space.len() {
            let here = map.weight(x, y).expect("weights checked above");
            if here >= &one {
                let there = map
                    .weight(map.value(x), map.value(y))
                    .expect("weights checked above");
                if there < &one {
                    failures.push(PairFinding {
                        x,
                        y,
                        lhs: here.clone(),
                        rhs: there.clone(),
                    });
                }
            }
        }
    }
    Ok(AdmissibilityReport {
        admissible: failures.is_empty(),
        failures,
    })
}

/// Result of a pointwise contraction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    pub holds: bool,
    /// The violating pair with the largest excess `lhs − rhs`, if any.
    pub worst: Option<PairFinding>,
    /// Largest `lhs / rhs` over violating pairs; infinite when a violating
    /// pair has `rhs = 0`.
    pub max_ratio: Option<ExtendedRational>,
    /// Certification of the control function used on the right-hand side.
    pub certification: CertificationRecord,
}

fn contraction_over_pairs(
    certification: CertificationRecord,
    pairs: impl Iterator<Item = (Point, Point, Rational, Rational)>,
) -> ContractionReport {
    let mut worst: Option<PairFinding> = None;
    let mut worst_excess = Rational::zero();
    let mut max_ratio: Option<ExtendedRational> = None;
    for (x, y, lhs, rhs) in pairs {
        if lhs > rhs {
            let ratio = if rhs.is_zero() {
                ExtendedRational::Infinite
            } else {
                ExtendedRational::Finite(&lhs / &rhs)
            };
            if max_ratio.as_ref().is_none_or(|current| &ratio > current) {
                max_ratio = Some(ratio);
            }
            let excess = &lhs - &rhs;
            if worst.is_none() || excess > worst_excess {
                worst_excess = excess;
                worst = Some(PairFinding { x, y, lhs, rhs });
            }
        }
    }
    ContractionReport {
        holds: worst.is_none(),
        worst,
        max_ratio,
        certification,
    }
}

/// Checks the weighted contraction `w(x, y)·d(fx, fy) ≤ γ(d(x, y))` over
/// all ordered pairs. The comparison function must certify (heuristic
/// evidence acceptable only when `accept_heuristic` is set).
pub fn check_weighted_contraction(
    space: &FiniteQuasiSpace,
    map: &SingleMap,
    comparison: &FunctionSpec,
    accept_heuristic: bool,
) -> Result<ContractionReport, SolverError> {
    check_single_map(space, map)?;
    if !map.has_weights() {
        return Err(SolverError::MissingWeights);
    }
    let certification = certify_for_role(space, comparison, Role::Comparison, accept_heuristic)?;
    let n = space.len();
    Ok(contraction_over_pairs(
        certification,
        PairIter::new(n).map(|(x, y)| {
            let lhs = map.weight(x, y).expect("weights checked above")
                * space.dist(map.value(x), map.value(y));
            let rhs = comparison.eval(space.dist(x, y));
            (x, y, lhs, rhs)
        }),
    ))
}

/// Checks the image contraction `H(Fx, Fy) ≤ ψ(d(x, y))` over all ordered
/// pairs. The modulus must certify.
pub fn check_image_contraction(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    modulus: &FunctionSpec,
    accept_heuristic: bool,
) -> Result<ContractionReport, SolverError> {
    check_set_valued_map(space, map)?;
    let certification = certify_for_role(space, modulus, Role::Modulus, accept_heuristic)?;
    let n = space.len();
    let mut pairs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let lhs = hausdorff(space, map.image(x), map.image(y))?
                .finite_value()
                .clone();
            let rhs = modulus.eval(space.dist(x, y));
            pairs.push((x, y, lhs, rhs));
        }
    }
    Ok(contraction_over_pairs(certification, pairs.into_iter()))
}

/// Every positive distance of the space, deduplicated and sorted; the
/// sample set the certification probes run on.
pub fn space_distance_samples(space: &FiniteQuasiSpace) -> Vec<Rational> {
    let mut samples: Vec<Rational> = (0..space.len())
        .flat_map(|x| (0..space.len()).map(move |y| space.dist(x, y).clone()))
        .filter(|value| value > &Rational::zero())
        .collect();
    samples.sort();
    samples.dedup();
    samples
}

enum Role {
    Comparison,
    Modulus,
}

fn certify_for_role(
    space: &FiniteQuasiSpace,
    spec: &FunctionSpec,
    role: Role,
    accept_heuristic: bool,
) -> Result<CertificationRecord, SolverError> {
    let samples = space_distance_samples(space);
    let record = spec.certify(&samples, ORBIT_PROBE_HORIZON);
    let (ok, name) = match role {
        Role::Comparison => (
            record.comparison_certified(accept_heuristic),
            "comparison function",
        ),
        Role::Modulus => (
            record.modulus_certified(accept_heuristic),
            "contraction modulus",
        ),
    };
    if ok {
        Ok(record)
    } else {
        Err(SolverError::NotCertified { role: name, record })
    }
}

struct PairIter {
    n: usize,
    next: usize,
}

impl PairIter {
    fn new(n: usize) -> Self {
        PairIter { n, next: 0 }
    }
}

impl Iterator for PairIter {
    type Item = (Point, Point);

    fn next(&mut self) -> Option<(Point, Point)> {
        if self.next >= self.n * self.n {
            return None;
        }
        let pair = (self.next / self.n, self.next % self.n);
        self.next += 1;
        Some(pair)
    }
}

fn check_single_map(space: &FiniteQuasiSpace, map: &SingleMap) -> Result<(), SolverError> {
    if map.len() != space.len() {
        return Err(SolverError::Map(MapError::WrongLength {
            expected: space.len(),
            got: map.len(),
        }));
    }
    Ok(())
}

fn check_set_valued_map(space: &FiniteQuasiSpace, map: &SetValuedMap) -> Result<(), SolverError> {
    if map.len() != space.len() {
        return Err(SolverError::Map(MapError::WrongLength {
            expected: space.len(),
            got: map.len(),
        }));
    }
    Ok(())
}

/// Which iteration produced a log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Weighted orbit iteration of a single-valued map; `mode` chooses
    /// which distance the step bounds speak about.
    WeightedOrbit { mode: Side },
    /// Descent toward a startpoint.
    StartpointDescent { factor: Rational },
    /// Descent toward an endpoint (the startpoint descent on the conjugate
    /// space).
    EndpointDescent { factor: Rational },
    /// Symmetric descent toward a simultaneous fixed/start/end point.
    /// `literal_feasibility` switches the admission bound from
    /// `c·min(d(x, y), d(y, x))` to the literal one-sided `c·d(y, x)`.
    SymmetricDescent {
        factor: Rational,
        literal_feasibility: bool,
    },
}

/// How an iteration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminalStatus {
    /// The goal was reached and re-verified on the terminal point.
    Converged,
    /// The orbit revisited a state exactly, so it cycles forever.
    CycleDetected,
    /// A hypothesis failed: a precheck, a logged bound, or successor
    /// admission.
    HypothesisViolated,
    /// The step budget ran out first.
    IterationBudgetExhausted,
}

impl fmt::Display for TerminalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminalStatus::Converged => write!(f, "converged"),
            TerminalStatus::CycleDetected => write!(f, "cycle-detected"),
            TerminalStatus::HypothesisViolated => write!(f, "hypothesis-violated"),
            TerminalStatus::IterationBudgetExhausted => write!(f, "budget-exhausted"),
        }
    }
}

/// What exactly broke when an iteration reports
/// [`TerminalStatus::HypothesisViolated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IterationViolation {
    /// Weight propagation failed on these pairs.
    WeightPropagation { failures: Vec<PairFinding> },
    /// The pointwise contraction failed; the worst pair is recorded.
    Contraction { worst: PairFinding },
    /// The seed's step weight (per mode) is below 1.
    SeedWeight { weight: Rational },
    /// A logged step bound was exceeded at this step index.
    StepBound { index: usize },
    /// No image point of `at` was admissible; `closest` is the
    /// least-violating candidate (`lhs` its value, `rhs` the admission
    /// bound it missed).
    NoFeasibleSuccessor {
        at: Point,
        closest: Option<PairFinding>,
    },
}

/// One logged iteration step. Every bound is stored as an exact value so
/// the satisfied-flags can be recomputed from the log alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub index: usize,
    pub from: Point,
    pub to: Point,
    /// The step's distance in the reading the method bounds (mode distance
    /// for orbits, descent metric for descents).
    pub step_distance: Rational,
    /// What the theory promises for this step: `γⁿ` of the first step for
    /// orbits, `cⁿ` times the first step for descents.
    pub step_bound: Rational,
    pub step_bound_ok: bool,
    /// Orbit iteration only: the step's weight in the chosen mode.
    pub weight: Option<Rational>,
    /// Descents only: the value of the point stepped to.
    pub target_value: Option<Rational>,
    /// Descents only: the promised value bound `cⁿ` times the seed value.
    pub target_bound: Option<Rational>,
    pub target_bound_ok: Option<bool>,
    /// Descents only: the admission bound `c·cost(from, to)` the target's
    /// value had to meet.
    pub feasibility_bound: Option<Rational>,
    /// Descents only: `cⁿ/(1−c)` times the first step — a bound on the
    /// total length of the entire remaining path.
    pub remaining_bound: Option<Rational>,
}

/// Full record of one iteration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationLog {
    pub method: SolveMethod,
    pub seed: Point,
    pub steps: Vec<StepRecord>,
    pub status: TerminalStatus,
    /// Last point reached (equals `seed` when no step was taken).
    pub terminal: Point,
    /// Classification of the terminal point against the set-valued view of
    /// the map, re-verified on emission.
    pub terminal_classification: Option<PointClassification>,
    /// Present exactly when `status` is `HypothesisViolated`.
    pub violation: Option<IterationViolation>,
    /// Hypotheses of the underlying arguments that a finite run can
    /// neither use nor check; recorded for honesty, never asserted.
    pub assumed_hypotheses: Vec<&'static str>,
}

/// Options for [`picard_solve`].
#[derive(Clone, Debug)]
pub struct OrbitOptions {
    /// Which distance the bounds speak about; the backward mode reads
    /// every step in reverse, the symmetric one takes maxima (and requires
    /// both seed weights).
    pub mode: Side,
    /// Step budget; defaults to `10 · |X|`.
    pub max_iter: Option<usize>,
    /// Accept heuristic certification evidence for the comparison
    /// function.
    pub accept_heuristic: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            mode: Side::Forward,
            max_iter: None,
            accept_heuristic: false,
        }
    }
}

const ORBIT_ASSUMED: [&str; 2] = [
    "sequential continuity of the map in the chosen mode backs the limit argument on infinite spaces; a finite run terminates exactly and neither uses nor checks it",
    "the subsequence weight-selection conditions of the variant limit arguments are not checkable from a finite run",
];

/// Walks the weighted orbit of a single-valued map from `seed`, verifying
/// the hypotheses up front and each step's promised bound as it goes.
///
/// Precheck failures (propagation, contraction, seed weight) return a log
/// with [`TerminalStatus::HypothesisViolated`] rather than an error:
/// which hypothesis failed, and on which pairs, is the result. Structural
/// problems (missing weights, uncertified comparison function, foreign
/// points) are errors.
pub fn picard_solve(
    space: &FiniteQuasiSpace,
    map: &SingleMap,
    comparison: &FunctionSpec,
    seed: Point,
    options: &OrbitOptions,
) -> Result<IterationLog, SolverError> {
    space.check_point(seed)?;
    check_single_map(space, map)?;
    if !map.has_weights() {
        return Err(SolverError::MissingWeights);
    }
    certify_for_role(space, comparison, Role::Comparison, options.accept_heuristic)?;

    let method = SolveMethod::WeightedOrbit { mode: options.mode };
    let assumed: Vec<&'static str> = ORBIT_ASSUMED.to_vec();
    let violated = |violation: IterationViolation| -> Result<IterationLog, SolverError> {
        Ok(IterationLog {
            method: method.clone(),
            seed,
            steps: Vec::new(),
            status: TerminalStatus::HypothesisViolated,
            terminal: seed,
            terminal_classification: Some(classify_point(space, &map.as_set_valued(), seed)?),
            violation: Some(violation),
            assumed_hypotheses: assumed.clone(),
        })
    };

    let propagation = check_weight_propagation(space, map)?;
    if !propagation.admissible {
        return violated(IterationViolation::WeightPropagation {
            failures: propagation.failures,
        });
    }
    let contraction =
        check_weighted_contraction(space, map, comparison, options.accept_heuristic)?;
    if !contraction.holds {
        return violated(IterationViolation::Contraction {
            worst: contraction.worst.expect("violating check has a worst pair"),
        });
    }
    let step_weight = |x: Point, y: Point| -> Rational {
        let forward = map.weight(x, y).expect("weights checked above").clone();
        let backward = map.weight(y, x).expect("weights checked above").clone();
        match options.mode {
            Side::Forward => forward,
            Side::Backward => backward,
            Side::Symmetric => forward.min(backward),
        }
    };
    let seed_weight = step_weight(seed, map.value(seed));
    if seed_weight < Rational::one() {
        return violated(IterationViolation::SeedWeight {
            weight: seed_weight,
        });
    }

    let budget = options.max_iter.unwrap_or(10 * space.len());
    let mut steps = Vec::new();
    let mut visited = alloc::vec![false; space.len()];
    let mut x = seed;
    visited[x] = true;
    let mut bound: Option<Rational> = None;
    let mut violation = None;
    let status = loop {
        if map.value(x) == x {
            break TerminalStatus::Converged;
        }
        if steps.len() == budget {
            break TerminalStatus::IterationBudgetExhausted;
        }
        let y = map.value(x);
        let step_distance = space.dist_on(x, y, options.mode);
        let step_bound = match bound {
            None => step_distance.clone(),
            Some(previous) => comparison.eval(&previous),
        };
        let step_bound_ok = step_distance <= step_bound;
        steps.push(StepRecord {
            index: steps.len(),
            from: x,
            to: y,
            step_distance,
            step_bound: step_bound.clone(),
            step_bound_ok,
            weight: Some(step_weight(x, y)),
            target_value: None,
            target_bound: None,
            target_bound_ok: None,
            feasibility_bound: None,
            remaining_bound: None,
        });
        bound = Some(step_bound);
        if !step_bound_ok {
            violation = Some(IterationViolation::StepBound {
                index: steps.len() - 1,
            });
            x = y;
            break TerminalStatus::HypothesisViolated;
        }
        if visited[y] {
            x = y;
            break TerminalStatus::CycleDetected;
        }
        visited[y] = true;
        x = y;
    };

    let terminal_classification = classify_point(space, &map.as_set_valued(), x)?;
    if status == TerminalStatus::Converged && !terminal_classification.is_fixed {
        return Err(SolverError::Internal {
            detail: String::from("orbit terminal failed fixed-point re-verification"),
        });
    }
    Ok(IterationLog {
        method,
        seed,
        steps,
        status,
        terminal: x,
        terminal_classification: Some(terminal_classification),
        violation,
        assumed_hypotheses: assumed,
    })
}

/// Options for the descent solvers.
#[derive(Clone, Debug)]
pub struct DescentOptions {
    /// The contraction factor `c ∈ (0, 1)`.
    pub factor: Rational,
    /// Step budget; defaults to `10 · |X|` (the descent provably needs at
    /// most `|X|` steps, so the default never binds).
    pub max_iter: Option<usize>,
}

impl DescentOptions {
    pub fn new(factor: Rational) -> Self {
        DescentOptions {
            factor,
            max_iter: None,
        }
    }
}

/// The shared descent engine. `value_space` is where point values (the
/// start values of `map` in that space) and step distances are read;
/// `admission` prices a candidate move for the feasibility bound.
fn descend(
    value_space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    seed: Point,
    options: &DescentOptions,
    method: SolveMethod,
    admission: &dyn Fn(Point, Point) -> Rational,
) -> Result<IterationLog, SolverError> {
    value_space.check_point(seed)?;
    check_set_valued_map(value_space, map)?;
    let factor = &options.factor;
    if !in_open_unit_interval(factor) {
        return Err(SolverError::FactorOutOfRange {
            value: factor.clone(),
        });
    }

    // Point values never change during the descent; compute them once.
    let values: Vec<Rational> = (0..value_space.len())
        .map(|x| {
            classify_point(value_space, map, x).map(|classification| classification.start_value)
        })
        .collect::<Result<_, _>>()?;

    let budget = options.max_iter.unwrap_or(10 * value_space.len());
    let initial_value = values[seed].clone();
    let mut steps = Vec::new();
    let mut x = seed;
    let mut geometric = Rational::one();
    let mut first_step: Option<Rational> = None;
    let mut violation = None;
    let one_minus_factor = Rational::one() - factor;

    let status = loop {
        if values[x].is_zero() {
            break TerminalStatus::Converged;
        }
        if steps.len() == budget {
            break TerminalStatus::IterationBudgetExhausted;
        }
        let mut chosen: Option<Point> = None;
        let mut closest: Option<(Rational, PairFinding)> = None;
        for y in map.image(x).iter() {
            let admission_bound = factor * admission(x, y);
            if values[y] <= admission_bound {
                if chosen.is_none_or(|best| values[y] < values[best]) {
                    chosen = Some(y);
                }
            } else {
                let excess = &values[y] - &admission_bound;
                if closest.as_ref().is_none_or(|(current, _)| &excess < current) {
                    closest = Some((
                        excess,
                        PairFinding {
                            x,
                            y,
                            lhs: values[y].clone(),
                            rhs: admission_bound.clone(),
                        },
                    ));
                }
            }
        }
        let Some(y) = chosen else {
            violation = Some(IterationViolation::NoFeasibleSuccessor {
                at: x,
                closest: closest.map(|(_, finding)| finding),
            });
            break TerminalStatus::HypothesisViolated;
        };

        let step_distance = value_space.dist(x, y).clone();
        let first = first_step.get_or_insert_with(|| step_distance.clone()).clone();
        let step_bound = &geometric * &first;
        let step_bound_ok = step_distance <= step_bound;
        let target_bound = &geometric * &initial_value;
        let target_bound_ok = values[y] <= target_bound;
        steps.push(StepRecord {
            index: steps.len(),
            from: x,
            to: y,
            step_distance,
            step_bound,
            step_bound_ok,
            weight: None,
            target_value: Some(values[y].clone()),
            target_bound: Some(target_bound),
            target_bound_ok: Some(target_bound_ok),
            feasibility_bound: Some(factor * admission(x, y)),
            remaining_bound: Some(&geometric * &first / &one_minus_factor),
        });
        if !step_bound_ok || !target_bound_ok {
            violation = Some(IterationViolation::StepBound {
                index: steps.len() - 1,
            });
            x = y;
            break TerminalStatus::HypothesisViolated;
        }
        geometric *= factor;
        x = y;
    };

    Ok(IterationLog {
        method,
        seed,
        steps,
        status,
        terminal: x,
        terminal_classification: None,
        violation,
        assumed_hypotheses: Vec::new(),
    })
}

/// Descends to a startpoint of `map`: at each step, move to an image point
/// whose start value is at most `factor` times the step's distance. See
/// the module docs for the guarantees; the terminal point of a
/// [`TerminalStatus::Converged`] run is re-verified to be a startpoint.
pub fn startpoint_solve(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    seed: Point,
    options: &DescentOptions,
) -> Result<IterationLog, SolverError> {
    let method = SolveMethod::StartpointDescent {
        factor: options.factor.clone(),
    };
    let admission = |x: Point, y: Point| space.dist(x, y).clone();
    let mut log = descend(space, map, seed, options, method, &admission)?;
    let classification = classify_point(space, map, log.terminal)?;
    if log.status == TerminalStatus::Converged && !classification.is_startpoint {
        return Err(SolverError::Internal {
            detail: String::from("descent terminal failed startpoint re-verification"),
        });
    }
    log.terminal_classification = Some(classification);
    Ok(log)
}

/// Descends to an endpoint of `map`: exactly the startpoint descent run on
/// the conjugate space (step distances and values read backward), with the
/// terminal re-verified as an endpoint of the original space.
pub fn endpoint_solve(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    seed: Point,
    options: &DescentOptions,
) -> Result<IterationLog, SolverError> {
    let conjugate = space.conjugate();
    let method = SolveMethod::EndpointDescent {
        factor: options.factor.clone(),
    };
    let admission = |x: Point, y: Point| conjugate.dist(x, y).clone();
    let mut log = descend(&conjugate, map, seed, options, method, &admission)?;
    let classification = classify_point(space, map, log.terminal)?;
    if log.status == TerminalStatus::Converged && !classification.is_endpoint {
        return Err(SolverError::Internal {
            detail: String::from("descent terminal failed endpoint re-verification"),
        });
    }
    log.terminal_classification = Some(classification);
    Ok(log)
}

/// Symmetric descent on a `T0` space: values and step distances are read
/// in the symmetrized space, so a value-zero terminal is simultaneously a
/// fixed point, a startpoint, and an endpoint of `map`.
///
/// Admission prices a move at `factor · min(d(x, y), d(y, x))` by default.
/// `literal_feasibility` switches to the looser one-sided `factor ·
/// d(y, x)`, the literal reading of the condition as usually printed; the
/// geometric step bounds hold under either reading.
pub fn fixed_point_solve(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    seed: Point,
    options: &DescentOptions,
    literal_feasibility: bool,
) -> Result<IterationLog, SolverError> {
    if !space.is_t0() {
        return Err(SolverError::RequiresT0);
    }
    let symmetric = space.symmetrize();
    let method = SolveMethod::SymmetricDescent {
        factor: options.factor.clone(),
        literal_feasibility,
    };
    let admission = |x: Point, y: Point| {
        if literal_feasibility {
            space.dist(y, x).clone()
        } else {
            space.dist(x, y).min(space.dist(y, x)).clone()
        }
    };
    let mut log = descend(&symmetric, map, seed, options, method, &admission)?;
    let classification = classify_point(space, map, log.terminal)?;
    if log.status == TerminalStatus::Converged
        && !(classification.is_fixed
            && classification.is_startpoint
            && classification.is_endpoint)
    {
        return Err(SolverError::Internal {
            detail: String::from("descent terminal failed fixed-point re-verification"),
        });
    }
    log.terminal_classification = Some(classification);
    Ok(log)
}

/// Feasibility of the startpoint-descent hypothesis at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFeasibility {
    pub point: Point,
    /// The point's start value.
    pub value: Rational,
    /// Image points admissible as successors.
    pub feasible: PointSet,
    pub satisfied: bool,
}

/// Pointwise audit of the startpoint-descent hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityAudit {
    pub per_point: Vec<PointFeasibility>,
    /// The hypothesis holds at every point.
    pub universal: bool,
    /// Every failing point is itself a startpoint — the boundary pattern
    /// under which the descent still converges from every seed, because it
    /// stops at value zero before needing a successor.
    pub failures_only_at_startpoints: bool,
}

/// Audits `∃y ∈ Fx: startvalue(y) ≤ factor·d(x, y)` at every point.
pub fn startpoint_feasibility_audit(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    factor: &Rational,
) -> Result<FeasibilityAudit, SolverError> {
    check_set_valued_map(space, map)?;
    if !in_open_unit_interval(factor) {
        return Err(SolverError::FactorOutOfRange {
            value: factor.clone(),
        });
    }
    let values: Vec<Rational> = (0..space.len())
        .map(|x| classify_point(space, map, x).map(|c| c.start_value))
        .collect::<Result<_, _>>()?;
    let mut per_point = Vec::with_capacity(space.len());
    for x in 0..space.len() {
        let feasible: PointSet = map
            .image(x)
            .iter()
            .filter(|&y| values[y] <= factor * space.dist(x, y))
            .collect();
        per_point.push(PointFeasibility {
            point: x,
            value: values[x].clone(),
            satisfied: !feasible.is_empty(),
            feasible,
        });
    }
    let universal = per_point.iter().all(|p| p.satisfied);
    let failures_only_at_startpoints = per_point
        .iter()
        .all(|p| p.satisfied || p.value.is_zero());
    Ok(FeasibilityAudit {
        per_point,
        universal,
        failures_only_at_startpoints,
    })
}

/// One level set's worst pair against the `2/n` gap bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGapCheck {
    pub n: usize,
    /// `None` when the level set has fewer than two members (the bound is
    /// then vacuous); otherwise the pair maximizing the gap
    /// `dˢ(x, y) − ψ(dˢ(x, y))`, with the gap as `lhs` and `2/n` as `rhs`.
    pub worst: Option<PairFinding>,
    pub ok: bool,
}

/// Instance-level audit of the image-contraction theory on a `T0` space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixEquivalenceReport {
    pub contraction: ContractionReport,
    pub approx_mix: ApproxReport,
    /// Points that are simultaneously startpoints and endpoints.
    pub simultaneous: PointSet,
    pub levels: LevelSets,
    /// Per-level gap checks; provable (hence expected to pass) whenever
    /// the contraction holds.
    pub gap_checks: Vec<LevelGapCheck>,
    /// The finite-space reading of the headline equivalence: the
    /// approximate mix value is zero exactly when a simultaneous
    /// start/end point exists.
    pub equivalence_consistent: bool,
    /// All gap checks passed.
    pub decay_consistent: bool,
}

/// Audits the equivalence between the approximate mix property and the
/// existence of simultaneous start/end points, plus the level-set gap
/// decay the contraction forces. Requires a `T0` space and a certified
/// modulus.
pub fn mix_equivalence_report(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    modulus: &FunctionSpec,
    n_max: usize,
    accept_heuristic: bool,
) -> Result<MixEquivalenceReport, SolverError> {
    if !space.is_t0() {
        return Err(SolverError::RequiresT0);
    }
    let contraction = check_image_contraction(space, map, modulus, accept_heuristic)?;
    let approx_mix = approx_value(space, map, ValueKind::Mix)?;
    let levels = level_sets(space, map, n_max)?;
    let simultaneous = levels.core.clone();

    let symmetric = space.symmetrize();
    let mut gap_checks = Vec::with_capacity(n_max);
    for (index, level) in levels.sets.iter().enumerate() {
        let n = index + 1;
        let allowance = ratio(2, n as i64);
        let mut worst: Option<PairFinding> = None;
        for x in level.iter() {
            for y in level.iter() {
                if y <= x {
                    continue;
                }
                let distance = symmetric.dist(x, y);
                let gap = distance - &modulus.eval(distance);
                if worst.as_ref().is_none_or(|w| gap > w.lhs) {
                    worst = Some(PairFinding {
                        x,
                        y,
                        lhs: gap,
                        rhs: allowance.clone(),
                    });
                }
            }
        }
        let ok = worst.as_ref().is_none_or(|w| w.lhs <= w.rhs);
        gap_checks.push(LevelGapCheck { n, worst, ok });
    }

    let equivalence_consistent = approx_mix.value.is_zero() == !simultaneous.is_empty();
    let decay_consistent = gap_checks.iter().all(|check| check.ok);
    Ok(MixEquivalenceReport {
        contraction,
        approx_mix,
        simultaneous,
        levels,
        gap_checks,
        equivalence_consistent,
        decay_consistent,
    })
}

/// Instance-level audit of contractive single-valued maps on `T0` spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleMapAuditReport {
    /// The contraction `d(fx, fy) ≤ ψ(d(x, y))` over all ordered pairs.
    pub contraction: ContractionReport,
    pub approx_start: ApproxReport,
    pub approx_end: ApproxReport,
    pub approx_mix: ApproxReport,
    pub fixed_points: PointSet,
    /// When the contraction holds, the theory promises a fixed point and
    /// zero approximate values with the mix witness fixed; `Some(true)`
    /// when all of that verified, `None` when the contraction fails (the
    /// theory promises nothing).
    pub promises_verified: Option<bool>,
}

/// Audits one single-valued map against the contraction theory's
/// promises. Requires a `T0` space and a certified modulus.
pub fn single_map_audit(
    space: &FiniteQuasiSpace,
    map: &SingleMap,
    modulus: &FunctionSpec,
    accept_heuristic: bool,
) -> Result<SingleMapAuditReport, SolverError> {
    if !space.is_t0() {
        return Err(SolverError::RequiresT0);
    }
    check_single_map(space, map)?;
    let certification = certify_for_role(space, modulus, Role::Modulus, accept_heuristic)?;
    let n = space.len();
    let contraction = contraction_over_pairs(
        certification,
        PairIter::new(n).map(|(x, y)| {
            let lhs = space.dist(map.value(x), map.value(y)).clone();
            let rhs = modulus.eval(space.dist(x, y));
            (x, y, lhs, rhs)
        }),
    );
    let as_set_valued = map.as_set_valued();
    let approx_start = approx_value(space, &as_set_valued, ValueKind::Start)?;
    let approx_end = approx_value(space, &as_set_valued, ValueKind::End)?;
    let approx_mix = approx_value(space, &as_set_valued, ValueKind::Mix)?;
    let fixed_points: PointSet = (0..n).filter(|&x| map.value(x) == x).collect();
    let promises_verified = contraction.holds.then(|| {
        !fixed_points.is_empty()
            && approx_start.value.is_zero()
            && approx_end.value.is_zero()
            && approx_mix.value.is_zero()
            && fixed_points.contains(approx_mix.witness)
    });
    Ok(SingleMapAuditReport {
        contraction,
        approx_start,
        approx_end,
        approx_mix,
        fixed_points,
        promises_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;
    use crate::testutil::{
        asymmetric_pair, complement_map, exit_cost_three, harmonic, labels, rows,
    };

    fn uniform_weights(space: &FiniteQuasiSpace, map: SingleMap) -> SingleMap {
        let n = space.len();
        map.with_weights(space, alloc::vec![alloc::vec![integer(1); n]; n])
            .unwrap()
    }

    fn halve() -> FunctionSpec {
        FunctionSpec::linear(ratio(1, 2)).unwrap()
    }

    #[test]
    fn orbit_reaches_a_fixed_point_with_verified_bounds() {
        let space = harmonic(3);
        // Constant map to the smallest point; weights all 1.
        let map = uniform_weights(&space, SingleMap::new(&space, alloc::vec![2, 2, 2]).unwrap());
        let log =
            picard_solve(&space, &map, &halve(), 0, &OrbitOptions::default()).unwrap();
        assert_eq!(log.status, TerminalStatus::Converged);
        assert_eq!(log.terminal, 2);
        assert_eq!(log.steps.len(), 1);
        let step = &log.steps[0];
        assert_eq!(step.step_distance, ratio(2, 3));
        assert_eq!(step.step_bound, ratio(2, 3));
        assert!(step.step_bound_ok);
        assert_eq!(step.weight, Some(integer(1)));
        assert!(log.terminal_classification.as_ref().unwrap().is_fixed);
    }

    #[test]
    fn orbit_precheck_reports_the_broken_contraction() {
        let space = asymmetric_pair();
        // Swap map: d(f a, f b) = d(b, a) = 1 while γ(d(a, b)) = γ(0) = 0.
        let map = uniform_weights(&space, SingleMap::new(&space, alloc::vec![1, 0]).unwrap());
        let log =
            picard_solve(&space, &map, &halve(), 0, &OrbitOptions::default()).unwrap();
        assert_eq!(log.status, TerminalStatus::HypothesisViolated);
        assert!(log.steps.is_empty());
        match log.violation.unwrap() {
            IterationViolation::Contraction { worst } => {
                assert_eq!((worst.x, worst.y), (0, 1));
                assert_eq!(worst.lhs, integer(1));
                assert_eq!(worst.rhs, integer(0));
            }
            other => panic!("expected a contraction violation, got {other:?}"),
        }
    }

    #[test]
    fn orbit_detects_zero_distance_cycles() {
        // Two points at distance zero both ways (not T0) with the swap
        // map: the contraction holds vacuously and the orbit cycles.
        let flat = FiniteQuasiSpace::new(
            labels(&["a", "b"]),
            rows(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]]),
        )
        .unwrap();
        let map = uniform_weights(&flat, SingleMap::new(&flat, alloc::vec![1, 0]).unwrap());
        let log = picard_solve(&flat, &map, &halve(), 0, &OrbitOptions::default()).unwrap();
        assert_eq!(log.status, TerminalStatus::CycleDetected);
        assert_eq!(log.steps.len(), 2);
        assert_eq!(log.terminal, 0);
    }

    #[test]
    fn orbit_modes_orient_the_seed_weight() {
        let space = asymmetric_pair();
        // Constant map to b; weight 1 only on the pair read backward.
        let map = SingleMap::new(&space, alloc::vec![1, 1])
            .unwrap()
            .with_weights(
                &space,
                alloc::vec![
                    alloc::vec![integer(1), integer(0)],
                    alloc::vec![integer(0), integer(1)],
                ],
            )
            .unwrap();
        let forward = picard_solve(&space, &map, &halve(), 0, &OrbitOptions::default()).unwrap();
        assert_eq!(forward.status, TerminalStatus::HypothesisViolated);
        assert!(matches!(
            forward.violation,
            Some(IterationViolation::SeedWeight { .. })
        ));
        let backward = picard_solve(
            &space,
            &map,
            &halve(),
            0,
            &OrbitOptions {
                mode: Side::Backward,
                ..OrbitOptions::default()
            },
        )
        .unwrap();
        // w(f a, a) = w(b, a) = 0 too: backward also fails here; use b.
        assert_eq!(backward.status, TerminalStatus::HypothesisViolated);
        let from_fixed = picard_solve(&space, &map, &halve(), 1, &OrbitOptions::default()).unwrap();
        assert_eq!(from_fixed.status, TerminalStatus::Converged);
        assert!(from_fixed.steps.is_empty());
    }

    #[test]
    fn orbit_requires_weights_and_certification() {
        let space = asymmetric_pair();
        let bare = SingleMap::new(&space, alloc::vec![0, 0]).unwrap();
        assert!(matches!(
            picard_solve(&space, &bare, &halve(), 0, &OrbitOptions::default()),
            Err(SolverError::MissingWeights)
        ));
        let map = uniform_weights(&space, SingleMap::new(&space, alloc::vec![0, 0]).unwrap());
        let identity = FunctionSpec::linear(integer(1)).unwrap();
        assert!(matches!(
            picard_solve(&space, &map, &identity, 0, &OrbitOptions::default()),
            Err(SolverError::NotCertified { .. })
        ));
    }

    #[test]
    fn startpoint_descent_matches_the_hand_run() {
        let space = harmonic(3);
        let map = complement_map(&space);
        let options = DescentOptions::new(ratio(1, 2));
        let log = startpoint_solve(&space, &map, 0, &options).unwrap();
        assert_eq!(log.status, TerminalStatus::Converged);
        assert_eq!(log.terminal, 2);
        assert_eq!(log.steps.len(), 1);
        let step = &log.steps[0];
        // Both image points are admissible from the top; the zero-value
        // point wins the argmin.
        assert_eq!(step.to, 2);
        assert_eq!(step.step_distance, ratio(2, 3));
        assert_eq!(step.target_value, Some(integer(0)));
        assert_eq!(step.target_bound, Some(ratio(2, 3)));
        assert_eq!(step.feasibility_bound, Some(ratio(1, 3)));
        assert_eq!(step.remaining_bound, Some(ratio(4, 3)));
        assert!(log.terminal_classification.unwrap().is_startpoint);

        let from_middle = startpoint_solve(&space, &map, 1, &options).unwrap();
        assert_eq!(from_middle.status, TerminalStatus::Converged);
        assert_eq!(from_middle.terminal, 2);
        assert_eq!(from_middle.steps.len(), 1);
    }

    #[test]
    fn startpoint_descent_reports_infeasibility_with_the_closest_candidate() {
        let space = harmonic(3);
        let map = complement_map(&space);
        // Seed at the startpoint itself: converges with zero steps.
        let options = DescentOptions::new(ratio(1, 2));
        let at_bottom = startpoint_solve(&space, &map, 2, &options).unwrap();
        assert_eq!(at_bottom.status, TerminalStatus::Converged);
        assert!(at_bottom.steps.is_empty());

        // On the exit-cost space, send the middle point to the expensive
        // one: the only candidate's own value dwarfs the admission bound.
        let costly = exit_cost_three();
        let map = SetValuedMap::new(
            &costly,
            alloc::vec![
                PointSet::singleton(0),
                PointSet::singleton(2),
                PointSet::singleton(0),
            ],
        )
        .unwrap();
        let log = startpoint_solve(&costly, &map, 1, &options).unwrap();
        assert_eq!(log.status, TerminalStatus::HypothesisViolated);
        match log.violation.unwrap() {
            IterationViolation::NoFeasibleSuccessor { at, closest } => {
                assert_eq!(at, 1);
                let closest = closest.unwrap();
                // The candidate's start value d(p2, p0) = 2 misses the
                // admission bound c·d(p1, p2) = 1/2.
                assert_eq!(closest.y, 2);
                assert_eq!(closest.lhs, integer(2));
                assert_eq!(closest.rhs, ratio(1, 2));
            }
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn feasibility_audit_finds_the_boundary_pattern() {
        let space = harmonic(3);
        let map = complement_map(&space);
        let audit = startpoint_feasibility_audit(&space, &map, &ratio(1, 2)).unwrap();
        assert!(!audit.universal);
        assert!(audit.failures_only_at_startpoints);
        // The startpoint is the only unsatisfied point: its image holds no
        // zero-value point and every move away from the bottom is free.
        assert!(!audit.per_point[2].satisfied);
        assert!(audit.per_point[0].satisfied && audit.per_point[1].satisfied);
        assert!(matches!(
            startpoint_feasibility_audit(&space, &map, &integer(1)),
            Err(SolverError::FactorOutOfRange { .. })
        ));
    }

    #[test]
    fn endpoint_descent_is_the_conjugate_startpoint_descent() {
        let space = harmonic(3);
        let map = complement_map(&space);
        let options = DescentOptions::new(ratio(1, 2));
        for seed in 0..3 {
            let endpoint = endpoint_solve(&space, &map, seed, &options).unwrap();
            let conjugated = startpoint_solve(&space.conjugate(), &map, seed, &options).unwrap();
            assert_eq!(endpoint.steps, conjugated.steps);
            assert_eq!(endpoint.status, conjugated.status);
            assert_eq!(endpoint.terminal, conjugated.terminal);
            if endpoint.status == TerminalStatus::Converged {
                assert!(endpoint.terminal_classification.unwrap().is_endpoint);
            }
        }
    }

    #[test]
    fn symmetric_descent_distinguishes_the_two_feasibility_readings() {
        // s → t is free one way only; t's image sits half a unit away
        // symmetrically; u is a genuine fixed point.
        let space = FiniteQuasiSpace::new(
            labels(&["s", "t", "u"]),
            rows(&[
                &[(0, 1), (0, 1), (1, 2)],
                &[(1, 1), (0, 1), (1, 2)],
                &[(3, 2), (1, 2), (0, 1)],
            ]),
        )
        .unwrap();
        assert!(space.is_t0());
        let map = SetValuedMap::new(
            &space,
            alloc::vec![
                PointSet::singleton(1),
                PointSet::singleton(2),
                PointSet::singleton(2),
            ],
        )
        .unwrap();
        let options = DescentOptions::new(ratio(1, 2));
        // Default admission prices s → t at c·min(0, 1) = 0, but the
        // target's symmetric value is 1/2: infeasible.
        let strict_min = fixed_point_solve(&space, &map, 0, &options, false).unwrap();
        assert_eq!(strict_min.status, TerminalStatus::HypothesisViolated);
        // The literal one-sided reading prices it at c·d(t, s) = 1/2,
        // which admits the move; the descent then reaches the fixed point.
        let literal = fixed_point_solve(&space, &map, 0, &options, true).unwrap();
        assert_eq!(literal.status, TerminalStatus::Converged);
        assert_eq!(literal.terminal, 2);
        let classification = literal.terminal_classification.unwrap();
        assert!(classification.is_fixed && classification.is_startpoint && classification.is_endpoint);
    }

    #[test]
    fn symmetric_descent_requires_t0() {
        let flat = FiniteQuasiSpace::new(
            labels(&["a", "b"]),
            rows(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]]),
        )
        .unwrap();
        let map = crate::testutil::whole_space_map(&flat);
        assert!(matches!(
            fixed_point_solve(&flat, &map, 0, &DescentOptions::new(ratio(1, 2)), false),
            Err(SolverError::RequiresT0)
        ));
    }

    #[test]
    fn mix_equivalence_certifies_the_constant_map() {
        let space = exit_cost_three();
        let map = SetValuedMap::new(&space, alloc::vec![PointSet::singleton(0); 3]).unwrap();
        let report = mix_equivalence_report(&space, &map, &halve(), 3, false).unwrap();
        assert!(report.contraction.holds);
        assert_eq!(report.approx_mix.value, integer(0));
        assert_eq!(report.approx_mix.witness, 0);
        assert_eq!(report.simultaneous, PointSet::singleton(0));
        assert!(report.equivalence_consistent);
        assert!(report.decay_consistent);
        // Level 1 holds the two low-cost points; its worst pair gap is
        // d(0,1)=0, d(1,0)=1 → dˢ=1, gap 1 − 1/2 = 1/2 ≤ 2.
        assert_eq!(report.levels.sets[0].as_slice(), &[0, 1]);
        let worst = report.gap_checks[0].worst.as_ref().unwrap();
        assert_eq!(worst.lhs, ratio(1, 2));
        assert_eq!(worst.rhs, integer(2));
    }

    #[test]
    fn mix_equivalence_reports_contraction_failures_without_guessing() {
        let space = exit_cost_three();
        let map = complement_map(&space);
        let report = mix_equivalence_report(&space, &map, &halve(), 2, false).unwrap();
        // H(F p0, F p1) = H({p1, p2}, {p0, p2}) is positive while
        // d(p0, p1) = 0: the contraction fails with an infinite ratio.
        assert!(!report.contraction.holds);
        assert_eq!(report.contraction.max_ratio, Some(ExtendedRational::Infinite));
        // The equivalence readout is still computed (it is arithmetic):
        // no simultaneous point, positive mix value.
        assert!(report.simultaneous.is_empty());
        assert_eq!(report.approx_mix.value, integer(2));
        assert!(report.equivalence_consistent);
    }

    #[test]
    fn single_map_audit_verifies_the_promises() {
        let space = harmonic(3);
        let map = SingleMap::new(&space, alloc::vec![2, 2, 2]).unwrap();
        let report = single_map_audit(&space, &map, &halve(), false).unwrap();
        assert!(report.contraction.holds);
        assert_eq!(report.fixed_points, PointSet::singleton(2));
        assert_eq!(report.approx_start.value, integer(0));
        assert_eq!(report.approx_start.witness, 2);
        // Every point reaches the image for free backward: d(1/3, x) = 0.
        assert_eq!(report.approx_end.value, integer(0));
        assert_eq!(report.approx_end.witness, 0);
        assert_eq!(report.promises_verified, Some(true));

        // The shift-up map x ↦ 1 moves everything to the top: going there
        // is free, coming back is not, and the contraction fails.
        let shift = SingleMap::new(&space, alloc::vec![0, 0, 0]).unwrap();
        let report = single_map_audit(&space, &shift, &halve(), false).unwrap();
        assert!(report.contraction.holds); // constant maps always contract
        assert_eq!(report.fixed_points, PointSet::singleton(0));
        assert_eq!(report.promises_verified, Some(true));

        let swap = SingleMap::new(&space, alloc::vec![1, 0, 2]).unwrap();
        let report = single_map_audit(&space, &swap, &halve(), false).unwrap();
        assert!(!report.contraction.holds);
        assert_eq!(report.promises_verified, None);
    }

    #[test]
    fn contraction_reports_carry_worst_pair_and_ratio() {
        let space = harmonic(3);
        let map = uniform_weights(&space, SingleMap::new(&space, alloc::vec![0, 0, 0]).unwrap());
        // Moving everything to the top costs nothing forward, so the
        // weighted contraction holds with γ = t/2.
        let report = check_weighted_contraction(&space, &map, &halve(), false).unwrap();
        assert!(report.holds);
        assert!(report.worst.is_none());
        assert!(report.max_ratio.is_none());

        // Swapping the two largest points breaks it. Two pairs violate:
        // (1, 0) with lhs d(1, 1/2) = 1/2 against γ(d(1/2, 1)) = 0, and
        // (1, 2) with lhs d(1, 1/3) = 2/3 against γ(1/6) = 1/12. The
        // worst by excess is (1, 2); the ratio at (1, 0) is infinite.
        let swap = uniform_weights(&space, SingleMap::new(&space, alloc::vec![1, 0, 2]).unwrap());
        let report = check_weighted_contraction(&space, &swap, &halve(), false).unwrap();
        assert!(!report.holds);
        let worst = report.worst.unwrap();
        assert_eq!((worst.x, worst.y), (1, 2));
        assert_eq!(worst.lhs, ratio(2, 3));
        assert_eq!(worst.rhs, ratio(1, 12));
        assert_eq!(report.max_ratio, Some(ExtendedRational::Infinite));
    }
}
