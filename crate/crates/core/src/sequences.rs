//! Sequence traces and the asymmetric convergence/Cauchy taxonomy.
//!
//! Infinite sequences cannot be handed to a program, so the unit of
//! analysis is a [`SequenceTrace`]: a finite run of points, optionally
//! flagged as *eventually periodic* — from some index on, the recorded
//! suffix repeats forever. The flag is what makes exact verdicts possible:
//!
//! - On a flagged trace every tail property is decided by the finite cycle
//!   set, so verdicts are exact ([`VerdictStatus::Holds`] /
//!   [`VerdictStatus::Fails`]) and failures carry exact witnesses.
//! - On an unflagged trace nothing about the unseen tail is provable either
//!   way. Verdicts then speak only about the observed window at threshold
//!   `1 / len`: [`VerdictStatus::HoldsUpToHorizon`] when the window is
//!   consistent with the property having set in, [`VerdictStatus::Fails`]
//!   (with the offending index) when it is not. `Holds` is never issued.
//!
//! Convergence in the topology of `d` reads distances *from* the candidate
//! limit: `x_n → y` means `d(y, x_n) → 0`. The backward variant reads
//! `d(x_n, y)`, the symmetric one both.
//!
//! Five Cauchy-type conditions are classified ([`CauchyKind`]). The
//! provable implications between them — symmetric implies both K-variants,
//! each K-variant implies the plain variant on its side, symmetric is
//! exactly the conjunction of the two K-variants, and the left-K condition
//! for `d` is the right-K condition for the conjugate — are audited by
//! [`check_hierarchy`]; any violation it reports is a bug in this crate.
//! One further pairing sometimes quoted — plain-left for `d` matching
//! right-K for the conjugate — is *not* provable; the report records when
//! the two verdicts actually differ instead of asserting it
//! ([`HierarchyReport::plain_left_pairing_discrepancy`]).

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::rational::{ratio, Rational};
use crate::space::{FiniteQuasiSpace, Point, Side, SpaceError};

/// A finite run of points, optionally flagged as repeating its suffix
/// forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTrace {
    points: Vec<Point>,
    cycle_from: Option<usize>,
}

/// Errors from building or classifying traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceError {
    Space(SpaceError),
    /// Traces must contain at least one point.
    EmptyTrace,
    /// The cycle flag must point inside the trace.
    CycleStartOutOfRange { start: usize, len: usize },
    /// The operation needs a trace that converges to the candidate point.
    NotConvergent { observed: VerdictStatus },
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::Space(err) => write!(f, "{err}"),
            SequenceError::EmptyTrace => write!(f, "trace must contain at least one point"),
            SequenceError::CycleStartOutOfRange { start, len } => {
                write!(f, "cycle start {start} out of range for a trace of length {len}")
            }
            SequenceError::NotConvergent { observed } => {
                write!(f, "trace does not converge to the candidate (verdict: {observed})")
            }
        }
    }
}

impl core::error::Error for SequenceError {}

impl From<SpaceError> for SequenceError {
    fn from(err: SpaceError) -> Self {
        SequenceError::Space(err)
    }
}

impl SequenceTrace {
    /// A plain finite trace: nothing is known beyond the recorded window.
    pub fn new(points: Vec<Point>) -> Result<Self, SequenceError> {
        if points.is_empty() {
            return Err(SequenceError::EmptyTrace);
        }
        Ok(SequenceTrace {
            points,
            cycle_from: None,
        })
    }

    /// A trace whose suffix starting at `cycle_from` repeats forever: the
    /// infinite sequence continues `points[cycle_from..]` cyclically.
    pub fn cyclic(points: Vec<Point>, cycle_from: usize) -> Result<Self, SequenceError> {
        if points.is_empty() {
            return Err(SequenceError::EmptyTrace);
        }
        if cycle_from >= points.len() {
            return Err(SequenceError::CycleStartOutOfRange {
                start: cycle_from,
                len: points.len(),
            });
        }
        Ok(SequenceTrace {
            points,
            cycle_from: Some(cycle_from),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index the repeating suffix starts at, when flagged.
    pub fn cycle_from(&self) -> Option<usize> {
        self.cycle_from
    }

    pub fn is_cyclic(&self) -> bool {
        self.cycle_from.is_some()
    }

    /// Indices of the repeating suffix, when flagged.
    fn cycle_positions(&self) -> Option<core::ops::Range<usize>> {
        self.cycle_from.map(|c| c..self.points.len())
    }

    /// The smallest index from which the trace is provably constant
    /// forever: requires the cycle flag and a one-point cycle value.
    /// Unflagged traces return `None` however constant they look.
    pub fn eventually_constant_from(&self) -> Option<usize> {
        let positions = self.cycle_positions()?;
        let value = self.points[positions.start];
        if self.points[positions].iter().any(|&p| p != value) {
            return None;
        }
        let mut from = self.cycle_from.expect("flag checked above");
        while from > 0 && self.points[from - 1] == value {
            from -= 1;
        }
        Some(from)
    }

    fn check_in(&self, space: &FiniteQuasiSpace) -> Result<(), SequenceError> {
        for &p in &self.points {
            space.check_point(p)?;
        }
        Ok(())
    }

    /// Window threshold for unflagged traces: `1 / len`.
    fn horizon_threshold(&self) -> Rational {
        ratio(1, self.points.len() as i64)
    }
}

/// Outcome strength of a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictStatus {
    /// Refuted. Exact on flagged traces; on unflagged traces it means the
    /// observed window itself is inconsistent with the property at the
    /// `1 / len` threshold — it says nothing about unseen extensions.
    Fails,
    /// The window is consistent with the property; nothing stronger can be
    /// said from an unflagged finite trace.
    HoldsUpToHorizon,
    /// Proved from the cycle structure. Only flagged traces earn this.
    Holds,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictStatus::Holds => write!(f, "holds"),
            VerdictStatus::HoldsUpToHorizon => write!(f, "holds-up-to-horizon"),
            VerdictStatus::Fails => write!(f, "fails"),
        }
    }
}

/// Exact data refuting a property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureWitness {
    /// A positive distance at which the property fails; for flagged traces
    /// it recurs forever, for unflagged ones it is observed at the horizon.
    pub epsilon: Rational,
    /// Trace index exhibiting the failure; for pair-based (Cauchy)
    /// failures, the earlier of the two positions.
    pub index: usize,
    /// The later position for pair-based (Cauchy) failures.
    pub partner: Option<usize>,
}

/// Classification result: a status plus the evidence that earns it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// Present exactly when `status` is `Fails`.
    pub failure: Option<FailureWitness>,
    /// For the plain (existential) Cauchy conditions: the auxiliary point
    /// that witnesses success.
    pub auxiliary: Option<Point>,
}

impl Verdict {
    fn holds() -> Self {
        Verdict {
            status: VerdictStatus::Holds,
            failure: None,
            auxiliary: None,
        }
    }

    fn holds_with(auxiliary: Point) -> Self {
        Verdict {
            status: VerdictStatus::Holds,
            failure: None,
            auxiliary: Some(auxiliary),
        }
    }

    fn horizon() -> Self {
        Verdict {
            status: VerdictStatus::HoldsUpToHorizon,
            failure: None,
            auxiliary: None,
        }
    }

    fn horizon_with(auxiliary: Point) -> Self {
        Verdict {
            status: VerdictStatus::HoldsUpToHorizon,
            failure: None,
            auxiliary: Some(auxiliary),
        }
    }

    fn fails(epsilon: Rational, index: usize, partner: Option<usize>) -> Self {
        Verdict {
            status: VerdictStatus::Fails,
            failure: Some(FailureWitness {
                epsilon,
                index,
                partner,
            }),
            auxiliary: None,
        }
    }
}

/// Does the trace converge to `candidate` in the topology chosen by
/// `side`? Forward reads `d(candidate, x_n)`, backward `d(x_n, candidate)`,
/// symmetric the max of both.
pub fn classify_convergence(
    space: &FiniteQuasiSpace,
    trace: &SequenceTrace,
    candidate: Point,
    side: Side,
) -> Result<Verdict, SequenceError> {
    space.check_point(candidate)?;
    trace.check_in(space)?;
    if let Some(positions) = trace.cycle_positions() {
        for i in positions {
            let value = space.dist_on(candidate, trace.points[i], side);
            if !value.is_zero() {
                return Ok(Verdict::fails(value, i, None));
            }
        }
        return Ok(Verdict::holds());
    }
    let last = trace.len() - 1;
    let value = space.dist_on(candidate, trace.points[last], side);
    if value < trace.horizon_threshold() {
        Ok(Verdict::horizon())
    } else {
        Ok(Verdict::fails(value, last, None))
    }
}

/// The five Cauchy-type conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CauchyKind {
    /// Some auxiliary point `x` has `d(x, x_n) → 0`. The textbook form
    /// lets `x` depend on the tolerance; over a finite space the two
    /// readings coincide, so the uniform one is computed.
    PlainLeft,
    /// Some auxiliary point `x` has `d(x_n, x) → 0`.
    PlainRight,
    /// `d(x_m, x_n) → 0` jointly as `n ≥ m → ∞`.
    LeftK,
    /// `d(x_n, x_m) → 0` jointly as `n ≥ m → ∞`.
    RightK,
    /// The K-condition for the symmetrized distance.
    Symmetric,
}

impl fmt::Display for CauchyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CauchyKind::PlainLeft => write!(f, "plain-left"),
            CauchyKind::PlainRight => write!(f, "plain-right"),
            CauchyKind::LeftK => write!(f, "left-K"),
            CauchyKind::RightK => write!(f, "right-K"),
            CauchyKind::Symmetric => write!(f, "symmetric"),
        }
    }
}

/// Classifies the trace against one Cauchy condition.
///
/// Flagged traces are decided exactly. In the repeating suffix every
/// ordered pair of cycle values occurs in both orders infinitely often, so
/// the K-conditions reduce to "all ordered pairs of cycle values at
/// distance zero" — which also makes the two K-variants and the symmetric
/// one coincide on flagged traces.
///
/// Unflagged traces are checked at the window threshold `1 / len`: the
/// K-conditions look at the final step, the plain conditions search for an
/// auxiliary point within the threshold of the final term (the final term
/// itself always qualifies, so they are always window-consistent; the
/// auxiliary is reported).
pub fn classify_cauchy(
    space: &FiniteQuasiSpace,
    trace: &SequenceTrace,
    kind: CauchyKind,
) -> Result<Verdict, SequenceError> {
    trace.check_in(space)?;
    match kind {
        CauchyKind::PlainLeft => classify_plain(space, trace, Side::Forward),
        CauchyKind::PlainRight => classify_plain(space, trace, Side::Backward),
        CauchyKind::LeftK => classify_k(space, trace, Side::Forward),
        CauchyKind::RightK => classify_k(space, trace, Side::Backward),
        CauchyKind::Symmetric => classify_k(space, trace, Side::Symmetric),
    }
}

/// Plain (existential) condition; `side` orients the distance between the
/// auxiliary point and the trace terms.
fn classify_plain(
    space: &FiniteQuasiSpace,
    trace: &SequenceTrace,
    side: Side,
) -> Result<Verdict, SequenceError> {
    if let Some(positions) = trace.cycle_positions() {
        // Exact: an auxiliary x works iff it sits at distance zero to every
        // cycle value. Report the best auxiliary's gap on failure.
        let mut best: Option<(Rational, usize)> = None;
        for x in 0..space.len() {
            let mut worst: Option<(Rational, usize)> = None;
            for i in positions.clone() {
                let value = space.dist_on(x, trace.points[i], side);
                if worst.as_ref().is_none_or(|(w, _)| &value > w) {
                    worst = Some((value, i));
                }
            }
            let (gap, index) = worst.expect("cycle is nonempty");
            if gap.is_zero() {
                return Ok(Verdict::holds_with(x));
            }
            if best.as_ref().is_none_or(|(b, _)| &gap < b) {
                best = Some((gap, index));
            }
        }
        let (epsilon, index) = best.expect("space is nonempty");
        return Ok(Verdict::fails(epsilon, index, None));
    }
    // Window reading: the final term is its own auxiliary at distance zero.
    Ok(Verdict::horizon_with(trace.points[trace.len() - 1]))
}

/// K-type condition; `side` orients the pair distance (`Forward` reads
/// earlier-to-later, `Backward` later-to-earlier, `Symmetric` the max).
fn classify_k(
    space: &FiniteQuasiSpace,
    trace: &SequenceTrace,
    side: Side,
) -> Result<Verdict, SequenceError> {
    if let Some(positions) = trace.cycle_positions() {
        for i in positions.clone() {
            for j in positions.clone() {
                let value = space.dist_on(trace.points[i], trace.points[j], side);
                if !value.is_zero() {
                    return Ok(Verdict::fails(value, i, Some(j)));
                }
            }
        }
        return Ok(Verdict::holds());
    }
    if trace.len() == 1 {
        return Ok(Verdict::horizon());
    }
    let (m, n) = (trace.len() - 2, trace.len() - 1);
    let value = space.dist_on(trace.points[m], trace.points[n], side);
    if value < trace.horizon_threshold() {
        Ok(Verdict::horizon())
    } else {
        // The witness is reported position-canonically (earlier, later)
        // whatever the side, so conjugating the space swaps the left and
        // right conditions into each other verbatim, witnesses included.
        Ok(Verdict::fails(value, m, Some(n)))
    }
}

/// A provable relation between Cauchy conditions that did not hold on this
/// trace. Any of these indicates a bug in this crate, not a property of
/// the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HierarchyViolation {
    /// `premise` is provably at least as strong as `conclusion`, yet the
    /// conclusion's verdict came out weaker.
    Implication {
        premise: CauchyKind,
        conclusion: CauchyKind,
        premise_status: VerdictStatus,
        conclusion_status: VerdictStatus,
    },
    /// The symmetric condition must be exactly the conjunction of the two
    /// K-conditions.
    JoinMismatch {
        symmetric: VerdictStatus,
        left_k: VerdictStatus,
        right_k: VerdictStatus,
    },
    /// Left-K here must agree with right-K on the conjugate space.
    DualityMismatch {
        here: VerdictStatus,
        conjugate: VerdictStatus,
    },
}

/// All five verdicts for one trace plus an audit of the provable
/// implications between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyReport {
    pub plain_left: Verdict,
    pub plain_right: Verdict,
    pub left_k: Verdict,
    pub right_k: Verdict,
    pub symmetric: Verdict,
    /// Violated provable relations; nonempty only on a toolkit bug.
    pub violations: Vec<HierarchyViolation>,
    /// The unprovable pairing "plain-left here vs right-K on the
    /// conjugate": recorded as `Some((left, right))` when the two statuses
    /// differ on this trace, `None` when they happen to agree. Never a
    /// violation.
    pub plain_left_pairing_discrepancy: Option<(VerdictStatus, VerdictStatus)>,
}

/// Classifies the trace under all five conditions and audits the provable
/// implication lattice between the verdicts.
pub fn check_hierarchy(
    space: &FiniteQuasiSpace,
    trace: &SequenceTrace,
) -> Result<HierarchyReport, SequenceError> {
    let plain_left = classify_cauchy(space, trace, CauchyKind::PlainLeft)?;
    let plain_right = classify_cauchy(space, trace, CauchyKind::PlainRight)?;
    let left_k = classify_cauchy(space, trace, CauchyKind::LeftK)?;
    let right_k = classify_cauchy(space, trace, CauchyKind::RightK)?;
    let symmetric = classify_cauchy(space, trace, CauchyKind::Symmetric)?;

    let mut violations = Vec::new();
    let implications = [
        (CauchyKind::Symmetric, &symmetric, CauchyKind::LeftK, &left_k),
        (CauchyKind::Symmetric, &symmetric, CauchyKind::RightK, &right_k),
        (CauchyKind::LeftK, &left_k, CauchyKind::PlainLeft, &plain_left),
        (CauchyKind::RightK, &right_k, CauchyKind::PlainRight, &plain_right),
    ];
    for (premise, premise_verdict, conclusion, conclusion_verdict) in implications {
        if conclusion_verdict.status < premise_verdict.status {
            violations.push(HierarchyViolation::Implication {
                premise,
                conclusion,
                premise_status: premise_verdict.status,
                conclusion_status: conclusion_verdict.status,
            });
        }
    }
    if symmetric.status != left_k.status.min(right_k.status) {
        violations.push(HierarchyViolation::JoinMismatch {
            symmetric: symmetric.status,
            left_k: left_k.status,
            right_k: right_k.status,
        });
    }

    let conjugate = space.conjugate();
    let conjugate_right_k = classify_cauchy(&conjugate, trace, CauchyKind::RightK)?;
    if conjugate_right_k.status != left_k.status {
        violations.push(HierarchyViolation::DualityMismatch {
            here: left_k.status,
            conjugate: conjugate_right_k.status,
        });
    }
    let plain_left_pairing_discrepancy = if conjugate_right_k.status != plain_left.status {
        Some((plain_left.status, conjugate_right_k.status))
    } else {
        None
    };

    Ok(HierarchyReport {
        plain_left,
        plain_right,
        left_k,
        right_k,
        symmetric,
        violations,
        plain_left_pairing_discrepancy,
    })
}

/// Semicontinuity probe of the two distance functionals along a convergent
/// trace.
///
/// When the trace converges forward to `candidate`, the triangle
/// inequality forces, for any fixed `anchor`:
///
/// - upper semicontinuity of `z ↦ d(anchor, z)`:
///   `limsup d(anchor, x_n) ≤ d(anchor, candidate)`, and
/// - lower semicontinuity of `z ↦ d(z, anchor)`:
///   `liminf d(x_n, anchor) ≥ d(candidate, anchor)`.
///
/// Both are checked exactly on flagged traces and at the `1 / len` slack on
/// unflagged ones; a `Fails` verdict here means a bug in this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemicontinuityReport {
    pub upper: Verdict,
    pub lower: Verdict,
}

/// Probes both semicontinuity claims. Errors with
/// [`SequenceError::NotConvergent`] unless the trace converges forward to
/// `candidate` (exactly, or within the window for unflagged traces).
pub fn semicontinuity_probe(
    space: &FiniteQuasiSpace,
    anchor: Point,
    trace: &SequenceTrace,
    candidate: Point,
) -> Result<SemicontinuityReport, SequenceError> {
    space.check_point(anchor)?;
    let convergence = classify_convergence(space, trace, candidate, Side::Forward)?;
    if convergence.status == VerdictStatus::Fails {
        return Err(SequenceError::NotConvergent {
            observed: convergence.status,
        });
    }

    let upper_bound = space.dist(anchor, candidate).clone();
    let lower_bound = space.dist(candidate, anchor).clone();

    if let Some(positions) = trace.cycle_positions() {
        let (limsup, sup_index) = positions
            .clone()
            .map(|i| (space.dist(anchor, trace.points[i]).clone(), i))
            .max_by(|(a, _), (b, _)| a.cmp(b))
            .expect("cycle is nonempty");
        let upper = if limsup <= upper_bound {
            Verdict::holds()
        } else {
            Verdict::fails(limsup - &upper_bound, sup_index, None)
        };
        let (liminf, inf_index) = positions
            .map(|i| (space.dist(trace.points[i], anchor).clone(), i))
            .min_by(|(a, _), (b, _)| a.cmp(b))
            .expect("cycle is nonempty");
        let lower = if liminf >= lower_bound {
            Verdict::holds()
        } else {
            Verdict::fails(lower_bound - &liminf, inf_index, None)
        };
        return Ok(SemicontinuityReport { upper, lower });
    }

    let last = trace.len() - 1;
    let slack = trace.horizon_threshold();
    let observed_up = space.dist(anchor, trace.points[last]).clone();
    let upper = if observed_up <= &upper_bound + &slack {
        Verdict::horizon()
    } else {
        Verdict::fails(observed_up - &upper_bound, last, None)
    };
    let observed_down = space.dist(trace.points[last], anchor).clone();
    let lower = if &observed_down + &slack >= lower_bound {
        Verdict::horizon()
    } else {
        Verdict::fails(lower_bound - &observed_down, last, None)
    };
    Ok(SemicontinuityReport { upper, lower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;
    use crate::testutil::asymmetric_pair;

    #[test]
    fn trace_construction_validates() {
        assert!(matches!(
            SequenceTrace::new(Vec::new()),
            Err(SequenceError::EmptyTrace)
        ));
        assert!(matches!(
            SequenceTrace::cyclic(alloc::vec![0, 1], 2),
            Err(SequenceError::CycleStartOutOfRange { start: 2, len: 2 })
        ));
        let trace = SequenceTrace::cyclic(alloc::vec![1, 0], 1).unwrap();
        assert_eq!(trace.eventually_constant_from(), Some(1));
        // Constant prefix extends the provably-constant region backwards.
        let trace = SequenceTrace::cyclic(alloc::vec![1, 0, 0], 2).unwrap();
        assert_eq!(trace.eventually_constant_from(), Some(1));
        // A two-value cycle is not eventually constant.
        let trace = SequenceTrace::cyclic(alloc::vec![0, 1], 0).unwrap();
        assert_eq!(trace.eventually_constant_from(), None);
        // Unflagged traces never prove constancy.
        let trace = SequenceTrace::new(alloc::vec![0, 0, 0]).unwrap();
        assert_eq!(trace.eventually_constant_from(), None);
    }

    #[test]
    fn convergence_is_direction_sensitive() {
        let space = asymmetric_pair();
        // Tail constant at a.
        let trace = SequenceTrace::cyclic(alloc::vec![1, 0], 1).unwrap();
        let forward_a = classify_convergence(&space, &trace, 0, Side::Forward).unwrap();
        assert_eq!(forward_a.status, VerdictStatus::Holds);
        // d(b, a) = 1, so the same tail does not converge forward to b...
        let forward_b = classify_convergence(&space, &trace, 1, Side::Forward).unwrap();
        assert_eq!(forward_b.status, VerdictStatus::Fails);
        assert_eq!(
            forward_b.failure,
            Some(FailureWitness {
                epsilon: integer(1),
                index: 1,
                partner: None
            })
        );
        // ...but it does converge backward to b, because d(a, b) = 0.
        let backward_b = classify_convergence(&space, &trace, 1, Side::Backward).unwrap();
        assert_eq!(backward_b.status, VerdictStatus::Holds);
        let sym_b = classify_convergence(&space, &trace, 1, Side::Symmetric).unwrap();
        assert_eq!(sym_b.status, VerdictStatus::Fails);
    }

    #[test]
    fn unflagged_traces_top_out_at_the_horizon() {
        let space = asymmetric_pair();
        let trace = SequenceTrace::new(alloc::vec![1, 0]).unwrap();
        let to_a = classify_convergence(&space, &trace, 0, Side::Forward).unwrap();
        assert_eq!(to_a.status, VerdictStatus::HoldsUpToHorizon);
        // d(b, a) = 1 ≥ 1/2: window-inconsistent with convergence to b.
        let to_b = classify_convergence(&space, &trace, 1, Side::Forward).unwrap();
        assert_eq!(to_b.status, VerdictStatus::Fails);
        assert_eq!(to_b.failure.unwrap().index, 1);
    }

    #[test]
    fn periodic_two_cycle_separates_plain_from_k() {
        let space = asymmetric_pair();
        let trace = SequenceTrace::cyclic(alloc::vec![0, 1], 0).unwrap();
        // a itself is an auxiliary for plain-left: d(a, a) = d(a, b) = 0.
        let plain_left = classify_cauchy(&space, &trace, CauchyKind::PlainLeft).unwrap();
        assert_eq!(plain_left.status, VerdictStatus::Holds);
        assert_eq!(plain_left.auxiliary, Some(0));
        // b is an auxiliary for plain-right: d(a, b) = d(b, b) = 0.
        let plain_right = classify_cauchy(&space, &trace, CauchyKind::PlainRight).unwrap();
        assert_eq!(plain_right.status, VerdictStatus::Holds);
        assert_eq!(plain_right.auxiliary, Some(1));
        // The pair (b, a) recurs in both orders with d(b, a) = 1, killing
        // every K-variant.
        for kind in [CauchyKind::LeftK, CauchyKind::RightK, CauchyKind::Symmetric] {
            let verdict = classify_cauchy(&space, &trace, kind).unwrap();
            assert_eq!(verdict.status, VerdictStatus::Fails, "{kind}");
            assert_eq!(verdict.failure.as_ref().unwrap().epsilon, integer(1));
        }
    }

    #[test]
    fn hierarchy_is_consistent_and_records_the_pairing_discrepancy() {
        let space = asymmetric_pair();
        let trace = SequenceTrace::cyclic(alloc::vec![0, 1], 0).unwrap();
        let report = check_hierarchy(&space, &trace).unwrap();
        assert!(report.violations.is_empty());
        // Plain-left holds here while right-K on the conjugate fails: the
        // often-quoted pairing of those two is genuinely not a theorem.
        assert_eq!(
            report.plain_left_pairing_discrepancy,
            Some((VerdictStatus::Holds, VerdictStatus::Fails))
        );
    }

    #[test]
    fn hierarchy_on_constant_tail_holds_everything() {
        let space = asymmetric_pair();
        let trace = SequenceTrace::cyclic(alloc::vec![1, 0], 1).unwrap();
        let report = check_hierarchy(&space, &trace).unwrap();
        assert!(report.violations.is_empty());
        for verdict in [
            &report.plain_left,
            &report.plain_right,
            &report.left_k,
            &report.right_k,
            &report.symmetric,
        ] {
            assert_eq!(verdict.status, VerdictStatus::Holds);
        }
        assert_eq!(report.plain_left_pairing_discrepancy, None);
    }

    #[test]
    fn windowed_k_checks_look_at_the_final_step() {
        let space = asymmetric_pair();
        // Final step b → a has d(b, a) = 1 ≥ 1/2: left-K window fails.
        let trace = SequenceTrace::new(alloc::vec![1, 0]).unwrap();
        let left_k = classify_cauchy(&space, &trace, CauchyKind::LeftK).unwrap();
        assert_eq!(left_k.status, VerdictStatus::Fails);
        assert_eq!(left_k.failure.unwrap().partner, Some(1));
        // Read the other way d(a, b) = 0 < 1/2.
        let right_k = classify_cauchy(&space, &trace, CauchyKind::RightK).unwrap();
        assert_eq!(right_k.status, VerdictStatus::HoldsUpToHorizon);
        // Plain conditions are always window-consistent; auxiliary is the
        // final term.
        let plain = classify_cauchy(&space, &trace, CauchyKind::PlainLeft).unwrap();
        assert_eq!(plain.status, VerdictStatus::HoldsUpToHorizon);
        assert_eq!(plain.auxiliary, Some(0));
        // The hierarchy stays consistent in the window regime too.
        assert!(check_hierarchy(&space, &trace).unwrap().violations.is_empty());
    }

    #[test]
    fn semicontinuity_probe_validates_and_holds() {
        let space = asymmetric_pair();
        let trace = SequenceTrace::cyclic(alloc::vec![1, 0], 1).unwrap();
        // Converges forward to a; anchor at b: limsup d(b, x_n) = 1 ≤
        // d(b, a) = 1 and liminf d(x_n, b) = 0 ≥ d(a, b) = 0.
        let report = semicontinuity_probe(&space, 1, &trace, 0).unwrap();
        assert_eq!(report.upper.status, VerdictStatus::Holds);
        assert_eq!(report.lower.status, VerdictStatus::Holds);
        // The probe refuses a non-convergent trace.
        assert!(matches!(
            semicontinuity_probe(&space, 0, &trace, 1),
            Err(SequenceError::NotConvergent { .. })
        ));
    }
}
