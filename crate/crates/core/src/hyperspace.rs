//! Asymmetric Hausdorff distances between point sets.
//!
//! For nonempty sets `A`, `B` the Hausdorff quasi-pseudometric is
//!
//! ```text
//! H(A, B) = max( sup_{a∈A} d(a, B),  sup_{b∈B} d(A, b) )
//! ```
//!
//! where `d(x, B) = min_{b∈B} d(x, b)` and `d(A, y) = min_{a∈A} d(a, y)`.
//! In general the value lives in the extended nonnegative rationals; over a
//! finite space every supremum is attained, so reports always carry a
//! finite value together with the points attaining it.
//!
//! `H` satisfies the quasi-pseudometric axioms on every family of nonempty
//! sets. It separates sets (the `T0` condition) only on the family of sets
//! that equal the intersection of their forward and backward closures —
//! membership in that family is [`is_join_closed`] — and
//! [`check_family_axioms`] verifies all of this on a concrete family,
//! reporting witnesses when a claim fails outside its hypotheses.
//!
//! Useful singleton reductions, used heavily by the map-classification
//! code: `H({x}, B) = max_{b∈B} d(x, b)` and `H(A, {y}) = max_{a∈A} d(a, y)`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::rational::{ExtendedRational, Rational};
use crate::space::{FiniteQuasiSpace, Point, PointSet, Side, SpaceError};

/// Result of a Hausdorff distance computation, with the points attaining
/// the defining maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperDistanceReport {
    /// The distance `H(A, B)`. Finite on finite spaces; the extended type
    /// states the honest codomain of the construction.
    pub value: ExtendedRational,
    /// Point of `A` maximizing `d(a, B)` (smallest index on ties).
    pub witness_in_left: Point,
    /// Point of `B` maximizing `d(A, b)` (smallest index on ties).
    pub witness_in_right: Point,
}

impl HyperDistanceReport {
    /// The value as a plain rational (always present on finite spaces).
    pub fn finite_value(&self) -> &Rational {
        self.value
            .finite()
            .expect("Hausdorff distances over a finite space are attained")
    }
}

/// Distance from a point into a set: `min_{b∈set} d(x, b)`.
pub fn dist_point_to_set(
    space: &FiniteQuasiSpace,
    x: Point,
    set: &PointSet,
) -> Result<Rational, SpaceError> {
    space.check_point(x)?;
    space.check_set(set)?;
    Ok(set
        .iter()
        .map(|b| space.dist(x, b))
        .min()
        .expect("set is nonempty")
        .clone())
}

/// Distance from a set to a point: `min_{a∈set} d(a, y)`.
pub fn dist_set_to_point(
    space: &FiniteQuasiSpace,
    set: &PointSet,
    y: Point,
) -> Result<Rational, SpaceError> {
    space.check_point(y)?;
    space.check_set(set)?;
    Ok(set
        .iter()
        .map(|a| space.dist(a, y))
        .min()
        .expect("set is nonempty")
        .clone())
}

/// Singleton reduction `H({x}, set) = max_{b∈set} d(x, b)`.
pub fn max_dist_point_to_set(
    space: &FiniteQuasiSpace,
    x: Point,
    set: &PointSet,
) -> Result<Rational, SpaceError> {
    space.check_point(x)?;
    space.check_set(set)?;
    Ok(set
        .iter()
        .map(|b| space.dist(x, b))
        .max()
        .expect("set is nonempty")
        .clone())
}

/// Singleton reduction `H(set, {y}) = max_{a∈set} d(a, y)`.
pub fn max_dist_set_to_point(
    space: &FiniteQuasiSpace,
    set: &PointSet,
    y: Point,
) -> Result<Rational, SpaceError> {
    space.check_point(y)?;
    space.check_set(set)?;
    Ok(set
        .iter()
        .map(|a| space.dist(a, y))
        .max()
        .expect("set is nonempty")
        .clone())
}

/// The Hausdorff distance `H(left, right)` with attaining witnesses.
///
/// Both sets must be nonempty subsets of the space. Ties in the defining
/// maxima resolve to the smallest point index, so reports are
/// deterministic.
pub fn hausdorff(
    space: &FiniteQuasiSpace,
    left: &PointSet,
    right: &PointSet,
) -> Result<HyperDistanceReport, SpaceError> {
    space.check_set(left)?;
    space.check_set(right)?;

    let mut left_sup = Rational::zero();
    let mut witness_in_left = left.iter().next().expect("set is nonempty");
    for a in left.iter() {
        let reach = dist_point_to_set(space, a, right)?;
        if reach > left_sup {
            left_sup = reach;
            witness_in_left = a;
        }
    }

    let mut right_sup = Rational::zero();
    let mut witness_in_right = right.iter().next().expect("set is nonempty");
    for b in right.iter() {
        let reach = dist_set_to_point(space, left, b)?;
        if reach > right_sup {
            right_sup = reach;
            witness_in_right = b;
        }
    }

    Ok(HyperDistanceReport {
        value: ExtendedRational::Finite(left_sup.max(right_sup)),
        witness_in_left,
        witness_in_right,
    })
}

/// The symmetrized Hausdorff distance `max(H(left, right), H(right, left))`.
pub fn hausdorff_sym(
    space: &FiniteQuasiSpace,
    left: &PointSet,
    right: &PointSet,
) -> Result<Rational, SpaceError> {
    let forward = hausdorff(space, left, right)?;
    let backward = hausdorff(space, right, left)?;
    Ok(forward.finite_value().clone().max(backward.finite_value().clone()))
}

/// Whether `set` equals the intersection of its forward and backward
/// closures. On this family of sets the Hausdorff distance separates
/// distinct members.
pub fn is_join_closed(space: &FiniteQuasiSpace, set: &PointSet) -> Result<bool, SpaceError> {
    let forward = space.closure(set, Side::Forward)?;
    let backward = space.closure(set, Side::Backward)?;
    Ok(forward.intersection(&backward) == *set)
}

/// Whether `set` is nonempty, bounded, and closed for the symmetrized
/// distance — the family the set-valued contraction results quantify over.
/// On a finite space boundedness is automatic, so this is a closedness
/// check; emptiness is an error rather than a `false`, matching the other
/// set operations.
pub fn is_closed_bounded(space: &FiniteQuasiSpace, set: &PointSet) -> Result<bool, SpaceError> {
    let closure = space.closure(set, Side::Symmetric)?;
    Ok(closure == *set && space.is_bounded(set)?)
}

/// One defect found when auditing the Hausdorff distance on a set family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperViolation {
    /// `H(A, A) ≠ 0` for the family member at `set`. Never expected; its
    /// presence would be a bug in this crate.
    Reflexivity { set: usize, value: Rational },
    /// `H(A, C) > H(A, B) + H(B, C)` for family members at the given
    /// indices. Never expected; its presence would be a bug in this crate.
    TriangleExcess {
        a: usize,
        b: usize,
        c: usize,
        direct: Rational,
        via: Rational,
    },
    /// Distinct members at Hausdorff distance zero both ways. Expected to
    /// be possible in general; `both_join_closed` records whether both sets
    /// pass [`is_join_closed`], in which case separation is guaranteed and
    /// the violation would again be a bug.
    Indistinguishable {
        a: usize,
        b: usize,
        both_join_closed: bool,
    },
}

impl fmt::Display for HyperViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperViolation::Reflexivity { set, value } => {
                write!(f, "H(A, A) = {value} for family member {set}")
            }
            HyperViolation::TriangleExcess {
                a,
                b,
                c,
                direct,
                via,
            } => write!(
                f,
                "triangle excess H(#{a}, #{c}) = {direct} > {via} via #{b}"
            ),
            HyperViolation::Indistinguishable {
                a,
                b,
                both_join_closed,
            } => write!(
                f,
                "family members {a} and {b} at Hausdorff distance zero both ways (both join-closed: {both_join_closed})"
            ),
        }
    }
}

/// Result of auditing the Hausdorff distance on a concrete family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyAxiomReport {
    pub violations: Vec<HyperViolation>,
}

impl FamilyAxiomReport {
    /// True when the distance behaved as a quasi-pseudometric on the family
    /// and no separation failure occurred between join-closed members.
    pub fn is_sound(&self) -> bool {
        self.violations.iter().all(|violation| {
            matches!(
                violation,
                HyperViolation::Indistinguishable {
                    both_join_closed: false,
                    ..
                }
            )
        })
    }
}

/// Audits the Hausdorff distance on `family`: reflexivity and the triangle
/// inequality must hold outright, and distinct members may coincide under
/// `H` only when at least one of them fails [`is_join_closed`].
///
/// Every member must be a nonempty subset of the space. The family may
/// contain up to a few dozen sets comfortably; the triangle scan is cubic
/// in the family size.
pub fn check_family_axioms(
    space: &FiniteQuasiSpace,
    family: &[PointSet],
) -> Result<FamilyAxiomReport, SpaceError> {
    for set in family {
        space.check_set(set)?;
    }
    let m = family.len();
    let mut matrix = Vec::with_capacity(m * m);
    for a in family {
        for b in family {
            matrix.push(hausdorff(space, a, b)?.finite_value().clone());
        }
    }
    let at = |i: usize, j: usize| &matrix[i * m + j];

    let mut violations = Vec::new();
    for i in 0..m {
        if !at(i, i).is_zero() {
            violations.push(HyperViolation::Reflexivity {
                set: i,
                value: at(i, i).clone(),
            });
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let via = at(a, b) + at(b, c);
                if at(a, c) > &via {
                    violations.push(HyperViolation::TriangleExcess {
                        a,
                        b,
                        c,
                        direct: at(a, c).clone(),
                        via,
                    });
                }
            }
        }
    }
    for a in 0..m {
        for b in (a + 1)..m {
            if family[a] != family[b] && at(a, b).is_zero() && at(b, a).is_zero() {
                let both_join_closed =
                    is_join_closed(space, &family[a])? && is_join_closed(space, &family[b])?;
                violations.push(HyperViolation::Indistinguishable {
                    a,
                    b,
                    both_join_closed,
                });
            }
        }
    }
    Ok(FamilyAxiomReport { violations })
}
