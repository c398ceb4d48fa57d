//! Set-valued and single-valued maps on a finite space, and the point
//! classifications the asymmetric theory cares about.
//!
//! For a set-valued map `F` and a point `x`, three values summarize how `x`
//! sits relative to its image (all computable via singleton reductions of
//! the Hausdorff distance):
//!
//! - start value: `H({x}, Fx) = max_{y∈Fx} d(x, y)` — zero makes `x` a
//!   **startpoint** (everything `F` offers is reachable from `x` for free);
//! - end value: `H(Fx, {x}) = max_{y∈Fx} d(y, x)` — zero makes `x` an
//!   **endpoint**;
//! - mix value: `max_{y∈Fx} max(d(x, y), d(y, x))`, the symmetrized
//!   analogue, which equals `max(start, end)`.
//!
//! A **fixed point** is `x ∈ Fx`. The notions are mutually independent: a
//! fixed point need not be a startpoint and a startpoint need not be fixed.
//!
//! The approximate variants ask how small the values can get over the whole
//! space ([`approx_value`]); ε-variants collect the points whose value is
//! strictly below a threshold in `(0, 1)` ([`eps_points`]); and the level
//! sets `{x : mix value ≤ 1/n}` stratify the space by how close each point
//! is to being a simultaneous start- and endpoint ([`level_sets`]).

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::hyperspace::{max_dist_point_to_set, max_dist_set_to_point};
use crate::rational::{in_open_unit_interval, ratio, Rational};
use crate::space::{FiniteQuasiSpace, Point, PointSet, Side, SpaceError};

/// Errors from constructing or applying maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    Space(SpaceError),
    /// The map does not assign to every point of the space.
    WrongLength { expected: usize, got: usize },
    /// A set-valued image is empty; images must be nonempty.
    EmptyImage { point: Point },
    /// A weight table entry is negative.
    NegativeWeight { x: Point, y: Point, value: Rational },
    /// A weight table has the wrong shape.
    WeightShape { expected: usize, got: usize },
    /// The threshold of an ε-query must lie strictly between 0 and 1.
    EpsilonOutOfRange { value: Rational },
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Space(err) => write!(f, "{err}"),
            MapError::WrongLength { expected, got } => {
                write!(f, "map must assign to all {expected} points, got {got}")
            }
            MapError::EmptyImage { point } => {
                write!(f, "image of point {point} is empty")
            }
            MapError::NegativeWeight { x, y, value } => {
                write!(f, "weight table entry ({x}, {y}) = {value} is negative")
            }
            MapError::WeightShape { expected, got } => {
                write!(f, "weight table must have {expected} entries, got {got}")
            }
            MapError::EpsilonOutOfRange { value } => {
                write!(f, "threshold must lie strictly between 0 and 1, got {value}")
            }
        }
    }
}

impl core::error::Error for MapError {}

impl From<SpaceError> for MapError {
    fn from(err: SpaceError) -> Self {
        MapError::Space(err)
    }
}

/// A total set-valued map on one space: every point gets a nonempty image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValuedMap {
    images: Vec<PointSet>,
}

impl SetValuedMap {
    /// Validates totality, nonemptiness, and membership against `space`.
    pub fn new(space: &FiniteQuasiSpace, images: Vec<PointSet>) -> Result<Self, MapError> {
        if images.len() != space.len() {
            return Err(MapError::WrongLength {
                expected: space.len(),
                got: images.len(),
            });
        }
        for (point, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(MapError::EmptyImage { point });
            }
            space.check_set(image)?;
        }
        Ok(SetValuedMap { images })
    }

    pub fn image(&self, x: Point) -> &PointSet {
        &self.images[x]
    }

    pub fn images(&self) -> &[PointSet] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

/// A total point-to-point map, optionally carrying a nonnegative weight
/// table on ordered pairs (used by the weighted contraction conditions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleMap {
    values: Vec<Point>,
    /// Row-major `n × n` weights; `None` when the map carries none.
    weights: Option<Vec<Rational>>,
}

impl SingleMap {
    /// Validates totality and range against `space`.
    pub fn new(space: &FiniteQuasiSpace, values: Vec<Point>) -> Result<Self, MapError> {
        if values.len() != space.len() {
            return Err(MapError::WrongLength {
                expected: space.len(),
                got: values.len(),
            });
        }
        for &target in &values {
            space.check_point(target)?;
        }
        Ok(SingleMap {
            values,
            weights: None,
        })
    }

    /// Attaches a weight table given as rows; entries must be nonnegative.
    pub fn with_weights(
        mut self,
        space: &FiniteQuasiSpace,
        rows: Vec<Vec<Rational>>,
    ) -> Result<Self, MapError> {
        let n = space.len();
        if rows.len() != n || rows.iter().any(|row| row.len() != n) {
            let got = rows.iter().map(Vec::len).sum::<usize>();
            return Err(MapError::WeightShape {
                expected: n * n,
                got,
            });
        }
        let flat: Vec<Rational> = rows.into_iter().flatten().collect();
        for (index, value) in flat.iter().enumerate() {
            if value < &Rational::zero() {
                return Err(MapError::NegativeWeight {
                    x: index / n,
                    y: index % n,
                    value: value.clone(),
                });
            }
        }
        self.weights = Some(flat);
        Ok(self)
    }

    pub fn value(&self, x: Point) -> Point {
        self.values[x]
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn has_weights(&self) -> bool {
        self.weights.is_some()
    }

    /// The weight on the ordered pair `(x, y)`, if a table is attached.
    pub fn weight(&self, x: Point, y: Point) -> Option<&Rational> {
        self.weights
            .as_ref()
            .map(|table| &table[x * self.values.len() + y])
    }

    /// This map as a set-valued map with singleton images.
    pub fn as_set_valued(&self) -> SetValuedMap {
        SetValuedMap {
            images: self.values.iter().map(|&y| PointSet::singleton(y)).collect(),
        }
    }
}

/// How one point sits relative to its image under a set-valued map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClassification {
    pub point: Point,
    /// `max_{y∈Fx} d(x, y)`; zero exactly when `point` is a startpoint.
    pub start_value: Rational,
    /// `max_{y∈Fx} d(y, x)`; zero exactly when `point` is an endpoint.
    pub end_value: Rational,
    /// `max_{y∈Fx} max(d(x, y), d(y, x)) = max(start_value, end_value)`.
    pub mix_value: Rational,
    /// Whether `point ∈ F(point)`.
    pub is_fixed: bool,
    pub is_startpoint: bool,
    pub is_endpoint: bool,
}

/// Classifies one point against its image.
pub fn classify_point(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    x: Point,
) -> Result<PointClassification, MapError> {
    space.check_point(x)?;
    if map.len() != space.len() {
        return Err(MapError::WrongLength {
            expected: space.len(),
            got: map.len(),
        });
    }
    let image = map.image(x);
    let start_value = max_dist_point_to_set(space, x, image)?;
    let end_value = max_dist_set_to_point(space, image, x)?;
    let mix_value = start_value.clone().max(end_value.clone());
    Ok(PointClassification {
        point: x,
        is_startpoint: start_value.is_zero(),
        is_endpoint: end_value.is_zero(),
        is_fixed: image.contains(x),
        start_value,
        end_value,
        mix_value,
    })
}

/// Classifies every point, in point order.
pub fn classify_all(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
) -> Result<Vec<PointClassification>, MapError> {
    (0..space.len()).map(|x| classify_point(space, map, x)).collect()
}

/// Which of the three point values a query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueKind {
    Start,
    End,
    Mix,
}

impl ValueKind {
    fn of(self, classification: &PointClassification) -> &Rational {
        match self {
            ValueKind::Start => &classification.start_value,
            ValueKind::End => &classification.end_value,
            ValueKind::Mix => &classification.mix_value,
        }
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueKind::Start => write!(f, "start"),
            ValueKind::End => write!(f, "end"),
            ValueKind::Mix => write!(f, "mix"),
        }
    }
}

/// Minimum of one of the point values over the space, with its argmin.
///
/// The map has the *approximate property* of the given kind exactly when
/// the value is zero: on a finite space the infimum over points is
/// attained, so "arbitrarily small" collapses to "zero somewhere".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxReport {
    pub kind: ValueKind,
    pub value: Rational,
    /// Smallest-index point attaining the minimum.
    pub witness: Point,
}

/// Computes the approximate start/end/mix value of a set-valued map.
pub fn approx_value(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    kind: ValueKind,
) -> Result<ApproxReport, MapError> {
    let mut best: Option<(Rational, Point)> = None;
    for x in 0..space.len() {
        let classification = classify_point(space, map, x)?;
        let value = kind.of(&classification);
        if best.as_ref().is_none_or(|(current, _)| value < current) {
            best = Some((value.clone(), x));
        }
    }
    let (value, witness) = best.expect("spaces are nonempty");
    Ok(ApproxReport {
        kind,
        value,
        witness,
    })
}

/// The approximate values of a single-valued map, read through its
/// singleton-image set-valued form: the start value of `x` is `d(x, fx)`,
/// the end value `d(fx, x)`.
pub fn approx_value_single(
    space: &FiniteQuasiSpace,
    map: &SingleMap,
    kind: ValueKind,
) -> Result<ApproxReport, MapError> {
    approx_value(space, &map.as_set_valued(), kind)
}

/// Points whose start (or end) value is strictly below `eps`.
///
/// `eps` must lie strictly between 0 and 1. With the strict comparison, a
/// genuine startpoint belongs to the ε-set for every admissible ε, and a
/// point with positive value `v` drops out as soon as `eps ≤ v`.
pub fn eps_points(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    eps: &Rational,
    kind: ValueKind,
) -> Result<PointSet, MapError> {
    if !in_open_unit_interval(eps) {
        return Err(MapError::EpsilonOutOfRange { value: eps.clone() });
    }
    let mut members = PointSet::empty();
    for x in 0..space.len() {
        let classification = classify_point(space, map, x)?;
        if kind.of(&classification) < eps {
            members.insert(x);
        }
    }
    Ok(members)
}

/// The level-set stratification `{x : mix value ≤ 1/n}` for `n = 1..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSets {
    /// `sets[i]` is the level set for `n = i + 1`. The sets are nested
    /// downward.
    pub sets: Vec<PointSet>,
    /// Symmetrized diameter of each level set; `None` for empty sets.
    pub diameters: Vec<Option<Rational>>,
    /// The intersection of *all* level sets (over every `n`, not only the
    /// computed range): exactly the points with mix value zero, i.e. the
    /// simultaneous start- and endpoints.
    pub core: PointSet,
}

/// Computes level sets up to `n_max` plus the exact core.
pub fn level_sets(
    space: &FiniteQuasiSpace,
    map: &SetValuedMap,
    n_max: usize,
) -> Result<LevelSets, MapError> {
    let classifications = classify_all(space, map)?;
    let sym = space.symmetrize();
    let mut sets = Vec::with_capacity(n_max);
    let mut diameters = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let threshold = ratio(1, n as i64);
        let members: PointSet = classifications
            .iter()
            .filter(|c| c.mix_value <= threshold)
            .map(|c| c.point)
            .collect();
        diameters.push(if members.is_empty() {
            None
        } else {
            Some(sym.diameter(&members, Side::Forward)?)
        });
        sets.push(members);
    }
    let core = classifications
        .iter()
        .filter(|c| c.mix_value.is_zero())
        .map(|c| c.point)
        .collect();
    Ok(LevelSets {
        sets,
        diameters,
        core,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};
    use crate::testutil::{
        asymmetric_pair, complement_map, exit_cost_three, harmonic, whole_space_map,
    };

    #[test]
    fn map_construction_validates() {
        let space = exit_cost_three();
        assert!(matches!(
            SetValuedMap::new(&space, alloc::vec![space.full_set()]),
            Err(MapError::WrongLength {
                expected: 3,
                got: 1
            })
        ));
        assert!(matches!(
            SetValuedMap::new(
                &space,
                alloc::vec![space.full_set(), PointSet::empty(), space.full_set()]
            ),
            Err(MapError::EmptyImage { point: 1 })
        ));
        assert!(matches!(
            SingleMap::new(&space, alloc::vec![0, 1, 7]),
            Err(MapError::Space(SpaceError::PointOutOfRange { point: 7, .. }))
        ));
        let map = SingleMap::new(&space, alloc::vec![0, 0, 1]).unwrap();
        assert_eq!(map.as_set_valued().image(2), &PointSet::singleton(1));
    }

    #[test]
    fn whole_space_map_splits_start_and_end_between_the_pair() {
        let space = asymmetric_pair();
        let map = whole_space_map(&space);
        let a = classify_point(&space, &map, 0).unwrap();
        // From a everything is free: d(a, a) = 0, d(a, b) = 0.
        assert!(a.is_startpoint && a.is_fixed && !a.is_endpoint);
        assert_eq!(a.end_value, integer(1));
        let b = classify_point(&space, &map, 1).unwrap();
        // Into b everything is free: d(a, b) = 0, d(b, b) = 0.
        assert!(b.is_endpoint && b.is_fixed && !b.is_startpoint);
        assert_eq!(b.start_value, integer(1));
        assert_eq!(a.mix_value, integer(1));
        assert_eq!(b.mix_value, integer(1));
    }

    #[test]
    fn complement_map_classification_is_exact() {
        let space = exit_cost_three();
        let map = complement_map(&space);
        let all = classify_all(&space, &map).unwrap();
        let starts: Vec<Rational> = all.iter().map(|c| c.start_value.clone()).collect();
        let ends: Vec<Rational> = all.iter().map(|c| c.end_value.clone()).collect();
        assert_eq!(starts, alloc::vec![integer(0), integer(1), integer(2)]);
        assert_eq!(ends, alloc::vec![integer(2), integer(2), integer(1)]);
        assert!(all[0].is_startpoint && !all[0].is_endpoint && !all[0].is_fixed);
        assert!(all.iter().all(|c| !c.is_endpoint));
        assert!(all.iter().all(|c| !c.is_fixed));
        // Mix values are all 2, so the unit level set is already empty.
        assert!(all.iter().all(|c| c.mix_value == integer(2)));
    }

    #[test]
    fn approx_values_report_minima_with_witnesses() {
        let space = exit_cost_three();
        let map = complement_map(&space);
        let start = approx_value(&space, &map, ValueKind::Start).unwrap();
        assert_eq!((start.value, start.witness), (integer(0), 0));
        let end = approx_value(&space, &map, ValueKind::End).unwrap();
        assert_eq!((end.value, end.witness), (integer(1), 2));
        let mix = approx_value(&space, &map, ValueKind::Mix).unwrap();
        assert_eq!((mix.value, mix.witness), (integer(2), 0));
    }

    #[test]
    fn zero_approx_start_and_end_need_not_give_zero_approx_mix() {
        // Swap map on the asymmetric pair: a ↦ {b}, b ↦ {a}. The start
        // property holds at a (d(a, b) = 0) and the end property at b
        // (d(a, b) = 0 again), but no single point does both, so the mix
        // value stays 1. The three approximate properties are genuinely
        // independent; only the implication "mix zero ⇒ start and end zero"
        // survives in general.
        let space = asymmetric_pair();
        let map = SetValuedMap::new(
            &space,
            alloc::vec![PointSet::singleton(1), PointSet::singleton(0)],
        )
        .unwrap();
        assert_eq!(
            approx_value(&space, &map, ValueKind::Start).unwrap().value,
            integer(0)
        );
        assert_eq!(
            approx_value(&space, &map, ValueKind::End).unwrap().value,
            integer(0)
        );
        assert_eq!(
            approx_value(&space, &map, ValueKind::Mix).unwrap().value,
            integer(1)
        );
    }

    #[test]
    fn eps_points_use_strict_thresholds() {
        let space = exit_cost_three();
        let map = complement_map(&space);
        let half = ratio(1, 2);
        assert_eq!(
            eps_points(&space, &map, &half, ValueKind::Start).unwrap(),
            PointSet::singleton(0)
        );
        assert_eq!(
            eps_points(&space, &map, &half, ValueKind::End).unwrap(),
            PointSet::empty()
        );
        for bad in [integer(0), integer(1), ratio(3, 2), ratio(-1, 2)] {
            assert!(matches!(
                eps_points(&space, &map, &bad, ValueKind::Start),
                Err(MapError::EpsilonOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn harmonic_ladder_start_values_match_hand_computation() {
        let space = harmonic(3);
        let map = complement_map(&space);
        let all = classify_all(&space, &map).unwrap();
        let starts: Vec<Rational> = all.iter().map(|c| c.start_value.clone()).collect();
        assert_eq!(starts, alloc::vec![ratio(2, 3), ratio(1, 6), integer(0)]);
        // The smallest point is the unique startpoint.
        assert!(all[2].is_startpoint);
        assert_eq!(
            approx_value(&space, &map, ValueKind::Start).unwrap().witness,
            2
        );
    }

    #[test]
    fn level_sets_nest_and_core_is_the_mix_zero_set() {
        let space = asymmetric_pair();
        let map = whole_space_map(&space);
        let levels = level_sets(&space, &map, 3).unwrap();
        // Mix values are (1, 1): level 1 keeps everything, level 2 nothing.
        assert_eq!(levels.sets[0], space.full_set());
        assert!(levels.sets[1].is_empty());
        assert!(levels.sets[2].is_empty());
        assert_eq!(levels.diameters[0], Some(integer(1)));
        assert_eq!(levels.diameters[1], None);
        assert!(levels.core.is_empty());

        // Identity map: every point is fixed, start, and end at once.
        let identity = SetValuedMap::new(
            &space,
            alloc::vec![PointSet::singleton(0), PointSet::singleton(1)],
        )
        .unwrap();
        let levels = level_sets(&space, &identity, 2).unwrap();
        assert_eq!(levels.core, space.full_set());
        assert_eq!(levels.sets[1], space.full_set());
    }
}
