//! Shared fixtures for the unit tests: the small spaces and maps that
//! exercise asymmetric behavior in a form small enough to verify by hand.

use alloc::string::String;
use alloc::vec::Vec;

use crate::multimaps::SetValuedMap;
use crate::rational::{ratio, Rational};
use crate::space::{FiniteQuasiSpace, PointSet};

pub(crate) fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| String::from(*s)).collect()
}

pub(crate) fn rows(entries: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
    entries
        .iter()
        .map(|row| row.iter().map(|&(n, d)| ratio(n, d)).collect())
        .collect()
}

/// Two points with a one-way zero distance: d(a, b) = 0, d(b, a) = 1.
pub(crate) fn asymmetric_pair() -> FiniteQuasiSpace {
    FiniteQuasiSpace::new(
        labels(&["a", "b"]),
        rows(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]]),
    )
    .unwrap()
}

/// Three points where the distance from `x` to anything else depends only
/// on `x`: 0 from `p0`, 1 from `p1`, 2 from `p2`.
pub(crate) fn exit_cost_three() -> FiniteQuasiSpace {
    FiniteQuasiSpace::new(
        labels(&["p0", "p1", "p2"]),
        rows(&[
            &[(0, 1), (0, 1), (0, 1)],
            &[(1, 1), (0, 1), (1, 1)],
            &[(2, 1), (2, 1), (0, 1)],
        ]),
    )
    .unwrap()
}

/// The constant map sending every point to the whole space.
pub(crate) fn whole_space_map(space: &FiniteQuasiSpace) -> SetValuedMap {
    SetValuedMap::new(
        space,
        (0..space.len()).map(|_| space.full_set()).collect(),
    )
    .unwrap()
}

/// The map sending every point to its complement. Needs at least 2 points.
pub(crate) fn complement_map(space: &FiniteQuasiSpace) -> SetValuedMap {
    SetValuedMap::new(
        space,
        (0..space.len())
            .map(|x| space.full_set().difference(&PointSet::singleton(x)))
            .collect(),
    )
    .unwrap()
}

/// Points `1, 1/2, …, 1/n` with distance `max(x − y, 0)`: moving to a
/// larger value is free, moving to a smaller one costs the difference.
pub(crate) fn harmonic(n: usize) -> FiniteQuasiSpace {
    assert!(n >= 1);
    let values: Vec<Rational> = (1..=n as i64).map(|k| ratio(1, k)).collect();
    let labels: Vec<String> = (1..=n)
        .map(|k| {
            if k == 1 {
                String::from("1")
            } else {
                alloc::format!("1/{k}")
            }
        })
        .collect();
    let zero = ratio(0, 1);
    let rows: Vec<Vec<Rational>> = values
        .iter()
        .map(|x| {
            values
                .iter()
                .map(|y| {
                    let diff = x - y;
                    if diff > zero {
                        diff
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    FiniteQuasiSpace::new(labels, rows).unwrap()
}
