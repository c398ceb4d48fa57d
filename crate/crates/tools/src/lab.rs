//! Seeded instance generation, a corpus of small worked examples, and
//! hypothesis⇒conclusion property suites with counterexample shrinking.
//!
//! Each suite draws random instances, keeps the ones satisfying its
//! hypotheses (exhaustively checked — rejection beats constructive
//! generation at these sizes), asserts the promised conclusion end to end,
//! and shrinks any counterexample by point removal and distance reduction
//! until the failure is minimal. Everything is deterministic in
//! `(suite, trials, seed, size)`; reports carry no timing, so identical
//! inputs give byte-identical reports.

use std::collections::BTreeMap;

use crate::format::LabInstance;
use qpmet_core::funcspec::FunctionSpec;
use qpmet_core::hyperspace::{check_family_axioms, hausdorff};
use qpmet_core::multimaps::{
    classify_all, classify_point, eps_points, level_sets, SetValuedMap, SingleMap, ValueKind,
};
use qpmet_core::rational::{ratio, rational_to_string};
use qpmet_core::sequences::{
    check_hierarchy, classify_cauchy, semicontinuity_probe, CauchyKind, SequenceTrace,
    VerdictStatus,
};
use qpmet_core::solvers::{
    check_weight_propagation, check_weighted_contraction, endpoint_solve, fixed_point_solve,
    mix_equivalence_report, picard_solve, single_map_audit, startpoint_feasibility_audit,
    startpoint_solve, DescentOptions, IterationLog, OrbitOptions, TerminalStatus,
};
use qpmet_core::{FiniteQuasiSpace, Point, PointSet, Rational};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zero() -> Rational {
    ratio(0, 1)
}

// ---------------------------------------------------------------------------
// Random instance generation
// ---------------------------------------------------------------------------

/// Generates a valid space: random small nonnegative rationals with a zero
/// diagonal, repaired to satisfy the triangle inequality by min-plus
/// shortest-path closure, with the `T0` separation property enforced by a
/// minimal perturbation when requested. `scale` bounds every distance.
/// Deterministic in the arguments.
pub fn gen_space(seed: u64, n: usize, scale: i64, require_t0: bool) -> FiniteQuasiSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_space_with(&mut rng, n, scale, require_t0)
}

fn gen_space_with(
    rng: &mut ChaCha8Rng,
    n: usize,
    scale: i64,
    require_t0: bool,
) -> FiniteQuasiSpace {
    assert!(n >= 1, "spaces are nonempty");
    let scale = scale.max(1);
    let mut rows = vec![vec![zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            if i != j && rng.random_range(0..10) >= 3 {
                *entry = ratio(rng.random_range(1..=scale), rng.random_range(1..=4));
            }
        }
    }
    min_plus_close(&mut rows);
    if require_t0 {
        repair_t0(&mut rows);
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    let space = FiniteQuasiSpace::new(labels, rows)
        .expect("closure and repair yield a valid quasi-pseudometric");
    assert!(
        !require_t0 || space.is_t0(),
        "the separation repair leaves the matrix T0"
    );
    space
}

/// All-pairs min-plus closure: afterwards every entry is the cheapest path
/// cost, so the triangle inequality holds. Entries only decrease and the
/// diagonal stays zero.
fn min_plus_close(rows: &mut [Vec<Rational>]) {
    let n = rows.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &rows[i][k] + &rows[k][j];
                if via < rows[i][j] {
                    rows[i][j] = via;
                }
            }
        }
    }
}

/// Breaks zero-in-both-directions ties: for every pair with
/// `d(x,y) = d(y,x) = 0`, the backward entry is raised to the smallest
/// positive distance in the matrix (or one, if the matrix is all zero).
/// Raising an entry that was dominated by the global minimum cannot break
/// any triangle inequality, and the forward zeros are untouched, so the
/// result is still a valid quasi-pseudometric — now `T0`.
fn repair_t0(rows: &mut [Vec<Rational>]) {
    let mut delta: Option<Rational> = None;
    for row in rows.iter() {
        for entry in row {
            if entry > &zero() && delta.as_ref().is_none_or(|d| entry < d) {
                delta = Some(entry.clone());
            }
        }
    }
    let delta = delta.unwrap_or_else(|| ratio(1, 1));
    let nothing = zero();
    let mut raises = Vec::new();
    for (x, row) in rows.iter().enumerate() {
        for (y, forward) in row.iter().enumerate().skip(x + 1) {
            if forward == &nothing && rows[y][x] == nothing {
                raises.push((y, x));
            }
        }
    }
    for (y, x) in raises {
        rows[y][x] = delta.clone();
    }
}

/// A random total set-valued map, biased toward shapes that satisfy
/// contraction-style hypotheses often enough for rejection sampling.
fn gen_set_map(rng: &mut ChaCha8Rng, space: &FiniteQuasiSpace) -> SetValuedMap {
    let n = space.len();
    let images: Vec<PointSet> = match rng.random_range(0..10) {
        // Constant map: every image is one fixed target.
        0..=3 => {
            let target = rng.random_range(0..n);
            vec![PointSet::singleton(target); n]
        }
        // Two possible targets, each image a nonempty choice among them.
        4..=6 => {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            (0..n)
                .map(|_| match rng.random_range(0..3) {
                    0 => PointSet::singleton(a),
                    1 => PointSet::singleton(b),
                    _ => PointSet::from_points([a, b]),
                })
                .collect()
        }
        // Fully random nonempty images.
        _ => (0..n)
            .map(|_| {
                let mut image = PointSet::empty();
                for y in 0..n {
                    if rng.random_range(0..2) == 0 {
                        image.insert(y);
                    }
                }
                if image.is_empty() {
                    image.insert(rng.random_range(0..n));
                }
                image
            })
            .collect(),
    };
    SetValuedMap::new(space, images).expect("generated images are nonempty and in range")
}

/// A random total single-valued map with the same bias profile.
fn gen_single_map(rng: &mut ChaCha8Rng, space: &FiniteQuasiSpace) -> SingleMap {
    let n = space.len();
    let values: Vec<Point> = match rng.random_range(0..10) {
        0..=3 => {
            let target = rng.random_range(0..n);
            vec![target; n]
        }
        4..=6 => {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            (0..n)
                .map(|_| if rng.random_range(0..2) == 0 { a } else { b })
                .collect()
        }
        _ => (0..n).map(|_| rng.random_range(0..n)).collect(),
    };
    SingleMap::new(space, values).expect("generated values are in range")
}

/// A random weight table, biased toward the all-ones table (which always
/// propagates) with occasional zeros and fractional weights.
fn gen_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    let one = ratio(1, 1);
    match rng.random_range(0..10) {
        0..=5 => vec![vec![one; n]; n],
        6..=7 => (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.random_range(0..5) == 0 {
                            zero()
                        } else {
                            one.clone()
                        }
                    })
                    .collect()
            })
            .collect(),
        _ => (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| match rng.random_range(0..4) {
                        0 => zero(),
                        1 => ratio(1, 2),
                        2 => one.clone(),
                        _ => ratio(3, 2),
                    })
                    .collect()
            })
            .collect(),
    }
}

const FACTOR_CHOICES: [(i64, i64); 4] = [(1, 4), (1, 3), (1, 2), (3, 5)];

fn gen_factor(rng: &mut ChaCha8Rng) -> Rational {
    let (numer, denom) = FACTOR_CHOICES[rng.random_range(0..FACTOR_CHOICES.len())];
    ratio(numer, denom)
}

fn bare_instance(space: FiniteQuasiSpace, require_t0: bool) -> LabInstance {
    LabInstance {
        space,
        set_map: None,
        single_map: None,
        comparison: None,
        modulus: None,
        require_t0,
    }
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

/// Catalog of corpus identifiers with one-line descriptions.
pub fn corpus_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "two-point",
            "two points, one free direction; the whole-space map makes 1 \
             fixed but not a startpoint",
        ),
        (
            "three-point",
            "three points with exit costs 0/1/2; the complement map has \
             startpoint 0 and no endpoint",
        ),
        (
            "harmonic-N",
            "chain 1, 1/2, …, 1/N with d(x,y) = max(x−y, 0) and the \
             complement map (N ≥ 1, e.g. harmonic-3); descending is free, \
             so 1/N is the unique startpoint",
        ),
    ]
}

/// Builds a corpus instance by identifier. `harmonic-N` takes the point
/// count in the identifier itself, e.g. `harmonic-5`.
pub fn corpus_instance(id: &str) -> Result<LabInstance, String> {
    match id {
        "two-point" => {
            let space = FiniteQuasiSpace::new(
                vec!["0".into(), "1".into()],
                vec![vec![zero(), zero()], vec![ratio(1, 1), zero()]],
            )
            .expect("two-point corpus matrix is valid");
            let whole = PointSet::from_points([0, 1]);
            let map = SetValuedMap::new(&space, vec![whole.clone(), whole])
                .expect("whole-space images are valid");
            Ok(LabInstance {
                space,
                set_map: Some(map),
                single_map: None,
                comparison: None,
                modulus: None,
                require_t0: true,
            })
        }
        "three-point" => {
            let space = FiniteQuasiSpace::new(
                vec!["0".into(), "1".into(), "2".into()],
                vec![
                    vec![zero(), zero(), zero()],
                    vec![ratio(1, 1), zero(), ratio(1, 1)],
                    vec![ratio(2, 1), ratio(2, 1), zero()],
                ],
            )
            .expect("three-point corpus matrix is valid");
            let map = complement_map(&space);
            Ok(LabInstance {
                space,
                set_map: Some(map),
                single_map: None,
                comparison: None,
                modulus: None,
                require_t0: true,
            })
        }
        other => match other.strip_prefix("harmonic-") {
            Some(suffix) => {
                let n: usize = suffix
                    .parse()
                    .map_err(|_| format!("bad harmonic size {suffix:?} (want harmonic-N, N ≥ 1)"))?;
                if n < 1 {
                    return Err(String::from("harmonic-N needs N ≥ 1"));
                }
                let space = harmonic_space(n);
                let set_map = (n >= 2).then(|| complement_map(&space));
                Ok(LabInstance {
                    space,
                    set_map,
                    single_map: None,
                    comparison: None,
                    modulus: None,
                    require_t0: true,
                })
            }
            None => Err(format!(
                "unknown corpus id {id:?} (known: two-point, three-point, harmonic-N)"
            )),
        },
    }
}

/// The chain `1, 1/2, …, 1/n` with `d(x, y) = max(x − y, 0)`: moving to a
/// smaller value costs the difference, moving up is free.
fn harmonic_space(n: usize) -> FiniteQuasiSpace {
    let values: Vec<Rational> = (1..=n).map(|k| ratio(1, k as i64)).collect();
    let labels = values.iter().map(rational_to_string).collect();
    let rows = values
        .iter()
        .map(|x| {
            values
                .iter()
                .map(|y| if x > y { x - y } else { zero() })
                .collect()
        })
        .collect();
    FiniteQuasiSpace::new(labels, rows).expect("the chain matrix is valid")
}

/// `F(x) = X ∖ {x}`; needs at least two points.
fn complement_map(space: &FiniteQuasiSpace) -> SetValuedMap {
    let n = space.len();
    let images = (0..n)
        .map(|x| PointSet::from_points((0..n).filter(|&y| y != x)))
        .collect();
    SetValuedMap::new(space, images).expect("complements are nonempty for n ≥ 2")
}

/// Start value of the `k`-th rung of the *unbounded* chain `{1/k : k ≥ 1}`
/// under the complement map: exactly `1/k`, the supremum of the forward
/// distances into ever-smaller rungs. No rung attains zero, so the
/// unbounded chain has no startpoint, yet every tolerance admits rungs
/// below it. Finite truncations necessarily differ: the bottom rung's
/// forward distances all vanish, making it a genuine startpoint of every
/// map — so these closed forms, not a truncated instance, are the faithful
/// source for the unbounded chain's values.
pub fn ladder_start_value(k: usize) -> Rational {
    assert!(k >= 1, "rungs are numbered from 1");
    ratio(1, k as i64)
}

/// Rungs among the first `n` whose unbounded-chain start value lies
/// strictly below `eps`: `{k ≤ n : 1/k < eps}`. Nonempty exactly when
/// `eps > 1/n`.
pub fn ladder_eps_start_rungs(n: usize, eps: &Rational) -> Vec<usize> {
    (1..=n)
        .filter(|&k| &ladder_start_value(k) < eps)
        .collect()
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

enum TrialOutcome {
    /// Hypotheses not satisfied; the trial does not count.
    Filtered,
    /// Conclusion verified; notes name the bins the instance fell into.
    Passed(Vec<&'static str>),
    /// Conclusion violated.
    Failed(String),
}

use TrialOutcome::{Failed, Filtered, Passed};

/// A registered property suite.
pub struct SuiteSpec {
    pub id: &'static str,
    pub description: &'static str,
    /// Default cap on the point count of generated spaces.
    pub default_points: usize,
    gen: fn(&mut ChaCha8Rng, usize) -> LabInstance,
    check: fn(u64, &LabInstance) -> TrialOutcome,
}

/// One shrunk counterexample. `sub_seed` regenerates the trial's auxiliary
/// data (factors, traces, probes), so replaying `check` on the instance is
/// exact.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub sub_seed: u64,
    pub detail: String,
    pub instance: LabInstance,
}

/// Outcome of one suite run. Deterministic in `(id, trials, seed, size)`.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub id: &'static str,
    pub seed: u64,
    pub max_points: usize,
    pub trials_requested: usize,
    /// Trials whose hypotheses held and whose conclusion was checked.
    pub trials_run: usize,
    /// Instances generated, including hypothesis-filtered ones.
    pub attempts: usize,
    pub notes: BTreeMap<&'static str, usize>,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteOutcome {
    /// True when every requested trial ran and none found a counterexample.
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.trials_run == self.trials_requested
    }
}

/// The registered suites.
pub fn suites() -> &'static [SuiteSpec] {
    &SUITES
}

static SUITES: [SuiteSpec; 10] = [
    SuiteSpec {
        id: "picard",
        description: "weighted orbits of admissible contractive single maps \
                      converge to a fixed point with every geometric step \
                      bound satisfied",
        default_points: 6,
        gen: gen_picard,
        check: check_picard,
    },
    SuiteSpec {
        id: "startpoint",
        description: "when every non-startpoint has a feasible successor, \
                      the startpoint descent converges from every seed in \
                      under |X| steps with certified bounds",
        default_points: 6,
        gen: gen_space_and_set_map,
        check: check_startpoint,
    },
    SuiteSpec {
        id: "endpoint-duality",
        description: "the endpoint descent is step-for-step the startpoint \
                      descent on the conjugate space",
        default_points: 6,
        gen: gen_space_and_set_map,
        check: check_endpoint_duality,
    },
    SuiteSpec {
        id: "fixed-sym",
        description: "symmetric descent on T0 spaces reaches a point that \
                      is simultaneously fixed, a startpoint, and an \
                      endpoint, under either feasibility reading",
        default_points: 6,
        gen: gen_t0_space_and_set_map,
        check: check_fixed_sym,
    },
    SuiteSpec {
        id: "mix-equivalence",
        description: "under an image contraction with a linear modulus on \
                      a T0 space, the approximate mix value is zero exactly \
                      when a unique simultaneous start/end point exists",
        default_points: 6,
        gen: gen_mix_equivalence,
        check: check_mix_equivalence,
    },
    SuiteSpec {
        id: "single-map",
        description: "a contractive single-valued map on a T0 space keeps \
                      its promises: a fixed point exists and all three \
                      approximate values vanish at a fixed witness",
        default_points: 6,
        gen: gen_single_map_instance,
        check: check_single_map,
    },
    SuiteSpec {
        id: "hyperspace",
        description: "the asymmetric set distance is a quasi-pseudometric \
                      on the full nonempty power set, and singleton \
                      distances reduce to point distances",
        default_points: 4,
        gen: gen_bare_space,
        check: check_hyperspace,
    },
    SuiteSpec {
        id: "cauchy-hierarchy",
        description: "the provable implications between the Cauchy notions \
                      hold on every trace, and conjugating the space swaps \
                      the left and right notions verbatim",
        default_points: 5,
        gen: gen_bare_space,
        check: check_cauchy_hierarchy,
    },
    SuiteSpec {
        id: "eps-lattice",
        description: "tolerance point sets are exactly the strict value \
                      sublevels: they nest with the tolerance, zero-value \
                      points lie in all of them, and level sets nest onto \
                      the core",
        default_points: 6,
        gen: gen_space_and_set_map,
        check: check_eps_lattice,
    },
    SuiteSpec {
        id: "semicontinuity",
        description: "on convergent traces, the distance functionals never \
                      fail their upper/lower semicontinuity probes",
        default_points: 6,
        gen: gen_bare_space,
        check: check_semicontinuity,
    },
];

const EXTRAS_SALT: u64 = 0x9E37_79B9_7F4A_7C15;
const GEN_SCALE: i64 = 3;

fn extras_rng(sub_seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed ^ EXTRAS_SALT)
}

fn draw_points(rng: &mut ChaCha8Rng, cap: usize) -> usize {
    rng.random_range(2..=cap.max(2))
}

// --- generators ---

fn gen_bare_space(rng: &mut ChaCha8Rng, cap: usize) -> LabInstance {
    let n = if cap <= 1 {
        1
    } else {
        rng.random_range(1..=cap)
    };
    bare_instance(gen_space_with(rng, n, GEN_SCALE, false), false)
}

fn gen_space_and_set_map(rng: &mut ChaCha8Rng, cap: usize) -> LabInstance {
    let n = draw_points(rng, cap);
    let space = gen_space_with(rng, n, GEN_SCALE, false);
    let map = gen_set_map(rng, &space);
    let mut instance = bare_instance(space, false);
    instance.set_map = Some(map);
    instance
}

fn gen_t0_space_and_set_map(rng: &mut ChaCha8Rng, cap: usize) -> LabInstance {
    let n = draw_points(rng, cap);
    let space = gen_space_with(rng, n, GEN_SCALE, true);
    let map = gen_set_map(rng, &space);
    let mut instance = bare_instance(space, true);
    instance.set_map = Some(map);
    instance
}

fn gen_picard(rng: &mut ChaCha8Rng, cap: usize) -> LabInstance {
    let n = draw_points(rng, cap);
    let space = gen_space_with(rng, n, GEN_SCALE, true);
    let map = gen_single_map(rng, &space);
    let weights = gen_weights(rng, n);
    let map = map
        .with_weights(&space, weights)
        .expect("generated weights are nonnegative and square");
    let comparison = FunctionSpec::linear(gen_factor(rng)).expect("factors lie in (0, 1)");
    let mut instance = bare_instance(space, true);
    instance.single_map = Some(map);
    instance.comparison = Some(comparison);
    instance
}

fn gen_mix_equivalence(rng: &mut ChaCha8Rng, cap: usize) -> LabInstance {
    let mut instance = gen_t0_space_and_set_map(rng, cap);
    instance.modulus = Some(FunctionSpec::linear(gen_factor(rng)).expect("factors lie in (0, 1)"));
    instance
}

fn gen_single_map_instance(rng: &mut ChaCha8Rng, cap: usize) -> LabInstance {
    let n = draw_points(rng, cap);
    let space = gen_space_with(rng, n, GEN_SCALE, true);
    let map = gen_single_map(rng, &space);
    let modulus = FunctionSpec::linear(gen_factor(rng)).expect("factors lie in (0, 1)");
    let mut instance = bare_instance(space, true);
    instance.single_map = Some(map);
    instance.modulus = Some(modulus);
    instance
}

// --- checks ---

fn descent_log_problem(log: &IterationLog, space: &FiniteQuasiSpace) -> Option<String> {
    if log.status != TerminalStatus::Converged {
        return Some(format!(
            "descent from {} ended {} instead of converging",
            space.label(log.seed),
            log.status
        ));
    }
    if log.steps.len() >= space.len() && !log.steps.is_empty() {
        return Some(format!(
            "descent from {} took {} steps on {} points",
            space.label(log.seed),
            log.steps.len(),
            space.len()
        ));
    }
    for step in &log.steps {
        if !step.step_bound_ok || step.target_bound_ok == Some(false) {
            return Some(format!(
                "descent step {} broke its geometric bound",
                step.index
            ));
        }
    }
    None
}

fn check_picard(_sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let (Some(map), Some(comparison)) = (&instance.single_map, &instance.comparison) else {
        return Filtered;
    };
    if !space.is_t0() || !map.has_weights() {
        return Filtered;
    }
    match check_weight_propagation(space, map) {
        Ok(report) if report.admissible => {}
        _ => return Filtered,
    }
    match check_weighted_contraction(space, map, comparison, false) {
        Ok(report) if report.holds => {}
        _ => return Filtered,
    }
    let one = ratio(1, 1);
    let seeds: Vec<Point> = (0..space.len())
        .filter(|&x| map.weight(x, map.value(x)).is_some_and(|w| w >= &one))
        .collect();
    if seeds.is_empty() {
        return Filtered;
    }
    let note = if seeds.len() == space.len() {
        "every-point-seeds"
    } else {
        "partial-seed-set"
    };
    let options = OrbitOptions::default();
    for &seed in &seeds {
        let log = match picard_solve(space, map, comparison, seed, &options) {
            Ok(log) => log,
            Err(err) => return Failed(format!("orbit errored: {err}")),
        };
        if log.status != TerminalStatus::Converged {
            return Failed(format!(
                "orbit from {} ended {} under verified hypotheses",
                space.label(seed),
                log.status
            ));
        }
        if let Some(step) = log.steps.iter().find(|step| !step.step_bound_ok) {
            return Failed(format!("orbit step {} broke its comparison bound", step.index));
        }
        let terminal = log
            .terminal_classification
            .as_ref()
            .expect("orbit logs carry a terminal classification");
        if !terminal.is_fixed {
            return Failed(format!(
                "orbit terminal {} is not fixed",
                space.label(log.terminal)
            ));
        }
    }
    Passed(vec![note])
}

fn check_startpoint(sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let Some(map) = &instance.set_map else {
        return Filtered;
    };
    let factor = gen_factor(&mut extras_rng(sub_seed));
    let audit = match startpoint_feasibility_audit(space, map, &factor) {
        Ok(audit) => audit,
        Err(err) => return Failed(format!("feasibility audit errored: {err}")),
    };
    if !audit.failures_only_at_startpoints {
        return Filtered;
    }
    let note = if audit.universal {
        "universal-feasibility"
    } else {
        "failures-only-at-startpoints"
    };
    let options = DescentOptions::new(factor);
    for seed in 0..space.len() {
        let log = match startpoint_solve(space, map, seed, &options) {
            Ok(log) => log,
            Err(err) => return Failed(format!("descent errored: {err}")),
        };
        if let Some(problem) = descent_log_problem(&log, space) {
            return Failed(problem);
        }
        let terminal = log
            .terminal_classification
            .as_ref()
            .expect("descent logs carry a terminal classification");
        if !terminal.is_startpoint {
            return Failed(format!(
                "descent terminal {} is not a startpoint",
                space.label(log.terminal)
            ));
        }
    }
    Passed(vec![note])
}

fn check_endpoint_duality(sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let Some(map) = &instance.set_map else {
        return Filtered;
    };
    let factor = gen_factor(&mut extras_rng(sub_seed));
    let options = DescentOptions::new(factor);
    let conjugate = space.conjugate();
    for seed in 0..space.len() {
        let endpoint = match endpoint_solve(space, map, seed, &options) {
            Ok(log) => log,
            Err(err) => return Failed(format!("endpoint descent errored: {err}")),
        };
        let conjugated = match startpoint_solve(&conjugate, map, seed, &options) {
            Ok(log) => log,
            Err(err) => return Failed(format!("conjugated descent errored: {err}")),
        };
        if endpoint.steps != conjugated.steps
            || endpoint.status != conjugated.status
            || endpoint.terminal != conjugated.terminal
        {
            return Failed(format!(
                "endpoint descent from {} diverged from the conjugated startpoint descent",
                space.label(seed)
            ));
        }
    }
    Passed(Vec::new())
}

fn check_fixed_sym(sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let Some(map) = &instance.set_map else {
        return Filtered;
    };
    if !space.is_t0() {
        return Filtered;
    }
    let factor = gen_factor(&mut extras_rng(sub_seed));
    let symmetric = space.symmetrize();
    let values: Vec<Rational> = match (0..space.len())
        .map(|x| classify_point(&symmetric, map, x).map(|c| c.start_value))
        .collect()
    {
        Ok(values) => values,
        Err(err) => return Failed(format!("classification errored: {err}")),
    };

    let mut notes = Vec::new();
    for literal in [false, true] {
        let admission = |x: Point, y: Point| -> Rational {
            if literal {
                space.dist(y, x).clone()
            } else {
                space.dist(x, y).min(space.dist(y, x)).clone()
            }
        };
        let feasible_everywhere = (0..space.len()).all(|x| {
            values[x] == zero()
                || map
                    .image(x)
                    .iter()
                    .any(|y| values[y] <= &factor * admission(x, y))
        });
        if !feasible_everywhere {
            continue;
        }
        notes.push(if literal {
            "literal-reading"
        } else {
            "two-sided-reading"
        });
        let options = DescentOptions::new(factor.clone());
        for seed in 0..space.len() {
            let log = match fixed_point_solve(space, map, seed, &options, literal) {
                Ok(log) => log,
                Err(err) => return Failed(format!("symmetric descent errored: {err}")),
            };
            if let Some(problem) = descent_log_problem(&log, space) {
                return Failed(problem);
            }
            let terminal = log
                .terminal_classification
                .as_ref()
                .expect("descent logs carry a terminal classification");
            if !(terminal.is_fixed && terminal.is_startpoint && terminal.is_endpoint) {
                return Failed(format!(
                    "symmetric descent terminal {} is not simultaneously fixed, start, and end",
                    space.label(log.terminal)
                ));
            }
        }
    }
    if notes.is_empty() {
        Filtered
    } else {
        Passed(notes)
    }
}

fn check_mix_equivalence(_sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let (Some(map), Some(modulus)) = (&instance.set_map, &instance.modulus) else {
        return Filtered;
    };
    if !space.is_t0() {
        return Filtered;
    }
    let report = match mix_equivalence_report(space, map, modulus, 6, false) {
        Ok(report) => report,
        Err(err) => return Failed(format!("equivalence audit errored: {err}")),
    };
    if !report.contraction.holds {
        return Filtered;
    }
    if report.simultaneous.len() > 1 {
        return Failed(format!(
            "{} simultaneous start/end points under a contraction on a T0 space",
            report.simultaneous.len()
        ));
    }
    if !report.equivalence_consistent {
        return Failed(String::from(
            "approximate mix value and simultaneous point existence disagree",
        ));
    }
    if !report.decay_consistent {
        return Failed(String::from("a level set broke its 2/n gap bound"));
    }
    let note = if report.simultaneous.is_empty() {
        "no-simultaneous-point"
    } else {
        "unique-simultaneous-point"
    };
    Passed(vec![note])
}

fn check_single_map(_sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let (Some(map), Some(modulus)) = (&instance.single_map, &instance.modulus) else {
        return Filtered;
    };
    if !space.is_t0() {
        return Filtered;
    }
    let audit = match single_map_audit(space, map, modulus, false) {
        Ok(audit) => audit,
        Err(err) => return Failed(format!("single-map audit errored: {err}")),
    };
    match audit.promises_verified {
        None => Filtered,
        Some(true) => Passed(Vec::new()),
        Some(false) => Failed(format!(
            "contractive map broke its promises: fixed points {:?}, approx start {}, end {}, mix {}",
            audit.fixed_points.len(),
            rational_to_string(&audit.approx_start.value),
            rational_to_string(&audit.approx_end.value),
            rational_to_string(&audit.approx_mix.value),
        )),
    }
}

fn check_hyperspace(_sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let n = space.len();
    let family: Vec<PointSet> = (1..(1usize << n))
        .map(|mask| PointSet::from_points((0..n).filter(|&p| mask & (1 << p) != 0)))
        .collect();
    match check_family_axioms(space, &family) {
        Ok(report) if report.is_sound() => {}
        Ok(report) => {
            return Failed(format!(
                "set-distance axioms violated ({} findings)",
                report.violations.len()
            ))
        }
        Err(err) => return Failed(format!("family axiom check errored: {err}")),
    }
    for x in 0..n {
        for y in 0..n {
            let single = match hausdorff(space, &PointSet::singleton(x), &PointSet::singleton(y)) {
                Ok(report) => report,
                Err(err) => return Failed(format!("singleton distance errored: {err}")),
            };
            if single.finite_value() != space.dist(x, y) {
                return Failed(format!(
                    "H({{{}}}, {{{}}}) differs from the point distance",
                    space.label(x),
                    space.label(y)
                ));
            }
        }
    }
    for set in &family {
        for x in 0..n {
            let into = match hausdorff(space, &PointSet::singleton(x), set) {
                Ok(report) => report,
                Err(err) => return Failed(format!("singleton distance errored: {err}")),
            };
            let max_forward = set
                .iter()
                .map(|b| space.dist(x, b).clone())
                .max()
                .expect("family sets are nonempty");
            if into.finite_value() != &max_forward {
                return Failed(String::from(
                    "H({x}, B) differs from the maximum forward distance",
                ));
            }
            let from = match hausdorff(space, set, &PointSet::singleton(x)) {
                Ok(report) => report,
                Err(err) => return Failed(format!("singleton distance errored: {err}")),
            };
            let max_backward = set
                .iter()
                .map(|a| space.dist(a, x).clone())
                .max()
                .expect("family sets are nonempty");
            if from.finite_value() != &max_backward {
                return Failed(String::from(
                    "H(A, {x}) differs from the maximum backward distance",
                ));
            }
        }
    }
    Passed(Vec::new())
}

fn draw_trace(rng: &mut ChaCha8Rng, n: usize) -> SequenceTrace {
    let len = rng.random_range(1..=8);
    let points: Vec<Point> = (0..len).map(|_| rng.random_range(0..n)).collect();
    if rng.random_range(0..2) == 0 {
        let cycle_from = rng.random_range(0..len);
        SequenceTrace::cyclic(points, cycle_from).expect("cycle start is in range")
    } else {
        SequenceTrace::new(points).expect("traces are nonempty")
    }
}

fn check_cauchy_hierarchy(sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let trace = draw_trace(&mut extras_rng(sub_seed), space.len());
    let report = match check_hierarchy(space, &trace) {
        Ok(report) => report,
        Err(err) => return Failed(format!("hierarchy check errored: {err}")),
    };
    if let Some(violation) = report.violations.first() {
        return Failed(format!("hierarchy implication violated: {violation:?}"));
    }
    let conjugate = space.conjugate();
    let dual_pairs = [
        (CauchyKind::LeftK, CauchyKind::RightK),
        (CauchyKind::RightK, CauchyKind::LeftK),
        (CauchyKind::PlainLeft, CauchyKind::PlainRight),
        (CauchyKind::PlainRight, CauchyKind::PlainLeft),
        (CauchyKind::Symmetric, CauchyKind::Symmetric),
    ];
    for (kind, dual) in dual_pairs {
        let here = match classify_cauchy(space, &trace, kind) {
            Ok(verdict) => verdict,
            Err(err) => return Failed(format!("classification errored: {err}")),
        };
        let there = match classify_cauchy(&conjugate, &trace, dual) {
            Ok(verdict) => verdict,
            Err(err) => return Failed(format!("classification errored: {err}")),
        };
        if here != there {
            return Failed(format!(
                "conjugation failed to swap {kind:?} into {dual:?} verbatim"
            ));
        }
    }
    Passed(Vec::new())
}

fn check_eps_lattice(_sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let Some(map) = &instance.set_map else {
        return Filtered;
    };
    let classifications = match classify_all(space, map) {
        Ok(classifications) => classifications,
        Err(err) => return Failed(format!("classification errored: {err}")),
    };
    let grid = [
        ratio(1, 10),
        ratio(1, 4),
        ratio(1, 2),
        ratio(3, 4),
        ratio(9, 10),
    ];
    for kind in [ValueKind::Start, ValueKind::End, ValueKind::Mix] {
        let mut previous: Option<PointSet> = None;
        for eps in &grid {
            let set = match eps_points(space, map, eps, kind) {
                Ok(set) => set,
                Err(err) => return Failed(format!("tolerance set errored: {err}")),
            };
            for (x, classification) in classifications.iter().enumerate() {
                let value = match kind {
                    ValueKind::Start => &classification.start_value,
                    ValueKind::End => &classification.end_value,
                    ValueKind::Mix => &classification.mix_value,
                };
                if set.contains(x) != (value < eps) {
                    return Failed(format!(
                        "{kind} tolerance set at {} disagrees with the strict sublevel at {}",
                        rational_to_string(eps),
                        space.label(x)
                    ));
                }
            }
            if let Some(previous) = &previous {
                if !previous.is_subset_of(&set) {
                    return Failed(format!("{kind} tolerance sets fail to nest upward"));
                }
            }
            previous = Some(set);
        }
    }
    let levels = match level_sets(space, map, 6) {
        Ok(levels) => levels,
        Err(err) => return Failed(format!("level sets errored: {err}")),
    };
    for window in levels.sets.windows(2) {
        if !window[1].is_subset_of(&window[0]) {
            return Failed(String::from("level sets fail to nest downward"));
        }
    }
    let mix_zero: PointSet = classifications
        .iter()
        .enumerate()
        .filter(|(_, c)| c.mix_value == zero())
        .map(|(x, _)| x)
        .collect();
    if levels.core != mix_zero {
        return Failed(String::from(
            "the level-set core differs from the zero-mix points",
        ));
    }
    Passed(Vec::new())
}

fn check_semicontinuity(sub_seed: u64, instance: &LabInstance) -> TrialOutcome {
    let space = &instance.space;
    let n = space.len();
    let mut rng = extras_rng(sub_seed);
    let prefix_len = rng.random_range(0..=5);
    let mut points: Vec<Point> = (0..prefix_len).map(|_| rng.random_range(0..n)).collect();
    let candidate = rng.random_range(0..n);
    points.push(candidate);
    let trace =
        SequenceTrace::cyclic(points, prefix_len).expect("the constant tail starts in range");
    let anchor = rng.random_range(0..n);
    match semicontinuity_probe(space, anchor, &trace, candidate) {
        Ok(report) => {
            if report.upper.status == VerdictStatus::Fails
                || report.lower.status == VerdictStatus::Fails
            {
                return Failed(String::from(
                    "a distance functional failed its semicontinuity probe on a convergent trace",
                ));
            }
            Passed(Vec::new())
        }
        Err(err) => Failed(format!("probe refused a convergent trace: {err}")),
    }
}

// ---------------------------------------------------------------------------
// Runner and shrinking
// ---------------------------------------------------------------------------

/// Cap on generation attempts per requested trial: hypothesis filters
/// reject most random instances for the stricter suites.
const ATTEMPTS_PER_TRIAL: usize = 200;
/// Cap on accepted shrink improvements (halving distances could otherwise
/// descend forever).
const MAX_SHRINK_STEPS: usize = 100;

/// Runs a registered suite. Trials count instances whose hypotheses held;
/// generation stops when enough trials ran or the attempt cap is reached
/// (the cap is recorded in the notes, and such a run does not count as
/// passed). Deterministic in all arguments.
pub fn run_suite(
    id: &str,
    trials: usize,
    seed: u64,
    max_points: Option<usize>,
) -> Result<SuiteOutcome, String> {
    let suite = SUITES
        .iter()
        .find(|suite| suite.id == id)
        .ok_or_else(|| {
            let known: Vec<&str> = SUITES.iter().map(|suite| suite.id).collect();
            format!("unknown suite {id:?} (known: {})", known.join(", "))
        })?;
    let points_cap = max_points.unwrap_or(suite.default_points).max(1);
    let mut outcome = SuiteOutcome {
        id: suite.id,
        seed,
        max_points: points_cap,
        trials_requested: trials,
        trials_run: 0,
        attempts: 0,
        notes: BTreeMap::new(),
        counterexamples: Vec::new(),
    };
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let attempt_cap = trials.saturating_mul(ATTEMPTS_PER_TRIAL).max(ATTEMPTS_PER_TRIAL);
    while outcome.trials_run < trials {
        if outcome.attempts == attempt_cap {
            *outcome.notes.entry("attempt-cap-reached").or_insert(0) += 1;
            break;
        }
        let sub_seed = master.next_u64();
        outcome.attempts += 1;
        let mut gen_rng = ChaCha8Rng::seed_from_u64(sub_seed);
        let instance = (suite.gen)(&mut gen_rng, points_cap);
        match (suite.check)(sub_seed, &instance) {
            Filtered => continue,
            Passed(notes) => {
                outcome.trials_run += 1;
                for note in notes {
                    *outcome.notes.entry(note).or_insert(0) += 1;
                }
            }
            Failed(_) => {
                outcome.trials_run += 1;
                let shrunk = shrink(&instance, &|candidate| {
                    matches!((suite.check)(sub_seed, candidate), Failed(_))
                });
                let detail = match (suite.check)(sub_seed, &shrunk) {
                    Failed(detail) => detail,
                    _ => unreachable!("shrinking only accepts still-failing instances"),
                };
                outcome.counterexamples.push(Counterexample {
                    sub_seed,
                    detail,
                    instance: shrunk,
                });
            }
        }
    }
    Ok(outcome)
}

/// Minimizes a failing instance: repeatedly try dropping points, then
/// zeroing or halving distances (re-closing the matrix each time), keeping
/// any change under which `still_fails` returns true.
fn shrink(instance: &LabInstance, still_fails: &dyn Fn(&LabInstance) -> bool) -> LabInstance {
    let mut current = instance.clone();
    let mut budget = MAX_SHRINK_STEPS;
    'outer: while budget > 0 {
        if current.space.len() > 1 {
            for point in 0..current.space.len() {
                if let Some(candidate) = remove_point(&current, point) {
                    if still_fails(&candidate) {
                        current = candidate;
                        budget -= 1;
                        continue 'outer;
                    }
                }
            }
        }
        let n = current.space.len();
        for x in 0..n {
            for y in 0..n {
                if current.space.dist(x, y) == &zero() {
                    continue;
                }
                let halved = current.space.dist(x, y) / ratio(2, 1);
                for target in [zero(), halved] {
                    if let Some(candidate) = with_distance(&current, x, y, target) {
                        if candidate.space != current.space && still_fails(&candidate) {
                            current = candidate;
                            budget -= 1;
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    current
}

/// Drops one point from the instance, remapping maps and weights. Returns
/// `None` when the removal would empty an image or break a single map.
fn remove_point(instance: &LabInstance, removed: Point) -> Option<LabInstance> {
    let space = &instance.space;
    let n = space.len();
    if n <= 1 {
        return None;
    }
    let survivors: Vec<Point> = (0..n).filter(|&p| p != removed).collect();
    let remap = |p: Point| -> Point {
        if p > removed {
            p - 1
        } else {
            p
        }
    };
    let labels: Vec<String> = survivors
        .iter()
        .map(|&p| space.label(p).to_string())
        .collect();
    let rows: Vec<Vec<Rational>> = survivors
        .iter()
        .map(|&i| survivors.iter().map(|&j| space.dist(i, j).clone()).collect())
        .collect();
    let new_space = FiniteQuasiSpace::new(labels, rows).ok()?;
    if instance.require_t0 && !new_space.is_t0() {
        return None;
    }

    let set_map = match &instance.set_map {
        None => None,
        Some(map) => {
            let mut images = Vec::with_capacity(survivors.len());
            for &x in &survivors {
                let image: PointSet = map
                    .image(x)
                    .iter()
                    .filter(|&y| y != removed)
                    .map(remap)
                    .collect();
                if image.is_empty() {
                    return None;
                }
                images.push(image);
            }
            Some(SetValuedMap::new(&new_space, images).ok()?)
        }
    };
    let single_map = match &instance.single_map {
        None => None,
        Some(map) => {
            let mut values = Vec::with_capacity(survivors.len());
            for &x in &survivors {
                let y = map.value(x);
                if y == removed {
                    return None;
                }
                values.push(remap(y));
            }
            let mut rebuilt = SingleMap::new(&new_space, values).ok()?;
            if map.has_weights() {
                let rows: Vec<Vec<Rational>> = survivors
                    .iter()
                    .map(|&i| {
                        survivors
                            .iter()
                            .map(|&j| map.weight(i, j).expect("weights present").clone())
                            .collect()
                    })
                    .collect();
                rebuilt = rebuilt.with_weights(&new_space, rows).ok()?;
            }
            Some(rebuilt)
        }
    };

    Some(LabInstance {
        space: new_space,
        set_map,
        single_map,
        comparison: instance.comparison.clone(),
        modulus: instance.modulus.clone(),
        require_t0: instance.require_t0,
    })
}

/// Rewrites one distance entry and re-closes the matrix. Returns `None`
/// when the result is invalid (or loses a demanded `T0`).
fn with_distance(
    instance: &LabInstance,
    x: Point,
    y: Point,
    value: Rational,
) -> Option<LabInstance> {
    let space = &instance.space;
    let n = space.len();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| space.dist(i, j).clone()).collect())
        .collect();
    rows[x][y] = value;
    min_plus_close(&mut rows);
    let labels = space.labels().to_vec();
    let new_space = FiniteQuasiSpace::new(labels, rows).ok()?;
    if instance.require_t0 && !new_space.is_t0() {
        return None;
    }
    let mut shrunk = instance.clone();
    shrunk.space = new_space;
    Some(shrunk)
}

/// Renders a suite outcome as a report value. Counterexample instances are
/// embedded in the input file format, so they can be saved and replayed
/// directly. Fully deterministic: no timing, sorted keys.
pub fn suite_report(outcome: &SuiteOutcome) -> serde_json::Value {
    use serde_json::{json, Map, Value};
    let mut body = Map::new();
    body.insert("suite".into(), json!(outcome.id));
    body.insert("seed".into(), json!(outcome.seed));
    body.insert("max_points".into(), json!(outcome.max_points));
    body.insert(
        "trials_requested".into(),
        json!(outcome.trials_requested),
    );
    body.insert("trials_run".into(), json!(outcome.trials_run));
    body.insert("attempts".into(), json!(outcome.attempts));
    body.insert("passed".into(), json!(outcome.passed()));
    let notes: Map<String, Value> = outcome
        .notes
        .iter()
        .map(|(note, count)| ((*note).to_string(), json!(count)))
        .collect();
    body.insert("notes".into(), Value::Object(notes));
    let counterexamples: Vec<Value> = outcome
        .counterexamples
        .iter()
        .map(|counterexample| {
            let instance: Value =
                serde_json::from_str(&crate::format::export_instance(&counterexample.instance))
                    .expect("exported instances are valid JSON");
            json!({
                "sub_seed": counterexample.sub_seed,
                "detail": counterexample.detail,
                "instance": instance,
            })
        })
        .collect();
    body.insert("counterexamples".into(), json!(counterexamples));
    crate::report::report("suite", body)
}
