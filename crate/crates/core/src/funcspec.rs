//! Serializable specifications of the scalar control functions the
//! contraction results are parameterized by, with certification of the
//! side conditions those results need.
//!
//! Two roles appear throughout the solvers:
//!
//! - a **comparison function** `γ` must be nondecreasing with summable
//!   orbit series `Σ_n γⁿ(t)` for every `t > 0`;
//! - a **contraction modulus** `ψ` must be upper semicontinuous, sit
//!   strictly below the identity for `t > 0`, and keep
//!   `liminf_{t→∞} (t − ψ(t)) > 0`.
//!
//! Three shapes are expressible: `linear` (`t ↦ c·t`), `power`
//! (`t ↦ c·tᵖ`), and `table` (piecewise linear through `(0, 0)` and given
//! breakpoints, extended beyond the last breakpoint with the final
//! segment's slope). Shapes are validated structurally at construction;
//! the mathematical side conditions are *certified* separately by
//! [`FunctionSpec::certify`], because some of them are decidable for these
//! shapes and some are not:
//!
//! - Everything about `linear` and `power` is decided analytically
//!   ([`Certification::Proved`] / [`Certification::Refuted`]).
//! - For `table`, all conditions except orbit summability are decided
//!   analytically from the breakpoints and the extension slope.
//!   Summability of a table's orbits is genuinely not decidable from
//!   finitely many evaluations, so it is probed: orbits are iterated from
//!   sample starting values and judged by a ratio test
//!   (`horizon·(1 − a_H/a_{H−1}) > 1`, with an exact pass when an orbit
//!   hits zero). The outcome is [`Certification::HeuristicPass`] or
//!   [`Certification::HeuristicFail`] — evidence, not proof — and callers
//!   choose whether heuristic evidence is acceptable.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::rational::{integer, Rational};

/// Errors from constructing a function specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpecError {
    /// Factors must be nonnegative.
    NegativeFactor(Rational),
    /// Power exponents start at 1.
    ZeroExponent,
    /// Tables need at least one breakpoint.
    EmptyTable,
    /// Breakpoint abscissas must be strictly increasing and positive.
    BadAbscissa { index: usize, value: Rational },
    /// Breakpoint values must be nonnegative.
    NegativeValue { index: usize, value: Rational },
}

impl fmt::Display for FunctionSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpecError::NegativeFactor(value) => {
                write!(f, "factor must be nonnegative, got {value}")
            }
            FunctionSpecError::ZeroExponent => write!(f, "power exponent must be at least 1"),
            FunctionSpecError::EmptyTable => write!(f, "table needs at least one breakpoint"),
            FunctionSpecError::BadAbscissa { index, value } => write!(
                f,
                "breakpoint {index} abscissa {value} must be positive and strictly increasing"
            ),
            FunctionSpecError::NegativeValue { index, value } => {
                write!(f, "breakpoint {index} value {value} must be nonnegative")
            }
        }
    }
}

impl core::error::Error for FunctionSpecError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Linear {
        factor: Rational,
    },
    Power {
        factor: Rational,
        exponent: u32,
    },
    Table {
        breakpoints: Vec<(Rational, Rational)>,
    },
}

/// A validated scalar function specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpec {
    repr: Repr,
}

/// Borrowed view of a specification's shape, for serialization and
/// display. Construction goes through the validating constructors only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpecView<'a> {
    Linear { factor: &'a Rational },
    Power { factor: &'a Rational, exponent: u32 },
    Table { breakpoints: &'a [(Rational, Rational)] },
}

/// Outcome of certifying one side condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Established analytically for the whole domain.
    Proved,
    /// Disproved analytically.
    Refuted,
    /// Probed numerically and consistent; not a proof.
    HeuristicPass,
    /// Probed numerically and inconsistent.
    HeuristicFail,
}

impl Certification {
    /// Whether this outcome satisfies a caller. `Proved` always does;
    /// `HeuristicPass` only when the caller accepts heuristic evidence.
    pub fn acceptable(self, accept_heuristic: bool) -> bool {
        match self {
            Certification::Proved => true,
            Certification::HeuristicPass => accept_heuristic,
            Certification::Refuted | Certification::HeuristicFail => false,
        }
    }

    /// Whether this outcome rests on sampling rather than proof.
    pub fn is_heuristic(self) -> bool {
        matches!(
            self,
            Certification::HeuristicPass | Certification::HeuristicFail
        )
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::Proved => write!(f, "proved"),
            Certification::Refuted => write!(f, "refuted"),
            Certification::HeuristicPass => write!(f, "heuristic-pass"),
            Certification::HeuristicFail => write!(f, "heuristic-fail"),
        }
    }
}

/// Certification of all five side conditions for one specification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificationRecord {
    /// `t ≤ s ⇒ f(t) ≤ f(s)`.
    pub nondecreasing: Certification,
    /// `Σ_n fⁿ(t) < ∞` for every `t > 0`.
    pub summable_orbits: Certification,
    /// `f(t) < t` for every `t > 0`.
    pub below_identity: Certification,
    /// Upper semicontinuity (automatic for these continuous shapes).
    pub upper_semicontinuous: Certification,
    /// `liminf_{t→∞} (t − f(t)) > 0`.
    pub gap_at_infinity: Certification,
}

impl CertificationRecord {
    /// Whether the spec qualifies as a comparison function (the `γ` role).
    pub fn comparison_certified(&self, accept_heuristic: bool) -> bool {
        self.nondecreasing.acceptable(accept_heuristic)
            && self.summable_orbits.acceptable(accept_heuristic)
    }

    /// Whether the spec qualifies as a contraction modulus (the `ψ` role).
    pub fn modulus_certified(&self, accept_heuristic: bool) -> bool {
        self.upper_semicontinuous.acceptable(accept_heuristic)
            && self.below_identity.acceptable(accept_heuristic)
            && self.gap_at_infinity.acceptable(accept_heuristic)
    }
}

fn pow(base: &Rational, exponent: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exponent {
        acc *= base;
    }
    acc
}

impl FunctionSpec {
    /// `t ↦ factor·t`. The factor must be nonnegative; whether it is small
    /// enough for a given role is a certification question, not a
    /// construction error.
    pub fn linear(factor: Rational) -> Result<Self, FunctionSpecError> {
        if factor < Rational::zero() {
            return Err(FunctionSpecError::NegativeFactor(factor));
        }
        Ok(FunctionSpec {
            repr: Repr::Linear { factor },
        })
    }

    /// `t ↦ factor·t^exponent` with `exponent ≥ 1`.
    pub fn power(factor: Rational, exponent: u32) -> Result<Self, FunctionSpecError> {
        if factor < Rational::zero() {
            return Err(FunctionSpecError::NegativeFactor(factor));
        }
        if exponent == 0 {
            return Err(FunctionSpecError::ZeroExponent);
        }
        Ok(FunctionSpec {
            repr: Repr::Power { factor, exponent },
        })
    }

    /// Piecewise linear through `(0, 0)` and the given breakpoints
    /// `(tᵢ, vᵢ)`, extended past the last breakpoint with the final
    /// segment's slope. Abscissas must be positive and strictly
    /// increasing, values nonnegative.
    pub fn table(breakpoints: Vec<(Rational, Rational)>) -> Result<Self, FunctionSpecError> {
        if breakpoints.is_empty() {
            return Err(FunctionSpecError::EmptyTable);
        }
        let mut previous = Rational::zero();
        for (index, (t, v)) in breakpoints.iter().enumerate() {
            if t <= &previous {
                return Err(FunctionSpecError::BadAbscissa {
                    index,
                    value: t.clone(),
                });
            }
            if v < &Rational::zero() {
                return Err(FunctionSpecError::NegativeValue {
                    index,
                    value: v.clone(),
                });
            }
            previous = t.clone();
        }
        Ok(FunctionSpec {
            repr: Repr::Table { breakpoints },
        })
    }

    /// The shape, for serialization.
    pub fn view(&self) -> FunctionSpecView<'_> {
        match &self.repr {
            Repr::Linear { factor } => FunctionSpecView::Linear { factor },
            Repr::Power { factor, exponent } => FunctionSpecView::Power {
                factor,
                exponent: *exponent,
            },
            Repr::Table { breakpoints } => FunctionSpecView::Table { breakpoints },
        }
    }

    /// Short shape name for reports.
    pub fn kind_name(&self) -> &'static str {
        match &self.repr {
            Repr::Linear { .. } => "linear",
            Repr::Power { .. } => "power",
            Repr::Table { .. } => "table",
        }
    }

    /// One-line human-readable description.
    pub fn describe(&self) -> String {
        match &self.repr {
            Repr::Linear { factor } => alloc::format!("linear({factor})"),
            Repr::Power { factor, exponent } => alloc::format!("power({factor}, {exponent})"),
            Repr::Table { breakpoints } => {
                alloc::format!("table({} breakpoints)", breakpoints.len())
            }
        }
    }

    /// Slope used beyond the last breakpoint: the final segment's.
    fn extension_slope(breakpoints: &[(Rational, Rational)]) -> Rational {
        let (last_t, last_v) = breakpoints.last().expect("tables are nonempty");
        let (prev_t, prev_v) = match breakpoints.len() {
            1 => (Rational::zero(), Rational::zero()),
            n => breakpoints[n - 2].clone(),
        };
        (last_v - prev_v) / (last_t - prev_t)
    }

    /// Evaluates the function. Inputs are distances, hence nonnegative;
    /// negative input is clamped to zero, where every shape takes the
    /// value zero.
    pub fn eval(&self, t: &Rational) -> Rational {
        let zero = Rational::zero();
        if t <= &zero {
            return zero;
        }
        match &self.repr {
            Repr::Linear { factor } => factor * t,
            Repr::Power { factor, exponent } => factor * pow(t, *exponent),
            Repr::Table { breakpoints } => {
                let (last_t, last_v) = breakpoints.last().expect("tables are nonempty");
                if t >= last_t {
                    return last_v + Self::extension_slope(breakpoints) * (t - last_t);
                }
                let mut prev = (Rational::zero(), Rational::zero());
                for (bt, bv) in breakpoints {
                    if t <= bt {
                        let (pt, pv) = prev;
                        return &pv + (bv - &pv) * (t - &pt) / (bt - &pt);
                    }
                    prev = (bt.clone(), bv.clone());
                }
                unreachable!("t < last breakpoint, so some segment contains it")
            }
        }
    }

    /// The n-fold composition `fⁿ(t)` (`n = 0` is `t` itself, clamped).
    pub fn iterate(&self, t: &Rational, n: usize) -> Rational {
        let mut value = t.clone().max(Rational::zero());
        for _ in 0..n {
            value = self.eval(&value);
        }
        value
    }

    /// Certifies all five side conditions.
    ///
    /// `samples` seeds the orbit-summability probe for tables (positive
    /// entries only; the breakpoint abscissas are used when no positive
    /// sample is supplied) and is ignored wherever an analytic decision
    /// exists. `horizon` is the orbit length for the probe; values below 1
    /// are treated as 1.
    pub fn certify(&self, samples: &[Rational], horizon: usize) -> CertificationRecord {
        use Certification::{Proved, Refuted};
        let one = Rational::one();
        match &self.repr {
            Repr::Linear { factor } => {
                let contractive = if factor < &one { Proved } else { Refuted };
                CertificationRecord {
                    nondecreasing: Proved,
                    summable_orbits: contractive,
                    below_identity: contractive,
                    upper_semicontinuous: Proved,
                    gap_at_infinity: contractive,
                }
            }
            Repr::Power { factor, exponent } => {
                if factor.is_zero() {
                    return CertificationRecord {
                        nondecreasing: Proved,
                        summable_orbits: Proved,
                        below_identity: Proved,
                        upper_semicontinuous: Proved,
                        gap_at_infinity: Proved,
                    };
                }
                if *exponent == 1 {
                    let contractive = if factor < &one { Proved } else { Refuted };
                    return CertificationRecord {
                        nondecreasing: Proved,
                        summable_orbits: contractive,
                        below_identity: contractive,
                        upper_semicontinuous: Proved,
                        gap_at_infinity: contractive,
                    };
                }
                // Genuine power with positive factor: some positive input
                // (any t with factor·t^(p−1) ≥ 1) is not pulled down, so
                // orbits from there do not vanish and t − f(t) → −∞.
                CertificationRecord {
                    nondecreasing: Proved,
                    summable_orbits: Refuted,
                    below_identity: Refuted,
                    upper_semicontinuous: Proved,
                    gap_at_infinity: Refuted,
                }
            }
            Repr::Table { breakpoints } => {
                let nondecreasing = if breakpoints
                    .windows(2)
                    .all(|pair| pair[0].1 <= pair[1].1)
                {
                    Proved
                } else {
                    Refuted
                };
                let slope = Self::extension_slope(breakpoints);
                let interior_below = breakpoints.iter().all(|(t, v)| v < t);
                let below_identity = if interior_below && slope <= one {
                    Proved
                } else {
                    Refuted
                };
                let gap_at_infinity = if slope < one {
                    Proved
                } else if slope == one {
                    // Beyond the last breakpoint the gap t − f(t) is the
                    // constant t_last − v_last.
                    let (last_t, last_v) = breakpoints.last().expect("nonempty");
                    if last_v < last_t {
                        Proved
                    } else {
                        Refuted
                    }
                } else {
                    Refuted
                };
                let summable_orbits = if breakpoints.iter().all(|(_, v)| v.is_zero()) {
                    // Identically zero up to the last breakpoint and flat
                    // beyond it: orbits vanish after one step.
                    Proved
                } else {
                    self.probe_orbit_summability(samples, horizon.max(1))
                };
                CertificationRecord {
                    nondecreasing,
                    summable_orbits,
                    below_identity,
                    upper_semicontinuous: Proved,
                    gap_at_infinity,
                }
            }
        }
    }

    /// Ratio-test probe for table orbit summability; see module docs.
    fn probe_orbit_summability(&self, samples: &[Rational], horizon: usize) -> Certification {
        let positives: Vec<&Rational> = samples
            .iter()
            .filter(|t| *t > &Rational::zero())
            .collect();
        let fallback: Vec<Rational>;
        let starts: Vec<&Rational> = if positives.is_empty() {
            fallback = match &self.repr {
                Repr::Table { breakpoints } => {
                    breakpoints.iter().map(|(t, _)| t.clone()).collect()
                }
                _ => alloc::vec![integer(1)],
            };
            fallback.iter().collect()
        } else {
            positives
        };
        for start in starts {
            let mut previous = (*start).clone();
            let mut sample_passes = false;
            let mut current = Rational::zero();
            for step in 0..horizon {
                current = self.eval(&previous);
                if current.is_zero() {
                    sample_passes = true;
                    break;
                }
                if step + 1 < horizon {
                    previous = current.clone();
                }
            }
            if sample_passes {
                continue;
            }
            // previous = a_{H−1} > 0, current = a_H > 0.
            if current >= previous {
                return Certification::HeuristicFail;
            }
            let ratio = &current / &previous;
            let index = integer(horizon as i64) * (Rational::one() - ratio);
            if index <= Rational::one() {
                return Certification::HeuristicFail;
            }
        }
        Certification::HeuristicPass
    }
}
