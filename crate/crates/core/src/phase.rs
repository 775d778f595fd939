//! Spider phases as multiples of π.
//!
//! Phases built from discrete gates stay exact rationals so that the rule
//! predicates ("integer multiple of π", "±π/2") are decidable. Arbitrary
//! rotation angles are carried as tagged radians.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Tolerance used when comparing two inexact phases.
pub const INEXACT_EQ_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhaseParseError {
    #[error("malformed phase fraction `{0}`")]
    Malformed(String),
    #[error("zero denominator in phase `{0}`")]
    ZeroDenominator(String),
}

/// A spider phase.
///
/// `Exact(r)` stands for `r·π` with `r` reduced into `[0, 2)`.
/// `Inexact(x)` stands for `x` radians with `x` in `[0, 2π)`.
#[derive(Debug, Clone, Copy)]
pub enum Phase {
    Exact(Rational64),
    Inexact(f64),
}

impl Phase {
    pub fn zero() -> Self {
        Phase::Exact(Rational64::zero())
    }

    pub fn pi() -> Self {
        Phase::exact(1, 1)
    }

    pub fn half_pi() -> Self {
        Phase::exact(1, 2)
    }

    /// `(numer/denom)·π`, normalized. Panics on a zero denominator.
    pub fn exact(numer: i64, denom: i64) -> Self {
        Phase::from_rational(Rational64::new(numer, denom))
    }

    pub fn from_rational(r: Rational64) -> Self {
        let denom = *r.denom();
        let numer = r.numer().rem_euclid(2 * denom);
        Phase::Exact(Rational64::new(numer, denom))
    }

    /// An inexact phase of `radians`, wrapped into `[0, 2π)`.
    pub fn from_radians(radians: f64) -> Self {
        let mut r = radians.rem_euclid(TAU);
        if r >= TAU {
            r = 0.0;
        }
        Phase::Inexact(r)
    }

    /// `kπ` for an integer `k`.
    pub fn pi_multiple(k: i64) -> Self {
        Phase::exact(k, 1)
    }

    pub fn to_radians(self) -> f64 {
        match self {
            Phase::Exact(r) => r.to_f64().unwrap_or(0.0) * PI,
            Phase::Inexact(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Phase::Exact(_))
    }

    /// The reduced rational multiple of π, for exact phases.
    pub fn as_rational(self) -> Option<Rational64> {
        match self {
            Phase::Exact(r) => Some(r),
            Phase::Inexact(_) => None,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Phase::Exact(r) if r.is_zero())
    }

    /// True iff the phase is exactly 0 or π.
    pub fn is_pi_multiple(self) -> bool {
        matches!(self, Phase::Exact(r) if *r.denom() == 1)
    }

    /// True iff the phase is exactly π/2 or 3π/2.
    pub fn is_half_pi(self) -> bool {
        matches!(self, Phase::Exact(r) if *r.denom() == 2)
    }

    /// Sign of a ±π/2 phase: `+1` for π/2, `-1` for 3π/2.
    pub fn half_pi_sign(self) -> Option<i64> {
        match self {
            Phase::Exact(r) if *r.denom() == 2 => Some(if *r.numer() == 1 { 1 } else { -1 }),
            _ => None,
        }
    }

    /// The integer `k ∈ {0, 1}` of a `kπ` phase.
    pub fn pi_multiple_index(self) -> Option<i64> {
        match self {
            Phase::Exact(r) if *r.denom() == 1 => Some(*r.numer()),
            _ => None,
        }
    }

    /// Equality with exact comparison for exact phases and a small
    /// tolerance for inexact ones. Exact and inexact never compare equal.
    pub fn approx_eq(self, other: Phase, tol: f64) -> bool {
        match (self, other) {
            (Phase::Exact(a), Phase::Exact(b)) => a == b,
            (Phase::Inexact(a), Phase::Inexact(b)) => {
                let d = (a - b).abs();
                d <= tol || (TAU - d).abs() <= tol
            }
            _ => false,
        }
    }

    /// Fraction string `"n/d"` of an exact phase.
    pub fn fraction_string(self) -> Option<String> {
        self.as_rational()
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn parse_fraction(s: &str) -> Result<Self, PhaseParseError> {
        let malformed = || PhaseParseError::Malformed(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| malformed())?;
        let d: i64 = d.parse().map_err(|_| malformed())?;
        if d == 0 {
            return Err(PhaseParseError::ZeroDenominator(s.to_string()));
        }
        Ok(Phase::exact(n, d))
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::zero()
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Phase::Exact(a), Phase::Exact(b)) => a == b,
            (Phase::Inexact(a), Phase::Inexact(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl Add for Phase {
    type Output = Phase;

    fn add(self, rhs: Phase) -> Phase {
        match (self, rhs) {
            (Phase::Exact(a), Phase::Exact(b)) => Phase::from_rational(a + b),
            (a, b) => Phase::from_radians(a.to_radians() + b.to_radians()),
        }
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        match self {
            Phase::Exact(a) => Phase::from_rational(-a),
            Phase::Inexact(x) => Phase::from_radians(-x),
        }
    }
}

impl Sub for Phase {
    type Output = Phase;

    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Exact(r) if r.is_zero() => write!(f, "0"),
            Phase::Exact(r) => match (*r.numer(), *r.denom()) {
                (1, 1) => write!(f, "π"),
                (n, 1) => write!(f, "{n}π"),
                (1, d) => write!(f, "π/{d}"),
                (n, d) => write!(f, "{n}π/{d}"),
            },
            Phase::Inexact(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Phase {
    type Err = PhaseParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Phase::parse_fraction(s)
    }
}
