//! Pattern specifications and the constants shared by every backend.
//!
//! A pattern is a zeros-run followed by a ones-run:
//!
//! | kind | zeros-run length | ones-run length | completes at |
//! |------|------------------|-----------------|--------------|
//! | T1   | `ell1..=k1`      | `>= ell2`       | the `ell2`-th success |
//! | T2   | `>= ell1`        | `ell2..=k2`     | the closing failure |
//! | T3   | `ell1..=k1`      | `ell2..=k2`     | the closing failure |
//!
//! T1 carries no `k2` and T2 no `k1`, so a bound that does not apply can
//! never leak into the wrong formula family.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    T1,
    T2,
    T3,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::T1 => f.write_str("T1"),
            PatternKind::T2 => f.write_str("T2"),
            PatternKind::T3 => f.write_str("T3"),
        }
    }
}

/// One of the three generalized (k1,k2)-run patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PatternSpec {
    T1 { ell1: usize, k1: usize, ell2: usize },
    T2 { ell1: usize, ell2: usize, k2: usize },
    T3 { ell1: usize, k1: usize, ell2: usize, k2: usize },
}

impl PatternSpec {
    pub fn t1(ell1: usize, k1: usize, ell2: usize) -> Result<Self> {
        PatternSpec::T1 { ell1, k1, ell2 }.validate()
    }

    pub fn t2(ell1: usize, ell2: usize, k2: usize) -> Result<Self> {
        PatternSpec::T2 { ell1, ell2, k2 }.validate()
    }

    pub fn t3(ell1: usize, k1: usize, ell2: usize, k2: usize) -> Result<Self> {
        PatternSpec::T3 { ell1, k1, ell2, k2 }.validate()
    }

    /// Returns the spec unchanged iff `1 <= ell1 <= k1` and `1 <= ell2 <= k2`
    /// hold for the bounds the kind carries.
    pub fn validate(self) -> Result<Self> {
        if self.ell1() == 0 {
            return Err(Error::InvalidSpec("ℓ₁ = 0 (need ℓ₁ ≥ 1)".into()));
        }
        if self.ell2() == 0 {
            return Err(Error::InvalidSpec("ℓ₂ = 0 (need ℓ₂ ≥ 1)".into()));
        }
        if let Some(k1) = self.k1() {
            if self.ell1() > k1 {
                return Err(Error::InvalidSpec(format!(
                    "ℓ₁ > k₁ ({} > {k1})",
                    self.ell1()
                )));
            }
        }
        if let Some(k2) = self.k2() {
            if self.ell2() > k2 {
                return Err(Error::InvalidSpec(format!(
                    "ℓ₂ > k₂ ({} > {k2})",
                    self.ell2()
                )));
            }
        }
        Ok(self)
    }

    pub fn kind(&self) -> PatternKind {
        match self {
            PatternSpec::T1 { .. } => PatternKind::T1,
            PatternSpec::T2 { .. } => PatternKind::T2,
            PatternSpec::T3 { .. } => PatternKind::T3,
        }
    }

    pub fn ell1(&self) -> usize {
        match *self {
            PatternSpec::T1 { ell1, .. }
            | PatternSpec::T2 { ell1, .. }
            | PatternSpec::T3 { ell1, .. } => ell1,
        }
    }

    pub fn ell2(&self) -> usize {
        match *self {
            PatternSpec::T1 { ell2, .. }
            | PatternSpec::T2 { ell2, .. }
            | PatternSpec::T3 { ell2, .. } => ell2,
        }
    }

    /// Upper bound on the zeros-run; `None` for T2.
    pub fn k1(&self) -> Option<usize> {
        match *self {
            PatternSpec::T1 { k1, .. } | PatternSpec::T3 { k1, .. } => Some(k1),
            PatternSpec::T2 { .. } => None,
        }
    }

    /// Upper bound on the ones-run; `None` for T1.
    pub fn k2(&self) -> Option<usize> {
        match *self {
            PatternSpec::T2 { k2, .. } | PatternSpec::T3 { k2, .. } => Some(k2),
            PatternSpec::T1 { .. } => None,
        }
    }

    /// Minimal pattern length `ell1 + ell2`.
    pub fn ell(&self) -> usize {
        self.ell1() + self.ell2()
    }

    /// Whether an occurrence needs a closing failure after the ones-run.
    pub fn needs_closing_zero(&self) -> bool {
        !matches!(self, PatternSpec::T1 { .. })
    }

    /// Largest attainable count in `n` trials.
    pub fn max_count(&self, n: usize) -> usize {
        n / self.ell()
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PatternSpec::T1 { ell1, k1, ell2 } => write!(f, "T1({ell1},{k1},{ell2})"),
            PatternSpec::T2 { ell1, ell2, k2 } => write!(f, "T2({ell1},{ell2},{k2})"),
            PatternSpec::T3 { ell1, k1, ell2, k2 } => {
                write!(f, "T3({ell1},{k1},{ell2},{k2})")
            }
        }
    }
}

/// Bernoulli trial parameters. Only `p` is stored; `q` is always `1 - p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialParams {
    p: f64,
}

impl TrialParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(TrialParams { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    /// True when `p` is 0 or 1.
    pub fn is_degenerate(&self) -> bool {
        self.p == 0.0 || self.p == 1.0
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateProbability(self.p))
        } else {
            Ok(())
        }
    }
}

/// `a = q^ell1 p^ell2`, `ell = ell1 + ell2`, `m1 = k1 - ell1 + 1`, `m2 = k2 - ell2 + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub a: f64,
    pub ell: usize,
    pub m1: Option<usize>,
    pub m2: Option<usize>,
}

pub fn derived_constants(spec: &PatternSpec, params: &TrialParams) -> DerivedConstants {
    let a = powi(params.q(), spec.ell1()) * powi(params.p(), spec.ell2());
    DerivedConstants {
        a,
        ell: spec.ell(),
        m1: spec.k1().map(|k1| k1 - spec.ell1() + 1),
        m2: spec.k2().map(|k2| k2 - spec.ell2() + 1),
    }
}

/// `x^n` for a nonnegative integer exponent, with `0^0 = 1`.
pub(crate) fn powi(x: f64, n: usize) -> f64 {
    x.powi(i32::try_from(n).expect("exponent fits in i32"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn validate_accepts_table_patterns() {
        assert!(PatternSpec::t3(1, 2, 1, 1).is_ok());
        assert!(PatternSpec::t2(3, 1, 2).is_ok());
    }

    #[test]
    fn validate_names_violated_bound() {
        let err = PatternSpec::t1(2, 1, 1).unwrap_err();
        assert!(err.to_string().contains("ℓ₁ > k₁"), "{err}");
        let err = PatternSpec::t2(1, 3, 2).unwrap_err();
        assert!(err.to_string().contains("ℓ₂ > k₂"), "{err}");
        let err = PatternSpec::t3(0, 1, 1, 1).unwrap_err();
        assert!(err.to_string().contains("ℓ₁ = 0"), "{err}");
        let err = PatternSpec::t1(1, 1, 0).unwrap_err();
        assert!(err.to_string().contains("ℓ₂ = 0"), "{err}");
    }

    #[test]
    fn ignored_bounds_are_absent() {
        let t1 = PatternSpec::t1(1, 2, 1).unwrap();
        assert_eq!(t1.k2(), None);
        let t2 = PatternSpec::t2(1, 2, 3).unwrap();
        assert_eq!(t2.k1(), None);
    }

    #[test]
    fn derived_constant_examples() {
        let c = derived_constants(
            &PatternSpec::t3(1, 2, 1, 1).unwrap(),
            &TrialParams::new(0.5).unwrap(),
        );
        assert_abs_diff_eq!(c.a, 0.25);
        assert_eq!((c.ell, c.m1, c.m2), (2, Some(2), Some(1)));

        let c = derived_constants(
            &PatternSpec::t1(1, 1, 1).unwrap(),
            &TrialParams::new(0.0).unwrap(),
        );
        assert_eq!(c.a, 0.0);

        let c = derived_constants(
            &PatternSpec::t2(2, 2, 2).unwrap(),
            &TrialParams::new(0.4).unwrap(),
        );
        assert_abs_diff_eq!(c.a, 0.0576, epsilon = 1e-15);
        assert_eq!((c.ell, c.m1, c.m2), (4, None, Some(1)));
    }

    #[test]
    fn probability_range_is_checked() {
        assert!(TrialParams::new(-0.1).is_err());
        assert!(TrialParams::new(1.5).is_err());
        assert!(TrialParams::new(f64::NAN).is_err());
        let tp = TrialParams::new(0.3).unwrap();
        assert_eq!(tp.p() + tp.q(), 1.0);
    }
}
