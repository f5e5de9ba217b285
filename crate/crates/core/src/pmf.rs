use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries at least this negative are treated as roundoff and clamped.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Tolerance on `sum(probs) + tail_mass = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// Finite probability table over the outcomes `offset, offset + 1, ...`.
///
/// `tail_mass` is the probability of outcomes past the last represented
/// one; it is zero for count distributions and positive for truncated
/// waiting-time distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pmf {
    probs: Vec<f64>,
    offset: usize,
    tail_mass: f64,
}

impl Pmf {
    /// Builds a table with the default clamp tolerance.
    pub fn new(probs: Vec<f64>, offset: usize, tail_mass: f64) -> Result<Self> {
        Pmf::with_clamp(probs, offset, tail_mass, CLAMP_TOLERANCE)
    }

    /// Builds a table, clamping entries in `[-clamp, 0)` to zero and
    /// rejecting anything more negative.
    pub fn with_clamp(mut probs: Vec<f64>, offset: usize, tail_mass: f64, clamp: f64) -> Result<Self> {
        for (i, v) in probs.iter_mut().enumerate() {
            if *v < 0.0 {
                if *v < -clamp {
                    return Err(Error::NegativeMass { index: offset + i, value: *v });
                }
                *v = 0.0;
            }
        }
        Ok(Pmf {
            probs,
            offset,
            tail_mass: tail_mass.max(0.0),
        })
    }

    /// Truncated table whose tail mass is whatever the entries leave over.
    pub fn truncated(probs: Vec<f64>, offset: usize) -> Result<Self> {
        let total: f64 = probs.iter().sum();
        Pmf::new(probs, offset, 1.0 - total)
    }

    pub fn point_mass(at: usize) -> Self {
        Pmf {
            probs: vec![1.0],
            offset: at,
            tail_mass: 0.0,
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Largest represented outcome, if any.
    pub fn last(&self) -> Option<usize> {
        (!self.probs.is_empty()).then(|| self.offset + self.probs.len() - 1)
    }

    /// `P(X = value)`; zero outside the represented range.
    pub fn prob(&self, value: usize) -> f64 {
        value
            .checked_sub(self.offset)
            .and_then(|i| self.probs.get(i))
            .copied()
            .unwrap_or(0.0)
    }

    /// `(value, probability)` pairs in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.probs.iter().enumerate().map(move |(i, &p)| (self.offset + i, p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Partial-sum mean `sum value * P(value)` over the represented range.
    pub fn mean(&self) -> f64 {
        self.iter().map(|(v, p)| v as f64 * p).sum()
    }

    /// Checks nonnegativity and `sum + tail = 1`.
    pub fn check(&self) -> Result<()> {
        if let Some((i, &v)) = self.probs.iter().enumerate().find(|(_, v)| **v < 0.0 || !v.is_finite()) {
            return Err(Error::NegativeMass { index: self.offset + i, value: v });
        }
        let total = self.total() + self.tail_mass;
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "probabilities plus tail sum to {total}, not 1"
            )));
        }
        Ok(())
    }
}

/// Non-central moments; `values[j]` is the `j`-th moment and `values[0] = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentVector {
    values: Vec<f64>,
}

impl MomentVector {
    pub(crate) fn new(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        MomentVector { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, j: usize) -> Option<f64> {
        self.values.get(j).copied()
    }

    pub fn mean(&self) -> Option<f64> {
        self.get(1)
    }

    pub fn variance(&self) -> Option<f64> {
        Some(self.get(2)? - self.get(1)?.powi(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_roundoff_and_rejects_real_negatives() {
        let pmf = Pmf::new(vec![0.5, -1e-14, 0.5], 0, 0.0).unwrap();
        assert_eq!(pmf.probs(), &[0.5, 0.0, 0.5]);
        assert!(matches!(
            Pmf::new(vec![1.0, -1e-9], 0, 0.0),
            Err(Error::NegativeMass { index: 1, .. })
        ));
        assert!(Pmf::with_clamp(vec![1.0, -1e-9], 0, 0.0, 1e-8).is_ok());
    }

    #[test]
    fn lookup_respects_offset() {
        let pmf = Pmf::truncated(vec![0.25, 0.25], 3).unwrap();
        assert_eq!(pmf.prob(2), 0.0);
        assert_eq!(pmf.prob(3), 0.25);
        assert_eq!(pmf.prob(5), 0.0);
        assert_eq!(pmf.last(), Some(4));
        assert_eq!(pmf.tail_mass(), 0.5);
        pmf.check().unwrap();
    }

    #[test]
    fn check_detects_bad_normalization() {
        let pmf = Pmf::new(vec![0.5, 0.4], 0, 0.0).unwrap();
        assert!(pmf.check().is_err());
    }
}
