//! Brute-force ground truth by exhaustive enumeration of all `2^n` sequences.

use rayon::prelude::*;

use crate::chain::min_waiting_support;
use crate::error::{Error, Result};
use crate::pattern::{powi, PatternSpec, TrialParams};
use crate::pmf::Pmf;
use crate::scanner::count_runs_bits;

/// Largest sequence length the oracle will enumerate.
pub const MAX_ORACLE_TRIALS: usize = 22;

/// Sequences per parallel work unit.
const CHUNK_BITS: usize = 12;

/// `hist[z][c]`: number of length-`n` sequences with `z` failures and count `c`.
///
/// Independent of `p`, so one enumeration serves every success probability.
pub fn count_histogram(spec: &PatternSpec, n: usize) -> Result<Vec<Vec<u64>>> {
    if n > MAX_ORACLE_TRIALS {
        return Err(Error::EnumerationBudget {
            requested: n,
            limit: MAX_ORACLE_TRIALS,
        });
    }
    let width = spec.max_count(n) + 1;
    let total: u64 = 1 << n;
    let chunk: u64 = 1 << CHUNK_BITS.min(n);
    let chunks = total / chunk;
    // Chunks are merged in index order, so the result does not depend on scheduling.
    let partials: Vec<Vec<Vec<u64>>> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut hist = vec![vec![0u64; width]; n + 1];
            let mut bits = vec![0u8; n];
            for mask in ci * chunk..(ci + 1) * chunk {
                let mut ones = 0;
                for (i, b) in bits.iter_mut().enumerate() {
                    *b = ((mask >> i) & 1) as u8;
                    ones += *b as usize;
                }
                let count = count_runs_bits(&bits, spec);
                hist[n - ones][count] += 1;
            }
            hist
        })
        .collect();
    let mut hist = vec![vec![0u64; width]; n + 1];
    for part in partials {
        for (row, prow) in hist.iter_mut().zip(part) {
            for (h, x) in row.iter_mut().zip(prow) {
                *h += x;
            }
        }
    }
    Ok(hist)
}

/// Weights a histogram by `q^z p^(n-z)`.
pub fn pmf_from_histogram(hist: &[Vec<u64>], params: &TrialParams) -> Result<Pmf> {
    let n = hist.len() - 1;
    let width = hist[0].len();
    let mut probs = vec![0.0; width];
    for (z, row) in hist.iter().enumerate() {
        let w = powi(params.q(), z) * powi(params.p(), n - z);
        if w == 0.0 {
            continue;
        }
        for (c, &k) in row.iter().enumerate() {
            probs[c] += k as f64 * w;
        }
    }
    Pmf::new(probs, 0, 0.0)
}

/// Exact count PMF over `0..=floor(n/ell)` by enumeration.
pub fn oracle_count_pmf(spec: &PatternSpec, params: &TrialParams, n: usize) -> Result<Pmf> {
    pmf_from_histogram(&count_histogram(spec, n)?, params)
}

/// Exact `g_r(m)` for `m <= mmax` as `P(H^m >= r) - P(H^(m-1) >= r)`.
pub fn oracle_waiting_pmf(spec: &PatternSpec, params: &TrialParams, r: usize, mmax: usize) -> Result<Pmf> {
    if mmax > MAX_ORACLE_TRIALS {
        return Err(Error::EnumerationBudget {
            requested: mmax,
            limit: MAX_ORACLE_TRIALS,
        });
    }
    if r == 0 {
        return Err(Error::InvalidArgument("occurrence index r must be at least 1".into()));
    }
    let mut at_least = Vec::with_capacity(mmax + 1);
    for m in 0..=mmax {
        let pmf = oracle_count_pmf(spec, params, m)?;
        at_least.push(pmf.iter().filter(|&(c, _)| c >= r).map(|(_, x)| x).sum::<f64>());
    }
    let offset = min_waiting_support(spec, r).min(mmax + 1);
    let probs: Vec<f64> = (offset..=mmax)
        .map(|m| at_least[m] - if m > 0 { at_least[m - 1] } else { 0.0 })
        .collect();
    Pmf::new(probs, offset, 1.0 - at_least[mmax])
}

/// A moment computed from a possibly truncated PMF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    /// `sum value^j P(value)` over the represented outcomes.
    pub value: f64,
    pub tail_mass: f64,
    /// Estimate of the contribution of unrepresented outcomes, zero when the
    /// PMF is complete. Assumes the tail continues geometrically at the
    /// ratio of the last two entries; falls back to `tail (last+1)^j`.
    pub tail_estimate: f64,
}

/// `j`-th non-central moment of `pmf`, with a tail estimate when truncated.
pub fn oracle_moment(pmf: &Pmf, j: usize) -> MomentEstimate {
    let value = pmf.iter().map(|(v, x)| powi(v as f64, j) * x).sum();
    let tail = pmf.tail_mass();
    let tail_estimate = if tail > 0.0 {
        geometric_tail_moment(pmf, j).unwrap_or_else(|| {
            let next = pmf.last().map_or(pmf.offset(), |l| l + 1);
            tail * powi(next as f64, j)
        })
    } else {
        0.0
    };
    MomentEstimate {
        value,
        tail_mass: tail,
        tail_estimate,
    }
}

fn geometric_tail_moment(pmf: &Pmf, j: usize) -> Option<f64> {
    let probs = pmf.probs();
    let (last, before) = (*probs.last()?, *probs.get(probs.len().checked_sub(2)?)?);
    let ratio = last / before;
    if !(ratio > 0.0 && ratio < 1.0) {
        return None;
    }
    let start = pmf.last()? + 1;
    // Tail mass spread as tail (1-ratio) ratio^k over start + k.
    let mut acc = 0.0;
    let mut weight = pmf.tail_mass() * (1.0 - ratio);
    for k in 0..1_000_000 {
        let term = weight * powi((start + k) as f64, j);
        acc += term;
        if term < acc * 1e-17 {
            break;
        }
        weight *= ratio;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(p: f64) -> TrialParams {
        TrialParams::new(p).unwrap()
    }

    #[test]
    fn two_trial_enumeration() {
        // Only "01" holds the pattern.
        let pmf = oracle_count_pmf(&PatternSpec::t1(1, 1, 1).unwrap(), &params(0.5), 2).unwrap();
        assert_eq!(pmf.probs(), &[0.75, 0.25]);
    }

    #[test]
    fn all_successes_never_match() {
        let pmf = oracle_count_pmf(&PatternSpec::t2(1, 1, 2).unwrap(), &params(1.0), 9).unwrap();
        assert_eq!(pmf.prob(0), 1.0);
    }

    #[test]
    fn budget_enforced() {
        let spec = PatternSpec::t1(1, 1, 1).unwrap();
        assert!(matches!(
            oracle_count_pmf(&spec, &params(0.5), 23),
            Err(Error::EnumerationBudget { requested: 23, .. })
        ));
        assert!(oracle_waiting_pmf(&spec, &params(0.5), 1, 23).is_err());
    }

    #[test]
    fn first_waiting_time_by_hand() {
        // 010; 0010, 1010; 11010, 10010 each with probability 1/32.
        let pmf = oracle_waiting_pmf(&PatternSpec::t3(1, 2, 1, 1).unwrap(), &params(0.5), 1, 5).unwrap();
        assert_eq!(pmf.prob(2), 0.0);
        assert_eq!(pmf.prob(3), 0.125);
        assert_eq!(pmf.prob(4), 0.125);
        assert_eq!(pmf.prob(5), 0.0625);
    }

    #[test]
    fn moment_edge_cases() {
        let point = Pmf::point_mass(0);
        assert_eq!(oracle_moment(&point, 3).value, 0.0);
        let truncated = Pmf::truncated(vec![0.5, 0.25], 1).unwrap();
        let m0 = oracle_moment(&truncated, 0);
        assert_abs_diff_eq!(m0.value, 1.0 - m0.tail_mass);
        // Geometric continuation 1/8 at 3, 1/16 at 4, ...: sum k 2^-k over k >= 3 = 1.
        let m1 = oracle_moment(&truncated, 1);
        assert_abs_diff_eq!(m1.tail_estimate, 1.0, epsilon = 1e-12);
    }
}
