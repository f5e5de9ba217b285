//! Waiting time until the `r`-th occurrence.
//!
//! Three routes to the same distribution:
//! - [`waiting_pgf`] builds the closed-form rational PGF `H_r(t)`,
//!   and [`waiting_pmf_series`] expands it as a power series;
//! - [`waiting_pmf_recursive`] runs the coefficient recursion directly;
//! - the chain route lives in [`crate::chain::ChainEmbedding::waiting_pmf`].
//!
//! For T2/T3 the process restarts in the "one zero seen" state after each
//! occurrence, so `H_r = qt/(1-pt) * X(t)^r`; T1 renews from scratch and
//! `H_r = X(t)^r`.

use crate::chain::min_waiting_support;
use crate::combin::binomial_rows;
use crate::error::{Error, Result};
use crate::pattern::{derived_constants, powi, PatternSpec, TrialParams};
use crate::pmf::{MomentVector, Pmf};
use crate::poly::Polynomial;

/// Truncation target for [`waiting_pmf_auto`].
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

/// Hard cap on the automatically chosen truncation point.
pub const MMAX_CAP: usize = 10_000;

/// Smallest coefficient the moment solve accepts.
pub const MIN_SOLVE_COEFFICIENT: f64 = 1e-15;

/// `numerator / denominator`, each kept as a product of powered factors so
/// evaluation near `t = 1` avoids the cancellation of the expanded form.
/// The denominator has a nonzero constant term, so a power series exists.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: Vec<(Polynomial, usize)>,
    denominator: Vec<(Polynomial, usize)>,
}

fn expand(factors: &[(Polynomial, usize)]) -> Polynomial {
    factors
        .iter()
        .fold(Polynomial::constant(1.0), |acc, (f, e)| &acc * &f.pow(*e))
}

/// Term-by-term sum with Neumaier compensation. Horner's rule would fold the
/// small `a`-weighted terms into `1 - t` before it cancels at `t = 1`.
fn eval_compensated(f: &Polynomial, t: f64) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut power = 1.0;
    for &c in f.coeffs() {
        let x = c * power;
        let s = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - s) + x } else { (x - s) + sum };
        sum = s;
        power *= t;
    }
    sum + comp
}

fn eval_factors(factors: &[(Polynomial, usize)], t: f64) -> f64 {
    factors.iter().map(|(f, e)| powi(eval_compensated(f, t), *e)).product()
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        RationalFunction::from_factors(vec![(numerator, 1)], vec![(denominator, 1)])
    }

    pub fn from_factors(
        numerator: Vec<(Polynomial, usize)>,
        denominator: Vec<(Polynomial, usize)>,
    ) -> Result<Self> {
        if expand(&denominator).coeff(0) == 0.0 {
            return Err(Error::InvalidArgument(
                "denominator vanishes at t = 0; no power series".into(),
            ));
        }
        Ok(RationalFunction {
            numerator,
            denominator,
        })
    }

    /// Expanded numerator polynomial.
    pub fn numerator(&self) -> Polynomial {
        expand(&self.numerator)
    }

    /// Expanded denominator polynomial.
    pub fn denominator(&self) -> Polynomial {
        expand(&self.denominator)
    }

    pub fn eval(&self, t: f64) -> f64 {
        eval_factors(&self.numerator, t) / eval_factors(&self.denominator, t)
    }

    /// Power-series coefficients `c_0..=c_mmax`, from
    /// `d_0 c_m = n_m - sum_{i>=1} d_i c_{m-i}`.
    pub fn series(&self, mmax: usize) -> Vec<f64> {
        let num = self.numerator();
        let den = self.denominator();
        let d = den.coeffs();
        let d0 = d[0];
        let mut c = Vec::with_capacity(mmax + 1);
        for m in 0..=mmax {
            let mut acc = num.coeff(m);
            for i in 1..d.len().min(m + 1) {
                acc -= d[i] * c[m - i];
            }
            c.push(acc / d0);
        }
        c
    }
}

/// Closed-form PGF of the `r`-th waiting time.
pub fn waiting_pgf(spec: &PatternSpec, params: &TrialParams, r: usize) -> Result<RationalFunction> {
    params.require_nondegenerate()?;
    require_r(r)?;
    let c = derived_constants(spec, params);
    let (p, q) = (params.p(), params.q());
    let one = Polynomial::constant(1.0);
    // 1 - (x t)^m
    let window = |x: f64, m: usize| &one - &Polynomial::monomial(powi(x, m), m);
    let shape = match spec {
        PatternSpec::T1 { .. } => window(q, c.m1.unwrap()),
        PatternSpec::T2 { .. } => window(p, c.m2.unwrap()),
        PatternSpec::T3 { .. } => &window(q, c.m1.unwrap()) * &window(p, c.m2.unwrap()),
    };
    let inter_num = shape.shift(c.ell).scale(c.a);
    let inter_den = &(&one - &Polynomial::monomial(1.0, 1)) + &inter_num;
    let mut num = vec![(inter_num, r)];
    let mut den = vec![(inter_den, r)];
    if spec.needs_closing_zero() {
        num.push((Polynomial::monomial(q, 1), 1));
        den.push((Polynomial::new(vec![1.0, -p]), 1));
    }
    RationalFunction::from_factors(num, den)
}

fn require_r(r: usize) -> Result<()> {
    if r == 0 {
        Err(Error::InvalidArgument("occurrence index r must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Series expansion of [`waiting_pgf`] up to `t^mmax`.
pub fn waiting_pmf_series(spec: &PatternSpec, params: &TrialParams, r: usize, mmax: usize) -> Result<Pmf> {
    let h = waiting_pgf(spec, params, r)?;
    let coeffs = h.series(mmax);
    let offset = min_waiting_support(spec, r).min(mmax + 1);
    Pmf::truncated(coeffs[offset..].to_vec(), offset)
}

/// `(w, s)` terms of `(1 - (qt)^m1)(1 - (pt)^m2)` (factors as applicable),
/// each contributing `w * t^s`.
fn window_terms(spec: &PatternSpec, params: &TrialParams) -> Vec<(f64, usize)> {
    let c = derived_constants(spec, params);
    let (p, q) = (params.p(), params.q());
    match spec {
        PatternSpec::T1 { .. } => {
            let m1 = c.m1.unwrap();
            vec![(1.0, 0), (-powi(q, m1), m1)]
        }
        PatternSpec::T2 { .. } => {
            let m2 = c.m2.unwrap();
            vec![(1.0, 0), (-powi(p, m2), m2)]
        }
        PatternSpec::T3 { .. } => {
            let (m1, m2) = (c.m1.unwrap(), c.m2.unwrap());
            vec![
                (1.0, 0),
                (-powi(q, m1), m1),
                (-powi(p, m2), m2),
                (powi(q, m1) * powi(p, m2), m1 + m2),
            ]
        }
    }
}

/// Starting numerator of the first waiting time for T2/T3 at trial `m`:
/// `q a p^(m-ell-1) 1(ell+1 <= m <= ell+m2)`, minus (T3) the same window
/// shifted by `m1` and weighted by `q^m1`.
fn first_occurrence_source(spec: &PatternSpec, params: &TrialParams, m: usize) -> f64 {
    let c = derived_constants(spec, params);
    let (p, q, ell) = (params.p(), params.q(), c.ell);
    let m2 = c.m2.expect("T2/T3 only");
    let mut s = 0.0;
    if (ell + 1..=ell + m2).contains(&m) {
        s += powi(p, m - ell - 1);
    }
    if let Some(m1) = c.m1 {
        if (ell + m1 + 1..=ell + m1 + m2).contains(&m) {
            s -= powi(q, m1) * powi(p, m - ell - 1 - m1);
        }
    }
    q * c.a * s
}

/// `g_r(m)` for `m <= mmax` from the waiting-time PMF recursion.
pub fn waiting_pmf_recursive(spec: &PatternSpec, params: &TrialParams, r: usize, mmax: usize) -> Result<Pmf> {
    params.require_nondegenerate()?;
    require_r(r)?;
    let c = derived_constants(spec, params);
    let (a, ell) = (c.a, c.ell);
    let terms = window_terms(spec, params);
    let closing = spec.needs_closing_zero();

    // g[rho][m]; g_0 = delta_{m,0} (only read by T1).
    let mut g = vec![vec![0.0; mmax + 1]; r + 1];
    g[0][0] = 1.0;
    let at = |row: &[f64], m: Option<usize>| m.map_or(0.0, |m| row[m]);
    for rho in 1..=r {
        let first = min_waiting_support(spec, rho);
        let (done, current) = g.split_at_mut(rho);
        let prev = &done[rho - 1];
        let row = &mut current[0];
        for m in first..=mmax {
            let mut value = row[m - 1];
            if closing && rho == 1 {
                let mut conv = 0.0;
                for &(w, s) in &terms {
                    conv += w * at(row, m.checked_sub(ell + s));
                }
                value += first_occurrence_source(spec, params, m) - a * conv;
            } else {
                let mut conv = 0.0;
                for &(w, s) in &terms {
                    let k = m.checked_sub(ell + s);
                    conv += w * (at(prev, k) - at(row, k));
                }
                value += a * conv;
            }
            row[m] = value;
        }
    }
    let offset = min_waiting_support(spec, r).min(mmax + 1);
    Pmf::truncated(g[r][offset..].to_vec(), offset)
}

/// Recursive PMF truncated at the smallest `m` whose tail falls below
/// [`DEFAULT_TAIL_TOLERANCE`]. The flag is set when [`MMAX_CAP`] was hit first.
pub fn waiting_pmf_auto(spec: &PatternSpec, params: &TrialParams, r: usize) -> Result<(Pmf, bool)> {
    let mut mmax = (8 * min_waiting_support(spec, r)).clamp(64, MMAX_CAP);
    loop {
        let pmf = waiting_pmf_recursive(spec, params, r, mmax)?;
        if pmf.tail_mass() < DEFAULT_TAIL_TOLERANCE {
            // Trim to the first point where the tail drops below tolerance.
            // Same summation order as `Pmf::truncated`, so the kept tail agrees.
            let mut acc = 0.0;
            let mut keep = pmf.probs().len();
            for (i, &x) in pmf.probs().iter().enumerate() {
                acc += x;
                if 1.0 - acc < DEFAULT_TAIL_TOLERANCE {
                    keep = i + 1;
                    break;
                }
            }
            let trimmed = Pmf::truncated(pmf.probs()[..keep].to_vec(), pmf.offset())?;
            return Ok((trimmed, false));
        }
        if mmax == MMAX_CAP {
            return Ok((pmf, true));
        }
        mmax = (mmax * 2).min(MMAX_CAP);
    }
}

/// `sum_i w_i (ell + s_i)^e`
fn shifted_power_sum(terms: &[(f64, usize)], ell: usize, e: usize) -> f64 {
    terms.iter().map(|&(w, s)| w * powi((ell + s) as f64, e)).sum()
}

/// Non-central moments `mu~_{r,0..=jmax}` of the `r`-th waiting time.
///
/// The moment relations contain `mu~_{r,j}` on both sides; the `k = j`
/// summand leaves `a * c_0 * mu~_{r,j}` behind, with `c_0` the window
/// product at `t = 1`, and the relation is solved for it.
pub fn waiting_moments(spec: &PatternSpec, params: &TrialParams, r: usize, jmax: usize) -> Result<MomentVector> {
    params.require_nondegenerate()?;
    require_r(r)?;
    let c = derived_constants(spec, params);
    let (a, ell) = (c.a, c.ell);
    let (p, q) = (params.p(), params.q());
    let terms = window_terms(spec, params);
    let weights: Vec<f64> = (0..=jmax).map(|e| shifted_power_sum(&terms, ell, e)).collect();
    let solve = a * weights[0];
    if solve.is_nan() || solve < MIN_SOLVE_COEFFICIENT {
        return Err(Error::SingularMomentSolve(solve));
    }
    let binom = binomial_rows(jmax);

    // Source moments of the first-occurrence numerator (T2/T3).
    let source = |j: usize| -> f64 {
        let m2 = c.m2.expect("T2/T3 only");
        let mut s: f64 = (ell + 1..=ell + m2)
            .map(|k| powi(k as f64, j) * powi(p, k - ell - 1))
            .sum();
        if let Some(m1) = c.m1 {
            s -= (ell + m1 + 1..=ell + m1 + m2)
                .map(|k| powi(k as f64, j) * powi(q, m1) * powi(p, k - ell - 1 - m1))
                .sum::<f64>();
        }
        q * a * s
    };

    let mut prev: Vec<f64> = (0..=jmax).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect();
    for rho in 1..=r {
        let mut cur = vec![0.0; jmax + 1];
        cur[0] = 1.0;
        for j in 1..=jmax {
            let mut rest = 0.0;
            if spec.needs_closing_zero() && rho == 1 {
                for k in 0..j {
                    rest += binom[j][k] * cur[k] * (1.0 - a * weights[j - k]);
                }
                rest += source(j);
                cur[j] = rest / solve;
            } else {
                for k in 0..j {
                    rest += binom[j][k] * (cur[k] + a * weights[j - k] * (prev[k] - cur[k]));
                }
                cur[j] = prev[j] + rest / solve;
            }
        }
        prev = cur;
    }
    Ok(MomentVector::new(prev))
}
