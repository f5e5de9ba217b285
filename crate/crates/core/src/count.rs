//! Exact distribution of the occurrence count in `n` trials.
//!
//! Every pattern's double PGF has the shape
//!
//! ```text
//!            1 - a z^ell (t-1) N(z)
//! Phi(t,z) = -------------------------------------
//!            1 - z - a z^ell (t-1) sum_i w_i z^s_i
//! ```
//!
//! with `N = 0` for T1. The recursions below read off `z^n` coefficients;
//! the explicit forms expand the reciprocal of the denominator with
//! multinomial coefficients.
//!
//! Indices below zero are taken as zero (including the zeroth moment), and
//! indices in `0..=init_max` carry the initial conditions `phi = 1`,
//! `p_0 = 1`, `mu_0 = 1`.

use num_bigint::BigUint;
use num_traits::One;

use crate::combin::{binomial_rows, FactorialTable};
use crate::dd::Dd;
use crate::error::Result;
use crate::pattern::{derived_constants, powi, PatternSpec, TrialParams};
use crate::pmf::{MomentVector, Pmf};
use crate::poly::Polynomial;

/// Explicit forms may leave cancellation residue this large at `n = 60`.
pub const EXPLICIT_CLAMP_TOLERANCE: f64 = 1e-8;

/// Denominator and numerator structure shared by the recursive and explicit routes.
#[derive(Debug, Clone)]
struct Structure {
    a: f64,
    ell: usize,
    /// `(w, s)`: the denominator term `w * z^(ell + s)`.
    terms: Vec<(f64, usize)>,
    /// `(w, lo, hi)`: numerator terms `w * p^(n - lo) * 1(lo <= n <= hi)`.
    corrections: Vec<(f64, usize, usize)>,
    p: f64,
    /// Largest `n` covered by the initial conditions.
    init_max: usize,
}

impl Structure {
    fn new(spec: &PatternSpec, params: &TrialParams) -> Self {
        let c = derived_constants(spec, params);
        let (p, q, ell) = (params.p(), params.q(), c.ell);
        match *spec {
            PatternSpec::T1 { .. } => {
                let m1 = c.m1.unwrap();
                Structure {
                    a: c.a,
                    ell,
                    terms: vec![(1.0, 0), (-powi(q, m1), m1)],
                    corrections: vec![],
                    p,
                    init_max: ell - 1,
                }
            }
            PatternSpec::T2 { .. } => {
                let m2 = c.m2.unwrap();
                Structure {
                    a: c.a,
                    ell,
                    terms: vec![(1.0, 0), (-powi(p, m2), m2)],
                    corrections: vec![(1.0, ell, ell + m2 - 1)],
                    p,
                    init_max: ell,
                }
            }
            PatternSpec::T3 { .. } => {
                let (m1, m2) = (c.m1.unwrap(), c.m2.unwrap());
                let qm1 = powi(q, m1);
                Structure {
                    a: c.a,
                    ell,
                    terms: vec![
                        (1.0, 0),
                        (-qm1, m1),
                        (-powi(p, m2), m2),
                        (qm1 * powi(p, m2), m1 + m2),
                    ],
                    // (q/p)^m1 p^(n-ell) written as q^m1 p^(n-ell-m1).
                    corrections: vec![(1.0, ell, ell + m2 - 1), (-qm1, ell + m1, ell + m1 + m2 - 1)],
                    p,
                    init_max: ell,
                }
            }
        }
    }

    /// Indicator correction at `n` for the recursions, which start at
    /// `init_max + 1`; the `n = ell` window is absorbed by the initial conditions.
    fn correction(&self, n: usize) -> f64 {
        self.corrections
            .iter()
            .filter(|&&(_, lo, hi)| n > self.ell && (lo..=hi).contains(&n))
            .map(|&(w, lo, _)| w * powi(self.p, n - lo))
            .sum()
    }

    /// `n - ell - s` if nonnegative.
    fn back(&self, n: usize, s: usize) -> Option<usize> {
        n.checked_sub(self.ell + s)
    }
}

/// `(t - 1) * poly`
fn times_t_minus_one(poly: &Polynomial) -> Polynomial {
    &poly.shift(1) - poly
}

/// PGF `phi_n(t)` from the PGF recursion.
pub fn pgf_recursive(spec: &PatternSpec, params: &TrialParams, n: usize) -> Polynomial {
    let st = Structure::new(spec, params);
    let mut phis: Vec<Polynomial> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        if j <= st.init_max {
            phis.push(Polynomial::constant(1.0));
            continue;
        }
        let mut bracket = Polynomial::zero();
        for &(w, s) in &st.terms {
            if let Some(k) = st.back(j, s) {
                bracket = &bracket + &phis[k].scale(w);
            }
        }
        let corr = st.correction(j);
        if corr != 0.0 {
            bracket = &bracket - &Polynomial::constant(corr);
        }
        let next = &phis[j - 1] + &times_t_minus_one(&bracket).scale(st.a);
        phis.push(next);
    }
    phis.pop().expect("n + 1 entries")
}

/// PMF `p_{m,n}` from the PMF recursion, over `m = 0..=floor(n/ell)`.
pub fn pmf_recursive(spec: &PatternSpec, params: &TrialParams, n: usize) -> Result<Pmf> {
    let st = Structure::new(spec, params);
    let width = spec.max_count(n) + 1;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    // p_{m,k} with out-of-range indices as zero.
    let get = |table: &Vec<Vec<f64>>, m: Option<usize>, k: Option<usize>| -> f64 {
        match (m, k) {
            (Some(m), Some(k)) => table[k][m],
            _ => 0.0,
        }
    };
    for j in 0..=n {
        let mut row = vec![0.0; width];
        if j <= st.init_max {
            row[0] = 1.0;
            table.push(row);
            continue;
        }
        let corr = st.correction(j);
        for (m, cell) in row.iter_mut().enumerate() {
            let mut bracket = 0.0;
            for &(w, s) in &st.terms {
                let k = st.back(j, s);
                bracket += w * (get(&table, m.checked_sub(1), k) - get(&table, Some(m), k));
            }
            let indicator = match m {
                0 => -1.0,
                1 => 1.0,
                _ => 0.0,
            };
            *cell = table[j - 1][m] + st.a * bracket - st.a * corr * indicator;
        }
        table.push(row);
    }
    Pmf::new(table.pop().expect("n + 1 rows"), 0, 0.0)
}

/// Non-central moments `mu_{n,0..=jmax}` from the moment recursion.
pub fn moments_recursive(spec: &PatternSpec, params: &TrialParams, n: usize, jmax: usize) -> MomentVector {
    let st = Structure::new(spec, params);
    let binom = binomial_rows(jmax);
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![0.0; jmax + 1];
        row[0] = 1.0;
        if i > st.init_max {
            let corr = st.correction(i);
            for j in 1..=jmax {
                let mut acc = 0.0;
                for (k, &c) in binom[j].iter().enumerate().take(j) {
                    let inner: f64 = st
                        .terms
                        .iter()
                        .filter_map(|&(w, s)| st.back(i, s).map(|b| w * table[b][k]))
                        .sum();
                    acc += c * inner;
                }
                row[j] = table[i - 1][j] + st.a * acc - st.a * corr;
            }
        }
        table.push(row);
    }
    MomentVector::new(table.pop().expect("n + 1 rows"))
}

/// One term of the expansion of `1 / (1 - z - a z^ell (t-1) sum w_i z^s_i)`
/// at `z^n`: the power `U` of `a (t-1)` and its coefficient.
#[derive(Debug, Clone, Copy)]
struct ExpansionTerm {
    total: usize,
    coef: Dd,
}

/// Multinomial expansion of the denominator reciprocal at `z^n`.
///
/// Each part `i` contributes `z^(ell + s_i)` with weight `w_i`; counts run
/// over the nested ranges `c_1 <= n/len_1`, `c_2 <= (n - c_1 len_1)/len_2`, ...
/// and the plain-`z` part fills the remainder `f`. The coefficient of
/// `(a(t-1))^U` is `(f + U; f, c_1, ...) * prod w_i^c_i`. Terms come back
/// sorted by ascending `U`.
fn expansion(parts: &[(usize, Dd)], n: usize, facts: &FactorialTable) -> Vec<ExpansionTerm> {
    fn walk(
        parts: &[(usize, Dd)],
        remaining: usize,
        counts: &mut Vec<usize>,
        weight: Dd,
        facts: &FactorialTable,
        out: &mut Vec<ExpansionTerm>,
    ) {
        let Some((&(len, w), rest)) = parts.split_first() else {
            let mut all = Vec::with_capacity(counts.len() + 1);
            all.push(remaining);
            all.extend_from_slice(counts);
            let multinomial = Dd::from_biguint(&facts.multinomial(&all));
            out.push(ExpansionTerm {
                total: counts.iter().sum(),
                coef: multinomial * weight,
            });
            return;
        };
        for c in 0..=remaining / len {
            counts.push(c);
            walk(rest, remaining - c * len, counts, weight * w.powi(c), facts, out);
            counts.pop();
        }
    }
    let mut out = Vec::new();
    walk(parts, n, &mut Vec::with_capacity(parts.len()), Dd::ONE, facts, &mut out);
    out.sort_by_key(|t| t.total);
    out
}

/// Explicit-form machinery for one `(spec, p)` pair. The alternating sums
/// are carried in double-double and rounded once at the end.
struct Explicit {
    a: Dd,
    parts: Vec<(usize, Dd)>,
    /// `(i, weight)` with `phi_n = base_n - a(t-1) sum weight * base_{n-i}`.
    numerator: Vec<(usize, Dd)>,
    facts: FactorialTable,
}

impl Explicit {
    fn new(spec: &PatternSpec, params: &TrialParams, n: usize) -> Self {
        let p = Dd::from_f64(params.p());
        let q = Dd::from_f64(params.q());
        let a = q.powi(spec.ell1()) * p.powi(spec.ell2());
        let c = derived_constants(spec, params);
        let ell = c.ell;
        let (m1, m2) = (c.m1, c.m2);
        let mut parts = vec![(ell, Dd::ONE)];
        if let Some(m1) = m1 {
            parts.push((ell + m1, -q.powi(m1)));
        }
        if let Some(m2) = m2 {
            parts.push((ell + m2, -p.powi(m2)));
        }
        if let (Some(m1), Some(m2)) = (m1, m2) {
            parts.push((ell + m1 + m2, q.powi(m1) * p.powi(m2)));
        }
        let mut numerator = Vec::new();
        if let Some(m2) = m2 {
            for i in ell..ell + m2 {
                numerator.push((i, p.powi(i - ell)));
            }
            if let Some(m1) = m1 {
                // (q/p)^m1 p^(i-ell) as q^m1 p^(i-ell-m1).
                for i in ell + m1..ell + m1 + m2 {
                    numerator.push((i, -(q.powi(m1) * p.powi(i - ell - m1))));
                }
            }
        }
        Explicit {
            a,
            parts,
            numerator,
            facts: FactorialTable::new(n),
        }
    }

    /// Denominator-reciprocal coefficient at `z^k`, evaluated at `t`.
    fn base_pgf(&self, k: usize, t: f64) -> Dd {
        let x = self.a * (Dd::from_f64(t) - Dd::ONE);
        expansion(&self.parts, k, &self.facts)
            .iter()
            .fold(Dd::ZERO, |acc, term| acc + term.coef * x.powi(term.total))
    }

    /// Coefficients of `t^m` in the denominator reciprocal at `z^k`.
    fn base_pmf(&self, k: usize, width: usize) -> Vec<Dd> {
        let terms = expansion(&self.parts, k, &self.facts);
        let mut out = vec![Dd::ZERO; width];
        let mut last_total = usize::MAX;
        let mut binoms: Vec<Dd> = Vec::new();
        for term in &terms {
            if term.total != last_total {
                last_total = term.total;
                binoms.clear();
                let mut binom = BigUint::one();
                for m in 0..=term.total.min(width - 1) {
                    if m > 0 {
                        binom = binom * BigUint::from(term.total - m + 1) / BigUint::from(m);
                    }
                    binoms.push(Dd::from_biguint(&binom));
                }
            }
            let scaled = term.coef * self.a.powi(term.total);
            for (m, slot) in out.iter_mut().enumerate().take(term.total + 1) {
                let v = scaled * binoms[m];
                *slot = if (term.total - m) % 2 == 0 { *slot + v } else { *slot - v };
            }
        }
        out
    }
}

/// `phi_n(t)` from the explicit multinomial sums.
pub fn pgf_explicit_eval(spec: &PatternSpec, params: &TrialParams, n: usize, t: f64) -> f64 {
    let ex = Explicit::new(spec, params, n);
    let mut shifted = Dd::ZERO;
    for &(i, w) in &ex.numerator {
        if let Some(k) = n.checked_sub(i) {
            shifted = shifted + w * ex.base_pgf(k, t);
        }
    }
    let x = ex.a * (Dd::from_f64(t) - Dd::ONE);
    (ex.base_pgf(n, t) - x * shifted).to_f64()
}

/// PMF from the explicit multinomial sums, over `m = 0..=floor(n/ell)`.
pub fn pmf_explicit(spec: &PatternSpec, params: &TrialParams, n: usize) -> Result<Pmf> {
    let ex = Explicit::new(spec, params, n);
    let width = spec.max_count(n) + 1;
    let mut probs = ex.base_pmf(n, width);
    for &(i, w) in &ex.numerator {
        let Some(k) = n.checked_sub(i) else { continue };
        let v = ex.base_pmf(k, width);
        for m in 0..width {
            let prev = if m > 0 { v[m - 1] } else { Dd::ZERO };
            probs[m] = probs[m] - ex.a * w * (prev - v[m]);
        }
    }
    Pmf::with_clamp(
        probs.into_iter().map(Dd::to_f64).collect(),
        0,
        0.0,
        EXPLICIT_CLAMP_TOLERANCE,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(p: f64) -> TrialParams {
        TrialParams::new(p).unwrap()
    }

    #[test]
    fn t1_at_pattern_length_is_linear() {
        // Only one window fits in ell trials: phi_ell = 1 + a (t - 1).
        for (spec, p) in [
            (PatternSpec::t1(1, 1, 1).unwrap(), 0.3),
            (PatternSpec::t1(2, 3, 2).unwrap(), 0.6),
            (PatternSpec::t1(3, 3, 1).unwrap(), 0.45),
        ] {
            let a = derived_constants(&spec, &params(p)).a;
            let phi = pgf_recursive(&spec, &params(p), spec.ell());
            assert_eq!(phi.degree(), 1);
            assert_abs_diff_eq!(phi.coeff(0), 1.0 - a, epsilon = 1e-15);
            assert_abs_diff_eq!(phi.coeff(1), a, epsilon = 1e-15);
        }
    }

    #[test]
    fn t2_one_past_pattern_length() {
        // Only 0^ell1 1^ell2 0 fits: phi_{ell+1} = 1 + a q (t - 1) when m2 >= 2.
        let spec = PatternSpec::t2(2, 1, 3).unwrap();
        let tp = params(0.35);
        let a = derived_constants(&spec, &tp).a;
        let phi = pgf_recursive(&spec, &tp, spec.ell() + 1);
        assert_abs_diff_eq!(phi.coeff(1), a * tp.q(), epsilon = 1e-15);
        assert_abs_diff_eq!(phi.coeff(0), 1.0 - a * tp.q(), epsilon = 1e-15);
    }

    #[test]
    fn below_pattern_length_is_constant_one() {
        let spec = PatternSpec::t3(2, 2, 2, 3).unwrap();
        for n in 0..spec.ell() {
            assert_eq!(pgf_recursive(&spec, &params(0.4), n).coeffs(), &[1.0]);
            assert_eq!(pmf_explicit(&spec, &params(0.4), n).unwrap().probs(), &[1.0]);
        }
    }

    #[test]
    fn degenerate_p_gives_point_mass() {
        let spec = PatternSpec::t3(1, 2, 1, 2).unwrap();
        for p in [0.0, 1.0] {
            let pmf = pmf_recursive(&spec, &params(p), 20).unwrap();
            assert_eq!(pmf.prob(0), 1.0);
            assert!(pmf.probs()[1..].iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn zeroth_moment_is_one() {
        let spec = PatternSpec::t2(1, 1, 2).unwrap();
        let mv = moments_recursive(&spec, &params(0.3), 17, 0);
        assert_eq!(mv.values(), &[1.0]);
    }

    #[test]
    fn explicit_matches_recursive_small() {
        let spec = PatternSpec::t1(1, 1, 1).unwrap();
        let tp = params(0.5);
        let rec = pmf_recursive(&spec, &tp, 6).unwrap();
        let ex = pmf_explicit(&spec, &tp, 6).unwrap();
        for (x, y) in rec.probs().iter().zip(ex.probs()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn expansion_coefficients_are_multinomials() {
        // 1/(1 - z - x z^2) at z^4: compositions of 4 into 1s and 2s.
        let facts = FactorialTable::new(4);
        let terms = expansion(&[(2, Dd::ONE)], 4, &facts);
        let got: Vec<(usize, f64)> = terms.iter().map(|t| (t.total, t.coef.to_f64())).collect();
        assert_eq!(got, vec![(0, 1.0), (1, 3.0), (2, 1.0)]);
    }
}
