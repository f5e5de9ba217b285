//! Markov chain embedding of the three patterns.
//!
//! The chain starts in state 1 with probability one. `A` collects the
//! transitions that leave the occurrence count unchanged and `B` those that
//! complete an occurrence, so `phi_n(t) = kappa0 (A + tB)^n 1'`. Everything
//! here is evaluated by repeated row-vector products; no matrix is inverted.
//!
//! State indices (1-based, as in the entry lists):
//!
//! | kind | states | meaning |
//! |------|--------|---------|
//! | T1 | `1..=k1+1` | `i - 1` trailing zeros, anchored by a success or the start |
//! | T1 | `k1+2` | more than `k1` zeros |
//! | T1 | `k1+3..=k1+ell2+2` | `i - k1 - 2` successes after a valid zeros-run (last state: `>= ell2`, occurrence completed) |
//! | T2 | `1..=ell1` | `i - 1` trailing zeros |
//! | T2 | `ell1+1` | at least `ell1` zeros |
//! | T2 | `ell1+2..=ell1+k2+1` | `i - ell1 - 1` successes after a valid zeros-run |
//! | T3 | `1..=k1+1`, `k1+2` | as for T1 |
//! | T3 | `k1+3..=k1+k2+2` | `i - k1 - 2` successes after a valid zeros-run |
//!
//! A failure that closes a T2/T3 occurrence moves to state 2 ("one zero"),
//! so it also opens the next zeros-run.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pattern::{PatternSpec, TrialParams};
use crate::pmf::Pmf;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    /// Sets the 1-based entry `(i, j)`; each entry is written at most once.
    fn set(&mut self, i: usize, j: usize, v: f64) {
        let idx = (i - 1) * self.dim + (j - 1);
        debug_assert_eq!(self.data[idx], 0.0, "entry ({i},{j}) written twice");
        self.data[idx] = v;
    }

    /// `out += v * self`
    fn accumulate_row_product(&self, v: &[f64], scale: f64, out: &mut [f64]) {
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            let w = vi * scale;
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o += w * m;
            }
        }
    }
}

/// Initial distribution plus the count-preserving (`A`) and count-incrementing
/// (`B`) transition matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainEmbedding {
    spec: PatternSpec,
    kappa0: Vec<f64>,
    a: Matrix,
    b: Matrix,
}

impl ChainEmbedding {
    pub fn spec(&self) -> &PatternSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.kappa0.len()
    }

    pub fn kappa0(&self) -> &[f64] {
        &self.kappa0
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    /// `kappa0 (A + tB)^n 1'`, the `z^n` coefficient of the double PGF.
    pub fn pgf_eval(&self, n: usize, t: f64) -> f64 {
        let d = self.dim();
        let mut v = self.kappa0.clone();
        let mut next = vec![0.0; d];
        for _ in 0..n {
            next.iter_mut().for_each(|x| *x = 0.0);
            self.a.accumulate_row_product(&v, 1.0, &mut next);
            self.b.accumulate_row_product(&v, t, &mut next);
            std::mem::swap(&mut v, &mut next);
        }
        v.iter().sum()
    }

    /// Count distribution after `n` trials over `0..=cap`, by evolving one
    /// state vector per count layer.
    pub fn pmf(&self, n: usize, cap: usize) -> Result<Pmf> {
        let needed = self.spec.max_count(n);
        if cap < needed {
            return Err(Error::InvalidArgument(format!(
                "count cap {cap} is below the attainable maximum {needed}"
            )));
        }
        let d = self.dim();
        let mut layers = vec![vec![0.0; d]; cap + 1];
        layers[0].copy_from_slice(&self.kappa0);
        let mut next = vec![vec![0.0; d]; cap + 1];
        for step in 0..n {
            let top = self.spec.max_count(step + 1).min(cap);
            for (c, layer) in next.iter_mut().enumerate().take(top + 1) {
                layer.iter_mut().for_each(|x| *x = 0.0);
                self.a.accumulate_row_product(&layers[c], 1.0, layer);
                if c > 0 {
                    self.b.accumulate_row_product(&layers[c - 1], 1.0, layer);
                }
            }
            std::mem::swap(&mut layers, &mut next);
        }
        let probs = layers.iter().map(|l| l.iter().sum()).collect();
        Pmf::new(probs, 0, 0.0)
    }

    /// Distribution of the trial completing the `r`-th occurrence, for
    /// trials up to `mmax`. Layers stop evolving once count `r` is reached;
    /// `g_r(m)` is the mass pushed through `B` out of layer `r - 1` at step `m`.
    pub fn waiting_pmf(&self, params: &TrialParams, r: usize, mmax: usize) -> Result<Pmf> {
        params.require_nondegenerate()?;
        if r == 0 {
            return Err(Error::InvalidArgument("occurrence index r must be at least 1".into()));
        }
        let d = self.dim();
        let mut layers = vec![vec![0.0; d]; r];
        layers[0].copy_from_slice(&self.kappa0);
        let mut next = vec![vec![0.0; d]; r];
        let mut g = vec![0.0; mmax + 1];
        let mut completed = vec![0.0; d];
        for gm in g.iter_mut().skip(1) {
            completed.iter_mut().for_each(|x| *x = 0.0);
            self.b.accumulate_row_product(&layers[r - 1], 1.0, &mut completed);
            *gm = completed.iter().sum();
            for (c, layer) in next.iter_mut().enumerate() {
                layer.iter_mut().for_each(|x| *x = 0.0);
                self.a.accumulate_row_product(&layers[c], 1.0, layer);
                if c > 0 {
                    self.b.accumulate_row_product(&layers[c - 1], 1.0, layer);
                }
            }
            std::mem::swap(&mut layers, &mut next);
        }
        let offset = g
            .iter()
            .position(|&x| x > 0.0)
            .unwrap_or_else(|| min_waiting_support(&self.spec, r).min(mmax + 1));
        Pmf::truncated(g[offset..].to_vec(), offset)
    }

    /// Row-major CSV dump: a `# d=<d> type=<T>` header, then `kappa0`, `A`
    /// and `B`, each under its own `#` label.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# d={} type={}\n", self.dim(), self.spec.kind());
        let row = |out: &mut String, values: &[f64]| {
            let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        };
        out.push_str("# kappa0\n");
        row(&mut out, &self.kappa0);
        for (label, m) in [("A", &self.a), ("B", &self.b)] {
            let _ = writeln!(out, "# {label}");
            for i in 0..m.dim() {
                row(&mut out, m.row(i));
            }
        }
        out
    }
}

/// Smallest trial at which the `r`-th occurrence can complete.
pub(crate) fn min_waiting_support(spec: &PatternSpec, r: usize) -> usize {
    spec.ell() * r + usize::from(spec.needs_closing_zero())
}

/// Chain dimension: `k1 + ell2 + 2` (T1), `ell1 + k2 + 1` (T2), `k1 + k2 + 2` (T3).
pub fn chain_dim(spec: &PatternSpec) -> usize {
    match *spec {
        PatternSpec::T1 { k1, ell2, .. } => k1 + ell2 + 2,
        PatternSpec::T2 { ell1, k2, .. } => ell1 + k2 + 1,
        PatternSpec::T3 { k1, k2, .. } => k1 + k2 + 2,
    }
}

pub fn build_chain(spec: &PatternSpec, params: &TrialParams) -> ChainEmbedding {
    let (p, q) = (params.p(), params.q());
    let d = chain_dim(spec);
    let mut a = Matrix::zeros(d);
    let mut b = Matrix::zeros(d);
    match *spec {
        PatternSpec::T1 { ell1, k1, ell2 } => {
            let done = k1 + ell2 + 2;
            for i in 1..=ell1 {
                a.set(i, 1, p);
                a.set(i, i + 1, q);
            }
            for i in ell1 + 1..=k1 + 1 {
                // With ell2 = 1 the first success already completes.
                if ell2 == 1 {
                    b.set(i, k1 + 3, p);
                } else {
                    a.set(i, k1 + 3, p);
                }
                a.set(i, i + 1, q);
            }
            a.set(k1 + 2, 1, p);
            a.set(k1 + 2, k1 + 2, q);
            for i in k1 + 3..=done {
                a.set(i, 2, q);
            }
            for i in k1 + 3..=k1 + ell2 {
                a.set(i, i + 1, p);
            }
            a.set(done, done, p);
            if ell2 >= 2 {
                b.set(done - 1, done, p);
            }
        }
        PatternSpec::T2 { ell1, ell2, k2 } => {
            for i in 1..=ell1 {
                a.set(i, 1, p);
                a.set(i, i + 1, q);
            }
            a.set(ell1 + 1, ell1 + 1, q);
            a.set(ell1 + 1, ell1 + 2, p);
            for i in ell1 + 2..=ell1 + ell2 {
                a.set(i, 2, q);
            }
            for i in ell1 + 2..=ell1 + k2 {
                a.set(i, i + 1, p);
            }
            a.set(ell1 + k2 + 1, 1, p);
            for i in ell1 + ell2 + 1..=ell1 + k2 + 1 {
                b.set(i, 2, q);
            }
        }
        PatternSpec::T3 { ell1, k1, ell2, k2 } => {
            for i in 1..=ell1 {
                a.set(i, 1, p);
                a.set(i, i + 1, q);
            }
            for i in ell1 + 1..=k1 + 1 {
                a.set(i, k1 + 3, p);
                a.set(i, i + 1, q);
            }
            a.set(k1 + 2, 1, p);
            a.set(k1 + 2, k1 + 2, q);
            for i in k1 + 3..=k1 + ell2 + 1 {
                a.set(i, 2, q);
            }
            for i in k1 + 3..=k1 + k2 + 1 {
                a.set(i, i + 1, p);
            }
            a.set(k1 + k2 + 2, 1, p);
            for i in k1 + ell2 + 2..=k1 + k2 + 2 {
                b.set(i, 2, q);
            }
        }
    }
    let mut kappa0 = vec![0.0; d];
    kappa0[0] = 1.0;
    ChainEmbedding {
        spec: *spec,
        kappa0,
        a,
        b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(p: f64) -> TrialParams {
        TrialParams::new(p).unwrap()
    }

    #[test]
    fn dimensions_and_start() {
        let c = build_chain(&PatternSpec::t3(1, 2, 1, 1).unwrap(), &params(0.4));
        assert_eq!(c.dim(), 5);
        assert_eq!(c.kappa0(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        let c = build_chain(&PatternSpec::t1(1, 1, 1).unwrap(), &params(0.4));
        assert_eq!(c.dim(), 4);
        let c = build_chain(&PatternSpec::t2(2, 1, 3).unwrap(), &params(0.4));
        assert_eq!(c.dim(), 6);
    }

    #[test]
    fn t3_entries_match_construction() {
        // T3(1,2,1,1): states 1 start, 2-3 one/two zeros, 4 too many zeros, 5 one success.
        let (p, q) = (0.3, 0.7);
        let c = build_chain(&PatternSpec::t3(1, 2, 1, 1).unwrap(), &params(p));
        let expect_a = [
            [p, q, 0.0, 0.0, 0.0],
            [0.0, 0.0, q, 0.0, p],
            [0.0, 0.0, 0.0, q, p],
            [p, 0.0, 0.0, q, 0.0],
            [p, 0.0, 0.0, 0.0, 0.0],
        ];
        for (i, row) in expect_a.iter().enumerate() {
            assert_eq!(c.a().row(i), row);
        }
        assert_eq!(c.b().get(4, 1), q);
        assert_eq!(c.b().row(0).iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn pgf_normalization_and_identity_power() {
        let c = build_chain(&PatternSpec::t2(1, 1, 2).unwrap(), &params(0.3));
        assert_abs_diff_eq!(c.pgf_eval(25, 1.0), 1.0, epsilon = 1e-12);
        assert_eq!(c.pgf_eval(0, 0.37), 1.0);
    }

    #[test]
    fn short_sequences_give_point_mass() {
        let c = build_chain(&PatternSpec::t3(2, 3, 2, 2).unwrap(), &params(0.5));
        let pmf = c.pmf(3, 0).unwrap();
        assert_eq!(pmf.probs(), &[1.0]);
        assert!(c.pmf(9, 1).is_err());
    }

    #[test]
    fn waiting_rejects_degenerate_p() {
        let spec = PatternSpec::t1(1, 1, 1).unwrap();
        for p in [0.0, 1.0] {
            let c = build_chain(&spec, &params(p));
            assert!(matches!(
                c.waiting_pmf(&params(p), 1, 10),
                Err(Error::DegenerateProbability(_))
            ));
        }
    }

    #[test]
    fn csv_dump_layout() {
        let c = build_chain(&PatternSpec::t1(1, 1, 1).unwrap(), &params(0.5));
        let csv = c.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# d=4 type=T1");
        assert_eq!(lines[2], "1,0,0,0");
        assert_eq!(lines.len(), 1 + 2 + 2 * (1 + 4));
        assert!(lines[4..8].iter().all(|l| l.split(',').count() == 4));
    }
}
