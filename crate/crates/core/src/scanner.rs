//! Pattern counting on a concrete trial sequence.
//!
//! Two independent routes are kept: [`count_indicator`] evaluates the
//! indicator products window by window, [`count_runs`] works on the maximal
//! run decomposition. They must agree on every sequence.

use crate::pattern::PatternSpec;
use crate::sequence::BitSequence;

/// One maximal block of equal symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub symbol: u8,
    pub len: usize,
    /// 1-based index of the first trial of the run.
    pub start: usize,
    pub is_last: bool,
}

/// Maximal runs of a sequence, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunDecomposition {
    pub runs: Vec<Run>,
}

impl RunDecomposition {
    pub fn of(bits: &[u8]) -> Self {
        let mut runs: Vec<Run> = Vec::new();
        for (i, &b) in bits.iter().enumerate() {
            match runs.last_mut() {
                Some(run) if run.symbol == b => run.len += 1,
                _ => runs.push(Run {
                    symbol: b,
                    len: 1,
                    start: i + 1,
                    is_last: false,
                }),
            }
        }
        if let Some(last) = runs.last_mut() {
            last.is_last = true;
        }
        RunDecomposition { runs }
    }
}

/// Whether a (zeros-run, ones-run) pair of the given lengths is an occurrence.
fn pair_matches(spec: &PatternSpec, zeros: usize, ones: usize, ones_is_last: bool) -> bool {
    match *spec {
        PatternSpec::T1 { ell1, k1, ell2 } => (ell1..=k1).contains(&zeros) && ones >= ell2,
        PatternSpec::T2 { ell1, ell2, k2 } => {
            zeros >= ell1 && (ell2..=k2).contains(&ones) && !ones_is_last
        }
        PatternSpec::T3 { ell1, k1, ell2, k2 } => {
            (ell1..=k1).contains(&zeros) && (ell2..=k2).contains(&ones) && !ones_is_last
        }
    }
}

/// Completion trials (1-based, ascending) of every occurrence in `bits`.
///
/// T1 occurrences complete at the `ell2`-th success of the ones-run, T2/T3
/// occurrences at the closing failure.
pub(crate) fn completions(bits: &[u8], spec: &PatternSpec) -> Vec<usize> {
    let runs = RunDecomposition::of(bits).runs;
    runs.windows(2)
        .filter(|w| w[0].symbol == 0 && pair_matches(spec, w[0].len, w[1].len, w[1].is_last))
        .map(|w| {
            let ones = w[1];
            if spec.needs_closing_zero() {
                ones.start + ones.len
            } else {
                ones.start + spec.ell2() - 1
            }
        })
        .collect()
}

pub(crate) fn count_runs_bits(bits: &[u8], spec: &PatternSpec) -> usize {
    // Inline pass over run boundaries; the oracle calls this for every
    // enumerated sequence, so avoid building the decomposition.
    let n = bits.len();
    let mut count = 0;
    let mut i = 0;
    while i < n {
        if bits[i] == 1 {
            i += 1;
            continue;
        }
        let zeros_start = i;
        while i < n && bits[i] == 0 {
            i += 1;
        }
        let zeros = i - zeros_start;
        let ones_start = i;
        while i < n && bits[i] == 1 {
            i += 1;
        }
        let ones = i - ones_start;
        if ones > 0 && pair_matches(spec, zeros, ones, i == n) {
            count += 1;
        }
    }
    count
}

/// Occurrence count from the maximal-run decomposition.
pub fn count_runs(seq: &BitSequence, spec: &PatternSpec) -> usize {
    count_runs_bits(seq.as_slice(), spec)
}

/// Occurrence count by literal evaluation of the indicator products.
///
/// Slow reference route. Trials past the end of the sequence make an
/// indicator vanish, so every start index is tried. At `m = 1` both the
/// sequence-start form (zeros from trial 1) and the preceded-by-a-success
/// form (success at trial 1, zeros from trial 2) are evaluated.
pub fn count_indicator(seq: &BitSequence, spec: &PatternSpec) -> usize {
    let z = seq.as_slice();
    let n = z.len();
    // zeta_i for 1-based i; anything past n makes the product vanish.
    let zeta = |i: usize| -> Option<u8> { (1..=n).contains(&i).then(|| z[i - 1]) };
    let all = |from: usize, len: usize, value: u8| (from..from + len).all(|i| zeta(i) == Some(value));

    // zeros on [start, start+zeros), ones on [start+zeros, start+zeros+ones),
    // then an optional closing failure.
    let window = |start: usize, zeros: usize, ones: usize, closing: bool| {
        all(start, zeros, 0)
            && all(start + zeros, ones, 1)
            && (!closing || zeta(start + zeros + ones) == Some(0))
    };

    let ell1 = spec.ell1();
    let ell2 = spec.ell2();
    let s_max = spec.k1().map(|k1| k1 - ell1);
    let t_max = spec.k2().map(|k2| k2 - ell2);

    let indicator = |m: usize| -> bool {
        // Leading success marks the start of the zeros-run for the m >= 2
        // form; T2 has no upper bound on zeros and needs no anchor.
        let anchored = |zeros_from: usize, s: usize, t: usize, closing: bool| {
            window(zeros_from, ell1 + s, ell2 + t, closing)
        };
        match spec {
            PatternSpec::T1 { .. } => (0..=s_max.unwrap()).any(|s| {
                (m == 1 && anchored(1, s, 0, false))
                    || (zeta(m) == Some(1) && anchored(m + 1, s, 0, false))
            }),
            PatternSpec::T2 { .. } => (0..=t_max.unwrap()).any(|t| window(m, ell1, ell2 + t, true)),
            PatternSpec::T3 { .. } => (0..=s_max.unwrap()).any(|s| {
                (0..=t_max.unwrap()).any(|t| {
                    (m == 1 && anchored(1, s, t, true))
                        || (zeta(m) == Some(1) && anchored(m + 1, s, t, true))
                })
            }),
        }
    };
    (1..=n).filter(|&m| indicator(m)).count()
}

/// Trial at which the `r`-th occurrence completes, i.e. the shortest prefix
/// whose count reaches `r`. `None` if the sequence never gets there.
pub fn first_completion_trial(seq: &BitSequence, spec: &PatternSpec, r: usize) -> Option<usize> {
    assert!(r >= 1, "occurrence index is 1-based");
    completions(seq.as_slice(), spec).get(r - 1).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    #[test]
    fn decomposition_marks_last_run() {
        let d = RunDecomposition::of(&[0, 0, 1, 0]);
        assert_eq!(d.runs.len(), 3);
        assert_eq!((d.runs[1].symbol, d.runs[1].len, d.runs[1].start), (1, 1, 3));
        assert!(d.runs[2].is_last && !d.runs[1].is_last);
        assert!(RunDecomposition::of(&[]).runs.is_empty());
    }

    #[test]
    fn empty_sequence_counts_nothing() {
        let empty = BitSequence::default();
        let spec = PatternSpec::t3(1, 1, 1, 1).unwrap();
        assert_eq!(count_indicator(&empty, &spec), 0);
        assert_eq!(count_runs(&empty, &spec), 0);
    }

    #[test]
    fn closing_zero_required() {
        let spec = PatternSpec::t3(1, 1, 1, 1).unwrap();
        assert_eq!(count_indicator(&seq("0101"), &spec), 1);
        assert_eq!(count_runs(&seq("0101"), &spec), 1);
    }

    #[test]
    fn zeros_run_after_leading_success() {
        let spec = PatternSpec::t1(1, 1, 1).unwrap();
        assert_eq!(count_indicator(&seq("101"), &spec), 1);
        assert_eq!(count_runs(&seq("101"), &spec), 1);
    }

    #[test]
    fn overlong_zeros_run_contributes_nothing() {
        let spec = PatternSpec::t1(1, 2, 1).unwrap();
        assert_eq!(count_runs(&seq("0001"), &spec), 0);
        assert_eq!(count_indicator(&seq("0001"), &spec), 0);
    }

    #[test]
    fn completion_examples() {
        let t3 = PatternSpec::t3(1, 2, 1, 1).unwrap();
        assert_eq!(first_completion_trial(&seq("010"), &t3, 1), Some(3));
        let t1 = PatternSpec::t1(2, 2, 2).unwrap();
        assert_eq!(first_completion_trial(&seq("0011"), &t1, 1), Some(4));
        let t3 = PatternSpec::t3(1, 1, 1, 1).unwrap();
        assert_eq!(first_completion_trial(&seq("1111"), &t3, 1), None);
        assert_eq!(first_completion_trial(&seq("0101010"), &t3, 2), Some(5));
        assert_eq!(first_completion_trial(&seq("0101010"), &t3, 4), None);
    }
}
