mod common;

use common::{spec_grid, worked_counts, SEQ20};
use krun::scanner::{count_indicator, count_runs, first_completion_trial};
use krun::{BitSequence, PatternSpec};

fn seq(s: &str) -> BitSequence {
    s.parse().unwrap()
}

#[test]
fn worked_counts_both_scanners() {
    let s = seq(SEQ20);
    for (spec, want) in worked_counts() {
        assert_eq!(count_runs(&s, &spec), want, "{spec} run scan");
        assert_eq!(count_indicator(&s, &spec), want, "{spec} indicator");
    }
}

#[test]
fn empty_sequence_counts_nothing() {
    let empty = seq("");
    for spec in spec_grid() {
        assert_eq!(count_indicator(&empty, &spec), 0);
        assert_eq!(count_runs(&empty, &spec), 0);
    }
}

#[test]
fn short_hand_checked_cases() {
    assert_eq!(count_runs(&seq("0101"), &PatternSpec::t3(1, 1, 1, 1).unwrap()), 1);
    assert_eq!(first_completion_trial(&seq("010"), &PatternSpec::t3(1, 2, 1, 1).unwrap(), 1), Some(3));
    assert_eq!(first_completion_trial(&seq("0011"), &PatternSpec::t1(2, 2, 2).unwrap(), 1), Some(4));
    assert_eq!(first_completion_trial(&seq("1111"), &PatternSpec::t3(1, 1, 1, 1).unwrap(), 1), None);
}

#[test]
fn overlong_zero_runs_never_count() {
    // Three zeros exceed k1 = 2; the following ones cannot complete anything.
    let t1 = PatternSpec::t1(1, 2, 1).unwrap();
    assert_eq!(count_runs(&seq("0001"), &t1), 0);
    assert_eq!(count_indicator(&seq("0001"), &t1), 0);
    assert_eq!(count_runs(&seq("1001"), &t1), 1);
}

#[test]
fn run_scan_matches_indicator_exhaustively() {
    for spec in spec_grid() {
        for n in 0..=14 {
            for mask in 0..1u64 << n {
                let s = BitSequence::from_mask(mask, n);
                assert_eq!(count_runs(&s, &spec), count_indicator(&s, &spec), "{spec} on {s}");
            }
        }
    }
}

#[test]
fn prefix_counts_grow_by_at_most_one() {
    let n = 12;
    for spec in spec_grid() {
        for mask in 0..1u64 << n {
            let s = BitSequence::from_mask(mask, n);
            let mut prev = 0;
            for len in 0..=n {
                let c = count_runs(&BitSequence::new(s.prefix(len).to_vec()).unwrap(), &spec);
                assert!(c == prev || c == prev + 1, "{spec} on {s} at length {len}");
                prev = c;
            }
        }
    }
}

#[test]
fn first_completion_agrees_with_prefix_counts() {
    let s = seq(SEQ20);
    for (spec, total) in worked_counts() {
        for r in 1..=total + 1 {
            let expected = (1..=s.len())
                .find(|&len| count_runs(&BitSequence::new(s.prefix(len).to_vec()).unwrap(), &spec) >= r);
            assert_eq!(first_completion_trial(&s, &spec, r), expected, "{spec} r={r}");
        }
    }
}
