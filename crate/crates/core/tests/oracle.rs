use approx::assert_abs_diff_eq;
use krun::oracle::{count_histogram, oracle_count_pmf, oracle_moment, oracle_waiting_pmf, MAX_ORACLE_TRIALS};
use krun::{Error, PatternSpec, Pmf, TrialParams};

fn params(p: f64) -> TrialParams {
    TrialParams::new(p).unwrap()
}

#[test]
fn hand_enumerations() {
    let pmf = oracle_count_pmf(&PatternSpec::t1(1, 1, 1).unwrap(), &params(0.5), 2).unwrap();
    assert_eq!(pmf.prob(1), 0.25);

    let spec = PatternSpec::t3(1, 2, 1, 1).unwrap();
    let g = oracle_waiting_pmf(&spec, &params(0.5), 1, 5).unwrap();
    assert_eq!(g.prob(2), 0.0);
    assert_eq!(g.prob(3), 0.125);
    assert_eq!(g.prob(4), 0.125);
    assert_eq!(g.prob(5), 0.0625);
}

#[test]
fn certain_success_gives_no_pattern() {
    let pmf = oracle_count_pmf(&PatternSpec::t2(1, 1, 3).unwrap(), &params(1.0), 9).unwrap();
    assert_eq!(pmf.prob(0), 1.0);
}

#[test]
fn normalized_at_budget_edge() {
    let spec = PatternSpec::t3(1, 2, 1, 2).unwrap();
    let pmf = oracle_count_pmf(&spec, &params(0.3), 22).unwrap();
    assert_abs_diff_eq!(pmf.total(), 1.0, epsilon = 1e-13);
    let hist = count_histogram(&spec, 14).unwrap();
    let total: u64 = hist.iter().flatten().sum();
    assert_eq!(total, 1 << 14);
}

#[test]
fn budget_guard() {
    let spec = PatternSpec::t1(1, 1, 1).unwrap();
    let err = oracle_count_pmf(&spec, &params(0.5), MAX_ORACLE_TRIALS + 1).unwrap_err();
    assert!(matches!(err, Error::EnumerationBudget { .. }));
    assert!(oracle_waiting_pmf(&spec, &params(0.5), 1, 30).is_err());
}

#[test]
fn histogram_is_deterministic() {
    let spec = PatternSpec::t2(2, 1, 2).unwrap();
    assert_eq!(count_histogram(&spec, 18).unwrap(), count_histogram(&spec, 18).unwrap());
}

#[test]
fn moment_conventions() {
    let point = Pmf::point_mass(0);
    assert_eq!(oracle_moment(&point, 3).value, 0.0);
    let truncated = Pmf::truncated(vec![0.5, 0.25], 1).unwrap();
    let m0 = oracle_moment(&truncated, 0);
    assert_abs_diff_eq!(m0.value, 1.0 - m0.tail_mass, epsilon = 1e-15);
    // Truncated published column: the partial mean understates the full mean.
    let column = Pmf::truncated(vec![0.0081259, 0.0363192, 0.0844787, 0.1353360, 0.1669740, 0.1683560], 0).unwrap();
    assert!(oracle_moment(&column, 1).value < 5.07803);
}
