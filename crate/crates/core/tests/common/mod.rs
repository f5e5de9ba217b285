#![allow(dead_code)]

use krun::PatternSpec;

/// The 20-trial realization used for the worked counts.
pub const SEQ20: &str = "00111101100010100011";

/// `(spec, expected count on SEQ20)`.
pub fn worked_counts() -> Vec<(PatternSpec, usize)> {
    vec![
        (PatternSpec::t1(1, 1, 1).unwrap(), 2),
        (PatternSpec::t1(1, 2, 2).unwrap(), 2),
        (PatternSpec::t1(2, 2, 3).unwrap(), 1),
        (PatternSpec::t1(1, 2, 1).unwrap(), 3),
        (PatternSpec::t2(1, 1, 2).unwrap(), 3),
        (PatternSpec::t2(3, 1, 2).unwrap(), 1),
        (PatternSpec::t2(2, 2, 2).unwrap(), 0),
        (PatternSpec::t2(1, 4, 4).unwrap(), 1),
        (PatternSpec::t3(1, 1, 1, 1).unwrap(), 1),
        (PatternSpec::t3(1, 2, 2, 2).unwrap(), 1),
        (PatternSpec::t3(1, 1, 1, 2).unwrap(), 2),
        (PatternSpec::t3(1, 2, 1, 2).unwrap(), 2),
    ]
}

pub const TABLE1_P: [f64; 6] = [0.35, 0.36, 0.37, 0.38, 0.39, 0.40];

/// Published `P(H = m)` for `m = 0..=5`, one row per column of `TABLE1_P`.
pub const TABLE1_PMF: [[f64; 6]; 6] = [
    [0.0081259, 0.0363192, 0.0844787, 0.1353360, 0.1669740, 0.1683560],
    [0.0073285, 0.0335666, 0.0798366, 0.1305530, 0.1641700, 0.1684990],
    [0.0066661, 0.0312188, 0.0757692, 0.1262260, 0.1614830, 0.1684180],
    [0.0061179, 0.0292301, 0.0722423, 0.1223700, 0.1589750, 0.1681850],
    [0.0056670, 0.0275615, 0.0692234, 0.1189930, 0.1566960, 0.1678630],
    [0.0052998, 0.0261798, 0.0666826, 0.1160990, 0.1546850, 0.1675060],
];

pub const TABLE1_MEAN: [f64; 6] = [5.07803, 5.17016, 5.25346, 5.32777, 5.39297, 5.44896];

pub const TABLE2_P: [f64; 6] = [0.45, 0.46, 0.47, 0.48, 0.49, 0.50];

/// Published `g_1(m)` for `m = 3..=10`, one row per column of `TABLE2_P`.
pub const TABLE2_PMF: [[f64; 8]; 6] = [
    [0.1361250, 0.1361250, 0.0612563, 0.0427262, 0.0529177, 0.0547707, 0.0464322, 0.0399053],
    [0.1341360, 0.1341360, 0.0617026, 0.0437101, 0.0534260, 0.0548654, 0.0465889, 0.0401752],
    [0.1320230, 0.1320230, 0.0620508, 0.0446207, 0.0538587, 0.0549045, 0.0467123, 0.0404228],
    [0.1297920, 0.1297920, 0.0623002, 0.0454542, 0.0542141, 0.0548879, 0.0468019, 0.0406466],
    [0.1274490, 0.1274490, 0.0624500, 0.0462068, 0.0544908, 0.0548157, 0.0468565, 0.0408449],
    [0.1250000, 0.1250000, 0.0625000, 0.0468750, 0.0546875, 0.0546875, 0.0468750, 0.0410156],
];

pub fn table_spec() -> PatternSpec {
    PatternSpec::t3(1, 2, 1, 1).unwrap()
}

/// Every spec with `ell1, ell2` in `1..=3` and each upper bound at offset
/// `0..=2` above its lower bound.
pub fn spec_grid() -> Vec<PatternSpec> {
    let mut out = Vec::new();
    for l1 in 1..=3 {
        for l2 in 1..=3 {
            for d in 0..=2 {
                out.push(PatternSpec::t1(l1, l1 + d, l2).unwrap());
                out.push(PatternSpec::t2(l1, l2, l2 + d).unwrap());
                for d2 in 0..=2 {
                    out.push(PatternSpec::t3(l1, l1 + d, l2, l2 + d2).unwrap());
                }
            }
        }
    }
    out
}

pub const P_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}
