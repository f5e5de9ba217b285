use krun::fibwords::{fib_length, fib_pattern_count, fib_word, MAX_FIB_INDEX};
use krun::scanner::count_indicator;
use krun::{BitSequence, PatternSpec};

#[test]
fn small_words() {
    assert_eq!(fib_word(0).unwrap().word.to_string(), "0");
    assert_eq!(fib_word(1).unwrap().word.to_string(), "01");
    assert_eq!(fib_word(3).unwrap().word.to_string(), "01001");
    assert_eq!(fib_word(10).unwrap().word.len(), 144);
    assert_eq!(fib_length(10), 144);
}

#[test]
fn index_guard() {
    assert!(fib_word(MAX_FIB_INDEX + 1).is_err());
    assert!(fib_pattern_count(MAX_FIB_INDEX + 1, &PatternSpec::t1(1, 1, 1).unwrap()).is_err());
}

#[test]
fn count_matches_indicator_scan() {
    let spec = PatternSpec::t3(1, 2, 1, 1).unwrap();
    let word: BitSequence = "0100101001001".parse().unwrap();
    assert_eq!(fib_word(5).unwrap().word, word);
    assert_eq!(fib_pattern_count(5, &spec).unwrap(), count_indicator(&word, &spec));
}

#[test]
fn structural_inertness() {
    assert_eq!(fib_pattern_count(10, &PatternSpec::t1(2, 2, 2).unwrap()).unwrap(), 0);
    let a = fib_pattern_count(10, &PatternSpec::t3(1, 3, 1, 1).unwrap()).unwrap();
    let b = fib_pattern_count(10, &PatternSpec::t3(1, 2, 1, 1).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn words_up_to_25() {
    let mut prev: Option<BitSequence> = None;
    for n in 0..=25 {
        let w = fib_word(n).unwrap().word;
        assert!(!w.contains_subword("11") && !w.contains_subword("000"), "C_{n}");
        if n >= 2 {
            let p = prev.as_ref().unwrap();
            assert_eq!(w.prefix(p.len()), p.as_slice());
        }
        if n >= 1 {
            let tail = &w.as_slice()[w.len() - 2..];
            let want: &[u8] = if n % 2 == 1 { &[0, 1] } else { &[1, 0] };
            assert_eq!(tail, want, "C_{n}");
        }
        prev = Some(w);
    }
}
