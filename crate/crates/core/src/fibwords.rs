//! Fibonacci words `C_0 = 0`, `C_1 = 01`, `C_n = C_{n-1} C_{n-2}`.

use crate::error::{Error, Result};
use crate::pattern::PatternSpec;
use crate::scanner::count_runs;
use crate::sequence::BitSequence;

/// Largest supported index; `|C_40|` is about 2.7e8 symbols.
pub const MAX_FIB_INDEX: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibWord {
    pub index: usize,
    pub word: BitSequence,
}

/// `|C_n|`: 1, 2, 3, 5, 8, ...
pub fn fib_length(n: usize) -> usize {
    let (mut a, mut b) = (1usize, 2usize);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

pub fn fib_word(n: usize) -> Result<FibWord> {
    if n > MAX_FIB_INDEX {
        return Err(Error::FibIndex(n));
    }
    let mut word = BitSequence::with_capacity(fib_length(n));
    word.push(0);
    if n >= 1 {
        word.push(1);
    }
    // C_k = C_{k-1} C_{k-2}, and C_{k-2} is a prefix of C_{k-1}.
    for k in 2..=n {
        let prev_len = fib_length(k - 2);
        word.extend_from_within(0..prev_len);
    }
    Ok(FibWord { index: n, word })
}

pub fn fib_pattern_count(n: usize, spec: &PatternSpec) -> Result<usize> {
    Ok(count_runs(&fib_word(n)?.word, spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_words() {
        let words: Vec<String> = (0..5).map(|n| fib_word(n).unwrap().word.to_string()).collect();
        assert_eq!(words, ["0", "01", "010", "01001", "01001010"]);
    }

    #[test]
    fn lengths() {
        assert_eq!(fib_length(0), 1);
        assert_eq!(fib_length(10), 144);
        assert_eq!(fib_word(10).unwrap().word.len(), 144);
    }

    #[test]
    fn index_guard() {
        assert!(matches!(fib_word(41), Err(Error::FibIndex(41))));
    }
}
