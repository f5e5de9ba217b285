use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A finite 0/1 trial sequence; 1 is a success.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSequence {
    bits: Vec<u8>,
}

impl BitSequence {
    pub fn new(bits: Vec<u8>) -> Result<Self, Error> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidArgument(format!(
                "trial {} has value {}, expected 0 or 1",
                pos + 1,
                bits[pos]
            )));
        }
        Ok(BitSequence { bits })
    }

    /// The low `n` bits of `mask`, least significant bit first.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        BitSequence {
            bits: (0..n).map(|i| ((mask >> i) & 1) as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub fn prefix(&self, n: usize) -> &[u8] {
        &self.bits[..n.min(self.bits.len())]
    }

    pub(crate) fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.bits.push(bit);
    }

    pub(crate) fn extend_from_within(&mut self, range: std::ops::Range<usize>) {
        self.bits.extend_from_within(range);
    }

    pub(crate) fn with_capacity(cap: usize) -> Self {
        BitSequence {
            bits: Vec::with_capacity(cap),
        }
    }

    /// Whether `pattern` (a '0'/'1' string) occurs as a contiguous subword.
    pub fn contains_subword(&self, pattern: &str) -> bool {
        let pat: Vec<u8> = pattern.bytes().map(|b| b - b'0').collect();
        !pat.is_empty() && self.bits.windows(pat.len()).any(|w| w == pat.as_slice())
    }
}

/// Parse error carrying the 1-based character position of the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBitsError {
    pub position: usize,
    pub found: char,
}

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unexpected character {:?} at position {}, expected '0', '1' or whitespace",
            self.found, self.position
        )
    }
}

impl std::error::Error for ParseBitsError {}

impl FromStr for BitSequence {
    type Err = ParseBitsError;

    /// Accepts '0' and '1'; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_whitespace() => {}
                c => {
                    return Err(ParseBitsError {
                        position: i + 1,
                        found: c,
                    })
                }
            }
        }
        Ok(BitSequence { bits })
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ignores_whitespace() {
        let s: BitSequence = "0 0 1\n1\t0".parse().unwrap();
        assert_eq!(s.as_slice(), &[0, 0, 1, 1, 0]);
        assert_eq!(s.to_string(), "00110");
        assert!("".parse::<BitSequence>().unwrap().is_empty());
    }

    #[test]
    fn parse_reports_position() {
        let err = "01x1".parse::<BitSequence>().unwrap_err();
        assert_eq!(err.position, 3);
        assert_eq!(err.found, 'x');
    }

    #[test]
    fn mask_and_subwords() {
        let s = BitSequence::from_mask(0b0110, 4);
        assert_eq!(s.to_string(), "0110");
        assert!(s.contains_subword("11"));
        assert!(!s.contains_subword("00"));
        assert!(BitSequence::new(vec![0, 2]).is_err());
    }
}
