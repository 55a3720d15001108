use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::pauli::Letter;

/// An element of `N(S)/S`, stored as `2k` bits.
///
/// Bit `i < k` records anticommutation with `Z̄_i` (so it is the `X̄_i`
/// coefficient); bit `k + i` records anticommutation with `X̄_i`. Read this
/// way a class is literally a k-qubit Pauli `(x ‖ z)`, and it renders as one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LogicalClass(BitVec);

impl LogicalClass {
    pub fn zero(k: usize) -> Self {
        LogicalClass(BitVec::zeros(2 * k))
    }

    pub fn from_bits(bits: BitVec) -> Self {
        assert!(bits.len().is_multiple_of(2), "class width must be even");
        LogicalClass(bits)
    }

    /// Class of `X̄_i`.
    pub fn x(k: usize, i: usize) -> Self {
        LogicalClass(BitVec::unit(2 * k, i))
    }

    /// Class of `Z̄_i`.
    pub fn z(k: usize, i: usize) -> Self {
        LogicalClass(BitVec::unit(2 * k, k + i))
    }

    pub fn k(&self) -> usize {
        self.0.len() / 2
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn xor(&self, other: &LogicalClass) -> LogicalClass {
        LogicalClass(&self.0 ^ &other.0)
    }

    /// Letter on logical qubit `i`.
    pub fn letter(&self, i: usize) -> Letter {
        Letter::from_bits(self.0.get(i), self.0.get(self.k() + i))
    }

    /// Symplectic product of two classes: true when representatives
    /// anticommute.
    pub fn anticommutes(&self, other: &LogicalClass) -> bool {
        let k = self.k();
        let mut acc = false;
        for i in 0..k {
            acc ^= self.0.get(i) & other.0.get(k + i);
            acc ^= self.0.get(k + i) & other.0.get(i);
        }
        acc
    }

    /// Packs the bits into a `u64` (bit `i` of the class at bit `i`).
    pub fn to_mask(&self) -> Option<u64> {
        (self.0.len() <= 64).then(|| self.0.words().first().copied().unwrap_or(0))
    }

    pub fn from_mask(k: usize, mask: u64) -> Self {
        assert!(2 * k <= 64);
        LogicalClass(BitVec::from_words(2 * k, &[mask]))
    }

    /// Parses either a positional string over `I/X/Y/Z` of length `k`
    /// (`"ZI"`) or an indexed product such as `"Z1Z2"` or `"X2"`; a lone
    /// `"I"` is the identity for any `k`.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let s = s.trim();
        let bad = |message: String| Error::Parse { line: 0, message };
        if s.chars().all(|c| Letter::from_char(c).is_some()) && s.chars().count() == k {
            let mut bits = BitVec::zeros(2 * k);
            for (i, c) in s.chars().enumerate() {
                let (x, z) = Letter::from_char(c).expect("checked").bits();
                bits.set(i, x);
                bits.set(k + i, z);
            }
            return Ok(LogicalClass(bits));
        }
        if s == "I" {
            return Ok(LogicalClass::zero(k));
        }
        let mut bits = BitVec::zeros(2 * k);
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        while pos < chars.len() {
            let letter = Letter::from_char(chars[pos]).ok_or_else(|| {
                bad(format!(
                    "unexpected {:?} in logical class {s:?}",
                    chars[pos]
                ))
            })?;
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(bad(format!(
                    "logical class {s:?} must have {k} letters or use indexed form like Z1Z2"
                )));
            }
            let idx: usize = chars[start..pos]
                .iter()
                .collect::<String>()
                .parse()
                .expect("digits");
            if idx == 0 || idx > k {
                return Err(bad(format!("logical index {idx} out of range 1..={k}")));
            }
            let (x, z) = letter.bits();
            if x {
                bits.flip(idx - 1);
            }
            if z {
                bits.flip(k + idx - 1);
            }
        }
        Ok(LogicalClass(bits))
    }
}

impl fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k() {
            write!(f, "{}", self.letter(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogicalClass({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(LogicalClass::parse("ZI", 2).unwrap(), LogicalClass::z(2, 0));
        assert_eq!(LogicalClass::parse("Z1", 2).unwrap(), LogicalClass::z(2, 0));
        let zz = LogicalClass::parse("Z1Z2", 2).unwrap();
        assert_eq!(zz, LogicalClass::z(2, 0).xor(&LogicalClass::z(2, 1)));
        assert_eq!(zz.to_string(), "ZZ");
        assert_eq!(LogicalClass::parse("Y", 1).unwrap().to_string(), "Y");
        assert!(LogicalClass::parse("I", 3).unwrap().is_zero());
        assert!(LogicalClass::parse("Z3", 2).is_err());
        assert!(LogicalClass::parse("ZQ", 2).is_err());
    }

    #[test]
    fn x_class_has_bit_i() {
        let c = LogicalClass::x(3, 1);
        assert!(c.bits().get(1));
        assert_eq!(c.to_string(), "IXI");
        assert!(c.anticommutes(&LogicalClass::z(3, 1)));
        assert!(!c.anticommutes(&LogicalClass::z(3, 2)));
    }

    #[test]
    fn mask_round_trip() {
        let c = LogicalClass::parse("XZ", 2).unwrap();
        let m = c.to_mask().unwrap();
        assert_eq!(LogicalClass::from_mask(2, m), c);
    }
}
