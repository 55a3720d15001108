use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;

/// A polynomial over F2, stored as the sorted set of exponents with
/// coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly2 {
    exps: BTreeSet<usize>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_exponents([0])
    }

    /// Builds from exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut set = BTreeSet::new();
        for e in exps {
            if !set.remove(&e) {
                set.insert(e);
            }
        }
        Poly2 { exps: set }
    }

    pub fn from_vector(v: &BitVec) -> Self {
        Poly2 {
            exps: v.iter_ones().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.exps.last().copied()
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().copied()
    }

    /// Coefficient vector of length `n`.
    pub fn to_vector(&self, n: usize) -> Result<BitVec> {
        if let Some(d) = self.degree() {
            if d >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: d + 1,
                });
            }
        }
        let mut v = BitVec::zeros(n);
        for &e in &self.exps {
            v.set(e, true);
        }
        Ok(v)
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        Poly2 {
            exps: self
                .exps
                .symmetric_difference(&other.exps)
                .copied()
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        Self::from_exponents(
            self.exps
                .iter()
                .flat_map(|a| other.exps.iter().map(move |b| a + b)),
        )
    }

    /// Remainder of division by a nonzero `d`.
    pub fn rem(&self, d: &Poly2) -> Poly2 {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            r = r.add(&Self::from_exponents(d.exps.iter().map(|e| e + shift)));
        }
        r
    }

    /// Whether `self` divides `x^n + 1`.
    pub fn divides_xn_plus_1(&self, n: usize) -> bool {
        !self.is_zero() && Self::from_exponents([0, n]).rem(self).is_zero()
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    /// Parses sums of `1`, `x`, `x^k` terms in any order, e.g.
    /// `"1+x^3+x^4+x^5+x^8"`; `"0"` is the zero polynomial.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |t: &str| Error::Parse {
            line: 0,
            message: format!("bad polynomial term {t:?} in {s:?}"),
        };
        let mut exps = Vec::new();
        for term in s.split('+') {
            let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            match t.as_str() {
                "" => return Err(bad(term)),
                "0" => {}
                "1" => exps.push(0),
                "x" => exps.push(1),
                _ => {
                    let e = t.strip_prefix("x^").ok_or_else(|| bad(term))?;
                    exps.push(e.parse().map_err(|_| bad(term))?);
                }
            }
        }
        Ok(Self::from_exponents(exps))
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "0");
        }
        for (i, &e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}
