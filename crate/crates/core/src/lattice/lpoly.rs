use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Laurent polynomial in `x, y` over F2: the set of monomials
/// `x^i y^j` with coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LPoly {
    terms: BTreeSet<(i64, i64)>,
}

impl LPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(i: i64, j: i64) -> Self {
        LPoly {
            terms: BTreeSet::from([(i, j)]),
        }
    }

    /// Builds from exponent pairs; repeated pairs cancel.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut set = BTreeSet::new();
        for t in terms {
            if !set.remove(&t) {
                set.insert(t);
            }
        }
        LPoly { terms: set }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, i: i64, j: i64) -> bool {
        self.terms.contains(&(i, j))
    }

    pub fn add(&self, other: &LPoly) -> LPoly {
        LPoly {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .copied()
                .collect(),
        }
    }

    pub fn mul(&self, other: &LPoly) -> LPoly {
        Self::from_terms(
            self.terms
                .iter()
                .flat_map(|&(a, b)| other.terms.iter().map(move |&(c, d)| (a + c, b + d))),
        )
    }

    /// `x^i y^j -> x^-i y^-j`.
    pub fn conjugate(&self) -> LPoly {
        LPoly {
            terms: self.terms.iter().map(|&(i, j)| (-i, -j)).collect(),
        }
    }

    /// Multiplication by `x^dx y^dy`.
    pub fn shift(&self, dx: i64, dy: i64) -> LPoly {
        LPoly {
            terms: self.terms.iter().map(|&(i, j)| (i + dx, j + dy)).collect(),
        }
    }
}

fn parse_exponent<'a>(s: &'a str, whole: &str) -> Result<(i64, &'a str)> {
    let bad = || Error::Parse {
        line: 0,
        message: format!("bad exponent in {whole:?}"),
    };
    let end = s
        .char_indices()
        .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
        .map_or(s.len(), |(i, _)| i);
    let e = s[..end].parse().map_err(|_| bad())?;
    Ok((e, &s[end..]))
}

fn parse_monomial(t: &str, whole: &str) -> Result<Option<(i64, i64)>> {
    let bad = || Error::Parse {
        line: 0,
        message: format!("bad monomial {t:?} in {whole:?}"),
    };
    match t {
        "0" => return Ok(None),
        "1" => return Ok(Some((0, 0))),
        "" => return Err(bad()),
        _ => {}
    }
    let (mut i, mut j) = (0, 0);
    let mut rest = t;
    while let Some(c) = rest.chars().next() {
        rest = &rest[1..];
        let target = match c {
            'x' => &mut i,
            'y' => &mut j,
            '*' => continue,
            _ => return Err(bad()),
        };
        if let Some(r) = rest.strip_prefix('^') {
            let (e, r) = parse_exponent(r, whole)?;
            *target += e;
            rest = r;
        } else {
            *target += 1;
        }
    }
    Ok(Some((i, j)))
}

impl FromStr for LPoly {
    type Err = Error;

    /// Accepts sums of monomials such as `1+x+x*y`, `xy`, `x^-1*y^2`, `0`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms = Vec::new();
        for t in compact.split('+') {
            if let Some(m) = parse_monomial(t, s)? {
                terms.push(m);
            }
        }
        Ok(Self::from_terms(terms))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, e: i64) -> fmt::Result {
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(i64, i64)> = self.terms.iter().copied().collect();
        terms.sort_by_key(|&(i, j)| (i + j, j, i));
        for (n, (i, j)) in terms.into_iter().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            match (i, j) {
                (0, 0) => write!(f, "1")?,
                (i, 0) => write_power(f, 'x', i)?,
                (0, j) => write_power(f, 'y', j)?,
                (i, j) => {
                    write_power(f, 'x', i)?;
                    write!(f, "*")?;
                    write_power(f, 'y', j)?;
                }
            }
        }
        Ok(())
    }
}

/// A vector of `2n` Laurent polynomials: X block on qubits `0..n`, then the
/// Z block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentVec {
    entries: Vec<LPoly>,
}

impl LaurentVec {
    pub fn new(entries: Vec<LPoly>) -> Result<Self> {
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return Err(Error::UnitCell(format!(
                "expected 2n entries, found {}",
                entries.len()
            )));
        }
        Ok(LaurentVec { entries })
    }

    pub fn zero(n: usize) -> Self {
        LaurentVec {
            entries: vec![LPoly::zero(); 2 * n],
        }
    }

    /// Parses `2n` polynomial strings.
    pub fn parse(items: &[&str]) -> Result<Self> {
        Self::new(
            items
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn n(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[LPoly] {
        &self.entries
    }

    pub fn x(&self, q: usize) -> &LPoly {
        &self.entries[q]
    }

    pub fn z(&self, q: usize) -> &LPoly {
        &self.entries[self.n() + q]
    }

    pub fn set(&mut self, i: usize, p: LPoly) {
        self.entries[i] = p;
    }

    pub fn add(&self, other: &LaurentVec) -> Result<LaurentVec> {
        self.check(other)?;
        Ok(LaurentVec {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// Multiplies every entry by `p`.
    pub fn scale(&self, p: &LPoly) -> LaurentVec {
        LaurentVec {
            entries: self.entries.iter().map(|e| e.mul(p)).collect(),
        }
    }

    fn check(&self, other: &LaurentVec) -> Result<()> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::DimensionMismatch {
                expected: self.entries.len(),
                found: other.entries.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for LaurentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The full polynomial `a† Λ b`.
///
/// Its coefficient at `x^i y^j` is the commutation bit of `P(b)` with
/// `P(a)` translated by `(i, j)`; the constant term is the commutation bit
/// of `P(a)` and `P(b)` themselves.
pub fn symplectic_form(a: &LaurentVec, b: &LaurentVec) -> Result<LPoly> {
    a.check(b)?;
    let n = a.n();
    let mut out = LPoly::zero();
    for q in 0..n {
        out = out.add(&a.x(q).conjugate().mul(b.z(q)));
        out = out.add(&a.z(q).conjugate().mul(b.x(q)));
    }
    Ok(out)
}
