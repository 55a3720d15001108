//! The n-qubit Pauli group modulo global phase.
//!
//! A Pauli operator is stored as a pair of bit vectors `(x, z)`; qubit `i`
//! carries I, X, Z or Y for `(x_i, z_i)` = (0,0), (1,0), (0,1), (1,1). Phases
//! are never tracked, so equality and products are phase-blind.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;

/// A single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    /// The non-identity letters in enumeration order.
    pub const NON_IDENTITY: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// An n-qubit Pauli operator up to global phase.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len(), "X and Z parts must have equal length");
        PauliOp { x, z }
    }

    /// A single letter on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set(q, letter);
        p
    }

    /// `X` on every qubit of `support`.
    pub fn x_on(n: usize, support: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for &q in support {
            p.x.set(q, true);
        }
        p
    }

    /// `Z` on every qubit of `support`.
    pub fn z_on(n: usize, support: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for &q in support {
            p.z.set(q, true);
        }
        p
    }

    /// Splits a symplectic vector `(x ‖ z)` of length `2n`.
    pub fn from_symplectic(v: &BitVec) -> Self {
        assert!(
            v.len().is_multiple_of(2),
            "symplectic vector must have even length"
        );
        let n = v.len() / 2;
        PauliOp {
            x: v.slice(0, n),
            z: v.slice(n, n),
        }
    }

    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &BitVec {
        &self.x
    }

    pub fn z_part(&self) -> &BitVec {
        &self.z
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, letter: Letter) {
        let (x, z) = letter.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_pure_x(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_pure_z(&self) -> bool {
        self.x.is_zero()
    }

    fn check_dims(&self, other: &PauliOp) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Phase-blind product.
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Phase-blind product; panics on dimension mismatch.
    pub fn mul_unchecked(&self, other: &PauliOp) -> PauliOp {
        PauliOp {
            x: &self.x ^ &other.x,
            z: &self.z ^ &other.z,
        }
    }

    pub fn mul_assign(&mut self, other: &PauliOp) {
        self.x ^= &other.x;
        self.z ^= &other.z;
    }

    /// Symplectic product: `true` when the operators anticommute.
    pub fn anticommutes(&self, other: &PauliOp) -> bool {
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 1
    }

    pub fn commutes(&self, other: &PauliOp) -> Result<bool> {
        self.check_dims(other)?;
        Ok(!self.anticommutes(other))
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones()
    }

    /// Qubits acted on non-trivially.
    pub fn support(&self) -> BitVec {
        self.x.or(&self.z)
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PauliOp) -> PauliOp {
        PauliOp {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
        }
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyPauli);
        }
        let chars: Vec<char> = s.chars().collect();
        let mut p = PauliOp::identity(chars.len());
        for (i, &c) in chars.iter().enumerate() {
            let letter = Letter::from_char(c).ok_or(Error::PauliParse {
                position: i,
                found: c,
            })?;
            p.set(i, letter);
        }
        Ok(p)
    }
}

/// Parses a Pauli string over `I/X/Y/Z`, qubit 0 leftmost.
pub fn parse_pauli(s: &str) -> Result<PauliOp> {
    s.parse()
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

/// Iterator over all non-identity Paulis of weight `1..=max_weight`.
///
/// Order: by weight, then by support (lexicographic on sorted qubit lists),
/// then by letters (lexicographic with `X < Y < Z`).
#[derive(Clone, Debug)]
pub struct PauliEnumerator {
    n: usize,
    max_weight: usize,
    weight: usize,
    support: Vec<usize>,
    letters: Vec<u8>,
    done: bool,
}

impl PauliEnumerator {
    pub fn new(n: usize, max_weight: usize) -> Self {
        let max_weight = max_weight.min(n);
        let mut e = PauliEnumerator {
            n,
            max_weight,
            weight: 0,
            support: Vec::new(),
            letters: Vec::new(),
            done: max_weight == 0,
        };
        if !e.done {
            e.start_weight(1);
        }
        e
    }

    fn start_weight(&mut self, w: usize) {
        self.weight = w;
        self.support = (0..w).collect();
        self.letters = vec![0; w];
    }

    fn current(&self) -> PauliOp {
        let mut p = PauliOp::identity(self.n);
        for (&q, &l) in self.support.iter().zip(&self.letters) {
            p.set(q, Letter::NON_IDENTITY[l as usize]);
        }
        p
    }

    fn advance(&mut self) {
        // letters odometer, last position fastest
        for i in (0..self.weight).rev() {
            if self.letters[i] < 2 {
                self.letters[i] += 1;
                return;
            }
            self.letters[i] = 0;
        }
        if next_combination(&mut self.support, self.n) {
            return;
        }
        if self.weight < self.max_weight {
            self.start_weight(self.weight + 1);
        } else {
            self.done = true;
        }
    }
}

impl Iterator for PauliEnumerator {
    type Item = PauliOp;

    fn next(&mut self) -> Option<PauliOp> {
        if self.done {
            return None;
        }
        let p = self.current();
        self.advance();
        Some(p)
    }
}

/// Advances a sorted k-subset of `0..n` to its lexicographic successor.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every non-identity Pauli on `n` qubits with weight at most `max_weight`.
pub fn enumerate_paulis(n: usize, max_weight: usize) -> PauliEnumerator {
    PauliEnumerator::new(n, max_weight)
}

/// The identity followed by [`enumerate_paulis`]: the full error set of all
/// Paulis of weight at most `max_weight`.
pub fn errors_up_to_weight(n: usize, max_weight: usize) -> Vec<PauliOp> {
    std::iter::once(PauliOp::identity(n))
        .chain(enumerate_paulis(n, max_weight))
        .collect()
}

/// `Σ_{w=1..max_weight} C(n,w)·3^w`.
pub fn enumeration_count(n: usize, max_weight: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    let mut pow3 = 1u128;
    for w in 1..=max_weight.min(n) {
        binom = binom * (n - w + 1) as u128 / w as u128;
        pow3 *= 3;
        total += binom * pow3;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn parse_table_row() {
        let op = p("XXYYZIZ");
        assert_eq!(op.x_part().to_string(), "1111000");
        assert_eq!(op.z_part().to_string(), "0011101");
        assert_eq!(op.to_string(), "XXYYZIZ");
        assert_eq!(op.weight(), 6);
    }

    #[test]
    fn parse_identity_and_errors() {
        assert!(p("IIII").is_identity());
        match "ZQ".parse::<PauliOp>() {
            Err(Error::PauliParse { position, found }) => {
                assert_eq!(position, 1);
                assert_eq!(found, 'Q');
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("".parse::<PauliOp>(), Err(Error::EmptyPauli)));
    }

    #[test]
    fn products() {
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("Y"));
        let q = p("XYZIY");
        assert!(q.multiply(&q).unwrap().is_identity());
        assert_eq!(p("ZIIIIII").multiply(&p("IZIIIII")).unwrap(), p("ZZIIIII"));
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn commutation() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XYZ").commutes(&p("III")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(p("XYZ").commutes(&p("ZZ")).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(p("IIII").weight(), 0);
        assert_eq!(p("ZZIIIII").weight(), 2);
    }

    #[test]
    fn enumeration_small() {
        let all: Vec<String> = enumerate_paulis(2, 1).map(|p| p.to_string()).collect();
        assert_eq!(all, vec!["XI", "YI", "ZI", "IX", "IY", "IZ"]);
        assert_eq!(enumerate_paulis(3, 0).count(), 0);
        let w2: Vec<String> = enumerate_paulis(2, 2)
            .skip(6)
            .take(4)
            .map(|p| p.to_string())
            .collect();
        assert_eq!(w2, vec!["XX", "XY", "XZ", "YX"]);
    }

    #[test]
    fn enumeration_count_17_2() {
        assert_eq!(enumeration_count(17, 2), 1275);
        assert_eq!(enumerate_paulis(17, 2).count(), 17 * 3 + 136 * 9);
    }

    #[test]
    fn error_set_starts_with_identity() {
        let e = errors_up_to_weight(3, 1);
        assert_eq!(e.len(), 10);
        assert!(e[0].is_identity());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn pauli(n: usize) -> impl Strategy<Value = PauliOp> {
            proptest::collection::vec(0u8..4, n).prop_map(|ls| {
                let mut p = PauliOp::identity(ls.len());
                for (q, l) in ls.into_iter().enumerate() {
                    p.set(q, [Letter::I, Letter::X, Letter::Y, Letter::Z][l as usize]);
                }
                p
            })
        }

        fn triple() -> impl Strategy<Value = (PauliOp, PauliOp, PauliOp)> {
            (1usize..10).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))
        }

        proptest! {
            #[test]
            fn group_laws((a, b, c) in triple()) {
                let ab = a.mul_unchecked(&b);
                prop_assert_eq!(ab.mul_unchecked(&c), a.mul_unchecked(&b.mul_unchecked(&c)));
                prop_assert_eq!(&ab, &b.mul_unchecked(&a));
                prop_assert_eq!(a.mul_unchecked(&PauliOp::identity(a.num_qubits())), a.clone());
                prop_assert!(ab.weight() <= a.weight() + b.weight());
            }

            #[test]
            fn symplectic_form_bilinear((a, b, c) in triple()) {
                prop_assert_eq!(a.anticommutes(&b), b.anticommutes(&a));
                let bc = b.mul_unchecked(&c);
                prop_assert_eq!(a.anticommutes(&bc), a.anticommutes(&b) ^ a.anticommutes(&c));
            }

            #[test]
            fn render_round_trip(p in (1usize..20).prop_flat_map(pauli)) {
                let s = p.to_string();
                prop_assert_eq!(s.parse::<PauliOp>().unwrap(), p);
            }

            #[test]
            fn enumeration_matches_closed_form(n in 1usize..=12, w in 0usize..=3) {
                let w = w.min(n);
                let items: Vec<PauliOp> = enumerate_paulis(n, w).collect();
                prop_assert_eq!(items.len() as u128, enumeration_count(n, w));
                let distinct: std::collections::HashSet<_> = items.iter().collect();
                prop_assert_eq!(distinct.len(), items.len());
                prop_assert!(items.windows(2).all(|p| p[0].weight() <= p[1].weight()));
                prop_assert!(items.iter().all(|p| p.weight() >= 1 && p.weight() <= w));
            }
        }
    }
}
