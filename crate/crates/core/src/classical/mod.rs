//! Binary linear codes, cyclic codes from generator polynomials, and the
//! CSS construction.
//!
//! Vectors and polynomials share one convention: the coefficient of `x^i`
//! sits at position `i`.

mod css;
mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, EchelonBasis};
use crate::pauli::next_combination;
use crate::stabilizer::Bound;

pub use css::{
    asymmetric_distances, css17, css17_parts, css_build, Css17Parts, CssCode, QR17_GENERATOR,
};
pub use poly::Poly2;

/// A binary `[n, k]` code given by a full-rank generator matrix, with a
/// matching full-rank parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    n: usize,
    generator: BitMatrix,
    parity_check: BitMatrix,
}

impl LinearCode {
    /// Rows must be linearly independent.
    pub fn from_generator(generator: BitMatrix) -> Result<Self> {
        if generator.rank() != generator.rows() {
            return Err(Error::DependentRows);
        }
        let parity_check = generator.kernel_basis();
        Ok(LinearCode {
            n: generator.cols(),
            generator,
            parity_check,
        })
    }

    /// The code spanned by `rows`, keeping the first independent ones.
    pub fn from_spanning_rows(n: usize, rows: Vec<BitVec>) -> Self {
        let mut span = EchelonBasis::new();
        let kept: Vec<BitVec> = rows.into_iter().filter(|r| span.insert(r)).collect();
        let generator = BitMatrix::from_rows(n, kept);
        let parity_check = generator.kernel_basis();
        LinearCode {
            n,
            generator,
            parity_check,
        }
    }

    /// The code `{v : H v = 0}`.
    pub fn from_parity_check(h: &BitMatrix) -> Self {
        let generator = h.kernel_basis();
        let parity_check = generator.kernel_basis();
        LinearCode {
            n: h.cols(),
            generator,
            parity_check,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.n && self.parity_check.mul_vec(v).is_zero()
    }

    /// Whether every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.generator.row_vecs().iter().all(|r| other.contains(r))
    }

    /// Every codeword, in Gray-code order starting from zero.
    pub fn codewords(&self) -> Vec<BitVec> {
        let k = self.k();
        assert!(k <= 25, "explicit codeword listing is limited to k <= 25");
        let mut out = Vec::with_capacity(1 << k);
        let mut cw = BitVec::zeros(self.n);
        out.push(cw.clone());
        for i in 1u64..1 << k {
            cw ^= self.generator.row(i.trailing_zeros() as usize);
            out.push(cw.clone());
        }
        out
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.n, self.k())
    }
}

/// Rows `x^i p(x) mod (x^n + 1)` for `i = 0..count`, as length-`n` vectors.
pub fn shifted_rows(n: usize, p: &Poly2, count: usize) -> Result<Vec<BitVec>> {
    let base = p.to_vector(n)?;
    Ok((0..count).map(|i| base.rotate(i)).collect())
}

/// The cyclic code of length `n` generated by `g`, with rows
/// `g, x g, ..., x^{n - deg g - 1} g`.
pub fn cyclic_code(n: usize, g: &Poly2) -> Result<LinearCode> {
    if !g.divides_xn_plus_1(n) {
        return Err(Error::NotADivisor {
            poly: g.to_string(),
            n,
        });
    }
    let deg = g.degree().expect("nonzero divisor");
    LinearCode::from_generator(BitMatrix::from_rows(n, shifted_rows(n, g, n - deg)?))
}

/// The code spanned by the cyclic shifts `x^i p(x)`, `i = 0..count`.
pub fn from_shifts(n: usize, p: &Poly2, count: usize) -> Result<LinearCode> {
    LinearCode::from_generator(BitMatrix::from_rows(n, shifted_rows(n, p, count)?))
}

/// The subcode spanned by the selected generator rows.
pub fn subcode_from_rows(c: &LinearCode, rows: &[usize]) -> Result<LinearCode> {
    if rows.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut selected = Vec::with_capacity(rows.len());
    for &r in rows {
        if r >= c.k() {
            return Err(Error::RowOutOfRange {
                index: r,
                rows: c.k(),
            });
        }
        selected.push(c.generator.row(r).clone());
    }
    LinearCode::from_generator(BitMatrix::from_rows(c.n, selected))
}

/// The dual code: generator and parity-check roles swapped.
pub fn dual(c: &LinearCode) -> LinearCode {
    LinearCode {
        n: c.n,
        generator: c.parity_check.clone(),
        parity_check: c.generator.clone(),
    }
}

/// Minimum Hamming weight of a nonzero codeword.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalDistance {
    pub bound: Bound,
    pub cap: usize,
    pub witness: Option<BitVec>,
    /// `true` when every codeword was scanned.
    pub exhaustive: bool,
}

impl fmt::Display for ClassicalDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bound {
            Bound::Exact(v) => write!(f, "{v}"),
            Bound::AtLeast(v) => write!(f, ">= {v} (cap {})", self.cap),
        }
    }
}

/// Exhaustive over all `2^k` codewords when `k <= 25`. Larger codes are
/// scanned by enumerating vectors of weight up to `cap` against the parity
/// check, which is exact up to the cap and a lower bound beyond it.
pub fn classical_distance(c: &LinearCode, cap: usize) -> ClassicalDistance {
    let k = c.k();
    if k == 0 {
        return ClassicalDistance {
            bound: Bound::AtLeast(c.n + 1),
            cap,
            witness: None,
            exhaustive: true,
        };
    }
    if k <= 25 {
        let mut best: Option<BitVec> = None;
        let mut cw = BitVec::zeros(c.n);
        for i in 1u64..1 << k {
            cw ^= c.generator.row(i.trailing_zeros() as usize);
            let w = cw.count_ones();
            if best
                .as_ref()
                .is_none_or(|b| w < b.count_ones() || (w == b.count_ones() && cw < *b))
            {
                best = Some(cw.clone());
            }
        }
        let best = best.expect("k >= 1");
        return ClassicalDistance {
            bound: Bound::Exact(best.count_ones()),
            cap,
            witness: Some(best),
            exhaustive: true,
        };
    }
    let cap = cap.min(c.n);
    for w in 1..=cap {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut v = BitVec::zeros(c.n);
            for &q in &support {
                v.set(q, true);
            }
            if c.contains(&v) {
                return ClassicalDistance {
                    bound: Bound::Exact(w),
                    cap,
                    witness: Some(v),
                    exhaustive: false,
                };
            }
            if !next_combination(&mut support, c.n) {
                break;
            }
        }
    }
    ClassicalDistance {
        bound: Bound::AtLeast(cap + 1),
        cap,
        witness: None,
        exhaustive: false,
    }
}
