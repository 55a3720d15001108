use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, EchelonBasis};
use crate::pauli::{next_combination, PauliOp};
use crate::stabilizer::{
    min_weight_excluding, DistanceResult, LogicalClass, Purity, StabilizerCode,
};

use super::{cyclic_code, dual, from_shifts, LinearCode, Poly2};

/// A CSS code with the classical codes it was built from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CssCode {
    pub code: StabilizerCode,
    /// Z-type generators are the parity checks of `c1`.
    pub c1: LinearCode,
    /// X-type generators are the parity checks of `c2`.
    pub c2: LinearCode,
}

/// `CSS(c1, c2)`: Z rows from the parity check of `c1`, X rows from that of
/// `c2`. Requires every row of one parity check to be orthogonal to every
/// row of the other.
pub fn css_build(c1: &LinearCode, c2: &LinearCode) -> Result<CssCode> {
    if c1.n() != c2.n() {
        return Err(Error::DimensionMismatch {
            expected: c1.n(),
            found: c2.n(),
        });
    }
    let n = c1.n();
    let p1 = c1.parity_check();
    let p2 = c2.parity_check();
    for (i, a) in p1.row_vecs().iter().enumerate() {
        for (j, b) in p2.row_vecs().iter().enumerate() {
            if a.dot(b) {
                return Err(Error::CssContainment { z_row: i, x_row: j });
            }
        }
    }
    let mut gens: Vec<PauliOp> = p1
        .row_vecs()
        .iter()
        .map(|r| PauliOp::from_parts(BitVec::zeros(n), r.clone()))
        .collect();
    gens.extend(
        p2.row_vecs()
            .iter()
            .map(|r| PauliOp::from_parts(r.clone(), BitVec::zeros(n))),
    );
    let code = if gens.is_empty() {
        let lx = (0..n).map(|q| PauliOp::x_on(n, &[q])).collect();
        let lz = (0..n).map(|q| PauliOp::z_on(n, &[q])).collect();
        StabilizerCode::new(Vec::new(), lx, lz)?
    } else {
        StabilizerCode::from_generators(gens)?
    };
    Ok(CssCode {
        code,
        c1: c1.clone(),
        c2: c2.clone(),
    })
}

fn is_css(code: &StabilizerCode) -> bool {
    code.generators()
        .iter()
        .all(|g| g.is_pure_x() || g.is_pure_z())
}

/// Minimum weights of pure-X and pure-Z operators in `N(S) \ S`.
pub fn asymmetric_distances(
    code: &StabilizerCode,
    cap: usize,
) -> Result<(DistanceResult, DistanceResult)> {
    if !is_css(code) {
        return Err(Error::NotCss);
    }
    let zero = [LogicalClass::zero(code.k())];
    Ok((
        min_weight_excluding(code, &zero, Purity::X, cap),
        min_weight_excluding(code, &zero, Purity::Z, cap),
    ))
}

impl CssCode {
    /// Replaces the logical basis so that `X̄_i` is the pure-X operator on
    /// `xs[i]`, pairing each with a pure-Z `Z̄_i`.
    pub fn with_x_logicals(&self, xs: &[BitVec]) -> Result<CssCode> {
        let n = self.code.n();
        let k = self.code.k();
        if xs.len() != k {
            return Err(Error::LogicalCountMismatch {
                code: k,
                set: xs.len(),
            });
        }
        let mut system = self.c2.parity_check().clone();
        for x in xs {
            system.push_row(x.clone());
        }
        let checks = self.c2.parity_check().rows();
        let mut lz = Vec::with_capacity(k);
        for i in 0..k {
            let rhs = BitVec::unit(checks + k, checks + i);
            let z = system.solve(&rhs).ok_or_else(|| {
                Error::Unsupported("X logicals are dependent modulo the stabilizer".into())
            })?;
            lz.push(PauliOp::from_parts(BitVec::zeros(n), z));
        }
        let lx = xs
            .iter()
            .map(|x| PauliOp::from_parts(x.clone(), BitVec::zeros(n)))
            .collect();
        let code = StabilizerCode::new(self.code.generators().to_vec(), lx, lz)?;
        Ok(CssCode {
            code,
            c1: self.c1.clone(),
            c2: self.c2.clone(),
        })
    }

    /// All pure-X logical operators of weight `w`, as supports, in
    /// lexicographic order.
    pub fn pure_x_logicals(&self, w: usize) -> Vec<BitVec> {
        let n = self.code.n();
        let mut stab = EchelonBasis::new();
        for r in self.c2.parity_check().row_vecs() {
            stab.insert(r);
        }
        let mut out = Vec::new();
        if w == 0 || w > n {
            return out;
        }
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut v = BitVec::zeros(n);
            for &q in &support {
                v.set(q, true);
            }
            if self.c1.contains(&v) && !stab.contains(&v) {
                out.push(v);
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
        out
    }
}

/// The classical ingredients of the 17-qubit CSS code.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Css17Parts {
    /// The `[17, 9, 5]` quadratic-residue code.
    pub qr: LinearCode,
    /// Its `[17, 8]` even-weight subcode, spanned by shifts of `(1 + x^5) g`.
    pub even: LinearCode,
    /// Spanned by the first seven of those shifts.
    pub c2_dual: LinearCode,
    pub c2: LinearCode,
}

/// Generator polynomial of the length-17 quadratic-residue code.
pub const QR17_GENERATOR: &str = "1+x^3+x^4+x^5+x^8";

pub fn css17_parts() -> Result<Css17Parts> {
    let g: Poly2 = QR17_GENERATOR.parse()?;
    let qr = cyclic_code(17, &g)?;
    let g_tilde = g.mul(&"1+x^5".parse()?);
    let even = from_shifts(17, &g_tilde, 8)?;
    let c2_dual = from_shifts(17, &g_tilde, 7)?;
    let c2 = dual(&c2_dual);
    Ok(Css17Parts {
        qr,
        even,
        c2_dual,
        c2,
    })
}

/// The `[17, 2]` code with pure-X distance 3 and pure-Z distance 5.
///
/// Z-type checks come from `C2` and X-type checks from the QR code, so the
/// low-weight pure-X logicals are codewords of `C2`. The basis is chosen
/// with `X̄_1` in the class of the weight-3 pure-X logicals and `X̄_2` in the
/// class of the weight-4 ones.
pub fn css17() -> Result<CssCode> {
    let parts = css17_parts()?;
    let base = css_build(&parts.c2, &parts.qr)?;
    let x1 = base.pure_x_logicals(3).into_iter().next();
    let x2 = base.pure_x_logicals(4).into_iter().find(|v| {
        x1.as_ref()
            .is_some_and(|a| !span_contains(parts.qr.parity_check(), &(a ^ v)))
    });
    match (x1, x2) {
        (Some(a), Some(b)) => base.with_x_logicals(&[a, b]),
        _ => Err(Error::Unsupported(
            "low-weight pure-X logicals not found".into(),
        )),
    }
}

fn span_contains(m: &BitMatrix, v: &BitVec) -> bool {
    let mut e = EchelonBasis::new();
    for r in m.row_vecs() {
        e.insert(r);
    }
    e.contains(v)
}
