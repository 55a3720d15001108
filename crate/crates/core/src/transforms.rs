//! Concatenation of an outer code with an `[n2, 1]` inner code.
//!
//! Outer qubit `i` becomes the block of qubits `i·n2 .. (i+1)·n2`. Outer
//! operators are lifted letter by letter: `X` to the inner `X̄`, `Z` to the
//! inner `Z̄`, `Y` to their product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::pauli::PauliOp;
use crate::qet::AdmissibleSet;
use crate::stabilizer::{min_weight_excluding, DistanceResult, Purity, StabilizerCode};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConcatenatedCode {
    pub outer: StabilizerCode,
    pub inner: StabilizerCode,
    pub result: StabilizerCode,
    /// The outer admissible set carried over by the lifted basis.
    pub admissible: Option<AdmissibleSet>,
}

/// Replaces every letter of an outer operator by the inner logical.
pub fn lift(p: &PauliOp, inner: &StabilizerCode) -> PauliOp {
    let n2 = inner.n();
    let total = p.num_qubits() * n2;
    let (ix, iz) = (&inner.logical_x()[0], &inner.logical_z()[0]);
    let mut out = PauliOp::identity(total);
    for q in p.support().iter_ones() {
        let (hx, hz) = p.letter(q).bits();
        let mut block = PauliOp::identity(n2);
        if hx {
            block.mul_assign(ix);
        }
        if hz {
            block.mul_assign(iz);
        }
        out.mul_assign(&place(&block, q * n2, total));
    }
    out
}

fn place(p: &PauliOp, offset: usize, total: usize) -> PauliOp {
    let mut x = BitVec::zeros(total);
    let mut z = BitVec::zeros(total);
    for q in p.support().iter_ones() {
        let (bx, bz) = p.letter(q).bits();
        x.set(offset + q, bx);
        z.set(offset + q, bz);
    }
    PauliOp::from_parts(x, z)
}

/// Concatenates `outer` with `inner`, carrying `admissible` (if given) to
/// the result through the lifted logical basis.
pub fn concatenate(
    outer: &StabilizerCode,
    inner: &StabilizerCode,
    admissible: Option<&AdmissibleSet>,
) -> Result<ConcatenatedCode> {
    if inner.k() != 1 {
        return Err(Error::InnerNotSingleQubit(inner.k()));
    }
    for c in [outer, inner] {
        let diag = c.validate();
        if !diag.is_ok() {
            return Err(Error::InvalidCode(diag));
        }
    }
    if let Some(m) = admissible {
        if m.k() != outer.k() {
            return Err(Error::LogicalCountMismatch {
                code: outer.k(),
                set: m.k(),
            });
        }
    }
    let n1 = outer.n();
    let n2 = inner.n();
    let total = n1 * n2;
    let mut gens = Vec::with_capacity(n1 * inner.num_generators() + outer.num_generators());
    for block in 0..n1 {
        gens.extend(
            inner
                .generators()
                .iter()
                .map(|g| place(g, block * n2, total)),
        );
    }
    gens.extend(outer.generators().iter().map(|g| lift(g, inner)));
    let lx = outer.logical_x().iter().map(|p| lift(p, inner)).collect();
    let lz = outer.logical_z().iter().map(|p| lift(p, inner)).collect();
    let result = StabilizerCode::new(gens, lx, lz)?;
    Ok(ConcatenatedCode {
        outer: outer.clone(),
        inner: inner.clone(),
        result,
        admissible: admissible.cloned(),
    })
}

impl ConcatenatedCode {
    /// Minimum weight of an element of `N(S') \ M'` up to `cap`. A result
    /// above the cap is a lower bound only.
    pub fn excluded_min_weight(&self, cap: usize) -> DistanceResult {
        let k = self.result.k();
        let excluded = match &self.admissible {
            Some(m) => m.to_vec(),
            None => AdmissibleSet::trivial(k).to_vec(),
        };
        min_weight_excluding(&self.result, &excluded, Purity::Any, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{five_qubit, table1, table1_admissible, trivial_qubit};
    use crate::stabilizer::LogicalClass;

    #[test]
    fn trivial_inner_is_identity() {
        let t = table1();
        let c = concatenate(&t, &trivial_qubit(), None).unwrap();
        assert_eq!(c.result, t);
    }

    #[test]
    fn table1_with_five_qubit_inner() {
        let c = concatenate(&table1(), &five_qubit(), Some(&table1_admissible())).unwrap();
        assert_eq!((c.result.n(), c.result.k()), (35, 2));
        assert!(c.result.validate().is_ok());
        // lifted logicals keep their labels
        for i in 0..2 {
            let z = &c.result.logical_z()[i];
            assert_eq!(c.result.logical_class(z).unwrap(), LogicalClass::z(2, i));
        }
    }

    #[test]
    fn lifted_pairing_matches_outer() {
        let t = table1();
        let inner = five_qubit();
        let ops: Vec<PauliOp> = t.logical_x().iter().chain(t.logical_z()).cloned().collect();
        for a in &ops {
            for b in &ops {
                assert_eq!(
                    a.anticommutes(b),
                    lift(a, &inner).anticommutes(&lift(b, &inner))
                );
            }
        }
    }

    #[test]
    fn rejects_multi_qubit_inner() {
        assert!(matches!(
            concatenate(&table1(), &table1(), None),
            Err(Error::InnerNotSingleQubit(2))
        ));
    }
}
