//! Stabilizer codes in the symplectic picture.
//!
//! A code is a list of commuting, independent generators together with a
//! chosen logical basis `(X̄_i, Z̄_i)`. The basis fixes the identification of
//! `N(S)/S` with the k-qubit logical Pauli group; a [`LogicalClass`] is the
//! image of a normalizer element under that identification.

mod class;
mod io;
mod search;
mod standard;
mod symplectic;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, EchelonBasis};
use crate::pauli::PauliOp;

pub use class::LogicalClass;
pub use io::{parse_code, render_code};
pub use search::{
    code_distance, min_weight_excluding, min_weight_in_class, Bound, DistanceResult, Purity,
    SignatureTable,
};
pub use standard::{sample_standard_form, standard_form, StandardFormParams};
pub use symplectic::{
    for_each_symplectic_basis, form as class_form, symplectic_bases, SymplecticBasis,
};

/// One problem found by [`StabilizerCode::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Issue {
    QubitCount {
        role: String,
        found: usize,
        expected: usize,
    },
    LogicalCount {
        x: usize,
        z: usize,
        expected: usize,
    },
    NonCommuting {
        a: usize,
        b: usize,
    },
    RankDeficient {
        rank: usize,
        expected: usize,
    },
    LogicalOutsideNormalizer {
        logical: String,
        generator: usize,
    },
    BadPairing {
        a: String,
        b: String,
        anticommute: bool,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::QubitCount {
                role,
                found,
                expected,
            } => {
                write!(f, "{role} acts on {found} qubits, expected {expected}")
            }
            Issue::LogicalCount { x, z, expected } => {
                write!(
                    f,
                    "{x} X logicals and {z} Z logicals, expected {expected} of each"
                )
            }
            Issue::NonCommuting { a, b } => write!(f, "generators {a} and {b} anticommute"),
            Issue::RankDeficient { rank, expected } => {
                write!(f, "generator rank {rank}, expected {expected}")
            }
            Issue::LogicalOutsideNormalizer { logical, generator } => {
                write!(f, "{logical} anticommutes with generator {generator}")
            }
            Issue::BadPairing { a, b, anticommute } => {
                let what = if *anticommute {
                    "anticommute"
                } else {
                    "commute"
                };
                write!(f, "{a} and {b} {what}")
            }
        }
    }
}

/// Result of validating a code: empty means every invariant holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub issues: Vec<Issue>,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn rank_deficient(&self) -> bool {
        self.issues
            .iter()
            .any(|i| matches!(i, Issue::RankDeficient { .. }))
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// An `[n, k]` stabilizer code with a chosen logical basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOp>,
    logical_x: Vec<PauliOp>,
    logical_z: Vec<PauliOp>,
}

impl StabilizerCode {
    /// Builds a code and validates it.
    pub fn new(
        generators: Vec<PauliOp>,
        logical_x: Vec<PauliOp>,
        logical_z: Vec<PauliOp>,
    ) -> Result<Self> {
        let n = generators
            .first()
            .or(logical_x.first())
            .or(logical_z.first())
            .map(PauliOp::num_qubits)
            .ok_or(Error::EmptySelection)?;
        let code = Self::from_parts(n, generators, logical_x, logical_z);
        let diag = code.validate();
        if diag.is_ok() {
            Ok(code)
        } else {
            Err(Error::InvalidCode(diag))
        }
    }

    /// Assembles a code without validation.
    pub fn from_parts(
        n: usize,
        generators: Vec<PauliOp>,
        logical_x: Vec<PauliOp>,
        logical_z: Vec<PauliOp>,
    ) -> Self {
        StabilizerCode {
            n,
            generators,
            logical_x,
            logical_z,
        }
    }

    /// Keeps the given generators and completes them with a logical basis.
    pub fn from_generators(generators: Vec<PauliOp>) -> Result<Self> {
        let n = generators
            .first()
            .map(PauliOp::num_qubits)
            .ok_or(Error::EmptySelection)?;
        let std = standard_form(&generators)?;
        let code = Self::from_parts(n, generators, std.logical_x, std.logical_z);
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    /// Number of generators, which is also the syndrome length.
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOp] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOp] {
        &self.logical_z
    }

    pub fn validate(&self) -> Diagnostics {
        let mut issues = Vec::new();
        let n = self.n;
        let k = self.logical_x.len();
        for (role, ops) in [
            ("generator", &self.generators),
            ("X logical", &self.logical_x),
            ("Z logical", &self.logical_z),
        ] {
            for (i, p) in ops.iter().enumerate() {
                if p.num_qubits() != n {
                    issues.push(Issue::QubitCount {
                        role: format!("{role} {i}"),
                        found: p.num_qubits(),
                        expected: n,
                    });
                }
            }
        }
        if !issues.is_empty() {
            return Diagnostics { issues };
        }
        let expected_k = n.saturating_sub(self.generators.len());
        if self.logical_z.len() != k || k != expected_k {
            issues.push(Issue::LogicalCount {
                x: k,
                z: self.logical_z.len(),
                expected: expected_k,
            });
        }
        for a in 0..self.generators.len() {
            for b in a + 1..self.generators.len() {
                if self.generators[a].anticommutes(&self.generators[b]) {
                    issues.push(Issue::NonCommuting { a, b });
                }
            }
        }
        let rank = self.stabilizer_matrix().rank();
        if rank != self.generators.len() {
            issues.push(Issue::RankDeficient {
                rank,
                expected: self.generators.len(),
            });
        }
        let labelled: Vec<(String, &PauliOp)> = self
            .logical_x
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("XL{}", i + 1), p))
            .chain(
                self.logical_z
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (format!("ZL{}", i + 1), p)),
            )
            .collect();
        for (name, op) in &labelled {
            for (g, gen) in self.generators.iter().enumerate() {
                if op.anticommutes(gen) {
                    issues.push(Issue::LogicalOutsideNormalizer {
                        logical: name.clone(),
                        generator: g,
                    });
                }
            }
        }
        let kx = self.logical_x.len();
        for a in 0..labelled.len() {
            for b in a + 1..labelled.len() {
                let expected = b >= kx && a < kx && b - kx == a;
                let found = labelled[a].1.anticommutes(labelled[b].1);
                if expected != found {
                    issues.push(Issue::BadPairing {
                        a: labelled[a].0.clone(),
                        b: labelled[b].0.clone(),
                        anticommute: found,
                    });
                }
            }
        }
        Diagnostics { issues }
    }

    /// Generators as rows of symplectic vectors `(x ‖ z)`.
    pub fn stabilizer_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            2 * self.n,
            self.generators.iter().map(PauliOp::to_symplectic).collect(),
        )
    }

    fn check_qubits(&self, p: &PauliOp) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        Ok(())
    }

    /// Bit `l` is set iff `p` anticommutes with generator `l`.
    pub fn syndrome(&self, p: &PauliOp) -> Result<BitVec> {
        self.check_qubits(p)?;
        Ok(self.syndrome_unchecked(p))
    }

    pub fn syndrome_unchecked(&self, p: &PauliOp) -> BitVec {
        BitVec::from_bools(self.generators.iter().map(|g| g.anticommutes(p)))
    }

    /// Anticommutation pattern against `(Z̄_1..Z̄_k, X̄_1..X̄_k)` for any Pauli.
    ///
    /// On the normalizer this is the logical class; elsewhere it is still
    /// linear, so two errors with equal syndrome have product class equal to
    /// the XOR of their patterns.
    pub fn logical_pattern(&self, p: &PauliOp) -> LogicalClass {
        let k = self.k();
        let mut bits = BitVec::zeros(2 * k);
        for i in 0..k {
            bits.set(i, self.logical_z[i].anticommutes(p));
            bits.set(k + i, self.logical_x[i].anticommutes(p));
        }
        LogicalClass::from_bits(bits)
    }

    /// Logical class of a normalizer element.
    pub fn logical_class(&self, p: &PauliOp) -> Result<LogicalClass> {
        self.check_qubits(p)?;
        if !self.syndrome_unchecked(p).is_zero() {
            return Err(Error::NotInNormalizer(p.to_string()));
        }
        Ok(self.logical_pattern(p))
    }

    pub fn in_normalizer(&self, p: &PauliOp) -> bool {
        p.num_qubits() == self.n && self.syndrome_unchecked(p).is_zero()
    }

    /// S-membership by solving for a product of generators.
    pub fn in_stabilizer(&self, p: &PauliOp) -> bool {
        if p.num_qubits() != self.n {
            return false;
        }
        self.stabilizer_matrix()
            .transpose()
            .solve(&p.to_symplectic())
            .is_some()
    }

    /// The canonical representative `Π X̄_i^{a_i} Π Z̄_i^{b_i}` of a class.
    pub fn representative(&self, class: &LogicalClass) -> PauliOp {
        let k = self.k();
        assert_eq!(class.k(), k, "class width does not match the code");
        let mut p = PauliOp::identity(self.n);
        for i in 0..k {
            if class.bits().get(i) {
                p.mul_assign(&self.logical_x[i]);
            }
            if class.bits().get(k + i) {
                p.mul_assign(&self.logical_z[i]);
            }
        }
        p
    }

    /// Re-expresses the logical basis: new `X̄_i` is a representative of
    /// `new_x[i]` and new `Z̄_i` of `new_z[i]`, both given in the current basis.
    pub fn relabel(
        &self,
        new_x: &[LogicalClass],
        new_z: &[LogicalClass],
    ) -> Result<StabilizerCode> {
        let lx = new_x.iter().map(|c| self.representative(c)).collect();
        let lz = new_z.iter().map(|c| self.representative(c)).collect();
        let code = Self::from_parts(self.n, self.generators.clone(), lx, lz);
        let diag = code.validate();
        if diag.is_ok() {
            Ok(code)
        } else {
            Err(Error::InvalidCode(diag))
        }
    }

    /// Same logical basis, with `extra` operators adjoined to the stabilizer.
    ///
    /// Each extra operator must be one of the current logical operators;
    /// the corresponding pair is removed from the basis.
    pub fn with_stabilized_logicals(&self, extra: &[PauliOp]) -> Result<StabilizerCode> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        let pairs: Vec<(PauliOp, PauliOp)> = self
            .logical_x
            .iter()
            .zip(&self.logical_z)
            .filter(|(x, z)| {
                extra
                    .iter()
                    .all(|e| !e.anticommutes(x) && !e.anticommutes(z))
            })
            .map(|(x, z)| (x.clone(), z.clone()))
            .collect();
        complete_logical_basis(&gens, &pairs)
    }
}

/// Runs [`StabilizerCode::validate`].
pub fn validate_code(c: &StabilizerCode) -> Diagnostics {
    c.validate()
}

/// A basis of the normalizer `N(S)` as symplectic vectors.
pub fn normalizer_basis(n: usize, generators: &[PauliOp]) -> BitMatrix {
    let swapped: Vec<BitVec> = generators
        .iter()
        .map(|g| g.z_part().concat(g.x_part()))
        .collect();
    BitMatrix::from_rows(2 * n, swapped).kernel_basis()
}

fn symplectic_dot(a: &BitVec, b: &BitVec) -> bool {
    let n = a.len() / 2;
    (a.slice(0, n).and_count(&b.slice(n, n)) + a.slice(n, n).and_count(&b.slice(0, n))) % 2 == 1
}

/// Completes the given `(X̄, Z̄)` pairs to a full logical basis by symplectic
/// Gram–Schmidt over the normalizer modulo the stabilizer.
///
/// Generators must commute and be independent. The given pairs are kept
/// verbatim and come first.
pub fn complete_logical_basis(
    generators: &[PauliOp],
    pairs: &[(PauliOp, PauliOp)],
) -> Result<StabilizerCode> {
    let n = generators
        .first()
        .or(pairs.first().map(|p| &p.0))
        .map(PauliOp::num_qubits)
        .ok_or(Error::EmptySelection)?;
    check_abelian_independent(generators)?;
    let mut span = EchelonBasis::new();
    for g in generators {
        span.insert(&g.to_symplectic());
    }
    let mut basis: Vec<(BitVec, BitVec)> = Vec::new();
    for (x, z) in pairs {
        let (u, w) = (x.to_symplectic(), z.to_symplectic());
        span.insert(&u);
        span.insert(&w);
        basis.push((u, w));
    }
    let reduce = |v: &BitVec, basis: &[(BitVec, BitVec)]| {
        let mut v = v.clone();
        for (u, w) in basis {
            let cw = symplectic_dot(&v, w);
            let cu = symplectic_dot(&v, u);
            if cw {
                v ^= u;
            }
            if cu {
                v ^= w;
            }
        }
        v
    };
    let mut pool: Vec<BitVec> = normalizer_basis(n, generators)
        .into_rows()
        .into_iter()
        .map(|v| reduce(&v, &basis))
        .filter(|v| !span.contains(v))
        .collect();
    while let Some(a) = pool.first().cloned() {
        pool.remove(0);
        if span.contains(&a) {
            continue;
        }
        let Some(j) = pool.iter().position(|b| symplectic_dot(&a, b)) else {
            return Err(Error::Unsupported(
                "normalizer element commutes with the whole normalizer but lies outside the stabilizer"
                    .into(),
            ));
        };
        let b = pool.remove(j);
        span.insert(&a);
        span.insert(&b);
        basis.push((a, b));
        pool = pool
            .iter()
            .map(|v| reduce(v, &basis[basis.len() - 1..]))
            .filter(|v| !span.contains(v))
            .collect();
    }
    let (lx, lz) = basis
        .into_iter()
        .map(|(u, w)| (PauliOp::from_symplectic(&u), PauliOp::from_symplectic(&w)))
        .unzip();
    let code = StabilizerCode::from_parts(n, generators.to_vec(), lx, lz);
    let diag = code.validate();
    if diag.is_ok() {
        Ok(code)
    } else {
        Err(Error::InvalidCode(diag))
    }
}

pub(crate) fn check_abelian_independent(generators: &[PauliOp]) -> Result<()> {
    for a in 0..generators.len() {
        for b in a + 1..generators.len() {
            if generators[a].num_qubits() != generators[b].num_qubits() {
                return Err(Error::DimensionMismatch {
                    expected: generators[a].num_qubits(),
                    found: generators[b].num_qubits(),
                });
            }
            if generators[a].anticommutes(&generators[b]) {
                return Err(Error::NonAbelian(a, b));
            }
        }
    }
    let n = generators.first().map_or(0, PauliOp::num_qubits);
    let m = BitMatrix::from_rows(
        2 * n,
        generators.iter().map(PauliOp::to_symplectic).collect(),
    );
    let rank = m.rank();
    if rank != generators.len() {
        return Err(Error::DependentGenerators {
            rank,
            count: generators.len(),
        });
    }
    Ok(())
}

/// Greedily keeps generators that are independent of the earlier ones.
/// Returns the kept generators and the indices that were dropped.
pub fn drop_dependent(generators: Vec<PauliOp>) -> (Vec<PauliOp>, Vec<usize>) {
    let mut span = EchelonBasis::new();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (i, g) in generators.into_iter().enumerate() {
        if span.insert(&g.to_symplectic()) {
            kept.push(g);
        } else {
            dropped.push(i);
        }
    }
    (kept, dropped)
}
