//! Syndrome-conditioned recovery built from a passing verdict.
//!
//! For syndrome `s` with reference error `E_1` and admissible offsets
//! `m*_α`, the recovery applies `rep(m*_α) · E_1` with probability `r_α`.
//! An error `E` in the bucket is left with class `m*_α ⊕ class(E_1 E)`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::pauli::PauliOp;
use crate::stabilizer::{LogicalClass, StabilizerCode};

use super::{AdmissibleSet, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecoveryOption {
    /// Value of `π(E_1)` for this component.
    pub offset: LogicalClass,
    /// Operator applied: a representative of `offset` times the reference.
    pub correction: PauliOp,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecoveryEntry {
    pub syndrome: BitVec,
    pub reference: PauliOp,
    pub options: Vec<RecoveryOption>,
}

#[derive(Clone, Debug)]
pub struct RecoveryTable {
    k: usize,
    entries: Vec<RecoveryEntry>,
    index: HashMap<BitVec, usize>,
    support: HashSet<PauliOp>,
}

impl RecoveryTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[RecoveryEntry] {
        &self.entries
    }

    pub fn lookup(&self, syndrome: &BitVec) -> Option<&RecoveryEntry> {
        self.index.get(syndrome).map(|&i| &self.entries[i])
    }

    /// Whether `e` belongs to the verified error set.
    pub fn covers(&self, e: &PauliOp) -> bool {
        self.support.contains(e)
    }

    pub fn support(&self) -> impl Iterator<Item = &PauliOp> {
        self.support.iter()
    }
}

/// Builds the recovery table for a passing verdict. `mixtures` maps a
/// syndrome to weights over that bucket's offsets (in verdict order);
/// missing syndromes get the uniform mixture.
pub fn build_recovery(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    verdict: &Verdict,
    mixtures: Option<&HashMap<BitVec, Vec<f64>>>,
) -> Result<RecoveryTable> {
    if !verdict.pass {
        return Err(Error::VerdictFailed);
    }
    let mut entries = Vec::with_capacity(verdict.buckets.len());
    let mut index = HashMap::new();
    let mut support = HashSet::new();
    for bucket in &verdict.buckets {
        let count = bucket.offsets.len();
        let weights = match mixtures.and_then(|mx| mx.get(&bucket.syndrome)) {
            Some(w) => {
                let invalid = |reason: String| Error::InvalidMixture {
                    syndrome: bucket.syndrome.to_string(),
                    reason,
                };
                if w.len() != count {
                    return Err(invalid(format!("{} weights for {count} maps", w.len())));
                }
                if w.iter().any(|&p| !p.is_finite() || p < 0.0) {
                    return Err(invalid("weights must be finite and nonnegative".into()));
                }
                let total: f64 = w.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(invalid(format!("weights sum to {total}")));
                }
                w.clone()
            }
            None => vec![1.0 / count as f64; count],
        };
        let reference = bucket.reference().clone();
        let options = bucket
            .offsets
            .iter()
            .zip(weights)
            .map(|(o, probability)| {
                for r in &bucket.relative {
                    debug_assert!(m.contains(&o.xor(r)));
                }
                RecoveryOption {
                    offset: o.clone(),
                    correction: code.representative(o).mul_unchecked(&reference),
                    probability,
                }
            })
            .collect();
        index.insert(bucket.syndrome.clone(), entries.len());
        support.extend(bucket.members.iter().cloned());
        entries.push(RecoveryEntry {
            syndrome: bucket.syndrome.clone(),
            reference,
            options,
        });
    }
    Ok(RecoveryTable {
        k: code.k(),
        entries,
        index,
        support,
    })
}
