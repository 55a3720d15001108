//! Admissible error sets and the transmutation checks.
//!
//! Errors are bucketed by syndrome. Within a bucket with reference error
//! `E_1`, every product `E_1 E_j` lies in the normalizer and its class is
//! the XOR of the two logical patterns. A map `π` for the bucket is fixed
//! by its value `m*` on `E_1`, because `π(E_j) = m* · class(E_1 E_j)`; the
//! general check therefore searches the admissible classes for every `m*`
//! that keeps the whole bucket inside the admissible set.

mod recovery;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::pauli::{errors_up_to_weight, PauliOp};
use crate::stabilizer::{for_each_symplectic_basis, SymplecticBasis};
use crate::stabilizer::{
    min_weight_excluding, Bound, DistanceResult, LogicalClass, Purity, StabilizerCode,
};

pub use recovery::{build_recovery, RecoveryEntry, RecoveryOption, RecoveryTable};

/// A set of logical classes the code may leave uncorrected. Always contains
/// the identity.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleSet {
    k: usize,
    classes: BTreeSet<LogicalClass>,
    is_group: bool,
}

impl AdmissibleSet {
    pub fn new<I: IntoIterator<Item = LogicalClass>>(k: usize, classes: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        set.insert(LogicalClass::zero(k));
        for c in classes {
            if c.k() != k {
                return Err(Error::LogicalCountMismatch {
                    code: k,
                    set: c.k(),
                });
            }
            set.insert(c);
        }
        let is_group = set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(&a.xor(b))));
        Ok(AdmissibleSet {
            k,
            classes: set,
            is_group,
        })
    }

    /// Only the identity: ordinary error correction.
    pub fn trivial(k: usize) -> Self {
        Self::new(k, []).expect("identity only")
    }

    /// Every logical class.
    pub fn full(k: usize) -> Self {
        assert!(k <= 12, "full logical group is enumerated explicitly");
        let classes =
            (0..1u64 << (2 * k)).map(|m| LogicalClass::from_bits(BitVec::from_words(2 * k, &[m])));
        Self::new(k, classes).expect("widths match")
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(k: usize, gens: &[LogicalClass]) -> Result<Self> {
        let mut set: BTreeSet<LogicalClass> = BTreeSet::new();
        set.insert(LogicalClass::zero(k));
        for g in gens {
            if g.k() != k {
                return Err(Error::LogicalCountMismatch {
                    code: k,
                    set: g.k(),
                });
            }
            let shifted: Vec<LogicalClass> = set.iter().map(|c| c.xor(g)).collect();
            set.extend(shifted);
        }
        Self::new(k, set)
    }

    /// Parses classes separated by commas or newlines (`"ZI,IZ"`); blank
    /// entries and `#` comments are skipped and the identity is implied.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut classes = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for item in line.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let c = LogicalClass::parse(item, k).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::Parse {
                        line: ln + 1,
                        message,
                    },
                    other => other,
                })?;
                classes.push(c);
            }
        }
        Self::new(k, classes)
    }

    /// Classes of the given normalizer elements.
    pub fn from_operators(code: &StabilizerCode, ops: &[PauliOp]) -> Result<Self> {
        let classes = ops
            .iter()
            .map(|p| code.logical_class(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(code.k(), classes)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    pub fn contains(&self, c: &LogicalClass) -> bool {
        self.classes.contains(c)
    }

    pub fn classes(&self) -> impl Iterator<Item = &LogicalClass> {
        self.classes.iter()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_vec(&self) -> Vec<LogicalClass> {
        self.classes.iter().cloned().collect()
    }

    pub fn is_subset(&self, other: &AdmissibleSet) -> bool {
        self.classes.is_subset(&other.classes)
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.classes.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdmissibleSet{self}")
    }
}

/// Admissible assignments for one syndrome bucket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiMaps {
    pub syndrome: BitVec,
    /// Bucket members in enumeration order; the first is the reference.
    pub members: Vec<PauliOp>,
    /// `class(E_1 E_j)` for every member.
    pub relative: Vec<LogicalClass>,
    /// Every admissible value of `π(E_1)`, one per map.
    pub offsets: Vec<LogicalClass>,
}

impl PiMaps {
    /// The map selected by `offsets[option]`, listed per member.
    pub fn map(&self, option: usize) -> Vec<LogicalClass> {
        let o = &self.offsets[option];
        self.relative.iter().map(|r| o.xor(r)).collect()
    }

    pub fn reference(&self) -> &PauliOp {
        &self.members[0]
    }
}

/// Outcome of a transmutation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    /// On failure, a same-syndrome pair that cannot be assigned.
    pub witness: Option<(PauliOp, PauliOp)>,
    /// Class of the witness product.
    pub witness_class: Option<LogicalClass>,
    /// On success, the maps for every occupied syndrome.
    pub buckets: Vec<PiMaps>,
}

impl Verdict {
    fn failure(a: PauliOp, b: PauliOp, class: LogicalClass) -> Self {
        Verdict {
            pass: false,
            witness: Some((a, b)),
            witness_class: Some(class),
            buckets: Vec::new(),
        }
    }

    pub fn bucket_for(&self, syndrome: &BitVec) -> Option<&PiMaps> {
        self.buckets.iter().find(|b| &b.syndrome == syndrome)
    }
}

/// Errors grouped by syndrome, with logical patterns.
struct Buckets {
    errors: Vec<PauliOp>,
    syndromes: Vec<BitVec>,
    patterns: Vec<LogicalClass>,
    /// Member indices per bucket, buckets ordered by first member.
    groups: Vec<Vec<usize>>,
}

impl Buckets {
    fn new(code: &StabilizerCode, errors: &[PauliOp]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut unique = Vec::with_capacity(errors.len());
        for e in errors {
            if e.num_qubits() != code.n() {
                return Err(Error::DimensionMismatch {
                    expected: code.n(),
                    found: e.num_qubits(),
                });
            }
            if seen.insert(e) {
                unique.push(e.clone());
            }
        }
        let sigs: Vec<(BitVec, LogicalClass)> = unique
            .par_iter()
            .map(|e| (code.syndrome_unchecked(e), code.logical_pattern(e)))
            .collect();
        let mut index: HashMap<&BitVec, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, (s, _)) in sigs.iter().enumerate() {
            let g = *index.entry(s).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i);
        }
        let (syndromes, patterns) = sigs.into_iter().unzip();
        Ok(Buckets {
            errors: unique,
            syndromes,
            patterns,
            groups,
        })
    }

    fn relative(&self, group: &[usize]) -> Vec<LogicalClass> {
        let r = &self.patterns[group[0]];
        group.iter().map(|&j| self.patterns[j].xor(r)).collect()
    }
}

fn check_k(code: &StabilizerCode, m: &AdmissibleSet) -> Result<()> {
    if code.k() != m.k() {
        return Err(Error::LogicalCountMismatch {
            code: code.k(),
            set: m.k(),
        });
    }
    Ok(())
}

/// Outcome per bucket: either offsets, or the position of the member at
/// which no offset survives.
enum BucketOutcome {
    Pass(Vec<LogicalClass>),
    Fail(usize),
}

fn feasible_offsets(m: &AdmissibleSet, relative: &[LogicalClass]) -> BucketOutcome {
    let mut feasible: Vec<&LogicalClass> = m.classes().collect();
    for (j, r) in relative.iter().enumerate().skip(1) {
        feasible.retain(|o| m.contains(&o.xor(r)));
        if feasible.is_empty() {
            return BucketOutcome::Fail(j);
        }
    }
    BucketOutcome::Pass(feasible.into_iter().cloned().collect())
}

fn run_check(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    errors: &[PauliOp],
    group: bool,
) -> Result<Verdict> {
    let b = Buckets::new(code, errors)?;
    let outcomes: Vec<(Vec<LogicalClass>, BucketOutcome)> = b
        .groups
        .par_iter()
        .map(|g| {
            let rel = b.relative(g);
            let outcome = if group {
                match rel.iter().position(|r| !m.contains(r)) {
                    Some(j) => BucketOutcome::Fail(j),
                    None => BucketOutcome::Pass(m.to_vec()),
                }
            } else {
                feasible_offsets(m, &rel)
            };
            (rel, outcome)
        })
        .collect();
    let mut worst: Option<(usize, usize, LogicalClass)> = None;
    for (g, (rel, outcome)) in b.groups.iter().zip(&outcomes) {
        if let BucketOutcome::Fail(j) = outcome {
            let key = (g[0], g[*j]);
            if worst.as_ref().is_none_or(|w| key < (w.0, w.1)) {
                worst = Some((key.0, key.1, rel[*j].clone()));
            }
        }
    }
    if let Some((i, j, class)) = worst {
        return Ok(Verdict::failure(
            b.errors[i].clone(),
            b.errors[j].clone(),
            class,
        ));
    }
    let buckets = b
        .groups
        .iter()
        .zip(outcomes)
        .map(|(g, (relative, outcome))| {
            let BucketOutcome::Pass(offsets) = outcome else {
                unreachable!()
            };
            PiMaps {
                syndrome: b.syndromes[g[0]].clone(),
                members: g.iter().map(|&i| b.errors[i].clone()).collect(),
                relative,
                offsets,
            }
        })
        .collect();
    Ok(Verdict {
        pass: true,
        witness: None,
        witness_class: None,
        buckets,
    })
}

/// Group-case check: every same-syndrome product must have an admissible
/// class. The witness is the first violating pair in enumeration order.
pub fn check_group_qet(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    errors: &[PauliOp],
) -> Result<Verdict> {
    check_k(code, m)?;
    if !m.is_group() {
        return Err(Error::NonGroupAdmissible);
    }
    run_check(code, m, errors, true)
}

/// General-case check: every bucket must admit a map `π` into the
/// admissible set that preserves pair products.
pub fn check_general_qet(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    errors: &[PauliOp],
) -> Result<Verdict> {
    check_k(code, m)?;
    run_check(code, m, errors, false)
}

/// Picks the group checker when `m` is a group, the general one otherwise.
pub fn check_qet(code: &StabilizerCode, m: &AdmissibleSet, errors: &[PauliOp]) -> Result<Verdict> {
    if m.is_group() {
        check_group_qet(code, m, errors)
    } else {
        check_general_qet(code, m, errors)
    }
}

/// Every same-syndrome product has an admissible class.
pub fn strong_conditions_hold(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    errors: &[PauliOp],
) -> Result<bool> {
    check_k(code, m)?;
    let b = Buckets::new(code, errors)?;
    Ok(b.groups.par_iter().all(|g| {
        let rel = b.relative(g);
        rel.iter()
            .enumerate()
            .all(|(i, a)| rel[i + 1..].iter().all(|c| m.contains(&a.xor(c))))
    }))
}

/// Searches symplectic changes of logical basis (in canonical order,
/// identity first) for one under which `pattern`, read in the new basis,
/// makes the errors pass. Returns the relabeled code, the verdict on it and
/// the map used.
pub fn relabel_search(
    code: &StabilizerCode,
    pattern: &AdmissibleSet,
    errors: &[PauliOp],
) -> Result<Option<(StabilizerCode, Verdict, SymplecticBasis)>> {
    check_k(code, pattern)?;
    let k = code.k();
    if k > 3 {
        return Err(Error::RelabelTooLarge(k));
    }
    let b = Buckets::new(code, errors)?;
    let rel_masks: Vec<Vec<u64>> = b
        .groups
        .iter()
        .map(|g| {
            b.relative(g)
                .iter()
                .map(|c| c.to_mask().expect("k <= 3"))
                .collect()
        })
        .collect();
    let pattern_masks: Vec<u64> = pattern
        .classes()
        .map(|c| c.to_mask().expect("k <= 3"))
        .collect();

    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut candidates: Vec<(SymplecticBasis, Vec<u64>)> = Vec::new();
    for_each_symplectic_basis(k, |t| {
        let mut image: Vec<u64> = pattern_masks.iter().map(|&p| t.apply(p)).collect();
        image.sort_unstable();
        if seen.insert(image.clone()) {
            candidates.push((*t, image));
        }
        ControlFlow::Continue(())
    });

    let passes = |image: &[u64]| {
        let member = |c: u64| image.binary_search(&c).is_ok();
        rel_masks
            .iter()
            .all(|rel| image.iter().any(|&o| rel.iter().all(|&r| member(o ^ r))))
    };
    let Some(pos) = candidates
        .par_iter()
        .position_first(|(_, image)| passes(image))
    else {
        return Ok(None);
    };
    let t = candidates[pos].0;
    let new_x: Vec<LogicalClass> = (0..k).map(|i| LogicalClass::from_mask(k, t.x[i])).collect();
    let new_z: Vec<LogicalClass> = (0..k).map(|i| LogicalClass::from_mask(k, t.z[i])).collect();
    let relabeled = code.relabel(&new_x, &new_z)?;
    let verdict = check_qet(&relabeled, pattern, errors)?;
    debug_assert!(verdict.pass);
    Ok(Some((relabeled, verdict, t)))
}

/// `2w + 1` for the largest `w <= cap` such that all errors of weight at most
/// `w` pass the general check. The witness holds the failing pair found at
/// weight `w + 1`, if any.
pub fn effective_distance(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    cap: usize,
) -> Result<DistanceResult> {
    check_k(code, m)?;
    let cap_w = cap.min(code.n());
    for w in 1..=cap_w {
        let errors = errors_up_to_weight(code.n(), w);
        let v = check_general_qet(code, m, &errors)?;
        if !v.pass {
            let (a, b) = v.witness.expect("failing verdict has a witness");
            return Ok(DistanceResult {
                bound: Bound::Exact(2 * (w - 1) + 1),
                cap,
                witness: vec![a, b],
            });
        }
    }
    Ok(DistanceResult::at_least(2 * cap_w + 1, cap))
}

/// Minimum weight of a normalizer element whose class is not admissible.
pub fn deff_lower_bound(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    cap: usize,
) -> Result<DistanceResult> {
    check_k(code, m)?;
    Ok(min_weight_excluding(code, &m.to_vec(), Purity::Any, cap))
}
