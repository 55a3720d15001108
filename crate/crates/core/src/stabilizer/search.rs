//! Bounded minimum-weight searches over the normalizer.
//!
//! Every single-qubit Pauli gets a precomputed signature word: its syndrome
//! bits followed by its logical pattern bits. The signature of a product is
//! the XOR of its factors', so a depth-first walk over supports evaluates
//! each candidate with one XOR per level.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::pauli::{Letter, PauliOp};

use super::{LogicalClass, StabilizerCode};

/// Exact value or a lower bound reached when the cap was hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    Exact(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn value(self) -> usize {
        match self {
            Bound::Exact(v) | Bound::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Bound::Exact(_))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(v) => write!(f, "{v}"),
            Bound::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// A distance-like quantity with the cap that was used to obtain it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub bound: Bound,
    pub cap: usize,
    /// Operators certifying the value (empty for lower bounds).
    pub witness: Vec<PauliOp>,
}

impl DistanceResult {
    pub fn exact(value: usize, cap: usize, witness: Vec<PauliOp>) -> Self {
        DistanceResult {
            bound: Bound::Exact(value),
            cap,
            witness,
        }
    }

    pub fn at_least(value: usize, cap: usize) -> Self {
        DistanceResult {
            bound: Bound::AtLeast(value),
            cap,
            witness: Vec::new(),
        }
    }

    pub fn value(&self) -> usize {
        self.bound.value()
    }

    pub fn is_exact(&self) -> bool {
        self.bound.is_exact()
    }
}

impl fmt::Display for DistanceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bound {
            Bound::Exact(v) => write!(f, "{v}"),
            Bound::AtLeast(v) => write!(f, ">= {v} (cap {})", self.cap),
        }
    }
}

/// Restriction on the letters allowed in a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Purity {
    Any,
    X,
    Z,
}

impl Purity {
    fn letters(self) -> &'static [u8] {
        match self {
            Purity::Any => &[0, 1, 2],
            Purity::X => &[0],
            Purity::Z => &[2],
        }
    }
}

/// Per-(qubit, letter) syndrome and logical-pattern words for a code.
#[derive(Clone, Debug)]
pub struct SignatureTable {
    n: usize,
    k: usize,
    syn_words: usize,
    width: usize,
    entries: Vec<u64>,
}

impl SignatureTable {
    pub fn new(code: &StabilizerCode) -> Self {
        let n = code.n();
        let k = code.k();
        let m = code.num_generators();
        let syn_words = m.div_ceil(64);
        let width = syn_words + (2 * k).div_ceil(64);
        let mut entries = vec![0u64; n * 3 * width];
        for q in 0..n {
            for (li, &letter) in Letter::NON_IDENTITY.iter().enumerate() {
                let p = PauliOp::single(n, q, letter);
                let base = (q * 3 + li) * width;
                for (l, g) in code.generators().iter().enumerate() {
                    if g.anticommutes(&p) {
                        entries[base + l / 64] |= 1 << (l % 64);
                    }
                }
                let class = code.logical_pattern(&p);
                for b in class.bits().iter_ones() {
                    entries[base + syn_words + b / 64] |= 1 << (b % 64);
                }
            }
        }
        SignatureTable {
            n,
            k,
            syn_words,
            width,
            entries,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    fn entry(&self, q: usize, letter: u8) -> &[u64] {
        let base = (q * 3 + letter as usize) * self.width;
        &self.entries[base..base + self.width]
    }

    pub fn signature(&self, p: &PauliOp) -> Vec<u64> {
        let mut acc = vec![0u64; self.width];
        for q in p.support().iter_ones() {
            let li = match p.letter(q) {
                Letter::X => 0,
                Letter::Y => 1,
                Letter::Z => 2,
                Letter::I => unreachable!(),
            };
            for (a, e) in acc.iter_mut().zip(self.entry(q, li)) {
                *a ^= e;
            }
        }
        acc
    }

    #[inline]
    pub fn syndrome_is_zero(&self, sig: &[u64]) -> bool {
        sig[..self.syn_words].iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn class_words<'a>(&self, sig: &'a [u64]) -> &'a [u64] {
        &sig[self.syn_words..]
    }

    /// Class-region words for a logical class.
    pub fn class_key(&self, class: &LogicalClass) -> Vec<u64> {
        let mut words = vec![0u64; self.width - self.syn_words];
        for b in class.bits().iter_ones() {
            words[b / 64] |= 1 << (b % 64);
        }
        words
    }

    pub fn class_of(&self, sig: &[u64]) -> LogicalClass {
        let words = self.class_words(sig);
        let bits = crate::f2::BitVec::from_words(2 * self.k, words);
        LogicalClass::from_bits(bits)
    }

    /// The least operator (weight first, then support, then letters) of
    /// weight `1..=cap` whose signature satisfies `pred`, with its weight.
    pub fn find_min<P>(&self, purity: Purity, cap: usize, pred: P) -> Option<PauliOp>
    where
        P: Fn(&[u64]) -> bool + Sync,
    {
        let cap = cap.min(self.n);
        for w in 1..=cap {
            if let Some((qs, ls)) = self.scan_weight(w, purity.letters(), &pred) {
                let mut p = PauliOp::identity(self.n);
                for (q, l) in qs.into_iter().zip(ls) {
                    p.set(q, Letter::NON_IDENTITY[l as usize]);
                }
                return Some(p);
            }
        }
        None
    }

    fn scan_weight<P>(&self, w: usize, letters: &[u8], pred: &P) -> Option<(Vec<usize>, Vec<u8>)>
    where
        P: Fn(&[u64]) -> bool + Sync,
    {
        (0..=self.n - w)
            .into_par_iter()
            .filter_map(|q0| {
                let mut walk = Walk {
                    table: self,
                    w,
                    letters,
                    pred,
                    qs: vec![0; w],
                    ls: vec![0; w],
                    acc: vec![0; (w + 1) * self.width],
                    best: None,
                };
                for &l in letters {
                    walk.qs[0] = q0;
                    walk.ls[0] = l;
                    walk.push(0, q0, l);
                    walk.descend(1);
                }
                walk.best
            })
            .min()
    }
}

struct Walk<'a, P> {
    table: &'a SignatureTable,
    w: usize,
    letters: &'a [u8],
    pred: &'a P,
    qs: Vec<usize>,
    ls: Vec<u8>,
    acc: Vec<u64>,
    best: Option<(Vec<usize>, Vec<u8>)>,
}

impl<P> Walk<'_, P>
where
    P: Fn(&[u64]) -> bool + Sync,
{
    #[inline]
    fn push(&mut self, level: usize, q: usize, l: u8) {
        let width = self.table.width;
        let (head, tail) = self.acc.split_at_mut((level + 1) * width);
        let prev = &head[level * width..];
        let e = self.table.entry(q, l);
        for i in 0..width {
            tail[i] = prev[i] ^ e[i];
        }
    }

    fn descend(&mut self, level: usize) {
        let width = self.table.width;
        if level == self.w {
            let sig = &self.acc[self.w * width..(self.w + 1) * width];
            if (self.pred)(sig) {
                let key = (self.qs.clone(), self.ls.clone());
                if self.best.as_ref().is_none_or(|b| key < *b) {
                    self.best = Some(key);
                }
            }
            return;
        }
        let n = self.table.n;
        for q in self.qs[level - 1] + 1..=n - (self.w - level) {
            if let Some((bq, _)) = &self.best {
                // supports are visited in lexicographic order at this level
                if bq[..level] < self.qs[..level]
                    || (bq[..level] == self.qs[..level] && bq[level] < q)
                {
                    return;
                }
            }
            self.qs[level] = q;
            for &l in self.letters {
                self.ls[level] = l;
                self.push(level, q, l);
                self.descend(level + 1);
            }
        }
    }
}

/// Minimum weight of an element of `N(S) \ S`.
pub fn code_distance(code: &StabilizerCode, cap: usize) -> DistanceResult {
    let table = SignatureTable::new(code);
    let found = table.find_min(Purity::Any, cap, |sig| {
        table.syndrome_is_zero(sig) && table.class_words(sig).iter().any(|&w| w != 0)
    });
    match found {
        Some(p) => DistanceResult::exact(p.weight(), cap, vec![p]),
        None => DistanceResult::at_least(cap.min(code.n()) + 1, cap),
    }
}

/// Minimum weight of a normalizer element in `target`, optionally restricted
/// to pure-X or pure-Z operators.
pub fn min_weight_in_class(
    code: &StabilizerCode,
    target: &LogicalClass,
    purity: Purity,
    cap: usize,
) -> DistanceResult {
    if target.is_zero() {
        return DistanceResult::exact(0, cap, vec![PauliOp::identity(code.n())]);
    }
    let table = SignatureTable::new(code);
    let key = table.class_key(target);
    let found = table.find_min(purity, cap, |sig| {
        table.syndrome_is_zero(sig) && table.class_words(sig) == key.as_slice()
    });
    match found {
        Some(p) => DistanceResult::exact(p.weight(), cap, vec![p]),
        None => DistanceResult::at_least(cap.min(code.n()) + 1, cap),
    }
}

/// Minimum weight of a normalizer element whose class is not in `excluded`.
pub fn min_weight_excluding(
    code: &StabilizerCode,
    excluded: &[LogicalClass],
    purity: Purity,
    cap: usize,
) -> DistanceResult {
    let table = SignatureTable::new(code);
    let keys: HashSet<Vec<u64>> = excluded.iter().map(|c| table.class_key(c)).collect();
    if !keys.contains(&table.class_key(&LogicalClass::zero(code.k()))) {
        return DistanceResult::exact(0, cap, vec![PauliOp::identity(code.n())]);
    }
    let found = table.find_min(purity, cap, |sig| {
        table.syndrome_is_zero(sig) && !keys.contains(table.class_words(sig))
    });
    match found {
        Some(p) => DistanceResult::exact(p.weight(), cap, vec![p]),
        None => DistanceResult::at_least(cap.min(code.n()) + 1, cap),
    }
}
