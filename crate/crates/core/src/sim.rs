//! Monte Carlo runs of syndrome-conditioned recovery, tracked entirely in
//! the symplectic picture.
//!
//! Each trial samples an error `E`, looks up its syndrome in a
//! [`RecoveryTable`], draws one of the recovery options, and records the
//! logical class of `correction · E`. Errors outside the verified support
//! are tallied as uncovered and never counted as admissible.
//!
//! Trials are split into fixed chunks; chunk `c` draws from the ChaCha
//! stream `c` of the seed, so results do not depend on the thread count.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOp};
use crate::qet::{AdmissibleSet, RecoveryTable};
use crate::stabilizer::{LogicalClass, StabilizerCode};

const CHUNK: u64 = 8192;

/// A Pauli channel. Probability not assigned by an explicit list goes to
/// the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ChannelModel {
    Explicit(Vec<(PauliOp, f64)>),
    /// Each qubit independently suffers `X`, `Y` or `Z` with probability
    /// `p / 3` each.
    Depolarizing {
        n: usize,
        p: f64,
    },
}

impl ChannelModel {
    /// Every single-qubit error on `n` qubits with probability `1 / 3n`.
    pub fn uniform_single(n: usize) -> Self {
        let p = 1.0 / (3 * n) as f64;
        let ops = (0..n)
            .flat_map(|q| {
                Letter::NON_IDENTITY
                    .into_iter()
                    .map(move |l| PauliOp::single(n, q, l))
            })
            .map(|e| (e, p))
            .collect();
        ChannelModel::Explicit(ops)
    }

    pub fn num_qubits(&self) -> Option<usize> {
        match self {
            ChannelModel::Explicit(ops) => ops.first().map(|(e, _)| e.num_qubits()),
            ChannelModel::Depolarizing { n, .. } => Some(*n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ChannelModel::Explicit(ops) => {
                let n = self.num_qubits();
                let mut total = 0.0;
                for (e, p) in ops {
                    if Some(e.num_qubits()) != n {
                        return Err(Error::InvalidChannel(
                            "operators act on different qubit counts".into(),
                        ));
                    }
                    if !(p.is_finite() && *p >= 0.0) {
                        return Err(Error::InvalidChannel(format!(
                            "bad probability {p} for {e}"
                        )));
                    }
                    total += p;
                }
                if total > 1.0 + 1e-9 {
                    return Err(Error::InvalidChannel(format!(
                        "probabilities sum to {total}"
                    )));
                }
                Ok(())
            }
            ChannelModel::Depolarizing { p, .. } => {
                if !(p.is_finite() && (0.0..=1.0).contains(p)) {
                    return Err(Error::InvalidChannel(format!("bad depolarizing rate {p}")));
                }
                Ok(())
            }
        }
    }

    fn sampler(&self, n: usize) -> Sampler<'_> {
        match self {
            ChannelModel::Explicit(ops) => {
                let mut acc = 0.0;
                let cumulative = ops
                    .iter()
                    .map(|(_, p)| {
                        acc += p;
                        acc
                    })
                    .collect();
                Sampler::Explicit { ops, cumulative, n }
            }
            ChannelModel::Depolarizing { n, p } => Sampler::Depolarizing { n: *n, p: *p },
        }
    }

    /// Probability of a specific operator.
    pub fn probability(&self, e: &PauliOp) -> f64 {
        match self {
            ChannelModel::Explicit(ops) => {
                let listed: f64 = ops.iter().filter(|(o, _)| o == e).map(|(_, p)| p).sum();
                if e.is_identity() {
                    listed + (1.0 - ops.iter().map(|(_, p)| p).sum::<f64>()).max(0.0)
                } else {
                    listed
                }
            }
            ChannelModel::Depolarizing { n, p } => {
                let w = e.weight() as i32;
                (p / 3.0).powi(w) * (1.0 - p).powi(*n as i32 - w)
            }
        }
    }
}

enum Sampler<'a> {
    Explicit {
        ops: &'a [(PauliOp, f64)],
        cumulative: Vec<f64>,
        n: usize,
    },
    Depolarizing {
        n: usize,
        p: f64,
    },
}

impl Sampler<'_> {
    fn sample<R: Rng>(&self, rng: &mut R) -> PauliOp {
        match self {
            Sampler::Explicit { ops, cumulative, n } => {
                let u: f64 = rng.gen();
                match cumulative.iter().position(|&c| u < c) {
                    Some(i) => ops[i].0.clone(),
                    None => PauliOp::identity(*n),
                }
            }
            Sampler::Depolarizing { n, p } => {
                let mut e = PauliOp::identity(*n);
                for q in 0..*n {
                    if rng.gen::<f64>() < *p {
                        e.set(q, Letter::NON_IDENTITY[rng.gen_range(0..3)]);
                    }
                }
                e
            }
        }
    }
}

/// Tallies from [`run_trials`]. Class counts plus `uncovered` equal `trials`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    pub trials: u64,
    /// Residual class counts over covered trials, keyed by logical Pauli
    /// string.
    pub class_counts: BTreeMap<String, u64>,
    /// Covered trials whose residual class is admissible.
    pub admissible: u64,
    /// Covered trials whose residual class is not admissible.
    pub violations: u64,
    /// Sampled errors outside the verified support.
    pub uncovered: u64,
    /// Trials per observed syndrome, keyed by bit string.
    pub syndrome_occupancy: BTreeMap<String, u64>,
}

impl TrialReport {
    fn empty(seed: u64) -> Self {
        TrialReport {
            seed,
            trials: 0,
            class_counts: BTreeMap::new(),
            admissible: 0,
            violations: 0,
            uncovered: 0,
            syndrome_occupancy: BTreeMap::new(),
        }
    }

    fn merge(mut self, other: TrialReport) -> Self {
        self.trials += other.trials;
        self.admissible += other.admissible;
        self.violations += other.violations;
        self.uncovered += other.uncovered;
        for (k, v) in other.class_counts {
            *self.class_counts.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.syndrome_occupancy {
            *self.syndrome_occupancy.entry(k).or_insert(0) += v;
        }
        self
    }

    /// Fraction of all trials that ended in an admissible class.
    pub fn admissibility_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.admissible as f64 / self.trials as f64
    }

    /// Empirical frequencies keyed like [`ExactDistribution::masses`].
    pub fn frequencies(&self) -> BTreeMap<String, f64> {
        let t = self.trials.max(1) as f64;
        let mut out: BTreeMap<String, f64> = self
            .class_counts
            .iter()
            .map(|(k, &v)| (k.clone(), v as f64 / t))
            .collect();
        if self.uncovered > 0 {
            out.insert(UNCOVERED.into(), self.uncovered as f64 / t);
        }
        out
    }
}

impl fmt::Display for TrialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "trials = {}", self.trials)?;
        writeln!(f, "admissible = {}", self.admissible)?;
        writeln!(f, "violations = {}", self.violations)?;
        writeln!(f, "uncovered = {}", self.uncovered)?;
        writeln!(f, "admissibility_rate = {}", self.admissibility_rate())?;
        for (class, count) in &self.class_counts {
            writeln!(f, "class {class} = {count}")?;
        }
        Ok(())
    }
}

/// Key used for the uncovered mass in distributions.
pub const UNCOVERED: &str = "uncovered";

/// Runs `trials` recovery rounds.
pub fn run_trials(
    code: &StabilizerCode,
    m: &AdmissibleSet,
    table: &RecoveryTable,
    model: &ChannelModel,
    trials: u64,
    seed: u64,
) -> Result<TrialReport> {
    model.validate()?;
    if let Some(n) = model.num_qubits() {
        if n != code.n() {
            return Err(Error::DimensionMismatch {
                expected: code.n(),
                found: n,
            });
        }
    }
    let sampler = model.sampler(code.n());
    let chunks = trials.div_ceil(CHUNK);
    let reports: Vec<TrialReport> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(trials - c * CHUNK);
            let mut report = TrialReport::empty(seed);
            let mut classes: HashMap<LogicalClass, u64> = HashMap::new();
            for _ in 0..count {
                report.trials += 1;
                let e = sampler.sample(&mut rng);
                let s = code.syndrome_unchecked(&e);
                *report.syndrome_occupancy.entry(s.to_string()).or_insert(0) += 1;
                let entry = match table.lookup(&s) {
                    Some(entry) if table.covers(&e) => entry,
                    _ => {
                        report.uncovered += 1;
                        continue;
                    }
                };
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                let option = entry
                    .options
                    .iter()
                    .find(|o| {
                        acc += o.probability;
                        u < acc
                    })
                    .unwrap_or_else(|| entry.options.last().expect("nonempty options"));
                let residual = option.correction.mul_unchecked(&e);
                let class = code.logical_pattern(&residual);
                debug_assert!(code.syndrome_unchecked(&residual).is_zero());
                if m.contains(&class) {
                    report.admissible += 1;
                } else {
                    report.violations += 1;
                }
                *classes.entry(class).or_insert(0) += 1;
            }
            for (class, v) in classes {
                *report.class_counts.entry(class.to_string()).or_insert(0) += v;
            }
            report
        })
        .collect();
    Ok(reports
        .into_iter()
        .fold(TrialReport::empty(seed), TrialReport::merge))
}

/// Closed-form residual distribution: every covered error contributes its
/// channel probability, split over the recovery options; the rest of the
/// mass is uncovered.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactDistribution {
    pub masses: BTreeMap<String, f64>,
}

pub fn exact_class_distribution(
    code: &StabilizerCode,
    table: &RecoveryTable,
    model: &ChannelModel,
) -> Result<ExactDistribution> {
    model.validate()?;
    let mut masses: BTreeMap<String, f64> = BTreeMap::new();
    let mut covered = 0.0;
    for e in table.support() {
        let p = model.probability(e);
        if p == 0.0 {
            continue;
        }
        covered += p;
        let entry = table
            .lookup(&code.syndrome(e)?)
            .expect("covered errors have entries");
        for o in &entry.options {
            let class = code.logical_pattern(&o.correction.mul_unchecked(e));
            *masses.entry(class.to_string()).or_insert(0.0) += p * o.probability;
        }
    }
    let rest = 1.0 - covered;
    if rest > 1e-12 {
        masses.insert(UNCOVERED.into(), rest);
    }
    Ok(ExactDistribution { masses })
}

/// Total-variation distance between empirical and exact distributions.
pub fn total_variation(report: &TrialReport, exact: &ExactDistribution) -> f64 {
    let freq = report.frequencies();
    let keys: std::collections::BTreeSet<&String> =
        freq.keys().chain(exact.masses.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| {
            (freq.get(k).copied().unwrap_or(0.0) - exact.masses.get(k).copied().unwrap_or(0.0))
                .abs()
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{table1, table1_admissible, table2, table2_admissible};
    use crate::pauli::errors_up_to_weight;
    use crate::qet::{build_recovery, check_qet};

    fn setup(code: &StabilizerCode, m: &AdmissibleSet) -> RecoveryTable {
        let errors = errors_up_to_weight(code.n(), 1);
        let verdict = check_qet(code, m, &errors).unwrap();
        build_recovery(code, m, &verdict, None).unwrap()
    }

    #[test]
    fn table1_single_errors_are_always_admissible() {
        let code = table1();
        let m = table1_admissible();
        let table = setup(&code, &m);
        let model = ChannelModel::uniform_single(7);
        let r = run_trials(&code, &m, &table, &model, 20000, 3).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.uncovered, 0);
        assert_eq!(r.admissibility_rate(), 1.0);
        assert!(r.class_counts.keys().all(|k| k == "II" || k == "ZI"));
        let exact = exact_class_distribution(&code, &table, &model).unwrap();
        assert!(total_variation(&r, &exact) < 0.02);
    }

    #[test]
    fn identity_channel() {
        let code = table1();
        let m = table1_admissible();
        let table = setup(&code, &m);
        let r = run_trials(&code, &m, &table, &ChannelModel::Explicit(vec![]), 1000, 1).unwrap();
        assert_eq!(r.admissible, 1000);
        let exact =
            exact_class_distribution(&code, &table, &ChannelModel::Explicit(vec![])).unwrap();
        let total: f64 = exact.masses.values().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(total_variation(&r, &exact) < 0.06);
    }

    #[test]
    fn table2_never_leaves_z1z2() {
        let code = table2();
        let m = table2_admissible();
        let table = setup(&code, &m);
        let r = run_trials(
            &code,
            &m,
            &table,
            &ChannelModel::uniform_single(6),
            20000,
            9,
        )
        .unwrap();
        assert_eq!(r.violations, 0);
        assert!(!r.class_counts.contains_key("ZZ"));
    }

    #[test]
    fn independent_of_thread_count() {
        let code = table1();
        let m = table1_admissible();
        let table = setup(&code, &m);
        let model = ChannelModel::Depolarizing { n: 7, p: 0.05 };
        let a = run_trials(&code, &m, &table, &model, 30000, 5).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| run_trials(&code, &m, &table, &model, 30000, 5).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.class_counts.values().sum::<u64>() + a.uncovered, a.trials);
    }

    #[test]
    fn depolarizing_uncovered_rate() {
        let code = table1();
        let m = table1_admissible();
        let table = setup(&code, &m);
        let (n, p) = (7, 0.05f64);
        let r = run_trials(
            &code,
            &m,
            &table,
            &ChannelModel::Depolarizing { n, p },
            100000,
            11,
        )
        .unwrap();
        let expected = 1.0 - (1.0 - p).powi(n as i32) - n as f64 * p * (1.0 - p).powi(n as i32 - 1);
        let sigma = (expected * (1.0 - expected) / r.trials as f64).sqrt();
        let observed = r.uncovered as f64 / r.trials as f64;
        assert!(
            (observed - expected).abs() < 3.0 * sigma,
            "{observed} vs {expected}"
        );
        let exact =
            exact_class_distribution(&code, &table, &ChannelModel::Depolarizing { n, p }).unwrap();
        assert!((exact.masses[UNCOVERED] - expected).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_channels() {
        let e = PauliOp::single(2, 0, Letter::X);
        assert!(
            ChannelModel::Explicit(vec![(e.clone(), 0.7), (e.clone(), 0.7)])
                .validate()
                .is_err()
        );
        assert!(ChannelModel::Explicit(vec![(e, -0.1)]).validate().is_err());
        assert!(ChannelModel::Depolarizing { n: 2, p: 1.5 }
            .validate()
            .is_err());
    }
}
