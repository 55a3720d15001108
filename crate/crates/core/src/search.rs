//! Searches over standard-form stabilizer codes for transmutation
//! properties.
//!
//! Every candidate is a point of the standard-form parameter space: a rank
//! `r` and the free bits of the blocks `A1, A2, upper(B), C, E`. Exhaustive
//! mode walks the space in a fixed order (increasing `r`, then the free bits
//! as a binary counter); random mode draws `r` uniformly and then every free
//! bit uniformly, with trial `t` using its own ChaCha stream of the seed.
//! Candidates are evaluated in parallel chunks and merged in index order,
//! so results depend only on the `SearchSpec`.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::pauli::{errors_up_to_weight, PauliOp};
use crate::qet::{relabel_search, AdmissibleSet, Verdict};
use crate::stabilizer::{StabilizerCode, StandardFormParams, SymplecticBasis};

const CHUNK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    Random {
        seed: u64,
        trials: u64,
    },
    /// Walks indices `start..` of the parameter space, at most `limit` of
    /// them.
    Exhaustive {
        start: u64,
        limit: Option<u64>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchSpec {
    pub n: usize,
    pub k: usize,
    /// Target admissible pattern, in the coordinates of the relabeled basis.
    pub admissible: AdmissibleSet,
    /// Errors of weight up to this must satisfy the transmutation conditions.
    pub error_weight: usize,
    /// Also require every weight-1 Pauli to have a nonzero syndrome.
    pub require_detection: bool,
    pub mode: SearchMode,
    /// Stop after this many hits.
    pub max_hits: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchHit {
    /// Trial number or parameter-space index.
    pub index: u64,
    pub r: usize,
    /// The code with its relabeled logical basis.
    pub code: StabilizerCode,
    pub basis: SymplecticBasis,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub hits: Vec<SearchHit>,
    pub examined: u64,
    /// Size of the parameter space (exhaustive mode).
    pub space: Option<u64>,
    /// First index not yet examined.
    pub next_index: u64,
    /// Whether the requested range was fully examined.
    pub complete: bool,
}

/// Size of the standard-form parameter space for `[n, k]` codes.
pub fn parameter_space_size(n: usize, k: usize) -> Result<u64> {
    if k > n {
        return Err(Error::Unsupported(format!("k = {k} exceeds n = {n}")));
    }
    let mut total: u64 = 0;
    for r in 0..=n - k {
        let bits = StandardFormParams::free_bits(n, k, r);
        let block = 1u64.checked_shl(bits as u32).filter(|_| bits < 63);
        total = block.and_then(|b| total.checked_add(b)).ok_or_else(|| {
            Error::Unsupported(format!("parameter space for [{n}, {k}] is too large"))
        })?;
    }
    Ok(total)
}

/// The parameters at position `index` of the exhaustive order.
pub fn params_at(n: usize, k: usize, mut index: u64) -> Option<StandardFormParams> {
    for r in 0..=n - k {
        let bits = StandardFormParams::free_bits(n, k, r);
        let block = 1u64 << bits;
        if index < block {
            let v = BitVec::from_bools((0..bits).map(|b| (index >> b) & 1 == 1));
            return Some(StandardFormParams::from_bits(n, k, r, &v));
        }
        index -= block;
    }
    None
}

/// Parameters for random trial `t`.
pub fn params_for_trial(n: usize, k: usize, seed: u64, t: u64) -> StandardFormParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    StandardFormParams::random(n, k, &mut rng)
}

struct Evaluator<'a> {
    spec: &'a SearchSpec,
    singles: Vec<PauliOp>,
    errors: Vec<PauliOp>,
}

impl<'a> Evaluator<'a> {
    fn new(spec: &'a SearchSpec) -> Self {
        let singles = if spec.require_detection {
            errors_up_to_weight(spec.n, 1)
        } else {
            Vec::new()
        };
        Evaluator {
            spec,
            singles,
            errors: errors_up_to_weight(spec.n, spec.error_weight),
        }
    }

    fn evaluate(&self, index: u64, params: &StandardFormParams) -> Result<Option<SearchHit>> {
        let code = params.build();
        if self.spec.require_detection
            && self
                .singles
                .iter()
                .skip(1)
                .any(|p| code.syndrome_unchecked(p).is_zero())
        {
            return Ok(None);
        }
        Ok(
            relabel_search(&code, &self.spec.admissible, &self.errors)?.map(
                |(code, verdict, basis)| SearchHit {
                    index,
                    r: params.r,
                    code,
                    basis,
                    verdict,
                },
            ),
        )
    }
}

fn check_spec(spec: &SearchSpec) -> Result<()> {
    if spec.k > spec.n || spec.k == 0 {
        return Err(Error::Unsupported(format!(
            "need 1 <= k <= n, got n = {}, k = {}",
            spec.n, spec.k
        )));
    }
    if spec.admissible.k() != spec.k {
        return Err(Error::LogicalCountMismatch {
            code: spec.k,
            set: spec.admissible.k(),
        });
    }
    if spec.k > 3 {
        return Err(Error::RelabelTooLarge(spec.k));
    }
    if matches!(spec.mode, SearchMode::Exhaustive { .. }) && spec.n > 12 {
        return Err(Error::Unsupported(
            "exhaustive search is limited to n <= 12".into(),
        ));
    }
    Ok(())
}

/// Progress after each chunk: examined so far, hits so far, next index.
pub type Progress<'a> = dyn FnMut(u64, usize, u64) + 'a;

/// Runs the search, reporting progress after every chunk.
pub fn run_search_with(spec: &SearchSpec, progress: &mut Progress<'_>) -> Result<SearchReport> {
    check_spec(spec)?;
    let eval = Evaluator::new(spec);
    let (start, end, space) = match spec.mode {
        SearchMode::Random { trials, .. } => (0, trials, None),
        SearchMode::Exhaustive { start, limit } => {
            let size = parameter_space_size(spec.n, spec.k)?;
            let end = limit.map_or(size, |l| start.saturating_add(l).min(size));
            (start.min(size), end, Some(size))
        }
    };
    let mut hits = Vec::new();
    let mut next = start;
    while next < end {
        let stop = (next + CHUNK).min(end);
        let found: Vec<SearchHit> = (next..stop)
            .into_par_iter()
            .map(|i| {
                let params = match spec.mode {
                    SearchMode::Random { seed, .. } => params_for_trial(spec.n, spec.k, seed, i),
                    SearchMode::Exhaustive { .. } => {
                        params_at(spec.n, spec.k, i).expect("index in range")
                    }
                };
                eval.evaluate(i, &params)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        for hit in found {
            hits.push(hit);
            if spec.max_hits.is_some_and(|m| hits.len() >= m) {
                let last = hits.last().expect("just pushed").index;
                progress(last + 1 - start, hits.len(), last + 1);
                return Ok(SearchReport {
                    hits,
                    examined: last + 1 - start,
                    space,
                    next_index: last + 1,
                    complete: false,
                });
            }
        }
        next = stop;
        progress(next - start, hits.len(), next);
    }
    Ok(SearchReport {
        hits,
        examined: end - start,
        space,
        next_index: end,
        complete: true,
    })
}

pub fn run_search(spec: &SearchSpec) -> Result<SearchReport> {
    run_search_with(spec, &mut |_, _, _| {})
}

/// Resumable state of an exhaustive search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub k: usize,
    pub next_index: u64,
    pub hit_indices: Vec<u64>,
}

/// Exhaustive search that resumes from and updates a checkpoint file.
pub fn run_checkpointed(spec: &SearchSpec, path: &Path) -> Result<SearchReport> {
    let SearchMode::Exhaustive { limit, .. } = spec.mode else {
        return Err(Error::Unsupported(
            "checkpoints apply to exhaustive mode".into(),
        ));
    };
    let mut state = match fs::read_to_string(path) {
        Ok(text) => {
            let cp: Checkpoint = serde_json::from_str(&text)?;
            if cp.n != spec.n || cp.k != spec.k {
                return Err(Error::Unsupported(format!(
                    "checkpoint is for n = {}, k = {}",
                    cp.n, cp.k
                )));
            }
            cp
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Checkpoint {
            n: spec.n,
            k: spec.k,
            next_index: 0,
            hit_indices: Vec::new(),
        },
        Err(e) => return Err(e.into()),
    };
    let resumed = SearchSpec {
        mode: SearchMode::Exhaustive {
            start: state.next_index,
            limit,
        },
        ..spec.clone()
    };
    let mut save_error = None;
    let report = run_search_with(&resumed, &mut |_, _, next| {
        let cp = Checkpoint {
            next_index: next,
            ..state.clone()
        };
        if let Err(e) = serde_json::to_string(&cp)
            .map_err(Error::from)
            .and_then(|s| Ok(fs::write(path, s)?))
        {
            save_error.get_or_insert(e);
        }
    })?;
    if let Some(e) = save_error {
        return Err(e);
    }
    state.next_index = report.next_index;
    state
        .hit_indices
        .extend(report.hits.iter().map(|h| h.index));
    fs::write(path, serde_json::to_string_pretty(&state)?)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qet::check_general_qet;
    use crate::stabilizer::LogicalClass;

    fn table2_pattern() -> AdmissibleSet {
        AdmissibleSet::new(2, [LogicalClass::z(2, 0), LogicalClass::z(2, 1)]).unwrap()
    }

    fn spec(n: usize, mode: SearchMode) -> SearchSpec {
        SearchSpec {
            n,
            k: 2,
            admissible: table2_pattern(),
            error_weight: 1,
            require_detection: true,
            mode,
            max_hits: Some(2),
        }
    }

    #[test]
    fn space_size_and_indexing() {
        assert_eq!(
            parameter_space_size(5, 2).unwrap(),
            64 + 2048 + 32768 + 262144
        );
        let p = params_at(5, 2, 64).unwrap();
        assert_eq!(p.r, 1);
        assert!(params_at(5, 2, parameter_space_size(5, 2).unwrap()).is_none());
        for i in [0, 63, 64, 5000, 297000] {
            assert!(params_at(5, 2, i).unwrap().build().validate().is_ok());
        }
    }

    #[test]
    fn random_replay_is_deterministic() {
        let s = spec(
            6,
            SearchMode::Random {
                seed: 7,
                trials: 20000,
            },
        );
        let a = run_search(&s).unwrap();
        let b = run_search(&s).unwrap();
        let ia: Vec<u64> = a.hits.iter().map(|h| h.index).collect();
        let ib: Vec<u64> = b.hits.iter().map(|h| h.index).collect();
        assert_eq!(ia, ib);
        assert!(!a.hits.is_empty(), "no [6,2] hit in 20000 trials");
        for h in &a.hits {
            assert!(h.code.validate().is_ok());
            let errors = errors_up_to_weight(6, 1);
            assert!(
                check_general_qet(&h.code, &s.admissible, &errors)
                    .unwrap()
                    .pass
            );
        }
    }

    #[test]
    fn exhaustive_range_and_checkpoint() {
        let dir = std::env::temp_dir().join(format!("qet-search-{}", std::process::id()));
        let _ = fs::remove_file(&dir);
        let s = SearchSpec {
            max_hits: None,
            ..spec(
                5,
                SearchMode::Exhaustive {
                    start: 0,
                    limit: Some(5000),
                },
            )
        };
        let first = run_checkpointed(&s, &dir).unwrap();
        assert_eq!(first.next_index, 5000);
        let second = run_checkpointed(&s, &dir).unwrap();
        assert_eq!(second.next_index, 10000);
        let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(&dir).unwrap()).unwrap();
        assert_eq!(cp.next_index, second.next_index);
        fs::remove_file(&dir).unwrap();
    }

    #[test]
    fn rejects_bad_specs() {
        let mut s = spec(5, SearchMode::Random { seed: 0, trials: 1 });
        s.k = 4;
        assert!(run_search(&s).is_err());
        let s = spec(
            13,
            SearchMode::Exhaustive {
                start: 0,
                limit: None,
            },
        );
        assert!(run_search(&s).is_err());
    }
}
