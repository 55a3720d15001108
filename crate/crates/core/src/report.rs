//! Reports in two forms: `key = value` text and JSON.
//!
//! The keyed fields `verdict`, `witness`, `d`, `d_eff`, `cap` and `seed`
//! have fixed names; anything else is kept as free-form notes. Both forms
//! parse back to the same [`Report`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qet::Verdict;
use crate::stabilizer::{Bound, DistanceResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: Option<Outcome>,
    /// Pauli strings certifying the verdict or distance.
    #[serde(default)]
    pub witness: Vec<String>,
    pub d: Option<Bound>,
    pub d_eff: Option<Bound>,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
}

const KEYS: [&str; 6] = ["verdict", "witness", "d", "d_eff", "cap", "seed"];

impl Report {
    pub fn from_verdict(v: &Verdict) -> Self {
        let mut r = Report {
            verdict: Some(if v.pass { Outcome::Pass } else { Outcome::Fail }),
            ..Default::default()
        };
        if let Some((a, b)) = &v.witness {
            r.witness = vec![a.to_string(), b.to_string()];
        }
        if let Some(c) = &v.witness_class {
            r.notes.insert("witness_class".into(), c.to_string());
        }
        r
    }

    pub fn from_distance(d: &DistanceResult) -> Self {
        Report {
            d: Some(d.bound),
            cap: Some(d.cap),
            witness: d.witness.iter().map(|p| p.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn from_effective_distance(d: &DistanceResult) -> Self {
        Report {
            d_eff: Some(d.bound),
            cap: Some(d.cap),
            witness: d.witness.iter().map(|p| p.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn note(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.notes.insert(key.to_string(), value.to_string());
        self
    }

    /// True when a distance field is only a lower bound.
    pub fn is_bound(&self) -> bool {
        [self.d, self.d_eff].iter().flatten().any(|b| !b.is_exact())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let mut r = Report::default();
        for (ln, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse {
                line: ln + 1,
                message,
            };
            let (key, value) = line
                .split_once(" = ")
                .ok_or_else(|| bad(format!("expected `key = value`: {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "verdict" => {
                    r.verdict = Some(match value {
                        "pass" => Outcome::Pass,
                        "fail" => Outcome::Fail,
                        _ => return Err(bad(format!("bad verdict {value:?}"))),
                    })
                }
                "witness" => r.witness = value.split_whitespace().map(str::to_string).collect(),
                "d" => {
                    r.d = Some(
                        parse_bound(value).ok_or_else(|| bad(format!("bad distance {value:?}")))?,
                    )
                }
                "d_eff" => {
                    r.d_eff = Some(
                        parse_bound(value).ok_or_else(|| bad(format!("bad distance {value:?}")))?,
                    )
                }
                "cap" => {
                    r.cap = Some(
                        value
                            .parse()
                            .map_err(|_| bad(format!("bad cap {value:?}")))?,
                    )
                }
                "seed" => {
                    r.seed = Some(
                        value
                            .parse()
                            .map_err(|_| bad(format!("bad seed {value:?}")))?,
                    )
                }
                _ => {
                    r.notes.insert(key.to_string(), value.to_string());
                }
            }
        }
        Ok(r)
    }
}

fn parse_bound(s: &str) -> Option<Bound> {
    match s.strip_prefix(">=") {
        Some(rest) => rest.trim().parse().ok().map(Bound::AtLeast),
        None => s.parse().ok().map(Bound::Exact),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.verdict {
            writeln!(
                f,
                "verdict = {}",
                if v == Outcome::Pass { "pass" } else { "fail" }
            )?;
        }
        if !self.witness.is_empty() {
            writeln!(f, "witness = {}", self.witness.join(" "))?;
        }
        if let Some(d) = self.d {
            writeln!(f, "d = {d}")?;
        }
        if let Some(d) = self.d_eff {
            writeln!(f, "d_eff = {d}")?;
        }
        if let Some(c) = self.cap {
            writeln!(f, "cap = {c}")?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed = {s}")?;
        }
        for (k, v) in &self.notes {
            debug_assert!(!KEYS.contains(&k.as_str()));
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bound() -> impl Strategy<Value = Option<Bound>> {
        prop_oneof![
            Just(None),
            (0usize..50).prop_map(|v| Some(Bound::Exact(v))),
            (0usize..50).prop_map(|v| Some(Bound::AtLeast(v))),
        ]
    }

    proptest! {
        #[test]
        fn round_trips(
            verdict in prop_oneof![Just(None), Just(Some(Outcome::Pass)), Just(Some(Outcome::Fail))],
            witness in proptest::collection::vec("[IXYZ]{1,8}", 0..3),
            d in bound(),
            d_eff in bound(),
            cap in proptest::option::of(0usize..100),
            seed in proptest::option::of(any::<u64>()),
            notes in proptest::collection::btree_map("[a-z][a-z_]{0,6}x", "[A-Za-z0-9]{1,8}", 0..3),
        ) {
            let r = Report { verdict, witness, d, d_eff, cap, seed, notes };
            prop_assert_eq!(&Report::parse_text(&r.to_string()).unwrap(), &r);
            prop_assert_eq!(&Report::from_json(&r.to_json().unwrap()).unwrap(), &r);
        }
    }

    #[test]
    fn text_shape() {
        let r = Report {
            d_eff: Some(Bound::Exact(3)),
            cap: Some(3),
            ..Default::default()
        };
        assert_eq!(r.to_string(), "d_eff = 3\ncap = 3\n");
        let b = Report {
            d: Some(Bound::AtLeast(6)),
            ..Default::default()
        };
        assert!(b.is_bound());
        assert_eq!(b.to_string(), "d = >= 6\n");
        assert!(matches!(
            Report::parse_text("d 3"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(Report::parse_text("verdict = maybe").is_err());
    }
}
