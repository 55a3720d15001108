//! Resolution of command-line arguments to codes, admissible sets, unit
//! cells, classical codes and channel models.
//!
//! A `--code` argument is read as a file when one exists at that path and
//! as a catalog name otherwise. Admissible sets and channels follow the same
//! rule with literal text as the fallback.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qet_core::catalog::{by_name, cell_by_name};
use qet_core::classical::{cyclic_code, dual, from_shifts, LinearCode, Poly2};
use qet_core::f2::BitVec;
use qet_core::lattice::{parse_unit_cell, UnitCellCode};
use qet_core::pauli::PauliOp;
use qet_core::qet::AdmissibleSet;
use qet_core::sim::ChannelModel;
use qet_core::stabilizer::{parse_code, StabilizerCode};

pub fn read_file(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

pub fn code(arg: &str) -> Result<StabilizerCode> {
    if Path::new(arg).is_file() {
        return parse_code(&read_file(arg)?).with_context(|| format!("in {arg}"));
    }
    Ok(by_name(arg)?.code)
}

/// The admissible set from a file, a literal such as `ZI,IZ`, or the
/// catalog default for `code_arg` when `arg` is `default`.
pub fn admissible(arg: &str, code_arg: &str, k: usize) -> Result<AdmissibleSet> {
    if arg == "default" {
        return match by_name(code_arg).ok().and_then(|e| e.admissible) {
            Some(m) => Ok(m),
            None => bail!("{code_arg} has no catalog admissible set"),
        };
    }
    let text = if Path::new(arg).is_file() {
        read_file(arg)?
    } else {
        arg.to_string()
    };
    AdmissibleSet::parse(&text, k).with_context(|| format!("admissible set {arg:?}"))
}

pub fn cell(arg: &str) -> Result<UnitCellCode> {
    if Path::new(arg).is_file() {
        return parse_unit_cell(&read_file(arg)?).with_context(|| format!("in {arg}"));
    }
    match cell_by_name(arg) {
        Some(c) => Ok(c),
        None => bail!("{arg:?} is neither a file nor a catalog unit cell"),
    }
}

/// Classical codes:
/// - `cyclic:N:POLY` generated by a divisor of `x^N + 1`
/// - `shifts:N:POLY:COUNT` spanned by the first `COUNT` cyclic shifts
/// - `dual:LIN` the dual of another classical code
/// - a file with one generator row of 0/1 characters per line
pub fn classical(arg: &str) -> Result<LinearCode> {
    if let Some(rest) = arg.strip_prefix("dual:") {
        return Ok(dual(&classical(rest)?));
    }
    let parts: Vec<&str> = arg.split(':').collect();
    let num = |s: &str| {
        s.parse::<usize>()
            .with_context(|| format!("bad number {s:?} in {arg:?}"))
    };
    match parts.as_slice() {
        ["cyclic", n, p] => Ok(cyclic_code(num(n)?, &p.parse::<Poly2>()?)?),
        ["shifts", n, p, count] => Ok(from_shifts(num(n)?, &p.parse::<Poly2>()?, num(count)?)?),
        _ if Path::new(arg).is_file() => {
            let text = read_file(arg)?;
            let mut rows = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let row =
                    BitVec::from_bit_str(line).with_context(|| format!("{arg}: line {}", i + 1))?;
                rows.push(row);
            }
            let Some(n) = rows.first().map(BitVec::len) else {
                bail!("{arg}: no rows")
            };
            if let Some(bad) = rows.iter().position(|r| r.len() != n) {
                bail!(
                    "{arg}: row {} has length {}, expected {n}",
                    bad + 1,
                    rows[bad].len()
                );
            }
            Ok(LinearCode::from_spanning_rows(n, rows))
        }
        _ => bail!("unrecognized classical code {arg:?}"),
    }
}

/// Channels:
/// - `depolarizing:P`
/// - `single` for the uniform exactly-one-error channel
/// - a file of `PAULI PROBABILITY` lines
pub fn channel(arg: &str, n: usize) -> Result<ChannelModel> {
    if let Some(p) = arg.strip_prefix("depolarizing:") {
        let p: f64 = p.parse().with_context(|| format!("bad rate {p:?}"))?;
        return Ok(ChannelModel::Depolarizing { n, p });
    }
    if arg == "single" {
        return Ok(ChannelModel::uniform_single(n));
    }
    if !Path::new(arg).is_file() {
        bail!("unrecognized channel {arg:?}");
    }
    let mut ops = Vec::new();
    for (i, line) in read_file(arg)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (op, p) = line
            .split_once(char::is_whitespace)
            .with_context(|| format!("{arg}: line {}: expected `PAULI PROBABILITY`", i + 1))?;
        let op: PauliOp = op
            .parse()
            .with_context(|| format!("{arg}: line {}", i + 1))?;
        let p: f64 = p
            .trim()
            .parse()
            .with_context(|| format!("{arg}: line {}: bad probability", i + 1))?;
        ops.push((op, p));
    }
    Ok(ChannelModel::Explicit(ops))
}
