//! Text format for stabilizer codes.
//!
//! ```text
//! # comment
//! 7 2
//! XXYYZIZ
//! ...            (n - k generator lines)
//! XL
//! IXXIXII        (k lines)
//! ZL
//! ZZIIIII        (k lines)
//! ```
//!
//! When the `XL`/`ZL` sections are absent a logical basis is derived from
//! the standard form.

use crate::error::{Error, Result};
use crate::pauli::PauliOp;

use super::StabilizerCode;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_op(line: usize, s: &str, n: usize) -> Result<PauliOp> {
    let p: PauliOp = s.parse().map_err(|e| match e {
        Error::PauliParse { position, found } => parse_err(
            line,
            format!(
                "invalid Pauli character {found:?} at column {}",
                position + 1
            ),
        ),
        other => parse_err(line, other.to_string()),
    })?;
    if p.num_qubits() != n {
        return Err(parse_err(
            line,
            format!("expected {n} qubits, found {}", p.num_qubits()),
        ));
    }
    Ok(p)
}

pub fn parse_code(text: &str) -> Result<StabilizerCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing \"n k\" header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(parse_err(hl, "header must be \"n k\""));
    }
    let n: usize = nums[0]
        .parse()
        .map_err(|_| parse_err(hl, format!("bad n {:?}", nums[0])))?;
    let k: usize = nums[1]
        .parse()
        .map_err(|_| parse_err(hl, format!("bad k {:?}", nums[1])))?;
    if k > n || n == 0 {
        return Err(parse_err(
            hl,
            format!("need 0 <= k <= n and n >= 1, got n={n} k={k}"),
        ));
    }

    enum Section {
        Gens,
        X,
        Z,
    }
    let mut section = Section::Gens;
    let mut gens = Vec::new();
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    let mut last_line = hl;
    for (ln, line) in lines {
        last_line = ln;
        match line {
            "XL" => {
                section = Section::X;
                continue;
            }
            "ZL" => {
                section = Section::Z;
                continue;
            }
            _ => {}
        }
        let op = parse_op(ln, line, n)?;
        match section {
            Section::Gens => gens.push(op),
            Section::X => lx.push(op),
            Section::Z => lz.push(op),
        }
    }
    if gens.len() != n - k {
        return Err(parse_err(
            last_line,
            format!("expected {} generators, found {}", n - k, gens.len()),
        ));
    }
    if lx.is_empty() && lz.is_empty() {
        if gens.is_empty() {
            let lx = (0..n).map(|q| PauliOp::x_on(n, &[q])).collect();
            let lz = (0..n).map(|q| PauliOp::z_on(n, &[q])).collect();
            return StabilizerCode::new(Vec::new(), lx, lz);
        }
        return StabilizerCode::from_generators(gens);
    }
    if lx.len() != k || lz.len() != k {
        return Err(parse_err(
            last_line,
            format!(
                "expected {k} XL and {k} ZL lines, found {} and {}",
                lx.len(),
                lz.len()
            ),
        ));
    }
    let code = StabilizerCode::from_parts(n, gens, lx, lz);
    let diag = code.validate();
    if diag.is_ok() {
        Ok(code)
    } else {
        Err(Error::InvalidCode(diag))
    }
}

pub fn render_code(code: &StabilizerCode) -> String {
    let mut out = format!("{} {}\n", code.n(), code.k());
    for g in code.generators() {
        out.push_str(&format!("{g}\n"));
    }
    if code.k() > 0 {
        out.push_str("XL\n");
        for p in code.logical_x() {
            out.push_str(&format!("{p}\n"));
        }
        out.push_str("ZL\n");
        for p in code.logical_z() {
            out.push_str(&format!("{p}\n"));
        }
    }
    out
}
