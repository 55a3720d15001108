//! Named codes with their expected properties.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical::{asymmetric_distances, css17 as build_css17, CssCode};
use crate::error::{Error, Result};
use crate::lattice::{compact_encoding, eq16_cell, eq20_cell, toric_code, UnitCellCode};
use crate::pauli::PauliOp;
use crate::qet::{effective_distance, AdmissibleSet};
use crate::stabilizer::{code_distance, min_weight_in_class, LogicalClass, Purity, StabilizerCode};

fn ops(rows: &[&str]) -> Vec<PauliOp> {
    rows.iter()
        .map(|s| s.parse().expect("catalog literal"))
        .collect()
}

fn literal(gens: &[&str], lx: &[&str], lz: &[&str]) -> StabilizerCode {
    StabilizerCode::new(ops(gens), ops(lx), ops(lz)).expect("catalog code is valid")
}

/// The `[7, 2]` code whose single-qubit errors transmute to `⟨Z̄_1⟩`.
pub fn table1() -> StabilizerCode {
    literal(
        &["XXYYZIZ", "IZXYYXY", "IIIIIZZ", "ZZIIZIZ", "ZZZZIII"],
        &["IXXIXII", "IIXXIIZ"],
        &["ZZIIIII", "ZIIZIIZ"],
    )
}

/// The `[6, 2]` code whose single-qubit errors transmute to `{I, Z̄_1, Z̄_2}`.
pub fn table2() -> StabilizerCode {
    literal(
        &["YXZIXX", "ZIXXXX", "ZZZZII", "ZZIIZZ"],
        &["IXIXXI", "ZIZIIZ"],
        &["ZZIIII", "IIIIXX"],
    )
}

/// [`table1`] with `Z̄_1` adjoined to the stabilizer: a `[7, 1, 3]` code.
pub fn table1_z1_stabilized() -> StabilizerCode {
    let t = table1();
    let z1 = t.logical_z()[0].clone();
    t.with_stabilized_logicals(&[z1])
        .expect("Z̄1 commutes with S")
}

/// The cyclic `[5, 1, 3]` code.
pub fn five_qubit() -> StabilizerCode {
    literal(
        &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
        &["XXXXX"],
        &["ZZZZZ"],
    )
}

/// Bit-flip repetition code: `Z_i Z_{i+1}` checks, `X̄ = X^n`, `Z̄ = Z_0`.
pub fn repetition(n: usize) -> Result<StabilizerCode> {
    if n == 0 {
        return Err(Error::Unsupported("repetition code needs n >= 1".into()));
    }
    let gens = (0..n - 1).map(|i| PauliOp::z_on(n, &[i, i + 1])).collect();
    let all: Vec<usize> = (0..n).collect();
    StabilizerCode::new(
        gens,
        vec![PauliOp::x_on(n, &all)],
        vec![PauliOp::z_on(n, &[0])],
    )
}

/// The `[1, 1]` code with no stabilizers.
pub fn trivial_qubit() -> StabilizerCode {
    literal(&[], &["X"], &["Z"])
}

/// A catalog code together with its admissible set, where one is defined.
#[derive(Clone, Debug)]
pub struct Entry {
    pub code: StabilizerCode,
    pub admissible: Option<AdmissibleSet>,
}

/// Admissible classes `⟨Z̄_1⟩` for [`table1`].
pub fn table1_admissible() -> AdmissibleSet {
    AdmissibleSet::generated_by(2, &[LogicalClass::z(2, 0)]).expect("k = 2")
}

/// `{I, Z̄_1, Z̄_2}` for [`table2`].
pub fn table2_admissible() -> AdmissibleSet {
    AdmissibleSet::new(2, [LogicalClass::z(2, 0), LogicalClass::z(2, 1)]).expect("k = 2")
}

/// `{I, X̄_1, X̄_2}` for the 17-qubit CSS code.
pub fn css17_admissible() -> AdmissibleSet {
    AdmissibleSet::new(2, [LogicalClass::x(2, 0), LogicalClass::x(2, 1)]).expect("k = 2")
}

/// Names accepted by [`by_name`], with a short description.
pub const NAMES: &[(&str, &str)] = &[
    (
        "table1",
        "[7,2] code transmuting single-qubit errors to <Z1>",
    ),
    (
        "table2",
        "[6,2] code transmuting single-qubit errors to {I, Z1, Z2}",
    ),
    ("table1-z1", "[7,1,3] code from table1 with Z1 stabilized"),
    (
        "css17",
        "[17,2,3/5] CSS code from the [17,9,5] quadratic-residue code",
    ),
    (
        "eq16:LX,LY",
        "three-qubit-cell lattice code on an LX x LY torus (default 4,4)",
    ),
    (
        "eq20:LX,LY",
        "two-qubit-cell lattice code on an LX x LY torus (default 4,4)",
    ),
    (
        "compact:L",
        "compact fermionic encoding on an L x L cell torus (L even >= 4)",
    ),
    ("toric:L", "square-lattice toric code on an L x L torus"),
    ("rep:N", "bit-flip repetition code"),
    ("inner-5q", "cyclic [5,1,3] code"),
    ("trivial", "[1,1] code without stabilizers"),
];

fn parse_dims(arg: Option<&str>, default: (usize, usize)) -> Result<(usize, usize)> {
    let Some(arg) = arg else { return Ok(default) };
    let parts: Vec<&str> = arg.split(',').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Unsupported(format!("bad size {s:?}")))
    };
    match parts.as_slice() {
        [a] => {
            let a = num(a)?;
            Ok((a, a))
        }
        [a, b] => Ok((num(a)?, num(b)?)),
        _ => Err(Error::Unsupported(format!("bad torus size {arg:?}"))),
    }
}

/// Looks up a catalog code by name, e.g. `table1`, `toric:3`, `eq16:4,4`.
pub fn by_name(name: &str) -> Result<Entry> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let num = |default: usize| -> Result<usize> {
        match arg {
            None => Ok(default),
            Some(a) => a
                .trim()
                .parse()
                .map_err(|_| Error::Unsupported(format!("bad parameter {a:?}"))),
        }
    };
    let entry = match base {
        "table1" | "table1-7q" => Entry {
            code: table1(),
            admissible: Some(table1_admissible()),
        },
        "table2" | "table2-6q" => Entry {
            code: table2(),
            admissible: Some(table2_admissible()),
        },
        "table1-z1" => Entry {
            code: table1_z1_stabilized(),
            admissible: None,
        },
        "css17" => Entry {
            code: build_css17()?.code,
            admissible: Some(css17_admissible()),
        },
        "eq16" | "eq16-lattice" => {
            let (lx, ly) = parse_dims(arg, (4, 4))?;
            let torus = eq16_cell().instantiate(lx, ly)?;
            let admissible = Some(torus.translates_admissible(0)?);
            Entry {
                code: torus.code,
                admissible,
            }
        }
        "eq20" | "eq20-lattice" => {
            let (lx, ly) = parse_dims(arg, (4, 4))?;
            Entry {
                code: eq20_cell().instantiate(lx, ly)?.code,
                admissible: None,
            }
        }
        "compact" => {
            let c = compact_encoding(num(4)?)?;
            let admissible = Some(c.vertex_z_admissible()?);
            Entry {
                code: c.code,
                admissible,
            }
        }
        "toric" => Entry {
            code: toric_code(num(3)?)?,
            admissible: None,
        },
        "rep" => Entry {
            code: repetition(num(3)?)?,
            admissible: None,
        },
        "inner-5q" | "five" => Entry {
            code: five_qubit(),
            admissible: None,
        },
        "trivial" => Entry {
            code: trivial_qubit(),
            admissible: None,
        },
        _ => {
            return Err(Error::Unsupported(format!(
                "unknown catalog entry {name:?}"
            )))
        }
    };
    Ok(entry)
}

/// Unit-cell codes by name (`eq16`, `eq20`).
pub fn cell_by_name(name: &str) -> Option<UnitCellCode> {
    match name {
        "eq16" | "eq16-lattice" => Some(eq16_cell()),
        "eq20" | "eq20-lattice" => Some(eq20_cell()),
        _ => None,
    }
}

/// One line of `catalog selftest`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelfTestLine {
    pub entry: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for SelfTestLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "ok" } else { "FAIL" };
        write!(
            f,
            "[{tag}] {}: {} ({})",
            self.entry, self.check, self.detail
        )
    }
}

fn line(entry: &str, check: &str, pass: bool, detail: impl Into<String>) -> SelfTestLine {
    SelfTestLine {
        entry: entry.into(),
        check: check.into(),
        pass,
        detail: detail.into(),
    }
}

fn expect_value(entry: &str, check: &str, got: Result<usize>, want: usize) -> SelfTestLine {
    match got {
        Ok(v) => line(entry, check, v == want, format!("got {v}, expected {want}")),
        Err(e) => line(entry, check, false, e.to_string()),
    }
}

/// Re-verifies the expected properties of every catalog entry.
pub fn selftest() -> Vec<SelfTestLine> {
    let mut out = Vec::new();
    let exact = |d: crate::stabilizer::DistanceResult| -> Result<usize> {
        if d.is_exact() {
            Ok(d.value())
        } else {
            Err(Error::Unsupported(format!("only a bound: {d}")))
        }
    };

    for name in [
        "table1",
        "table2",
        "table1-z1",
        "css17",
        "eq16",
        "eq20",
        "compact:4",
        "toric:3",
        "rep:3",
        "inner-5q",
    ] {
        match by_name(name) {
            Ok(e) => {
                let diag = e.code.validate();
                out.push(line(name, "validates", diag.is_ok(), diag.to_string()));
            }
            Err(err) => out.push(line(name, "constructs", false, err.to_string())),
        }
    }

    let t1 = table1();
    out.push(expect_value(
        "table1",
        "distance",
        exact(code_distance(&t1, 3)),
        2,
    ));
    out.push(expect_value(
        "table1",
        "d_eff for <Z1>",
        effective_distance(&t1, &table1_admissible(), 3).and_then(exact),
        3,
    ));
    out.push(expect_value(
        "table1-z1",
        "distance",
        exact(code_distance(&table1_z1_stabilized(), 4)),
        3,
    ));

    let t2 = table2();
    out.push(expect_value(
        "table2",
        "distance",
        exact(code_distance(&t2, 3)),
        2,
    ));
    out.push(expect_value(
        "table2",
        "d_eff for {I, Z1, Z2}",
        effective_distance(&t2, &table2_admissible(), 3).and_then(exact),
        3,
    ));

    match build_css17().and_then(|c| Ok((asymmetric_distances(&c.code, 6)?, c))) {
        Ok(((dx, dz), CssCode { code, .. })) => {
            out.push(expect_value("css17", "pure-X distance", exact(dx), 3));
            out.push(expect_value("css17", "pure-Z distance", exact(dz), 5));
            out.push(expect_value(
                "css17",
                "d_eff for {I, X1, X2}",
                effective_distance(&code, &css17_admissible(), 3).and_then(exact),
                5,
            ));
        }
        Err(e) => out.push(line("css17", "constructs", false, e.to_string())),
    }

    match by_name("eq16") {
        Ok(Entry {
            code,
            admissible: Some(m),
        }) => out.push(expect_value(
            "eq16",
            "d_eff for translates of Z1",
            effective_distance(&code, &m, 2).and_then(exact),
            3,
        )),
        _ => out.push(line("eq16", "constructs", false, "missing admissible set")),
    }
    match by_name("eq20") {
        Ok(e) => out.push(expect_value(
            "eq20",
            "distance",
            exact(code_distance(&e.code, 4)),
            3,
        )),
        Err(err) => out.push(line("eq20", "constructs", false, err.to_string())),
    }
    match by_name("compact:4") {
        Ok(Entry {
            code,
            admissible: Some(m),
        }) => out.push(expect_value(
            "compact:4",
            "d_eff for vertex Z",
            effective_distance(&code, &m, 2).and_then(exact),
            3,
        )),
        _ => out.push(line(
            "compact:4",
            "constructs",
            false,
            "missing admissible set",
        )),
    }
    match toric_code(3) {
        Ok(code) => {
            let k = code.k();
            let z1 = LogicalClass::z(k, 0);
            let z12 = z1.xor(&LogicalClass::z(k, 1));
            out.push(expect_value(
                "toric:3",
                "pure-Z weight of Z1",
                exact(min_weight_in_class(&code, &z1, Purity::Z, 6)),
                3,
            ));
            out.push(expect_value(
                "toric:3",
                "pure-Z weight of Z1Z2",
                exact(min_weight_in_class(&code, &z12, Purity::Z, 6)),
                6,
            ));
        }
        Err(err) => out.push(line("toric:3", "constructs", false, err.to_string())),
    }
    out.push(expect_value(
        "rep:3",
        "distance",
        repetition(3).map(|c| code_distance(&c, 3)).and_then(exact),
        1,
    ));
    out.push(expect_value(
        "inner-5q",
        "distance",
        exact(code_distance(&five_qubit(), 5)),
        3,
    ));
    out
}
