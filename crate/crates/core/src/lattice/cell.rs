use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::pauli::PauliOp;
use crate::qet::AdmissibleSet;
use crate::stabilizer::{complete_logical_basis, drop_dependent, StabilizerCode};

use super::lpoly::{symplectic_form, LPoly, LaurentVec};

/// A translation-invariant code: `n` qubits per cell, generator columns
/// `sigma`, and optionally logical vectors with `Z̄_i = P(a_i)` and
/// `X̄_i = P(b_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCellCode {
    n: usize,
    sigma: Vec<LaurentVec>,
    a: Vec<LaurentVec>,
    b: Vec<LaurentVec>,
}

/// A relation that failed: `u† Λ v` should equal `expected`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellIssue {
    pub relation: String,
    pub expected: LPoly,
    pub found: LPoly,
}

impl fmt::Display for CellIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, found {}",
            self.relation, self.expected, self.found
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDiagnostics {
    pub issues: Vec<CellIssue>,
}

impl CellDiagnostics {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for CellDiagnostics {
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

impl UnitCellCode {
    pub fn new(
        n: usize,
        sigma: Vec<LaurentVec>,
        a: Vec<LaurentVec>,
        b: Vec<LaurentVec>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnitCell("a cell needs at least one qubit".into()));
        }
        if a.len() != b.len() {
            return Err(Error::UnitCell(format!(
                "{} A vectors but {} B vectors",
                a.len(),
                b.len()
            )));
        }
        for v in sigma.iter().chain(&a).chain(&b) {
            if v.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: 2 * n,
                    found: v.entries().len(),
                });
            }
        }
        Ok(UnitCellCode { n, sigma, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &[LaurentVec] {
        &self.sigma
    }

    pub fn logical_a(&self) -> &[LaurentVec] {
        &self.a
    }

    pub fn logical_b(&self) -> &[LaurentVec] {
        &self.b
    }

    pub fn has_logicals(&self) -> bool {
        !self.a.is_empty()
    }

    /// Checks `σ†Λσ = 0` and, when logicals are present, that they lie in
    /// the normalizer and satisfy `a_i†Λb_j = δ_ij`, `a_i†Λa_j = 0`,
    /// `b_i†Λb_j = 0` as full polynomials.
    pub fn validate(&self) -> CellDiagnostics {
        let mut issues = Vec::new();
        let mut expect = |name: String, u: &LaurentVec, v: &LaurentVec, expected: LPoly| {
            let found = symplectic_form(u, v).expect("dimensions checked on construction");
            if found != expected {
                issues.push(CellIssue {
                    relation: name,
                    expected,
                    found,
                });
            }
        };
        for i in 0..self.sigma.len() {
            for j in i..self.sigma.len() {
                expect(
                    format!("g{},g{}", i + 1, j + 1),
                    &self.sigma[i],
                    &self.sigma[j],
                    LPoly::zero(),
                );
            }
        }
        let m = self.a.len();
        for (g, s) in self.sigma.iter().enumerate() {
            for i in 0..m {
                expect(
                    format!("g{},a{}", g + 1, i + 1),
                    s,
                    &self.a[i],
                    LPoly::zero(),
                );
                expect(
                    format!("g{},b{}", g + 1, i + 1),
                    s,
                    &self.b[i],
                    LPoly::zero(),
                );
            }
        }
        for i in 0..m {
            for j in 0..m {
                let delta = if i == j { LPoly::one() } else { LPoly::zero() };
                expect(
                    format!("a{},b{}", i + 1, j + 1),
                    &self.a[i],
                    &self.b[j],
                    delta,
                );
                if i <= j {
                    expect(
                        format!("a{},a{}", i + 1, j + 1),
                        &self.a[i],
                        &self.a[j],
                        LPoly::zero(),
                    );
                    expect(
                        format!("b{},b{}", i + 1, j + 1),
                        &self.b[i],
                        &self.b[j],
                        LPoly::zero(),
                    );
                }
            }
        }
        CellDiagnostics { issues }
    }

    /// Tiles the cell over an `lx × ly` torus.
    pub fn instantiate(&self, lx: usize, ly: usize) -> Result<TorusCode> {
        if lx < 2 || ly < 2 {
            return Err(Error::UnitCell(format!(
                "torus {lx}x{ly} is smaller than 2x2"
            )));
        }
        let geometry = Geometry { lx, ly, n: self.n };
        for v in self.sigma.iter().chain(&self.a).chain(&self.b) {
            geometry.check_overlap(v)?;
        }
        let cells: Vec<(usize, usize)> = (0..ly)
            .flat_map(|cy| (0..lx).map(move |cx| (cx, cy)))
            .collect();
        let all: Vec<PauliOp> = cells
            .iter()
            .flat_map(|&(cx, cy)| self.sigma.iter().map(move |s| (cx, cy, s)))
            .map(|(cx, cy, s)| geometry.embed(s, cx, cy))
            .collect();
        let generator_count = all.len();
        let (kept, dropped) = drop_dependent(all);
        let total = geometry.qubits();
        let mut cell_basis = false;
        let code = if kept.is_empty() {
            let lx_ops = (0..total).map(|q| PauliOp::x_on(total, &[q])).collect();
            let lz_ops = (0..total).map(|q| PauliOp::z_on(total, &[q])).collect();
            StabilizerCode::new(Vec::new(), lx_ops, lz_ops)?
        } else {
            let pairs: Vec<(PauliOp, PauliOp)> = cells
                .iter()
                .flat_map(|&(cx, cy)| self.a.iter().zip(&self.b).map(move |(a, b)| (cx, cy, a, b)))
                .map(|(cx, cy, a, b)| (geometry.embed(b, cx, cy), geometry.embed(a, cx, cy)))
                .collect();
            match complete_logical_basis(&kept, &pairs) {
                Ok(code) if !pairs.is_empty() => {
                    cell_basis = true;
                    code
                }
                _ => StabilizerCode::from_generators(kept)?,
            }
        };
        Ok(TorusCode {
            geometry,
            cell: self.clone(),
            code,
            generator_count,
            dropped,
            cell_basis,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Geometry {
    lx: usize,
    ly: usize,
    n: usize,
}

impl Geometry {
    fn qubits(&self) -> usize {
        self.lx * self.ly * self.n
    }

    fn qubit(&self, cx: i64, cy: i64, q: usize) -> usize {
        let x = cx.rem_euclid(self.lx as i64) as usize;
        let y = cy.rem_euclid(self.ly as i64) as usize;
        (y * self.lx + x) * self.n + q
    }

    fn embed(&self, v: &LaurentVec, cx: usize, cy: usize) -> PauliOp {
        let total = self.qubits();
        let mut x = BitVec::zeros(total);
        let mut z = BitVec::zeros(total);
        for q in 0..self.n {
            for (i, j) in v.x(q).terms() {
                x.flip(self.qubit(cx as i64 + i, cy as i64 + j, q));
            }
            for (i, j) in v.z(q).terms() {
                z.flip(self.qubit(cx as i64 + i, cy as i64 + j, q));
            }
        }
        PauliOp::from_parts(x, z)
    }

    /// Two monomials of one entry must not wrap onto the same site.
    fn check_overlap(&self, v: &LaurentVec) -> Result<()> {
        for (e, poly) in v.entries().iter().enumerate() {
            let mut seen = HashSet::new();
            for (i, j) in poly.terms() {
                let site = (i.rem_euclid(self.lx as i64), j.rem_euclid(self.ly as i64));
                if !seen.insert(site) {
                    return Err(Error::DegenerateOverlap {
                        lx: self.lx,
                        ly: self.ly,
                        detail: format!("entry {} of {v} wraps onto itself", e + 1),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A unit-cell code tiled over a torus. Qubit `q` of cell `(cx, cy)` has
/// index `(cy·lx + cx)·n + q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusCode {
    geometry: Geometry,
    cell: UnitCellCode,
    pub code: StabilizerCode,
    /// Number of generator copies before dependent ones were dropped.
    pub generator_count: usize,
    /// Indices (in cell-major order) of the dropped generator copies.
    pub dropped: Vec<usize>,
    /// Whether the logical basis is the tiled `(b_i, a_i)` pairs, listed
    /// cell by cell, possibly followed by extra pairs.
    pub cell_basis: bool,
}

impl TorusCode {
    pub fn lx(&self) -> usize {
        self.geometry.lx
    }

    pub fn ly(&self) -> usize {
        self.geometry.ly
    }

    pub fn cell_qubits(&self) -> usize {
        self.geometry.n
    }

    pub fn qubit(&self, cx: usize, cy: usize, q: usize) -> usize {
        self.geometry.qubit(cx as i64, cy as i64, q)
    }

    /// `P(v)` translated to cell `(cx, cy)`.
    pub fn embed(&self, v: &LaurentVec, cx: usize, cy: usize) -> PauliOp {
        self.geometry.embed(v, cx, cy)
    }

    /// Translates an operator on the torus by `(dx, dy)` cells.
    pub fn translate(&self, p: &PauliOp, dx: i64, dy: i64) -> PauliOp {
        let total = self.geometry.qubits();
        let n = self.geometry.n;
        let mut x = BitVec::zeros(total);
        let mut z = BitVec::zeros(total);
        for idx in p.support().iter_ones() {
            let q = idx % n;
            let cell = idx / n;
            let (cx, cy) = (
                (cell % self.geometry.lx) as i64,
                (cell / self.geometry.lx) as i64,
            );
            let target = self.geometry.qubit(cx + dx, cy + dy, q);
            x.set(target, p.x_part().get(idx));
            z.set(target, p.z_part().get(idx));
        }
        PauliOp::from_parts(x, z)
    }

    /// `P(a_i)` in every cell.
    pub fn logical_translates(&self, i: usize) -> Result<Vec<PauliOp>> {
        let a = self.cell.a.get(i).ok_or(Error::RowOutOfRange {
            index: i,
            rows: self.cell.a.len(),
        })?;
        Ok((0..self.ly())
            .flat_map(|cy| (0..self.lx()).map(move |cx| (cx, cy)))
            .map(|(cx, cy)| self.embed(a, cx, cy))
            .collect())
    }

    /// The identity plus the classes of every translate of `P(a_i)`.
    pub fn translates_admissible(&self, i: usize) -> Result<AdmissibleSet> {
        AdmissibleSet::from_operators(&self.code, &self.logical_translates(i)?)
    }
}

/// The three-qubit cell with one generator per cell and two logical qubits
/// per cell.
pub fn eq16_cell() -> UnitCellCode {
    let v = |s: &[&str]| LaurentVec::parse(s).expect("literal");
    UnitCellCode::new(
        3,
        vec![v(&["xy", "y+xy", "x+xy", "x+y", "1+x+xy", "1+y+xy"])],
        vec![
            v(&["0", "1", "1", "0", "1", "1"]),
            v(&["0", "1", "0", "xy", "0", "1"]),
        ],
        vec![
            v(&["0", "0", "0", "1+y", "0", "1"]),
            v(&["0", "1", "0", "x+y+xy", "1", "0"]),
        ],
    )
    .expect("literal cell")
}

/// The two-qubit cell with one generator per cell.
pub fn eq20_cell() -> UnitCellCode {
    let v = LaurentVec::parse(&["xy", "xy+y", "1+x+y", "1+xy"]).expect("literal");
    UnitCellCode::new(2, vec![v], Vec::new(), Vec::new()).expect("literal cell")
}

/// Reads the unit-cell text format:
///
/// ```text
/// n 3 s 1
/// xy
/// y+xy
/// ...           (2n lines per generator column)
/// A1:
/// ...           (2n lines)
/// B1:
/// ...
/// ```
///
/// Blank lines and `#` comments are ignored.
pub fn parse_unit_cell(text: &str) -> Result<UnitCellCode> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let err = |line: usize, message: String| Error::Parse { line, message };
    let (hline, header) = *lines
        .first()
        .ok_or_else(|| err(0, "empty unit-cell file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, s) = match fields.as_slice() {
        ["n", n, "s", s] => (
            n.parse::<usize>()
                .map_err(|_| err(hline, format!("bad qubit count {n:?}")))?,
            s.parse::<usize>()
                .map_err(|_| err(hline, format!("bad generator count {s:?}")))?,
        ),
        _ => return Err(err(hline, "expected header \"n <n> s <s>\"".into())),
    };
    if n == 0 {
        return Err(err(hline, "n must be positive".into()));
    }
    let mut pos = 1;
    let read_vec = |pos: &mut usize| -> Result<LaurentVec> {
        let mut entries = Vec::with_capacity(2 * n);
        for _ in 0..2 * n {
            let (ln, l) = *lines
                .get(*pos)
                .ok_or_else(|| err(0, "unexpected end of file".into()))?;
            let p: LPoly = l.parse().map_err(|e| err(ln, format!("{e}")))?;
            entries.push(p);
            *pos += 1;
        }
        LaurentVec::new(entries)
    };
    let mut sigma = Vec::with_capacity(s);
    for _ in 0..s {
        sigma.push(read_vec(&mut pos)?);
    }
    let mut a: Vec<Option<LaurentVec>> = Vec::new();
    let mut b: Vec<Option<LaurentVec>> = Vec::new();
    while pos < lines.len() {
        let (ln, label) = lines[pos];
        let parsed = label
            .strip_suffix(':')
            .and_then(|l| {
                let (kind, idx) = l.split_at(1);
                Some((kind.to_string(), idx.parse::<usize>().ok()?))
            })
            .filter(|(_, idx)| *idx >= 1);
        let Some((kind, idx)) = parsed else {
            return Err(err(
                ln,
                format!("expected a block label like \"A1:\", found {label:?}"),
            ));
        };
        pos += 1;
        let v = read_vec(&mut pos)?;
        let list = match kind.as_str() {
            "A" => &mut a,
            "B" => &mut b,
            _ => return Err(err(ln, format!("unknown block {label:?}"))),
        };
        if list.len() < idx {
            list.resize(idx, None);
        }
        if list[idx - 1].replace(v).is_some() {
            return Err(err(ln, format!("duplicate block {label:?}")));
        }
    }
    let collect = |list: Vec<Option<LaurentVec>>, kind: char| -> Result<Vec<LaurentVec>> {
        list.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| err(0, format!("missing block {kind}{}", i + 1))))
            .collect()
    };
    UnitCellCode::new(n, sigma, collect(a, 'A')?, collect(b, 'B')?)
}

fn push_vec(out: &mut String, v: &LaurentVec) {
    for e in v.entries() {
        out.push_str(&e.to_string());
        out.push('\n');
    }
}

pub fn render_unit_cell(cell: &UnitCellCode) -> String {
    let mut out = format!("n {} s {}\n", cell.n, cell.sigma.len());
    for s in &cell.sigma {
        push_vec(&mut out, s);
    }
    for (i, (a, b)) in cell.a.iter().zip(&cell.b).enumerate() {
        out.push_str(&format!("A{}:\n", i + 1));
        push_vec(&mut out, a);
        out.push_str(&format!("B{}:\n", i + 1));
        push_vec(&mut out, b);
    }
    out
}
