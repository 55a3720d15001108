//! Translation-invariant codes over `F2[x^±1, y^±1]` and their finite-torus
//! instantiations, plus the compact fermionic encoding and the toric code.
//!
//! A vector `a` of `2n` Laurent polynomials describes the Pauli `P(a)`
//! acting with `X` on qubit `q` of cell `(i, j)` when the X-block entry
//! `a[q]` contains `x^i y^j`, and likewise for `Z` with `a[n + q]`.

mod cell;
mod compact;
mod lpoly;
mod toric;

pub use cell::{
    eq16_cell, eq20_cell, parse_unit_cell, render_unit_cell, CellDiagnostics, CellIssue, TorusCode,
    UnitCellCode,
};
pub use compact::{compact_encoding, CompactEncoding};
pub use lpoly::{symplectic_form, LPoly, LaurentVec};
pub use toric::toric_code;
