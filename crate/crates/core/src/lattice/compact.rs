//! The compact fermion-to-qubit encoding on a periodic square lattice.
//!
//! Vertices carry one qubit each, as do the odd faces of a checkerboard
//! coloring. Edges are oriented by circulating around the even faces,
//! clockwise on even rows and anticlockwise on odd rows. The edge operator
//! for `j -> k` is `X_j Y_k` times `X_f` (vertical edge) or `Y_f`
//! (horizontal edge), where `f` is the odd face next to the edge. Each even
//! face contributes the product of its four edge operators as a stabilizer.
//!
//! The three-qubit unit cell at an odd position `(x, y)` holds vertex
//! `(x, y)`, face `(x, y)` and vertex `(x + 1, y)`. Cells tile along
//! `(1, 1)` and `(1, -1)`, and the torus identifies `(x, y)` with
//! `(x + L, y + L)` and `(x + L, y - L)`, giving `L²` cells.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::pauli::PauliOp;
use crate::qet::AdmissibleSet;
use crate::stabilizer::{drop_dependent, StabilizerCode};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompactEncoding {
    pub l: usize,
    pub code: StabilizerCode,
    /// Qubits at lattice vertices, in increasing order.
    pub vertex_qubits: Vec<usize>,
    /// Indices of even-face stabilizers dropped as dependent.
    pub dropped: Vec<usize>,
}

type Pt = (i64, i64);

struct Layout {
    l: i64,
}

impl Layout {
    /// Cell index of an odd position.
    fn cell(&self, (x, y): Pt) -> usize {
        debug_assert_eq!((x + y).rem_euclid(2), 1);
        let (dx, dy) = (x - 1, y);
        let i = ((dx + dy) / 2).rem_euclid(self.l);
        let j = ((dx - dy) / 2).rem_euclid(self.l);
        (j * self.l + i) as usize
    }

    fn vertex(&self, (x, y): Pt) -> usize {
        if (x + y).rem_euclid(2) == 1 {
            self.cell((x, y)) * 3
        } else {
            self.cell((x - 1, y)) * 3 + 2
        }
    }

    fn face(&self, p: Pt) -> usize {
        self.cell(p) * 3 + 1
    }

    fn cell_origin(&self, c: usize) -> Pt {
        let (i, j) = ((c as i64) % self.l, (c as i64) / self.l);
        (1 + i + j, i - j)
    }
}

fn odd_face_of_edge((x1, y1): Pt, (x2, y2): Pt) -> Pt {
    let candidates = if y1 == y2 {
        let x = x1.min(x2);
        [(x, y1), (x, y1 - 1)]
    } else {
        let y = y1.min(y2);
        [(x1, y), (x1 - 1, y)]
    };
    *candidates
        .iter()
        .find(|(x, y)| (x + y).rem_euclid(2) == 1)
        .expect("one odd neighbour")
}

/// Builds the encoding on the `L × L`-cell torus; `L` must be even and at
/// least 4.
pub fn compact_encoding(l: usize) -> Result<CompactEncoding> {
    if !l.is_multiple_of(2) || l < 4 {
        return Err(Error::Unsupported(format!(
            "compact encoding needs even L >= 4, got {l}"
        )));
    }
    let layout = Layout { l: l as i64 };
    let n = 3 * l * l;
    let edge_op = |j: Pt, k: Pt| {
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        let (vj, vk, f) = (
            layout.vertex(j),
            layout.vertex(k),
            layout.face(odd_face_of_edge(j, k)),
        );
        x.flip(vj);
        x.flip(vk);
        z.flip(vk);
        x.flip(f);
        if j.1 == k.1 {
            z.flip(f);
        }
        PauliOp::from_parts(x, z)
    };
    let gens: Vec<PauliOp> = (0..l * l)
        .map(|c| {
            let (ox, oy) = layout.cell_origin(c);
            let (x, y) = (ox + 1, oy);
            let (ll, lr, ur, ul) = ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1));
            let cycle = if y.rem_euclid(2) == 0 {
                [ll, ul, ur, lr]
            } else {
                [ll, lr, ur, ul]
            };
            let mut g = PauliOp::identity(n);
            for i in 0..4 {
                g.mul_assign(&edge_op(cycle[i], cycle[(i + 1) % 4]));
            }
            g
        })
        .collect();
    let (kept, dropped) = drop_dependent(gens);
    let code = StabilizerCode::from_generators(kept)?;
    let vertex_qubits = (0..l * l).flat_map(|c| [3 * c, 3 * c + 2]).collect();
    Ok(CompactEncoding {
        l,
        code,
        vertex_qubits,
        dropped,
    })
}

impl CompactEncoding {
    /// Index of qubit `t` (0, 1, 2) in cell `(i, j)`.
    pub fn qubit(&self, i: usize, j: usize, t: usize) -> usize {
        ((j % self.l) * self.l + i % self.l) * 3 + t
    }

    /// `Z` on each vertex qubit.
    pub fn vertex_z(&self) -> Vec<PauliOp> {
        let n = self.code.n();
        self.vertex_qubits
            .iter()
            .map(|&q| PauliOp::z_on(n, &[q]))
            .collect()
    }

    /// The identity plus the classes of `Z` on every vertex qubit.
    pub fn vertex_z_admissible(&self) -> Result<AdmissibleSet> {
        AdmissibleSet::from_operators(&self.code, &self.vertex_z())
    }
}
