//! Standard form of a stabilizer check matrix.
//!
//! After a column permutation the check matrix reads
//!
//! ```text
//!          X part             Z part
//!   r    [ I  A1  A2 |  B   0   C ]
//!   m-r  [ 0  0   0  |  D   I   E ]
//! ```
//!
//! with column blocks of widths `r`, `m - r`, `k` (`m = n - k`). Logical
//! operators are then `Z̄ = (0 | A2ᵀ 0 I)` and `X̄ = (0 Eᵀ I | Cᵀ 0 0)`.

use rand::Rng;

use crate::error::Result;
use crate::f2::{BitMatrix, BitVec};
use crate::pauli::PauliOp;

use super::{check_abelian_independent, StabilizerCode};

struct Rows {
    x: Vec<BitVec>,
    z: Vec<BitVec>,
}

impl Rows {
    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for part in [&mut self.x, &mut self.z] {
            for row in part.iter_mut() {
                let (va, vb) = (row.get(a), row.get(b));
                row.set(a, vb);
                row.set(b, va);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.x.swap(a, b);
        self.z.swap(a, b);
    }

    fn add_row(&mut self, target: usize, source: usize) {
        let (sx, sz) = (self.x[source].clone(), self.z[source].clone());
        self.x[target] ^= &sx;
        self.z[target] ^= &sz;
    }
}

fn pivot(
    part: &[BitVec],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    cols.into_iter()
        .find_map(|c| rows.clone().find(|&r| part[r].get(c)).map(|r| (r, c)))
}

/// Logical operators of a check matrix already in standard form, in the
/// permuted column order.
fn standard_logicals(rows: &Rows, n: usize, r: usize) -> (Vec<PauliOp>, Vec<PauliOp>) {
    let m = rows.x.len();
    let k = n - m;
    let mut lx = Vec::with_capacity(k);
    let mut lz = Vec::with_capacity(k);
    for j in 0..k {
        let col = m + j;
        let mut zbar_z = BitVec::zeros(n);
        for c in 0..r {
            zbar_z.set(c, rows.x[c].get(col));
        }
        zbar_z.set(col, true);
        lz.push(PauliOp::from_parts(BitVec::zeros(n), zbar_z));

        let mut xbar_x = BitVec::zeros(n);
        let mut xbar_z = BitVec::zeros(n);
        for t in 0..m - r {
            xbar_x.set(r + t, rows.z[r + t].get(col));
        }
        xbar_x.set(col, true);
        for c in 0..r {
            xbar_z.set(c, rows.z[c].get(col));
        }
        lx.push(PauliOp::from_parts(xbar_x, xbar_z));
    }
    (lx, lz)
}

fn unpermute(p: &PauliOp, perm: &[usize]) -> PauliOp {
    let n = perm.len();
    let mut out = PauliOp::identity(n);
    for (c, &q) in perm.iter().enumerate() {
        out.set(q, p.letter(c));
    }
    out
}

/// Brings commuting, independent generators to standard form and reads off
/// a logical basis. Output generators are the reduced rows, expressed on the
/// original qubit order; they generate the same stabilizer group.
pub fn standard_form(generators: &[PauliOp]) -> Result<StabilizerCode> {
    check_abelian_independent(generators)?;
    let n = generators.first().map_or(0, PauliOp::num_qubits);
    let m = generators.len();
    let mut rows = Rows {
        x: generators.iter().map(|g| g.x_part().clone()).collect(),
        z: generators.iter().map(|g| g.z_part().clone()).collect(),
    };
    let mut perm: Vec<usize> = (0..n).collect();

    let mut r = 0;
    while let Some((row, col)) = pivot(&rows.x, r..m, r..n) {
        rows.swap_rows(r, row);
        rows.swap_cols(r, col);
        perm.swap(r, col);
        for i in 0..m {
            if i != r && rows.x[i].get(r) {
                rows.add_row(i, r);
            }
        }
        r += 1;
    }

    let mut t = r;
    while let Some((row, col)) = pivot(&rows.z, t..m, t..n) {
        rows.swap_rows(t, row);
        rows.swap_cols(t, col);
        perm.swap(t, col);
        for i in 0..m {
            if i != t && rows.z[i].get(t) {
                rows.add_row(i, t);
            }
        }
        t += 1;
    }
    debug_assert_eq!(t, m, "independent commuting generators reach full rank");

    let (lx, lz) = standard_logicals(&rows, n, r);
    let gens: Vec<PauliOp> = rows
        .x
        .iter()
        .zip(&rows.z)
        .map(|(x, z)| unpermute(&PauliOp::from_parts(x.clone(), z.clone()), &perm))
        .collect();
    let lx = lx.iter().map(|p| unpermute(p, &perm)).collect();
    let lz = lz.iter().map(|p| unpermute(p, &perm)).collect();
    Ok(StabilizerCode::from_parts(n, gens, lx, lz))
}

/// Free parameters of a standard-form code with X rank `r`.
///
/// `B` is stored by its upper triangle (diagonal included); the lower
/// triangle and `D` are fixed by commutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub a1: BitMatrix,
    pub a2: BitMatrix,
    pub b_upper: BitMatrix,
    pub c: BitMatrix,
    pub e: BitMatrix,
}

impl StandardFormParams {
    /// Number of free bits for the given shape.
    pub fn free_bits(n: usize, k: usize, r: usize) -> usize {
        let m = n - k;
        r * (m - r) + r * k + r * (r + 1) / 2 + r * k + (m - r) * k
    }

    /// Unpacks free bits in the order A1, A2, upper(B), C, E (row-major).
    pub fn from_bits(n: usize, k: usize, r: usize, bits: &BitVec) -> Self {
        assert!(k <= n && r <= n - k);
        assert_eq!(bits.len(), Self::free_bits(n, k, r));
        let m = n - k;
        let mut pos = 0;
        let mut take = |rows: usize, cols: usize, upper: bool| {
            let mut mat = BitMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if upper && j < i {
                        continue;
                    }
                    mat.set(i, j, bits.get(pos));
                    pos += 1;
                }
            }
            mat
        };
        let a1 = take(r, m - r, false);
        let a2 = take(r, k, false);
        let b_upper = take(r, r, true);
        let c = take(r, k, false);
        let e = take(m - r, k, false);
        StandardFormParams {
            n,
            k,
            r,
            a1,
            a2,
            b_upper,
            c,
            e,
        }
    }

    /// Draws `r` uniformly from `0..=n-k`, then every free bit uniformly.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        let r = rng.gen_range(0..=n - k);
        let bits = BitVec::from_bools((0..Self::free_bits(n, k, r)).map(|_| rng.gen::<bool>()));
        Self::from_bits(n, k, r, &bits)
    }

    /// The code with these parameters (identity column permutation) and its
    /// standard logical basis.
    pub fn build(&self) -> StabilizerCode {
        let (n, k, r) = (self.n, self.k, self.r);
        let m = n - k;
        let dot = |a: &BitMatrix, i: usize, b: &BitMatrix, j: usize| a.row(i).dot(b.row(j));
        let mut b = BitMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                let v = if j >= i {
                    self.b_upper.get(i, j)
                } else {
                    let s = dot(&self.a2, i, &self.c, j) ^ dot(&self.c, i, &self.a2, j);
                    self.b_upper.get(j, i) ^ s
                };
                b.set(i, j, v);
            }
        }
        let mut rows = Rows {
            x: Vec::with_capacity(m),
            z: Vec::with_capacity(m),
        };
        for i in 0..r {
            let mut x = BitVec::zeros(n);
            let mut z = BitVec::zeros(n);
            x.set(i, true);
            for j in 0..m - r {
                x.set(r + j, self.a1.get(i, j));
            }
            for j in 0..k {
                x.set(m + j, self.a2.get(i, j));
                z.set(m + j, self.c.get(i, j));
            }
            for j in 0..r {
                z.set(j, b.get(i, j));
            }
            rows.x.push(x);
            rows.z.push(z);
        }
        for t in 0..m - r {
            let mut z = BitVec::zeros(n);
            for c in 0..r {
                z.set(c, self.a1.get(c, t) ^ dot(&self.e, t, &self.a2, c));
            }
            z.set(r + t, true);
            for j in 0..k {
                z.set(m + j, self.e.get(t, j));
            }
            rows.x.push(BitVec::zeros(n));
            rows.z.push(z);
        }
        let (lx, lz) = standard_logicals(&rows, n, r);
        let gens = rows
            .x
            .into_iter()
            .zip(rows.z)
            .map(|(x, z)| PauliOp::from_parts(x, z))
            .collect();
        StabilizerCode::from_parts(n, gens, lx, lz)
    }
}

/// A uniformly parameterized random standard-form `[n, k]` code.
pub fn sample_standard_form<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> StabilizerCode {
    StandardFormParams::random(n, k, rng).build()
}
