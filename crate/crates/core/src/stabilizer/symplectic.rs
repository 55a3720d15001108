//! Enumeration of the symplectic group `Sp(2k, F2)` acting on logical
//! classes packed as `u64` masks (`2k <= 64`, in practice `k <= 3`).

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

/// Images of the logical basis under a symplectic map: `x[i]` is the image
/// of the class of `X̄_i` and `z[i]` that of `Z̄_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticBasis {
    pub k: usize,
    pub x: [u64; 3],
    pub z: [u64; 3],
}

impl SymplecticBasis {
    pub fn identity(k: usize) -> Self {
        assert!(k <= 3);
        let mut b = SymplecticBasis {
            k,
            x: [0; 3],
            z: [0; 3],
        };
        for i in 0..k {
            b.x[i] = 1 << i;
            b.z[i] = 1 << (k + i);
        }
        b
    }

    /// Image of a class mask.
    pub fn apply(&self, mask: u64) -> u64 {
        let mut out = 0;
        for i in 0..self.k {
            if mask >> i & 1 == 1 {
                out ^= self.x[i];
            }
            if mask >> (self.k + i) & 1 == 1 {
                out ^= self.z[i];
            }
        }
        out
    }
}

/// Symplectic product of two class masks.
pub fn form(k: usize, a: u64, b: u64) -> bool {
    let low = (1u64 << k) - 1;
    (((a & low) & (b >> k)).count_ones() + ((a >> k) & (b & low)).count_ones()) % 2 == 1
}

/// Visits every element of `Sp(2k, F2)` in canonical order (ascending
/// masks for `x[0], z[0], x[1], ...`), starting with the identity. Stops
/// early when `f` breaks.
pub fn for_each_symplectic_basis<F>(k: usize, mut f: F)
where
    F: FnMut(&SymplecticBasis) -> ControlFlow<()>,
{
    assert!(k <= 3, "symplectic enumeration supports k <= 3");
    let mut b = SymplecticBasis {
        k,
        x: [0; 3],
        z: [0; 3],
    };
    let _ = visit(k, 0, &mut b, &mut f);
}

fn visit<F>(k: usize, level: usize, b: &mut SymplecticBasis, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&SymplecticBasis) -> ControlFlow<()>,
{
    if level == k {
        return f(b);
    }
    let top = 1u64 << (2 * k);
    let orthogonal_to_previous = |v: u64, b: &SymplecticBasis| {
        (0..level).all(|j| !form(k, v, b.x[j]) && !form(k, v, b.z[j]))
    };
    for u in 1..top {
        if !orthogonal_to_previous(u, b) {
            continue;
        }
        b.x[level] = u;
        for v in 1..top {
            if !form(k, u, v) || !orthogonal_to_previous(v, b) {
                continue;
            }
            b.z[level] = v;
            visit(k, level + 1, b, f)?;
        }
    }
    ControlFlow::Continue(())
}

/// All of `Sp(2k, F2)` in canonical order.
pub fn symplectic_bases(k: usize) -> Vec<SymplecticBasis> {
    let mut out = Vec::new();
    for_each_symplectic_basis(k, |b| {
        out.push(*b);
        ControlFlow::Continue(())
    });
    out
}
