use crate::error::{Error, Result};
use crate::pauli::PauliOp;
use crate::stabilizer::StabilizerCode;

/// The toric code on an `L × L` periodic square lattice.
///
/// Horizontal edge `(x, y)` is qubit `y·L + x`, vertical edge `(x, y)` is
/// qubit `L² + y·L + x`. Plaquettes are `Z` on the boundary of a face and
/// vertex checks are `X` on the edges meeting a vertex; the last of each
/// kind is dropped as dependent. `Z̄_1` runs along a row of horizontal
/// edges, `Z̄_2` along a column of vertical edges, and the `X̄_i` are the
/// matching dual loops.
pub fn toric_code(l: usize) -> Result<StabilizerCode> {
    if l < 2 {
        return Err(Error::Unsupported(format!(
            "toric code needs L >= 2, got {l}"
        )));
    }
    let n = 2 * l * l;
    let h = |x: usize, y: usize| (y % l) * l + x % l;
    let v = |x: usize, y: usize| l * l + (y % l) * l + x % l;
    let cells: Vec<(usize, usize)> = (0..l).flat_map(|y| (0..l).map(move |x| (x, y))).collect();
    let mut gens: Vec<PauliOp> = cells[..l * l - 1]
        .iter()
        .map(|&(x, y)| PauliOp::z_on(n, &[h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)]))
        .collect();
    gens.extend(
        cells[..l * l - 1]
            .iter()
            .map(|&(x, y)| PauliOp::x_on(n, &[h(x, y), h(x + l - 1, y), v(x, y), v(x, y + l - 1)])),
    );
    let row: Vec<usize> = (0..l).map(|x| h(x, 0)).collect();
    let col: Vec<usize> = (0..l).map(|y| v(0, y)).collect();
    let dual_col: Vec<usize> = (0..l).map(|y| h(0, y)).collect();
    let dual_row: Vec<usize> = (0..l).map(|x| v(x, 0)).collect();
    StabilizerCode::new(
        gens,
        vec![PauliOp::x_on(n, &dual_col), PauliOp::x_on(n, &dual_row)],
        vec![PauliOp::z_on(n, &row), PauliOp::z_on(n, &col)],
    )
}
