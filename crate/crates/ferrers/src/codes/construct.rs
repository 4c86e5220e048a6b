use std::collections::BTreeMap;

use super::{gabidulin_mrd, MatrixCode};
use crate::diagram::{families, Point};
use crate::gf::{Field, Matrix, ReducedBasis};
use crate::{Error, Result};

/// `[G_n, (n-2)^2, 3]` code `C_0 + <A>` for `n >= 3`.
///
/// `C_0` is a Gabidulin `[(n-1) x (n-1), (n-1)(n-3), 3]` code in the
/// top-left block. `A` has ones at `(1, n)` and `(n, 1)` and carries `A'` in
/// rows and columns `2..n-1`, where `A'` is the first unit matrix (row-major)
/// outside `C_0'`, the code `C_0` with its first row and column deleted.
pub fn gn_construction(n: usize, q: u32) -> Result<MatrixCode> {
    if n < 3 {
        return Err(Error::domain(format!("the G_n construction needs n >= 3, got {n}")));
    }
    let field = Field::new(q)?;
    // For n = 3 the 2 x 2 MRD code of distance 3 is zero.
    let c0 = if n == 3 { Vec::new() } else { gabidulin_mrd(n - 1, n - 1, 3, q)?.basis() };
    let inner: Vec<Matrix> = c0.iter().map(|m| m.block(1, 1, n - 2, n - 2)).collect();
    let mut c0_prime = ReducedBasis::new(&field, n - 2, n - 2);
    for m in &inner {
        c0_prime.insert(m)?;
    }
    let a_prime = (0..(n - 2) * (n - 2))
        .map(|c| {
            let mut e = Matrix::zeros(n - 2, n - 2);
            e.set(c / (n - 2), c % (n - 2), 1);
            e
        })
        .find(|e| !c0_prime.contains(e).unwrap_or(true))
        .ok_or_else(|| Error::invariant("every unit matrix lies in C_0'; the dimension count forbids this"))?;
    let mut a = Matrix::zeros(n, n);
    a.set(0, n - 1, 1);
    a.set(n - 1, 0, 1);
    for i in 0..n - 2 {
        for j in 0..n - 2 {
            a.set(i + 1, j + 1, a_prime.get(i, j));
        }
    }
    let mut gens: Vec<Matrix> = c0.iter().map(|m| embed(m, n, n, 0, 0)).collect();
    gens.push(a);
    MatrixCode::new(&field, families::g(n)?, n, n, &gens)
}

/// `m` placed at offset `(r0, c0)` in a `rows x cols` zero matrix.
pub(crate) fn embed(m: &Matrix, rows: usize, cols: usize, r0: usize, c0: usize) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(r0 + i, c0 + j, m.get(i, j));
        }
    }
    out
}

/// Codewords `M^{(i,j)}` of an MFD code on a pair in standard form: for
/// `(i, j)` in `X^T` (columns past `b`), `M` restricted to the cells of
/// columns `>= d` is the unit vector at `(i, j)`; for `(i, j)` in `Y` (rows
/// past `a`) the same holds on the cells of rows `>= d`. Keys are 1-based.
pub fn information_set_matrices(code: &MatrixCode, d: usize) -> Result<BTreeMap<Point, Matrix>> {
    let support = code.support();
    let sf = support
        .standard_form(d)?
        .ok_or_else(|| Error::domain(format!("({support}, {d}) is not in standard form")))?;
    let cells = support.points();
    let mut out = BTreeMap::new();
    let x_cells: Vec<Point> = cells.iter().copied().filter(|&(_, j)| j > sf.b).collect();
    let y_cells: Vec<Point> = cells.iter().copied().filter(|&(i, _)| i > sf.a).collect();
    let z_x: Vec<Point> = cells.iter().copied().filter(|&(_, j)| j >= d).collect();
    let z_y: Vec<Point> = cells.iter().copied().filter(|&(i, _)| i >= d).collect();
    for (targets, z) in [(x_cells, z_x), (y_cells, z_y)] {
        if targets.is_empty() {
            continue;
        }
        let solved = solve_on(code, &z, true)?;
        for t in targets {
            out.insert(t, solved[&t].clone());
        }
    }
    Ok(out)
}

/// Codewords whose restriction to `z` is a unit vector, keyed by its cell.
/// Needs every cell of `z` to be a pivot when `z` is scanned first; with
/// `exact`, `z` must also be an information set (pivots are exactly `z`).
pub(crate) fn solve_on(code: &MatrixCode, z: &[Point], exact: bool) -> Result<BTreeMap<Point, Matrix>> {
    let (rows, cols) = code.shape();
    let idx = |(i, j): Point| (i - 1) * cols + (j - 1);
    let head: Vec<usize> = z.iter().map(|&p| idx(p)).collect();
    let order: Vec<usize> = head.iter().copied().chain((0..rows * cols).filter(|c| !head.contains(c))).collect();
    let mut rb = ReducedBasis::with_order(code.field(), rows, cols, order)?;
    for m in code.basis() {
        rb.insert(&m)?;
    }
    let want = &head;
    let covered = want.iter().all(|c| rb.pivots().contains(c));
    if !covered || (exact && rb.dim() != want.len()) {
        return Err(Error::invariant(format!(
            "projection onto the {} information cells has rank {} of {}",
            z.len(),
            rb.pivots().iter().filter(|p| want.contains(p)).count(),
            code.dim()
        )));
    }
    Ok(rb
        .matrices()
        .into_iter()
        .zip(rb.pivots())
        .filter(|(_, p)| want.contains(p))
        .map(|(m, &p)| ((p / cols + 1, p % cols + 1), m))
        .collect())
}
