//! Ferrers-diagram rank-metric codes.
//!
//! A code is a subspace of the `rows x cols` matrices over `GF(q)` whose
//! members vanish outside a Ferrers diagram. Diagram cell `(i, j)` (1-based)
//! is matrix entry `(i - 1, j - 1)`. Distances are verified by walking every
//! codeword, so every operation that needs one carries an explicit guard.

mod conjecture;
mod construct;
mod distance;
mod gabidulin;

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use conjecture::{
    punct_inclusion_search, punct_inclusion_search_from, punct_inclusion_search_with, SearchOutcome, SearchReport, SearchWitness};
pub use construct::{gn_construction, information_set_matrices};
pub use gabidulin::gabidulin_mrd;

use crate::diagram::{FerrersDiagram, Point};
use crate::exec::RunOptions;
use crate::gf::{Field, Matrix, ReducedBasis};
use crate::young_digraph::{reduction_direction, Orientation};
use crate::{Error, Result};

/// Largest `q^k` enumerated by distance checks without `force`.
pub const MAX_ENUMERATION: u64 = 1 << 24;

/// Linear code of `rows x cols` matrices supported on a Ferrers diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCode {
    support: FerrersDiagram,
    basis: ReducedBasis,
}

impl MatrixCode {
    /// Span of `generators`; each must fit the shape and vanish off `support`.
    pub fn new(field: &Field, support: FerrersDiagram, rows: usize, cols: usize, generators: &[Matrix]) -> Result<Self> {
        if support.col_height(1) > rows || support.num_cols() > cols {
            return Err(Error::domain(format!("support ({support}) does not fit {rows}x{cols}")));
        }
        let mut basis = ReducedBasis::new(field, rows, cols);
        for g in generators {
            if let Some((i, j)) = outside(&support, g) {
                return Err(Error::domain(format!("generator is nonzero at ({i}, {j}) outside ({support})")));
            }
            basis.insert(g)?;
        }
        Ok(Self { support, basis })
    }

    pub fn zero(field: &Field, support: FerrersDiagram, rows: usize, cols: usize) -> Result<Self> {
        Self::new(field, support, rows, cols, &[])
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn support(&self) -> &FerrersDiagram {
        &self.support
    }

    /// Ambient `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        self.basis.shape()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Reduced (row-major echelon) basis.
    pub fn basis(&self) -> Vec<Matrix> {
        self.basis.matrices()
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.basis.contains(m)
    }

    /// `q^k`, saturating.
    pub fn size(&self) -> u64 {
        u64::from(self.field().q()).saturating_pow(self.dim() as u32)
    }

    fn guard(&self, opts: RunOptions) -> Result<()> {
        if !opts.force && self.size() > MAX_ENUMERATION {
            return Err(Error::resource(format!(
                "{}^{} codewords exceed the enumeration limit {MAX_ENUMERATION}; lower the parameters or force",
                self.field().q(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Least rank among codewords, stopping once it is at most `stop_at`.
    fn scan(&self, stop_at: usize, opts: RunOptions) -> Result<Option<usize>> {
        self.guard(opts)?;
        let f = self.field();
        let (rows, cols) = self.shape();
        let basis = self.basis();
        Ok(if f.q() == 2 && cols <= 64 {
            distance::min_rank(&distance::Bits, &basis, stop_at, opts.exec)
        } else {
            let gens = distance::prime_generators(f, &basis);
            distance::min_rank(&distance::Dense { field: f.clone(), rows, cols }, &gens, stop_at, opts.exec)
        })
    }
}

/// `{field: {p, m}, support, shape, basis}` with row-major entries.
impl Serialize for MatrixCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = self.field();
        let mut st = s.serialize_struct("MatrixCode", 4)?;
        st.serialize_field("field", &BTreeMap::from([("p", f.p()), ("m", f.m())]))?;
        st.serialize_field("support", &self.support.to_string())?;
        st.serialize_field("shape", &self.shape())?;
        let basis: Vec<Vec<u32>> = self.basis().into_iter().map(Matrix::into_entries).collect();
        st.serialize_field("basis", &basis)?;
        st.end()
    }
}

/// First nonzero cell of `m` outside `support`, 1-based.
fn outside(support: &FerrersDiagram, m: &Matrix) -> Option<Point> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| m.get(i, j) != 0 && !support.contains((i + 1, j + 1)))
        .map(|(i, j)| (i + 1, j + 1))
}

/// Minimum rank of a nonzero codeword; `None` stands for the infinite
/// distance of the zero code.
pub fn min_rank_distance(code: &MatrixCode) -> Result<Option<usize>> {
    min_rank_distance_with(code, RunOptions::default())
}

pub fn min_rank_distance_with(code: &MatrixCode, opts: RunOptions) -> Result<Option<usize>> {
    code.scan(1, opts)
}

/// `k = nu_min(support, d)` and every nonzero codeword has rank `>= d`.
pub fn is_mfd(code: &MatrixCode, d: usize) -> Result<bool> {
    is_mfd_with(code, d, RunOptions::default())
}

pub fn is_mfd_with(code: &MatrixCode, d: usize, opts: RunOptions) -> Result<bool> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    if code.dim() != code.support.nu_min_value(d) {
        return Ok(false);
    }
    has_distance_with(code, d, opts)
}

/// Every nonzero codeword has rank at least `d`.
pub fn has_distance_with(code: &MatrixCode, d: usize, opts: RunOptions) -> Result<bool> {
    Ok(code.scan(d.saturating_sub(1), opts)?.is_none_or(|r| r >= d))
}

/// `{M in C : M_P = 0}` on `support \ {P}`; `P` must be removable.
pub fn shorten(code: &MatrixCode, p: Point) -> Result<MatrixCode> {
    if !code.support.removable_points().contains(&p) {
        return Err(Error::domain(format!("{p:?} is not removable from ({})", code.support)));
    }
    let (rows, cols) = code.shape();
    let at = (p.0 - 1) * cols + (p.1 - 1);
    let mut order = vec![at];
    order.extend((0..rows * cols).filter(|&c| c != at));
    let mut pivot_first = ReducedBasis::with_order(code.field(), rows, cols, order)?;
    for m in code.basis() {
        pivot_first.insert(&m)?;
    }
    // Only the vector pivoting on P is nonzero there.
    let kept: Vec<Matrix> = pivot_first
        .matrices()
        .into_iter()
        .zip(pivot_first.pivots())
        .filter(|(_, &piv)| piv != at)
        .map(|(m, _)| m)
        .collect();
    MatrixCode::new(code.field(), code.support.without_point(p)?, rows, cols, &kept)
}

/// The same code viewed on a larger support (and ambient shape if needed).
pub fn include(code: &MatrixCode, bigger: &FerrersDiagram) -> Result<MatrixCode> {
    if !code.support.is_subset_of(bigger) {
        return Err(Error::domain(format!("({}) is not contained in ({bigger})", code.support)));
    }
    let (rows, cols) = code.shape();
    let (nr, nc) = (rows.max(bigger.col_height(1)), cols.max(bigger.num_cols()));
    let padded: Vec<Matrix> = code.basis().iter().map(|m| pad(m, nr, nc)).collect();
    MatrixCode::new(code.field(), bigger.clone(), nr, nc, &padded)
}

fn pad(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j));
        }
    }
    out
}

/// Deletes row `row` (1-based) from every codeword; the support loses the
/// matching row of cells.
pub fn puncture_row(code: &MatrixCode, row: usize) -> Result<MatrixCode> {
    let (rows, cols) = code.shape();
    if row == 0 || row > rows {
        return Err(Error::domain(format!("row {row} outside 1..={rows}")));
    }
    let support = FerrersDiagram::new(
        code.support.columns().iter().map(|&c| if c >= row { c - 1 } else { c }).collect(),
    )?;
    let gens: Vec<Matrix> = code.basis().iter().map(|m| m.without_row(row - 1)).collect();
    MatrixCode::new(code.field(), support, rows - 1, cols, &gens)
}

/// Moves row `row` (1-based) to the top, keeping the others in order.
pub fn row_to_top(code: &MatrixCode, row: usize) -> Result<MatrixCode> {
    let (rows, cols) = code.shape();
    if row == 0 || row > rows {
        return Err(Error::domain(format!("row {row} outside 1..={rows}")));
    }
    if code.support != FerrersDiagram::new(vec![rows; cols])? {
        return Err(Error::domain("row permutation needs a rectangular support"));
    }
    let perm: Vec<usize> = std::iter::once(row - 1).chain((0..rows).filter(|&i| i != row - 1)).collect();
    let gens: Vec<Matrix> = code
        .basis()
        .iter()
        .map(|m| {
            let mut out = Matrix::zeros(rows, cols);
            for (to, &from) in perm.iter().enumerate() {
                for j in 0..cols {
                    out.set(to, j, m.get(from, j));
                }
            }
            out
        })
        .collect();
    MatrixCode::new(code.field(), code.support.clone(), rows, cols, &gens)
}

/// Transfers an MFD code along a digraph path: inclusion where `nu_min`
/// stays, shortening where it drops. Every step is re-verified.
pub fn reduce_along_path(code: &MatrixCode, path: &[FerrersDiagram], d: usize) -> Result<MatrixCode> {
    reduce_along_path_with(code, path, d, RunOptions::default())
}

pub fn reduce_along_path_with(
    code: &MatrixCode,
    path: &[FerrersDiagram],
    d: usize,
    opts: RunOptions,
) -> Result<MatrixCode> {
    let Some(first) = path.first() else {
        return Err(Error::domain("empty path"));
    };
    if first != &code.support {
        return Err(Error::domain(format!("path starts at ({first}), the code lives on ({})", code.support)));
    }
    if !is_mfd_with(code, d, opts)? {
        return Err(Error::domain(format!("the starting code is not MFD on ({first}) for d={d}")));
    }
    let mut cur = code.clone();
    for step in path.windows(2) {
        let (from, to) = (&step[0], &step[1]);
        if reduction_direction(from, to, d)? != Orientation::FirstToSecond {
            return Err(Error::domain(format!("({from}) -> ({to}) is not an edge for d={d}")));
        }
        cur = if to.cardinality() < from.cardinality() {
            let p = *from
                .points()
                .iter()
                .find(|&&pt| !to.contains(pt))
                .expect("one point is removed");
            shorten(&cur, p)?
        } else {
            include(&cur, to)?
        };
        if !is_mfd_with(&cur, d, opts)? {
            return Err(Error::invariant(format!(
                "reduction to ({to}) gave k={} with nu_min={}, not an MFD code",
                cur.dim(),
                to.nu_min_value(d)
            )));
        }
    }
    Ok(cur)
}
