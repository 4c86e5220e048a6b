use serde::Serialize;

use super::Field;
use crate::{Error, Result};

/// Dense matrix over a [`Field`], row-major, 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged rows"));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Wraps row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::domain(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, f: &Field, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self { data, ..*self })
    }

    pub fn scale(&self, f: &Field, c: u32) -> Self {
        Self { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..*self }
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, f: &Field, c: u32, other: &Self) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::domain("inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Drops row `i`.
    pub fn without_row(&self, i: usize) -> Self {
        let mut data = self.data.clone();
        data.drain(i * self.cols..(i + 1) * self.cols);
        Self { rows: self.rows - 1, cols: self.cols, data }
    }

    /// The `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut b = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        b
    }

    pub fn rank(&self, f: &Field) -> usize {
        rank(f, self)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::domain(format!(
                "shape {}x{} differs from {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Number of pivots after Gaussian elimination.
pub fn rank(f: &Field, m: &Matrix) -> usize {
    if f.q() == 2 && m.cols <= 64 {
        let rows: Vec<u64> = (0..m.rows)
            .map(|i| m.row(i).iter().enumerate().fold(0u64, |acc, (j, &v)| acc | ((v as u64 & 1) << j)))
            .collect();
        return rank_bits(rows);
    }
    let mut a = m.data.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        for k in 0..cols {
            a.swap(r * cols + k, piv * cols + k);
        }
        let inv = f.inv(a[r * cols + c]).expect("nonzero pivot");
        for i in r + 1..rows {
            let factor = f.mul(a[i * cols + c], inv);
            if factor == 0 {
                continue;
            }
            for k in c..cols {
                a[i * cols + k] = f.sub(a[i * cols + k], f.mul(factor, a[r * cols + k]));
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Rank over `GF(2)` of rows packed as bit masks.
pub(crate) fn rank_bits(mut rows: Vec<u64>) -> usize {
    let mut r = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        r += 1;
        let low = pivot & pivot.wrapping_neg();
        for row in rows.iter_mut().skip(i + 1) {
            if *row & low != 0 {
                *row ^= pivot;
            }
        }
    }
    r
}

/// Reduced echelon basis of a subspace of `rows x cols` matrices.
///
/// Coordinates are scanned in `order` (a permutation of `0..rows*cols`,
/// row-major by default). Each vector has a pivot equal to one, the pivot
/// coordinate vanishes in every other vector and pivot ranks increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBasis {
    field: Field,
    rows: usize,
    cols: usize,
    order: Vec<usize>,
    vectors: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl ReducedBasis {
    pub fn new(field: &Field, rows: usize, cols: usize) -> Self {
        Self::with_order(field, rows, cols, (0..rows * cols).collect()).expect("row-major order")
    }

    pub fn with_order(field: &Field, rows: usize, cols: usize, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; rows * cols];
        if order.len() != rows * cols || order.iter().any(|&c| c >= rows * cols || std::mem::replace(&mut seen[c], true)) {
            return Err(Error::domain("coordinate order is not a permutation"));
        }
        Ok(Self { field: field.clone(), rows, cols, order, vectors: Vec::new(), pivots: Vec::new() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Pivot coordinates (row-major indices), in pivot order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.vectors.iter().map(|v| Matrix { rows: self.rows, cols: self.cols, data: v.clone() }).collect()
    }

    /// Residual of `v` after eliminating every pivot coordinate.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut r = v.to_vec();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            let c = r[p];
            if c != 0 {
                for (x, &y) in r.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        r
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.check(m)?;
        Ok(self.residual(&m.data).iter().all(|&x| x == 0))
    }

    /// Adds `m` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, m: &Matrix) -> Result<bool> {
        self.check(m)?;
        Ok(self.insert_vec(m.data.clone()))
    }

    pub(crate) fn insert_vec(&mut self, v: Vec<u32>) -> bool {
        let f = self.field.clone();
        let mut r = self.residual(&v);
        let Some(rank_pos) = self.order.iter().position(|&c| r[c] != 0) else {
            return false;
        };
        let p = self.order[rank_pos];
        let inv = f.inv(r[p]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for b in self.vectors.iter_mut() {
            let c = b[p];
            if c != 0 {
                for (x, &y) in b.iter_mut().zip(&r) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let rank_of = |c: usize| self.order.iter().position(|&o| o == c).expect("pivot in order");
        let at = self.pivots.iter().position(|&q| rank_of(q) > rank_pos).unwrap_or(self.pivots.len());
        self.pivots.insert(at, p);
        self.vectors.insert(at, r);
        true
    }

    /// Coefficients expressing `m` in this basis, if it lies in the span.
    pub fn coefficients(&self, m: &Matrix) -> Result<Option<Vec<u32>>> {
        if !self.contains(m)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| m.data[p]).collect()))
    }

    fn check(&self, m: &Matrix) -> Result<()> {
        if (m.rows, m.cols) != (self.rows, self.cols) {
            return Err(Error::domain(format!(
                "a {}x{} matrix does not fit a {}x{} basis",
                m.rows, m.cols, self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// Reduced echelon basis of the span of `basis`, scanning coordinates in
/// `order` (row-major when `None`).
pub fn row_reduce(f: &Field, basis: &[Matrix], order: Option<&[usize]>) -> Result<ReducedBasis> {
    let Some(first) = basis.first() else {
        return Err(Error::domain("cannot infer the shape of an empty basis"));
    };
    let (rows, cols) = (first.rows, first.cols);
    let order = order.map_or_else(|| (0..rows * cols).collect(), <[usize]>::to_vec);
    let mut rb = ReducedBasis::with_order(f, rows, cols, order)?;
    for m in basis {
        rb.insert(m)?;
    }
    Ok(rb)
}

/// Whether `m` lies in the span of `basis`.
pub fn in_span(f: &Field, m: &Matrix, basis: &[Matrix]) -> Result<bool> {
    if basis.is_empty() {
        return Ok(m.is_zero());
    }
    row_reduce(f, basis, None)?.contains(m)
}
