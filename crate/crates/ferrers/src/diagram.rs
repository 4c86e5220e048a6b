//! Ferrers diagrams, the `nu` dimension bound and standard forms.
//!
//! Coordinates are 1-based `(row, col)` with the origin at the top-left.
//! A diagram is stored by its column heights `c_1 >= c_2 >= ... > 0`; the
//! point `(i, j)` belongs to the diagram iff `c_j >= i`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// A 1-based `(row, col)` cell.
pub type Point = (usize, usize);

/// Finite down-left closed subset of the positive quadrant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FerrersDiagram {
    cols: Vec<usize>,
}

impl FerrersDiagram {
    /// Builds a diagram from column heights. Trailing zeros are dropped.
    pub fn new(cols: Vec<usize>) -> Result<Self> {
        if cols.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("column heights {cols:?} are not non-increasing")));
        }
        Ok(Self::from_sorted(cols))
    }

    /// The empty diagram.
    pub fn empty() -> Self {
        Self { cols: Vec::new() }
    }

    pub(crate) fn from_sorted(mut cols: Vec<usize>) -> Self {
        debug_assert!(cols.windows(2).all(|w| w[0] >= w[1]));
        while cols.last() == Some(&0) {
            cols.pop();
        }
        Self { cols }
    }

    /// Builds a diagram from row lengths.
    pub fn from_rows(rows: Vec<usize>) -> Result<Self> {
        Ok(Self::new(rows)?.transpose())
    }

    /// Column heights without trailing zeros.
    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Height `c_j` of column `j` (1-based); zero outside the diagram.
    pub fn col_height(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.cols.get(j - 1).copied().unwrap_or(0)
    }

    /// Length `r_i` of row `i` (1-based).
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.cols.partition_point(|&c| c >= i)
    }

    /// Row lengths `r_1 >= r_2 >= ...`.
    pub fn rows(&self) -> Vec<usize> {
        let h = self.cols.first().copied().unwrap_or(0);
        (1..=h).map(|i| self.row_len(i)).collect()
    }

    /// Number of cells.
    pub fn cardinality(&self) -> usize {
        self.cols.iter().sum()
    }

    /// Smallest `n` with the diagram inside `[n] x [n]`.
    pub fn proper_order(&self) -> usize {
        self.cols.first().copied().unwrap_or(0).max(self.cols.len())
    }

    pub fn contains(&self, (i, j): Point) -> bool {
        i >= 1 && self.col_height(j) >= i
    }

    /// Cells in row-major order.
    pub fn points(&self) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.cardinality());
        for i in 1..=self.cols.first().copied().unwrap_or(0) {
            for j in 1..=self.row_len(i) {
                pts.push((i, j));
            }
        }
        pts
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.cols.len() <= other.cols.len() && self.cols.iter().zip(&other.cols).all(|(a, b)| a <= b)
    }

    /// Mirror image across the main diagonal.
    pub fn transpose(&self) -> Self {
        Self { cols: self.rows() }
    }

    /// Points `P` such that removing `P` leaves a Ferrers diagram, row-major.
    pub fn removable_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = (1..=self.cols.len())
            .filter(|&j| self.col_height(j) > self.col_height(j + 1))
            .map(|j| (self.col_height(j), j))
            .collect();
        pts.sort_unstable();
        pts
    }

    /// Points `P` such that adding `P` gives a Ferrers diagram, row-major.
    pub fn addible_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = (1..=self.cols.len() + 1)
            .filter(|&j| j == 1 || self.col_height(j - 1) > self.col_height(j))
            .map(|j| (self.col_height(j) + 1, j))
            .collect();
        pts.sort_unstable();
        pts
    }

    /// The diagram with `p` added; `p` must be addible.
    pub fn with_point(&self, p: Point) -> Result<Self> {
        let (i, j) = p;
        if j == 0 || i != self.col_height(j) + 1 || (j > 1 && self.col_height(j - 1) < i) {
            return Err(Error::domain(format!("{p:?} is not addible to ({self})")));
        }
        let mut cols = self.cols.clone();
        if j > cols.len() {
            cols.push(1);
        } else {
            cols[j - 1] += 1;
        }
        Ok(Self { cols })
    }

    /// The diagram with `p` removed; `p` must be removable.
    pub fn without_point(&self, p: Point) -> Result<Self> {
        let (i, j) = p;
        if i == 0 || i != self.col_height(j) || self.col_height(j + 1) >= i {
            return Err(Error::domain(format!("{p:?} is not removable from ({self})")));
        }
        let mut cols = self.cols.clone();
        cols[j - 1] -= 1;
        Ok(Self::from_sorted(cols))
    }

    /// `nu_j(D, d)`: cells left after deleting the first `j` columns and the
    /// first `d - 1 - j` rows.
    pub fn nu(&self, d: usize, j: usize) -> Result<usize> {
        if d == 0 || j >= d {
            return Err(Error::domain(format!("nu_j needs 0 <= j <= d-1 and d >= 1, got j={j}, d={d}")));
        }
        Ok(nu_cols(&self.cols, d, j))
    }

    /// `(nu_0, ..., nu_{d-1})`. Empty for `d = 0`.
    pub fn nu_profile(&self, d: usize) -> Vec<usize> {
        (0..d).map(|j| nu_cols(&self.cols, d, j)).collect()
    }

    /// Minimum of the profile (zero for `d = 0`).
    pub fn nu_min_value(&self, d: usize) -> usize {
        nu_min_cols(&self.cols, d)
    }

    /// The `(a, b)`-standard form of `(D, d)`, or `None` when `D` meets the
    /// quadrant `{d-1, ...} x {d-1, ...}` in anything but a nonempty full
    /// rectangle anchored at `(d-1, d-1)`.
    pub fn standard_form(&self, d: usize) -> Result<Option<StandardForm>> {
        if d < 2 {
            return Err(Error::domain(format!("standard form needs d >= 2, got {d}")));
        }
        let a = self.col_height(d - 1);
        if a < d - 1 {
            return Ok(None);
        }
        let b = self.row_len(d - 1);
        if (d - 1..=b).any(|j| self.col_height(j) != a) {
            return Ok(None);
        }
        let y_cols = (1..d - 1).map(|i| self.col_height(i) - a).collect();
        let x_cols = (1..d - 1).map(|i| self.row_len(i) - b).collect();
        Ok(Some(StandardForm { d, a, b, x_cols, y_cols }))
    }
}

pub(crate) fn nu_cols(cols: &[usize], d: usize, j: usize) -> usize {
    let cut = d - 1 - j;
    cols.iter().skip(j).map(|&c| c.saturating_sub(cut)).sum()
}

pub(crate) fn nu_min_cols(cols: &[usize], d: usize) -> usize {
    (0..d).map(|j| nu_cols(cols, d, j)).min().unwrap_or(0)
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.cols.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FerrersDiagram {
    type Err = Error;

    /// Parses `"5,4,4,1,1"`; `""` and `"-"` denote the empty diagram.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s.is_empty() || s == "-" {
            return Ok(Self::empty());
        }
        let cols = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::domain(format!("bad column height {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(cols)
    }
}

impl Serialize for FerrersDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A diagram together with a target minimum rank distance `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramPair {
    pub diagram: FerrersDiagram,
    pub d: usize,
}

/// Minimum of the `nu` profile and the indices attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuMin {
    pub value: usize,
    pub argmin: Vec<usize>,
}

impl DiagramPair {
    pub fn new(diagram: FerrersDiagram, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("d must be positive"));
        }
        Ok(Self { diagram, d })
    }

    pub fn nu(&self, j: usize) -> Result<usize> {
        self.diagram.nu(self.d, j)
    }

    pub fn nu_profile(&self) -> Vec<usize> {
        self.diagram.nu_profile(self.d)
    }

    pub fn nu_min(&self) -> NuMin {
        let profile = self.nu_profile();
        let value = profile.iter().copied().min().unwrap_or(0);
        let argmin = (0..profile.len()).filter(|&j| profile[j] == value).collect();
        NuMin { value, argmin }
    }

    pub fn standard_form(&self) -> Result<Option<StandardForm>> {
        self.diagram.standard_form(self.d)
    }
}

/// Decomposition `D = ([a] x [b]) + X^T + Y` of a pair in standard form.
///
/// `x_cols` and `y_cols` hold `d - 2` entries; `c_{d-1}(X) = c_{d-1}(Y) = 0`
/// is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StandardForm {
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub x_cols: Vec<usize>,
    pub y_cols: Vec<usize>,
}

impl StandardForm {
    /// `c_i(X)` for `i` in `[d-1]`, zero at `i = d-1`.
    pub fn x(&self, i: usize) -> usize {
        self.x_cols.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `c_i(Y)` for `i` in `[d-1]`, zero at `i = d-1`.
    pub fn y(&self, i: usize) -> usize {
        self.y_cols.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Reassembles `([a] x [b]) + X^T + Y`.
    ///
    /// Fails unless `a, b >= d-1` and both column lists are non-increasing
    /// of length `d - 2`.
    pub fn compose(&self) -> Result<FerrersDiagram> {
        let d = self.d;
        let valid = d >= 2
            && self.a + 1 >= d
            && self.b + 1 >= d
            && self.x_cols.len() == d - 2
            && self.y_cols.len() == d - 2
            && self.x_cols.windows(2).all(|w| w[0] >= w[1])
            && self.y_cols.windows(2).all(|w| w[0] >= w[1]);
        if !valid {
            return Err(Error::domain(format!("invalid standard form {self:?}")));
        }
        let mut cols = vec![self.a; self.b];
        for (i, y) in self.y_cols.iter().enumerate() {
            cols[i] += y;
        }
        let widest = self.x_cols.first().copied().unwrap_or(0);
        cols.extend((1..=widest).map(|t| self.x_cols.iter().filter(|&&x| x >= t).count()));
        Ok(FerrersDiagram::from_sorted(cols))
    }
}

/// Named diagram families.
pub mod families {
    use super::FerrersDiagram;
    use crate::{Error, Result};

    fn build(cols: Vec<usize>) -> FerrersDiagram {
        FerrersDiagram::from_sorted(cols)
    }

    /// `[rows] x [cols]`.
    pub fn rectangle(rows: usize, cols: usize) -> FerrersDiagram {
        if rows == 0 {
            return FerrersDiagram::empty();
        }
        build(vec![rows; cols])
    }

    /// `A_n = [n] x [n]`.
    pub fn square(n: usize) -> FerrersDiagram {
        rectangle(n, n)
    }

    /// `T_n = (n, n-1, ..., 1)`.
    pub fn triangle(n: usize) -> FerrersDiagram {
        build((1..=n).rev().collect())
    }

    /// `G_n = (n, n-1, ..., n-1, 1)` with `n - 2` middle columns, `n >= 3`.
    pub fn g(n: usize) -> Result<FerrersDiagram> {
        if n < 3 {
            return Err(Error::domain(format!("G_n needs n >= 3, got {n}")));
        }
        let mut cols = vec![n];
        cols.extend(std::iter::repeat_n(n - 1, n - 2));
        cols.push(1);
        Ok(build(cols))
    }

    /// `E_n = E_{n-2,3,1}`, `n >= 4`.
    pub fn e(n: usize) -> Result<FerrersDiagram> {
        if n < 4 {
            return Err(Error::domain(format!("E_n needs n >= 4, got {n}")));
        }
        e_kdr(n - 2, 3, 1)
    }

    /// `F_n = F_{n-2,3,1}`, `n >= 4`.
    pub fn f(n: usize) -> Result<FerrersDiagram> {
        if n < 4 {
            return Err(Error::domain(format!("F_n needs n >= 4, got {n}")));
        }
        f_kdr(n - 2, 3, 1)
    }

    /// `E_{k,d,r}`: `k` columns of height `k + r`, then `d - 1` of height `r`.
    pub fn e_kdr(k: usize, d: usize, r: usize) -> Result<FerrersDiagram> {
        if k == 0 || d == 0 {
            return Err(Error::domain(format!("E_(k,d,r) needs k, d >= 1, got k={k}, d={d}")));
        }
        let mut cols = vec![k + r; k];
        cols.extend(std::iter::repeat_n(r, d - 1));
        Ok(build(cols))
    }

    /// `F_{k,d,r}`: `r` columns of height `k + d - 1`, then `k` of height `k`.
    pub fn f_kdr(k: usize, d: usize, r: usize) -> Result<FerrersDiagram> {
        if k == 0 || d == 0 {
            return Err(Error::domain(format!("F_(k,d,r) needs k, d >= 1, got k={k}, d={d}")));
        }
        let mut cols = vec![k + d - 1; r];
        cols.extend(std::iter::repeat_n(k, k));
        Ok(build(cols))
    }

    /// Sink `L_{n,d,j}`: `c_i = n` for `i <= d-j-1` and `c_i = j` for
    /// `d-j <= i <= n`; requires `j < d <= n`.
    pub fn sink(n: usize, d: usize, j: usize) -> Result<FerrersDiagram> {
        if j >= d || d > n {
            return Err(Error::domain(format!("L_(n,d,j) needs j < d <= n, got n={n}, d={d}, j={j}")));
        }
        Ok(build((1..=n).map(|i| if i < d - j { n } else { j }).collect()))
    }

    /// Named family with its parameters.
    #[derive(Clone, Debug, PartialEq, Eq)]
    pub enum Family {
        Square(usize),
        Rectangle { rows: usize, cols: usize },
        Triangle(usize),
        G(usize),
        E(usize),
        F(usize),
        Ekdr { k: usize, d: usize, r: usize },
        Fkdr { k: usize, d: usize, r: usize },
        Sink { n: usize, d: usize, j: usize },
    }

    impl Family {
        pub fn build(&self) -> Result<FerrersDiagram> {
            match *self {
                Family::Square(n) => Ok(square(n)),
                Family::Rectangle { rows, cols } => Ok(rectangle(rows, cols)),
                Family::Triangle(n) => Ok(triangle(n)),
                Family::G(n) => g(n),
                Family::E(n) => e(n),
                Family::F(n) => f(n),
                Family::Ekdr { k, d, r } => e_kdr(k, d, r),
                Family::Fkdr { k, d, r } => f_kdr(k, d, r),
                Family::Sink { n, d, j } => sink(n, d, j),
            }
        }
    }
}

/// All diagrams inside `[n] x [n]` containing `floor`, in colexicographic
/// order of the zero-padded column sequences.
pub fn enumerate_order(n: usize, floor: &FerrersDiagram) -> Vec<FerrersDiagram> {
    let mut out = Vec::new();
    if floor.proper_order() > n {
        return out;
    }
    let lower: Vec<usize> = (1..=n).map(|j| floor.col_height(j)).collect();
    let mut cols = vec![0usize; n];
    fill_colex(n, n, &lower, &mut cols, &mut out);
    out
}

fn fill_colex(n: usize, pos: usize, lower: &[usize], cols: &mut Vec<usize>, out: &mut Vec<FerrersDiagram>) {
    if pos == 0 {
        out.push(FerrersDiagram::from_sorted(cols.clone()));
        return;
    }
    let min = if pos == n { lower[pos - 1] } else { lower[pos - 1].max(cols[pos]) };
    for h in min..=n {
        cols[pos - 1] = h;
        fill_colex(n, pos - 1, lower, cols, out);
    }
}
