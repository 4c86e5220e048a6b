//! The classifying polytopes of irreducible pairs.
//!
//! Coordinates of `P_d` are `(x_1..x_k, y_1..y_k, z)` with `k = d - 2`;
//! `P_d^{(a,b)}` drops `z`, which is pinned to `b - a`. All arithmetic is
//! exact.

mod chess;
mod faces;
mod lattice;
mod linalg;
mod vertices;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use chess::{chess_bijection_check, ChessReport};
pub use faces::{
    f_vector, f_vector_with, incidence_isomorphic, pd_f_vector, product_of_triangles_fvector,
    triangle_product_incidence, vertex_facet_incidence, Incidence, MAX_FACE_LATTICE_D,
};
pub use lattice::{delta_split, integer_points, integer_points_with, MAX_SWEEP_NODES};
pub use vertices::{apply_u, embed_e1, tau, vertices_closed_form, vertices_generic, vertices_generic_with, MAX_BASIS_CANDIDATES};

use crate::diagram::{DiagramPair, FerrersDiagram, StandardForm};
use crate::exec::RunOptions;
use crate::{Error, Result};

/// Exact rational scalar.
pub type Rational = num_rational::Ratio<i128>;

/// Integer point.
pub type LatticePoint = Vec<i64>;

pub(crate) fn q(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

/// `<coeffs, x> >= rhs` or `<coeffs, x> = rhs`, depending on the list it sits in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn from_ints(coeffs: &[i64], rhs: i64) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| q(c)).collect(), rhs: q(rhs) }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn lhs_int(&self, x: &[i64]) -> Rational {
        self.coeffs.iter().zip(x).fold(Rational::zero(), |acc, (a, &b)| acc + a * q(b))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
            write!(f, "{}{sign}{coef}v{}", if first { "" } else { " " }, i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// H-representation with a bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub dim: usize,
    pub inequalities: Vec<Constraint>,
    pub equalities: Vec<Constraint>,
    pub bounding_box: Vec<(Rational, Rational)>,
}

impl RationalPolytope {
    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.inequalities.iter().all(|c| c.lhs(x) >= c.rhs)
            && self.equalities.iter().all(|c| c.lhs(x) == c.rhs)
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        x.len() == self.dim
            && self.inequalities.iter().all(|c| c.lhs_int(x) >= c.rhs)
            && self.equalities.iter().all(|c| c.lhs_int(x) == c.rhs)
    }

    /// Rows as `"lhs >= rhs"` / `"lhs = rhs"` text over variables `v1..`.
    pub fn hrep_strings(&self) -> Vec<String> {
        let ineq = self.inequalities.iter().map(|c| format!("{c} >= {}", c.rhs));
        let eq = self.equalities.iter().map(|c| format!("{c} = {}", c.rhs));
        ineq.chain(eq).collect()
    }
}

/// `P_d^{(a,b)}`: a polytope, or for `a = b = d - 1` a union of `d - 2`
/// polytopes (the set is not convex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdabSet {
    Polytope(RationalPolytope),
    Union(Vec<RationalPolytope>),
}

impl PdabSet {
    pub fn members(&self) -> &[RationalPolytope] {
        match self {
            PdabSet::Polytope(p) => std::slice::from_ref(p),
            PdabSet::Union(ps) => ps,
        }
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.members().iter().any(|p| p.contains_int(x))
    }

    /// Integer points of the set, sorted and without repeats.
    pub fn integer_points(&self) -> Result<Vec<LatticePoint>> {
        let mut pts = Vec::new();
        for p in self.members() {
            pts.extend(integer_points(p)?);
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }
}

/// Rows shared by both polytopes; `z` is column `2k` when `with_z`.
fn base_rows(d: usize, delta: i64, with_z: bool) -> (Vec<Constraint>, Constraint) {
    let k = d - 2;
    let n = 2 * k + usize::from(with_z);
    let unit = |i: usize, s: i64| {
        let mut v = vec![0i64; n];
        v[i] = s;
        v
    };
    let mut ineq = Vec::new();
    for j in 0..k.saturating_sub(1) {
        let mut v = unit(j, 1);
        v[j + 1] = -1;
        ineq.push(Constraint::from_ints(&v, 0));
    }
    for j in 0..k.saturating_sub(1) {
        let mut v = unit(k + j, 1);
        v[k + j + 1] = -1;
        ineq.push(Constraint::from_ints(&v, 0));
    }
    for i in 0..2 * k {
        ineq.push(Constraint::from_ints(&unit(i, 1), 0));
    }
    let dd = d as i64;
    for j in 1..=k {
        // j(z + d - 1 - j) + x_k + ... + x_{k-j+2} - (y_1 + ... + y_j) >= 0
        let mut v = vec![0i64; n];
        for i in 0..j.saturating_sub(1) {
            v[k - 1 - i] = 1;
        }
        for i in 0..j {
            v[k + i] = -1;
        }
        let jj = j as i64;
        if with_z {
            v[2 * k] = jj;
            ineq.push(Constraint::from_ints(&v, -jj * (dd - 1 - jj)));
        } else {
            ineq.push(Constraint::from_ints(&v, -jj * (delta + dd - 1 - jj)));
        }
    }
    // sum y - sum x = z (d - 1)
    let mut v = vec![0i64; n];
    for i in 0..k {
        v[i] = -1;
        v[k + i] = 1;
    }
    let eq = if with_z {
        v[2 * k] = -(dd - 1);
        Constraint::from_ints(&v, 0)
    } else {
        Constraint::from_ints(&v, delta * (dd - 1))
    };
    (ineq, eq)
}

fn xy_box(d: usize) -> Vec<(Rational, Rational)> {
    vec![(q(0), q(2 * d as i64 - 4)); 2 * (d - 2)]
}

/// `P_d` in `R^{2d-3}`, `d >= 3`.
pub fn build_pd(d: usize) -> Result<RationalPolytope> {
    if d < 3 {
        return Err(Error::domain(format!("P_d needs d >= 3, got {d}")));
    }
    let (inequalities, eq) = base_rows(d, 0, true);
    let mut bounding_box = xy_box(d);
    bounding_box.push((q(2 - d as i64), q(d as i64 - 2)));
    Ok(RationalPolytope { dim: 2 * d - 3, inequalities, equalities: vec![eq], bounding_box })
}

/// `P_d^{(a,b)}` in `R^{2d-4}`; needs `d >= 3` and `min(a, b) >= d - 1`.
pub fn build_pd_ab(d: usize, a: usize, b: usize) -> Result<PdabSet> {
    if d < 3 {
        return Err(Error::domain(format!("P_d^(a,b) needs d >= 3, got {d}")));
    }
    if a.min(b) + 1 < d {
        return Err(Error::domain(format!("P_d^(a,b) needs min(a,b) >= d-1, got a={a}, b={b}, d={d}")));
    }
    let delta = b as i64 - a as i64;
    let (inequalities, eq) = base_rows(d, delta, false);
    let base = RationalPolytope { dim: 2 * d - 4, inequalities, equalities: vec![eq], bounding_box: xy_box(d) };
    if a == d - 1 && b == d - 1 {
        let k = d - 2;
        let members = (0..k)
            .map(|j| {
                let mut p = base.clone();
                let row = p.inequalities[p.inequalities.len() - k + j].clone();
                p.equalities.push(row);
                p
            })
            .collect();
        return Ok(PdabSet::Union(members));
    }
    Ok(PdabSet::Polytope(base))
}

/// `A_k` (tridiagonal 2/-1), `B_k = (min(i,j)(k+1-max(i,j)))` and
/// `b_k = (i(k+1-i))`. `B_k` is `(k+1) A_k^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuredMatrices {
    pub k: usize,
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub b_vec: Vec<i64>,
}

impl StructuredMatrices {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be positive"));
        }
        let kk = k as i64;
        let a = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let b = (1..=kk).map(|i| (1..=kk).map(|j| i.min(j) * (kk + 1 - i.max(j))).collect()).collect();
        let b_vec = (1..=kk).map(|i| i * (kk + 1 - i)).collect();
        Ok(Self { k, a, b, b_vec })
    }
}

/// Checks `det A_k = k+1`, `B_k A_k = A_k B_k = (k+1) I`,
/// `B_k 2 = (k+1) b_k`, `A_k b_k = 2` and `(1, ..., k) A_k = (0, ..., 0, k+1)`.
pub fn structured_matrix_checks(k: usize) -> Result<bool> {
    let s = StructuredMatrices::new(k)?;
    let kk = k as i64;
    let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..k).map(|i| (0..k).map(|j| (0..k).map(|t| x[i][t] * y[t][j]).sum()).collect()).collect()
    };
    let scaled_identity: Vec<Vec<i64>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { kk + 1 } else { 0 }).collect()).collect();
    let det = linalg::determinant(&s.a.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>());
    let ab: Vec<i64> = (0..k).map(|i| (0..k).map(|t| s.a[i][t] * s.b_vec[t]).sum()).collect();
    let b2: Vec<i64> = (0..k).map(|i| (0..k).map(|t| 2 * s.b[i][t]).sum()).collect();
    let row: Vec<i64> = (0..k).map(|j| (0..k).map(|i| (i as i64 + 1) * s.a[i][j]).sum()).collect();
    let mut expected_row = vec![0i64; k];
    expected_row[k - 1] = kk + 1;
    Ok(det == q(kk + 1)
        && mul(&s.b, &s.a) == scaled_identity
        && mul(&s.a, &s.b) == scaled_identity
        && b2.iter().zip(&s.b_vec).all(|(&l, &r)| l == (kk + 1) * r)
        && ab.iter().all(|&v| v == 2)
        && row == expected_row)
}

/// `Psi_d^mu`: the pair in standard form with `min(a, b) = mu`, `b - a = z`
/// and `X`/`Y` columns read from the point.
pub fn psi(d: usize, mu: usize, point: &[i64]) -> Result<DiagramPair> {
    if d < 3 || mu < d {
        return Err(Error::domain(format!("psi needs 3 <= d <= mu, got d={d}, mu={mu}")));
    }
    let p = build_pd(d)?;
    if !p.contains_int(point) {
        return Err(Error::domain(format!("{point:?} is not an integer point of P_{d}")));
    }
    let k = d - 2;
    let z = point[2 * k];
    let (a, b) = if z >= 0 { (mu, mu + z as usize) } else { (mu + (-z) as usize, mu) };
    psi_ab(d, a, b, &point[..2 * k])
}

/// `Psi_d^{(a,b)}` on a point of `P_d^{(a,b)}`.
pub fn psi_ab(d: usize, a: usize, b: usize, point: &[i64]) -> Result<DiagramPair> {
    let set = build_pd_ab(d, a, b)?;
    if !set.contains_int(point) {
        return Err(Error::domain(format!("{point:?} is not an integer point of P_{d}^({a},{b})")));
    }
    let k = d - 2;
    let sf = StandardForm {
        d,
        a,
        b,
        x_cols: point[..k].iter().map(|&v| v as usize).collect(),
        y_cols: point[k..2 * k].iter().map(|&v| v as usize).collect(),
    };
    DiagramPair::new(sf.compose()?, d)
}

/// Inverse of [`psi`]: returns `(mu, point)`.
pub fn psi_inverse(pair: &DiagramPair) -> Result<(usize, LatticePoint)> {
    let d = pair.d;
    if d < 3 {
        return Err(Error::domain(format!("psi needs d >= 3, got {d}")));
    }
    let sf = pair
        .standard_form()?
        .ok_or_else(|| Error::domain(format!("({}, {d}) is not in standard form", pair.diagram)))?;
    let mu = sf.a.min(sf.b);
    let mut point: LatticePoint = sf.x_cols.iter().chain(&sf.y_cols).map(|&v| v as i64).collect();
    point.push(sf.b as i64 - sf.a as i64);
    if mu < d || !build_pd(d)?.contains_int(&point) {
        return Err(Error::domain(format!("({}, {d}) is not in the image of psi", pair.diagram)));
    }
    Ok((mu, point))
}

/// Diagram text of `psi(d, mu, point)`, for reports.
pub fn psi_diagram(d: usize, mu: usize, point: &[i64]) -> Result<FerrersDiagram> {
    Ok(psi(d, mu, point)?.diagram)
}

/// Summary of `P_d` emitted by the command-line tool.
#[derive(Clone, Debug, Serialize)]
pub struct PolytopeReport {
    pub d: usize,
    pub hrep: Vec<String>,
    pub vertices: Vec<LatticePoint>,
    pub n_integer_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_points: Option<Vec<LatticePoint>>,
    /// `None` when the face lattice is past its guard.
    pub f_vector: Option<Vec<u64>>,
    /// Point counts keyed by the last coordinate `z = b - a`.
    pub delta_split: BTreeMap<i64, usize>,
}

pub fn report(d: usize, emit_points: bool, opts: RunOptions) -> Result<PolytopeReport> {
    let p = build_pd(d)?;
    let points = integer_points_with(&p, opts)?;
    let f_vector = match pd_f_vector(d, opts) {
        Ok(f) => Some(f),
        Err(Error::Resource(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(PolytopeReport {
        d,
        hrep: p.hrep_strings(),
        vertices: vertices_closed_form(d)?,
        n_integer_points: points.len(),
        delta_split: delta_split(&points),
        integer_points: emit_points.then_some(points),
        f_vector,
    })
}
