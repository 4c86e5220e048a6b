//! `P_d^{(2d-2,d)}` against chess-tournament score sequences.
//!
//! At `b - a = -(d-2)` every `y_j` is forced to zero, leaving a system in
//! `x` alone. `p_j = x_{d-2} + ... + x_{d-j} - j(j-1)` maps its integer
//! points onto the sequences with `p_1 = p_{d-1} = 0`, `p_j >= 0` and
//! `2p_j - p_{j-1} - p_{j+1} <= 2`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{build_pd_ab, integer_points, q, Constraint, RationalPolytope};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChessReport {
    pub d: usize,
    /// Integer solutions of the system in `x`.
    pub x_count: usize,
    /// Integer score sequences `p`.
    pub p_count: usize,
    /// `|P_d^{(2d-2,d)}(Z)|`.
    pub polytope_count: usize,
    /// The map `x -> p` is a bijection and the polytope points are `(x, 0)`.
    pub bijective: bool,
}

fn x_system(d: usize) -> RationalPolytope {
    let k = d - 2;
    let unit = |i: usize| {
        let mut v = vec![0i64; k];
        v[i] = 1;
        v
    };
    let mut inequalities = Vec::new();
    for j in 0..k.saturating_sub(1) {
        let mut v = unit(j);
        v[j + 1] = -1;
        inequalities.push(Constraint::from_ints(&v, 0));
    }
    for i in 0..k {
        inequalities.push(Constraint::from_ints(&unit(i), 0));
    }
    for j in 1..=k {
        // x_{d-2} + ... + x_{d-j} >= j(j-1)
        let mut v = vec![0i64; k];
        for i in 2..=j {
            v[d - i - 1] = 1;
        }
        inequalities.push(Constraint::from_ints(&v, (j * (j - 1)) as i64));
    }
    let total = ((d - 1) * (d - 2)) as i64;
    RationalPolytope {
        dim: k,
        inequalities,
        equalities: vec![Constraint::from_ints(&vec![1; k], total)],
        bounding_box: vec![(q(0), q(total)); k],
    }
}

fn p_system(d: usize) -> RationalPolytope {
    let n = d - 1;
    let unit = |i: usize, s: i64| {
        let mut v = vec![0i64; n];
        v[i] = s;
        v
    };
    let mut inequalities = Vec::new();
    for j in 1..n - 1 {
        // p_{j-1} + p_{j+1} - 2p_j >= -2
        let mut v = unit(j, -2);
        v[j - 1] = 1;
        v[j + 1] = 1;
        inequalities.push(Constraint::from_ints(&v, -2));
    }
    for j in 0..n {
        inequalities.push(Constraint::from_ints(&unit(j, 1), 0));
    }
    let total = ((d - 1) * (d - 2)) as i64;
    RationalPolytope {
        dim: n,
        inequalities,
        equalities: vec![Constraint::from_ints(&unit(0, 1), 0), Constraint::from_ints(&unit(n - 1, 1), 0)],
        bounding_box: vec![(q(0), q(total)); n],
    }
}

/// `p_j` for `j = 1..=d-1`.
fn x_to_p(d: usize, x: &[i64]) -> Vec<i64> {
    (1..d).map(|j| (2..=j).map(|i| x[d - i - 1]).sum::<i64>() - (j * (j - 1)) as i64).collect()
}

pub fn chess_bijection_check(d: usize) -> Result<ChessReport> {
    if d < 3 {
        return Err(Error::domain(format!("need d >= 3, got {d}")));
    }
    let xs = integer_points(&x_system(d))?;
    let ps: BTreeSet<Vec<i64>> = integer_points(&p_system(d))?.into_iter().collect();
    let images: BTreeSet<Vec<i64>> = xs.iter().map(|x| x_to_p(d, x)).collect();
    let poly = build_pd_ab(d, 2 * d - 2, d)?.integer_points()?;
    let k = d - 2;
    let poly_x: BTreeSet<Vec<i64>> =
        poly.iter().filter(|pt| pt[k..].iter().all(|&y| y == 0)).map(|pt| pt[..k].to_vec()).collect();
    let x_set: BTreeSet<Vec<i64>> = xs.iter().cloned().collect();
    let bijective = images.len() == xs.len() && images == ps && poly_x.len() == poly.len() && poly_x == x_set;
    Ok(ChessReport { d, x_count: xs.len(), p_count: ps.len(), polytope_count: poly.len(), bijective })
}
