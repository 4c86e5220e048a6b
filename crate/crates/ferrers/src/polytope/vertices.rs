//! Vertex enumeration, generically by basic solutions and for `P_d` by the
//! closed form `U(E_1(tau(X, Y)))` over all covers `X ∪ Y = [k]`.

use itertools::Itertools;

use super::linalg::solve;
use super::{build_pd, q, LatticePoint, Rational, RationalPolytope};
use crate::exec::{self, RunOptions};
use crate::{Error, Result};

/// Candidate bases (choices of active inequalities) tried before the
/// generic enumeration gives up without `force`.
pub const MAX_BASIS_CANDIDATES: u64 = 2_000_000;

/// `tau(X, Y)` for 1-based index sets with `X ∪ Y = [k]`, as
/// `(x'_1..x'_k, y'_1..y'_k)`.
///
/// An index in both sets maps to `(0, 0)`. Otherwise `t_i = 2 + l + r`
/// where `l` and `r` count the consecutive indices of `X ∩ Y` just left and
/// just right of `i`; `i ∈ Y \ X` puts `t_i` on `x'_i` and `i ∈ X \ Y` on
/// `y'_i`.
pub fn tau(k: usize, x: &[usize], y: &[usize]) -> Result<Vec<i64>> {
    let in_x = membership(k, x)?;
    let in_y = membership(k, y)?;
    if let Some(i) = (0..k).find(|&i| !in_x[i] && !in_y[i]) {
        return Err(Error::domain(format!("index {} is in neither set", i + 1)));
    }
    let both: Vec<bool> = (0..k).map(|i| in_x[i] && in_y[i]).collect();
    let mut out = vec![0i64; 2 * k];
    for i in (0..k).filter(|&i| !both[i]) {
        let left = both[..i].iter().rev().take_while(|&&b| b).count();
        let right = both[i + 1..].iter().take_while(|&&b| b).count();
        let t = (2 + left + right) as i64;
        if in_y[i] {
            out[i] = t;
        } else {
            out[k + i] = t;
        }
    }
    Ok(out)
}

fn membership(k: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; k];
    for &i in set {
        if i == 0 || i > k {
            return Err(Error::domain(format!("index {i} outside 1..={k}")));
        }
        m[i - 1] = true;
    }
    Ok(m)
}

/// Appends `z = (1/(k+1)) sum_i i (y'_{k-i+1} - x'_i)` to `(x', y')`.
pub fn embed_e1(point: &[i64]) -> Vec<Rational> {
    let k = point.len() / 2;
    let z: i64 = (1..=k).map(|i| i as i64 * (point[k + k - i] - point[i - 1])).sum();
    let mut out: Vec<Rational> = point.iter().map(|&v| q(v)).collect();
    out.push(Rational::new(z as i128, k as i128 + 1));
    out
}

/// `x_i = x'_i + ... + x'_k`, `y_i = y'_1 + ... + y'_{k-i+1}`; `z` is kept.
pub fn apply_u(point: &[Rational]) -> Vec<Rational> {
    let k = point.len() / 2;
    let (xs, rest) = point.split_at(k);
    let (ys, tail) = rest.split_at(k);
    let x = (0..k).map(|i| xs[i..].iter().sum());
    let y = (0..k).map(|i| ys[..k - i].iter().sum());
    x.chain(y).chain(tail.iter().copied()).collect()
}

/// The `3^{d-2}` vertices of `P_d`, sorted.
pub fn vertices_closed_form(d: usize) -> Result<Vec<LatticePoint>> {
    if d < 3 {
        return Err(Error::domain(format!("P_d needs d >= 3, got {d}")));
    }
    let k = d - 2;
    let covers = 3usize.checked_pow(k as u32).ok_or_else(|| Error::resource("too many covers"))?;
    let mut out = exec::map_range(RunOptions::default().exec, 0..covers, |code| {
        // Base-3 digit of index i: 0 both sets, 1 only Y, 2 only X.
        let (mut x, mut y, mut c) = (Vec::new(), Vec::new(), code);
        for i in 1..=k {
            match c % 3 {
                0 => {
                    x.push(i);
                    y.push(i);
                }
                1 => y.push(i),
                _ => x.push(i),
            }
            c /= 3;
        }
        let v = apply_u(&embed_e1(&tau(k, &x, &y)?));
        v.iter()
            .map(|r| {
                if r.is_integer() {
                    i64::try_from(r.to_integer()).map_err(|_| Error::invariant("vertex overflow"))
                } else {
                    Err(Error::invariant(format!("closed-form vertex has non-integral coordinate {r}")))
                }
            })
            .collect::<Result<LatticePoint>>()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    out.sort();
    debug_assert!(build_pd(d).is_ok_and(|p| out.iter().all(|v| p.contains_int(v))));
    Ok(out)
}

pub fn vertices_generic(p: &RationalPolytope) -> Result<Vec<Vec<Rational>>> {
    vertices_generic_with(p, RunOptions::default())
}

/// Feasible basic solutions: every equality plus `dim - #equalities`
/// inequalities held tight, solved exactly. Equalities must be independent.
pub fn vertices_generic_with(p: &RationalPolytope, opts: RunOptions) -> Result<Vec<Vec<Rational>>> {
    let m = p.inequalities.len();
    let Some(free) = p.dim.checked_sub(p.equalities.len()) else {
        return Err(Error::domain("more equalities than coordinates"));
    };
    let candidates = num_integer::binomial(m as u128, free as u128);
    if !opts.force && candidates > u128::from(MAX_BASIS_CANDIDATES) {
        return Err(Error::resource(format!(
            "{candidates} candidate bases exceed {MAX_BASIS_CANDIDATES}; use the closed form or force"
        )));
    }
    let basic = |active: &[usize]| -> Option<Vec<Rational>> {
        let rows = p.equalities.iter().chain(active.iter().map(|&i| &p.inequalities[i]));
        let (lhs, rhs): (Vec<Vec<Rational>>, Vec<Rational>) = rows.map(|c| (c.coeffs.clone(), c.rhs)).unzip();
        solve(&lhs, &rhs).filter(|x| p.contains(x))
    };
    let mut out: Vec<Vec<Rational>> = if free == 0 {
        basic(&[]).into_iter().collect()
    } else {
        exec::map_range(opts.exec, 0..m, |first| {
            let mut found = Vec::new();
            for rest in (first + 1..m).combinations(free - 1) {
                let mut active = Vec::with_capacity(free);
                active.push(first);
                active.extend(rest);
                found.extend(basic(&active));
            }
            found
        })
        .into_iter()
        .flatten()
        .collect()
    };
    out.sort();
    out.dedup();
    Ok(out)
}
