//! Exact dense elimination over the rationals and the integers.

use num_integer::Integer;
use num_traits::Zero;

use super::Rational;

/// Determinant by Gaussian elimination.
pub(crate) fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::from_integer(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c];
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest.iter_mut() {
            let f = row[c] / pivot_row[c];
            if f.is_zero() {
                continue;
            }
            for (x, &p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= p * f;
            }
        }
    }
    det
}

/// Unique solution of the square system `m x = rhs`, if `m` is invertible.
pub(crate) fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().zip(rhs).map(|(r, &b)| r.iter().copied().chain([b]).collect()).collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(piv, c);
        let inv = a[c][c].recip();
        for v in a[c][c..].iter_mut() {
            *v *= inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (x, &p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= p * f;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n]).collect())
}

/// Rank of integer rows, fraction-free with gcd normalization. The basis is
/// kept sorted by pivot so each elimination only touches later columns.
pub(crate) fn int_rank(rows: impl IntoIterator<Item = Vec<i64>>) -> usize {
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
    for row in rows {
        let mut v: Vec<i128> = row.into_iter().map(i128::from).collect();
        for (p, b) in &basis {
            if v[*p] != 0 {
                let (x, y) = (b[*p], v[*p]);
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi = *vi * x - bi * y;
                }
                normalize(&mut v);
            }
        }
        if let Some(p) = v.iter().position(|&c| c != 0) {
            let at = basis.partition_point(|(q, _)| *q < p);
            basis.insert(at, (p, v));
        }
    }
    basis.len()
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &c| g.gcd(&c));
    if g > 1 {
        for c in v.iter_mut() {
            *c /= g;
        }
    }
}
