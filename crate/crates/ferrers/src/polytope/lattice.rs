//! Integer points by depth-first sweep of the bounding box.
//!
//! Each node tightens every variable's interval against every row until a
//! fixpoint (bound propagation), then branches on the narrowest free
//! variable. Equalities enter as two opposite inequalities.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;

use super::{LatticePoint, RationalPolytope};
use crate::exec::{self, RunOptions};
use crate::{Error, Result};

/// Search-tree nodes visited before the sweep gives up without `force`.
pub const MAX_SWEEP_NODES: u64 = 1_000_000_000;

struct Row {
    terms: Vec<(usize, i64)>,
    rhs: i64,
}

type Domains = Vec<(i64, i64)>;

fn integer_rows(p: &RationalPolytope) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let scaled = |coeffs: &[super::Rational], rhs: &super::Rational, sign: i128| -> Result<Row> {
        let lcm = coeffs.iter().chain([rhs]).fold(1i128, |l, c| l.lcm(c.denom()));
        let conv = |c: &super::Rational| -> Result<i64> {
            i64::try_from(sign * c.numer() * (lcm / c.denom())).map_err(|_| Error::domain("coefficient overflow"))
        };
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.numer() != &0)
            .map(|(i, c)| Ok((i, conv(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Row { terms, rhs: conv(rhs)? })
    };
    for c in &p.inequalities {
        rows.push(scaled(&c.coeffs, &c.rhs, 1)?);
    }
    for c in &p.equalities {
        rows.push(scaled(&c.coeffs, &c.rhs, 1)?);
        rows.push(scaled(&c.coeffs, &c.rhs, -1)?);
    }
    Ok(rows)
}

/// Tightens `dom` in place; `false` when some row cannot be met.
fn propagate(rows: &[Row], dom: &mut Domains) -> bool {
    for _ in 0..64 {
        let mut changed = false;
        for row in rows {
            let max_of = |(i, a): (usize, i64), dom: &Domains| if a > 0 { a * dom[i].1 } else { a * dom[i].0 };
            let total: i64 = row.terms.iter().map(|&t| max_of(t, dom)).sum();
            if total < row.rhs {
                return false;
            }
            for &(i, a) in &row.terms {
                let rest = total - max_of((i, a), dom);
                let need = row.rhs - rest;
                if a > 0 {
                    let lo = Integer::div_ceil(&need, &a);
                    if lo > dom[i].0 {
                        dom[i].0 = lo;
                        changed = true;
                    }
                } else {
                    let hi = Integer::div_floor(&-need, &-a);
                    if hi < dom[i].1 {
                        dom[i].1 = hi;
                        changed = true;
                    }
                }
                if dom[i].0 > dom[i].1 {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
    true
}

fn sweep(rows: &[Row], dom: Domains, nodes: &AtomicU64, cap: Option<u64>, out: &mut Vec<LatticePoint>) -> Result<()> {
    let seen = nodes.fetch_add(1, Ordering::Relaxed) + 1;
    if cap.is_some_and(|c| seen > c) {
        return Err(Error::resource(format!("integer sweep exceeded {MAX_SWEEP_NODES} nodes; force to continue")));
    }
    let free = (0..dom.len()).filter(|&i| dom[i].0 < dom[i].1).min_by_key(|&i| dom[i].1 - dom[i].0);
    let Some(v) = free else {
        out.push(dom.iter().map(|&(lo, _)| lo).collect());
        return Ok(());
    };
    for value in dom[v].0..=dom[v].1 {
        let mut child = dom.clone();
        child[v] = (value, value);
        if propagate(rows, &mut child) {
            sweep(rows, child, nodes, cap, out)?;
        }
    }
    Ok(())
}

/// All integer points, lexicographically sorted.
pub fn integer_points(p: &RationalPolytope) -> Result<Vec<LatticePoint>> {
    integer_points_with(p, RunOptions::default())
}

pub fn integer_points_with(p: &RationalPolytope, opts: RunOptions) -> Result<Vec<LatticePoint>> {
    if p.bounding_box.len() != p.dim {
        return Err(Error::domain("integer sweep needs a bounding box"));
    }
    let rows = integer_rows(p)?;
    let mut dom: Domains = p
        .bounding_box
        .iter()
        .map(|(lo, hi)| {
            let conv = |v: i128| i64::try_from(v).map_err(|_| Error::domain("box overflow"));
            Ok((conv(lo.ceil().to_integer())?, conv(hi.floor().to_integer())?))
        })
        .collect::<Result<_>>()?;
    if dom.iter().any(|(lo, hi)| lo > hi) || !propagate(&rows, &mut dom) {
        return Ok(Vec::new());
    }
    let nodes = AtomicU64::new(0);
    let cap = (!opts.force).then_some(MAX_SWEEP_NODES);
    let split = (0..dom.len()).filter(|&i| dom[i].0 < dom[i].1).min_by_key(|&i| dom[i].1 - dom[i].0);
    let mut points = match split {
        None => vec![dom.iter().map(|&(lo, _)| lo).collect()],
        Some(v) => {
            let values: Vec<i64> = (dom[v].0..=dom[v].1).collect();
            let parts = exec::map(opts.exec, &values, |&value| {
                let mut child = dom.clone();
                child[v] = (value, value);
                let mut out = Vec::new();
                if propagate(&rows, &mut child) {
                    sweep(&rows, child, &nodes, cap, &mut out)?;
                }
                Ok(out)
            });
            let mut all = Vec::new();
            for part in parts {
                all.extend(part?);
            }
            all
        }
    };
    debug_assert!(points.iter().all(|pt| p.contains_int(pt)));
    points.sort();
    Ok(points)
}

/// Integer points of `P_d` counted by their last coordinate.
pub fn delta_split(points: &[LatticePoint]) -> BTreeMap<i64, usize> {
    let mut split = BTreeMap::new();
    for pt in points {
        if let Some(&z) = pt.last() {
            *split.entry(z).or_insert(0) += 1;
        }
    }
    split
}
