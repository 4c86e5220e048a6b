//! Reference tables for `P_d`, recomputed and checked against stored rows.

use anyhow::{bail, Result};
use clap::ValueEnum;
use ferrers::exec::RunOptions;
use ferrers::polytope::{build_pd, delta_split, integer_points_with, pd_f_vector};

use crate::{csv_rows, Mismatch};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// f-vectors of P_d.
    Fvec,
    /// Integer point totals of P_d.
    Points,
    /// Integer point counts split by z = b - a.
    Delta,
}

const POINTS: [(usize, u64); 6] = [(3, 4), (4, 22), (5, 155), (6, 1301), (7, 12330), (8, 127275)];

const DELTA: [(usize, &[u64]); 4] = [
    (3, &[1, 2, 1]),
    (4, &[2, 5, 8, 5, 2]),
    (5, &[5, 17, 34, 43, 34, 17, 5]),
    (6, &[16, 66, 159, 257, 305, 257, 159, 66, 16]),
];

const FVEC: [(usize, &[u64]); 5] = [
    (3, &[3, 3, 1]),
    (4, &[9, 18, 15, 6, 1]),
    (5, &[27, 81, 108, 81, 36, 9, 1]),
    (6, &[81, 324, 594, 648, 459, 216, 66, 12, 1]),
    (7, &[243, 1215, 2835, 4050, 3915, 2673, 1305, 450, 105, 15, 1]),
];

fn lookup<T: Copy>(table: &[(usize, T)], d: usize) -> Option<T> {
    table.iter().find(|(k, _)| *k == d).map(|&(_, v)| v)
}

fn check(what: &str, d: usize, got: &[u64], want: Option<&[u64]>) -> Result<()> {
    match want {
        Some(w) if w != got => bail!(Mismatch(format!("{what} for d={d}: computed {got:?}, stored {w:?}"))),
        _ => Ok(()),
    }
}

fn points(d: usize, opts: RunOptions) -> Result<Vec<Vec<i64>>> {
    Ok(integer_points_with(&build_pd(d)?, opts)?)
}

fn strings(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

pub fn render(which: Which, d: Option<usize>, opts: RunOptions) -> Result<String> {
    let ds: Vec<usize> = match (d, which) {
        (Some(d), _) => vec![d],
        (None, Which::Fvec) => FVEC.iter().map(|r| r.0).collect(),
        (None, Which::Points) => POINTS.iter().map(|r| r.0).collect(),
        (None, Which::Delta) => DELTA.iter().map(|r| r.0).collect(),
    };
    let single = d.is_some();
    let dmax = *ds.iter().max().expect("at least one row");
    let mut rows: Vec<Vec<String>> = Vec::new();
    match which {
        Which::Fvec => {
            if !single {
                rows.push(std::iter::once("d".to_string()).chain((0..=2 * dmax - 4).map(|i| format!("f{i}"))).collect());
            }
            for &d in &ds {
                let f = pd_f_vector(d, opts)?;
                check("f-vector", d, &f, lookup(&FVEC, d))?;
                rows.push(prefix(single, d, strings(&f)));
            }
        }
        Which::Points => {
            if !single {
                rows.push(vec!["d".into(), "integer_points".into()]);
            }
            for &d in &ds {
                let n = points(d, opts)?.len() as u64;
                let want = lookup(&POINTS, d).map(|w| [w]);
                check("point count", d, &[n], want.as_ref().map(|w| &w[..]))?;
                rows.push(prefix(single, d, vec![n.to_string()]));
            }
        }
        Which::Delta => {
            let span = dmax as i64 - 2;
            if !single {
                let mut header = vec!["d".to_string()];
                header.extend((-span..=span).map(|z| z.to_string()));
                header.push("total".into());
                rows.push(header);
            }
            for &d in &ds {
                let pts = points(d, opts)?;
                let split = delta_split(&pts);
                let counts: Vec<u64> = split.values().map(|&c| c as u64).collect();
                check("delta split", d, &counts, lookup(&DELTA, d))?;
                if single {
                    rows.push(strings(&counts));
                } else {
                    let mut row = vec![d.to_string()];
                    row.extend((-span..=span).map(|z| split.get(&z).map_or(String::new(), usize::to_string)));
                    row.push(pts.len().to_string());
                    rows.push(row);
                }
            }
        }
    }
    csv_rows(rows)
}

fn prefix(single: bool, d: usize, mut cells: Vec<String>) -> Vec<String> {
    if !single {
        cells.insert(0, d.to_string());
    }
    cells
}
