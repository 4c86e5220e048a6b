//! Search for an MRD code whose puncturing on a row extends to an MRD code
//! of one less distance, and the matching `E_{n-1,d,1}` MFD code.
//!
//! Base codes are `X G` for the Gabidulin `[n x (n-1), n(n-d), d]` code `G`
//! and invertible `X`; puncturing always drops row 1 of `X G`. Up to row
//! operations on the punctured code, which preserve the target MRD property,
//! only the hyperplane spanned by rows `2..n` of `X` matters, so one `X` is
//! tried per hyperplane, coordinate ones first. Extensions
//! `A^(1), ..., A^(d-1)` are searched as reduced coset representatives: each
//! `A^(l)` vanishes on every pivot of the span built so far and its leading
//! cell comes after that of `A^(l-1)`. The reduced basis of any span
//! containing the punctured code yields such a list, so for each base the
//! search is exhaustive.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use super::construct::{embed, solve_on};
use super::distance::{self, Bits, Dense};
use super::{gabidulin_mrd, is_mfd_with, puncture_row, shorten, MatrixCode};
use crate::diagram::families;
use crate::exec::{self, Exec, RunOptions};
use crate::gf::{Field, Matrix, ReducedBasis};
use crate::{Error, Result};

/// Largest `q^{free cells * (d-1)}` searched without `force`.
pub const MAX_SEARCH_SPACE: u128 = 1 << 32;

#[derive(Clone, Debug, Serialize)]
pub struct SearchWitness {
    /// Normal vector `w` of the kept hyperplane: row 1 of the base is the
    /// Gabidulin row at the first nonzero of `w`, and rows `2..n` span
    /// `{x : w.x = 0}`. A unit vector `e_r` punctures Gabidulin row `r`.
    pub normal: Vec<u32>,
    /// `X G`, punctured on its first row.
    pub base: MatrixCode,
    /// `A^(1..d-1)`, each `(n-1) x (n-1)`.
    pub extension: Vec<Matrix>,
    /// The assembled `E_{n-1,d,1}` code.
    pub mfd_code: MatrixCode,
    pub mfd_verified: bool,
    /// `C ∩ F^{[n] x [n-1]}` of the assembled code is MRD with distance `d`.
    pub recovered_mrd: bool,
    /// The extension read back from the assembled code spans, with the
    /// punctured intersection, an MRD code of distance `d - 1`.
    pub recovered_extension: bool,
}

#[derive(Clone, Debug, Serialize)]
pub enum SearchOutcome {
    Found(Box<SearchWitness>),
    /// Every row and every extension was tried.
    Exhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub d: usize,
    pub q: u32,
    /// Base codes tried, one per hyperplane; `(q^n - 1)/(q - 1)` when exhausted.
    pub bases_tried: usize,
    /// Coset distance checks performed.
    pub candidates_checked: u64,
    pub outcome: SearchOutcome,
}

impl SearchReport {
    pub fn witness(&self) -> Option<&SearchWitness> {
        match &self.outcome {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::Exhausted => None,
        }
    }
}

pub fn punct_inclusion_search(n: usize, d: usize, q: u32) -> Result<SearchReport> {
    punct_inclusion_search_with(n, d, q, RunOptions::default())
}

pub fn punct_inclusion_search_with(n: usize, d: usize, q: u32, opts: RunOptions) -> Result<SearchReport> {
    if d < 2 || d + 1 > n {
        return Err(Error::domain(format!("the search needs 2 <= d <= n-1, got n={n}, d={d}")));
    }
    punct_inclusion_search_from(&gabidulin_mrd(n, n - 1, d, q)?, d, opts)
}

/// The search with a caller-supplied `[n x (n-1), n(n-d), d]` MRD base.
pub fn punct_inclusion_search_from(c: &MatrixCode, d: usize, opts: RunOptions) -> Result<SearchReport> {
    let (n, cols) = c.shape();
    if d < 2 || d + 1 > n || cols + 1 != n || c.support() != &families::rectangle(n, n - 1) {
        return Err(Error::domain(format!("the base must be n x (n-1) with 2 <= d <= n-1, got {n} x {cols}, d={d}")));
    }
    if !is_mfd_with(c, d, opts)? {
        return Err(Error::domain(format!("the base is not an MRD code of distance {d}")));
    }
    let field = c.field().clone();
    let q = field.q();
    let side = n - 1;
    let free = (side * side).saturating_sub(c.dim());
    let space = (q as u128).checked_pow((free * (d - 1)) as u32).unwrap_or(u128::MAX);
    if !opts.force && space > MAX_SEARCH_SPACE {
        return Err(Error::resource(format!("search space {space} exceeds {MAX_SEARCH_SPACE}; force to continue")));
    }
    let checked = AtomicU64::new(0);
    let mut bases_tried = 0;
    for normal in hyperplane_normals(&field, n) {
        bases_tried += 1;
        let base = left_multiply(c, &row_transform(&field, &normal))?;
        let punct = puncture_row(&base, 1)?;
        if punct.dim() != c.dim() {
            return Err(Error::invariant(format!("puncturing along {normal:?} lost dimension")));
        }
        let ctx = Ctx { field: &field, side, target: d - 1, checked: &checked };
        let mut span = ReducedBasis::new(&field, side, side);
        for m in punct.basis() {
            span.insert(&m)?;
        }
        let firsts = ctx.candidates(&span, None);
        let found = exec::find_first(opts.exec, &firsts, |a| {
            if !ctx.extends(&span, a) {
                return None;
            }
            let mut next = span.clone();
            next.insert_vec(a.entries().to_vec());
            let mut chosen = vec![a.clone()];
            ctx.dfs(&next, &mut chosen).then_some(chosen)
        });
        if let Some(extension) = found {
            let witness = assemble(&field, n, d, normal, base, extension, opts)?;
            return Ok(SearchReport {
                n,
                d,
                q,
                bases_tried,
                candidates_checked: checked.load(Ordering::Relaxed),
                outcome: SearchOutcome::Found(Box::new(witness)),
            });
        }
    }
    Ok(SearchReport {
        n,
        d,
        q,
        bases_tried,
        candidates_checked: checked.load(Ordering::Relaxed),
        outcome: SearchOutcome::Exhausted,
    })
}

/// Nonzero vectors of `GF(q)^n` with first nonzero entry 1: the unit
/// vectors, then the rest in increasing base-`q` order.
fn hyperplane_normals(field: &Field, n: usize) -> Vec<Vec<u32>> {
    let q = field.q() as usize;
    let units = (0..n).map(|r| (0..n).map(|i| u32::from(i == r)).collect::<Vec<_>>());
    let others = (1..q.pow(n as u32)).filter_map(move |mut code| {
        let mut v = vec![0u32; n];
        for x in v.iter_mut().rev() {
            *x = (code % q) as u32;
            code /= q;
        }
        let lead = v.iter().position(|&x| x != 0)?;
        (v[lead] == 1 && v.iter().filter(|&&x| x != 0).count() > 1).then_some(v)
    });
    units.chain(others).collect()
}

/// Invertible `X` with row 1 `e_p` (`p` the first nonzero of `w`) and rows
/// `e_i - w_i e_p`, `i != p`, spanning `ker w`.
fn row_transform(field: &Field, w: &[u32]) -> Matrix {
    let n = w.len();
    let p = w.iter().position(|&x| x != 0).expect("nonzero normal");
    let mut x = Matrix::zeros(n, n);
    x.set(0, p, 1);
    for (r, i) in (0..n).filter(|&i| i != p).enumerate() {
        x.set(r + 1, i, 1);
        x.set(r + 1, p, field.neg(w[i]));
    }
    x
}

fn left_multiply(code: &MatrixCode, x: &Matrix) -> Result<MatrixCode> {
    let (rows, cols) = code.shape();
    let gens = code.basis().iter().map(|m| x.mul(code.field(), m)).collect::<Result<Vec<_>>>()?;
    MatrixCode::new(code.field(), code.support().clone(), rows, cols, &gens)
}

struct Ctx<'a> {
    field: &'a Field,
    side: usize,
    /// Required distance of the extended code.
    target: usize,
    checked: &'a AtomicU64,
}

impl Ctx<'_> {
    /// Nonzero matrices vanishing on the pivots of `span`, leading cell after
    /// `after`, in increasing base-`q` order of their free cells.
    fn candidates(&self, span: &ReducedBasis, after: Option<usize>) -> Vec<Matrix> {
        let cells = self.side * self.side;
        let free: Vec<usize> = (0..cells).filter(|c| !span.pivots().contains(c)).collect();
        let q = self.field.q() as usize;
        let total = q.pow(free.len() as u32);
        let mut out = Vec::new();
        for code in 1..total {
            let mut entries = vec![0u32; cells];
            let mut c = code;
            for &cell in free.iter().rev() {
                entries[cell] = (c % q) as u32;
                c /= q;
            }
            let lead = entries.iter().position(|&v| v != 0).expect("nonzero");
            if after.is_some_and(|a| lead <= a) {
                continue;
            }
            out.push(Matrix::from_vec(self.side, self.side, entries).expect("square"));
        }
        out
    }

    /// `span + <a>` keeps distance at least `target`: checks the coset
    /// `a + span` (other nonzero cosets are its scalar multiples).
    fn extends(&self, span: &ReducedBasis, a: &Matrix) -> bool {
        self.checked.fetch_add(1, Ordering::Relaxed);
        let basis = span.matrices();
        let stop = self.target - 1;
        let least = if self.field.q() == 2 {
            distance::min_rank_coset(&Bits, a, &basis, stop, Exec::Sequential)
        } else {
            let gens = distance::prime_generators(self.field, &basis);
            let dense = Dense { field: self.field.clone(), rows: self.side, cols: self.side };
            // Cosets over GF(q) need every GF(q)^* multiple of `a` as well.
            let scaled: Vec<Matrix> = self.field.elements().skip(1).map(|s| a.scale(self.field, s)).collect();
            scaled.iter().map(|m| distance::min_rank_coset(&dense, m, &gens, stop, Exec::Sequential)).min().unwrap_or(0)
        };
        least >= self.target
    }

    fn dfs(&self, span: &ReducedBasis, chosen: &mut Vec<Matrix>) -> bool {
        if chosen.len() == self.target {
            return true;
        }
        let last = chosen.last().and_then(|m| m.entries().iter().position(|&v| v != 0));
        for a in self.candidates(span, last) {
            if self.extends(span, &a) {
                let mut next = span.clone();
                next.insert_vec(a.entries().to_vec());
                chosen.push(a);
                if self.dfs(&next, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// Builds `E_{n-1,d,1}` from the witness, verifies it, and takes it apart
/// again.
fn assemble(
    field: &Field,
    n: usize,
    d: usize,
    normal: Vec<u32>,
    base: MatrixCode,
    extension: Vec<Matrix>,
    opts: RunOptions,
) -> Result<SearchWitness> {
    let cols = n - 1 + d - 1;
    let support = families::e_kdr(n - 1, d, 1)?;
    let mut gens: Vec<Matrix> = base.basis().iter().map(|m| embed(m, n, cols, 0, 0)).collect();
    for (l, a) in extension.iter().enumerate() {
        let mut b = embed(a, n, cols, 1, 0);
        b.set(0, n - 1 + l, 1);
        gens.push(b);
    }
    let mfd_code = MatrixCode::new(field, support, n, cols, &gens)?;
    let mfd_verified = is_mfd_with(&mfd_code, d, opts)?;

    let mut inner = mfd_code.clone();
    for l in (1..d).rev() {
        inner = shorten(&inner, (1, n - 1 + l))?;
    }
    let c0 = MatrixCode::new(
        field,
        families::rectangle(n, n - 1),
        n,
        n - 1,
        &inner.basis().iter().map(|m| m.block(0, 0, n, n - 1)).collect::<Vec<_>>(),
    )?;
    let recovered_mrd = is_mfd_with(&c0, d, opts)?;

    let extra: Vec<_> = (1..d).map(|l| (1, n - 1 + l)).collect();
    let units = solve_on(&mfd_code, &extra, false)?;
    let mut span: Vec<Matrix> = puncture_row(&c0, 1)?.basis();
    span.extend(units.values().map(|m| m.block(1, 0, n - 1, n - 1)));
    let rebuilt = MatrixCode::new(field, families::square(n - 1), n - 1, n - 1, &span)?;
    let recovered_extension = is_mfd_with(&rebuilt, d - 1, opts)?;

    Ok(SearchWitness { normal, base, extension, mfd_code, mfd_verified, recovered_mrd, recovered_extension })
}
