//! Exhaustive rank scans over the codewords of a linear matrix code.
//!
//! A code over `GF(p^m)` is handled as a `GF(p)`-space spanned by
//! `beta * B` for every basis matrix `B` and every `beta` in a `GF(p)`-basis
//! of the field. Codewords are then walked with a `p`-ary odometer in which
//! every step adds one generator, so no multiplication happens in the inner
//! loop. Over `GF(2)` a matrix is a list of row bit masks.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::exec::{self, Exec};
use crate::gf::{rank_bits, Field, Matrix};

/// Low odometer digits walked inside one work unit.
const UNIT_DIGITS_BITS: u32 = 12;

pub(crate) trait Space: Sync {
    type Word: Clone + Send + Sync;
    fn p(&self) -> usize;
    fn zero(&self) -> Self::Word;
    fn word(&self, m: &Matrix) -> Self::Word;
    fn add(&self, w: &mut Self::Word, g: &Self::Word);
    fn rank(&self, w: &Self::Word) -> usize;
}

pub(crate) struct Bits;

impl Space for Bits {
    type Word = Vec<u64>;

    fn p(&self) -> usize {
        2
    }

    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }

    fn word(&self, m: &Matrix) -> Vec<u64> {
        (0..m.rows())
            .map(|i| m.row(i).iter().enumerate().fold(0u64, |acc, (j, &v)| acc | (u64::from(v & 1) << j)))
            .collect()
    }

    fn add(&self, w: &mut Vec<u64>, g: &Vec<u64>) {
        if w.is_empty() {
            w.resize(g.len(), 0);
        }
        for (a, b) in w.iter_mut().zip(g) {
            *a ^= b;
        }
    }

    fn rank(&self, w: &Vec<u64>) -> usize {
        rank_bits(w.clone())
    }
}

pub(crate) struct Dense {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
}

impl Space for Dense {
    type Word = Vec<u32>;

    fn p(&self) -> usize {
        self.field.p() as usize
    }

    fn zero(&self) -> Vec<u32> {
        vec![0; self.rows * self.cols]
    }

    fn word(&self, m: &Matrix) -> Vec<u32> {
        m.entries().to_vec()
    }

    fn add(&self, w: &mut Vec<u32>, g: &Vec<u32>) {
        for (a, &b) in w.iter_mut().zip(g) {
            *a = self.field.add(*a, b);
        }
    }

    fn rank(&self, w: &Vec<u32>) -> usize {
        let m = Matrix::from_vec(self.rows, self.cols, w.clone()).expect("word shape");
        crate::gf::rank(&self.field, &m)
    }
}

/// `GF(p)`-generators of the `GF(q)`-span of `basis`.
pub(crate) fn prime_generators(field: &Field, basis: &[Matrix]) -> Vec<Matrix> {
    let betas = field.prime_basis();
    basis.iter().flat_map(|b| betas.iter().map(move |&beta| b.scale(field, beta))).collect()
}

struct Unit<W> {
    start: W,
    low: usize,
}

/// Base words for the units covering `offset + span(gens)`, where the top
/// `gens.len() - low` digits are fixed per unit.
fn units_for<S: Space>(space: &S, offset: &S::Word, gens: &[S::Word], low: usize, out: &mut Vec<Unit<S::Word>>) {
    let p = space.p();
    let high = gens.len() - low;
    let count = p.pow(high as u32);
    for b in 0..count {
        let mut start = offset.clone();
        let mut c = b;
        for g in &gens[low..] {
            for _ in 0..c % p {
                space.add(&mut start, g);
            }
            c /= p;
        }
        out.push(Unit { start, low });
    }
}

fn low_digits(p: usize, len: usize) -> usize {
    let per_unit = (UNIT_DIGITS_BITS as f64 / (p as f64).log2()).floor() as usize;
    len.min(per_unit.max(1))
}

/// Walks `start + span(gens[..low])`; returns the least rank seen, stopping
/// once it is at most `stop_at` or another unit already got there.
fn walk<S: Space>(space: &S, unit: &Unit<S::Word>, gens: &[S::Word], stop_at: usize, best: &AtomicUsize) -> usize {
    let p = space.p();
    let mut cur = unit.start.clone();
    let mut digits = vec![0usize; unit.low];
    let mut least = usize::MAX;
    loop {
        let r = space.rank(&cur);
        if r < least {
            least = r;
            best.fetch_min(r, Ordering::Relaxed);
            if r <= stop_at {
                return least;
            }
        }
        let mut s = 0;
        loop {
            if s == unit.low {
                return least;
            }
            space.add(&mut cur, &gens[s]);
            digits[s] += 1;
            if digits[s] < p {
                break;
            }
            digits[s] = 0;
            s += 1;
        }
        if best.load(Ordering::Relaxed) <= stop_at {
            return least;
        }
    }
}

fn run<S: Space>(space: &S, units: &[Unit<S::Word>], gens: &[S::Word], stop_at: usize, exec: Exec) -> Option<usize> {
    let best = AtomicUsize::new(usize::MAX);
    let found = exec::map(exec, units, |u| {
        if best.load(Ordering::Relaxed) <= stop_at {
            return usize::MAX;
        }
        walk(space, u, gens, stop_at, &best)
    });
    // Units skipped after an early stop report MAX; the stored best is exact
    // whenever it stayed above `stop_at`.
    let least = best.load(Ordering::Relaxed).min(found.into_iter().min().unwrap_or(usize::MAX));
    (least != usize::MAX).then_some(least)
}

/// Least rank over the nonzero codewords, up to `GF(p)^*` scaling: for each
/// `t`, words `g_t + sum_{s<t} c_s g_s`. Stops early at `stop_at`. `None`
/// for the zero code.
pub(crate) fn min_rank<S: Space>(space: &S, gens: &[Matrix], stop_at: usize, exec: Exec) -> Option<usize> {
    let words: Vec<S::Word> = gens.iter().map(|g| space.word(g)).collect();
    let mut units = Vec::new();
    for t in 0..words.len() {
        let low = low_digits(space.p(), t);
        let mut lead = space.zero();
        space.add(&mut lead, &words[t]);
        units_for(space, &lead, &words[..t], low, &mut units);
    }
    run(space, &units, &words, stop_at, exec)
}

/// Least rank over the coset `offset + span(gens)`.
pub(crate) fn min_rank_coset<S: Space>(
    space: &S,
    offset: &Matrix,
    gens: &[Matrix],
    stop_at: usize,
    exec: Exec,
) -> usize {
    let words: Vec<S::Word> = gens.iter().map(|g| space.word(g)).collect();
    let mut units = Vec::new();
    let low = low_digits(space.p(), words.len());
    units_for(space, &space.word(offset), &words, low, &mut units);
    run(space, &units, &words, stop_at, exec).expect("a coset is nonempty")
}
