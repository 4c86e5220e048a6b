//! Small finite fields and exact linear algebra over them.
//!
//! Elements of `GF(p^m)` are integers in `0..q` whose base-`p` digits are
//! the coefficients of a polynomial in a root of the fixed irreducible
//! modulus. Zero is `0` and one is `1`.

mod ext;
mod matrix;

use std::fmt;
use std::sync::Arc;

pub use ext::{ExtensionField, MAX_EXTENSION_ORDER};
pub use matrix::{in_span, rank, row_reduce, Matrix, ReducedBasis};
pub(crate) use matrix::rank_bits;

use crate::{Error, Result};

/// Largest base field order.
pub const MAX_FIELD_ORDER: u32 = 512;

/// `GF(q)` with `q = p^m <= 512`; cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.m())
    }
}

pub(crate) fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over GF(p); coefficient vectors are low-to-high.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    let mut r = a.to_vec();
    for top in (db..r.len()).rev() {
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (k, &bk) in b.iter().enumerate() {
                let idx = top - db + k;
                r[idx] = (r[idx] + p - c * bk % p) % p;
            }
        }
    }
    r.truncate(db);
    poly_trim(r)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue mod a prime")
}

fn digits(mut v: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = v % base;
        v /= base;
    }
    out
}

/// Monic irreducible of degree `m` over `GF(p)` with the smallest lower
/// coefficient word `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    let candidates = p.pow(m as u32);
    'next: for code in 0..candidates {
        let mut f = digits(code, p, m);
        f.push(1);
        for deg in 1..=m / 2 {
            for low in 0..p.pow(deg as u32) {
                let mut g = digits(low, p, deg);
                g.push(1);
                if poly_trim(poly_rem_p(&f, &g, p)).is_empty() {
                    continue 'next;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// `GF(q)`; `q` must be a prime power at most [`MAX_FIELD_ORDER`].
    pub fn new(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::resource(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let modulus = smallest_irreducible(p, m);
        let add_slow = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, m as usize), digits(b, p, m as usize));
            da.iter().zip(&db).rev().fold(0, |acc, (x, y)| acc * p + (x + y) % p)
        };
        let mul_slow = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, m as usize), digits(b, p, m as usize));
            let mut prod = vec![0u32; 2 * m as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let r = poly_rem_p(&poly_trim(prod), &modulus, p);
            r.iter().rev().fold(0, |acc, &c| acc * p + c)
        };
        let order = q - 1;
        let factors = prime_factors(order as u64);
        let pow_slow = |g: u32, mut e: u32| -> u32 {
            let (mut acc, mut base) = (1u32, g);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_slow(acc, base);
                }
                base = mul_slow(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| pow_slow(g, order / r as u32) != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x;
            exp[i + order as usize] = x;
            log[x as usize] = i as u32;
            x = mul_slow(x, generator);
        }
        let mut add = vec![0u16; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = add_slow(a, b) as u16;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).expect("additive inverse")).collect();
        Ok(Self { inner: Arc::new(Tables { p, m, q, modulus, exp, log, add, neg }) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients over `GF(p)`, low to high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Elements `0..q`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.inner.p == 2 {
            a ^ b
        } else {
            self.inner.add[(a * self.inner.q + b) as usize] as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &self.inner;
        Some(t.exp[((t.q - 1 - t.log[a as usize]) % (t.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.inner;
        let l = (t.log[a as usize] as u64 * (e % (t.q as u64 - 1))) % (t.q as u64 - 1);
        t.exp[l as usize]
    }

    /// A fixed primitive element.
    pub fn generator(&self) -> u32 {
        self.inner.exp[1 % (self.q() as usize - 1).max(1)]
    }

    /// Elements of the prime subfield `GF(p)`, i.e. `0..p`.
    pub fn prime_elements(&self) -> std::ops::Range<u32> {
        0..self.p()
    }

    /// `p^t` for `t < m`: a basis of `GF(q)` over `GF(p)`.
    pub fn prime_basis(&self) -> Vec<u32> {
        (0..self.m()).map(|t| self.p().pow(t)).collect()
    }
}
