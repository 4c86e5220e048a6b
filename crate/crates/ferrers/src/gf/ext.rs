use std::fmt;
use std::sync::Arc;

use super::{prime_factors, Field, Matrix};
use crate::{Error, Result};

/// Largest extension order `q^n` with tables.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// `GF(q^n)` as polynomials over `GF(q)` modulo a fixed monic irreducible.
///
/// An element is `sum c_t q^t` where `c_t` in `0..q` is the base-field
/// coefficient of `w^t` and `w` is a root of the modulus. Base-field
/// elements are the constants `0..q`.
#[derive(Clone)]
pub struct ExtensionField {
    inner: Arc<ExtTables>,
}

struct ExtTables {
    base: Field,
    n: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.base.q(), self.inner.n)
    }
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    for top in (db..r.len()).rev() {
        let c = f.mul(r[top], lead_inv);
        if c != 0 {
            for (k, &bk) in b.iter().enumerate() {
                let idx = top - db + k;
                r[idx] = f.sub(r[idx], f.mul(c, bk));
            }
        }
    }
    r.truncate(db);
    trim(r)
}

fn base_digits(mut v: u64, q: u64, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = (v % q) as u32;
        v /= q;
    }
    out
}

fn smallest_irreducible(f: &Field, n: usize) -> Vec<u32> {
    let q = f.q() as u64;
    'next: for code in 0..q.pow(n as u32) {
        let mut cand = base_digits(code, q, n);
        cand.push(1);
        if n > 1 && cand[0] == 0 {
            continue;
        }
        for deg in 1..=n / 2 {
            for low in 0..q.pow(deg as u32) {
                let mut g = base_digits(low, q, deg);
                g.push(1);
                if rem(f, &cand, &g).is_empty() {
                    continue 'next;
                }
            }
        }
        return cand;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl ExtensionField {
    /// `GF(q^n)` over `base = GF(q)`; needs `q^n <= 2^20`.
    pub fn new(base: &Field, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        let order = (base.q() as u64).checked_pow(n).filter(|&o| o <= MAX_EXTENSION_ORDER).ok_or_else(|| {
            Error::resource(format!("GF({}^{n}) exceeds the table limit {MAX_EXTENSION_ORDER}", base.q()))
        })?;
        let modulus = smallest_irreducible(base, n as usize);
        let q = base.q() as u64;
        let to_poly = |x: u32| trim(base_digits(x as u64, q, n as usize));
        let from_poly = |c: &[u32]| c.iter().rev().fold(0u64, |acc, &v| acc * q + v as u64) as u32;
        let mul_slow = |a: u32, b: u32| -> u32 {
            let (pa, pb) = (to_poly(a), to_poly(b));
            if pa.is_empty() || pb.is_empty() {
                return 0;
            }
            let mut prod = vec![0u32; pa.len() + pb.len() - 1];
            for (i, &x) in pa.iter().enumerate() {
                for (j, &y) in pb.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                }
            }
            from_poly(&rem(base, &prod, &modulus))
        };
        let group = order - 1;
        let factors = prime_factors(group);
        let pow_slow = |g: u32, mut e: u64| -> u32 {
            let (mut acc, mut b) = (1u32, g);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_slow(acc, b);
                }
                b = mul_slow(b, b);
                e >>= 1;
            }
            acc
        };
        let generator = (1..order as u32)
            .find(|&g| factors.iter().all(|&r| pow_slow(g, group / r) != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..group as usize {
            exp[i] = x;
            exp[i + group as usize] = x;
            log[x as usize] = i as u32;
            x = mul_slow(x, generator);
        }
        Ok(Self {
            inner: Arc::new(ExtTables { base: base.clone(), n, order: order as u32, modulus, exp, log }),
        })
    }

    pub fn base(&self) -> &Field {
        &self.inner.base
    }

    /// Extension degree `n`.
    pub fn degree(&self) -> u32 {
        self.inner.n
    }

    /// `q^n`.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Modulus over the base field, low to high, monic of degree `n`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The polynomial basis element `w^t`.
    pub fn basis_element(&self, t: u32) -> u32 {
        self.inner.base.q().pow(t)
    }

    /// Coordinates in the polynomial basis `1, w, ..., w^{n-1}`.
    pub fn coords(&self, x: u32) -> Vec<u32> {
        base_digits(x as u64, self.inner.base.q() as u64, self.inner.n as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<u32> {
        let q = self.inner.base.q();
        if c.len() != self.inner.n as usize || c.iter().any(|&v| v >= q) {
            return Err(Error::domain("coordinate vector does not match the extension"));
        }
        Ok(c.iter().rev().fold(0u64, |acc, &v| acc * q as u64 + v as u64) as u32)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let base = &self.inner.base;
        if base.p() == 2 {
            return a ^ b;
        }
        let q = base.q();
        let (mut a, mut b, mut out, mut scale) = (a, b, 0u32, 1u32);
        for _ in 0..self.inner.n {
            out += base.add(a % q, b % q) * scale;
            a /= q;
            b /= q;
            scale = scale.wrapping_mul(q);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let c: Vec<u32> = self.coords(a).into_iter().map(|v| self.inner.base.neg(v)).collect();
        self.from_coords(&c).expect("valid coordinates")
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &self.inner;
        let g = t.order - 1;
        Some(t.exp[((g - t.log[a as usize]) % g) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.inner;
        let g = t.order as u64 - 1;
        t.exp[((t.log[a as usize] as u64 * (e % g)) % g) as usize]
    }

    /// `x -> x^q`.
    pub fn frobenius(&self, x: u32) -> u32 {
        self.pow(x, self.inner.base.q() as u64)
    }

    /// Expands a vector over `GF(q^n)` into an `n x len` matrix over `GF(q)`
    /// whose column `j` holds the coordinates of `v[j]`.
    pub fn vector_to_matrix(&self, v: &[u32]) -> Matrix {
        let n = self.inner.n as usize;
        let mut m = Matrix::zeros(n, v.len());
        for (j, &x) in v.iter().enumerate() {
            for (i, c) in self.coords(x).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Inverse of [`Self::vector_to_matrix`].
    pub fn matrix_to_vector(&self, m: &Matrix) -> Result<Vec<u32>> {
        if m.rows() != self.inner.n as usize {
            return Err(Error::domain("matrix height differs from the extension degree"));
        }
        (0..m.cols()).map(|j| self.from_coords(&m.column(j))).collect()
    }
}
