//! Dirichlet characters to a prime modulus and their Gauss sums.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase::e;

/// Largest modulus for which character tables are built.
pub const MAX_CHAR_MODULUS: u64 = 1 << 26;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root modulo a prime.
pub fn primitive_root(q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q == 2 {
        return Ok(1);
    }
    let factors = prime_divisors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&l| pow_mod(g, (q - 1) / l, q) != 1))
        .ok_or_else(|| Error::DomainError(format!("no primitive root modulo {q}")))
}

/// `χ(n) = e(t·ind_g(n)/(q − 1))` for `q ∤ n`, and `0` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletChar {
    q: u64,
    t: u64,
    g: u64,
    /// `ind_g(r)` for residues `r = 1, …, q−1` at index `r`.
    index: Vec<u64>,
}

impl DirichletChar {
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn primitive_root(&self) -> u64 {
        self.g
    }

    pub fn is_principal(&self) -> bool {
        self.t == 0
    }

    /// `ind_g(n)`, or `None` when `q | n`.
    pub fn ind(&self, n: u64) -> Option<u64> {
        let r = n % self.q;
        (r != 0).then(|| self.index[r as usize])
    }

    pub fn value(&self, n: u64) -> Complex64 {
        match self.ind(n) {
            None => Complex64::new(0.0, 0.0),
            Some(i) => {
                let order = self.q - 1;
                let r = ((self.t as u128 * i as u128) % order as u128) as u64;
                e(r as f64 / order as f64)
            }
        }
    }
}

/// The character of index `t ∈ [0, q − 2]` relative to the smallest primitive root.
pub fn dirichlet_char(q: u64, t: u64) -> Result<DirichletChar> {
    if q > MAX_CHAR_MODULUS {
        return Err(Error::ResourceLimit(format!("modulus {q} exceeds {MAX_CHAR_MODULUS}")));
    }
    let g = primitive_root(q)?;
    if t > q - 2 {
        return Err(Error::InvalidParam(format!("character index {t} outside [0, {}]", q.saturating_sub(2))));
    }
    let mut index = vec![0u64; q as usize];
    let mut x = 1u64;
    for i in 0..q - 1 {
        index[x as usize] = i;
        x = x * g % q;
    }
    Ok(DirichletChar { q, t, g, index })
}

/// `T(a) = Σ_{m=1}^{q} χ(m) e(ma/q)`.
pub fn gauss_sum(chi: &DirichletChar, a: i64) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalChar);
    }
    let q = chi.q;
    let a = a.rem_euclid(q as i64) as u64;
    Ok((1..q)
        .map(|m| chi.value(m) * e(((m as u128 * a as u128) % q as u128) as f64 / q as f64))
        .sum())
}
