//! Linear sieve for the Möbius and von Mangoldt functions.

use crate::error::{Error, Result};

/// Largest `N` any sieve will allocate for.
pub const MAX_SIEVE: u64 = 1 << 27;

pub(crate) fn check_sieve_size(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParam("N must be at least 1".into()));
    }
    if n > MAX_SIEVE {
        return Err(Error::ResourceLimit(format!("sieve length {n} exceeds {MAX_SIEVE}")));
    }
    Ok(())
}

/// Smallest prime factor of every `n ≤ limit` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(limit: u64) -> Result<Vec<u32>> {
    check_sieve_size(limit)?;
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..len {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let m = i * p as usize;
            if p > spf[i] || m >= len {
                break;
            }
            spf[m] = p;
        }
    }
    Ok(spf)
}

/// `μ(n)` for `n = 1, …, limit`, at index `n − 1`.
pub fn mobius_upto(limit: u64) -> Result<Vec<i8>> {
    let spf = smallest_prime_factors(limit)?;
    let mut mu = vec![0i8; limit as usize + 1];
    mu[1] = 1;
    for n in 2..=limit as usize {
        let p = spf[n] as usize;
        let m = n / p;
        mu[n] = if m % p == 0 { 0 } else { -mu[m] };
    }
    mu.remove(0);
    Ok(mu)
}

/// `Λ(n)` for `n = 1, …, limit`, at index `n − 1`.
pub fn mangoldt_upto(limit: u64) -> Result<Vec<f64>> {
    let spf = smallest_prime_factors(limit)?;
    let mut lambda = vec![0.0; limit as usize];
    for n in 2..=limit as usize {
        let p = spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            lambda[n - 1] = (p as f64).ln();
        }
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(mobius_upto(6).unwrap(), vec![1, -1, -1, 0, -1, 1]);
        let l = mangoldt_upto(8).unwrap();
        assert!((l[7] - 2f64.ln()).abs() < 1e-15);
        assert_eq!(l[5], 0.0);
        assert_eq!(l[0], 0.0);
        assert!(matches!(mobius_upto(MAX_SIEVE + 1), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn divisor_sums() {
        let n = 2000;
        let mu = mobius_upto(n).unwrap();
        let lambda = mangoldt_upto(n).unwrap();
        for m in 1..=n as usize {
            let (mut s_mu, mut s_l) = (0i64, 0.0);
            for d in (1..=m).filter(|d| m % d == 0) {
                s_mu += mu[d - 1] as i64;
                s_l += lambda[d - 1];
            }
            assert_eq!(s_mu, (m == 1) as i64);
            assert!((s_l - (m as f64).ln()).abs() < 1e-9);
        }
    }
}
