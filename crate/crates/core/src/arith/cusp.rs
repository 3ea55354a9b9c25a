//! Fourier coefficients of the discriminant `Δ(z) = q Π_{n ≥ 1} (1 − qⁿ)²⁴`.

use crate::error::{Error, Result};

use super::sieve::check_sieve_size;

/// `Π_{n ≥ 1}(1 − qⁿ)³ = Σ_{m ≥ 0} (−1)^m (2m+1) q^{m(m+1)/2}`, as sparse terms below `len`.
fn euler_cube(len: usize) -> Vec<(usize, i128)> {
    let mut terms = Vec::new();
    let mut m = 0usize;
    loop {
        let e = m * (m + 1) / 2;
        if e >= len {
            break terms;
        }
        let c = (2 * m + 1) as i128;
        terms.push((e, if m % 2 == 0 { c } else { -c }));
        m += 1;
    }
}

/// Ramanujan's `τ(n)` for `n = 1, …, limit`, at index `n − 1`, in exact arithmetic.
pub fn ramanujan_tau(limit: u64) -> Result<Vec<i128>> {
    check_sieve_size(limit)?;
    let len = limit as usize;
    let cube = euler_cube(len);
    // Π(1 − qⁿ)²⁴ is the eighth power of the cube.
    let mut acc: Vec<i128> = vec![0; len];
    for &(e, c) in &cube {
        acc[e] = c;
    }
    let overflow = || Error::ResourceLimit(format!("τ(n) up to {limit} overflows 128 bits"));
    for _ in 1..8 {
        let mut next = vec![0i128; len];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(e, c) in &cube {
                let j = i + e;
                if j >= len {
                    break;
                }
                let prod = a.checked_mul(c).ok_or_else(overflow)?;
                next[j] = next[j].checked_add(prod).ok_or_else(overflow)?;
            }
        }
        acc = next;
    }
    Ok(acc)
}
