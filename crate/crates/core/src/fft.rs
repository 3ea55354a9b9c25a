//! Evaluation of finite exponential sums on uniform grids.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// In-place `X[j] = Σ_k x[k]·e(jk/len)` for any length.
pub(crate) fn synthesize(buf: &mut [Complex64]) {
    if buf.len() <= 1 {
        return;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(buf.len()).process(buf);
}

/// Smallest power of two `≥ factor·n`.
pub fn default_grid(n: u64, factor: u64) -> usize {
    (n.max(1) * factor.max(1)).next_power_of_two() as usize
}

/// Grid of size `m` for a polynomial of degree `n`: power of two, at least `min_factor·n`.
pub(crate) fn check_grid(m: usize, n: u64, min_factor: u64) -> Result<()> {
    let min = (min_factor * n) as usize;
    if m < min {
        return Err(Error::GridTooCoarse { grid: m, n, min });
    }
    if !m.is_power_of_two() {
        return Err(Error::InvalidParam(format!("grid size {m} is not a power of two")));
    }
    Ok(())
}

/// `Σ c·e(n·j/m)` over the `(n, c)` pairs, for `j = 0, …, m−1`.
pub(crate) fn grid_from_coeffs(coeffs: impl IntoIterator<Item = (usize, Complex64)>, m: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (n, c) in coeffs {
        buf[n % m] += c;
    }
    synthesize(&mut buf);
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::e;

    #[test]
    fn matches_direct_sum() {
        let coeffs = [(1usize, 1.0), (3, -0.5), (4, 2.0)];
        let m = 16;
        let grid = grid_from_coeffs(coeffs.iter().map(|&(n, c)| (n, Complex64::new(c, 0.0))), m);
        for (j, g) in grid.iter().enumerate() {
            let direct: Complex64 = coeffs
                .iter()
                .map(|&(n, c)| e((n * j) as f64 / m as f64) * c)
                .sum();
            assert!((g - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(default_grid(1000, 32), 32768);
        assert!(check_grid(64, 16, 4).is_ok());
        assert!(matches!(check_grid(32, 16, 4), Err(Error::GridTooCoarse { .. })));
        assert!(check_grid(96, 16, 4).is_err());
    }
}
