//! Restricted Weyl sums, the saving exponents `σ_p(k)`, `τ_p(k)`,
//! `ω_p(k)`, and their bound envelopes.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::phase::{e_fixed, Coeff, PhasePoly, PolyCoeffs};
use crate::real::{rational_upper_f64, CertifiedReal, RealSpec, Surd};
use crate::sets::IndicatorSlice;

/// Default `ε` in `N^{1+ε}`.
pub const DEFAULT_EPSILON: f64 = 0.1;
/// Largest scale accepted by [`differencing_identity_check`].
pub const MAX_DIFFERENCING_N: u64 = 64;

/// `F_k(α; N) = Σ_{n ∈ 𝒜(N)} e(ψ(n; α))`.
pub fn restricted_weyl_sum(slice: &IndicatorSlice, poly: &PolyCoeffs) -> Result<Complex64> {
    let compiled = PhasePoly::compile(poly)?;
    compiled.check_precision(slice.n_max())?;
    Ok(slice.iter().map(|n| e_fixed(compiled.phase(n))).sum())
}

/// `G_k(α, β) = Σ_{1 ≤ n ≤ N} e(ψ(n; α) + βn)`.
pub fn full_weyl_sum(n: u64, poly: &PolyCoeffs, beta: &Coeff) -> Result<Complex64> {
    let compiled = poly.compile_with_linear_twist(beta)?;
    compiled.check_precision(n)?;
    Ok((1..=n).map(|m| e_fixed(compiled.phase(m))).sum())
}

fn check_exponent_domain(k: u32, p: f64) -> Result<()> {
    if k < 2 {
        return Err(Error::DomainError(format!("degree must be at least 2, got {k}")));
    }
    if !(1.0..2.0).contains(&p) {
        return Err(Error::DomainError(format!("p must lie in [1, 2), got {p}")));
    }
    Ok(())
}

/// `σ_p(k)`: `1/p − 1/2` for `k = 2`; for `k ≥ 3`, `2^{1−k}` when
/// `p ≤ 4/3` and `2^{3−k}(1/p − 1/2)` beyond.
pub fn sigma_exponent(k: u32, p: f64) -> Result<f64> {
    check_exponent_domain(k, p)?;
    let tail = 1.0 / p - 0.5;
    Ok(if k == 2 {
        tail
    } else if p <= 4.0 / 3.0 {
        2f64.powi(1 - k as i32)
    } else {
        2f64.powi(3 - k as i32) * tail
    })
}

/// `τ_p(k)`: zero for `k = 2`; for `k ≥ 3`, `1/(k(k−1))` up to
/// `p = (k²−k)/(k²−k−1)` and `(2/p − 1)/(k²−k−2)` beyond.
pub fn tau_exponent(k: u32, p: f64) -> Result<f64> {
    check_exponent_domain(k, p)?;
    if k == 2 {
        return Ok(0.0);
    }
    let m = (k * k - k) as f64;
    Ok(if p <= m / (m - 1.0) {
        1.0 / m
    } else {
        (2.0 / p - 1.0) / (m - 2.0)
    })
}

/// `ω_p(k) = max(σ_p(k), τ_p(k))`.
pub fn omega_exponent(k: u32, p: f64) -> Result<f64> {
    Ok(sigma_exponent(k, p)?.max(tau_exponent(k, p)?))
}

/// `a/q` with a certified bound on `|α − a/q|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalApprox {
    pub a: i64,
    pub q: u64,
    pub err_bound: f64,
    pub coprime: bool,
}

impl RationalApprox {
    /// `err_bound ≤ 1/q²`.
    pub fn is_dirichlet(&self) -> bool {
        self.err_bound <= 1.0 / (self.q as f64 * self.q as f64)
    }
}

/// Convergent `a/q` of `α` with the largest `q ≤ Q`, certified to satisfy
/// `|α − a/q| ≤ 1/(qQ)`.
pub fn dirichlet_approx(alpha: &RealSpec, q_max: u64) -> Result<RationalApprox> {
    dirichlet_approx_certified(&alpha.certify()?, q_max)
}

pub(crate) fn dirichlet_approx_certified(alpha: &CertifiedReal, q_max: u64) -> Result<RationalApprox> {
    if q_max == 0 {
        return Err(Error::InvalidParam("Q must be positive".into()));
    }
    let big_q = BigInt::from(q_max);
    let limit = BigRational::new(BigInt::from(1), BigInt::from(2) * &big_q * &big_q);
    if alpha.error >= limit {
        return Err(Error::UncertifiableReal(format!(
            "error bound {} is not below 1/(2Q²) for Q = {q_max}",
            alpha.error
        )));
    }
    let (a, q) = alpha.best_convergent(q_max)?;
    let distance = alpha
        .center
        .sub(&Surd::from_rational(BigRational::new(a.clone(), q.clone())));
    let (lo, hi) = distance.enclosure(128);
    let gap = if lo.is_negative() { (-lo).max(hi.abs()) } else { hi };
    let err = gap + &alpha.error;
    if err > BigRational::new(BigInt::from(1), &q * &big_q) {
        return Err(Error::UncertifiableReal(format!(
            "cannot certify |α − a/q| ≤ 1/(qQ) for Q = {q_max}"
        )));
    }
    let narrow = |x: &BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::InvalidParam("convergent exceeds 64 bits".into()))
    };
    Ok(RationalApprox {
        a: narrow(&a)?,
        q: narrow(&q)? as u64,
        err_bound: rational_upper_f64(&err),
        coprime: a.gcd(&q) == BigInt::from(1),
    })
}

/// `N^{1+ε}(q⁻¹ + N⁻¹ + qN^{−k})^{ω_p(k)}`.
pub fn bound_envelope(k: u32, p: f64, n: u64, approx: &RationalApprox, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::DomainError(format!("ε must be positive, got {epsilon}")));
    }
    if !approx.is_dirichlet() {
        return Err(Error::DomainError(format!(
            "approximation {}/{} misses the Dirichlet condition",
            approx.a, approx.q
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParam("N must be positive".into()));
    }
    let omega = omega_exponent(k, p)?;
    let nf = n as f64;
    let q = approx.q as f64;
    let inner = 1.0 / q + 1.0 / nf + (q.ln() - k as f64 * nf.ln()).exp();
    Ok(nf.powf(1.0 + epsilon) * inner.powf(omega))
}

/// One row of the Weyl screen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylBoundReport {
    pub k: u32,
    pub p: f64,
    pub n: u64,
    pub approx: RationalApprox,
    pub epsilon: f64,
    pub omega: f64,
    pub envelope: f64,
    pub observed_abs: f64,
    pub ratio: f64,
}

/// `⌊N^{k/2}⌋`, saturating.
pub fn screen_modulus(n: u64, k: u32) -> u64 {
    let nk = (n as u128).checked_pow(k);
    let root = match nk {
        Some(v) => v.isqrt(),
        None => u128::MAX,
    };
    root.min(u64::MAX as u128 >> 2) as u64
}

/// `|F_k|` against the envelope, with `(a, q)` the best convergent to the
/// leading coefficient with `q ≤ N^{k/2}`.
pub fn weyl_screen(slice: &IndicatorSlice, poly: &PolyCoeffs, p: f64, epsilon: f64) -> Result<WeylBoundReport> {
    let k = poly.degree() as u32;
    let n = slice.n_max();
    let leading = poly.leading().certify()?;
    if leading.center.is_zero() && leading.is_exact() {
        return Err(Error::DomainError("leading coefficient vanishes".into()));
    }
    let approx = dirichlet_approx_certified(&leading, screen_modulus(n, k))?;
    let envelope = bound_envelope(k, p, n, &approx, epsilon)?;
    let observed_abs = restricted_weyl_sum(slice, poly)?.norm();
    Ok(WeylBoundReport {
        k,
        p,
        n,
        approx,
        epsilon,
        omega: omega_exponent(k, p)?,
        envelope,
        observed_abs,
        ratio: observed_abs / envelope,
    })
}

/// Both sides of the second-order differencing identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferencingCheck {
    /// Sum over `n₁ + n₂ = n₃ + n₄` in `[1, N]⁴`.
    pub lhs: Complex64,
    /// Sum over `|h₁|, |h₂| < N` and `n ∈ 𝓘(N; h)` of `e(Δ₂ψ(n; h₁, h₂))`.
    pub rhs: Complex64,
    pub gap: f64,
}

/// Checks `∫₀¹|G_k(α, β)|⁴ dβ` in its quadruple-sum form against the
/// double-`h` sum of second differences. The two sides share only the
/// fixed-point coefficients: the left evaluates `ψ` at each `n`, the right
/// builds the coefficients of `Δ₂ψ(·; h₁, h₂)` and evaluates those.
pub fn differencing_identity_check(n: u64, poly: &PolyCoeffs) -> Result<DifferencingCheck> {
    if n > MAX_DIFFERENCING_N {
        return Err(Error::ScaleTooLarge { n, limit: MAX_DIFFERENCING_N });
    }
    if n == 0 {
        return Err(Error::InvalidParam("N must be positive".into()));
    }
    let compiled = PhasePoly::compile(poly)?;
    compiled.check_precision(2 * n)?;

    let psi: Vec<u128> = (0..=n).map(|m| compiled.phase(m)).collect();
    let mut lhs = Complex64::new(0.0, 0.0);
    for n1 in 1..=n {
        for n2 in 1..=n {
            for n3 in 1..=n {
                let Some(n4) = (n1 + n2).checked_sub(n3) else { continue };
                if n4 < 1 || n4 > n {
                    continue;
                }
                let [a, b, c, d] = [n1, n2, n3, n4].map(|m| psi[m as usize]);
                lhs += e_fixed(a.wrapping_add(b).wrapping_sub(c).wrapping_sub(d));
            }
        }
    }

    let coeffs = compiled.fixed_coeffs();
    let ni = n as i64;
    let mut rhs = Complex64::new(0.0, 0.0);
    for h1 in (1 - ni)..ni {
        let d1 = forward_difference(coeffs, h1);
        for h2 in (1 - ni)..ni {
            let d2 = forward_difference(&d1, h2);
            let lo = [1, 1 - h1, 1 - h2, 1 - h1 - h2].into_iter().max().unwrap();
            let hi = [ni, ni - h1, ni - h2, ni - h1 - h2].into_iter().min().unwrap();
            for m in lo..=hi {
                rhs += e_fixed(horner_signed(&d2, m));
            }
        }
    }
    Ok(DifferencingCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).norm(),
    })
}

/// Coefficients of `φ(x + h) − φ(x)` modulo 2¹²⁸:
/// `Σ_{j>i} c_j·C(j, i)·h^{j−i}` multiplies `x^i`.
fn forward_difference(c: &[u128], h: i64) -> Vec<u128> {
    let h = h as i128 as u128;
    let k = c.len();
    let mut out = vec![0u128; k];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut binom: u128 = 1;
        let mut hp: u128 = 1;
        let mut acc: u128 = 0;
        for (j, &cj) in c.iter().enumerate().skip(i + 1) {
            binom = binom * j as u128 / (j - i) as u128;
            hp = hp.wrapping_mul(h);
            acc = acc.wrapping_add(cj.wrapping_mul(binom).wrapping_mul(hp));
        }
        *slot = acc;
    }
    out
}

fn horner_signed(c: &[u128], x: i64) -> u128 {
    let x = x as i128 as u128;
    c.iter()
        .rev()
        .fold(0u128, |acc, &cj| acc.wrapping_mul(x).wrapping_add(cj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-15
    }

    #[test]
    fn exponent_branches() {
        assert!(close(sigma_exponent(2, 4.0 / 3.0).unwrap(), 0.25));
        assert!(close(sigma_exponent(3, 4.0 / 3.0).unwrap(), 0.25));
        assert!(close(sigma_exponent(4, 1.5).unwrap(), 1.0 / 12.0));
        assert_eq!(tau_exponent(2, 1.7).unwrap(), 0.0);
        assert!(close(tau_exponent(3, 1.0).unwrap(), 1.0 / 6.0));
        assert!(close(tau_exponent(3, 1.5).unwrap(), 1.0 / 12.0));
        assert!(close(tau_exponent(3, 4.0 / 3.0).unwrap(), 1.0 / 8.0));
        assert!(close(omega_exponent(3, 4.0 / 3.0).unwrap(), 0.25));
        assert!(close(omega_exponent(10, 1.0).unwrap(), 1.0 / 90.0));
        assert!(omega_exponent(2, 1.0 + 1e-9).unwrap() < 0.5);
        assert!(sigma_exponent(1, 1.5).is_err());
        assert!(tau_exponent(3, 2.0).is_err());
        assert!(omega_exponent(3, 0.99).is_err());
    }

    #[test]
    fn trivial_sums() {
        let slice = IndicatorSlice::full(37).unwrap();
        let zero = PolyCoeffs::new(vec![Coeff::zero(), Coeff::zero()]).unwrap();
        let s = restricted_weyl_sum(&slice, &zero).unwrap();
        assert!((s - Complex64::new(37.0, 0.0)).norm() < 1e-12);
        let quarter = PolyCoeffs::new(vec![RealSpec::rational(1, 4).into(), Coeff::zero()]).unwrap();
        let s = restricted_weyl_sum(&slice, &quarter).unwrap();
        assert!((s - Complex64::new(0.0, 37.0)).norm() < 1e-12);
        let half: Coeff = RealSpec::rational(1, 2).into();
        assert!(full_weyl_sum(2, &zero, &half).unwrap().norm() < 1e-12);
        assert!((full_weyl_sum(9, &zero, &Coeff::zero()).unwrap().re - 9.0).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_examples() {
        let r = dirichlet_approx(&RealSpec::rational(1, 3), 10).unwrap();
        assert_eq!((r.a, r.q), (1, 3));
        assert_eq!(r.err_bound, 0.0);
        let r = dirichlet_approx(&RealSpec::sqrt(2), 100).unwrap();
        assert_eq!((r.a, r.q), (99, 70));
        assert!(r.err_bound <= 1.0 / 7000.0 && r.err_bound > 7.0e-5);
        let r = dirichlet_approx(&RealSpec::golden_ratio(), 12).unwrap();
        assert_eq!((r.a, r.q), (13, 8));
        assert!(matches!(
            dirichlet_approx(&RealSpec::decimal("1.4142", "1e-4"), 100),
            Err(Error::UncertifiableReal(_))
        ));
    }

    #[test]
    fn envelope_rejects_bad_input() {
        let approx = RationalApprox { a: 1, q: 1, err_bound: 0.5, coprime: true };
        assert!(matches!(
            bound_envelope(3, 1.2, 100, &approx, 0.0),
            Err(Error::DomainError(_))
        ));
        let env = bound_envelope(3, 1.2, 100, &approx, 0.1).unwrap();
        assert!(env >= 100f64.powf(1.1));
        let loose = RationalApprox { a: 1, q: 10, err_bound: 0.5, coprime: true };
        assert!(bound_envelope(3, 1.2, 100, &loose, 0.1).is_err());
    }

    #[test]
    fn differencing_small_cases() {
        let zero = PolyCoeffs::new(vec![Coeff::zero(), Coeff::zero(), Coeff::zero()]).unwrap();
        let c = differencing_identity_check(4, &zero).unwrap();
        assert!((c.lhs.re - 44.0).abs() < 1e-9 && (c.rhs.re - 44.0).abs() < 1e-9);
        let cubic = PolyCoeffs::monomial(3, RealSpec::sqrt(3).into()).unwrap();
        let c = differencing_identity_check(1, &cubic).unwrap();
        assert!((c.lhs.re - 1.0).abs() < 1e-12 && (c.rhs.re - 1.0).abs() < 1e-12);
        assert!(matches!(
            differencing_identity_check(65, &cubic),
            Err(Error::ScaleTooLarge { .. })
        ));
    }

    #[test]
    fn forward_difference_of_square() {
        // (x+h)² − x² = 2hx + h², in integer units.
        let d = forward_difference(&[0, 0, 1], 3);
        assert_eq!(d, vec![9, 6, 0]);
        let d = forward_difference(&[0, 0, 1], -2);
        assert_eq!(d, vec![4, (-4i128) as u128, 0]);
    }

    #[test]
    fn screen_modulus_values() {
        assert_eq!(screen_modulus(10_000, 3), 1_000_000);
        assert_eq!(screen_modulus(10, 3), 31);
    }
}
