//! Polynomial phases reduced modulo one.
//!
//! Each coefficient is stored as a 128-bit fixed-point fraction, so
//! `ψ(n) mod 1` is a wrapping Horner evaluation in `u128`: integer parts drop
//! out exactly and the only error is the coefficient truncation (2⁻¹²⁸ per
//! coefficient) plus whatever error the coefficient itself carries, both
//! amplified by `n^j`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::real::{CertifiedReal, RealSpec};

/// Largest admissible phase error bound; double precision resolves phases to
/// about 1e-16, so this allows the loss of two decimal digits.
pub const PHASE_TOLERANCE: f64 = 1e-14;

/// A polynomial coefficient.
#[derive(Debug, Clone, PartialEq)]
pub enum Coeff {
    Real(RealSpec),
    /// A double taken at face value, with a user-supplied absolute error.
    Float { value: f64, error: f64 },
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Real(RealSpec::integer(0))
    }

    pub fn float(value: f64) -> Self {
        Coeff::Float { value, error: 0.0 }
    }

    pub fn certify(&self) -> Result<CertifiedReal> {
        match self {
            Coeff::Real(r) => r.certify(),
            Coeff::Float { value, error } => CertifiedReal::from_f64(*value, *error),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Real(r) => r.certify().map(|c| c.center.is_zero() && c.is_exact()).unwrap_or(false),
            Coeff::Float { value, error } => *value == 0.0 && *error == 0.0,
        }
    }
}

impl From<RealSpec> for Coeff {
    fn from(r: RealSpec) -> Self {
        Coeff::Real(r)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Real(RealSpec::Rational { p, q: 1 }) => write!(f, "{p}"),
            Coeff::Real(r) => write!(f, "{r}"),
            Coeff::Float { value, error } => write!(f, "float {value:e} {error:e}"),
        }
    }
}

/// Coefficients `(α_0, …, α_k)` of `ψ(x) = α_k x^k + … + α_1 x + α_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<Coeff>,
}

impl PolyCoeffs {
    /// `coeffs[j]` multiplies `x^j`; at least two entries (degree ≥ 1).
    pub fn new(coeffs: Vec<Coeff>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParam(
                "a phase polynomial needs degree at least 1".into(),
            ));
        }
        Ok(PolyCoeffs { coeffs })
    }

    /// `α·x^k`.
    pub fn monomial(k: usize, alpha: Coeff) -> Result<Self> {
        let mut coeffs = vec![Coeff::zero(); k + 1];
        coeffs[k] = alpha;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Coeff {
        &self.coeffs[self.degree()]
    }

    /// Copy with `delta` added to the linear coefficient.
    pub(crate) fn compile_with_linear_twist(&self, delta: &Coeff) -> Result<PhasePoly> {
        let mut compiled = PhasePoly::compile(self)?;
        let (f, e) = delta.certify()?.fixed_fraction()?;
        compiled.fixed[1] = compiled.fixed[1].wrapping_add(f);
        compiled.errors[1] += e;
        Ok(compiled)
    }
}

impl fmt::Display for PolyCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Phase polynomial compiled to fixed point.
#[derive(Debug, Clone)]
pub struct PhasePoly {
    fixed: Vec<u128>,
    errors: Vec<f64>,
}

impl PhasePoly {
    pub fn compile(poly: &PolyCoeffs) -> Result<Self> {
        let mut fixed = Vec::with_capacity(poly.coeffs.len());
        let mut errors = Vec::with_capacity(poly.coeffs.len());
        for c in &poly.coeffs {
            let (f, e) = c.certify()?.fixed_fraction()?;
            fixed.push(f);
            errors.push(e);
        }
        Ok(PhasePoly { fixed, errors })
    }

    /// Coefficients as fractions of 2¹²⁸, constant term first.
    pub fn fixed_coeffs(&self) -> &[u128] {
        &self.fixed
    }

    /// `ψ(n) mod 1` as a fraction of 2¹²⁸.
    #[inline]
    pub fn phase(&self, n: u64) -> u128 {
        let n = n as u128;
        self.fixed
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc.wrapping_mul(n).wrapping_add(c))
    }

    /// Bound on `|computed − true|` (mod 1) for every `n ≤ n_max`.
    pub fn error_bound(&self, n_max: u64) -> f64 {
        let n = n_max as f64;
        self.errors
            .iter()
            .rev()
            .fold(0.0, |acc, &e| acc * n + e)
    }

    pub fn check_precision(&self, n_max: u64) -> Result<()> {
        let bound = self.error_bound(n_max);
        if bound > PHASE_TOLERANCE {
            return Err(Error::PrecisionLoss { bound, n: n_max });
        }
        Ok(())
    }
}

/// `e(x) = exp(2πix)` for a 128-bit fixed-point fraction.
#[inline]
pub fn e_fixed(phase: u128) -> Complex64 {
    e_fixed64((phase >> 64) as u64)
}

/// `e(x)` for a 64-bit fixed-point fraction.
#[inline]
pub fn e_fixed64(phase: u64) -> Complex64 {
    let turn = unit_from_fixed64(phase);
    let (s, c) = (TAU * turn).sin_cos();
    Complex64::new(c, s)
}

/// Fixed-point fraction to `[0, 1)`, keeping the leading 53 bits.
#[inline]
pub fn unit_from_fixed64(phase: u64) -> f64 {
    (phase >> 11) as f64 * f64::powi(2.0, -53)
}

/// Fraction of 2⁶⁴ closest below `x mod 1`.
pub fn fixed64_from_unit(x: f64) -> u64 {
    let frac = x - x.floor();
    let scaled = frac * f64::powi(2.0, 64);
    if scaled >= 18446744073709551615.0 {
        u64::MAX
    } else {
        scaled as u64
    }
}

/// `x mod 1` as a 128-bit fixed-point fraction; exact for `|x| < 2⁵²` unless
/// the fractional part is below 2⁻¹²⁸.
pub fn fixed128_from_unit(x: f64) -> u128 {
    let frac = x - x.floor();
    let scaled = frac * f64::powi(2.0, 128);
    if scaled >= f64::powi(2.0, 128) {
        u128::MAX
    } else {
        scaled as u128
    }
}

/// `e(x)` for a double, with the argument reduced modulo one first.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let frac = x - x.floor();
    let (s, c) = (TAU * frac).sin_cos();
    Complex64::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_reduces_mod_one() {
        // ψ(n) = n/2 + 1/4
        let poly = PolyCoeffs::new(vec![
            RealSpec::rational(1, 4).into(),
            RealSpec::rational(1, 2).into(),
        ])
        .unwrap();
        let pp = PhasePoly::compile(&poly).unwrap();
        assert_eq!(pp.phase(1), 3u128 << 126);
        assert_eq!(pp.phase(2), 1u128 << 126);
    }

    #[test]
    fn cubic_phase_matches_exact_surd_arithmetic() {
        let poly = PolyCoeffs::monomial(3, RealSpec::sqrt(2).into()).unwrap();
        let pp = PhasePoly::compile(&poly).unwrap();
        for n in [1u64, 17, 999, 123_456] {
            let exact = RealSpec::sqrt(2)
                .certify()
                .unwrap()
                .center
                .scale_int(&num_bigint::BigInt::from(n).pow(3));
            let fl = exact.floor().unwrap();
            let frac = exact
                .sub(&crate::real::Surd::from_rational(num_rational::BigRational::from_integer(fl)))
                .to_f64();
            let got = unit_from_fixed64((pp.phase(n) >> 64) as u64);
            assert!((got - frac).abs() < 1e-12, "n={n}: {got} vs {frac}");
        }
    }

    #[test]
    fn precision_guard_trips_for_loose_coefficients() {
        let poly = PolyCoeffs::monomial(
            3,
            Coeff::Real(RealSpec::decimal("1.41421356", "1e-8")),
        )
        .unwrap();
        let pp = PhasePoly::compile(&poly).unwrap();
        assert!(pp.check_precision(10).is_err());
        let exact = PhasePoly::compile(&PolyCoeffs::monomial(3, RealSpec::sqrt(2).into()).unwrap()).unwrap();
        assert!(exact.check_precision(1_000_000).is_ok());
    }

    #[test]
    fn unit_round_trip() {
        for x in [0.0, 0.25, 0.5, 0.999] {
            assert!((unit_from_fixed64(fixed64_from_unit(x)) - x).abs() < 1e-15);
        }
        assert_eq!(fixed128_from_unit(0.75), 3u128 << 126);
        assert_eq!(fixed128_from_unit(-0.25), 3u128 << 126);
    }
}
