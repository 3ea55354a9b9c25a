//! Certified real parameters.
//!
//! Beatty parameters and polynomial coefficients enter the toolkit as
//! [`RealSpec`] values. Rationals and quadratic surds are held exactly as
//! rational combinations of square roots of squarefree integers ([`Surd`]);
//! decimal inputs carry an explicit absolute error. Every floor value the
//! library relies on is either decided exactly or refused with
//! [`Error::UncertifiableReal`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A real number as supplied by the user.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RealSpec {
    /// `p / q` with `q > 0`.
    Rational { p: i64, q: i64 },
    /// `(u + v·√d) / w` with `w > 0` and `d` not a perfect square.
    QuadraticSurd { u: i64, v: i64, d: u64, w: i64 },
    /// A decimal literal together with a certified bound on its absolute error.
    DecimalString { digits: String, error: String },
}

impl RealSpec {
    pub fn rational(p: i64, q: i64) -> Self {
        RealSpec::Rational { p, q }
    }

    pub fn integer(n: i64) -> Self {
        RealSpec::Rational { p: n, q: 1 }
    }

    pub fn surd(u: i64, v: i64, d: u64, w: i64) -> Self {
        RealSpec::QuadraticSurd { u, v, d, w }
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Self {
        RealSpec::QuadraticSurd { u: 0, v: 1, d, w: 1 }
    }

    /// `(1 + √5) / 2`.
    pub fn golden_ratio() -> Self {
        RealSpec::QuadraticSurd { u: 1, v: 1, d: 5, w: 2 }
    }

    pub fn decimal(digits: impl Into<String>, error: impl Into<String>) -> Self {
        RealSpec::DecimalString {
            digits: digits.into(),
            error: error.into(),
        }
    }

    /// Validates the parameters and returns the exact center with its error bound.
    pub fn certify(&self) -> Result<CertifiedReal> {
        match self {
            RealSpec::Rational { p, q } => {
                if *q <= 0 {
                    return Err(Error::InvalidParam(format!(
                        "rational denominator must be positive, got {q}"
                    )));
                }
                Ok(CertifiedReal::exact(Surd::from_rational(BigRational::new(
                    BigInt::from(*p),
                    BigInt::from(*q),
                ))))
            }
            RealSpec::QuadraticSurd { u, v, d, w } => {
                if *w <= 0 {
                    return Err(Error::InvalidParam(format!(
                        "surd denominator must be positive, got {w}"
                    )));
                }
                if *d == 0 || is_perfect_square(*d) {
                    return Err(Error::InvalidParam(format!(
                        "surd radicand {d} must be a positive non-square"
                    )));
                }
                let w = BigRational::from_integer(BigInt::from(*w));
                let center = Surd::from_rational(BigRational::from_integer(BigInt::from(*u)))
                    .add(&Surd::sqrt(*d).scale(&BigRational::from_integer(BigInt::from(*v))))
                    .scale(&w.recip());
                Ok(CertifiedReal::exact(center))
            }
            RealSpec::DecimalString { digits, error } => {
                let center = parse_decimal(digits)?;
                let error = parse_decimal(error)?;
                if error.is_negative() {
                    return Err(Error::InvalidParam(format!(
                        "decimal error bound must be nonnegative, got {error}"
                    )));
                }
                Ok(CertifiedReal {
                    center: Surd::from_rational(center),
                    error,
                })
            }
        }
    }

    /// Exact reciprocal; decimal inputs are refused.
    pub fn recip(&self) -> Result<RealSpec> {
        match *self {
            RealSpec::Rational { p, q } => {
                if p == 0 {
                    return Err(Error::DomainError("reciprocal of zero".into()));
                }
                let (p, q) = if p < 0 { (-q, -p) } else { (q, p) };
                Ok(RealSpec::Rational { p, q })
            }
            RealSpec::QuadraticSurd { u, v, d, w } => {
                // w / (u + v√d) = w (u - v√d) / (u² - v² d)
                let norm = (u as i128) * (u as i128) - (v as i128) * (v as i128) * (d as i128);
                if norm == 0 {
                    return Err(Error::DomainError("reciprocal of zero".into()));
                }
                let (mut nu, mut nv, mut nw) = ((w as i128) * (u as i128), -(w as i128) * (v as i128), norm);
                if nw < 0 {
                    nu = -nu;
                    nv = -nv;
                    nw = -nw;
                }
                let g = nu.gcd(&nv).gcd(&nw);
                let narrow = |x: i128| {
                    i64::try_from(x / g).map_err(|_| Error::InvalidParam("reciprocal overflows i64".into()))
                };
                Ok(RealSpec::QuadraticSurd {
                    u: narrow(nu)?,
                    v: narrow(nv)?,
                    d,
                    w: narrow(nw)?,
                })
            }
            RealSpec::DecimalString { .. } => Err(Error::UncertifiableReal(
                "reciprocal of a decimal input is not supported".into(),
            )),
        }
    }

    /// Nearest double to the center value.
    pub fn approx_f64(&self) -> Result<f64> {
        Ok(self.certify()?.center.to_f64())
    }
}

impl fmt::Display for RealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSpec::Rational { p, q } => write!(f, "rational {p} {q}"),
            RealSpec::QuadraticSurd { u, v, d, w } => write!(f, "surd {u} {v} {d} {w}"),
            RealSpec::DecimalString { digits, error } => write!(f, "decimal {digits} {error}"),
        }
    }
}

pub(crate) fn is_perfect_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Writes `n = s² · d` with `d` squarefree.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        let sq = i * i;
        while n % sq == 0 {
            n /= sq;
            s *= i;
        }
        i += 1;
    }
    (s, n)
}

/// Parses an optionally signed decimal literal with optional exponent into an
/// exact rational.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid decimal literal {text:?}"));
    let s = text.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// An exact rational linear combination of square roots of squarefree
/// integers. The key `1` holds the rational part.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Surd {
    terms: BTreeMap<u64, BigRational>,
}

const MAX_REFINE_BITS: u32 = 1 << 15;

impl Surd {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        Surd { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `√n`, reduced to `s·√d` with `d` squarefree.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (s, d) = split_square(n);
        let mut terms = BTreeMap::new();
        terms.insert(d, BigRational::from_integer(BigInt::from(s)));
        Surd { terms }
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let mut terms = self.terms.clone();
        for (d, c) in &other.terms {
            let entry = terms.entry(*d).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(d);
            }
        }
        Surd { terms }
    }

    pub fn neg(&self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Surd {
        if k.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self.terms.iter().map(|(d, c)| (*d, c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Surd {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value, when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// `(a, b, d)` with value `a + b√d`, when at most one radical occurs.
    pub fn as_quadratic(&self) -> Option<(BigRational, BigRational, u64)> {
        let radicals: Vec<_> = self.terms.iter().filter(|(d, _)| **d != 1).collect();
        if radicals.len() != 1 {
            return None;
        }
        let (d, b) = radicals[0];
        let a = self.terms.get(&1).cloned().unwrap_or_else(BigRational::zero);
        Some((a, b.clone(), *d))
    }

    /// Rational bounds `lo ≤ x ≤ hi`, with each radical resolved to `bits`
    /// binary digits.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let denom = BigInt::one() << bits;
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (d, c) in &self.terms {
            if *d == 1 {
                lo += c;
                hi += c;
                continue;
            }
            let s = (BigInt::from(*d) << (2 * bits)).sqrt();
            let below = BigRational::new(s.clone(), denom.clone());
            let above = BigRational::new(s + 1, denom.clone());
            if c.is_positive() {
                lo += c * below;
                hi += c * above;
            } else {
                lo += c * above;
                hi += c * below;
            }
        }
        (lo, hi)
    }

    /// Exact floor. Irrational values are never integers (square roots of
    /// distinct squarefree integers are linearly independent over ℚ), so the
    /// refinement terminates.
    pub fn floor(&self) -> Result<BigInt> {
        if let Some(r) = self.as_rational() {
            return Ok(r.floor().to_integer());
        }
        let mut bits = 64;
        while bits <= MAX_REFINE_BITS {
            let (lo, hi) = self.enclosure(bits);
            let (a, b) = (lo.floor().to_integer(), hi.floor().to_integer());
            if a == b {
                return Ok(a);
            }
            bits *= 2;
        }
        Err(Error::UncertifiableReal(
            "floor refinement exceeded the precision limit".into(),
        ))
    }

    /// Exact sign.
    pub fn sign(&self) -> Result<Ordering> {
        if let Some(r) = self.as_rational() {
            return Ok(r.cmp(&BigRational::zero()));
        }
        let mut bits = 64;
        while bits <= MAX_REFINE_BITS {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            bits *= 2;
        }
        Err(Error::UncertifiableReal(
            "sign refinement exceeded the precision limit".into(),
        ))
    }

    pub fn to_f64(&self) -> f64 {
        // Large coefficients amplify the radical truncation, so widen to match.
        let magnitude = self
            .terms
            .values()
            .map(|c| c.numer().bits().saturating_sub(c.denom().bits()))
            .max()
            .unwrap_or(0);
        let (lo, hi) = self.enclosure(80 + magnitude as u32);
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Upward-rounded double bound for a nonnegative rational.
pub(crate) fn rational_upper_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let x = rational_to_f64(r);
    x * (1.0 + 1e-12) + f64::MIN_POSITIVE
}

/// A real value known to lie within `error` of an exact center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    pub center: Surd,
    pub error: BigRational,
}

impl CertifiedReal {
    pub fn exact(center: Surd) -> Self {
        CertifiedReal {
            center,
            error: BigRational::zero(),
        }
    }

    pub fn from_f64(value: f64, error: f64) -> Result<Self> {
        let center = BigRational::from_float(value)
            .ok_or_else(|| Error::InvalidParam(format!("non-finite value {value}")))?;
        let error = BigRational::from_float(error)
            .filter(|e| !e.is_negative())
            .ok_or_else(|| Error::InvalidParam(format!("invalid error bound {error}")))?;
        Ok(CertifiedReal {
            center: Surd::from_rational(center),
            error,
        })
    }

    pub fn is_exact(&self) -> bool {
        self.error.is_zero()
    }

    /// `self·m + offset`, with errors accumulated.
    pub fn affine(&self, m: &BigInt, offset: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            center: self.center.scale_int(m).add(&offset.center),
            error: &self.error * BigRational::from_integer(m.abs()) + &offset.error,
        }
    }

    pub fn add(&self, other: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            center: self.center.add(&other.center),
            error: &self.error + &other.error,
        }
    }

    /// Floor of the true value, or `UncertifiableReal` when the error bound
    /// straddles an integer.
    pub fn floor(&self) -> Result<BigInt> {
        if self.is_exact() {
            return self.center.floor();
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.center.enclosure(bits);
            let a = (&lo - &self.error).floor().to_integer();
            let b = (&hi + &self.error).floor().to_integer();
            if a == b {
                return Ok(a);
            }
            let width = &hi - &lo;
            let tight = width.is_zero() || width * BigRational::from_integer(BigInt::from(16)) < self.error;
            if tight || bits >= MAX_REFINE_BITS {
                return Err(Error::UncertifiableReal(format!(
                    "floor undecidable within error bound {}",
                    rational_to_f64(&self.error)
                )));
            }
            bits *= 2;
        }
    }

    /// Certified comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Result<Ordering> {
        let shifted = self.center.sub(&Surd::from_rational(r.clone()));
        if self.is_exact() {
            return shifted.sign();
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = shifted.enclosure(bits);
            if lo > self.error {
                return Ok(Ordering::Greater);
            }
            if hi < -self.error.clone() {
                return Ok(Ordering::Less);
            }
            if bits >= MAX_REFINE_BITS || (&hi - &lo) * BigRational::from_integer(BigInt::from(16)) < self.error {
                return Err(Error::UncertifiableReal(
                    "comparison undecidable within error bound".into(),
                ));
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.center.to_f64()
    }

    pub fn error_f64(&self) -> f64 {
        rational_upper_f64(&self.error)
    }

    /// Fractional part as a 128-bit fixed-point fraction together with a
    /// bound on the phase error (input error plus truncation).
    pub fn fixed_fraction(&self) -> Result<(u128, f64)> {
        let two128 = BigInt::one() << 128u32;
        let scaled = self.center.scale_int(&two128);
        let fl = scaled.floor()?;
        let frac = fl.mod_floor(&two128);
        let fixed = frac.to_u128().expect("value reduced below 2^128");
        Ok((fixed, self.error_f64() + f64::powi(2.0, -128)))
    }

    /// Continued-fraction convergent `a/q` of the center with the largest
    /// denominator `q ≤ q_max`.
    pub fn best_convergent(&self, q_max: u64) -> Result<(BigInt, BigInt)> {
        if q_max == 0 {
            return Err(Error::InvalidParam("denominator bound must be positive".into()));
        }
        let q_max = BigInt::from(q_max);
        let mut x = self.center.clone();
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (x.floor()?, BigInt::one());
        x = x.sub(&Surd::from_rational(BigRational::from_integer(p1.clone())));
        while !x.is_zero() {
            x = reciprocal(&x)?;
            let a = x.floor()?;
            let p2 = &a * &p1 + &p0;
            let q2 = &a * &q1 + &q0;
            if q2 > q_max {
                break;
            }
            x = x.sub(&Surd::from_rational(BigRational::from_integer(a)));
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
        }
        Ok((p1, q1))
    }
}

/// `1/x` for rationals and single quadratic surds.
fn reciprocal(x: &Surd) -> Result<Surd> {
    if let Some(r) = x.as_rational() {
        if r.is_zero() {
            return Err(Error::DomainError("reciprocal of zero".into()));
        }
        return Ok(Surd::from_rational(r.recip()));
    }
    let (a, b, d) = x.as_quadratic().ok_or_else(|| {
        Error::InvalidParam("continued fractions need a rational or a single quadratic surd".into())
    })?;
    let norm = &a * &a - &b * &b * BigRational::from_integer(BigInt::from(d));
    let inv = norm.recip();
    let mut terms = BTreeMap::new();
    if !a.is_zero() {
        terms.insert(1, &a * &inv);
    }
    terms.insert(d, -(&b * &inv));
    Ok(Surd { terms })
}

/// Floors of `α·m + β` for a run of integers `m`, answered from a double
/// precision estimate whenever that is provably safe and from exact
/// arithmetic otherwise.
#[derive(Debug, Clone)]
pub struct AffineFloor {
    alpha: CertifiedReal,
    beta: CertifiedReal,
    alpha_f: f64,
    beta_f: f64,
    alpha_slack: f64,
    beta_slack: f64,
}

impl AffineFloor {
    pub fn new(alpha: CertifiedReal, beta: CertifiedReal) -> Self {
        let alpha_f = alpha.to_f64();
        let beta_f = beta.to_f64();
        let alpha_slack = alpha.error_f64() + alpha_f.abs() * 1e-14;
        let beta_slack = beta.error_f64() + beta_f.abs() * 1e-14;
        AffineFloor {
            alpha,
            beta,
            alpha_f,
            beta_f,
            alpha_slack,
            beta_slack,
        }
    }

    pub fn alpha(&self) -> &CertifiedReal {
        &self.alpha
    }

    pub fn beta(&self) -> &CertifiedReal {
        &self.beta
    }

    pub fn floor_at(&self, m: i64) -> Result<i64> {
        let mf = m as f64;
        let x = self.alpha_f.mul_add(mf, self.beta_f);
        let margin = 4.0 * (self.alpha_slack * mf.abs() + self.beta_slack + x.abs() * 1e-15) + 1e-300;
        let (lo, hi) = ((x - margin).floor(), (x + margin).floor());
        if lo == hi && lo.abs() < 9.0e15 {
            return Ok(lo as i64);
        }
        let exact = self.alpha.affine(&BigInt::from(m), &self.beta).floor()?;
        exact
            .to_i64()
            .ok_or_else(|| Error::InvalidParam("floor value exceeds i64".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_decimal("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_decimal("-1.25e2").unwrap(), rat(-125, 1));
        assert_eq!(parse_decimal("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_decimal(".5").unwrap(), rat(1, 2));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn sqrt_reduces_square_factors() {
        assert_eq!(Surd::sqrt(8), Surd::sqrt(2).scale(&rat(2, 1)));
        assert_eq!(Surd::sqrt(9).as_rational(), Some(rat(3, 1)));
    }

    #[test]
    fn floor_of_root_two_multiples() {
        let r2 = Surd::sqrt(2);
        let floors: Vec<i64> = (1..=7)
            .map(|m| r2.scale(&rat(m, 1)).floor().unwrap().to_i64().unwrap())
            .collect();
        assert_eq!(floors, vec![1, 2, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn surd_cancellation_becomes_rational() {
        let x = Surd::sqrt(2).add(&Surd::from_int(3)).sub(&Surd::sqrt(2));
        assert_eq!(x.as_rational(), Some(rat(3, 1)));
        assert_eq!(x.floor().unwrap(), BigInt::from(3));
    }

    #[test]
    fn rejects_bad_surds() {
        assert!(RealSpec::surd(0, 1, 4, 1).certify().is_err());
        assert!(RealSpec::surd(0, 1, 2, 0).certify().is_err());
        assert!(RealSpec::rational(1, 0).certify().is_err());
    }

    #[test]
    fn decimal_floor_needs_room() {
        let x = RealSpec::decimal("2.5", "0.1").certify().unwrap();
        assert_eq!(x.floor().unwrap(), BigInt::from(2));
        let y = RealSpec::decimal("2.99", "0.05").certify().unwrap();
        assert!(matches!(y.floor(), Err(Error::UncertifiableReal(_))));
    }

    #[test]
    fn reciprocal_of_golden_ratio() {
        let inv = RealSpec::golden_ratio().recip().unwrap();
        // 2/(1+√5) = (√5 - 1)/2
        assert_eq!(inv, RealSpec::surd(-1, 1, 5, 2));
    }

    #[test]
    fn convergents() {
        let r2 = RealSpec::sqrt(2).certify().unwrap();
        let (a, q) = r2.best_convergent(100).unwrap();
        assert_eq!((a, q), (BigInt::from(99), BigInt::from(70)));
        let third = RealSpec::rational(1, 3).certify().unwrap();
        assert_eq!(third.best_convergent(10).unwrap(), (BigInt::one(), BigInt::from(3)));
    }

    #[test]
    fn fixed_fraction_ignores_integer_shifts() {
        let a = RealSpec::surd(0, 1, 2, 1).certify().unwrap();
        let b = RealSpec::surd(5, 1, 2, 1).certify().unwrap();
        assert_eq!(a.fixed_fraction().unwrap().0, b.fixed_fraction().unwrap().0);
        let neg = RealSpec::rational(-1, 4).certify().unwrap();
        assert_eq!(neg.fixed_fraction().unwrap().0, 3u128 << 126);
    }

    #[test]
    fn affine_floor_matches_exact() {
        let af = AffineFloor::new(
            RealSpec::golden_ratio().certify().unwrap(),
            RealSpec::rational(3, 10).certify().unwrap(),
        );
        for m in 1..2000i64 {
            let exact = af
                .alpha()
                .affine(&BigInt::from(m), af.beta())
                .floor()
                .unwrap()
                .to_i64()
                .unwrap();
            assert_eq!(af.floor_at(m).unwrap(), exact);
        }
    }
}
