//! Arithmetic functions averaged over a set, and the Hölder chain that
//! bounds such averages by the exponential-sum moments of the set.

mod characters;
mod cusp;
mod sieve;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::{check_grid, grid_from_coeffs};
use crate::moments::{spectrum, DEFAULT_GRID_FACTOR};
use crate::phase::{e_fixed, PhasePoly, PolyCoeffs};
use crate::real::RealSpec;
use crate::sets::IndicatorSlice;

pub use self::characters::{dirichlet_char, gauss_sum, is_prime, primitive_root, DirichletChar, MAX_CHAR_MODULUS};
pub use self::cusp::ramanujan_tau;
pub use self::sieve::{mangoldt_upto, mobius_upto, smallest_prime_factors, MAX_SIEVE};

/// Which arithmetic function to materialize.
#[derive(Debug, Clone, PartialEq)]
pub enum ArithKind {
    Mobius,
    Mangoldt,
    /// `χ` modulo the prime `q`, index `t`.
    Character { q: u64, t: u64 },
    /// `μ(n) e(n^k θ)`.
    MobiusPhase { k: u32, theta: RealSpec },
    /// `Λ(n) e(n^k θ)`.
    MangoldtPhase { k: u32, theta: RealSpec },
    /// Ramanujan's `τ(n)`, the coefficients of `Δ`.
    CuspCoeff,
    Explicit,
}

impl fmt::Display for ArithKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithKind::Mobius => f.write_str("mobius"),
            ArithKind::Mangoldt => f.write_str("mangoldt"),
            ArithKind::Character { q, t } => write!(f, "char:{q}:{t}"),
            ArithKind::MobiusPhase { k, theta } => write!(f, "mobius-phase:{k}:{theta}"),
            ArithKind::MangoldtPhase { k, theta } => write!(f, "mangoldt-phase:{k}:{theta}"),
            ArithKind::CuspCoeff => f.write_str("tau"),
            ArithKind::Explicit => f.write_str("explicit"),
        }
    }
}

impl FromStr for ArithKind {
    type Err = Error;

    /// `mobius`, `mangoldt`, `tau`, `char:Q:T`, `mobius-phase:K:REAL` or
    /// `mangoldt-phase:K:REAL`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown arithmetic function {s:?}"));
        let mut parts = s.trim().splitn(3, ':');
        let head = parts.next().ok_or_else(bad)?;
        let mut num = |what: &str| -> Result<u64> {
            let t = parts.next().ok_or_else(bad)?;
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} {t:?} in {s:?}")))
        };
        let kind = match head {
            "mobius" => ArithKind::Mobius,
            "mangoldt" => ArithKind::Mangoldt,
            "tau" => ArithKind::CuspCoeff,
            "char" => {
                let q = num("modulus")?;
                let t = num("index")?;
                ArithKind::Character { q, t }
            }
            "mobius-phase" | "mangoldt-phase" => {
                let k = num("degree")? as u32;
                let theta: RealSpec = parts.next().ok_or_else(bad)?.parse()?;
                if head == "mobius-phase" {
                    ArithKind::MobiusPhase { k, theta }
                } else {
                    ArithKind::MangoldtPhase { k, theta }
                }
            }
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(kind)
    }
}

/// Values `f(1), …, f(N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithFn {
    pub kind: ArithKind,
    values: Vec<Complex64>,
}

impl ArithFn {
    pub fn explicit(values: Vec<Complex64>) -> Self {
        ArithFn {
            kind: ArithKind::Explicit,
            values,
        }
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `f(n)` for `1 ≤ n ≤ N`.
    pub fn at(&self, n: u64) -> Complex64 {
        self.values[n as usize - 1]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

fn real_values<T: Copy>(v: &[T], conv: impl Fn(T) -> f64) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(conv(x), 0.0)).collect()
}

fn twisted(base: Vec<Complex64>, k: u32, theta: &RealSpec) -> Result<Vec<Complex64>> {
    if k == 0 {
        return Err(Error::InvalidParam("phase degree must be at least 1".into()));
    }
    let phase = PhasePoly::compile(&PolyCoeffs::monomial(k as usize, theta.clone().into())?)?;
    phase.check_precision(base.len() as u64)?;
    Ok(base
        .into_iter()
        .enumerate()
        .map(|(i, v)| v * e_fixed(phase.phase(i as u64 + 1)))
        .collect())
}

/// `f(1), …, f(N)` for the requested function.
pub fn sieve(kind: &ArithKind, n: u64) -> Result<ArithFn> {
    let values = match kind {
        ArithKind::Mobius => real_values(&mobius_upto(n)?, f64::from),
        ArithKind::Mangoldt => real_values(&mangoldt_upto(n)?, |x| x),
        ArithKind::Character { q, t } => {
            sieve::check_sieve_size(n)?;
            let chi = dirichlet_char(*q, *t)?;
            (1..=n).map(|m| chi.value(m)).collect()
        }
        ArithKind::MobiusPhase { k, theta } => twisted(real_values(&mobius_upto(n)?, f64::from), *k, theta)?,
        ArithKind::MangoldtPhase { k, theta } => twisted(real_values(&mangoldt_upto(n)?, |x| x), *k, theta)?,
        ArithKind::CuspCoeff => real_values(&ramanujan_tau(n)?, |x| x as f64),
        ArithKind::Explicit => {
            return Err(Error::InvalidParam("explicit functions are built with ArithFn::explicit".into()))
        }
    };
    Ok(ArithFn {
        kind: kind.clone(),
        values,
    })
}

/// Grid maximum and `l²` norm of `H_f(α; N) = N⁻¹ Σ_{n ≤ N} f(n) e(nα)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HfNorms {
    /// `max_j |H_f(j/M)|`, a lower bound for `‖H_f‖_∞`.
    pub sup_norm: f64,
    /// `(N⁻¹ Σ |f(n)|²)^{1/2}`.
    pub l2_norm: f64,
    pub grid_size: usize,
    /// Grid maximum minus the maximum over the even (`M/2`) points.
    pub refinement_delta: f64,
}

/// `H_f(j/M)` for `j = 0, …, M−1`.
pub fn hf_grid(f: &ArithFn, grid: usize) -> Result<Vec<Complex64>> {
    check_grid(grid, f.len(), DEFAULT_GRID_FACTOR)?;
    let scale = 1.0 / f.len() as f64;
    Ok(grid_from_coeffs(
        f.values.iter().enumerate().map(|(i, &v)| (i + 1, v * scale)),
        grid,
    ))
}

fn l2_norm(f: &ArithFn) -> f64 {
    (f.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / f.len() as f64).sqrt()
}

/// Norms of `H_f` on a grid of `grid ≥ 32N` points.
pub fn hf_norms(f: &ArithFn, grid: usize) -> Result<HfNorms> {
    if f.is_empty() {
        return Err(Error::InvalidParam("empty arithmetic function".into()));
    }
    let h = hf_grid(f, grid)?;
    let sup = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let coarse = h.iter().step_by(2).map(|z| z.norm()).fold(0.0, f64::max);
    Ok(HfNorms {
        sup_norm: sup,
        l2_norm: l2_norm(f),
        grid_size: grid,
        refinement_delta: sup - coarse,
    })
}

fn check_lengths(f: &ArithFn, slice: &IndicatorSlice) -> Result<()> {
    if f.len() != slice.n_max() {
        return Err(Error::LengthMismatch {
            function: f.len() as usize,
            slice: slice.n_max(),
        });
    }
    Ok(())
}

/// `N⁻¹ Σ_{n ∈ 𝒜(N)} f(n)`.
pub fn restricted_average(f: &ArithFn, slice: &IndicatorSlice) -> Result<Complex64> {
    check_lengths(f, slice)?;
    let s: Complex64 = slice.iter().map(|n| f.at(n)).sum();
    Ok(s / slice.n_max() as f64)
}

/// Both sides of `|N⁻¹Σ_𝒜 f| ≤ sup|H_f|^{2/p−1} (∫|H_f|²)^{1−1/p} (∫|g|^p)^{1/p}`,
/// where `g` is the exponential sum of the set and every factor is taken
/// over the same grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
}

fn check_holder_exponent(p: f64) -> Result<()> {
    if !(1.0..2.0).contains(&p) {
        return Err(Error::DomainError(format!("p must lie in [1, 2), got {p}")));
    }
    Ok(())
}

/// On a grid of `M > N` points the discrete average of `H_f(α)g(−α)` equals
/// the restricted average exactly, so the chain is a finite Hölder
/// inequality and holds for every `f` and every set.
pub fn holder_chain_check(f: &ArithFn, slice: &IndicatorSlice, p: f64, grid: usize) -> Result<HolderCheck> {
    check_lengths(f, slice)?;
    check_holder_exponent(p)?;
    let h = hf_grid(f, grid)?;
    let g = spectrum(slice, grid)?;
    let m = grid as f64;
    let lhs = restricted_average(f, slice)?.norm();
    let sup = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let l2sq = h.iter().map(|z| z.norm_sqr()).sum::<f64>() / m;
    let gp = g.iter().map(|z| z.norm().powf(p)).sum::<f64>() / m;
    let rhs = sup.powf(2.0 / p - 1.0) * l2sq.powf(1.0 - 1.0 / p) * gp.powf(1.0 / p);
    Ok(HolderCheck {
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

/// One row of the arithmetic-average screen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArithReport {
    pub n: u64,
    pub p: f64,
    pub restricted_avg_abs: f64,
    pub hf_sup: f64,
    pub hf_l2: f64,
    /// `‖H_f‖_∞^{2/p−1} ‖f‖_{l²}^{2−2/p}` with the grid maximum for the sup.
    pub bound_rhs: f64,
    pub ratio: f64,
}

pub fn arith_screen(f: &ArithFn, slice: &IndicatorSlice, p: f64, grid: usize) -> Result<ArithReport> {
    check_holder_exponent(p)?;
    let avg = restricted_average(f, slice)?.norm();
    let norms = hf_norms(f, grid)?;
    let bound_rhs = norms.sup_norm.powf(2.0 / p - 1.0) * norms.l2_norm.powf(2.0 - 2.0 / p);
    Ok(ArithReport {
        n: slice.n_max(),
        p,
        restricted_avg_abs: avg,
        hf_sup: norms.sup_norm,
        hf_l2: norms.l2_norm,
        bound_rhs,
        ratio: avg / bound_rhs,
    })
}

/// `Σ_{n ∈ 𝒜(N)} χ(n)` against `q^{1/2} N^{1−1/p} (1 + N/q)^{1/p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharSumReport {
    pub sum: Complex64,
    pub envelope: f64,
    pub ratio: f64,
}

/// `q^{1/2} N^{1−1/p} (1 + N/q)^{1/p}`.
pub fn char_sum_envelope(q: u64, n: u64, p: f64) -> f64 {
    let (q, n) = (q as f64, n as f64);
    q.sqrt() * n.powf(1.0 - 1.0 / p) * (1.0 + n / q).powf(1.0 / p)
}

pub fn restricted_char_sum(chi: &DirichletChar, slice: &IndicatorSlice, p: f64) -> Result<CharSumReport> {
    if chi.is_principal() {
        return Err(Error::PrincipalChar);
    }
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::DomainError(format!("p must lie in (1, 2), got {p}")));
    }
    let sum: Complex64 = slice.iter().map(|n| chi.value(n)).sum();
    let envelope = char_sum_envelope(chi.modulus(), slice.n_max(), p);
    Ok(CharSumReport {
        sum,
        envelope,
        ratio: sum.norm() / envelope,
    })
}

/// `N (q^{1/(4r−4)} (log q)^{1/(2r)} N^{−1/r})^{2/p−1}`, the character-sum
/// envelope obtained from a Burgess-type sup bound with parameter `r ≥ 2`.
pub fn burgess_char_envelope(q: u64, n: u64, p: f64, r: u32) -> Result<f64> {
    check_holder_exponent(p)?;
    if r < 2 {
        return Err(Error::DomainError(format!("r must exceed 1, got {r}")));
    }
    let (qf, nf, rf) = (q as f64, n as f64, r as f64);
    let inner = qf.powf(1.0 / (4.0 * rf - 4.0)) * qf.ln().powf(1.0 / (2.0 * rf)) * nf.powf(-1.0 / rf);
    Ok(nf * inner.powf(2.0 / p - 1.0))
}

/// `N^{k/2 + 1 − 1/p} (log 2N)^{2/p − 1}` for a cusp form of weight `k`.
pub fn cusp_envelope(weight: f64, n: u64, p: f64) -> Result<f64> {
    check_holder_exponent(p)?;
    let nf = n as f64;
    Ok(nf.powf(weight / 2.0 + 1.0 - 1.0 / p) * (2.0 * nf).ln().powf(2.0 / p - 1.0))
}

/// `B = (2/p − 1)σA − 1 + 1/p`, the log-power saving for `Λ(n)e(n^kθ)`
/// once the unrestricted sum saves `log^{−σA}`.
pub fn log_saving_exponent(p: f64, sigma: f64, a: f64) -> Result<f64> {
    check_holder_exponent(p)?;
    Ok((2.0 / p - 1.0) * sigma * a - 1.0 + 1.0 / p)
}

/// Whether `θ` lies on the minor arcs at scale `N`: every `q ≤ L = log^A(2N)`
/// has `‖qθ‖ > L/N`. Decided exactly for rationals and quadratic surds.
pub fn is_minor_arc(theta: &RealSpec, n: u64, a: f64) -> Result<bool> {
    if n == 0 || a.is_nan() || a <= 0.0 {
        return Err(Error::InvalidParam("need N ≥ 1 and A > 0".into()));
    }
    let cert = theta.certify()?;
    let l = (2.0 * n as f64).ln().powf(a);
    let threshold = l / n as f64;
    for q in 1..=(l.floor() as u64) {
        let x = cert.center.scale_int(&q.into());
        let fl = x.floor()?;
        let below = x.sub(&crate::real::Surd::from_rational(num_rational::BigRational::from_integer(fl)));
        let frac = below.to_f64();
        let dist = frac.min(1.0 - frac) + q as f64 * cert.error_f64();
        if dist <= threshold {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_text_round_trip() {
        for text in ["mobius", "mangoldt", "tau", "char:7:3", "mobius-phase:2:surd 0 1 2 1", "mangoldt-phase:3:rational 1 3"] {
            let k: ArithKind = text.parse().unwrap();
            assert_eq!(k.to_string(), text);
        }
        assert!("char:7".parse::<ArithKind>().is_err());
        assert!("bogus".parse::<ArithKind>().is_err());
    }

    #[test]
    fn constant_function_norms() {
        let n = 100;
        let one = ArithFn::explicit(vec![Complex64::new(1.0, 0.0); n]);
        let norms = hf_norms(&one, 4096).unwrap();
        assert!((norms.sup_norm - 1.0).abs() < 1e-12);
        assert!((norms.l2_norm - 1.0).abs() < 1e-12);
        assert!(matches!(hf_norms(&one, 2048), Err(Error::GridTooCoarse { .. })));
        let slice = IndicatorSlice::full(n as u64).unwrap();
        let avg = restricted_average(&one, &slice).unwrap();
        assert!((avg.re - 1.0).abs() < 1e-12);
        let h = holder_chain_check(&one, &slice, 1.5, 4096).unwrap();
        assert!((h.lhs - 1.0).abs() < 1e-12 && h.slack >= -1e-9);
    }

    #[test]
    fn twisted_constant_peaks_at_its_frequency() {
        let n = 64usize;
        let m = 4096;
        let j0 = 1000;
        let f = ArithFn::explicit(
            (1..=n)
                .map(|k| crate::phase::e(-((k * j0) as f64) / m as f64))
                .collect(),
        );
        let h = hf_grid(&f, m).unwrap();
        assert!((h[j0].norm() - 1.0).abs() < 1e-12);
        assert!((hf_norms(&f, m).unwrap().sup_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_function_chain() {
        let f = ArithFn::explicit(vec![Complex64::new(0.0, 0.0); 32]);
        let slice = IndicatorSlice::full(32).unwrap();
        let h = holder_chain_check(&f, &slice, 1.2, 1024).unwrap();
        assert_eq!((h.lhs, h.rhs), (0.0, 0.0));
    }

    #[test]
    fn length_mismatch() {
        let f = sieve(&ArithKind::Mobius, 10).unwrap();
        let slice = IndicatorSlice::full(11).unwrap();
        assert!(matches!(
            restricted_average(&f, &slice),
            Err(Error::LengthMismatch { function: 10, slice: 11 })
        ));
    }

    #[test]
    fn char_sum_rejections() {
        let chi = dirichlet_char(7, 0).unwrap();
        let slice = IndicatorSlice::full(10).unwrap();
        assert_eq!(restricted_char_sum(&chi, &slice, 1.5), Err(Error::PrincipalChar));
        let chi = dirichlet_char(7, 3).unwrap();
        let empty = IndicatorSlice::from_elements(10, []).unwrap();
        assert_eq!(restricted_char_sum(&chi, &empty, 1.5).unwrap().sum, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn minor_arc_predicate() {
        assert!(!is_minor_arc(&RealSpec::rational(1, 3), 10_000, 1.0).unwrap());
        assert!(is_minor_arc(&RealSpec::sqrt(2), 10_000, 1.0).unwrap());
    }

    #[test]
    fn envelopes() {
        let e = char_sum_envelope(101, 1000, 1.5);
        assert!((e - 101f64.sqrt() * 1000f64.powf(1.0 / 3.0) * (1.0 + 1000.0 / 101.0f64).powf(2.0 / 3.0)).abs() < 1e-9);
        assert!(burgess_char_envelope(101, 1000, 1.5, 1).is_err());
        assert!(cusp_envelope(12.0, 100, 1.0).unwrap() > 0.0);
        assert!((log_saving_exponent(1.0, 0.5, 4.0).unwrap() - 2.0).abs() < 1e-15);
    }
}
