//! Distribution modulo one of `ψ(a_n)` along the elements `a₁ < a₂ < …` of a set.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::phase::{e_fixed64, fixed64_from_unit, unit_from_fixed64, PhasePoly, PolyCoeffs};
use crate::real::{RealSpec, Surd};
use crate::sets::{materialize, SetExpr};

/// Default number of Weyl-criterion frequencies.
pub const DEFAULT_M_MAX: u32 = 8;
/// Default cap on the search range when collecting set elements.
pub const DEFAULT_MAX_CEILING: u64 = 1 << 32;

/// Fractional parts `{ψ(a_n)}`, stored as fractions of 2⁶⁴.
#[derive(Debug, Clone, PartialEq)]
pub struct FracSequence {
    pub source: Option<SetExpr>,
    pub poly: Option<PolyCoeffs>,
    phases: Vec<u64>,
}

impl FracSequence {
    /// A sequence given directly by values, each reduced modulo one.
    pub fn from_values(values: &[f64]) -> Self {
        FracSequence {
            source: None,
            poly: None,
            phases: values.iter().map(|&x| fixed64_from_unit(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[u64] {
        &self.phases
    }

    pub fn values(&self) -> Vec<f64> {
        self.phases.iter().map(|&x| unit_from_fixed64(x)).collect()
    }

    /// The first `m` terms.
    pub fn prefix(&self, m: usize) -> FracSequence {
        FracSequence {
            source: self.source.clone(),
            poly: self.poly.clone(),
            phases: self.phases[..m.min(self.phases.len())].to_vec(),
        }
    }
}

/// The first `count` elements of the set, growing the search range by
/// doubling up to `max_ceiling`.
pub fn first_elements(expr: &SetExpr, count: usize, max_ceiling: u64) -> Result<Vec<u64>> {
    let mut ceiling = (2 * count as u64).max(64);
    loop {
        let capped = ceiling.min(max_ceiling);
        let slice = materialize(expr, capped)?;
        if slice.count() >= count as u64 {
            return Ok(slice.iter().take(count).collect());
        }
        if capped == max_ceiling {
            return Err(Error::SetTooSparse {
                wanted: count,
                ceiling: max_ceiling,
            });
        }
        ceiling = ceiling.saturating_mul(2);
    }
}

/// `{ψ(a_n)}` for the first `count` elements of the set.
pub fn frac_sequence(expr: &SetExpr, poly: &PolyCoeffs, count: usize, max_ceiling: u64) -> Result<FracSequence> {
    let compiled = PhasePoly::compile(poly)?;
    let elements = first_elements(expr, count, max_ceiling)?;
    if let Some(&last) = elements.last() {
        compiled.check_precision(last)?;
    }
    Ok(FracSequence {
        source: Some(expr.clone()),
        poly: Some(poly.clone()),
        phases: elements
            .iter()
            .map(|&a| (compiled.phase(a) >> 64) as u64)
            .collect(),
    })
}

/// `(m, M⁻¹|Σ_{n ≤ M} e(m·x_n)|)` for `m = 1, …, m_max`.
pub fn weyl_criterion_stats(seq: &FracSequence, m_max: u32) -> Result<Vec<(u32, f64)>> {
    if m_max == 0 {
        return Err(Error::InvalidParam("m_max must be at least 1".into()));
    }
    if seq.is_empty() {
        return Err(Error::InvalidParam("empty sequence".into()));
    }
    let len = seq.len() as f64;
    Ok((1..=m_max)
        .map(|m| {
            let s: num_complex::Complex64 = seq
                .phases
                .iter()
                .map(|&x| e_fixed64(x.wrapping_mul(m as u64)))
                .sum();
            (m, (s.norm() / len).min(1.0))
        })
        .collect())
}

/// Star discrepancy `D*_M` from the sorted values.
pub fn star_discrepancy(seq: &FracSequence) -> f64 {
    let mut sorted = seq.phases.clone();
    sorted.sort_unstable();
    let m = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = unit_from_fixed64(x);
            let i = i as f64;
            ((i + 1.0) / m - x).max(x - i / m)
        })
        .fold(0.0, f64::max)
}

/// Weyl statistics and star discrepancy for one sequence length.
#[derive(Debug, Clone, PartialEq)]
pub struct EquidistReport {
    pub m: usize,
    pub weyl_stats: Vec<(u32, f64)>,
    pub star_discrepancy: f64,
}

/// One report per ladder length, all taken from the same sequence.
pub fn equidist_experiment(
    expr: &SetExpr,
    poly: &PolyCoeffs,
    ladder: &[usize],
    m_max: u32,
) -> Result<Vec<EquidistReport>> {
    if ladder.is_empty() || ladder[0] == 0 || ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParam("ladder must be positive and strictly increasing".into()));
    }
    let full = frac_sequence(expr, poly, *ladder.last().unwrap(), DEFAULT_MAX_CEILING)?;
    ladder
        .par_iter()
        .map(|&m| {
            let seq = full.prefix(m);
            Ok(EquidistReport {
                m,
                weyl_stats: weyl_criterion_stats(&seq, m_max)?,
                star_discrepancy: star_discrepancy(&seq),
            })
        })
        .collect()
}

/// Outcome of the exact check that `{a_n θ} ∈ (1 − θ, 1)` along the Beatty
/// set `{⌊m/θ⌋}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentCheck {
    pub terms: usize,
    pub violations: usize,
    pub first_violation: Option<u64>,
}

impl ContainmentCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// The Beatty set `{⌊m/θ⌋ : m ≥ 1}` for `0 < θ < 1`.
pub fn reciprocal_beatty(theta: &RealSpec) -> Result<SetExpr> {
    Ok(SetExpr::beatty(theta.recip()?, RealSpec::integer(0)))
}

/// Decides `1 − θ < {a_n θ} < 1` exactly for the first `terms` elements of
/// `{⌊m/θ⌋}`; `θ` must be rational or a quadratic surd in `(0, 1)`.
pub fn beatty_containment_check(theta: &RealSpec, terms: usize) -> Result<ContainmentCheck> {
    let cert = theta.certify()?;
    if !cert.is_exact() {
        return Err(Error::UncertifiableReal(
            "containment needs an exactly represented θ".into(),
        ));
    }
    let t = cert.center;
    let zero = Surd::zero();
    let one = Surd::from_int(1);
    if t.sub(&zero).sign()? != Ordering::Greater || one.sub(&t).sign()? != Ordering::Greater {
        return Err(Error::DomainError("θ must lie in (0, 1)".into()));
    }
    let elements = first_elements(&reciprocal_beatty(theta)?, terms, DEFAULT_MAX_CEILING)?;
    let outcomes: Vec<bool> = elements
        .par_iter()
        .map(|&a| -> Result<bool> {
            let x = t.scale_int(&BigInt::from(a));
            let frac = x.sub(&Surd::from_rational(BigRational::from_integer(x.floor()?)));
            let above = frac.sub(&one).add(&t).sign()? == Ordering::Greater;
            let below = frac.sub(&one).sign()? == Ordering::Less;
            Ok(above && below)
        })
        .collect::<Result<_>>()?;
    let first_violation = outcomes
        .iter()
        .position(|ok| !ok)
        .map(|i| elements[i]);
    Ok(ContainmentCheck {
        terms: elements.len(),
        violations: outcomes.iter().filter(|ok| !**ok).count(),
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::Coeff;

    #[test]
    fn half_integer_phases() {
        let poly = PolyCoeffs::new(vec![Coeff::zero(), RealSpec::rational(1, 2).into()]).unwrap();
        let seq = frac_sequence(&SetExpr::Naturals, &poly, 4, DEFAULT_MAX_CEILING).unwrap();
        assert_eq!(seq.values(), vec![0.5, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn zeros_are_maximally_biased() {
        let seq = FracSequence::from_values(&[0.0; 20]);
        for (_, s) in weyl_criterion_stats(&seq, 3).unwrap() {
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert!((star_discrepancy(&seq) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(star_discrepancy(&FracSequence::from_values(&[0.5])), 0.5);
        let m = 40;
        let pts: Vec<f64> = (1..=m).map(|i| (2 * i - 1) as f64 / (2 * m) as f64).collect();
        let d = star_discrepancy(&FracSequence::from_values(&pts));
        assert!((d - 1.0 / (2 * m) as f64).abs() < 1e-12);
        let spaced: Vec<f64> = (0..m).map(|i| i as f64 / m as f64).collect();
        let stats = weyl_criterion_stats(&FracSequence::from_values(&spaced), 1).unwrap();
        assert!(stats[0].1 < 1e-12);
    }

    #[test]
    fn sparse_sets_hit_the_ceiling() {
        let poly = PolyCoeffs::monomial(1, RealSpec::sqrt(2).into()).unwrap();
        let err = frac_sequence(&SetExpr::explicit([3, 9]), &poly, 5, 1 << 12).unwrap_err();
        assert!(matches!(err, Error::SetTooSparse { wanted: 5, .. }));
    }

    #[test]
    fn golden_containment() {
        let theta = RealSpec::golden_ratio().recip().unwrap();
        let check = beatty_containment_check(&theta, 200).unwrap();
        assert!(check.holds());
        assert_eq!(check.terms, 200);
        assert!(beatty_containment_check(&RealSpec::sqrt(2), 10).is_err());
    }
}
