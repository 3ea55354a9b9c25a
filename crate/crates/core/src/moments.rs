//! Moments of the exponential sum `f_N(α; 𝒜) = Σ_{n ∈ 𝒜(N)} e(nα)`.
//!
//! The continuous moment `I_p(N; 𝒜) = ∫₀¹ |f_N(α)|^p dα` is approximated by
//! the uniform Riemann sum over `M` points, all of which come out of a single
//! FFT of the zero-padded indicator. The even-indexed points of that grid are
//! exactly the grid of size `M/2`, so the refinement comparison is free.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fft::{check_grid, default_grid, grid_from_coeffs, synthesize};
use crate::phase::{e_fixed, fixed128_from_unit};
use crate::sets::{materialize, IndicatorSlice, SetExpr};

/// Grid points per unit of `N` used when no grid is given.
pub const DEFAULT_GRID_FACTOR: u64 = 32;
/// Coarsest accepted grid, in units of `N`.
pub const MIN_GRID_FACTOR: u64 = 4;
/// Values of `|f|` below this contribute nothing to a moment.
pub const NEGLIGIBLE: f64 = 1e-30;
/// Largest modulus accepted by [`discrete_moment`].
pub const MAX_DISCRETE_MODULUS: u64 = 1 << 26;
/// Default lower threshold for `I_1 / log A(N)`.
pub const DEFAULT_LITTLEWOOD_FLOOR: f64 = 0.3;

/// Tolerances for the empirical subconvexity screens. None of these are
/// intrinsic constants; they are calibration choices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenConfig {
    /// Allowed slope deviation when the predicted moment has no log factor.
    pub slope_tol_clean: f64,
    /// Allowed slope deviation when log factors are absorbed into the fit.
    pub slope_tol_log: f64,
    /// Largest accepted `max/min` over the ladder of `I_p / (N⁻¹A(N)^p)`.
    pub ratio_factor: f64,
    pub littlewood_floor: f64,
}

impl Default for ScreenConfig {
    fn default() -> Self {
        ScreenConfig {
            slope_tol_clean: 0.05,
            slope_tol_log: 0.1,
            ratio_factor: 4.0,
            littlewood_floor: DEFAULT_LITTLEWOOD_FLOOR,
        }
    }
}

/// A grid approximation to `I_p(N; 𝒜)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub p: f64,
    pub n: u64,
    /// `A(N)`.
    pub count: u64,
    pub value: f64,
    pub grid_size: usize,
    /// `|value(M) − value(M/2)|`.
    pub refinement_delta: f64,
}

impl MomentEstimate {
    /// `N⁻¹A(N)^p`, the size of a strongly subconvex moment.
    pub fn subconvex_bound(&self) -> f64 {
        (self.count as f64).powf(self.p) / self.n as f64
    }

    pub fn ratio_to_bound(&self) -> f64 {
        self.value / self.subconvex_bound()
    }

    /// `(A(N)/2)^p / (100N)`, below which no moment can fall.
    pub fn floor(&self) -> f64 {
        (self.count as f64 / 2.0).powf(self.p) / (100.0 * self.n as f64)
    }
}

/// `f_N(α; 𝒜)` by direct summation. Phases `nα mod 1` are formed in 128-bit
/// fixed point, so large `n` lose nothing to argument reduction.
pub fn exp_sum_at(slice: &IndicatorSlice, alpha: f64) -> Complex64 {
    let a = fixed128_from_unit(alpha);
    slice
        .iter()
        .map(|n| e_fixed(a.wrapping_mul(n as u128)))
        .sum()
}

/// `f_N(j/M; 𝒜)` for `j = 0, …, M−1`.
pub fn spectrum(slice: &IndicatorSlice, grid: usize) -> Result<Vec<Complex64>> {
    check_grid(grid, slice.n_max(), MIN_GRID_FACTOR)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(grid_from_coeffs(slice.iter().map(|n| (n as usize, one)), grid))
}

/// `|f_N|` sampled on a grid, reusable for any number of exponents.
#[derive(Debug, Clone)]
pub struct MomentGrid {
    n: u64,
    count: u64,
    abs: Vec<f64>,
}

impl MomentGrid {
    pub fn new(slice: &IndicatorSlice, grid: usize) -> Result<Self> {
        let abs = spectrum(slice, grid)?.iter().map(|z| z.norm()).collect();
        Ok(MomentGrid {
            n: slice.n_max(),
            count: slice.count(),
            abs,
        })
    }

    pub fn grid_size(&self) -> usize {
        self.abs.len()
    }

    /// `|f_N(j/M)|`.
    pub fn abs_values(&self) -> &[f64] {
        &self.abs
    }

    pub fn moment(&self, p: f64) -> Result<MomentEstimate> {
        check_exponent(p)?;
        let (all, even) = power_sums(&self.abs, p);
        let m = self.abs.len() as f64;
        let value = all / m;
        let coarse = even / (m / 2.0);
        Ok(MomentEstimate {
            p,
            n: self.n,
            count: self.count,
            value,
            grid_size: self.abs.len(),
            refinement_delta: (value - coarse).abs(),
        })
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidParam(format!("moment exponent must be positive, got {p}")));
    }
    Ok(())
}

#[inline]
fn pow_abs(a: f64, p: f64) -> f64 {
    if a < NEGLIGIBLE {
        0.0
    } else if p == 2.0 {
        a * a
    } else if p == 1.0 {
        a
    } else {
        a.powf(p)
    }
}

/// `(Σ_j |a_j|^p, Σ_{j even} |a_j|^p)`, accumulated in blocks to keep
/// rounding error independent of the grid size.
fn power_sums(abs: &[f64], p: f64) -> (f64, f64) {
    abs.par_chunks(4096)
        .map(|chunk| {
            let (mut all, mut even) = (0.0, 0.0);
            for pair in chunk.chunks(2) {
                let x = pow_abs(pair[0], p);
                even += x;
                all += x;
                if let Some(&y) = pair.get(1) {
                    all += pow_abs(y, p);
                }
            }
            (all, even)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0, 0.0), |(a, e), (x, y)| (a + x, e + y))
}

/// `I_p(N; 𝒜)` on a grid of `grid` points (a power of two, at least `4N`).
pub fn moment_lp(slice: &IndicatorSlice, p: f64, grid: usize) -> Result<MomentEstimate> {
    check_exponent(p)?;
    MomentGrid::new(slice, grid)?.moment(p)
}

/// `#{n ∈ 𝒜(N) : n ≡ c (mod q)}` for `c = 0, …, q−1`.
pub fn residue_counts(slice: &IndicatorSlice, q: u64) -> Result<Vec<u64>> {
    check_modulus(q)?;
    let mut counts = vec![0u64; q as usize];
    for n in slice.iter() {
        counts[(n % q) as usize] += 1;
    }
    Ok(counts)
}

fn check_modulus(q: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::InvalidParam("modulus must be positive".into()));
    }
    if q > MAX_DISCRETE_MODULUS {
        return Err(Error::ResourceLimit(format!(
            "modulus {q} exceeds {MAX_DISCRETE_MODULUS}"
        )));
    }
    Ok(())
}

/// `S_p(N; 𝒜; q) = q⁻¹ Σ_{a=1}^{q} |f_N(a/q)|^p`, via the residue histogram
/// and one DFT of length `q`.
pub fn discrete_moment(slice: &IndicatorSlice, p: f64, q: u64) -> Result<f64> {
    check_exponent(p)?;
    let counts = residue_counts(slice, q)?;
    let mut buf: Vec<Complex64> = counts
        .iter()
        .map(|&c| Complex64::new(c as f64, 0.0))
        .collect();
    synthesize(&mut buf);
    let abs: Vec<f64> = buf.iter().map(|z| z.norm()).collect();
    Ok(power_sums(&abs, p).0 / q as f64)
}

/// One row of the discrete-moment screen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscretePoint {
    pub p: f64,
    pub n: u64,
    pub q: u64,
    pub value: f64,
    /// `N^{p−1} + N^p/q`.
    pub bound: f64,
    pub ratio: f64,
}

/// `S_p(N; 𝒜; q)` against `N^{p−1} + N^p/q` for each modulus, in input order.
pub fn discrete_moment_screen(slice: &IndicatorSlice, p: f64, moduli: &[u64]) -> Result<Vec<DiscretePoint>> {
    let n = slice.n_max();
    let nf = n as f64;
    moduli
        .par_iter()
        .map(|&q| {
            let value = discrete_moment(slice, p, q)?;
            let bound = nf.powf(p - 1.0) + nf.powf(p) / q as f64;
            Ok(DiscretePoint {
                p,
                n,
                q,
                value,
                bound,
                ratio: value / bound,
            })
        })
        .collect()
}

/// Ordinary least-squares line `y ≈ slope·x + intercept` with the RMS residual.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    (slope, intercept, (rss / k).sqrt())
}

/// Log-log regression of `I_p(N)` on `N` over a ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub p: f64,
    pub points: Vec<MomentEstimate>,
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
}

impl SlopeFit {
    pub fn from_points(points: Vec<MomentEstimate>) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::InvalidParam(format!(
                "a slope fit needs at least 4 ladder points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|e| e.value <= 0.0) {
            return Err(Error::DomainError("cannot fit a vanishing moment on a log scale".into()));
        }
        let xs: Vec<f64> = points.iter().map(|e| (e.n as f64).ln()).collect();
        let ys: Vec<f64> = points.iter().map(|e| e.value.ln()).collect();
        let (slope, intercept, residual_rms) = least_squares(&xs, &ys);
        Ok(SlopeFit {
            p: points[0].p,
            points,
            slope,
            intercept,
            residual_rms,
        })
    }

    /// `I_p(N) / (N⁻¹A(N)^p)` per ladder point.
    pub fn ratios(&self) -> Vec<f64> {
        self.points.iter().map(|e| e.ratio_to_bound()).collect()
    }

    /// `max/min` of [`Self::ratios`].
    pub fn ratio_spread(&self) -> f64 {
        let r = self.ratios();
        let max = r.iter().cloned().fold(f64::MIN, f64::max);
        let min = r.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }

    pub fn passes(&self, ratio_factor: f64) -> bool {
        self.ratio_spread() <= ratio_factor
    }

    pub fn slope_within(&self, target: f64, tol: f64) -> bool {
        (self.slope - target).abs() <= tol
    }
}

fn check_ladder(ladder: &[u64]) -> Result<()> {
    if ladder.is_empty() || ladder[0] == 0 {
        return Err(Error::InvalidParam("ladder must be nonempty and positive".into()));
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParam("ladder must be strictly increasing".into()));
    }
    Ok(())
}

/// `I_p(N; 𝒜)` for every exponent and ladder point. The result is indexed
/// `[p][N]` in input order; each ladder point shares one FFT across exponents.
pub fn moment_ladder(
    expr: &SetExpr,
    exponents: &[f64],
    ladder: &[u64],
    grid_factor: u64,
) -> Result<Vec<Vec<MomentEstimate>>> {
    check_ladder(ladder)?;
    for &p in exponents {
        check_exponent(p)?;
    }
    if grid_factor < MIN_GRID_FACTOR {
        return Err(Error::InvalidParam(format!(
            "grid factor must be at least {MIN_GRID_FACTOR}"
        )));
    }
    let top = if expr.is_prefix_consistent() {
        Some(materialize(expr, *ladder.last().unwrap())?)
    } else {
        None
    };
    let per_n: Vec<Vec<MomentEstimate>> = ladder
        .par_iter()
        .map(|&n| {
            let slice = match &top {
                Some(s) => s.prefix(n)?,
                None => materialize(expr, n)?,
            };
            let grid = MomentGrid::new(&slice, default_grid(n, grid_factor))?;
            exponents.iter().map(|&p| grid.moment(p)).collect()
        })
        .collect::<Result<_>>()?;
    Ok((0..exponents.len())
        .map(|i| per_n.iter().map(|row| row[i]).collect())
        .collect())
}

/// Slope of `log I_p` against `log N` over a ladder of at least four scales.
pub fn subconvexity_fit(expr: &SetExpr, p: f64, ladder: &[u64], grid_factor: u64) -> Result<SlopeFit> {
    if ladder.len() < 4 {
        return Err(Error::InvalidParam(format!(
            "a slope fit needs at least 4 ladder points, got {}",
            ladder.len()
        )));
    }
    let mut rows = moment_ladder(expr, &[p], ladder, grid_factor)?;
    SlopeFit::from_points(rows.remove(0))
}

/// `I_1(N; 𝒜)` compared with `log A(N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LittlewoodCheck {
    pub i1: MomentEstimate,
    pub log_count: f64,
    pub ratio: f64,
    pub floor: f64,
}

impl LittlewoodCheck {
    pub fn passes(&self) -> bool {
        self.ratio >= self.floor
    }
}

pub fn littlewood_floor_check(slice: &IndicatorSlice, floor: f64) -> Result<LittlewoodCheck> {
    if slice.count() < 2 {
        return Err(Error::DomainError(format!(
            "log A(N) needs A(N) ≥ 2, got {}",
            slice.count()
        )));
    }
    let i1 = moment_lp(slice, 1.0, default_grid(slice.n_max(), DEFAULT_GRID_FACTOR))?;
    let log_count = (slice.count() as f64).ln();
    Ok(LittlewoodCheck {
        i1,
        log_count,
        ratio: i1.value / log_count,
        floor,
    })
}
