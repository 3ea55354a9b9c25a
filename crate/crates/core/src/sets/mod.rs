//! Integer sets and their materialization over `[1, N]`.
//!
//! A [`SetExpr`] describes a set algebraically: the natural numbers, r-free
//! numbers, Beatty sets, explicit lists, and combinations of these under
//! complement, intersection, union, difference, affine images, perturbation
//! and splicing. [`materialize`] turns an expression into an exact
//! [`IndicatorSlice`].

mod grammar;
mod slice;

use std::fmt;

use bitvec::prelude::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

pub use self::slice::IndicatorSlice;
use crate::error::{Error, Result};
use crate::real::{AffineFloor, RealSpec};

/// Upper limit on `N` for a single materialization (one bit per integer).
pub const MAX_MATERIALIZE: u64 = 1 << 34;

/// A fraction `num/den` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidParam(format!(
                "splice fraction {num}/{den} must lie in [0, 1]"
            )));
        }
        Ok(Fraction { num, den })
    }

    fn cmp_key(&self, other: &Fraction) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One piece of a splice: the elements of `set` whose relative position
/// `n/N` lies in `(lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpliceArm {
    pub set: SetExpr,
    pub lo: Fraction,
    pub hi: Fraction,
}

/// Algebraic description of a subset of ℕ.
#[derive(Debug, Clone, PartialEq)]
pub enum SetExpr {
    Naturals,
    /// Integers divisible by no `r`-th power of a prime.
    RFree(u32),
    /// `{⌊αm + β⌋ : m ∈ ℕ} ∩ ℕ`.
    Beatty { alpha: RealSpec, beta: RealSpec },
    Complement(Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
    /// `(q·𝒜 + a) ∩ ℕ`.
    Affine { q: u64, a: i64, inner: Box<SetExpr> },
    /// `(base \ remove) ∪ add`.
    Perturb {
        base: Box<SetExpr>,
        remove: Box<SetExpr>,
        add: Box<SetExpr>,
    },
    /// Pieces whose intervals partition `(0, 1]`, evaluated at the scale of
    /// the materialization.
    Splice(Vec<SpliceArm>),
    Explicit(Vec<u64>),
}

impl SetExpr {
    pub fn rfree(r: u32) -> Self {
        SetExpr::RFree(r)
    }

    pub fn beatty(alpha: RealSpec, beta: RealSpec) -> Self {
        SetExpr::Beatty { alpha, beta }
    }

    /// Sorted, deduplicated explicit list; zero is dropped.
    pub fn explicit(elements: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = elements.into_iter().filter(|&n| n > 0).collect();
        v.sort_unstable();
        v.dedup();
        SetExpr::Explicit(v)
    }

    pub fn complement(self) -> Self {
        SetExpr::Complement(Box::new(self))
    }

    pub fn intersect(self, other: SetExpr) -> Self {
        SetExpr::Intersect(Box::new(self), Box::new(other))
    }

    pub fn union(self, other: SetExpr) -> Self {
        SetExpr::Union(Box::new(self), Box::new(other))
    }

    pub fn difference(self, other: SetExpr) -> Self {
        SetExpr::Difference(Box::new(self), Box::new(other))
    }

    pub fn affine(self, q: u64, a: i64) -> Self {
        SetExpr::Affine {
            q,
            a,
            inner: Box::new(self),
        }
    }

    pub fn perturb(self, remove: SetExpr, add: SetExpr) -> Self {
        SetExpr::Perturb {
            base: Box::new(self),
            remove: Box::new(remove),
            add: Box::new(add),
        }
    }

    pub fn splice(arms: Vec<SpliceArm>) -> Result<Self> {
        validate_splice(&arms)?;
        Ok(SetExpr::Splice(arms))
    }

    /// Whether `materialize(e, N)` restricted to `[1, M]` always equals
    /// `materialize(e, M)`. Only splices (whose pieces scale with `N`) break
    /// this.
    pub fn is_prefix_consistent(&self) -> bool {
        match self {
            SetExpr::Naturals | SetExpr::RFree(_) | SetExpr::Beatty { .. } | SetExpr::Explicit(_) => true,
            SetExpr::Splice(_) => false,
            SetExpr::Complement(e) | SetExpr::Affine { inner: e, .. } => e.is_prefix_consistent(),
            SetExpr::Intersect(a, b) | SetExpr::Union(a, b) | SetExpr::Difference(a, b) => {
                a.is_prefix_consistent() && b.is_prefix_consistent()
            }
            SetExpr::Perturb { base, remove, add } => {
                base.is_prefix_consistent() && remove.is_prefix_consistent() && add.is_prefix_consistent()
            }
        }
    }
}

fn validate_splice(arms: &[SpliceArm]) -> Result<()> {
    if arms.is_empty() {
        return Err(Error::InvalidParam("a splice needs at least one piece".into()));
    }
    let mut order: Vec<&SpliceArm> = arms.iter().collect();
    order.sort_by(|x, y| x.lo.cmp_key(&y.lo));
    let zero = Fraction { num: 0, den: 1 };
    let one = Fraction { num: 1, den: 1 };
    let mut cursor = zero;
    for arm in order {
        if arm.lo.cmp_key(&cursor).is_ne() {
            return Err(Error::InvalidParam(format!(
                "splice intervals must partition (0, 1]: gap or overlap at {}",
                arm.lo
            )));
        }
        if arm.hi.cmp_key(&arm.lo).is_le() {
            return Err(Error::InvalidParam(format!(
                "empty splice interval ({}, {}]",
                arm.lo, arm.hi
            )));
        }
        cursor = arm.hi;
    }
    if cursor.cmp_key(&one).is_ne() {
        return Err(Error::InvalidParam("splice intervals must end at 1".into()));
    }
    Ok(())
}

/// Exact membership bitmap of `expr` over `[1, n]`.
pub fn materialize(expr: &SetExpr, n: u64) -> Result<IndicatorSlice> {
    if n == 0 {
        return Err(Error::InvalidParam("N must be at least 1".into()));
    }
    if n > MAX_MATERIALIZE {
        return Err(Error::ResourceLimit(format!(
            "N = {n} exceeds the materialization limit {MAX_MATERIALIZE}"
        )));
    }
    Ok(IndicatorSlice::from_bits(eval(expr, n)?))
}

type Bits = BitVec<u64, Lsb0>;

fn eval(expr: &SetExpr, n: u64) -> Result<Bits> {
    let len = n as usize;
    Ok(match expr {
        SetExpr::Naturals => bitvec![u64, Lsb0; 1; len],
        SetExpr::RFree(r) => rfree_bits(*r, n)?,
        SetExpr::Beatty { alpha, beta } => beatty_bits(alpha, beta, n)?,
        SetExpr::Complement(e) => !eval(e, n)?,
        SetExpr::Intersect(a, b) => eval(a, n)? & eval(b, n)?,
        SetExpr::Union(a, b) => eval(a, n)? | eval(b, n)?,
        SetExpr::Difference(a, b) => eval(a, n)? & !eval(b, n)?,
        SetExpr::Affine { q, a, inner } => affine_bits(*q, *a, inner, n)?,
        SetExpr::Perturb { base, remove, add } => (eval(base, n)? & !eval(remove, n)?) | eval(add, n)?,
        SetExpr::Splice(arms) => {
            validate_splice(arms)?;
            let mut out = bitvec![u64, Lsb0; 0; len];
            for arm in arms {
                let piece = eval(&arm.set, n)?;
                for i in piece.iter_ones() {
                    let m = (i + 1) as u128;
                    // lo < m/n ≤ hi
                    let above = m * arm.lo.den as u128 > arm.lo.num as u128 * n as u128;
                    let below = m * arm.hi.den as u128 <= arm.hi.num as u128 * n as u128;
                    if above && below {
                        out.set(i, true);
                    }
                }
            }
            out
        }
        SetExpr::Explicit(list) => {
            let mut out = bitvec![u64, Lsb0; 0; len];
            for &m in list {
                if (1..=n).contains(&m) {
                    out.set(m as usize - 1, true);
                }
            }
            out
        }
    })
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn primes_upto(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn rfree_bits(r: u32, n: u64) -> Result<Bits> {
    if r < 2 {
        return Err(Error::InvalidParam(format!("r-free sets need r ≥ 2, got {r}")));
    }
    let mut bits = bitvec![u64, Lsb0; 1; n as usize];
    let root = integer_root(n, r);
    for p in primes_upto(root) {
        let step = p.pow(r);
        let mut m = step;
        while m <= n {
            bits.set(m as usize - 1, false);
            m += step;
        }
    }
    Ok(bits)
}

/// `⌊n^{1/r}⌋`.
fn integer_root(n: u64, r: u32) -> u64 {
    let mut x = (n as f64).powf(1.0 / r as f64).round() as u64;
    while x > 0 && x.checked_pow(r).is_none_or(|v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_pow(r).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

fn beatty_bits(alpha: &RealSpec, beta: &RealSpec, n: u64) -> Result<Bits> {
    let a = alpha.certify()?;
    let b = beta.certify()?;
    if a.cmp_rational(&BigRational::from_integer(BigInt::from(0)))?.is_le() {
        return Err(Error::InvalidParam("Beatty sets need α > 0".into()));
    }
    let mut bits = bitvec![u64, Lsb0; 0; n as usize];
    let at_most_one = matches!(
        a.cmp_rational(&BigRational::one()),
        Ok(std::cmp::Ordering::Less | std::cmp::Ordering::Equal)
    );
    let floors = AffineFloor::new(a, b);
    if at_most_one {
        // Consecutive values differ by 0 or 1, so every integer from ⌊α + β⌋ on occurs.
        let start = floors.floor_at(1)?.max(1);
        if start as u64 <= n {
            bits[start as usize - 1..].fill(true);
        }
        return Ok(bits);
    }
    let mut m: i64 = 1;
    loop {
        let v = floors.floor_at(m)?;
        if v > n as i64 {
            break;
        }
        if v >= 1 {
            bits.set(v as usize - 1, true);
        }
        m += 1;
    }
    Ok(bits)
}

fn affine_bits(q: u64, a: i64, inner: &SetExpr, n: u64) -> Result<Bits> {
    if q == 0 {
        return Err(Error::InvalidParam("affine images need q ≥ 1".into()));
    }
    let mut out = bitvec![u64, Lsb0; 0; n as usize];
    // n' = q·m + a ≤ N  ⇔  m ≤ (N − a)/q
    let top = (n as i128 - a as i128).div_euclid(q as i128);
    if top < 1 {
        return Ok(out);
    }
    let top = u64::try_from(top)
        .ok()
        .filter(|&t| t <= MAX_MATERIALIZE)
        .ok_or_else(|| Error::ResourceLimit("affine preimage too large".into()))?;
    let inner_bits = eval(inner, top)?;
    for i in inner_bits.iter_ones() {
        let v = q as i128 * (i as i128 + 1) + a as i128;
        if v >= 1 && v <= n as i128 {
            out.set(v as usize - 1, true);
        }
    }
    Ok(out)
}

/// One row of a count ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountPoint {
    pub n: u64,
    pub count: u64,
    pub density: f64,
}

/// `(N, A(N), A(N)/N)` for each `N` of an ascending ladder.
pub fn count_ladder(expr: &SetExpr, ladder: &[u64]) -> Result<Vec<CountPoint>> {
    if ladder.is_empty() {
        return Err(Error::InvalidParam("empty ladder".into()));
    }
    if ladder.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParam("ladder must be sorted ascending".into()));
    }
    let point = |n: u64, count: u64| CountPoint {
        n,
        count,
        density: count as f64 / n as f64,
    };
    if expr.is_prefix_consistent() {
        let top = *ladder.last().expect("nonempty");
        let slice = materialize(expr, top)?;
        Ok(ladder.iter().map(|&n| point(n, slice.count_upto(n))).collect())
    } else {
        ladder
            .par_iter()
            .map(|&n| materialize(expr, n).map(|s| point(n, s.count())))
            .collect()
    }
}

/// Outcome of the Young-exponent rule for intersections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YoungExponent {
    Exponent(f64),
    /// `1/q + 1/r` falls outside the open interval `(3/2, 2)`.
    NotApplicable,
}

/// Tolerance for deciding `1/q + 1/r` against the endpoint `3/2`.
const YOUNG_BOUNDARY_TOL: f64 = 1e-12;

/// Exponent `p` with `1/p = 1/q + 1/r − 1` for the intersection of a strongly
/// subconvex `L^q`-set and a strongly subconvex `L^r`-set.
pub fn young_exponent(q: f64, r: f64) -> Result<YoungExponent> {
    let open = |x: f64| x > 1.0 && x < 2.0;
    if !open(q) || !open(r) {
        return Err(Error::DomainError(format!(
            "young_exponent needs q, r in (1, 2), got ({q}, {r})"
        )));
    }
    let s = 1.0 / q + 1.0 / r;
    if s <= 1.5 + YOUNG_BOUNDARY_TOL || s >= 2.0 {
        return Ok(YoungExponent::NotApplicable);
    }
    Ok(YoungExponent::Exponent(1.0 / (s - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_up_to_ten() {
        let s = materialize(&SetExpr::RFree(2), 10).unwrap();
        assert_eq!(s.elements(), vec![1, 2, 3, 5, 6, 7, 10]);
        assert_eq!(s.count(), 7);
    }

    #[test]
    fn beatty_root_two() {
        let s = materialize(&SetExpr::beatty(RealSpec::sqrt(2), RealSpec::integer(0)), 10).unwrap();
        assert_eq!(s.elements(), vec![1, 2, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn odd_shift_of_naturals() {
        let s = materialize(&SetExpr::Naturals.affine(2, 1), 9).unwrap();
        assert_eq!(s.elements(), vec![3, 5, 7, 9]);
        assert_eq!(s.count(), 4);
    }

    #[test]
    fn negative_shift() {
        let s = materialize(&SetExpr::explicit([2, 3, 10]).affine(3, -5), 30).unwrap();
        assert_eq!(s.elements(), vec![1, 4, 25]);
    }

    #[test]
    fn beatty_small_alpha_fills_tail() {
        let e = SetExpr::beatty(RealSpec::rational(1, 3), RealSpec::rational(5, 2));
        let s = materialize(&e, 8).unwrap();
        assert_eq!(s.elements(), vec![2, 3, 4, 5, 6, 7, 8]);
        // direct generation agrees
        let direct: Vec<u64> = (1..100)
            .map(|m| ((m as f64) / 3.0 + 2.5).floor() as u64)
            .filter(|&v| (1..=8).contains(&v))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(s.elements(), direct);
    }

    #[test]
    fn beatty_rejects_nonpositive_alpha() {
        let e = SetExpr::beatty(RealSpec::integer(0), RealSpec::integer(0));
        assert!(matches!(materialize(&e, 10), Err(Error::InvalidParam(_))));
        let e = SetExpr::beatty(RealSpec::surd(1, -1, 2, 1), RealSpec::integer(0));
        assert!(matches!(materialize(&e, 10), Err(Error::InvalidParam(_))));
    }

    #[test]
    fn beatty_decimal_uncertifiable() {
        // α = 1.5 ± 0.01: ⌊1.5·m⌋ sits on an integer for even m.
        let e = SetExpr::beatty(RealSpec::decimal("1.5", "0.01"), RealSpec::integer(0));
        assert!(matches!(materialize(&e, 10), Err(Error::UncertifiableReal(_))));
        let ok = SetExpr::beatty(RealSpec::decimal("1.5", "0.01"), RealSpec::rational(1, 4));
        assert_eq!(materialize(&ok, 10).unwrap().elements(), vec![1, 3, 4, 6, 7, 9, 10]);
    }

    #[test]
    fn rfree_rejects_small_r() {
        assert!(matches!(materialize(&SetExpr::RFree(1), 10), Err(Error::InvalidParam(_))));
    }

    #[test]
    fn ladder_counts() {
        let rows = count_ladder(&SetExpr::Naturals, &[10, 100]).unwrap();
        assert_eq!(rows[0], CountPoint { n: 10, count: 10, density: 1.0 });
        assert_eq!(rows[1], CountPoint { n: 100, count: 100, density: 1.0 });
        let rows = count_ladder(&SetExpr::explicit([5]), &[4]).unwrap();
        assert_eq!(rows[0], CountPoint { n: 4, count: 0, density: 0.0 });
        assert!(count_ladder(&SetExpr::Naturals, &[100, 10]).is_err());
    }

    #[test]
    fn squarefree_density() {
        let rows = count_ladder(&SetExpr::RFree(2), &[1_000_000]).unwrap();
        let target = 6.0 / std::f64::consts::PI.powi(2);
        assert!((rows[0].density - target).abs() < 0.002, "{}", rows[0].density);
    }

    #[test]
    fn splice_pieces() {
        let third = |k| Fraction::new(k, 3).unwrap();
        let e = SetExpr::splice(vec![
            SpliceArm { set: SetExpr::explicit([1, 2, 3, 4, 5, 6, 7, 8, 9]), lo: third(0), hi: third(1) },
            SpliceArm { set: SetExpr::explicit([2, 4, 6, 8]), lo: third(1), hi: third(2) },
            SpliceArm { set: SetExpr::explicit([9]), lo: third(2), hi: third(3) },
        ])
        .unwrap();
        assert_eq!(materialize(&e, 9).unwrap().elements(), vec![1, 2, 3, 4, 6, 9]);
        // Not a partition.
        let bad = SetExpr::splice(vec![
            SpliceArm { set: SetExpr::Naturals, lo: third(0), hi: third(1) },
            SpliceArm { set: SetExpr::Naturals, lo: third(2), hi: third(3) },
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn young_exponents() {
        assert_eq!(young_exponent(4.0 / 3.0, 4.0 / 3.0).unwrap(), YoungExponent::NotApplicable);
        match young_exponent(1.2, 1.2).unwrap() {
            YoungExponent::Exponent(p) => assert!((p - 1.5).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(young_exponent(1.9, 1.9).unwrap(), YoungExponent::NotApplicable);
        assert!(matches!(young_exponent(2.0, 1.5), Err(Error::DomainError(_))));
        assert!(matches!(young_exponent(1.5, 1.0), Err(Error::DomainError(_))));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(1_000_000, 2), 1000);
        assert_eq!(integer_root(999_999, 2), 999);
        assert_eq!(integer_root(26, 3), 2);
        assert_eq!(integer_root(27, 3), 3);
    }
}
