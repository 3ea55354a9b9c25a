//! Line-oriented prefix notation for sets, reals and phase polynomials.
//!
//! ```text
//! set   := naturals
//!        | rfree R
//!        | beatty REAL REAL
//!        | complement SET
//!        | intersect SET SET | union SET SET | difference SET SET
//!        | affine Q A SET
//!        | perturb SET REMOVE ADD
//!        | splice K (LO HI SET){K}
//!        | explicit K n_1 … n_K
//! real  := rational P Q | surd U V D W | decimal DIGITS ERROR | LITERAL
//! coeff := real | float VALUE ERROR
//! poly  := coeff coeff+            (α_0 first)
//! ```
//!
//! A bare decimal `LITERAL` such as `0.3` is read exactly as a rational.
//! Splice bounds are fractions `a/b` or the integers `0` and `1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Fraction, SetExpr, SpliceArm};
use crate::error::{Error, Result};
use crate::phase::{Coeff, PolyCoeffs};
use crate::real::{parse_decimal, RealSpec};

struct Tokens<'a> {
    inner: std::iter::Peekable<std::str::SplitWhitespace<'a>>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Tokens {
            inner: text.split_whitespace().peekable(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.inner
            .next()
            .ok_or_else(|| Error::Parse(format!("unexpected end of input, expected {what}")))
    }

    fn peek(&mut self) -> Option<&'a str> {
        self.inner.peek().copied()
    }

    fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some(t) => Err(Error::Parse(format!("trailing token {t:?}"))),
        }
    }

    fn int<T: FromStr>(&mut self, what: &str) -> Result<T> {
        let t = self.next(what)?;
        t.parse()
            .map_err(|_| Error::Parse(format!("expected {what}, found {t:?}")))
    }

    fn float(&mut self, what: &str) -> Result<f64> {
        let t = self.next(what)?;
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::Parse(format!("expected {what}, found {t:?}")))
    }
}

fn parse_set(tok: &mut Tokens<'_>, depth: usize) -> Result<SetExpr> {
    if depth > 256 {
        return Err(Error::Parse("set expression nested too deeply".into()));
    }
    let head = tok.next("a set keyword")?;
    let sub = |tok: &mut Tokens<'_>| parse_set(tok, depth + 1);
    Ok(match head {
        "naturals" => SetExpr::Naturals,
        "rfree" => SetExpr::RFree(tok.int("r")?),
        "beatty" => {
            let alpha = parse_real(tok)?;
            let beta = parse_real(tok)?;
            SetExpr::Beatty { alpha, beta }
        }
        "complement" => sub(tok)?.complement(),
        "intersect" => {
            let a = sub(tok)?;
            a.intersect(sub(tok)?)
        }
        "union" => {
            let a = sub(tok)?;
            a.union(sub(tok)?)
        }
        "difference" => {
            let a = sub(tok)?;
            a.difference(sub(tok)?)
        }
        "affine" => {
            let q = tok.int("q")?;
            let a = tok.int("a")?;
            sub(tok)?.affine(q, a)
        }
        "perturb" => {
            let base = sub(tok)?;
            let remove = sub(tok)?;
            let add = sub(tok)?;
            base.perturb(remove, add)
        }
        "splice" => {
            let k: usize = tok.int("piece count")?;
            let mut arms = Vec::with_capacity(k);
            for _ in 0..k {
                let lo = parse_fraction(tok.next("fraction")?)?;
                let hi = parse_fraction(tok.next("fraction")?)?;
                arms.push(SpliceArm { set: sub(tok)?, lo, hi });
            }
            SetExpr::splice(arms).map_err(|e| Error::Parse(e.to_string()))?
        }
        "explicit" => {
            let k: usize = tok.int("element count")?;
            let mut v = Vec::with_capacity(k.min(1 << 20));
            for _ in 0..k {
                v.push(tok.int::<u64>("element")?);
            }
            SetExpr::explicit(v)
        }
        other => return Err(Error::Parse(format!("unknown set keyword {other:?}"))),
    })
}

fn parse_fraction(t: &str) -> Result<Fraction> {
    let bad = || Error::Parse(format!("invalid fraction {t:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None => (t.parse().map_err(|_| bad())?, 1),
    };
    Fraction::new(num, den).map_err(|_| bad())
}

fn parse_real(tok: &mut Tokens<'_>) -> Result<RealSpec> {
    let head = tok.next("a real")?;
    Ok(match head {
        "rational" => RealSpec::Rational {
            p: tok.int("numerator")?,
            q: tok.int("denominator")?,
        },
        "surd" => RealSpec::QuadraticSurd {
            u: tok.int("u")?,
            v: tok.int("v")?,
            d: tok.int("d")?,
            w: tok.int("w")?,
        },
        "decimal" => {
            let digits = tok.next("digits")?;
            let error = tok.next("error bound")?;
            parse_decimal(digits)?;
            parse_decimal(error)?;
            RealSpec::decimal(digits, error)
        }
        literal => literal_rational(literal)?,
    })
}

fn literal_rational(t: &str) -> Result<RealSpec> {
    let r = parse_decimal(t)?;
    let narrow = |x: &BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::Parse(format!("literal {t:?} does not fit in 64 bits")))
    };
    Ok(RealSpec::Rational {
        p: narrow(r.numer())?,
        q: narrow(r.denom())?,
    })
}

fn parse_coeff(tok: &mut Tokens<'_>) -> Result<Coeff> {
    if tok.peek() == Some("float") {
        tok.next("float")?;
        let value = tok.float("value")?;
        let error = tok.float("error bound")?;
        if error < 0.0 {
            return Err(Error::Parse("float error bound must be nonnegative".into()));
        }
        return Ok(Coeff::Float { value, error });
    }
    Ok(Coeff::Real(parse_real(tok)?))
}

impl FromStr for SetExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tok = Tokens::new(s);
        let e = parse_set(&mut tok, 0)?;
        tok.finish()?;
        Ok(e)
    }
}

impl FromStr for RealSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tok = Tokens::new(s);
        let r = parse_real(&mut tok)?;
        tok.finish()?;
        Ok(r)
    }
}

impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tok = Tokens::new(s);
        let c = parse_coeff(&mut tok)?;
        tok.finish()?;
        Ok(c)
    }
}

impl FromStr for PolyCoeffs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tok = Tokens::new(s);
        let mut coeffs = Vec::new();
        while tok.peek().is_some() {
            coeffs.push(parse_coeff(&mut tok)?);
        }
        PolyCoeffs::new(coeffs).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Naturals => f.write_str("naturals"),
            SetExpr::RFree(r) => write!(f, "rfree {r}"),
            SetExpr::Beatty { alpha, beta } => write!(f, "beatty {alpha} {beta}"),
            SetExpr::Complement(e) => write!(f, "complement {e}"),
            SetExpr::Intersect(a, b) => write!(f, "intersect {a} {b}"),
            SetExpr::Union(a, b) => write!(f, "union {a} {b}"),
            SetExpr::Difference(a, b) => write!(f, "difference {a} {b}"),
            SetExpr::Affine { q, a, inner } => write!(f, "affine {q} {a} {inner}"),
            SetExpr::Perturb { base, remove, add } => write!(f, "perturb {base} {remove} {add}"),
            SetExpr::Splice(arms) => {
                write!(f, "splice {}", arms.len())?;
                for arm in arms {
                    write!(f, " {} {} {}", arm.lo, arm.hi, arm.set)?;
                }
                Ok(())
            }
            SetExpr::Explicit(v) => {
                write!(f, "explicit {}", v.len())?;
                for n in v {
                    write!(f, " {n}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_documented_examples() {
        assert_eq!("rfree 2".parse::<SetExpr>().unwrap(), SetExpr::RFree(2));
        assert_eq!(
            "beatty surd 0 1 2 1 rational 0 1".parse::<SetExpr>().unwrap(),
            SetExpr::beatty(RealSpec::sqrt(2), RealSpec::rational(0, 1))
        );
        assert_eq!(
            "intersect rfree 2 complement rfree 3".parse::<SetExpr>().unwrap(),
            SetExpr::RFree(2).intersect(SetExpr::RFree(3).complement())
        );
        assert_eq!(
            "beatty 1.5 0.3".parse::<SetExpr>().unwrap(),
            SetExpr::beatty(RealSpec::rational(3, 2), RealSpec::rational(3, 10))
        );
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["bogus", "", "rfree", "rfree x", "naturals naturals", "explicit 2 1", "splice 1 0 1/2 naturals"] {
            assert!(bad.parse::<SetExpr>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn poly_text() {
        let p: PolyCoeffs = "0 0 surd 0 1 2 1".parse().unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.leading(), &Coeff::Real(RealSpec::sqrt(2)));
        assert!("1".parse::<PolyCoeffs>().is_err());
        let q: PolyCoeffs = "float 0.5 0 rational 1 3".parse().unwrap();
        assert_eq!(q.coeffs()[0], Coeff::Float { value: 0.5, error: 0.0 });
        assert_eq!(q.to_string().parse::<PolyCoeffs>().unwrap(), q);
    }

    fn leaf() -> impl Strategy<Value = SetExpr> {
        prop_oneof![
            Just(SetExpr::Naturals),
            (2u32..5).prop_map(SetExpr::RFree),
            (1i64..50, 1i64..50, 2u64..30, 1i64..9, -20i64..20, 1i64..9).prop_filter_map(
                "square radicand",
                |(u, v, d, w, bp, bq)| {
                    (!crate::real::is_perfect_square(d)).then(|| {
                        SetExpr::beatty(RealSpec::surd(u, v, d, w), RealSpec::rational(bp, bq))
                    })
                }
            ),
            prop::collection::vec(1u64..100, 0..6).prop_map(SetExpr::explicit),
        ]
    }

    fn expr() -> impl Strategy<Value = SetExpr> {
        leaf().prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(SetExpr::complement),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.intersect(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.union(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.difference(b)),
                (1u64..5, -5i64..5, inner.clone()).prop_map(|(q, a, e)| e.affine(q, a)),
                (inner.clone(), inner.clone(), inner.clone()).prop_map(|(a, b, c)| a.perturb(b, c)),
                (inner.clone(), inner).prop_map(|(a, b)| SetExpr::Splice(vec![
                    SpliceArm { set: a, lo: Fraction { num: 0, den: 1 }, hi: Fraction { num: 1, den: 3 } },
                    SpliceArm { set: b, lo: Fraction { num: 1, den: 3 }, hi: Fraction { num: 1, den: 1 } },
                ])),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(e in expr()) {
            let text = e.to_string();
            prop_assert_eq!(text.parse::<SetExpr>().unwrap(), e);
        }
    }
}
