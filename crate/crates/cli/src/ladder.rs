//! Scale ladders: `start:end:xFACTOR` (geometric), `start:end:+STEP`
//! (arithmetic), or a comma-separated list. Numbers may use exponent
//! notation as long as they denote integers, so `1e6` is accepted.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    text: String,
    points: Vec<u64>,
}

impl Ladder {
    pub fn points(&self) -> &[u64] {
        &self.points
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn integer(t: &str) -> Result<u64, String> {
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let x: f64 = t.parse().map_err(|_| format!("not a number: {t:?}"))?;
    if !(x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x < 9.0e15) {
        return Err(format!("not a nonnegative integer: {t:?}"));
    }
    Ok(x as u64)
}

impl FromStr for Ladder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let points = match s.split(':').collect::<Vec<_>>()[..] {
            [start, end, step] => {
                let (start, end) = (integer(start)?, integer(end)?);
                if start == 0 || start > end {
                    return Err(format!("ladder needs 0 < start ≤ end in {s:?}"));
                }
                if let Some(f) = step.strip_prefix('x') {
                    let f: f64 = f.parse().map_err(|_| format!("bad factor in {s:?}"))?;
                    if !(f > 1.0 && f.is_finite()) {
                        return Err(format!("factor must exceed 1 in {s:?}"));
                    }
                    let mut out: Vec<u64> = Vec::new();
                    let mut i = 0;
                    loop {
                        let v = (start as f64 * f.powi(i)).round();
                        if v > end as f64 * (1.0 + 1e-12) {
                            break;
                        }
                        let v = v as u64;
                        if out.last() != Some(&v) {
                            out.push(v);
                        }
                        i += 1;
                    }
                    out
                } else if let Some(d) = step.strip_prefix('+') {
                    let d = integer(d)?;
                    if d == 0 {
                        return Err(format!("step must be positive in {s:?}"));
                    }
                    (start..=end).step_by(d as usize).collect()
                } else {
                    return Err(format!("step must be xFACTOR or +STEP in {s:?}"));
                }
            }
            [_] => {
                let out = s.split(',').map(|t| integer(t.trim())).collect::<Result<Vec<_>, _>>()?;
                if out.contains(&0) || out.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(format!("list must be positive and strictly increasing: {s:?}"));
                }
                out
            }
            _ => return Err(format!("malformed ladder {s:?}")),
        };
        Ok(Ladder {
            text: s.to_string(),
            points,
        })
    }
}

/// Comma-separated list of reals, e.g. `1.25,1.5,1.75`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| format!("not a real number: {t:?}"))
            })
            .collect::<Result<_, _>>()
            .map(RealList)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(s: &str) -> Vec<u64> {
        s.parse::<Ladder>().unwrap().points().to_vec()
    }

    #[test]
    fn geometric() {
        assert_eq!(pts("10:1e6:x10"), vec![10, 100, 1000, 10_000, 100_000, 1_000_000]);
        assert_eq!(pts("1024:65536:x2").len(), 7);
        assert_eq!(pts("1e3:1e5:x10"), vec![1000, 10_000, 100_000]);
    }

    #[test]
    fn arithmetic_and_lists() {
        assert_eq!(pts("5:20:+5"), vec![5, 10, 15, 20]);
        assert_eq!(pts("2,8,64"), vec![2, 8, 64]);
        assert_eq!(pts("7"), vec![7]);
    }

    #[test]
    fn rejects() {
        for bad in ["0:10:x2", "10:1:x2", "1:10:x1", "1:10:*2", "1:10:+0", "3,2", "1.5", "a:b:c", "1:2"] {
            assert!(bad.parse::<Ladder>().is_err(), "{bad}");
        }
    }

    #[test]
    fn reals() {
        assert_eq!("1.25, 1.5".parse::<RealList>().unwrap().0, vec![1.25, 1.5]);
        assert!("1.5,x".parse::<RealList>().is_err());
    }
}
