use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::report::ReportElement;

/// `num / 2^exp` in lowest terms: `num` is odd whenever `exp > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u64) -> Self {
        let mut d = Dyadic { num: num.into(), exp };
        d.reduce();
        d
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n, 0)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(self.exp);
        if tz > 0 {
            self.num >>= tz;
            self.exp -= tz;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.num.is_positive() {
            1
        } else if self.num.is_negative() {
            -1
        } else {
            0
        }
    }

    /// `2^k · self` for any integer `k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let k = k as u64;
            if self.exp >= k {
                Dyadic::new(self.num.clone(), self.exp - k)
            } else {
                Dyadic::new(&self.num << (k - self.exp), 0)
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + k.unsigned_abs())
        }
    }

    fn scaled_to(&self, exp: u64) -> BigInt {
        &self.num << (exp - self.exp)
    }

    /// Parses `n`, `n/d` with `d` a power of two, or `n/2^e`.
    pub fn parse(text: &str) -> Result<Dyadic, String> {
        let t = text.trim();
        let bad = || format!("`{t}` is not a dyadic rational");
        let Some((n, d)) = t.split_once('/') else {
            return t.parse::<BigInt>().map(Dyadic::from_int).map_err(|_| bad());
        };
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d = d.trim();
        let exp = if let Some(e) = d.strip_prefix("2^") {
            e.parse::<u64>().map_err(|_| bad())?
        } else {
            let den: BigInt = d.parse().map_err(|_| bad())?;
            if !den.is_positive() || (&den & (&den - BigInt::one())) != BigInt::zero() {
                return Err(bad());
            }
            den.bits() - 1
        };
        Ok(Dyadic::new(num, exp))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_to(e) + rhs.scaled_to(e), e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

impl ReportElement for Dyadic {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

/// Dyadics `n / 2^e` with `|n| <= max_num`, `e <= max_exp`, each value once,
/// ordered by reduced exponent, then `|n|`, then `n`.
pub fn dyadic_points(max_num: u64, max_exp: u64) -> Vec<Dyadic> {
    let mut pts: Vec<Dyadic> = Vec::new();
    for e in 0..=max_exp {
        let n = max_num as i64;
        for num in -n..=n {
            pts.push(Dyadic::new(num, e));
        }
    }
    pts.sort_by(|a, b| {
        (a.exp, a.num.abs(), &a.num).cmp(&(b.exp, b.num.abs(), &b.num))
    });
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form_is_unique() {
        assert_eq!(Dyadic::new(4, 3), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 5), Dyadic::zero());
        assert_eq!(Dyadic::new(6, 1).exponent(), 0);
    }

    #[test]
    fn arithmetic() {
        let half = Dyadic::new(1, 1);
        let quarter = Dyadic::new(1, 2);
        assert_eq!(&half + &quarter, Dyadic::new(3, 2));
        assert_eq!(&half - &half, Dyadic::zero());
        assert_eq!(quarter.mul_pow2(3), Dyadic::from_int(2));
        assert_eq!(Dyadic::from_int(3).mul_pow2(-2), Dyadic::new(3, 2));
        assert!(quarter < half && -&half < quarter);
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "-3", "3/2", "-1/4", "5/8"] {
            assert_eq!(Dyadic::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Dyadic::parse("2/4").unwrap(), Dyadic::new(1, 1));
        assert_eq!(Dyadic::parse("1/2^3").unwrap(), Dyadic::new(1, 3));
        assert!(Dyadic::parse("1/3").is_err());
    }

    #[test]
    fn point_order() {
        let pts = dyadic_points(2, 1);
        let shown: Vec<String> = pts.iter().map(|d| d.to_string()).collect();
        assert_eq!(shown, ["0", "-1", "1", "-2", "2", "-1/2", "1/2"]);
    }
}
