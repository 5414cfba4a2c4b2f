use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::{PadicApprox, Prime};
use crate::error::{Error, Result};

/// An exact rational parameter such as `a`, `λ` or `c`.
///
/// Only rationals whose denominator is prime to `p` embed into `Z_p`; that is
/// checked at the point of embedding, not here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalParam(Ratio<i64>);

impl RationalParam {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse(format!("{numer}/0")));
        }
        Ok(RationalParam(Ratio::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        RationalParam(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True for `0, -1, -2, ...`.
    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_integer() && !self.0.is_positive()
    }

    /// `v_p` of the rational; `None` for zero.
    pub fn valuation(&self, p: Prime) -> Option<i64> {
        let vn = p.valuation_of(self.numer() as i128)? as i64;
        let vd = p.valuation_of(self.denom() as i128).unwrap() as i64;
        Some(vn - vd)
    }

    /// Errors unless the rational lies in `Z_(p)`.
    pub fn check_embeddable(&self, p: Prime) -> Result<()> {
        if self.denom() % p.get() as i64 == 0 {
            return Err(Error::DenominatorDivisibleByP {
                value: self.to_string(),
                p: p.get(),
            });
        }
        Ok(())
    }

    /// Residue of the rational modulo `p^prec`.
    pub fn embed(&self, p: Prime, prec: u32) -> Result<PadicApprox> {
        embed_rational(self, p, prec)
    }

    /// The unique `l` in `[0, m)` with `self + l ≡ 0 (mod m)`; `m` must be prime to the denominator.
    pub fn neg_residue(&self, m: u64) -> u64 {
        let m = m as i128;
        let inv = mod_inverse(self.denom() as i128, m).expect("denominator not invertible");
        let r = (self.numer() as i128).mod_floor(&m) * inv % m;
        ((m - r) % m) as u64
    }

    pub fn as_ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn abs(&self) -> Self {
        RationalParam(self.0.abs())
    }
}

/// `numer / denom mod p^prec`.
pub fn embed_rational(r: &RationalParam, p: Prime, prec: u32) -> Result<PadicApprox> {
    r.check_embeddable(p)?;
    let m = p.pow(prec)? as i128;
    let inv = mod_inverse(r.denom() as i128, m).expect("unit denominator");
    let residue = (r.numer() as i128).mod_floor(&m) * inv % m;
    PadicApprox::new(p, prec, residue as u64)
}

/// Inverse of `x` modulo `m`, if it exists.
pub(crate) fn mod_inverse(x: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let e = x.mod_floor(&m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.mod_floor(&m))
}

impl fmt::Display for RationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for RationalParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: i64 = n.parse().map_err(|_| Error::Parse(s.to_string()))?;
        let d: i64 = d.parse().map_err(|_| Error::Parse(s.to_string()))?;
        RationalParam::new(n, d).map_err(|_| Error::Parse(s.to_string()))
    }
}

impl Serialize for RationalParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for RationalParam {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalParam {
            type Output = RationalParam;
            fn $method(self, rhs: RationalParam) -> RationalParam {
                RationalParam(self.0.$method(rhs.0))
            }
        }
        impl $tr<i64> for RationalParam {
            type Output = RationalParam;
            fn $method(self, rhs: i64) -> RationalParam {
                RationalParam(self.0.$method(Ratio::from_integer(rhs)))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Div<i64> for RationalParam {
    type Output = RationalParam;
    fn div(self, rhs: i64) -> RationalParam {
        RationalParam(self.0 / rhs)
    }
}

impl Neg for RationalParam {
    type Output = RationalParam;
    fn neg(self) -> RationalParam {
        RationalParam(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let r: RationalParam = "2/4".parse().unwrap();
        assert_eq!(r.to_string(), "1/2");
        let r: RationalParam = " -3 ".parse().unwrap();
        assert_eq!(r, RationalParam::integer(-3));
        assert!("1/0".parse::<RationalParam>().is_err());
        assert!("x".parse::<RationalParam>().is_err());
        assert_eq!("6/-4".parse::<RationalParam>().unwrap().to_string(), "-3/2");
    }

    #[test]
    fn embedding_examples() {
        let zero = embed_rational(&RationalParam::zero(), p(3), 2).unwrap();
        assert_eq!((zero.residue(), zero.prec()), (0, 2));
        let half = embed_rational(&RationalParam::new(1, 2).unwrap(), p(3), 2).unwrap();
        assert_eq!(half.residue(), 5);
        let x = embed_rational(&RationalParam::new(-1, 3).unwrap(), p(5), 2).unwrap();
        assert_eq!(x.residue(), 8);
        assert_eq!(
            embed_rational(&RationalParam::new(1, 3).unwrap(), p(3), 2),
            Err(Error::DenominatorDivisibleByP { value: "1/3".into(), p: 3 })
        );
    }

    #[test]
    fn neg_residue_and_valuation() {
        let a = RationalParam::new(2, 3).unwrap();
        assert_eq!(a.neg_residue(5), 1);
        assert_eq!(RationalParam::one().neg_residue(4), 3);
        assert_eq!(RationalParam::new(9, 2).unwrap().valuation(p(3)), Some(2));
        assert_eq!(RationalParam::new(1, 9).unwrap().valuation(p(3)), Some(-2));
        assert_eq!(RationalParam::zero().valuation(p(3)), None);
    }
}
