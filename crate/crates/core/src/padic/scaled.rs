use std::fmt;
use std::ops::{Div, Mul, Neg};

use super::approx::mulmod;
use super::rational::mod_inverse;
use super::{PadicApprox, Prime, RationalParam};
use crate::error::{Error, Result};

/// A nonzero element of `Q_p` written `p^val · unit`, with the unit known
/// modulo `p^prec`, or an exact zero.
///
/// Products and quotients of exactly known factors stay exact in this form:
/// the valuation is tracked as an integer and never costs unit digits. This is
/// what lets `(a)_k / k!` and similar products be evaluated without guard digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scaled {
    p: Prime,
    prec: u32,
    val: Option<i64>,
    unit: u64,
}

impl Scaled {
    pub(crate) fn from_parts(p: Prime, prec: u32, val: i64, unit: i128) -> Self {
        let m = p.get().pow(prec) as i128;
        Scaled { p, prec, val: Some(val), unit: unit.rem_euclid(m) as u64 }
    }

    pub fn zero(p: Prime, prec: u32) -> Self {
        Scaled { p, prec, val: None, unit: 0 }
    }

    pub fn one(p: Prime, prec: u32) -> Self {
        Self::from_parts(p, prec, 0, 1)
    }

    /// Any rational, including ones with `p` in the denominator.
    pub fn from_rational(r: &RationalParam, p: Prime, prec: u32) -> Result<Self> {
        Self::from_fraction(r.numer() as i128, r.denom() as i128, p, prec)
    }

    pub fn from_int(n: i128, p: Prime, prec: u32) -> Result<Self> {
        Self::from_fraction(n, 1, p, prec)
    }

    pub fn from_fraction(numer: i128, denom: i128, p: Prime, prec: u32) -> Result<Self> {
        assert!(denom != 0);
        let m = p.pow(prec)? as i128;
        if numer == 0 {
            return Ok(Self::zero(p, prec));
        }
        let (vn, un) = p.split(numer);
        let (vd, ud) = p.split(denom);
        let inv = mod_inverse(ud, m).expect("stripped denominator is a unit");
        let unit = un.rem_euclid(m) * inv % m;
        Ok(Scaled { p, prec, val: Some(vn as i64 - vd as i64), unit: unit as u64 })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `None` for an exact zero.
    pub fn val(&self) -> Option<i64> {
        self.val
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.val.is_none()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p, self.prec), |acc, _| acc * *self)
    }

    /// Converts to an absolute approximation modulo `p^abs_prec`, losing
    /// precision only if the unit is not known far enough.
    pub fn to_approx(&self, abs_prec: u32) -> Result<PadicApprox> {
        let v = match self.val {
            None => return Ok(PadicApprox::zero(self.p, abs_prec)),
            Some(v) => v,
        };
        if v < 0 {
            return Err(Error::NotIntegral(v));
        }
        if v >= abs_prec as i64 {
            return PadicApprox::new(self.p, abs_prec, 0);
        }
        let v = v as u32;
        let prec = abs_prec.min(v + self.prec);
        let m = self.p.pow(prec)?;
        let pv = self.p.get().pow(v);
        PadicApprox::new(self.p, prec, mulmod(pv, self.unit % m, m))
    }

    /// As `to_approx`, but failing instead of returning fewer digits than asked.
    pub fn to_approx_exact(&self, abs_prec: u32) -> Result<PadicApprox> {
        let x = self.to_approx(abs_prec)?;
        if x.prec() < abs_prec {
            return Err(Error::PrecisionExhausted { needed: abs_prec as i64, available: x.prec() });
        }
        Ok(x)
    }

    fn joint(&self, other: &Self) -> (u32, u64) {
        assert_eq!(self.p, other.p, "mixing p-adic values for different primes");
        let prec = self.prec.min(other.prec);
        (prec, self.p.get().pow(prec))
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        let (prec, m) = self.joint(&rhs);
        match (self.val, rhs.val) {
            (Some(a), Some(b)) => Scaled {
                p: self.p,
                prec,
                val: Some(a + b),
                unit: mulmod(self.unit % m, rhs.unit % m, m),
            },
            _ => Scaled::zero(self.p, prec),
        }
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        let (prec, m) = self.joint(&rhs);
        let b = rhs.val.expect("division by an exact zero");
        match self.val {
            None => Scaled::zero(self.p, prec),
            Some(a) => {
                let inv = mod_inverse(rhs.unit as i128, m as i128).unwrap() as u64;
                Scaled { p: self.p, prec, val: Some(a - b), unit: mulmod(self.unit % m, inv, m) }
            }
        }
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        let m = self.p.get().pow(self.prec);
        Scaled { unit: (m - self.unit) % m, ..self }
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.val {
            None => write!(f, "0"),
            Some(v) => write!(f, "{}^{} * ({} mod {}^{})", self.p, v, self.unit, self.p, self.prec),
        }
    }
}
