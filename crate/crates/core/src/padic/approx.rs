use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::rational::mod_inverse;
use super::{Prime, RationalParam, Scaled};
use crate::error::{Error, Result};

/// An element of `Z_p` known modulo `p^prec`.
///
/// Binary operations return the smaller of the two precisions. Exact division
/// by a divisor of valuation `v` costs `v` digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    p: Prime,
    prec: u32,
    residue: u64,
}

/// `v_p` of an approximation; `at_least` is set when the residue is zero, in
/// which case only `value = prec` is known as a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub value: u32,
    pub at_least: bool,
}

impl PadicApprox {
    pub fn new(p: Prime, prec: u32, residue: u64) -> Result<Self> {
        let m = p.pow(prec)?;
        Ok(PadicApprox { p, prec, residue: residue % m })
    }

    pub fn from_int(p: Prime, prec: u32, value: i128) -> Result<Self> {
        let m = p.pow(prec)? as i128;
        Ok(PadicApprox { p, prec, residue: value.rem_euclid(m) as u64 })
    }

    pub fn zero(p: Prime, prec: u32) -> Self {
        PadicApprox { p, prec, residue: 0 }
    }

    pub fn one(p: Prime, prec: u32) -> Self {
        PadicApprox { p, prec, residue: if prec == 0 { 0 } else { 1 } }
    }

    /// Zero at the largest supported precision; used for padding exact polynomials.
    pub fn exact_zero(p: Prime) -> Self {
        Self::zero(p, p.max_prec())
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn prec(&self) -> u32 {
        self.prec
    }

    #[inline]
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.p.get().pow(self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_unit(&self) -> bool {
        self.prec > 0 && !self.residue.is_multiple_of(self.p.get())
    }

    /// Residue in the symmetric range `(-m/2, m/2]`.
    pub fn signed_residue(&self) -> i128 {
        let m = self.modulus() as i128;
        let r = self.residue as i128;
        if 2 * r > m {
            r - m
        } else {
            r
        }
    }

    pub fn valuation(&self) -> Valuation {
        if self.residue == 0 {
            return Valuation { value: self.prec, at_least: true };
        }
        let (v, _) = self.p.split(self.residue as i128);
        Valuation { value: v, at_least: false }
    }

    /// Drops to precision `prec`; errors if that would require digits we do not have.
    pub fn reduce(&self, prec: u32) -> Result<Self> {
        if prec > self.prec {
            return Err(Error::PrecisionExhausted { needed: prec as i64, available: self.prec });
        }
        Ok(PadicApprox { p: self.p, prec, residue: self.residue % self.p.get().pow(prec) })
    }

    /// `self ≡ other (mod p^n)`; both sides must be known to at least `p^n`.
    pub fn eq_mod(&self, other: &Self, n: u32) -> Result<bool> {
        Ok(self.reduce(n)?.residue == other.reduce(n)?.residue)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.p, self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotDivisible { value: self.to_string(), valuation: 0 });
        }
        let inv = mod_inverse(self.residue as i128, self.modulus() as i128).unwrap();
        Ok(PadicApprox { p: self.p, prec: self.prec, residue: inv as u64 })
    }

    /// `y` with `y·d ≡ self`, at precision `min(prec(self), prec(d)) - v_p(d)`.
    pub fn exact_div(&self, d: &PadicApprox) -> Result<Self> {
        self.check_prime(d)?;
        if d.residue == 0 {
            return Err(Error::PreconditionViolated(format!("divisor {d} has no known valuation")));
        }
        let (v, unit) = self.p.split(d.residue as i128);
        let divisor = Scaled::from_parts(self.p, d.prec - v, v as i64, unit);
        self.exact_div_scaled(&divisor)
    }

    /// Exact division by a rational in `Z_(p)`.
    pub fn exact_div_rational(&self, r: &RationalParam) -> Result<Self> {
        r.check_embeddable(self.p)?;
        if r.is_zero() {
            return Err(Error::PreconditionViolated("division by zero".into()));
        }
        let d = Scaled::from_rational(r, self.p, self.prec)?;
        self.exact_div_scaled(&d)
    }

    /// Exact division by `p^v · unit`.
    pub fn exact_div_scaled(&self, d: &Scaled) -> Result<Self> {
        let v = match d.val() {
            None => return Err(Error::PreconditionViolated("division by zero".into())),
            Some(v) if v < 0 => {
                return Err(Error::PreconditionViolated("divisor has negative valuation".into()))
            }
            Some(v) => v as u32,
        };
        if self.prec <= v {
            return Err(Error::PrecisionExhausted { needed: v as i64 + 1, available: self.prec });
        }
        let pv = self.p.get().pow(v);
        if !self.residue.is_multiple_of(pv) {
            return Err(Error::NotDivisible { value: self.to_string(), valuation: v });
        }
        let prec = (self.prec - v).min(d.prec());
        if prec == 0 {
            return Err(Error::PrecisionExhausted { needed: v as i64 + 1, available: self.prec });
        }
        let m = self.p.get().pow(prec);
        let unit_inv = mod_inverse(d.unit() as i128, m as i128).unwrap() as u64;
        let q = (self.residue / pv) % m;
        Ok(PadicApprox { p: self.p, prec, residue: mulmod(q, unit_inv, m) })
    }

    /// Base-`p` digits, least significant first, `prec` of them.
    pub fn digits(&self) -> Vec<u64> {
        let p = self.p.get();
        let mut r = self.residue;
        (0..self.prec)
            .map(|_| {
                let d = r % p;
                r /= p;
                d
            })
            .collect()
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    fn joint(&self, other: &Self) -> (u32, u64) {
        assert_eq!(self.p, other.p, "mixing p-adic values for different primes");
        let prec = self.prec.min(other.prec);
        (prec, self.p.get().pow(prec))
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Add for PadicApprox {
    type Output = PadicApprox;
    fn add(self, rhs: PadicApprox) -> PadicApprox {
        let (prec, m) = self.joint(&rhs);
        let r = (self.residue as u128 + rhs.residue as u128) % m as u128;
        PadicApprox { p: self.p, prec, residue: r as u64 }
    }
}

impl Sub for PadicApprox {
    type Output = PadicApprox;
    fn sub(self, rhs: PadicApprox) -> PadicApprox {
        self + (-rhs)
    }
}

impl Neg for PadicApprox {
    type Output = PadicApprox;
    fn neg(self) -> PadicApprox {
        let m = self.modulus();
        PadicApprox { residue: (m - self.residue) % m, ..self }
    }
}

impl Mul for PadicApprox {
    type Output = PadicApprox;
    fn mul(self, rhs: PadicApprox) -> PadicApprox {
        let (prec, m) = self.joint(&rhs);
        PadicApprox { p: self.p, prec, residue: mulmod(self.residue % m, rhs.residue % m, m) }
    }
}

impl std::iter::Sum for PadicApprox {
    fn sum<I: Iterator<Item = PadicApprox>>(mut iter: I) -> PadicApprox {
        let first = iter.next().expect("sum of an empty sequence of p-adic values");
        iter.fold(first, |acc, x| acc + x)
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.prec)
    }
}

impl Serialize for PadicApprox {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
