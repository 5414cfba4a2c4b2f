use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus we allow, so that residues fit in `u64` and products in `u128`.
const MODULUS_LIMIT: u128 = 1 << 63;

/// A rational prime, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d.saturating_mul(d) <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `4` when `p = 2`, otherwise `p`.
    pub fn q(self) -> u64 {
        if self.0 == 2 {
            4
        } else {
            self.0
        }
    }

    /// Largest `N` for which `p^N` is a supported modulus.
    pub fn max_prec(self) -> u32 {
        let mut n = 0;
        let mut m: u128 = 1;
        while m * self.0 as u128 <= MODULUS_LIMIT {
            m *= self.0 as u128;
            n += 1;
        }
        n
    }

    /// `p^n`, or `PrecisionExhausted` if it exceeds the supported modulus.
    pub fn pow(self, n: u32) -> Result<u64> {
        if n > self.max_prec() {
            return Err(Error::PrecisionExhausted {
                needed: n as i64,
                available: self.max_prec(),
            });
        }
        Ok(self.0.pow(n))
    }

    /// `p^n` for indices and loop bounds; panics on overflow.
    pub fn pow_usize(self, n: u32) -> usize {
        (self.0 as usize)
            .checked_pow(n)
            .expect("p^n overflows usize")
    }

    /// Exact valuation of a nonzero integer; `None` for zero.
    pub fn valuation_of(self, x: i128) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let p = self.0 as i128;
        let mut x = x;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        Some(v)
    }

    /// Splits a nonzero integer into `(v_p(x), x / p^v)`.
    pub fn split(self, x: i128) -> (u32, i128) {
        debug_assert!(x != 0);
        let p = self.0 as i128;
        let mut x = x;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        (v, x)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        for p in [2, 3, 5, 7, 11, 13, 97] {
            assert!(Prime::new(p).is_ok());
        }
        for n in [0, 1, 4, 9, 15, 91] {
            assert_eq!(Prime::new(n), Err(Error::NotPrime(n)));
        }
    }

    #[test]
    fn modulus_limits() {
        assert_eq!(Prime::new(2).unwrap().max_prec(), 63);
        let p3 = Prime::new(3).unwrap();
        assert!((3u128).pow(p3.max_prec()) <= MODULUS_LIMIT);
        assert!((3u128).pow(p3.max_prec() + 1) > MODULUS_LIMIT);
        assert!(p3.pow(p3.max_prec() + 1).is_err());
        assert_eq!(Prime::new(2).unwrap().q(), 4);
        assert_eq!(Prime::new(5).unwrap().q(), 5);
    }

    #[test]
    fn split_integer() {
        let p = Prime::new(3).unwrap();
        assert_eq!(p.split(-54), (3, -2));
        assert_eq!(p.valuation_of(0), None);
    }
}
