use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::padic::{PadicApprox, Prime};

/// A finite Laurent polynomial `Σ_{d=min_deg}^{max_deg} c_d t^d`.
///
/// Explicit zeros at either end are allowed; coefficients outside the stored
/// range are exact zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    p: Prime,
    min_deg: i64,
    coeffs: Vec<PadicApprox>,
}

impl LaurentPoly {
    pub fn new(p: Prime, min_deg: i64, coeffs: Vec<PadicApprox>) -> Self {
        LaurentPoly { p, min_deg, coeffs }
    }

    pub fn zero(p: Prime) -> Self {
        Self::new(p, 0, Vec::new())
    }

    pub fn monomial(deg: i64, c: PadicApprox) -> Self {
        Self::new(c.prime(), deg, vec![c])
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// Highest stored degree; `min_deg - 1` when empty.
    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.coeffs.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[PadicApprox] {
        &self.coeffs
    }

    pub fn coeff(&self, d: i64) -> PadicApprox {
        if d < self.min_deg || d > self.max_deg() {
            return PadicApprox::exact_zero(self.p);
        }
        self.coeffs[(d - self.min_deg) as usize]
    }

    /// `f(t^{-1})`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(self.p, -self.max_deg(), coeffs)
    }

    /// `t^m · f`.
    pub fn shift(&self, m: i64) -> Self {
        Self::new(self.p, self.min_deg + m, self.coeffs.clone())
    }

    /// `f(t^k)` for `k ≥ 1`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_empty() {
            return self.clone();
        }
        let zero = PadicApprox::exact_zero(self.p);
        let mut coeffs = vec![zero; (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = *c;
        }
        Self::new(self.p, self.min_deg * k as i64, coeffs)
    }

    /// Drops every degree `≥ m`.
    pub fn truncate_below(&self, m: i64) -> Self {
        let keep = (m - self.min_deg).clamp(0, self.coeffs.len() as i64) as usize;
        Self::new(self.p, self.min_deg, self.coeffs[..keep].to_vec())
    }

    pub fn scale(&self, s: &PadicApprox) -> Self {
        Self::new(self.p, self.min_deg, self.coeffs.iter().map(|&c| c * *s).collect())
    }

    /// Lowest degree in the union of both ranges where the coefficients differ mod `p^n`.
    pub fn first_mismatch_mod(&self, other: &Self, n: u32) -> Result<Option<i64>> {
        let (lo, hi) = union_range(self, other);
        for d in lo..=hi {
            if !self.coeff(d).eq_mod(&other.coeff(d), n)? {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    /// Whether every coefficient at negative degree vanishes.
    pub fn is_polynomial(&self) -> bool {
        (self.min_deg..0.min(self.max_deg() + 1)).all(|d| self.coeff(d).is_zero())
    }
}

fn union_range(a: &LaurentPoly, b: &LaurentPoly) -> (i64, i64) {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.min_deg, b.max_deg()),
        (false, true) => (a.min_deg, a.max_deg()),
        (false, false) => (a.min_deg.min(b.min_deg), a.max_deg().max(b.max_deg())),
    }
}

fn combine(a: &LaurentPoly, b: &LaurentPoly, op: impl Fn(PadicApprox, PadicApprox) -> PadicApprox) -> LaurentPoly {
    let (lo, hi) = union_range(a, b);
    let coeffs = (lo..=hi).map(|d| op(a.coeff(d), b.coeff(d))).collect();
    LaurentPoly::new(a.p, lo, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        combine(self, rhs, |x, y| x + y)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        combine(self, rhs, |x, y| x - y)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::new(self.p, self.min_deg, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.p, rhs.p);
        if self.is_empty() || rhs.is_empty() {
            return LaurentPoly::zero(self.p);
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut coeffs: Vec<Option<PadicApprox>> = vec![None; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[i + j] = Some(match coeffs[i + j] {
                    Some(acc) => acc + prod,
                    None => prod,
                });
            }
        }
        LaurentPoly::new(self.p, self.min_deg + rhs.min_deg, coeffs.into_iter().map(Option::unwrap).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncSeries;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn poly(min_deg: i64, xs: &[i128]) -> LaurentPoly {
        let coeffs = xs.iter().map(|&x| PadicApprox::from_int(p3(), 4, x).unwrap()).collect();
        LaurentPoly::new(p3(), min_deg, coeffs)
    }

    #[test]
    fn reverse_examples() {
        let f = poly(0, &[1, 1]);
        let r = f.reverse();
        assert_eq!((r.min_deg(), r.max_deg()), (-1, 0));
        assert_eq!(r.first_mismatch_mod(&poly(-1, &[1, 1]), 4).unwrap(), None);
        assert_eq!(r.reverse(), f);
    }

    #[test]
    fn shifted_reverse_of_truncation_is_polynomial() {
        let f = TruncSeries::from_ints(&[1, 2, 0, 5, 7, 8, 1, 1, 2, 9, 9], p3(), 4).unwrap();
        let pn = 9;
        let rev = f.truncate_below(pn).to_laurent().truncate_below(pn as i64).reverse().shift(pn as i64 - 1);
        assert!(rev.min_deg() >= 0);
        assert!(rev.max_deg() < pn as i64);
        assert!(rev.is_polynomial());
    }

    #[test]
    fn arithmetic() {
        let f = poly(-1, &[1, 2]);
        let g = poly(0, &[1, 0, 1]);
        let prod = &f * &g;
        assert_eq!(prod.first_mismatch_mod(&poly(-1, &[1, 2, 1, 2]), 4).unwrap(), None);
        let sum = &f + &g;
        assert_eq!(sum.first_mismatch_mod(&poly(-1, &[1, 3, 0, 1]), 4).unwrap(), None);
        assert_eq!((&f - &f).first_mismatch_mod(&LaurentPoly::zero(p3()), 4).unwrap(), None);
        let sub = poly(0, &[1, 1]).substitute_power(3);
        assert_eq!(sub.first_mismatch_mod(&poly(0, &[1, 0, 0, 1]), 4).unwrap(), None);
        assert_eq!(poly(0, &[1, 2, 3]).truncate_below(1).max_deg(), 0);
    }
}
