//! Truncated power series and finite Laurent polynomials over `PadicApprox`.

mod laurent;

use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyper::FrobeniusSpec;
use crate::padic::{PadicApprox, Prime, RationalParam};

pub use laurent::LaurentPoly;

/// `Σ_{k<M} c_k t^k + O(t^M)`; the order `M` is the number of stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    p: Prime,
    coeffs: Vec<PadicApprox>,
}

impl TruncSeries {
    pub fn new(p: Prime, coeffs: Vec<PadicApprox>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.prime() == p));
        TruncSeries { p, coeffs }
    }

    pub fn zero(p: Prime, order: usize, prec: u32) -> Self {
        Self::new(p, vec![PadicApprox::zero(p, prec); order])
    }

    pub fn one(p: Prime, order: usize, prec: u32) -> Self {
        let mut s = Self::zero(p, order, prec);
        if order > 0 {
            s.coeffs[0] = PadicApprox::one(p, prec);
        }
        s
    }

    pub fn from_rationals(rs: &[RationalParam], p: Prime, prec: u32) -> Result<Self> {
        let coeffs = rs.iter().map(|r| r.embed(p, prec)).collect::<Result<_>>()?;
        Ok(Self::new(p, coeffs))
    }

    pub fn from_ints(xs: &[i64], p: Prime, prec: u32) -> Result<Self> {
        let coeffs = xs.iter().map(|&x| PadicApprox::from_int(p, prec, x as i128)).collect::<Result<_>>()?;
        Ok(Self::new(p, coeffs))
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Smallest coefficient precision.
    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(self.p.max_prec())
    }

    pub fn coeffs(&self) -> &[PadicApprox] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PadicApprox {
        self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<PadicApprox> {
        self.coeffs
    }

    /// Keeps the first `order` coefficients.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.p, self.coeffs[..order.min(self.order())].to_vec())
    }

    /// Reduces every coefficient to precision `prec`.
    pub fn reduce(&self, prec: u32) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.reduce(prec)).collect::<Result<_>>()?;
        Ok(Self::new(self.p, coeffs))
    }

    /// `[f]_{<m}`: coefficients at `k ≥ m` become exact zeros. The order is
    /// unchanged, since those zeros are known.
    pub fn truncate_below(&self, m: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k < m { c } else { PadicApprox::zero(self.p, c.prec()) })
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn scale(&self, s: &PadicApprox) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| c * *s).collect())
    }

    /// `t^m · f`, known to order `M + m`.
    pub fn shift(&self, m: usize) -> Self {
        let prec = self.prec();
        let mut coeffs = vec![PadicApprox::zero(self.p, prec); m];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(self.p, coeffs)
    }

    /// Multiplicative inverse to the same order; the constant term must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let f0 = *self.coeffs.first().ok_or_else(|| Error::PreconditionViolated("empty series".into()))?;
        let g0 = f0.inverse().map_err(|_| Error::NonUnitConstantTerm(f0.to_string()))?;
        let mut g = Vec::with_capacity(self.order());
        g.push(g0);
        for k in 1..self.order() {
            let s: PadicApprox = (1..=k).map(|j| self.coeffs[j] * g[k - j]).sum();
            g.push(-(s * g0));
        }
        Ok(Self::new(self.p, g))
    }

    /// `f · g^{-1}`.
    pub fn div(&self, g: &Self) -> Result<Self> {
        Ok(self * &g.inv()?)
    }

    /// `t·d/dt`.
    pub fn theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * PadicApprox::from_int(self.p, c.prec(), k as i128).unwrap())
            .collect();
        Self::new(self.p, coeffs)
    }

    /// First index `< order` where the two series differ modulo `p^n`.
    pub fn first_mismatch_mod(&self, other: &Self, n: u32) -> Result<Option<usize>> {
        for k in 0..self.order().min(other.order()) {
            if !self.coeffs[k].eq_mod(&other.coeffs[k], n)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::new(self.p, 0, self.coeffs.clone())
    }
}

/// `Σ a_k t^k ↦ Σ a_k c^k t^{kp}` (with `c^{-k}` for σ̂), to order
/// `min(out_order, p·M)`.
pub fn frobenius_substitute(f: &TruncSeries, frob: &FrobeniusSpec, out_order: usize) -> Result<TruncSeries> {
    let p = f.prime();
    let pu = p.get() as usize;
    let order = out_order.min(pu * f.order());
    let prec = f.prec();
    let c = frob.twist(p, prec)?;
    let mut coeffs = vec![PadicApprox::zero(p, prec); order];
    let mut c_pow = PadicApprox::one(p, prec);
    for (i, a) in f.coeffs().iter().enumerate() {
        if i * pu >= order {
            break;
        }
        coeffs[i * pu] = *a * c_pow;
        c_pow = c_pow * c;
    }
    Ok(TruncSeries::new(p, coeffs))
}

/// `∫_0^t f dt/t` (`c_k ↦ c_k/k`), or with a twist `a` the operator
/// `t^{-a}∫_0^t t^a f dt/t` (`c_k ↦ c_k/(k+a)`). Each coefficient loses the
/// valuation of its divisor. The untwisted constant term must vanish and maps to 0.
pub fn log_integral(f: &TruncSeries, twist: Option<&RationalParam>) -> Result<TruncSeries> {
    let p = f.prime();
    if let Some(a) = twist {
        if a.is_nonpositive_integer() {
            return Err(Error::PreconditionViolated(format!("twist {a} is a non-positive integer")));
        }
    }
    let mut out = Vec::with_capacity(f.order());
    for (k, c) in f.coeffs().iter().enumerate() {
        let divisor = match twist {
            Some(a) => *a + k as i64,
            None if k == 0 => {
                if !c.is_zero() {
                    return Err(Error::NonzeroConstantTerm(c.to_string()));
                }
                out.push(*c);
                continue;
            }
            None => RationalParam::integer(k as i64),
        };
        out.push(c.exact_div_rational(&divisor)?);
    }
    Ok(TruncSeries::new(p, out))
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a + b).collect();
        TruncSeries::new(self.p, coeffs)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a - b).collect();
        TruncSeries::new(self.p, coeffs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::new(self.p, self.coeffs.iter().map(|&c| -c).collect())
    }
}

/// Schoolbook convolution to the smaller order.
impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.p, rhs.p);
        let order = self.order().min(rhs.order());
        let coeffs = (0..order)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * rhs.coeffs[k - i]).sum())
            .collect();
        TruncSeries::new(self.p, coeffs)
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let residues: Vec<String> = self.coeffs.iter().map(|c| c.residue().to_string()).collect();
        let mut st = s.serialize_struct("TruncSeries", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("prec", &self.prec())?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &residues)?;
        st.end()
    }
}
