//! Hypergeometric coefficient sequences `A_k`, `A^{(1)}_k`, `B_k`, `B̂_k` and
//! the assembled functions `𝓕^Dw`, `𝓕^(σ)` and `𝓕̂^(σ)`.
//!
//! Every coefficient is produced at a caller-chosen target precision. The
//! working precision is derived exactly from the valuations of the divisors
//! involved (`k`, `k + a`, `A_k`), which are known in advance since all
//! parameters are rational.

mod frobenius;
mod functions;

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{dwork_chain, DworkChain, PadicApprox, Prime, RationalParam, Scaled};

pub use frobenius::{Direction, FrobeniusSpec};
pub use functions::{
    compute_h, dwork_function, dwork_truncation_pair, dwork_truncation_pair_tuple, hat_function,
    hat_series, log_type_function, log_type_series,
};

/// How many Dwork primes to look ahead for a period.
/// Largest index `p^N` that [`b0_constant`] will walk to.
const B0_MAX_INDEX: u64 = 1 << 20;
const CHAIN_STEPS: usize = 64;

/// `(a, …, a)` with multiplicity `s` at the prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HGParams {
    pub a: RationalParam,
    pub s: u32,
    pub p: Prime,
    #[serde(skip)]
    pub chain: DworkChain,
}

impl HGParams {
    pub fn new(a: RationalParam, s: u32, p: Prime) -> Result<Self> {
        if s == 0 {
            return Err(Error::PreconditionViolated("s must be positive".into()));
        }
        if a.is_nonpositive_integer() {
            return Err(Error::PreconditionViolated(format!("a = {a} is a non-positive integer")));
        }
        let chain = dwork_chain(&a, p, CHAIN_STEPS)?;
        Ok(HGParams { a, s, p, chain })
    }

    pub fn l(&self) -> u64 {
        self.chain.l
    }

    pub fn e(&self) -> u64 {
        self.chain.e
    }

    pub fn a_prime(&self) -> RationalParam {
        self.chain.dwork_prime()
    }

    /// `a^(i)`.
    pub fn level(&self, i: usize) -> RationalParam {
        self.chain.nth(i)
    }

    /// `(-1)^{se}`.
    pub fn hat_sign(&self) -> i64 {
        if (self.s as u64 * self.e()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub(crate) fn params_at_level(&self, i: usize) -> Vec<RationalParam> {
        vec![self.level(i); self.s as usize]
    }
}

/// `(a_1)_k ⋯ (a_s)_k / k!^s` for `k < count`, in exact valuation form.
pub fn hypergeometric_scaled(a: &[RationalParam], p: Prime, count: usize, unit_prec: u32) -> Result<Vec<Scaled>> {
    for x in a {
        x.check_embeddable(p)?;
    }
    let mut out = Vec::with_capacity(count);
    let mut acc = Scaled::one(p, unit_prec);
    for k in 0..count as i128 {
        out.push(acc);
        for x in a {
            let (n, d) = (x.numer() as i128, x.denom() as i128);
            acc = acc * Scaled::from_fraction(n + k * d, d * (k + 1), p, unit_prec)?;
        }
    }
    Ok(out)
}

/// The single term `(a_1)_k ⋯ (a_s)_k / k!^s`, without storing the earlier ones.
pub fn hypergeometric_term(a: &[RationalParam], p: Prime, k: usize, unit_prec: u32) -> Result<Scaled> {
    let mut acc = Scaled::one(p, unit_prec);
    for i in 0..k as i128 {
        for x in a {
            let (n, d) = (x.numer() as i128, x.denom() as i128);
            acc = acc * Scaled::from_fraction(n + i * d, d * (i + 1), p, unit_prec)?;
        }
    }
    Ok(acc)
}

/// `A_k` of `F_{a_1,…,a_s}` modulo `p^prec` for `k < count`.
pub fn hypergeometric_coefficients(a: &[RationalParam], p: Prime, count: usize, prec: u32) -> Result<Vec<PadicApprox>> {
    hypergeometric_scaled(a, p, count, prec)?
        .iter()
        .map(|x| x.to_approx_exact(prec))
        .collect()
}

/// Exact `v_p(A_k)` for the parameter `a^(level)` with multiplicity `s`.
pub fn coefficient_valuation(params: &HGParams, level: usize, k: usize) -> i64 {
    let p = params.p;
    let x = params.level(level);
    let (n, d) = (x.numer() as i128, x.denom() as i128);
    let mut v = 0i64;
    for i in 0..k as i128 {
        match p.valuation_of(n + i * d) {
            Some(vi) => v += vi as i64,
            None => return i64::MAX,
        }
        v -= p.valuation_of(i + 1).unwrap() as i64;
    }
    v * params.s as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoeffKind {
    A,
    A1,
    B,
    Bhat,
}

impl CoeffKind {
    pub fn name(self) -> &'static str {
        match self {
            CoeffKind::A => "A",
            CoeffKind::A1 => "A1",
            CoeffKind::B => "B",
            CoeffKind::Bhat => "Bhat",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub params: HGParams,
    pub frob: Option<FrobeniusSpec>,
    pub kind: CoeffKind,
    pub prec: u32,
    pub values: Vec<PadicApprox>,
}

#[derive(Serialize)]
struct CoeffRow<'a> {
    k: usize,
    kind: &'a str,
    residue: String,
    prec: u32,
}

impl CoeffTable {
    /// One JSON object per line: `{k, kind, residue, prec}`.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (k, v) in self.values.iter().enumerate() {
            let row = CoeffRow { k, kind: self.kind.name(), residue: v.residue().to_string(), prec: v.prec() };
            serde_json::to_writer(&mut out, &row)?;
            writeln!(out)?;
        }
        Ok(())
    }
}

/// `A_k` of `F_{a^(level)}` (with multiplicity `s`) for `k < count`.
pub fn hg_coefficients(params: &HGParams, count: usize, level: usize, prec: u32) -> Result<CoeffTable> {
    if count == 0 {
        return Err(Error::PreconditionViolated("count must be at least 1".into()));
    }
    let values = hypergeometric_coefficients(&params.params_at_level(level), params.p, count, prec)?;
    Ok(CoeffTable {
        params: params.clone(),
        frob: None,
        kind: if level == 0 { CoeffKind::A } else { CoeffKind::A1 },
        prec,
        values,
    })
}

/// `A` and `A^{(1)}` in exact valuation form, enough to evaluate `B_k` and
/// `B̂_k` for `k < count`.
pub(crate) struct CoeffSource {
    pub params: HGParams,
    pub a: Vec<Scaled>,
    pub a1: Vec<Scaled>,
    pub unit_prec: u32,
}

impl CoeffSource {
    pub fn new(params: &HGParams, count: usize, unit_prec: u32) -> Result<Self> {
        let p = params.p;
        let a = hypergeometric_scaled(&params.params_at_level(0), p, count, unit_prec)?;
        let a1_count = count / p.get() as usize + 1;
        let a1 = hypergeometric_scaled(&params.params_at_level(1), p, a1_count, unit_prec)?;
        Ok(CoeffSource { params: params.clone(), a, a1, unit_prec })
    }

    /// Numerator `A_k - c^{k/p} A^{(1)}_{k/p}` of `B_k` at absolute precision `unit_prec`.
    pub fn b_numerator(&self, frob: &FrobeniusSpec, k: usize) -> Result<PadicApprox> {
        let p = self.params.p;
        let w = self.unit_prec;
        let ak = self.a[k].to_approx_exact(w)?;
        let pu = p.get() as usize;
        if !k.is_multiple_of(pu) {
            return Ok(ak);
        }
        let j = k / pu;
        let c_pow = frob.twist_power(&RationalParam::integer(j as i64), p, w)?;
        Ok(ak - c_pow * self.a1[j].to_approx_exact(w)?)
    }

    /// Numerator `A_k - (-1)^{se} A^{(1)}_{(k-l)/p} c^{(k+a)/p}` of `B̂_k`.
    pub fn bhat_numerator(&self, frob: &FrobeniusSpec, k: usize) -> Result<PadicApprox> {
        let p = self.params.p;
        let w = self.unit_prec;
        let ak = self.a[k].to_approx_exact(w)?;
        let l = self.params.l() as usize;
        let pu = p.get() as usize;
        if k < l || !(k - l).is_multiple_of(pu) {
            return Ok(ak);
        }
        let j = (k - l) / pu;
        let exponent = (self.params.a + k as i64) / p.get() as i64;
        let c_pow = frob.twist_power(&exponent, p, w)?;
        let second = c_pow * self.a1[j].to_approx_exact(w)?;
        Ok(if self.params.hat_sign() == 1 { ak - second } else { ak + second })
    }

    pub fn b(&self, frob: &FrobeniusSpec, k: usize) -> Result<PadicApprox> {
        debug_assert!(k >= 1);
        self.b_numerator(frob, k)?.exact_div_rational(&RationalParam::integer(k as i64))
    }

    pub fn bhat(&self, frob: &FrobeniusSpec, k: usize) -> Result<PadicApprox> {
        self.bhat_numerator(frob, k)?.exact_div_rational(&(self.params.a + k as i64))
    }
}

fn max_valuation(p: Prime, divisors: impl Iterator<Item = RationalParam>) -> u32 {
    divisors.filter_map(|d| d.valuation(p)).max().unwrap_or(0).max(0) as u32
}

/// Guard digits needed to divide by every `k` in `1..count`.
pub(crate) fn b_guard(params: &HGParams, count: usize) -> u32 {
    max_valuation(params.p, (1..count).map(|k| RationalParam::integer(k as i64)))
}

/// Guard digits needed to divide by every `k + a` in `0..count`.
pub(crate) fn bhat_guard(params: &HGParams, count: usize) -> u32 {
    max_valuation(params.p, (0..count).map(|k| params.a + k as i64))
}

fn require_prec(p: Prime, w: u32) -> Result<()> {
    if w > p.max_prec() {
        return Err(Error::PrecisionExhausted { needed: w as i64, available: p.max_prec() });
    }
    Ok(())
}

/// Single `B_k` (`k ≥ 1`) or `B̂_k` modulo `p^prec`.
pub fn single_coefficient(params: &HGParams, frob: &FrobeniusSpec, k: usize, hat: bool, prec: u32) -> Result<PadicApprox> {
    frob.validate(params.p)?;
    let divisor = if hat { params.a + k as i64 } else { RationalParam::integer(k as i64) };
    let w = prec + divisor.valuation(params.p).unwrap_or(0).max(0) as u32;
    require_prec(params.p, w)?;
    let src = CoeffSource::new(params, k + 1, w)?;
    let x = if hat { src.bhat(frob, k)? } else { src.b(frob, k)? };
    x.reduce(prec)
}

/// `B_k / A_k` (or `B̂_k / A_k`) modulo `p^prec`; `k = 0` gives `B_0` via [`b0_constant`].
pub fn coefficient_ratio(params: &HGParams, frob: &FrobeniusSpec, k: usize, hat: bool, prec: u32) -> Result<PadicApprox> {
    if k == 0 && !hat {
        return b0_constant(params, frob, prec);
    }
    let va = coefficient_valuation(params, 0, k);
    let target = prec + va as u32;
    let x = single_coefficient(params, frob, k, hat, target)?;
    let ak = hypergeometric_scaled(&params.params_at_level(0), params.p, k + 1, target)?[k];
    x.exact_div_scaled(&ak)?.reduce(prec)
}

/// `B_0 ≡ B_{p^N} / A_{p^N} (mod p^N)`, the value at `0` of the continuous
/// extension of `k ↦ B_k/A_k`.
pub fn b0_constant(params: &HGParams, frob: &FrobeniusSpec, prec: u32) -> Result<PadicApprox> {
    frob.validate(params.p)?;
    let p = params.p;
    if prec == 0 {
        return Ok(PadicApprox::zero(p, 0));
    }
    let max_n = (0..).take_while(|&n| p.pow(n).is_ok_and(|m| m <= B0_MAX_INDEX)).last().unwrap_or(0);
    if prec > max_n {
        return Err(Error::PrecisionExhausted { needed: prec as i64, available: max_n });
    }
    let k = p.pow_usize(prec);
    let va = coefficient_valuation(params, 0, k) as u32;
    let w = 2 * prec + va;
    require_prec(p, w)?;
    let ak = hypergeometric_term(&params.params_at_level(0), p, k, w)?;
    let a1 = hypergeometric_term(&params.params_at_level(1), p, k / p.get() as usize, w)?;
    let c_pow = frob.twist_power(&RationalParam::integer((k / p.get() as usize) as i64), p, w)?;
    let numerator = ak.to_approx_exact(w)? - c_pow * a1.to_approx_exact(w)?;
    numerator
        .exact_div_rational(&RationalParam::integer(k as i64))?
        .exact_div_scaled(&ak)?
        .reduce(prec)
}

/// `B_k` for `k < count` (with `B_0` from [`b0_constant`]) modulo `p^prec`.
pub fn b_coefficients(params: &HGParams, frob: &FrobeniusSpec, count: usize, prec: u32) -> Result<CoeffTable> {
    frob.validate(params.p)?;
    let w = prec + b_guard(params, count);
    require_prec(params.p, w)?;
    let src = CoeffSource::new(params, count, w)?;
    let mut values = Vec::with_capacity(count);
    if count > 0 {
        values.push(b0_constant(params, frob, prec)?);
    }
    for k in 1..count {
        values.push(src.b(frob, k)?.reduce(prec)?);
    }
    Ok(CoeffTable { params: params.clone(), frob: Some(*frob), kind: CoeffKind::B, prec, values })
}

/// `B̂_k` for `k < count` modulo `p^prec`, with `c` replaced by `c^{-1}` for σ̂.
pub fn bhat_coefficients(params: &HGParams, frob: &FrobeniusSpec, count: usize, prec: u32) -> Result<CoeffTable> {
    frob.validate(params.p)?;
    let w = prec + bhat_guard(params, count);
    require_prec(params.p, w)?;
    let src = CoeffSource::new(params, count, w)?;
    let values = (0..count)
        .map(|k| src.bhat(frob, k)?.reduce(prec))
        .collect::<Result<_>>()?;
    Ok(CoeffTable { params: params.clone(), frob: Some(*frob), kind: CoeffKind::Bhat, prec, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn r(n: i64, d: i64) -> RationalParam {
        RationalParam::new(n, d).unwrap()
    }

    fn params(a: RationalParam, s: u32, q: u64) -> HGParams {
        HGParams::new(a, s, p(q)).unwrap()
    }

    #[test]
    fn a_coefficients() {
        let t = hg_coefficients(&params(RationalParam::one(), 3, 5), 6, 0, 3).unwrap();
        assert!(t.values.iter().all(|x| x.residue() == 1));
        let t = hg_coefficients(&params(r(1, 2), 1, 3), 3, 0, 4).unwrap();
        assert_eq!(t.values[2], r(3, 8).embed(p(3), 4).unwrap());
        let t = hg_coefficients(&params(r(1, 2), 2, 3), 2, 0, 4).unwrap();
        assert_eq!(t.values[1], r(1, 4).embed(p(3), 4).unwrap());
        assert!(hg_coefficients(&params(r(1, 2), 2, 3), 0, 0, 4).is_err());
    }

    #[test]
    fn rejects_nonpositive_integer_a() {
        assert!(HGParams::new(RationalParam::integer(-2), 1, p(3)).is_err());
        assert!(HGParams::new(RationalParam::zero(), 1, p(3)).is_err());
    }

    #[test]
    fn b_closed_form_for_a_one() {
        let hp = params(RationalParam::one(), 1, 3);
        let t = b_coefficients(&hp, &FrobeniusSpec::identity(), 10, 3).unwrap();
        for k in 1..10 {
            let expected = if k % 3 == 0 { RationalParam::zero() } else { r(1, k as i64) };
            assert_eq!(t.values[k], expected.embed(p(3), 3).unwrap(), "k = {k}");
        }
        assert!(t.values[0].is_zero());
    }

    #[test]
    fn b_first_coefficient_is_a1() {
        for (a, s, q) in [(r(1, 2), 2, 5), (r(2, 3), 1, 7), (r(1, 5), 2, 3)] {
            let hp = params(a, s, q);
            let frob = FrobeniusSpec::sigma(RationalParam::integer(1 + q as i64));
            let b = b_coefficients(&hp, &frob, 2, 3).unwrap();
            let av = hg_coefficients(&hp, 2, 0, 3).unwrap();
            assert_eq!(b.values[1], av.values[1]);
        }
    }

    #[test]
    fn b3_for_half() {
        let hp = params(r(1, 2), 1, 3);
        let b = b_coefficients(&hp, &FrobeniusSpec::identity(), 4, 3).unwrap();
        assert_eq!(b.values[3], r(-1, 16).embed(p(3), 3).unwrap());
    }

    #[test]
    fn bhat_examples() {
        let hp = params(RationalParam::one(), 1, 3);
        assert_eq!((hp.l(), hp.e()), (2, 2));
        let t = bhat_coefficients(&hp, &FrobeniusSpec::identity(), 3, 3).unwrap();
        assert!(t.values[2].is_zero());
        assert_eq!(t.values[1], r(1, 2).embed(p(3), 3).unwrap());
        let hp = params(r(1, 2), 1, 3);
        let t = bhat_coefficients(&hp, &FrobeniusSpec::identity(), 1, 3).unwrap();
        assert_eq!(t.values[0].residue(), 2);
    }

    #[test]
    fn b0_examples() {
        let hp = params(RationalParam::one(), 1, 3);
        assert!(b0_constant(&hp, &FrobeniusSpec::identity(), 3).unwrap().is_zero());
        let hp = params(r(1, 2), 1, 3);
        let c = RationalParam::integer(4);
        let b2 = b0_constant(&hp, &FrobeniusSpec::sigma(c), 2).unwrap();
        let b3 = b0_constant(&hp, &FrobeniusSpec::sigma(c), 3).unwrap();
        assert_eq!(b3.reduce(2).unwrap(), b2);
    }

    #[test]
    fn json_lines() {
        let t = hg_coefficients(&params(RationalParam::one(), 1, 3), 2, 0, 2).unwrap();
        let mut buf = Vec::new();
        t.write_json_lines(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "{\"k\":0,\"kind\":\"A\",\"residue\":\"1\",\"prec\":2}\n{\"k\":1,\"kind\":\"A\",\"residue\":\"1\",\"prec\":2}\n");
    }
}
