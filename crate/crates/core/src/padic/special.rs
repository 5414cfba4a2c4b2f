//! Number-theoretic primitives: binomials, rising factorials, powers
//! `c^α` for `c ≡ 1 (mod p)`, the Iwasawa logarithm and braced products.

use super::{PadicApprox, Prime, RationalParam, Scaled};
use crate::error::{Error, Result};

/// `α(α-1)⋯(α-i+1) / i!` in exact valuation form.
pub fn binomial_scaled(alpha: &RationalParam, i: u64, p: Prime, prec: u32) -> Result<Scaled> {
    alpha.check_embeddable(p)?;
    let (n, d) = (alpha.numer() as i128, alpha.denom() as i128);
    let mut acc = Scaled::one(p, prec);
    for j in 0..i as i128 {
        let factor = Scaled::from_fraction(n - j * d, d * (j + 1), p, prec)?;
        acc = acc * factor;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Rising factorial `(α)_k = α(α+1)⋯(α+k-1)` in exact valuation form.
pub fn pochhammer_scaled(alpha: &RationalParam, k: u64, p: Prime, prec: u32) -> Result<Scaled> {
    alpha.check_embeddable(p)?;
    let (n, d) = (alpha.numer() as i128, alpha.denom() as i128);
    let mut acc = Scaled::one(p, prec);
    for j in 0..k as i128 {
        acc = acc * Scaled::from_fraction(n + j * d, d, p, prec)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `binom(α, i)` as a p-adic integer modulo `p^prec`.
pub fn padic_binomial(alpha: &RationalParam, i: u64, p: Prime, prec: u32) -> Result<PadicApprox> {
    binomial_scaled(alpha, i, p, prec)?.to_approx_exact(prec)
}

/// `(α)_k` modulo `p^prec`, with `(α)_0 = 1`.
pub fn pochhammer(alpha: &RationalParam, k: u64, p: Prime, prec: u32) -> Result<PadicApprox> {
    pochhammer_scaled(alpha, k, p, prec)?.to_approx_exact(prec)
}

fn require_one_mod_p(c: &PadicApprox, min_val: u32) -> Result<PadicApprox> {
    let x = *c - PadicApprox::one(c.prime(), c.prec());
    if c.prec() < min_val || x.valuation().value < min_val {
        return Err(Error::CNotOneModP(c.to_string()));
    }
    Ok(x)
}

/// `c^α = Σ binom(α, i) (c-1)^i` for `c ≡ 1 (mod p)`.
///
/// Term `i` has valuation at least `i`, so the sum stops at `i = prec - 1`.
/// The result is known to `min(prec, prec(c))`.
pub fn c_power(c: &PadicApprox, alpha: &RationalParam, prec: u32) -> Result<PadicApprox> {
    let x = require_one_mod_p(c, 1)?;
    let p = c.prime();
    let out = prec.min(c.prec());
    let x = x.reduce(out)?;
    let mut acc = PadicApprox::one(p, out);
    let mut x_pow = PadicApprox::one(p, out);
    for i in 1..out as u64 {
        x_pow = x_pow * x;
        if x_pow.is_zero() {
            break;
        }
        acc = acc + binomial_scaled(alpha, i, p, out)?.to_approx_exact(out)? * x_pow;
    }
    Ok(acc)
}

/// `c^α` for an exponent known only modulo `p^prec(α)`, through the integer
/// representative of `α`. Valid because `c^(p^m) ≡ 1 (mod p^(m+1))` whenever
/// `c ≡ 1 (mod p)`.
pub fn c_power_padic(c: &PadicApprox, alpha: &PadicApprox, prec: u32) -> Result<PadicApprox> {
    require_one_mod_p(c, 1)?;
    let out = prec.min(c.prec()).min(alpha.prec() + 1);
    Ok(c.reduce(out)?.pow(alpha.residue()))
}

/// Iwasawa logarithm `Σ (-1)^(i+1) (c-1)^i / i` on `1 + pZ_p`.
///
/// At `p = 2` a value `c ≡ 3 (mod 4)` is sent to `-c` first, using `log(-1) = 0`.
pub fn iwasawa_log(c: &PadicApprox) -> Result<PadicApprox> {
    let p = c.prime();
    let c = if p.get() == 2 && c.prec() >= 2 && c.residue() % 4 == 3 { -*c } else { *c };
    let min_val = if p.get() == 2 { 2 } else { 1 };
    let x = require_one_mod_p(&c, min_val)?;
    let prec = c.prec();
    if x.is_zero() {
        return Ok(PadicApprox::zero(p, prec));
    }
    let (w, u) = p.split(x.residue() as i128);
    let base = Scaled::from_parts(p, prec - w, w as i64, u);
    let mut acc = PadicApprox::zero(p, prec);
    let mut power = Scaled::one(p, prec - w);
    let mut i: u64 = 1;
    loop {
        power = power * base;
        let (vi, _) = p.split(i as i128);
        let term_val = i as i64 * w as i64 - vi as i64;
        if term_val < prec as i64 {
            let term = (power / Scaled::from_int(i as i128, p, prec - w)?).to_approx_exact(prec)?;
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        } else if i as i64 * w as i64 - ilog(p, i) as i64 >= prec as i64 {
            break;
        }
        i += 1;
    }
    Ok(acc)
}

fn ilog(p: Prime, n: u64) -> u32 {
    let mut k = 0;
    let mut m = n;
    while m >= p.get() {
        m /= p.get();
        k += 1;
    }
    k
}

/// `{α}_n`: the product of `α + i - 1` over `1 ≤ i ≤ n`, skipping factors
/// divisible by `p` (and zero factors). Always a unit.
pub fn braced_scaled(alpha: &RationalParam, n: u64, p: Prime, prec: u32) -> Result<Scaled> {
    alpha.check_embeddable(p)?;
    let (num, d) = (alpha.numer() as i128, alpha.denom() as i128);
    let pp = p.get() as i128;
    let mut acc = Scaled::one(p, prec);
    for i in 0..n as i128 {
        let f = num + i * d;
        if f % pp != 0 {
            acc = acc * Scaled::from_fraction(f, d, p, prec)?;
        }
    }
    Ok(acc)
}

pub fn braced_product(alpha: &RationalParam, n: u64, p: Prime, prec: u32) -> Result<PadicApprox> {
    braced_scaled(alpha, n, p, prec)?.to_approx_exact(prec)
}
