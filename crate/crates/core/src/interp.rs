//! Continuous extensions `β`, `β̂` of `k ↦ B_k/A_k` and `k ↦ B̂_k/A_k`, and the
//! ratio identity relating `A^{(1)}` to braced products.

use serde::Serialize;

use crate::error::Result;
use crate::hyper::{coefficient_ratio, hypergeometric_scaled, FrobeniusSpec, HGParams};
use crate::padic::{braced_scaled, pochhammer_scaled, PadicApprox, Prime, RationalParam, Scaled};

const RATIO_PREC: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterpPoint {
    pub lambda: RationalParam,
    pub n: u32,
    pub k_witness: u64,
}

impl InterpPoint {
    /// The smallest positive `k ≡ λ (mod p^n)`.
    pub fn new(lambda: RationalParam, p: Prime, n: u32) -> Result<Self> {
        let m = p.pow(n)?;
        let r = lambda.embed(p, n)?.residue();
        let k_witness = if r == 0 { m } else { r };
        Ok(InterpPoint { lambda, n, k_witness })
    }
}

/// `β_λ` (or `β̂_λ` with `hat`) modulo `p^n`. For `β̂` the caller passes the
/// σ̂ twist.
pub fn beta_at(lambda: &RationalParam, params: &HGParams, frob: &FrobeniusSpec, n: u32, hat: bool) -> Result<PadicApprox> {
    let pt = InterpPoint::new(*lambda, params.p, n)?;
    let v = coefficient_ratio(params, frob, pt.k_witness as usize, hat, n)?;
    #[cfg(debug_assertions)]
    {
        let other = pt.k_witness + params.p.pow(n)?;
        if let Ok(w) = coefficient_ratio(params, frob, other as usize, hat, n) {
            debug_assert_eq!(v, w, "witness dependence at λ = {lambda}");
        }
    }
    Ok(v)
}

/// Both sides of `A_x {1}_x^s = {a}_x^s p^{s(m-j)} ((a')_m / j!)^s` where
/// `m` counts the `i < x` with `p | a + i` and `j = ⌊x/p⌋`. When `p | x`
/// this is `A_x {1}_x^s = A^{(1)}_{x/p} {a}_x^s`.
pub fn ratio_identity_sides(x: u64, params: &HGParams, prec: u32) -> Result<(Scaled, Scaled)> {
    let p = params.p;
    let s = params.s;
    let a = params.a;
    let l = params.l();
    let ax = hypergeometric_scaled(&[a], p, x as usize + 1, prec)?[x as usize].pow(s);
    let lhs = ax * braced_scaled(&RationalParam::one(), x, p, prec)?.pow(s);
    let m = if x > l { (x - l).div_ceil(p.get()) } else { 0 };
    let j = x / p.get();
    let a1 = pochhammer_scaled(&params.a_prime(), m, p, prec)? / pochhammer_scaled(&RationalParam::one(), j, p, prec)?;
    let shift = Scaled::from_parts(p, prec, m as i64 - j as i64, 1);
    let rhs = braced_scaled(&a, x, p, prec)?.pow(s) * (shift * a1).pow(s);
    Ok((lhs, rhs))
}

pub fn ratio_identity_check(x: u64, params: &HGParams) -> bool {
    let prec = RATIO_PREC.min(params.p.max_prec());
    match ratio_identity_sides(x, params, prec) {
        Ok((lhs, rhs)) => {
            let direct = x.is_multiple_of(params.p.get());
            lhs == rhs && (!direct || divisible_form(x, params, prec).is_ok_and(|v| v == lhs))
        }
        Err(_) => false,
    }
}

/// `A^{(1)}_{x/p} {a}_x^s` read off the level-one coefficient table.
fn divisible_form(x: u64, params: &HGParams, prec: u32) -> Result<Scaled> {
    let j = (x / params.p.get()) as usize;
    let a1 = hypergeometric_scaled(&params.params_at_level(1), params.p, j + 1, prec)?[j];
    Ok(a1 * braced_scaled(&params.a, x, params.p, prec)?.pow(params.s))
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

    #[test]
    fn witness_selection() {
        assert_eq!(InterpPoint::new(RationalParam::zero(), p(3), 2).unwrap().k_witness, 9);
        assert_eq!(InterpPoint::new(r(1, 2), p(3), 2).unwrap().k_witness, 5);
        assert_eq!(InterpPoint::new(RationalParam::integer(-2), p(5), 1).unwrap().k_witness, 3);
    }

    #[test]
    fn beta_at_units() {
        let hp = HGParams::new(r(1, 3), 2, p(5)).unwrap();
        let frob = FrobeniusSpec::sigma(RationalParam::integer(6));
        for b in [1i64, 2, 7, -3] {
            let beta = beta_at(&RationalParam::integer(b), &hp, &frob, 2, false).unwrap();
            assert_eq!(beta, r(1, b).embed(p(5), 2).unwrap());
            let lam = RationalParam::integer(-b) - hp.a;
            let bh = beta_at(&lam, &hp, &frob.flipped(), 2, true).unwrap();
            assert_eq!(bh, r(-1, b).embed(p(5), 2).unwrap());
        }
    }

    #[test]
    fn beta_zero_trivial_case() {
        let hp = HGParams::new(RationalParam::one(), 1, p(3)).unwrap();
        let b = beta_at(&RationalParam::zero(), &hp, &FrobeniusSpec::identity(), 2, false).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn ratio_identity_hand_value() {
        let hp = HGParams::new(r(1, 2), 1, p(3)).unwrap();
        let (lhs, rhs) = ratio_identity_sides(3, &hp, 4).unwrap();
        assert_eq!(lhs, rhs);
        // A^{(1)}_1 / A_3 = 8/5 = {1}_3 / {1/2}_3
        let a3 = hypergeometric_scaled(&[r(1, 2)], p(3), 4, 4).unwrap()[3];
        let ratio = Scaled::from_rational(&r(1, 2), p(3), 4).unwrap() / a3;
        assert_eq!(ratio, Scaled::from_rational(&r(8, 5), p(3), 4).unwrap());
        let braced = braced_scaled(&RationalParam::one(), 3, p(3), 4).unwrap() / braced_scaled(&r(1, 2), 3, p(3), 4).unwrap();
        assert_eq!(braced, ratio);
        assert!(ratio_identity_check(3, &hp));
        let hp2 = HGParams::new(r(1, 2), 2, p(3)).unwrap();
        assert!(ratio_identity_check(3, &hp2));
    }

    #[test]
    fn ratio_identity_small_range() {
        for (a, q) in [(RationalParam::one(), 3), (r(1, 2), 3), (r(2, 3), 5), (r(1, 3), 2)] {
            let hp = HGParams::new(a, 1, p(q)).unwrap();
            assert!((0..40).all(|x| ratio_identity_check(x, &hp)), "a={a} p={q}");
        }
    }
}
