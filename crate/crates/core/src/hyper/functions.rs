use super::{
    b0_constant, b_guard, bhat_guard, hypergeometric_coefficients, require_prec, FrobeniusSpec, HGParams,
};
use crate::error::{Error, Result};
use crate::padic::{PadicApprox, Prime, RationalParam};
use crate::series::{frobenius_substitute, log_integral, LaurentPoly, TruncSeries};

fn f_series(a: &[RationalParam], p: Prime, order: usize, prec: u32) -> Result<TruncSeries> {
    Ok(TruncSeries::new(p, hypergeometric_coefficients(a, p, order, prec)?))
}

/// `P = [F_a]_{<p^n}` and `Q = [F_{a'}]_{<p^{n-1}}`, so that
/// `𝓕^Dw ≡ P(t)/Q(t^p) (mod p^n)`.
pub fn dwork_truncation_pair(params: &HGParams, n: u32, prec: u32) -> Result<(TruncSeries, TruncSeries)> {
    let a = params.params_at_level(0);
    dwork_truncation_pair_tuple(&a, params.p, n, prec)
}

/// As [`dwork_truncation_pair`] for arbitrary `(a_1, …, a_s)`.
pub fn dwork_truncation_pair_tuple(a: &[RationalParam], p: Prime, n: u32, prec: u32) -> Result<(TruncSeries, TruncSeries)> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be at least 1".into()));
    }
    let primes: Vec<RationalParam> = a.iter().map(|x| crate::padic::dwork_prime(x, p)).collect();
    let big = f_series(a, p, p.pow_usize(n), prec)?;
    let small = f_series(&primes, p, p.pow_usize(n - 1), prec)?;
    Ok((big, small))
}

/// `𝓕^Dw = F_a(t) / F_{a'}(t^p)` to order `order`.
pub fn dwork_function(params: &HGParams, order: usize, prec: u32) -> Result<TruncSeries> {
    let p = params.p;
    let f = f_series(&params.params_at_level(0), p, order, prec)?;
    let f1 = f_series(&params.params_at_level(1), p, order.div_ceil(p.get() as usize), prec)?;
    let denom = frobenius_substitute(&f1, &FrobeniusSpec::identity(), order)?;
    f.div(&denom)
}

/// `(G^(σ), F)` to order `order` modulo `p^prec`, where
/// `G = B_0 + ∫_0^t (F(t) - F_{a'}(t^σ)) dt/t`.
pub fn log_type_series(params: &HGParams, frob: &FrobeniusSpec, order: usize, prec: u32) -> Result<(TruncSeries, TruncSeries)> {
    frob.validate(params.p)?;
    let p = params.p;
    let w = prec + b_guard(params, order);
    require_prec(p, w)?;
    let f = f_series(&params.params_at_level(0), p, order, w)?;
    let f1 = f_series(&params.params_at_level(1), p, order.div_ceil(p.get() as usize), w)?;
    let diff = &f - &frobenius_substitute(&f1, frob, order)?;
    let mut coeffs = log_integral(&diff, None)?.reduce(prec)?.into_coeffs();
    if let Some(c0) = coeffs.first_mut() {
        *c0 = b0_constant(params, frob, prec)?;
    }
    Ok((TruncSeries::new(p, coeffs), f.reduce(prec)?))
}

/// `𝓕^(σ) = G^(σ) / F`.
pub fn log_type_function(params: &HGParams, frob: &FrobeniusSpec, order: usize, prec: u32) -> Result<TruncSeries> {
    let (g, f) = log_type_series(params, frob, order, prec)?;
    g.div(&f)
}

/// `(Ĝ^(σ), F)` to order `order` modulo `p^prec`, where
/// `Ĝ = t^{-a}∫_0^t (t^a F - (-1)^{se}[t^{a'} F_{a'}]^σ) dt/t`.
///
/// `[t^{a'} F_{a'}]^σ = c^{a'} t^{a+l} F_{a'}(c t^p)`, so after pulling out
/// `t^a` the integrand is `F - (-1)^{se} c^{a'} t^l F_{a'}(t^σ)` and the
/// twisted integral divides the `k`-th coefficient by `k + a`.
pub fn hat_series(params: &HGParams, frob: &FrobeniusSpec, order: usize, prec: u32) -> Result<(TruncSeries, TruncSeries)> {
    frob.validate(params.p)?;
    let p = params.p;
    let w = prec + bhat_guard(params, order);
    require_prec(p, w)?;
    let l = params.l() as usize;
    let f = f_series(&params.params_at_level(0), p, order, w)?;
    let f1 = f_series(&params.params_at_level(1), p, order.div_ceil(p.get() as usize), w)?;
    let twisted = frobenius_substitute(&f1, frob, order.saturating_sub(l))?;
    let mut scale = frob.twist_power(&params.a_prime(), p, w)?;
    if params.hat_sign() == -1 {
        scale = -scale;
    }
    let second = twisted.scale(&scale).shift(l).with_order(order);
    let second = if second.order() < order {
        // order ≤ l: the shifted term contributes nothing below t^order
        TruncSeries::zero(p, order, w)
    } else {
        second
    };
    let integrand = &f - &second;
    let g = log_integral(&integrand, Some(&params.a))?.reduce(prec)?;
    Ok((g, f.reduce(prec)?))
}

/// `𝓕̂^(σ) = Ĝ^(σ) / F`.
pub fn hat_function(params: &HGParams, frob: &FrobeniusSpec, order: usize, prec: u32) -> Result<TruncSeries> {
    let (g, f) = hat_series(params, frob, order, prec)?;
    g.div(&f)
}

/// `h(t) = Π_{i<r} [F_{a^(i)}]_{<p}` over one period `r` of the Dwork chain.
pub fn compute_h(params: &HGParams, prec: u32) -> Result<TruncSeries> {
    let p = params.p;
    let r = params.chain.period.ok_or_else(|| Error::NoPeriod(params.a.to_string()))?;
    let mut h = LaurentPoly::monomial(0, PadicApprox::one(p, prec));
    for i in 0..r {
        let factor = f_series(&params.params_at_level(i), p, p.get() as usize, prec)?;
        h = &h * &factor.to_laurent();
    }
    Ok(TruncSeries::new(p, h.coeffs().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{b_coefficients, bhat_coefficients};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn r(n: i64, d: i64) -> RationalParam {
        RationalParam::new(n, d).unwrap()
    }

    #[test]
    fn dwork_pair_examples() {
        let hp = HGParams::new(RationalParam::one(), 1, p(2)).unwrap();
        let (big, small) = dwork_truncation_pair(&hp, 1, 4).unwrap();
        assert_eq!(big, TruncSeries::from_ints(&[1, 1], p(2), 4).unwrap());
        assert_eq!(small, TruncSeries::from_ints(&[1], p(2), 4).unwrap());
        let dw = dwork_function(&hp, 8, 6).unwrap();
        assert_eq!(dw, TruncSeries::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0], p(2), 6).unwrap());

        let hp = HGParams::new(RationalParam::one(), 2, p(3)).unwrap();
        let (big, small) = dwork_truncation_pair(&hp, 2, 2).unwrap();
        assert_eq!((big.order(), small.order()), (9, 3));
        assert!(big.coeffs().iter().chain(small.coeffs()).all(|c| c.residue() == 1));

        let hp = HGParams::new(r(1, 2), 1, p(3)).unwrap();
        let (big, small) = dwork_truncation_pair(&hp, 1, 3).unwrap();
        assert_eq!(big, TruncSeries::from_rationals(&[r(1, 1), r(1, 2), r(3, 8)], p(3), 3).unwrap());
        assert_eq!(small.order(), 1);
    }

    #[test]
    fn log_series_matches_table() {
        let hp = HGParams::new(r(1, 2), 2, p(3)).unwrap();
        let frob = FrobeniusSpec::sigma(RationalParam::integer(4));
        let (g, _) = log_type_series(&hp, &frob, 20, 3).unwrap();
        let table = b_coefficients(&hp, &frob, 20, 3).unwrap();
        assert_eq!(g.coeffs(), &table.values[..]);
        let fs = log_type_function(&hp, &frob, 20, 3).unwrap();
        assert_eq!(fs.coeff(0), table.values[0]);
    }

    #[test]
    fn log_series_closed_form() {
        let hp = HGParams::new(RationalParam::one(), 1, p(3)).unwrap();
        let (g, _) = log_type_series(&hp, &FrobeniusSpec::identity(), 12, 2).unwrap();
        for k in 0..12 {
            let expected = if k % 3 == 0 { RationalParam::zero() } else { r(1, k as i64) };
            assert_eq!(g.coeff(k), expected.embed(p(3), 2).unwrap());
        }
    }

    #[test]
    fn hat_series_routes_agree() {
        for (a, s, q, c) in [(r(1, 2), 1, 3, 4), (r(1, 2), 2, 3, 1), (r(1, 3), 2, 5, 6), (r(1, 3), 1, 2, 5)] {
            let hp = HGParams::new(a, s, p(q)).unwrap();
            for frob in [FrobeniusSpec::sigma(c.into()), FrobeniusSpec::sigma_hat(c.into())] {
                let (g, _) = hat_series(&hp, &frob, 10, 3).unwrap();
                let table = bhat_coefficients(&hp, &frob, 10, 3).unwrap();
                assert_eq!(g.coeffs(), &table.values[..], "a={a} s={s} p={q} {frob:?}");
            }
        }
    }

    #[test]
    fn hat_constant_term() {
        let hp = HGParams::new(r(1, 3), 1, p(5)).unwrap();
        let fh = hat_function(&hp, &FrobeniusSpec::identity(), 4, 3).unwrap();
        assert_eq!(fh.coeff(0), RationalParam::integer(3).embed(p(5), 3).unwrap());
        let hp = HGParams::new(RationalParam::one(), 1, p(3)).unwrap();
        let (g, _) = hat_series(&hp, &FrobeniusSpec::identity(), 3, 2).unwrap();
        assert!(g.coeff(2).is_zero());
    }

    #[test]
    fn h_polynomials() {
        let hp = HGParams::new(RationalParam::one(), 1, p(3)).unwrap();
        assert_eq!(compute_h(&hp, 3).unwrap(), TruncSeries::from_ints(&[1, 1, 1], p(3), 3).unwrap());
        let hp = HGParams::new(r(1, 2), 1, p(3)).unwrap();
        let expected = TruncSeries::from_rationals(&[r(1, 1), r(1, 2), r(3, 8)], p(3), 3).unwrap();
        assert_eq!(compute_h(&hp, 3).unwrap(), expected);
        let hp = HGParams::new(r(2, 3), 1, p(5)).unwrap();
        let h = compute_h(&hp, 3).unwrap();
        assert_eq!(h.order(), 9);
        let hp = HGParams::new(RationalParam::integer(2), 1, p(5)).unwrap();
        assert!(matches!(compute_h(&hp, 3), Err(Error::NoPeriod(_))));
    }
}
