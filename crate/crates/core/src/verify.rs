//! Finite congruence checks. Each checker evaluates one statement at a fixed
//! modulus and reports the first index where it breaks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyper::{
    b0_constant, b_coefficients, bhat_coefficients, coefficient_ratio, dwork_truncation_pair, hat_series,
    hypergeometric_coefficients, log_type_series, FrobeniusSpec, HGParams,
};
use crate::interp::{beta_at, ratio_identity_check};
use crate::padic::{braced_product, dwork_prime, iwasawa_log, PadicApprox, Prime, RationalParam};
use crate::series::{frobenius_substitute, LaurentPoly, TruncSeries};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub a: String,
    pub s: u32,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<(i64, i64)>,
}

impl ReportParams {
    pub fn of(params: &HGParams) -> Self {
        ReportParams { a: params.a.to_string(), s: params.s, p: params.p.get(), ..Default::default() }
    }

    fn n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    fn c(mut self, frob: &FrobeniusSpec) -> Self {
        self.c = Some(frob.c.to_string());
        self
    }

    fn range(mut self, lo: i64, hi: i64) -> Self {
        self.range = Some((lo, hi));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub indices: Vec<i64>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: ReportParams,
    pub passed: bool,
    pub first_failure: Option<Failure>,
    /// Fitted `ε` of the transformation check, relative to the raw cross-multiplied form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    /// `ε·(-1)^{sl}`: the sign `±` in `𝓕^Dw(t) = ±((-1)^s t)^l 𝓕^Dw(t^{-1})`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_sign: Option<i8>,
    pub modulus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckReport {
    fn new(check: &str, params: ReportParams, p: Prime, n: u32, failure: Option<Failure>) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            passed: failure.is_none(),
            first_failure: failure,
            sign: None,
            relative_sign: None,
            modulus: format!("{}^{}", p, n),
            error: None,
        }
    }

    /// A failed report for a check that could not be evaluated.
    pub fn errored(check: &str, params: ReportParams, err: &Error) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            passed: false,
            first_failure: None,
            sign: None,
            relative_sign: None,
            modulus: String::new(),
            error: Some(err.to_string()),
        }
    }

    /// Folds a sweep into one report: the first failure if any, else `ok`.
    pub fn combine(ok: CheckReport, sweep: impl IntoIterator<Item = CheckReport>) -> CheckReport {
        sweep.into_iter().find(|r| !r.passed).unwrap_or(ok)
    }
}

fn failure(indices: Vec<i64>, left: &PadicApprox, right: &PadicApprox) -> Option<Failure> {
    Some(Failure { indices, left: left.to_string(), right: right.to_string() })
}

fn series_failure(k: Option<usize>, l: &TruncSeries, r: &TruncSeries) -> Option<Failure> {
    k.and_then(|k| failure(vec![k as i64], &l.coeff(k), &r.coeff(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceKind {
    Dwork,
    Log,
    Hat,
}

/// `f ≡ g / h` in the form `f·[h]_{<p^n} ≡ [f]_{<p^n}·h`, where `f = g/h`
/// is known only through `g` and `h`: checks `g·[h]_{<p^n} ≡ h·[g]_{<p^n}`.
fn cross_check(g: &TruncSeries, h: &TruncSeries, cut: usize, n: u32) -> Result<Option<Failure>> {
    let left = g * &h.truncate_below(cut);
    let right = h * &g.truncate_below(cut);
    Ok(series_failure(left.first_mismatch_mod(&right, n)?, &left, &right))
}

/// Congruence relation `f ≡ [g]_{<p^n} / [h]_{<p^n} (mod p^n)` for the Dwork,
/// log-type and hatted functions, on coefficients `0..order`.
///
/// For `kind = Log` at `p = 2` with `c ∉ 1 + 4Z_2` only `p^{n-1}` is demanded.
pub fn check_congruence_relation(
    kind: CongruenceKind,
    params: &HGParams,
    frob: &FrobeniusSpec,
    n: u32,
    order: usize,
) -> Result<CheckReport> {
    let p = params.p;
    let cut = p.pow_usize(n);
    let mut rp = ReportParams::of(params).n(n).range(0, order as i64 - 1);
    let (modulus, fail) = match kind {
        CongruenceKind::Dwork => {
            return check_dwork_congruence_tuple(&params.params_at_level(0), p, n, order).map(|mut r| {
                r.params.a = params.a.to_string();
                r.params.s = params.s;
                r
            })
        }
        CongruenceKind::Log => {
            rp = rp.c(frob);
            let weak = !frob.in_one_plus_q(p);
            let m = if weak { n.saturating_sub(1) } else { n };
            let (g, f) = log_type_series(params, frob, order, n)?;
            (m, cross_check(&g, &f, cut, m)?)
        }
        CongruenceKind::Hat => {
            rp = rp.c(frob);
            let (g, f) = hat_series(params, frob, order, n)?;
            (n, cross_check(&g, &f, cut, n)?)
        }
    };
    let name = match kind {
        CongruenceKind::Dwork => unreachable!(),
        CongruenceKind::Log => "log",
        CongruenceKind::Hat => "hat",
    };
    Ok(CheckReport::new(name, rp, p, modulus, fail))
}

/// Dwork's congruence `F_a(t)·[F_{a'}(t^p)]_{<p^n} ≡ [F_a(t)]_{<p^n}·F_{a'}(t^p)`
/// for arbitrary `(a_1, …, a_s)`.
pub fn check_dwork_congruence_tuple(a: &[RationalParam], p: Prime, n: u32, order: usize) -> Result<CheckReport> {
    let primes: Vec<RationalParam> = a.iter().map(|x| dwork_prime(x, p)).collect();
    let f = TruncSeries::new(p, hypergeometric_coefficients(a, p, order, n)?);
    let f1 = TruncSeries::new(p, hypergeometric_coefficients(&primes, p, order.div_ceil(p.get() as usize), n)?);
    let f1p = frobenius_substitute(&f1, &FrobeniusSpec::identity(), order)?;
    let fail = cross_check(&f, &f1p, p.pow_usize(n), n)?;
    let names: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    let rp = ReportParams {
        a: names.join(","),
        s: a.len() as u32,
        p: p.get(),
        n: Some(n),
        range: Some((0, order as i64 - 1)),
        ..Default::default()
    };
    Ok(CheckReport::new("dwork", rp, p, n, fail))
}

/// The two sides `t^{p-1-l}·P·revQ` and `revP·Q(t^p)` of the truncated
/// transformation formula, with `revP = t^{p^n-1}P(1/t)` and
/// `revQ = t^{p^n-p}Q(1/t^p)`.
pub fn transformation_sides(params: &HGParams, n: u32) -> Result<(LaurentPoly, LaurentPoly)> {
    let p = params.p;
    let pn = p.pow(n)? as i64;
    let pu = p.get() as usize;
    let (big, small) = dwork_truncation_pair(params, n, n)?;
    let (pl, ql) = (big.to_laurent(), small.to_laurent());
    let rev_p = pl.reverse().shift(pn - 1);
    let rev_q = ql.reverse().substitute_power(pu).shift(pn - p.get() as i64);
    let left = (&pl * &rev_q).shift(p.get() as i64 - 1 - params.l() as i64);
    let right = &rev_p * &ql.substitute_power(pu);
    Ok((left, right))
}

/// `t^{p-1-l}·P(t)·revQ(t) ≡ ε·revP(t)·Q(t^p) (mod p^n)` with `ε` fitted at the
/// lowest degree where either side is a unit, then checked at every degree.
/// For odd `p` the fitted sign must also equal `(-1)^{sl}`.
pub fn check_dwork_transformation(params: &HGParams, n: u32) -> Result<CheckReport> {
    let p = params.p;
    let (left, right) = transformation_sides(params, n)?;
    let lo = left.min_deg().min(right.min_deg());
    let hi = left.max_deg().max(right.max_deg());
    let d = (lo..=hi)
        .find(|&d| left.coeff(d).is_unit() || right.coeff(d).is_unit())
        .ok_or(Error::NoUnitCoefficient)?;
    let (l0, r0) = (left.coeff(d), right.coeff(d));
    let eps: i8 = if l0.eq_mod(&r0, n)? {
        1
    } else if l0.eq_mod(&-r0, n)? {
        -1
    } else {
        0
    };
    let sl = params.s as u64 * params.l();
    let expected: i8 = if sl.is_multiple_of(2) { 1 } else { -1 };
    let rp = ReportParams::of(params).n(n).range(lo, hi);
    let mut fail = if eps == 0 {
        failure(vec![d], &l0, &r0)
    } else {
        let scaled = if eps == 1 { right.clone() } else { -&right };
        left.first_mismatch_mod(&scaled, n)?
            .and_then(|k| failure(vec![k], &left.coeff(k), &scaled.coeff(k)))
    };
    if fail.is_none() && p.get() != 2 && eps != expected {
        fail = failure(vec![d], &l0, &r0);
    }
    let mut report = CheckReport::new("dwork-transform", rp, p, n, fail);
    if eps != 0 {
        report.sign = Some(eps);
        report.relative_sign = Some(eps * expected);
    }
    Ok(report)
}

fn braced_ratio(x: u64, params: &HGParams, n: u32) -> Result<PadicApprox> {
    let p = params.p;
    let q = p.q();
    let lx = x % q;
    let f = lx - lx / p.get();
    let v = braced_product(&RationalParam::one(), x, p, n)? * braced_product(&params.a, x, p, n)?.inverse()?;
    Ok(if f.is_multiple_of(2) { v } else { -v })
}

/// `(-1)^{f_x}{1}_x/{a}_x ≡ (-1)^{f_y}{1}_y/{a}_y (mod p^n)` whenever
/// `x + y + a ≡ 0 (mod p^n)`, with `f_x = ℓ_x - ⌊ℓ_x/p⌋` and `ℓ_x = x mod q`.
pub fn check_braced_congruence(params: &HGParams, x: u64, y: u64, n: u32) -> Result<CheckReport> {
    let p = params.p;
    let sum = params.a + (x + y) as i64;
    if sum.valuation(p).is_some_and(|v| v < n as i64) {
        return Err(Error::PreconditionViolated(format!("v_{p}({sum}) < {n}")));
    }
    let left = braced_ratio(x, params, n)?;
    let right = braced_ratio(y, params, n)?;
    let fail = if left.eq_mod(&right, n)? { None } else { failure(vec![x as i64, y as i64], &left, &right) };
    let rp = ReportParams::of(params).n(n);
    Ok(CheckReport::new("braced", rp, p, n, fail))
}

/// Every pair `x, y ≤ bound` with `v_p(x + y + a) ≥ n`.
pub fn check_braced_sweep(params: &HGParams, n: u32, bound: u64) -> Result<CheckReport> {
    let p = params.p;
    let rp = ReportParams::of(params).n(n).range(0, bound as i64);
    let ratios = (0..=bound).map(|x| braced_ratio(x, params, n)).collect::<Result<Vec<_>>>()?;
    let pn = p.pow(n)?;
    // x + y ≡ -a (mod p^n) pins y modulo p^n
    let target = (-params.a).embed(p, n)?.residue();
    for x in 0..=bound {
        let first = (target + pn - x % pn) % pn;
        for y in (first..=bound).step_by(pn as usize) {
            let (l, r) = (&ratios[x as usize], &ratios[y as usize]);
            if !l.eq_mod(r, n)? {
                return Ok(CheckReport::new("braced", rp, p, n, failure(vec![x as i64, y as i64], l, r)));
            }
        }
    }
    Ok(CheckReport::new("braced", rp, p, n, None))
}

/// `β_λ + β̂_{-λ-a} ≡ 0 (mod p^n)` with `β` from `σ(t) = ct^p` and `β̂` from
/// `σ̂(t) = c^{-1}t^p`.
pub fn check_beta_pairing(lambda: &RationalParam, params: &HGParams, c: &RationalParam, n: u32) -> Result<CheckReport> {
    let p = params.p;
    let sigma = FrobeniusSpec::sigma(*c);
    let mu = -*lambda - params.a;
    let beta = beta_at(lambda, params, &sigma, n, false)?;
    let beta_hat = beta_at(&mu, params, &sigma.flipped(), n, true)?;
    let fail = if (beta + beta_hat).eq_mod(&PadicApprox::zero(p, n), n)? {
        None
    } else {
        failure(vec![], &beta, &-beta_hat)
    };
    let mut rp = ReportParams::of(params).n(n).c(&sigma);
    rp.range = None;
    let mut report = CheckReport::new("beta-pairing", rp, p, n, fail);
    report.params.a = format!("{} (lambda={})", params.a, lambda);
    Ok(report)
}

/// `S_1 - S_2` for the sums of `A_i A_{p^n-j-1}` over `i + j = m`, split by
/// `i ≡ k` versus `p^n - j - 1 ≡ -k - a` modulo `p^{n-d}`.
pub fn section_difference(params: &HGParams, n: u32, d: u32, k: u64, m: u64) -> Result<PadicApprox> {
    let p = params.p;
    let pn = p.pow(n)?;
    if d > n || m >= pn || k >= p.pow(n - d)? {
        return Err(Error::PreconditionViolated(format!("n={n} d={d} k={k} m={m}")));
    }
    let prec = d + 1;
    let coeffs = hypergeometric_coefficients(&params.params_at_level(0), p, pn as usize, prec)?;
    let class = p.pow(n - d)?;
    let mut s = PadicApprox::zero(p, prec);
    for j in 0..=m {
        let i = m - j;
        let term = coeffs[i as usize] * coeffs[(pn - j - 1) as usize];
        if i % class == k {
            s = s + term;
        }
        let r = params.a + (pn - j - 1 + k) as i64;
        if r.valuation(p).is_none_or(|v| v >= (n - d) as i64) {
            s = s - term;
        }
    }
    Ok(s)
}

pub fn check_section_congruence(params: &HGParams, n: u32, d: u32, k: u64, m: u64) -> Result<CheckReport> {
    let p = params.p;
    let diff = section_difference(params, n, d, k, m)?;
    let zero = PadicApprox::zero(p, d + 1);
    let fail = if diff.eq_mod(&zero, d + 1)? { None } else { failure(vec![m as i64, k as i64, d as i64], &diff, &zero) };
    let mut rp = ReportParams::of(params).n(n);
    rp.d = Some(d);
    Ok(CheckReport::new("section", rp, p, d + 1, fail))
}

/// Every `m < p^n`, `d ≤ n`, `k < p^{n-d}`.
pub fn check_section_sweep(params: &HGParams, n: u32) -> Result<CheckReport> {
    let p = params.p;
    let pn = p.pow(n)?;
    let mut reports = Vec::new();
    for d in 0..=n {
        for k in 0..p.pow(n - d)? {
            for m in 0..pn {
                reports.push(check_section_congruence(params, n, d, k, m)?);
            }
        }
    }
    let ok = CheckReport::new("section", ReportParams::of(params).n(n).range(0, pn as i64 - 1), p, n + 1, None);
    Ok(CheckReport::combine(ok, reports))
}

/// For `m ∈ [0, 2(p^n-1)]`: `Σ_{i+j=m} B_i A_{p^n-j-1} + B̂_{p^n-j-1} A_i`, or
/// with `B` and `B̂` interchanged when `swapped`.
pub fn main_congruence_residues(params: &HGParams, c: &RationalParam, n: u32, swapped: bool) -> Result<Vec<PadicApprox>> {
    let p = params.p;
    let pn = p.pow_usize(n);
    let sigma = FrobeniusSpec::sigma(*c);
    let b = b_coefficients(params, &sigma, pn, n)?.values;
    let bh = bhat_coefficients(params, &sigma.flipped(), pn, n)?.values;
    let a = hypergeometric_coefficients(&params.params_at_level(0), p, pn, n)?;
    let (x, y) = if swapped { (&bh, &b) } else { (&b, &bh) };
    let top = 2 * (pn - 1);
    Ok((0..=top)
        .map(|m| {
            let lo = m.saturating_sub(pn - 1);
            let hi = m.min(pn - 1);
            (lo..=hi)
                .map(|i| {
                    let j = m - i;
                    x[i] * a[pn - j - 1] + y[pn - j - 1] * a[i]
                })
                .sum()
        })
        .collect())
}

/// `[G]_{<p^n}·revF + revĜ·[F]_{<p^n}` as a polynomial, where
/// `rev f = t^{p^n-1} f(1/t)`; the main congruence says it vanishes mod `p^n`.
pub fn main_congruence_laurent(params: &HGParams, c: &RationalParam, n: u32) -> Result<LaurentPoly> {
    let pn = params.p.pow(n)? as i64;
    let sigma = FrobeniusSpec::sigma(*c);
    let (g, f) = log_type_series(params, &sigma, pn as usize, n)?;
    let (gh, _) = hat_series(params, &sigma.flipped(), pn as usize, n)?;
    let rev = |s: &TruncSeries| s.to_laurent().reverse().shift(pn - 1);
    let (g, f, gh) = (g.to_laurent(), f.to_laurent(), gh);
    Ok(&(&g * &rev(&TruncSeries::new(params.p, f.coeffs().to_vec()))) + &(&rev(&gh) * &f))
}

pub fn check_main_congruence(params: &HGParams, c: &RationalParam, n: u32) -> Result<CheckReport> {
    let p = params.p;
    FrobeniusSpec::sigma(*c).require_one_plus_q(p)?;
    let sums = main_congruence_residues(params, c, n, false)?;
    let fail = sums.iter().enumerate().find_map(|(m, v)| match v.eq_mod(&PadicApprox::zero(p, n), n) {
        Ok(true) => None,
        _ => failure(vec![m as i64], v, &PadicApprox::zero(p, n)),
    });
    let rp = ReportParams::of(params).n(n).c(&FrobeniusSpec::sigma(*c)).range(0, sums.len() as i64 - 1);
    Ok(CheckReport::new("main-congruence", rp, p, n, fail))
}

/// Every `B_k` (`1 ≤ k < count`) under `frob` and every `B̂_k` (`k < count`)
/// under `frob` and its flip is a `p`-adic integer.
pub fn check_integrality(params: &HGParams, frob: &FrobeniusSpec, count: usize, prec: u32) -> Result<CheckReport> {
    let p = params.p;
    let rp = ReportParams::of(params).c(frob).range(0, count as i64 - 1);
    let mut fail = None;
    let attempts: [(&str, Result<_>); 3] = [
        ("B", b_coefficients(params, frob, count, prec)),
        ("Bhat", bhat_coefficients(params, frob, count, prec)),
        ("Bhat", bhat_coefficients(params, &frob.flipped(), count, prec)),
    ];
    for (kind, res) in attempts {
        match res {
            Ok(_) => {}
            Err(e @ (Error::NotDivisible { .. } | Error::NotIntegral(_))) => {
                fail = Some(Failure { indices: vec![], left: kind.to_string(), right: e.to_string() });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CheckReport::new("integrality", rp, p, prec, fail))
}

/// `B_k/A_k ≡ B_{k'}/A_{k'}` and `B̂_k/A_k ≡ B̂_{k'}/A_{k'}` modulo `p^n` for
/// all `k ≡ k' (mod p^n)` up to `bound`.
pub fn check_interpolation(params: &HGParams, frob: &FrobeniusSpec, n: u32, bound: usize) -> Result<CheckReport> {
    let p = params.p;
    let pn = p.pow_usize(n);
    let rp = ReportParams::of(params).n(n).c(frob).range(0, bound as i64);
    for hat in [false, true] {
        let ratios = (0..=bound).map(|k| coefficient_ratio(params, frob, k, hat, n)).collect::<Result<Vec<_>>>()?;
        for k in 0..=bound {
            for k2 in (k + pn..=bound).step_by(pn) {
                if !ratios[k].eq_mod(&ratios[k2], n)? {
                    let sign = if hat { -1 } else { 1 };
                    let f = failure(vec![sign * k as i64, sign * k2 as i64], &ratios[k], &ratios[k2]);
                    return Ok(CheckReport::new("interpolation", rp, p, n, f));
                }
            }
        }
    }
    Ok(CheckReport::new("interpolation", rp, p, n, None))
}

pub fn check_ratio_identity(params: &HGParams, bound: u64) -> CheckReport {
    let fail = (0..=bound).find(|&x| !ratio_identity_check(x, params)).map(|x| Failure {
        indices: vec![x as i64],
        left: "A_x {1}_x^s".into(),
        right: "{a}_x^s p^(s(m-j)) ((a')_m/j!)^s".into(),
    });
    let rp = ReportParams::of(params).range(0, bound as i64);
    CheckReport::new("ratio-identity", rp, params.p, 0, fail)
}

/// `B_0(c) - B_0(1) ≡ -p^{-1} log(c) (mod p^N)`.
pub fn check_b0_log(params: &HGParams, c: &RationalParam, prec: u32) -> Result<CheckReport> {
    let p = params.p;
    let sigma = FrobeniusSpec::sigma(*c);
    let diff = b0_constant(params, &sigma, prec)? - b0_constant(params, &FrobeniusSpec::identity(), prec)?;
    let log = iwasawa_log(&c.embed(p, prec + 1)?)?;
    let expected = -log.exact_div_rational(&RationalParam::integer(p.get() as i64))?;
    let fail = if diff.eq_mod(&expected, prec)? { None } else { failure(vec![], &diff, &expected) };
    Ok(CheckReport::new("b0", ReportParams::of(params).n(prec).c(&sigma), p, prec, fail))
}
