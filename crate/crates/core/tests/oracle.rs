//! Coefficients against an exact big-rational oracle reduced modulo `p^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use padic_hg::hyper::{
    b_coefficients, bhat_coefficients, dwork_truncation_pair, hypergeometric_coefficients, FrobeniusSpec, HGParams,
};
use padic_hg::padic::{braced_product, iwasawa_log, padic_binomial, pochhammer, PadicApprox, Prime, RationalParam};
use padic_hg::series::TruncSeries;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rp(x: &BigRational) -> RationalParam {
    let n: i64 = x.numer().try_into().unwrap();
    let d: i64 = x.denom().try_into().unwrap();
    RationalParam::new(n, d).unwrap()
}

/// `x mod p^prec` for a rational whose reduced denominator is prime to `p`.
fn reduce(x: &BigRational, p: u64, prec: u32) -> u64 {
    let m = BigInt::from(p).pow(prec);
    let d = x.denom().mod_floor(&m);
    let g = d.extended_gcd(&m);
    assert!(g.gcd.is_one(), "denominator {} not prime to {p}", x.denom());
    let r = (x.numer() * g.x).mod_floor(&m);
    r.try_into().unwrap()
}

fn check(v: &PadicApprox, x: &BigRational, what: &str) {
    let p = v.prime().get();
    assert_eq!(v.residue(), reduce(x, p, v.prec()), "{what}: expected {x}");
}

fn poch(a: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * (a + BigRational::from_integer(i.into())))
}

fn fact(k: usize) -> BigRational {
    poch(&BigRational::one(), k)
}

fn a_coeff(a: &BigRational, s: u32, k: usize) -> BigRational {
    let base = poch(a, k) / fact(k);
    (0..s).fold(BigRational::one(), |acc, _| acc * &base)
}

fn dwork_prime(a: &BigRational, p: u64) -> (BigRational, u64) {
    let l = (0..p).find(|&l| {
        let x = a + BigRational::from_integer(l.into());
        (x.numer() % BigInt::from(p)).is_zero()
    });
    let l = l.unwrap();
    ((a + BigRational::from_integer(l.into())) / BigRational::from_integer(p.into()), l)
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

const GRID: [(i64, i64, u64); 6] = [(1, 2, 3), (1, 3, 5), (2, 3, 5), (1, 5, 2), (1, 4, 3), (2, 1, 5)];

#[test]
fn hypergeometric_coefficients_match() {
    for (n, d, p) in GRID {
        let a = q(n, d);
        for s in 1..=3 {
            let vals = hypergeometric_coefficients(&vec![rp(&a); s as usize], prime(p), 40, 4).unwrap();
            for (k, v) in vals.iter().enumerate() {
                check(v, &a_coeff(&a, s, k), &format!("A_{k} a={a} s={s} p={p}"));
            }
        }
    }
}

#[test]
fn b_coefficients_match() {
    for (n, d, p) in GRID {
        let a = q(n, d);
        let (a1, _) = dwork_prime(&a, p);
        for s in 1..=2 {
            for c in [1i64, 1 + p as i64, 1 + 4 * p as i64] {
                let h = HGParams::new(rp(&a), s, prime(p)).unwrap();
                let table = b_coefficients(&h, &FrobeniusSpec::sigma(RationalParam::integer(c)), 30, 3).unwrap();
                let cq = BigRational::from_integer(c.into());
                for k in 1..30usize {
                    let mut num = a_coeff(&a, s, k);
                    if k % p as usize == 0 {
                        let j = k / p as usize;
                        num -= num_traits::pow(cq.clone(), j) * a_coeff(&a1, s, j);
                    }
                    let b = num / BigRational::from_integer(k.into());
                    check(&table.values[k], &b, &format!("B_{k} a={a} s={s} p={p} c={c}"));
                }
            }
        }
    }
}

#[test]
fn bhat_coefficients_match_untwisted() {
    for (n, d, p) in GRID {
        let a = q(n, d);
        let (a1, l) = dwork_prime(&a, p);
        for s in 1..=2 {
            let h = HGParams::new(rp(&a), s, prime(p)).unwrap();
            let sign = h.hat_sign();
            let table = bhat_coefficients(&h, &FrobeniusSpec::identity(), 30, 3).unwrap();
            for k in 0..30usize {
                let mut num = a_coeff(&a, s, k);
                if k >= l as usize && (k - l as usize).is_multiple_of(p as usize) {
                    num -= BigRational::from_integer(sign.into()) * a_coeff(&a1, s, (k - l as usize) / p as usize);
                }
                let b = num / (&a + BigRational::from_integer(k.into()));
                check(&table.values[k], &b, &format!("Bhat_{k} a={a} s={s} p={p}"));
            }
        }
    }
}

#[test]
fn bhat_with_integer_twist_exponent() {
    // a = 2 at p = 3: (k + a)/p is an integer whenever the second term is present
    let a = q(2, 1);
    let (a1, l) = dwork_prime(&a, 3);
    let h = HGParams::new(rp(&a), 1, prime(3)).unwrap();
    for (frob, cq) in [
        (FrobeniusSpec::sigma(RationalParam::integer(4)), q(4, 1)),
        (FrobeniusSpec::sigma_hat(RationalParam::integer(4)), q(1, 4)),
    ] {
        let table = bhat_coefficients(&h, &frob, 30, 3).unwrap();
        for k in 0..30usize {
            let mut num = a_coeff(&a, 1, k);
            if k >= l as usize && (k - l as usize).is_multiple_of(3) {
                let e = k.div_ceil(3);
                let term = num_traits::pow(cq.clone(), e) * a_coeff(&a1, 1, (k - l as usize) / 3);
                num -= BigRational::from_integer(h.hat_sign().into()) * term;
            }
            let b = num / (&a + BigRational::from_integer(k.into()));
            check(&table.values[k], &b, &format!("Bhat_{k} {frob:?}"));
        }
    }
}

#[test]
fn special_functions_match() {
    for (n, d, p) in GRID {
        let a = q(n, d);
        for k in 0..25usize {
            check(&pochhammer(&rp(&a), k as u64, prime(p), 5).unwrap(), &poch(&a, k), "pochhammer");
            let binom = (0..k).fold(BigRational::one(), |acc, i| acc * (&a - BigRational::from_integer(i.into()))) / fact(k);
            check(&padic_binomial(&rp(&a), k as u64, prime(p), 5).unwrap(), &binom, "binomial");
            let braced = (0..k)
                .map(|i| &a + BigRational::from_integer(i.into()))
                .filter(|x| !(x.numer() % BigInt::from(p)).is_zero())
                .fold(BigRational::one(), |acc, x| acc * x);
            check(&braced_product(&rp(&a), k as u64, prime(p), 5).unwrap(), &braced, "braced");
        }
    }
}

#[test]
fn iwasawa_log_matches_partial_sums() {
    for (c, p) in [(4i64, 3u64), (6, 5), (-2, 3), (5, 2), (13, 3)] {
        let prec = 4;
        let z = q(c - 1, 1);
        // v_p(z^i / i) ≥ i - log_p(i) makes 40 terms far more than enough
        let sum = (1..40usize).fold(BigRational::zero(), |acc, i| {
            let term = num_traits::pow(z.clone(), i) / BigRational::from_integer(i.into());
            if i % 2 == 1 { acc + term } else { acc - term }
        });
        let got = iwasawa_log(&RationalParam::integer(c).embed(prime(p), prec).unwrap()).unwrap();
        check(&got, &sum, &format!("log {c} at {p}"));
    }
}

#[test]
fn dwork_pair_and_series_inverse() {
    let a = q(1, 2);
    let h = HGParams::new(rp(&a), 1, prime(3)).unwrap();
    let (big, small) = dwork_truncation_pair(&h, 2, 3).unwrap();
    assert_eq!((big.order(), small.order()), (9, 3));
    for k in 0..9 {
        check(&big.coeff(k), &a_coeff(&a, 1, k), "P");
    }
    // 1/F_{1/2}(t) = sqrt(1 - t) = 1 - t/2 - t^2/8 - …
    let f = TruncSeries::new(prime(3), hypergeometric_coefficients(&[rp(&a)], prime(3), 3, 3).unwrap());
    let inv = f.inv().unwrap();
    for (k, x) in [q(1, 1), q(-1, 2), q(-1, 8)].iter().enumerate() {
        check(&inv.coeff(k), x, "inverse");
    }
}
