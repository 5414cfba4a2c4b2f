use serde::Serialize;

use super::{Prime, RationalParam};
use crate::error::Result;

/// The Dwork-prime orbit `a, a', a'', …` of a parameter, with the digits and
/// sign exponent derived from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DworkChain {
    pub a: RationalParam,
    pub p: Prime,
    /// `l ∈ [0, p)` with `a + l ≡ 0 (mod p)`.
    pub l: u64,
    /// `l' ∈ [0, q)` with `a + l' ≡ 0 (mod q)`.
    pub l_prime: u64,
    pub q: u64,
    /// `l' - ⌊l'/p⌋`.
    pub e: u64,
    /// `a^(0), a^(1), …` up to the step limit.
    pub chain: Vec<RationalParam>,
    /// `l_i` for each `a^(i)` in `chain`.
    pub digits: Vec<u64>,
    /// Smallest `r ≥ 1` with `a^(r) = a`, if found.
    pub period: Option<usize>,
}

/// `(a + l) / p`.
pub fn dwork_prime(a: &RationalParam, p: Prime) -> RationalParam {
    let l = a.neg_residue(p.get());
    (*a + l as i64) / p.get() as i64
}

pub fn dwork_chain(a: &RationalParam, p: Prime, max_steps: usize) -> Result<DworkChain> {
    a.check_embeddable(p)?;
    let q = p.q();
    let l = a.neg_residue(p.get());
    let l_prime = a.neg_residue(q);
    let e = l_prime - l_prime / p.get();

    let mut chain = vec![*a];
    let mut digits = vec![l];
    let mut period = None;
    for step in 1..=max_steps {
        let next = dwork_prime(chain.last().unwrap(), p);
        if period.is_none() && next == *a {
            period = Some(step);
        }
        digits.push(next.neg_residue(p.get()));
        chain.push(next);
    }
    Ok(DworkChain { a: *a, p, l, l_prime, q, e, chain, digits, period })
}

impl DworkChain {
    /// `a^(i)`, extending past the stored prefix if needed.
    pub fn nth(&self, i: usize) -> RationalParam {
        if let Some(x) = self.chain.get(i) {
            return *x;
        }
        let mut x = *self.chain.last().unwrap();
        for _ in self.chain.len() - 1..i {
            x = dwork_prime(&x, self.p);
        }
        x
    }

    pub fn dwork_prime(&self) -> RationalParam {
        self.nth(1)
    }
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
    fn chain_examples() {
        let c = dwork_chain(&RationalParam::one(), p(2), 4).unwrap();
        assert_eq!((c.l, c.dwork_prime(), c.period), (1, RationalParam::one(), Some(1)));
        assert_eq!((c.l_prime, c.q, c.e), (3, 4, 2));

        let c = dwork_chain(&r(1, 2), p(3), 4).unwrap();
        assert_eq!((c.l, c.dwork_prime(), c.period, c.l_prime, c.e), (1, r(1, 2), Some(1), 1, 1));

        let c = dwork_chain(&r(2, 3), p(5), 4).unwrap();
        assert_eq!(c.l, 1);
        assert_eq!(&c.chain[..3], &[r(2, 3), r(1, 3), r(2, 3)]);
        assert_eq!(c.period, Some(2));
        assert_eq!(c.digits[1], 3);
    }

    #[test]
    fn chain_without_period() {
        let c = dwork_chain(&RationalParam::integer(2), p(5), 6).unwrap();
        assert_eq!(c.l, 3);
        assert_eq!(c.dwork_prime(), RationalParam::one());
        assert_eq!(c.period, None);
        assert_eq!(c.nth(10), RationalParam::one());
    }

    #[test]
    fn rejects_bad_denominator() {
        assert!(dwork_chain(&r(1, 3), p(3), 2).is_err());
    }
}
