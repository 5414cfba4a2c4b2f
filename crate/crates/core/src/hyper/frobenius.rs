use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{c_power, PadicApprox, Prime, RationalParam};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `t ↦ c·t^p`
    Sigma,
    /// `t ↦ c^{-1}·t^p`
    SigmaHat,
}

/// A Frobenius lift `t ↦ c^{±1} t^p` on `Z_p[[t]]`; the coefficient ring
/// carries the identity Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FrobeniusSpec {
    pub c: RationalParam,
    pub direction: Direction,
}

impl FrobeniusSpec {
    pub fn sigma(c: RationalParam) -> Self {
        FrobeniusSpec { c, direction: Direction::Sigma }
    }

    pub fn sigma_hat(c: RationalParam) -> Self {
        FrobeniusSpec { c, direction: Direction::SigmaHat }
    }

    /// `t ↦ t^p`.
    pub fn identity() -> Self {
        Self::sigma(RationalParam::one())
    }

    /// The same `c` with the opposite direction.
    pub fn flipped(&self) -> Self {
        let direction = match self.direction {
            Direction::Sigma => Direction::SigmaHat,
            Direction::SigmaHat => Direction::Sigma,
        };
        FrobeniusSpec { c: self.c, direction }
    }

    /// Checks `c ∈ Z_(p)` and `c ≡ 1 (mod p)`.
    pub fn validate(&self, p: Prime) -> Result<()> {
        self.c.check_embeddable(p)?;
        match (self.c - 1).valuation(p) {
            Some(v) if v < 1 => Err(Error::CNotOneModP(self.c.to_string())),
            _ => Ok(()),
        }
    }

    /// Whether `c ∈ 1 + qZ_p` (`q = 4` at `p = 2`).
    pub fn in_one_plus_q(&self, p: Prime) -> bool {
        let need = if p.get() == 2 { 2 } else { 1 };
        self.c.check_embeddable(p).is_ok()
            && (self.c - 1).valuation(p).is_none_or(|v| v >= need)
    }

    pub fn require_one_plus_q(&self, p: Prime) -> Result<()> {
        self.validate(p)?;
        if !self.in_one_plus_q(p) {
            return Err(Error::CNotOneModP(format!("{} (need c ≡ 1 mod {})", self.c, p.q())));
        }
        Ok(())
    }

    /// The constant actually substituted: `c` for σ, `c^{-1}` for σ̂.
    pub fn twist(&self, p: Prime, prec: u32) -> Result<PadicApprox> {
        let c = self.c.embed(p, prec)?;
        match self.direction {
            Direction::Sigma => Ok(c),
            Direction::SigmaHat => c.inverse(),
        }
    }

    /// `twist^α`, i.e. `c^α` for σ and `c^{-α}` for σ̂.
    pub fn twist_power(&self, alpha: &RationalParam, p: Prime, prec: u32) -> Result<PadicApprox> {
        self.validate(p)?;
        let c = self.c.embed(p, prec)?;
        let alpha = match self.direction {
            Direction::Sigma => *alpha,
            Direction::SigmaHat => -*alpha,
        };
        c_power(&c, &alpha, prec)
    }
}
