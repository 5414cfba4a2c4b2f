//! Truncated p-adic arithmetic on `Z/p^N`, with valuation and precision
//! tracking, and the number-theoretic primitives built on it.

mod approx;
mod chain;
mod prime;
mod rational;
mod scaled;
mod special;

pub use approx::{PadicApprox, Valuation};
pub use chain::{dwork_chain, dwork_prime, DworkChain};
pub use prime::Prime;
pub use rational::{embed_rational, RationalParam};
pub use scaled::Scaled;
pub use special::{
    binomial_scaled, braced_product, braced_scaled, c_power, c_power_padic, iwasawa_log,
    padic_binomial, pochhammer, pochhammer_scaled,
};
