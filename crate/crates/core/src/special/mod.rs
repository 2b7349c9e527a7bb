//! Complex Γ, ψ and the Gauss hypergeometric function ₂F₁.

mod gamma;
mod hypergeometric;

pub use gamma::{digamma, gamma, gamma_real, rgamma};
pub use hypergeometric::{f21, f21_limit_z1, f21_with_complement, HypParams, LimitClass};
