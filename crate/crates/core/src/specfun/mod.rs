//! Special functions used by the series engine, the oracle, and the
//! closed-form references.

mod bessel;
mod elliptic;
pub(crate) mod gamma;
mod hypergeometric;
mod scaled;
mod signed;
mod struve;

pub use bessel::{bessel_i0, bessel_i0_scaled, bessel_j, bessel_y0};
pub use elliptic::{elliptic_e, elliptic_k};
pub use gamma::{gamma_signed, log_gamma, reciprocal_gamma, sin_pi};
pub use hypergeometric::{appell_f4, gauss_2f1};
pub use scaled::{gamma_half_integer, recip_gamma_half_integer, ScaledFloat};
pub use signed::SignedLogValue;
pub use struve::{struve_h0, struve_minus_y0, struve_minus_y0_integral, struve_optimal_terms};
