//! Double-precision special functions and quadrature used by the numeric checks.

mod gamma;
mod hurwitz;
mod quad;

pub use gamma::gamma;
pub use hurwitz::{hurwitz_zeta, zeta};
pub use quad::{exp_sinh, tanh_sinh, QuadratureError, QuadratureResult};
