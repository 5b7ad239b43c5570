//! Contour-integral solutions of quarter-plane initial-boundary-value
//! problems for the heat equation `u_t = u_xx` and the linear KdV equation
//! `u_t + u_xxx = f`, together with generators of non-uniqueness witnesses
//! and sampled checks of the hypotheses under which solutions are unique.
//!
//! Layout:
//!
//! * [`contour`]: spectral-plane paths and the adaptive quadrature engine.
//! * [`transforms`]: half-line data and their spectral transforms.
//! * [`heat`], [`kdv`]: solution formulas and the two worked examples.
//! * [`nonuniq`]: certified witnesses `u_n = ∂ⁿv/∂tⁿ` for zero data.
//! * [`verify`]: residuals, boundary traces, corner compatibility, decay,
//!   and the `L²` integrability exponent.
//! * [`oracle`]: closed forms (erfc, Gauss kernel, Airy) that never touch
//!   the contour engine.

pub(crate) mod cmath;
pub mod contour;
pub mod dispersion;
pub mod error;
pub mod evaluation;
pub mod expr;
pub mod heat;
pub mod kdv;
pub mod nonuniq;
pub mod oracle;
pub mod transforms;
pub mod verify;

pub use dispersion::{DispersionRelation, Equation};
pub use error::{Error, Result};
pub use evaluation::Evaluation;

pub type C64 = num_complex::Complex64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
