//! Special functions used by the kernel and discrepancy code.

mod gamma;
mod gegenbauer;
mod hyper;
mod kdf;
mod sum;

pub use gamma::{cospi, digamma, gamma, ln_gamma, ln_gamma_ratio, pochhammer, pochhammer_ratio, rgamma, sinpi};
pub use gegenbauer::{gegenbauer_all, gegenbauer_p, z_dim};
pub(crate) use hyper::accelerate_series;
pub use hyper::{gauss_2f1, pfq_terminating, pfq_unit, SeriesControl};
pub use kdf::{kampe_de_feriet, KdfParams};
pub use sum::{compensated_sum, exponent_ladder, richardson, CompensatedSum, Extrapolated};
