//! Kernels of Sobolev spaces on spheres, their closed forms and discrepancy
//! estimates for point sets.

pub mod error;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub mod spheregeom;
pub mod kernel;
pub mod oracle;
pub mod discrepancy;
