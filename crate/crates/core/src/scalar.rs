//! Scalar abstraction for the numeric core.
//!
//! Everything in this crate is generic over [`Real`], which is satisfied by
//! `f32` and `f64`. The CLI and the default type aliases at the crate root
//! use `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used throughout the numeric core.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for constants and RNG output.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant not representable")
    }

    /// Conversion to `f64` for error reporting and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for `F::from_f64_lossy` used by the modules in this crate.
#[inline]
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64_lossy(x)
}
