//! Scalar abstraction for the numeric code. Everything downstream of
//! counting is generic over [`Real`] so the same formulas run at f32
//! or f64; the crate root exports f64 aliases as the defaults.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

pub trait Real: Float + FromPrimitive + Sum<Self> + Debug + Display + 'static {
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    fn half() -> Self {
        Self::from_f64_lossy(0.5)
    }

    fn two() -> Self {
        Self::from_f64_lossy(2.0)
    }

    fn hundred() -> Self {
        Self::from_f64_lossy(100.0)
    }
}

impl<T> Real for T where T: Float + FromPrimitive + Sum<T> + Debug + Display + 'static {}
