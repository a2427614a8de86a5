use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst};
use rustfft::FftNum;

/// Floating-point scalar the solver is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FftNum + Default + Debug + Display + LowerExp + Sum + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        <Self as num_traits::NumCast>::from(n).expect("integer representable")
    }

    #[inline]
    fn of_isize(n: isize) -> Self {
        <Self as num_traits::NumCast>::from(n).expect("integer representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
