use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num};

/// Floating-point scalar used by the timing statistics: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + Debug + Default + Send + Sync + 'static {}

impl<T: Float + FromPrimitive + Debug + Default + Send + Sync + 'static> Scalar for T {}

/// Field in which pass@k can be evaluated: floats, or an exact rational such
/// as [`crate::Rational`].
pub trait Probability: Num + FromPrimitive + Copy + PartialOrd + Debug {}

impl<T: Num + FromPrimitive + Copy + PartialOrd + Debug> Probability for T {}

pub(crate) fn from_usize<T: FromPrimitive>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

pub(crate) fn from_f64<T: FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}
