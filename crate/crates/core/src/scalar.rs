//! Scalar abstraction: the whole crate is generic over the real scalar type.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar the library is generic over: `f32` or `f64`.
///
/// Complex quantities are carried as [`num_complex::Complex<T>`] built on
/// this type. `f64` is the primary instantiation; the tolerances baked into
/// the validating checks are sized for it.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

/// Shorthand for converting an `f64` constant into the working scalar type.
pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}
