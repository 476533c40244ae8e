/// Scalar type for all geometric kernels: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + std::fmt::Debug
    + std::fmt::Display
    + std::ops::AddAssign
    + std::ops::SubAssign
    + std::ops::MulAssign
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for pulling an `f64` literal into the generic scalar type.
#[inline]
pub(crate) fn r<S: Real>(x: f64) -> S {
    S::from_f64(x).expect("literal representable in scalar type")
}
