use std::fmt::Debug;

use num_traits::{Float, FloatConst};

/// Real scalar type of the numeric verification code.
pub trait Scalar: Float + FloatConst + Debug + Default + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("finite f64 converts")
    }

    fn to_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("float converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
