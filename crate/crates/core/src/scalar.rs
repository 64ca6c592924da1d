use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real number type used by the color conversions and thresholds.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant. Lossy for `f32`.
    fn lit(v: f64) -> Self;

    /// Converts an exact integer. Exact for `f64` up to 2^53, for `f32` up to 2^24.
    fn int(v: i64) -> Self;

    fn to_f64_lossless(self) -> f64;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn lit(v: f64) -> Self {
                v as $t
            }

            #[inline]
            fn int(v: i64) -> Self {
                v as $t
            }

            #[inline]
            fn to_f64_lossless(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);
