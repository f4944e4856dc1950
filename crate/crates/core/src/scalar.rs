//! Scalar abstraction shared by every module.
//!
//! All of the arithmetic in this crate is written against [`Scalar`], which
//! is implemented for `f32` and `f64`. Rational types are not supported: the
//! connectives need roots, logarithms and exponentials.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::Serialize;

/// Floating point scalar usable by the connectives: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Serialize + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the supported types.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    /// Converts a count or index.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Clamps into the unit interval. NaN maps to 0.
    fn clamp_unit(self) -> Self {
        if self.is_nan() || self < Self::zero() {
            Self::zero()
        } else if self > Self::one() {
            Self::one()
        } else {
            self
        }
    }

    fn is_unit(self) -> bool {
        self >= Self::zero() && self <= Self::one()
    }

    /// Few-ulp window used to absorb round-off before fractional roots.
    fn roundoff() -> Self {
        Self::epsilon() * Self::lit(4.0)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
