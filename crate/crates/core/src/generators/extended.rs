use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A value in `[0, +inf]` where `+inf` is a distinguished, saturating
/// element rather than an IEEE overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedNonNegative<S> {
    Finite(S),
    Infinity,
}

pub use ExtendedNonNegative::{Finite, Infinity};

impl<S: Scalar> ExtendedNonNegative<S> {
    /// Accepts any non-negative value; IEEE `+inf` becomes [`Infinity`].
    pub fn new(v: S) -> Result<Self> {
        if v.is_nan() || v < S::zero() {
            Err(Error::NegativeExtended(v.as_f64()))
        } else if v.is_infinite() {
            Ok(Infinity)
        } else {
            Ok(Finite(v))
        }
    }

    pub fn zero() -> Self {
        Finite(S::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinity)
    }

    pub fn finite(&self) -> Option<S> {
        match *self {
            Finite(v) => Some(v),
            Infinity => None,
        }
    }

    /// IEEE view of the value (`+inf` for [`Infinity`]).
    pub fn to_scalar(&self) -> S {
        self.finite().unwrap_or_else(S::infinity)
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }
}

impl<S: Scalar> Add for ExtendedNonNegative<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Finite(a), Finite(b)) => {
                let s = a + b;
                if s.is_infinite() {
                    Infinity
                } else {
                    Finite(s)
                }
            }
            _ => Infinity,
        }
    }
}

impl<S: Scalar> PartialOrd for ExtendedNonNegative<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl<S: Scalar> fmt::Display for ExtendedNonNegative<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{v}"),
            Infinity => f.write_str("+inf"),
        }
    }
}

impl<S: Scalar> Serialize for ExtendedNonNegative<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            Finite(v) => v.serialize(serializer),
            Infinity => serializer.serialize_str("+inf"),
        }
    }
}
