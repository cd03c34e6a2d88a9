//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real scalar the solver is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Smallest relative tolerance this type can honour for the default
    /// residual checks: `1e-9` for `f64`, coarser for `f32`.
    #[inline]
    fn default_rel_tol() -> Self {
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Numerical tolerances used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Relative tolerance on equality residuals.
    pub equality: T,
    /// Relative slack used when classifying data on a wave boundary.
    pub boundary: T,
    /// Relative distance (as a fraction of the density gap) kept from the
    /// endpoints of the open density interval when probing.
    pub endpoint: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        let tol = T::default_rel_tol();
        Self {
            equality: tol,
            boundary: tol,
            endpoint: tol,
        }
    }
}

/// Sign of a scalar, with an explicit zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Scalar>(x: T) -> Self {
        if x > T::zero() {
            Sign::Positive
        } else if x < T::zero() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// `|a - b| / max(1, |a|, |b|)`.
#[inline]
pub(crate) fn rel_diff<T: Scalar>(a: T, b: T) -> T {
    (a - b).abs() / T::one().max(a.abs()).max(b.abs())
}
