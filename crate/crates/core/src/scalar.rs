//! Scalar abstractions.
//!
//! The measure algebra only needs a signed ring with a notion of absolute
//! value, so it runs over [`Weight`], which includes exact rationals. Anything
//! that evaluates transcendental functions (semicharacters, deformations,
//! exponential series) needs [`Real`].

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

/// A measure weight: `f32`, `f64` or an exact rational.
pub trait Weight: Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {
    /// Relative threshold used by [`Measure::pruned`](crate::measure::Measure::pruned).
    /// `None` means only exact zeros are dropped.
    fn drop_threshold() -> Option<Self>;

    fn from_ratio(num: u64, den: u64) -> Self {
        Self::from_u64(num).expect("representable numerator") / Self::from_u64(den).expect("representable denominator")
    }

    fn lossy_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Floating-point weights usable with transcendental functions.
pub trait Real: Weight + Float + FloatConst {
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts")
    }
}

impl Weight for f64 {
    fn drop_threshold() -> Option<Self> {
        Some(1e-15)
    }
}

impl Weight for f32 {
    fn drop_threshold() -> Option<Self> {
        Some(1e-15)
    }
}

impl Weight for Rational64 {
    fn drop_threshold() -> Option<Self> {
        None
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        Rational64::new(num as i64, den as i64)
    }
}

impl Real for f64 {}
impl Real for f32 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_are_exact_for_rationals() {
        let half = <Rational64 as Weight>::from_ratio(1, 2);
        assert_eq!(half + half, Rational64::from_integer(1));
        assert_eq!(<f64 as Weight>::from_ratio(1, 4), 0.25);
    }

    #[test]
    fn thresholds() {
        assert!(<Rational64 as Weight>::drop_threshold().is_none());
        assert_eq!(<f64 as Weight>::drop_threshold(), Some(1e-15));
    }
}
