use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

/// An angle in radians, reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Reduces any finite real modulo 2π.
    pub fn new(radians: f64) -> Self {
        let mut v = radians.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        if v >= TAU {
            v = 0.0;
        }
        Angle(v)
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Angle::new(degrees.to_radians())
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Circular distance `min(|a-b|, 2π-|a-b|)`, always in `[0, π]`.
    pub fn distance(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(TAU - d)
    }

    pub fn antipode(self) -> Angle {
        Angle::new(self.0 + PI)
    }

    /// Signed difference `self - other` mapped into `(-π, π]`.
    pub fn signed_diff(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).rem_euclid(TAU);
        if d > PI {
            d - TAU
        } else {
            d
        }
    }
}

impl From<f64> for Angle {
    fn from(v: f64) -> Self {
        Angle::new(v)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_modulo_full_turn() {
        assert_eq!(Angle::new(0.0).value(), 0.0);
        assert!((Angle::new(-PI / 2.0).value() - 1.5 * PI).abs() < 1e-15);
        assert!((Angle::new(5.0 * PI).value() - PI).abs() < 1e-12);
        assert_eq!(Angle::new(-1e-300).value(), 0.0);
    }

    #[test]
    fn distance_wraps() {
        let a = Angle::new(0.1);
        let b = Angle::new(TAU - 0.1);
        assert!((a.distance(b) - 0.2).abs() < 1e-12);
        assert!((a.signed_diff(b) - 0.2).abs() < 1e-12);
        assert!((b.signed_diff(a) + 0.2).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn always_in_range(x in -1e6f64..1e6) {
            let a = Angle::new(x);
            prop_assert!(a.value() >= 0.0 && a.value() < TAU);
        }

        #[test]
        fn distance_symmetric_and_bounded(x in -100f64..100.0, y in -100f64..100.0) {
            let (a, b) = (Angle::new(x), Angle::new(y));
            prop_assert_eq!(a.distance(b), b.distance(a));
            prop_assert!(a.distance(b) <= PI);
        }
    }
}
