//! Real trigonometric polynomials of degree at most two.

use num_complex::Complex64;

use crate::roots;

/// `p(θ) = c0 + 2·Re(c1·e^{iθ}) + 2·Re(c2·e^{2iθ})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigPoly {
    pub c0: f64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl TrigPoly {
    pub fn new(c0: f64, c1: Complex64, c2: Complex64) -> Self {
        TrigPoly { c0, c1, c2 }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let e1 = Complex64::from_polar(1.0, theta);
        let e2 = Complex64::from_polar(1.0, 2.0 * theta);
        self.c0 + 2.0 * (self.c1 * e1).re + 2.0 * (self.c2 * e2).re
    }

    pub fn derivative(&self) -> TrigPoly {
        let i = Complex64::i();
        TrigPoly {
            c0: 0.0,
            c1: i * self.c1,
            c2: 2.0 * i * self.c2,
        }
    }

    /// Upper bound on `sup |p - c0|`, used as the scale for noise thresholds.
    pub fn oscillation_scale(&self) -> f64 {
        2.0 * (self.c1.norm() + self.c2.norm())
    }

    pub fn is_constant(&self) -> bool {
        self.c1 == Complex64::new(0.0, 0.0) && self.c2 == Complex64::new(0.0, 0.0)
    }

    /// Coefficients (ascending) of `z²·L(z)` where `L` is the Laurent
    /// polynomial with `L(e^{iθ}) = p(θ)`.
    pub fn laurent_quartic(&self) -> [Complex64; 5] {
        [
            self.c2.conj(),
            self.c1.conj(),
            Complex64::new(self.c0, 0.0),
            self.c1,
            self.c2,
        ]
    }

    /// Roots of `p` on the circle, as sorted angles in `[0, 2π)`.
    ///
    /// The returned list contains one representative for every real root,
    /// including roots of even multiplicity. Returns `None` when `p` is
    /// identically zero.
    pub fn real_roots(&self) -> Option<Vec<f64>> {
        roots::trig_real_roots(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn derivative_matches_finite_differences() {
        let p = TrigPoly::new(1.3, Complex64::new(0.4, -0.2), Complex64::new(-0.1, 0.3));
        let d = p.derivative();
        let h = 1e-6;
        for k in 0..50 {
            let t = k as f64 * TAU / 50.0;
            let fd = (p.eval(t + h) - p.eval(t - h)) / (2.0 * h);
            assert!((fd - d.eval(t)).abs() < 1e-8);
        }
    }

    #[test]
    fn laurent_form_reproduces_values() {
        let p = TrigPoly::new(0.7, Complex64::new(0.1, 0.5), Complex64::new(0.25, -0.05));
        let q = p.laurent_quartic();
        for k in 0..16 {
            let t = k as f64 * TAU / 16.0;
            let z = Complex64::from_polar(1.0, t);
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, c) in q.iter().enumerate() {
                acc += c * z.powi(j as i32 - 2);
            }
            assert!((acc.re - p.eval(t)).abs() < 1e-14);
            assert!(acc.im.abs() < 1e-14);
        }
    }

    #[test]
    fn roots_of_sin_times_one_plus_two_cos() {
        // 2 sinθ (1 + 2cosθ) = 2 sinθ + 2 sin 2θ
        let i = Complex64::i();
        let p = TrigPoly::new(0.0, -i, -i);
        let r = p.real_roots().unwrap();
        let expected = [0.0, 2.0 * PI / 3.0, PI, 4.0 * PI / 3.0];
        assert_eq!(r.len(), 4);
        for (a, b) in r.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{r:?}");
        }
    }
}
