//! Small 2D vector type, angle helpers and golden-section search.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// Plain 2D point/vector. Serializes as a two-element array `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2 { x: a[0], y: a[1] }
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn unit(angle: f64) -> Self {
        Vec2::new(angle.cos(), angle.sin())
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// 2D cross product (z-component of the 3D cross).
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Counterclockwise rotation by `phi`.
    #[inline]
    pub fn rotate(self, phi: f64) -> Vec2 {
        let (s, c) = phi.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Rotation by +90 degrees.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}
impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}
impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}
impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Reduce an angle to [0, pi). Directions and anisotropy axes are defined
/// modulo pi.
pub fn normalize_angle_pi(theta: f64) -> f64 {
    let mut t = theta % PI;
    if t < 0.0 {
        t += PI;
    }
    // `% PI` can return PI itself through rounding of values just below a
    // multiple of pi.
    if t >= PI {
        t -= PI;
    }
    t
}

/// Distance between two directions modulo pi.
pub fn angle_dist_mod_pi(a: f64, b: f64) -> f64 {
    let d = (normalize_angle_pi(a) - normalize_angle_pi(b)).abs();
    d.min(PI - d)
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f_max, f(a_final), f(b_final))`, where the last two are
/// the values at the final bracket endpoints. A persistent gap between them
/// while the bracket shrinks to zero signals a jump discontinuity at the
/// maximizer (the sup is approached, not attained).
pub fn golden_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    iters: usize,
) -> (f64, f64, f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if b - a < 1e-14 * (1.0 + a.abs() + b.abs()) {
            break;
        }
    }
    let (xm, fm) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    (xm, fm, f(a), f(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v, _, _) = golden_max(|x| 1.0 - (x - 0.3).powi(2), 0.0, 1.0, 100);
        // A smooth peak localizes only to sqrt(machine eps) in position.
        assert_relative_eq!(x, 0.3, epsilon = 1e-7);
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn angle_normalization() {
        assert_relative_eq!(normalize_angle_pi(PI), 0.0, epsilon = 1e-12);
        assert_relative_eq!(normalize_angle_pi(-0.1), PI - 0.1, epsilon = 1e-12);
        assert_relative_eq!(angle_dist_mod_pi(0.05, PI - 0.05), 0.1, epsilon = 1e-12);
    }
}
