//! Kernels for the conformal model of the ball, plus the complex-number
//! form of the same operations on the disc.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::ball::{cross_norm2, gamma_raw};
use crate::error::{GyroError, Result};

/// Denominator of the conformal addition,
/// `1 + 2 u·v/s^2 + |u|^2 |v|^2 / s^4`, evaluated as
/// `(1 + u·v/s^2)^2 + |u∧v|^2/s^4` so that all terms are nonnegative.
fn add_denominator(u: &DVector<f64>, v: &DVector<f64>, s: f64) -> f64 {
    let s2 = s * s;
    let q = 1.0 + u.dot(v) / s2;
    q * q + cross_norm2(u, v) / (s2 * s2)
}

/// Conformal-model addition.
pub(crate) fn add_raw(u: &DVector<f64>, v: &DVector<f64>, s: f64) -> DVector<f64> {
    let s2 = s * s;
    let coeff_u = 1.0 + 2.0 * u.dot(v) / s2 + v.norm_squared() / s2;
    let coeff_v = 1.0 - u.norm_squared() / s2;
    (u * coeff_u + v * coeff_v) / add_denominator(u, v, s)
}

/// Gamma factor of `u ⊕ v` without forming the sum:
/// `γ_{u⊕v} = γ_u γ_v sqrt(1 + 2 u·v/s^2 + |u|^2|v|^2/s^4)`.
pub(crate) fn gamma_of_add(u: &DVector<f64>, v: &DVector<f64>, s: f64) -> f64 {
    gamma_raw(u, s) * gamma_raw(v, s) * add_denominator(u, v, s).sqrt()
}

/// Gamma factor of the difference `⊖u ⊕ v`.
pub(crate) fn gamma_between(u: &DVector<f64>, v: &DVector<f64>, s: f64) -> f64 {
    let s2 = s * s;
    let q = 1.0 - u.dot(v) / s2;
    let den = q * q + cross_norm2(u, v) / (s2 * s2);
    gamma_raw(u, s) * gamma_raw(v, s) * den.sqrt()
}

/// Norm of `⊖u ⊕ v` in closed form: `|u - v| / sqrt((1 - u·v/s^2)^2 + |u∧v|^2/s^4)`.
pub(crate) fn dist_raw(u: &DVector<f64>, v: &DVector<f64>, s: f64) -> f64 {
    let s2 = s * s;
    let q = 1.0 - u.dot(v) / s2;
    let den = q * q + cross_norm2(u, v) / (s2 * s2);
    (u - v).norm() / den.sqrt()
}

/// Gyration applied to `w`, in the closed form `w + 2 (A u + B v) / D`
/// with polynomial coefficients in the pairwise inner products. The
/// linear action evaluates stably even where composing three additions
/// loses most of the mantissa.
pub(crate) fn gyr_raw(
    u: &DVector<f64>,
    v: &DVector<f64>,
    w: &DVector<f64>,
    s: f64,
) -> DVector<f64> {
    let s2 = s * s;
    let s4 = s2 * s2;
    let uv = u.dot(v);
    let uw = u.dot(w);
    let vw = v.dot(w);
    let a = -uw * v.norm_squared() / s4 + vw / s2 + 2.0 * uv * vw / s4;
    let b = -vw * u.norm_squared() / s4 - uw / s2;
    let d = add_denominator(u, v, s);
    w + (u * a + v * b) * (2.0 / d)
}

/// Coaddition: `u ⊞ v = (γ_u^2 u + γ_v^2 v) / (γ_u^2 + γ_v^2 - 1)`.
/// Each operand carries its own squared gamma factor; pairing them the
/// other way breaks commutativity (see the tests).
pub(crate) fn coadd_raw(u: &DVector<f64>, v: &DVector<f64>, s: f64) -> DVector<f64> {
    let gu2 = {
        let g = gamma_raw(u, s);
        g * g
    };
    let gv2 = {
        let g = gamma_raw(v, s);
        g * g
    };
    (u * gu2 + v * gv2) / (gu2 + gv2 - 1.0)
}

/// Higher-arity coaddition: `⊞_k v_i = Σ γ_i^2 v_i / (1 + Σ (γ_i^2 - 1))`.
pub(crate) fn coadd_many_raw(points: &[DVector<f64>], s: f64) -> Result<DVector<f64>> {
    if points.is_empty() {
        return Err(GyroError::EmptyList);
    }
    let mut numerator = DVector::zeros(points[0].len());
    let mut denominator = 1.0;
    for p in points {
        let g = gamma_raw(p, s);
        numerator += p * (g * g);
        denominator += g * g - 1.0;
    }
    Ok(numerator / denominator)
}

/// The same operations on the disc, written with complex numbers. For
/// dimension two the ball and disc forms agree coordinate-wise; the disc
/// form additionally exposes the gyration as a unimodular factor.
pub mod disc {
    use super::Complex64;

    /// `a ⊕ b = (a + b) / (1 + conj(a) b / s^2)`.
    pub fn add(a: Complex64, b: Complex64, s: f64) -> Complex64 {
        (a + b) / (Complex64::new(1.0, 0.0) + a.conj() * b / (s * s))
    }

    /// `⊖a ⊕ b`, the difference used for disc distances.
    pub fn sub_from(a: Complex64, b: Complex64, s: f64) -> Complex64 {
        add(-a, b, s)
    }

    /// Gyrations on the disc are multiplications by this unimodular
    /// number: `gyr[a,b] z = factor · z`.
    pub fn gyration_factor(a: Complex64, b: Complex64, s: f64) -> Complex64 {
        let s2 = s * s;
        let one = Complex64::new(1.0, 0.0);
        (one + a * b.conj() / s2) / (one + a.conj() * b / s2)
    }

    /// Rotation angle of the gyration, the argument of its factor.
    pub fn gyration_angle(a: Complex64, b: Complex64, s: f64) -> f64 {
        gyration_factor(a, b, s).arg()
    }

    /// Scalar multiplication: rapidity scaling of the modulus with the
    /// phase kept fixed.
    pub fn scalar_mul(r: f64, a: Complex64, s: f64) -> Complex64 {
        let m = a.norm();
        if m == 0.0 || r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        a * (s * (r * (m / s).atanh()).tanh() / m)
    }
}
