//! Kernels for the relativistic-velocity model of the ball: addition,
//! gyration in closed form, the gamma composition laws, coaddition, and a
//! cancellation-free distance.

use nalgebra::DVector;

use crate::ball::{cross_norm2, gamma_raw, integer_mul_raw};
use crate::error::{GyroError, Result};

/// Velocity-style addition.
pub(crate) fn add_raw(u: &DVector<f64>, v: &DVector<f64>, c: f64) -> DVector<f64> {
    let c2 = c * c;
    let gu = gamma_raw(u, c);
    let uv = u.dot(v);
    let factor = 1.0 / (1.0 + uv / c2);
    let coeff_u = 1.0 + (gu / (c2 * (1.0 + gu))) * uv;
    (u * coeff_u + v / gu) * factor
}

/// Gamma factor of `u ⊕ v` without forming the sum:
/// `γ_{u⊕v} = γ_u γ_v (1 + u·v / c^2)`.
pub(crate) fn gamma_of_add(u: &DVector<f64>, v: &DVector<f64>, c: f64) -> f64 {
    gamma_raw(u, c) * gamma_raw(v, c) * (1.0 + u.dot(v) / (c * c))
}

/// Gamma factor of the difference `⊖u ⊕ v`, the quantity that drives the
/// boundary-endpoint and barycentric constructions.
pub(crate) fn gamma_between(u: &DVector<f64>, v: &DVector<f64>, c: f64) -> f64 {
    gamma_raw(u, c) * gamma_raw(v, c) * (1.0 - u.dot(v) / (c * c))
}

/// Norm of `⊖u ⊕ v` in closed form:
/// `sqrt(|u-v|^2 - |u∧v|^2/c^2) / (1 - u·v/c^2)`.
///
/// Materializing `⊖u ⊕ v` and taking its norm loses half the mantissa for
/// nearby points close to the boundary; this form only subtracts the
/// wedge term, which the Lagrange expansion keeps nonnegative.
pub(crate) fn dist_raw(u: &DVector<f64>, v: &DVector<f64>, c: f64) -> f64 {
    let c2 = c * c;
    let diff2 = (u - v).norm_squared() - cross_norm2(u, v) / c2;
    diff2.max(0.0).sqrt() / (1.0 - u.dot(v) / c2)
}

/// Gyration applied to `w`, in the closed form
/// `gyr[u,v]w = w + (A u + B v) / D`. Evaluating the linear action
/// directly is far better conditioned near the boundary than composing
/// three additions.
pub(crate) fn gyr_raw(
    u: &DVector<f64>,
    v: &DVector<f64>,
    w: &DVector<f64>,
    c: f64,
) -> DVector<f64> {
    let c2 = c * c;
    let gu = gamma_raw(u, c);
    let gv = gamma_raw(v, c);
    let uv = u.dot(v);
    let uw = u.dot(w);
    let vw = v.dot(w);
    let a = -(gu * gu / (gu + 1.0)) * (gv - 1.0) * uw / c2
        + gu * gv * vw / c2
        + 2.0 * (gu * gu * gv * gv / ((gu + 1.0) * (gv + 1.0))) * uv * vw / (c2 * c2);
    let b = -(gv / (gv + 1.0)) * (gu * (gv + 1.0) * uw + (gu - 1.0) * gv * vw) / c2;
    let d = gu * gv * (1.0 + uv / c2) + 1.0;
    w + (u * a + v * b) / d
}

/// Coaddition: `u ⊞ v = 2 ⊗ [(γ_u u + γ_v v) / (γ_u + γ_v)]`.
pub(crate) fn coadd_raw(u: &DVector<f64>, v: &DVector<f64>, c: f64) -> DVector<f64> {
    let gu = gamma_raw(u, c);
    let gv = gamma_raw(v, c);
    let midpoint = (u * gu + v * gv) / (gu + gv);
    integer_mul_raw(2, &midpoint, c)
}

/// Higher-arity coaddition:
/// `⊞_k v_i = 2 ⊗ [Σ γ_i v_i / (2 + Σ (γ_i - 1))]`.
/// For a single operand this collapses to the operand itself.
pub(crate) fn coadd_many_raw(points: &[DVector<f64>], c: f64) -> Result<DVector<f64>> {
    if points.is_empty() {
        return Err(GyroError::EmptyList);
    }
    let mut numerator = DVector::zeros(points[0].len());
    let mut denominator = 2.0;
    for p in points {
        let g = gamma_raw(p, c);
        numerator += p * g;
        denominator += g - 1.0;
    }
    Ok(integer_mul_raw(2, &(numerator / denominator), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::scalar_mul_raw;

    fn v(coords: &[f64]) -> DVector<f64> {
        DVector::from_vec(coords.to_vec())
    }

    /// Gyration by composing additions, used here as the independent
    /// reference for the closed-form kernel.
    fn gyr_definitional(
        u: &DVector<f64>,
        v: &DVector<f64>,
        w: &DVector<f64>,
        c: f64,
    ) -> DVector<f64> {
        let inner = add_raw(u, &add_raw(v, w, c), c);
        add_raw(&(-add_raw(u, v, c)), &inner, c)
    }

    #[test]
    fn addition_hand_values() {
        // Parallel: (0.5,0) ⊕ (0.5,0) = (0.8,0).
        let s = add_raw(&v(&[0.5, 0.0]), &v(&[0.5, 0.0]), 1.0);
        assert!((s[0] - 0.8).abs() < 1e-15 && s[1].abs() < 1e-15);
        // Orthogonal: (0.6,0) ⊕ (0,0.6) = (0.6, 0.48); the second operand
        // is contracted by 1/γ_u = 0.8.
        let t = add_raw(&v(&[0.6, 0.0]), &v(&[0.0, 0.6]), 1.0);
        assert!((t[0] - 0.6).abs() < 1e-15 && (t[1] - 0.48).abs() < 1e-15);
        // Signed parallel form: 0.3 ⊕ 0.4 = 0.7/1.12 = 0.625.
        let p = add_raw(&v(&[0.3]), &v(&[0.4]), 1.0);
        assert!((p[0] - 0.625).abs() < 1e-15);
    }

    #[test]
    fn addition_scales_with_radius() {
        let a = add_raw(&v(&[0.5, 0.1]), &v(&[-0.2, 0.3]), 1.0);
        let b = add_raw(&v(&[1.5, 0.3]), &v(&[-0.6, 0.9]), 3.0);
        assert!((b / 3.0 - a).norm() < 1e-15);
    }

    #[test]
    fn gamma_of_add_matches_direct() {
        let u = v(&[0.5, -0.3, 0.1]);
        let w = v(&[-0.2, 0.6, 0.4]);
        let s = add_raw(&u, &w, 1.0);
        assert!((gamma_of_add(&u, &w, 1.0) - gamma_raw(&s, 1.0)).abs() / gamma_raw(&s, 1.0) < 1e-12);
        let d = add_raw(&(-u.clone()), &w, 1.0);
        assert!((gamma_between(&u, &w, 1.0) - gamma_raw(&d, 1.0)).abs() / gamma_raw(&d, 1.0) < 1e-12);
    }

    #[test]
    fn closed_form_gyration_matches_composed_additions() {
        let cases = [
            (v(&[0.3, 0.1, -0.2]), v(&[-0.1, 0.4, 0.2]), v(&[0.2, -0.3, 0.5])),
            (v(&[0.6, 0.0, 0.1]), v(&[0.0, -0.5, 0.3]), v(&[-0.4, 0.2, 0.2])),
        ];
        for (u, w, x) in &cases {
            let lhs = gyr_raw(u, w, x, 1.0);
            let rhs = gyr_definitional(u, w, x, 1.0);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn gyration_trivial_when_arguments_are_dependent() {
        let w = v(&[0.2, -0.1, 0.4]);
        let zero = v(&[0.0, 0.0, 0.0]);
        let u = v(&[0.5, 0.2, -0.1]);
        assert!((gyr_raw(&zero, &u, &w, 1.0) - &w).norm() < 1e-14);
        assert!((gyr_raw(&u, &zero, &w, 1.0) - &w).norm() < 1e-14);
        let parallel = &u * -0.7;
        assert!((gyr_raw(&u, &parallel, &w, 1.0) - &w).norm() < 1e-13);
    }

    #[test]
    fn closed_form_distance_matches_materialized_difference() {
        let u = v(&[0.4, -0.2, 0.1]);
        let w = v(&[-0.3, 0.5, 0.2]);
        let materialized = add_raw(&(-u.clone()), &w, 1.0).norm();
        assert!((dist_raw(&u, &w, 1.0) - materialized).abs() < 1e-14);
        assert!(dist_raw(&u, &u, 1.0) == 0.0);
    }

    #[test]
    fn coadd_matches_its_gyration_form() {
        // u ⊞ v = u ⊕ gyr[u, ⊖v] v.
        let u = v(&[0.35, -0.15, 0.2]);
        let w = v(&[-0.1, 0.45, 0.05]);
        let direct = coadd_raw(&u, &w, 1.0);
        let via_gyr = add_raw(&u, &gyr_raw(&u, &(-w.clone()), &w, 1.0), 1.0);
        assert!((direct.clone() - via_gyr).norm() < 1e-14);
        // Commutative even though ⊕ is not.
        assert!((coadd_raw(&w, &u, 1.0) - direct).norm() < 1e-14);
    }

    #[test]
    fn coadd_many_special_cases() {
        let a = v(&[0.3, 0.1]);
        let b = v(&[-0.2, 0.4]);
        assert!(coadd_many_raw(&[], 1.0).is_err());
        let single = coadd_many_raw(std::slice::from_ref(&a), 1.0).unwrap();
        assert!((single - &a).norm() < 1e-15);
        let pair = coadd_many_raw(&[a.clone(), b.clone()], 1.0).unwrap();
        assert!((pair - coadd_raw(&a, &b, 1.0)).norm() < 1e-15);
        // Appending the zero vector must not change the result.
        let z = v(&[0.0, 0.0]);
        let triple = coadd_many_raw(&[a.clone(), b.clone(), z], 1.0).unwrap();
        assert!((triple - coadd_raw(&a, &b, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn two_sum_identity_holds() {
        // 2 ⊗ (u ⊕ v) = u ⊕ (2 ⊗ v ⊕ u).
        let u = v(&[0.25, -0.4, 0.1]);
        let w = v(&[0.3, 0.2, -0.35]);
        let lhs = scalar_mul_raw(2.0, &add_raw(&u, &w, 1.0), 1.0);
        let rhs = add_raw(&u, &add_raw(&scalar_mul_raw(2.0, &w, 1.0), &u, 1.0), 1.0);
        assert!((lhs - rhs).norm() < 5e-15);
    }
}
