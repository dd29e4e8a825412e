//! The open ball that both gyrovector-space models share: parameters,
//! strictly-interior points, gamma factors, sampling, and the
//! rapidity-based scalar multiplication kernel.

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{GyroError, Result};

/// Ambient dimension and ball radius. The radius plays the role of the
/// limiting speed: every point of the space has Euclidean norm strictly
/// below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallParams {
    dim: usize,
    radius: f64,
}

impl BallParams {
    pub fn new(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(GyroError::DimensionMismatch { expected: 1, got: 0 });
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GyroError::NegativeParameter {
                name: "radius".into(),
                value: radius,
            });
        }
        Ok(Self { dim, radius })
    }

    /// Unit ball of the given dimension.
    pub fn unit(dim: usize) -> Self {
        Self::new(dim, 1.0).expect("dim must be at least 1")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub(crate) fn same_as(&self, other: &BallParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(GyroError::ContextMismatch {
                left_dim: self.dim,
                left_radius: self.radius,
                right_dim: other.dim,
                right_radius: other.radius,
            })
        }
    }
}

/// Comparison tolerances shared by the verification suites and the
/// geometric constructions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Relative tolerance; residuals are compared against `rel_tol * radius`.
    pub rel_tol: f64,
    /// Absolute tolerance for quantities that vanish at a special
    /// configuration (for example a squared boundary weight).
    pub abs_tol: f64,
    /// Default fraction of the radius up to which random points are drawn.
    pub boundary_margin: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            boundary_margin: 0.999,
        }
    }
}

impl TolerancePolicy {
    /// Pass rule for a residual measured in ball-coordinate units.
    /// Non-finite residuals always fail.
    pub fn residual_ok(&self, residual: f64, radius: f64) -> bool {
        residual.is_finite() && residual <= self.rel_tol * radius
    }
}

/// A point strictly inside the ball. Construction enforces the open-ball
/// invariant, so every operation downstream may assume finite coordinates
/// and norm below the radius.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    params: BallParams,
    coords: DVector<f64>,
}

impl BallPoint {
    pub fn new(params: BallParams, coords: Vec<f64>) -> Result<Self> {
        Self::from_vector(params, DVector::from_vec(coords))
    }

    pub fn from_vector(params: BallParams, coords: DVector<f64>) -> Result<Self> {
        if coords.len() != params.dim() {
            return Err(GyroError::DimensionMismatch {
                expected: params.dim(),
                got: coords.len(),
            });
        }
        let norm = coords.norm();
        if !norm.is_finite() {
            return Err(GyroError::NumericallyAtBoundary {
                detail: "non-finite coordinates".into(),
            });
        }
        if norm >= params.radius() {
            return Err(GyroError::BoundaryOrOutside {
                norm,
                radius: params.radius(),
            });
        }
        Ok(Self { params, coords })
    }

    /// Wraps the result of a formula whose output is interior in exact
    /// arithmetic. If rounding has pushed the norm onto or a hair past the
    /// boundary, the point is pulled back to the largest representable
    /// interior norm; a norm materially outside the ball is still an error.
    pub(crate) fn from_computed(params: BallParams, coords: DVector<f64>) -> Result<Self> {
        debug_assert_eq!(coords.len(), params.dim());
        let norm = coords.norm();
        if !norm.is_finite() {
            return Err(GyroError::NumericallyAtBoundary {
                detail: "non-finite intermediate coordinates".into(),
            });
        }
        if norm < params.radius() {
            return Ok(Self { params, coords });
        }
        if norm > params.radius() * (1.0 + 1e-9) {
            return Err(GyroError::BoundaryOrOutside {
                norm,
                radius: params.radius(),
            });
        }
        let mut pulled = coords * (params.radius() / norm);
        // One multiplicative nudge is almost always enough; loop for the
        // rare case where the rescaled norm still rounds onto the radius.
        for _ in 0..4 {
            pulled *= 1.0 - 4.0 * f64::EPSILON;
            if pulled.norm() < params.radius() {
                return Ok(Self { params, coords: pulled });
            }
        }
        Err(GyroError::NumericallyAtBoundary {
            detail: "could not round the result into the open ball".into(),
        })
    }

    /// The origin, which is the identity element of both models.
    pub fn origin(params: BallParams) -> Self {
        Self {
            params,
            coords: DVector::zeros(params.dim()),
        }
    }

    pub fn params(&self) -> BallParams {
        self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    pub fn radius(&self) -> f64 {
        self.params.radius()
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.coords.iter().copied().collect()
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn norm_squared(&self) -> f64 {
        self.coords.norm_squared()
    }

    /// Gamma factor of this point: `1 / sqrt(1 - |x|^2 / r^2)`.
    pub fn gamma(&self) -> f64 {
        gamma_raw(&self.coords, self.params.radius())
    }
}

impl std::fmt::Display for BallPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Gamma factor of a raw vector assumed to lie inside the ball of the
/// given radius.
pub fn gamma_raw(v: &DVector<f64>, radius: f64) -> f64 {
    gamma_from_norm2(v.norm_squared(), radius)
}

pub(crate) fn gamma_from_norm2(norm2: f64, radius: f64) -> f64 {
    1.0 / (1.0 - norm2 / (radius * radius)).sqrt()
}

/// Squared norm of the wedge `u ∧ v`, i.e. `|u|^2 |v|^2 - (u·v)^2`,
/// computed as a sum of squares so it can never go negative through
/// cancellation. This is the quantity that keeps the closed-form
/// gyrodistances stable near the boundary.
pub(crate) fn cross_norm2(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    let n = u.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let w = u[i] * v[j] - u[j] * v[i];
            acc += w * w;
        }
    }
    acc
}

/// Scalar multiplication shared by both models:
/// `r ⊗ v = radius * tanh(r * atanh(|v| / radius)) * v / |v|`.
pub(crate) fn scalar_mul_raw(r: f64, v: &DVector<f64>, radius: f64) -> DVector<f64> {
    let norm = v.norm();
    if norm == 0.0 || r == 0.0 {
        return DVector::zeros(v.len());
    }
    let m = (r * (norm / radius).atanh()).tanh();
    v * (radius * m / norm)
}

/// Integer scalar multiplication through the closed form
/// `k ⊗ v = radius * ((1+m)^k - (1-m)^k) / ((1+m)^k + (1-m)^k) * v/|v|`
/// with `m = |v| / radius`, which avoids `tanh`/`atanh` round-trips.
pub(crate) fn integer_mul_raw(k: i32, v: &DVector<f64>, radius: f64) -> DVector<f64> {
    let norm = v.norm();
    if norm == 0.0 || k == 0 {
        return DVector::zeros(v.len());
    }
    let m = norm / radius;
    let p = (1.0 + m).powi(k);
    let q = (1.0 - m).powi(k);
    v * (radius * (p - q) / (p + q) / norm)
}

/// Draws a point with direction uniform on the sphere and norm uniform on
/// `[0, cap * radius)`. The linear (not volume-uniform) radial law
/// deliberately over-samples the near-boundary region where numerical
/// trouble lives.
pub fn sample_ball<R: Rng + ?Sized>(params: BallParams, rng: &mut R, cap: f64) -> BallPoint {
    assert!(
        cap > 0.0 && cap <= 1.0,
        "sampling cap must lie in (0, 1], got {cap}"
    );
    let dim = params.dim();
    let mut dir = DVector::zeros(dim);
    loop {
        for x in dir.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let n = dir.norm();
        if n > 1e-9 {
            dir /= n;
            break;
        }
    }
    let r = rng.random::<f64>() * cap * params.radius();
    // cap <= 1 and random() < 1 keep the norm strictly interior.
    BallPoint::from_computed(params, dir * r).expect("sampled point is interior")
}
