//! Geometric constructions on the ball: gyrolines and their boundary
//! endpoints, gyromidpoints, gyroparallelograms, double-gyrolines and
//! supporting chords, straight lines in the conformal model, the
//! Riemannian line element, and the ray-gyration conjecture check.

use nalgebra::{DMatrix, DVector};

use crate::ball::{BallParams, BallPoint, TolerancePolicy};
use crate::error::{GyroError, Result};
use crate::gyration::GyrationMap;
use crate::model::{GyroModel, ModelKind};

/// The geodesic through two distinct points, `L(t) = A ⊕ (⊖A ⊕ B) ⊗ t`.
#[derive(Debug, Clone)]
pub struct Gyroline {
    model: GyroModel,
    a: BallPoint,
    b: BallPoint,
}

impl Gyroline {
    /// Requires the two points to be distinct beyond the absolute
    /// tolerance (scaled by the radius).
    pub fn new(model: GyroModel, a: BallPoint, b: BallPoint) -> Result<Self> {
        let d = model.distance(&a, &b)?;
        if d <= TolerancePolicy::default().abs_tol * model.radius() {
            return Err(GyroError::DegenerateInput {
                detail: format!("gyroline through coincident points (separation {d})"),
            });
        }
        Ok(Self { model, a, b })
    }

    pub fn model(&self) -> &GyroModel {
        &self.model
    }

    pub fn a(&self) -> &BallPoint {
        &self.a
    }

    pub fn b(&self) -> &BallPoint {
        &self.b
    }

    /// The gyrovector `⊖A ⊕ B` carrying `A` to `B`.
    pub fn direction(&self) -> Result<BallPoint> {
        self.model.solve_left(&self.a, &self.b)
    }

    /// `L(t) = A ⊕ (⊖A ⊕ B) ⊗ t`; `t = 0` gives `A`, `t = 1` gives `B`.
    pub fn point(&self, t: f64) -> Result<BallPoint> {
        let q = self.direction()?;
        let scaled = self.model.scalar_mul(t, &q)?;
        self.model.add(&self.a, &scaled)
    }
}

/// A point on the sphere bounding the ball, where the models' points
/// cannot live but their gyrolines terminate.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    params: BallParams,
    coords: DVector<f64>,
}

impl BoundaryPoint {
    /// Accepts coordinates whose norm matches the radius to within the
    /// default relative tolerance.
    pub fn new(params: BallParams, coords: DVector<f64>) -> Result<Self> {
        if coords.len() != params.dim() {
            return Err(GyroError::DimensionMismatch {
                expected: params.dim(),
                got: coords.len(),
            });
        }
        let norm = coords.norm();
        let tol = TolerancePolicy::default().rel_tol * params.radius();
        if !norm.is_finite() || (norm - params.radius()).abs() > tol {
            return Err(GyroError::BoundaryOrOutside {
                norm,
                radius: params.radius(),
            });
        }
        Ok(Self { params, coords })
    }

    pub fn params(&self) -> BallParams {
        self.params
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
}

impl std::fmt::Display for BoundaryPoint {
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

/// Four vertices related by the condition `D = (B ⊞ C) ⊖ A`, which makes
/// the two diagonals share their gyromidpoint.
#[derive(Debug, Clone)]
pub struct Gyroparallelogram {
    pub model: GyroModel,
    pub a: BallPoint,
    pub b: BallPoint,
    pub c: BallPoint,
    pub d: BallPoint,
}

/// `|⊖A ⊕ B|`: zero iff the points coincide, symmetric, and invariant
/// under the motions of the space.
pub fn gyrodistance(model: &GyroModel, a: &BallPoint, b: &BallPoint) -> Result<f64> {
    model.distance(a, b)
}

/// Outcome of the triangle-inequality check.
#[derive(Debug, Clone, Copy)]
pub struct TriangleReport {
    /// `d(A, B)`.
    pub lhs: f64,
    /// `d(A, P) ⊕ d(P, B)` combined with the one-dimensional addition.
    pub rhs: f64,
    /// Whether `P` lies on the gyrosegment from `A` to `B`, which is
    /// exactly the equality case.
    pub is_equality: bool,
}

/// Checks `d(A,B) ≤ d(A,P) ⊕ d(P,B)`, where the right side combines the
/// two legs with the scalar form of the model addition. Equality holds
/// precisely when `P` lies between `A` and `B`.
pub fn check_gyrotriangle(
    model: &GyroModel,
    a: &BallPoint,
    b: &BallPoint,
    p: &BallPoint,
) -> Result<TriangleReport> {
    let lhs = model.distance(a, b)?;
    let leg1 = model.distance(a, p)?;
    let leg2 = model.distance(p, b)?;
    let c2 = model.radius() * model.radius();
    let rhs = (leg1 + leg2) / (1.0 + leg1 * leg2 / c2);
    let (t, perp) = chord_parameter(model, a, b, p)?;
    let tol = 1e-8 * model.radius();
    let is_equality = perp <= tol && (-1e-8..=1.0 + 1e-8).contains(&t);
    Ok(TriangleReport { lhs, rhs, is_equality })
}

/// Chord coordinates of `p` relative to the segment `a..b`: the affine
/// parameter along the chord and the perpendicular distance to it, both
/// measured in the straight-chord model (conformal inputs are carried
/// over by the doubling map, under which geodesics become chords).
pub fn chord_parameter(
    model: &GyroModel,
    a: &BallPoint,
    b: &BallPoint,
    p: &BallPoint,
) -> Result<(f64, f64)> {
    let to_chart = |x: &BallPoint| -> Result<DVector<f64>> {
        match model.kind() {
            ModelKind::Einstein => Ok(x.coords().clone()),
            ModelKind::Mobius => Ok(model.integer_mul(2, x)?.coords().clone()),
        }
    };
    let ae = to_chart(a)?;
    let be = to_chart(b)?;
    let pe = to_chart(p)?;
    let q = &be - &ae;
    let q2 = q.norm_squared();
    if q2 == 0.0 {
        return Err(GyroError::DegenerateInput {
            detail: "chord through coincident points".into(),
        });
    }
    let t = (&pe - &ae).dot(&q) / q2;
    let perp = (&pe - &ae - &q * t).norm();
    Ok((t, perp))
}

/// The three closed forms of the gyromidpoint.
#[derive(Debug, Clone)]
pub struct MidpointForms {
    /// `A ⊕ (⊖A ⊕ B) ⊗ ½`.
    pub via_line: BallPoint,
    /// `½ ⊗ (A ⊞ B)`.
    pub via_coadd: BallPoint,
    /// `(γ_A A + γ_B B) / (γ_A + γ_B)`, a closed form specific to the
    /// straight-chord model.
    pub via_gamma: Option<BallPoint>,
}

/// Computes the gyromidpoint in every closed form the model admits.
pub fn gyromidpoint_forms(model: &GyroModel, a: &BallPoint, b: &BallPoint) -> Result<MidpointForms> {
    let q = model.solve_left(a, b)?;
    let half = model.scalar_mul(0.5, &q)?;
    let via_line = model.add(a, &half)?;
    let coadd = model.coadd(a, b)?;
    let via_coadd = model.scalar_mul(0.5, &coadd)?;
    let via_gamma = match model.kind() {
        ModelKind::Einstein => {
            let (ga, gb) = (a.gamma(), b.gamma());
            let mix = (a.coords() * ga + b.coords() * gb) / (ga + gb);
            Some(BallPoint::from_computed(model.params(), mix)?)
        }
        ModelKind::Mobius => None,
    };
    Ok(MidpointForms { via_line, via_coadd, via_gamma })
}

/// The unique point equidistant from `A` and `B` on their gyrosegment.
/// All closed forms are evaluated and cross-checked; the parametric form
/// is returned.
pub fn gyromidpoint(model: &GyroModel, a: &BallPoint, b: &BallPoint) -> Result<BallPoint> {
    let forms = gyromidpoint_forms(model, a, b)?;
    let agreement = model.distance(&forms.via_line, &forms.via_coadd)?;
    let tol = 1e-8 * model.radius();
    assert!(
        agreement <= tol,
        "gyromidpoint closed forms disagree by {agreement}"
    );
    if let Some(gamma_form) = &forms.via_gamma {
        let d = model.distance(&forms.via_line, gamma_form)?;
        assert!(d <= tol, "gamma-quotient midpoint form disagrees by {d}");
    }
    Ok(forms.via_line)
}

/// Completes `A, B, C` to the gyroparallelogram vertex
/// `D = (B ⊞ C) ⊖ A`. The three inputs must not be gyrocollinear.
pub fn gyroparallelogram_fourth(
    model: &GyroModel,
    a: &BallPoint,
    b: &BallPoint,
    c: &BallPoint,
) -> Result<Gyroparallelogram> {
    let (_, perp) = chord_parameter(model, a, b, c)?;
    if perp <= 1e-8 * model.radius() {
        return Err(GyroError::CollinearInput);
    }
    let sum = model.coadd(b, c)?;
    let d = model.sub(&sum, a)?;
    Ok(Gyroparallelogram {
        model: *model,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d,
    })
}

fn require_mobius(model: &GyroModel) -> Result<()> {
    if model.kind() != ModelKind::Mobius {
        return Err(GyroError::WrongModel {
            expected: ModelKind::Mobius.to_string(),
            got: model.kind().to_string(),
        });
    }
    Ok(())
}

/// The doubled curve `2 ⊗ L(t)` of a conformal-model gyroline; its image
/// is the Euclidean chord supporting the gyroline.
pub fn double_gyroline(line: &Gyroline, t: f64) -> Result<BallPoint> {
    require_mobius(line.model())?;
    let p = line.point(t)?;
    line.model().integer_mul(2, &p)
}

/// The Euclidean straight line through two conformal-model points:
/// `P(t) = H ⊞ (H ⊕ [⊖H ⊕ (B ⊖ H)] ⊗ t)` with `H = ½ ⊗ A`.
/// `t = 0` lands on `A` and `t = 1` on `B`.
pub fn mobius_straight_line(
    model: &GyroModel,
    a: &BallPoint,
    b: &BallPoint,
    t: f64,
) -> Result<BallPoint> {
    require_mobius(model)?;
    if a.coords() == b.coords() {
        return Err(GyroError::DegenerateInput {
            detail: "straight line through coincident points".into(),
        });
    }
    let h = model.scalar_mul(0.5, a)?;
    let b_rel = model.sub(b, &h)?;
    let q = model.solve_left(&h, &b_rel)?;
    let scaled = model.scalar_mul(t, &q)?;
    let inner = model.add(&h, &scaled)?;
    model.coadd(&h, &inner)
}

/// Three points that the supporting chord of the gyroline through `C`
/// and `D` passes through: `(2 ⊗ C, 2 ⊗ D, C ⊞ D)`. They are
/// Euclidean-collinear.
pub fn supporting_chord_points(
    model: &GyroModel,
    c: &BallPoint,
    d: &BallPoint,
) -> Result<(BallPoint, BallPoint, BallPoint)> {
    require_mobius(model)?;
    if c.coords() == d.coords() {
        return Err(GyroError::DegenerateInput {
            detail: "supporting chord of coincident points".into(),
        });
    }
    let p1 = model.integer_mul(2, c)?;
    let p2 = model.integer_mul(2, d)?;
    let p3 = model.coadd(c, d)?;
    Ok((p1, p2, p3))
}

/// The two boundary points a gyroline runs into:
/// `E₁ = A₁ ⊖ γ₁₂ a₁₂ / sqrt(γ₁₂² − 1)` and
/// `E₂ = A₁ ⊕ γ₁₂ a₁₂ / sqrt(γ₁₂² − 1)` with `a₁₂ = ⊖A₁ ⊕ A₂`.
///
/// The radical simplifies: `γ² − 1 = γ² |a|² / r²` makes the added vector
/// exactly `r · a₁₂ / |a₁₂|`, the unit gyro-direction scaled to the
/// boundary, so the evaluation has no cancellation-prone denominator.
/// The same form is valid in both models.
pub fn gyroline_endpoints(
    model: &GyroModel,
    a1: &BallPoint,
    a2: &BallPoint,
) -> Result<(BoundaryPoint, BoundaryPoint)> {
    if a1.coords() == a2.coords() {
        return Err(GyroError::DegenerateInput {
            detail: "endpoints of a gyroline need two distinct points".into(),
        });
    }
    let a12 = model.solve_left(a1, a2)?;
    let norm = a12.norm();
    if norm < 1e-300 {
        return Err(GyroError::NumericallyAtBoundary {
            detail: format!("gyro-difference norm {norm} too small to direct the chord"),
        });
    }
    let reach = a12.coords() * (model.radius() / norm);
    let add_raw = |u: &DVector<f64>, v: &DVector<f64>| -> DVector<f64> {
        match model.kind() {
            ModelKind::Einstein => crate::einstein::add_raw(u, v, model.radius()),
            ModelKind::Mobius => crate::mobius::add_raw(u, v, model.radius()),
        }
    };
    let e1 = add_raw(a1.coords(), &(-&reach));
    let e2 = add_raw(a1.coords(), &reach);
    Ok((
        BoundaryPoint::new(model.params(), e1)?,
        BoundaryPoint::new(model.params(), e2)?,
    ))
}

/// Quadratic length element at a point, in closed form and by finite
/// differences.
#[derive(Debug, Clone, Copy)]
pub struct LineElement {
    /// `c²h²/(c²−|x|²) · |dx|² + c²h²/(c²−|x|²)² · (x·dx)²`.
    pub ds2_formula: f64,
    /// `|(x + h·dx) ⊖ x|²` evaluated with the model's subtraction.
    pub ds2_numeric: f64,
}

/// Evaluates the straight-chord model's metric at `x` in the direction
/// `dx` (normalized internally) with step `h`, both from the closed-form
/// coefficients and by finite differencing the gyrodistance. The two
/// agree to first order in `h`.
pub fn riemannian_line_element(
    model: &GyroModel,
    x: &BallPoint,
    dx: &DVector<f64>,
    h: f64,
) -> Result<LineElement> {
    if model.kind() != ModelKind::Einstein {
        return Err(GyroError::WrongModel {
            expected: ModelKind::Einstein.to_string(),
            got: model.kind().to_string(),
        });
    }
    let c = model.radius();
    if x.norm() > 0.9 * c {
        return Err(GyroError::NumericallyAtBoundary {
            detail: format!("line element evaluated too close to the boundary: |x| = {}", x.norm()),
        });
    }
    if dx.len() != model.dim() {
        return Err(GyroError::DimensionMismatch {
            expected: model.dim(),
            got: dx.len(),
        });
    }
    if !(h > 0.0) {
        return Err(GyroError::NegativeParameter {
            name: "h".into(),
            value: h,
        });
    }
    if h > 1e-4 * c {
        return Err(GyroError::StepTooLarge {
            step: h,
            max: 1e-4 * c,
        });
    }
    let dn = dx.norm();
    if dn == 0.0 {
        return Err(GyroError::DegenerateInput {
            detail: "line element needs a nonzero direction".into(),
        });
    }
    let dir = dx / dn;
    let c2 = c * c;
    let denom = c2 - x.norm_squared();
    let radial = x.coords().dot(&dir) * h;
    let ds2_formula = c2 * h * h / denom + c2 * radial * radial / (denom * denom);
    let moved = x.coords() + dir * h;
    let d = crate::einstein::dist_raw(x.coords(), &moved, c);
    Ok(LineElement {
        ds2_formula,
        ds2_numeric: d * d,
    })
}

/// Residuals of the ray-gyration conjecture along one gyroline.
#[derive(Debug, Clone)]
pub struct RayGyrationReport {
    /// `(t, max entrywise difference)` per requested parameter.
    pub samples: Vec<(f64, f64)>,
    pub max_residual: f64,
    /// Residual at `t = 0`, a proven case.
    pub proven_t0: f64,
    /// Residual at `t = 1`, a proven case.
    pub proven_t1: f64,
}

/// Compares the gyration `gyr[⊖A ⊕ B, P(t)]` against `gyr[⊖A, B]` along
/// the Euclidean ray `P(t)` from `A` through `B` (the straight line of
/// [`mobius_straight_line`], restricted to `t ≥ 0`), reporting the
/// largest entrywise matrix difference for each parameter. Equality at
/// every `t ≥ 0` is conjectural: only `t = 0` and `t = 1` are
/// theorem-backed, and those two residuals are always evaluated and
/// reported separately.
pub fn ray_gyration_residual(
    model: &GyroModel,
    a: &BallPoint,
    b: &BallPoint,
    ts: &[f64],
) -> Result<RayGyrationReport> {
    require_mobius(model)?;
    if let Some(&bad) = ts.iter().find(|t| **t < 0.0 || !t.is_finite()) {
        return Err(GyroError::NegativeParameter {
            name: "t".into(),
            value: bad,
        });
    }
    if a.coords() == b.coords() {
        return Err(GyroError::DegenerateInput {
            detail: "ray through coincident points".into(),
        });
    }
    let q = model.solve_left(a, b)?;
    let neg_a = model.neg(a)?;
    let reference = model.gyration(&neg_a, b)?;
    let residual_at = |t: f64| -> Result<f64> {
        let p = mobius_straight_line(model, a, b, t)?;
        let g = model.gyration(&q, &p)?;
        Ok(g.max_entry_diff(&reference))
    };
    let mut samples = Vec::with_capacity(ts.len());
    let mut max_residual = 0.0f64;
    for &t in ts {
        let r = residual_at(t)?;
        max_residual = max_residual.max(r);
        samples.push((t, r));
    }
    Ok(RayGyrationReport {
        samples,
        max_residual,
        proven_t0: residual_at(0.0)?,
        proven_t1: residual_at(1.0)?,
    })
}

/// Outcome of the midpoint-doubling identity at one parameter.
#[derive(Debug, Clone, Copy)]
pub struct DoublingCheck {
    pub t: f64,
    /// Gyrodistance between `L(t)` and `½ ⊗ (L(0) ⊞ L(2t))`.
    pub residual: f64,
}

/// Verifies that every gyroline point is the gyromidpoint of `A = L(0)`
/// and `L(2t)`: `L(t) = ½ ⊗ (L(0) ⊞ L(2t))`.
pub fn midpoint_doubling_check(line: &Gyroline, t: f64) -> Result<DoublingCheck> {
    require_mobius(line.model())?;
    let lhs = line.point(t)?;
    let far = line.point(2.0 * t)?;
    let sum = line.model().coadd(line.a(), &far)?;
    let rhs = line.model().scalar_mul(0.5, &sum)?;
    Ok(DoublingCheck {
        t,
        residual: line.model().distance(&lhs, &rhs)?,
    })
}

/// How far a point set is from lying on one straight line: the ratio of
/// the second to the first singular value of the centered difference
/// matrix. Zero for exactly collinear points.
pub fn collinearity_defect(points: &[DVector<f64>]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let n = points[0].len();
    let rows = points.len() - 1;
    let mut m = DMatrix::zeros(rows, n);
    for (i, p) in points.iter().skip(1).enumerate() {
        m.set_row(i, &(p - &points[0]).transpose());
    }
    let sv = m.svd(false, false).singular_values;
    if sv.len() < 2 || sv[0] == 0.0 {
        return 0.0;
    }
    sv[1] / sv[0]
}

/// Circle through a planar point cloud, fitted algebraically.
#[derive(Debug, Clone, Copy)]
pub struct CircleFit {
    pub center: [f64; 2],
    pub radius: f64,
}

impl CircleFit {
    /// `| |center|² − radius² − r² |`: zero exactly when the fitted circle
    /// meets the sphere of the given radius at right angles.
    pub fn boundary_orthogonality_defect(&self, ball_radius: f64) -> f64 {
        let c2 = self.center[0] * self.center[0] + self.center[1] * self.center[1];
        (c2 - self.radius * self.radius - ball_radius * ball_radius).abs()
    }
}

/// Least-squares circle through planar points via the linear form
/// `x² + y² + Dx + Ey + F = 0`. Needs at least three points; collinear
/// clouds admit no circle and are rejected.
pub fn kasa_circle_fit(points: &[DVector<f64>]) -> Result<CircleFit> {
    if points.len() < 3 {
        return Err(GyroError::DegenerateInput {
            detail: format!("circle fit needs at least 3 points, got {}", points.len()),
        });
    }
    if points[0].len() != 2 {
        return Err(GyroError::DimensionMismatch {
            expected: 2,
            got: points[0].len(),
        });
    }
    let rows = points.len();
    let mut design = DMatrix::zeros(rows, 3);
    let mut rhs = DVector::zeros(rows);
    for (i, p) in points.iter().enumerate() {
        design[(i, 0)] = p[0];
        design[(i, 1)] = p[1];
        design[(i, 2)] = 1.0;
        rhs[i] = -(p[0] * p[0] + p[1] * p[1]);
    }
    let svd = design.svd(true, true);
    let sv = &svd.singular_values;
    if sv[2] / sv[0] < 1e-9 {
        return Err(GyroError::CollinearInput);
    }
    let sol = svd
        .solve(&rhs, 0.0)
        .map_err(|_| GyroError::CollinearInput)?;
    let center = [-sol[0] / 2.0, -sol[1] / 2.0];
    let r2 = center[0] * center[0] + center[1] * center[1] - sol[2];
    if r2 <= 0.0 {
        return Err(GyroError::CollinearInput);
    }
    Ok(CircleFit {
        center,
        radius: r2.sqrt(),
    })
}

/// Left gyrotranslation of every argument: `x ↦ X ⊕ x`. Distances are
/// invariant under it; exposed as a helper for motion-invariance tests
/// and figure constructions.
pub fn gyrotranslate(model: &GyroModel, x: &BallPoint, p: &BallPoint) -> Result<BallPoint> {
    model.add(x, p)
}

/// Applies an orthogonal map to a point; the second motion generator.
pub fn rotate(map: &GyrationMap, p: &BallPoint) -> Result<BallPoint> {
    map.apply(p)
}
