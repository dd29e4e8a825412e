//! Barycentric coordinate machinery: the Euclidean affine version and
//! its ball counterpart built on gamma-weighted anchors, with the
//! covariance checks that justify calling the coordinates geometric.

use nalgebra::{DMatrix, DVector};

use crate::ball::{BallPoint, TolerancePolicy};
use crate::error::{GyroError, Result};
use crate::gyration::GyrationMap;
use crate::model::GyroModel;

/// A Euclidean point expressed against a list of anchors with weights.
#[derive(Debug, Clone)]
pub struct BarycentricRep {
    pub anchors: Vec<DVector<f64>>,
    pub weights: Vec<f64>,
}

/// Whether the anchors are pointwise independent: no anchor lies in the
/// affine span of the others. Equivalent to the difference vectors
/// `A_k − A_1` being linearly independent, which caps the list at
/// `n + 1` anchors in dimension `n`.
pub fn euclid_pointwise_independent(anchors: &[DVector<f64>]) -> bool {
    if anchors.len() < 2 {
        return true;
    }
    let n = anchors[0].len();
    if anchors.len() > n + 1 {
        return false;
    }
    let rows = anchors.len() - 1;
    let mut m = DMatrix::zeros(rows, n);
    for (i, a) in anchors.iter().skip(1).enumerate() {
        m.set_row(i, &(a - &anchors[0]).transpose());
    }
    let sv = m.svd(false, false).singular_values;
    sv[0] > 0.0 && sv[sv.len() - 1] / sv[0] > 1e-12
}

/// `P = Σ m_k A_k / Σ m_k`. The weight sum must be bounded away from
/// zero relative to the weight magnitudes.
pub fn euclid_barycentric_eval(rep: &BarycentricRep) -> Result<DVector<f64>> {
    if rep.anchors.is_empty() {
        return Err(GyroError::EmptyList);
    }
    if rep.weights.len() != rep.anchors.len() {
        return Err(GyroError::DimensionMismatch {
            expected: rep.anchors.len(),
            got: rep.weights.len(),
        });
    }
    let sum: f64 = rep.weights.iter().sum();
    let mag: f64 = rep.weights.iter().map(|w| w.abs()).sum();
    if sum.abs() <= TolerancePolicy::default().abs_tol * mag.max(1.0) {
        return Err(GyroError::ZeroWeightSum { sum });
    }
    let n = rep.anchors[0].len();
    let mut acc = DVector::zeros(n);
    for (a, &w) in rep.anchors.iter().zip(&rep.weights) {
        if a.len() != n {
            return Err(GyroError::DimensionMismatch {
                expected: n,
                got: a.len(),
            });
        }
        acc += a * w;
    }
    Ok(acc / sum)
}

/// Recovers normalized weights (`Σ λ = 1`) expressing `p` against the
/// anchors. Substituting `λ_1 = 1 − Σ_{k≥2} μ_k` turns the constrained
/// problem into plain least squares in the difference vectors.
pub fn euclid_barycentric_solve(anchors: &[DVector<f64>], p: &DVector<f64>) -> Result<Vec<f64>> {
    if anchors.is_empty() {
        return Err(GyroError::EmptyList);
    }
    let n = anchors[0].len();
    if p.len() != n {
        return Err(GyroError::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    if anchors.len() == 1 {
        let residual = (p - &anchors[0]).norm();
        if residual > 1e-9 * (1.0 + p.norm()) {
            return Err(GyroError::NotInAffineSpan { residual });
        }
        return Ok(vec![1.0]);
    }
    if !euclid_pointwise_independent(anchors) {
        return Err(GyroError::DependentAnchors);
    }
    let cols = anchors.len() - 1;
    let mut m = DMatrix::zeros(n, cols);
    for (j, a) in anchors.iter().skip(1).enumerate() {
        m.set_column(j, &(a - &anchors[0]));
    }
    let rhs = p - &anchors[0];
    let svd = m.clone().svd(true, true);
    let mu = svd
        .solve(&rhs, 1e-14)
        .map_err(|_| GyroError::DependentAnchors)?;
    let residual = (&m * &mu - &rhs).norm();
    if residual > 1e-9 * (1.0 + p.norm()) {
        return Err(GyroError::NotInAffineSpan { residual });
    }
    let mut weights = Vec::with_capacity(anchors.len());
    weights.push(1.0 - mu.iter().sum::<f64>());
    weights.extend(mu.iter().copied());
    Ok(weights)
}

/// A ball point expressed against anchor points with weights, evaluated
/// through the gamma-weighted quotient.
#[derive(Debug, Clone)]
pub struct GyrobarycentricRep {
    pub model: GyroModel,
    pub anchors: Vec<BallPoint>,
    pub weights: Vec<f64>,
}

impl GyrobarycentricRep {
    pub fn new(model: GyroModel, anchors: Vec<BallPoint>, weights: Vec<f64>) -> Result<Self> {
        if anchors.is_empty() {
            return Err(GyroError::EmptyList);
        }
        if weights.len() != anchors.len() {
            return Err(GyroError::DimensionMismatch {
                expected: anchors.len(),
                got: weights.len(),
            });
        }
        for a in &anchors {
            model.params().same_as(&a.params())?;
        }
        Ok(Self { model, anchors, weights })
    }

    /// The squared normalization constant
    /// `m₀² = (Σ m_k)² + 2 Σ_{j<k} m_j m_k (γ_{jk} − 1)`,
    /// whose sign classifies where the weighted combination lands. The
    /// pair gammas `γ_{jk}` are taken in the chord model (conformal
    /// anchors are carried over by doubling first), matching the chart
    /// the evaluation quotient lives in.
    pub fn m0_squared(&self) -> Result<f64> {
        let sum: f64 = self.weights.iter().sum();
        let mut acc = sum * sum;
        for j in 0..self.anchors.len() {
            for k in (j + 1)..self.anchors.len() {
                let g = chart_gamma_between(&self.model, &self.anchors[j], &self.anchors[k])?;
                acc += 2.0 * self.weights[j] * self.weights[k] * (g - 1.0);
            }
        }
        Ok(acc)
    }
}

/// Gamma of the chord-model gyro-difference of the two points' chart
/// images. For the chord model that is plain `gamma_between`; conformal
/// points are carried over by doubling, which squares into
/// `2γ_M² − 1` at the level of pair gammas.
pub fn chart_gamma_between(model: &GyroModel, a: &BallPoint, b: &BallPoint) -> Result<f64> {
    match model.kind() {
        crate::model::ModelKind::Einstein => model.gamma_between(a, b),
        crate::model::ModelKind::Mobius => {
            let g = model.gamma_between(a, b)?;
            Ok(2.0 * g * g - 1.0)
        }
    }
}

/// Where a weighted anchor combination lands relative to the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    /// All weights share one sign: inside the anchors' convex span.
    InsideSimplex,
    /// Mixed signs but `m₀² > 0`: still a ball point.
    InsideBall,
    /// `m₀² = 0` at tolerance: the combination degenerates to the
    /// boundary sphere.
    OnBoundary,
    /// `m₀² < 0`: the combination leaves the ball.
    OutsideBall,
}

/// Result of evaluating a gyrobarycentric combination.
#[derive(Debug, Clone)]
pub struct GyroEval {
    /// The combined point's ambient coordinates. A ball point when the
    /// class says so; on or outside the boundary otherwise.
    pub point: DVector<f64>,
    pub class: PointClass,
    /// Gamma factor of the combined point's chord-chart image,
    /// `Σ m_k γ_k / m₀`, defined only when `m₀² > 0`. In the chord model
    /// this is the point's own gamma.
    pub gamma: Option<f64>,
}

impl GyroEval {
    /// The combined point as a checked ball point; errors if the class
    /// put it on or outside the boundary.
    pub fn ball_point(&self, model: &GyroModel) -> Result<BallPoint> {
        BallPoint::from_vector(model.params(), self.point.clone())
    }
}

/// Pointwise independence for ball anchors: their chord-model images
/// must be affinely independent. Conformal-model anchors are carried to
/// the chord model by doubling first, so independence is judged in the
/// model where the evaluation quotient lives.
pub fn gyro_pointwise_independent(model: &GyroModel, anchors: &[BallPoint]) -> Result<bool> {
    let mut images = Vec::with_capacity(anchors.len());
    for a in anchors {
        model.params().same_as(&a.params())?;
        images.push(to_chord_chart(model, a)?);
    }
    Ok(euclid_pointwise_independent(&images))
}

fn to_chord_chart(model: &GyroModel, p: &BallPoint) -> Result<DVector<f64>> {
    match model.kind() {
        crate::model::ModelKind::Einstein => Ok(p.coords().clone()),
        crate::model::ModelKind::Mobius => Ok(model.integer_mul(2, p)?.coords().clone()),
    }
}

fn from_chord_chart(model: &GyroModel, v: DVector<f64>) -> Result<DVector<f64>> {
    match model.kind() {
        crate::model::ModelKind::Einstein => Ok(v),
        crate::model::ModelKind::Mobius => {
            let p = BallPoint::from_computed(model.params(), v)?;
            Ok(model.scalar_mul(0.5, &p)?.coords().clone())
        }
    }
}

/// Evaluates `P = (Σ m_k γ_k A_k) / (Σ m_k γ_k)` in the chord model
/// (conformal anchors are carried over by doubling and the result
/// carried back), classifying the outcome by the sign of `m₀²`.
///
/// The gamma-weighted sum `Σ m_k γ_k` must be positive: the combination
/// is scale-invariant in the weights, so a negative sum means the whole
/// weight vector should be negated by the caller.
pub fn gyro_eval(rep: &GyrobarycentricRep) -> Result<GyroEval> {
    let model = &rep.model;
    let m0sq = rep.m0_squared()?;
    let mut gamma_sum = 0.0;
    let n = model.dim();
    let mut acc = DVector::zeros(n);
    for (a, &w) in rep.anchors.iter().zip(&rep.weights) {
        let chart = to_chord_chart(model, a)?;
        let g = crate::ball::gamma_raw(&chart, model.radius());
        gamma_sum += w * g;
        acc += chart * (w * g);
    }
    if gamma_sum <= 0.0 {
        return Err(GyroError::NonpositiveGammaSum { sum: gamma_sum });
    }
    let chart_point = acc / gamma_sum;

    let weight_mag: f64 = rep.weights.iter().map(|w| w.abs()).sum();
    let tol = TolerancePolicy::default().abs_tol * weight_mag * weight_mag;
    let all_same_sign = rep.weights.iter().all(|&w| w >= 0.0)
        || rep.weights.iter().all(|&w| w <= 0.0);
    let class = if all_same_sign {
        PointClass::InsideSimplex
    } else if m0sq.abs() <= tol {
        PointClass::OnBoundary
    } else if m0sq > 0.0 {
        PointClass::InsideBall
    } else {
        PointClass::OutsideBall
    };

    let gamma = if class == PointClass::InsideSimplex || class == PointClass::InsideBall {
        Some(gamma_sum / m0sq.sqrt())
    } else {
        None
    };
    let point = match class {
        PointClass::InsideSimplex | PointClass::InsideBall => from_chord_chart(model, chart_point)?,
        // Boundary or exterior combinations have no ball preimage in the
        // conformal chart; report the chord-chart coordinates as-is.
        PointClass::OnBoundary | PointClass::OutsideBall => chart_point,
    };
    Ok(GyroEval { point, class, gamma })
}

/// Residuals of the covariance identities for one representation under
/// one left translation and one orthogonal map.
#[derive(Debug, Clone, Copy)]
pub struct CovarianceReport {
    /// `X ⊕ P` versus the evaluation with anchors `X ⊕ A_k`.
    pub translated_point: f64,
    /// Gamma of the translated point versus the translated evaluation's
    /// gamma (relative).
    pub translated_gamma: f64,
    /// The gamma-weighted coordinates `γ_P · P` compared the same way.
    pub translated_weighted: f64,
    /// `m₀²` before versus after translation (relative).
    pub translated_m0: f64,
    /// `R P` versus the evaluation with anchors `R A_k`.
    pub rotated_point: f64,
    /// Gamma under rotation (relative).
    pub rotated_gamma: f64,
    /// Gamma-weighted coordinates under rotation.
    pub rotated_weighted: f64,
    /// `m₀²` under rotation (relative).
    pub rotated_m0: f64,
}

impl CovarianceReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.translated_point,
            self.translated_gamma,
            self.translated_weighted,
            self.translated_m0,
            self.rotated_point,
            self.rotated_gamma,
            self.rotated_weighted,
            self.rotated_m0,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Verifies that the gyrobarycentric representation commutes with the
/// motions of the ball: translating or rotating the anchors (same
/// weights) translates or rotates the evaluated point, preserves its
/// gamma, transforms the gamma-weighted coordinates accordingly, and
/// leaves `m₀²` unchanged.
pub fn gyro_covariance_check(
    rep: &GyrobarycentricRep,
    x: &BallPoint,
    r: &GyrationMap,
) -> Result<CovarianceReport> {
    let model = &rep.model;
    let base = gyro_eval(rep)?;
    let p = base.ball_point(model)?;
    let gamma_p = base
        .gamma
        .ok_or(GyroError::DegenerateInput {
            detail: "covariance check needs an interior evaluation".into(),
        })?;
    let m0 = rep.m0_squared()?;

    let chart_gamma_of = |q: &BallPoint| -> Result<f64> {
        let chart = to_chord_chart(model, q)?;
        Ok(crate::ball::gamma_raw(&chart, model.radius()))
    };

    let translated_anchors: Vec<BallPoint> = rep
        .anchors
        .iter()
        .map(|a| model.add(x, a))
        .collect::<Result<_>>()?;
    let t_rep = GyrobarycentricRep::new(*model, translated_anchors, rep.weights.clone())?;
    let t_eval = gyro_eval(&t_rep)?;
    let t_point = t_eval.ball_point(model)?;
    let expected = model.add(x, &p)?;
    let translated_point = model.distance(&t_point, &expected)?;
    let t_gamma = t_eval.gamma.unwrap_or(f64::NAN);
    let e_gamma = chart_gamma_of(&expected)?;
    let translated_gamma = (t_gamma - e_gamma).abs() / e_gamma;
    let t_weighted = to_chord_chart(model, &t_point)? * t_gamma;
    let e_weighted = to_chord_chart(model, &expected)? * e_gamma;
    let translated_weighted = (t_weighted - e_weighted).norm() / (1.0 + gamma_p);
    let translated_m0 = (t_rep.m0_squared()? - m0).abs() / m0.abs().max(1.0);

    let rotated_anchors: Vec<BallPoint> = rep
        .anchors
        .iter()
        .map(|a| r.apply(a))
        .collect::<Result<_>>()?;
    let r_rep = GyrobarycentricRep::new(*model, rotated_anchors, rep.weights.clone())?;
    let r_eval = gyro_eval(&r_rep)?;
    let r_point = r_eval.ball_point(model)?;
    let expected_r = r.apply(&p)?;
    let rotated_point = model.distance(&r_point, &expected_r)?;
    let r_gamma = r_eval.gamma.unwrap_or(f64::NAN);
    let rotated_gamma = (r_gamma - gamma_p).abs() / gamma_p;
    let r_weighted = to_chord_chart(model, &r_point)? * r_gamma;
    let er_weighted = to_chord_chart(model, &expected_r)? * gamma_p;
    let rotated_weighted = (r_weighted - er_weighted).norm() / (1.0 + gamma_p);
    let rotated_m0 = (r_rep.m0_squared()? - m0).abs() / m0.abs().max(1.0);

    Ok(CovarianceReport {
        translated_point,
        translated_gamma,
        translated_weighted,
        translated_m0,
        rotated_point,
        rotated_gamma,
        rotated_weighted,
        rotated_m0,
    })
}

/// The two weight roots that push the combination of two anchors onto
/// the boundary sphere: `m_± = γ₁₂ ± sqrt(γ₁₂² − 1)`, the roots of
/// `m² − 2γ₁₂ m + 1 = 0`, so the weight vectors `(m₊, −1)` and
/// `(−m₋, 1)` each give `m₀² = 0` with a positive gamma-weighted sum.
/// The product `m₊ m₋ = 1` and sum `m₊ + m₋ = 2γ₁₂` are exact
/// consequences of the quadratic. `γ₁₂` is the chart pair gamma of
/// [`chart_gamma_between`], keeping the roots consistent with
/// [`GyrobarycentricRep::m0_squared`] in both models.
pub fn boundary_weight_solve(model: &GyroModel, a1: &BallPoint, a2: &BallPoint) -> Result<(f64, f64)> {
    if a1.coords() == a2.coords() {
        return Err(GyroError::DegenerateInput {
            detail: "boundary weights need two distinct anchors".into(),
        });
    }
    let g = chart_gamma_between(model, a1, a2)?;
    let root = (g * g - 1.0).max(0.0).sqrt();
    Ok((g + root, g - root))
}

/// Recovers gyrobarycentric weights of an interior point against
/// pointwise independent anchors (at most `n + 1` of them). The system
/// is linear in `x_k = m_k γ_k`: the chord-chart anchor matrix with an
/// appended normalization row maps `x` to `(γ_P P; γ_P)`. Weights are
/// returned normalized to `Σ m_k γ_k = γ_P`.
pub fn gyro_weight_solve(
    model: &GyroModel,
    anchors: &[BallPoint],
    p: &BallPoint,
) -> Result<Vec<f64>> {
    if anchors.is_empty() {
        return Err(GyroError::EmptyList);
    }
    if !gyro_pointwise_independent(model, anchors)? {
        return Err(GyroError::DependentAnchors);
    }
    let n = model.dim();
    let chart_p = to_chord_chart(model, p)?;
    let gamma_p = crate::ball::gamma_raw(&chart_p, model.radius());
    let k = anchors.len();
    let mut m = DMatrix::zeros(n + 1, k);
    let mut gammas = Vec::with_capacity(k);
    for (j, a) in anchors.iter().enumerate() {
        let chart = to_chord_chart(model, a)?;
        let g = crate::ball::gamma_raw(&chart, model.radius());
        for i in 0..n {
            m[(i, j)] = chart[i];
        }
        m[(n, j)] = 1.0;
        gammas.push(g);
    }
    let mut rhs = DVector::zeros(n + 1);
    for i in 0..n {
        rhs[i] = gamma_p * chart_p[i];
    }
    rhs[n] = gamma_p;
    let svd = m.clone().svd(true, true);
    let x = svd
        .solve(&rhs, 1e-14)
        .map_err(|_| GyroError::DependentAnchors)?;
    let residual = (&m * &x - &rhs).norm();
    if residual > 1e-8 * (1.0 + gamma_p) {
        return Err(GyroError::NotInAffineSpan { residual });
    }
    Ok(x
        .iter()
        .zip(&gammas)
        .map(|(xi, gi)| xi / gi)
        .collect())
}
