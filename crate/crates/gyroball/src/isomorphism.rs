//! The isomorphism between the two ball models: the doubling map and its
//! half-argument inverse, transport of operations across the models,
//! gamma-factor relations, and the model-invariant unit expression.

use nalgebra::DVector;

use crate::ball::{BallParams, BallPoint};
use crate::error::{GyroError, Result};
use crate::model::{GyroModel, ModelKind};

/// Which model a tagged point lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Einstein,
    Mobius,
}

impl Side {
    pub fn kind(self) -> ModelKind {
        match self {
            Side::Einstein => ModelKind::Einstein,
            Side::Mobius => ModelKind::Mobius,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Einstein => Side::Mobius,
            Side::Mobius => Side::Einstein,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.kind().fmt(f)
    }
}

/// A ball point tagged with the model it belongs to, so transported
/// results cannot be silently mixed back into the wrong algebra.
#[derive(Debug, Clone)]
pub struct SidedPoint {
    pub side: Side,
    pub point: BallPoint,
}

impl SidedPoint {
    pub fn einstein(point: BallPoint) -> Self {
        Self { side: Side::Einstein, point }
    }

    pub fn mobius(point: BallPoint) -> Self {
        Self { side: Side::Mobius, point }
    }
}

/// The two models over one shared ball, with the doubling isomorphism
/// between them.
///
/// The map sends a conformal-model point `v` to `2 ⊗ v` computed in the
/// conformal algebra; its inverse is `½ ⊗ v`. Under it the conformal
/// addition corresponds to the chord-model addition, gyrations
/// correspond entrywise, and gamma factors obey `γ_{2⊗v} = 2γ_v² − 1`.
#[derive(Debug, Clone, Copy)]
pub struct ModelPair {
    einstein: GyroModel,
    mobius: GyroModel,
}

impl ModelPair {
    /// Pairs two models over the same ball parameters.
    pub fn new(einstein: GyroModel, mobius: GyroModel) -> Result<Self> {
        if einstein.kind() != ModelKind::Einstein {
            return Err(GyroError::WrongModel {
                expected: ModelKind::Einstein.to_string(),
                got: einstein.kind().to_string(),
            });
        }
        if mobius.kind() != ModelKind::Mobius {
            return Err(GyroError::WrongModel {
                expected: ModelKind::Mobius.to_string(),
                got: mobius.kind().to_string(),
            });
        }
        einstein.params().same_as(&mobius.params())?;
        Ok(Self { einstein, mobius })
    }

    /// Both models over one shared ball.
    pub fn shared(params: BallParams) -> Self {
        Self {
            einstein: GyroModel::einstein(params),
            mobius: GyroModel::mobius(params),
        }
    }

    pub fn einstein_model(&self) -> &GyroModel {
        &self.einstein
    }

    pub fn mobius_model(&self) -> &GyroModel {
        &self.mobius
    }

    pub fn model(&self, side: Side) -> &GyroModel {
        match side {
            Side::Einstein => &self.einstein,
            Side::Mobius => &self.mobius,
        }
    }

    pub fn params(&self) -> BallParams {
        self.einstein.params()
    }

    /// `v ↦ 2 ⊗ v`: carries a conformal-model point to the chord model.
    pub fn mobius_to_einstein(&self, p: &BallPoint) -> Result<BallPoint> {
        self.mobius.integer_mul(2, p)
    }

    /// `v ↦ ½ ⊗ v`: carries a chord-model point to the conformal model.
    pub fn einstein_to_mobius(&self, p: &BallPoint) -> Result<BallPoint> {
        self.mobius.scalar_mul(0.5, p)
    }

    /// Carries a tagged point to the other model.
    pub fn convert(&self, p: &SidedPoint) -> Result<SidedPoint> {
        let point = match p.side {
            Side::Einstein => self.einstein_to_mobius(&p.point)?,
            Side::Mobius => self.mobius_to_einstein(&p.point)?,
        };
        Ok(SidedPoint { side: p.side.other(), point })
    }

    /// Evaluates an operation by transporting the arguments to the other
    /// model, operating there, and carrying the result back. The output
    /// is tagged with the original side; by the isomorphism it equals
    /// the native evaluation.
    pub fn transport(&self, op: TransportOp, args: &[SidedPoint]) -> Result<SidedPoint> {
        if args.is_empty() {
            return Err(GyroError::EmptyList);
        }
        let side = args[0].side;
        if let Some(stranger) = args.iter().find(|a| a.side != side) {
            return Err(GyroError::SideMismatch {
                expected: side.to_string(),
                got: stranger.side.to_string(),
            });
        }
        let far = self.model(side.other());
        let carried: Vec<BallPoint> = args
            .iter()
            .map(|a| self.convert(a).map(|s| s.point))
            .collect::<Result<_>>()?;
        let far_result = match op {
            TransportOp::Add => {
                if carried.len() != 2 {
                    return Err(GyroError::DimensionMismatch {
                        expected: 2,
                        got: carried.len(),
                    });
                }
                far.add(&carried[0], &carried[1])?
            }
            TransportOp::Coadd => {
                if carried.len() != 2 {
                    return Err(GyroError::DimensionMismatch {
                        expected: 2,
                        got: carried.len(),
                    });
                }
                far.coadd(&carried[0], &carried[1])?
            }
            TransportOp::CoaddMany => far.coadd_many(&carried)?,
        };
        let back = SidedPoint { side: side.other(), point: far_result };
        self.convert(&back)
    }
}

/// Binary and k-ary operations the pair can evaluate on the far side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransportOp {
    Add,
    Coadd,
    CoaddMany,
}

/// Gamma factors of one point in both models, with the residuals of the
/// relations tying them together.
#[derive(Debug, Clone, Copy)]
pub struct GammaPointReport {
    pub gamma_m: f64,
    pub gamma_e: f64,
    /// Relative defect of `γ_E = 2γ_M² − 1` for `E = 2 ⊗ M`.
    pub scalar_residual: f64,
    /// Relative defect of `γ_E · E = 2γ_M² · M`.
    pub vector_residual: f64,
}

/// Evaluates the point-level gamma relations for a conformal-model point
/// and its chord-model image.
pub fn gamma_point_report(pair: &ModelPair, m: &BallPoint) -> Result<GammaPointReport> {
    let e = pair.mobius_to_einstein(m)?;
    let gamma_m = m.gamma();
    let gamma_e = e.gamma();
    let predicted = 2.0 * gamma_m * gamma_m - 1.0;
    let scalar_residual = (gamma_e - predicted).abs() / gamma_e.abs().max(1.0);
    let lhs = e.coords() * gamma_e;
    let rhs = m.coords() * (2.0 * gamma_m * gamma_m);
    let vector_residual = (&lhs - rhs).norm() / lhs.norm().max(1.0);
    Ok(GammaPointReport {
        gamma_m,
        gamma_e,
        scalar_residual,
        vector_residual,
    })
}

/// Pair-level gamma relations: the gamma of the gyro-difference of two
/// points, compared across the models.
#[derive(Debug, Clone, Copy)]
pub struct GammaPairReport {
    /// `γ` of `⊖A ⊕ B` in the conformal model.
    pub gamma_m: f64,
    /// `γ` of `⊖A' ⊕ B'` in the chord model, `A' = 2 ⊗ A` etc.
    pub gamma_e: f64,
    /// Relative defect of `γ_E = 2γ_M² − 1`.
    pub scalar_residual: f64,
    /// Relative defect of `sqrt(γ_E² − 1) = 2γ_M·sqrt(γ_M² − 1)`.
    pub sqrt_residual: f64,
}

/// Evaluates the pair-level gamma relations for two conformal-model
/// points and their chord-model images.
pub fn gamma_pair_report(pair: &ModelPair, a: &BallPoint, b: &BallPoint) -> Result<GammaPairReport> {
    let gamma_m = pair.mobius_model().gamma_between(a, b)?;
    let ae = pair.mobius_to_einstein(a)?;
    let be = pair.mobius_to_einstein(b)?;
    let gamma_e = pair.einstein_model().gamma_between(&ae, &be)?;
    let predicted = 2.0 * gamma_m * gamma_m - 1.0;
    let scalar_residual = (gamma_e - predicted).abs() / gamma_e.abs().max(1.0);
    let lhs = (gamma_e * gamma_e - 1.0).max(0.0).sqrt();
    let rhs = 2.0 * gamma_m * (gamma_m * gamma_m - 1.0).max(0.0).sqrt();
    let sqrt_residual = (lhs - rhs).abs() / lhs.abs().max(1.0);
    Ok(GammaPairReport {
        gamma_m,
        gamma_e,
        scalar_residual,
        sqrt_residual,
    })
}

/// The expression `γ_{ab} (⊖a ⊕ b) / sqrt(γ_{ab}² − 1)`, which takes the
/// same value in both models when evaluated on corresponding points.
///
/// The gamma identity `γ² − 1 = γ²|v|²/r²` collapses it to
/// `r · (⊖a ⊕ b)/|⊖a ⊕ b|`: the unit gyro-direction scaled to the
/// boundary. That form is evaluated here, avoiding the cancellation in
/// the radical near the origin.
pub fn invariant_expression(model: &GyroModel, a: &BallPoint, b: &BallPoint) -> Result<DVector<f64>> {
    if a.coords() == b.coords() {
        return Err(GyroError::DegenerateInput {
            detail: "invariant expression of coincident points".into(),
        });
    }
    let d = model.solve_left(a, b)?;
    let norm = d.norm();
    if norm < 1e-300 {
        return Err(GyroError::NumericallyAtBoundary {
            detail: format!("gyro-difference norm {norm} cannot be normalized"),
        });
    }
    Ok(d.coords() * (model.radius() / norm))
}

/// Gyrodistance in the chord model between the gyroline of the conformal
/// model carried over by doubling and the chord-model gyroline through
/// the image points, at one parameter.
///
/// A conformal gyroline `L(t)` maps to the chord-model gyroline through
/// the image points with the *same* parameter: the doubling map takes
/// geodesics to geodesics preserving the parametrization.
pub fn gyroline_transport_residual(
    pair: &ModelPair,
    a_m: &BallPoint,
    b_m: &BallPoint,
    t: f64,
) -> Result<f64> {
    let line_m = crate::geometry::Gyroline::new(*pair.mobius_model(), a_m.clone(), b_m.clone())?;
    let p_m = line_m.point(t)?;
    let carried = pair.mobius_to_einstein(&p_m)?;
    let a_e = pair.mobius_to_einstein(a_m)?;
    let b_e = pair.mobius_to_einstein(b_m)?;
    let line_e = crate::geometry::Gyroline::new(*pair.einstein_model(), a_e, b_e)?;
    let p_e = line_e.point(t)?;
    pair.einstein_model().distance(&carried, &p_e)
}
