//! Gyrations materialized as orthogonal matrices acting on ambient
//! coordinates, with defect measurements used throughout the test suites.

use nalgebra::{DMatrix, DVector};

use crate::ball::{BallParams, BallPoint};
use crate::error::{GyroError, Result};

/// A gyration captured as a linear map. Gyrations of both models are
/// rotations of the ambient space, so the matrix is orthogonal with
/// determinant one up to rounding; the defect methods quantify how far a
/// computed instance strays from that ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct GyrationMap {
    params: BallParams,
    matrix: DMatrix<f64>,
}

impl GyrationMap {
    /// Builds the matrix column by column by applying a linear kernel to
    /// the standard basis. The kernel may be evaluated on unit vectors
    /// even though those lie outside the open ball, because the gyration
    /// formulas are linear in the rotated argument.
    pub fn from_kernel<F>(params: BallParams, kernel: F) -> Self
    where
        F: Fn(&DVector<f64>) -> DVector<f64>,
    {
        let n = params.dim();
        let mut matrix = DMatrix::zeros(n, n);
        let mut basis = DVector::zeros(n);
        for j in 0..n {
            basis[j] = 1.0;
            matrix.set_column(j, &kernel(&basis));
            basis[j] = 0.0;
        }
        Self { params, matrix }
    }

    pub fn identity(params: BallParams) -> Self {
        Self {
            params,
            matrix: DMatrix::identity(params.dim(), params.dim()),
        }
    }

    pub fn params(&self) -> BallParams {
        self.params
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply_raw(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }

    /// Applies the gyration to a ball point. Gyrations are isometries, so
    /// the result stays interior up to rounding.
    pub fn apply(&self, p: &BallPoint) -> Result<BallPoint> {
        self.params.same_as(&p.params())?;
        BallPoint::from_computed(self.params, &self.matrix * p.coords())
    }

    /// Composition `self ∘ other` (first `other`, then `self`).
    pub fn compose(&self, other: &GyrationMap) -> Result<GyrationMap> {
        self.params.same_as(&other.params)?;
        Ok(GyrationMap {
            params: self.params,
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// The inverse gyration. Orthogonality makes this the transpose.
    pub fn inverse(&self) -> GyrationMap {
        GyrationMap {
            params: self.params,
            matrix: self.matrix.transpose(),
        }
    }

    /// Largest entry of `|M - I|`: zero exactly when the gyration is trivial.
    pub fn identity_defect(&self) -> f64 {
        let n = self.params.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.matrix[(i, j)] - target).abs());
            }
        }
        worst
    }

    /// Largest entry of `|MᵀM - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.matrix.transpose() * &self.matrix;
        let n = self.params.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - target).abs());
            }
        }
        worst
    }

    /// Largest entrywise difference between two gyration matrices.
    pub fn max_entry_diff(&self, other: &GyrationMap) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.clone().determinant()
    }

    /// Rotation angle in the plane. Only defined for dimension two.
    pub fn rotation_angle(&self) -> Result<f64> {
        if self.params.dim() != 2 {
            return Err(GyroError::DimensionMismatch {
                expected: 2,
                got: self.params.dim(),
            });
        }
        Ok(self.matrix[(1, 0)].atan2(self.matrix[(0, 0)]))
    }
}
