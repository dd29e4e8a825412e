//! The typed public surface: a model selector plus a dispatcher that
//! validates ball membership and context agreement before delegating to
//! the per-model kernels.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::ball::{
    cross_norm2, integer_mul_raw, sample_ball, scalar_mul_raw, BallParams, BallPoint,
};
use crate::error::{GyroError, Result};
use crate::gyration::GyrationMap;
use crate::{einstein, mobius};

/// Which of the two ball models an operation should use.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Velocity-composition model: straight chords are geodesics.
    Einstein,
    /// Conformal model: geodesics are arcs orthogonal to the boundary.
    Mobius,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelKind::Einstein => write!(f, "einstein"),
            ModelKind::Mobius => write!(f, "mobius"),
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = GyroError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "einstein" | "e" => Ok(ModelKind::Einstein),
            "mobius" | "m" => Ok(ModelKind::Mobius),
            other => Err(GyroError::WrongModel {
                expected: "einstein or mobius".into(),
                got: other.into(),
            }),
        }
    }
}

/// A gyrovector space: a model choice over a concrete ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GyroModel {
    kind: ModelKind,
    params: BallParams,
}

impl GyroModel {
    pub fn new(kind: ModelKind, params: BallParams) -> Self {
        Self { kind, params }
    }

    pub fn einstein(params: BallParams) -> Self {
        Self::new(ModelKind::Einstein, params)
    }

    pub fn mobius(params: BallParams) -> Self {
        Self::new(ModelKind::Mobius, params)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
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

    pub fn origin(&self) -> BallPoint {
        BallPoint::origin(self.params)
    }

    /// Validates raw coordinates into a point of this space.
    pub fn point(&self, coords: Vec<f64>) -> Result<BallPoint> {
        BallPoint::new(self.params, coords)
    }

    /// Draws a random interior point with norm at most `cap * radius`.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R, cap: f64) -> BallPoint {
        sample_ball(self.params, rng, cap)
    }

    fn check(&self, p: &BallPoint) -> Result<()> {
        self.params.same_as(&p.params())
    }

    fn wrap(&self, coords: DVector<f64>) -> Result<BallPoint> {
        BallPoint::from_computed(self.params, coords)
    }

    /// The model's addition `u ⊕ v`.
    pub fn add(&self, u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
        self.check(u)?;
        self.check(v)?;
        let c = self.radius();
        let out = match self.kind {
            ModelKind::Einstein => einstein::add_raw(u.coords(), v.coords(), c),
            ModelKind::Mobius => mobius::add_raw(u.coords(), v.coords(), c),
        };
        self.wrap(out)
    }

    /// The inverse `⊖u`, which is coordinate negation in both models.
    pub fn neg(&self, u: &BallPoint) -> Result<BallPoint> {
        self.check(u)?;
        self.wrap(-u.coords())
    }

    /// `u ⊖ v = u ⊕ (⊖v)`.
    pub fn sub(&self, u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
        let nv = self.neg(v)?;
        self.add(u, &nv)
    }

    /// Addition restricted to collinear operands, evaluated on signed
    /// magnitudes: `(a + b) / (1 + a b / r^2)` along the common line. The
    /// same expression serves both models. Operands whose directions
    /// differ by more than an angle of about 1e-12 are rejected.
    pub fn add_parallel(&self, u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
        self.check(u)?;
        self.check(v)?;
        let nu = u.norm();
        let nv = v.norm();
        if nu == 0.0 {
            return Ok(v.clone());
        }
        if nv == 0.0 {
            return Ok(u.clone());
        }
        let sine = (cross_norm2(u.coords(), v.coords())).sqrt() / (nu * nv);
        if sine > 1e-12 {
            return Err(GyroError::NotParallel { rejection: sine });
        }
        let dir = u.coords() / nu;
        let a = nu;
        let b = v.coords().dot(&dir);
        let c2 = self.radius() * self.radius();
        let magnitude = (a + b) / (1.0 + a * b / c2);
        self.wrap(dir * magnitude)
    }

    /// Applies `gyr[u, v]` to `w` through the closed-form linear action.
    pub fn gyr_apply(&self, u: &BallPoint, v: &BallPoint, w: &BallPoint) -> Result<BallPoint> {
        self.check(u)?;
        self.check(v)?;
        self.check(w)?;
        let c = self.radius();
        let out = match self.kind {
            ModelKind::Einstein => einstein::gyr_raw(u.coords(), v.coords(), w.coords(), c),
            ModelKind::Mobius => mobius::gyr_raw(u.coords(), v.coords(), w.coords(), c),
        };
        self.wrap(out)
    }

    /// Applies `gyr[u, v]` to `w` by composing additions:
    /// `⊖(u ⊕ v) ⊕ (u ⊕ (v ⊕ w))`. Exact-arithmetic equal to
    /// [`GyroModel::gyr_apply`], but with worse rounding near the
    /// boundary; kept as the independent reference the closed form is
    /// tested against.
    pub fn gyr_apply_definitional(
        &self,
        u: &BallPoint,
        v: &BallPoint,
        w: &BallPoint,
    ) -> Result<BallPoint> {
        let vw = self.add(v, w)?;
        let right = self.add(u, &vw)?;
        let uv = self.add(u, v)?;
        let minus_uv = self.neg(&uv)?;
        self.add(&minus_uv, &right)
    }

    /// Materializes `gyr[u, v]` as a matrix via the closed-form action on
    /// basis directions.
    pub fn gyration(&self, u: &BallPoint, v: &BallPoint) -> Result<GyrationMap> {
        self.check(u)?;
        self.check(v)?;
        let c = self.radius();
        let (uc, vc) = (u.coords().clone(), v.coords().clone());
        Ok(match self.kind {
            ModelKind::Einstein => {
                GyrationMap::from_kernel(self.params, move |w| einstein::gyr_raw(&uc, &vc, w, c))
            }
            ModelKind::Mobius => {
                GyrationMap::from_kernel(self.params, move |w| mobius::gyr_raw(&uc, &vc, w, c))
            }
        })
    }

    /// Materializes `gyr[u, v]` by composing additions. The rotated basis
    /// directions are scaled into the ball and back out, which the
    /// linearity of the gyration permits.
    pub fn gyration_definitional(&self, u: &BallPoint, v: &BallPoint) -> Result<GyrationMap> {
        self.check(u)?;
        self.check(v)?;
        let model = *self;
        let (u, v) = (u.clone(), v.clone());
        let scale = self.radius() / 4.0;
        Ok(GyrationMap::from_kernel(self.params, move |w| {
            let probe = BallPoint::from_computed(model.params, w * scale)
                .expect("scaled basis direction is interior");
            let image = model
                .gyr_apply_definitional(&u, &v, &probe)
                .map(|p| p.coords().clone())
                .unwrap_or_else(|_| w * f64::NAN);
            image / scale
        }))
    }

    /// `r ⊗ v` along the ray of `v`.
    pub fn scalar_mul(&self, r: f64, v: &BallPoint) -> Result<BallPoint> {
        self.check(v)?;
        self.wrap(scalar_mul_raw(r, v.coords(), self.radius()))
    }

    /// `k ⊗ v` in closed form, avoiding the `tanh`/`atanh` round-trip.
    pub fn integer_mul(&self, k: i32, v: &BallPoint) -> Result<BallPoint> {
        self.check(v)?;
        self.wrap(integer_mul_raw(k, v.coords(), self.radius()))
    }

    /// The commutative coaddition `u ⊞ v` in the model's closed form.
    pub fn coadd(&self, u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
        self.check(u)?;
        self.check(v)?;
        let c = self.radius();
        let out = match self.kind {
            ModelKind::Einstein => einstein::coadd_raw(u.coords(), v.coords(), c),
            ModelKind::Mobius => mobius::coadd_raw(u.coords(), v.coords(), c),
        };
        self.wrap(out)
    }

    /// Coaddition through its defining combination `u ⊕ gyr[u, ⊖v] v`,
    /// the independent reference for [`GyroModel::coadd`].
    pub fn coadd_definitional(&self, u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
        let nv = self.neg(v)?;
        let rotated = self.gyr_apply(u, &nv, v)?;
        self.add(u, &rotated)
    }

    /// `k`-ary coaddition. Empty input is rejected; a single operand is
    /// returned unchanged (up to rounding through the closed form).
    pub fn coadd_many(&self, points: &[BallPoint]) -> Result<BallPoint> {
        for p in points {
            self.check(p)?;
        }
        let raw: Vec<DVector<f64>> = points.iter().map(|p| p.coords().clone()).collect();
        let c = self.radius();
        let out = match self.kind {
            ModelKind::Einstein => einstein::coadd_many_raw(&raw, c)?,
            ModelKind::Mobius => mobius::coadd_many_raw(&raw, c)?,
        };
        self.wrap(out)
    }

    /// The dual subtraction `u ⊟ v = u ⊖ gyr[u, v] v`.
    pub fn cosub(&self, u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
        let rotated = self.gyr_apply(u, v, v)?;
        self.sub(u, &rotated)
    }

    /// The unique `x` with `a ⊕ x = b`, namely `⊖a ⊕ b`.
    pub fn solve_left(&self, a: &BallPoint, b: &BallPoint) -> Result<BallPoint> {
        let na = self.neg(a)?;
        self.add(&na, b)
    }

    /// The unique `x` with `x ⊕ a = b`, namely `b ⊟ a`.
    pub fn solve_right(&self, a: &BallPoint, b: &BallPoint) -> Result<BallPoint> {
        self.cosub(b, a)
    }

    /// `|⊖u ⊕ v|` through the cancellation-free closed form.
    pub fn distance(&self, u: &BallPoint, v: &BallPoint) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        let c = self.radius();
        Ok(match self.kind {
            ModelKind::Einstein => einstein::dist_raw(u.coords(), v.coords(), c),
            ModelKind::Mobius => mobius::dist_raw(u.coords(), v.coords(), c),
        })
    }

    /// Gamma factor of a point of this space.
    pub fn gamma(&self, p: &BallPoint) -> Result<f64> {
        self.check(p)?;
        Ok(p.gamma())
    }

    /// Gamma factor of `u ⊕ v` from the model's composition law, without
    /// forming the sum.
    pub fn gamma_of_add(&self, u: &BallPoint, v: &BallPoint) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        let c = self.radius();
        Ok(match self.kind {
            ModelKind::Einstein => einstein::gamma_of_add(u.coords(), v.coords(), c),
            ModelKind::Mobius => mobius::gamma_of_add(u.coords(), v.coords(), c),
        })
    }

    /// Gamma factor of `⊖u ⊕ v` without forming the difference.
    pub fn gamma_between(&self, u: &BallPoint, v: &BallPoint) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        let c = self.radius();
        Ok(match self.kind {
            ModelKind::Einstein => einstein::gamma_between(u.coords(), v.coords(), c),
            ModelKind::Mobius => mobius::gamma_between(u.coords(), v.coords(), c),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn models() -> Vec<GyroModel> {
        let p = BallParams::unit(3);
        vec![GyroModel::einstein(p), GyroModel::mobius(p)]
    }

    #[test]
    fn solvers_invert_addition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for model in models() {
            for _ in 0..50 {
                let a = model.sample(&mut rng, 0.9);
                let b = model.sample(&mut rng, 0.9);
                let x = model.solve_left(&a, &b).unwrap();
                let back = model.add(&a, &x).unwrap();
                assert!(model.distance(&back, &b).unwrap() < 1e-11);
                let y = model.solve_right(&a, &b).unwrap();
                let back = model.add(&y, &a).unwrap();
                assert!(model.distance(&back, &b).unwrap() < 1e-11);
            }
        }
    }

    #[test]
    fn gyration_maps_are_special_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for model in models() {
            for _ in 0..25 {
                let u = model.sample(&mut rng, 0.95);
                let v = model.sample(&mut rng, 0.95);
                let g = model.gyration(&u, &v).unwrap();
                assert!(g.orthogonality_defect() < 1e-12);
                assert!((g.determinant() - 1.0).abs() < 1e-12);
                let h = model.gyration_definitional(&u, &v).unwrap();
                assert!(g.max_entry_diff(&h) < 1e-9);
                let paired = g.compose(&model.gyration(&v, &u).unwrap()).unwrap();
                assert!(paired.identity_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn parallel_addition_agrees_with_full_addition() {
        for model in models() {
            let u = model.point(vec![0.3, 0.4, 0.0]).unwrap();
            let same = model.scalar_mul(0.5, &u).unwrap();
            let opposite = model.scalar_mul(-0.9, &u).unwrap();
            for other in [&same, &opposite] {
                let fast = model.add_parallel(&u, other).unwrap();
                let full = model.add(&u, other).unwrap();
                assert!(model.distance(&fast, &full).unwrap() < 1e-13);
            }
            let skew = model.point(vec![0.0, 0.0, 0.2]).unwrap();
            assert!(matches!(
                model.add_parallel(&u, &skew),
                Err(GyroError::NotParallel { .. })
            ));
        }
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let small = GyroModel::einstein(BallParams::unit(2));
        let big = GyroModel::einstein(BallParams::new(2, 2.0).unwrap());
        let p = small.point(vec![0.1, 0.2]).unwrap();
        let q = big.point(vec![0.1, 0.2]).unwrap();
        assert!(matches!(
            small.add(&p, &q),
            Err(GyroError::ContextMismatch { .. })
        ));
        assert!(matches!(
            big.gamma(&p),
            Err(GyroError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn subtraction_cancels() {
        for model in models() {
            let u = model.point(vec![0.5, -0.2, 0.1]).unwrap();
            let z = model.sub(&u, &u).unwrap();
            assert!(z.norm() < 1e-15);
        }
    }

    #[test]
    fn model_kind_round_trips_through_strings() {
        assert_eq!("einstein".parse::<ModelKind>().unwrap(), ModelKind::Einstein);
        assert_eq!("MOBIUS".parse::<ModelKind>().unwrap(), ModelKind::Mobius);
        assert!("poincare".parse::<ModelKind>().is_err());
        assert_eq!(ModelKind::Einstein.to_string(), "einstein");
    }
}
