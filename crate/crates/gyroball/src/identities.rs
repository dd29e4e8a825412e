//! Identity-based verification: the axioms and theorems that
//! characterize the two models, runnable as randomized suites against
//! either a real model or a deliberately broken one.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ball::{gamma_raw, sample_ball, scalar_mul_raw, BallParams, TolerancePolicy};
use crate::error::{GyroError, Result};
use crate::model::{GyroModel, ModelKind};
use crate::{einstein, mobius};

/// The operations an identity suite exercises, on raw interior vectors.
/// Implemented by the real models and by [`BrokenModel`].
pub trait GyroOps {
    fn params(&self) -> BallParams;
    fn add(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64>;
    fn gyr(&self, u: &DVector<f64>, v: &DVector<f64>, w: &DVector<f64>) -> DVector<f64>;
    fn scalar_mul(&self, r: f64, v: &DVector<f64>) -> DVector<f64>;
    fn coadd(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64>;
    /// Distance used to measure how far an identity is from holding.
    fn residual(&self, lhs: &DVector<f64>, rhs: &DVector<f64>) -> f64;

    /// `u ⊟ v = u ⊖ gyr[u, v] v`.
    fn cosub(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let rotated = self.gyr(u, v, v);
        self.add(u, &(-rotated))
    }
}

impl GyroOps for GyroModel {
    fn params(&self) -> BallParams {
        GyroModel::params(self)
    }

    fn add(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        match self.kind() {
            ModelKind::Einstein => einstein::add_raw(u, v, self.radius()),
            ModelKind::Mobius => mobius::add_raw(u, v, self.radius()),
        }
    }

    fn gyr(&self, u: &DVector<f64>, v: &DVector<f64>, w: &DVector<f64>) -> DVector<f64> {
        match self.kind() {
            ModelKind::Einstein => einstein::gyr_raw(u, v, w, self.radius()),
            ModelKind::Mobius => mobius::gyr_raw(u, v, w, self.radius()),
        }
    }

    fn scalar_mul(&self, r: f64, v: &DVector<f64>) -> DVector<f64> {
        scalar_mul_raw(r, v, self.radius())
    }

    fn coadd(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        match self.kind() {
            ModelKind::Einstein => einstein::coadd_raw(u, v, self.radius()),
            ModelKind::Mobius => mobius::coadd_raw(u, v, self.radius()),
        }
    }

    /// Model distance `|⊖lhs ⊕ rhs|` in its cancellation-free form, so
    /// that the measured residual reflects the identity and not the
    /// metric's own rounding.
    fn residual(&self, lhs: &DVector<f64>, rhs: &DVector<f64>) -> f64 {
        match self.kind() {
            ModelKind::Einstein => einstein::dist_raw(lhs, rhs, self.radius()),
            ModelKind::Mobius => mobius::dist_raw(lhs, rhs, self.radius()),
        }
    }
}

/// A deliberately wrong model: the velocity addition with the sign of the
/// radial correction term flipped. It is close enough to the real thing
/// to produce plausible-looking numbers, yet fails the axioms by a wide
/// margin; the suite runner must detect that.
#[derive(Debug, Clone, Copy)]
pub struct BrokenModel {
    params: BallParams,
}

impl BrokenModel {
    pub fn new(params: BallParams) -> Self {
        Self { params }
    }
}

impl GyroOps for BrokenModel {
    fn params(&self) -> BallParams {
        self.params
    }

    fn add(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let c = self.params.radius();
        let c2 = c * c;
        let gu = gamma_raw(u, c);
        let uv = u.dot(v);
        let factor = 1.0 / (1.0 + uv / c2);
        // Sign of the radial correction flipped relative to the real model.
        let coeff_u = 1.0 - (gu / (c2 * (1.0 + gu))) * uv;
        (u * coeff_u + v / gu) * factor
    }

    fn gyr(&self, u: &DVector<f64>, v: &DVector<f64>, w: &DVector<f64>) -> DVector<f64> {
        // Only the composed-addition form exists for a made-up addition.
        let inner = self.add(v, w);
        let right = self.add(u, &inner);
        self.add(&(-self.add(u, v)), &right)
    }

    fn scalar_mul(&self, r: f64, v: &DVector<f64>) -> DVector<f64> {
        scalar_mul_raw(r, v, self.params.radius())
    }

    fn coadd(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let rotated = self.gyr(u, &(-v), v);
        self.add(u, &rotated)
    }

    /// Euclidean residual: the broken addition wanders outside the ball,
    /// where no model metric is defined. Non-finite values are mapped to
    /// infinity so they register as failures.
    fn residual(&self, lhs: &DVector<f64>, rhs: &DVector<f64>) -> f64 {
        let d = (lhs - rhs).norm();
        if d.is_finite() {
            d
        } else {
            f64::INFINITY
        }
    }
}

/// One verifiable identity. Names are stable strings used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `0 ⊕ u = u`
    LeftIdentity,
    /// `⊖u ⊕ u = 0`
    LeftInverse,
    /// `u ⊕ (v ⊕ w) = (u ⊕ v) ⊕ gyr[u,v] w`
    LeftGyroassociativity,
    /// `(u ⊕ v) ⊕ w = u ⊕ (v ⊕ gyr[v,u] w)`
    RightGyroassociativity,
    /// `gyr[u ⊕ v, v] = gyr[u, v]`
    LeftLoop,
    /// `gyr[u, v ⊕ u] = gyr[u, v]`
    RightLoop,
    /// `u ⊕ v = gyr[u,v] (v ⊕ u)`
    Gyrocommutativity,
    /// `gyr[u,v] (u ⊕ w) = gyr[u,v] u ⊕ gyr[u,v] w`
    GyrationAutomorphism,
    /// `|gyr[u,v] w| = |w|`
    GyrationIsometry,
    /// `gyr[v,u] gyr[u,v] w = w`
    GyrationInverse,
    /// `⊖(u ⊕ v) = ⊖u ⊕ ⊖v`
    AutomorphicInverse,
    /// `⊖u ⊕ (u ⊕ v) = v`
    LeftCancellation,
    /// `(v ⊟ u) ⊕ u = v`
    RightCancellation,
    /// `(v ⊖ u) ⊞ u = v`
    DualRightCancellation,
    /// `d = (v ⊞ w) ⊖ u` implies `v ⊞ w = d ⊞ u`
    CosumExchange,
    /// `u ⊕ (v ⊕ u) = u ⊞ (u ⊕ v)`
    CoaddSwap,
    /// `u ⊞ v = v ⊞ u`
    CooperationCommutativity,
    /// `2 ⊗ (u ⊕ v) = u ⊕ (2 ⊗ v ⊕ u)`
    TwoSum,
}

impl Identity {
    pub const ALL: [Identity; 18] = [
        Identity::LeftIdentity,
        Identity::LeftInverse,
        Identity::LeftGyroassociativity,
        Identity::RightGyroassociativity,
        Identity::LeftLoop,
        Identity::RightLoop,
        Identity::Gyrocommutativity,
        Identity::GyrationAutomorphism,
        Identity::GyrationIsometry,
        Identity::GyrationInverse,
        Identity::AutomorphicInverse,
        Identity::LeftCancellation,
        Identity::RightCancellation,
        Identity::DualRightCancellation,
        Identity::CosumExchange,
        Identity::CoaddSwap,
        Identity::CooperationCommutativity,
        Identity::TwoSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::LeftIdentity => "left-identity",
            Identity::LeftInverse => "left-inverse",
            Identity::LeftGyroassociativity => "left-gyroassociativity",
            Identity::RightGyroassociativity => "right-gyroassociativity",
            Identity::LeftLoop => "left-loop",
            Identity::RightLoop => "right-loop",
            Identity::Gyrocommutativity => "gyrocommutativity",
            Identity::GyrationAutomorphism => "gyration-automorphism",
            Identity::GyrationIsometry => "gyration-isometry",
            Identity::GyrationInverse => "gyration-inverse",
            Identity::AutomorphicInverse => "automorphic-inverse",
            Identity::LeftCancellation => "left-cancellation",
            Identity::RightCancellation => "right-cancellation",
            Identity::DualRightCancellation => "dual-right-cancellation",
            Identity::CosumExchange => "cosum-exchange",
            Identity::CoaddSwap => "coadd-swap",
            Identity::CooperationCommutativity => "cooperation-commutativity",
            Identity::TwoSum => "two-sum",
        }
    }

    pub fn from_name(name: &str) -> Result<Identity> {
        Identity::ALL
            .iter()
            .copied()
            .find(|id| id.name() == name)
            .ok_or_else(|| GyroError::UnknownIdentity { name: name.into() })
    }

    /// Residual of this identity on one sample triple.
    fn eval(&self, ops: &dyn GyroOps, u: &DVector<f64>, v: &DVector<f64>, w: &DVector<f64>) -> f64 {
        let r = match self {
            Identity::LeftIdentity => {
                let zero = DVector::zeros(u.len());
                ops.residual(&ops.add(&zero, u), u)
            }
            Identity::LeftInverse => ops.add(&(-u), u).norm(),
            Identity::LeftGyroassociativity => {
                let lhs = ops.add(u, &ops.add(v, w));
                let rhs = ops.add(&ops.add(u, v), &ops.gyr(u, v, w));
                ops.residual(&lhs, &rhs)
            }
            Identity::RightGyroassociativity => {
                let lhs = ops.add(&ops.add(u, v), w);
                let rhs = ops.add(u, &ops.add(v, &ops.gyr(v, u, w)));
                ops.residual(&lhs, &rhs)
            }
            Identity::LeftLoop => {
                let lhs = ops.gyr(&ops.add(u, v), v, w);
                ops.residual(&lhs, &ops.gyr(u, v, w))
            }
            Identity::RightLoop => {
                let lhs = ops.gyr(u, &ops.add(v, u), w);
                ops.residual(&lhs, &ops.gyr(u, v, w))
            }
            Identity::Gyrocommutativity => {
                let rhs = ops.gyr(u, v, &ops.add(v, u));
                ops.residual(&ops.add(u, v), &rhs)
            }
            Identity::GyrationAutomorphism => {
                let lhs = ops.gyr(u, v, &ops.add(u, w));
                let rhs = ops.add(&ops.gyr(u, v, u), &ops.gyr(u, v, w));
                ops.residual(&lhs, &rhs)
            }
            Identity::GyrationIsometry => (ops.gyr(u, v, w).norm() - w.norm()).abs(),
            Identity::GyrationInverse => {
                let round = ops.gyr(v, u, &ops.gyr(u, v, w));
                ops.residual(&round, w)
            }
            Identity::AutomorphicInverse => {
                let lhs = -ops.add(u, v);
                ops.residual(&lhs, &ops.add(&(-u), &(-v)))
            }
            Identity::LeftCancellation => {
                let lhs = ops.add(&(-u), &ops.add(u, v));
                ops.residual(&lhs, v)
            }
            Identity::RightCancellation => {
                let lhs = ops.add(&ops.cosub(v, u), u);
                ops.residual(&lhs, v)
            }
            Identity::DualRightCancellation => {
                let lhs = ops.coadd(&ops.add(v, &(-u)), u);
                ops.residual(&lhs, v)
            }
            Identity::CosumExchange => {
                let sum = ops.coadd(v, w);
                let d = ops.add(&sum, &(-u));
                ops.residual(&sum, &ops.coadd(&d, u))
            }
            Identity::CoaddSwap => {
                let lhs = ops.add(u, &ops.add(v, u));
                let rhs = ops.coadd(u, &ops.add(u, v));
                ops.residual(&lhs, &rhs)
            }
            Identity::CooperationCommutativity => {
                ops.residual(&ops.coadd(u, v), &ops.coadd(v, u))
            }
            Identity::TwoSum => {
                let lhs = ops.scalar_mul(2.0, &ops.add(u, v));
                let rhs = ops.add(u, &ops.add(&ops.scalar_mul(2.0, v), u));
                ops.residual(&lhs, &rhs)
            }
        };
        if r.is_finite() {
            r
        } else {
            f64::INFINITY
        }
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

const GYROGROUP: [Identity; 12] = [
    Identity::LeftIdentity,
    Identity::LeftInverse,
    Identity::LeftGyroassociativity,
    Identity::RightGyroassociativity,
    Identity::LeftLoop,
    Identity::RightLoop,
    Identity::Gyrocommutativity,
    Identity::GyrationAutomorphism,
    Identity::GyrationIsometry,
    Identity::GyrationInverse,
    Identity::AutomorphicInverse,
    Identity::LeftCancellation,
];

const COOPERATION: [Identity; 5] = [
    Identity::RightCancellation,
    Identity::DualRightCancellation,
    Identity::CosumExchange,
    Identity::CoaddSwap,
    Identity::CooperationCommutativity,
];

const GYROVECTOR: [Identity; 1] = [Identity::TwoSum];

/// A named selection of identities, or the broken-model demonstration.
#[derive(Debug, Clone, PartialEq)]
pub enum Suite {
    All,
    Gyrogroup,
    Cooperation,
    Gyrovector,
    /// Runs the gyrogroup identities against [`BrokenModel`]; the
    /// expected outcome is failure.
    BrokenModel,
    Single(Identity),
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite> {
        match name {
            "all" => Ok(Suite::All),
            "gyrogroup" => Ok(Suite::Gyrogroup),
            "cooperation" => Ok(Suite::Cooperation),
            "gyrovector" => Ok(Suite::Gyrovector),
            "broken-model" => Ok(Suite::BrokenModel),
            other => Identity::from_name(other).map(Suite::Single),
        }
    }

    pub fn identities(&self) -> Vec<Identity> {
        match self {
            Suite::All => Identity::ALL.to_vec(),
            Suite::Gyrogroup | Suite::BrokenModel => GYROGROUP.to_vec(),
            Suite::Cooperation => COOPERATION.to_vec(),
            Suite::Gyrovector => GYROVECTOR.to_vec(),
            Suite::Single(id) => vec![*id],
        }
    }
}

/// Sampling and tolerance configuration for a verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Fraction of the radius up to which sample norms range.
    pub cap: f64,
    pub policy: TolerancePolicy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            cap: 0.9,
            policy: TolerancePolicy::default(),
        }
    }
}

/// Outcome of one identity over a sample run.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub samples: usize,
    pub max_residual: f64,
    pub pass: bool,
    /// Index of the sample that produced the maximum, when any sample ran.
    pub worst_sample: Option<usize>,
}

/// Runs one identity. Every identity reseeds from the same seed, so all
/// identities of a run see the same sample triples.
pub fn verify_identity(ops: &dyn GyroOps, identity: Identity, cfg: &VerifyConfig) -> IdentityReport {
    let params = ops.params();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut max_residual = 0.0f64;
    let mut worst_sample = None;
    for i in 0..cfg.samples {
        let u = sample_ball(params, &mut rng, cfg.cap);
        let v = sample_ball(params, &mut rng, cfg.cap);
        let w = sample_ball(params, &mut rng, cfg.cap);
        let r = identity.eval(ops, u.coords(), v.coords(), w.coords());
        if r > max_residual || worst_sample.is_none() {
            max_residual = r;
            worst_sample = Some(i);
        }
    }
    IdentityReport {
        identity,
        samples: cfg.samples,
        max_residual,
        pass: cfg.policy.residual_ok(max_residual, params.radius()),
        worst_sample,
    }
}

/// Runs a suite against the model (or against the broken model, when the
/// suite asks for it) and reports one row per identity.
pub fn run_suite(model: &GyroModel, suite: &Suite, cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let broken = BrokenModel::new(model.params());
    let ops: &dyn GyroOps = match suite {
        Suite::BrokenModel => &broken,
        _ => model,
    };
    suite
        .identities()
        .into_iter()
        .map(|id| verify_identity(ops, id, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(samples: usize) -> VerifyConfig {
        VerifyConfig {
            samples,
            seed: 42,
            cap: 0.9,
            policy: TolerancePolicy::default(),
        }
    }

    #[test]
    fn both_models_pass_every_identity() {
        let params = BallParams::unit(3);
        for model in [GyroModel::einstein(params), GyroModel::mobius(params)] {
            for report in run_suite(&model, &Suite::All, &cfg(200)) {
                assert!(
                    report.pass,
                    "{} failed on {:?}: max residual {}",
                    report.identity,
                    model.kind(),
                    report.max_residual
                );
            }
        }
    }

    #[test]
    fn broken_model_fails_the_gyrogroup_suite() {
        let model = GyroModel::einstein(BallParams::unit(3));
        let reports = run_suite(&model, &Suite::BrokenModel, &cfg(100));
        let failures = reports.iter().filter(|r| !r.pass).count();
        assert!(
            failures >= 6,
            "expected widespread failure, got {failures} failing identities"
        );
    }

    #[test]
    fn suite_names_resolve() {
        assert_eq!(Suite::parse("all").unwrap().identities().len(), 18);
        assert_eq!(Suite::parse("gyrogroup").unwrap().identities().len(), 12);
        assert_eq!(Suite::parse("cooperation").unwrap().identities().len(), 5);
        assert_eq!(Suite::parse("gyrovector").unwrap().identities().len(), 1);
        assert_eq!(
            Suite::parse("two-sum").unwrap(),
            Suite::Single(Identity::TwoSum)
        );
        assert!(matches!(
            Suite::parse("no-such-identity"),
            Err(GyroError::UnknownIdentity { .. })
        ));
    }

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::from_name(id.name()).unwrap(), id);
        }
    }

    #[test]
    fn reports_are_seed_deterministic() {
        let model = GyroModel::mobius(BallParams::unit(2));
        let a = verify_identity(&model, Identity::Gyrocommutativity, &cfg(50));
        let b = verify_identity(&model, Identity::Gyrocommutativity, &cfg(50));
        assert_eq!(a.max_residual, b.max_residual);
        assert_eq!(a.worst_sample, b.worst_sample);
    }
}
