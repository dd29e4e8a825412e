//! Acceptance gate: one test per criterion, each printing a single
//! pass line on success (run with `-- --nocapture` to see them all).

use std::time::Instant;

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gyroball::barycentric::{
    boundary_weight_solve, chart_gamma_between, euclid_barycentric_eval, gyro_covariance_check,
    gyro_eval, BarycentricRep, GyrobarycentricRep,
};
use gyroball::geometry::{
    collinearity_defect, double_gyroline, gyroline_endpoints, gyromidpoint_forms,
    gyroparallelogram_fourth, kasa_circle_fit, mobius_straight_line, ray_gyration_residual,
    riemannian_line_element, Gyroline,
};
use gyroball::identities::{run_suite, Suite, VerifyConfig};
use gyroball::isomorphism::{
    gamma_pair_report, gamma_point_report, invariant_expression, ModelPair, SidedPoint,
    TransportOp,
};
use gyroball::{BallParams, GyroModel, ModelKind, TolerancePolicy};

fn passed(criterion: u32, detail: String) {
    println!("acceptance criterion {criterion:>2}: PASS - {detail}");
}

fn both_kinds() -> [ModelKind; 2] {
    [ModelKind::Einstein, ModelKind::Mobius]
}

#[test]
fn criterion_01_identity_suite_all_models_dims_radii() {
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    for kind in both_kinds() {
        for dim in [2usize, 3, 5] {
            for radius in [1.0f64, 2.0] {
                let model = GyroModel::new(kind, BallParams::new(dim, radius).unwrap());
                let config = VerifyConfig {
                    samples: 10_000,
                    seed: 1,
                    cap: 0.9,
                    policy: TolerancePolicy {
                        rel_tol: 1e-9,
                        ..TolerancePolicy::default()
                    },
                };
                for report in run_suite(&model, &Suite::All, &config) {
                    assert!(
                        report.pass && report.max_residual < 1e-9 * radius,
                        "{kind:?} n={dim} c={radius}: {} residual {}",
                        report.identity.name(),
                        report.max_residual
                    );
                    worst = worst.max(report.max_residual / radius);
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "identity sweep took {elapsed:?}, budget is 30 s"
    );
    passed(
        1,
        format!(
            "18 identities x 2 models x n in {{2,3,5}} x c in {{1,2}}, 10^4 samples; worst scaled residual {worst:.2e}; {elapsed:.1?}"
        ),
    );
}

#[test]
fn criterion_02_gamma_identities() {
    let mut worst: f64 = 0.0;
    for kind in both_kinds() {
        let model = GyroModel::new(kind, BallParams::unit(3));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let u = model.sample(&mut rng, 0.9);
            let v = model.sample(&mut rng, 0.9);
            let formula = model.gamma_of_add(&u, &v).unwrap();
            let direct = model.add(&u, &v).unwrap().gamma();
            let rel = (formula - direct).abs() / direct;
            worst = worst.max(rel);
            assert!(rel < 1e-10, "{kind:?}: gamma relative error {rel}");
        }
    }
    passed(2, format!("2 x 10^4 pairs, worst relative error {worst:.2e}"));
}

#[test]
fn criterion_03_explicit_vs_definitional_gyration() {
    let model = GyroModel::einstein(BallParams::unit(3));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let u = model.sample(&mut rng, 0.9);
        let v = model.sample(&mut rng, 0.9);
        let w = model.sample(&mut rng, 0.9);
        let explicit = model.gyr_apply(&u, &v, &w).unwrap();
        let definitional = model.gyr_apply_definitional(&u, &v, &w).unwrap();
        let diff = (explicit.coords() - definitional.coords()).norm();
        worst = worst.max(diff);
        assert!(diff < 1e-9, "gyration forms differ by {diff}");
    }
    // Triviality cases collapse the map to the identity.
    let mut trivial_worst: f64 = 0.0;
    for _ in 0..100 {
        let u = model.sample(&mut rng, 0.9);
        let origin = model.origin();
        let parallel = model.scalar_mul(0.7, &u).unwrap();
        for (a, b) in [(&origin, &u), (&u, &origin), (&u, &parallel)] {
            let map = model.gyration(a, b).unwrap();
            let defect = map.identity_defect();
            trivial_worst = trivial_worst.max(defect);
            assert!(defect < 1e-12, "trivial gyration defect {defect}");
        }
    }
    passed(
        3,
        format!("10^3 triples worst {worst:.2e}; triviality worst {trivial_worst:.2e}"),
    );
}

#[test]
fn criterion_04_coaddition_oracles() {
    let pair = ModelPair::shared(BallParams::unit(3));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        // Chord model: closed form vs definitional.
        let u = pair.einstein_model().sample(&mut rng, 0.9);
        let v = pair.einstein_model().sample(&mut rng, 0.9);
        let closed = pair.einstein_model().coadd(&u, &v).unwrap();
        let definitional = pair.einstein_model().coadd_definitional(&u, &v).unwrap();
        let d = pair.einstein_model().distance(&closed, &definitional).unwrap();
        worst = worst.max(d);
        assert!(d < 1e-9);
        // Conformal model: closed vs definitional vs transport.
        let a = pair.mobius_model().sample(&mut rng, 0.9);
        let b = pair.mobius_model().sample(&mut rng, 0.9);
        let closed = pair.mobius_model().coadd(&a, &b).unwrap();
        let definitional = pair.mobius_model().coadd_definitional(&a, &b).unwrap();
        let transported = pair
            .transport(
                TransportOp::Coadd,
                &[SidedPoint::mobius(a.clone()), SidedPoint::mobius(b.clone())],
            )
            .unwrap();
        let d1 = pair.mobius_model().distance(&closed, &definitional).unwrap();
        let d2 = pair
            .mobius_model()
            .distance(&closed, &transported.point)
            .unwrap();
        worst = worst.max(d1).max(d2);
        assert!(d1 < 1e-9 && d2 < 1e-9);
    }
    // k-ary laws against their transported counterparts. The k-ary forms
    // are only ball-valued when the summands are small enough (for k
    // aligned points the inner quotient exits the ball once the shared
    // norm passes a k-dependent threshold), so sample from a radius where
    // the law is defined for every configuration up to k = 7.
    for k in [2usize, 3, 4, 7] {
        for _ in 0..200 {
            let points: Vec<_> = (0..k)
                .map(|_| pair.mobius_model().sample(&mut rng, 0.15))
                .collect();
            let native = pair.mobius_model().coadd_many(&points).unwrap();
            let sided: Vec<_> = points.iter().cloned().map(SidedPoint::mobius).collect();
            let transported = pair.transport(TransportOp::CoaddMany, &sided).unwrap();
            let d = pair
                .mobius_model()
                .distance(&native, &transported.point)
                .unwrap();
            worst = worst.max(d);
            assert!(d < 1e-9, "k = {k}: {d}");

            let points: Vec<_> = (0..k)
                .map(|_| pair.einstein_model().sample(&mut rng, 0.15))
                .collect();
            let native = pair.einstein_model().coadd_many(&points).unwrap();
            let sided: Vec<_> = points.iter().cloned().map(SidedPoint::einstein).collect();
            let transported = pair.transport(TransportOp::CoaddMany, &sided).unwrap();
            let d = pair
                .einstein_model()
                .distance(&native, &transported.point)
                .unwrap();
            worst = worst.max(d);
            assert!(d < 1e-9, "k = {k}: {d}");
        }
    }
    passed(4, format!("binary + k in {{2,3,4,7}} oracles, worst {worst:.2e}"));
}

#[test]
fn criterion_05_isomorphism() {
    let pair = ModelPair::shared(BallParams::unit(3));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let m = pair.mobius_model().sample(&mut rng, 0.9);
        let e = pair.mobius_to_einstein(&m).unwrap();
        let back = pair.einstein_to_mobius(&e).unwrap();
        let rt = (back.coords() - m.coords()).norm();
        worst = worst.max(rt);
        assert!(rt < 1e-9);

        let b_m = pair.mobius_model().sample(&mut rng, 0.9);
        let native = pair.mobius_model().add(&m, &b_m).unwrap();
        let via = pair
            .transport(
                TransportOp::Add,
                &[SidedPoint::mobius(m.clone()), SidedPoint::mobius(b_m.clone())],
            )
            .unwrap();
        let d = pair.mobius_model().distance(&native, &via.point).unwrap();
        worst = worst.max(d);
        assert!(d < 1e-9);

        let u = pair.einstein_model().sample(&mut rng, 0.9);
        let v = pair.einstein_model().sample(&mut rng, 0.9);
        let native = pair.einstein_model().add(&u, &v).unwrap();
        let via = pair
            .transport(
                TransportOp::Add,
                &[SidedPoint::einstein(u.clone()), SidedPoint::einstein(v)],
            )
            .unwrap();
        let d = pair.einstein_model().distance(&native, &via.point).unwrap();
        worst = worst.max(d);
        assert!(d < 1e-9);

        let point_rep = gamma_point_report(&pair, &m).unwrap();
        let pair_rep = gamma_pair_report(&pair, &m, &b_m).unwrap();
        for r in [
            point_rep.scalar_residual,
            point_rep.vector_residual,
            pair_rep.scalar_residual,
            pair_rep.sqrt_residual,
        ] {
            worst = worst.max(r);
            assert!(r < 1e-9, "gamma relation residual {r}");
        }

        if (m.coords() - b_m.coords()).norm() > 1e-9 {
            let a_e = pair.mobius_to_einstein(&m).unwrap();
            let b_e = pair.mobius_to_einstein(&b_m).unwrap();
            let v_m = invariant_expression(pair.mobius_model(), &m, &b_m).unwrap();
            let v_e = invariant_expression(pair.einstein_model(), &a_e, &b_e).unwrap();
            let d = (v_m - v_e).norm();
            worst = worst.max(d);
            assert!(d < 1e-9, "invariant expression differs across models by {d}");
        }
    }
    passed(5, format!("10^3 samples, worst residual {worst:.2e}"));
}

#[test]
fn criterion_06_geometry_constructions() {
    let mut worst: f64 = 0.0;
    for dim in [2usize, 3] {
        let params = BallParams::unit(dim);
        let mut rng = ChaCha8Rng::seed_from_u64(6 + dim as u64);
        for _ in 0..100 {
            for kind in both_kinds() {
                let model = GyroModel::new(kind, params);
                let a = model.sample(&mut rng, 0.85);
                let b = model.sample(&mut rng, 0.85);
                if model.distance(&a, &b).unwrap() < 1e-4 {
                    continue;
                }
                // Midpoint forms and equidistance.
                let forms = gyromidpoint_forms(&model, &a, &b).unwrap();
                let d_forms = model.distance(&forms.via_line, &forms.via_coadd).unwrap();
                worst = worst.max(d_forms);
                assert!(d_forms < 1e-8);
                if let Some(gamma_form) = &forms.via_gamma {
                    let d = model.distance(&forms.via_line, gamma_form).unwrap();
                    worst = worst.max(d);
                    assert!(d < 1e-8);
                }
                let eq = (model.distance(&forms.via_line, &a).unwrap()
                    - model.distance(&forms.via_line, &b).unwrap())
                .abs();
                worst = worst.max(eq);
                assert!(eq < 1e-8);

                // Parallelogram: diagonal midpoints and addition law.
                let c = model.sample(&mut rng, 0.85);
                if let Ok(par) = gyroparallelogram_fourth(&model, &a, &b, &c) {
                    let m1 = gyromidpoint_forms(&model, &par.a, &par.d).unwrap().via_line;
                    let m2 = gyromidpoint_forms(&model, &par.b, &par.c).unwrap().via_line;
                    let d = model.distance(&m1, &m2).unwrap();
                    worst = worst.max(d);
                    assert!(d < 1e-8, "diagonal midpoints differ by {d}");
                    let ab = model.solve_left(&par.a, &par.b).unwrap();
                    let ac = model.solve_left(&par.a, &par.c).unwrap();
                    let ad = model.solve_left(&par.a, &par.d).unwrap();
                    let sum = model.coadd(&ab, &ac).unwrap();
                    let d = model.distance(&sum, &ad).unwrap();
                    worst = worst.max(d);
                    assert!(d < 1e-8, "parallelogram addition law residual {d}");
                }
            }
            // Conformal-model constructions.
            let model = GyroModel::mobius(params);
            let a = model.sample(&mut rng, 0.8);
            let b = model.sample(&mut rng, 0.8);
            if model.distance(&a, &b).unwrap() < 1e-4 {
                continue;
            }
            let line = Gyroline::new(model, a.clone(), b.clone()).unwrap();
            let t = rng.random_range(-1.0..2.0);
            let doubled = double_gyroline(&line, t).unwrap();
            let far = line.point(2.0 * t).unwrap();
            let coadded = model.coadd(&a, &far).unwrap();
            let d = model.distance(&doubled, &coadded).unwrap();
            worst = worst.max(d);
            assert!(d < 1e-8, "double-gyroline residual {d}");

            let (p1, p2, p3) = gyroball::geometry::supporting_chord_points(&model, &a, &b).unwrap();
            let defect = collinearity_defect(&[
                p1.coords().clone(),
                p2.coords().clone(),
                p3.coords().clone(),
            ]);
            worst = worst.max(defect);
            assert!(defect < 1e-8, "supporting chord defect {defect}");

            let p0 = mobius_straight_line(&model, &a, &b, 0.0).unwrap();
            let p1 = mobius_straight_line(&model, &a, &b, 1.0).unwrap();
            let d0 = model.distance(&p0, &a).unwrap();
            let d1 = model.distance(&p1, &b).unwrap();
            worst = worst.max(d0).max(d1);
            assert!(d0 < 1e-8 && d1 < 1e-8);
            let pts: Vec<DVector<f64>> = [-0.5, 0.0, 0.4, 1.0, 1.5]
                .iter()
                .map(|&t| {
                    mobius_straight_line(&model, &a, &b, t)
                        .unwrap()
                        .coords()
                        .clone()
                })
                .collect();
            let defect = collinearity_defect(&pts);
            worst = worst.max(defect);
            assert!(defect < 1e-8, "straight line defect {defect}");
        }
    }
    passed(6, format!("200 configurations in n = 2, 3; worst residual {worst:.2e}"));
}

#[test]
fn criterion_07_endpoints() {
    let mut worst: f64 = 0.0;
    for radius in [1.0f64, 2.0] {
        let params = BallParams::new(2, radius).unwrap();
        let pair = ModelPair::shared(params);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            for kind in both_kinds() {
                let model = GyroModel::new(kind, params);
                let a1 = model.sample(&mut rng, 0.7);
                let a2 = model.sample(&mut rng, 0.7);
                if model.distance(&a1, &a2).unwrap() < 1e-4 {
                    continue;
                }
                let (e1, e2) = gyroline_endpoints(&model, &a1, &a2).unwrap();
                let b1 = (e1.norm() - radius).abs();
                let b2 = (e2.norm() - radius).abs();
                worst = worst.max(b1).max(b2);
                assert!(b1 < 1e-9 && b2 < 1e-9, "endpoint norms off by {b1}, {b2}");

                let (mp, mm) = boundary_weight_solve(&model, &a1, &a2).unwrap();
                let g = chart_gamma_between(&model, &a1, &a2).unwrap();
                let vieta1 = (mp * mm - 1.0).abs();
                let vieta2 = (mp + mm - 2.0 * g).abs();
                worst = worst.max(vieta1).max(vieta2 / g.max(1.0));
                assert!(vieta1 < 1e-9 && vieta2 < 1e-9 * g.max(1.0));

                for weights in [vec![mp, -1.0], vec![-mm, 1.0]] {
                    let rep = GyrobarycentricRep::new(
                        model,
                        vec![a1.clone(), a2.clone()],
                        weights,
                    )
                    .unwrap();
                    let m0 = rep.m0_squared().unwrap().abs();
                    worst = worst.max(m0);
                    assert!(m0 < 1e-9, "boundary weights leave m0^2 = {m0}");
                }
            }
            // Coincidence under doubling.
            let a_m = pair.mobius_model().sample(&mut rng, 0.7);
            let b_m = pair.mobius_model().sample(&mut rng, 0.7);
            if pair.mobius_model().distance(&a_m, &b_m).unwrap() < 1e-4 {
                continue;
            }
            let (me1, me2) = gyroline_endpoints(pair.mobius_model(), &a_m, &b_m).unwrap();
            let a_e = pair.mobius_to_einstein(&a_m).unwrap();
            let b_e = pair.mobius_to_einstein(&b_m).unwrap();
            let (ee1, ee2) = gyroline_endpoints(pair.einstein_model(), &a_e, &b_e).unwrap();
            let c1 = (me1.coords() - ee1.coords()).norm();
            let c2 = (me2.coords() - ee2.coords()).norm();
            worst = worst.max(c1).max(c2);
            assert!(c1 < 1e-9 && c2 < 1e-9, "endpoint coincidence off by {c1}, {c2}");
        }
    }
    passed(7, format!("norms, Vieta, m0^2, doubling coincidence; worst {worst:.2e}"));
}

#[test]
fn criterion_08_line_element() {
    let mut worst: f64 = 0.0;
    let h = 1e-5;
    for dim in [2usize, 3] {
        let model = GyroModel::einstein(BallParams::unit(dim));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut done = 0;
        while done < 25 {
            let x = model.sample(&mut rng, 0.9);
            if x.norm() > 0.9 {
                continue;
            }
            let dir = model.sample(&mut rng, 0.9);
            if dir.norm() < 1e-3 {
                continue;
            }
            let el = riemannian_line_element(&model, &x, dir.coords(), h).unwrap();
            let rel = (el.ds2_numeric - el.ds2_formula).abs() / el.ds2_formula;
            worst = worst.max(rel);
            assert!(rel < 1e-3, "line element relative error {rel}");
            done += 1;
        }
    }
    passed(8, format!("50 interior points at h = 1e-5; worst relative error {worst:.2e}"));
}

#[test]
fn criterion_09_euclidean_limits() {
    let radius = 1e6;
    let params = BallParams::new(3, radius).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let unit_vec = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..3).map(|_| rng.random_range(-1.0..1.0)).collect()
    };
    for _ in 0..200 {
        for kind in both_kinds() {
            let model = GyroModel::new(kind, params);
            let u = model.point(unit_vec(&mut rng)).unwrap();
            let v = model.point(unit_vec(&mut rng)).unwrap();
            let sum = model.add(&u, &v).unwrap();
            let d = (sum.coords() - (u.coords() + v.coords())).norm();
            worst = worst.max(d);
            assert!(d < 1e-5, "{kind:?} addition limit off by {d}");
            let co = model.coadd(&u, &v).unwrap();
            let d = (co.coords() - (u.coords() + v.coords())).norm();
            worst = worst.max(d);
            assert!(d < 1e-5, "{kind:?} coaddition limit off by {d}");
            for k in [3usize, 4] {
                let points: Vec<_> = (0..k)
                    .map(|_| model.point(unit_vec(&mut rng)).unwrap())
                    .collect();
                let many = model.coadd_many(&points).unwrap();
                let expected = points
                    .iter()
                    .fold(DVector::zeros(3), |acc, p| acc + p.coords());
                let d = (many.coords() - expected).norm();
                worst = worst.max(d);
                assert!(d < 1e-5, "{kind:?} k-ary limit off by {d}");
            }
        }
        // Gyrobarycentric evaluation approaches the affine one.
        let model = GyroModel::einstein(params);
        let anchors_raw: Vec<Vec<f64>> = (0..3).map(|_| unit_vec(&mut rng)).collect();
        let anchors: Vec<_> = anchors_raw
            .iter()
            .map(|v| model.point(v.clone()).unwrap())
            .collect();
        let weights = vec![0.5, 0.25, 0.25];
        let rep = GyrobarycentricRep::new(model, anchors, weights.clone()).unwrap();
        let gyro = gyro_eval(&rep).unwrap();
        let affine = euclid_barycentric_eval(&BarycentricRep {
            anchors: anchors_raw
                .iter()
                .map(|v| DVector::from_vec(v.clone()))
                .collect(),
            weights,
        })
        .unwrap();
        let d = (gyro.point - affine).norm();
        worst = worst.max(d);
        assert!(d < 1e-5, "gyrobarycentric limit off by {d}");
    }
    passed(9, format!("c = 10^6 unit-scale inputs; worst absolute error {worst:.2e}"));
}

#[test]
fn criterion_10_orthogonal_boundary_circles() {
    let model = GyroModel::mobius(BallParams::unit(2));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut fitted = 0;
    let mut worst: f64 = 0.0;
    while fitted < 50 {
        let a = model.sample(&mut rng, 0.85);
        let b = model.sample(&mut rng, 0.85);
        if model.distance(&a, &b).unwrap() < 1e-2 {
            continue;
        }
        // Skip near-diameter gyrolines: their circles degenerate to
        // straight chords through the center.
        let (e1, e2) = gyroline_endpoints(&model, &a, &b).unwrap();
        let chord_mid = (e1.coords() + e2.coords()) / 2.0;
        if chord_mid.norm() < 0.05 {
            continue;
        }
        let line = Gyroline::new(model, a, b).unwrap();
        let pts: Vec<DVector<f64>> = (-3..=4)
            .map(|k| line.point(k as f64 * 0.5).unwrap().coords().clone())
            .collect();
        let fit = match kasa_circle_fit(&pts) {
            Ok(f) => f,
            Err(_) => continue,
        };
        let defect = fit.boundary_orthogonality_defect(1.0);
        worst = worst.max(defect);
        assert!(defect < 1e-6, "orthogonality defect {defect}");
        fitted += 1;
    }
    passed(10, format!("50 non-diameter arcs; worst orthogonality defect {worst:.2e}"));
}

#[test]
fn criterion_11_ray_gyration_conjecture() {
    let model = GyroModel::mobius(BallParams::unit(3));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ts: Vec<f64> = (0..=40).map(|k| 0.25 * k as f64).collect();
    let mut worst: f64 = 0.0;
    let mut worst_proven: f64 = 0.0;
    let mut pairs = 0;
    while pairs < 100 {
        let a = model.sample(&mut rng, 0.8);
        let b = model.sample(&mut rng, 0.8);
        if model.distance(&a, &b).unwrap() < 1e-3 {
            continue;
        }
        let report = ray_gyration_residual(&model, &a, &b, &ts).unwrap();
        worst = worst.max(report.max_residual);
        worst_proven = worst_proven.max(report.proven_t0).max(report.proven_t1);
        assert!(report.max_residual < 1e-8, "conjecture residual {}", report.max_residual);
        assert!(
            report.proven_t0 < 1e-11 && report.proven_t1 < 1e-11,
            "proven cases {} / {}",
            report.proven_t0,
            report.proven_t1
        );
        pairs += 1;
    }
    passed(
        11,
        format!("100 rays, t in 0..10 step 0.25; worst {worst:.2e}; proven cases {worst_proven:.2e}"),
    );
}

#[test]
fn criterion_12_gyrocovariance() {
    let model = GyroModel::einstein(BallParams::unit(3));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    let mut configs = 0;
    'outer: for anchor_count in [2usize, 3, 4] {
        for _ in 0..34 {
            if configs >= 100 {
                break 'outer;
            }
            let anchors: Vec<_> = (0..anchor_count)
                .map(|_| model.sample(&mut rng, 0.8))
                .collect();
            let weights: Vec<f64> = (0..anchor_count)
                .map(|_| rng.random_range(0.1..1.0))
                .collect();
            let rep = GyrobarycentricRep::new(model, anchors, weights).unwrap();
            let x = model.sample(&mut rng, 0.8);
            let u = model.sample(&mut rng, 0.8);
            let v = model.sample(&mut rng, 0.8);
            let rotation = model.gyration(&u, &v).unwrap();
            let report = gyro_covariance_check(&rep, &x, &rotation).unwrap();
            worst = worst.max(report.max_residual());
            assert!(
                report.max_residual() < 1e-9,
                "covariance residual {} at N = {anchor_count}",
                report.max_residual()
            );
            configs += 1;
        }
    }
    assert!(configs >= 100);
    passed(12, format!("{configs} configurations, N in {{2,3,4}}; worst {worst:.2e}"));
}

#[test]
fn criterion_13_cli_contract() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_gyroball");

    let ok = Command::new(bin)
        .args(["check", "--model", "einstein", "--suite", "all", "--samples", "200"])
        .output()
        .expect("spawn check");
    assert!(ok.status.success(), "shipped suite failed: {:?}", ok);
    let ok = Command::new(bin)
        .args(["check", "--model", "mobius", "--suite", "gyrogroup", "--samples", "200"])
        .output()
        .expect("spawn check");
    assert!(ok.status.success());
    let broken = Command::new(bin)
        .args(["check", "--suite", "broken-model", "--samples", "200"])
        .output()
        .expect("spawn check");
    assert_eq!(broken.status.code(), Some(1), "broken model must exit 1");

    let scene = serde_json::json!({
        "model": "mobius",
        "dim": 2,
        "radius": 1.0,
        "points": {"a": [0.3, -0.2], "b": [-0.1, 0.4]},
        "constructions": [
            {"kind": "gyroline", "id": "line", "a": "a", "b": "b"},
            {"kind": "double-gyroline", "id": "double", "a": "a", "b": "b"},
            {"kind": "endpoints", "id": "ends", "a": "a", "b": "b"}
        ],
        "t_grid": {"start": 0.0, "stop": 1.0, "count": 41}
    });
    let dir = std::env::temp_dir();
    let scene_path = dir.join("gyroball_acceptance_scene.json");
    std::fs::write(&scene_path, scene.to_string()).unwrap();
    let run = |seed: &str| {
        Command::new(bin)
            .env("GYROBALL_SEED", seed)
            .args(["figure", "--scene", scene_path.to_str().unwrap(), "--format", "csv"])
            .output()
            .expect("spawn figure")
    };
    let first = run("42");
    let second = run("42");
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "figure output must be byte-deterministic");
    passed(13, "check exit codes 0/1; figure byte-deterministic".to_string());
}
