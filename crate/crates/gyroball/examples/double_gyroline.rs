//! Doubling a conformal-model gyroline pointwise yields a curve with a
//! striking property: it is traced by the cooperation against a point
//! running along the original line, and the related straight-line curve
//! through A and B is genuinely Euclidean inside the ball.

use nalgebra::DVector;

use gyroball::geometry::{
    collinearity_defect, double_gyroline, mobius_straight_line, ray_gyration_residual,
    supporting_chord_points, Gyroline,
};
use gyroball::{BallParams, GyroModel};

fn main() -> gyroball::Result<()> {
    let model = GyroModel::mobius(BallParams::unit(2));
    let a = model.point(vec![0.2, -0.3])?;
    let b = model.point(vec![-0.4, 0.1])?;
    let line = Gyroline::new(model, a.clone(), b.clone())?;

    // 2 (.) L(t) equals A boxplus L(2t): the doubled curve is the
    // cooperation of A with the point at twice the parameter.
    println!("doubling law residuals along the line:");
    for k in 0..5 {
        let t = -0.5 + 0.5 * k as f64;
        let doubled = double_gyroline(&line, t)?;
        let far = line.point(2.0 * t)?;
        let coop = model.coadd(&a, &far)?;
        println!("  t = {:>4.1}: {:.2e}", t, model.distance(&doubled, &coop)?);
    }

    // Three marked points of the doubled curve lie on one Euclidean
    // chord of the ball, the supporting chord.
    let (p1, p2, p3) = supporting_chord_points(&model, &a, &b)?;
    let defect = collinearity_defect(&[
        p1.coords().clone(),
        p2.coords().clone(),
        p3.coords().clone(),
    ]);
    println!("\nsupporting chord through");
    println!("  2(.)A      = {:?}", p1.to_vec());
    println!("  2(.)B      = {:?}", p2.to_vec());
    println!("  A boxplus B = {:?}", p3.to_vec());
    println!("collinearity defect: {defect:.2e}");

    // A companion curve through A and B is a Euclidean straight line
    // even though it is built entirely from ball operations.
    let samples: Vec<DVector<f64>> = (0..=6)
        .map(|k| {
            mobius_straight_line(&model, &a, &b, -0.5 + 0.5 * k as f64)
                .map(|p| p.coords().clone())
        })
        .collect::<gyroball::Result<_>>()?;
    println!(
        "\nstraight-line curve collinearity defect: {:.2e}",
        collinearity_defect(&samples)
    );

    // Along that curve the gyration of the direction B (-) A against the
    // moving point does not move at all. The t = 0 and t = 1 cases
    // follow from the loop laws; the rest is checked numerically.
    let ts: Vec<f64> = (0..=20).map(|k| 0.5 * k as f64).collect();
    let report = ray_gyration_residual(&model, &a, &b, &ts)?;
    println!(
        "\nconstant-gyration check over {} parameters: max residual {:.2e}",
        report.samples.len(),
        report.max_residual
    );
    println!(
        "anchored cases t = 0, 1: {:.2e}, {:.2e}",
        report.proven_t0, report.proven_t1
    );
    Ok(())
}
