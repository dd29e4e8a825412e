//! Weighted averages of anchor points, twice: the affine version in
//! Euclidean space and the gamma-weighted version in the ball, with
//! point classification and a boundary application.

use nalgebra::DVector;

use gyroball::barycentric::{
    boundary_weight_solve, euclid_barycentric_eval, euclid_barycentric_solve, gyro_eval,
    gyro_weight_solve, BarycentricRep, GyrobarycentricRep, PointClass,
};
use gyroball::{BallParams, GyroModel};

fn main() -> gyroball::Result<()> {
    // Affine warm-up: solve for the weights of a point in a triangle,
    // then reproduce the point from them.
    let anchors = vec![
        DVector::from_vec(vec![0.0, 0.0]),
        DVector::from_vec(vec![1.0, 0.0]),
        DVector::from_vec(vec![0.0, 1.0]),
    ];
    let p = DVector::from_vec(vec![0.25, 0.5]);
    let weights = euclid_barycentric_solve(&anchors, &p)?;
    println!("affine weights of {:?}: {:?}", p.as_slice(), weights.as_slice());
    let rebuilt = euclid_barycentric_eval(&BarycentricRep {
        anchors: anchors.clone(),
        weights: weights.clone(),
    })?;
    println!("rebuilt point: {:?}", rebuilt.as_slice());

    // The hyperbolic version weights each anchor by its gamma factor.
    let model = GyroModel::einstein(BallParams::unit(2));
    let a1 = model.point(vec![-0.4, -0.2])?;
    let a2 = model.point(vec![0.5, -0.1])?;
    let a3 = model.point(vec![0.0, 0.5])?;

    for (label, weights) in [
        ("equal weights", vec![1.0, 1.0, 1.0]),
        ("lopsided", vec![5.0, 1.0, 1.0]),
        ("one negative", vec![-1.0, 1.2, 1.2]),
    ] {
        let rep = GyrobarycentricRep::new(
            model,
            vec![a1.clone(), a2.clone(), a3.clone()],
            weights,
        )?;
        let eval = gyro_eval(&rep)?;
        print!("{label:>13}: point {:?}, class {:?}", eval.point.as_slice(), eval.class);
        match eval.gamma {
            Some(g) => println!(", gamma {g:.6}"),
            None => println!(),
        }
    }

    // Recover the weights of a ball point with respect to the anchors.
    let target = model.point(vec![0.05, 0.1])?;
    let recovered = gyro_weight_solve(
        &model,
        &[a1.clone(), a2.clone(), a3.clone()],
        &target,
    )?;
    println!("\nweights of {:?}: {:?}", target.to_vec(), recovered.as_slice());
    let rep = GyrobarycentricRep::new(
        model,
        vec![a1.clone(), a2.clone(), a3.clone()],
        recovered.clone(),
    )?;
    let echoed = gyro_eval(&rep)?;
    println!(
        "evaluation echoes the point within {:.2e}",
        (echoed.point - target.coords()).norm()
    );

    // Two anchors with one specific weight pair put the result exactly
    // on the boundary sphere: these are the gyroline endpoints.
    let (m_plus, m_minus) = boundary_weight_solve(&model, &a1, &a2)?;
    println!("\nboundary weights for the line through A1, A2: {m_plus:.9} and {m_minus:.9}");
    for weights in [vec![m_plus, -1.0], vec![-m_minus, 1.0]] {
        let rep = GyrobarycentricRep::new(model, vec![a1.clone(), a2.clone()], weights)?;
        let eval = gyro_eval(&rep)?;
        assert_eq!(eval.class, PointClass::OnBoundary);
        println!(
            "  endpoint {:?}, norm {:.15}",
            eval.point.as_slice(),
            eval.point.norm()
        );
    }
    Ok(())
}
