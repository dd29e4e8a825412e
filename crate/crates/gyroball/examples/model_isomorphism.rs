//! The two ball models describe one geometry. Radial doubling of the
//! rapidity carries the conformal model onto the chord model, turning
//! each operation into its counterpart.

use gyroball::isomorphism::{
    gamma_pair_report, gamma_point_report, invariant_expression, ModelPair, SidedPoint,
    TransportOp,
};
use gyroball::BallParams;

fn main() -> gyroball::Result<()> {
    let pair = ModelPair::shared(BallParams::unit(2));

    // A conformal point and its chord-model image.
    let m = pair.mobius_model().point(vec![0.5, 0.0])?;
    let e = pair.mobius_to_einstein(&m)?;
    println!("conformal {:?}  <->  chord {:?}", m.to_vec(), e.to_vec());
    let back = pair.einstein_to_mobius(&e)?;
    println!(
        "round trip error: {:.2e}",
        (back.coords() - m.coords()).norm()
    );

    // Addition can be computed natively or carried across the bridge;
    // the results agree to rounding.
    let x = pair.mobius_model().point(vec![0.1, 0.3])?;
    let native = pair.mobius_model().add(&m, &x)?;
    let carried = pair.transport(
        TransportOp::Add,
        &[SidedPoint::mobius(m.clone()), SidedPoint::mobius(x.clone())],
    )?;
    println!(
        "\nconformal sum natively vs through the chord model: {:.2e}",
        pair.mobius_model().distance(&native, &carried.point)?
    );

    // The gamma factors of corresponding points are algebraically tied.
    let point_report = gamma_point_report(&pair, &m)?;
    println!(
        "\ngamma link for one point: conformal {:.12}, chord {:.12}",
        point_report.gamma_m, point_report.gamma_e
    );
    println!(
        "  scalar relation residual {:.2e}, vector relation residual {:.2e}",
        point_report.scalar_residual, point_report.vector_residual
    );
    let pair_report = gamma_pair_report(&pair, &m, &x)?;
    println!(
        "gamma link for a pair: residuals {:.2e} and {:.2e}",
        pair_report.scalar_residual, pair_report.sqrt_residual
    );

    // A whole expression built from the difference of two points is the
    // same vector in both models, making it a natural invariant.
    let a_e = pair.mobius_to_einstein(&m)?;
    let x_e = pair.mobius_to_einstein(&x)?;
    let inv_m = invariant_expression(pair.mobius_model(), &m, &x)?;
    let inv_e = invariant_expression(pair.einstein_model(), &a_e, &x_e)?;
    println!(
        "\nmodel-independent direction vector: {:?}",
        inv_m.as_slice()
    );
    println!("cross-model agreement: {:.2e}", (inv_m - inv_e).norm());

    // Mixing sides in one call is refused.
    let mixed = pair.transport(
        TransportOp::Add,
        &[SidedPoint::mobius(m), SidedPoint::einstein(e)],
    );
    match mixed {
        Err(err) => println!("\nmixed-side arguments are rejected: {err}"),
        Ok(_) => println!("\nunexpectedly accepted mixed sides"),
    }
    Ok(())
}
