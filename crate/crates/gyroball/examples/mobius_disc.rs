//! The conformal model on the unit disc, in two equivalent dresses:
//! complex arithmetic on the disc and real vector arithmetic on the ball.

use num_complex::Complex64;

use gyroball::mobius::disc;
use gyroball::{BallParams, GyroModel};

fn main() -> gyroball::Result<()> {
    let model = GyroModel::mobius(BallParams::unit(2));

    let a = Complex64::new(0.4, 0.1);
    let b = Complex64::new(-0.2, 0.5);

    // Disc composition via complex arithmetic.
    let sum_disc = disc::add(a, b, 1.0);
    println!("disc:  a (+) b = {:.12} + {:.12}i", sum_disc.re, sum_disc.im);

    // The same operation on the planar ball.
    let pa = model.point(vec![a.re, a.im])?;
    let pb = model.point(vec![b.re, b.im])?;
    let sum_ball = model.add(&pa, &pb)?;
    println!("ball:  a (+) b = {:?}", sum_ball.to_vec());

    // On the disc a gyration is multiplication by a unimodular number,
    // so it is a pure rotation; its angle is explicit.
    let factor = disc::gyration_factor(a, b, 1.0);
    println!(
        "gyration factor {:.12} + {:.12}i, modulus {:.16}",
        factor.re,
        factor.im,
        factor.norm()
    );
    println!(
        "rotation angle {:.12} rad = {:.6} degrees",
        disc::gyration_angle(a, b, 1.0),
        disc::gyration_angle(a, b, 1.0).to_degrees()
    );

    // The ball-model gyration applies the same rotation.
    let w = model.point(vec![0.3, -0.2])?;
    let rotated = model.gyr_apply(&pa, &pb, &w)?;
    let zw = Complex64::new(0.3, -0.2) * factor;
    println!("gyr[a,b]w on the ball: {:?}", rotated.to_vec());
    println!("factor * w on the disc: [{:.16}, {:.16}]", zw.re, zw.im);

    // Halving the rapidity gives the exact midpoint of 0 and a.
    let half = disc::scalar_mul(0.5, a, 1.0);
    let doubled = disc::add(half, half, 1.0);
    println!(
        "half-rapidity point doubles back: {:.2e}",
        (doubled - a).norm()
    );
    Ok(())
}
