//! Relativistic velocity composition in the chord model of the ball.
//!
//! Velocities live in the open ball of radius c. Composition is
//! noncommutative and nonassociative; the gyration operator measures and
//! repairs the failure of commutativity.

use gyroball::{BallParams, GyroModel};

fn main() -> gyroball::Result<()> {
    // Work in units of the speed limit: c = 1.
    let model = GyroModel::einstein(BallParams::unit(3));

    let u = model.point(vec![0.8, 0.0, 0.0])?;
    let v = model.point(vec![0.0, 0.6, 0.0])?;

    let uv = model.add(&u, &v)?;
    let vu = model.add(&v, &u)?;
    println!("u (+) v = {:?}", uv.to_vec());
    println!("v (+) u = {:?}", vu.to_vec());
    println!("norms agree: {:.16} vs {:.16}", uv.norm(), vu.norm());

    // The two sums differ by a rotation: u (+) v = gyr[u,v](v (+) u).
    let corrected = model.gyr_apply(&u, &v, &vu)?;
    println!(
        "gyration carries v(+)u onto u(+)v within {:.2e}",
        model.distance(&uv, &corrected)?
    );

    // Parallel velocities compose like scalars: (a+b)/(1+ab).
    let a = model.point(vec![0.5, 0.0, 0.0])?;
    let b = model.point(vec![0.3, 0.0, 0.0])?;
    let ab = model.add(&a, &b)?;
    println!(
        "parallel case: 0.5 (+) 0.3 = {:.12} (scalar form {:.12})",
        ab.norm(),
        (0.5 + 0.3) / (1.0 + 0.5 * 0.3)
    );

    // The time-dilation factor of a composed velocity has a closed form.
    let predicted = model.gamma_of_add(&u, &v)?;
    println!(
        "gamma of u(+)v: closed form {:.12}, from the point {:.12}",
        predicted,
        uv.gamma()
    );

    // Composition never escapes the ball, no matter how extreme.
    let fast = model.point(vec![0.999, 0.0, 0.0])?;
    let boosted = model.add(&fast, &fast)?;
    println!("0.999 (+) 0.999 = {:.12}, still below 1", boosted.norm());
    Ok(())
}
