//! Geodesics of the ball: trace a gyroline, find its midpoint three
//! ways, and watch distances add along it.

use gyroball::geometry::{gyroline_endpoints, gyromidpoint_forms, Gyroline};
use gyroball::{BallParams, GyroModel};

fn main() -> gyroball::Result<()> {
    let model = GyroModel::einstein(BallParams::unit(2));
    let a = model.point(vec![-0.3, 0.5])?;
    let b = model.point(vec![0.6, 0.1])?;

    // The gyroline hits A at t = 0 and B at t = 1; the parameter runs
    // over all reals.
    let line = Gyroline::new(model, a.clone(), b.clone())?;
    println!("   t      x          y");
    for k in 0..=6 {
        let t = -0.5 + 0.5 * k as f64;
        let p = line.point(t)?;
        println!("{:>5.2} {:>9.5} {:>9.5}", t, p.coords()[0], p.coords()[1]);
    }

    // The midpoint from the curve parameter, from the cooperation with
    // half scaling, and from the gamma-weighted average all agree.
    let forms = gyromidpoint_forms(&model, &a, &b)?;
    println!("\nmidpoint via curve:       {:?}", forms.via_line.to_vec());
    println!("midpoint via cooperation: {:?}", forms.via_coadd.to_vec());
    if let Some(weighted) = &forms.via_gamma {
        println!("midpoint via weights:     {:?}", weighted.to_vec());
    }
    let mid = &forms.via_line;
    println!(
        "equidistant: d(M,A) = {:.12}, d(M,B) = {:.12}",
        model.distance(mid, &a)?,
        model.distance(mid, &b)?
    );

    // Distances along the line compose with the scalar law
    // (d1 + d2) / (1 + d1 d2 / c^2), with equality exactly on the line.
    let p = line.point(0.3)?;
    let d_total = model.distance(&a, &b)?;
    let d1 = model.distance(&a, &p)?;
    let d2 = model.distance(&p, &b)?;
    let composed = (d1 + d2) / (1.0 + d1 * d2);
    println!("\nsplit at t = 0.3: d(A,B) = {d_total:.12}");
    println!("d(A,P) (+) d(P,B) = {composed:.12}");

    // Extending the parameter to +/- infinity reaches two boundary
    // points; the closed form lands on them directly.
    let (e1, e2) = gyroline_endpoints(&model, &a, &b)?;
    println!("\nboundary endpoints: {e1} and {e2}");
    println!("norms: {:.15} and {:.15}", e1.norm(), e2.norm());
    Ok(())
}
