//! The hyperbolic parallelogram: three vertices determine the fourth
//! through the cooperation, the diagonals cross at their common
//! midpoint, and two sides add up along the diagonal.

use gyroball::geometry::{gyromidpoint, gyroparallelogram_fourth};
use gyroball::{BallParams, GyroModel};

fn main() -> gyroball::Result<()> {
    let model = GyroModel::mobius(BallParams::unit(2));
    let a = model.point(vec![-0.2, -0.1])?;
    let b = model.point(vec![0.4, 0.0])?;
    let c = model.point(vec![0.1, 0.45])?;

    // D = (B boxplus C) (-) A closes the figure.
    let par = gyroparallelogram_fourth(&model, &a, &b, &c)?;
    println!("A = {:?}", par.a.to_vec());
    println!("B = {:?}", par.b.to_vec());
    println!("C = {:?}", par.c.to_vec());
    println!("D = {:?}", par.d.to_vec());

    // Both diagonals pass through one point, their shared midpoint.
    let m_ad = gyromidpoint(&model, &par.a, &par.d)?;
    let m_bc = gyromidpoint(&model, &par.b, &par.c)?;
    println!(
        "\ndiagonal midpoints coincide within {:.2e}",
        model.distance(&m_ad, &m_bc)?
    );
    println!("crossing point: {:?}", m_ad.to_vec());

    // Seen from A, the sides to B and to C combine through the
    // cooperation into the diagonal to D. This is the vector-addition
    // rule of the geometry: commutative, unlike the point operation.
    let side_b = model.solve_left(&par.a, &par.b)?;
    let side_c = model.solve_left(&par.a, &par.c)?;
    let diagonal = model.solve_left(&par.a, &par.d)?;
    let composed = model.coadd(&side_b, &side_c)?;
    println!(
        "\nparallelogram addition law residual: {:.2e}",
        model.distance(&composed, &diagonal)?
    );
    let reversed = model.coadd(&side_c, &side_b)?;
    println!(
        "cooperation commutes: {:.2e}",
        model.distance(&composed, &reversed)?
    );

    // Degenerate triples are rejected rather than silently folded.
    let line = gyroball::geometry::Gyroline::new(model, a.clone(), b.clone())?;
    let on_line = line.point(0.5)?;
    match gyroparallelogram_fourth(&model, &a, &b, &on_line) {
        Err(e) => println!("\ncollinear vertices are refused: {e}"),
        Ok(_) => println!("\nunexpectedly accepted a degenerate figure"),
    }
    Ok(())
}
