//! The genus-8 E8 diagram: each alpha curve meets one beta curve once, the
//! gamma classes are z_i = −x_i − Σ (E8)_ij y_j. Two of the glued 3-manifolds
//! are homology spheres at the H₁ level (one of them with the homology of
//! the Poincaré sphere) and the intersection form is E8.

use trisect::forms::e8;
use trisect::trisection::e8_figure_diagram;

fn main() -> trisect::Result<()> {
    let d = e8_figure_diagram();
    let t = d.triple();

    println!("genus {}, k {}", d.genus(), d.k());

    let ab = t.alpha().pairing_matrix(t.beta())?;
    println!("\nalpha-beta pairing (identity = standard S³ diagram):\n{ab}");

    let bc = t.beta().pairing_matrix(t.gamma())?;
    println!("beta-gamma pairing, |det| = {} (homology sphere):\n{bc}", bc.determinant()?);

    let ca = t.gamma().pairing_matrix(t.alpha())?;
    println!("gamma-alpha pairing, |det| = {} (homology sphere):\n{ca}", ca.determinant()?);

    let form = d.intersection_form()?;
    println!("intersection form (label {:?}):\n{}", form.label(), form.matrix());
    assert_eq!(form.matrix(), &e8());
    println!("signature {} — even, positive definite, rank 8", form.signature());
    Ok(())
}
