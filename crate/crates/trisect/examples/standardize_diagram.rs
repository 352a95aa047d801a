//! Scrambles a diagram by handleslides and a global symplectic basis change,
//! then standardizes it back: alpha becomes (x_i), beta pairs as the
//! identity-plus-zeros block, gamma takes the −x − Qy shape, and the form is
//! unchanged.

use trisect::forms::hyperbolic;
use trisect::heegaard::HeegaardTriple;
use trisect::matrix::IntMatrix;
use trisect::surface::{symplectic_transvection, HomologyClass};
use trisect::trisection::{standard_pseudotrisection, PseudotrisectionDiagram};

fn main() -> trisect::Result<()> {
    let q = hyperbolic();
    let d = standard_pseudotrisection(&q, 1)?;
    println!("standard diagram, genus {} k {}:", d.genus(), d.k());
    println!("gamma rows:\n{}", d.triple().gamma().rows());

    // Slide the gamma system and change the global basis by a transvection.
    let slide = IntMatrix::from_i64_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![1, 0, 1]]);
    let gamma = d.triple().gamma().transformed(&slide)?;
    let v = HomologyClass::from_i64(&[1, 0, 1, 0, 1, 0]);
    let t = symplectic_transvection(d.triple().lattice(), &v);
    let scrambled = HeegaardTriple::new(
        d.triple().lattice(),
        d.triple().alpha().change_basis(&t)?,
        d.triple().beta().change_basis(&t)?,
        gamma.change_basis(&t)?,
        1,
    )?;
    let sd = PseudotrisectionDiagram::new(scrambled)?;
    println!("\nscrambled gamma rows:\n{}", sd.triple().gamma().rows());

    let restored = sd.standardize_basis()?;
    println!("restored gamma rows:\n{}", restored.triple().gamma().rows());
    assert_eq!(&restored, &d);
    assert_eq!(sd.intersection_form()?.matrix(), &q);
    println!(
        "standard shape restored; intersection form unchanged (|det| = {})",
        sd.intersection_form()?.matrix().determinant()?.magnitude()
    );
    Ok(())
}
