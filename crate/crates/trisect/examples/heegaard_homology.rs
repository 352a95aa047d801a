//! First homology of glued Heegaard pairs, read off the Smith normal form of
//! the pairing matrix: the standard pair gives S³, equal systems give
//! #_g S¹×S², and a twisted genus-1 pair gives lens-space homology.

use trisect::heegaard::HeegaardPair;
use trisect::matrix::IntMatrix;
use trisect::surface::{CutSystemClass, SymplecticLattice};

fn show(name: &str, pair: &HeegaardPair) {
    let h = pair.homology();
    println!(
        "{name:<28} free rank {}  torsion {:?}  homology sphere: {}",
        h.free_rank, h.invariant_factors, h.is_homology_sphere
    );
}

fn main() -> trisect::Result<()> {
    let l = SymplecticLattice::new(3);
    let x = CutSystemClass::standard_x(l);
    let y = CutSystemClass::standard_y(l);

    show("standard (S³)", &HeegaardPair::new(l, x.clone(), y)?);
    show("equal systems (#₃ S¹×S²)", &HeegaardPair::new(l, x.clone(), x)?);

    let l1 = SymplecticLattice::new(1);
    let a = CutSystemClass::standard_x(l1);
    let b = CutSystemClass::new(l1, IntMatrix::from_i64_rows(&[vec![1, 5]]))?;
    show("lens-type (ℤ/5)", &HeegaardPair::new(l1, a, b)?);

    // Algebraic standardness: SNF of the pairing has k zeros and g−k ones.
    let l = SymplecticLattice::new(2);
    let pair = HeegaardPair::new(
        l,
        CutSystemClass::standard_x(l),
        CutSystemClass::new(
            l,
            IntMatrix::from_i64_rows(&[vec![0, 0, 1, 0], vec![0, 1, 0, 0]]),
        )?,
    )?;
    println!(
        "\nmixed pair is algebraically standard with k=1: {}",
        pair.is_algebraically_standard(1)?
    );
    Ok(())
}
