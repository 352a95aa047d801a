//! Linking forms l₂ and l₃ on the central surface of a standardized diagram,
//! with their mod-2 enhancements: equal for even forms, divergent at an x
//! class for odd ones.

use trisect::forms::{diagonal, hyperbolic};
use trisect::linking::{linking_form, q2_equals_q3, LinkingKind, QuadraticEnhancement};
use trisect::trisection::standard_pseudotrisection;

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn main() -> trisect::Result<()> {
    for (name, q) in [("H (even)", hyperbolic()), ("<1> (odd)", diagonal(&[1]))] {
        let d = standard_pseudotrisection(&q, 0)?;
        let l2 = linking_form(&d, LinkingKind::L2)?;
        let l3 = linking_form(&d, LinkingKind::L3)?;
        println!("=== {name}, basis (x.., y..)");
        println!("l2:\n{}", l2.matrix());
        println!("l3:\n{}", l3.matrix());
        let q2 = QuadraticEnhancement::from_linking(&l2);
        let q3 = QuadraticEnhancement::from_linking(&l3);
        println!("q2 basis bits: {}", bits(q2.basis_values()));
        println!("q3 basis bits: {}", bits(q3.basis_values()));
        println!("q2 == q3: {}\n", q2_equals_q3(&d)?);
        assert!(l2.satisfies_symmetry_relation() && l3.satisfies_symmetry_relation());
    }
    Ok(())
}
