//! Builds the two certified bounding-pair generator families for a form and
//! verifies that their images integrally span the whole wedge cube, then
//! decomposes a random target over them.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trisect::forms::e8;
use trisect::johnson::{
    decompose_johnson, spans_wedge_cube, tab_tc_generators, wedge_cube_dim, WedgeCubeElement,
};
use num_traits::Zero;

fn main() -> trisect::Result<()> {
    let q = e8();
    let k = 0;
    let g = q.rows() + k;

    let (fam_ab, fam_c) = tab_tc_generators(&q, k)?;
    println!(
        "families for E8 (genus {g}): {} alpha-beta chains, {} gamma chains",
        fam_ab.len(),
        fam_c.len()
    );

    let mut all = fam_ab.elements();
    all.extend(fam_c.elements());
    let cert = spans_wedge_cube(&all, g);
    println!(
        "wedge cube dimension {} — {} generators — invariant factors {:?} — spans over Z: {}",
        cert.dimension, cert.num_generators, cert.invariant_factors_summary, cert.spans_over_z
    );
    assert!(cert.spans_over_z);

    // Decompose a pseudorandom target and verify the witness exactly.
    let mut rng = StdRng::seed_from_u64(1);
    let coords: Vec<BigInt> = (0..wedge_cube_dim(g))
        .map(|_| BigInt::from(rng.random_range(-9i64..=9)))
        .collect();
    let target = WedgeCubeElement::from_coords(g, coords)?;
    let witness = decompose_johnson(&target, &fam_ab, &fam_c)?;
    let nonzero_ab = witness.ab_coefficients.iter().filter(|c| !c.is_zero()).count();
    let nonzero_c = witness.c_coefficients.iter().filter(|c| !c.is_zero()).count();
    assert_eq!(witness.recombine(&fam_ab, &fam_c, g), target);
    println!(
        "random target decomposed over {nonzero_ab} alpha-beta + {nonzero_c} gamma generators; \
         recombination is exact"
    );
    Ok(())
}
