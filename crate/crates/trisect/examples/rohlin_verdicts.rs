//! Obstruction verdicts over the grid mE8 ⊕ nH: an even unimodular form is
//! ruled out exactly when its signature is 8 mod 16. In particular 2E8 is
//! not obstructed by this method.

use trisect::forms::m_e8_n_h;
use trisect::rohlin::{rohlin_obstruction, Verdict};

fn main() -> trisect::Result<()> {
    println!("{:<10} {:>4} {:>9} {:>7}  verdict", "form", "rank", "signature", "σ mod16");
    for m in 0..=4i64 {
        for n in 0..=4u32 {
            let q = m_e8_n_h(m, n);
            let r = rohlin_obstruction(&q)?;
            println!(
                "{:<10} {:>4} {:>9} {:>7}  {:?}",
                r.label.as_deref().unwrap_or("?"),
                r.rank,
                r.signature,
                r.signature_mod_16,
                r.verdict
            );
            assert_eq!(r.verdict == Verdict::Obstructed, m % 2 == 1);
        }
    }
    Ok(())
}
