//! Exact-arithmetic computations with Heegaard triples and pseudotrisection
//! diagrams at the level of first homology.
//!
//! Everything is integral: homology classes live in `H_1` of a genus-g
//! surface with its symplectic intersection pairing, cut systems are
//! Lagrangian row lattices, and all the derived invariants (intersection
//! forms of the glued 4-manifold data, linking forms, Arf and mod-2 Casson
//! bookkeeping, Johnson-homomorphism images in the third exterior power)
//! come out of Smith normal form and friends — no floating point anywhere.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! IntMatrix ──▶ SymplecticLattice / CutSystemClass ──▶ HeegaardTriple
//!      ──▶ PseudotrisectionDiagram ──▶ { intersection form, linking forms,
//!           Johnson spanning families, regluing ledgers, obstruction reports }
//! ```
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and the `trisect` binary for the JSON-driven CLI.

pub mod cli;
pub mod error;
pub mod forms;
pub mod heegaard;
pub mod johnson;
pub mod linking;
pub mod matrix;
pub mod rohlin;
pub mod surface;
pub mod trisection;

pub use error::{Error, Result};
pub use heegaard::{HeegaardPair, HeegaardTriple, HomologyReport};
pub use johnson::{GeneratorFamily, SpanCertificate, ThreeChainClass, WedgeCubeElement};
pub use linking::{LinkingForm, LinkingKind, QuadraticEnhancement, SubsurfaceBasis};
pub use matrix::{IntMatrix, SmithDecomposition};
pub use rohlin::{MuLedger, ObstructionReport, RegluingScript, Verdict};
pub use surface::{CutSystemClass, HomologyClass, SymplecticLattice};
pub use trisection::{IntersectionForm, PseudotrisectionDiagram};
