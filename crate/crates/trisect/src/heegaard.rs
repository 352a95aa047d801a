//! Heegaard pairs and triples at homology level: homology of the glued
//! 3-manifold, algebraic standardness, connected sums and stabilization.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::surface::{CutSystemClass, SymplecticLattice};

/// Two cut systems on one surface; determines a closed 3-manifold up to the
/// data visible in homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardPair {
    lattice: SymplecticLattice,
    a: CutSystemClass,
    b: CutSystemClass,
}

impl HeegaardPair {
    pub fn new(lattice: SymplecticLattice, a: CutSystemClass, b: CutSystemClass) -> Result<Self> {
        if a.genus() != lattice.genus() || b.genus() != lattice.genus() {
            return Err(Error::LatticeMismatch {
                left: a.genus(),
                right: b.genus(),
            });
        }
        Ok(HeegaardPair { lattice, a, b })
    }

    pub fn lattice(&self) -> SymplecticLattice {
        self.lattice
    }

    pub fn a(&self) -> &CutSystemClass {
        &self.a
    }

    pub fn b(&self) -> &CutSystemClass {
        &self.b
    }

    pub fn pairing_matrix(&self) -> IntMatrix {
        self.a
            .pairing_matrix(&self.b)
            .expect("systems share the lattice by construction")
    }

    /// H₁ of the glued 3-manifold, read off the Smith normal form of the
    /// pairing matrix: zero invariant factors contribute free rank, factors
    /// greater than one contribute torsion.
    pub fn homology(&self) -> HomologyReport {
        HomologyReport::from_pairing(&self.pairing_matrix())
    }

    /// True iff the glued manifold is an integral homology sphere, i.e. the
    /// pairing matrix is unimodular.
    pub fn is_homology_sphere(&self) -> bool {
        self.pairing_matrix()
            .is_unimodular()
            .expect("pairing matrix is square")
    }

    /// True iff the pairing matrix can be brought to diag(0_k, 1_{g−k}) by
    /// sign, permutation and slide operations on either side — equivalently,
    /// its SNF has exactly k zeros and g−k ones.
    pub fn is_algebraically_standard(&self, k: usize) -> Result<bool> {
        let g = self.lattice.genus();
        if k > g {
            return Err(Error::DimensionMismatch(format!("k = {k} exceeds genus {g}")));
        }
        let diag = self.pairing_matrix().snf_diagonal();
        let ones = diag.iter().filter(|d| d.is_one()).count();
        let zeros = diag.iter().filter(|d| d.is_zero()).count();
        Ok(ones == g - k && zeros == k)
    }
}

/// Homology of a glued pair: torsion invariant factors plus free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    /// Torsion coefficients (invariant factors > 1), in divisibility order.
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
    pub is_homology_sphere: bool,
    /// Set when H₁ is free: the manifold has the homology of a connected sum
    /// of this many copies of S¹×S² (0 meaning a homology sphere).
    pub s1s2_count: Option<usize>,
}

impl HomologyReport {
    pub fn from_pairing(pairing: &IntMatrix) -> HomologyReport {
        let diag = pairing.snf_diagonal();
        let torsion: Vec<BigInt> = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        let free_rank = diag.iter().filter(|d| d.is_zero()).count();
        let is_homology_sphere = torsion.is_empty() && free_rank == 0;
        HomologyReport {
            invariant_factors: torsion.iter().map(BigInt::to_string).collect(),
            free_rank,
            is_homology_sphere,
            s1s2_count: if torsion.is_empty() {
                Some(free_rank)
            } else {
                None
            },
        }
    }

    /// Homology of #_k S¹×S²: free of rank k, no torsion.
    pub fn is_s1s2_connected_sum(&self, k: usize) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == k
    }
}

/// Three cut systems on one surface plus the 1-handle count k of the first
/// pair. JSON form: `{"genus": g, "k": k, "alpha": [...], "beta": [...],
/// "gamma": [...]}` with each system a g×2g row matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardTriple {
    lattice: SymplecticLattice,
    a: CutSystemClass,
    b: CutSystemClass,
    c: CutSystemClass,
    k: usize,
}

impl HeegaardTriple {
    pub fn new(
        lattice: SymplecticLattice,
        a: CutSystemClass,
        b: CutSystemClass,
        c: CutSystemClass,
        k: usize,
    ) -> Result<Self> {
        for sys in [&a, &b, &c] {
            if sys.genus() != lattice.genus() {
                return Err(Error::LatticeMismatch {
                    left: sys.genus(),
                    right: lattice.genus(),
                });
            }
        }
        if k > lattice.genus() {
            return Err(Error::DimensionMismatch(format!(
                "k = {k} exceeds genus {}",
                lattice.genus()
            )));
        }
        Ok(HeegaardTriple { lattice, a, b, c, k })
    }

    /// The empty genus-0 triple, the identity for connected sums.
    pub fn empty() -> Self {
        let lattice = SymplecticLattice::new(0);
        let sys = CutSystemClass::standard_x(lattice);
        HeegaardTriple {
            lattice,
            a: sys.clone(),
            b: sys.clone(),
            c: sys,
            k: 0,
        }
    }

    pub fn lattice(&self) -> SymplecticLattice {
        self.lattice
    }

    pub fn genus(&self) -> usize {
        self.lattice.genus()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &CutSystemClass {
        &self.a
    }

    pub fn beta(&self) -> &CutSystemClass {
        &self.b
    }

    pub fn gamma(&self) -> &CutSystemClass {
        &self.c
    }

    pub fn pair_ab(&self) -> HeegaardPair {
        HeegaardPair::new(self.lattice, self.a.clone(), self.b.clone()).expect("validated")
    }

    pub fn pair_bc(&self) -> HeegaardPair {
        HeegaardPair::new(self.lattice, self.b.clone(), self.c.clone()).expect("validated")
    }

    pub fn pair_ca(&self) -> HeegaardPair {
        HeegaardPair::new(self.lattice, self.c.clone(), self.a.clone()).expect("validated")
    }

    /// Cyclic rotation (A, B, C) → (B, C, A). The 1-handle count of the new
    /// first pair is not tracked; rotation is raw sector bookkeeping.
    pub fn rotated(&self) -> HeegaardTriple {
        HeegaardTriple {
            lattice: self.lattice,
            a: self.b.clone(),
            b: self.c.clone(),
            c: self.a.clone(),
            k: 0,
        }
    }

    /// Connected sum: genus adds, cut systems become block sums, k adds.
    pub fn connected_sum(&self, other: &HeegaardTriple) -> HeegaardTriple {
        let lattice = SymplecticLattice::new(self.genus() + other.genus());
        HeegaardTriple {
            lattice,
            a: self.a.direct_sum(&other.a),
            b: self.b.direct_sum(&other.b),
            c: self.c.direct_sum(&other.c),
            k: self.k + other.k,
        }
    }

    /// Stabilization: n connected sums with the genus-1 triple whose systems
    /// are (x, x, y). Each one adds an S¹×S² summand to the first pair and
    /// leaves the other two pairings unimodular.
    pub fn stabilize(&self, n: usize) -> HeegaardTriple {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.connected_sum(&stabilization_block());
        }
        out
    }
}

/// The (1;1,0,0) building block: diagram (T², α, α, β) with A ← x, B ← x,
/// C ← y on the new handle.
fn stabilization_block() -> HeegaardTriple {
    let lattice = SymplecticLattice::new(1);
    let x = CutSystemClass::standard_x(lattice);
    let y = CutSystemClass::standard_y(lattice);
    HeegaardTriple {
        lattice,
        a: x.clone(),
        b: x,
        c: y,
        k: 1,
    }
}

/// Serialization mirror for `HeegaardTriple`.
#[derive(Serialize, Deserialize)]
struct TripleRepr {
    genus: usize,
    k: usize,
    alpha: IntMatrix,
    beta: IntMatrix,
    gamma: IntMatrix,
}

impl Serialize for HeegaardTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TripleRepr {
            genus: self.genus(),
            k: self.k,
            alpha: self.a.rows().clone(),
            beta: self.b.rows().clone(),
            gamma: self.c.rows().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeegaardTriple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TripleRepr::deserialize(d)?;
        let lattice = SymplecticLattice::new(repr.genus);
        let build = || -> Result<HeegaardTriple> {
            HeegaardTriple::new(
                lattice,
                CutSystemClass::new(lattice, repr.alpha.clone())?,
                CutSystemClass::new(lattice, repr.beta.clone())?,
                CutSystemClass::new(lattice, repr.gamma.clone())?,
                repr.k,
            )
        };
        build().map_err(serde::de::Error::custom)
    }
}
