//! The homology lattice of a closed genus-g surface with its intersection
//! pairing, and the homological shadows of curves and cut systems.
//!
//! Coordinates are always written in the ordered basis
//! `(x_1, …, x_g, y_1, …, y_g)` with `⟨x_i, y_j⟩ = δ_ij` and
//! `⟨x_i, x_j⟩ = ⟨y_i, y_j⟩ = 0`. Indices in the API are 0-based.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// H₁ of the genus-g surface together with the basis convention; the lattice
/// itself carries no data beyond the genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticLattice {
    genus: usize,
}

impl SymplecticLattice {
    pub fn new(genus: usize) -> Self {
        SymplecticLattice { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// Basis class x_i (0-based).
    pub fn x(&self, i: usize) -> HomologyClass {
        assert!(i < self.genus, "x index out of range");
        HomologyClass::unit(self.rank(), i)
    }

    /// Basis class y_i (0-based).
    pub fn y(&self, i: usize) -> HomologyClass {
        assert!(i < self.genus, "y index out of range");
        HomologyClass::unit(self.rank(), self.genus + i)
    }

    pub fn zero_class(&self) -> HomologyClass {
        HomologyClass::zero(self.rank())
    }

    /// Matrix J of the pairing: `⟨a, b⟩ = aᵀ · J · b`.
    pub fn pairing_matrix_j(&self) -> IntMatrix {
        let g = self.genus;
        let mut j = IntMatrix::zeros(2 * g, 2 * g);
        for i in 0..g {
            j[(i, g + i)] = BigInt::one();
            j[(g + i, i)] = -BigInt::one();
        }
        j
    }

    /// The intersection pairing `⟨a, b⟩`.
    pub fn pairing(&self, a: &HomologyClass, b: &HomologyClass) -> Result<BigInt> {
        let n = self.rank();
        if a.dim() != n || b.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "classes of dim {} and {} on a genus-{} lattice",
                a.dim(),
                b.dim(),
                self.genus
            )));
        }
        let g = self.genus;
        let mut acc = BigInt::zero();
        for i in 0..g {
            acc += &a.coords[i] * &b.coords[g + i] - &a.coords[g + i] * &b.coords[i];
        }
        Ok(acc)
    }
}

/// An integral first-homology class in the (x, y) coordinates. Serializes
/// as a JSON integer array.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyClass {
    #[serde(
        serialize_with = "crate::matrix::serialize_bigint_vec",
        deserialize_with = "crate::matrix::deserialize_bigint_vec"
    )]
    coords: Vec<BigInt>,
}

impl HomologyClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        HomologyClass { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        HomologyClass {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        HomologyClass {
            coords: vec![BigInt::zero(); dim],
        }
    }

    fn unit(dim: usize, idx: usize) -> Self {
        let mut coords = vec![BigInt::zero(); dim];
        coords[idx] = BigInt::one();
        HomologyClass { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        assert_eq!(self.dim(), other.dim());
        HomologyClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &HomologyClass) -> HomologyClass {
        assert_eq!(self.dim(), other.dim());
        HomologyClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> HomologyClass {
        HomologyClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> HomologyClass {
        HomologyClass {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Reinterprets a class on a genus-`old_g` surface inside a larger
    /// surface, mapping x_i ↦ x_{i+off}, y_i ↦ y_{i+off}.
    pub fn embed(&self, old_genus: usize, new_genus: usize, offset: usize) -> HomologyClass {
        assert_eq!(self.dim(), 2 * old_genus);
        assert!(offset + old_genus <= new_genus);
        let mut coords = vec![BigInt::zero(); 2 * new_genus];
        for i in 0..old_genus {
            coords[offset + i] = self.coords[i].clone();
            coords[new_genus + offset + i] = self.coords[old_genus + i].clone();
        }
        HomologyClass { coords }
    }
}

impl std::fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g = self.coords.len() / 2;
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = if i < g {
                format!("x{}", i + 1)
            } else {
                format!("y{}", i - g + 1)
            };
            if c.is_one() {
                parts.push(name);
            } else {
                parts.push(format!("{c}·{name}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The homological shadow of a cut system: g classes spanning a Lagrangian
/// direct summand, stored as the rows of a g×2g matrix.
///
/// Construction validates isotropy and primitivity, so a value of this type
/// always satisfies both; deserialization re-validates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutSystemClass {
    genus: usize,
    rows: IntMatrix,
}

impl<'de> Deserialize<'de> for CutSystemClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            genus: usize,
            rows: IntMatrix,
        }
        let repr = Repr::deserialize(d)?;
        CutSystemClass::new(SymplecticLattice::new(repr.genus), repr.rows)
            .map_err(serde::de::Error::custom)
    }
}

impl CutSystemClass {
    /// Validates and wraps a g×2g row matrix over the given lattice.
    pub fn new(lattice: SymplecticLattice, rows: IntMatrix) -> Result<Self> {
        let g = lattice.genus();
        if rows.rows() != g || rows.cols() != 2 * g {
            return Err(Error::WrongRank(format!(
                "expected {}x{} rows, got {}x{}",
                g,
                2 * g,
                rows.rows(),
                rows.cols()
            )));
        }
        // Isotropy: every pairwise pairing vanishes.
        let j = lattice.pairing_matrix_j();
        let gram = rows.mul(&j)?.mul(&rows.transpose())?;
        for i in 0..g {
            for k in 0..g {
                if !gram[(i, k)].is_zero() {
                    return Err(Error::NotIsotropic {
                        i,
                        j: k,
                        value: gram[(i, k)].to_string(),
                    });
                }
            }
        }
        // Primitivity: the row span is a rank-g direct summand, i.e. all SNF
        // invariant factors are 1.
        let diag = rows.snf_diagonal();
        for d in &diag {
            if d.is_zero() {
                return Err(Error::WrongRank("rows are linearly dependent".into()));
            }
            if !d.is_one() {
                return Err(Error::NotPrimitive {
                    factor: d.to_string(),
                });
            }
        }
        Ok(CutSystemClass { genus: g, rows })
    }

    pub fn from_classes(lattice: SymplecticLattice, classes: &[HomologyClass]) -> Result<Self> {
        let rows = IntMatrix::from_rows(classes.iter().map(|c| c.coords().to_vec()).collect())?;
        CutSystemClass::new(lattice, rows)
    }

    /// The standard alpha system (x_1, …, x_g).
    pub fn standard_x(lattice: SymplecticLattice) -> Self {
        let g = lattice.genus();
        let rows = IntMatrix::from_fn(g, 2 * g, |r, c| {
            if c == r {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        CutSystemClass { genus: g, rows }
    }

    /// The standard beta system (y_1, …, y_g).
    pub fn standard_y(lattice: SymplecticLattice) -> Self {
        let g = lattice.genus();
        let rows = IntMatrix::from_fn(g, 2 * g, |r, c| {
            if c == g + r {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        CutSystemClass { genus: g, rows }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rows(&self) -> &IntMatrix {
        &self.rows
    }

    pub fn class(&self, i: usize) -> HomologyClass {
        HomologyClass::new(self.rows.row_vec(i))
    }

    pub fn classes(&self) -> Vec<HomologyClass> {
        (0..self.genus).map(|i| self.class(i)).collect()
    }

    /// Matrix of pairings: entry (i, j) = ⟨self_i, other_j⟩.
    pub fn pairing_matrix(&self, other: &CutSystemClass) -> Result<IntMatrix> {
        if self.genus != other.genus {
            return Err(Error::LatticeMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        let j = SymplecticLattice::new(self.genus).pairing_matrix_j();
        self.rows.mul(&j)?.mul(&other.rows.transpose())
    }

    /// True iff the class lies in the integral row span (the homological
    /// proxy for "bounds in the handlebody").
    pub fn contains(&self, class: &HomologyClass) -> bool {
        class.dim() == 2 * self.genus && self.rows.solve_left(class.coords()).is_some()
    }

    /// Applies a GL_g(ℤ) row transformation (a sequence of handleslides).
    pub fn transformed(&self, m: &IntMatrix) -> Result<CutSystemClass> {
        if !m.is_square() || m.rows() != self.genus {
            return Err(Error::DimensionMismatch(
                "row transform must be g x g".into(),
            ));
        }
        if !m.is_unimodular()? {
            return Err(Error::NotUnimodular);
        }
        let rows = m.mul(&self.rows)?;
        Ok(CutSystemClass {
            genus: self.genus,
            rows,
        })
    }

    /// Applies a global change of the lattice basis: rows become
    /// `rows · T`. The transform must preserve the pairing (T·J·Tᵀ = J).
    pub fn change_basis(&self, t: &IntMatrix) -> Result<CutSystemClass> {
        let lattice = SymplecticLattice::new(self.genus);
        let j = lattice.pairing_matrix_j();
        if t.rows() != 2 * self.genus || t.cols() != 2 * self.genus {
            return Err(Error::DimensionMismatch("basis change must be 2g x 2g".into()));
        }
        if t.mul(&j)?.mul(&t.transpose())? != j {
            return Err(Error::DimensionMismatch(
                "basis change does not preserve the pairing".into(),
            ));
        }
        let rows = self.rows.mul(t)?;
        Ok(CutSystemClass {
            genus: self.genus,
            rows,
        })
    }

    /// Block direct sum with a cut system on another surface; the result
    /// lives on the genus-(g₁+g₂) surface with the x/y blocks interleaved
    /// correctly.
    pub fn direct_sum(&self, other: &CutSystemClass) -> CutSystemClass {
        let g1 = self.genus;
        let g2 = other.genus;
        let g = g1 + g2;
        let rows = IntMatrix::from_fn(g, 2 * g, |r, c| {
            if r < g1 {
                // Row from self: x-block at 0..g1, y-block at g..g+g1.
                if c < g1 {
                    self.rows[(r, c)].clone()
                } else if (g..g + g1).contains(&c) {
                    self.rows[(r, g1 + (c - g))].clone()
                } else {
                    BigInt::zero()
                }
            } else {
                let r2 = r - g1;
                if (g1..g).contains(&c) {
                    other.rows[(r2, c - g1)].clone()
                } else if c >= g + g1 {
                    other.rows[(r2, g2 + (c - g - g1))].clone()
                } else {
                    BigInt::zero()
                }
            }
        });
        CutSystemClass { genus: g, rows }
    }
}

/// The transvection u ↦ u + ⟨u, v⟩·v as a matrix acting on row vectors from
/// the right: T = I + J·vᵀ·v. Always preserves the pairing.
pub fn symplectic_transvection(lattice: SymplecticLattice, v: &HomologyClass) -> IntMatrix {
    let n = lattice.rank();
    assert_eq!(v.dim(), n, "transvection class has wrong dimension");
    let j = lattice.pairing_matrix_j();
    let mut t = IntMatrix::identity(n);
    for r in 0..n {
        // (J vᵀ)_r = Σ_c J[r][c] v[c]
        let jv: BigInt = (0..n).map(|c| &j[(r, c)] * v.coord(c)).sum();
        if jv.is_zero() {
            continue;
        }
        for c in 0..n {
            let add = &jv * v.coord(c);
            t[(r, c)] += add;
        }
    }
    t
}
