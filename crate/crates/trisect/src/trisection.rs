//! Pseudotrisection diagrams and their intersection forms.
//!
//! A `(g;k,0,0)` pseudotrisection diagram is a Heegaard triple in which the
//! alpha-beta pair glues to (the homology of) #_k S¹×S² and the other two
//! pairs glue to integral homology spheres. The intersection form of the
//! underlying 4-dimensional data is computed by first standardizing the
//! diagram so the k stabilization blocks split off and then evaluating
//!
//! ```text
//! Q = (−1) · γQβ · (αQβ)⁻¹ · γQα
//! ```
//!
//! on the non-degenerate block, where the pairing matrices are taken in the
//! adapted symplectic basis. All sign conventions are calibrated so that the
//! standard rank-one diagram (α = x, β = y, γ = −x − y) yields ⟨1⟩ and the
//! E8 figure yields the positive definite E8 matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms;
use crate::heegaard::{HeegaardTriple, HomologyReport};
use crate::matrix::IntMatrix;
use crate::surface::{CutSystemClass, HomologyClass, SymplecticLattice};

/// Which of the three pairwise unions have the homology a pseudotrisection
/// requires.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramValidity {
    /// (A,B) has the homology of #_k S¹×S² for the diagram's k.
    pub ab_s1s2: bool,
    /// (B,C) is an integral homology sphere.
    pub bc_sphere: bool,
    /// (C,A) is an integral homology sphere.
    pub ca_sphere: bool,
    pub ab_report: HomologyReport,
    pub bc_report: HomologyReport,
    pub ca_report: HomologyReport,
}

impl DiagramValidity {
    pub fn check(triple: &HeegaardTriple) -> DiagramValidity {
        let ab = triple.pair_ab().homology();
        let bc = triple.pair_bc().homology();
        let ca = triple.pair_ca().homology();
        DiagramValidity {
            ab_s1s2: ab.is_s1s2_connected_sum(triple.k()),
            bc_sphere: bc.is_homology_sphere,
            ca_sphere: ca.is_homology_sphere,
            ab_report: ab,
            bc_report: bc,
            ca_report: ca,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.ab_s1s2 && self.bc_sphere && self.ca_sphere
    }

    fn first_failure(&self, k: usize) -> Option<String> {
        if !self.ab_s1s2 {
            return Some(format!(
                "alpha-beta pair does not have #_{k} S1xS2 homology (free rank {}, torsion {:?})",
                self.ab_report.free_rank, self.ab_report.invariant_factors
            ));
        }
        if !self.bc_sphere {
            return Some("beta-gamma pair is not a homology sphere".into());
        }
        if !self.ca_sphere {
            return Some("gamma-alpha pair is not a homology sphere".into());
        }
        None
    }
}

/// A validated (g;k,0,0) pseudotrisection diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudotrisectionDiagram {
    triple: HeegaardTriple,
    validity: DiagramValidity,
}

impl PseudotrisectionDiagram {
    /// Wraps a triple, checking the three pairwise homology conditions.
    pub fn new(triple: HeegaardTriple) -> Result<Self> {
        let validity = DiagramValidity::check(&triple);
        if let Some(reason) = validity.first_failure(triple.k()) {
            return Err(Error::InvalidDiagram(reason));
        }
        Ok(PseudotrisectionDiagram { triple, validity })
    }

    pub fn triple(&self) -> &HeegaardTriple {
        &self.triple
    }

    pub fn validity(&self) -> &DiagramValidity {
        &self.validity
    }

    pub fn genus(&self) -> usize {
        self.triple.genus()
    }

    pub fn k(&self) -> usize {
        self.triple.k()
    }

    /// Rank of the intersection form.
    pub fn form_rank(&self) -> usize {
        self.genus() - self.k()
    }

    /// The intersection form, via standardization and the pairing formula.
    pub fn intersection_form(&self) -> Result<IntersectionForm> {
        let (q, _) = extract_form(&self.triple)?;
        IntersectionForm::new(q)
    }

    /// An equivalent diagram in standard shape: A = (x_i), B = (y_i) on the
    /// first g−k handles and (x_i) after, C = (−x_i − Σ Q_ij y_j) on the
    /// first g−k handles and (y_i) after. The intersection form is unchanged.
    pub fn standardize_basis(&self) -> Result<PseudotrisectionDiagram> {
        let (q, k) = extract_form(&self.triple)?;
        standard_pseudotrisection(&q, k)
    }

    /// True if the diagram is literally in the standard shape, returning the
    /// form matrix it exhibits.
    pub fn standard_shape_form(&self) -> Result<IntMatrix> {
        standard_shape_form(&self.triple)
    }
}

/// Symmetric unimodular intersection form together with a decomposition tag
/// when one is recognized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    matrix: IntMatrix,
    label: Option<String>,
}

impl IntersectionForm {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::AsymmetricResult);
        }
        if !matrix.is_unimodular()? {
            return Err(Error::NotUnimodular);
        }
        let label = forms::detect_label(&matrix);
        Ok(IntersectionForm { matrix, label })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn signature(&self) -> i64 {
        if self.rank() == 0 {
            0
        } else {
            self.matrix.signature().expect("symmetric unimodular")
        }
    }

    pub fn is_even(&self) -> bool {
        self.matrix.has_even_diagonal()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

// Output schema: { "rank": n, "matrix": [[...]], "signature": s,
// "even": bool, "unimodular": bool } plus the optional label.
impl Serialize for IntersectionForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IntersectionForm", 6)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("matrix", &self.matrix)?;
        st.serialize_field("signature", &self.signature())?;
        st.serialize_field("even", &self.is_even())?;
        st.serialize_field("unimodular", &true)?;
        st.serialize_field("label", &self.label)?;
        st.end()
    }
}

/// Builds the standard (n+k; k,0,0) pseudotrisection for a symmetric
/// unimodular form Q of rank n: A = (x_i), B = (y_1..y_n, x_{n+1}..x_g),
/// C = (z_1..z_n, y_{n+1}..y_g) with z_i = −x_i − Σ_j Q_ij y_j.
pub fn standard_pseudotrisection(q: &IntMatrix, k: usize) -> Result<PseudotrisectionDiagram> {
    if !q.is_square() || !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !q.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let n = q.rows();
    let g = n + k;
    let lattice = SymplecticLattice::new(g);
    let alpha = CutSystemClass::standard_x(lattice);
    let beta_rows = IntMatrix::from_fn(g, 2 * g, |r, c| {
        if r < n {
            if c == g + r {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else if c == r {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let gamma_rows = IntMatrix::from_fn(g, 2 * g, |r, c| {
        if r < n {
            if c == r {
                -BigInt::one()
            } else if c >= g && c < g + n {
                -q[(r, c - g)].clone()
            } else {
                BigInt::zero()
            }
        } else if c == g + r {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let beta = CutSystemClass::new(lattice, beta_rows)?;
    let gamma = CutSystemClass::new(lattice, gamma_rows)?;
    let triple = HeegaardTriple::new(lattice, alpha, beta, gamma, k)?;
    PseudotrisectionDiagram::new(triple)
}

/// The genus-8 diagram behind the E8 pseudotrisection figure: alpha and
/// gamma curves each meet a unique beta curve once, gamma curves carry
/// surface framing +2 and link along the E8 graph. Homologically this is
/// α_i = x_i, β_i = y_i, γ_i = −x_i − Σ (E8)_ij y_j.
pub fn e8_figure_diagram() -> PseudotrisectionDiagram {
    standard_pseudotrisection(&forms::e8(), 0).expect("E8 is symmetric unimodular")
}

/// The gamma classes of the standard diagram for Q (z_i = −x_i − Q y rows,
/// then y rows on the stabilization handles); useful to callers assembling
/// chains.
///
/// Sign convention: z_i = −x_i − Σ Q_ij y_j throughout the crate. The
/// opposite sign x_i + Σ Q_ij y_j spans the same line, so wedge-cube
/// spanning statements are unaffected by the choice.
pub fn standard_gamma_classes(q: &IntMatrix, k: usize) -> Vec<HomologyClass> {
    let n = q.rows();
    let g = n + k;
    let lattice = SymplecticLattice::new(g);
    let mut out = Vec::with_capacity(g);
    for i in 0..n {
        let mut z = lattice.x(i).neg();
        for j in 0..n {
            z = z.sub(&lattice.y(j).scale(&q[(i, j)]));
        }
        out.push(z);
    }
    for l in n..g {
        out.push(lattice.y(l));
    }
    out
}

/// Core extraction: brings the triple to an adapted symplectic basis and
/// reads off (Q, k).
///
/// Steps: Smith-normalize the alpha-beta pairing to diag(1_n, 0_k); take the
/// transformed alpha rows as the x-basis and the first n transformed beta
/// rows as y_1..y_n; complete symplectically; express the gamma system in
/// this basis as [S | −I] and return Q = −S₁₁⁻¹.
fn extract_form(triple: &HeegaardTriple) -> Result<(IntMatrix, usize)> {
    let g = triple.genus();
    let k = triple.k();
    let n = g - k;
    let lattice = triple.lattice();
    let j = lattice.pairing_matrix_j();

    let p_ab = triple.alpha().pairing_matrix(triple.beta())?;
    let snf = p_ab.smith_normal_form();
    for (idx, d) in snf.diag.iter().enumerate() {
        let expected_one = idx < n;
        if expected_one && !d.is_one() {
            return Err(Error::NonInvertiblePairing);
        }
        if !expected_one && !d.is_zero() {
            return Err(Error::InvalidDiagram(format!(
                "alpha-beta pairing has invariant factor {d} where a stabilization zero was expected"
            )));
        }
    }

    let a_rows = snf.left.mul(triple.alpha().rows())?;
    let b_rows = snf.right.transpose().mul(triple.beta().rows())?;

    // New basis rows: x_i = a_rows[i]; y_i = b_rows[i] for i < n; the last k
    // dual classes come from a symplectic completion.
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(2 * g);
    for i in 0..g {
        basis.push(a_rows.row_vec(i));
    }
    for i in 0..n {
        basis.push(b_rows.row_vec(i));
    }

    // Completion: for each l in n..g solve ⟨x_i, w⟩ = δ_il, ⟨y_j, w⟩ = 0.
    let constraints = IntMatrix::from_rows(basis.clone())?;
    let constraint_t = constraints.mul(&j)?.transpose();
    let mut completion: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for l in n..g {
        let mut target = vec![BigInt::zero(); g + n];
        target[l] = BigInt::one();
        let w = constraint_t
            .solve_left(&target)
            .ok_or(Error::NonInvertiblePairing)?;
        completion.push(w);
    }
    // Mutual pairings of the completion vectors are killed with x_{n..g}
    // corrections (lower-triangular Gram–Schmidt).
    for l in 1..k {
        for m in 0..l {
            let wl = HomologyClass::new(completion[l].clone());
            let wm = HomologyClass::new(completion[m].clone());
            let s = lattice.pairing(&wl, &wm)?;
            if !s.is_zero() {
                // w_l ← w_l − s · x_{n+m}
                let corrected = wl.sub(&HomologyClass::new(a_rows.row_vec(n + m)).scale(&s));
                completion[l] = corrected.coords().to_vec();
            }
        }
    }
    basis.extend(completion);

    let t = IntMatrix::from_rows(basis)?;
    // The basis must be symplectic and integral-invertible by construction;
    // both are cheap to verify and guard against invalid inputs.
    if t.mul(&j)?.mul(&t.transpose())? != j {
        return Err(Error::NonStandardDiagram(
            "adapted basis failed the symplectic check".into(),
        ));
    }
    let t_inv = t.unimodular_inverse()?;

    let x = triple.gamma().rows().mul(&t_inv)?;
    let p_part = x.submatrix(0, g, 0, g);
    let r_part = x.submatrix(0, g, g, 2 * g);
    let neg_r = r_part.neg();
    if !neg_r.is_unimodular()? {
        return Err(Error::NonInvertiblePairing);
    }
    let s = neg_r.unimodular_inverse()?.mul(&p_part)?;
    if !s.is_symmetric() {
        return Err(Error::AsymmetricResult);
    }
    let s11 = s.submatrix(0, n, 0, n);
    if !s11.is_unimodular()? {
        return Err(Error::NonInvertiblePairing);
    }
    let q = s11.unimodular_inverse()?.neg();
    if !q.is_symmetric() {
        return Err(Error::AsymmetricResult);
    }
    Ok((q, k))
}

/// Reads the form off a diagram already in literal standard shape, without
/// any basis work. Errors with `NonStandardDiagram` otherwise.
pub(crate) fn standard_shape_form(triple: &HeegaardTriple) -> Result<IntMatrix> {
    let g = triple.genus();
    let k = triple.k();
    let n = g - k;
    let lattice = triple.lattice();
    let expect = |cond: bool, what: &str| -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(Error::NonStandardDiagram(what.to_string()))
        }
    };
    expect(
        triple.alpha() == &CutSystemClass::standard_x(lattice),
        "alpha is not (x_1..x_g)",
    )?;
    let b = triple.beta().rows();
    for r in 0..g {
        for c in 0..2 * g {
            let want_one = if r < n { c == g + r } else { c == r };
            let ok = if want_one {
                b[(r, c)].is_one()
            } else {
                b[(r, c)].is_zero()
            };
            expect(ok, "beta is not (y_1..y_n, x_{n+1}..x_g)")?;
        }
    }
    let c_rows = triple.gamma().rows();
    let mut q = IntMatrix::zeros(n, n);
    for r in 0..g {
        for col in 0..2 * g {
            let v = &c_rows[(r, col)];
            if r < n {
                if col < g {
                    let want = if col == r { -BigInt::one() } else { BigInt::zero() };
                    expect(*v == want, "gamma x-block is not −I")?;
                } else if col < g + n {
                    q[(r, col - g)] = -v.clone();
                } else {
                    expect(v.is_zero(), "gamma touches stabilization duals")?;
                }
            } else {
                let want = if col == g + r { BigInt::one() } else { BigInt::zero() };
                expect(*v == want, "gamma stabilization rows are not (y_l)")?;
            }
        }
    }
    expect(q.is_symmetric(), "gamma block is not symmetric")?;
    Ok(q)
}
