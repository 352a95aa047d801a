//! The third exterior power of the surface homology lattice, images of
//! bounding-pair maps built from 3-chains, and the two generator families
//! whose images span the whole wedge cube over ℤ.
//!
//! Only the image data is modeled: a Torelli element enters the computation
//! through its value in Λ³H₁, never as a mapping class. The two families
//! correspond to maps extending across both the alpha and beta handlebodies
//! (`AlphaBeta`) and across the gamma handlebody (`Gamma`); membership of a
//! chain curve in the corresponding Lagrangian is the extension certificate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::surface::{CutSystemClass, HomologyClass, SymplecticLattice};
use crate::trisection;

/// Element of Λ³H₁(Σ;ℤ) in the lexicographic triple basis over the ordered
/// basis (x_1..x_g, y_1..y_g).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WedgeCubeElement {
    genus: usize,
    coords: Vec<BigInt>,
}

/// Dimension C(2g, 3) of the wedge cube.
pub fn wedge_cube_dim(genus: usize) -> usize {
    let n = 2 * genus;
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Position of the basis triple i<j<k in lexicographic order.
pub fn triple_index(genus: usize, i: usize, j: usize, k: usize) -> usize {
    let n = 2 * genus;
    assert!(i < j && j < k && k < n, "indices must be strictly increasing");
    let c2 = |m: usize| m * m.saturating_sub(1) / 2;
    let mut idx = 0;
    for a in 0..i {
        idx += c2(n - 1 - a);
    }
    for b in i + 1..j {
        idx += n - 1 - b;
    }
    idx + (k - j - 1)
}

impl WedgeCubeElement {
    pub fn zero(genus: usize) -> Self {
        WedgeCubeElement {
            genus,
            coords: vec![BigInt::zero(); wedge_cube_dim(genus)],
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.coords[triple_index(self.genus, i, j, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &WedgeCubeElement) -> WedgeCubeElement {
        assert_eq!(self.genus, other.genus);
        WedgeCubeElement {
            genus: self.genus,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &WedgeCubeElement) -> WedgeCubeElement {
        assert_eq!(self.genus, other.genus);
        WedgeCubeElement {
            genus: self.genus,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> WedgeCubeElement {
        WedgeCubeElement {
            genus: self.genus,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> WedgeCubeElement {
        WedgeCubeElement {
            genus: self.genus,
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Builds the unit element e_i ∧ e_j ∧ e_k (indices into the 2g basis).
    pub fn basis_triple(genus: usize, i: usize, j: usize, k: usize) -> Self {
        let mut w = WedgeCubeElement::zero(genus);
        w.coords[triple_index(genus, i, j, k)] = BigInt::one();
        w
    }

    /// Wraps a full coordinate vector in the lexicographic triple basis.
    pub fn from_coords(genus: usize, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != wedge_cube_dim(genus) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} wedge coordinates for genus {genus}, got {}",
                wedge_cube_dim(genus),
                coords.len()
            )));
        }
        Ok(WedgeCubeElement { genus, coords })
    }
}

/// Alternating trilinear product a ∧ b ∧ c.
pub fn wedge3(
    lattice: SymplecticLattice,
    a: &HomologyClass,
    b: &HomologyClass,
    c: &HomologyClass,
) -> Result<WedgeCubeElement> {
    let n = lattice.rank();
    for v in [a, b, c] {
        if v.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "wedge argument has dim {}, lattice rank {n}",
                v.dim()
            )));
        }
    }
    let mut out = WedgeCubeElement::zero(lattice.genus());
    // Only triples inside the union of supports can carry a coefficient.
    let support: Vec<usize> = (0..n)
        .filter(|&i| !a.coord(i).is_zero() || !b.coord(i).is_zero() || !c.coord(i).is_zero())
        .collect();
    for (pi, &p) in support.iter().enumerate() {
        for (qi, &q) in support.iter().enumerate().skip(pi + 1) {
            for &r in support.iter().skip(qi + 1) {
                let det = a.coord(p) * (b.coord(q) * c.coord(r) - b.coord(r) * c.coord(q))
                    - a.coord(q) * (b.coord(p) * c.coord(r) - b.coord(r) * c.coord(p))
                    + a.coord(r) * (b.coord(p) * c.coord(q) - b.coord(q) * c.coord(p));
                if !det.is_zero() {
                    out.coords[triple_index(lattice.genus(), p, q, r)] = det;
                }
            }
        }
    }
    Ok(out)
}

/// Homological shadow of a 3-chain of curves: consecutive pairings ±1, outer
/// pairing 0, distinct outer classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeChainClass {
    pub a: HomologyClass,
    pub b: HomologyClass,
    pub c: HomologyClass,
}

impl ThreeChainClass {
    pub fn new(
        lattice: SymplecticLattice,
        a: HomologyClass,
        b: HomologyClass,
        c: HomologyClass,
    ) -> Result<Self> {
        let ab = lattice.pairing(&a, &b)?;
        let bc = lattice.pairing(&b, &c)?;
        let ac = lattice.pairing(&a, &c)?;
        if ab.abs() != BigInt::one() {
            return Err(Error::InvalidChain(format!("⟨a,b⟩ = {ab}, expected ±1")));
        }
        if bc.abs() != BigInt::one() {
            return Err(Error::InvalidChain(format!("⟨b,c⟩ = {bc}, expected ±1")));
        }
        if !ac.is_zero() {
            return Err(Error::InvalidChain(format!("⟨a,c⟩ = {ac}, expected 0")));
        }
        if a == c {
            return Err(Error::InvalidChain("degenerate chain with a = c".into()));
        }
        Ok(ThreeChainClass { a, b, c })
    }
}

/// The image of the bounding-pair map of a 3-chain: [a] ∧ [b] ∧ [c].
pub fn johnson_of_3chain(
    lattice: SymplecticLattice,
    chain: &ThreeChainClass,
) -> Result<WedgeCubeElement> {
    wedge3(lattice, &chain.a, &chain.b, &chain.c)
}

/// True iff one of the three chain classes lies in the span of the given
/// Lagrangian — the homological proxy for "one of the curves bounds in the
/// handlebody", which makes the bounding-pair map extend across it.
pub fn extends_across(lagrangian: &CutSystemClass, chain: &ThreeChainClass) -> bool {
    lagrangian.contains(&chain.a)
        || lagrangian.contains(&chain.b)
        || lagrangian.contains(&chain.c)
}

/// Which handlebodies a family's bounding-pair maps extend across.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Extends across both the alpha and the beta handlebody.
    AlphaBeta,
    /// Extends across the gamma handlebody.
    Gamma,
}

/// One certified generator: the chain, its wedge image, and the template it
/// instantiates.
#[derive(Clone, Debug)]
pub struct Generator {
    pub chain: ThreeChainClass,
    pub element: WedgeCubeElement,
    pub template: &'static str,
    pub indices: (usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    pub kind: FamilyKind,
    pub members: Vec<Generator>,
}

impl GeneratorFamily {
    pub fn elements(&self) -> Vec<WedgeCubeElement> {
        self.members.iter().map(|m| m.element.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Builds the two generator families for the standard diagram of (Q, k).
///
/// Every member is a valid `ThreeChainClass` whose extension certificates
/// hold: AlphaBeta members have a curve in L_α and a curve in L_β, Gamma
/// members a curve in L_γ. Chain templates are emitted over all index
/// combinations for which the certificates hold; small genus degrades to
/// empty families.
#[allow(clippy::needless_range_loop)]
pub fn tab_tc_generators(q: &IntMatrix, k: usize) -> Result<(GeneratorFamily, GeneratorFamily)> {
    if !q.is_square() || !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !q.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let n = q.rows();
    let g = n + k;
    let lattice = SymplecticLattice::new(g);
    let diagram = trisection::standard_pseudotrisection(q, k)?;
    let l_alpha = diagram.triple().alpha().clone();
    let l_beta = diagram.triple().beta().clone();
    let l_gamma = diagram.triple().gamma().clone();
    let z: Vec<HomologyClass> = trisection::standard_gamma_classes(q, k);

    let x = |i: usize| lattice.x(i);
    let y = |i: usize| lattice.y(i);

    let mut ab_members: Vec<Generator> = Vec::new();
    let mut c_members: Vec<Generator> = Vec::new();

    let push = |target: &mut Vec<Generator>,
                    kind: FamilyKind,
                    template: &'static str,
                    indices: (usize, usize, usize),
                    a: HomologyClass,
                    b: HomologyClass,
                    c: HomologyClass|
     -> Result<()> {
        let chain = ThreeChainClass::new(lattice, a, b, c)?;
        let certified = match kind {
            FamilyKind::AlphaBeta => {
                extends_across(&l_alpha, &chain) && extends_across(&l_beta, &chain)
            }
            FamilyKind::Gamma => extends_across(&l_gamma, &chain),
        };
        if certified {
            let element = johnson_of_3chain(lattice, &chain)?;
            target.push(Generator {
                chain,
                element,
                template,
                indices,
            });
        }
        Ok(())
    };

    // Dual-pair templates: pure basis monomials x_a ∧ y_a ∧ ξ_b.
    for a in 0..g {
        for b in 0..g {
            if a == b {
                continue;
            }
            push(
                &mut ab_members,
                FamilyKind::AlphaBeta,
                "dual-pair-x",
                (a, b, b),
                x(a),
                y(a),
                x(a).add(&x(b)),
            )?;
            push(
                &mut ab_members,
                FamilyKind::AlphaBeta,
                "dual-pair-y",
                (a, b, b),
                y(a),
                x(a),
                y(a).add(&y(b)),
            )?;
        }
    }

    // Bridged templates covering the no-dual-pair monomial patterns.
    for a in 0..g {
        for b in 0..g {
            for c in 0..g {
                if a == b || b == c || a == c {
                    continue;
                }
                push(
                    &mut ab_members,
                    FamilyKind::AlphaBeta,
                    "bridge-xyy",
                    (a, b, c),
                    x(a),
                    y(a).add(&y(b)),
                    x(b).add(&y(c)),
                )?;
                push(
                    &mut ab_members,
                    FamilyKind::AlphaBeta,
                    "bridge-xxx",
                    (a, b, c),
                    x(a),
                    y(a).add(&x(b)),
                    y(b).add(&x(c)),
                )?;
                push(
                    &mut ab_members,
                    FamilyKind::AlphaBeta,
                    "bridge-xxy",
                    (a, b, c),
                    x(a),
                    y(a).add(&x(b)),
                    y(b).add(&y(c)),
                )?;
                push(
                    &mut ab_members,
                    FamilyKind::AlphaBeta,
                    "bridge-yxx",
                    (a, b, c),
                    y(a),
                    x(a).add(&y(b)),
                    x(b).add(&x(c)),
                )?;
            }
        }
    }

    // Gamma-side: the form-twisted templates on the first n handles.
    for a in 0..n {
        for b in 0..g {
            if b == a {
                continue;
            }
            push(
                &mut c_members,
                FamilyKind::Gamma,
                "q-twist",
                (a, b, b),
                y(a),
                z[a].clone(),
                y(a).add(&y(b)),
            )?;
            for c in 0..g {
                if c == a || c == b {
                    continue;
                }
                push(
                    &mut c_members,
                    FamilyKind::Gamma,
                    "q-cross",
                    (a, b, c),
                    y(a).add(&y(b)),
                    z[a].clone(),
                    y(a).add(&y(c)),
                )?;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                push(
                    &mut c_members,
                    FamilyKind::Gamma,
                    "z-triple",
                    (a, b, c),
                    z[a].clone(),
                    z[b].clone().add(&y(a)).add(&y(c)),
                    z[c].clone(),
                )?;
            }
        }
    }
    // Gamma-side templates anchored on a stabilization dual y_l, l ≥ n.
    for l in n..g {
        for i in 0..g {
            for jdx in 0..g {
                if i == l || jdx == l || i == jdx {
                    continue;
                }
                push(
                    &mut c_members,
                    FamilyKind::Gamma,
                    "right-yyy",
                    (l, i, jdx),
                    y(l),
                    x(l).add(&y(i)),
                    x(i).add(&y(jdx)),
                )?;
                push(
                    &mut c_members,
                    FamilyKind::Gamma,
                    "right-xxy",
                    (l, i, jdx),
                    y(l),
                    x(l).add(&x(i)),
                    y(i).add(&x(jdx)),
                )?;
            }
        }
        for c in n..g {
            if c == l {
                continue;
            }
            for a in 0..g {
                if a == l || a == c {
                    continue;
                }
                push(
                    &mut c_members,
                    FamilyKind::Gamma,
                    "right-xyy",
                    (l, c, a),
                    y(l),
                    x(l).add(&y(c)),
                    x(c).add(&x(a)),
                )?;
            }
        }
    }

    Ok((
        GeneratorFamily {
            kind: FamilyKind::AlphaBeta,
            members: ab_members,
        },
        GeneratorFamily {
            kind: FamilyKind::Gamma,
            members: c_members,
        },
    ))
}

/// Result of the integral spanning check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpanCertificate {
    /// C(2g,3).
    pub dimension: usize,
    pub num_generators: usize,
    /// Invariant factor → multiplicity over the generator matrix.
    pub invariant_factors_summary: BTreeMap<String, usize>,
    #[serde(rename = "spans_over_Z")]
    pub spans_over_z: bool,
}

/// Integral spanning certificate: the generators span Λ³ℤ^{2g} over ℤ iff
/// the coordinate matrix has C(2g,3) invariant factors all equal to 1.
pub fn spans_wedge_cube(elements: &[WedgeCubeElement], genus: usize) -> SpanCertificate {
    let dim = wedge_cube_dim(genus);
    let mut reducer = RowReducer::new(dim, false);
    for (i, e) in elements.iter().enumerate() {
        assert_eq!(e.genus(), genus, "mixed-genus elements");
        reducer.insert(e.coords().to_vec(), i);
    }
    let mut summary: BTreeMap<String, usize> = BTreeMap::new();
    let all_ones = reducer.pivots.len() == dim
        && reducer
            .pivots
            .iter()
            .all(|(col, row)| row.coords[*col].is_one());
    if all_ones {
        if dim > 0 {
            summary.insert("1".to_string(), dim);
        }
    } else {
        // Invariant factors of the reduced triangular stack (row operations
        // do not change them), padded with zeros up to min(N, D).
        let rows: Vec<Vec<BigInt>> = reducer.pivots.values().map(|r| r.coords.clone()).collect();
        let nonzero = if rows.is_empty() {
            Vec::new()
        } else {
            IntMatrix::from_rows(rows).expect("equal lengths").snf_diagonal()
        };
        for d in &nonzero {
            *summary.entry(d.to_string()).or_insert(0) += 1;
        }
        let total = elements.len().min(dim);
        let zeros = total.saturating_sub(nonzero.len());
        if zeros > 0 {
            *summary.entry("0".to_string()).or_insert(0) += zeros;
        }
    }
    SpanCertificate {
        dimension: dim,
        num_generators: elements.len(),
        invariant_factors_summary: summary,
        spans_over_z: all_ones,
    }
}

/// Integer coefficients expressing a target over the two families.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Coefficients aligned with the AlphaBeta family members.
    pub ab_coefficients: Vec<BigInt>,
    /// Coefficients aligned with the Gamma family members.
    pub c_coefficients: Vec<BigInt>,
}

impl Decomposition {
    /// Re-evaluates the combination; callers verify it equals the target.
    pub fn recombine(
        &self,
        fam_ab: &GeneratorFamily,
        fam_c: &GeneratorFamily,
        genus: usize,
    ) -> WedgeCubeElement {
        let mut acc = WedgeCubeElement::zero(genus);
        for (c, m) in self.ab_coefficients.iter().zip(&fam_ab.members) {
            if !c.is_zero() {
                acc = acc.add(&m.element.scale(c));
            }
        }
        for (c, m) in self.c_coefficients.iter().zip(&fam_c.members) {
            if !c.is_zero() {
                acc = acc.add(&m.element.scale(c));
            }
        }
        acc
    }
}

/// Expresses the target exactly over the two families; the residual is zero
/// by construction (verified by re-evaluation before returning).
pub fn decompose_johnson(
    target: &WedgeCubeElement,
    fam_ab: &GeneratorFamily,
    fam_c: &GeneratorFamily,
) -> Result<Decomposition> {
    let genus = target.genus();
    let dim = wedge_cube_dim(genus);
    let mut reducer = RowReducer::new(dim, true);
    let ab_len = fam_ab.members.len();
    for (i, m) in fam_ab.members.iter().enumerate() {
        reducer.insert(m.element.coords().to_vec(), i);
    }
    for (i, m) in fam_c.members.iter().enumerate() {
        reducer.insert(m.element.coords().to_vec(), ab_len + i);
    }
    let combo = reducer
        .solve(target.coords())
        .ok_or(Error::NoIntegerSolution)?;
    let mut ab = vec![BigInt::zero(); ab_len];
    let mut c = vec![BigInt::zero(); fam_c.members.len()];
    for (idx, coeff) in combo {
        if idx < ab_len {
            ab[idx] += coeff;
        } else {
            c[idx - ab_len] += coeff;
        }
    }
    let d = Decomposition {
        ab_coefficients: ab,
        c_coefficients: c,
    };
    if &d.recombine(fam_ab, fam_c, genus) != target {
        return Err(Error::NoIntegerSolution);
    }
    Ok(d)
}

/// Online integral row reduction with optional provenance tracking.
///
/// Maintains a set of rows triangular with respect to their leading columns.
/// Inserting a row reduces it against the current set, combining rows by
/// extended gcd when the leading entry does not divide.
struct RowReducer {
    dim: usize,
    track: bool,
    pivots: BTreeMap<usize, ReducedRow>,
}

struct ReducedRow {
    coords: Vec<BigInt>,
    combo: Vec<(usize, BigInt)>,
}

fn combo_axpy(dst: &mut Vec<(usize, BigInt)>, coeff: &BigInt, src: &[(usize, BigInt)]) {
    if coeff.is_zero() {
        return;
    }
    for (idx, v) in src {
        match dst.binary_search_by_key(idx, |p| p.0) {
            Ok(pos) => {
                let nv = &dst[pos].1 + coeff * v;
                if nv.is_zero() {
                    dst.remove(pos);
                } else {
                    dst[pos].1 = nv;
                }
            }
            Err(pos) => dst.insert(pos, (*idx, coeff * v)),
        }
    }
}

fn combo_scale(c: &mut [(usize, BigInt)], s: &BigInt) {
    for (_, v) in c.iter_mut() {
        *v *= s;
    }
}

impl RowReducer {
    fn new(dim: usize, track: bool) -> Self {
        RowReducer {
            dim,
            track,
            pivots: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut coords: Vec<BigInt>, orig: usize) {
        assert_eq!(coords.len(), self.dim);
        let mut combo: Vec<(usize, BigInt)> = if self.track {
            vec![(orig, BigInt::one())]
        } else {
            Vec::new()
        };
        let mut start = 0;
        loop {
            let Some(j) = (start..self.dim).find(|&j| !coords[j].is_zero()) else {
                return; // reduced to zero
            };
            match self.pivots.get_mut(&j) {
                None => {
                    if coords[j].is_negative() {
                        for v in coords.iter_mut() {
                            *v = -std::mem::take(v);
                        }
                        combo_scale(&mut combo, &BigInt::from(-1));
                    }
                    self.pivots.insert(j, ReducedRow { coords, combo });
                    return;
                }
                Some(p) => {
                    let pj = p.coords[j].clone();
                    let (q, r) = coords[j].div_rem(&pj);
                    if r.is_zero() {
                        let nq = -q;
                        for (dst, src) in coords.iter_mut().zip(&p.coords) {
                            *dst += &nq * src;
                        }
                        combo_axpy(&mut combo, &nq, &p.combo);
                        start = j + 1;
                    } else {
                        // gcd-combine: new pivot row s·p + t·row, remainder
                        // row (p_j/g)·row − (row_j/g)·p.
                        let e = pj.extended_gcd(&coords[j]);
                        let (gcd, s, t) = (e.gcd, e.x, e.y);
                        let a = &pj / &gcd;
                        let b = &coords[j] / &gcd;
                        let mut new_coords = vec![BigInt::zero(); self.dim];
                        for (idx, nc) in new_coords.iter_mut().enumerate() {
                            *nc = &s * &p.coords[idx] + &t * &coords[idx];
                        }
                        let mut new_combo = p.combo.clone();
                        combo_scale(&mut new_combo, &s);
                        combo_axpy(&mut new_combo, &t, &combo);
                        let mut rem = vec![BigInt::zero(); self.dim];
                        for (idx, rv) in rem.iter_mut().enumerate() {
                            *rv = &a * &coords[idx] - &b * &p.coords[idx];
                        }
                        let mut rem_combo = combo.clone();
                        combo_scale(&mut rem_combo, &a);
                        let nb = -b;
                        combo_axpy(&mut rem_combo, &nb, &p.combo);
                        p.coords = new_coords;
                        p.combo = new_combo;
                        coords = rem;
                        combo = rem_combo;
                        start = j + 1;
                    }
                }
            }
        }
    }

    /// Expresses the target over the inserted rows, if possible.
    fn solve(&self, target: &[BigInt]) -> Option<Vec<(usize, BigInt)>> {
        assert_eq!(target.len(), self.dim);
        let mut t = target.to_vec();
        let mut combo: Vec<(usize, BigInt)> = Vec::new();
        for j in 0..self.dim {
            if t[j].is_zero() {
                continue;
            }
            let p = self.pivots.get(&j)?;
            let (q, r) = t[j].div_rem(&p.coords[j]);
            if !r.is_zero() {
                return None;
            }
            let nq = -&q;
            for (dst, src) in t.iter_mut().zip(&p.coords) {
                *dst += &nq * src;
            }
            combo_axpy(&mut combo, &q, &p.combo);
        }
        if t.iter().all(Zero::is_zero) {
            Some(combo)
        } else {
            None
        }
    }
}
