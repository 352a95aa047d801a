//! Mod-2 Casson bookkeeping under separating-twist regluing and the final
//! obstruction report for even intersection forms.
//!
//! A regluing script records the algebraic sides of separating twists. Each
//! twist changes the mod-2 Casson invariants of the two homology-sphere
//! sectors by the Arf invariants of the induced knots, computed under q₂ and
//! q₃. For even forms the two enhancements coincide, so the twist deltas
//! cancel in the sum and the residue `m mod 2` of `Q ≅ mE8 ⊕ nH` is
//! invariant — the computable core of the signature obstruction.

use num_integer::Integer;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linking::{
    arf_invariant, linking_form, LinkingKind, QuadraticEnhancement, SubsurfaceBasis,
};
use crate::matrix::IntMatrix;
use crate::surface::{symplectic_transvection, HomologyClass, SymplecticLattice};
use crate::trisection::PseudotrisectionDiagram;

/// Ordered list of separating twists, each given by the symplectic basis of
/// its algebraic side. Twist direction is irrelevant mod 2 and not tracked.
#[derive(Clone, Debug)]
pub struct RegluingScript {
    twists: Vec<SubsurfaceBasis>,
}

impl RegluingScript {
    pub fn new(twists: Vec<SubsurfaceBasis>) -> Self {
        RegluingScript { twists }
    }

    pub fn empty() -> Self {
        RegluingScript { twists: Vec::new() }
    }

    pub fn twists(&self) -> &[SubsurfaceBasis] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }
}

/// Per-twist Arf values under the two enhancements and their mod-2 sums.
#[derive(Clone, Debug, Serialize)]
pub struct MuLedger {
    /// (Arf under q₂, Arf under q₃) for each twist.
    pub per_twist: Vec<(bool, bool)>,
    pub mu2_delta: bool,
    pub mu3_delta: bool,
}

impl MuLedger {
    fn accumulate(per_twist: Vec<(bool, bool)>) -> MuLedger {
        let mu2_delta = per_twist.iter().fold(false, |acc, (a, _)| acc ^ a);
        let mu3_delta = per_twist.iter().fold(false, |acc, (_, b)| acc ^ b);
        MuLedger {
            per_twist,
            mu2_delta,
            mu3_delta,
        }
    }
}

/// `m mod 2` for an even symmetric unimodular form `Q ≅ mE8 ⊕ nH`, computed
/// as signature/8 mod 2. Rejects odd forms.
pub fn base_mu_sum(q: &IntMatrix) -> Result<bool> {
    if !q.is_square() || !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !q.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    if let Some(i) = (0..q.rows()).find(|&i| q[(i, i)].is_odd()) {
        return Err(Error::OddForm(i));
    }
    if q.rows() == 0 {
        return Ok(false);
    }
    let sig = q.signature()?;
    // Even unimodular forms have signature divisible by 8.
    debug_assert_eq!(sig.rem_euclid(8), 0);
    Ok((sig / 8).rem_euclid(2) == 1)
}

/// Evaluates a regluing script on a standardized even-form diagram: per
/// twist, the Arf invariants of the two induced knots under q₂ and q₃.
pub fn apply_regluing(d: &PseudotrisectionDiagram, script: &RegluingScript) -> Result<MuLedger> {
    let q = d.standard_shape_form()?;
    if let Some(i) = (0..q.rows()).find(|&i| q[(i, i)].is_odd()) {
        return Err(Error::OddForm(i));
    }
    let q2 = QuadraticEnhancement::from_linking(&linking_form(d, LinkingKind::L2)?);
    let q3 = QuadraticEnhancement::from_linking(&linking_form(d, LinkingKind::L3)?);
    let mut per_twist = Vec::with_capacity(script.len());
    for side in script.twists() {
        let a2 = arf_invariant(&q2, side)?;
        let a3 = arf_invariant(&q3, side)?;
        per_twist.push((a2, a3));
    }
    Ok(MuLedger::accumulate(per_twist))
}

/// μ(Y₂) + μ(Y₃) mod 2 after regluing: base value plus both deltas. By the
/// equal-Arf property this always equals `base_mu_sum` for even forms.
pub fn mu_sum_after(d: &PseudotrisectionDiagram, script: &RegluingScript) -> Result<bool> {
    let q = d.standard_shape_form()?;
    let base = base_mu_sum(&q)?;
    let ledger = apply_regluing(d, script)?;
    Ok(base ^ ledger.mu2_delta ^ ledger.mu3_delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// No smooth closed spin 4-manifold with a (g;k,0,0)-trisection realizes
    /// the form.
    Obstructed,
    /// The method does not rule the form out.
    Consistent,
}

/// Final report: the form is obstructed exactly when it is even with
/// signature ≡ 8 mod 16.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub label: Option<String>,
    pub rank: usize,
    pub signature: i64,
    pub signature_mod_16: i64,
    pub even: bool,
    /// m mod 2 for even forms; absent for odd forms.
    pub mu_sum: Option<bool>,
    pub verdict: Verdict,
}

pub fn rohlin_obstruction(q: &IntMatrix) -> Result<ObstructionReport> {
    if !q.is_square() || !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !q.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let even = q.has_even_diagonal();
    let signature = if q.rows() == 0 { 0 } else { q.signature()? };
    let mu_sum = if even { Some(base_mu_sum(q)?) } else { None };
    let verdict = match mu_sum {
        Some(true) => Verdict::Obstructed,
        _ => Verdict::Consistent,
    };
    Ok(ObstructionReport {
        label: crate::forms::detect_label(q),
        rank: q.rows(),
        signature,
        signature_mod_16: signature.rem_euclid(16),
        even,
        mu_sum,
        verdict,
    })
}

/// Samples a separating-twist side: a symplectic subsurface basis obtained
/// by pushing a standard rank-2h sub-basis through random symplectic
/// transvections. Deterministic given the RNG.
pub fn random_twist_side(
    lattice: SymplecticLattice,
    rng: &mut impl Rng,
) -> Result<SubsurfaceBasis> {
    let g = lattice.genus();
    assert!(g > 0, "cannot sample twists on a genus-0 surface");
    let h = rng.random_range(1..=g.min(3));
    let mut t = IntMatrix::identity(2 * g);
    for _ in 0..4 {
        let coords: Vec<i64> = (0..2 * g).map(|_| rng.random_range(-1i64..=1)).collect();
        let v = HomologyClass::from_i64(&coords);
        t = t.mul(&symplectic_transvection(lattice, &v))?;
    }
    let start = rng.random_range(0..=g - h);
    let mut pairs = Vec::with_capacity(h);
    for i in start..start + h {
        let row = |cls: HomologyClass| -> Result<HomologyClass> {
            let m = IntMatrix::from_rows(vec![cls.coords().to_vec()])?.mul(&t)?;
            Ok(HomologyClass::new(m.row_vec(0)))
        };
        pairs.push((row(lattice.x(i))?, row(lattice.y(i))?));
    }
    SubsurfaceBasis::new(lattice, pairs)
}

/// Samples a whole script of independent twists.
pub fn random_script(
    lattice: SymplecticLattice,
    twists: usize,
    rng: &mut impl Rng,
) -> Result<RegluingScript> {
    let mut v = Vec::with_capacity(twists);
    for _ in 0..twists {
        v.push(random_twist_side(lattice, rng)?);
    }
    Ok(RegluingScript::new(v))
}
