//! JSON-facing front end shared by the `trisect` binary and the tests:
//! form-spec parsing, diagram files, and one runner per subcommand.

use std::path::Path;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms;
use crate::heegaard::{HeegaardTriple, HomologyReport};
use crate::johnson::{self, SpanCertificate};
use crate::linking::{self, LinkingForm, LinkingKind, QuadraticEnhancement};
use crate::matrix::IntMatrix;
use crate::rohlin::{self, ObstructionReport};
use crate::trisection::{IntersectionForm, PseudotrisectionDiagram};

/// Parses a form spec: either a shorthand like `E8`, `2E8+3H`, `-E8+H`,
/// `1`, `-1`, `3*1` (diagonal ⟨1⟩ blocks), `0` (empty), or an explicit JSON
/// matrix (`[[...]]`).
pub fn parse_form_spec(spec: &str) -> Result<IntMatrix> {
    let spec = spec.trim();
    if spec.starts_with('[') {
        let m: IntMatrix = serde_json::from_str(spec)?;
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !m.is_unimodular()? {
            return Err(Error::NotUnimodular);
        }
        return Ok(m);
    }
    if spec == "0" {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let mut acc = IntMatrix::zeros(0, 0);
    for raw in spec.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(Error::InvalidFormSpec(format!("empty term in {spec:?}")));
        }
        let (neg, rest) = match term.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, term),
        };
        // Count prefix: digits (optionally followed by '*').
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        let unit = rest[digits.len()..].trim_start_matches('*');
        let count: u32 = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .map_err(|_| Error::InvalidFormSpec(format!("bad count in {term:?}")))?
        };
        let block = match unit {
            "E8" | "e8" => {
                if neg {
                    forms::e8().neg()
                } else {
                    forms::e8()
                }
            }
            "H" | "h" => {
                if neg {
                    return Err(Error::InvalidFormSpec(
                        "-H is not a distinct form; use H".into(),
                    ));
                }
                forms::hyperbolic()
            }
            "1" => forms::diagonal(&[if neg { -1 } else { 1 }]),
            "-1" if !neg => forms::diagonal(&[-1]),
            // A bare "1" or "-1" consumes its digit as the count prefix.
            "" if digits == "1" => forms::diagonal(&[if neg { -1 } else { 1 }]),
            _ => {
                return Err(Error::InvalidFormSpec(format!(
                    "unknown unit {unit:?} in term {term:?}"
                )))
            }
        };
        // A bare "1"/"-1" consumed its digits as the unit.
        let copies = if unit.is_empty() { 1 } else { count };
        for _ in 0..copies {
            acc = acc.direct_sum(&block);
        }
    }
    Ok(acc)
}

/// On-disk diagram: the Heegaard triple schema plus optional metadata.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_form: Option<String>,
    #[serde(flatten)]
    pub triple: HeegaardTriple,
}

impl DiagramFile {
    pub fn load(path: &Path) -> Result<DiagramFile> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn diagram(&self) -> Result<PseudotrisectionDiagram> {
        PseudotrisectionDiagram::new(self.triple.clone())
    }
}

/// `form`: intersection form of a diagram file.
pub fn run_form(path: &Path) -> Result<IntersectionForm> {
    DiagramFile::load(path)?.diagram()?.intersection_form()
}

/// `construct`: standard pseudotrisection for a form spec; the file is
/// round-trip verified before it is written.
pub fn run_construct(
    spec: &str,
    k: usize,
    out: Option<&Path>,
) -> Result<(DiagramFile, IntersectionForm)> {
    let q = parse_form_spec(spec)?;
    let d = crate::trisection::standard_pseudotrisection(&q, k)?;
    let form = d.intersection_form()?;
    if form.matrix() != &q {
        return Err(Error::InvalidDiagram(
            "round-trip verification failed".into(),
        ));
    }
    let file = DiagramFile {
        name: Some(format!("standard pseudotrisection of {spec}, k={k}")),
        expected_form: forms::detect_label(&q),
        triple: d.triple().clone(),
    };
    if let Some(p) = out {
        file.save(p)?;
    }
    Ok((file, form))
}

/// Homology reports for the three pairwise unions of a diagram file.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyTriptych {
    pub genus: usize,
    pub k: usize,
    pub alpha_beta: HomologyReport,
    pub beta_gamma: HomologyReport,
    pub gamma_alpha: HomologyReport,
}

/// `homology`: the triple is only required to parse; validity is reported,
/// not enforced.
pub fn run_homology(path: &Path) -> Result<HomologyTriptych> {
    let file = DiagramFile::load(path)?;
    let t = &file.triple;
    Ok(HomologyTriptych {
        genus: t.genus(),
        k: t.k(),
        alpha_beta: t.pair_ab().homology(),
        beta_gamma: t.pair_bc().homology(),
        gamma_alpha: t.pair_ca().homology(),
    })
}

/// `johnson-span`: generator families for the standard diagram of a form
/// spec, with the integral spanning certificate.
pub fn run_johnson_span(spec: &str, k: usize) -> Result<SpanCertificate> {
    let q = parse_form_spec(spec)?;
    let (ab, c) = johnson::tab_tc_generators(&q, k)?;
    let mut all = ab.elements();
    all.extend(c.elements());
    Ok(johnson::spans_wedge_cube(&all, q.rows() + k))
}

/// `linking` output: both linking forms plus the enhancement bit-vectors.
#[derive(Clone, Debug, Serialize)]
pub struct LinkingReport {
    pub genus: usize,
    pub basis: Vec<String>,
    pub l2: LinkingForm,
    pub l3: LinkingForm,
    pub q2_basis_bits: Vec<bool>,
    pub q3_basis_bits: Vec<bool>,
    pub q2_equals_q3: bool,
}

pub fn run_linking(path: &Path) -> Result<LinkingReport> {
    let d = DiagramFile::load(path)?.diagram()?;
    // Work on the standardized diagram; the tables are defined there.
    let sd = if d.standard_shape_form().is_ok() {
        d
    } else {
        d.standardize_basis()?
    };
    let l2 = linking::linking_form(&sd, LinkingKind::L2)?;
    let l3 = linking::linking_form(&sd, LinkingKind::L3)?;
    let q2 = QuadraticEnhancement::from_linking(&l2);
    let q3 = QuadraticEnhancement::from_linking(&l3);
    Ok(LinkingReport {
        genus: sd.genus(),
        basis: linking::basis_labels(sd.genus()),
        q2_equals_q3: q2.basis_values() == q3.basis_values(),
        q2_basis_bits: q2.basis_values().to_vec(),
        q3_basis_bits: q3.basis_values().to_vec(),
        l2,
        l3,
    })
}

/// `rohlin`: obstruction report for a form spec.
pub fn run_rohlin(spec: &str) -> Result<ObstructionReport> {
    let q = parse_form_spec(spec)?;
    rohlin::rohlin_obstruction(&q)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub runs: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// `verify`: the full invariant suite on one diagram file, with a seeded
/// random regluing campaign. Deterministic given (file, seed, runs).
pub fn run_verify(path: &Path, seed: u64, runs: usize) -> Result<VerifyReport> {
    let file = DiagramFile::load(path)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        });
    };

    let validity = crate::trisection::DiagramValidity::check(&file.triple);
    push(
        "diagram-validity",
        validity.is_valid(),
        format!(
            "alpha-beta #_k: {}, beta-gamma sphere: {}, gamma-alpha sphere: {}",
            validity.ab_s1s2, validity.bc_sphere, validity.ca_sphere
        ),
    );
    if !validity.is_valid() {
        return Ok(VerifyReport {
            seed,
            runs,
            checks,
            passed: false,
        });
    }
    let d = PseudotrisectionDiagram::new(file.triple.clone())?;

    // Standardization round trip.
    let form = d.intersection_form()?;
    let sd = d.standardize_basis()?;
    let re_extracted = sd.intersection_form()?;
    push(
        "standardize-round-trip",
        re_extracted.matrix() == form.matrix(),
        format!(
            "form rank {}, signature {}, label {:?}",
            form.rank(),
            form.signature(),
            form.label()
        ),
    );
    if let Some(expected) = &file.expected_form {
        let got = form.label().unwrap_or("?").to_string();
        push(
            "expected-form-label",
            &got == expected,
            format!("expected {expected}, computed {got}"),
        );
    }

    // Linking symmetry on basis pairs plus seeded random pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattice = sd.triple().lattice();
    let mut symmetric = true;
    for kind in [LinkingKind::L2, LinkingKind::L3] {
        let l = linking::linking_form(&sd, kind)?;
        symmetric &= l.satisfies_symmetry_relation();
        for _ in 0..200 {
            let a = random_class(lattice, &mut rng);
            let b = random_class(lattice, &mut rng);
            let lhs = l.eval(&b, &a)?;
            let rhs = l.eval(&a, &b)? + lattice.pairing(&a, &b)?;
            symmetric &= lhs == rhs;
        }
    }
    push(
        "linking-symmetry",
        symmetric,
        "l(b,a) = l(a,b) + <a,b> on basis and random pairs".into(),
    );

    // Enhancement comparison: equality is required for even forms; odd forms
    // are expected to diverge.
    let even = form.is_even();
    let equal = linking::q2_equals_q3(&sd)?;
    if even {
        push(
            "q2-equals-q3",
            equal,
            "even form: enhancements must agree".into(),
        );
    } else {
        push(
            "q2-vs-q3-odd-form",
            !equal,
            "odd form: expected divergence at some x_i".into(),
        );
    }

    // Regluing invariance campaign (even forms only; the Arf comparison
    // needs the equal-enhancement lemma).
    if even && lattice.genus() > 0 {
        let base = rohlin::base_mu_sum(form.matrix())?;
        let mut ok = true;
        for _ in 0..runs {
            let script = rohlin::random_script(lattice, 3, &mut rng)?;
            let ledger = rohlin::apply_regluing(&sd, &script)?;
            ok &= ledger.mu2_delta == ledger.mu3_delta;
            ok &= rohlin::mu_sum_after(&sd, &script)? == base;
        }
        push(
            "regluing-invariance",
            ok,
            format!("{runs} seeded scripts, mu-sum constant at {}", base as u8),
        );
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        seed,
        runs,
        checks,
        passed,
    })
}

fn random_class(
    lattice: crate::surface::SymplecticLattice,
    rng: &mut ChaCha8Rng,
) -> crate::surface::HomologyClass {
    use rand::Rng;
    crate::surface::HomologyClass::new(
        (0..lattice.rank())
            .map(|_| BigInt::from(rng.random_range(-4i64..=4)))
            .collect(),
    )
}
