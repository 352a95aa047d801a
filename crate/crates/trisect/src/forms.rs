//! The standard unimodular forms used throughout: E8, the hyperbolic plane,
//! rank-one forms and their direct sums, plus label detection for reports.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// E8 as a tree-shaped even form: 2 on the diagonal, 1 for each edge of the
/// E8 graph (a 7-node path with one extra node attached to the trivalent
/// node). Positive definite, determinant 1.
pub fn e8() -> IntMatrix {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    let mut m = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        m[(i, i)] = BigInt::from(2);
    }
    for (a, b) in edges {
        m[(a, b)] = BigInt::from(1);
        m[(b, a)] = BigInt::from(1);
    }
    m
}

/// The rank-2 hyperbolic form H.
pub fn hyperbolic() -> IntMatrix {
    IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])
}

/// Diagonal form with the given ±1 entries.
pub fn diagonal(entries: &[i64]) -> IntMatrix {
    let n = entries.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, &e) in entries.iter().enumerate() {
        m[(i, i)] = BigInt::from(e);
    }
    m
}

/// `m` copies of E8 (negated copies for negative `m`) plus `n` copies of H.
pub fn m_e8_n_h(m: i64, n: u32) -> IntMatrix {
    let mut out = IntMatrix::zeros(0, 0);
    let block = if m >= 0 { e8() } else { e8().neg() };
    for _ in 0..m.unsigned_abs() {
        out = out.direct_sum(&block);
    }
    for _ in 0..n {
        out = out.direct_sum(&hyperbolic());
    }
    out
}

/// Human-readable tag for a form when it has a recognized shape. Even forms
/// are tagged `mE8+nH` by rank and signature; literal ±1 diagonal matrices
/// get a diagonal tag.
pub fn detect_label(q: &IntMatrix) -> Option<String> {
    if !q.is_square() || !q.is_symmetric() {
        return None;
    }
    if q.rows() == 0 {
        return Some("0".to_string());
    }
    if q.has_even_diagonal() {
        let sig = q.signature().ok()?;
        if sig % 8 != 0 {
            return None;
        }
        let m = sig / 8;
        let rest = q.rows() as i64 - 8 * m.abs();
        if rest < 0 || rest % 2 != 0 {
            return None;
        }
        let n = rest / 2;
        let mut parts = Vec::new();
        if m != 0 {
            parts.push(match m {
                1 => "E8".to_string(),
                -1 => "-E8".to_string(),
                _ => format!("{m}E8"),
            });
        }
        if n != 0 {
            parts.push(if n == 1 { "H".to_string() } else { format!("{n}H") });
        }
        if parts.is_empty() {
            return Some("0".to_string());
        }
        return Some(parts.join("+"));
    }
    // Literal diagonal of ±1s.
    let n = q.rows();
    let mut pos = 0usize;
    let mut neg = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                let d = &q[(i, i)];
                if d.abs() != BigInt::from(1) {
                    return None;
                }
                if d.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
            } else if !q[(i, j)].is_zero() {
                return None;
            }
        }
    }
    let mut parts = Vec::new();
    if pos > 0 {
        parts.push(if pos == 1 { "<1>".to_string() } else { format!("{pos}<1>") });
    }
    if neg > 0 {
        parts.push(if neg == 1 { "<-1>".to_string() } else { format!("{neg}<-1>") });
    }
    Some(parts.join("+"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn e8_is_even_unimodular_rank8() {
        let q = e8();
        assert!(q.is_symmetric());
        assert!(q.has_even_diagonal());
        assert_eq!(q.determinant().unwrap(), BigInt::one());
        assert_eq!(q.signature().unwrap(), 8);
    }

    #[test]
    fn hyperbolic_shape() {
        let h = hyperbolic();
        assert_eq!(h.determinant().unwrap(), BigInt::from(-1));
        assert_eq!(h.signature().unwrap(), 0);
        assert!(h.has_even_diagonal());
    }

    #[test]
    fn labels() {
        assert_eq!(detect_label(&e8()).unwrap(), "E8");
        assert_eq!(detect_label(&e8().neg()).unwrap(), "-E8");
        assert_eq!(detect_label(&m_e8_n_h(2, 3)).unwrap(), "2E8+3H");
        assert_eq!(detect_label(&hyperbolic()).unwrap(), "H");
        assert_eq!(detect_label(&diagonal(&[1, 1, -1])).unwrap(), "2<1>+<-1>");
        assert_eq!(detect_label(&IntMatrix::zeros(0, 0)).unwrap(), "0");
    }
}
