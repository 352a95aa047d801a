//! Dense integer matrices with exact arithmetic.
//!
//! Everything downstream (homology, intersection forms, spanning
//! certificates) reduces to Smith normal form, unimodular inverses and exact
//! signatures, so this module keeps all entries as `BigInt` and never touches
//! floating point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major integer matrix. Dimensions may be zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds from row slices of machine integers; rows must be equal length.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        IntMatrix::from_fn(nrows, ncols, |r, c| BigInt::from(rows[r][c]))
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// True if every diagonal entry is even (the evenness condition for
    /// quadratic forms).
    pub fn has_even_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| self[(i, i)].is_even())
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.row(r).to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(IntMatrix::from_fn(self.rows, self.cols, |r, c| {
            &self[(r, c)] + &other[(r, c)]
        }))
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let entry = &mut out[(i, j)];
                        *entry += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        IntMatrix::from_fn(r1 - r0, c1 - c0, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for t in 0..n - 1 {
            if m[(t, t)].is_zero() {
                let Some(p) = (t + 1..n).find(|&r| !m[(r, t)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(t, p);
                sign = -sign;
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    let v = &m[(t, t)] * &m[(i, j)] - &m[(i, t)] * &m[(t, j)];
                    // Exact by Sylvester's identity.
                    m[(i, j)] = v / &prev;
                }
                m[(i, t)] = BigInt::zero();
            }
            prev = m[(t, t)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// True iff the matrix is square with determinant ±1, decided through the
    /// Smith normal form (all invariant factors equal 1).
    pub fn is_unimodular(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.snf_diagonal().iter().all(One::is_one))
    }

    /// Exact inverse of a unimodular matrix. With `U·M·V = I` the inverse is
    /// `V·U`, so all entries stay integral.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let snf = self.smith_normal_form();
        if !snf.diag.iter().all(One::is_one) {
            return Err(Error::NotUnimodular);
        }
        snf.right.mul(&snf.left)
    }

    /// Signature of a symmetric, rationally non-degenerate matrix, by exact
    /// congruence diagonalization over the rationals.
    #[allow(clippy::needless_range_loop)]
    pub fn signature(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| BigRational::from_integer(self[(r, c)].clone()))
                    .collect()
            })
            .collect();
        let mut sig = 0i64;
        for t in 0..n {
            if m[t][t].is_zero() {
                // Prefer a later diagonal pivot, otherwise use the symmetric
                // row/column addition trick to create one.
                if let Some(p) = (t + 1..n).find(|&r| !m[r][r].is_zero()) {
                    swap_sym(&mut m, t, p);
                } else if let Some((i, j)) = find_offdiag(&m, t, n) {
                    if i != t {
                        swap_sym(&mut m, t, i);
                    }
                    let j = if j == t { i } else { j };
                    for c in 0..n {
                        let v = m[j][c].clone();
                        m[t][c] += v;
                    }
                    for r in 0..n {
                        let v = m[r][j].clone();
                        m[r][t] += v;
                    }
                } else {
                    return Err(Error::Degenerate);
                }
            }
            let pivot = m[t][t].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let factor = &m[i][t] / &pivot;
                for c in t..n {
                    let v = &factor * &m[t][c];
                    m[i][c] -= v;
                }
                for r in t..n {
                    let v = &factor * &m[r][t];
                    m[r][i] -= v;
                }
            }
        }
        Ok(sig)
    }

    /// Solves `x · M = v` over the integers, returning the solution with
    /// zero free coordinates, or `None` when no integral solution exists.
    pub fn solve_left(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.cols {
            return None;
        }
        let snf = self.smith_normal_form();
        // x·M = v with U·M·V = D gives (x·U⁻¹)·D = v·V.
        let z: Vec<BigInt> = (0..self.cols)
            .map(|j| {
                (0..self.cols)
                    .map(|i| &v[i] * &snf.right[(i, j)])
                    .sum::<BigInt>()
            })
            .collect();
        let k = self.rows.min(self.cols);
        let mut y = vec![BigInt::zero(); self.rows];
        for j in 0..self.cols {
            if j < k && !snf.diag[j].is_zero() {
                let (q, r) = z[j].div_rem(&snf.diag[j]);
                if !r.is_zero() {
                    return None;
                }
                y[j] = q;
            } else if !z[j].is_zero() {
                return None;
            }
        }
        let x: Vec<BigInt> = (0..self.rows)
            .map(|j| {
                (0..self.rows)
                    .map(|i| &y[i] * &snf.left[(i, j)])
                    .sum::<BigInt>()
            })
            .collect();
        Some(x)
    }

    /// Invariant factors only (no transform bookkeeping).
    pub fn snf_diagonal(&self) -> Vec<BigInt> {
        let mut calc = SnfCalc::new(self.clone(), false);
        calc.run();
        calc.diagonal()
    }

    pub fn smith_normal_form(&self) -> SmithDecomposition {
        let mut calc = SnfCalc::new(self.clone(), true);
        calc.run();
        let diag = calc.diagonal();
        SmithDecomposition {
            left: calc.left.expect("transforms requested"),
            diag,
            right: calc.right.expect("transforms requested"),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

fn swap_sym(m: &mut [Vec<BigRational>], a: usize, b: usize) {
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

#[allow(clippy::needless_range_loop)]
fn find_offdiag(m: &[Vec<BigRational>], t: usize, n: usize) -> Option<(usize, usize)> {
    for i in t..n {
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .map(|r| self[(r, c)].to_string().len())
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self[(r, c)].to_string(), width = widths[c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// `left · M · right` equals the diagonal of `diag`; both transforms are
/// unimodular and `diag[i]` divides `diag[i+1]` (zeros last, entries ≥ 0).
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn diag_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, d) in self.diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }
}

/// Smith normal form elimination.
///
/// Pivot selection: smallest nonzero absolute value, ties broken by lowest
/// (row, col). This makes decompositions reproducible and keeps intermediate
/// entries small.
struct SnfCalc {
    m: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl SnfCalc {
    fn new(m: IntMatrix, transforms: bool) -> Self {
        let (r, c) = (m.rows(), m.cols());
        SnfCalc {
            m,
            left: if transforms {
                Some(IntMatrix::identity(r))
            } else {
                None
            },
            right: if transforms {
                Some(IntMatrix::identity(c))
            } else {
                None
            },
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        let n = self.m.rows().min(self.m.cols());
        (0..n).map(|i| self.m[(i, i)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = self.left.as_mut() {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = self.right.as_mut() {
            v.swap_cols(a, b);
        }
    }

    /// row[i] -= q * row[t]
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.m.cols() {
            let v = q * &self.m[(t, c)];
            self.m[(i, c)] -= v;
        }
        if let Some(u) = self.left.as_mut() {
            for c in 0..u.cols() {
                let v = q * &u[(t, c)];
                u[(i, c)] -= v;
            }
        }
    }

    /// col[j] -= q * col[t]
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.m.rows() {
            let v = q * &self.m[(r, t)];
            self.m[(r, j)] -= v;
        }
        if let Some(v) = self.right.as_mut() {
            for r in 0..v.rows() {
                let w = q * &v[(r, t)];
                v[(r, j)] -= w;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.m.cols() {
            let v = -self.m[(i, c)].clone();
            self.m[(i, c)] = v;
        }
        if let Some(u) = self.left.as_mut() {
            for c in 0..u.cols() {
                let v = -u[(i, c)].clone();
                u[(i, c)] = v;
            }
        }
    }

    fn select_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let v = &self.m[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                match &best {
                    Some((b, _, _)) if *b <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) {
        let n = self.m.rows().min(self.m.cols());
        let mut t = 0;
        while t < n {
            if self.select_and_place_pivot(t).is_none() {
                break;
            }
            loop {
                // Clear column and row t against the current pivot. Nonzero
                // remainders are strictly smaller than the pivot and get
                // promoted by the re-selection below, which keeps the
                // coefficient growth of the elimination under control.
                for i in t + 1..self.m.rows() {
                    if !self.m[(i, t)].is_zero() {
                        let q = div_nearest(&self.m[(i, t)], &self.m[(t, t)]);
                        self.row_sub(i, t, &q);
                    }
                }
                for j in t + 1..self.m.cols() {
                    if !self.m[(t, j)].is_zero() {
                        let q = div_nearest(&self.m[(t, j)], &self.m[(t, t)]);
                        self.col_sub(j, t, &q);
                    }
                }
                let clean = (t + 1..self.m.rows()).all(|i| self.m[(i, t)].is_zero())
                    && (t + 1..self.m.cols()).all(|j| self.m[(t, j)].is_zero());
                if clean {
                    // Pivot must divide every remaining entry; if not, pull
                    // the offending row into row t and keep reducing.
                    let offender = (t + 1..self.m.rows())
                        .flat_map(|i| (t + 1..self.m.cols()).map(move |j| (i, j)))
                        .find(|&(i, j)| !(&self.m[(i, j)] % &self.m[(t, t)]).is_zero());
                    match offender {
                        Some((i, _)) => {
                            let minus_one = BigInt::from(-1);
                            self.row_sub(t, i, &minus_one);
                        }
                        None => break,
                    }
                }
                self.select_and_place_pivot(t);
            }
            if self.m[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        // Zero block remains; diagonal is complete with zeros after rank.
    }

    fn select_and_place_pivot(&mut self, t: usize) -> Option<()> {
        let (pi, pj) = self.select_pivot(t)?;
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        Some(())
    }
}

/// Quotient with remainder minimized in absolute value. Keeps SNF pivots
/// shrinking as fast as plain Euclid but with balanced remainders.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.is_zero() {
        return q;
    }
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

// JSON form: array of arrays of integers, row-major. Entries outside the
// i64 range serialize as decimal strings and both forms are accepted on
// input.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            let row: Vec<JsonInt> = self.row(r).iter().map(JsonInt::from_bigint).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum JsonInt {
    Small(i64),
    Big(String),
}

pub(crate) fn serialize_bigint_vec<S: Serializer>(
    v: &[BigInt],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let row: Vec<JsonInt> = v.iter().map(JsonInt::from_bigint).collect();
    row.serialize(serializer)
}

pub(crate) fn deserialize_bigint_vec<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> std::result::Result<Vec<BigInt>, D::Error> {
    let row = Vec::<JsonInt>::deserialize(deserializer)?;
    row.iter()
        .map(|x| x.to_bigint().map_err(de::Error::custom))
        .collect()
}

impl JsonInt {
    fn from_bigint(v: &BigInt) -> JsonInt {
        match i64::try_from(v) {
            Ok(s) => JsonInt::Small(s),
            Err(_) => JsonInt::Big(v.to_string()),
        }
    }

    fn to_bigint(&self) -> std::result::Result<BigInt, String> {
        match self {
            JsonInt::Small(s) => Ok(BigInt::from(*s)),
            JsonInt::Big(s) => s
                .parse::<BigInt>()
                .map_err(|_| format!("invalid integer literal {s:?}")),
        }
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MatVisitor;
        impl<'de> Visitor<'de> for MatVisitor {
            type Value = IntMatrix;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of arrays of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<IntMatrix, A::Error> {
                let mut rows: Vec<Vec<BigInt>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<JsonInt>>()? {
                    let parsed: std::result::Result<Vec<BigInt>, String> =
                        row.iter().map(JsonInt::to_bigint).collect();
                    rows.push(parsed.map_err(de::Error::custom)?);
                }
                IntMatrix::from_rows(rows).map_err(|e| de::Error::custom(e.to_string()))
            }
        }
        deserializer.deserialize_seq(MatVisitor)
    }
}
