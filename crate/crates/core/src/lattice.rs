//! Exact integer linear algebra over arbitrary-precision integers:
//! lattice vectors and matrices, Hermite and Smith normal forms, and the
//! index of a sublattice inside its saturation.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::arith::gcd_all;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("entry count {entries} does not match declared shape {rows}x{cols}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        entries: usize,
    },
    #[error("matrix must be nonempty")]
    Empty,
    #[error("generator list is empty")]
    NoGenerators,
    #[error("vectors have mixed ranks")]
    MixedRanks,
}

/// An element of a free lattice `Z^rank`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    entries: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        LatticeVector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        LatticeVector {
            entries: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            entries: vec![BigInt::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// gcd of the entries is 1; the zero vector is never primitive.
    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.entries).is_one()
    }

    /// The primitive vector on the same ray, or `None` for the zero vector.
    pub fn primitive(&self) -> Option<LatticeVector> {
        let g = gcd_all(&self.entries);
        if g.is_zero() {
            return None;
        }
        Some(LatticeVector {
            entries: self.entries.iter().map(|x| x / &g).collect(),
        })
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector {
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), other.rank());
        LatticeVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LatticeVector {
        LatticeVector {
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        assert_eq!(self.rank(), other.rank());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// A dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl LatticeMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if entries.len() != rows * cols {
            return Err(LatticeError::DimensionMismatch {
                rows,
                cols,
                entries: entries.len(),
            });
        }
        Ok(LatticeMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        LatticeMatrix::new(
            rows,
            cols,
            entries.iter().map(|&x| BigInt::from(x)).collect(),
        )
        .expect("shape mismatch")
    }

    pub fn from_rows(vectors: &[LatticeVector]) -> Result<Self, LatticeError> {
        if vectors.is_empty() {
            return Err(LatticeError::NoGenerators);
        }
        let cols = vectors[0].rank();
        if vectors.iter().any(|v| v.rank() != cols) {
            return Err(LatticeError::MixedRanks);
        }
        let mut entries = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            entries.extend_from_slice(v.entries());
        }
        LatticeMatrix::new(vectors.len(), cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        LatticeMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> LatticeMatrix {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j).clone());
            }
        }
        LatticeMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &LatticeMatrix) -> LatticeMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut entries = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.at(k, j);
                    entries[i * other.cols + j] += t;
                }
            }
        }
        LatticeMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.rank());
        LatticeVector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| self.at(i, j) * &v.entries()[j])
                        .sum()
                })
                .collect(),
        )
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &LatticeVector, m: &LatticeMatrix) -> LatticeVector {
        assert_eq!(v.rank(), m.rows);
        LatticeVector::new(
            (0..m.cols)
                .map(|j| (0..m.rows).map(|i| &v.entries()[i] * m.at(i, j)).sum())
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row_i -= q * row_p
    fn sub_row_mul(&mut self, i: usize, p: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = self.at(i, j) - q * self.at(p, j);
            self.set(i, j, t);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn sub_col_mul(&mut self, j: usize, p: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = self.at(i, j) - q * self.at(i, p);
            self.set(i, j, t);
        }
    }

    fn reverse_rows(&self) -> LatticeMatrix {
        let mut m = self.clone();
        for i in 0..self.rows / 2 {
            m.swap_rows(i, self.rows - 1 - i);
        }
        m
    }

    fn reverse_cols(&self) -> LatticeMatrix {
        let mut m = self.clone();
        for j in 0..self.cols / 2 {
            m.swap_cols(j, self.cols - 1 - j);
        }
        m
    }

    /// Fraction-free Gaussian elimination (Bareiss). Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                    a.set(i, j, t);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        sign * a.at(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub fn rank(&self) -> usize {
        let (_, _, _, _, d) = smith_internal(self);
        d.diagonal_len()
    }

    fn diagonal_len(&self) -> usize {
        (0..self.rows.min(self.cols))
            .take_while(|&i| !self.at(i, i).is_zero())
            .count()
    }
}

impl fmt::Display for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Canonical row Hermite form: `h = u * m`, pivots are the leftmost nonzero
/// entries moving right as rows go down, pivots positive, entries above a
/// pivot reduced into `[0, pivot)`, zero rows at the bottom.
pub fn row_hermite_normal_form(
    m: &LatticeMatrix,
) -> Result<(LatticeMatrix, LatticeMatrix), LatticeError> {
    if m.rows == 0 || m.cols == 0 {
        return Err(LatticeError::Empty);
    }
    let mut h = m.clone();
    let mut u = LatticeMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // euclidean elimination in column c below row r
        loop {
            // pivot candidate: smallest |entry|, ties by lowest row index
            let mut pivot: Option<usize> = None;
            for i in r..m.rows {
                if h.at(i, c).is_zero() {
                    continue;
                }
                pivot = Some(match pivot {
                    None => i,
                    Some(p) => {
                        if h.at(i, c).abs() < h.at(p, c).abs() {
                            i
                        } else {
                            p
                        }
                    }
                });
            }
            let Some(p) = pivot else { break };
            let mut done = true;
            for i in r..m.rows {
                if i == p || h.at(i, c).is_zero() {
                    continue;
                }
                let q = h.at(i, c).div_floor(h.at(p, c));
                h.sub_row_mul(i, p, &q);
                u.sub_row_mul(i, p, &q);
                if !h.at(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                h.swap_rows(r, p);
                u.swap_rows(r, p);
                if h.at(r, c).is_negative() {
                    h.negate_row(r);
                    u.negate_row(r);
                }
                // reduce entries above the pivot
                for i in 0..r {
                    let q = h.at(i, c).div_floor(h.at(r, c));
                    h.sub_row_mul(i, r, &q);
                    u.sub_row_mul(i, r, &q);
                }
                r += 1;
                break;
            }
        }
    }
    Ok((h, u))
}

/// Column-style Hermite form: `h = u * m` with `u` unimodular, lower
/// triangular profile, positive pivots, and the entries in a pivot's column
/// below it reduced into `[0, pivot)`. This is the row form of the
/// row-and-column reversed matrix.
pub fn hermite_normal_form(
    m: &LatticeMatrix,
) -> Result<(LatticeMatrix, LatticeMatrix), LatticeError> {
    let rev = m.reverse_rows().reverse_cols();
    let (h, u) = row_hermite_normal_form(&rev)?;
    Ok((
        h.reverse_rows().reverse_cols(),
        u.reverse_rows().reverse_cols(),
    ))
}

fn smith_internal(
    m: &LatticeMatrix,
) -> (
    LatticeMatrix, // u
    LatticeMatrix, // v
    LatticeMatrix, // u_inv
    LatticeMatrix, // v_inv
    LatticeMatrix, // d
) {
    let mut a = m.clone();
    let mut u = LatticeMatrix::identity(m.rows);
    let mut u_inv = LatticeMatrix::identity(m.rows);
    let mut v = LatticeMatrix::identity(m.cols);
    let mut v_inv = LatticeMatrix::identity(m.cols);

    // row op on a mirrors on u; the inverse op applies to u_inv columns.
    // u_inv tracks the inverse by applying the inverse elementary op on the
    // other side: (E*A), u' = E*u, u_inv' = u_inv * E^-1.
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        // find a nonzero entry in the lower-right block, smallest |.|
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if a.at(i, j).is_zero() {
                    continue;
                }
                best = Some(match best {
                    None => (i, j),
                    Some((bi, bj)) => {
                        if a.at(i, j).abs() < a.at(bi, bj).abs() {
                            (i, j)
                        } else {
                            (bi, bj)
                        }
                    }
                });
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        u_inv.swap_cols(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        v_inv.swap_rows(t, bj);

        let mut clean = true;
        for i in t + 1..m.rows {
            if !a.at(i, t).is_zero() {
                let q = a.at(i, t).div_floor(a.at(t, t));
                a.sub_row_mul(i, t, &q);
                u.sub_row_mul(i, t, &q);
                // inverse of (row_i -= q row_t) on the right: col_t += q col_i
                for r in 0..m.rows {
                    let x = u_inv.at(r, t) + &q * u_inv.at(r, i);
                    u_inv.set(r, t, x);
                }
                if !a.at(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..m.cols {
            if !a.at(t, j).is_zero() {
                let q = a.at(t, j).div_floor(a.at(t, t));
                a.sub_col_mul(j, t, &q);
                v.sub_col_mul(j, t, &q);
                for c in 0..m.cols {
                    let x = v_inv.at(t, c) + &q * v_inv.at(j, c);
                    v_inv.set(t, c, x);
                }
                if !a.at(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // repeat elimination at the same corner
        }
        // divisibility sweep: a[t][t] must divide everything below-right
        let mut offending = None;
        'scan: for i in t + 1..m.rows {
            for j in t + 1..m.cols {
                if !(a.at(i, j) % a.at(t, t)).is_zero() {
                    offending = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offending {
            // add row i to row t, creating a non-divisible entry in row t
            let minus_one = -BigInt::one();
            a.sub_row_mul(t, i, &minus_one);
            u.sub_row_mul(t, i, &minus_one);
            for r in 0..m.rows {
                let x = u_inv.at(r, i) + u_inv.at(r, t) * &minus_one;
                // inverse of (row_t += row_i) is col_i -= col_t on u_inv
                u_inv.set(r, i, x);
            }
            continue;
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            for r in 0..m.rows {
                let x = -u_inv.at(r, t).clone();
                u_inv.set(r, t, x);
            }
        }
        t += 1;
    }
    (u, v, u_inv, v_inv, a)
}

/// Smith normal form: `d = u * m * v` with `u`, `v` unimodular, `d` diagonal
/// with nonnegative entries and `d_1 | d_2 | ...`.
pub fn smith_normal_form(
    m: &LatticeMatrix,
) -> Result<(LatticeMatrix, LatticeMatrix, LatticeMatrix), LatticeError> {
    if m.rows == 0 || m.cols == 0 {
        return Err(LatticeError::Empty);
    }
    let (u, v, _, _, d) = smith_internal(m);
    Ok((d, u, v))
}

/// Smith data with tracked inverses, for coordinate work in sublattices.
pub struct SmithData {
    pub d: LatticeMatrix,
    pub u: LatticeMatrix,
    pub v: LatticeMatrix,
    pub u_inv: LatticeMatrix,
    pub v_inv: LatticeMatrix,
}

pub fn smith_with_inverses(m: &LatticeMatrix) -> Result<SmithData, LatticeError> {
    if m.rows == 0 || m.cols == 0 {
        return Err(LatticeError::Empty);
    }
    let (u, v, u_inv, v_inv, d) = smith_internal(m);
    Ok(SmithData {
        d,
        u,
        v,
        u_inv,
        v_inv,
    })
}

/// Index of a sublattice inside its saturation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn is_one(&self) -> bool {
        matches!(self, LatticeIndex::Finite(n) if n.is_one())
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{}", n),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// The index of the sublattice spanned by `generators` inside its
/// saturation: the product of the nonzero Smith invariants of the generator
/// matrix. Equals 1 exactly when the generators extend, after saturation,
/// to a basis of the ambient lattice. The saturation index is always
/// finite; the `Infinite` variant exists so callers that compare against an
/// ambient-lattice index can match totally.
pub fn lattice_index(generators: &[LatticeVector]) -> Result<LatticeIndex, LatticeError> {
    let m = LatticeMatrix::from_rows(generators)?;
    let (d, _, _) = smith_normal_form(&m)?;
    let mut idx = BigInt::one();
    for i in 0..m.rows().min(m.cols()) {
        if d.at(i, i).is_zero() {
            break;
        }
        idx *= d.at(i, i);
    }
    Ok(LatticeIndex::Finite(idx))
}

/// Rows form a basis of the saturation of the row span of `m` (the smallest
/// sublattice of the ambient lattice containing the span with torsion-free
/// quotient). Computed from tracked Smith inverses.
pub fn saturation_basis(m: &LatticeMatrix) -> Result<Vec<LatticeVector>, LatticeError> {
    let s = smith_with_inverses(m)?;
    let rank = s.d.diagonal_len();
    // m = u_inv d v_inv, so the rational row space is spanned by the first
    // `rank` rows of v_inv; those rows are a lattice basis of the saturation.
    Ok((0..rank).map(|i| s.v_inv.row(i)).collect())
}

/// Integer coordinates of `x` in the saturation basis returned by
/// [`saturation_basis`] for the same matrix; `None` if `x` is outside the
/// rational row span. Pass the same `SmithData`.
pub fn coords_in_saturation(s: &SmithData, x: &LatticeVector) -> Option<Vec<BigInt>> {
    let rank = s.d.diagonal_len();
    let y = LatticeMatrix::vec_mul(x, &s.v);
    if y.entries()[rank..].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(y.entries()[..rank].to_vec())
}
