//! Exact linear algebra over the rationals.
//!
//! Matrices are stored sparsely as a map from `(row, col)` to a nonzero
//! [`Rational`]. Row reduction switches to a dense working copy when both
//! dimensions are at most [`DENSE_THRESHOLD`]; both paths produce the same
//! reduced row echelon form, so every derived basis is bit-identical
//! regardless of which path ran.
//!
//! All bases are deterministic:
//!
//! * kernel bases follow the free columns of the RREF in ascending order,
//! * image bases are the pivot columns of the input matrix,
//! * quotient representatives are the columns of the numerator that become
//!   pivots when the denominator is placed in front of it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Largest row/column count for which elimination runs on a dense copy.
pub const DENSE_THRESHOLD: usize = 64;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `num/den`, including integers (`3/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer, returning the canonical reduced value.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, integer(v));
            }
        }
        m
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for (new_c, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                if let Some(v) = self.entries.get(&(r, c)) {
                    m.entries.insert((r, new_c), v.clone());
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut rhs_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); rhs.rows];
        for (&(r, c), v) in &rhs.entries {
            rhs_rows[r].push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &rhs_rows[k] {
                *acc.entry((r, c)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: acc,
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (&(r, c), v) in &rhs.entries {
            let sum = out.get(r, c) + v;
            out.set(r, c, sum);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }

    /// `A` above `B`.
    pub fn stack_vertical(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        if a.cols != b.cols {
            return Err(Error::DimensionMismatch(format!(
                "vertical stack needs equal column counts ({} vs {})",
                a.cols, b.cols
            )));
        }
        let mut out = Matrix::zeros(a.rows + b.rows, a.cols);
        out.entries
            .extend(a.entries.iter().map(|(&k, v)| (k, v.clone())));
        out.entries.extend(
            b.entries
                .iter()
                .map(|(&(r, c), v)| ((r + a.rows, c), v.clone())),
        );
        Ok(out)
    }

    /// `A` to the left of `B`.
    pub fn concat_horizontal(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        if a.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "horizontal concatenation needs equal row counts ({} vs {})",
                a.rows, b.rows
            )));
        }
        let mut out = Matrix::zeros(a.rows, a.cols + b.cols);
        out.entries
            .extend(a.entries.iter().map(|(&k, v)| (k, v.clone())));
        out.entries.extend(
            b.entries
                .iter()
                .map(|(&(r, c), v)| ((r, c + a.cols), v.clone())),
        );
        Ok(out)
    }

    pub fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        out.entries
            .extend(a.entries.iter().map(|(&k, v)| (k, v.clone())));
        out.entries.extend(
            b.entries
                .iter()
                .map(|(&(r, c), v)| ((r + a.rows, c + a.cols), v.clone())),
        );
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn place(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for (&(r, c), v) in &block.entries {
            self.entries.insert((row + r, col + c), v.clone());
        }
    }

    /// Extracts the `rows x cols` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Matrix {
        assert!(row + rows <= self.rows && col + cols <= self.cols);
        let mut out = Matrix::zeros(rows, cols);
        for (&(r, c), v) in self.entries.range((row, 0)..(row + rows, 0)) {
            if c >= col && c < col + cols {
                out.entries.insert((r - row, c - col), v.clone());
            }
        }
        out
    }

    pub fn rref(&self) -> Echelon {
        if self.rows <= DENSE_THRESHOLD && self.cols <= DENSE_THRESHOLD {
            self.rref_dense()
        } else {
            self.rref_sparse()
        }
    }

    pub(crate) fn rref_dense(&self) -> Echelon {
        let mut a = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            a[r][c] = v.clone();
        }
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(found, pivot_row);
            let inv = a[pivot_row][col].recip();
            for v in a[pivot_row][col..].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let pivot = std::mem::take(&mut a[pivot_row]);
            for (r, row) in a.iter_mut().enumerate() {
                if r == pivot_row || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            a[pivot_row] = pivot;
            pivots.push(col);
            pivot_row += 1;
        }
        let rows = a
            .into_iter()
            .take(pivots.len())
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Echelon {
            cols: self.cols,
            pivots,
            rows,
        }
    }

    pub(crate) fn rref_sparse(&self) -> Echelon {
        let mut pending: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            pending[r].insert(c, v.clone());
        }
        pending.retain(|row| !row.is_empty());
        let mut done: Vec<BTreeMap<usize, Rational>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..self.cols {
            let Some(found) = pending.iter().position(|row| row.contains_key(&col)) else {
                continue;
            };
            let mut pivot = pending.remove(found);
            let inv = pivot[&col].recip();
            for v in pivot.values_mut() {
                *v *= &inv;
            }
            for row in pending.iter_mut().chain(done.iter_mut()) {
                if let Some(factor) = row.get(&col).cloned() {
                    for (&c, p) in &pivot {
                        let entry = row.entry(c).or_insert_with(Rational::zero);
                        *entry -= &factor * p;
                        if entry.is_zero() {
                            row.remove(&c);
                        }
                    }
                }
            }
            pending.retain(|row| !row.is_empty());
            done.push(pivot);
            pivots.push(col);
        }
        Echelon {
            cols: self.cols,
            pivots,
            rows: done,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{x : Mx = 0}` as the columns of a `cols x (cols - rank)` matrix.
    pub fn kernel_basis(&self) -> Matrix {
        self.rref().kernel_basis()
    }

    /// The pivot columns of `self`, in ascending index order.
    pub fn image_basis(&self) -> Matrix {
        self.select_columns(&self.rref().pivots)
    }

    /// Exact inverse, or `None` when the matrix is singular or not square.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::concat_horizontal(self, &Matrix::identity(n)).ok()?;
        let ech = aug.rref();
        if ech.pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (r, row) in ech.rows.iter().enumerate() {
            for (&c, v) in row.range(n..) {
                inv.entries.insert((r, c - n), v.clone());
            }
        }
        Some(inv)
    }
}

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    cols: usize,
    pivots: Vec<usize>,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn kernel_basis(&self) -> Matrix {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.entries.insert((f, j), Rational::one());
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if let Some(v) = row.get(&f) {
                    k.entries.insert((p, j), -v.clone());
                }
            }
        }
        k
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

pub fn image_basis(m: &Matrix) -> Matrix {
    m.image_basis()
}

pub fn stack_vertical(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    Matrix::stack_vertical(a, b)
}

fn check_subspace(larger: &Matrix, smaller: &Matrix) -> Result<usize> {
    if larger.rows != smaller.rows {
        return Err(Error::DimensionMismatch(format!(
            "subspaces of different ambient dimension ({} vs {})",
            larger.rows, smaller.rows
        )));
    }
    let joint = Matrix::concat_horizontal(larger, smaller)?.rref();
    if let Some(&p) = joint.pivots.iter().find(|&&p| p >= larger.cols) {
        return Err(Error::SubspaceViolation {
            column: p - larger.cols,
        });
    }
    Ok(joint.rank())
}

/// `dim(span S / span T)`, after checking `span T ⊆ span S`.
pub fn quotient_dim(s: &Matrix, t: &Matrix) -> Result<usize> {
    let rank_s = check_subspace(s, t)?;
    Ok(rank_s - t.rank())
}

/// Columns of `S` completing a basis of `span T` to a basis of `span S`.
pub fn quotient_representatives(s: &Matrix, t: &Matrix) -> Result<Matrix> {
    check_subspace(s, t)?;
    let joint = Matrix::concat_horizontal(t, s)?.rref();
    let chosen: Vec<usize> = joint
        .pivots
        .iter()
        .filter(|&&p| p >= t.cols)
        .map(|&p| p - t.cols)
        .collect();
    Ok(s.select_columns(&chosen))
}

/// Solves `basis · X = vectors` for `X`. The columns of `basis` must be
/// linearly independent; a vector outside their span is a
/// [`Error::SubspaceViolation`].
pub fn coordinates(basis: &Matrix, vectors: &Matrix) -> Result<Matrix> {
    if basis.rows != vectors.rows {
        return Err(Error::DimensionMismatch(format!(
            "basis lives in dimension {}, vectors in {}",
            basis.rows, vectors.rows
        )));
    }
    let k = basis.cols;
    let ech = Matrix::concat_horizontal(basis, vectors)?.rref();
    if let Some(&p) = ech.pivots.iter().find(|&&p| p >= k) {
        return Err(Error::SubspaceViolation { column: p - k });
    }
    debug_assert_eq!(
        ech.pivots,
        (0..k).collect::<Vec<_>>(),
        "basis not independent"
    );
    let mut x = Matrix::zeros(k, vectors.cols);
    for (r, row) in ech.rows.iter().enumerate() {
        for (&c, v) in row.range(k..) {
            x.entries.insert((r, c - k), v.clone());
        }
    }
    Ok(x)
}
