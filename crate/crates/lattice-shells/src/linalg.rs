//! Exact integer and rational matrix kernel.
//!
//! Everything in this module is arbitrary-precision and exact: determinants
//! by fraction-free (Bareiss) elimination, Smith normal form with unimodular
//! transforms, rational LDL^T for positive definite forms, and Hermite-style
//! integer row reduction. No floating point is used anywhere.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T>(entries: &[T]) -> Self
    where
        BigInt: From<T>,
        T: Clone,
    {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(e.clone());
        }
        m
    }

    pub fn from_rows<T>(rows: Vec<Vec<T>>) -> Self
    where
        BigInt: From<T>,
    {
        assert!(!rows.is_empty(), "matrix dimensions must be positive");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix dimensions must be positive");
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix constructor"
        );
        let nrows = rows.len();
        let data = rows
            .into_iter()
            .flat_map(|r| r.into_iter().map(BigInt::from))
            .collect();
        IntMatrix {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn scale(&self, factor: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * factor)
    }

    /// All entries as `i64`, or `None` if any entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(i64::try_from)
                    .map(|r| r.ok())
                    .collect()
            })
            .collect()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect(),
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant needs a square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i * n + j] = q;
                }
            }
            prev = at(&m, k, k);
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rank of the row span, by exact rational elimination.
    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    /// x^T * self * x, exact.
    pub fn quadratic_form(&self, x: &[BigInt]) -> BigInt {
        assert!(self.is_square() && x.len() == self.rows);
        let mut total = BigInt::zero();
        for i in 0..self.rows {
            let mut row_sum = BigInt::zero();
            for j in 0..self.cols {
                row_sum += &self[(i, j)] * &x[j];
            }
            total += &x[i] * row_sum;
        }
        total
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Dense rational matrix. `num_rational` keeps every entry in lowest terms
/// with a positive denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut m = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    pub fn scale(&self, factor: &BigRational) -> RatMatrix {
        let mut m = self.clone();
        for e in &mut m.data {
            *e *= factor;
        }
        m
    }

    pub fn matvec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &x[j]).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Converts to an integer matrix; fails on any non-integer entry.
    pub fn to_int(&self) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = &self[(i, j)];
                if !e.is_integer() {
                    return Err(Error::NonIntegralEntry {
                        entry: e.to_string(),
                    });
                }
                m[(i, j)] = e.to_integer();
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m[(pivot, j)].clone();
                m[(pivot, j)] = m[(rank, j)].clone();
                m[(rank, j)] = tmp;
            }
            let inv = m[(rank, col)].recip();
            for j in 0..m.cols {
                m[(rank, j)] = &m[(rank, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != rank && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in 0..m.cols {
                        let sub = &f * &m[(rank, j)];
                        m[(i, j)] = &m[(i, j)] - sub;
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan elimination. Panics on non-square input,
    /// returns `None` for singular matrices.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.rows == self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                    let tmp = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = tmp;
                }
            }
            let inv_pivot = a[(col, col)].recip();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &inv_pivot;
                inv[(col, j)] = &inv[(col, j)] * &inv_pivot;
            }
            for i in 0..n {
                if i != col && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    for j in 0..n {
                        let s = &f * &a[(col, j)];
                        a[(i, j)] = &a[(i, j)] - s;
                        let s = &f * &inv[(col, j)];
                        inv[(i, j)] = &inv[(i, j)] - s;
                    }
                }
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U * A * V = S` with unimodular `U`, `V` and a
/// divisibility chain `d_1 | d_2 | ...` of nonnegative diagonal entries.
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `S`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let r = self.s.rows().min(self.s.cols());
        (0..r).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let rows = a.rows();
    let cols = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |m: &mut IntMatrix, i: usize, j: usize| {
        for c in 0..m.cols() {
            let tmp = m[(i, c)].clone();
            m[(i, c)] = m[(j, c)].clone();
            m[(j, c)] = tmp;
        }
    };
    let swap_cols = |m: &mut IntMatrix, i: usize, j: usize| {
        for r in 0..m.rows() {
            let tmp = m[(r, i)].clone();
            m[(r, i)] = m[(r, j)].clone();
            m[(r, j)] = tmp;
        }
    };
    // row_i -= q * row_j
    let row_sub = |m: &mut IntMatrix, i: usize, j: usize, q: &BigInt| {
        for c in 0..m.cols() {
            let d = q * &m[(j, c)];
            m[(i, c)] -= d;
        }
    };
    let col_sub = |m: &mut IntMatrix, i: usize, j: usize, q: &BigInt| {
        for r in 0..m.rows() {
            let d = q * &m[(r, j)];
            m[(r, i)] -= d;
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing submatrix becomes the pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !s[(i, j)].is_zero()
                        && pivot.is_none_or(|(pi, pj)| s[(i, j)].abs() < s[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            if pi != t {
                swap_rows(&mut s, pi, t);
                swap_rows(&mut u, pi, t);
            }
            if pj != t {
                swap_cols(&mut s, pj, t);
                swap_cols(&mut v, pj, t);
            }

            let mut reduced = true;
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() {
                    let q = &s[(i, t)] / &s[(t, t)];
                    if !q.is_zero() {
                        row_sub(&mut s, i, t, &q);
                        row_sub(&mut u, i, t, &q);
                    }
                    if !s[(i, t)].is_zero() {
                        reduced = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() {
                    let q = &s[(t, j)] / &s[(t, t)];
                    if !q.is_zero() {
                        col_sub(&mut s, j, t, &q);
                        col_sub(&mut v, j, t, &q);
                    }
                    if !s[(t, j)].is_zero() {
                        reduced = false;
                    }
                }
            }
            if !reduced {
                continue;
            }

            // pivot must divide the trailing submatrix for the chain to hold
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&s[(i, j)] % &s[(t, t)]).is_zero());
            if let Some((i, _)) = offender {
                let minus_one = -BigInt::one();
                row_sub(&mut s, t, i, &minus_one);
                row_sub(&mut u, t, i, &minus_one);
                continue;
            }
            break;
        }
    }

    for t in 0..rows.min(cols) {
        if s[(t, t)].is_negative() {
            for c in 0..cols {
                let e = -s[(t, c)].clone();
                s[(t, c)] = e;
            }
            for c in 0..u.cols() {
                let e = -u[(t, c)].clone();
                u[(t, c)] = e;
            }
        }
    }

    debug_assert_eq!(u.mul(a).mul(&v), s, "SNF transform identity violated");
    SnfResult { u, s, v }
}

/// Invariant factors of a square integer matrix; shorthand for the SNF diagonal.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(a).invariant_factors()
}

/// Unit lower-triangular `L` and diagonal `D` with `A = L * D * L^T`.
pub struct Ldlt {
    pub l: RatMatrix,
    pub d: Vec<BigRational>,
}

impl Ldlt {
    pub fn reassemble(&self) -> RatMatrix {
        let n = self.d.len();
        let mut dm = RatMatrix::zeros(n, n);
        for i in 0..n {
            dm[(i, i)] = self.d[i].clone();
        }
        self.l.mul(&dm).mul(&self.l.transpose())
    }
}

/// Exact LDL^T of a symmetric positive definite integer matrix. The pivots
/// are the successive ratios of leading principal minors, so positivity of
/// every pivot certifies positive definiteness.
pub fn ldlt(a: &IntMatrix) -> Result<Ldlt> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.rows();
    let ar = a.to_rational();
    let mut l = RatMatrix::identity(n);
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut pivot = ar[(j, j)].clone();
        for k in 0..j {
            pivot -= &l[(j, k)] * &l[(j, k)] * &d[k];
        }
        if pivot <= BigRational::zero() {
            return Err(Error::NotPositiveDefinite {
                step: j,
                pivot: pivot.to_string(),
            });
        }
        d[j] = pivot;
        for i in j + 1..n {
            let mut e = ar[(i, j)].clone();
            for k in 0..j {
                e -= &l[(i, k)] * &l[(j, k)] * &d[k];
            }
            l[(i, j)] = e / &d[j];
        }
    }
    Ok(Ldlt { l, d })
}

/// Hermite-style row reduction: returns a canonical upper-echelon basis of
/// the row span, zero rows dropped. Pivots are positive and entries above
/// each pivot are reduced into `[0, pivot)`.
pub fn row_hermite(a: &IntMatrix) -> IntMatrix {
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<BigInt>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in m.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() && best.is_none_or(|b| row[col].abs() < m[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else {
                break;
            };
            m.swap(pivot_row, b);
            let mut clean = true;
            for i in pivot_row + 1..rows {
                if !m[i][col].is_zero() {
                    let q = &m[i][col] / &m[pivot_row][col];
                    if !q.is_zero() {
                        for c in 0..cols {
                            let d = &q * &m[pivot_row][c];
                            m[i][c] -= d;
                        }
                    }
                    if !m[i][col].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for c in 0..cols {
                let e = -m[pivot_row][c].clone();
                m[pivot_row][c] = e;
            }
        }
        for i in 0..pivot_row {
            let q = m[i][col].div_floor(&m[pivot_row][col]);
            if !q.is_zero() {
                for c in 0..cols {
                    let d = &q * &m[pivot_row][c];
                    m[i][c] -= d;
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    assert!(!m.is_empty(), "row span is zero");
    IntMatrix::from_rows(m)
}
