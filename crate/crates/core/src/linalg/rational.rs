//! Dense matrices over the rationals with exact elimination.
//!
//! Elimination is done fraction-free: every row is first scaled to integers,
//! then reduced with Bareiss' update so intermediate entries stay minors of
//! the input instead of growing as products of fractions.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Row-major dense rational matrix. Zero-sized shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have equal length;
    /// an empty slice yields a 0x0 matrix.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, rational(x));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        RationalMatrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Sub-matrix formed by the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        RationalMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Entries as `i64` when every entry is an integer that fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(to_f64).collect())
            .collect()
    }

    pub fn checked_mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Inconsistent(format!(
                "shape mismatch in product: {:?} x {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        IntegerEchelon::forward(self).pivots.len()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let ech = IntegerEchelon::forward(self).reduced();
        let mut out = Self::zeros(ech.pivots.len(), self.cols);
        for (i, &p) in ech.pivots.iter().enumerate() {
            let lead = &ech.rows[i][p];
            for j in 0..self.cols {
                out.set(i, j, BigRational::new(ech.rows[i][j].clone(), lead.clone()));
            }
        }
        (out, ech.pivots)
    }

    /// Canonical basis of the null space, one vector per column.
    ///
    /// The basis vectors are put in reduced echelon form (as rows), then each
    /// is scaled to coprime integers with a positive leading entry. The
    /// result depends only on the null space, not on how it was found.
    pub fn kernel_basis(&self) -> RationalMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            vectors.push(v);
        }
        canonical_basis(&vectors, self.cols)
    }

    /// Solves `self * X = rhs` for square nonsingular `self`; `None` when
    /// `self` is singular or not square.
    pub fn solve(&self, rhs: &RationalMatrix) -> Option<RationalMatrix> {
        let n = self.rows;
        if self.cols != n || rhs.rows != n {
            return None;
        }
        let k = rhs.cols;
        let mut aug = Self::zeros(n, n + k);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..k {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if !pivots.iter().copied().eq(0..n) {
            return None;
        }
        Some(r.select_columns(&(n..n + k).collect::<Vec<_>>()))
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        self.solve(&Self::identity(self.rows))
    }

    /// Solves `self * X = rhs` in the least-squares sense through the normal
    /// equations. When the normal matrix is singular the basic solution
    /// (free variables set to zero) is returned only if it reproduces `rhs`
    /// exactly.
    pub fn solve_least_squares(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::Inconsistent(format!(
                "least squares with {} equations but {} right-hand rows",
                self.rows, rhs.rows
            )));
        }
        let at = self.transpose();
        let normal = at.checked_mul(self)?;
        let target = at.checked_mul(rhs)?;
        let n = self.cols;
        let k = rhs.cols;
        // Gauss-Jordan on [AᵀA | Aᵀb].
        let mut aug = Self::zeros(n, n + k);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, normal.get(i, j).clone());
            }
            for j in 0..k {
                aug.set(i, n + j, target.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(Error::Inconsistent(
                "normal equations have no solution".into(),
            ));
        }
        let mut x = Self::zeros(n, k);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..k {
                x.set(p, j, r.get(i, n + j).clone());
            }
        }
        if pivots.len() < n && self.checked_mul(&x)? != *rhs {
            return Err(Error::Inconsistent(
                "singular least-squares system with right-hand side outside the column span".into(),
            ));
        }
        Ok(x)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shapes must agree");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Falls back to a division of the parts for huge numerators/denominators.
        x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Canonical basis of the span of `vectors` (each of length `dim`), returned
/// as the columns of a `dim x rank` matrix.
pub fn canonical_basis(vectors: &[Vec<Rational>], dim: usize) -> RationalMatrix {
    let rows = RationalMatrix::from_rows(vectors.to_vec(), dim);
    let (r, pivots) = rows.rref();
    let columns: Vec<Vec<Rational>> = (0..pivots.len())
        .map(|i| primitive_integer_vector(r.row(i)))
        .collect();
    RationalMatrix::from_columns(&columns, dim)
}

/// Scales a non-zero vector to coprime integer entries whose first non-zero
/// entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let denom_lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(lead) if lead.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &content * &sign))
        .collect()
}

/// Integer row-echelon form produced by fraction-free elimination.
struct IntegerEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntegerEchelon {
    /// Scales each row to integers and runs Bareiss elimination. Only the
    /// pivot rows are kept.
    fn forward(m: &RationalMatrix) -> Self {
        let cols = m.cols;
        let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| {
                let row = m.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = &pivot_row[c];
            for row in tail.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..cols {
                    let num = pivot * &row[j] - &factor * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
            }
            prev = pivot.clone();
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        IntegerEchelon { rows, pivots }
    }

    /// Clears the entries above every pivot, keeping rows integral and
    /// primitive.
    fn reduced(mut self) -> Self {
        for row in &mut self.rows {
            make_primitive(row);
        }
        for k in (0..self.pivots.len()).rev() {
            let pc = self.pivots[k];
            let (upper, lower) = self.rows.split_at_mut(k);
            let pivot_row = &lower[0];
            let pivot = &pivot_row[pc];
            for row in upper.iter_mut() {
                if row[pc].is_zero() {
                    continue;
                }
                let factor = row[pc].clone();
                for (x, p) in row.iter_mut().zip(pivot_row) {
                    *x = &*x * pivot - &factor * p;
                }
                make_primitive(row);
            }
        }
        self
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !content.is_zero() && !content.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &content;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_empty_kernel() {
        let k = RationalMatrix::identity(3).kernel_basis();
        assert_eq!(k.shape(), (3, 0));
    }

    #[test]
    fn difference_row_kernel_is_the_diagonal() {
        let k = RationalMatrix::from_i64_rows(&[[1, -1]]).kernel_basis();
        assert_eq!(k, RationalMatrix::from_i64_rows(&[[1], [1]]));
    }

    #[test]
    fn kernel_vectors_are_primitive_with_positive_lead() {
        // x + 2y - 3z = 0 with half-integer entries.
        let mut m = RationalMatrix::zeros(1, 3);
        m.set(0, 0, ratio(1, 2));
        m.set(0, 1, rational(1));
        m.set(0, 2, ratio(-3, 2));
        let k = m.kernel_basis();
        assert_eq!(k, RationalMatrix::from_i64_rows(&[[3, 0], [0, 3], [1, 2]]));
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn ranks_of_small_matrices() {
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RationalMatrix::zeros(4, 0).rank(), 0);
        assert_eq!(RationalMatrix::zeros(0, 0).rank(), 0);
        let cycle_boundary = RationalMatrix::from_i64_rows(&[[-1, 0, 1], [1, -1, 0], [0, 1, -1]]);
        assert_eq!(cycle_boundary.rank(), 2);
    }

    #[test]
    fn empty_products_have_outer_shape() {
        let a = RationalMatrix::zeros(3, 0);
        let b = RationalMatrix::zeros(0, 2);
        let p = &a * &b;
        assert_eq!(p.shape(), (3, 2));
        assert!(p.is_zero());
    }

    #[test]
    fn least_squares_identity_returns_rhs() {
        let b = RationalMatrix::from_i64_rows(&[[1, 2], [3, 4], [5, 6]]);
        let x = RationalMatrix::identity(3).solve_least_squares(&b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn least_squares_with_inconsistent_singular_system_fails() {
        let a = RationalMatrix::from_i64_rows(&[[1, 1], [0, 0]]);
        let b = RationalMatrix::from_i64_rows(&[[1], [1]]);
        assert!(matches!(
            a.solve_least_squares(&b),
            Err(Error::Inconsistent(_))
        ));
        let shape = RationalMatrix::zeros(3, 1).solve_least_squares(&RationalMatrix::zeros(2, 1));
        assert!(shape.is_err());
    }

    #[test]
    fn least_squares_overdetermined_full_rank_minimizes() {
        // Fit y = c to the points 1, 2, 6: minimizer is the mean 3.
        let a = RationalMatrix::from_i64_rows(&[[1], [1], [1]]);
        let b = RationalMatrix::from_i64_rows(&[[1], [2], [6]]);
        let x = a.solve_least_squares(&b).unwrap();
        assert_eq!(x, RationalMatrix::from_i64_rows(&[[3]]));
    }

    #[test]
    fn rref_of_rational_matrix() {
        let m = RationalMatrix::from_i64_rows(&[[2, 4, 6], [1, 3, 5]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, RationalMatrix::from_i64_rows(&[[1, 0, -1], [0, 1, 2]]));
    }

    #[test]
    fn inverse_and_square_solve() {
        let a = RationalMatrix::from_i64_rows(&[[2, 1], [1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, RationalMatrix::from_i64_rows(&[[1, -1], [-1, 2]]));
        assert_eq!(&a * &inv, RationalMatrix::identity(2));
        let b = RationalMatrix::from_i64_rows(&[[3], [2]]);
        assert_eq!(
            a.solve(&b).unwrap(),
            RationalMatrix::from_i64_rows(&[[1], [1]])
        );
        assert!(RationalMatrix::from_i64_rows(&[[1, 2], [2, 4]])
            .inverse()
            .is_none());
        assert!(RationalMatrix::zeros(2, 3).inverse().is_none());
        assert_eq!(
            RationalMatrix::zeros(0, 0).inverse(),
            Some(RationalMatrix::zeros(0, 0))
        );
    }
}
