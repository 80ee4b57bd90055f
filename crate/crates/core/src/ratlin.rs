//! Exact rational dense linear algebra.
//!
//! Every subspace is stored through the reduced row-echelon form of a
//! spanning matrix, so two [`Subspace`]s are equal exactly when their basis
//! matrices are identical. Dual spaces are identified with coordinate space
//! through the standard dual basis.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Coordinate vector (or covector in the dual basis).
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Dense row-major matrix over the rationals. Zero rows or columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from explicit rows, all of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: nrows, cols, data })
    }

    /// Integer matrix literal. Panics on ragged input; intended for fixtures and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| ints(r)).collect())
            .expect("ragged integer matrix literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| (&self[(i, j)] + &self[(j, i)]).is_zero())
            })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| c * a).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Scalar::one())
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn select_columns(&self, range: std::ops::Range<usize>) -> Matrix {
        let start = range.start;
        Self::from_fn(self.rows, range.len(), |i, j| self[(i, start + j)].clone())
    }

    /// Reduced row-echelon form together with its pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let delta = &f * &m[(r, j)];
                        m[(i, j)] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(n)).ok()?;
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.select_columns(n..2 * n))
    }

    /// Some solution `x` of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        if b.len() != self.rows {
            return None;
        }
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()])).ok()?;
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rref(m: &Matrix) -> Matrix {
    m.rref()
}

/// Subspace of `Q^ambient_dim`, stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::row_span(&Matrix::identity(ambient))
    }

    /// Row span of `m`.
    pub fn row_span(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let k = pivots.len();
        let basis = Matrix::from_fn(k, m.cols(), |i, j| r[(i, j)].clone());
        Self { ambient: m.cols(), basis, pivots }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        Ok(Self::row_span(&Matrix::from_rows(ambient, vectors.to_vec())?))
    }

    /// Span of coordinate vectors `e_i` for the listed indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vector> = indices.iter().map(|&i| unit(ambient, i)).collect();
        Self::span(ambient, &vs).expect("unit vectors have the ambient length")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Canonical basis (RREF rows).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        Ok(())
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        self.check_vec(v)?;
        // RREF basis: the coefficient of row r is the entry of v at pivot r.
        let coeffs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = zeros(self.ambient);
        for (c, row) in coeffs.iter().zip(self.basis.row_vecs()) {
            for (acc, x) in rebuilt.iter_mut().zip(&row) {
                *acc += c * x;
            }
        }
        Ok((rebuilt == v).then_some(coeffs))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Self::row_span(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Annihilator in the dual space, in dual-basis coordinates.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Image under the linear map `x ↦ m x`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: m.cols() });
        }
        let rows: Result<Vec<Vector>> = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.rows(), &rows?)
    }

    /// Preimage under `x ↦ m x` of this subspace (which lives in the target of `m`).
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: m.rows() });
        }
        // x ∈ preimage ⟺ every annihilating form kills m x.
        let ann = self.annihilator();
        Ok(kernel(&ann.basis.mul(m)?))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}, {:?})", self.dim(), self.ambient, self.basis)
    }
}

/// Null space `{x : m x = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref_with_pivots();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = unit(n, f);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("kernel vectors have the column length")
}

/// Coordinates on `Q^n / k`: `projection` has kernel exactly `k`, `section` is a
/// right inverse whose image is spanned by the non-pivot coordinate vectors of
/// the canonical basis of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub projection: Matrix,
    pub section: Matrix,
    /// Non-pivot coordinates of `k`, in increasing order; the section maps the
    /// j-th quotient basis vector to `e_{complement[j]}`.
    pub complement: Vec<usize>,
}

impl QuotientMap {
    pub fn quotient_dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn project(&self, x: &[Scalar]) -> Vector {
        self.projection.apply(x).expect("vector in the ambient space")
    }

    pub fn lift(&self, y: &[Scalar]) -> Vector {
        self.section.apply(y).expect("vector in the quotient space")
    }

    /// Restriction of a form vanishing on `k` to quotient coordinates (`sectionᵀ ξ`).
    pub fn restrict_form(&self, xi: &[Scalar]) -> Vector {
        self.section.transpose().apply(xi).expect("form on the ambient space")
    }

    /// Form on the quotient pulled back to the ambient space (`projectionᵀ ξ̄`).
    pub fn pullback_form(&self, xi_bar: &[Scalar]) -> Vector {
        self.projection.transpose().apply(xi_bar).expect("form on the quotient")
    }
}

pub fn quotient_map(v_dim: usize, k: &Subspace) -> Result<QuotientMap> {
    if k.ambient_dim() != v_dim {
        return Err(Error::DimensionMismatch { expected: v_dim, found: k.ambient_dim() });
    }
    let complement: Vec<usize> = (0..v_dim).filter(|c| !k.pivots().contains(c)).collect();
    let m = complement.len();
    let section = Matrix::from_fn(v_dim, m, |i, j| {
        if complement[j] == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    // x = Σ_r x[p_r] b_r + section(y), so y_j = x[c_j] - Σ_r x[p_r] b_r[c_j].
    let mut projection = Matrix::zeros(m, v_dim);
    for (j, &c) in complement.iter().enumerate() {
        projection[(j, c)] = Scalar::one();
        for (r, &p) in k.pivots().iter().enumerate() {
            projection[(j, p)] = -k.basis()[(r, c)].clone();
        }
    }
    Ok(QuotientMap { projection, section, complement })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        assert_eq!(Matrix::identity(3).rref(), Matrix::identity(3));
        assert_eq!(Matrix::zeros(2, 3).rref(), Matrix::zeros(2, 3));
        assert_eq!(
            Matrix::from_i64(&[&[2, 4], &[1, 2]]).rref(),
            Matrix::from_i64(&[&[1, 2], &[0, 0]])
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(4)).is_zero());
        assert!(kernel(&Matrix::zeros(2, 3)).is_full());
        let k = kernel(&Matrix::from_i64(&[&[1, 1, 0]]));
        let expected = Subspace::span(3, &[ints(&[1, -1, 0]), ints(&[0, 0, 1])]).unwrap();
        assert_eq!(k, expected);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn lattice_examples() {
        assert!(Subspace::zero(3).annihilator().is_full());
        let u = Subspace::coordinate(3, &[0, 1]);
        let v = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(u.intersect(&v).unwrap(), Subspace::coordinate(3, &[1]));
        assert_eq!(
            Subspace::coordinate(3, &[0]).sum(&Subspace::coordinate(3, &[1])).unwrap(),
            Subspace::coordinate(3, &[0, 1])
        );
    }

    #[test]
    fn lattice_dimension_mismatch() {
        let u = Subspace::zero(2);
        let v = Subspace::zero(3);
        assert!(matches!(u.sum(&v), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(u.intersect(&v), Err(Error::DimensionMismatch { .. })));
        assert!(u.contains(&ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn quotient_map_examples() {
        let q = quotient_map(3, &Subspace::zero(3)).unwrap();
        assert_eq!(q.projection, Matrix::identity(3));
        assert_eq!(q.section, Matrix::identity(3));

        let q = quotient_map(3, &Subspace::full(3)).unwrap();
        assert_eq!(q.projection.rows(), 0);
        assert_eq!(q.projection.cols(), 3);

        let q = quotient_map(3, &Subspace::coordinate(3, &[2])).unwrap();
        assert_eq!(q.project(&ints(&[4, 5, 6])), ints(&[4, 5]));
        assert_eq!(q.lift(&ints(&[7, 8])), ints(&[7, 8, 0]));
    }

    #[test]
    fn quotient_map_non_coordinate_kernel() {
        let k = Subspace::span(3, &[ints(&[1, 2, 3])]).unwrap();
        let q = quotient_map(3, &k).unwrap();
        assert_eq!(q.projection.mul(&q.section).unwrap(), Matrix::identity(2));
        assert!(is_zero(&q.project(&ints(&[2, 4, 6]))));
        assert!(!is_zero(&q.project(&ints(&[1, 0, 0]))));
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let x = m.solve(&ints(&[3, 2])).unwrap();
        assert_eq!(m.apply(&x).unwrap(), ints(&[3, 2]));
        assert!(Matrix::from_i64(&[&[1, 1], &[1, 1]]).solve(&ints(&[1, 2])).is_none());
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn preimage_of_subspace() {
        // m drops the last coordinate; preimage of 0 is span{e3}.
        let m = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        let pre = Subspace::zero(2).preimage(&m).unwrap();
        assert_eq!(pre, Subspace::coordinate(3, &[2]));
    }
}
