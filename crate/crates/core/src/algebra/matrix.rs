//! Dense matrices over an exact field, symmetric matrices, and pencil minors.

use std::fmt;

use super::cyclo::Cyclo;
use super::form::BivariateForm;
use super::poly::Poly;
use super::scalar::Scalar;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T: Scalar = Cyclo> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, j);
                if !b.is_zero() {
                    acc = acc.plus(&a.times(b));
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).plus(other.get(i, j)))
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).times(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Row echelon form with pivot columns.
    pub fn echelon(&self) -> (Matrix<T>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).try_inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (e, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = e.get(r, f).negate();
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return T::zero() };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.negate();
            }
            let piv = m.get(c, c).clone();
            det = det.times(&piv);
            let inv = piv.try_inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).minus(&f.times(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix<T>, AlgebraError> {
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (e, pivots) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| e.get(i, n + j).clone()))
    }

    /// Solve `M x = b`, returning one solution if consistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (e, pivots) = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = e.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", v)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Square matrix with `a[i][j] = a[j][i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymMatrix(Matrix<Cyclo>);

impl SymMatrix {
    pub fn new(m: Matrix<Cyclo>) -> Result<SymMatrix, AlgebraError> {
        if m.rows() != m.cols() {
            return Err(AlgebraError::Shape(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        for i in 0..m.rows() {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(AlgebraError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix(m))
    }

    pub fn diagonal(entries: &[Cyclo]) -> SymMatrix {
        let n = entries.len();
        SymMatrix(Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Cyclo::zero() }))
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<Cyclo> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        self.0.get(i, j)
    }

    /// `xᵀ Q y`.
    pub fn bilinear<T: Scalar>(&self, x: &[T], y: &[T]) -> T {
        let n = self.size();
        let mut acc = T::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let q = self.get(i, j);
                if q.is_zero() || y[j].is_zero() {
                    continue;
                }
                acc = acc.plus(&x[i].times(&T::from_cyclo(q)).times(&y[j]));
            }
        }
        acc
    }

    /// `Pᵀ Q P`.
    pub fn congruent(&self, p: &Matrix<Cyclo>) -> SymMatrix {
        SymMatrix(p.transpose().mul(&self.0).mul(p))
    }

    pub fn combine(a: &Cyclo, q1: &SymMatrix, b: &Cyclo, q2: &SymMatrix) -> SymMatrix {
        SymMatrix(q1.0.scale(a).add(&q2.0.scale(b)))
    }
}

/// Determinant of a square matrix with polynomial entries, by Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return Poly::zero() };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Minor of `λQ₁ + μQ₂` on the given rows and columns, as a form of degree `|rows|`.
pub fn pencil_minor(q1: &SymMatrix, q2: &SymMatrix, rows: &[usize], cols: &[usize]) -> Result<BivariateForm, AlgebraError> {
    let n = q1.size();
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(AlgebraError::Shape("minor index sets must be nonempty and of equal size".into()));
    }
    if let Some(&bad) = rows.iter().chain(cols).find(|&&i| i >= n) {
        return Err(AlgebraError::IndexOutOfRange { index: bad, size: n });
    }
    let m: Vec<Vec<Poly>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| Poly::new(vec![q2.get(r, c).clone(), q1.get(r, c).clone()])).collect())
        .collect();
    let det = bareiss_det(m);
    Ok(BivariateForm::from_dehomogenized(&det, rows.len()))
}
