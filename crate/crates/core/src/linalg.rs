//! Dense exact linear algebra over a [`FieldDesc`]: reduced row echelon form
//! with deterministic pivoting, kernels, linear solves, inverses and
//! determinants. Everything downstream (bases, witnesses) inherits its
//! reproducibility from the fixed pivot order here.

use crate::error::AlgError;
use crate::scalar::{FieldDesc, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldDesc,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldDesc, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldDesc, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldDesc, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Mat { rows: r, cols: c, field, data }
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + self[(i, k)].clone() * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form with lexicographic pivot selection
    /// (leftmost column, then topmost nonzero row). Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self[(r, c)].invert().expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let sub = f.clone() * &self[(r, j)];
                        self[(i, j)] = self[(i, j)].clone() - sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {x : Mx = 0}, one vector per free column,
    /// in increasing free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![self.field.zero(); self.cols];
            x[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[(r, free)].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// One particular solution of Mx = b, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Mat, AlgError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let pivots = aug.rref();
        // a singular input pushes pivots into the identity half
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return Err(AlgError::Invalid("matrix is singular".into()));
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            det = det * &m[(c, c)];
            let inv = m[(c, c)].invert().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * &inv;
                for j in c..n {
                    let sub = f.clone() * &m[(c, j)];
                    m[(i, j)] = m[(i, j)].clone() - sub;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// Echelonizes a list of row vectors, dropping zero rows. The result is a
/// canonical (RREF) basis of their span, so equal spans give equal output.
pub fn echelon_basis(field: FieldDesc, rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_rows(field, rows);
    let pivots = m.rref();
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

/// Coordinates of `v` in the span of `basis` rows, if it lies there.
pub fn coords_in_span(field: FieldDesc, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return if v.iter().all(|s| s.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let m = Mat::from_rows(field, basis.to_vec()).transpose();
    m.solve(v)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c.clone() * x).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn q(s: &str) -> Scalar {
        parse_scalar(s, FieldDesc::Rational).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = Mat::from_rows(
            FieldDesc::Rational,
            vec![
                vec![q("1"), q("2"), q("3")],
                vec![q("2"), q("4"), q("6")],
                vec![q("1"), q("0"), q("1")],
            ],
        );
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_solves_to_zero() {
        let m = Mat::from_rows(
            FieldDesc::Rational,
            vec![vec![q("1"), q("2"), q("3")], vec![q("0"), q("1"), q("1")]],
        );
        for k in m.kernel_basis() {
            assert!(vec_is_zero(&m.apply(&k)));
        }
        assert_eq!(m.kernel_basis().len(), 1);
    }

    #[test]
    fn solve_and_inverse() {
        let f = FieldDesc::prime(5).unwrap();
        let m = Mat::from_rows(
            f,
            vec![
                vec![f.from_i64(1), f.from_i64(2)],
                vec![f.from_i64(3), f.from_i64(4)],
            ],
        );
        let b = vec![f.from_i64(1), f.from_i64(0)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(f, 2));
        assert!(!m.det().is_zero());
    }

    #[test]
    fn singular_det_zero() {
        let f = FieldDesc::prime(3).unwrap();
        let m = Mat::from_rows(
            f,
            vec![
                vec![f.from_i64(1), f.from_i64(2)],
                vec![f.from_i64(2), f.from_i64(4)],
            ],
        );
        assert!(m.det().is_zero());
        assert!(m.inverse().is_err());
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let a = echelon_basis(
            FieldDesc::Rational,
            vec![vec![q("2"), q("4")], vec![q("1"), q("2")]],
        );
        let b = echelon_basis(
            FieldDesc::Rational,
            vec![vec![q("3"), q("6")]],
        );
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![q("1"), q("2")]]);
    }
}
