//! Quadratic-form utilities: radical and non-degeneracy, congruence
//! diagonalization, and isotropy decisions (exact over F_p; sign test plus
//! bounded search over Q, with Unknown as the honest fallback).
//!
//! Convention: the stored Gram matrix G is that of the associated bilinear
//! form <x,y> = q(x+y) - q(x) - q(y), so q(x) = (1/2) x^T G x (char != 2).
//! The factor of 2 between Osborn's (.,.) and <.,.> is fixed here, in the
//! norm-form constructors, as <x,y> = -((x,y) + (y,x)) on Im A.

use crate::algebra::Element;
use crate::error::AlgError;
use crate::linalg::{self, Mat};
use crate::osborn::OsbornData;
use crate::scalar::{FieldDesc, Scalar};

#[derive(Debug, Clone)]
pub struct QuadraticFormData {
    pub field: FieldDesc,
    pub m: usize,
    pub gram: Mat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotropyStatus {
    Anisotropic,
    Isotropic,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct IsotropyVerdict {
    pub status: IsotropyStatus,
    pub witness: Option<Vec<Scalar>>,
    pub method: &'static str,
}

pub const DEFAULT_SEARCH_HEIGHT: i64 = 10;

impl QuadraticFormData {
    pub fn new(field: FieldDesc, gram: Mat) -> Result<QuadraticFormData, AlgError> {
        let m = gram.rows;
        if gram.cols != m {
            return Err(AlgError::Invalid("gram matrix must be square".into()));
        }
        for i in 0..m {
            for j in i + 1..m {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(AlgError::Invalid("gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(QuadraticFormData { field, m, gram })
    }

    /// q(x) = (1/2) x^T G x.
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.bilinear(x, x).halve()
    }

    /// <x, y> = x^T G y.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.m {
                if !y[j].is_zero() {
                    acc = acc + x[i].clone() * &self.gram[(i, j)] * &y[j];
                }
            }
        }
        acc
    }

    /// Deterministic echelon basis of the radical V-perp = ker G, and
    /// whether the form is non-degenerate (trivial radical; char != 2).
    pub fn radical(&self) -> (Vec<Vec<Scalar>>, bool) {
        let kernel = self.gram.kernel_basis();
        let basis = linalg::echelon_basis(self.field, kernel);
        let nondegenerate = basis.is_empty();
        (basis, nondegenerate)
    }

    /// Change-of-basis matrix P, invertible, with P^T G P diagonal.
    /// Pivot selection is deterministic: first remaining vector of nonzero
    /// form value, with a hyperbolic correction when every remaining
    /// diagonal value vanishes.
    pub fn diagonalize(&self) -> Mat {
        let m = self.m;
        // basis vectors as rows; column matrix is assembled at the end
        let mut vs: Vec<Vec<Scalar>> = (0..m)
            .map(|i| {
                let mut v = vec![self.field.zero(); m];
                v[i] = self.field.one();
                v
            })
            .collect();
        for s in 0..m {
            let self_val = |v: &Vec<Scalar>| self.bilinear(v, v);
            if let Some(t) = (s..m).find(|&t| !self_val(&vs[t]).is_zero()) {
                vs.swap(s, t);
            } else {
                // all remaining diagonal values vanish: look for an
                // off-diagonal pairing and fold it onto the diagonal
                let mut found = None;
                'outer: for t in s..m {
                    for u in t + 1..m {
                        if !self.bilinear(&vs[t], &vs[u]).is_zero() {
                            found = Some((t, u));
                            break 'outer;
                        }
                    }
                }
                match found {
                    Some((t, u)) => {
                        let vu = vs[u].clone();
                        vs[t] = linalg::vec_add(&vs[t], &vu);
                        vs.swap(s, t);
                    }
                    None => break, // remaining block is the radical
                }
            }
            let d = self.bilinear(&vs[s], &vs[s]);
            let dinv = d.invert().expect("pivot value is nonzero");
            for t in s + 1..m {
                let c = self.bilinear(&vs[s], &vs[t]) * &dinv;
                if !c.is_zero() {
                    let sub = linalg::vec_scale(&c, &vs[s]);
                    vs[t] = linalg::vec_sub(&vs[t], &sub);
                }
            }
        }
        let mut p = Mat::zeros(self.field, m, m);
        for (j, v) in vs.iter().enumerate() {
            for i in 0..m {
                p[(i, j)] = v[i].clone();
            }
        }
        p
    }

    /// Isotropy decision. Exact over F_p (quadratic-residue test at rank 2,
    /// guaranteed witness search at rank >= 3). Over Q: sign-definiteness,
    /// then a bounded lexicographic witness search of the given height,
    /// then Unknown.
    pub fn isotropy(&self, height: i64) -> IsotropyVerdict {
        if self.m == 0 {
            return self.verdict(IsotropyStatus::Anisotropic, None, "empty");
        }
        let p_mat = self.diagonalize();
        let diag: Vec<Scalar> = (0..self.m)
            .map(|i| {
                let col: Vec<Scalar> = (0..self.m).map(|r| p_mat[(r, i)].clone()).collect();
                self.eval(&col)
            })
            .collect();
        // a zero diagonal value is already a nonzero isotropic vector
        if let Some(i) = diag.iter().position(|d| d.is_zero()) {
            let col: Vec<Scalar> = (0..self.m).map(|r| p_mat[(r, i)].clone()).collect();
            return self.verdict(IsotropyStatus::Isotropic, Some(col), "radical");
        }
        match self.field {
            FieldDesc::Prime(p) => self.isotropy_prime(p as u64, &p_mat, &diag),
            FieldDesc::Rational => self.isotropy_rational(&diag, height),
        }
    }

    fn isotropy_prime(&self, p: u64, p_mat: &Mat, diag: &[Scalar]) -> IsotropyVerdict {
        let col = |i: usize| -> Vec<Scalar> {
            (0..self.m).map(|r| p_mat[(r, i)].clone()).collect()
        };
        if self.m == 1 {
            return self.verdict(IsotropyStatus::Anisotropic, None, "rank-1");
        }
        if self.m == 2 {
            // a x^2 + b y^2 = 0 nontrivially iff -a/b is a square
            let target = (-diag[0].clone()).div(&diag[1]).unwrap();
            for s in 0..p {
                let sc = self.field.from_i64(s as i64);
                if sc.clone() * &sc == target {
                    // witness: first column + s * second column... note the
                    // root s scales the *second* basis vector
                    let w = linalg::vec_add(&col(0), &linalg::vec_scale(&sc, &col(1)));
                    // q(v0 + s v1) = a + s^2 b = a + (-a/b) b = 0
                    let w = if self.eval(&w).is_zero() {
                        w
                    } else {
                        linalg::vec_add(&linalg::vec_scale(&sc, &col(0)), &col(1))
                    };
                    return self.verdict(IsotropyStatus::Isotropic, Some(w), "square-test");
                }
            }
            return self.verdict(IsotropyStatus::Anisotropic, None, "square-test");
        }
        // rank >= 3 over a finite field is always isotropic; search the
        // first three diagonalized coordinates
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    if x == 0 && y == 0 && z == 0 {
                        continue;
                    }
                    let val = self.field.from_i64(x as i64).clone()
                        * &self.field.from_i64(x as i64)
                        * &diag[0]
                        + self.field.from_i64(y as i64).clone()
                            * &self.field.from_i64(y as i64)
                            * &diag[1]
                        + self.field.from_i64(z as i64).clone()
                            * &self.field.from_i64(z as i64)
                            * &diag[2];
                    if val.is_zero() {
                        let mut w = vec![self.field.zero(); self.m];
                        for (coef, i) in [(x, 0usize), (y, 1), (z, 2)] {
                            let c = self.field.from_i64(coef as i64);
                            w = linalg::vec_add(&w, &linalg::vec_scale(&c, &col(i)));
                        }
                        return self.verdict(IsotropyStatus::Isotropic, Some(w), "search-3d");
                    }
                }
            }
        }
        unreachable!("a form of rank >= 3 over a finite field is isotropic");
    }

    fn isotropy_rational(&self, diag: &[Scalar], height: i64) -> IsotropyVerdict {
        let signs: Vec<i32> = diag.iter().map(|d| d.sign()).collect();
        if signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0) {
            return self.verdict(IsotropyStatus::Anisotropic, None, "sign-definite");
        }
        // bounded lexicographic search in the original coordinates
        let mut idx = vec![-height; self.m];
        loop {
            let v: Vec<Scalar> = idx.iter().map(|&n| self.field.from_i64(n)).collect();
            if !linalg::vec_is_zero(&v) && self.eval(&v).is_zero() {
                return self.verdict(IsotropyStatus::Isotropic, Some(v), "bounded-search");
            }
            let mut k = self.m;
            loop {
                if k == 0 {
                    return self.verdict(IsotropyStatus::Unknown, None, "bounded-search");
                }
                k -= 1;
                if idx[k] < height {
                    idx[k] += 1;
                    for t in k + 1..self.m {
                        idx[t] = -height;
                    }
                    break;
                }
            }
        }
    }

    fn verdict(
        &self,
        status: IsotropyStatus,
        witness: Option<Vec<Scalar>>,
        method: &'static str,
    ) -> IsotropyVerdict {
        if let Some(w) = &witness {
            assert!(!linalg::vec_is_zero(w), "isotropy witness must be nonzero");
            assert!(self.eval(w).is_zero(), "isotropy witness must satisfy q = 0");
        }
        IsotropyVerdict { status, witness, method }
    }
}

/// Gram matrix (in the <.,.> convention) of the norm form of a decomposed
/// quadratic algebra, on the full space in the basis (1, u_1..u_m):
/// n(alpha, u) = alpha^2 - (u, u).
pub fn norm_form(data: &OsbornData) -> QuadraticFormData {
    let f = data.field();
    let m = data.im_dim();
    let mut g = Mat::zeros(f, m + 1, m + 1);
    g[(0, 0)] = f.from_i64(2);
    for i in 0..m {
        for j in 0..m {
            g[(i + 1, j + 1)] = -(data.gram[(i, j)].clone() + data.gram[(j, i)].clone());
        }
    }
    QuadraticFormData::new(f, g).expect("norm gram is symmetric by construction")
}

/// Norm form restricted to the span of the given elements (coordinates in
/// the basis of the span): <x,y> = -((x,y) + (y,x)) on Im parts plus the
/// 2*alpha*beta contribution of the scalar parts.
pub fn norm_form_on_span(data: &OsbornData, span: &[Element]) -> QuadraticFormData {
    let f = data.field();
    let k = span.len();
    let mut g = Mat::zeros(f, k, k);
    let split: Vec<(Scalar, Vec<Scalar>)> = span.iter().map(|e| data.split(e)).collect();
    for i in 0..k {
        for j in 0..k {
            let (ai, ui) = &split[i];
            let (aj, uj) = &split[j];
            let two_ab = (ai.clone() * aj).clone() + ai.clone() * aj;
            let forms = data.im_form(ui, uj) + data.im_form(uj, ui);
            g[(i, j)] = two_ab - forms;
        }
    }
    QuadraticFormData::new(f, g).expect("restricted gram is symmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        FieldDesc::Rational.from_i64(n)
    }

    fn diag_form(field: FieldDesc, entries: &[i64]) -> QuadraticFormData {
        let m = entries.len();
        let mut g = Mat::zeros(field, m, m);
        for (i, &e) in entries.iter().enumerate() {
            // store 2e so that q(e_i) = e
            g[(i, i)] = field.from_i64(2 * e);
        }
        QuadraticFormData::new(field, g).unwrap()
    }

    #[test]
    fn radical_examples() {
        // Gram diag(-2,-2,2): the norm of H restricted to Im H
        let f = diag_form(FieldDesc::Rational, &[-1, -1, 1]);
        let (rad, nondeg) = f.radical();
        assert!(rad.is_empty());
        assert!(nondeg);

        let zero = QuadraticFormData::new(
            FieldDesc::Rational,
            Mat::zeros(FieldDesc::Rational, 2, 2),
        )
        .unwrap();
        let (rad, nondeg) = zero.radical();
        assert_eq!(rad.len(), 2);
        assert!(!nondeg);
    }

    #[test]
    fn isotropy_rational_cases() {
        let f = diag_form(FieldDesc::Rational, &[1, 1, 1]);
        assert_eq!(f.isotropy(10).status, IsotropyStatus::Anisotropic);

        let f = diag_form(FieldDesc::Rational, &[1, -1]);
        let v = f.isotropy(10);
        assert_eq!(v.status, IsotropyStatus::Isotropic);
        assert!(v.witness.is_some());

        // x^2 + y^2 - 3 z^2 = 0 has no rational solution; honest Unknown
        let f = diag_form(FieldDesc::Rational, &[1, 1, -3]);
        assert_eq!(f.isotropy(5).status, IsotropyStatus::Unknown);
    }

    #[test]
    fn isotropy_prime_cases() {
        let f3 = FieldDesc::prime(3).unwrap();
        let f = diag_form(f3, &[1, 1, 1]);
        let v = f.isotropy(10);
        assert_eq!(v.status, IsotropyStatus::Isotropic);

        let f = diag_form(f3, &[1, 1]);
        assert_eq!(f.isotropy(10).status, IsotropyStatus::Anisotropic);

        let f5 = FieldDesc::prime(5).unwrap();
        // -1 = 4 is a square mod 5
        let f = diag_form(f5, &[1, 1]);
        assert_eq!(f.isotropy(10).status, IsotropyStatus::Isotropic);
    }

    #[test]
    fn diagonalize_cases() {
        // already diagonal: P = I
        let f = diag_form(FieldDesc::Rational, &[2, 3]);
        let p = f.diagonalize();
        assert_eq!(p, Mat::identity(FieldDesc::Rational, 2));

        // hyperbolic plane [[0,1],[1,0]]
        let mut g = Mat::zeros(FieldDesc::Rational, 2, 2);
        g[(0, 1)] = q(1);
        g[(1, 0)] = q(1);
        let f = QuadraticFormData::new(FieldDesc::Rational, g.clone()).unwrap();
        let p = f.diagonalize();
        let d = p.transpose().matmul(&g).matmul(&p);
        for i in 0..2 {
            for j in 0..2 {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        assert!(p.is_invertible());

        // rank-deficient: zero diagonal entries match the radical dimension
        let mut g = Mat::zeros(FieldDesc::Rational, 3, 3);
        g[(0, 0)] = q(2);
        let f = QuadraticFormData::new(FieldDesc::Rational, g.clone()).unwrap();
        let p = f.diagonalize();
        let d = p.transpose().matmul(&g).matmul(&p);
        let zeros = (0..3).filter(|&i| d[(i, i)].is_zero()).count();
        let (rad, _) = f.radical();
        assert_eq!(zeros, rad.len());
    }
}
