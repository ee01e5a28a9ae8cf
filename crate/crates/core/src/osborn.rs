//! Osborn's decomposition of a quadratic algebra (char != 2):
//! A = F.1 (+) Im A, with multiplication
//! (alpha, u)(beta, v) = (alpha*beta + (u,v), alpha*v + beta*u + u x v)
//! for a bilinear form (.,.) and an anticommutative cross product on Im A.
//! Trace, norm and conjugation all derive from this decomposition.

use rand::Rng;

use crate::algebra::{Algebra, Element, Law, LawVerdict};
use crate::error::AlgError;
use crate::linalg::{self, Mat};
use crate::scalar::{FieldDesc, Scalar};

/// The decomposition data of a quadratic algebra: a trace-zero basis of
/// Im A, the Gram matrix of (.,.) in that basis, and the cross-product
/// tensor. The Gram matrix need not be symmetric; symmetry is exactly
/// involutivity.
#[derive(Debug, Clone)]
pub struct OsbornData {
    pub algebra: Algebra,
    pub im_basis: Vec<Vec<Scalar>>,
    pub gram: Mat,
    pub cross: Vec<Vec<Vec<Scalar>>>,
    /// Inverse of the column matrix (1 | u_1 | ... | u_m), mapping algebra
    /// coordinates to (scalar part, Im coordinates).
    to_decomp: Mat,
}

/// Conjugate, trace and norm of one element, satisfying
/// a + conj(a) = tr(a).1, a*conj(a) = n(a).1 and a^2 - tr(a)a + n(a).1 = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionValues {
    pub conj: Element,
    pub trace: Scalar,
    pub norm: Scalar,
}

impl OsbornData {
    pub fn field(&self) -> FieldDesc {
        self.algebra.field
    }

    pub fn im_dim(&self) -> usize {
        self.im_basis.len()
    }

    /// Splits an element into (scalar part, Im-coordinates).
    pub fn split(&self, a: &Element) -> (Scalar, Vec<Scalar>) {
        let c = self.to_decomp.apply(&a.coords);
        (c[0].clone(), c[1..].to_vec())
    }

    /// Rebuilds an element from (scalar part, Im-coordinates).
    pub fn join(&self, alpha: &Scalar, im: &[Scalar]) -> Element {
        let mut out = linalg::vec_scale(alpha, &self.algebra.unit);
        for (c, u) in im.iter().zip(&self.im_basis) {
            out = linalg::vec_add(&out, &linalg::vec_scale(c, u));
        }
        Element::new(out)
    }

    /// The bilinear form (u, v) on Im-coordinates.
    pub fn im_form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = self.field().zero();
        for i in 0..self.im_dim() {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.im_dim() {
                if !v[j].is_zero() {
                    acc = acc + u[i].clone() * &self.gram[(i, j)] * &v[j];
                }
            }
        }
        acc
    }

    /// The cross product u x v on Im-coordinates.
    pub fn im_cross(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let m = self.im_dim();
        let mut out = vec![self.field().zero(); m];
        for i in 0..m {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if v[j].is_zero() {
                    continue;
                }
                let c = u[i].clone() * &v[j];
                for k in 0..m {
                    if !self.cross[i][j][k].is_zero() {
                        out[k] = out[k].clone() + c.clone() * &self.cross[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Conjugate, trace and norm of `a`: with a = (alpha, u) these are
    /// (alpha, -u), 2*alpha and alpha^2 - (u, u).
    pub fn involution_values(&self, a: &Element) -> InvolutionValues {
        let (alpha, u) = self.split(a);
        let conj = self.join(&alpha, &linalg::vec_neg(&u));
        let trace = alpha.clone() + alpha.clone();
        let norm = alpha.clone() * &alpha - self.im_form(&u, &u);
        InvolutionValues { conj, trace, norm }
    }

    /// For u, v in Im A, returns ((u, v), u x v) with uv = (u,v).1 + u x v.
    pub fn form_cross(&self, u: &Element, v: &Element) -> Result<(Scalar, Element), AlgError> {
        let (au, uc) = self.split(u);
        let (av, vc) = self.split(v);
        if !au.is_zero() || !av.is_zero() {
            return Err(AlgError::Invalid(
                "form_cross arguments must lie in Im A".into(),
            ));
        }
        let f = self.im_form(&uc, &vc);
        let x = self.im_cross(&uc, &vc);
        Ok((f, self.join(&self.field().zero(), &x)))
    }

    /// Flexibility via Osborn's criterion: (.,.) symmetric and
    /// (u, u x v) = 0 for all u, v in Im A. The quadratic condition is
    /// checked through its symmetric linearization
    /// (u_i, u_j x u_k) + (u_j, u_i x u_k) = 0 on basis triples, which is
    /// equivalent in char != 2.
    pub fn flexible_criterion(&self) -> LawVerdict {
        let holds = self.gram_symmetric() && self.cross_orthogonality_holds();
        if holds {
            return LawVerdict { law: Law::Flexible, holds: true, witness: Vec::new() };
        }
        LawVerdict {
            law: Law::Flexible,
            holds: false,
            witness: self.flexible_witness(),
        }
    }

    fn gram_symmetric(&self) -> bool {
        let m = self.im_dim();
        (0..m).all(|i| (i + 1..m).all(|j| self.gram[(i, j)] == self.gram[(j, i)]))
    }

    fn cross_orthogonality_holds(&self) -> bool {
        let m = self.im_dim();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let mut acc = self.field().zero();
                    for l in 0..m {
                        acc = acc
                            + self.cross[j][k][l].clone() * &self.gram[(i, l)]
                            + self.cross[i][k][l].clone() * &self.gram[(j, l)];
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A concrete flexible-law violation in the algebra, found by scanning
    /// the (1, u_1..u_m) basis; exists whenever the criterion fails.
    fn flexible_witness(&self) -> Vec<Element> {
        let mut basis = vec![self.algebra.one()];
        basis.extend(self.im_basis.iter().cloned().map(Element::new));
        let mul = |x: &Element, y: &Element| self.algebra.multiply(x, y).unwrap();
        for a in &basis {
            for b in &basis {
                let defect = mul(a, &mul(b, a)).sub(&mul(&mul(a, b), a));
                if !defect.is_zero() {
                    return vec![a.clone(), b.clone()];
                }
            }
        }
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    let lhs = mul(a, &mul(b, c)).add(&mul(c, &mul(b, a)));
                    let rhs = mul(&mul(a, b), c).add(&mul(&mul(c, b), a));
                    if lhs != rhs {
                        return vec![a.add(c), b.clone()];
                    }
                }
            }
        }
        unreachable!("non-flexible algebra must fail a basis triple");
    }

    /// Involutivity is exactly symmetry of the bilinear form.
    pub fn involutive_criterion(&self) -> LawVerdict {
        LawVerdict {
            law: Law::Involutive,
            holds: self.gram_symmetric(),
            witness: Vec::new(),
        }
    }
}

/// Computes the Osborn decomposition of a quadratic algebra, reading the
/// Gram matrix off as the scalar part of u_i u_j and the cross tensor as
/// the Im part.
pub fn decompose(a: &Algebra) -> Result<OsbornData, AlgError> {
    let qb = a.quadratic_structure().map_err(|v| AlgError::NotQuadratic {
        witness: v
            .witness
            .first()
            .map(|e| e.to_string())
            .unwrap_or_default(),
    })?;
    decompose_with_basis(a, qb.im_basis)
}

fn decompose_with_basis(a: &Algebra, im_basis: Vec<Vec<Scalar>>) -> Result<OsbornData, AlgError> {
    let m = im_basis.len();
    let n = a.dim;
    assert_eq!(m + 1, n);
    let mut cols = Mat::zeros(a.field, n, n);
    for k in 0..n {
        cols[(k, 0)] = a.unit[k].clone();
    }
    for (j, u) in im_basis.iter().enumerate() {
        for k in 0..n {
            cols[(k, j + 1)] = u[k].clone();
        }
    }
    let to_decomp = cols.inverse()?;
    let mut gram = Mat::zeros(a.field, m, m);
    let mut cross = vec![vec![vec![a.field.zero(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            let p = a.multiply(&Element::new(im_basis[i].clone()), &Element::new(im_basis[j].clone()))?;
            let c = to_decomp.apply(&p.coords);
            gram[(i, j)] = c[0].clone();
            for k in 0..m {
                cross[i][j][k] = c[k + 1].clone();
            }
        }
    }
    Ok(OsbornData {
        algebra: a.clone(),
        im_basis,
        gram,
        cross,
        to_decomp,
    })
}

/// Builds the (1+m)-dimensional unital algebra with multiplication
/// (alpha, u)(beta, v) = (alpha*beta + (u,v), alpha*v + beta*u + u x v)
/// from a Gram matrix and an anticommutative cross tensor.
pub fn build_from_osborn(
    field: FieldDesc,
    gram: &Mat,
    cross: &[Vec<Vec<Scalar>>],
) -> Result<Algebra, AlgError> {
    let m = gram.rows;
    if gram.cols != m || cross.len() != m
        || cross.iter().any(|r| r.len() != m || r.iter().any(|v| v.len() != m))
    {
        return Err(AlgError::Invalid("gram/cross shape mismatch".into()));
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let anti = cross[i][j][k].clone() + cross[j][i][k].clone();
                if !anti.is_zero() {
                    return Err(AlgError::Invalid(format!(
                        "cross tensor is not anticommutative at ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    let n = m + 1;
    let mut mul = vec![vec![vec![field.zero(); n]; n]; n];
    for k in 0..n {
        mul[0][k][k] = field.one();
        mul[k][0][k] = field.one();
    }
    mul[0][0] = {
        let mut v = vec![field.zero(); n];
        v[0] = field.one();
        v
    };
    for i in 0..m {
        for j in 0..m {
            let mut v = vec![field.zero(); n];
            v[0] = gram[(i, j)].clone();
            for k in 0..m {
                v[k + 1] = cross[i][j][k].clone();
            }
            mul[i + 1][j + 1] = v;
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let names = std::iter::once("1".to_string())
        .chain((1..n).map(|i| format!("u{i}")))
        .collect();
    Algebra::new(field, n, mul, unit, Some(names))
}

/// Per-element identity checks on a decomposed algebra:
/// (i) a^2 - tr(a)a + n(a).1 = 0 on basis elements and random samples;
/// (ii) when the form is symmetric, conj(ab) - ba = tr(a)tr(b).1 - tr(a)b - tr(b)a
/// on basis pairs and random pairs.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub checks_run: usize,
    pub involutive_identity_checked: bool,
    pub first_failure: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn identity_suite<R: Rng>(data: &OsbornData, samples: usize, rng: &mut R) -> IdentityReport {
    let a = &data.algebra;
    let mut pool: Vec<Element> = (0..a.dim).map(|i| a.basis_element(i)).collect();
    for _ in 0..samples {
        pool.push(crate::sample::random_element(a.field, a.dim, rng));
    }
    let mut checks = 0;
    let mut first_failure = None;
    for x in &pool {
        checks += 1;
        let iv = data.involution_values(x);
        let lhs = a
            .multiply(x, x)
            .unwrap()
            .sub(&x.scale(&iv.trace))
            .add(&a.from_scalar(&iv.norm));
        if !lhs.is_zero() && first_failure.is_none() {
            first_failure = Some(format!("quadratic relation fails for {x}"));
        }
        // the defining involution identities
        if x.add(&iv.conj) != a.from_scalar(&iv.trace) && first_failure.is_none() {
            first_failure = Some(format!("a + conj(a) != tr(a).1 for {x}"));
        }
    }
    let involutive = data.involutive_criterion().holds;
    if involutive {
        let pairs: Vec<(Element, Element)> = {
            let mut v = Vec::new();
            for i in 0..a.dim {
                for j in 0..a.dim {
                    v.push((a.basis_element(i), a.basis_element(j)));
                }
            }
            for _ in 0..samples {
                v.push((
                    crate::sample::random_element(a.field, a.dim, rng),
                    crate::sample::random_element(a.field, a.dim, rng),
                ));
            }
            v
        };
        for (x, y) in &pairs {
            checks += 1;
            let ix = data.involution_values(x);
            let iy = data.involution_values(y);
            let ab = a.multiply(x, y).unwrap();
            let ba = a.multiply(y, x).unwrap();
            let lhs = data.involution_values(&ab).conj.sub(&ba);
            let rhs = a
                .from_scalar(&(ix.trace.clone() * &iy.trace))
                .sub(&y.scale(&ix.trace))
                .sub(&x.scale(&iy.trace));
            if lhs != rhs && first_failure.is_none() {
                first_failure = Some(format!(
                    "conjugation identity fails for pair ({x}, {y})"
                ));
            }
        }
    }
    IdentityReport {
        checks_run: checks,
        involutive_identity_checked: involutive,
        first_failure,
    }
}
