//! Builders for the concrete algebras used throughout: the Cayley-Dickson
//! doubling and the standard tower, the split Hurwitz algebras in dimensions
//! 2, 4 and 8, the split quaternions H and the upper-triangular algebra U,
//! the two 5- and 3-dimensional counterexample algebras, and brute-force
//! searched 3-dimensional division algebras over F_p.

use crate::algebra::{Algebra, Element, Law};
use crate::decide;
use crate::error::AlgError;
use crate::linalg::{self, Mat};
use crate::osborn;
use crate::scalar::{FieldDesc, Scalar};

/// An algebra together with a linear involution a -> conj(a) that is an
/// anti-automorphism with scalar trace a + conj(a) and norm a * conj(a).
#[derive(Debug, Clone)]
pub struct InvolutiveAlgebra {
    pub algebra: Algebra,
    pub conj: Mat,
}

impl InvolutiveAlgebra {
    pub fn new(algebra: Algebra, conj: Mat) -> Result<InvolutiveAlgebra, AlgError> {
        let x = InvolutiveAlgebra { algebra, conj };
        x.validate()?;
        Ok(x)
    }

    /// Checks the involution invariants exactly on the basis: conj^2 = id,
    /// conj(1) = 1, anti-automorphism on basis pairs, and scalar trace and
    /// norm for every basis element. All four extend linearly /
    /// bilinearly, so the basis checks settle the general case.
    pub fn validate(&self) -> Result<(), AlgError> {
        let a = &self.algebra;
        let n = a.dim;
        if self.conj.rows != n || self.conj.cols != n {
            return Err(AlgError::Invalid("conjugation matrix shape mismatch".into()));
        }
        if self.conj.matmul(&self.conj) != Mat::identity(a.field, n) {
            return Err(AlgError::Invalid("conjugation is not an involution".into()));
        }
        if self.conj_element(&a.one()) != a.one() {
            return Err(AlgError::Invalid("conjugation does not fix the unit".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let ei = a.basis_element(i);
                let ej = a.basis_element(j);
                let lhs = self.conj_element(&a.multiply(&ei, &ej)?);
                let rhs = a.multiply(&self.conj_element(&ej), &self.conj_element(&ei))?;
                if lhs != rhs {
                    return Err(AlgError::Invalid(format!(
                        "conjugation is not an anti-automorphism at basis pair ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            let e = a.basis_element(i);
            let tr = e.add(&self.conj_element(&e));
            let nm = a.multiply(&e, &self.conj_element(&e))?;
            if linalg::coords_in_span(a.field, &[a.unit.clone()], &tr.coords).is_none()
                || linalg::coords_in_span(a.field, &[a.unit.clone()], &nm.coords).is_none()
            {
                return Err(AlgError::Invalid(format!(
                    "trace or norm of basis element {i} is not scalar"
                )));
            }
        }
        Ok(())
    }

    pub fn conj_element(&self, x: &Element) -> Element {
        Element::new(self.conj.apply(&x.coords))
    }

    pub fn trace(&self, x: &Element) -> Scalar {
        let t = x.add(&self.conj_element(x));
        linalg::coords_in_span(self.algebra.field, &[self.algebra.unit.clone()], &t.coords)
            .expect("trace is scalar for a valid involution")[0]
            .clone()
    }

    pub fn norm(&self, x: &Element) -> Scalar {
        let n = self
            .algebra
            .multiply(x, &self.conj_element(x))
            .expect("element belongs to the algebra");
        linalg::coords_in_span(self.algebra.field, &[self.algebra.unit.clone()], &n.coords)
            .expect("norm is scalar for a valid involution")[0]
            .clone()
    }
}

/// One Cayley-Dickson doubling step:
/// (a,b)(c,d) = (ac - d*conj(b), conj(a)*d + c*b), conj(a,b) = (conj(a), -b).
pub fn cayley_dickson_double(x: &InvolutiveAlgebra) -> Result<InvolutiveAlgebra, AlgError> {
    x.validate()?;
    let a = &x.algebra;
    let n = a.dim;
    let f = a.field;
    let dim = 2 * n;
    let pair_mul = |p1: (&Element, &Element), p2: (&Element, &Element)| -> (Element, Element) {
        let (a1, b1) = p1;
        let (c1, d1) = p2;
        let first = a
            .multiply(a1, c1)
            .unwrap()
            .sub(&a.multiply(d1, &x.conj_element(b1)).unwrap());
        let second = a
            .multiply(&x.conj_element(a1), d1)
            .unwrap()
            .add(&a.multiply(c1, b1).unwrap());
        (first, second)
    };
    let basis_pair = |i: usize| -> (Element, Element) {
        if i < n {
            (a.basis_element(i), a.zero())
        } else {
            (a.zero(), a.basis_element(i - n))
        }
    };
    let mut mul = vec![vec![vec![f.zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let (p, q) = basis_pair(i);
            let (r, s) = basis_pair(j);
            let (lo, hi) = pair_mul((&p, &q), (&r, &s));
            for k in 0..n {
                mul[i][j][k] = lo.coords[k].clone();
                mul[i][j][n + k] = hi.coords[k].clone();
            }
        }
    }
    let mut unit = vec![f.zero(); dim];
    unit[..n].clone_from_slice(&a.unit);
    let doubled = Algebra::new(f, dim, mul, unit, None)?;
    let mut conj = Mat::zeros(f, dim, dim);
    for i in 0..n {
        for j in 0..n {
            conj[(i, j)] = x.conj[(i, j)].clone();
        }
        conj[(n + i, n + i)] = -f.one();
    }
    InvolutiveAlgebra::new(doubled, conj)
}

/// The standard Cayley-Dickson tower: level 0 is the ground field with
/// trivial conjugation, each level doubles. Levels above 4 (dimension 16)
/// are out of budget.
pub fn standard_tower(level: usize, field: FieldDesc) -> Result<InvolutiveAlgebra, AlgError> {
    if level > 4 {
        return Err(AlgError::BudgetExceeded(format!(
            "tower level {level} exceeds the dimension-16 budget"
        )));
    }
    let base = Algebra::new(
        field,
        1,
        vec![vec![vec![field.one()]]],
        vec![field.one()],
        None,
    )?;
    let mut x = InvolutiveAlgebra::new(base, Mat::identity(field, 1))?;
    for _ in 0..level {
        x = cayley_dickson_double(&x)?;
    }
    Ok(x)
}

fn table_algebra(
    field: FieldDesc,
    names: &[&str],
    table: &[&[(usize, i64)]],
) -> Result<Algebra, AlgError> {
    let n = names.len();
    let mut mul = vec![vec![vec![field.zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in table[i * n + j] {
                mul[i][j][k] = field.from_i64(c);
            }
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    Algebra::new(
        field,
        n,
        mul,
        unit,
        Some(names.iter().map(|s| s.to_string()).collect()),
    )
}

fn diag_conj(field: FieldDesc, signs: &[i64]) -> Mat {
    let n = signs.len();
    let mut m = Mat::zeros(field, n, n);
    for (i, &s) in signs.iter().enumerate() {
        m[(i, i)] = field.from_i64(s);
    }
    m
}

/// The split quaternion algebra H with basis (1, i, j, k):
/// i^2 = j^2 = 1, k^2 = -1, ij = k, ji = -k, ik = j, ki = -j, jk = -i, kj = i.
pub fn split_quaternions_table(field: FieldDesc) -> Result<InvolutiveAlgebra, AlgError> {
    let t: &[&[(usize, i64)]] = &[
        &[(0, 1)], &[(1, 1)], &[(2, 1)], &[(3, 1)],
        &[(1, 1)], &[(0, 1)], &[(3, 1)], &[(2, 1)],
        &[(2, 1)], &[(3, -1)], &[(0, 1)], &[(1, -1)],
        &[(3, 1)], &[(2, -1)], &[(1, 1)], &[(0, -1)],
    ];
    let a = table_algebra(field, &["1", "i", "j", "k"], t)?;
    InvolutiveAlgebra::new(a, diag_conj(field, &[1, -1, -1, -1]))
}

/// The 3-dimensional upper-triangular algebra U with basis (1, u, v):
/// u^2 = 0, v^2 = 1, uv = u, vu = -u.
pub fn upper_triangular(field: FieldDesc) -> Result<InvolutiveAlgebra, AlgError> {
    let t: &[&[(usize, i64)]] = &[
        &[(0, 1)], &[(1, 1)], &[(2, 1)],
        &[(1, 1)], &[], &[(1, 1)],
        &[(2, 1)], &[(1, -1)], &[(0, 1)],
    ];
    let a = table_algebra(field, &["1", "u", "v"], t)?;
    InvolutiveAlgebra::new(a, diag_conj(field, &[1, -1, -1]))
}

/// Split Hurwitz algebra of dimension 2, 4 or 8: F x F with the swap
/// involution, the split quaternions, or the Zorn vector matrices.
pub fn split_hurwitz(d: usize, field: FieldDesc) -> Result<InvolutiveAlgebra, AlgError> {
    match d {
        2 => {
            let f = field;
            let mut mul = vec![vec![vec![f.zero(); 2]; 2]; 2];
            mul[0][0][0] = f.one();
            mul[1][1][1] = f.one();
            let unit = vec![f.one(), f.one()];
            let a = Algebra::new(f, 2, mul, unit, Some(vec!["e1".into(), "e2".into()]))?;
            let mut conj = Mat::zeros(f, 2, 2);
            conj[(0, 1)] = f.one();
            conj[(1, 0)] = f.one();
            InvolutiveAlgebra::new(a, conj)
        }
        4 => split_quaternions_table(field),
        8 => zorn_vector_matrices(field),
        _ => Err(AlgError::Invalid(format!(
            "split Hurwitz algebras exist only in dimensions 2, 4, 8 (got {d})"
        ))),
    }
}

/// Zorn vector matrices: elements (a, x, y, b) with scalars a, b and
/// 3-vectors x, y, coordinates ordered (a, x1, x2, x3, y1, y2, y3, b).
/// Product:
/// (a1,x1,y1,b1)(a2,x2,y2,b2)
///   = (a1 a2 + x1.y2, a1 x2 + b2 x1 - y1 ^ y2, a2 y1 + b1 y2 + x1 ^ x2,
///      b1 b2 + y1.x2)
/// with ^ the 3-space cross product; conj(a,x,y,b) = (b,-x,-y,a).
/// The sign convention is validated by a mandatory alternativity and
/// norm-multiplicativity self-check.
pub fn zorn_vector_matrices(field: FieldDesc) -> Result<InvolutiveAlgebra, AlgError> {
    let f = field;
    let dot = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        x.iter()
            .zip(y)
            .fold(f.zero(), |acc, (a, b)| acc + a.clone() * b)
    };
    let cross3 = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        vec![
            x[1].clone() * &y[2] - x[2].clone() * &y[1],
            x[2].clone() * &y[0] - x[0].clone() * &y[2],
            x[0].clone() * &y[1] - x[1].clone() * &y[0],
        ]
    };
    let product = |p: &[Scalar], q: &[Scalar]| -> Vec<Scalar> {
        let (a1, x1, y1, b1) = (&p[0], &p[1..4], &p[4..7], &p[7]);
        let (a2, x2, y2, b2) = (&q[0], &q[1..4], &q[4..7], &q[7]);
        let mut out = Vec::with_capacity(8);
        out.push(a1.clone() * a2 + dot(x1, y2));
        let yy = cross3(y1, y2);
        for t in 0..3 {
            out.push(a1.clone() * &x2[t] + b2.clone() * &x1[t] - yy[t].clone());
        }
        let xx = cross3(x1, x2);
        for t in 0..3 {
            out.push(a2.clone() * &y1[t] + b1.clone() * &y2[t] + xx[t].clone());
        }
        out.push(b1.clone() * b2 + dot(y1, x2));
        out
    };
    let mut mul = vec![vec![vec![f.zero(); 8]; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let mut p = vec![f.zero(); 8];
            p[i] = f.one();
            let mut q = vec![f.zero(); 8];
            q[j] = f.one();
            mul[i][j] = product(&p, &q);
        }
    }
    let mut unit = vec![f.zero(); 8];
    unit[0] = f.one();
    unit[7] = f.one();
    let names = vec!["a", "x1", "x2", "x3", "y1", "y2", "y3", "b"]
        .into_iter()
        .map(String::from)
        .collect();
    let a = Algebra::new(f, 8, mul, unit, Some(names))?;
    let mut conj = Mat::zeros(f, 8, 8);
    conj[(0, 7)] = f.one();
    conj[(7, 0)] = f.one();
    for i in 1..7 {
        conj[(i, i)] = -f.one();
    }
    let x = InvolutiveAlgebra::new(a, conj)?;
    // self-check: a sign slip in the cross-product convention would break
    // alternativity or norm multiplicativity
    if !x.algebra.check_law(Law::Alternative).holds {
        return Err(AlgError::Invalid(
            "Zorn construction self-check failed: not alternative".into(),
        ));
    }
    for i in 0..8 {
        for j in 0..8 {
            let ei = x.algebra.basis_element(i);
            let ej = x.algebra.basis_element(j);
            let nprod = x.norm(&x.algebra.multiply(&ei, &ej)?);
            if nprod != x.norm(&ei) * &x.norm(&ej) {
                return Err(AlgError::Invalid(
                    "Zorn construction self-check failed: norm not multiplicative".into(),
                ));
            }
        }
    }
    Ok(x)
}

/// The 5-dimensional algebra H (+) F.l with l.(Im H) = (Im H).l = 0 and
/// l^2 = -1, in the basis (1, i, j, k, l). Flexible and quadratic with
/// non-degenerate norm, yet neither von-Neumann finite nor reversible.
pub fn example_52(field: FieldDesc) -> Result<InvolutiveAlgebra, AlgError> {
    let h = split_quaternions_table(field)?;
    let f = field;
    let mut mul = vec![vec![vec![f.zero(); 5]; 5]; 5];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                mul[i][j][k] = h.algebra.mul[i][j][k].clone();
            }
        }
    }
    // l * 1 = 1 * l = l; l annihilates Im H; l^2 = -1
    mul[0][4][4] = f.one();
    mul[4][0][4] = f.one();
    mul[4][4][0] = -f.one();
    let mut unit = vec![f.zero(); 5];
    unit[0] = f.one();
    let names = vec!["1", "i", "j", "k", "l"].into_iter().map(String::from).collect();
    let a = Algebra::new(f, 5, mul, unit, Some(names))?;
    InvolutiveAlgebra::new(a, diag_conj(f, &[1, -1, -1, -1, -1]))
}

/// The elements x = i + l and y = j + k of `example_52`.
pub fn example_52_xy(a: &Algebra) -> (Element, Element) {
    let f = a.field;
    let x = Element::new(vec![f.zero(), f.one(), f.zero(), f.zero(), f.one()]);
    let y = Element::new(vec![f.zero(), f.zero(), f.one(), f.one(), f.zero()]);
    (x, y)
}

/// The 3-dimensional quadratic algebra with orthogonal Im-basis (u, v),
/// (u,u) = q_u, (v,v) = q_v and u x v = u, built through the Osborn
/// multiplication formula. With the default q_u = q_v = -1 over Q the norm
/// alpha^2 - q(x) is positive definite, hence anisotropic.
pub fn example_53(
    field: FieldDesc,
    q_u: &Scalar,
    q_v: &Scalar,
) -> Result<InvolutiveAlgebra, AlgError> {
    let mut gram = Mat::zeros(field, 2, 2);
    gram[(0, 0)] = q_u.clone();
    gram[(1, 1)] = q_v.clone();
    let mut cross = vec![vec![vec![field.zero(); 2]; 2]; 2];
    cross[0][1][0] = field.one();
    cross[1][0][0] = -field.one();
    let a = osborn::build_from_osborn(field, &gram, &cross)?;
    InvolutiveAlgebra::new(a, diag_conj(field, &[1, -1, -1]))
}

// --- twisted-field search ------------------------------------------------

/// F_{p^3} = F_p[t]/(f) with f monic cubic, elements as coefficient
/// triples (c0, c1, c2) for c0 + c1 t + c2 t^2.
#[derive(Clone, Copy)]
struct CubicExt {
    p: u64,
    /// coefficients f0, f1, f2 of f = t^3 + f2 t^2 + f1 t + f0
    f: [u64; 3],
}

impl CubicExt {
    fn mul(&self, a: [u64; 3], b: [u64; 3]) -> [u64; 3] {
        let p = self.p;
        let mut raw = [0u64; 5];
        for i in 0..3 {
            for j in 0..3 {
                raw[i + j] = (raw[i + j] + a[i] * b[j]) % p;
            }
        }
        // reduce t^(3+k) = -(f2 t^(2+k) + f1 t^(1+k) + f0 t^k)
        for deg in (3..5).rev() {
            let c = raw[deg];
            if c == 0 {
                continue;
            }
            raw[deg] = 0;
            for (off, fc) in self.f.iter().enumerate() {
                let idx = deg - 3 + off;
                raw[idx] = (raw[idx] + p * p - (c * fc) % p) % p;
            }
        }
        [raw[0], raw[1], raw[2]]
    }

    fn pow(&self, a: [u64; 3], mut e: u64) -> [u64; 3] {
        let mut acc = [1, 0, 0];
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Lexicographically first monic irreducible cubics over F_p (a monic cubic
/// is irreducible iff it has no root).
fn irreducible_cubics(p: u64) -> impl Iterator<Item = [u64; 3]> {
    (0..p * p * p).filter_map(move |idx| {
        let f2 = idx / (p * p);
        let f1 = (idx / p) % p;
        let f0 = idx % p;
        let has_root = (0..p).any(|t| {
            (((t * t % p) * t + f2 * (t * t % p) + f1 * t + f0) % p) == 0
        });
        if has_root {
            None
        } else {
            Some([f0, f1, f2])
        }
    })
}

/// Brute-force search for a 3-dimensional non-commutative non-quadratic
/// division algebra over F_p, realized as a unitalized twisted-field
/// isotope x o y = xy - c x^p y^(p^2) over F_{p^3}. Every returned algebra
/// is re-verified exhaustively: division, non-commutative, non-quadratic.
pub fn search_division_3d(p: u32) -> Result<Algebra, AlgError> {
    let field = FieldDesc::prime(p)?;
    let pu = p as u64;
    if pu * pu * pu > 1_000_000 {
        return Err(AlgError::BudgetExceeded(format!(
            "p^3 = {} exceeds the exhaustive verification budget",
            pu * pu * pu
        )));
    }
    for f in irreducible_cubics(pu) {
        let ext = CubicExt { p: pu, f };
        let basis: [[u64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let frob_p: Vec<[u64; 3]> = basis.iter().map(|&b| ext.pow(b, pu)).collect();
        let frob_p2: Vec<[u64; 3]> = basis.iter().map(|&b| ext.pow(b, pu * pu)).collect();
        for c_idx in 0..pu * pu * pu {
            let c = [c_idx % pu, (c_idx / pu) % pu, c_idx / (pu * pu)];
            // structure constants of x o y = xy - c x^p y^(p^2)
            let mut circ = vec![vec![vec![field.zero(); 3]; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let plain = ext.mul(basis[i], basis[j]);
                    let twist = ext.mul(c, ext.mul(frob_p[i], frob_p2[j]));
                    for k in 0..3 {
                        circ[i][j][k] = field.from_i64(plain[k] as i64)
                            - field.from_i64(twist[k] as i64);
                    }
                }
            }
            if let Some(a) = try_unitalize_division(field, &circ) {
                return Ok(a);
            }
        }
    }
    Err(AlgError::SearchExhausted(format!(
        "no twisted-field division algebra found for p = {p}"
    )))
}

/// Checks the (possibly non-unital) product for zero divisors, unitalizes
/// by the isotope a * b = (R_e^-1 a) o (L_e^-1 b) with e = 1 and unit e o e,
/// then re-verifies division, non-commutativity and non-quadraticity
/// exhaustively. Returns None if any stage fails.
fn try_unitalize_division(field: FieldDesc, circ: &[Vec<Vec<Scalar>>]) -> Option<Algebra> {
    let FieldDesc::Prime(p) = field else { return None };
    let p = p as u64;
    let circ_mul = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero(); 3];
        for i in 0..3 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].clone() * &y[j];
                for k in 0..3 {
                    out[k] = out[k].clone() + c.clone() * &circ[i][j][k];
                }
            }
        }
        out
    };
    // zero-divisor scan of the raw product
    for idx in 1..p * p * p {
        let x = crate::algebra::element_at(field, 3, idx);
        let mut l = Mat::zeros(field, 3, 3);
        for j in 0..3 {
            let mut ej = vec![field.zero(); 3];
            ej[j] = field.one();
            let col = circ_mul(&x.coords, &ej);
            for k in 0..3 {
                l[(k, j)] = col[k].clone();
            }
        }
        if !l.is_invertible() {
            return None;
        }
    }
    // unitalize at e = 1 of the extension field
    let e = vec![field.one(), field.zero(), field.zero()];
    let mut left_e = Mat::zeros(field, 3, 3);
    let mut right_e = Mat::zeros(field, 3, 3);
    for j in 0..3 {
        let mut ej = vec![field.zero(); 3];
        ej[j] = field.one();
        let lc = circ_mul(&e, &ej);
        let rc = circ_mul(&ej, &e);
        for k in 0..3 {
            left_e[(k, j)] = lc[k].clone();
            right_e[(k, j)] = rc[k].clone();
        }
    }
    let left_inv = left_e.inverse().ok()?;
    let right_inv = right_e.inverse().ok()?;
    let mut mul = vec![vec![vec![field.zero(); 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut ei = vec![field.zero(); 3];
            ei[i] = field.one();
            let mut ej = vec![field.zero(); 3];
            ej[j] = field.one();
            mul[i][j] = circ_mul(&right_inv.apply(&ei), &left_inv.apply(&ej));
        }
    }
    let unit = circ_mul(&e, &e);
    let a = Algebra::new(field, 3, mul, unit, None).ok()?;
    // re-verify all three properties on the unitalized algebra
    let nzd = decide::no_zero_divisors(&a, decide::DEFAULT_ORACLE_BUDGET).ok()?;
    if nzd.status != decide::Status::Yes {
        return None;
    }
    if a.check_law(Law::Commutative).holds || a.is_quadratic().holds {
        return None;
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{self, IsotropyStatus};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Scalar {
        FieldDesc::Rational.from_i64(n)
    }

    #[test]
    fn double_rationals_gives_imaginary_unit() {
        let a0 = standard_tower(0, FieldDesc::Rational).unwrap();
        let a1 = cayley_dickson_double(&a0).unwrap();
        let im = a1.algebra.basis_element(1);
        let sq = a1.algebra.multiply(&im, &im).unwrap();
        assert_eq!(sq, a1.algebra.one().neg());
    }

    #[test]
    fn tower_laws_by_level() {
        let a2 = standard_tower(2, FieldDesc::Rational).unwrap();
        assert!(a2.algebra.check_law(Law::Associative).holds);
        assert!(!a2.algebra.check_law(Law::Commutative).holds);
        let a3 = standard_tower(3, FieldDesc::Rational).unwrap();
        assert!(a3.algebra.check_law(Law::Alternative).holds);
        assert!(!a3.algebra.check_law(Law::Associative).holds);
        assert!(standard_tower(5, FieldDesc::Rational).is_err());
    }

    #[test]
    fn tower_norm_is_sum_of_squares() {
        let a2 = standard_tower(2, FieldDesc::Rational).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = crate::sample::random_element(FieldDesc::Rational, 4, &mut rng);
            let expected = x
                .coords
                .iter()
                .fold(q(0), |acc, c| acc + c.clone() * c);
            assert_eq!(a2.norm(&x), expected);
        }
    }

    #[test]
    fn norm_additivity_under_doubling() {
        let a2 = standard_tower(2, FieldDesc::Rational).unwrap();
        let a3 = cayley_dickson_double(&a2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let lo = crate::sample::random_element(FieldDesc::Rational, 4, &mut rng);
            let hi = crate::sample::random_element(FieldDesc::Rational, 4, &mut rng);
            let mut coords = lo.coords.clone();
            coords.extend(hi.coords.clone());
            let pair = Element::new(coords);
            assert_eq!(a3.norm(&pair), a2.norm(&lo) + a2.norm(&hi));
        }
    }

    #[test]
    fn h_table_cells() {
        let h = split_quaternions_table(FieldDesc::Rational).unwrap();
        let a = &h.algebra;
        let e = |i: usize| a.basis_element(i);
        // j*k = -i, k*k = -1
        assert_eq!(a.multiply(&e(2), &e(3)).unwrap(), e(1).neg());
        assert_eq!(a.multiply(&e(3), &e(3)).unwrap(), a.one().neg());
    }

    #[test]
    fn h_norm_multiplicative_on_basis() {
        let h = split_quaternions_table(FieldDesc::Rational).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let ei = h.algebra.basis_element(i);
                let ej = h.algebra.basis_element(j);
                let p = h.algebra.multiply(&ei, &ej).unwrap();
                assert_eq!(h.norm(&p), h.norm(&ei) * &h.norm(&ej));
            }
        }
    }

    #[test]
    fn u_table_cells() {
        let uu = upper_triangular(FieldDesc::Rational).unwrap();
        let a = &uu.algebra;
        let u = a.basis_element(1);
        let v = a.basis_element(2);
        assert_eq!(a.multiply(&u, &v).unwrap(), u);
        // (1+v)u = 0 and u(1+v) = 2u
        let one_plus_v = a.one().add(&v);
        assert!(a.multiply(&one_plus_v, &u).unwrap().is_zero());
        assert_eq!(a.multiply(&u, &one_plus_v).unwrap(), u.scale(&q(2)));
    }

    #[test]
    fn hurwitz_dim2() {
        let f3 = FieldDesc::prime(3).unwrap();
        let d2 = split_hurwitz(2, f3).unwrap();
        let a = &d2.algebra;
        let p = a.multiply(&a.basis_element(0), &a.basis_element(1)).unwrap();
        assert!(p.is_zero());
        assert!(d2.norm(&a.basis_element(0)).is_zero()); // isotropic norm
        assert!(split_hurwitz(3, f3).is_err());
    }

    #[test]
    fn hurwitz_dim8_zorn() {
        let f3 = FieldDesc::prime(3).unwrap();
        let z = zorn_vector_matrices(f3).unwrap();
        assert!(z.algebra.check_law(Law::Alternative).holds);
        assert!(!z.algebra.check_law(Law::Associative).holds);
    }

    #[test]
    fn example_52_products() {
        let ex = example_52(FieldDesc::Rational).unwrap();
        let a = &ex.algebra;
        let (x, y) = example_52_xy(a);
        assert_eq!(a.multiply(&x, &y).unwrap(), y);
        assert_eq!(a.multiply(&y, &x).unwrap(), y.neg());
        assert!(a.multiply(&x, &x).unwrap().is_zero());
        // (1-x-y)(1+x-y) = 1; the reverse product is 1 + c*y with c = +-4
        let lhs = a.one().sub(&x).sub(&y);
        let rhs = a.one().add(&x).sub(&y);
        assert_eq!(a.multiply(&lhs, &rhs).unwrap(), a.one());
        let rev = a.multiply(&rhs, &lhs).unwrap();
        let diff = rev.sub(&a.one());
        assert!(!diff.is_zero());
        assert!(diff == y.scale(&q(4)) || diff == y.scale(&q(-4)));
    }

    #[test]
    fn example_52_flexible_nondegenerate() {
        let ex = example_52(FieldDesc::Rational).unwrap();
        let d = crate::osborn::decompose(&ex.algebra).unwrap();
        assert!(d.flexible_criterion().holds);
        let nf = forms::norm_form(&d);
        let (_, nondeg) = nf.radical();
        assert!(nondeg);
        // span{1, x, y} is a closed non-commutative subalgebra
        let (x, y) = example_52_xy(&ex.algebra);
        assert!(ex.algebra.span_is_subalgebra(&x, &y));
        let closure = ex.algebra.subalgebra_closure(&[x.clone(), y.clone()]);
        assert_eq!(closure.len(), 3);
        // x^2 y = 0 but x(xy) = y
        let xy = ex.algebra.multiply(&x, &y).unwrap();
        assert_eq!(ex.algebra.multiply(&x, &xy).unwrap(), y);
        let x2 = ex.algebra.multiply(&x, &x).unwrap();
        assert!(ex.algebra.multiply(&x2, &y).unwrap().is_zero());
    }

    #[test]
    fn example_53_products() {
        let minus_one = q(-1);
        let ex = example_53(FieldDesc::Rational, &minus_one, &minus_one).unwrap();
        let a = &ex.algebra;
        let u = a.basis_element(1);
        let v = a.basis_element(2);
        // (0,u)(-1,v) = 0 but (-1,v)(0,u) = (0,-2u)
        let b = v.sub(&a.one());
        assert!(a.multiply(&u, &b).unwrap().is_zero());
        assert_eq!(a.multiply(&b, &u).unwrap(), u.scale(&q(-2)));
        // (0,u)(-1,u+v) = -n(u).1 = q_u.1
        let c = u.add(&v).sub(&a.one());
        assert_eq!(a.multiply(&u, &c).unwrap(), a.from_scalar(&minus_one));
    }

    #[test]
    fn example_53_criteria() {
        let minus_one = q(-1);
        let ex = example_53(FieldDesc::Rational, &minus_one, &minus_one).unwrap();
        let d = crate::osborn::decompose(&ex.algebra).unwrap();
        assert!(!d.flexible_criterion().holds);
        assert!(d.involutive_criterion().holds);
        let nf = forms::norm_form(&d);
        assert_eq!(nf.isotropy(10).status, IsotropyStatus::Anisotropic);
    }

    #[test]
    fn division_3d_over_f3() {
        let a = search_division_3d(3).unwrap();
        assert_eq!(a.dim, 3);
        let nzd = decide::no_zero_divisors(&a, 100_000).unwrap();
        assert_eq!(nzd.status, decide::Status::Yes);
        assert!(!a.check_law(Law::Commutative).holds);
        assert!(!a.is_quadratic().holds);
        assert!(search_division_3d(101).is_err()); // budget
    }
}
