//! Decision procedures for von-Neumann finiteness (ab = 1 implies ba = 1)
//! and reversibility (ab = 0 implies ba = 0): exhaustive oracles over
//! finite fields, the 3-dimensional-subalgebra criteria for involutive
//! algebras, a fast structural pipeline, bounded witness search over the
//! rationals, and an oracle-vs-criterion fuzz harness.
//!
//! Every No verdict carries a witness pair that is re-verified by direct
//! multiplication when the verdict is constructed, so soundness of negative
//! answers never depends on the decision procedure being correct.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{element_at, Algebra, Element, Law};
use crate::error::AlgError;
use crate::forms::{self, IsotropyStatus};
use crate::linalg::{self, Mat};
use crate::osborn::{self, OsbornData};
use crate::scalar::{FieldDesc, Scalar};

/// Default cap on p^n for exhaustive element enumeration.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Question {
    Vnf,
    Reversible,
    ZeroDivisorFree,
}

impl std::fmt::Display for Question {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Question::Vnf => "vnf",
            Question::Reversible => "reversible",
            Question::ZeroDivisorFree => "zero-divisor-free",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// How a verdict was obtained. `Theorem` carries the name of the structural
/// rule that fired in the fast pipeline; `Fast` marks an honest Unknown
/// from that pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Criterion,
    Theorem(String),
    WitnessSearch,
    Fast,
}

impl Method {
    pub fn name(&self) -> &str {
        match self {
            Method::Oracle => "oracle",
            Method::Criterion => "criterion",
            Method::Theorem(_) => "theorem",
            Method::WitnessSearch => "witness-search",
            Method::Fast => "fast",
        }
    }

    pub fn theorem(&self) -> Option<&str> {
        match self {
            Method::Theorem(n) => Some(n),
            _ => None,
        }
    }
}

/// A violating pair together with both products, replayable without any
/// decision machinery.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub a: Element,
    pub b: Element,
    pub ab: Element,
    pub ba: Element,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub question: Question,
    pub status: Status,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes(question: Question, method: Method) -> Verdict {
        Verdict { question, status: Status::Yes, method, witness: None }
    }

    pub fn unknown(question: Question, method: Method) -> Verdict {
        Verdict { question, status: Status::Unknown, method, witness: None }
    }

    /// No for VNF; asserts ab = 1 and ba != 1.
    pub fn no_vnf(alg: &Algebra, a: Element, b: Element, method: Method) -> Verdict {
        let ab = alg.multiply(&a, &b).expect("witness has the right dimension");
        let ba = alg.multiply(&b, &a).expect("witness has the right dimension");
        assert_eq!(ab, alg.one(), "VNF witness must satisfy ab = 1");
        assert_ne!(ba, alg.one(), "VNF witness must satisfy ba != 1");
        Verdict {
            question: Question::Vnf,
            status: Status::No,
            method,
            witness: Some(Witness { a, b, ab, ba }),
        }
    }

    /// No for reversibility; asserts ab = 0, a != 0 != b, ba != 0.
    pub fn no_reversible(alg: &Algebra, a: Element, b: Element, method: Method) -> Verdict {
        let ab = alg.multiply(&a, &b).expect("witness has the right dimension");
        let ba = alg.multiply(&b, &a).expect("witness has the right dimension");
        assert!(ab.is_zero(), "reversibility witness must satisfy ab = 0");
        assert!(!a.is_zero() && !b.is_zero(), "reversibility witness must be nonzero");
        assert!(!ba.is_zero(), "reversibility witness must satisfy ba != 0");
        Verdict {
            question: Question::Reversible,
            status: Status::No,
            method,
            witness: Some(Witness { a, b, ab, ba }),
        }
    }

    /// No for zero-divisor freeness; asserts ab = 0 with a, b nonzero.
    pub fn no_zero_divisor_free(alg: &Algebra, a: Element, b: Element, method: Method) -> Verdict {
        let ab = alg.multiply(&a, &b).expect("witness has the right dimension");
        let ba = alg.multiply(&b, &a).expect("witness has the right dimension");
        assert!(ab.is_zero(), "zero-divisor witness must satisfy ab = 0");
        assert!(!a.is_zero() && !b.is_zero(), "zero-divisor witness must be nonzero");
        Verdict {
            question: Question::ZeroDivisorFree,
            status: Status::No,
            method,
            witness: Some(Witness { a, b, ab, ba }),
        }
    }
}

/// Checks the field and the p^n enumeration budget; returns (p, p^n).
fn enumeration_size(a: &Algebra, budget: u64) -> Result<(u64, u64), AlgError> {
    let FieldDesc::Prime(p) = a.field else {
        return Err(AlgError::WrongField);
    };
    match (p as u64).checked_pow(a.dim as u32) {
        Some(t) if t <= budget => Ok((p as u64, t)),
        _ => Err(AlgError::BudgetExceeded(format!(
            "{p}^{} exceeds the enumeration budget {budget}",
            a.dim
        ))),
    }
}

/// Exhaustive von-Neumann-finiteness oracle over F_p. For each element a
/// (lexicographic order) the one-sided inverses are the affine solution set
/// of L_a b = 1, so the cost is one linear solve per element rather than a
/// quadratic pair scan. The returned witness is the lexicographically
/// minimal one, independent of worker count.
pub fn oracle_vnf(a: &Algebra, budget: u64) -> Result<Verdict, AlgError> {
    let (p, total) = enumeration_size(a, budget)?;
    let one = a.one();
    let hit = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let x = element_at(a.field, a.dim, idx);
            let l = a.left_mul_matrix(&x);
            let particular = l.solve(&one.coords)?;
            let kernel = l.kernel_basis();
            let count = p.pow(kernel.len() as u32);
            for t in 0..count {
                let coeffs = element_at(a.field, kernel.len(), t).coords;
                let mut b = particular.clone();
                for (c, k) in coeffs.iter().zip(&kernel) {
                    b = linalg::vec_add(&b, &linalg::vec_scale(c, k));
                }
                let b = Element::new(b);
                if a.multiply(&b, &x).ok()? != one {
                    return Some((idx, t));
                }
            }
            None
        })
        .min();
    match hit {
        None => Ok(Verdict::yes(Question::Vnf, Method::Oracle)),
        Some((idx, t)) => {
            let x = element_at(a.field, a.dim, idx);
            let l = a.left_mul_matrix(&x);
            let particular = l.solve(&one.coords).expect("replays the found solution");
            let kernel = l.kernel_basis();
            let coeffs = element_at(a.field, kernel.len(), t).coords;
            let mut b = particular;
            for (c, k) in coeffs.iter().zip(&kernel) {
                b = linalg::vec_add(&b, &linalg::vec_scale(c, k));
            }
            Ok(Verdict::no_vnf(a, x, Element::new(b), Method::Oracle))
        }
    }
}

/// Exhaustive reversibility oracle over F_p: for each a != 0, the b with
/// ab = 0 form ker L_a; check ba = 0 on every nonzero kernel element.
pub fn oracle_reversible(a: &Algebra, budget: u64) -> Result<Verdict, AlgError> {
    let (p, total) = enumeration_size(a, budget)?;
    let kernel_elem = |kernel: &[Vec<Scalar>], t: u64| -> Element {
        let coeffs = element_at(a.field, kernel.len(), t).coords;
        let mut b = vec![a.field.zero(); a.dim];
        for (c, k) in coeffs.iter().zip(kernel) {
            b = linalg::vec_add(&b, &linalg::vec_scale(c, k));
        }
        Element::new(b)
    };
    let hit = (1..total)
        .into_par_iter()
        .filter_map(|idx| {
            let x = element_at(a.field, a.dim, idx);
            let kernel = a.left_mul_matrix(&x).kernel_basis();
            if kernel.is_empty() {
                return None;
            }
            let count = p.pow(kernel.len() as u32);
            for t in 1..count {
                let b = kernel_elem(&kernel, t);
                if !a.multiply(&b, &x).ok()?.is_zero() {
                    return Some((idx, t));
                }
            }
            None
        })
        .min();
    match hit {
        None => Ok(Verdict::yes(Question::Reversible, Method::Oracle)),
        Some((idx, t)) => {
            let x = element_at(a.field, a.dim, idx);
            let kernel = a.left_mul_matrix(&x).kernel_basis();
            let b = kernel_elem(&kernel, t);
            Ok(Verdict::no_reversible(a, x, b, Method::Oracle))
        }
    }
}

/// Yes iff L_a is invertible for every a != 0, i.e. no pair ab = 0 with
/// both factors nonzero.
pub fn no_zero_divisors(a: &Algebra, budget: u64) -> Result<Verdict, AlgError> {
    let (_, total) = enumeration_size(a, budget)?;
    let hit = (1..total)
        .into_par_iter()
        .filter_map(|idx| {
            let x = element_at(a.field, a.dim, idx);
            if a.left_mul_matrix(&x).is_invertible() {
                None
            } else {
                Some(idx)
            }
        })
        .min();
    match hit {
        None => Ok(Verdict::yes(Question::ZeroDivisorFree, Method::Oracle)),
        Some(idx) => {
            let x = element_at(a.field, a.dim, idx);
            let kernel = a.left_mul_matrix(&x).kernel_basis();
            let b = Element::new(kernel[0].clone());
            Ok(Verdict::no_zero_divisor_free(a, x, b, Method::Oracle))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubalgebraKind {
    Commutative,
    IsoU,
    Other,
}

/// Classification of a 3-dimensional involutive algebra, with the canonical
/// Im-basis (u, v) in the IsoU case: u^2 = 0, v^2 = 1, uv = u = -vu.
#[derive(Debug, Clone)]
pub struct SubalgebraClass {
    pub kind: SubalgebraKind,
    /// Im-coordinates of the canonical basis (u, v), present unless the
    /// algebra is commutative.
    pub basis: Option<(Vec<Scalar>, Vec<Scalar>)>,
}

/// Classifies a plane with symmetric form `gram` (2x2) and cross product
/// determined by b_0 x b_1 = w (so x y = det(x,y) w on plane coordinates).
///
/// When w != 0 the image of the cross product is the line F.w; the basis
/// (u, v) with u x v = u forces u = w up to scaling and v unique up to
/// v + lambda*u, and under those changes (u,u) = (u,v) = 0 makes (v,v) an
/// invariant. The algebra F.1 (+) plane is then isomorphic to U exactly
/// when (u,u) = 0, (u,v) = 0 and (v,v) = 1.
fn classify_plane(field: FieldDesc, gram: &Mat, w: &[Scalar]) -> SubalgebraClass {
    if linalg::vec_is_zero(w) {
        return SubalgebraClass { kind: SubalgebraKind::Commutative, basis: None };
    }
    let g = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let mut acc = field.zero();
        for i in 0..2 {
            for j in 0..2 {
                if !x[i].is_zero() && !y[j].is_zero() {
                    acc = acc + x[i].clone() * &gram[(i, j)] * &y[j];
                }
            }
        }
        acc
    };
    let u = w.to_vec();
    // v with det(u, v) = 1, so that u x v = u
    let v = if !u[0].is_zero() {
        vec![field.zero(), u[0].invert().unwrap()]
    } else {
        vec![-u[1].invert().unwrap(), field.zero()]
    };
    let guu = g(&u, &u);
    if !guu.is_zero() {
        return SubalgebraClass { kind: SubalgebraKind::Other, basis: Some((u, v)) };
    }
    // (u,u) = 0: v is free up to v + lambda*u, which leaves (u,v) and then
    // (v,v) unchanged, so the remaining values are invariants
    let guv = g(&u, &v);
    if !guv.is_zero() {
        return SubalgebraClass { kind: SubalgebraKind::Other, basis: Some((u, v)) };
    }
    let gvv = g(&v, &v);
    if gvv == field.one() {
        SubalgebraClass { kind: SubalgebraKind::IsoU, basis: Some((u, v)) }
    } else {
        SubalgebraClass { kind: SubalgebraKind::Other, basis: Some((u, v)) }
    }
}

/// Classifies a 3-dimensional involutive algebra as commutative, isomorphic
/// to U, or other, following the constructive normal form u x v = u.
pub fn classify_3dim(data: &OsbornData) -> Result<SubalgebraClass, AlgError> {
    if data.algebra.dim != 3 {
        return Err(AlgError::Invalid(format!(
            "classify_3dim requires dimension 3, got {}",
            data.algebra.dim
        )));
    }
    if !data.involutive_criterion().holds {
        return Err(AlgError::Invalid(
            "classify_3dim requires a symmetric bilinear form".into(),
        ));
    }
    // m = 2: the cross product is determined by u_1 x u_2
    let w = data.cross[0][1].clone();
    Ok(classify_plane(data.field(), &data.gram, &w))
}

/// Canonical (reduced-echelon) bases of all 2-dimensional subspaces of F_p^m,
/// in lexicographic order of pivot pair then free entries.
fn two_subspaces(field: FieldDesc, m: usize) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let FieldDesc::Prime(p) = field else {
        panic!("subspace enumeration requires a prime field")
    };
    let p = p as u64;
    let mut out = Vec::new();
    for c1 in 0..m {
        for c2 in c1 + 1..m {
            let free1: Vec<usize> = (c1 + 1..m).filter(|&c| c != c2).collect();
            let free2: Vec<usize> = (c2 + 1..m).collect();
            let nf = free1.len() + free2.len();
            for idx in 0..p.pow(nf as u32) {
                let vals = element_at(field, nf, idx).coords;
                let mut r1 = vec![field.zero(); m];
                let mut r2 = vec![field.zero(); m];
                r1[c1] = field.one();
                r2[c2] = field.one();
                for (t, &c) in free1.iter().enumerate() {
                    r1[c] = vals[t].clone();
                }
                for (t, &c) in free2.iter().enumerate() {
                    r2[c] = vals[free1.len() + t].clone();
                }
                out.push((r1, r2));
            }
        }
    }
    out
}

/// The 3-dimensional subalgebra F.1 (+) span{b0, b1} as a standalone
/// algebra, together with the coordinate lift of its basis into A. Returns
/// None if the span is not multiplicatively closed.
fn subalgebra_3d(
    data: &OsbornData,
    b0: &[Scalar],
    b1: &[Scalar],
) -> Option<(Algebra, Vec<Vec<Scalar>>)> {
    let a = &data.algebra;
    let field = data.field();
    let zero = field.zero();
    let lift = vec![
        a.unit.clone(),
        data.join(&zero, b0).coords,
        data.join(&zero, b1).coords,
    ];
    let mut mul = vec![vec![vec![field.zero(); 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let p = a
                .multiply(&Element::new(lift[i].clone()), &Element::new(lift[j].clone()))
                .ok()?;
            mul[i][j] = linalg::coords_in_span(field, &lift, &p.coords)?;
        }
    }
    let mut unit = vec![field.zero(); 3];
    unit[0] = field.one();
    let b = Algebra::new(field, 3, mul, unit, None).ok()?;
    Some((b, lift))
}

fn lift_element(lift: &[Vec<Scalar>], e: &Element) -> Element {
    let mut out = vec![lift[0][0].field().zero(); lift[0].len()];
    for (c, basis_vec) in e.coords.iter().zip(lift) {
        out = linalg::vec_add(&out, &linalg::vec_scale(c, basis_vec));
    }
    Element::new(out)
}

fn check_criterion_pre(data: &OsbornData) -> Result<(), AlgError> {
    if !data.field().is_prime_field() {
        return Err(AlgError::WrongField);
    }
    if !data.involutive_criterion().holds {
        return Err(AlgError::Invalid(
            "criterion deciders require a symmetric bilinear form".into(),
        ));
    }
    Ok(())
}

/// Von-Neumann finiteness via the subalgebra criterion: Yes iff every
/// 3-dimensional subalgebra F.1 (+) W (W a cross-closed plane in Im A) is
/// commutative or isomorphic to U. A No verdict is made concrete by running
/// the exhaustive oracle on the offending 3-dimensional subalgebra (p^3
/// elements) and lifting its witness pair back to A.
pub fn criterion_vnf(a: &Algebra, data: &OsbornData) -> Result<Verdict, AlgError> {
    debug_assert_eq!(a.dim, data.algebra.dim);
    check_criterion_pre(data)?;
    let m = data.im_dim();
    for (b0, b1) in two_subspaces(data.field(), m) {
        let w = data.im_cross(&b0, &b1);
        let Some(wc) = linalg::coords_in_span(data.field(), &[b0.clone(), b1.clone()], &w)
        else {
            continue; // not cross-closed, no subalgebra
        };
        let mut gram2 = Mat::zeros(data.field(), 2, 2);
        for (i, x) in [&b0, &b1].into_iter().enumerate() {
            for (j, y) in [&b0, &b1].into_iter().enumerate() {
                gram2[(i, j)] = data.im_form(x, y);
            }
        }
        let class = classify_plane(data.field(), &gram2, &wc);
        if class.kind == SubalgebraKind::Other {
            let (sub, lift) = subalgebra_3d(data, &b0, &b1)
                .expect("cross-closed plane spans a subalgebra");
            let mini = oracle_vnf(&sub, DEFAULT_ORACLE_BUDGET)?;
            let w = mini.witness.ok_or_else(|| {
                AlgError::Invalid(
                    "internal inconsistency: offending subalgebra has no oracle witness"
                        .into(),
                )
            })?;
            return Ok(Verdict::no_vnf(
                a,
                lift_element(&lift, &w.a),
                lift_element(&lift, &w.b),
                Method::Criterion,
            ));
        }
    }
    Ok(Verdict::yes(Question::Vnf, Method::Criterion))
}

/// Reversibility via the subalgebra criterion: Yes iff every cross-closed
/// plane in Im A has identically zero internal cross product (equivalently,
/// every 3-dimensional subalgebra is commutative). A No verdict is realized
/// as an explicit pair ab = 0 != ba by the oracle on the subalgebra.
pub fn criterion_reversible(a: &Algebra, data: &OsbornData) -> Result<Verdict, AlgError> {
    debug_assert_eq!(a.dim, data.algebra.dim);
    check_criterion_pre(data)?;
    let m = data.im_dim();
    for (b0, b1) in two_subspaces(data.field(), m) {
        let w = data.im_cross(&b0, &b1);
        if linalg::vec_is_zero(&w) {
            continue;
        }
        if linalg::coords_in_span(data.field(), &[b0.clone(), b1.clone()], &w).is_none() {
            continue;
        }
        let (sub, lift) =
            subalgebra_3d(data, &b0, &b1).expect("cross-closed plane spans a subalgebra");
        let mini = oracle_reversible(&sub, DEFAULT_ORACLE_BUDGET)?;
        let witness = mini.witness.ok_or_else(|| {
            AlgError::Invalid(
                "internal inconsistency: non-commutative subalgebra has no reversibility witness"
                    .into(),
            )
        })?;
        return Ok(Verdict::no_reversible(
            a,
            lift_element(&lift, &witness.a),
            lift_element(&lift, &witness.b),
            Method::Criterion,
        ));
    }
    Ok(Verdict::yes(Question::Reversible, Method::Criterion))
}

/// Optional externally-established facts for the fast pipeline, plus the
/// search/enumeration bounds it may use.
#[derive(Debug, Clone)]
pub struct FastHints {
    /// Reversibility already known (e.g. from an oracle run).
    pub reversible: Option<bool>,
    /// Height for the rational isotropy search inside the anisotropy rule.
    pub height: i64,
    /// Enumeration budget for the finite-field zero-divisor scan.
    pub budget: u64,
}

impl Default for FastHints {
    fn default() -> FastHints {
        FastHints {
            reversible: None,
            height: forms::DEFAULT_SEARCH_HEIGHT,
            budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

/// Structural fast path. Applies, in order, the cheapest applicable rule:
/// (1) associative => VNF; (2) alternative (finite-dimensional) => VNF;
/// (3) flexible quadratic with anisotropic norm => VNF and reversible;
/// (4) no zero divisors => reversible, and with flexibility or
/// quadraticity also VNF; (5) involutive with reversibility known => VNF.
/// Each question is settled by the first rule that fires; anything left
/// is an honest Unknown.
pub fn decide_fast(a: &Algebra, hints: &FastHints) -> (Verdict, Verdict) {
    let mut vnf: Option<Verdict> = None;
    let mut rev: Option<Verdict> = None;
    let theorem = |name: &str, q: Question| Verdict::yes(q, Method::Theorem(name.into()));

    if a.check_law(Law::Associative).holds {
        vnf = Some(theorem("associative", Question::Vnf));
    } else if a.check_law(Law::Alternative).holds {
        vnf = Some(theorem("alternative", Question::Vnf));
    }

    let decomp = osborn::decompose(a).ok();

    if let Some(d) = &decomp {
        if d.flexible_criterion().holds {
            let nf = forms::norm_form(d);
            if nf.isotropy(hints.height).status == IsotropyStatus::Anisotropic {
                vnf.get_or_insert_with(|| theorem("anisotropic-norm", Question::Vnf));
                rev = Some(theorem("anisotropic-norm", Question::Reversible));
            }
        }
    }

    if (vnf.is_none() || rev.is_none()) && a.field.is_prime_field() {
        if let Ok(nzd) = no_zero_divisors(a, hints.budget) {
            if nzd.status == Status::Yes {
                rev.get_or_insert_with(|| theorem("no-zero-divisors", Question::Reversible));
                if vnf.is_none()
                    && (decomp.is_some() || a.check_law(Law::Flexible).holds)
                {
                    vnf = Some(theorem("no-zero-divisors", Question::Vnf));
                }
            }
        }
    }

    if vnf.is_none() {
        let involutive = decomp
            .as_ref()
            .map(|d| d.involutive_criterion().holds)
            .unwrap_or(false);
        let rev_known = rev.as_ref().map(|v| v.status == Status::Yes).unwrap_or(false)
            || hints.reversible == Some(true);
        if involutive && rev_known {
            vnf = Some(theorem("reversible-involutive", Question::Vnf));
        }
    }

    (
        vnf.unwrap_or_else(|| Verdict::unknown(Question::Vnf, Method::Fast)),
        rev.unwrap_or_else(|| Verdict::unknown(Question::Reversible, Method::Fast)),
    )
}

/// Bounded counterexample search over the rationals: enumerates pairs with
/// integer coordinates of absolute value <= height in lexicographic order
/// and returns a verified No verdict on the first hit, or None.
pub fn witness_search_q(a: &Algebra, question: Question, height: i64) -> Option<Verdict> {
    assert_eq!(a.field, FieldDesc::Rational, "witness search runs over the rationals");
    let n = a.dim;
    let mut xi = vec![-height; n];
    loop {
        let x = Element::new(xi.iter().map(|&v| a.field.from_i64(v)).collect());
        if !x.is_zero() {
            let mut yi = vec![-height; n];
            loop {
                let y = Element::new(yi.iter().map(|&v| a.field.from_i64(v)).collect());
                if !y.is_zero() {
                    let xy = a.multiply(&x, &y).unwrap();
                    match question {
                        Question::Vnf => {
                            if let Some(c) =
                                linalg::coords_in_span(a.field, &[a.unit.clone()], &xy.coords)
                            {
                                let mu = &c[0];
                                if !mu.is_zero() {
                                    let yx = a.multiply(&y, &x).unwrap();
                                    if yx != xy {
                                        let scaled = x.scale(&mu.invert().unwrap());
                                        return Some(Verdict::no_vnf(
                                            a,
                                            scaled,
                                            y,
                                            Method::WitnessSearch,
                                        ));
                                    }
                                }
                            }
                        }
                        Question::Reversible => {
                            if xy.is_zero() {
                                let yx = a.multiply(&y, &x).unwrap();
                                if !yx.is_zero() {
                                    return Some(Verdict::no_reversible(
                                        a,
                                        x,
                                        y,
                                        Method::WitnessSearch,
                                    ));
                                }
                            }
                        }
                        Question::ZeroDivisorFree => {
                            if xy.is_zero() {
                                return Some(Verdict::no_zero_divisor_free(
                                    a,
                                    x,
                                    y,
                                    Method::WitnessSearch,
                                ));
                            }
                        }
                    }
                }
                if !advance(&mut yi, height) {
                    break;
                }
            }
        }
        if !advance(&mut xi, height) {
            return None;
        }
    }
}

/// Advances a coordinate vector in -height..=height lexicographically
/// (last coordinate fastest); false on wrap-around.
fn advance(idx: &mut [i64], height: i64) -> bool {
    for k in (0..idx.len()).rev() {
        if idx[k] < height {
            idx[k] += 1;
            for t in idx[k + 1..].iter_mut() {
                *t = -height;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone)]
pub struct FuzzFailure {
    pub index: usize,
    pub detail: String,
    /// Full algebra document for replay.
    pub algebra_json: String,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub instances: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cross-validates the subalgebra criteria against the exhaustive oracles
/// on random involutive algebras (symmetric form, random anticommutative
/// cross product), and checks that every reversible instance is
/// von-Neumann finite. Instance randomness is derived from (seed, index),
/// so results are independent of evaluation order.
pub fn fuzz_crossvalidate(
    count: usize,
    m: usize,
    p: u32,
    seed: u64,
) -> Result<FuzzReport, AlgError> {
    let field = FieldDesc::prime(p)?;
    let mut failures: Vec<FuzzFailure> = (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let gram = crate::sample::random_symmetric_gram(field, m, &mut rng);
            let cross = crate::sample::random_anticommutative_cross(field, m, &mut rng);
            let a = osborn::build_from_osborn(field, &gram, &cross)
                .expect("generated cross tensor is anticommutative");
            let fail = |detail: String| {
                Some(FuzzFailure {
                    index: i,
                    detail,
                    algebra_json: crate::json::algebra_to_json(&a).to_string(),
                })
            };
            let d = match osborn::decompose(&a) {
                Ok(d) => d,
                Err(e) => return fail(format!("decompose failed: {e}")),
            };
            let checks = || -> Result<Option<String>, AlgError> {
                let ov = oracle_vnf(&a, DEFAULT_ORACLE_BUDGET)?;
                let cv = criterion_vnf(&a, &d)?;
                if ov.status != cv.status {
                    return Ok(Some(format!(
                        "vnf disagreement: oracle {} vs criterion {}",
                        ov.status, cv.status
                    )));
                }
                let or = oracle_reversible(&a, DEFAULT_ORACLE_BUDGET)?;
                let cr = criterion_reversible(&a, &d)?;
                if or.status != cr.status {
                    return Ok(Some(format!(
                        "reversibility disagreement: oracle {} vs criterion {}",
                        or.status, cr.status
                    )));
                }
                if or.status == Status::Yes && ov.status != Status::Yes {
                    return Ok(Some("reversible instance is not VNF".into()));
                }
                Ok(None)
            };
            match checks() {
                Ok(None) => None,
                Ok(Some(detail)) => fail(detail),
                Err(e) => fail(format!("decider error: {e}")),
            }
        })
        .collect();
    failures.sort_by_key(|f| f.index);
    Ok(FuzzReport { instances: count, failures })
}
