//! Seeded random generation of scalars, elements and Osborn data, used by
//! identity suites and the fuzz harness. All randomness flows through an
//! explicit RNG so runs are reproducible.

use rand::Rng;

use crate::algebra::Element;
use crate::linalg::Mat;
use crate::scalar::{FieldDesc, Scalar};

/// Uniform residue over F_p; small integer in -9..=9 over the rationals.
pub fn random_scalar<R: Rng>(field: FieldDesc, rng: &mut R) -> Scalar {
    match field {
        FieldDesc::Rational => field.from_i64(rng.gen_range(-9..=9)),
        FieldDesc::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_element<R: Rng>(field: FieldDesc, dim: usize, rng: &mut R) -> Element {
    Element::new((0..dim).map(|_| random_scalar(field, rng)).collect())
}

pub fn random_symmetric_gram<R: Rng>(field: FieldDesc, m: usize, rng: &mut R) -> Mat {
    let mut g = Mat::zeros(field, m, m);
    for i in 0..m {
        for j in i..m {
            let s = random_scalar(field, rng);
            g[(i, j)] = s.clone();
            g[(j, i)] = s;
        }
    }
    g
}

pub fn random_gram<R: Rng>(field: FieldDesc, m: usize, rng: &mut R) -> Mat {
    let mut g = Mat::zeros(field, m, m);
    for i in 0..m {
        for j in 0..m {
            g[(i, j)] = random_scalar(field, rng);
        }
    }
    g
}

pub fn random_anticommutative_cross<R: Rng>(
    field: FieldDesc,
    m: usize,
    rng: &mut R,
) -> Vec<Vec<Vec<Scalar>>> {
    let mut t = vec![vec![vec![field.zero(); m]; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..m {
                let s = random_scalar(field, rng);
                t[i][j][k] = s.clone();
                t[j][i][k] = -s;
            }
        }
    }
    t
}
