//! Exact field arithmetic over the rationals and over prime fields F_p, p odd.
//!
//! Every scalar is kept in canonical form (reduced fraction with positive
//! denominator, or residue in `0..p`), so equality is representation equality
//! and values round-trip bit-exactly through their text form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgError;

/// Descriptor of the ground field: the rationals, or F_p for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rational,
    Prime(u32),
}

impl FieldDesc {
    /// Builds a prime-field descriptor, rejecting even and composite moduli.
    /// Characteristic 2 is rejected up front: the Osborn machinery used by
    /// the rest of the crate assumes char != 2.
    pub fn prime(p: u32) -> Result<FieldDesc, AlgError> {
        if p < 3 || p % 2 == 0 {
            return Err(AlgError::BadField(format!("p = {p} must be an odd prime >= 3")));
        }
        if !is_prime_u64(p as u64) {
            return Err(AlgError::BadField(format!("p = {p} is not prime")));
        }
        Ok(FieldDesc::Prime(p))
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldDesc::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldDesc::Rational => Scalar {
                field: *self,
                repr: Repr::Rat(BigRational::zero()),
            },
            FieldDesc::Prime(_) => Scalar {
                field: *self,
                repr: Repr::Mod(0),
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldDesc::Rational => Scalar {
                field: *self,
                repr: Repr::Rat(BigRational::from_integer(BigInt::from(n))),
            },
            FieldDesc::Prime(p) => {
                let p = *p as i64;
                Scalar {
                    field: *self,
                    repr: Repr::Mod(n.rem_euclid(p) as u64),
                }
            }
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "rational"),
            FieldDesc::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// Deterministic Miller-Rabin, exact for all u64 with this base set.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
}

/// An element of the ground field, always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldDesc,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod(v) => *v == 1,
        }
    }

    /// Sign of a rational scalar (-1, 0, 1). Panics over a prime field,
    /// where sign is meaningless.
    pub fn sign(&self) -> i32 {
        match &self.repr {
            Repr::Rat(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Repr::Mod(_) => panic!("sign is undefined over a prime field"),
        }
    }

    /// Canonical residue for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(v) => Some(*v),
            Repr::Rat(_) => None,
        }
    }

    pub fn rational_value(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Mod(_) => None,
        }
    }

    pub fn invert(&self) -> Result<Scalar, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rat(r) => Repr::Rat(r.recip()),
            Repr::Mod(v) => {
                let p = self.prime();
                Repr::Mod(mod_pow(*v, p - 2, p))
            }
        };
        Ok(Scalar { field: self.field, repr })
    }

    /// Division; errors on zero divisor.
    pub fn div(&self, other: &Scalar) -> Result<Scalar, AlgError> {
        Ok(self.clone() * other.invert()?)
    }

    /// Multiplies by the inverse of 2 (valid in every supported field).
    pub fn halve(&self) -> Scalar {
        let two = self.field.from_i64(2);
        self.div(&two).expect("2 is invertible when char != 2")
    }

    fn prime(&self) -> u64 {
        match self.field {
            FieldDesc::Prime(p) => p as u64,
            FieldDesc::Rational => unreachable!(),
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(self.field, other.field, "scalar field mismatch");
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs);
        let repr = match (self.repr, rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = match self.field {
                    FieldDesc::Prime(p) => p as u64,
                    FieldDesc::Rational => unreachable!(),
                };
                Repr::Mod((a + b) % p)
            }
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => {
                let p = match self.field {
                    FieldDesc::Prime(p) => p as u64,
                    FieldDesc::Rational => unreachable!(),
                };
                Repr::Mod(if a == 0 { 0 } else { p - a })
            }
        };
        Scalar { field: self.field, repr }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs);
        let repr = match (self.repr, rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = match self.field {
                    FieldDesc::Prime(p) => p as u64,
                    FieldDesc::Rational => unreachable!(),
                };
                Repr::Mod(mod_mul(a, b, p))
            }
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self + rhs.clone()
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self * rhs.clone()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Mod(v) => write!(f, "{v}"),
        }
    }
}

/// Parses scalar text `-? digits ( '/' digits )?` into a canonical scalar.
/// Over F_p the fraction is resolved as numerator * denominator^-1 mod p.
pub fn parse_scalar(text: &str, field: FieldDesc) -> Result<Scalar, AlgError> {
    let bad = || AlgError::Parse(format!("malformed scalar {text:?}"));
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let check_digits = |s: &str, allow_sign: bool| -> Result<(), AlgError> {
        let body = if allow_sign { s.strip_prefix('-').unwrap_or(s) } else { s };
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(())
    };
    check_digits(num_str, true)?;
    if let Some(d) = den_str {
        check_digits(d, false)?;
    }
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(AlgError::Parse(format!("zero denominator in {text:?}")));
    }
    match field {
        FieldDesc::Rational => Ok(Scalar {
            field,
            repr: Repr::Rat(BigRational::new(num, den)),
        }),
        FieldDesc::Prime(p) => {
            let pbig = BigInt::from(p);
            let to_res = |x: &BigInt| -> u64 {
                let r = ((x % &pbig) + &pbig) % &pbig;
                let digits = r.to_u64_digits().1;
                digits.first().copied().unwrap_or(0)
            };
            let n = Scalar { field, repr: Repr::Mod(to_res(&num)) };
            let d = Scalar { field, repr: Repr::Mod(to_res(&den)) };
            if d.is_zero() {
                return Err(AlgError::Parse(format!(
                    "denominator of {text:?} is 0 mod {p}"
                )));
            }
            n.div(&d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldDesc {
        FieldDesc::prime(3).unwrap()
    }

    fn f5() -> FieldDesc {
        FieldDesc::prime(5).unwrap()
    }

    #[test]
    fn field_desc_rejects_char_two_and_composites() {
        assert!(FieldDesc::prime(2).is_err());
        assert!(FieldDesc::prime(9).is_err());
        assert!(FieldDesc::prime(1).is_err());
        assert!(FieldDesc::prime(91).is_err()); // 7 * 13
        assert!(FieldDesc::prime(2147483647).is_ok()); // Mersenne prime, largest allowed size class
    }

    #[test]
    fn parse_canonical_rational() {
        let s = parse_scalar("2/3", FieldDesc::Rational).unwrap();
        assert_eq!(s.to_string(), "2/3");
        let s = parse_scalar("-4/6", FieldDesc::Rational).unwrap();
        assert_eq!(s.to_string(), "-2/3");
        let s = parse_scalar("6/3", FieldDesc::Rational).unwrap();
        assert_eq!(s.to_string(), "2");
    }

    #[test]
    fn parse_mod_p() {
        assert_eq!(parse_scalar("5", f3()).unwrap(), f3().from_i64(2));
        // 1/2 = 3 in F_5 since 2*3 = 6 = 1
        assert_eq!(parse_scalar("1/2", f5()).unwrap(), f5().from_i64(3));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_scalar("a", FieldDesc::Rational).is_err());
        assert!(parse_scalar("1/0", FieldDesc::Rational).is_err());
        assert!(parse_scalar("1/3", f3()).is_err());
        assert!(parse_scalar("", FieldDesc::Rational).is_err());
        assert!(parse_scalar("1/-2", FieldDesc::Rational).is_err());
        assert!(parse_scalar("--2", FieldDesc::Rational).is_err());
    }

    #[test]
    fn invert() {
        let s = parse_scalar("2/3", FieldDesc::Rational).unwrap();
        assert_eq!(s.invert().unwrap().to_string(), "3/2");
        assert_eq!(f5().from_i64(2).invert().unwrap(), f5().from_i64(3));
        assert_eq!(f3().one().invert().unwrap(), f3().one());
        assert!(f3().zero().invert().is_err());
    }

    #[test]
    fn negation_in_prime_field() {
        assert_eq!(-f5().from_i64(2), f5().from_i64(3));
        assert_eq!(-f5().zero(), f5().zero());
    }
}
