//! Exact scalars over the rationals or a prime field.
//!
//! A [`Field`] is a lightweight descriptor (ℚ or F_p); a [`Scalar`] is a value
//! tagged with the field it lives in. Rational values are arbitrary-precision
//! and kept in lowest terms with a positive denominator; prime-field values are
//! residues in `[0, p)`. Arithmetic between scalars of different fields is a
//! programming error and panics; every user-facing construction site (matrix
//! constructors, document parsing) validates field uniformity first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::BigRational;
use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Keeps residue arithmetic comfortably
/// inside `u64`/`u128` intermediates.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Constructs F_p, checking primality.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// Parses a field descriptor: `"q"` for the rationals, `"p:<prime>"` for F_p.
    pub fn parse_descriptor(s: &str) -> Result<Field> {
        if s == "q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("p:") {
            let p: u64 = rest.parse().map_err(|_| Error::ScalarParse {
                input: s.to_string(),
                reason: "modulus is not a decimal number".to_string(),
            })?;
            return Field::prime(p);
        }
        Err(Error::Document(format!(
            "unknown field descriptor {s:?} (expected \"q\" or \"p:<prime>\")"
        )))
    }

    pub fn descriptor(&self) -> String {
        match self {
            Field::Rational => "q".to_string(),
            Field::Prime(p) => format!("p:{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod(0, *p),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Mod(1 % p, *p),
        }
    }

    /// The image of an integer in this field.
    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod(r, *p)
            }
        }
    }

    /// Parses a scalar literal.
    ///
    /// Rational grammar: an optional leading `-`, a decimal numerator, and an
    /// optional `/` followed by a positive decimal denominator. Prime-field
    /// grammar: bare decimal digits denoting a residue already reduced into
    /// `[0, p)`. Anything else is rejected; no whitespace, no floats.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let err = |reason: &str| Error::ScalarParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        match self {
            Field::Rational => {
                let (neg, body) = match s.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, s),
                };
                let (num_str, den_str) = match body.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (body, None),
                };
                if num_str.is_empty() || !num_str.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err("numerator must be decimal digits"));
                }
                let mut numer = BigInt::parse_bytes(num_str.as_bytes(), 10)
                    .ok_or_else(|| err("numerator must be decimal digits"))?;
                if neg {
                    numer = -numer;
                }
                let denom = match den_str {
                    None => BigInt::one(),
                    Some(d) => {
                        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                            return Err(err("denominator must be decimal digits"));
                        }
                        let den = BigInt::parse_bytes(d.as_bytes(), 10)
                            .ok_or_else(|| err("denominator must be decimal digits"))?;
                        if den.is_zero() {
                            return Err(err("denominator must be positive"));
                        }
                        den
                    }
                };
                Ok(Scalar::Rational(BigRational::new(numer, denom)))
            }
            Field::Prime(p) => {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err("prime-field values are bare decimal digits"));
                }
                let v: u64 = s.parse().map_err(|_| err("residue out of range"))?;
                if v >= *p {
                    return Err(err("residue must lie in [0, p)"));
                }
                Ok(Scalar::Mod(v, *p))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    /// Residue and modulus.
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(mod_pow(*v, *p - 2, *p), *p),
        })
    }

    /// Division; `None` for a zero divisor.
    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inverse().map(|inv| self.clone() * inv)
    }

    fn assert_same_field(&self, rhs: &Scalar) {
        let (a, b) = (self.field(), rhs.field());
        assert!(a == b, "mixed-field scalar arithmetic: {a} vs {b}");
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % p, p),
            _ => unreachable!(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + p - b) % p, p),
            _ => unreachable!(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => {
                Scalar::Mod((a as u128 * b as u128 % p as u128) as u64, p)
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod(a, p) => Scalar::Mod(if a == 0 { 0 } else { p - a }, p),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_roundtrip() {
        assert_eq!(Field::parse_descriptor("q").unwrap(), Field::Rational);
        assert_eq!(Field::parse_descriptor("p:5").unwrap(), Field::Prime(5));
        assert!(Field::parse_descriptor("p:6").is_err());
        assert!(Field::parse_descriptor("r").is_err());
        assert_eq!(Field::Prime(7).descriptor(), "p:7");
    }

    #[test]
    fn rational_grammar() {
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("3/2").unwrap().to_string(), "3/2");
        assert_eq!(q.parse_scalar("-4/2").unwrap().to_string(), "-2");
        assert_eq!(q.parse_scalar("0").unwrap(), q.zero());
        assert_eq!(q.parse_scalar("6/4").unwrap().to_string(), "3/2");
        assert!(q.parse_scalar("1.5").is_err());
        assert!(q.parse_scalar("1/-2").is_err());
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("+1").is_err());
        assert!(q.parse_scalar(" 1").is_err());
        assert!(q.parse_scalar("").is_err());
    }

    #[test]
    fn prime_grammar() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("3").unwrap(), Scalar::Mod(3, 5));
        assert!(f5.parse_scalar("5").is_err());
        assert!(f5.parse_scalar("-1").is_err());
        assert!(f5.parse_scalar("1/2").is_err());
    }

    #[test]
    fn prime_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let three = f5.integer(3);
        let four = f5.integer(4);
        assert_eq!(three.clone() + four.clone(), f5.integer(2));
        assert_eq!(three.clone() * four.clone(), f5.integer(2));
        assert_eq!(-three.clone(), f5.integer(2));
        assert_eq!(three.inverse().unwrap(), f5.integer(2));
        assert_eq!(f5.integer(-7), f5.integer(3));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Field::Rational;
        let a = q.parse_scalar("1/3").unwrap();
        let b = q.parse_scalar("1/6").unwrap();
        assert_eq!(a.clone() + b.clone(), q.parse_scalar("1/2").unwrap());
        assert_eq!(a.clone() - b.clone(), q.parse_scalar("1/6").unwrap());
        assert_eq!(a.div(&b).unwrap(), q.integer(2));
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_field_panics() {
        let _ = Field::Rational.one() + Field::prime(5).unwrap().one();
    }
}
