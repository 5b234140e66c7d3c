//! Exact coefficient fields: the rationals and prime fields of odd order.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Coefficient field. Characteristic 2 is not representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds the prime field of order `p`, rejecting `p = 2` and composites.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p < 2 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(FieldError::PrimeTooLarge(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::P(n.rem_euclid(*p as i64) as u64, *p),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::P(r.to_u64().unwrap_or(0), *p)
            }
        }
    }

    /// Maps an exact rational into this field. Fails when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, FieldError> {
        match self {
            Field::Rational => Ok(Scalar::Q(q.clone())),
            Field::Prime(p) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(FieldError::DenominatorVanishes {
                        value: q.to_string(),
                        p: *p,
                    });
                }
                Ok(num / den)
            }
        }
    }

    /// Parses `"3"`, `"-2/5"` and the like.
    pub fn parse(&self, s: &str) -> Result<Scalar, FieldError> {
        let t = s.trim();
        let q = if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| FieldError::Parse(s.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| FieldError::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(FieldError::Parse(s.to_string()));
            }
            BigRational::new(n, d)
        } else {
            let n: BigInt = t.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
            BigRational::from_integer(n)
        };
        self.from_rational(&q)
    }

    /// The label used in JSON: `"Q"` or `{"Fp": p}`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Field::Rational => serde_json::json!("Q"),
            Field::Prime(p) => serde_json::json!({ "Fp": p }),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        parse_field_json(&v).map_err(serde::de::Error::custom)
    }
}

pub fn parse_field_json(v: &serde_json::Value) -> Result<Field, FieldError> {
    match v {
        serde_json::Value::String(s) => parse_field_str(s),
        serde_json::Value::Object(m) => match m.get("Fp").and_then(|p| p.as_u64()) {
            Some(p) => Field::prime(p),
            None => Err(FieldError::Parse(v.to_string())),
        },
        _ => Err(FieldError::Parse(v.to_string())),
    }
}

/// Parses `Q` or `Fp:p`.
pub fn parse_field_str(s: &str) -> Result<Field, FieldError> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = t.strip_prefix("Fp:") {
        let p: u64 = p.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        return Field::prime(p);
    }
    Err(FieldError::Parse(s.to_string()))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Elements of different fields never meet in one operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    /// value, modulus
    P(u64, u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P(v, p) => {
                assert!(*v != 0, "inverse of zero in F_{p}");
                Scalar::P(pow_mod(*v, p - 2, *p), *p)
            }
        }
    }

    /// True for rationals with denominator 1 and for every prime-field element.
    pub fn is_integral(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_integer(),
            Scalar::P(..) => true,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::P(..) => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar field mismatch")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P((a + b) % p, *p),
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P((a + p - b) % p, *p),
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P(mul_mod(*a, *b, *p), *p),
            _ => mismatch(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P(a, p) => Scalar::P((p - a) % p, *p),
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// `(-1)^e` as a field element.
pub fn sign(field: Field, odd: bool) -> Scalar {
    if odd {
        field.from_i64(-1)
    } else {
        field.one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two_is_rejected() {
        assert!(matches!(Field::prime(2), Err(FieldError::CharacteristicTwo)));
        assert!(matches!(Field::prime(9), Err(FieldError::NotPrime(9))));
        assert_eq!(Field::prime(3).unwrap().characteristic(), 3);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(&a - &b, f.from_i64(5));
        assert_eq!(a.inv(), f.from_i64(5));
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn rational_parse_and_display() {
        let q = Field::Rational;
        let x = q.parse("-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse("12").unwrap().to_string(), "12");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("abc").is_err());
    }

    #[test]
    fn field_labels_round_trip() {
        for f in [Field::Rational, Field::prime(5).unwrap()] {
            assert_eq!(parse_field_json(&f.to_json()).unwrap(), f);
            assert_eq!(parse_field_str(&f.to_string()).unwrap(), f);
        }
        assert!(parse_field_str("Fp:2").is_err());
    }
}
