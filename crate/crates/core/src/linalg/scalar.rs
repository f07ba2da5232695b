use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::zero()),
            Field::Prime(p) => Scalar::P(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::one()),
            Field::Prime(p) => Scalar::P(1 % p, p),
        }
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_int(n)),
            Field::Prime(p) => Scalar::P(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Maps a rational into this field; `None` if the denominator vanishes mod p.
    pub fn from_rational(self, r: &Rational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Q(r.clone())),
            Field::Prime(p) => r.mod_prime(p).map(|v| Scalar::P(v, p)),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// All field elements, for prime fields only.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::P(v, p)).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// An exact field element: a rational or a residue modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    P(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r.inv()),
            Scalar::P(v, p) => {
                assert!(*v != 0, "inverse of zero");
                Scalar::P(inv_mod(*v, *p), *p)
            }
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::P(..) => None,
        }
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("mixed-field arithmetic: {} vs {}", a.field(), b.field())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P((a + b) % p, *p),
            _ => Scalar::mismatch(self, o),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.sub(b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P((a + p - b) % p, *p),
            _ => Scalar::mismatch(self, o),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P(mul_mod(*a, *b, *p), *p),
            _ => Scalar::mismatch(self, o),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::P(a, p) => Scalar::P((p - a) % p, *p),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_int(3);
        let b = f.from_int(5);
        assert_eq!(&a + &b, f.from_int(1));
        assert_eq!(&a - &b, f.from_int(5));
        assert_eq!(&a * &a.inv(), f.one());
        assert_eq!(-&a, f.from_int(4));
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_fields_rejected() {
        let _ = &Field::Rational.one() + &Field::Prime(5).one();
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(101));
        assert!(!is_prime(1) && !is_prime(91));
    }
}
