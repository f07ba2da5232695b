//! Univariate polynomials over a field, just enough to split idempotents
//! along coprime factors of a minimal polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use super::scalar::{Field, Scalar};

/// Coefficients from the constant term upwards, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn constant(field: Field, c: Scalar) -> Self {
        Self::new(field, vec![c])
    }

    /// `t - r`
    pub fn linear(field: Field, r: &Scalar) -> Self {
        Self::new(field, vec![-r, field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        let inv = self.lead().inv();
        Self::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(self.field, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.field, Vec::new());
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::new(self.field, c)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(self.field, self.field.one()), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if rem.len() <= dd {
            return (Self::new(self.field, Vec::new()), self.clone());
        }
        let inv = d.lead().inv();
        let mut quo = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dj);
            }
            quo[k] = c;
        }
        (Self::new(self.field, quo), Self::new(self.field, rem))
    }

    /// `(g, a, b)` with `a*self + b*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let one = Self::constant(f, f.one());
        let zero = Self::new(f, Vec::new());
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = r0.lead().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Roots lying in the ground field: exhaustive over a prime field, by
    /// the rational root test over Q. `None` when integer coefficients are
    /// too large to enumerate divisors.
    pub fn roots(&self) -> Option<Vec<Scalar>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        match self.field {
            Field::Prime(_) => Some(
                self.field.elements()?.into_iter().filter(|x| self.eval(x).is_zero()).collect(),
            ),
            Field::Rational => self.rational_roots(),
        }
    }

    fn rational_roots(&self) -> Option<Vec<Scalar>> {
        let rs: Vec<&Rational> = self.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
        let lcm = rs.iter().fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()));
        let ints: Vec<BigInt> = rs.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(self.field.zero());
        }
        let a0 = ints[low].abs().to_u64()?;
        let an = ints.last().unwrap().abs().to_u64()?;
        if a0 > 1_000_000 || an > 1_000_000 {
            return None;
        }
        let divisors = |n: u64| (1..=n).filter(move |d| n % d == 0);
        let mut cands = Vec::new();
        for p in divisors(a0) {
            for q in divisors(an) {
                for s in [1i64, -1] {
                    cands.push(Rational::new(s * p as i64, q as i64));
                }
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            let x = Scalar::Q(c);
            if self.eval(&x).is_zero() {
                roots.push(x);
            }
        }
        Some(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[i64]) -> Poly {
        Poly::new(Field::Rational, xs.iter().map(|&x| Field::Rational.from_int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t-2) and (t-1)(t+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn rational_roots_found() {
        // 2t^2 - 3t + 1 = (2t-1)(t-1)
        let roots = p(&[1, -3, 2]).roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(p(&[1, 0, 1]).roots().unwrap().is_empty());
        assert_eq!(p(&[0, 0, 1]).roots().unwrap().len(), 1);
    }
}
