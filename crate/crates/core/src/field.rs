//! Exact coefficient fields: the prime fields F_p and the rationals.
//!
//! These are the fields the polynomial, rational-function and series types
//! are generic over. A field is a small descriptor value whose methods act
//! on elements, so the same code path serves both a runtime-chosen prime
//! and exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// An exact computable field, used as the coefficient domain of polynomials,
/// rational functions and truncated series.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Polynomial gcd hook. The generic monic remainder sequence is fine
    /// over finite fields; fields whose coefficients grow along remainder
    /// sequences (the rationals) override it.
    fn poly_gcd(&self, a: &crate::poly::Poly<Self>, b: &crate::poly::Poly<Self>) -> crate::poly::Poly<Self>
    where
        Self: Sized,
    {
        crate::poly::monic_remainder_gcd(a, b)
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
///
/// The base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to be
/// exact for all n < 3.3 * 10^24, which covers the whole u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`, by extended Euclid.
pub fn inv_mod_u64(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::ZeroInverse);
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    Ok(t0.rem_euclid(p as i128) as u64)
}

/// The prime field F_p with elements canonically represented in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.p - a }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod_u64(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        inv_mod_u64(*a, self.p)
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        u64::try_from(&r).expect("reduced residue fits in u64")
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(a.recip())
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    /// Gcd through primitive integer polynomials: clearing denominators and
    /// running a primitive pseudo-remainder sequence keeps the coefficients
    /// integral, where the naive remainder sequence over Q explodes.
    fn poly_gcd(
        &self,
        a: &crate::poly::Poly<Rationals>,
        b: &crate::poly::Poly<Rationals>,
    ) -> crate::poly::Poly<Rationals> {
        use num_integer::Integer;

        fn primitive_int(p: &crate::poly::Poly<Rationals>) -> Vec<BigInt> {
            let mut lcm = BigInt::from(1);
            for c in p.coeffs() {
                lcm = lcm.lcm(c.denom());
            }
            let mut out: Vec<BigInt> = p
                .coeffs()
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect();
            let mut content = BigInt::from(0);
            for c in &out {
                content = content.gcd(c);
            }
            if !content.is_zero() {
                for c in &mut out {
                    *c /= &content;
                }
            }
            out
        }

        fn trim(v: &mut Vec<BigInt>) {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
        }

        fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
            trim(&mut v);
            let mut content = BigInt::from(0);
            for c in &v {
                content = content.gcd(c);
            }
            if !content.is_zero() {
                for c in &mut v {
                    *c /= &content;
                }
            }
            v
        }

        // r <- lc(b)^k * r - quotient terms * b, repeated until deg r < deg b
        fn pseudo_rem(mut r: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
            let lb = b.last().expect("nonzero divisor").clone();
            while r.len() >= b.len() {
                let lr = r.last().unwrap().clone();
                let k = r.len() - b.len();
                for c in r.iter_mut() {
                    *c *= &lb;
                }
                for (i, bc) in b.iter().enumerate() {
                    r[k + i] -= &lr * bc;
                }
                trim(&mut r);
            }
            r
        }

        let mut x = primitive_int(a);
        let mut y = primitive_int(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = primitive_part(pseudo_rem(x, &y));
            x = std::mem::replace(&mut y, r);
        }
        let coeffs = x
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        crate::poly::Poly::new(Rationals, coeffs).make_monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91)); // 7 * 13
        assert!(!is_prime_u64(561)); // Carmichael
    }

    #[test]
    fn fp_inverses() {
        // 3 * 2 = 6 = 1 mod 5
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(&3).unwrap(), 2);
        // 2 * 2 = 4 = 1 mod 3
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.inv(&2).unwrap(), 2);
        assert_eq!(f5.inv(&0), Err(Error::ZeroInverse));
    }

    #[test]
    fn fp_add_wraps() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.add(&4, &3), 2);
        assert_eq!(f5.neg(&2), 3);
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(PrimeField::new(6).unwrap_err(), Error::NotPrime(6));
    }
}
