//! Finite fields F_p and F_p[t]/(g), with the Rabin irreducibility test
//! used to certify extension moduli and residue fields.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Poly;

/// Polynomials over a prime field.
pub type FpPoly = Poly<PrimeField>;

/// base^e modulo `modulus`, by square-and-multiply over the exponent bits.
pub fn powmod(base: &FpPoly, e: &BigUint, modulus: &FpPoly) -> Result<FpPoly> {
    if modulus.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = *base.field();
    let mut acc = Poly::one(field);
    let mut b = base.divmod(modulus)?.1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&b).divmod(modulus)?.1;
        }
        if i + 1 < bits {
            b = b.mul(&b).divmod(modulus)?.1;
        }
    }
    Ok(acc)
}

/// All monic polynomials of the given degree over F_p, for exhaustive
/// small-order checks.
pub fn monic_polys(field: PrimeField, deg: usize) -> Vec<FpPoly> {
    let p = field.p();
    let mut out = Vec::with_capacity((p as usize).pow(deg as u32));
    let mut counter = vec![0u64; deg];
    'outer: loop {
        let mut coeffs = counter.clone();
        coeffs.push(1);
        out.push(Poly::new(field, coeffs));
        for c in counter.iter_mut() {
            *c += 1;
            if *c < p {
                continue 'outer;
            }
            *c = 0;
        }
        return out;
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over F_p.
///
/// A monic f of degree n is irreducible iff x^(p^n) = x mod f and, for
/// every prime q dividing n, gcd(x^(p^(n/q)) - x, f) = 1. Degree must be
/// at least 1.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let n = f.degree().expect("polynomial of degree >= 1") as u64;
    assert!(n >= 1, "irreducibility requires degree >= 1");
    let f = f.make_monic();
    let field = *f.field();
    let p = BigUint::from(field.p());
    let x = Poly::x(field);
    for q in prime_factors(n) {
        let e = p.pow((n / q) as u32);
        let xp = powmod(&x, &e, &f).expect("nonzero modulus");
        let g = xp.sub(&x).gcd(&f);
        if g.degree() != Some(0) {
            return false;
        }
    }
    let e = p.pow(n as u32);
    let xp = powmod(&x, &e, &f).expect("nonzero modulus");
    xp == x.divmod(&f).expect("nonzero modulus").1
}

/// The field F_p[t]/(g) for a monic irreducible g; the irreducibility
/// check runs once here and the descriptor is reused.
#[derive(Clone, Debug, PartialEq)]
pub struct Fq {
    base: PrimeField,
    modulus: FpPoly,
}

impl Fq {
    pub fn new(modulus: FpPoly) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::NonMonicModulus);
        }
        if !is_irreducible(&modulus) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Fq { base: *modulus.field(), modulus })
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus has degree >= 1")
    }

    pub fn order(&self) -> u128 {
        (self.p() as u128).pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// Reduces a polynomial to its class representative.
    pub fn elem(&self, rep: FpPoly) -> FFElem {
        let rep = rep.divmod(&self.modulus).expect("nonzero modulus").1;
        FFElem { modulus: self.modulus.clone(), rep }
    }

    pub fn from_int(&self, n: i64) -> FFElem {
        self.elem(Poly::constant(self.base, self.base.elem(n)))
    }

    pub fn zero(&self) -> FFElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    /// The class of t.
    pub fn gen(&self) -> FFElem {
        self.elem(Poly::x(self.base))
    }

    fn check(&self, a: &FFElem) -> Result<()> {
        if a.modulus != self.modulus {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> Result<FFElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(FFElem { modulus: self.modulus.clone(), rep: a.rep.add(&b.rep) })
    }

    pub fn neg(&self, a: &FFElem) -> Result<FFElem> {
        self.check(a)?;
        Ok(FFElem { modulus: self.modulus.clone(), rep: a.rep.neg() })
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> Result<FFElem> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> Result<FFElem> {
        self.check(a)?;
        self.check(b)?;
        let rep = a.rep.mul(&b.rep).divmod(&self.modulus)?.1;
        Ok(FFElem { modulus: self.modulus.clone(), rep })
    }

    /// Inverse by extended Euclid with the modulus.
    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        self.check(a)?;
        if a.rep.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (g, s, _) = a.rep.extended_gcd(&self.modulus);
        debug_assert_eq!(g.degree(), Some(0), "modulus is irreducible");
        let rep = s.divmod(&self.modulus)?.1;
        Ok(FFElem { modulus: self.modulus.clone(), rep })
    }

    pub fn pow(&self, a: &FFElem, e: u64) -> Result<FFElem> {
        self.check(a)?;
        let rep = powmod(&a.rep, &BigUint::from(e), &self.modulus)?;
        Ok(FFElem { modulus: self.modulus.clone(), rep })
    }

    /// The Frobenius map x -> x^p.
    pub fn frobenius(&self, a: &FFElem) -> Result<FFElem> {
        self.pow(a, self.p())
    }

    /// All field elements, ordered by their coefficient vectors; meant for
    /// exhaustive checks at small orders.
    pub fn enumerate(&self) -> Vec<FFElem> {
        let p = self.p();
        let k = self.degree();
        let mut out = Vec::with_capacity((p as usize).pow(k as u32));
        let mut counter = vec![0u64; k];
        loop {
            out.push(FFElem {
                modulus: self.modulus.clone(),
                rep: Poly::new(self.base, counter.clone()),
            });
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }
}

/// An element of F_p[t]/(g), stored with its reduced representative and the
/// modulus it lives under so that mismatched operands are detected.
#[derive(Clone, Debug, PartialEq)]
pub struct FFElem {
    modulus: FpPoly,
    rep: FpPoly,
}

impl FFElem {
    pub fn rep(&self) -> &FpPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn format(&self) -> String {
        self.rep.format("t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, cs: &[i64]) -> FpPoly {
        let f = fp(p);
        Poly::new(f, cs.iter().map(|&c| f.elem(c)).collect())
    }

    /// Brute-force irreducibility: a monic f of degree n >= 2 is reducible
    /// iff some monic divisor of degree 1..=n/2 divides it.
    fn irreducible_by_trial(f: &FpPoly) -> bool {
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            for cand in monic_polys(*f.field(), d) {
                if f.divmod(&cand).unwrap().1.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn powmod_frobenius() {
        // x^9 mod (x^2 + 1) over F_3 is x: x^2 = -1, so x^9 = x * (x^2)^4 = x
        let m = poly(3, &[1, 0, 1]);
        let x = Poly::x(fp(3));
        assert_eq!(powmod(&x, &BigUint::from(9u32), &m).unwrap(), x);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&poly(3, &[1, 0, 1]))); // x^2 + 1, no roots mod 3
        assert!(!is_irreducible(&poly(3, &[-1, 0, 1]))); // (x-1)(x+1)
        assert!(is_irreducible(&poly(2, &[1, 1, 1]))); // x^2 + x + 1
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for p in [2u64, 3] {
            for deg in 1usize..=3 {
                for cand in monic_polys(fp(p), deg) {
                    assert_eq!(
                        is_irreducible(&cand),
                        irreducible_by_trial(&cand),
                        "mismatch for {:?} over F_{p}",
                        cand
                    );
                }
            }
        }
    }

    #[test]
    fn f9_arithmetic() {
        // F_9 = F_3[t]/(t^2 + 1): t*t = -1 = 2
        let f9 = Fq::new(poly(3, &[1, 0, 1])).unwrap();
        let t = f9.gen();
        assert_eq!(f9.mul(&t, &t).unwrap(), f9.from_int(2));
        // (t+1)^2 = t^2 + 2t + 1 = 2t
        let t1 = f9.add(&t, &f9.one()).unwrap();
        let sq = f9.mul(&t1, &t1).unwrap();
        assert_eq!(sq, f9.mul(&f9.from_int(2), &t).unwrap());
        // inv(t) = 2t since t * 2t = 2t^2 = -2 = 1
        assert_eq!(f9.inv(&t).unwrap(), f9.mul(&f9.from_int(2), &t).unwrap());
        assert_eq!(f9.inv(&f9.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn field_order_and_enumeration() {
        let f9 = Fq::new(poly(3, &[1, 0, 1])).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.enumerate().len(), 9);
    }

    #[test]
    fn frobenius_fixes_exactly_fp() {
        let f9 = Fq::new(poly(3, &[1, 0, 1])).unwrap();
        let mut fixed = 0;
        for a in f9.enumerate() {
            if f9.frobenius(&a).unwrap() == a {
                fixed += 1;
            }
        }
        assert_eq!(fixed, 3);
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let f9 = Fq::new(poly(3, &[1, 0, 1])).unwrap();
        let f9b = Fq::new(poly(3, &[2, 2, 1])).unwrap();
        let a = f9.gen();
        let b = f9b.gen();
        assert_eq!(f9.add(&a, &b), Err(Error::ContextMismatch));
    }
}
