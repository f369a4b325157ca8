//! Exact discrete valuations on the rationals (p-adic) and on rational
//! functions (X-adic), together with the uniformizer calculus: unit-ball
//! membership, the validated uniformizer wrapper, the pi-power/unit
//! factorization and the maximal-ideal divisibility witness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{inv_mod_u64, is_prime_u64, Field};
use crate::ratfunc::RatFunc;
use crate::value_group::{AddVal, MultZ0};

/// A field carrying a normalized discrete valuation, with enough exact
/// arithmetic to execute the classical witnesses: every nonzero unit-ball
/// element factors as pi^n * unit, and the uniformizer generates the
/// maximal ideal by exact division.
pub trait ValuedField: Clone + PartialEq + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    /// Elements of the residue field.
    type Residue: Clone + PartialEq + std::fmt::Debug;

    fn val(&self, x: &Self::Elem) -> MultZ0;
    fn zero_elem(&self) -> Self::Elem;
    fn one_elem(&self) -> Self::Elem;
    fn add_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg_elem(&self, a: &Self::Elem) -> Self::Elem;
    fn mul_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv_elem(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// A distinguished element of valuation `of_add(-1)`. Exhibiting it is
    /// the executable content of discreteness: the valuation is surjective
    /// because every value `of_add(-n)` is attained by its powers.
    fn canonical_uniformizer_elem(&self) -> Self::Elem;

    /// Image of a unit-ball element in the residue field.
    fn residue(&self, x: &Self::Elem) -> Result<Self::Residue>;

    fn sub_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_elem(a, &self.neg_elem(b))
    }

    fn is_in_unit_ball(&self, x: &Self::Elem) -> bool {
        self.val(x) <= MultZ0::one()
    }

    fn is_uniformizer(&self, x: &Self::Elem) -> bool {
        self.val(x) == MultZ0::exp(-1)
    }

    /// Wraps an element after verifying v(x) = of_add(-1); the failure
    /// carries the actual valuation.
    fn make_uniformizer(&self, x: Self::Elem) -> Result<Uniformizer<Self>>
    where
        Self: Sized,
    {
        let actual = self.val(&x);
        if actual != MultZ0::exp(-1) {
            return Err(Error::NotAUniformizer { actual });
        }
        Ok(Uniformizer { valuation: self.clone(), elem: x })
    }

    fn canonical_uniformizer(&self) -> Uniformizer<Self>
    where
        Self: Sized,
    {
        self.make_uniformizer(self.canonical_uniformizer_elem())
            .expect("canonical uniformizer has valuation of_add(-1)")
    }

    /// Factors a nonzero unit-ball element exactly as pi^n * u with u a
    /// unit, returning (n, u).
    fn pow_uniformizer(
        &self,
        r: &Self::Elem,
        pi: &Uniformizer<Self>,
    ) -> Result<(u64, Self::Elem)>
    where
        Self: Sized,
    {
        if pi.valuation != *self {
            return Err(Error::ContextMismatch);
        }
        let v = self.val(r);
        if v.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if v > MultZ0::one() {
            return Err(Error::NotInUnitBall);
        }
        let n = match v.to_addval() {
            AddVal::Fin(a) => u64::try_from(&a).expect("unit-ball valuation is a natural"),
            AddVal::Infinity => unreachable!("nonzero element"),
        };
        let pi_inv = self.inv_elem(pi.get())?;
        let mut u = r.clone();
        for _ in 0..n {
            u = self.mul_elem(&u, &pi_inv);
        }
        debug_assert_eq!(self.val(&u), MultZ0::one());
        Ok((n, u))
    }

    /// For x in the maximal ideal, produces y in the unit ball with
    /// x = pi * y exactly, witnessing that pi generates the ideal.
    fn maximal_ideal_witness(
        &self,
        x: &Self::Elem,
        pi: &Uniformizer<Self>,
    ) -> Result<Self::Elem>
    where
        Self: Sized,
    {
        if pi.valuation != *self {
            return Err(Error::ContextMismatch);
        }
        if !(self.val(x) < MultZ0::one()) {
            return Err(Error::NotInMaximalIdeal);
        }
        let y = self.mul_elem(x, &self.inv_elem(pi.get())?);
        debug_assert!(self.is_in_unit_ball(&y));
        Ok(y)
    }
}

/// An element bundled with the valuation for which it is a uniformizer;
/// only obtainable through the validating constructor.
#[derive(Clone, Debug, PartialEq)]
pub struct Uniformizer<V: ValuedField> {
    valuation: V,
    elem: V::Elem,
}

impl<V: ValuedField> Uniformizer<V> {
    pub fn get(&self) -> &V::Elem {
        &self.elem
    }

    pub fn into_inner(self) -> V::Elem {
        self.elem
    }
}

/// Additive p-adic valuation of a nonzero integer by repeated exact
/// division, doubling the divisor power so large valuations cost
/// logarithmically many divisions.
pub fn padic_val_bigint(p: u64, n: &BigInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p_big = BigInt::from(p);
    let mut current = n.clone();
    let mut valuation = 0u64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&current, &p_big);
        if !r.is_zero() {
            return Some(valuation);
        }
        current = q;
        valuation += 1;
        let mut power = &p_big * &p_big;
        let mut step = 2u64;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&current, &power);
            if !r.is_zero() {
                break;
            }
            current = q;
            valuation += step;
            power = &power * &power;
            step *= 2;
        }
    }
}

/// The p-adic valuation on the rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicValuation {
    p: u64,
}

impl PAdicValuation {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PAdicValuation { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Additive valuation of a rational, or None for zero.
    pub fn additive(&self, x: &BigRational) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        let vn = padic_val_bigint(self.p, x.numer()).expect("nonzero numerator");
        let vd = padic_val_bigint(self.p, x.denom()).expect("nonzero denominator");
        Some(vn as i64 - vd as i64)
    }
}

impl ValuedField for PAdicValuation {
    type Elem = BigRational;
    type Residue = u64;

    fn val(&self, x: &BigRational) -> MultZ0 {
        match self.additive(x) {
            None => MultZ0::Zero,
            Some(a) => MultZ0::exp(-a),
        }
    }

    fn zero_elem(&self) -> BigRational {
        BigRational::zero()
    }

    fn one_elem(&self) -> BigRational {
        BigRational::from_integer(1.into())
    }

    fn add_elem(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg_elem(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul_elem(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv_elem(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn canonical_uniformizer_elem(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.p))
    }

    /// Writes x = a/b with b invertible mod p and returns a * b^-1 mod p.
    fn residue(&self, x: &BigRational) -> Result<u64> {
        if !self.is_in_unit_ball(x) {
            return Err(Error::NotInUnitBall);
        }
        let p_big = BigInt::from(self.p);
        let a = num_integer::Integer::mod_floor(x.numer(), &p_big);
        let b = num_integer::Integer::mod_floor(x.denom(), &p_big);
        let a = u64::try_from(&a).expect("residue fits in u64");
        let b = u64::try_from(&b).expect("residue fits in u64");
        let b_inv = inv_mod_u64(b, self.p)?;
        Ok(((a as u128 * b_inv as u128) % self.p as u128) as u64)
    }
}

/// The X-adic valuation on the rational functions K(X).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XAdicValuation<F: Field> {
    field: F,
}

impl<F: Field> XAdicValuation<F> {
    pub fn new(field: F) -> Self {
        XAdicValuation { field }
    }

    pub fn coef_field(&self) -> &F {
        &self.field
    }

    /// Additive valuation: order of vanishing at 0 of num minus den.
    pub fn additive(&self, x: &RatFunc<F>) -> Option<i64> {
        let vn = x.num().order_at_zero()?;
        let vd = x.den().order_at_zero().expect("denominator nonzero");
        Some(vn as i64 - vd as i64)
    }
}

impl<F: Field + Eq> ValuedField for XAdicValuation<F> {
    type Elem = RatFunc<F>;
    type Residue = F::Elem;

    fn val(&self, x: &RatFunc<F>) -> MultZ0 {
        match self.additive(x) {
            None => MultZ0::Zero,
            Some(a) => MultZ0::exp(-a),
        }
    }

    fn zero_elem(&self) -> RatFunc<F> {
        RatFunc::zero(self.field.clone())
    }

    fn one_elem(&self) -> RatFunc<F> {
        RatFunc::one(self.field.clone())
    }

    fn add_elem(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a.add(b)
    }

    fn neg_elem(&self, a: &RatFunc<F>) -> RatFunc<F> {
        a.neg()
    }

    fn mul_elem(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a.mul(b)
    }

    fn inv_elem(&self, a: &RatFunc<F>) -> Result<RatFunc<F>> {
        a.inv()
    }

    fn canonical_uniformizer_elem(&self) -> RatFunc<F> {
        RatFunc::x(self.field.clone())
    }

    /// The constant term of the reduced expansion: num(0) / den(0).
    fn residue(&self, x: &RatFunc<F>) -> Result<F::Elem> {
        if !self.is_in_unit_ball(x) {
            return Err(Error::NotInUnitBall);
        }
        let d0 = x.den().eval_at_zero();
        // den(0) != 0 in the unit ball: X | den would force X not to divide
        // num (coprimality), giving negative valuation.
        self.field.div(&x.num().eval_at_zero(), &d0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::Poly;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Trial-division factorization oracle used to fix expected valuations.
    fn trial_division_val(p: u64, mut n: i64) -> u64 {
        assert!(n != 0);
        n = n.abs();
        let mut v = 0;
        while n % p as i64 == 0 {
            n /= p as i64;
            v += 1;
        }
        v
    }

    #[test]
    fn padic_val_matches_trial_division() {
        // 392 = 2^3 * 7^2, so v_7(392/5) = 2 - 0
        let v7 = PAdicValuation::new(7).unwrap();
        let expect = trial_division_val(7, 392) as i64 - trial_division_val(7, 5) as i64;
        assert_eq!(expect, 2);
        assert_eq!(v7.val(&q(392, 5)), MultZ0::exp(-2));

        let v5 = PAdicValuation::new(5).unwrap();
        assert_eq!(v5.val(&BigRational::zero()), MultZ0::Zero);
        assert_eq!(v5.val(&q(1, 1)), MultZ0::one());
    }

    #[test]
    fn xadic_val_counts_root_order() {
        // X^2/(X+1) over F_3: order 2 at the numerator, 0 at the denominator
        let f3 = PrimeField::new(3).unwrap();
        let vx = XAdicValuation::new(f3);
        let r = RatFunc::new(Poly::monomial(f3, 2), Poly::new(f3, vec![1, 1])).unwrap();
        assert_eq!(vx.val(&r), MultZ0::exp(-2));
    }

    #[test]
    fn unit_ball_membership() {
        let v5 = PAdicValuation::new(5).unwrap();
        assert!(v5.is_in_unit_ball(&q(7, 3)));
        assert!(!v5.is_in_unit_ball(&q(1, 5)));
        let vx = XAdicValuation::new(Rationals);
        let x3 = RatFunc::from_poly(Poly::monomial(Rationals, 3));
        assert!(vx.is_in_unit_ball(&x3));
    }

    #[test]
    fn uniformizer_detection() {
        let v5 = PAdicValuation::new(5).unwrap();
        assert!(v5.is_uniformizer(&q(5, 1)));
        assert!(!v5.is_uniformizer(&q(25, 1)));
        assert!(v5.is_uniformizer(&q(10, 1)));
        let err = v5.make_uniformizer(q(25, 1)).unwrap_err();
        assert_eq!(err, Error::NotAUniformizer { actual: MultZ0::exp(-2) });
    }

    #[test]
    fn canonical_uniformizers() {
        let v7 = PAdicValuation::new(7).unwrap();
        assert_eq!(v7.canonical_uniformizer().get(), &q(7, 1));
        let v3 = PAdicValuation::new(3).unwrap();
        assert_eq!(v3.val(v3.canonical_uniformizer().get()), MultZ0::exp(-1));
        let f2 = PrimeField::new(2).unwrap();
        let vx = XAdicValuation::new(f2);
        assert_eq!(vx.canonical_uniformizer().get(), &RatFunc::x(f2));
    }

    #[test]
    fn pow_uniformizer_factors() {
        // 50 = 5^2 * 2
        let v5 = PAdicValuation::new(5).unwrap();
        let pi = v5.canonical_uniformizer();
        assert_eq!(v5.pow_uniformizer(&q(50, 1), &pi).unwrap(), (2, q(2, 1)));
        assert_eq!(v5.pow_uniformizer(&q(3, 1), &pi).unwrap(), (0, q(3, 1)));
        assert_eq!(
            v5.pow_uniformizer(&BigRational::zero(), &pi),
            Err(Error::ZeroArgument)
        );
        assert_eq!(v5.pow_uniformizer(&q(1, 5), &pi), Err(Error::NotInUnitBall));

        // X^3 + X^4 = X^3 * (1 + X) over F_2
        let f2 = PrimeField::new(2).unwrap();
        let vx = XAdicValuation::new(f2);
        let pix = vx.canonical_uniformizer();
        let r = RatFunc::from_poly(Poly::new(f2, vec![0, 0, 0, 1, 1]));
        let (n, u) = vx.pow_uniformizer(&r, &pix).unwrap();
        assert_eq!(n, 3);
        assert_eq!(u, RatFunc::from_poly(Poly::new(f2, vec![1, 1])));
    }

    #[test]
    fn maximal_ideal_witness_divides() {
        let v5 = PAdicValuation::new(5).unwrap();
        let pi = v5.canonical_uniformizer();
        assert_eq!(v5.maximal_ideal_witness(&q(75, 1), &pi).unwrap(), q(15, 1));
        assert_eq!(v5.maximal_ideal_witness(&q(5, 1), &pi).unwrap(), q(1, 1));
        assert_eq!(
            v5.maximal_ideal_witness(&q(3, 1), &pi),
            Err(Error::NotInMaximalIdeal)
        );

        let vx = XAdicValuation::new(Rationals);
        let pix = vx.canonical_uniformizer();
        let one = BigRational::from_integer(1.into());
        let x2x = RatFunc::from_poly(Poly::new(Rationals, vec![BigRational::zero(), one.clone(), one.clone()]));
        let y = vx.maximal_ideal_witness(&x2x, &pix).unwrap();
        assert_eq!(
            y,
            RatFunc::from_poly(Poly::new(Rationals, vec![one.clone(), one]))
        );
    }

    #[test]
    fn residues() {
        // 3^-1 = 2 mod 5 (extended Euclid oracle: 3*2 = 6 = 1), 7*2 = 14 = 4
        let v5 = PAdicValuation::new(5).unwrap();
        assert_eq!(v5.residue(&q(7, 3)).unwrap(), 4);
        assert_eq!(v5.residue(&q(10, 1)).unwrap(), 0);
        assert_eq!(v5.residue(&q(1, 5)), Err(Error::NotInUnitBall));

        // (1+X)/(2+X) at 0 over F_3: 1 * 2^-1 = 1 * 2 = 2
        let f3 = PrimeField::new(3).unwrap();
        let vx = XAdicValuation::new(f3);
        let r = RatFunc::new(Poly::new(f3, vec![1, 1]), Poly::new(f3, vec![2, 1])).unwrap();
        assert_eq!(vx.residue(&r).unwrap(), 2);
    }
}
