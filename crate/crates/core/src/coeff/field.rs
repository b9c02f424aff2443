//! Coefficient fields: the rationals and the prime fields `Z/εZ` for ε ∈ {2, 3}.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Scalar field for polynomial coefficients.
///
/// Implemented by [`Rat`] (arbitrary-precision rationals) and [`Fp<P>`].
/// Arithmetic is exact in both cases.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// 0 for the rationals, ε for `Z/εZ`.
    fn characteristic() -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }
}

/// Arbitrary-precision rational scalar.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// The value as a big integer, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.0.denom().is_one() {
            Some(self.0.numer().clone())
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn characteristic() -> u64 {
        0
    }
}

/// Element of the prime field `Z/PZ`. Only P = 2 and P = 3 are used.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp((self.0 * rhs.0) % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2) for prime P.
        let mut acc = Fp::<P>(1 % P);
        let mut base = *self;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn characteristic() -> u64 {
        P
    }
}

/// Reduce a rational scalar mod P. `None` if the denominator is divisible by P.
pub fn reduce_rat<const P: u64>(r: &Rat) -> Option<Fp<P>> {
    let p = BigInt::from(P);
    let num = r.0.numer();
    let den = r.0.denom();
    let dm = ((den % &p) + &p) % &p;
    if dm.is_zero() {
        return None;
    }
    let nm = ((num % &p) + &p) % &p;
    let n: u64 = nm.magnitude().try_into().ok()?;
    let d: u64 = dm.magnitude().try_into().ok()?;
    let _ = num.is_negative(); // nm already non-negative
    Some(Fp::<P>(n % P).mul(&Fp::<P>(d % P).inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        for v in 1..3u64 {
            let x = Fp::<3>(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert!(Fp::<2>(1).inv().unwrap().is_one());
        assert!(Fp::<3>(0).inv().is_none());
    }

    #[test]
    fn reduce_rationals() {
        let half = Rat(BigRational::new(BigInt::from(1), BigInt::from(2)));
        // 1/2 = 2 mod 3
        assert_eq!(reduce_rat::<3>(&half), Some(Fp::<3>(2)));
        // denominator 2 is not invertible mod 2
        assert_eq!(reduce_rat::<2>(&half), None);
        assert_eq!(reduce_rat::<2>(&Rat::from_int(-3)), Some(Fp::<2>(1)));
    }
}
