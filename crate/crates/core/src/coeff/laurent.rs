//! Sparse-exponent Laurent polynomials in the single variable q.

use super::field::{reduce_rat, Field, Fp, Rat};
use std::fmt;

/// Laurent polynomial `Σ coeffs[k] q^(low+k)`.
///
/// Invariant: `coeffs` is empty exactly for zero, and otherwise has nonzero
/// first and last entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent<F: Field> {
    low: i64,
    coeffs: Vec<F>,
}

impl<F: Field> Laurent<F> {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent::monomial(F::one(), 0)
    }

    pub fn monomial(c: F, e: i64) -> Self {
        if c.is_zero() {
            Laurent::zero()
        } else {
            Laurent { low: e, coeffs: vec![c] }
        }
    }

    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Laurent::monomial(F::one(), e)
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<F>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Least exponent with nonzero coefficient; `None` for zero.
    pub fn val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    /// Greatest exponent with nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, e: i64) -> F {
        let idx = e - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            F::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_coeff(&self) -> F {
        self.coeff(0)
    }

    /// Iterate `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.coeffs.iter().enumerate().map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i64).max(rhs.low + rhs.coeffs.len() as i64);
        let mut coeffs = vec![F::zero(); (high - low) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - low) as usize] = c.clone();
        }
        for (e, c) in rhs.terms() {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = slot.add(c);
        }
        Laurent::from_coeffs(low, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut coeffs[i + j];
                *slot = slot.add(&a.mul(b));
            }
        }
        Laurent::from_coeffs(self.low + rhs.low, coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            Laurent::zero()
        } else {
            Laurent { low: self.low + e, coeffs: self.coeffs.clone() }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Laurent::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The bar involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        let high = self.low + self.coeffs.len() as i64 - 1;
        Laurent {
            low: -high,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }

    /// Polynomial division with remainder on the underlying polynomials
    /// (both arguments shifted so their valuation is 0).
    ///
    /// Returns (quotient, remainder) of `self_poly / rhs_poly` where
    /// `x_poly = x / q^val(x)`.
    pub fn divrem_poly(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let a = self.shift(-self.val().unwrap_or(0));
        let b = rhs.shift(-rhs.val().unwrap());
        let db = b.degree().unwrap();
        let lead_inv = b.leading_coeff().inv().expect("nonzero leading coefficient");
        let mut rem = a;
        let mut quot = Laurent::zero();
        while !rem.is_zero() && rem.degree().unwrap() >= db {
            let e = rem.degree().unwrap() - db;
            let c = rem.leading_coeff().mul(&lead_inv);
            let t = Laurent::monomial(c, e);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(&b));
        }
        (quot, rem)
    }

    /// Monic gcd of the underlying polynomials (valuations stripped).
    pub fn gcd_poly(&self, rhs: &Self) -> Self {
        let mut a = self.shift(-self.val().unwrap_or(0));
        let mut b = rhs.shift(-rhs.val().unwrap_or(0));
        while !b.is_zero() {
            let (_, r) = a.divrem_poly(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = a.leading_coeff().inv().unwrap();
        a.scale(&inv)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Laurent<G> {
        Laurent::from_coeffs(self.low, self.coeffs.iter().map(|c| f(c)).collect())
    }
}

impl Laurent<Rat> {
    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.to_integer().is_some())
    }

    /// Reduce an integral Laurent polynomial mod P.
    pub fn reduce_mod<const P: u64>(&self) -> Option<Laurent<Fp<P>>> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(reduce_rat::<P>(c)?);
        }
        Some(Laurent::from_coeffs(self.low, coeffs))
    }
}

impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*q^{}", c, e)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(pairs: &[(i64, i64)]) -> Laurent<Rat> {
        let mut acc = Laurent::zero();
        for &(e, c) in pairs {
            acc = acc.add(&Laurent::monomial(Rat::from_int(c), e));
        }
        acc
    }

    #[test]
    fn arithmetic_and_bar() {
        let a = l(&[(-1, 1), (1, 1)]); // q^-1 + q
        let b = l(&[(0, 1), (2, -1)]); // 1 - q^2
        assert_eq!(a.mul(&b), l(&[(-1, 1), (1, 1), (1, -1), (3, -1)]));
        assert_eq!(a.bar(), a);
        assert_eq!(b.bar(), l(&[(0, 1), (-2, -1)]));
        assert_eq!(a.bar().bar(), a);
        assert_eq!(a.val(), Some(-1));
        assert_eq!(a.degree(), Some(1));
    }

    #[test]
    fn divrem_and_gcd() {
        // (1 - q^4) / (1 - q^2) = 1 + q^2
        let a = l(&[(0, 1), (4, -1)]);
        let b = l(&[(0, 1), (2, -1)]);
        let (qt, r) = a.divrem_poly(&b);
        assert!(r.is_zero());
        assert_eq!(qt, l(&[(0, 1), (2, 1)]));
        let g = a.gcd_poly(&b);
        // gcd is monic: q^2 - 1 normalized
        assert_eq!(g, l(&[(0, -1), (2, 1)]));
    }

    #[test]
    fn display_form() {
        let a = l(&[(-2, 1), (0, 3)]);
        assert_eq!(a.to_string(), "1*q^-2 + 3*q^0");
    }
}
