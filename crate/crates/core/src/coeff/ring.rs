//! Exact scalars: rational functions in q in canonical form, and the
//! quantum integers `[n]`, factorials and binomials built from them.

use super::field::{Field, Fp, Rat};
use super::laurent::Laurent;
use std::fmt;

/// A rational function in q over the coefficient field, kept in canonical
/// form: the denominator is a true polynomial in q with nonzero constant
/// term and leading coefficient 1, and shares no factor with the numerator.
///
/// Equality of canonical forms is literal equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar<F: Field> {
    num: Laurent<F>,
    den: Laurent<F>,
}

impl<F: Field> Scalar<F> {
    pub fn zero() -> Self {
        Scalar { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Laurent::one(), den: Laurent::one() }
    }

    pub fn from_laurent(num: Laurent<F>) -> Self {
        Scalar { num, den: Laurent::one() }
    }

    pub fn from_field(c: F) -> Self {
        Scalar::from_laurent(Laurent::monomial(c, 0))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_field(F::from_i64(n))
    }

    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Scalar::from_laurent(Laurent::q_power(e))
    }

    pub fn new(num: Laurent<F>, den: Laurent<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Scalar { num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Laurent::one();
            return;
        }
        // Shift all q-powers of the denominator into the numerator.
        let dval = self.den.val().unwrap();
        if dval != 0 {
            self.num = self.num.shift(-dval);
            self.den = self.den.shift(-dval);
        }
        if !self.den.is_one() {
            let g = self.num.gcd_poly(&self.den);
            if !g.is_one() && !g.is_zero() {
                let nval = self.num.val().unwrap();
                let (nq, nr) = self.num.divrem_poly(&g);
                debug_assert!(nr.is_zero());
                let (dq, dr) = self.den.divrem_poly(&g);
                debug_assert!(dr.is_zero());
                self.num = nq.shift(nval);
                self.den = dq;
            }
            let lead = self.den.leading_coeff();
            if !lead.is_one() {
                let inv = lead.inv().unwrap();
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn numerator(&self) -> &Laurent<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent<F>> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: self.num.add(&rhs.num), den: Laurent::one() };
        }
        Scalar::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: self.num.mul(&rhs.num), den: Laurent::one() };
        }
        Scalar::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    pub fn scale_field(&self, c: &F) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Scalar { num: self.num.shift(e), den: self.den.clone() }
    }

    /// The bar involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        Scalar::new(self.num.bar(), self.den.bar())
    }

    /// q-adic valuation: least exponent of the expansion at q = 0.
    /// `None` encodes +∞ (the zero element).
    ///
    /// The canonical form guarantees the denominator is invertible in
    /// `F[[q]]`, so the expansion always exists up to a monomial shift.
    pub fn q_valuation(&self) -> Option<i64> {
        self.num.val()
    }

    /// Coefficients of the q-adic expansion for exponents `lo..=hi`.
    pub fn series_coeffs(&self, lo: i64, hi: i64) -> Vec<F> {
        if hi < lo {
            return Vec::new();
        }
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        // num / den with den(0) != 0: standard power series long division.
        let d0 = self.den.constant_coeff().inv().expect("denominator unit at q=0");
        let mut partial: Vec<F> = Vec::new(); // expansion coefficients from q^v upward
        let v = match self.num.val() {
            None => {
                return vec![F::zero(); (hi - lo + 1) as usize];
            }
            Some(v) => v,
        };
        let need = if hi >= v { (hi - v + 1) as usize } else { 0 };
        for k in 0..need {
            // coefficient of q^(v+k) in num  minus  Σ_{j<k} partial[j]·den[k-j]
            let mut c = self.num.coeff(v + k as i64);
            for j in 0..k {
                let dcoef = self.den.coeff((k - j) as i64);
                if !dcoef.is_zero() {
                    c = c.sub(&partial[j].mul(&dcoef));
                }
            }
            partial.push(c.mul(&d0));
        }
        for e in lo..=hi {
            if e < v || (e - v) as usize >= partial.len() {
                out.push(F::zero());
            } else {
                out.push(partial[(e - v) as usize].clone());
            }
        }
        out
    }

    /// Coefficient of q^0 in the q-adic expansion.
    pub fn constant_term(&self) -> F {
        self.series_coeffs(0, 0).remove(0)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Scalar<G> {
        Scalar::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }
}

impl Scalar<Rat> {
    /// True when the value lies in `Z[q, q^{-1}]`.
    pub fn is_integral_laurent(&self) -> bool {
        self.den.is_one() && self.num.is_integral()
    }

    /// Reduce mod P. Requires the denominator to stay invertible mod P.
    pub fn reduce_mod<const P: u64>(&self) -> Option<Scalar<Fp<P>>> {
        let num = self.num.reduce_mod::<P>()?;
        let den = self.den.reduce_mod::<P>()?;
        if den.is_zero() || den.constant_coeff().is_zero() {
            return None;
        }
        Some(Scalar::new(num, den))
    }
}

impl<F: Field> fmt::Display for Scalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// The quantum integer `[n]` in the variable `q^d`:
/// `(q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn qint<F: Field>(n: i64, d: i64) -> Scalar<F> {
    assert!(d > 0, "q_i requires positive (α_i,α_i)/2");
    let (sign, n) = if n < 0 { (true, -n) } else { (false, n) };
    let mut acc = Laurent::zero();
    // q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}
    let mut e = -(n - 1) * d;
    for _ in 0..n {
        acc = acc.add(&Laurent::q_power(e));
        e += 2 * d;
    }
    let s = Scalar::from_laurent(acc);
    if sign {
        s.neg()
    } else {
        s
    }
}

/// `[n]!` in the variable `q^d`. Panics for negative n.
pub fn qfact<F: Field>(n: i64, d: i64) -> Scalar<F> {
    assert!(n >= 0, "negative quantum factorial");
    let mut acc = Scalar::one();
    for k in 1..=n {
        acc = acc.mul(&qint(k, d));
    }
    acc
}

/// Quantum binomial `[n choose k]` in the variable `q^d`.
pub fn qbinom<F: Field>(n: i64, k: i64, d: i64) -> Scalar<F> {
    assert!(n >= 0 && k >= 0 && k <= n, "qbinom out of range");
    qfact::<F>(n, d).div(&qfact::<F>(k, d).mul(&qfact::<F>(n - k, d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = Scalar<Rat>;

    fn q() -> S {
        S::q_power(1)
    }

    #[test]
    fn qint_small() {
        // [2] = q + q^-1
        assert_eq!(qint::<Rat>(2, 1), q().add(&S::q_power(-1)));
        assert!(qint::<Rat>(0, 1).is_zero());
        assert!(qint::<Rat>(1, 3).is_one());
        assert_eq!(qint::<Rat>(-2, 1), qint::<Rat>(2, 1).neg());
    }

    #[test]
    fn qint_by_division_oracle() {
        // [3] in q^2 as (q^6 - q^-6)/(q^2 - q^-2), computed by exact division.
        let num = S::q_power(6).sub(&S::q_power(-6));
        let den = S::q_power(2).sub(&S::q_power(-2));
        let expect = num.div(&den);
        assert_eq!(qint::<Rat>(3, 2), expect);
        // q^4 + 1 + q^-4
        let direct = S::q_power(4).add(&S::one()).add(&S::q_power(-4));
        assert_eq!(expect, direct);
    }

    #[test]
    fn qfact_qbinom() {
        assert!(qfact::<Rat>(0, 1).is_one());
        assert_eq!(qfact::<Rat>(2, 1), qint::<Rat>(2, 1));
        // [2 choose 1] = [2]!/([1]![1]!) = [2]
        assert_eq!(qbinom::<Rat>(2, 1, 1), qint::<Rat>(2, 1));
        // binomials are Laurent polynomials with nonnegative integer coefficients
        let b = qbinom::<Rat>(4, 2, 1);
        let lp = b.as_laurent().expect("laurent");
        assert!(lp.terms().all(|(_, c)| c.to_integer().map_or(false, |z| z >= 0.into())));
    }

    #[test]
    fn bar_on_fractions() {
        // bar((1-q^2)^{-1}) = (1-q^{-2})^{-1} = -q^2 (1-q^2)^{-1}
        let one_minus_q2 = S::one().sub(&S::q_power(2));
        let x = one_minus_q2.inv().unwrap();
        let lhs = x.bar();
        let rhs = S::q_power(2).neg().mul(&x);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.bar(), x);
    }

    #[test]
    fn valuation_and_series() {
        let one_minus_q2 = S::one().sub(&S::q_power(2));
        let x = one_minus_q2.inv().unwrap();
        // geometric series 1 + q^2 + q^4 + ...
        assert_eq!(x.q_valuation(), Some(0));
        assert!(x.constant_term().is_one());
        assert_eq!(
            x.series_coeffs(0, 5),
            [1, 0, 1, 0, 1, 0].iter().map(|&c| Rat::from_int(c)).collect::<Vec<_>>()
        );
        // q/(1-q^2)^2 has valuation 1
        let y = q().mul(&x).mul(&x);
        assert_eq!(y.q_valuation(), Some(1));
        assert!(S::zero().q_valuation().is_none());
        // constant term of q^-1: expansion is q^-1, coefficient at q^0 is 0
        assert!(S::q_power(-1).constant_term().is_zero());
    }

    #[test]
    fn valuation_additive() {
        let a = S::q_power(3).mul(&S::one().sub(&S::q_power(2)).inv().unwrap());
        let b = S::q_power(-1).add(&S::q_power(4));
        assert_eq!(
            a.mul(&b).q_valuation().unwrap(),
            a.q_valuation().unwrap() + b.q_valuation().unwrap()
        );
    }
}
