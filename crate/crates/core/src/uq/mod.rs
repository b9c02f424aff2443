//! The algebra U_q⁻ of a validated Cartan datum: elements as linear
//! combinations of words in the generators f_i, the twisted-coproduct
//! bilinear form, and equality modulo the radical of the form.

pub mod inner;
mod space;

pub use inner::{gram_matrix, inner, pair_functional, prefactor};
pub use space::{GramSolver, WeightSpace};

use crate::coeff::{qfact, Field, Fp, Rat, Scalar};
use crate::datum::{CartanDatum, DiagramAut, Weight};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// A word in the generators, as vertex indices.
pub type Word = Vec<u8>;

pub fn word_weight(rank: usize, w: &[u8]) -> Weight {
    let mut v = vec![0i64; rank];
    for &l in w {
        v[l as usize] += 1;
    }
    Weight(v)
}

/// Shared computation context: the datum, the global height cutoff, and
/// per-weight caches (idempotent, internally synchronized).
pub struct UqContext<F: Field> {
    pub datum: Arc<CartanDatum>,
    pub cutoff: usize,
    words: Mutex<HashMap<Weight, Arc<Vec<Word>>>>,
    _marker: std::marker::PhantomData<F>,
}

impl<F: Field> UqContext<F> {
    pub fn new(datum: Arc<CartanDatum>, cutoff: usize) -> Arc<Self> {
        Arc::new(UqContext {
            datum,
            cutoff,
            words: Mutex::new(HashMap::new()),
            _marker: std::marker::PhantomData,
        })
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn check_weight(&self, nu: &Weight) -> Result<()> {
        let h = nu.height();
        if h < 0 || h as usize > self.cutoff {
            return Err(Error::CutoffExceeded { got: h.max(0) as usize, cutoff: self.cutoff });
        }
        Ok(())
    }

    /// All words of the given weight, in lexicographic order.
    pub fn words_of_weight(&self, nu: &Weight) -> Arc<Vec<Word>> {
        if let Some(hit) = self.words.lock().unwrap().get(nu) {
            return hit.clone();
        }
        let mut out = Vec::new();
        let mut remaining = nu.clone();
        let mut prefix = Word::new();
        enumerate_words(&mut remaining, &mut prefix, &mut out);
        let arc = Arc::new(out);
        self.words
            .lock()
            .unwrap()
            .entry(nu.clone())
            .or_insert_with(|| arc.clone())
            .clone()
    }
}

fn enumerate_words(remaining: &mut Weight, prefix: &mut Word, out: &mut Vec<Word>) {
    if remaining.is_zero() {
        out.push(prefix.clone());
        return;
    }
    for i in 0..remaining.rank() {
        if remaining.0[i] > 0 {
            remaining.0[i] -= 1;
            prefix.push(i as u8);
            enumerate_words(remaining, prefix, out);
            prefix.pop();
            remaining.0[i] += 1;
        }
    }
}

/// Weight-homogeneous element of the free algebra on the f_i, representing
/// an element of U_q⁻. Zero coefficients are pruned.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeElement<F: Field> {
    datum: Arc<CartanDatum>,
    terms: BTreeMap<Word, Scalar<F>>,
}

impl<F: Field> FreeElement<F> {
    pub fn zero(datum: Arc<CartanDatum>) -> Self {
        FreeElement { datum, terms: BTreeMap::new() }
    }

    pub fn one(datum: Arc<CartanDatum>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::new(), Scalar::one());
        FreeElement { datum, terms }
    }

    pub fn generator(datum: Arc<CartanDatum>, i: usize) -> Self {
        FreeElement::from_word(datum, vec![i as u8])
    }

    pub fn from_word(datum: Arc<CartanDatum>, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        FreeElement { datum, terms }
    }

    pub fn from_terms(datum: Arc<CartanDatum>, terms: BTreeMap<Word, Scalar<F>>) -> Self {
        let mut e = FreeElement { datum, terms };
        e.prune();
        e.assert_homogeneous();
        e
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn assert_homogeneous(&self) {
        debug_assert!(
            {
                let mut wts = self
                    .terms
                    .keys()
                    .map(|w| word_weight(self.datum.rank(), w));
                match wts.next() {
                    None => true,
                    Some(first) => wts.all(|w| w == first),
                }
            },
            "element is not weight-homogeneous"
        );
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar<F>> {
        &self.terms
    }

    pub fn is_free_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Weight of the element; `None` for the free zero.
    pub fn weight(&self) -> Option<Weight> {
        self.terms
            .keys()
            .next()
            .map(|w| word_weight(self.datum.rank(), w))
    }

    fn same_context(&self, o: &FreeElement<F>) -> Result<()> {
        if Arc::ptr_eq(&self.datum, &o.datum) || self.datum == o.datum {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, o: &FreeElement<F>) -> FreeElement<F> {
        self.try_add(o).expect("context mismatch")
    }

    pub fn try_add(&self, o: &FreeElement<F>) -> Result<FreeElement<F>> {
        self.same_context(o)?;
        debug_assert!(
            self.is_free_zero() || o.is_free_zero() || self.weight() == o.weight(),
            "adding elements of different weights"
        );
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            let slot = terms.entry(w.clone()).or_insert_with(Scalar::zero);
            *slot = slot.add(c);
        }
        let mut e = FreeElement { datum: self.datum.clone(), terms };
        e.prune();
        Ok(e)
    }

    pub fn sub(&self, o: &FreeElement<F>) -> FreeElement<F> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FreeElement<F> {
        FreeElement {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar<F>) -> FreeElement<F> {
        if c.is_zero() {
            return FreeElement::zero(self.datum.clone());
        }
        FreeElement {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &FreeElement<F>) -> FreeElement<F> {
        self.try_mul(o).expect("context mismatch")
    }

    /// Word-concatenation product, extended bilinearly.
    pub fn try_mul(&self, o: &FreeElement<F>) -> Result<FreeElement<F>> {
        self.same_context(o)?;
        let mut terms: BTreeMap<Word, Scalar<F>> = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let c = c1.mul(c2);
                let slot = terms.entry(w).or_insert_with(Scalar::zero);
                *slot = slot.add(&c);
            }
        }
        let mut e = FreeElement { datum: self.datum.clone(), terms };
        e.prune();
        Ok(e)
    }

    /// Divided power `f_i^{(n)} = f_i^n / [n]!_{q_i}`.
    pub fn divided_power(datum: Arc<CartanDatum>, i: usize, n: i64) -> FreeElement<F> {
        assert!(n >= 0);
        let d = datum.d(i);
        let coeff = qfact::<F>(n, d).inv().expect("[n]! is nonzero");
        let mut terms = BTreeMap::new();
        terms.insert(vec![i as u8; n as usize], coeff);
        FreeElement { datum, terms }
    }

    /// The quantum Serre element `Σ_k (-1)^k f_i^{(k)} f_j f_i^{(1-a_ij-k)}`.
    pub fn serre_element(datum: Arc<CartanDatum>, i: usize, j: usize) -> FreeElement<F> {
        assert_ne!(i, j);
        let top = 1 - datum.cartan(i, j);
        let mut acc = FreeElement::zero(datum.clone());
        for k in 0..=top {
            let term = FreeElement::divided_power(datum.clone(), i, k)
                .mul(&FreeElement::generator(datum.clone(), j))
                .mul(&FreeElement::divided_power(datum.clone(), i, top - k));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Bar involution: conjugate coefficients, fix words.
    pub fn bar(&self) -> FreeElement<F> {
        FreeElement {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect(),
        }
    }

    /// The anti-automorphism `*`: reverse words.
    pub fn star(&self) -> FreeElement<F> {
        FreeElement {
            datum: self.datum.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.iter().rev().cloned().collect(), c.clone()))
                .collect(),
        }
    }

    /// Apply a diagram automorphism to the letters.
    pub fn apply_aut(&self, aut: &DiagramAut) -> FreeElement<F> {
        FreeElement {
            datum: self.datum.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    (
                        w.iter().map(|&l| aut.apply(l as usize) as u8).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// `ᵢr`: the `f_i ⊗ (·)` component of the twisted coproduct.
    pub fn i_r(&self, i: usize) -> FreeElement<F> {
        let mut terms: BTreeMap<Word, Scalar<F>> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut prefix = Weight::zero(self.datum.rank());
            for (k, &l) in w.iter().enumerate() {
                if l as usize == i {
                    let e = -self.datum.pair(&prefix, i);
                    let mut rest = w.clone();
                    rest.remove(k);
                    let val = c.shift(e);
                    let slot = terms.entry(rest).or_insert_with(Scalar::zero);
                    *slot = slot.add(&val);
                }
                prefix.0[l as usize] += 1;
            }
        }
        let mut e = FreeElement { datum: self.datum.clone(), terms };
        e.prune();
        e
    }

    /// `rᵢ`: the `(·) ⊗ f_i` component of the twisted coproduct.
    pub fn r_i(&self, i: usize) -> FreeElement<F> {
        let mut terms: BTreeMap<Word, Scalar<F>> = BTreeMap::new();
        for (w, c) in &self.terms {
            let full = word_weight(self.datum.rank(), w);
            let mut prefix = Weight::zero(self.datum.rank());
            for (k, &l) in w.iter().enumerate() {
                if l as usize == i {
                    let mut suffix = full.sub(&prefix);
                    suffix.0[i] -= 1;
                    let e = -self.datum.pair(&suffix, i);
                    let mut rest = w.clone();
                    rest.remove(k);
                    let val = c.shift(e);
                    let slot = terms.entry(rest).or_insert_with(Scalar::zero);
                    *slot = slot.add(&val);
                }
                prefix.0[l as usize] += 1;
            }
        }
        let mut e = FreeElement { datum: self.datum.clone(), terms };
        e.prune();
        e
    }

    /// Exact equality test in U_q⁻: x = 0 iff (x, w) = 0 for every word w of
    /// the same weight (non-degeneracy of the bilinear form).
    pub fn is_zero_in_uq(&self) -> bool {
        if self.is_free_zero() {
            return true;
        }
        pair_functional(self).values().all(|v| v.is_zero())
    }

    pub fn equals_in_uq(&self, o: &FreeElement<F>) -> bool {
        self.sub(o).is_zero_in_uq()
    }
}

impl FreeElement<Rat> {
    /// Reduce an integral element mod P (coefficients must be in Z[q,q^-1]
    /// up to denominators invertible mod P).
    pub fn reduce_mod<const P: u64>(
        &self,
        datum: Arc<CartanDatum>,
    ) -> Result<FreeElement<Fp<P>>> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let r = c.reduce_mod::<P>().ok_or_else(|| {
                Error::DenominatorWitness(format!("coefficient {c} at word {w:?}"))
            })?;
            if !r.is_zero() {
                terms.insert(w.clone(), r);
            }
        }
        Ok(FreeElement { datum, terms })
    }
}

impl<F: Field> fmt::Debug for FreeElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for FreeElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*f[", c)?;
            for (k, l) in w.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", l)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::standard_finite;

    fn a2() -> Arc<CartanDatum> {
        standard_finite('A', 2).unwrap()
    }

    #[test]
    fn products_and_divided_powers() {
        let d = a2();
        let f1 = FreeElement::<Rat>::generator(d.clone(), 0);
        let f2 = FreeElement::<Rat>::generator(d.clone(), 1);
        let p = f1.mul(&f2);
        assert_eq!(p.terms().len(), 1);
        assert!(p.terms().contains_key(&vec![0u8, 1u8]));
        let dp = FreeElement::<Rat>::divided_power(d.clone(), 0, 2);
        let expect = qfact::<Rat>(2, 1).inv().unwrap();
        assert_eq!(dp.terms()[&vec![0u8, 0u8]], expect);
        // associativity
        let y = f1.mul(&f2).add(&f2.mul(&f1).scale(&Scalar::q_power(-1)));
        let z = f1.clone();
        assert_eq!(y.mul(&f2).mul(&z), y.mul(&f2.mul(&z)));
    }

    #[test]
    fn star_and_bar() {
        let d = a2();
        let f1 = FreeElement::<Rat>::generator(d.clone(), 0);
        let f2 = FreeElement::<Rat>::generator(d.clone(), 1);
        let x = f1.mul(&f2).scale(&Scalar::q_power(1));
        assert_eq!(x.bar().terms()[&vec![0u8, 1u8]], Scalar::q_power(-1));
        assert_eq!(x.star().terms()[&vec![1u8, 0u8]], Scalar::q_power(1));
        // star is an anti-automorphism
        let y = f2.mul(&f1);
        assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
        // palindromes are star-fixed
        let p = f1.mul(&f2).mul(&f1);
        assert_eq!(p.star(), p);
    }

    #[test]
    fn i_r_values() {
        let d = a2();
        let f1 = FreeElement::<Rat>::generator(d.clone(), 0);
        let f2 = FreeElement::<Rat>::generator(d.clone(), 1);
        assert_eq!(f1.i_r(0), FreeElement::one(d.clone()));
        assert!(f2.i_r(0).is_free_zero());
        // ₁r(f1 f2) = f2 ; ₁r(f2 f1) = q f2
        assert_eq!(f1.mul(&f2).i_r(0), f2);
        assert_eq!(f2.mul(&f1).i_r(0), f2.scale(&Scalar::q_power(1)));
        // r_1(f1 f2) = q f2-side: r₁ extracts ·⊗f1: r₁(f1f2) = q^{-(α2,α1)}f2 = q f2
        assert_eq!(f1.mul(&f2).r_i(0), f2.scale(&Scalar::q_power(1)));
        assert_eq!(f2.mul(&f1).r_i(0), f2);
    }
}
