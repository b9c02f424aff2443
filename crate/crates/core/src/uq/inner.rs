//! The bilinear form of the twisted coproduct, computed by peeling letters.
//!
//! For words, (x, f_j·v) = (f_j, f_j)·(ⱼr(x), v). Factoring out the
//! (f_j,f_j) = (1 - q_j²)^{-1} prefactors — one per letter, so a fixed
//! product per weight — leaves a Laurent-polynomial recursion, which is
//! what everything here manipulates ("normalized" values N(x, y) with
//! (x, y) = prefactor(ν)·N(x, y)).

use super::{FreeElement, Word};
use crate::coeff::{Field, Scalar};
use crate::datum::Weight;
use std::collections::BTreeMap;

/// `Π_i (1 - q^{2 d_i})^{-ν_i}`: the product of (f_j, f_j) over the letters
/// of any word of weight ν.
pub fn prefactor<F: Field>(datum: &crate::datum::CartanDatum, nu: &Weight) -> Scalar<F> {
    let mut acc = Scalar::<F>::one();
    for (i, &mult) in nu.0.iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let f = Scalar::<F>::one().sub(&Scalar::q_power(2 * datum.d(i)));
        let fi = f.inv().expect("1 - q^{2d} is invertible");
        for _ in 0..mult {
            acc = acc.mul(&fi);
        }
    }
    acc
}

/// Normalized pairings N(x, w) against every word w of weight wt(x),
/// sharing work across common prefixes of w.
pub fn pair_functional<F: Field>(x: &FreeElement<F>) -> BTreeMap<Word, Scalar<F>> {
    let mut out = BTreeMap::new();
    let Some(nu) = x.weight() else {
        return out;
    };
    let datum = x.datum().clone();
    let state: Vec<(Word, Scalar<F>)> =
        x.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut remaining = nu;
    let mut prefix = Word::new();
    dfs(&datum, state, &mut remaining, &mut prefix, &mut out);
    out
}

fn dfs<F: Field>(
    datum: &crate::datum::CartanDatum,
    state: Vec<(Word, Scalar<F>)>,
    remaining: &mut Weight,
    prefix: &mut Word,
    out: &mut BTreeMap<Word, Scalar<F>>,
) {
    if remaining.is_zero() {
        let val = state
            .into_iter()
            .find(|(w, _)| w.is_empty())
            .map(|(_, c)| c)
            .unwrap_or_else(Scalar::zero);
        out.insert(prefix.clone(), val);
        return;
    }
    for j in 0..remaining.rank() {
        if remaining.0[j] == 0 {
            continue;
        }
        let next = peel(datum, &state, j);
        remaining.0[j] -= 1;
        prefix.push(j as u8);
        if next.is_empty() {
            // whole subtree pairs to zero
            record_zero_subtree(remaining, prefix, out);
        } else {
            dfs(datum, next, remaining, prefix, out);
        }
        prefix.pop();
        remaining.0[j] += 1;
    }
}

fn record_zero_subtree<F: Field>(
    remaining: &mut Weight,
    prefix: &mut Word,
    out: &mut BTreeMap<Word, Scalar<F>>,
) {
    if remaining.is_zero() {
        out.insert(prefix.clone(), Scalar::zero());
        return;
    }
    for j in 0..remaining.rank() {
        if remaining.0[j] == 0 {
            continue;
        }
        remaining.0[j] -= 1;
        prefix.push(j as u8);
        record_zero_subtree(remaining, prefix, out);
        prefix.pop();
        remaining.0[j] += 1;
    }
}

/// Apply the normalized ⱼr to an expanded state.
fn peel<F: Field>(
    datum: &crate::datum::CartanDatum,
    state: &[(Word, Scalar<F>)],
    j: usize,
) -> Vec<(Word, Scalar<F>)> {
    let mut acc: BTreeMap<Word, Scalar<F>> = BTreeMap::new();
    for (w, c) in state {
        let mut prefix_wt = Weight::zero(datum.rank());
        for (k, &l) in w.iter().enumerate() {
            if l as usize == j {
                let e = -datum.pair(&prefix_wt, j);
                let mut rest = w.clone();
                rest.remove(k);
                let val = c.shift(e);
                let slot = acc.entry(rest).or_insert_with(Scalar::zero);
                *slot = slot.add(&val);
            }
            prefix_wt.0[l as usize] += 1;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc.into_iter().collect()
}

/// Normalized pairing of two elements of equal weight.
pub fn pair_normalized<F: Field>(x: &FreeElement<F>, y: &FreeElement<F>) -> Scalar<F> {
    match (x.weight(), y.weight()) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Scalar::zero(),
    }
    let f = pair_functional(x);
    dot_functional(&f, y)
}

pub fn dot_functional<F: Field>(
    f: &BTreeMap<Word, Scalar<F>>,
    y: &FreeElement<F>,
) -> Scalar<F> {
    let mut acc = Scalar::zero();
    for (w, c) in y.terms() {
        if let Some(v) = f.get(w) {
            if !v.is_zero() {
                acc = acc.add(&v.mul(c));
            }
        }
    }
    acc
}

/// The true bilinear form (x, y); zero across distinct weights.
pub fn inner<F: Field>(x: &FreeElement<F>, y: &FreeElement<F>) -> Scalar<F> {
    let n = pair_normalized(x, y);
    if n.is_zero() {
        return n;
    }
    let nu = x.weight().unwrap();
    n.mul(&prefactor(x.datum(), &nu))
}

/// Normalized Gram matrix N(x_i, x_j) of a family of equal-weight elements.
pub fn gram_matrix<F: Field>(xs: &[FreeElement<F>]) -> Vec<Vec<Scalar<F>>> {
    let n = xs.len();
    let mut g = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        let f = pair_functional(&xs[i]);
        for j in i..n {
            let v = dot_functional(&f, &xs[j]);
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rat;
    use crate::datum::standard_finite;
    use std::sync::Arc;

    type E = FreeElement<Rat>;

    #[test]
    fn form_on_generators() {
        let d = standard_finite('A', 2).unwrap();
        let f1 = E::generator(d.clone(), 0);
        let f2 = E::generator(d.clone(), 1);
        // (f1, f1) = (1 - q^2)^{-1}
        let expect = Scalar::<Rat>::one()
            .sub(&Scalar::q_power(2))
            .inv()
            .unwrap();
        assert_eq!(inner(&f1, &f1), expect);
        assert!(inner(&f1, &f2).is_zero());
    }

    #[test]
    fn form_on_words() {
        let d = standard_finite('A', 2).unwrap();
        let f1 = E::generator(d.clone(), 0);
        let f2 = E::generator(d.clone(), 1);
        let x = f1.mul(&f2);
        let y = f2.mul(&f1);
        // (f1f2, f2f1) = q (1-q^2)^{-2}
        let c = Scalar::<Rat>::one().sub(&Scalar::q_power(2)).inv().unwrap();
        assert_eq!(inner(&x, &y), Scalar::q_power(1).mul(&c).mul(&c));
        assert_eq!(inner(&x, &x), c.mul(&c));
        // adjointness (1.12.2): (f1·f2, x) = (f1,f1)·(f2, ₁r(x))
        let lhs = inner(&f1.mul(&f2), &x);
        let rhs = inner(&f1, &f1).mul(&inner(&f2, &x.i_r(0)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn serre_is_radical_zero() {
        let d = standard_finite('A', 2).unwrap();
        let s = E::serre_element(d.clone(), 0, 1);
        assert!(!s.is_free_zero());
        assert!(pair_functional(&s).values().all(|v| v.is_zero()));
        // f1 f2 - f2 f1 is NOT zero in U_q^-
        let f1 = E::generator(d.clone(), 0);
        let f2 = E::generator(d.clone(), 1);
        let x = f1.mul(&f2).sub(&f2.mul(&f1));
        assert!(pair_functional(&x).values().any(|v| !v.is_zero()));
        let _ = Arc::strong_count(&d);
    }
}
