//! Root systems: exhaustive finite enumeration and affine real roots up to
//! a height cutoff, plus the PBW index count per weight.

use super::classify::{AffineType, Classification};
use super::{CartanDatum, Weight};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Positive roots of a finite-type datum, sorted by (height, coordinates).
#[derive(Clone, Debug)]
pub struct FiniteRoots {
    pub positive: Vec<Weight>,
    norms: Vec<i64>,
}

impl FiniteRoots {
    pub fn enumerate(datum: &CartanDatum) -> Result<Self> {
        let n = datum.rank();
        let mut set: BTreeSet<Weight> = (0..n).map(|i| Weight::unit(n, i)).collect();
        let mut frontier: Vec<Weight> = set.iter().cloned().collect();
        let height_cap = 40 * n as i64;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                if beta.height() > height_cap {
                    return Err(Error::InvalidDatum(
                        "root enumeration exceeded the finite-type height bound".into(),
                    ));
                }
                for i in 0..n {
                    let cand = {
                        let mut c = beta.clone();
                        c.0[i] += 1;
                        c
                    };
                    if set.contains(&cand) {
                        continue;
                    }
                    // α-string: cand = β + α_i is a root iff p - ⟨β,α_i^∨⟩ > 0
                    // with p the largest k such that β - kα_i is a root.
                    let mut p = 0i64;
                    let mut down = beta.clone();
                    loop {
                        down.0[i] -= 1;
                        let is_simple_neg = down.0.iter().all(|&c| c == 0);
                        if is_simple_neg || !down.is_nonneg() || !set.contains(&down) {
                            break;
                        }
                        p += 1;
                    }
                    // β = α_i itself: the string through α_i contains -α_i
                    if *beta == Weight::unit(n, i) {
                        p = 1;
                    }
                    let pairing = 2 * datum.pair(beta, i) / datum.form_ij(i, i);
                    if p - pairing > 0 {
                        set.insert(cand.clone());
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        let mut positive: Vec<Weight> = set.into_iter().collect();
        positive.sort_by_key(|b| (b.height(), b.clone()));
        let norms = positive.iter().map(|b| datum.form_weights(b, b)).collect();
        Ok(FiniteRoots { positive, norms })
    }

    pub fn contains(&self, beta: &Weight) -> bool {
        if beta.is_nonneg() {
            self.positive.contains(beta)
        } else {
            self.positive.contains(&beta.neg())
        }
    }

    pub fn norm(&self, idx: usize) -> i64 {
        self.norms[idx]
    }

    pub fn max_norm(&self) -> i64 {
        *self.norms.iter().max().unwrap()
    }

    pub fn min_norm(&self) -> i64 {
        *self.norms.iter().min().unwrap()
    }

    pub fn is_short(&self, beta: &Weight) -> bool {
        let b = if beta.is_nonneg() { beta.clone() } else { beta.neg() };
        let idx = self.positive.iter().position(|r| *r == b).expect("not a root");
        self.norms[idx] == self.min_norm()
    }

    /// The highest root (unique maximal-height positive root).
    pub fn highest_root(&self) -> &Weight {
        self.positive.last().unwrap()
    }

    /// The highest short root; `None` when all roots share one length.
    pub fn highest_short(&self) -> Option<Weight> {
        if self.min_norm() == self.max_norm() {
            return None;
        }
        self.positive
            .iter()
            .enumerate()
            .filter(|(k, _)| self.norms[*k] == self.min_norm())
            .map(|(_, b)| b.clone())
            .max_by_key(|b| (b.height(), b.clone()))
    }
}

/// Real root bookkeeping for an affine datum marked at vertex 0.
#[derive(Clone, Debug)]
pub struct AffineRoots {
    pub datum: Arc<CartanDatum>,
    pub affine: AffineType,
    /// Positive roots of the finite subsystem on I₀, in full-I coordinates.
    pub finite_positive: Vec<Weight>,
    finite_short: Vec<bool>,
}

impl AffineRoots {
    pub fn new(datum: Arc<CartanDatum>) -> Result<Self> {
        let affine = match datum.classify()? {
            Classification::Affine(t) => t,
            Classification::Finite(_) => {
                return Err(Error::InvalidDatum("expected an affine datum".into()))
            }
        };
        let keep: Vec<usize> = (1..datum.rank()).collect();
        let sub = datum.sub_datum(&keep);
        let fr = FiniteRoots::enumerate(&sub)?;
        let min_norm = fr.min_norm();
        let finite_short = fr
            .positive
            .iter()
            .enumerate()
            .map(|(k, _)| fr.norm(k) == min_norm)
            .collect();
        let finite_positive = fr
            .positive
            .iter()
            .map(|b| {
                let mut v = vec![0i64; datum.rank()];
                v[1..].copy_from_slice(&b.0);
                Weight(v)
            })
            .collect();
        Ok(AffineRoots { datum, affine, finite_positive, finite_short })
    }

    pub fn delta(&self) -> &Weight {
        &self.affine.delta
    }

    pub fn twist(&self) -> i64 {
        self.affine.twist
    }

    /// Level m of a root written as `finite_part + m·δ`.
    pub fn level(&self, beta: &Weight) -> i64 {
        beta.0[0]
    }

    pub fn finite_part(&self, beta: &Weight) -> Weight {
        beta.sub(&self.delta().scale(self.level(beta)))
    }

    /// Period d_α of (1.5.5): 1 for untwisted data, (α,α)/2 for twisted.
    pub fn d_alpha(&self, finite_root: &Weight) -> i64 {
        if self.affine.twist == 1 {
            1
        } else {
            self.datum.form_weights(finite_root, finite_root) / 2
        }
    }

    pub fn d_vertex(&self, i: usize) -> i64 {
        if self.affine.twist == 1 {
            1
        } else {
            self.datum.d(i)
        }
    }

    fn is_short_finite(&self, finite_root: &Weight) -> bool {
        let b = if finite_root.is_nonneg() { finite_root.clone() } else { finite_root.neg() };
        let idx = self
            .finite_positive
            .iter()
            .position(|r| *r == b)
            .expect("not a finite root");
        self.finite_short[idx]
    }

    /// Whether an integral vector is a positive real root.
    pub fn is_positive_real(&self, beta: &Weight) -> bool {
        let m = self.level(beta);
        if m < 0 {
            return false;
        }
        let fp = self.finite_part(beta);
        if fp.is_zero() {
            return false;
        }
        let pos = fp.is_nonneg();
        if !pos && m == 0 {
            return false;
        }
        let abs = if pos { fp.clone() } else { fp.neg() };
        if !self.finite_positive.contains(&abs) {
            return false;
        }
        let r = if self.is_short_finite(&abs) { 1 } else { self.affine.twist };
        m % r == 0
    }

    /// All positive real roots of height ≤ h, per (1.2.1), sorted by
    /// (height, coordinates). The `>`-class has positive finite part.
    pub fn real_positive_up_to_height(&self, h: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        let dh = self.delta().height();
        for (idx, alpha) in self.finite_positive.iter().enumerate() {
            let r = if self.finite_short[idx] { 1 } else { self.affine.twist };
            // α + mrδ, m ≥ 0
            let mut m = 0i64;
            loop {
                let root = alpha.add(&self.delta().scale(m * r));
                if root.height() > h {
                    break;
                }
                out.push(root);
                m += 1;
            }
            // mrδ - α, m ≥ 1
            let mut m = 1i64;
            loop {
                let root = self.delta().scale(m * r).sub(alpha);
                if root.height() > h {
                    break;
                }
                out.push(root);
                m += 1;
            }
            let _ = dh;
        }
        out.sort_by_key(|b| (b.height(), b.clone()));
        out
    }
}

/// Count the PBW indices of weight ν: exponent assignments on the real
/// positive roots plus, in the affine case, an I₀-tuple of partitions
/// absorbing a multiple of δ.
pub fn pbw_weight_dimension(datum: &Arc<CartanDatum>, nu: &Weight) -> Result<usize> {
    if !nu.is_nonneg() {
        return Ok(0);
    }
    match datum.classify()? {
        Classification::Finite(_) => {
            let roots = FiniteRoots::enumerate(datum)?;
            let usable: Vec<Weight> = roots
                .positive
                .iter()
                .filter(|b| b.height() <= nu.height())
                .cloned()
                .collect();
            Ok(count_real(&usable, nu, &|rest| if rest.is_zero() { 1 } else { 0 }))
        }
        Classification::Affine(_) => {
            let ar = AffineRoots::new(datum.clone())?;
            let usable = ar.real_positive_up_to_height(nu.height());
            let delta = ar.delta().clone();
            let dvs: Vec<i64> = (1..datum.rank()).map(|i| ar.d_vertex(i)).collect();
            let imag = move |rest: &Weight| -> usize {
                if rest.is_zero() {
                    return 1;
                }
                // rest must be m·δ
                let m = rest.0[0];
                if m <= 0 || rest != &delta.scale(m) {
                    return 0;
                }
                partition_tuple_count(&dvs, m as usize)
            };
            Ok(count_real(&usable, nu, &imag))
        }
    }
}

fn count_real(roots: &[Weight], nu: &Weight, terminal: &dyn Fn(&Weight) -> usize) -> usize {
    fn go(
        roots: &[Weight],
        k: usize,
        rest: &Weight,
        terminal: &dyn Fn(&Weight) -> usize,
    ) -> usize {
        if k == roots.len() {
            return terminal(rest);
        }
        let mut acc = 0usize;
        let mut cur = rest.clone();
        loop {
            acc += go(roots, k + 1, &cur, terminal);
            cur = cur.sub(&roots[k]);
            if !cur.is_nonneg() {
                break;
            }
        }
        acc
    }
    go(roots, 0, nu, terminal)
}

/// Number of I₀-tuples of partitions `(ρ^{(i)})` with `Σ_i d_i·|ρ^{(i)}| = m`.
pub fn partition_tuple_count(d: &[i64], m: usize) -> usize {
    let p = partition_counts(m);
    // DP over vertices
    let mut acc = vec![0usize; m + 1];
    acc[0] = 1;
    for &di in d {
        let mut next = vec![0usize; m + 1];
        for total in 0..=m {
            if acc[total] == 0 {
                continue;
            }
            let mut k = 0usize;
            while total + (di as usize) * k <= m {
                next[total + (di as usize) * k] += acc[total] * p[k];
                k += 1;
            }
        }
        acc = next;
    }
    acc[m]
}

/// Partition numbers p(0..=m).
pub fn partition_counts(m: usize) -> Vec<usize> {
    let mut p = vec![0usize; m + 1];
    p[0] = 1;
    for part in 1..=m {
        for total in part..=m {
            p[total] += p[total - part];
        }
    }
    p
}

/// All partitions of m, each as a weakly decreasing list.
pub fn partitions_of(m: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, maxpart: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=m.min(maxpart)).rev() {
            prefix.push(part);
            go(m - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{standard_affine, standard_finite};

    #[test]
    fn a2_positive_roots() {
        let d = standard_finite('A', 2).unwrap();
        let r = FiniteRoots::enumerate(&d).unwrap();
        assert_eq!(
            r.positive,
            vec![Weight(vec![0, 1]), Weight(vec![1, 0]), Weight(vec![1, 1])]
        );
    }

    #[test]
    fn e_series_counts() {
        let e7 = FiniteRoots::enumerate(&standard_finite('E', 7).unwrap()).unwrap();
        assert_eq!(e7.positive.len(), 63);
        let e6 = FiniteRoots::enumerate(&standard_finite('E', 6).unwrap()).unwrap();
        assert_eq!(e6.positive.len(), 36);
    }

    #[test]
    fn d4_affine_roots() {
        let d = standard_affine('D', 4).unwrap();
        let ar = AffineRoots::new(d).unwrap();
        // α0 = δ - θ with θ = α1 + 2α2 + α3 + α4
        let alpha0 = Weight(vec![1, 0, 0, 0, 0]);
        let theta = ar.delta().sub(&alpha0);
        assert_eq!(theta, Weight(vec![0, 1, 2, 1, 1]));
        assert!(ar.is_positive_real(&alpha0));
        // exhaustive check: every vector of height ≤ 7 that is a real root
        // shows up exactly once
        let roots = ar.real_positive_up_to_height(7);
        let mut seen = std::collections::BTreeSet::new();
        for r in &roots {
            assert!(ar.is_positive_real(r), "{r}");
            assert!(seen.insert(r.clone()), "duplicate {r}");
        }
    }

    #[test]
    fn pbw_dimensions() {
        let a2 = standard_finite('A', 2).unwrap();
        assert_eq!(pbw_weight_dimension(&a2, &Weight(vec![1, 1])).unwrap(), 2);
        assert_eq!(pbw_weight_dimension(&a2, &Weight(vec![0, 0])).unwrap(), 1);
        // A1^(1) at ν = δ: one real pair (α1, δ-α1) and one 1-part partition
        let a1a = standard_affine('A', 1).unwrap();
        assert_eq!(pbw_weight_dimension(&a1a, &Weight(vec![1, 1])).unwrap(), 2);
    }

    #[test]
    fn partition_helpers() {
        assert_eq!(partition_counts(5), vec![1, 1, 2, 3, 5, 7]);
        assert_eq!(partitions_of(4).len(), 5);
        // two vertices with d = 1: Σ p(a)p(b) over a+b=3 is 1·3+1·2+2·1+3·1 = 10
        assert_eq!(partition_tuple_count(&[1, 1], 3), 10);
    }
}
