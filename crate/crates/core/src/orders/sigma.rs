//! The σ-classification of finite positive roots of an affine datum whose
//! diagram automorphism moves the marked vertex: the Σ-sets, their
//! partition of Δ₀⁺, and the level-by-level orbit bijection onto the
//! folded root classes.

use crate::datum::{
    fold, weight_to_folded, AffineRoots, CartanDatum, DiagramAut, FiniteRoots, FoldedDatum,
    Weight, WeylElt,
};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Which Σ-class a finite positive root belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum SigmaClass {
    /// O(α) a short positive folded root.
    Short,
    /// O(α) a long positive folded root.
    Long,
    /// O(α) ∈ δ + (folded long roots).
    LongPrime,
    /// O(α) ∈ 2δ + (folded long roots); only for ε = 3.
    LongDoublePrime,
    /// O(α) a positive multiple of δ.
    Zero,
}

/// The σ-classification data for one of the four admissible cases.
pub struct SigmaClassification {
    pub datum: Arc<CartanDatum>,
    pub aut: DiagramAut,
    pub roots: AffineRoots,
    pub folded: FoldedDatum,
    pub folded_roots: AffineRoots,
    /// Positive roots of the finite subsystem Δ₀⁺, full-I coordinates.
    pub finite_positive: Vec<Weight>,
    /// Class of each entry of `finite_positive`.
    pub classes: Vec<SigmaClass>,
    /// Σ⁺₀ in (height, lex) order.
    pub sigma0_plus: Vec<Weight>,
    folded_finite: FiniteRoots,
}

impl SigmaClassification {
    pub fn new(datum: Arc<CartanDatum>, aut: DiagramAut) -> Result<Self> {
        if !datum.is_simply_laced() {
            return Err(Error::UnsupportedCase);
        }
        if aut.apply(0) == 0 {
            // σ preserving I₀ is the twisted-target setting, outside §5
            return Err(Error::UnsupportedCase);
        }
        if !matches!(aut.order(), 2 | 3) {
            return Err(Error::UnsupportedCase);
        }
        let roots = AffineRoots::new(datum.clone())?;
        let folded = fold(&datum, &aut)?;
        let folded_roots = AffineRoots::new(folded.datum.clone())?;
        let keep: Vec<usize> = (1..folded.datum.rank()).collect();
        let folded_finite = FiniteRoots::enumerate(&folded.datum.sub_datum(&keep))?;
        let finite_positive = roots.finite_positive.clone();
        let mut classes = Vec::with_capacity(finite_positive.len());
        let mut sigma0_plus = Vec::new();
        for alpha in &finite_positive {
            let class = classify_one(&aut, &folded, &folded_roots, &folded_finite, alpha)?;
            if class == SigmaClass::Zero {
                sigma0_plus.push(alpha.clone());
            }
            classes.push(class);
        }
        let cls = SigmaClassification {
            datum,
            aut,
            roots,
            folded,
            folded_roots,
            finite_positive,
            classes,
            sigma0_plus,
            folded_finite,
        };
        cls.audit_partition()?;
        Ok(cls)
    }

    pub fn epsilon(&self) -> usize {
        self.aut.order()
    }

    pub fn folded_finite(&self) -> &FiniteRoots {
        &self.folded_finite
    }

    pub fn class_of(&self, alpha: &Weight) -> Option<SigmaClass> {
        self.finite_positive
            .iter()
            .position(|b| b == alpha)
            .map(|k| self.classes[k])
    }

    pub fn members(&self, class: SigmaClass) -> Vec<Weight> {
        self.finite_positive
            .iter()
            .zip(&self.classes)
            .filter(|(_, c)| **c == class)
            .map(|(b, _)| b.clone())
            .collect()
    }

    /// The positive-target variant Σ⁺_x of (5.4.1): members whose orbit sum
    /// has positive folded finite part (all of Σ⁺_s, Σ⁺_l, Σ⁺₀ qualify).
    pub fn members_positive(&self, class: SigmaClass) -> Vec<Weight> {
        self.members(class)
            .into_iter()
            .filter(|a| {
                let v = self.orbit_sum_folded(a);
                let m = v.0[0];
                let fin = v.sub(&self.folded_roots.delta().scale(m));
                fin.is_nonneg()
            })
            .collect()
    }

    /// O(β) of an arbitrary root, read in folded coordinates.
    pub fn orbit_sum_folded(&self, beta: &Weight) -> Weight {
        let o = self.aut.orbit_sum(beta);
        weight_to_folded(&self.folded, &o).expect("orbit sums are σ-fixed")
    }

    /// Lemma 5.5(ii): the five classes partition Δ₀⁺ (checked during
    /// construction), and the (5.5.2) count
    /// c·|Δ̲_{0,l}| = |Δ₀⁺| - |(Δ₀')⁺| - |Σ⁺₀| holds with equality.
    fn audit_partition(&self) -> Result<()> {
        let c = if self.epsilon() == 2 { 1 } else { 3 };
        let folded_long = self
            .folded_finite
            .positive
            .iter()
            .filter(|b| !self.folded_finite.is_short(b))
            .count()
            * 2;
        let eta0 = self.aut.orbit_of(0).to_vec();
        let i0prime: Vec<usize> = (0..self.datum.rank())
            .filter(|i| !eta0.contains(i))
            .collect();
        let sub = self.datum.sub_datum(&i0prime);
        let delta0_prime = FiniteRoots::enumerate(&sub)?.positive.len();
        let lhs = c * folded_long;
        let rhs = self.finite_positive.len() - delta0_prime - self.sigma0_plus.len();
        if lhs != rhs {
            return Err(Error::AuditFailed(format!(
                "cardinality (5.5.2): {lhs} ≠ {rhs}"
            )));
        }
        // Lemma 5.5(i): Σ_l' ⊔ Σ_l'' = E⁺
        let eplus = self.e_plus();
        let mut lp: BTreeSet<Weight> = self.members(SigmaClass::LongPrime).into_iter().collect();
        for b in self.members(SigmaClass::LongDoublePrime) {
            lp.insert(b);
        }
        if lp != eplus {
            return Err(Error::AuditFailed("Σ_l' ⊔ Σ_l'' ≠ E⁺".into()));
        }
        Ok(())
    }

    /// E⁺: the W̄₀-orbits of the σ-translates of α₀ (for ε = 3 joined with
    /// the orbit of θ), intersected with Δ₀⁺.
    pub fn e_plus(&self) -> BTreeSet<Weight> {
        let rank = self.datum.rank();
        let mut gens: Vec<WeylElt> = Vec::new();
        for orb in self.folded.orbits.iter().skip(1) {
            let mut w = WeylElt::identity(rank);
            for &i in orb {
                w = w.compose(&WeylElt::simple(&self.datum, i));
            }
            gens.push(w);
        }
        let mut frontier = Vec::new();
        let mut cur = Weight::unit(rank, 0);
        for _ in 1..self.epsilon() {
            cur = self.aut.apply_weight(&cur);
            frontier.push(cur.clone());
        }
        if self.epsilon() == 3 {
            frontier.push(self.roots.delta().sub(&Weight::unit(rank, 0)));
        }
        let mut orbit: BTreeSet<Weight> = BTreeSet::new();
        while let Some(b) = frontier.pop() {
            if !orbit.insert(b.clone()) {
                continue;
            }
            for g in &gens {
                frontier.push(g.apply(&b));
            }
        }
        orbit.into_iter().filter(|b| b.is_nonneg()).collect()
    }

    /// The level-m set Σ_x(m) (σ-saturated for x ≠ 0, plain for x = 0), or
    /// the primed variant Σ'_x(m); built over Σ⁺_x per (5.6.1).
    pub fn sigma_set(&self, class: SigmaClass, m: i64, primed: bool) -> BTreeSet<Weight> {
        let delta = self.roots.delta();
        let mut out = BTreeSet::new();
        for a in self.members_positive(class) {
            let b = if primed { delta.scale(m).sub(&a) } else { delta.scale(m).add(&a) };
            if class == SigmaClass::Zero {
                out.insert(b);
            } else {
                let mut cur = b;
                for _ in 0..self.epsilon() {
                    out.insert(cur.clone());
                    cur = self.aut.apply_weight(&cur);
                }
            }
        }
        out
    }

    /// σ-orbits of a set of roots.
    pub fn orbits_in(&self, set: &BTreeSet<Weight>) -> Vec<Vec<Weight>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for b in set {
            if seen.contains(b) {
                continue;
            }
            let mut orb = Vec::new();
            let mut cur = b.clone();
            while seen.insert(cur.clone()) {
                orb.push(cur.clone());
                cur = self.aut.apply_weight(&cur);
            }
            out.push(orb);
        }
        out
    }

    /// Folded set `{mδ̲ ± ᾱ : ᾱ positive of the requested length}`.
    pub fn folded_target(&self, long: bool, m: i64, primed: bool) -> BTreeSet<Weight> {
        let deltab = self.folded_roots.delta();
        self.folded_finite
            .positive
            .iter()
            .filter(|b| self.folded_finite.is_short(b) != long)
            .map(|b| {
                let mut v = vec![0i64];
                v.extend_from_slice(&b.0);
                let bv = Weight(v);
                if primed {
                    deltab.scale(m).sub(&bv)
                } else {
                    deltab.scale(m).add(&bv)
                }
            })
            .collect()
    }

    /// Verify the Prop 5.7 tables at one level m (and m ≥ 1 for the primed
    /// rows): the orbit-sum map f is a bijection from σ-orbits of each
    /// Σ-set onto its folded target, with the fibers the proof describes.
    pub fn verify_orbit_bijection(&self, m: i64) -> Result<()> {
        use SigmaClass::*;
        let eps = self.epsilon() as i64;
        let mut jobs: Vec<(SigmaClass, bool, bool, i64)> = Vec::new();
        for primed in [false, true] {
            if primed && m < 1 {
                continue;
            }
            jobs.push((Short, primed, false, m));
            jobs.push((Long, primed, true, eps * m));
            if !primed {
                jobs.push((LongPrime, false, true, eps * m + 1));
                if eps == 3 {
                    jobs.push((LongDoublePrime, false, true, 3 * m + 2));
                }
            } else {
                if eps * m - 1 >= 1 {
                    jobs.push((LongPrime, true, true, eps * m - 1));
                }
                if eps == 3 && 3 * m - 2 >= 1 {
                    jobs.push((LongDoublePrime, true, true, 3 * m - 2));
                }
            }
        }
        for (class, primed, tgt_long, tgt_m) in jobs {
            let src = self.sigma_set(class, m, primed);
            let orbits = self.orbits_in(&src);
            let mut images: BTreeMap<Weight, usize> = BTreeMap::new();
            for orb in &orbits {
                let img = self.orbit_sum_folded(&orb[0]);
                *images.entry(img).or_insert(0) += 1;
            }
            let target = self.folded_target(tgt_long, tgt_m, primed);
            let got: BTreeSet<Weight> = images.keys().cloned().collect();
            if images.values().any(|&c| c != 1) || got != target {
                return Err(Error::Mismatch(format!(
                    "Prop 5.7 fails for {class:?} m={m} primed={primed}: {} orbits, {} targets",
                    orbits.len(),
                    target.len()
                )));
            }
            // fiber audit: each fiber (σ-orbit) sums to its image
            for orb in &orbits {
                let img = self.orbit_sum_folded(&orb[0]);
                let mut total = Weight::zero(self.datum.rank());
                for b in orb {
                    total = total.add(b);
                }
                let lifted = weight_to_folded(&self.folded, &total).expect("σ-fixed");
                if lifted != img {
                    return Err(Error::Mismatch("fiber does not sum to its image".into()));
                }
            }
        }
        Ok(())
    }
}

fn classify_one(
    aut: &DiagramAut,
    folded: &FoldedDatum,
    folded_roots: &AffineRoots,
    folded_finite: &FiniteRoots,
    alpha: &Weight,
) -> Result<SigmaClass> {
    let o = aut.orbit_sum(alpha);
    let v = weight_to_folded(folded, &o).expect("orbit sum is σ-fixed");
    let m = v.0[0];
    let fin = v.sub(&folded_roots.delta().scale(m));
    if fin.is_zero() {
        if m <= 0 {
            return Err(Error::AuditFailed(format!("O({alpha}) = {m}δ with m ≤ 0")));
        }
        return Ok(SigmaClass::Zero);
    }
    let inner = Weight(fin.0[1..].to_vec());
    let abs = if inner.is_nonneg() { inner.clone() } else { inner.neg() };
    if fin.0[0] != 0 || !folded_finite.contains(&abs) {
        return Err(Error::AuditFailed(format!(
            "O({alpha}) has finite part outside the folded system"
        )));
    }
    let long = !folded_finite.is_short(&abs);
    match (m, long, inner.is_nonneg()) {
        (0, false, true) => Ok(SigmaClass::Short),
        (0, true, true) => Ok(SigmaClass::Long),
        (1, true, _) => Ok(SigmaClass::LongPrime),
        (2, true, _) => Ok(SigmaClass::LongDoublePrime),
        _ => Err(Error::AuditFailed(format!(
            "O({alpha}) = {m}δ̲ + (positive {}, long {long}) violates Lemma 5.5",
            inner.is_nonneg()
        ))),
    }
}

/// The four admissible (X, σ) pairs of the classification, by standard
/// constructions. `n` is the parameter of cases 1 and 2 and ignored
/// otherwise.
pub fn standard_case(case: usize, n: usize) -> Result<(Arc<CartanDatum>, DiagramAut)> {
    match case {
        1 => {
            // X = D_{2n}^{(1)}, σ: i ↔ 2n - i
            let d = crate::datum::standard_affine('D', 2 * n)?;
            let rank = d.rank();
            let perm: Vec<usize> = (0..rank).map(|i| 2 * n - i).collect();
            let aut = DiagramAut::new(&d, perm)?;
            Ok((d, aut))
        }
        2 => {
            // X = D_n^{(1)}, σ: 0 ↔ 1, n-1 ↔ n
            let d = crate::datum::standard_affine('D', n)?;
            let mut perm: Vec<usize> = (0..=n).collect();
            perm.swap(0, 1);
            perm.swap(n - 1, n);
            let aut = DiagramAut::new(&d, perm)?;
            Ok((d, aut))
        }
        3 => {
            // X = E_7^{(1)}, σ: i ↔ 6 - i for i ≤ 6, fixing 7
            let d = crate::datum::standard_affine('E', 7)?;
            let mut perm: Vec<usize> = (0..8).collect();
            for i in 0..=6 {
                perm[i] = 6 - i;
            }
            let aut = DiagramAut::new(&d, perm)?;
            Ok((d, aut))
        }
        4 => {
            // X = E_6^{(1)}, σ: 0 → 5 → 1 → 0, 6 → 4 → 2 → 6, fixing 3
            let d = crate::datum::standard_affine('E', 6)?;
            let perm = vec![5, 0, 6, 3, 2, 1, 4];
            let aut = DiagramAut::new(&d, perm)?;
            Ok((d, aut))
        }
        _ => Err(Error::UnsupportedCase),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::epsilon_coords_string;

    fn finite_coords(b: &Weight) -> Weight {
        Weight(b.0[1..].to_vec())
    }

    #[test]
    fn case1_d4_table() {
        let (d, aut) = standard_case(1, 2).unwrap();
        let cls = SigmaClassification::new(d, aut).unwrap();
        // (5.3.4): Σ⁺₀ = {ε1+ε4, ε2+ε3} for n = 2
        let coords: Vec<String> = cls
            .sigma0_plus
            .iter()
            .map(|b| epsilon_coords_string('D', 4, &finite_coords(b)).unwrap())
            .collect();
        assert_eq!(coords.len(), 2, "{coords:?}");
        assert!(coords.contains(&"e1 + e4".to_string()));
        assert!(coords.contains(&"e2 + e3".to_string()));
    }

    #[test]
    fn case2_d4_table() {
        let (d, aut) = standard_case(2, 4).unwrap();
        let cls = SigmaClassification::new(d, aut).unwrap();
        // (5.3.5): Σ⁺₀ = {ε1 ± ε4}
        let coords: Vec<String> = cls
            .sigma0_plus
            .iter()
            .map(|b| epsilon_coords_string('D', 4, &finite_coords(b)).unwrap())
            .collect();
        assert_eq!(coords.len(), 2, "{coords:?}");
        assert!(coords.contains(&"e1 + e4".to_string()));
        assert!(coords.contains(&"e1 - e4".to_string()));
    }

    #[test]
    fn case3_e7_table() {
        let (d, aut) = standard_case(3, 0).unwrap();
        let cls = SigmaClassification::new(d.clone(), aut).unwrap();
        // (5.3.6): three mutually orthogonal roots; β3 = ε5 + ε6
        assert_eq!(cls.sigma0_plus.len(), 3);
        let coords: Vec<String> = cls
            .sigma0_plus
            .iter()
            .map(|b| epsilon_coords_string('E', 7, &finite_coords(b)).unwrap())
            .collect();
        assert!(coords.contains(&"e5 + e6".to_string()), "{coords:?}");
        for a in &cls.sigma0_plus {
            for b in &cls.sigma0_plus {
                if a != b {
                    assert_eq!(d.form_weights(a, b), 0);
                }
            }
        }
    }

    #[test]
    fn case4_e6_table() {
        let (d, aut) = standard_case(4, 0).unwrap();
        let cls = SigmaClassification::new(d, aut).unwrap();
        // (5.3.8): six roots forming 2A2, two of which are non-simple sums
        assert_eq!(cls.sigma0_plus.len(), 6);
        let set: BTreeSet<Weight> = cls.sigma0_plus.iter().cloned().collect();
        let mut sums = 0;
        for a in &set {
            for b in &set {
                if a < b && set.contains(&a.add(b)) {
                    sums += 1;
                }
            }
        }
        assert_eq!(sums, 2, "two A2 triangles");
    }

    #[test]
    fn orbit_bijections_small_levels() {
        for (case, n) in [(1, 2), (2, 4), (3, 0), (4, 0)] {
            let (d, aut) = standard_case(case, n).unwrap();
            let cls = SigmaClassification::new(d, aut).unwrap();
            for m in 0..=2 {
                cls.verify_orbit_bijection(m).unwrap();
            }
        }
    }

    #[test]
    fn orbit_sum_identities() {
        // (5.2.1) and (5.2.2)
        for (case, n) in [(1, 2), (2, 4), (3, 0), (4, 0)] {
            let (d, aut) = standard_case(case, n).unwrap();
            let cls = SigmaClassification::new(d.clone(), aut).unwrap();
            let rank = d.rank();
            let alpha0 = Weight::unit(rank, 0);
            let theta = cls.roots.delta().sub(&alpha0);
            let deltab = cls.folded_roots.delta().clone();
            let thetab = {
                let hb = cls.folded_finite.highest_root().clone();
                let mut v = vec![0i64];
                v.extend_from_slice(&hb.0);
                Weight(v)
            };
            assert_eq!(cls.orbit_sum_folded(&alpha0), deltab.sub(&thetab));
            let expect = if cls.epsilon() == 2 {
                deltab.add(&thetab)
            } else {
                deltab.scale(2).add(&thetab)
            };
            assert_eq!(cls.orbit_sum_folded(&theta), expect);
        }
    }
}
