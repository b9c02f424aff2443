//! The two-row convex order built over a folded infinite word: the σ-stable
//! Δ^{(0)} sides ordered by the lifted word, the Δ^{(1)} sides ordered by a
//! fixed enumeration of Σ⁺₀ (ε = 2) or by an auxiliary A2-product word
//! (ε = 3), glued as Δ^{(0)}_> ≺ Δ^{(1)}_> ≺ δ ≺ Δ^{(1)}_< ≺ Δ^{(0)}_<.

use super::sigma::{SigmaClass, SigmaClassification};
use super::{bn_word, InfiniteWord, OrderKey, WordOrder, ZONE_DELTA, ZONE_GT, ZONE_LT, ZONE_MID_GT, ZONE_MID_LT};
use crate::datum::{CartanDatum, Weight};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Zones of the two-row decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Zone {
    Seg0Gt,
    Seg1Gt,
    Delta,
    Seg1Lt,
    Seg0Lt,
}

pub struct TwoRowOrder {
    pub cls: Arc<SigmaClassification>,
    pub folded_word: InfiniteWord,
    /// The lifted word h' over X, split at 0.
    pub lifted: WordOrder,
    /// The chosen enumeration γ_1, ..., γ_t of Σ⁺₀ (ε = 2 inner order).
    pub gammas: Vec<Weight>,
    /// The auxiliary product order (ε = 3 inner order).
    pub aux: Option<AuxOrder>,
}

pub struct AuxOrder {
    pub datum: Arc<CartanDatum>,
    pub order: WordOrder,
    /// Upstairs images of the aux simple roots, 3 per A2-component.
    pub images: Vec<Weight>,
    /// The word used, recorded for reports.
    pub word: InfiniteWord,
}

impl TwoRowOrder {
    pub fn new(
        cls: Arc<SigmaClassification>,
        folded_word: Option<InfiniteWord>,
        gammas: Option<Vec<Weight>>,
    ) -> Result<Self> {
        let hbar = match folded_word {
            Some(w) => {
                super::audit_bn_word(&cls.folded_roots, &w, cls.folded_roots.delta().height() * 2)?;
                w
            }
            None => bn_word(&cls.folded_roots)?,
        };
        // lift: replace each folded letter by its orbit, members ascending
        let mut period = Vec::new();
        for &eta in &hbar.period {
            for &i in &cls.folded.orbits[eta] {
                period.push(i);
            }
        }
        let lifted_word = InfiniteWord { period };
        let lifted = WordOrder::new(cls.datum.clone(), lifted_word, 0);
        let gammas = match gammas {
            Some(g) => {
                let mut want = cls.sigma0_plus.clone();
                want.sort();
                let mut have = g.clone();
                have.sort();
                if want != have {
                    return Err(Error::ValidationFailed(
                        "γ enumeration is not a permutation of Σ⁺₀".into(),
                    ));
                }
                g
            }
            None => {
                let mut g = cls.sigma0_plus.clone();
                g.sort(); // documented default: lexicographic on coordinates
                g
            }
        };
        let aux = if cls.epsilon() == 3 { Some(build_aux(&cls)?) } else { None };
        let order = TwoRowOrder { cls, folded_word: hbar, lifted, gammas, aux };
        order.audit(order.cls.roots.delta().height() + 2)?;
        Ok(order)
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.cls.datum
    }

    /// Zone of a positive real root (or δ).
    pub fn zone(&self, beta: &Weight) -> Result<Zone> {
        if beta == self.cls.roots.delta() {
            return Ok(Zone::Delta);
        }
        let v = self.cls.orbit_sum_folded(beta);
        let (m, fin) = self.cls.folded_level_fin_pub(&v);
        if fin.is_zero() {
            let _ = m;
            let up_fin = self.cls.roots.finite_part(beta);
            if up_fin.is_nonneg() {
                Ok(Zone::Seg1Gt)
            } else {
                Ok(Zone::Seg1Lt)
            }
        } else if fin.is_nonneg() {
            Ok(Zone::Seg0Gt)
        } else {
            Ok(Zone::Seg0Lt)
        }
    }

    pub fn key(&self, beta: &Weight) -> Result<OrderKey> {
        match self.zone(beta)? {
            Zone::Delta => Ok((ZONE_DELTA, 0, 0)),
            Zone::Seg0Gt => match self.lifted.position(beta) {
                Some((true, n)) => Ok((ZONE_GT, n as i64, 0)),
                _ => Err(Error::AuditFailed(format!(
                    "{beta} not found on the > side of the lifted word"
                ))),
            },
            Zone::Seg0Lt => match self.lifted.position(beta) {
                Some((false, n)) => Ok((ZONE_LT, -(n as i64), 0)),
                _ => Err(Error::AuditFailed(format!(
                    "{beta} not found on the < side of the lifted word"
                ))),
            },
            Zone::Seg1Gt => {
                if let Some(aux) = &self.aux {
                    match aux_position(aux, beta, &self.cls)? {
                        (true, n) => Ok((ZONE_MID_GT, n as i64, 0)),
                        _ => Err(Error::AuditFailed(format!("{beta} misplaced in aux order"))),
                    }
                } else {
                    let m = self.cls.roots.level(beta);
                    let fin = self.cls.roots.finite_part(beta);
                    let i = self
                        .gammas
                        .iter()
                        .position(|g| *g == fin)
                        .ok_or_else(|| Error::AuditFailed(format!("{beta}: finite part not in Σ⁺₀")))?;
                    Ok((ZONE_MID_GT, m, i as i64))
                }
            }
            Zone::Seg1Lt => {
                if let Some(aux) = &self.aux {
                    match aux_position(aux, beta, &self.cls)? {
                        (false, n) => Ok((ZONE_MID_LT, -(n as i64), 0)),
                        _ => Err(Error::AuditFailed(format!("{beta} misplaced in aux order"))),
                    }
                } else {
                    let m = self.cls.roots.level(beta);
                    let fin = self.cls.roots.finite_part(beta).neg();
                    let i = self
                        .gammas
                        .iter()
                        .position(|g| *g == fin)
                        .ok_or_else(|| Error::AuditFailed(format!("{beta}: finite part not in -Σ⁺₀")))?;
                    Ok((ZONE_MID_LT, -m, -(i as i64)))
                }
            }
        }
    }

    /// Constructor audit: lifted windows reduced; the lifted β-sequence
    /// exhausts exactly the Δ^{(0)} sides (6.2.6) up to the given height; the
    /// aux sequence (ε = 3) exhausts the Δ^{(1)} sides.
    fn audit(&self, height: i64) -> Result<()> {
        let l = self.lifted.word.len() as i64;
        for start in [-l, 0] {
            let win = self.lifted.word.window(start, start + 2 * l);
            if !crate::datum::is_reduced(&self.cls.datum, &win) {
                return Err(Error::ValidationFailed(format!(
                    "lifted window at {start} is not reduced"
                )));
            }
        }
        let mut want_gt = std::collections::BTreeSet::new();
        let mut want_lt = std::collections::BTreeSet::new();
        for beta in self.cls.roots.real_positive_up_to_height(height) {
            match self.zone(&beta)? {
                Zone::Seg0Gt => {
                    want_gt.insert(beta);
                }
                Zone::Seg0Lt => {
                    want_lt.insert(beta);
                }
                _ => {}
            }
        }
        let steps = (self.lifted.word.len() as i64 * (height + 4)) as usize;
        let mut seen_gt = std::collections::BTreeSet::new();
        let mut seen_lt = std::collections::BTreeSet::new();
        for n in 0..steps {
            let bl = self.lifted.beta_left(n);
            if !matches!(self.zone(&bl)?, Zone::Seg0Gt) {
                return Err(Error::ValidationFailed(format!(
                    "lifted β_{{-{n}}} = {bl} is not in Δ^(0)_>"
                )));
            }
            if bl.height() <= height && !seen_gt.insert(bl.clone()) {
                return Err(Error::ValidationFailed(format!("duplicate {bl}")));
            }
            let br = self.lifted.beta_right(n + 1);
            if !matches!(self.zone(&br)?, Zone::Seg0Lt) {
                return Err(Error::ValidationFailed(format!(
                    "lifted β_{} = {br} is not in Δ^(0)_<",
                    n + 1
                )));
            }
            if br.height() <= height && !seen_lt.insert(br.clone()) {
                return Err(Error::ValidationFailed(format!("duplicate {br}")));
            }
        }
        if seen_gt != want_gt || seen_lt != want_lt {
            return Err(Error::ValidationFailed(
                "lifted word does not exhaust the Δ^(0) sides".into(),
            ));
        }
        Ok(())
    }
}

impl SigmaClassification {
    /// Decompose a folded vector as (level, finite part); public mirror used
    /// by the two-row order.
    pub fn folded_level_fin_pub(&self, v: &Weight) -> (i64, Weight) {
        let m = v.0[0];
        (m, v.sub(&self.folded_roots.delta().scale(m)))
    }
}

/// Split Σ⁺₀ into its orthogonality components, each a positive system of
/// type A2 listed as (γ1, γ2, γ1+γ2).
fn a2_components(cls: &SigmaClassification) -> Result<Vec<[Weight; 3]>> {
    let set = &cls.sigma0_plus;
    let mut comps: Vec<Vec<Weight>> = Vec::new();
    let mut assigned = vec![false; set.len()];
    for s in 0..set.len() {
        if assigned[s] {
            continue;
        }
        let mut comp = vec![s];
        assigned[s] = true;
        let mut grew = true;
        while grew {
            grew = false;
            for t in 0..set.len() {
                if assigned[t] {
                    continue;
                }
                if comp
                    .iter()
                    .any(|&u| cls.datum.form_weights(&set[u], &set[t]) != 0)
                {
                    comp.push(t);
                    assigned[t] = true;
                    grew = true;
                }
            }
        }
        comps.push(comp.into_iter().map(|k| set[k].clone()).collect());
    }
    let mut out = Vec::new();
    for comp in comps {
        if comp.len() != 3 {
            return Err(Error::UnsupportedCase);
        }
        let mut simple: Vec<Weight> = Vec::new();
        let mut top = None;
        for a in &comp {
            let is_sum = comp
                .iter()
                .any(|b| comp.iter().any(|c| b != c && b.add(c) == *a));
            if is_sum {
                top = Some(a.clone());
            } else {
                simple.push(a.clone());
            }
        }
        simple.sort();
        let top = top.ok_or(Error::UnsupportedCase)?;
        if simple.len() != 2 || simple[0].add(&simple[1]) != top {
            return Err(Error::UnsupportedCase);
        }
        out.push([simple[0].clone(), simple[1].clone(), top]);
    }
    out.sort_by_key(|c| c[0].clone());
    Ok(out)
}

fn build_aux(cls: &Arc<SigmaClassification>) -> Result<AuxOrder> {
    let comps = a2_components(cls)?;
    if comps.len() != 2 {
        return Err(Error::UnsupportedCase);
    }
    let delta = cls.roots.delta().clone();
    // images per component: (γ0 = δ - γ1 - γ2, γ1, γ2)
    let mut images = Vec::new();
    for comp in &comps {
        images.push(delta.sub(&comp[2]));
        images.push(comp[0].clone());
        images.push(comp[1].clone());
    }
    // the aux datum: two copies of A2^(1); its form is inherited upstairs
    let mut form = vec![vec![0i64; 6]; 6];
    for a in 0..6 {
        for b in 0..6 {
            form[a][b] = cls.datum.form_weights(&images[a], &images[b]);
        }
    }
    let aux_datum = CartanDatum::new(form)?;
    // per-component BN words over the irreducible A2^(1) data
    let mut period = Vec::new();
    for c in 0..2 {
        let sub = aux_datum.sub_datum(&[3 * c, 3 * c + 1, 3 * c + 2]);
        let subarc = CartanDatum::new(
            (0..3)
                .map(|a| (0..3).map(|b| sub.form_ij(a, b)).collect())
                .collect(),
        )?;
        let ar = crate::datum::AffineRoots::new(subarc)?;
        let w = bn_word(&ar)?;
        for &l in &w.period {
            period.push(3 * c + l);
        }
    }
    let word = InfiniteWord { period };
    let order = WordOrder::new(aux_datum.clone(), word.clone(), 0);
    // audit: the mapped β-sequence covers the Δ^{(1)} sides correctly
    let height = delta.height() * 2;
    let steps = (word.len() as i64 * (height + 4)) as usize;
    for n in 0..steps {
        let bl = map_aux(&images, &order.beta_left(n));
        let fin = cls.roots.finite_part(&bl);
        if !fin.is_nonneg() || cls.class_of(&fin) != Some(SigmaClass::Zero) {
            return Err(Error::ValidationFailed(format!(
                "aux β_{{-{n}}} maps to {bl} outside Δ^(1)_>"
            )));
        }
        let br = map_aux(&images, &order.beta_right(n + 1));
        let finr = cls.roots.finite_part(&br).neg();
        if !finr.is_nonneg() || cls.class_of(&finr) != Some(SigmaClass::Zero) {
            return Err(Error::ValidationFailed(format!(
                "aux β_{} maps to {br} outside Δ^(1)_<",
                n + 1
            )));
        }
    }
    Ok(AuxOrder { datum: aux_datum, order, images, word })
}

fn map_aux(images: &[Weight], aux_weight: &Weight) -> Weight {
    let mut out = Weight::zero(images[0].rank());
    for (k, &c) in aux_weight.0.iter().enumerate() {
        if c != 0 {
            out = out.add(&images[k].scale(c));
        }
    }
    out
}

/// Locate an upstairs Δ^{(1)} root in the auxiliary order.
fn aux_position(
    aux: &AuxOrder,
    beta: &Weight,
    cls: &SigmaClassification,
) -> Result<(bool, usize)> {
    let m = cls.roots.level(beta);
    let fin = cls.roots.finite_part(beta);
    let (plus, gamma) = if fin.is_nonneg() { (true, fin) } else { (false, fin.neg()) };
    // find the component and the (a, b) decomposition γ = aγ1 + bγ2 (+ top)
    for comp in 0..2 {
        let g1 = &aux.images[3 * comp + 1];
        let g2 = &aux.images[3 * comp + 2];
        for (a, b) in [(1i64, 0i64), (0, 1), (1, 1)] {
            if g1.scale(a).add(&g2.scale(b)) == gamma {
                let mut coords = vec![0i64; 6];
                coords[3 * comp] = m;
                coords[3 * comp + 1] = if plus { m + a } else { m - a };
                coords[3 * comp + 2] = if plus { m + b } else { m - b };
                let aux_root = Weight(coords);
                return aux
                    .order
                    .position(&aux_root)
                    .ok_or_else(|| Error::AuditFailed(format!("{beta} not in aux sequence")));
            }
        }
    }
    Err(Error::AuditFailed(format!("{beta} is not a Δ^(1) root")))
}

#[cfg(test)]
mod tests {
    use super::super::sigma::standard_case;
    use super::*;

    #[test]
    fn d4_to_c2_two_row() {
        let (d, aut) = standard_case(2, 4).unwrap();
        let cls = Arc::new(SigmaClassification::new(d, aut).unwrap());
        let order = TwoRowOrder::new(cls.clone(), None, None).unwrap();
        assert!(order.aux.is_none());
        // γ1 = α1+α2+α3 (ε1-ε4 ... lex-least), zone checks
        let delta = cls.roots.delta().clone();
        assert_eq!(order.zone(&delta).unwrap(), Zone::Delta);
        // α1 ∈ Δ^(0)_< (O(α1) = δ̲ - long)
        let rank = cls.datum.rank();
        let a1 = Weight::unit(rank, 1);
        assert_eq!(order.zone(&a1).unwrap(), Zone::Seg0Lt);
        // α2+α3 ∈ Δ^(0)_>
        let a23 = Weight(vec![0, 0, 1, 1, 0]);
        assert_eq!(order.zone(&a23).unwrap(), Zone::Seg0Gt);
        // the Σ⁺₀ roots are the Δ^(1) level-0 members
        for g in &order.gammas {
            assert_eq!(order.zone(g).unwrap(), Zone::Seg1Gt);
            let k = order.key(g).unwrap();
            assert_eq!(k.0, ZONE_MID_GT);
        }
        // σ swaps the Δ^(1) sides for ε = 2
        for g in &order.gammas {
            let img = cls.aut.apply_weight(g);
            assert_eq!(order.zone(&img).unwrap(), Zone::Seg1Lt);
        }
    }

    #[test]
    fn e6_to_g2_two_row_aux() {
        let (d, aut) = standard_case(4, 0).unwrap();
        let cls = Arc::new(SigmaClassification::new(d, aut).unwrap());
        let order = TwoRowOrder::new(cls.clone(), None, None).unwrap();
        let aux = order.aux.as_ref().expect("ε = 3 uses the aux order");
        assert_eq!(aux.images.len(), 6);
        // each Σ⁺₀ root gets a Δ^(1)_> key
        for g in &cls.sigma0_plus {
            let k = order.key(g).unwrap();
            assert_eq!(k.0, ZONE_MID_GT);
        }
    }
}
