//! PBW data: real root vectors from braid-operator chains, the imaginary
//! vectors ψ̃, P̃ and their Schur determinants, and the PBW elements
//! attached to a convex order (or a one-row order with a split).

use crate::braid::{t, t_inv};
use crate::coeff::{qint, Field, Scalar};
use crate::datum::{partitions_of, AffineRoots, Weight, WeylElt};
use crate::error::{Error, Result};
use crate::orders::two_row::Zone;
use crate::orders::{ConvexOrder, OrderKey, ZONE_DELTA};
use crate::uq::{FreeElement, UqContext};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// A PBW index: exponents on the real roots of each side (≺-ascending) and
/// an I₀-tuple of partitions for the imaginary block.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct PbwIndex {
    /// (root, exponent) with roots before δ, in increasing order, exponent > 0.
    pub plus: Vec<(Weight, u32)>,
    /// vertex ↦ partition (weakly decreasing, nonempty), sorted by vertex.
    pub imag: Vec<(usize, Vec<usize>)>,
    /// (root, exponent) with roots after δ, in increasing order, exponent > 0.
    pub minus: Vec<(Weight, u32)>,
}

impl PbwIndex {
    pub fn weight(&self, delta: Option<&Weight>, d_vertex: &dyn Fn(usize) -> i64) -> Weight {
        let rank = self
            .plus
            .iter()
            .chain(self.minus.iter())
            .map(|(b, _)| b.rank())
            .next()
            .or_else(|| delta.map(|d| d.rank()))
            .unwrap_or(0);
        let mut acc = Weight::zero(rank);
        for (b, c) in self.plus.iter().chain(self.minus.iter()) {
            acc = acc.add(&b.scale(*c as i64));
        }
        if let Some(delta) = delta {
            for (i, rho) in &self.imag {
                let size: usize = rho.iter().sum();
                acc = acc.add(&delta.scale(d_vertex(*i) * size as i64));
            }
        }
        acc
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.imag.is_empty() && self.minus.is_empty()
    }

    /// Total exponent of a given real root.
    pub fn exponent(&self, beta: &Weight) -> u32 {
        self.plus
            .iter()
            .chain(self.minus.iter())
            .find(|(b, _)| b == beta)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }
}

/// The (1.7.1)-style comparison: lex along the ≺-ascending scan of the
/// `>`-side and the ≺-descending scan of the `<`-side; `c < d` iff both
/// sequences are ≤ and one is strict. The imaginary block is free.
pub fn index_lt(order: &ConvexOrder, c: &PbwIndex, d: &PbwIndex) -> Result<bool> {
    let plus = seq_cmp(order, &c.plus, &d.plus, false)?;
    let minus = seq_cmp(order, &c.minus, &d.minus, true)?;
    Ok(match (plus, minus) {
        (std::cmp::Ordering::Greater, _) | (_, std::cmp::Ordering::Greater) => false,
        (std::cmp::Ordering::Equal, std::cmp::Ordering::Equal) => false,
        _ => true,
    })
}

fn seq_cmp(
    order: &ConvexOrder,
    a: &[(Weight, u32)],
    b: &[(Weight, u32)],
    descending: bool,
) -> Result<std::cmp::Ordering> {
    let mut keys: Vec<(OrderKey, u32, u32)> = Vec::new();
    let mut index: BTreeMap<OrderKey, usize> = BTreeMap::new();
    for (w, e) in a {
        let k = order.key(w)?;
        let at = *index.entry(k).or_insert_with(|| {
            keys.push((k, 0, 0));
            keys.len() - 1
        });
        keys[at].1 = *e;
    }
    for (w, e) in b {
        let k = order.key(w)?;
        let at = *index.entry(k).or_insert_with(|| {
            keys.push((k, 0, 0));
            keys.len() - 1
        });
        keys[at].2 = *e;
    }
    keys.sort();
    if descending {
        keys.reverse();
    }
    for (_, ea, eb) in keys {
        if ea != eb {
            return Ok(ea.cmp(&eb));
        }
    }
    Ok(std::cmp::Ordering::Equal)
}

/// A deterministic total order on indices extending `index_lt` (used to
/// arrange transition matrices).
pub fn index_sort_key(order: &ConvexOrder, c: &PbwIndex) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut plus: Vec<(OrderKey, u32)> = c
        .plus
        .iter()
        .map(|(w, e)| Ok((order.key(w)?, *e)))
        .collect::<Result<_>>()?;
    plus.sort();
    for (k, e) in plus {
        out.extend_from_slice(&[k.0 as i64, k.1, k.2, e as i64]);
    }
    out.push(i64::MAX);
    let mut minus: Vec<(OrderKey, u32)> = c
        .minus
        .iter()
        .map(|(w, e)| Ok((order.key(w)?, *e)))
        .collect::<Result<_>>()?;
    minus.sort();
    minus.reverse();
    for (k, e) in minus {
        out.extend_from_slice(&[-(k.0 as i64), -k.1, -k.2, e as i64]);
    }
    out.push(i64::MAX);
    for (i, rho) in &c.imag {
        out.push(*i as i64);
        out.extend(rho.iter().map(|&p| p as i64));
        out.push(-1);
    }
    Ok(out)
}

/// Root vectors and PBW elements for one convex order, with memoization.
pub struct PbwEngine<F: Field> {
    pub ctx: Arc<UqContext<F>>,
    pub order: Arc<ConvexOrder>,
    rv_cache: Mutex<HashMap<(Weight, u32), FreeElement<F>>>,
    psi_cache: Mutex<HashMap<(usize, i64), FreeElement<F>>>,
    ptilde_cache: Mutex<HashMap<(usize, i64), FreeElement<F>>>,
}

impl<F: Field> PbwEngine<F> {
    pub fn new(ctx: Arc<UqContext<F>>, order: Arc<ConvexOrder>) -> Self {
        PbwEngine {
            ctx,
            order,
            rv_cache: Mutex::new(HashMap::new()),
            psi_cache: Mutex::new(HashMap::new()),
            ptilde_cache: Mutex::new(HashMap::new()),
        }
    }

    fn affine_roots(&self) -> Option<&AffineRoots> {
        match &*self.order {
            ConvexOrder::OneRow { roots, .. } => Some(roots),
            ConvexOrder::TwoRow(o) => Some(&o.cls.roots),
            ConvexOrder::Transported { roots, .. } => Some(roots),
            ConvexOrder::Finite(_) => None,
        }
    }

    fn d_vertex(&self, i: usize) -> i64 {
        match self.affine_roots() {
            Some(ar) => ar.d_vertex(i),
            None => 1,
        }
    }

    /// The root vector f^{≺,(c)}_β of a real root.
    pub fn real_root_vector(&self, beta: &Weight, c: u32) -> Result<FreeElement<F>> {
        if let Some(hit) = self.rv_cache.lock().unwrap().get(&(beta.clone(), c)) {
            return Ok(hit.clone());
        }
        let val = self.compute_root_vector(beta, c)?;
        self.rv_cache
            .lock()
            .unwrap()
            .insert((beta.clone(), c), val.clone());
        Ok(val)
    }

    fn compute_root_vector(&self, beta: &Weight, c: u32) -> Result<FreeElement<F>> {
        let datum = self.ctx.datum.clone();
        match &*self.order {
            ConvexOrder::Finite(o) => {
                let k = o
                    .position(beta)
                    .ok_or_else(|| Error::Mismatch(format!("{beta} is not a positive root")))?;
                let mut x = FreeElement::divided_power(datum, o.word[k], c as i64);
                for j in (0..k).rev() {
                    x = t(o.word[j], &x)?;
                }
                Ok(x)
            }
            ConvexOrder::OneRow { order, .. } => match order.position(beta) {
                Some((true, n)) => {
                    // β_{p-n}: T_{i_p} ... T_{i_{p-n+1}} (f^{(c)}_{i_{p-n}})
                    let letter = order.word.letter(order.split - n as i64);
                    let mut x = FreeElement::divided_power(datum, letter, c as i64);
                    for j in (0..n).rev() {
                        x = t(order.word.letter(order.split - j as i64), &x)?;
                    }
                    Ok(x)
                }
                Some((false, n)) => {
                    // β_{p+n}: T^{-1}_{i_{p+1}} ... T^{-1}_{i_{p+n-1}} (f^{(c)}_{i_{p+n}})
                    let letter = order.word.letter(order.split + n as i64);
                    let mut x = FreeElement::divided_power(datum, letter, c as i64);
                    for j in (1..n).rev() {
                        x = t_inv(order.word.letter(order.split + j as i64), &x)?;
                    }
                    Ok(x)
                }
                None => Err(Error::Mismatch(format!("{beta} not located in the word"))),
            },
            ConvexOrder::TwoRow(o) => match o.zone(beta)? {
                Zone::Seg0Gt | Zone::Seg0Lt => match o.lifted.position(beta) {
                    Some((true, n)) => {
                        let letter = o.lifted.word.letter(-(n as i64));
                        let mut x = FreeElement::divided_power(datum, letter, c as i64);
                        for j in (0..n).rev() {
                            x = t(o.lifted.word.letter(-(j as i64)), &x)?;
                        }
                        Ok(x)
                    }
                    Some((false, n)) => {
                        let letter = o.lifted.word.letter(n as i64);
                        let mut x = FreeElement::divided_power(datum, letter, c as i64);
                        for j in (1..n).rev() {
                            x = t_inv(o.lifted.word.letter(j as i64), &x)?;
                        }
                        Ok(x)
                    }
                    None => Err(Error::Mismatch(format!("{beta} not in the lifted word"))),
                },
                Zone::Seg1Gt => self.root_vector_by_search(beta, c, false),
                Zone::Seg1Lt => self.root_vector_by_search(beta, c, true),
                Zone::Delta => Err(Error::Mismatch("δ is not a real root".into())),
            },
            ConvexOrder::Transported { .. } => {
                let key = self.order.key(beta)?;
                if key.0 < ZONE_DELTA {
                    self.root_vector_by_search(beta, c, false)
                } else {
                    self.root_vector_by_search(beta, c, true)
                }
            }
        }
    }

    /// The generic construction of f^{≺}_β: find a finite reduced word whose
    /// inversions avoid the ≺-upper partner of every pair summing to β,
    /// contain every ≺-lower partner, and end at β; then run the braid
    /// chain (inverse chain for roots after δ).
    fn root_vector_by_search(
        &self,
        beta: &Weight,
        c: u32,
        after_delta: bool,
    ) -> Result<FreeElement<F>> {
        let datum = self.ctx.datum.clone();
        let ar = self
            .affine_roots()
            .ok_or_else(|| Error::UnsupportedCase)?;
        let key_beta = self.order.key(beta)?;
        // pairs (β1, β2) of positive real roots with β1 + β2 = β
        let mut required: Vec<Weight> = Vec::new();
        let mut forbidden: Vec<Weight> = Vec::new();
        for cand in ar.real_positive_up_to_height(beta.height() - 1) {
            let other = beta.sub(&cand);
            if !(ar.is_positive_real(&other) || &other == ar.delta()) {
                continue;
            }
            let k = self.order.key(&cand)?;
            let lower = k < key_beta;
            // the member on the near side of β (relative to our end) must be
            // an inversion, the other must not
            if lower != after_delta {
                required.push(cand.clone());
            } else {
                forbidden.push(cand.clone());
            }
        }
        required.sort();
        required.dedup();
        let word = find_chain_word(&datum, beta, &required, &forbidden, after_delta, ar)?;
        // the chain: last letter carries the divided power
        let m = word.len();
        let mut x = FreeElement::divided_power(datum, word[m - 1], c as i64);
        for j in (0..m - 1).rev() {
            x = if after_delta { t_inv(word[j], &x)? } else { t(word[j], &x)? };
        }
        Ok(x)
    }

    /// ψ̃_{i,kd_i} (standard coarse type) per the commutator of the level-k
    /// lowering vector with f_i.
    pub fn imaginary_psi(&self, i: usize, k: i64) -> Result<FreeElement<F>> {
        if let Some(hit) = self.psi_cache.lock().unwrap().get(&(i, k)) {
            return Ok(hit.clone());
        }
        let ar = self.affine_roots().ok_or(Error::UnsupportedCase)?;
        if i == 0 {
            return Err(Error::DomainViolation("imaginary index must be in I₀".into()));
        }
        let di = ar.d_vertex(i);
        let rank = self.ctx.datum.rank();
        let alpha = Weight::unit(rank, i);
        let root = ar.delta().scale(k * di).sub(&alpha);
        let f_root = self.real_root_vector(&root, 1)?;
        let f_i = FreeElement::generator(self.ctx.datum.clone(), i);
        let qi2 = Scalar::<F>::q_power(2 * self.ctx.datum.d(i));
        let val = f_root.mul(&f_i).sub(&f_i.mul(&f_root).scale(&qi2));
        self.psi_cache.lock().unwrap().insert((i, k), val.clone());
        Ok(val)
    }

    /// P̃_{i,kd_i} by the recursion
    /// `P_k = [k]^{-1} Σ_{s=1}^{k} q_i^{s-k} ψ_{i,s} P_{k-s}`.
    pub fn imaginary_p(&self, i: usize, k: i64) -> Result<FreeElement<F>> {
        if k == 0 {
            return Ok(FreeElement::one(self.ctx.datum.clone()));
        }
        if let Some(hit) = self.ptilde_cache.lock().unwrap().get(&(i, k)) {
            return Ok(hit.clone());
        }
        let di = self.ctx.datum.d(i);
        let mut acc = FreeElement::zero(self.ctx.datum.clone());
        for s in 1..=k {
            let term = self
                .imaginary_psi(i, s)?
                .mul(&self.imaginary_p(i, k - s)?)
                .scale(&Scalar::q_power(di * (s - k)));
            acc = acc.add(&term);
        }
        let val = acc.scale(&qint::<F>(k, di).inv().expect("[k] ≠ 0"));
        self.ptilde_cache.lock().unwrap().insert((i, k), val.clone());
        Ok(val)
    }

    /// The Schur-type element S_ρ = det(P̃_{i,(ρ'_k - k + m)d_i}).
    pub fn schur_s(&self, i: usize, rho: &[usize]) -> Result<FreeElement<F>> {
        let dual = dual_partition(rho);
        let t = dual.len();
        if t == 0 {
            return Ok(FreeElement::one(self.ctx.datum.clone()));
        }
        // determinant over the commuting family P̃_{i,*}
        let mut acc = FreeElement::zero(self.ctx.datum.clone());
        let mut perm: Vec<usize> = (0..t).collect();
        loop {
            let mut sign = 0usize;
            for a in 0..t {
                for b in a + 1..t {
                    if perm[a] > perm[b] {
                        sign += 1;
                    }
                }
            }
            let mut term = FreeElement::one(self.ctx.datum.clone());
            let mut zero = false;
            for (k, &m) in perm.iter().enumerate() {
                let idx = dual[k] as i64 - k as i64 + m as i64;
                if idx < 0 {
                    zero = true;
                    break;
                }
                term = term.mul(&self.imaginary_p(i, idx)?);
            }
            if !zero {
                acc = if sign % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(acc)
    }

    /// S_{c₀}: the product of the Schur elements over I₀.
    pub fn s_c0(&self, imag: &[(usize, Vec<usize>)]) -> Result<FreeElement<F>> {
        let mut acc = FreeElement::one(self.ctx.datum.clone());
        for (i, rho) in imag {
            acc = acc.mul(&self.schur_s(*i, rho)?);
        }
        Ok(acc)
    }

    /// The PBW element L(c, ≺) (or L(c, p) for a one-row order with split p).
    pub fn pbw_element(&self, index: &PbwIndex) -> Result<FreeElement<F>> {
        let datum = self.ctx.datum.clone();
        // arrange the plus side ascending, minus side ascending (4.19.1)
        let mut plus: Vec<(OrderKey, &Weight, u32)> = index
            .plus
            .iter()
            .map(|(w, e)| Ok((self.order.key(w)?, w, *e)))
            .collect::<Result<_>>()?;
        plus.sort_by_key(|(k, _, _)| *k);
        let mut minus: Vec<(OrderKey, &Weight, u32)> = index
            .minus
            .iter()
            .map(|(w, e)| Ok((self.order.key(w)?, w, *e)))
            .collect::<Result<_>>()?;
        minus.sort_by_key(|(k, _, _)| *k);
        let mut acc = FreeElement::one(datum.clone());
        for (_, w, e) in &plus {
            acc = acc.mul(&self.real_root_vector(w, *e)?);
        }
        if !index.imag.is_empty() {
            let s = self.s_c0(&index.imag)?;
            let conj = match &*self.order {
                ConvexOrder::OneRow { order, .. } => {
                    let p = order.split;
                    let mut x = s;
                    if p <= 0 {
                        // T^{-1}_{i_{p+1}} ... T^{-1}_{i_0}(S): innermost first
                        for j in (p + 1..=0).rev() {
                            x = t_inv(order.word.letter(j), &x)?;
                        }
                    } else {
                        for j in 1..=p {
                            x = t(order.word.letter(j), &x)?;
                        }
                    }
                    x
                }
                // standard coarse type: S^{≺} = S
                _ => s,
            };
            acc = acc.mul(&conj);
        }
        for (_, w, e) in &minus {
            acc = acc.mul(&self.real_root_vector(w, *e)?);
        }
        Ok(acc)
    }

    /// All PBW indices of weight ν, sorted by the deterministic extension
    /// of the (1.7.1) order.
    pub fn indices_of_weight(&self, nu: &Weight) -> Result<Vec<PbwIndex>> {
        self.ctx.check_weight(nu)?;
        let h = nu.height();
        let (lo, hi) = self.order.sides_up_to_height(h)?;
        let delta = self.order.delta();
        let mut out = Vec::new();
        let mut plus: Vec<(Weight, u32)> = Vec::new();
        enumerate_plus(
            self,
            &lo,
            0,
            nu.clone(),
            &mut plus,
            &hi,
            delta.as_ref(),
            &mut out,
        )?;
        let mut keyed: Vec<(Vec<i64>, PbwIndex)> = out
            .into_iter()
            .map(|c| Ok((index_sort_key(&self.order, &c)?, c)))
            .collect::<Result<_>>()?;
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, c)| c).collect())
    }

    /// The PBW basis of a weight space with its elements.
    pub fn basis_of_weight(&self, nu: &Weight) -> Result<Vec<(PbwIndex, FreeElement<F>)>> {
        let mut out = Vec::new();
        for c in self.indices_of_weight(nu)? {
            let e = self.pbw_element(&c)?;
            out.push((c, e));
        }
        Ok(out)
    }
}

fn enumerate_plus<F: Field>(
    eng: &PbwEngine<F>,
    lo: &[Weight],
    k: usize,
    rest: Weight,
    plus: &mut Vec<(Weight, u32)>,
    hi: &[Weight],
    delta: Option<&Weight>,
    out: &mut Vec<PbwIndex>,
) -> Result<()> {
    if k == lo.len() {
        match delta {
            None => {
                enumerate_minus(hi, rest, plus, &Vec::new(), out);
                return Ok(());
            }
            Some(delta) => {
                let max_m = max_delta_multiple(&rest, delta);
                let rank = delta.rank();
                for m in 0..=max_m {
                    let after = rest.sub(&delta.scale(m));
                    if !after.is_nonneg() {
                        continue;
                    }
                    let dv: Vec<i64> = (1..rank).map(|i| eng.d_vertex(i)).collect();
                    for tuple in imaginary_tuples(&dv, m as usize) {
                        enumerate_minus(hi, after.clone(), plus, &tuple, out);
                    }
                }
                return Ok(());
            }
        }
    }
    let mut rest_now = rest;
    let mut e = 0u32;
    loop {
        if e > 0 {
            plus.push((lo[k].clone(), e));
        }
        enumerate_plus(eng, lo, k + 1, rest_now.clone(), plus, hi, delta, out)?;
        if e > 0 {
            plus.pop();
        }
        rest_now = rest_now.sub(&lo[k]);
        if !rest_now.is_nonneg() {
            break;
        }
        e += 1;
    }
    Ok(())
}

fn enumerate_minus(
    hi: &[Weight],
    rest: Weight,
    plus: &Vec<(Weight, u32)>,
    imag: &Vec<(usize, Vec<usize>)>,
    out: &mut Vec<PbwIndex>,
) {
    fn go(
        hi: &[Weight],
        k: usize,
        rest: Weight,
        minus: &mut Vec<(Weight, u32)>,
        plus: &Vec<(Weight, u32)>,
        imag: &Vec<(usize, Vec<usize>)>,
        out: &mut Vec<PbwIndex>,
    ) {
        if rest.is_zero() {
            out.push(PbwIndex { plus: plus.clone(), imag: imag.clone(), minus: minus.clone() });
            return;
        }
        if k == hi.len() {
            return;
        }
        let mut rest_now = rest;
        let mut e = 0u32;
        loop {
            if e > 0 {
                minus.push((hi[k].clone(), e));
            }
            go(hi, k + 1, rest_now.clone(), minus, plus, imag, out);
            if e > 0 {
                minus.pop();
            }
            rest_now = rest_now.sub(&hi[k]);
            if !rest_now.is_nonneg() {
                break;
            }
            e += 1;
        }
    }
    let mut minus = Vec::new();
    go(hi, 0, rest, &mut minus, plus, imag, out);
}

fn max_delta_multiple(rest: &Weight, delta: &Weight) -> i64 {
    let mut m = i64::MAX;
    for (r, d) in rest.0.iter().zip(&delta.0) {
        if *d > 0 {
            m = m.min(r / d);
        }
    }
    m.max(0)
}

/// All I₀-tuples of partitions with Σ d_i |ρ^{(i)}| = m, vertices 1-based.
fn imaginary_tuples(d: &[i64], m: usize) -> Vec<Vec<(usize, Vec<usize>)>> {
    fn go(
        d: &[i64],
        i: usize,
        rest: usize,
        cur: &mut Vec<(usize, Vec<usize>)>,
        out: &mut Vec<Vec<(usize, Vec<usize>)>>,
    ) {
        if i == d.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let di = d[i] as usize;
        let mut size = 0usize;
        while size * di <= rest {
            if size == 0 {
                go(d, i + 1, rest, cur, out);
            } else {
                for rho in partitions_of(size) {
                    cur.push((i + 1, rho));
                    go(d, i + 1, rest - size * di, cur, out);
                    cur.pop();
                }
            }
            size += 1;
        }
    }
    let mut out = Vec::new();
    go(d, 0, m, &mut Vec::new(), &mut out);
    out
}

fn dual_partition(rho: &[usize]) -> Vec<usize> {
    if rho.is_empty() {
        return Vec::new();
    }
    let max = rho[0];
    (1..=max)
        .map(|k| rho.iter().filter(|&&p| p >= k).count())
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Find a reduced word whose inversion sequence contains every required
/// root, avoids every forbidden root, and ends exactly at β. Iterative
/// deepening over the chain formula β_t = s_{j₁}⋯s_{j_{t-1}}(α_{j_t}).
fn find_chain_word(
    datum: &Arc<crate::datum::CartanDatum>,
    beta: &Weight,
    required: &[Weight],
    forbidden: &[Weight],
    _after_delta: bool,
    _ar: &AffineRoots,
) -> Result<Vec<usize>> {
    let rank = datum.rank();
    let max_depth = required.len() + beta.height() as usize + 6;
    for depth in 1..=max_depth {
        let mut word = Vec::new();
        let mut inversions: Vec<Weight> = Vec::new();
        if dfs_chain(
            datum,
            &WeylElt::identity(rank),
            beta,
            required,
            forbidden,
            depth,
            &mut word,
            &mut inversions,
        ) {
            return Ok(word);
        }
    }
    Err(Error::Mismatch(format!(
        "no chain word of length ≤ {max_depth} reaches {beta}"
    )))
}

#[allow(clippy::too_many_arguments)]
fn dfs_chain(
    datum: &Arc<crate::datum::CartanDatum>,
    u: &WeylElt,
    beta: &Weight,
    required: &[Weight],
    forbidden: &[Weight],
    depth: usize,
    word: &mut Vec<usize>,
    inversions: &mut Vec<Weight>,
) -> bool {
    let rank = datum.rank();
    let missing = required.iter().filter(|r| !inversions.contains(r)).count();
    if missing + 1 > depth {
        return false;
    }
    for i in 0..rank {
        let rho = u.apply(&Weight::unit(rank, i));
        if !rho.is_positive_root_vec() || inversions.contains(&rho) {
            continue;
        }
        if rho == *beta {
            if missing == 0 {
                word.push(i);
                return true;
            }
            continue;
        }
        if forbidden.contains(&rho) || rho.height() > beta.height() * 2 + 4 {
            continue;
        }
        if depth == 1 {
            continue;
        }
        word.push(i);
        inversions.push(rho);
        let u2 = u.compose(&WeylElt::simple(datum, i));
        if dfs_chain(datum, &u2, beta, required, forbidden, depth - 1, word, inversions) {
            return true;
        }
        word.pop();
        inversions.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rat;
    use crate::datum::{standard_affine, standard_finite};
    use crate::orders::{bn_word, ConvexOrder, FiniteOrder};
    use crate::uq::inner::{self};

    type E = FreeElement<Rat>;

    fn a2_engine() -> PbwEngine<Rat> {
        let d = standard_finite('A', 2).unwrap();
        let ctx = UqContext::<Rat>::new(d.clone(), 10);
        let word = FiniteOrder::default_word(&d).unwrap();
        let order = ConvexOrder::Finite(FiniteOrder::new(d, word).unwrap());
        PbwEngine::new(ctx, Arc::new(order))
    }

    #[test]
    fn a2_root_vectors() {
        let eng = a2_engine();
        let d = eng.ctx.datum.clone();
        // f_{α1+α2} from the word (1,2,1) is T_1(f_2) = f2 f1 - q f1 f2
        let v = eng.real_root_vector(&Weight(vec![1, 1]), 1).unwrap();
        let f1 = E::generator(d.clone(), 0);
        let f2 = E::generator(d.clone(), 1);
        let expect = f2.mul(&f1).sub(&f1.mul(&f2).scale(&Scalar::q_power(1)));
        assert_eq!(v, expect);
        // simple roots give the generators themselves for any exponent
        let s = eng.real_root_vector(&Weight(vec![1, 0]), 2).unwrap();
        assert_eq!(s, E::divided_power(d, 0, 2));
    }

    #[test]
    fn a2_pbw_basis_almost_orthonormal() {
        let eng = a2_engine();
        let nu = Weight(vec![1, 1]);
        let basis = eng.basis_of_weight(&nu).unwrap();
        assert_eq!(basis.len(), 2);
        let elements: Vec<E> = basis.iter().map(|(_, e)| e.clone()).collect();
        let g = inner::gram_matrix(&elements);
        for i in 0..2 {
            for j in 0..2 {
                let val = g[i][j].q_valuation();
                if i == j {
                    assert_eq!(val, Some(0));
                    assert!(g[i][j].constant_term().is_one());
                } else {
                    assert!(val.map_or(true, |v| v >= 1), "off-diagonal valuation");
                }
            }
        }
    }

    #[test]
    fn a1_affine_imaginary_vectors() {
        let d = standard_affine('A', 1).unwrap();
        let ar = AffineRoots::new(d.clone()).unwrap();
        let w = bn_word(&ar).unwrap();
        let ctx = UqContext::<Rat>::new(d.clone(), 8);
        let order = ConvexOrder::one_row(ar, w, 0);
        let eng = PbwEngine::new(ctx, Arc::new(order));
        // ψ̃_{1,1} has weight δ
        let psi = eng.imaginary_psi(1, 1).unwrap();
        assert_eq!(psi.weight().unwrap(), Weight(vec![1, 1]));
        // P̃_{1,1} = ψ̃_{1,1}
        let p1 = eng.imaginary_p(1, 1).unwrap();
        assert!(p1.equals_in_uq(&psi));
        // S_{(1)} = P̃_{1,1}
        let s = eng.schur_s(1, &[1]).unwrap();
        assert!(s.equals_in_uq(&p1));
        // mutual commutation of ψ̃_{1,1} and ψ̃_{1,2}
        let psi2 = eng.imaginary_psi(1, 2).unwrap();
        let lhs = psi.mul(&psi2);
        let rhs = psi2.mul(&psi);
        assert!(lhs.equals_in_uq(&rhs));
    }

    #[test]
    fn a1_affine_pbw_dimension_and_gram() {
        let d = standard_affine('A', 1).unwrap();
        let ar = AffineRoots::new(d.clone()).unwrap();
        let w = bn_word(&ar).unwrap();
        let ctx = UqContext::<Rat>::new(d.clone(), 8);
        let order = ConvexOrder::one_row(ar, w, 0);
        let eng = PbwEngine::new(ctx, Arc::new(order));
        let nu = Weight(vec![1, 1]); // δ
        let basis = eng.basis_of_weight(&nu).unwrap();
        assert_eq!(basis.len(), crate::datum::pbw_weight_dimension(&d, &nu).unwrap());
        assert_eq!(basis.len(), 2);
        let elements: Vec<E> = basis.iter().map(|(_, e)| e.clone()).collect();
        let g = inner::gram_matrix(&elements);
        for i in 0..basis.len() {
            assert_eq!(g[i][i].q_valuation(), Some(0));
            assert!(g[i][i].constant_term().is_one(), "diag ct at {i}: {}", g[i][i]);
            for j in 0..i {
                assert!(g[i][j].q_valuation().map_or(true, |v| v >= 1));
            }
        }
    }

    #[test]
    fn shift_coherence() {
        // (1.5.12): L(c, -1) = T^{-1}_{i_0}(L(c, 0)) when c_0 = 0
        let d = standard_affine('A', 1).unwrap();
        let ar = AffineRoots::new(d.clone()).unwrap();
        let w = bn_word(&ar).unwrap();
        let ctx = UqContext::<Rat>::new(d.clone(), 8);
        let order0 = ConvexOrder::one_row(ar.clone(), w.clone(), 0);
        let order1 = ConvexOrder::one_row(ar.clone(), w.clone(), -1);
        let eng0 = PbwEngine::new(ctx.clone(), Arc::new(order0));
        let eng1 = PbwEngine::new(ctx, Arc::new(order1));
        let i0 = w.letter(0);
        // δ + α_{i0} sits at position -1 for split 0; at split -1 the same
        // position carries s_{i0}(δ + α_{i0}) = δ - α_{i0}
        let rank = d.rank();
        let beta = ar.delta().add(&Weight::unit(rank, i0));
        let beta_shift = ar.delta().sub(&Weight::unit(rank, i0));
        let c = PbwIndex { plus: vec![(beta, 1)], imag: vec![], minus: vec![] };
        let c_shift = PbwIndex { plus: vec![(beta_shift, 1)], imag: vec![], minus: vec![] };
        let l0 = eng0.pbw_element(&c).unwrap();
        let l1 = eng1.pbw_element(&c_shift).unwrap();
        let transported = t_inv(i0, &l0).unwrap();
        assert!(transported.equals_in_uq(&l1));
        // and with an imaginary index
        let cim = PbwIndex { plus: vec![], imag: vec![(1, vec![1])], minus: vec![] };
        let l0 = eng0.pbw_element(&cim).unwrap();
        let l1 = eng1.pbw_element(&cim).unwrap();
        let transported = t_inv(i0, &l0).unwrap();
        assert!(transported.equals_in_uq(&l1));
    }
}
