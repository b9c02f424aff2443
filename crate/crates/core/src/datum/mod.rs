//! Cartan data, diagram automorphisms, root systems, Weyl groups, and
//! folding of data along an admissible automorphism.

mod classify;
mod roots;
mod standard;
mod weyl;

pub use classify::{AffineType, Classification, FiniteType};
pub use roots::{partition_counts, partition_tuple_count, partitions_of, pbw_weight_dimension, AffineRoots, FiniteRoots};
pub use standard::{epsilon_coords_string, standard_affine, standard_finite};
pub use weyl::{is_reduced, WeylElt};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Element of the root lattice in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| c * a).collect())
    }

    /// Sum of coordinates.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Positivity for lattice vectors that are known to be roots.
    pub fn is_positive_root_vec(&self) -> bool {
        !self.is_zero() && self.is_nonneg()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, ")")
    }
}

/// A Cartan datum: vertex set `0..rank` with the symmetric bilinear form
/// `(α_i, α_j)` satisfying the integrality axioms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanDatum {
    form: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn new(form: Vec<Vec<i64>>) -> Result<Arc<Self>> {
        let d = CartanDatum { form };
        d.validate()?;
        Ok(Arc::new(d))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.form.len();
        if n == 0 {
            return Err(Error::InvalidDatum("empty vertex set".into()));
        }
        for row in &self.form {
            if row.len() != n {
                return Err(Error::InvalidDatum("form matrix is not square".into()));
            }
        }
        for i in 0..n {
            if self.form[i][i] <= 0 || self.form[i][i] % 2 != 0 {
                return Err(Error::InvalidDatum(format!(
                    "(α_{i},α_{i}) = {} is not a positive even integer",
                    self.form[i][i]
                )));
            }
            for j in 0..n {
                if self.form[i][j] != self.form[j][i] {
                    return Err(Error::InvalidDatum("form matrix not symmetric".into()));
                }
                if i != j {
                    let two_ij = 2 * self.form[i][j];
                    if two_ij > 0 {
                        return Err(Error::InvalidDatum(format!(
                            "(α_{i},α_{j}) = {} must be ≤ 0",
                            self.form[i][j]
                        )));
                    }
                    if two_ij % self.form[i][i] != 0 {
                        return Err(Error::InvalidDatum(format!(
                            "2(α_{i},α_{j}) not divisible by (α_{i},α_{i})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    pub fn form_ij(&self, i: usize, j: usize) -> i64 {
        self.form[i][j]
    }

    /// `(α_i, α_i)/2`, the exponent in `q_i = q^{d_i}`.
    pub fn d(&self, i: usize) -> i64 {
        self.form[i][i] / 2
    }

    /// Cartan matrix entry `a_ij = 2(α_i,α_j)/(α_i,α_i)`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.form[i][j] / self.form[i][i]
    }

    /// `(λ, α_i)` for a lattice element λ.
    pub fn pair(&self, lambda: &Weight, i: usize) -> i64 {
        lambda.0.iter().zip(&self.form).map(|(c, row)| c * row[i]).sum()
    }

    /// `(λ, μ)`.
    pub fn form_weights(&self, lambda: &Weight, mu: &Weight) -> i64 {
        (0..self.rank()).map(|i| mu.0[i] * self.pair(lambda, i)).sum()
    }

    /// Simple reflection `s_i(λ) = λ - ⟨λ, α_i^∨⟩ α_i`.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let c = 2 * self.pair(lambda, i) / self.form[i][i];
        let mut out = lambda.clone();
        out.0[i] -= c;
        out
    }

    /// Simply laced in the strict sense of the folding setup:
    /// all `(α_i,α_i) = 2` and off-diagonal values in {0, -1}.
    pub fn is_simply_laced(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| self.form[i][i] == 2)
            && (0..n).all(|i| (0..n).all(|j| i == j || matches!(self.form[i][j], 0 | -1)))
    }

    /// Symmetric Cartan matrix (all `d_i = 1`); the setting in which the
    /// signed canonical basis is constructed directly from PBW bases.
    pub fn is_symmetric_gcm(&self) -> bool {
        (0..self.rank()).all(|i| self.form[i][i] == 2)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.form[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Restriction of the datum to a subset of vertices (in the given order).
    pub fn sub_datum(&self, keep: &[usize]) -> CartanDatum {
        let form = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.form[i][j]).collect())
            .collect();
        CartanDatum { form }
    }

    /// Block-diagonal join of two data (used for auxiliary product systems).
    pub fn product(&self, other: &CartanDatum) -> CartanDatum {
        let n = self.rank();
        let m = other.rank();
        let mut form = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                form[i][j] = self.form[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                form[n + i][n + j] = other.form[i][j];
            }
        }
        CartanDatum { form }
    }
}

/// A diagram automorphism σ of a Cartan datum, with its orbit structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramAut {
    perm: Vec<usize>,
    order: usize,
    orbits: Vec<Vec<usize>>,
}

impl DiagramAut {
    pub fn identity(rank: usize) -> Self {
        DiagramAut::new_unchecked((0..rank).collect())
    }

    fn new_unchecked(perm: Vec<usize>) -> Self {
        let n = perm.len();
        let mut order = 1usize;
        {
            let mut cur = perm.clone();
            while cur.iter().enumerate().any(|(i, &p)| p != i) {
                cur = cur.iter().map(|&i| perm[i]).collect();
                order += 1;
            }
        }
        let mut orbits = Vec::new();
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut orb = vec![i];
            seen[i] = true;
            let mut j = perm[i];
            while j != i {
                seen[j] = true;
                orb.push(j);
                j = perm[j];
            }
            orbits.push(orb);
        }
        DiagramAut { perm, order, orbits }
    }

    /// Build and validate against a datum: σ must preserve the form, and be
    /// admissible (each orbit totally disconnected).
    pub fn new(datum: &CartanDatum, perm: Vec<usize>) -> Result<Self> {
        let n = datum.rank();
        if perm.len() != n {
            return Err(Error::NotAdmissible("permutation has wrong length".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotAdmissible("not a permutation".into()));
            }
            seen[p] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if datum.form_ij(perm[i], perm[j]) != datum.form_ij(i, j) {
                    return Err(Error::NotAdmissible(format!(
                        "form not preserved at ({i},{j})"
                    )));
                }
            }
        }
        let aut = DiagramAut::new_unchecked(perm);
        for orb in &aut.orbits {
            for (a, &i) in orb.iter().enumerate() {
                for &j in orb.iter().skip(a + 1) {
                    if datum.form_ij(i, j) != 0 {
                        return Err(Error::NotAdmissible(format!(
                            "orbit {{..{i},{j}..}} is not totally disconnected"
                        )));
                    }
                }
            }
        }
        Ok(aut)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Orbits, each listed with increasing members, ordered by least member.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, i: usize) -> &[usize] {
        self.orbits.iter().find(|o| o.contains(&i)).unwrap()
    }

    pub fn apply_weight(&self, w: &Weight) -> Weight {
        let mut out = vec![0i64; w.rank()];
        for (i, &c) in w.0.iter().enumerate() {
            out[self.perm[i]] += c;
        }
        Weight(out)
    }

    /// Orbit sum `O(β)`: the sum over the σ-orbit of β as a set, so a
    /// σ-fixed β maps to itself. (The partition of Δ₀⁺ by Σ-classes and the
    /// level bijections require the set convention on short fixed roots.)
    pub fn orbit_sum(&self, w: &Weight) -> Weight {
        let mut acc = w.clone();
        let mut cur = self.apply_weight(w);
        while cur != *w {
            acc = acc.add(&cur);
            cur = self.apply_weight(&cur);
        }
        acc
    }

    /// Whether a weight is fixed by σ.
    pub fn fixes(&self, w: &Weight) -> bool {
        &self.apply_weight(w) == w
    }
}

/// Result of folding: the datum on the orbit set, the orbit list defining
/// the labels, and the position of the orbit of the marked vertex.
#[derive(Clone, Debug)]
pub struct FoldedDatum {
    pub datum: Arc<CartanDatum>,
    /// `orbits[k]` is the set of X-vertices forming the k-th folded vertex.
    pub orbits: Vec<Vec<usize>>,
}

/// Fold a datum along an admissible automorphism, per the orbit form
/// `(α_η, α_η)₁ = 2|η|` and `(α_η, α_η')₁ = -#{(i,j) ∈ η×η' : (α_i,α_j) ≠ 0}`.
///
/// Orbits are ordered by least member, so the orbit of vertex 0 stays at
/// index 0 for affine data marked at 0.
pub fn fold(datum: &CartanDatum, aut: &DiagramAut) -> Result<FoldedDatum> {
    let orbits = aut.orbits().to_vec();
    let m = orbits.len();
    let mut form = vec![vec![0i64; m]; m];
    for (a, oa) in orbits.iter().enumerate() {
        for (b, ob) in orbits.iter().enumerate() {
            if a == b {
                form[a][b] = 2 * oa.len() as i64;
            } else {
                let mut cnt = 0i64;
                for &i in oa {
                    for &j in ob {
                        if datum.form_ij(i, j) != 0 {
                            cnt += 1;
                        }
                    }
                }
                form[a][b] = -cnt;
            }
        }
    }
    let folded = CartanDatum::new(form)?;
    Ok(FoldedDatum { datum: folded, orbits })
}

/// Read a σ-fixed weight of the unfolded datum as a weight of the folded
/// datum under `Q^σ ≅ Q̲` (the common coordinate along each orbit).
pub fn weight_to_folded(folded: &FoldedDatum, w: &Weight) -> Option<Weight> {
    let mut out = Vec::with_capacity(folded.orbits.len());
    for orb in &folded.orbits {
        let c = w.0[orb[0]];
        if orb.iter().any(|&i| w.0[i] != c) {
            return None;
        }
        out.push(c);
    }
    Some(Weight(out))
}

/// Lift a folded weight back to the σ-fixed part of the unfolded lattice.
pub fn weight_from_folded(folded: &FoldedDatum, rank: usize, w: &Weight) -> Weight {
    let mut out = vec![0i64; rank];
    for (k, orb) in folded.orbits.iter().enumerate() {
        for &i in orb {
            out[i] = w.0[k];
        }
    }
    Weight(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_a3_to_c2() {
        let a3 = standard_finite('A', 3).unwrap();
        let aut = DiagramAut::new(&a3, vec![2, 1, 0]).unwrap();
        assert_eq!(aut.order(), 2);
        let folded = fold(&a3, &aut).unwrap();
        // orbits: {0,2}, {1}
        assert_eq!(folded.orbits, vec![vec![0, 2], vec![1]]);
        assert_eq!(folded.datum.form_ij(0, 0), 4);
        assert_eq!(folded.datum.form_ij(0, 1), -2);
        assert_eq!(folded.datum.form_ij(1, 1), 2);
    }

    #[test]
    fn fold_d4_to_g2() {
        // D4 with central node 1 (our standard D4 has the chain 0-1-2 and 3
        // attached to 1): outer nodes are {0,2,3}.
        let d4 = standard_finite('D', 4).unwrap();
        let aut = DiagramAut::new(&d4, vec![2, 1, 3, 0]).unwrap();
        assert_eq!(aut.order(), 3);
        let folded = fold(&d4, &aut).unwrap();
        assert_eq!(folded.datum.form_ij(0, 0), 6);
        assert_eq!(folded.datum.form_ij(0, 1), -3);
        assert_eq!(folded.datum.form_ij(1, 1), 2);
    }

    #[test]
    fn fold_identity_is_trivial() {
        let a2 = standard_finite('A', 2).unwrap();
        let aut = DiagramAut::identity(2);
        let folded = fold(&a2, &aut).unwrap();
        assert_eq!(*folded.datum, *a2);
    }

    #[test]
    fn nonadmissible_rejected() {
        // A2 swap: the two vertices are joined, so the orbit {0,1} is not
        // totally disconnected.
        let a2 = standard_finite('A', 2).unwrap();
        assert!(DiagramAut::new(&a2, vec![1, 0]).is_err());
    }

    #[test]
    fn orbit_sums() {
        let a3 = standard_finite('A', 3).unwrap();
        let aut = DiagramAut::new(&a3, vec![2, 1, 0]).unwrap();
        let beta = Weight(vec![1, 1, 0]);
        assert_eq!(aut.orbit_sum(&beta), Weight(vec![1, 2, 1]));
        // σ-fixed weights are their own orbit sum (set convention)
        let fixed = Weight(vec![1, 0, 1]);
        assert_eq!(aut.orbit_sum(&fixed), fixed);
    }
}
