//! Weyl group elements as exact linear maps on the root lattice.
//!
//! Elements are built from words in the simple reflections; equality is
//! equality of the induced lattice maps, which is faithful for the finite
//! and affine groups acting on their root lattices.

use super::{CartanDatum, Weight};

/// A lattice automorphism given by the images of the simple roots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElt {
    /// `cols[j]` = image of α_j.
    cols: Vec<Weight>,
}

impl WeylElt {
    pub fn identity(rank: usize) -> Self {
        WeylElt { cols: (0..rank).map(|j| Weight::unit(rank, j)).collect() }
    }

    pub fn simple(datum: &CartanDatum, i: usize) -> Self {
        let n = datum.rank();
        WeylElt {
            cols: (0..n).map(|j| datum.reflect(i, &Weight::unit(n, j))).collect(),
        }
    }

    pub fn from_word(datum: &CartanDatum, word: &[usize]) -> Self {
        let mut w = WeylElt::identity(datum.rank());
        for &i in word {
            w = w.compose(&WeylElt::simple(datum, i));
        }
        w
    }

    /// Build a lattice map directly from the images of the simple roots.
    pub fn from_cols(cols: Vec<Weight>) -> Self {
        WeylElt { cols }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, lambda: &Weight) -> Weight {
        let mut out = Weight::zero(self.rank());
        for (j, &c) in lambda.0.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.cols[j].scale(c));
            }
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        WeylElt { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, c)| *c == Weight::unit(self.rank(), j))
    }
}

/// Whether a word in simple reflections is reduced, by the deletion
/// condition: building up from the right, appending `s_i` on the left must
/// always increase length, i.e. the running inverse sends α_i to a
/// positive root.
pub fn is_reduced(datum: &CartanDatum, word: &[usize]) -> bool {
    let n = datum.rank();
    // v = (s_{i_{k+1}} ... s_{i_m})^{-1} maintained as a lattice map
    let mut v = WeylElt::identity(n);
    for &i in word.iter().rev() {
        if !v.apply(&Weight::unit(n, i)).is_positive_root_vec() {
            return false;
        }
        // v := v · s_i, i.e. new v(λ) = v(s_i(λ))
        v = v.compose(&WeylElt::simple(datum, i));
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{standard_affine, standard_finite};

    #[test]
    fn reflections() {
        let a2 = standard_finite('A', 2).unwrap();
        let s1 = WeylElt::simple(&a2, 0);
        assert_eq!(s1.apply(&Weight(vec![1, 0])), Weight(vec![-1, 0]));
        assert_eq!(s1.apply(&Weight(vec![0, 1])), Weight(vec![1, 1]));
        // s1 s2 s1 = s2 s1 s2 (braid relation in A2)
        let w1 = WeylElt::from_word(&a2, &[0, 1, 0]);
        let w2 = WeylElt::from_word(&a2, &[1, 0, 1]);
        assert_eq!(w1, w2);
    }

    #[test]
    fn affine_reflection() {
        // s0(α1) = α1 + 2α0 in A1^(1)
        let a1 = standard_affine('A', 1).unwrap();
        let s0 = WeylElt::simple(&a1, 0);
        assert_eq!(s0.apply(&Weight(vec![0, 1])), Weight(vec![2, 1]));
    }

    #[test]
    fn reducedness() {
        let a2 = standard_finite('A', 2).unwrap();
        assert!(is_reduced(&a2, &[]));
        assert!(is_reduced(&a2, &[0, 1, 0]));
        assert!(!is_reduced(&a2, &[0, 0]));
        assert!(!is_reduced(&a2, &[0, 1, 0, 1]));
        let a1 = standard_affine('A', 1).unwrap();
        // the affine group is infinite: arbitrarily long alternating words stay reduced
        assert!(is_reduced(&a1, &[0, 1, 0, 1, 0, 1, 0, 1]));
    }
}
