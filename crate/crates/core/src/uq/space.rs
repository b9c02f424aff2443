//! Weight spaces: spanning words, full-rank word subsets, and exact
//! expansion of elements against a chosen basis through the Gram system.

use super::inner::{dot_functional, gram_matrix, pair_functional};
use super::{FreeElement, UqContext, Word};
use crate::coeff::{Field, Scalar};
use crate::datum::{pbw_weight_dimension, Weight};
use crate::error::{Error, Result};
use crate::linalg::{rank, Lu};
use std::sync::Arc;

/// A weight space presented by a full-rank subset of its spanning words.
pub struct WeightSpace<F: Field> {
    pub nu: Weight,
    pub words: Arc<Vec<Word>>,
    /// Indices into `words` forming a basis of the weight space.
    pub basis_words: Vec<usize>,
    solver: GramSolver<F>,
}

impl<F: Field> WeightSpace<F> {
    /// Select a word subset of full rank by greedy Gram elimination.
    pub fn new(ctx: &UqContext<F>, nu: &Weight) -> Result<Self> {
        ctx.check_weight(nu)?;
        let words = ctx.words_of_weight(nu);
        let dim = pbw_weight_dimension(&ctx.datum, nu)?;
        let mut chosen: Vec<usize> = Vec::new();
        let mut elements: Vec<FreeElement<F>> = Vec::new();
        let mut gram: Vec<Vec<Scalar<F>>> = Vec::new();
        for (k, w) in words.iter().enumerate() {
            if chosen.len() == dim {
                break;
            }
            let cand = FreeElement::from_word(ctx.datum.clone(), w.clone());
            let f = pair_functional(&cand);
            let mut row: Vec<Scalar<F>> = elements.iter().map(|e| dot_functional(&f, e)).collect();
            let selfpair = dot_functional(&f, &cand);
            row.push(selfpair);
            // candidate Gram
            let mut g2 = gram.clone();
            for (r, grow) in g2.iter_mut().enumerate() {
                grow.push(row[r].clone());
            }
            g2.push(row.clone());
            if rank(&g2) == chosen.len() + 1 {
                chosen.push(k);
                elements.push(cand);
                gram = g2;
            }
        }
        if chosen.len() != dim {
            return Err(Error::SingularGram(format!("{nu}")));
        }
        let solver = GramSolver::from_parts(elements, gram, &format!("{nu}"))?;
        Ok(WeightSpace { nu: nu.clone(), words, basis_words: chosen, solver })
    }

    pub fn dim(&self) -> usize {
        self.solver.basis.len()
    }

    pub fn basis(&self) -> &[FreeElement<F>] {
        &self.solver.basis
    }

    /// Coordinates of x in the chosen word basis.
    pub fn expand(&self, x: &FreeElement<F>) -> Result<Vec<Scalar<F>>> {
        self.solver.expand(x)
    }

    /// Canonical representative of x: rewrite on the basis words.
    pub fn reduce(&self, x: &FreeElement<F>) -> Result<FreeElement<F>> {
        let coords = self.expand(x)?;
        let mut acc = FreeElement::zero(x.datum().clone());
        for (c, b) in coords.iter().zip(self.basis()) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        Ok(acc)
    }
}

/// Exact expansion against a fixed list of independent equal-weight
/// elements, via one LU factorization of their Gram matrix.
pub struct GramSolver<F: Field> {
    pub basis: Vec<FreeElement<F>>,
    pub gram: Vec<Vec<Scalar<F>>>,
    lu: Lu<F>,
}

impl<F: Field> GramSolver<F> {
    pub fn new(basis: Vec<FreeElement<F>>, what: &str) -> Result<Self> {
        let gram = gram_matrix(&basis);
        Self::from_parts(basis, gram, what)
    }

    fn from_parts(
        basis: Vec<FreeElement<F>>,
        gram: Vec<Vec<Scalar<F>>>,
        what: &str,
    ) -> Result<Self> {
        let lu = Lu::factor(&gram, what)?;
        Ok(GramSolver { basis, gram, lu })
    }

    /// Solve `Σ_k a_k basis[k] = x` (x must lie in the span; with a basis of
    /// the full weight space this is every element of that weight).
    pub fn expand(&self, x: &FreeElement<F>) -> Result<Vec<Scalar<F>>> {
        let f = pair_functional(x);
        let rhs: Vec<Scalar<F>> =
            self.basis.iter().map(|b| dot_functional(&f, b)).collect();
        Ok(self.lu.solve(&rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rat;
    use crate::datum::standard_finite;

    #[test]
    fn a2_weight_space() {
        let d = standard_finite('A', 2).unwrap();
        let ctx = UqContext::<Rat>::new(d.clone(), 8);
        let nu = Weight(vec![1, 1]);
        let ws = WeightSpace::new(&ctx, &nu).unwrap();
        assert_eq!(ws.dim(), 2);
        assert_eq!(ws.basis_words, vec![0, 1]); // both words independent
        // expand f1 f2 in the basis
        let f1 = FreeElement::<Rat>::generator(d.clone(), 0);
        let f2 = FreeElement::<Rat>::generator(d.clone(), 1);
        let x = f1.mul(&f2);
        let coords = ws.expand(&x).unwrap();
        assert_eq!(coords, vec![Scalar::one(), Scalar::zero()]);
        // linearity on a combination
        let y = f2.mul(&f1);
        let z = x.scale(&Scalar::q_power(2)).add(&y.scale(&Scalar::from_int(3)));
        let cz = ws.expand(&z).unwrap();
        assert_eq!(cz, vec![Scalar::q_power(2), Scalar::from_int(3)]);
        // reduce is idempotent and preserves the class
        let red = ws.reduce(&z).unwrap();
        assert!(red.equals_in_uq(&z));
    }

    #[test]
    fn cutoff_enforced() {
        let d = standard_finite('A', 2).unwrap();
        let ctx = UqContext::<Rat>::new(d, 3);
        let err = match WeightSpace::new(&ctx, &Weight(vec![2, 2])) {
            Err(e) => e,
            Ok(_) => panic!("expected cutoff error"),
        };
        assert!(matches!(err, Error::CutoffExceeded { .. }));
    }
}
