//! Dense exact linear algebra over the scalar field of rational functions.

use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};

pub type Vector<F> = Vec<Scalar<F>>;
pub type MatrixData<F> = Vec<Vec<Scalar<F>>>;

/// LU factorization with partial pivoting (pivot = first nonzero), for
/// repeated solves against one matrix.
pub struct Lu<F: Field> {
    n: usize,
    lu: MatrixData<F>,
    perm: Vec<usize>,
}

impl<F: Field> Lu<F> {
    pub fn factor(m: &MatrixData<F>, what: &str) -> Result<Self> {
        let n = m.len();
        let mut a = m.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let piv = (k..n)
                .find(|&r| !a[r][k].is_zero())
                .ok_or_else(|| Error::SingularGram(what.to_string()))?;
            a.swap(k, piv);
            perm.swap(k, piv);
            let inv = a[k][k].inv().unwrap();
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = a[r][k].mul(&inv);
                for c in k + 1..n {
                    if !a[k][c].is_zero() {
                        a[r][c] = a[r][c].sub(&f.mul(&a[k][c]));
                    }
                }
                a[r][k] = f;
            }
        }
        Ok(Lu { n, lu: a, perm })
    }

    pub fn solve(&self, rhs: &[Scalar<F>]) -> Vector<F> {
        let n = self.n;
        let mut y: Vector<F> = (0..n).map(|r| rhs[self.perm[r]].clone()).collect();
        for r in 1..n {
            for c in 0..r {
                if !self.lu[r][c].is_zero() && !y[c].is_zero() {
                    y[r] = y[r].sub(&self.lu[r][c].mul(&y[c]));
                }
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                if !self.lu[r][c].is_zero() && !y[c].is_zero() {
                    y[r] = y[r].sub(&self.lu[r][c].mul(&y[c]));
                }
            }
            y[r] = y[r].mul(&self.lu[r][r].inv().unwrap());
        }
        y
    }
}

/// Row echelon form over the fraction field; returns (echelon rows, pivot
/// column of each row). Zero rows are dropped.
pub fn echelon<F: Field>(rows: &[Vector<F>]) -> (Vec<Vector<F>>, Vec<usize>) {
    let mut ech: Vec<Vector<F>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        reduce_against(&mut r, &ech, &pivots);
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[p].inv().unwrap();
            for x in r.iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
            // keep echelon sorted by pivot
            let at = pivots.iter().position(|&q| q > p).unwrap_or(pivots.len());
            ech.insert(at, r);
            pivots.insert(at, p);
        }
    }
    (ech, pivots)
}

fn reduce_against<F: Field>(r: &mut Vector<F>, ech: &[Vector<F>], pivots: &[usize]) {
    for (row, &p) in ech.iter().zip(pivots) {
        if !r[p].is_zero() {
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }
}

pub fn rank<F: Field>(rows: &[Vector<F>]) -> usize {
    echelon(rows).0.len()
}

/// Whether `v` lies in the row span of `rows` (an echelon basis is built
/// internally; prefer [`SpanTester`] for repeated queries).
pub fn in_span<F: Field>(rows: &[Vector<F>], v: &Vector<F>) -> bool {
    SpanTester::new(rows).contains(v)
}

/// Precomputed echelon form for repeated membership queries.
pub struct SpanTester<F: Field> {
    ech: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> SpanTester<F> {
    pub fn new(rows: &[Vector<F>]) -> Self {
        let (ech, pivots) = echelon(rows);
        SpanTester { ech, pivots }
    }

    pub fn rank(&self) -> usize {
        self.ech.len()
    }

    pub fn contains(&self, v: &Vector<F>) -> bool {
        let mut r = v.clone();
        reduce_against(&mut r, &self.ech, &self.pivots);
        r.iter().all(|x| x.is_zero())
    }
}

/// Solve `Σ_k c_k rows[k] = v` if possible, returning one solution.
pub fn solve_combination<F: Field>(rows: &[Vector<F>], v: &Vector<F>) -> Option<Vector<F>> {
    if rows.is_empty() {
        return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    let ncols = v.len();
    // echelon on rows augmented with coordinate tracking
    let mut ech: Vec<(Vector<F>, Vector<F>)> = Vec::new(); // (row, combo)
    let mut pivots: Vec<usize> = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        let mut combo: Vector<F> = vec![Scalar::zero(); rows.len()];
        combo[k] = Scalar::one();
        for ((erow, ecombo), &p) in ech.iter().zip(&pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(erow) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
                for (x, y) in combo.iter_mut().zip(ecombo) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[p].inv().unwrap();
            for x in r.iter_mut().chain(combo.iter_mut()) {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
            ech.push((r, combo));
            pivots.push(p);
        }
    }
    let mut target = v.clone();
    let mut coeffs: Vector<F> = vec![Scalar::zero(); rows.len()];
    for ((erow, ecombo), &p) in ech.iter().zip(&pivots) {
        if !target[p].is_zero() {
            let f = target[p].clone();
            for (x, y) in target.iter_mut().zip(erow) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
            for (x, y) in coeffs.iter_mut().zip(ecombo) {
                if !y.is_zero() {
                    *x = x.add(&f.mul(y));
                }
            }
        }
    }
    let _ = ncols;
    if target.iter().all(|x| x.is_zero()) {
        Some(coeffs)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rat;

    fn s(n: i64) -> Scalar<Rat> {
        Scalar::from_int(n)
    }

    #[test]
    fn lu_solves() {
        let m = vec![vec![s(2), s(1)], vec![s(1), s(1)]];
        let lu = Lu::factor(&m, "test").unwrap();
        let x = lu.solve(&[s(3), s(2)]);
        assert_eq!(x, vec![s(1), s(1)]);
    }

    #[test]
    fn spans_and_ranks() {
        let rows = vec![
            vec![s(1), s(0), s(1)],
            vec![s(0), s(1), s(1)],
            vec![s(1), s(1), s(2)],
        ];
        assert_eq!(rank(&rows), 2);
        assert!(in_span(&rows[..2], &vec![s(2), s(3), s(5)]));
        assert!(!in_span(&rows[..2], &vec![s(0), s(0), s(1)]));
        let c = solve_combination(&rows[..2], &vec![s(2), s(3), s(5)]).unwrap();
        assert_eq!(c, vec![s(2), s(3)]);
    }
}
