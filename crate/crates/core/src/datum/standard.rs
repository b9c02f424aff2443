//! Constructors for the standard finite and untwisted affine data, and the
//! classical ε-coordinate tables used when printing root sets.
//!
//! Numbering follows Kac's tables: the E-series is a chain with the branch
//! vertex attached to the third node (E6, E7) or the fifth (E8); D_n is the
//! chain α_1..α_{n-1} with α_n attached to α_{n-2}. Everything here is
//! 0-based, and affine data carry the marked vertex at index 0.

use super::roots::FiniteRoots;
use super::{CartanDatum, Weight};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Build the standard finite datum, short roots normalized to (α,α) = 2.
pub fn standard_finite(series: char, rank: usize) -> Result<Arc<CartanDatum>> {
    let n = rank;
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let norms: Vec<i64> = match (series, n) {
        ('A', _) if n >= 1 => {
            for i in 0..n.saturating_sub(1) {
                edges.push((i, i + 1, -1));
            }
            vec![2; n]
        }
        ('B', _) if n >= 2 => {
            for i in 0..n - 1 {
                edges.push((i, i + 1, -2));
            }
            let mut v = vec![4; n];
            v[n - 1] = 2;
            v
        }
        ('C', _) if n >= 2 => {
            for i in 0..n - 2 {
                edges.push((i, i + 1, -1));
            }
            edges.push((n - 2, n - 1, -2));
            let mut v = vec![2; n];
            v[n - 1] = 4;
            v
        }
        ('D', _) if n >= 4 => {
            for i in 0..n - 2 {
                edges.push((i, i + 1, -1));
            }
            edges.push((n - 3, n - 1, -1));
            vec![2; n]
        }
        ('E', 6) | ('E', 7) | ('E', 8) => {
            for i in 0..n - 2 {
                edges.push((i, i + 1, -1));
            }
            let branch = if n == 8 { 4 } else { 2 };
            edges.push((branch, n - 1, -1));
            vec![2; n]
        }
        ('F', 4) => {
            edges.push((0, 1, -2));
            edges.push((1, 2, -2));
            edges.push((2, 3, -1));
            vec![4, 4, 2, 2]
        }
        ('G', 2) => {
            edges.push((0, 1, -3));
            vec![6, 2]
        }
        _ => return Err(Error::InvalidDatum(format!("no standard type {series}{n}"))),
    };
    let mut form = vec![vec![0i64; n]; n];
    for i in 0..n {
        form[i][i] = norms[i];
    }
    for (i, j, v) in edges {
        form[i][j] = v;
        form[j][i] = v;
    }
    CartanDatum::new(form)
}

/// Build the untwisted affine datum `X_n^{(1)}` with the marked vertex at
/// index 0 (so finite vertex α_i sits at index i).
pub fn standard_affine(series: char, rank: usize) -> Result<Arc<CartanDatum>> {
    let finite = standard_finite(series, rank)?;
    let roots = FiniteRoots::enumerate(&finite)?;
    let theta = roots.highest_root().clone();
    let n = rank;
    let mut form = vec![vec![0i64; n + 1]; n + 1];
    form[0][0] = finite.form_weights(&theta, &theta);
    for j in 0..n {
        let v = -finite.pair(&theta, j);
        form[0][j + 1] = v;
        form[j + 1][0] = v;
    }
    for i in 0..n {
        for j in 0..n {
            form[i + 1][j + 1] = finite.form_ij(i, j);
        }
    }
    CartanDatum::new(form)
}

/// Map from the Kac-numbered vertex (0-based) to the Bourbaki-numbered
/// simple root (0-based) for the E series.
fn kac_to_bourbaki(rank: usize) -> &'static [usize] {
    match rank {
        6 => &[0, 2, 3, 4, 5, 1],
        7 => &[0, 2, 3, 4, 5, 6, 1],
        _ => panic!("ε-coordinates implemented for E6, E7 only"),
    }
}

/// Doubled ε-coordinates of the Bourbaki simple roots of E8 (restricted to
/// the first seven for E7, six for E6).
const E_SIMPLE_DOUBLED: [[i64; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

/// Doubled ε-coordinates of a root of the finite datum, in the classical
/// realization: D_n inside R^n, E6/E7 inside R^8.
pub fn epsilon_coords_doubled(series: char, rank: usize, root: &Weight) -> Option<Vec<i64>> {
    match series {
        'D' => {
            let n = rank;
            let mut v = vec![0i64; n];
            for (i, &c) in root.0.iter().enumerate() {
                if i + 1 < n {
                    v[i] += 2 * c;
                    v[i + 1] -= 2 * c;
                } else {
                    v[n - 2] += 2 * c;
                    v[n - 1] += 2 * c;
                }
            }
            Some(v)
        }
        'E' if rank == 6 || rank == 7 => {
            let map = kac_to_bourbaki(rank);
            let mut v = vec![0i64; 8];
            for (i, &c) in root.0.iter().enumerate() {
                let b = map[i];
                for k in 0..8 {
                    v[k] += c * E_SIMPLE_DOUBLED[b][k];
                }
            }
            Some(v)
        }
        _ => None,
    }
}

/// Render ε-coordinates the way the classical tables write them, e.g.
/// `e1 + e4` or `1/2(-e1 + e2 + e3 - e4 - e5 + e6 - e7 + e8)`.
pub fn epsilon_coords_string(series: char, rank: usize, root: &Weight) -> Option<String> {
    let v = epsilon_coords_doubled(series, rank, root)?;
    let all_even = v.iter().all(|c| c % 2 == 0);
    let render = |coeffs: &[i64]| -> String {
        let mut s = String::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 {
                s.push_str(&format!("{}*", c.abs()));
            }
            s.push_str(&format!("e{}", k + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    };
    if all_even {
        let halved: Vec<i64> = v.iter().map(|c| c / 2).collect();
        Some(render(&halved))
    } else {
        Some(format!("1/2({})", render(&v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_matches_kac_marks() {
        let e7 = standard_finite('E', 7).unwrap();
        let r = FiniteRoots::enumerate(&e7).unwrap();
        assert_eq!(r.highest_root(), &Weight(vec![2, 3, 4, 3, 2, 1, 2]));
        let e6 = standard_finite('E', 6).unwrap();
        let r6 = FiniteRoots::enumerate(&e6).unwrap();
        assert_eq!(r6.highest_root(), &Weight(vec![1, 2, 3, 2, 1, 2]));
        let d4 = standard_finite('D', 4).unwrap();
        let rd = FiniteRoots::enumerate(&d4).unwrap();
        assert_eq!(rd.highest_root(), &Weight(vec![1, 2, 1, 1]));
    }

    #[test]
    fn epsilon_rendering() {
        // E7 paper root 0122211 (β3 of the Σ-table) is ε5 + ε6
        let beta3 = Weight(vec![0, 1, 2, 2, 2, 1, 1]);
        assert_eq!(
            epsilon_coords_string('E', 7, &beta3).unwrap(),
            "e5 + e6"
        );
        // D4: α1+α2+α3 = ε1 - ε4
        let b = Weight(vec![1, 1, 1, 0]);
        assert_eq!(epsilon_coords_string('D', 4, &b).unwrap(), "e1 - e4");
        let c = Weight(vec![1, 1, 0, 1]);
        assert_eq!(epsilon_coords_string('D', 4, &c).unwrap(), "e1 + e4");
    }
}
