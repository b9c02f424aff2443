//! Exact scalar arithmetic: Laurent polynomials and rational functions in q
//! over Q or over Z/εZ, quantum integers, the bar involution, and q-adic
//! expansion at q = 0.
//!
//! Values are immutable; all operations return fresh values.

mod field;
mod laurent;
mod ring;

pub use field::{reduce_rat, Field, Fp, Rat};
pub use laurent::Laurent;
pub use ring::{qbinom, qfact, qint, Scalar};

/// The congruence `[a]!_{q_η} ≡ ([a]!_q)^{|η|} (mod ε)` for `(α_η,α_η)/2 = |η|`,
/// used when transporting divided powers through the folding map.
pub fn qfact_congruence_holds<const P: u64>(a: i64, orbit_size: i64) -> bool {
    let lhs = qfact::<Fp<P>>(a, orbit_size);
    let rhs = {
        let base = qfact::<Fp<P>>(a, 1);
        let mut acc = Scalar::one();
        for _ in 0..orbit_size {
            acc = acc.mul(&base);
        }
        acc
    };
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divided_power_congruence() {
        // orbit sizes divide the order of σ: |η| ∈ {1, ε}; a ≤ 4
        for a in 0..=4 {
            for orbit in [1, 2] {
                assert!(qfact_congruence_holds::<2>(a, orbit), "ε=2 a={a} |η|={orbit}");
            }
            for orbit in [1, 3] {
                assert!(qfact_congruence_holds::<3>(a, orbit), "ε=3 a={a} |η|={orbit}");
            }
        }
    }
}
