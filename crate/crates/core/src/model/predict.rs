//! Predicted quotients of the lower central series of the affine and
//! projective fundamental groups.

use serde::{Deserialize, Serialize};

use crate::complex::ComplexParams;
use crate::grouptheory::{cokernel_invariants, AbelianInvariants, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    /// `G / A_1 ≅ S_n`: the degree `n`.
    pub symmetric_degree: usize,
    /// `A_1 / A_2` in the ordered series (`Z` affine, `Z_{m1}` projective).
    pub top: AbelianInvariants,
    /// `A_2 / A_1`-type middle quotient `(Z_{|b-2a|})^{n-1}`.
    pub middle: AbelianInvariants,
    /// `Z_2` or trivial.
    pub bottom: AbelianInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPrediction {
    pub a: i64,
    pub b: i64,
    pub n: usize,
    pub m1: i64,
    pub modulus: i64,
    pub affine: Series,
    pub projective: Series,
}

/// `m1 = (6ab - 2a - 5b + 3b^2) / 2`.
pub fn m1(p: ComplexParams) -> i64 {
    let (a, b) = (p.a, p.b);
    (6 * a * b - 2 * a - 5 * b + 3 * b * b) / 2
}

/// `Z^2 / <(b, 2), (a - b, -1)>`.
pub fn edge_lattice(p: ComplexParams) -> AbelianInvariants {
    cokernel_invariants(&IntMatrix::from_i64(&[vec![p.b, 2], vec![p.a - p.b, -1]], 2))
}

pub fn predict_series(p: ComplexParams) -> SeriesPrediction {
    let (a, b) = (p.a, p.b);
    let n = (2 * a * b + b * b) as usize;
    let modulus = b - 2 * a;
    let middle = AbelianInvariants::cyclic_power(modulus, n - 1);
    let bottom = if b % 2 == 0 && a % 2 != 0 { AbelianInvariants::cyclic(2) } else { AbelianInvariants::trivial() };
    let series = |top| Series { symmetric_degree: n, top, middle: middle.clone(), bottom: bottom.clone() };
    SeriesPrediction {
        a,
        b,
        n,
        m1: m1(p),
        modulus,
        affine: series(AbelianInvariants::cyclic(0)),
        projective: series(AbelianInvariants::cyclic(m1(p))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> ComplexParams {
        ComplexParams::new(a, b).unwrap()
    }

    #[test]
    fn examples() {
        let x = predict_series(p(1, 4));
        assert_eq!((x.n, x.m1), (24, 25));
        assert_eq!(x.affine.bottom, AbelianInvariants::cyclic(2));
        assert_eq!(x.affine.middle, AbelianInvariants::cyclic_power(2, 23));
        let y = predict_series(p(2, 3));
        assert!(y.affine.bottom.is_trivial() && y.affine.middle.is_trivial());
        assert_eq!(predict_series(p(1, 2)).projective.top, AbelianInvariants::cyclic(6));
        assert_eq!(predict_series(p(1, 3)).m1, 14);
    }

    #[test]
    fn m1_forms_agree() {
        for a in 1..=6 {
            for b in 2..=7 {
                assert_eq!(m1(p(a, b)), crate::complex::closed_form_counts(p(a, b)).m1);
            }
        }
    }

    #[test]
    fn lattice_matches_prediction() {
        for a in 1..=6 {
            for b in 2..=7 {
                let pr = predict_series(p(a, b));
                let per_edge = edge_lattice(p(a, b));
                let total = AbelianInvariants {
                    free_rank: per_edge.free_rank * (pr.n - 1),
                    torsion: per_edge.torsion.iter().flat_map(|t| vec![t.clone(); pr.n - 1]).collect(),
                };
                assert_eq!(total, pr.affine.middle);
            }
        }
    }
}
