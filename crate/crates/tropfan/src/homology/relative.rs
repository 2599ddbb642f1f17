//! Homology of complexes whose chain groups are presented as quotients
//! `Z^{n_q}/L_q` of free modules. This covers relative homology (mod out a
//! subcomplex) and complexes of quotient coefficient sheaves without ever
//! choosing bases for the quotients.

use crate::error::{Error, Result};
use crate::lattice::{
    left_kernel, quotient_group, solve_left, FinAbGroup, IntMat, SublatticeBasis,
};
use num_bigint::BigInt;

/// A chain complex of presented modules `C_q = Z^{n_q} / L_q` with
/// boundaries given on ambient generators.
pub struct PresentedComplex {
    /// Ambient generator counts `n_q`.
    pub ambients: Vec<usize>,
    /// `boundaries[q] : Z^{n_q} → Z^{n_{q−1}}` acting on row vectors;
    /// `boundaries[0]` has zero columns.
    pub boundaries: Vec<IntMat>,
    /// Relation rows `L_q ⊆ Z^{n_q}`.
    pub relations: Vec<IntMat>,
}

impl PresentedComplex {
    /// Validates shapes and the compatibility conditions that make the
    /// boundaries well defined on the quotients: `L_q·∂_q ⊆ span L_{q−1}`
    /// and `∂_{q+1}·∂_q ⊆ span L_{q−1}`.
    pub fn new(
        ambients: Vec<usize>,
        boundaries: Vec<IntMat>,
        relations: Vec<IntMat>,
    ) -> Result<Self> {
        let top = ambients.len();
        if boundaries.len() != top || relations.len() != top {
            return Err(Error::DimensionMismatch("presented complex shape".into()));
        }
        for q in 0..top {
            if boundaries[q].rows() != ambients[q] || relations[q].cols() != ambients[q] {
                return Err(Error::DimensionMismatch("presented complex shape".into()));
            }
            let expected_cols = if q == 0 { 0 } else { ambients[q - 1] };
            if boundaries[q].cols() != expected_cols {
                return Err(Error::DimensionMismatch("presented complex shape".into()));
            }
        }
        let cx = PresentedComplex { ambients, boundaries, relations };
        for q in 1..top {
            let target = SublatticeBasis::from_generators(&cx.relations[q - 1]);
            let mapped_relations = cx.relations[q].mul(&cx.boundaries[q]);
            let squared = if q + 1 < top {
                cx.boundaries[q + 1].mul(&cx.boundaries[q])
            } else {
                IntMat::zeros(0, cx.ambients[q - 1])
            };
            for m in [&mapped_relations, &squared] {
                for r in 0..m.rows() {
                    if target.coords_of(&m.row_vec(r)).is_none() {
                        return Err(Error::InvalidInput(
                            "boundary not well defined on presented modules".into(),
                        ));
                    }
                }
            }
        }
        Ok(cx)
    }

    pub fn max_dim(&self) -> usize {
        self.ambients.len() - 1
    }
}

/// Homology `H_q = ker(∂̄_q) / im(∂̄_{q+1})` of a presented complex, for
/// all `q` from `0` to the top degree.
pub fn presented_homology(cx: &PresentedComplex) -> Result<Vec<FinAbGroup>> {
    let top = cx.max_dim();
    let mut out = Vec::with_capacity(top + 1);
    for q in 0..=top {
        let n = cx.ambients[q];
        // Numerator: {x ∈ Z^n : x·∂_q ∈ span L_{q−1}}, computed as the
        // projection of the kernel of the stacked matrix [∂_q; L_{q−1}].
        let prev_relations = if q == 0 {
            IntMat::zeros(0, 0)
        } else {
            cx.relations[q - 1].clone()
        };
        let stacked = cx.boundaries[q].vstack(&prev_relations);
        let kernel = left_kernel(&stacked);
        let gens: Vec<Vec<BigInt>> =
            (0..kernel.rows()).map(|r| kernel.row(r)[..n].to_vec()).collect();
        let numerator = SublatticeBasis::from_generators(&IntMat::from_rows(n, gens));

        // Denominator: images of ∂_{q+1} together with the relations L_q.
        let incoming = if q + 1 <= top {
            cx.boundaries[q + 1].clone()
        } else {
            IntMat::zeros(0, n)
        };
        let denominator = incoming.vstack(&cx.relations[q]);
        let mut coords = Vec::with_capacity(denominator.rows());
        for r in 0..denominator.rows() {
            let row = denominator.row_vec(r);
            let c = solve_left(numerator.basis(), &row).ok_or_else(|| {
                Error::InvalidInput("denominator escapes the cycle module".into())
            })?;
            coords.push(c);
        }
        let rel = IntMat::from_rows(numerator.rank(), coords);
        out.push(quotient_group(numerator.rank(), &rel));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_complex(ambients: Vec<usize>, boundaries: Vec<IntMat>) -> PresentedComplex {
        let relations = ambients.iter().map(|&n| IntMat::zeros(0, n)).collect();
        PresentedComplex::new(ambients, boundaries, relations).unwrap()
    }

    #[test]
    fn trivial_relations_reproduce_ordinary_homology() {
        // 0 → Z --(2)--> Z → 0 has H_0 = Z/2, H_1 = 0.
        let cx = free_complex(
            vec![1, 1],
            vec![IntMat::zeros(1, 0), IntMat::from_i64(&[&[2]])],
        );
        let h = presented_homology(&cx).unwrap();
        assert_eq!(h[0], FinAbGroup::new(0, vec![BigInt::from(2)]));
        assert!(h[1].is_zero());
    }

    #[test]
    fn relations_change_both_degrees()
    {
        // C_0 = Z/4, C_1 = Z, ∂(e) = 2f̄: H_0 = (Z/4)/(2) = Z/2 and
        // H_1 = {x : 2x ∈ 4Z} = 2Z ≅ Z.
        let cx = PresentedComplex::new(
            vec![1, 1],
            vec![IntMat::zeros(1, 0), IntMat::from_i64(&[&[2]])],
            vec![IntMat::from_i64(&[&[4]]), IntMat::zeros(0, 1)],
        )
        .unwrap();
        let h = presented_homology(&cx).unwrap();
        assert_eq!(h[0], FinAbGroup::new(0, vec![BigInt::from(2)]));
        assert_eq!(h[1], FinAbGroup::free(1));
    }

    #[test]
    fn collapsing_everything_kills_homology() {
        let cx = PresentedComplex::new(
            vec![2, 1],
            vec![IntMat::zeros(2, 0), IntMat::from_i64(&[&[1, 0]])],
            vec![IntMat::identity(2), IntMat::identity(1)],
        )
        .unwrap();
        let h = presented_homology(&cx).unwrap();
        assert!(h.iter().all(FinAbGroup::is_zero));
    }

    #[test]
    fn incompatible_boundary_is_rejected() {
        // ∂∂ ≠ 0 modulo nothing.
        let err = PresentedComplex::new(
            vec![1, 1, 1],
            vec![
                IntMat::zeros(1, 0),
                IntMat::from_i64(&[&[1]]),
                IntMat::from_i64(&[&[1]]),
            ],
            vec![IntMat::zeros(0, 1), IntMat::zeros(0, 1), IntMat::zeros(0, 1)],
        );
        assert!(err.is_err());
    }

    #[test]
    fn torus_like_square_with_identified_edges() {
        // A circle as a presented complex: one 0-cell, one 1-cell, boundary
        // zero. H_0 = Z, H_1 = Z.
        let cx = free_complex(vec![1, 1], vec![IntMat::zeros(1, 0), IntMat::zeros(1, 1)]);
        let h = presented_homology(&cx).unwrap();
        assert_eq!(h[0], FinAbGroup::free(1));
        assert_eq!(h[1], FinAbGroup::free(1));
    }
}
