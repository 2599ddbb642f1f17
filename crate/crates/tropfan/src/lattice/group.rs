//! Finitely generated abelian groups presented by integer relations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

use super::hnf::solve_left;
use super::mat::IntMat;
use super::snf::{snf, Snf};

/// Isomorphism type of a finitely generated abelian group:
/// `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/dₖ` with `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FinAbGroup {
    /// The trivial group.
    pub fn zero() -> Self {
        FinAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    /// The free group `Z^rank`.
    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Builds a group from a free rank and a divisibility chain (entries
    /// equal to one are dropped; the chain property is asserted).
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let torsion: Vec<BigInt> = torsion.into_iter().filter(|d| !d.is_one()).collect();
        for d in &torsion {
            assert!(*d >= BigInt::from(2), "torsion coefficients must be ≥ 2");
        }
        for w in torsion.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "torsion must form a divisibility chain");
        }
        FinAbGroup { free_rank, torsion }
    }

    /// From a quotient description: ambient rank and the full list of
    /// invariant factors of the relation matrix (including ones).
    pub fn from_invariants(ambient_rank: usize, invariants: &[BigInt]) -> Self {
        assert!(invariants.len() <= ambient_rank);
        Self::new(ambient_rank - invariants.len(), invariants.to_vec())
    }

    /// Rank of the free part.
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// The torsion coefficients `d₁ | d₂ | …`, each at least two.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// True for the trivial group.
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// True when the group has no torsion.
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        // Re-normalize the combined torsion into a chain via the Smith form
        // of the block-diagonal relation matrix diag(d₁.., e₁..).
        let all: Vec<BigInt> =
            self.torsion.iter().chain(other.torsion.iter()).cloned().collect();
        let k = all.len();
        let mut rels = IntMat::zeros(k, k);
        for (i, d) in all.iter().enumerate() {
            rels.set(i, i, d.clone());
        }
        let inv = snf(&rels).invariants();
        FinAbGroup::new(self.free_rank + other.free_rank + k - inv.len(), inv)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FinAbGroup", 2)?;
        st.serialize_field("rank", &self.free_rank)?;
        let torsion: Vec<u64> = self
            .torsion
            .iter()
            .map(|d| d.to_u64().expect("torsion coefficient exceeds u64"))
            .collect();
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// The cokernel `Z^n / rowspan(relations)` with its Smith coordinates
/// retained, so that classes can be evaluated and representatives lifted.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    ambient: usize,
    decomposition: Snf,
    group: FinAbGroup,
}

impl PresentedGroup {
    /// Presents `Z^ambient / rowspan(relations)`.
    pub fn new(ambient: usize, relations: &IntMat) -> Self {
        assert_eq!(relations.cols(), ambient, "relations live in Z^ambient");
        let decomposition = snf(relations);
        let group = FinAbGroup::from_invariants(ambient, &decomposition.invariants());
        PresentedGroup { ambient, decomposition, group }
    }

    /// Ambient rank `n` of the presentation `Z^n / L`.
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// The isomorphism type.
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Invariant factors of the relation matrix (including ones).
    pub fn invariants(&self) -> Vec<BigInt> {
        self.decomposition.invariants()
    }

    /// Smith coordinates of a class: torsion residues (one per torsion
    /// coefficient ≥ 2, reduced into `[0, dᵢ)`) and free coordinates.
    pub fn class_coords(&self, x: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        assert_eq!(x.len(), self.ambient);
        let y = self.decomposition.v.apply_left(x);
        let inv = self.decomposition.invariants();
        let mut torsion = Vec::new();
        for (i, d) in inv.iter().enumerate() {
            if !d.is_one() {
                torsion.push(y[i].mod_floor(d));
            }
        }
        let free = y[inv.len()..].to_vec();
        (torsion, free)
    }

    /// True when `x` maps to zero in the quotient.
    pub fn is_zero_class(&self, x: &[BigInt]) -> bool {
        let (torsion, free) = self.class_coords(x);
        torsion.iter().all(Zero::is_zero) && free.iter().all(Zero::is_zero)
    }

    /// Representatives in `Z^n` of the canonical generators: first the
    /// torsion generators (in chain order), then the free generators.
    pub fn generator_reps(&self) -> Vec<Vec<BigInt>> {
        let inv = self.decomposition.invariants();
        let mut reps = Vec::new();
        for (i, d) in inv.iter().enumerate() {
            if !d.is_one() {
                reps.push(self.decomposition.v_inv.row_vec(i));
            }
        }
        for i in inv.len()..self.ambient {
            reps.push(self.decomposition.v_inv.row_vec(i));
        }
        reps
    }
}

/// Isomorphism type of `Z^ambient / rowspan(relations)`.
pub fn quotient_group(ambient: usize, relations: &IntMat) -> FinAbGroup {
    PresentedGroup::new(ambient, relations).group().clone()
}

/// The subquotient `span(numerator_basis) / span(denominator_gens)` of
/// `Z^N`, where the denominator generators must lie in the span of the
/// (independent) numerator basis rows.
pub fn subquotient(numerator_basis: &IntMat, denominator_gens: &IntMat) -> Result<PresentedGroup> {
    assert_eq!(numerator_basis.cols(), denominator_gens.cols());
    let k = numerator_basis.rows();
    let mut coord_rows = Vec::with_capacity(denominator_gens.rows());
    for r in 0..denominator_gens.rows() {
        let coords = solve_left(numerator_basis, denominator_gens.row(r))
            .ok_or(Error::NotInLattice)?;
        coord_rows.push(coords);
    }
    Ok(PresentedGroup::new(k, &IntMat::from_rows(k, coord_rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_with_torsion() {
        // Z³ / ⟨(1,−1,0), (0,3,−3)⟩ ≅ Z ⊕ Z/3.
        let rels = IntMat::from_i64(&[&[1, -1, 0], &[0, 3, -3]]);
        let g = quotient_group(3, &rels);
        assert_eq!(g, FinAbGroup::new(1, vec![BigInt::from(3)]));
        assert_eq!(g.to_string(), "Z + Z/3");
    }

    #[test]
    fn class_arithmetic_matches_presentation() {
        let rels = IntMat::from_i64(&[&[1, -1, 0], &[0, 3, -3]]);
        let p = PresentedGroup::new(3, &rels);
        // Every relation row is the zero class.
        for r in 0..rels.rows() {
            assert!(p.is_zero_class(rels.row(r)));
        }
        // (1,1,1) generates the free part: its triple is not zero.
        let x: Vec<BigInt> = vec![1.into(), 1.into(), 1.into()];
        assert!(!p.is_zero_class(&x));
        // (0,1,0)−(0,0,1) has order three: itself nonzero, triple zero.
        let y: Vec<BigInt> = vec![0.into(), 1.into(), (-1).into()];
        assert!(!p.is_zero_class(&y));
        let y3: Vec<BigInt> = y.iter().map(|v| v * 3).collect();
        assert!(p.is_zero_class(&y3));
    }

    #[test]
    fn generator_reps_have_the_right_orders() {
        let rels = IntMat::from_i64(&[&[2, 0], &[0, 0]]);
        let p = PresentedGroup::new(2, &rels);
        assert_eq!(p.group(), &FinAbGroup::new(1, vec![BigInt::from(2)]));
        let reps = p.generator_reps();
        assert_eq!(reps.len(), 2);
        // First rep is the torsion generator: nonzero, doubles to zero.
        assert!(!p.is_zero_class(&reps[0]));
        let doubled: Vec<BigInt> = reps[0].iter().map(|v| v * 2).collect();
        assert!(p.is_zero_class(&doubled));
        // Second rep generates the free part.
        let doubled_free: Vec<BigInt> = reps[1].iter().map(|v| v * 2).collect();
        assert!(!p.is_zero_class(&doubled_free));
    }

    #[test]
    fn subquotient_inside_a_bigger_lattice() {
        // K = span{(1,0,0),(0,2,0)} ⊂ Z³, I = span{(2,0,0),(0,4,0)}:
        // K/I ≅ Z/2 ⊕ Z/2.
        let k = IntMat::from_i64(&[&[1, 0, 0], &[0, 2, 0]]);
        let i = IntMat::from_i64(&[&[2, 0, 0], &[0, 4, 0]]);
        let q = subquotient(&k, &i).unwrap();
        assert_eq!(q.group(), &FinAbGroup::new(0, vec![BigInt::from(2), BigInt::from(2)]));
        // Generators outside the span are rejected.
        let bad = IntMat::from_i64(&[&[0, 0, 1]]);
        assert!(subquotient(&k, &bad).is_err());
    }

    #[test]
    fn direct_sum_renormalizes_the_chain() {
        let a = FinAbGroup::new(1, vec![BigInt::from(2)]);
        let b = FinAbGroup::new(0, vec![BigInt::from(3)]);
        // Z ⊕ Z/2 ⊕ Z/3 = Z ⊕ Z/6.
        assert_eq!(a.direct_sum(&b), FinAbGroup::new(1, vec![BigInt::from(6)]));
    }

    #[test]
    fn serialization_shape() {
        let g = FinAbGroup::new(2, vec![BigInt::from(4)]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"rank":2,"torsion":[4]}"#);
    }
}
