//! Sublattices of `Z^n` in canonical form, saturation, and quotient
//! coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::hnf::{row_hnf, solve_left};
use super::mat::IntMat;
use super::snf::snf;

/// A sublattice of `Z^ambient_rank`, stored as its canonical row-HNF basis
/// with no zero rows. Because the representation is canonical, structural
/// equality coincides with equality of sublattices.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SublatticeBasis {
    ambient_rank: usize,
    basis: IntMat,
}

impl SublatticeBasis {
    /// The sublattice generated by the rows of `generators`.
    pub fn from_generators(generators: &IntMat) -> Self {
        let hnf = row_hnf(generators);
        let keep: Vec<usize> = (0..hnf.rank).collect();
        SublatticeBasis { ambient_rank: generators.cols(), basis: hnf.h.select_rows(&keep) }
    }

    /// The zero sublattice of `Z^n`.
    pub fn zero(ambient_rank: usize) -> Self {
        SublatticeBasis { ambient_rank, basis: IntMat::zeros(0, ambient_rank) }
    }

    /// The full lattice `Z^n`.
    pub fn full(ambient_rank: usize) -> Self {
        SublatticeBasis { ambient_rank, basis: IntMat::identity(ambient_rank) }
    }

    /// Rank of the sublattice.
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Rank of the ambient lattice.
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// The canonical (HNF) basis rows.
    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis, when `v` lies in the
    /// sublattice.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_left(&self.basis, v)
    }

    /// True when every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &SublatticeBasis) -> bool {
        (0..other.basis.rows()).all(|r| self.contains(other.basis.row(r)))
    }

    /// The sum of two sublattices of the same ambient lattice.
    pub fn sum(&self, other: &SublatticeBasis) -> SublatticeBasis {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        SublatticeBasis::from_generators(&self.basis.vstack(&other.basis))
    }

    /// The saturation: all ambient lattice points lying in the rational
    /// span of the sublattice.
    pub fn saturate(&self) -> SublatticeBasis {
        let s = snf(&self.basis);
        let rows: Vec<usize> = (0..s.rank).collect();
        SublatticeBasis::from_generators(&s.v_inv.select_rows(&rows))
    }

    /// True when the sublattice equals its saturation.
    pub fn is_saturated(&self) -> bool {
        self.index_in_saturation().is_one()
    }

    /// The index of the sublattice inside its saturation (the product of
    /// the invariant factors of the basis).
    pub fn index_in_saturation(&self) -> BigInt {
        snf(&self.basis).invariants().iter().product()
    }
}

/// Quotient coordinates `Z^n → Z^n / L ≅ Z^(n−k)` for a **saturated**
/// sublattice `L` of rank `k`, with a fixed integral section.
///
/// Built from the Smith decomposition `U·B·V = [I | 0]` of the basis `B`:
/// the projection takes the last `n−k` coordinates of `x·V`, and the
/// section maps `z` to `(0, z)·V⁻¹`. Both maps are deterministic, integral,
/// and satisfy `project ∘ lift = id` with `ker(project) = L`.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    ambient_rank: usize,
    sub_rank: usize,
    proj: IntMat,
    lift: IntMat,
}

impl QuotientLattice {
    /// Builds the quotient by a saturated sublattice.
    pub fn new(sub: &SublatticeBasis) -> Result<Self> {
        let index = sub.index_in_saturation();
        if !index.is_one() {
            return Err(Error::NotSaturated { index });
        }
        let n = sub.ambient_rank();
        let k = sub.rank();
        let s = snf(sub.basis());
        debug_assert_eq!(s.rank, k);
        let cols: Vec<usize> = (k..n).collect();
        let all_rows: Vec<usize> = (0..n).collect();
        let proj = s.v.submatrix(&all_rows, &cols);
        let lift = s.v_inv.select_rows(&cols);
        debug_assert_eq!(lift.mul(&proj), IntMat::identity(n - k));
        Ok(QuotientLattice { ambient_rank: n, sub_rank: k, proj, lift })
    }

    /// The trivial quotient by the zero sublattice (identity coordinates).
    pub fn trivial(ambient_rank: usize) -> Self {
        QuotientLattice {
            ambient_rank,
            sub_rank: 0,
            proj: IntMat::identity(ambient_rank),
            lift: IntMat::identity(ambient_rank),
        }
    }

    /// Rank of the ambient lattice.
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Rank of the quotient lattice.
    pub fn quotient_rank(&self) -> usize {
        self.ambient_rank - self.sub_rank
    }

    /// Projects an ambient vector to quotient coordinates.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.proj.apply_left(x)
    }

    /// Lifts a quotient vector along the fixed section.
    pub fn lift(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.lift.apply_left(z)
    }

    /// The projection matrix (`n × (n−k)`, acting on the right).
    pub fn proj_matrix(&self) -> &IntMat {
        &self.proj
    }

    /// The section matrix (`(n−k) × n`, acting on the right).
    pub fn lift_matrix(&self) -> &IntMat {
        &self.lift
    }
}

/// Divides a nonzero integer vector by the gcd of its entries, keeping its
/// direction.
pub fn primitive_vector(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::InvalidInput("zero vector has no primitive multiple".into()));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Solves `x · a = v` over the rationals; `None` when `v` is outside the
/// rational row span.
pub fn rational_solve_left(a: &IntMat, v: &[BigInt]) -> Option<Vec<BigRational>> {
    assert_eq!(v.len(), a.cols());
    let hnf = row_hnf(a);
    let mut residual: Vec<BigRational> =
        v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut y = vec![BigRational::zero(); a.rows()];
    for (i, &c) in hnf.pivots.iter().enumerate() {
        let q = &residual[c] / BigRational::from_integer(hnf.h.at(i, c).clone());
        if !q.is_zero() {
            for j in 0..a.cols() {
                let delta = &q * BigRational::from_integer(hnf.h.at(i, j).clone());
                residual[j] -= delta;
            }
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    // x = y · U, with U integral.
    let mut x = vec![BigRational::zero(); a.rows()];
    for (i, yi) in y.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        for (j, xj) in x.iter_mut().enumerate() {
            *xj += yi * BigRational::from_integer(hnf.u.at(i, j).clone());
        }
    }
    Some(x)
}

/// The primitive generator of the ray `R₊·direction ∩ L` for a sublattice
/// `L` whose rational span contains `direction`.
pub fn primitive_in_lattice(lattice: &SublatticeBasis, direction: &[BigInt]) -> Result<Vec<BigInt>> {
    let coords = rational_solve_left(lattice.basis(), direction)
        .ok_or_else(|| Error::InvalidInput("direction is outside the lattice's span".into()))?;
    // Clear denominators, then divide by the gcd: the resulting integer
    // coordinate vector is the primitive point on the ray.
    let lcm = coords
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = coords.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let prim = primitive_vector(&ints)?;
    Ok(lattice.basis().apply_left(&prim))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn saturation_examples() {
        // span{(2,0)} saturates to span{(1,0)}.
        let l = SublatticeBasis::from_generators(&IntMat::from_i64(&[&[2, 0]]));
        let sat = l.saturate();
        assert_eq!(sat.basis(), &IntMat::from_i64(&[&[1, 0]]));
        assert_eq!(l.index_in_saturation(), BigInt::from(2));
        // span{(1,1),(1,−1)} has index two in Z², so it saturates to Z².
        let m = SublatticeBasis::from_generators(&IntMat::from_i64(&[&[1, 1], &[1, -1]]));
        assert_eq!(m.saturate(), SublatticeBasis::full(2));
        assert_eq!(m.index_in_saturation(), BigInt::from(2));
    }

    #[test]
    fn saturation_is_idempotent_and_contains_original() {
        let samples = [
            IntMat::from_i64(&[&[2, 0], &[0, 3]]),
            IntMat::from_i64(&[&[4, 6, 10]]),
            IntMat::from_i64(&[&[1, 2, 3], &[4, 5, 6]]),
        ];
        for gens in samples {
            let l = SublatticeBasis::from_generators(&gens);
            let sat = l.saturate();
            assert_eq!(sat.saturate(), sat);
            assert!(sat.contains_lattice(&l));
            assert!(sat.is_saturated());
        }
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive_vector(&big(&[2, 4])).unwrap(), big(&[1, 2]));
        assert_eq!(primitive_vector(&big(&[0, 3])).unwrap(), big(&[0, 1]));
        assert_eq!(primitive_vector(&big(&[-2, -2])).unwrap(), big(&[-1, -1]));
        assert!(primitive_vector(&big(&[0, 0])).is_err());
    }

    #[test]
    fn primitive_on_a_ray_in_a_sublattice() {
        // L = span{(2,0),(0,3)}: the primitive point of R₊(1,0) in L is (2,0).
        let l = SublatticeBasis::from_generators(&IntMat::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(primitive_in_lattice(&l, &big(&[1, 0])).unwrap(), big(&[2, 0]));
        // Direction (2,3) ∈ L: primitive point is (2,3) itself.
        assert_eq!(primitive_in_lattice(&l, &big(&[2, 3])).unwrap(), big(&[2, 3]));
        // Direction (4,6): same ray, same primitive point.
        assert_eq!(primitive_in_lattice(&l, &big(&[4, 6])).unwrap(), big(&[2, 3]));
        assert!(primitive_in_lattice(&SublatticeBasis::from_generators(
            &IntMat::from_i64(&[&[1, 0, 0]])
        ), &big(&[0, 1, 0])).is_err());
    }

    #[test]
    fn quotient_coordinates_roundtrip() {
        let l = SublatticeBasis::from_generators(&IntMat::from_i64(&[&[1, 1, 1]]));
        let q = QuotientLattice::new(&l).unwrap();
        assert_eq!(q.quotient_rank(), 2);
        // The sublattice is the kernel of the projection.
        assert!(super::super::vec_is_zero(&q.project(&big(&[1, 1, 1]))));
        assert!(super::super::vec_is_zero(&q.project(&big(&[-2, -2, -2]))));
        // project ∘ lift = id on the quotient.
        for z in [big(&[1, 0]), big(&[0, 1]), big(&[3, -5])] {
            assert_eq!(q.project(&q.lift(&z)), z);
        }
        // Non-saturated sublattices are rejected with their index.
        let bad = SublatticeBasis::from_generators(&IntMat::from_i64(&[&[2, 0, 0]]));
        match QuotientLattice::new(&bad) {
            Err(Error::NotSaturated { index }) => assert_eq!(index, BigInt::from(2)),
            other => panic!("expected NotSaturated, got {other:?}"),
        }
    }
}
