//! Rewriting a fan in the lattice generated by its own rays.
//!
//! Input rays need not be primitive — scaling information is exactly what a
//! rebase is meant to absorb — so validation of the input skips primitivity
//! and the output fan is validated in full afterwards.

use super::{Cone, Fan, ValidationOptions};
use crate::error::{Error, Result};
use crate::lattice::{IntMat, SublatticeBasis};
use num_bigint::BigInt;

/// A fan rewritten in the lattice its rays generate.
pub struct RebasedFan {
    /// The fan with ray coordinates taken in `basis`.
    pub fan: Fan,
    /// Rows form the canonical (Hermite) basis of the sublattice of the
    /// original ambient lattice generated by the input rays; row `i` is the
    /// original-coordinate vector of the `i`-th new basis vector.
    pub basis: IntMat,
    /// Rank of the original ambient lattice.
    pub original_ambient_rank: usize,
}

/// Expresses the rays in the canonical basis of the sublattice they
/// generate, producing a fan whose ambient rank equals the rank of that
/// sublattice. Cone structure and weights are untouched.
pub fn rebase_to_ray_lattice(
    ambient_rank: usize,
    rays: Vec<Vec<BigInt>>,
    maximal_cones: Vec<Cone>,
    weights: Option<Vec<BigInt>>,
) -> Result<RebasedFan> {
    // Validate geometry first (everything except primitivity).
    let relaxed = ValidationOptions { check_primitive: false, ..ValidationOptions::default() };
    let input = Fan::with_options(ambient_rank, rays, maximal_cones, weights, &relaxed)?;

    let ray_matrix = IntMat::from_rows(ambient_rank, input.rays().to_vec());
    let lattice = SublatticeBasis::from_generators(&ray_matrix);
    let rank = lattice.rank();
    let new_rays: Vec<Vec<BigInt>> = input
        .rays()
        .iter()
        .map(|r| {
            lattice.coords_of(r).ok_or_else(|| {
                Error::InvalidInput("ray escapes the lattice generated by the rays".into())
            })
        })
        .collect::<Result<_>>()?;
    let fan = Fan::with_options(
        rank,
        new_rays,
        input.maximal_cones().to_vec(),
        Some(input.weights().to_vec()),
        &ValidationOptions::default(),
    )?;
    Ok(RebasedFan { fan, basis: lattice.basis().clone(), original_ambient_rank: ambient_rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn full_lattice_is_untouched() {
        let rebased = rebase_to_ray_lattice(
            2,
            vec![bi(&[1, 0]), bi(&[0, 1]), bi(&[-1, -1])],
            vec![
                Cone::from_indices([0, 1]),
                Cone::from_indices([1, 2]),
                Cone::from_indices([0, 2]),
            ],
            None,
        )
        .unwrap();
        assert_eq!(rebased.fan.ambient_rank(), 2);
        assert_eq!(rebased.basis, IntMat::identity(2));
        assert_eq!(rebased.fan.ray(2), bi(&[-1, -1]).as_slice());
    }

    #[test]
    fn scaled_plane_input() {
        // Rays scaled by 3: the ray lattice is 3Z × 3Z, and in its basis the
        // fan becomes the standard one with rays (1,0), (-1,-3), (0,1).
        let rebased = rebase_to_ray_lattice(
            2,
            vec![bi(&[3, 0]), bi(&[-3, -9]), bi(&[0, 3])],
            vec![
                Cone::from_indices([0, 1]),
                Cone::from_indices([1, 2]),
                Cone::from_indices([0, 2]),
            ],
            None,
        )
        .unwrap();
        assert_eq!(rebased.basis, IntMat::from_i64(&[&[3, 0], &[0, 3]]));
        assert_eq!(rebased.fan.ray(0), bi(&[1, 0]).as_slice());
        assert_eq!(rebased.fan.ray(1), bi(&[-1, -3]).as_slice());
        assert_eq!(rebased.fan.ray(2), bi(&[0, 1]).as_slice());
        assert_eq!(rebased.fan.maximal_cones().len(), 3);
    }

    #[test]
    fn lower_dimensional_fan_drops_rank() {
        // A line fan living in a plane inside Z³.
        let rebased = rebase_to_ray_lattice(
            3,
            vec![bi(&[1, 0, 1]), bi(&[0, 1, 1]), bi(&[-1, -1, -2])],
            vec![
                Cone::from_indices([0]),
                Cone::from_indices([1]),
                Cone::from_indices([2]),
            ],
            None,
        )
        .unwrap();
        assert_eq!(rebased.fan.ambient_rank(), 2);
        assert_eq!(rebased.original_ambient_rank, 3);
        assert_eq!(rebased.basis.rows(), 2);
        // Rays stay primitive in the smaller lattice and sum to zero, so the
        // rebased fan is again a tropical line.
        let sum: Vec<BigInt> = (0..2)
            .map(|j| (0..3).map(|i| rebased.fan.ray(i)[j].clone()).sum())
            .collect();
        assert_eq!(sum, bi(&[0, 0]));
    }

    #[test]
    fn cube_edge_fan_rebase() {
        // Fan over the one-skeleton of the cube [-1,1]³: the ray lattice has
        // index four in Z³ and the canonical basis below.
        let rays: Vec<Vec<BigInt>> = [
            [1, 1, 1],
            [1, 1, -1],
            [1, -1, 1],
            [1, -1, -1],
            [-1, 1, 1],
            [-1, 1, -1],
            [-1, -1, 1],
            [-1, -1, -1],
        ]
        .iter()
        .map(|r| bi(&r[..]))
        .collect();
        // Twelve edges of the cube.
        let edges: Vec<Cone> = [
            [0, 1],
            [0, 2],
            [0, 4],
            [1, 3],
            [1, 5],
            [2, 3],
            [2, 6],
            [3, 7],
            [4, 5],
            [4, 6],
            [5, 7],
            [6, 7],
        ]
        .iter()
        .map(|e| Cone::from_indices(e.iter().copied()))
        .collect();
        let rebased = rebase_to_ray_lattice(3, rays.clone(), edges, None).unwrap();
        assert_eq!(
            rebased.basis,
            IntMat::from_i64(&[&[1, 1, 1], &[0, 2, 0], &[0, 0, 2]])
        );
        let expected: Vec<Vec<BigInt>> = [
            [1, 0, 0],
            [1, 0, -1],
            [1, -1, 0],
            [1, -1, -1],
            [-1, 1, 1],
            [-1, 1, 0],
            [-1, 0, 1],
            [-1, 0, 0],
        ]
        .iter()
        .map(|r| bi(&r[..]))
        .collect();
        assert_eq!(rebased.fan.rays(), expected.as_slice());
        assert_eq!(rebased.fan.maximal_cones().len(), 12);
        assert!(rebased.fan.is_pure());
        // Verify the change of coordinates: new coordinates times the basis
        // rows reproduce the original rays.
        for (new, old) in rebased.fan.rays().iter().zip(&rays) {
            assert_eq!(&rebased.basis.apply_left(new), old);
        }
    }

    #[test]
    fn weights_survive_rebase() {
        let rebased = rebase_to_ray_lattice(
            1,
            vec![bi(&[2]), bi(&[-2])],
            vec![Cone::from_indices([0]), Cone::from_indices([1])],
            Some(vec![BigInt::from(3), BigInt::from(5)]),
        )
        .unwrap();
        assert_eq!(rebased.fan.ambient_rank(), 1);
        assert_eq!(rebased.basis, IntMat::from_i64(&[&[2]]));
        assert_eq!(rebased.fan.weights(), &[BigInt::from(3), BigInt::from(5)]);
        assert_eq!(rebased.fan.rays(), &[bi(&[1]), bi(&[-1])]);
    }
}
