//! Fan validation: ray sanity, simpliciality, maximality, and the exact
//! pairwise cone-overlap test.

use super::lp::feasible_point;
use super::{Cone, Fan};
use crate::error::{Error, Result};
use crate::lattice::primitive_vector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Which checks [`Fan::with_options`] runs.
///
/// `check_primitive` may be disabled when rays are about to be rewritten in
/// a different lattice (see [`super::rebase_to_ray_lattice`]);
/// `check_overlap` may be disabled to skip the quadratic-in-cones exact
/// feasibility test on trusted input.
#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    pub check_primitive: bool,
    pub check_overlap: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { check_primitive: true, check_overlap: true }
    }
}

pub(super) fn validate(fan: &Fan, options: &ValidationOptions) -> Result<()> {
    // Rays: dimensions, nonzero, primitive, distinct.
    for (i, ray) in fan.rays.iter().enumerate() {
        if ray.len() != fan.ambient_rank {
            return Err(Error::InvalidFan(format!(
                "ray {i} has {} coordinates, ambient rank is {}",
                ray.len(),
                fan.ambient_rank
            )));
        }
        if ray.iter().all(Zero::is_zero) {
            return Err(Error::InvalidFan(format!("ray {i} is zero")));
        }
        if options.check_primitive && primitive_vector(ray)? != *ray {
            return Err(Error::InvalidFan(format!("ray {i} is not primitive: {ray:?}")));
        }
        for (j, other) in fan.rays.iter().enumerate().take(i) {
            if ray == other {
                return Err(Error::InvalidFan(format!("rays {j} and {i} coincide")));
            }
        }
    }

    if fan.facets.is_empty() {
        return Err(Error::InvalidFan("a fan must contain at least the zero cone".into()));
    }

    // Maximal cones: indices in range, simplicial, mutually incomparable,
    // and jointly covering all rays.
    let mut used = vec![false; fan.rays.len()];
    for facet in &fan.facets {
        for &r in facet.rays() {
            if r >= fan.rays.len() {
                return Err(Error::InvalidFan(format!(
                    "cone {facet} references ray {r}, but only {} rays exist",
                    fan.rays.len()
                )));
            }
            used[r] = true;
        }
        let m = fan.ray_matrix(facet);
        if m.rank() != facet.dim() {
            return Err(Error::InvalidFan(format!(
                "cone {facet} is not simplicial: its rays are linearly dependent"
            )));
        }
    }
    if let Some(r) = used.iter().position(|u| !u) {
        return Err(Error::InvalidFan(format!("ray {r} occurs in no maximal cone")));
    }
    for (i, a) in fan.facets.iter().enumerate() {
        for b in fan.facets.iter().skip(i + 1) {
            if a.is_face_of(b) || b.is_face_of(a) {
                return Err(Error::InvalidFan(format!(
                    "listed cone {a} is a face of listed cone {b}"
                )));
            }
        }
    }

    if options.check_overlap {
        for (i, a) in fan.facets.iter().enumerate() {
            for b in fan.facets.iter().skip(i + 1) {
                if let Some(witness) = overlap_witness(fan, a, b) {
                    return Err(Error::ConeOverlap(format!(
                        "cones {a} and {b} overlap beyond their common face at {witness:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Exact test for whether two simplicial cones intersect in more than the
/// cone spanned by their common rays. Searches for nonnegative rational
/// `λ, μ` with `Σ λᵢ aᵢ = Σ μⱼ bⱼ` and the coefficients of the non-shared
/// rays summing to one; any solution yields a point in both cones outside
/// the common face, returned as a witness.
fn overlap_witness(fan: &Fan, a: &Cone, b: &Cone) -> Option<Vec<BigRational>> {
    let n = fan.ambient_rank;
    let common: Vec<usize> = a.rays().iter().copied().filter(|r| b.contains_ray(*r)).collect();
    let vars_a = a.dim();
    let vars_b = b.dim();
    let total = vars_a + vars_b;
    // Rows 0..n: Σ λᵢ aᵢ − Σ μⱼ bⱼ = 0. Row n: non-common coefficients sum to 1.
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); total]; n + 1];
    let mut rhs = vec![BigRational::zero(); n + 1];
    for (k, &r) in a.rays().iter().enumerate() {
        for (coord, c) in fan.ray(r).iter().enumerate() {
            rows[coord][k] = BigRational::from_integer(c.clone());
        }
        if !common.contains(&r) {
            rows[n][k] = BigRational::from_integer(BigInt::from(1));
        }
    }
    for (k, &r) in b.rays().iter().enumerate() {
        for (coord, c) in fan.ray(r).iter().enumerate() {
            rows[coord][vars_a + k] = -BigRational::from_integer(c.clone());
        }
        if !common.contains(&r) {
            rows[n][vars_a + k] = BigRational::from_integer(BigInt::from(1));
        }
    }
    rhs[n] = BigRational::from_integer(BigInt::from(1));

    feasible_point(&rows, &rhs).map(|solution| {
        // Report the actual point Σ λᵢ aᵢ.
        let mut point = vec![BigRational::zero(); n];
        for (k, &r) in a.rays().iter().enumerate() {
            for (coord, c) in fan.ray(r).iter().enumerate() {
                point[coord] += &solution[k] * BigRational::from_integer(c.clone());
            }
        }
        point
    })
}
