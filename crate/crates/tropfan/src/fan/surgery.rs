//! Stellar subdivision (blow-up) along a cone and its inverse (blow-down).

use super::{coords_in_cone, prune_rays, Cone, Fan, ValidationOptions};
use crate::error::{Error, Result};
use crate::lattice::{primitive_vector, vec_add};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

impl Fan {
    /// The stellar subdivision along `sigma`: inserts the ray `vector`
    /// (default: the primitive multiple of the sum of the primitive rays of
    /// `sigma`) and replaces every cone containing `sigma` by the joins of
    /// the new ray with the cone's facets. A custom `vector` must be
    /// primitive and lie in the relative interior of `sigma`. Weights are
    /// inherited by the subdivided pieces.
    ///
    /// Subdividing along a ray changes nothing and returns a clone.
    pub fn blow_up(&self, sigma: &Cone, vector: Option<Vec<BigInt>>) -> Result<Fan> {
        if !self.contains_cone(sigma) {
            return Err(Error::InvalidInput(format!("{sigma} is not a cone of the fan")));
        }
        if sigma.is_zero() {
            return Err(Error::InvalidInput("cannot subdivide along the zero cone".into()));
        }
        let vector = match vector {
            Some(v) => {
                if v.len() != self.ambient_rank {
                    return Err(Error::DimensionMismatch(format!(
                        "subdivision ray has {} coordinates, ambient rank is {}",
                        v.len(),
                        self.ambient_rank
                    )));
                }
                if primitive_vector(&v)? != v {
                    return Err(Error::InvalidInput(format!(
                        "subdivision ray {v:?} is not primitive"
                    )));
                }
                let coords = coords_in_cone(self, sigma, &v).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "subdivision ray {v:?} is not in the span of {sigma}"
                    ))
                })?;
                if !coords.iter().all(|c| *c > BigRational::zero()) {
                    return Err(Error::InvalidInput(format!(
                        "subdivision ray {v:?} is not in the relative interior of {sigma}"
                    )));
                }
                v
            }
            None => {
                let sum = sigma
                    .rays()
                    .iter()
                    .fold(vec![BigInt::zero(); self.ambient_rank], |acc, &r| {
                        vec_add(&acc, self.ray(r))
                    });
                primitive_vector(&sum)?
            }
        };
        if sigma.dim() == 1 {
            // The only primitive vector in the relative interior of a ray is
            // the ray itself, so the subdivision is trivial.
            return Ok(self.clone());
        }

        let new_ray = self.n_rays();
        let mut rays = self.rays.clone();
        rays.push(vector);
        let mut facets = Vec::new();
        let mut weights = Vec::new();
        for (i, facet) in self.facets.iter().enumerate() {
            if !sigma.is_face_of(facet) {
                facets.push(facet.clone());
                weights.push(self.weights[i].clone());
                continue;
            }
            for &r in sigma.rays() {
                facets.push(facet.without_ray(r).with_ray(new_ray));
                weights.push(self.weights[i].clone());
            }
        }
        let (facets, weights) = sort_aligned(facets, weights);
        Fan::with_options(
            self.ambient_rank,
            rays,
            facets,
            Some(weights),
            &ValidationOptions::default(),
        )
    }

    /// The inverse of [`Fan::blow_up`]: removes the ray `ray`, reconstructs
    /// the subdivided cone from the fan's combinatorics, and verifies the
    /// result by blowing it back up. Fails with [`Error::NotABlowup`] when
    /// the fan is not a stellar subdivision at that ray.
    pub fn blow_down(&self, ray: usize) -> Result<Fan> {
        if ray >= self.n_rays() {
            return Err(Error::InvalidInput(format!(
                "ray {ray} does not exist (fan has {} rays)",
                self.n_rays()
            )));
        }
        let ray_vec = self.ray(ray).to_vec();
        let children: Vec<&Cone> =
            self.facets.iter().filter(|f| f.contains_ray(ray)).collect();

        // Candidate subdivided cones: for the first child F, the original
        // cone must have the form (F ∖ ray) ∪ {r} for some other ray r, with
        // the removed ray in its relative interior. The candidate's ray set
        // is the support of the interior coordinates.
        let first = children
            .first()
            .ok_or_else(|| Error::NotABlowup(format!("ray {ray} lies in no maximal cone")))?;
        let base = first.without_ray(ray);
        let mut candidates: BTreeSet<Cone> = BTreeSet::new();
        for r in 0..self.n_rays() {
            if r == ray || base.contains_ray(r) {
                continue;
            }
            let eta = base.with_ray(r);
            if self.ray_matrix(&eta).rank() != eta.dim() {
                continue;
            }
            let Some(coords) = coords_in_cone(self, &eta, &ray_vec) else {
                continue;
            };
            if coords.iter().any(|c| *c < BigRational::zero()) {
                continue;
            }
            let support = Cone::from_indices(
                eta.rays()
                    .iter()
                    .zip(&coords)
                    .filter(|(_, c)| **c > BigRational::zero())
                    .map(|(&r, _)| r),
            );
            if support.dim() >= 2 {
                candidates.insert(support);
            }
        }

        for sigma in &candidates {
            if let Some(fan) = self.try_blow_down(ray, &ray_vec, sigma, &children) {
                return Ok(fan);
            }
        }
        Err(Error::NotABlowup(format!(
            "no stellar subdivision produces ray {ray} at {ray_vec:?}"
        )))
    }

    /// Attempts the blow-down for one candidate cone; `None` if the
    /// reconstruction is inconsistent or fails round-trip verification.
    fn try_blow_down(
        &self,
        ray: usize,
        ray_vec: &[BigInt],
        sigma: &Cone,
        children: &[&Cone],
    ) -> Option<Fan> {
        let mut rebuilt: BTreeMap<Cone, BigInt> = BTreeMap::new();
        for (i, facet) in self.facets.iter().enumerate() {
            if facet.contains_ray(ray) {
                continue;
            }
            rebuilt.insert(facet.clone(), self.weights[i].clone());
        }
        for child in children {
            let missing = sigma.difference(child);
            if missing.len() != 1 {
                return None;
            }
            let eta = child.without_ray(ray).with_ray(missing[0]);
            let weight = self.weight_of(child).expect("children are maximal").clone();
            match rebuilt.get(&eta) {
                Some(w) if *w != weight => return None,
                _ => {
                    rebuilt.insert(eta, weight);
                }
            }
        }
        let facets: Vec<Cone> = rebuilt.keys().cloned().collect();
        let weights: Vec<BigInt> = rebuilt.values().cloned().collect();
        let (rays, facets_relabeled) = prune_rays(&self.rays, &facets);
        if rays.len() != self.n_rays() - 1 {
            return None;
        }
        // Relabel sigma and the weights alongside the cones.
        let order: BTreeMap<Cone, BigInt> = facets.iter().cloned().zip(weights).collect();
        let weights_relabeled: Vec<BigInt> = {
            // prune_rays sorts the relabeled cones; recover the pairing by
            // relabeling each original facet and looking it up.
            let map: BTreeMap<usize, usize> = {
                let used: BTreeSet<usize> =
                    facets.iter().flat_map(|c| c.rays().iter().copied()).collect();
                used.iter().enumerate().map(|(new, &old)| (old, new)).collect()
            };
            let mut paired: Vec<(Cone, BigInt)> =
                order.iter().map(|(c, w)| (c.relabel(&map), w.clone())).collect();
            paired.sort();
            debug_assert_eq!(
                paired.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>(),
                facets_relabeled
            );
            paired.into_iter().map(|(_, w)| w).collect()
        };
        let sigma_relabeled = {
            let used: BTreeSet<usize> =
                facets.iter().flat_map(|c| c.rays().iter().copied()).collect();
            if sigma.rays().iter().any(|r| !used.contains(r)) {
                return None;
            }
            let map: BTreeMap<usize, usize> =
                used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
            sigma.relabel(&map)
        };
        let candidate = Fan::with_options(
            self.ambient_rank,
            rays,
            facets_relabeled,
            Some(weights_relabeled),
            &ValidationOptions::default(),
        )
        .ok()?;
        let roundtrip = candidate.blow_up(&sigma_relabeled, Some(ray_vec.to_vec())).ok()?;
        roundtrip.same_fan_as(self).then_some(candidate)
    }
}

/// Sorts cones lexicographically, carrying their weights along.
pub(crate) fn sort_aligned(facets: Vec<Cone>, weights: Vec<BigInt>) -> (Vec<Cone>, Vec<BigInt>) {
    let mut paired: Vec<(Cone, BigInt)> = facets.into_iter().zip(weights).collect();
    paired.sort();
    paired.into_iter().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn plane_fan() -> Fan {
        Fan::new(
            2,
            vec![bi(&[1, 0]), bi(&[0, 1]), bi(&[-1, -1])],
            vec![
                Cone::from_indices([0, 1]),
                Cone::from_indices([1, 2]),
                Cone::from_indices([0, 2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn blow_up_plane_at_quadrant() {
        let fan = plane_fan();
        let blown = fan.blow_up(&Cone::from_indices([0, 1]), None).unwrap();
        assert_eq!(blown.n_rays(), 4);
        assert_eq!(blown.ray(3), bi(&[1, 1]).as_slice());
        assert_eq!(blown.maximal_cones().len(), 4);
        // The subdivided quadrant is replaced by two cones through (1,1).
        assert!(blown.contains_cone(&Cone::from_indices([0, 3])));
        assert!(blown.contains_cone(&Cone::from_indices([1, 3])));
        assert!(!blown.contains_cone(&Cone::from_indices([0, 1])));
        assert!(blown.is_unimodular());
    }

    #[test]
    fn blow_up_with_custom_interior_ray() {
        let fan = plane_fan();
        let blown = fan
            .blow_up(&Cone::from_indices([0, 1]), Some(bi(&[1, 2])))
            .unwrap();
        assert_eq!(blown.ray(3), bi(&[1, 2]).as_slice());
        // (1,2) is interior but the piece cone(e₁,(1,2)) has index 2.
        assert!(!blown.is_unimodular());
        assert_eq!(blown.cone_index(&Cone::from_indices([0, 3])), BigInt::from(2));
    }

    #[test]
    fn blow_up_rejects_bad_rays() {
        let fan = plane_fan();
        let sigma = Cone::from_indices([0, 1]);
        // Not primitive.
        assert!(fan.blow_up(&sigma, Some(bi(&[2, 2]))).is_err());
        // On the boundary, not the relative interior.
        assert!(fan.blow_up(&sigma, Some(bi(&[1, 0]))).is_err());
        // Outside the cone.
        assert!(fan.blow_up(&sigma, Some(bi(&[-1, 1]))).is_err());
        // Not a cone of the fan.
        assert!(fan.blow_up(&Cone::from_indices([0, 3]), None).is_err());
        // Zero cone.
        assert!(fan.blow_up(&Cone::zero(), None).is_err());
    }

    #[test]
    fn blow_up_along_ray_is_identity() {
        let fan = plane_fan();
        let same = fan.blow_up(&Cone::from_indices([0]), None).unwrap();
        assert!(same.same_fan_as(&fan));
    }

    #[test]
    fn blow_down_inverts_blow_up() {
        let fan = plane_fan();
        let sigma = Cone::from_indices([0, 1]);
        let blown = fan.blow_up(&sigma, None).unwrap();
        let back = blown.blow_down(3).unwrap();
        assert!(back.same_fan_as(&fan));
    }

    #[test]
    fn blow_down_inverts_custom_vector_blow_up() {
        let fan = plane_fan();
        let sigma = Cone::from_indices([0, 1]);
        let blown = fan.blow_up(&sigma, Some(bi(&[1, 2]))).unwrap();
        let back = blown.blow_down(3).unwrap();
        assert!(back.same_fan_as(&fan));
    }

    #[test]
    fn blow_down_of_original_ray_fails() {
        let fan = plane_fan();
        let blown = fan.blow_up(&Cone::from_indices([0, 1]), None).unwrap();
        // Removing one of the original rays is not undoing a subdivision.
        for ray in 0..3 {
            assert!(matches!(blown.blow_down(ray), Err(Error::NotABlowup(_))));
        }
    }

    #[test]
    fn blow_up_three_dimensional_cone() {
        // Fan of P³ restricted to one maximal cone plus a neighbor.
        let fan = Fan::new(
            3,
            vec![bi(&[1, 0, 0]), bi(&[0, 1, 0]), bi(&[0, 0, 1]), bi(&[-1, -1, -1])],
            vec![Cone::from_indices([0, 1, 2]), Cone::from_indices([0, 1, 3])],
        )
        .unwrap();
        let sigma = Cone::from_indices([0, 1]);
        let blown = fan.blow_up(&sigma, None).unwrap();
        // Both maximal cones contain sigma, each splits into two.
        assert_eq!(blown.maximal_cones().len(), 4);
        assert_eq!(blown.ray(4), bi(&[1, 1, 0]).as_slice());
        let back = blown.blow_down(4).unwrap();
        assert!(back.same_fan_as(&fan));
    }

    #[test]
    fn blow_up_preserves_weights() {
        let fan = Fan::new_weighted(
            2,
            vec![bi(&[1, 0]), bi(&[0, 1]), bi(&[-1, -1])],
            vec![
                Cone::from_indices([0, 1]),
                Cone::from_indices([1, 2]),
                Cone::from_indices([0, 2]),
            ],
            vec![BigInt::from(7), BigInt::from(1), BigInt::from(1)],
        )
        .unwrap();
        let blown = fan.blow_up(&Cone::from_indices([0, 1]), None).unwrap();
        assert_eq!(blown.weight_of(&Cone::from_indices([0, 3])).unwrap(), &BigInt::from(7));
        assert_eq!(blown.weight_of(&Cone::from_indices([1, 3])).unwrap(), &BigInt::from(7));
        assert_eq!(blown.weight_of(&Cone::from_indices([1, 2])).unwrap(), &BigInt::from(1));
        let back = blown.blow_down(3).unwrap();
        assert!(back.same_fan_as(&fan));
    }
}
