//! Shared helpers for integration tests: deterministic random fan
//! generation by rejection sampling against full validation.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeMap, BTreeSet};
use tropfan::lattice::primitive_vector;
use tropfan::{Cone, Fan};

pub fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Builds a valid fan from primitive candidate rays by greedily accepting
/// random cones that keep the whole collection a fan. Ambient rank at most
/// three, at most six rays — small enough for dense oracles.
pub fn random_fan(seed: u64) -> Fan {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3usize);
    let target_rays = rng.gen_range(1..=6usize);

    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut attempts = 0;
    while rays.len() < target_rays && attempts < 200 {
        attempts += 1;
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3i64)).collect();
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let p = primitive_vector(&bi(&v)).unwrap();
        if !rays.contains(&p) {
            rays.push(p);
        }
    }

    let mut accepted: Vec<Cone> = Vec::new();
    let cone_attempts = rng.gen_range(3..=10usize);
    for _ in 0..cone_attempts {
        let k = rng.gen_range(1..=n.min(rays.len()));
        let mut picks = BTreeSet::new();
        while picks.len() < k {
            picks.insert(rng.gen_range(0..rays.len()));
        }
        let candidate = Cone::from_indices(picks);
        if accepted.iter().any(|c| c.is_face_of(&candidate) || candidate.is_face_of(c)) {
            continue;
        }
        let mut trial = accepted.clone();
        trial.push(candidate);
        if build_pruned(n, &rays, &trial).is_ok() {
            accepted = trial;
        }
    }
    if accepted.is_empty() {
        accepted.push(Cone::from_indices([0]));
    }
    build_pruned(n, &rays, &accepted).expect("accepted cones form a fan")
}

/// Drops unused rays, renumbers the cones, and builds the fan with full
/// validation.
pub fn build_pruned(
    ambient: usize,
    rays: &[Vec<BigInt>],
    cones: &[Cone],
) -> tropfan::Result<Fan> {
    let used: BTreeSet<usize> = cones.iter().flat_map(|c| c.rays().iter().copied()).collect();
    let map: BTreeMap<usize, usize> =
        used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let kept: Vec<Vec<BigInt>> = used.iter().map(|&r| rays[r].clone()).collect();
    let relabeled: Vec<Cone> = cones.iter().map(|c| c.relabel(&map)).collect();
    Fan::new(ambient, kept, relabeled)
}
