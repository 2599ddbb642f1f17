//! Built-in fans: the fans used throughout the documentation, the test
//! corpus and the command-line interface.

use crate::error::Result;
use crate::fan::{Cone, Fan};
use itertools::Itertools;
use num_bigint::BigInt;

fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The one-point fan: ambient rank zero, only the zero cone.
pub fn point_fan() -> Fan {
    Fan::new(0, vec![], vec![Cone::zero()]).expect("point fan is valid")
}

/// The complete fan of the line: rays `+1` and `−1` in `Z`.
pub fn line_fan() -> Fan {
    Fan::new(1, vec![bi(&[1]), bi(&[-1])], vec![
        Cone::from_indices([0]),
        Cone::from_indices([1]),
    ])
    .expect("line fan is valid")
}

/// The `k`-fold product of the complete line fan; `k = 0` gives the point.
pub fn line_power_fan(k: usize) -> Result<Fan> {
    let mut fan = point_fan();
    for _ in 0..k {
        fan = fan.product(&line_fan())?;
    }
    Ok(fan)
}

/// The complete unimodular fan of `r`-dimensional projective space: rays
/// `e₁, …, e_r` and `−e₁−⋯−e_r`, with every `r`-subset of the rays spanning
/// a maximal cone.
pub fn projective_fan(r: usize) -> Result<Fan> {
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(r + 1);
    for i in 0..r {
        let mut e = vec![BigInt::from(0); r];
        e[i] = BigInt::from(1);
        rays.push(e);
    }
    rays.push(vec![BigInt::from(-1); r]);
    let facets: Vec<Cone> = (0..=r).combinations(r).map(Cone::from_indices).collect();
    Fan::new(r, rays, facets)
}

/// The tropical line in the plane: rays `e₁`, `e₂`, `−e₁−e₂`, no higher
/// cones. This is the one-skeleton of the projective-plane fan.
pub fn tropical_line_fan() -> Fan {
    Fan::new(
        2,
        vec![bi(&[1, 0]), bi(&[0, 1]), bi(&[-1, -1])],
        vec![
            Cone::from_indices([0]),
            Cone::from_indices([1]),
            Cone::from_indices([2]),
        ],
    )
    .expect("tropical line is valid")
}

/// The union of the two coordinate axes in the plane: rays `±e₁`, `±e₂`,
/// maximal cones the four rays. Balanced but not irreducible.
pub fn cross_fan() -> Fan {
    Fan::new(
        2,
        vec![bi(&[1, 0]), bi(&[-1, 0]), bi(&[0, 1]), bi(&[0, -1])],
        vec![
            Cone::from_indices([0]),
            Cone::from_indices([1]),
            Cone::from_indices([2]),
            Cone::from_indices([3]),
        ],
    )
    .expect("cross fan is valid")
}

/// The two-dimensional fan over the one-skeleton (the edges) of the cube
/// `[−1, 1]³`: eight primitive vertex rays and twelve edge cones, each of
/// lattice index two.
pub fn cube_fan() -> Fan {
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
    // Two vertices span an edge exactly when they differ in one coordinate.
    let mut edges = Vec::new();
    for i in 0..8usize {
        for j in i + 1..8 {
            if (i ^ j).count_ones() == 1 {
                edges.push(Cone::from_indices([i, j]));
            }
        }
    }
    Fan::new(3, rays, edges).expect("cube fan is valid")
}

/// The cube-skeleton fan rebased to the lattice generated by its own rays.
/// In that lattice the fan is unimodular; this is the standard form in
/// which its cohomology is usually tabulated.
pub fn cube_fan_rebased() -> Fan {
    let raw = cube_fan();
    crate::fan::rebase_to_ray_lattice(
        raw.ambient_rank(),
        raw.rays().to_vec(),
        raw.maximal_cones().to_vec(),
        None,
    )
    .expect("cube fan rebases")
    .fan
}

/// The complete fan of the weighted projective plane `P(1,1,3)`: rays
/// `(1,0)`, `(−1,−3)`, `(0,1)`. Simplicial but not unimodular — the cone on
/// the first two rays has index three.
pub fn weighted_projective_113_fan() -> Fan {
    Fan::new(
        2,
        vec![bi(&[1, 0]), bi(&[-1, -3]), bi(&[0, 1])],
        vec![
            Cone::from_indices([0, 1]),
            Cone::from_indices([1, 2]),
            Cone::from_indices([0, 2]),
        ],
    )
    .expect("weighted projective fan is valid")
}
