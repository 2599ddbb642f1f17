//! Open tropical modifications of simplicial fans along reduced divisors,
//! and verification of the star-fan structure of the result.
//!
//! Given a conewise integral linear `f` on a fan `Σ ⊆ Z^n` whose divisor
//! is reduced (or empty), the modification lives in `Z^{n+1}`: every cone
//! `σ` lifts to the graph cone `σ°` on the rays `(e_ρ, f(e_ρ))`, and every
//! divisor cone `δ` gains the undivided cone `δ^⊔ = δ° ∨ e_⊥` on the
//! special direction `e_⊥ = (0,…,0,1)`.  The result is balanced again,
//! and its star fans are described by the star fans of the source and of
//! the divisor: `Σ̃^{δ^⊔} ≅ Δ^δ` and `Σ̃^{σ°}` is the modification of
//! `Σ^σ` along the induced function.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ConewiseLinear, Divisor};
use crate::chow::is_minkowski_weight;
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, StarFan};
use crate::lattice::{left_kernel, solve_left, IntMat, SublatticeBasis};

/// An open tropical modification.
#[derive(Debug, Clone)]
pub struct TropModification {
    /// The modified fan in `Z^{n+1}`.  Graph rays keep their source index;
    /// the special ray, when present, is the last one.  The projection
    /// back to the source drops the last coordinate.
    pub result: Fan,
    /// The ray values of the function the modification was taken along.
    pub values: Vec<BigInt>,
    /// Index in `result` of the special ray `e_⊥ = (0,…,0,1)`; `None` when
    /// the divisor is empty and the modification is degenerate.
    pub special_ray: Option<usize>,
    /// The divisor of the function on the source fan.
    pub divisor: Divisor,
}

impl TropModification {
    /// Whether the divisor was empty, making the result a graph fan.
    pub fn is_degenerate(&self) -> bool {
        self.special_ray.is_none()
    }

    /// The graph cone `σ°` of a source cone (same ray indices).
    pub fn graph_cone(&self, sigma: &Cone) -> Cone {
        sigma.clone()
    }

    /// The undivided cone `δ^⊔` over a divisor cone, in source labels.
    pub fn undivided_cone(&self, delta: &Cone) -> Result<Cone> {
        let special = self.special_ray.ok_or_else(|| {
            Error::InvalidInput("a degenerate modification has no undivided cones".into())
        })?;
        let cone = delta.with_ray(special);
        if !self.result.contains_cone(&cone) {
            return Err(Error::InvalidInput(format!(
                "{delta} is not a cone of the divisor"
            )));
        }
        Ok(cone)
    }

    /// The projection to the source's ambient space (drops the last
    /// coordinate).
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        v[..v.len() - 1].to_vec()
    }
}

/// Builds the open tropical modification of `f`'s fan along the divisor
/// of `f`, which must be reduced or empty.
pub fn tropical_modification(f: &ConewiseLinear) -> Result<TropModification> {
    let fan = f.fan();
    let d = fan.dim();
    let n = fan.ambient_rank();
    if d == 0 {
        // A function on the point fan is zero, so the modification is the
        // point fan of the extended ambient space.
        return Ok(TropModification {
            result: Fan::new(n + 1, Vec::new(), vec![Cone::zero()])?,
            values: Vec::new(),
            special_ray: None,
            divisor: Divisor::from_weights(fan, 0, vec![BigInt::zero()])?,
        });
    }
    let divisor = f.divisor()?;
    if !divisor.is_reduced() {
        return Err(Error::NonReducedDivisor(format!(
            "weights {:?}",
            divisor.weights()
        )));
    }
    let degenerate = divisor.is_zero();

    let mut rays: Vec<Vec<BigInt>> = (0..fan.n_rays())
        .map(|r| {
            let mut lifted = fan.ray(r).to_vec();
            lifted.push(f.value(r).clone());
            lifted
        })
        .collect();
    let special_ray = if degenerate {
        None
    } else {
        let mut special = vec![BigInt::zero(); n + 1];
        special[n] = BigInt::one();
        rays.push(special);
        Some(fan.n_rays())
    };

    let mut cones_and_weights: Vec<(Cone, BigInt)> = fan
        .maximal_cones()
        .iter()
        .map(|sigma| Ok((sigma.clone(), fan.weight_of(sigma)?.clone())))
        .collect::<Result<_>>()?;
    if let Some(special) = special_ray {
        for (tau, w) in fan.cones(d - 1).iter().zip(divisor.weights()) {
            if w.is_one() {
                cones_and_weights.push((tau.with_ray(special), BigInt::one()));
            }
        }
    }
    // The fan constructor sorts maximal cones; keep the weights aligned.
    cones_and_weights.sort_by(|a, b| a.0.cmp(&b.0));
    let (maximal, weights): (Vec<Cone>, Vec<BigInt>) =
        cones_and_weights.into_iter().unzip();
    let result = Fan::new_weighted(n + 1, rays, maximal, weights)?;

    let top: Vec<BigInt> = result
        .cones(result.dim())
        .iter()
        .map(|c| result.weight_of(c).cloned())
        .collect::<Result<_>>()?;
    if !is_minkowski_weight(&result, result.dim(), &top)? {
        return Err(Error::InvalidFan("the modification is not balanced".into()));
    }
    Ok(TropModification { result, values: f.values().to_vec(), special_ray, divisor })
}

/// The ray values of the function induced on a star fan: subtract an
/// integral linear extension of the restriction to the base cone, then
/// evaluate on the parent ray of each star ray.  Requires the projected
/// parent rays to stay primitive and the extension to exist, both of
/// which hold on unimodular fans.
pub fn induced_function_values(f: &ConewiseLinear, star: &StarFan) -> Result<Vec<BigInt>> {
    let fan = f.fan();
    let base = &star.base;
    let extension: Vec<BigInt> = if base.is_zero() {
        vec![BigInt::zero(); fan.ambient_rank()]
    } else {
        let values: Vec<BigInt> =
            base.rays().iter().map(|&r| f.value(r).clone()).collect();
        solve_left(&fan.ray_matrix(base).transpose(), &values).ok_or_else(|| {
            Error::NotUnimodular(format!(
                "no integral linear extension of the function off {base}"
            ))
        })?
    };
    let mut values = Vec::with_capacity(star.fan.n_rays());
    for r in 0..star.fan.n_rays() {
        let parent = star.ray_to_parent_ray[r];
        if star.quotient.project(fan.ray(parent)) != star.fan.ray(r) {
            return Err(Error::NotUnimodular(format!(
                "the image of ray {parent} is a proper multiple of the star ray"
            )));
        }
        let correction: BigInt =
            extension.iter().zip(fan.ray(parent)).map(|(a, b)| a * b).sum();
        values.push(f.value(parent) - correction);
    }
    Ok(values)
}

/// Outcome of the star-fan description check of a modification.
#[derive(Debug, Clone)]
pub struct StarModReport {
    /// Graph cones whose stars were compared with modified star fans.
    pub graph_faces: usize,
    /// Undivided cones whose stars were compared with divisor star fans.
    pub undivided_faces: usize,
    /// Human-readable mismatches; empty when the description holds.
    pub failures: Vec<String>,
    /// Whether every comparison succeeded.
    pub ok: bool,
}

/// Verifies the star-fan description of the modification along `f`: the
/// star at an undivided cone `δ^⊔` matches the divisor's star at `δ`, and
/// the star at a graph cone `σ°` matches the modification of the source's
/// star at `σ` along the induced function.  Requires a unimodular source.
pub fn star_of_modification_check(f: &ConewiseLinear) -> Result<StarModReport> {
    let fan = f.fan();
    if !fan.is_unimodular() {
        return Err(Error::NotUnimodular(
            "the star description is checked on unimodular fans".into(),
        ));
    }
    let modification = tropical_modification(f)?;
    let mut failures = Vec::new();
    let mut graph_faces = 0;
    let mut undivided_faces = 0;

    for sigma in fan.all_cones() {
        graph_faces += 1;
        let left = modification.result.star_fan(&modification.graph_cone(sigma))?;
        let source_star = fan.star_fan(sigma)?;
        let induced = ConewiseLinear::new(
            &source_star.fan,
            induced_function_values(f, &source_star)?,
        )?;
        let right = tropical_modification(&induced)?;
        let mut ray_map = Vec::with_capacity(left.fan.n_rays());
        let mut matched = true;
        for i in 0..left.fan.n_rays() {
            let parent = left.ray_to_parent_ray[i];
            let image = if modification.special_ray == Some(parent) {
                right.special_ray
            } else {
                // Graph rays keep source indices on both sides; translate
                // through the source star's parent map.
                source_star.ray_to_parent_ray.iter().position(|&p| p == parent)
            };
            match image {
                Some(j) => ray_map.push(j),
                None => {
                    matched = false;
                    break;
                }
            }
        }
        if !matched || !matched_fan_iso(&left.fan, &right.result, &ray_map)? {
            failures.push(format!("graph star at {sigma}"));
        }
    }

    if !modification.is_degenerate() {
        let (delta_fan, used) = modification.divisor.support_fan_with_rays(fan)?;
        for delta in delta_fan.all_cones() {
            undivided_faces += 1;
            let in_source = Cone::from_indices(delta.rays().iter().map(|&r| used[r]));
            let left =
                modification.result.star_fan(&modification.undivided_cone(&in_source)?)?;
            let right = delta_fan.star_fan(delta)?;
            let mut ray_map = Vec::with_capacity(left.fan.n_rays());
            let mut matched = true;
            for i in 0..left.fan.n_rays() {
                let parent = left.ray_to_parent_ray[i];
                match (0..right.fan.n_rays())
                    .find(|&j| used[right.ray_to_parent_ray[j]] == parent)
                {
                    Some(j) => ray_map.push(j),
                    None => {
                        matched = false;
                        break;
                    }
                }
            }
            if !matched || !matched_fan_iso(&left.fan, &right.fan, &ray_map)? {
                failures.push(format!("undivided star at {in_source}"));
            }
        }
    }

    let ok = failures.is_empty();
    Ok(StarModReport { graph_faces, undivided_faces, failures, ok })
}

/// A basis of the saturation of the row span of `m` (the integral vectors
/// in the rational row space).
fn saturated_span(m: &IntMat) -> IntMat {
    left_kernel(&left_kernel(&m.transpose()).transpose())
}

/// Whether the bijection `i ↦ ray_map[i]` of rays extends to an
/// isomorphism of weighted fans: cones correspond, weights agree, and a
/// unimodular change of coordinates between the saturated ray spans sends
/// each primitive ray to its partner.
pub(crate) fn matched_fan_iso(a: &Fan, b: &Fan, ray_map: &[usize]) -> Result<bool> {
    if a.n_rays() != b.n_rays() || ray_map.len() != a.n_rays() {
        return Ok(false);
    }
    let mut seen = vec![false; b.n_rays()];
    for &j in ray_map {
        if j >= b.n_rays() || seen[j] {
            return Ok(false);
        }
        seen[j] = true;
    }
    if a.all_cones().count() != b.all_cones().count() {
        return Ok(false);
    }
    for cone in a.all_cones() {
        let image = Cone::from_indices(cone.rays().iter().map(|&r| ray_map[r]));
        if !b.contains_cone(&image) {
            return Ok(false);
        }
        if cone.dim() == a.dim()
            && a.weight_of(cone).ok() != b.weight_of(&image).ok()
        {
            return Ok(false);
        }
    }
    let a_rays = IntMat::from_rows(
        a.ambient_rank(),
        (0..a.n_rays()).map(|i| a.ray(i).to_vec()).collect(),
    );
    let b_rays = IntMat::from_rows(
        b.ambient_rank(),
        (0..a.n_rays()).map(|i| b.ray(ray_map[i]).to_vec()).collect(),
    );
    let span_a = SublatticeBasis::from_generators(&saturated_span(&a_rays));
    let span_b = SublatticeBasis::from_generators(&saturated_span(&b_rays));
    if span_a.rank() != span_b.rank() {
        return Ok(false);
    }
    let rank = span_a.rank();
    let mut coords_a = IntMat::zeros(a.n_rays(), rank);
    let mut coords_b = IntMat::zeros(a.n_rays(), rank);
    for i in 0..a.n_rays() {
        let ca = span_a.coords_of(a.ray(i)).expect("ray lies in its span");
        let cb = span_b.coords_of(b.ray(ray_map[i])).expect("ray lies in its span");
        for j in 0..rank {
            coords_a.set(i, j, ca[j].clone());
            coords_b.set(i, j, cb[j].clone());
        }
    }
    // Solve coords_a · U = coords_b column by column; U must be integral
    // and unimodular, and then v ↦ coords(v)·U is the iso of ray spans.
    let mut u = IntMat::zeros(rank, rank);
    let a_t = coords_a.transpose();
    for j in 0..rank {
        let column: Vec<BigInt> = (0..a.n_rays()).map(|i| coords_b.at(i, j).clone()).collect();
        match solve_left(&a_t, &column) {
            Some(col) => {
                for i in 0..rank {
                    u.set(i, j, col[i].clone());
                }
            }
            None => return Ok(false),
        }
    }
    if !u.is_unimodular() {
        return Ok(false);
    }
    Ok(coords_a.mul(&u) == coords_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Geometry;
    use crate::constructors::{line_fan, line_power_fan, projective_fan, tropical_line_fan};
    use crate::homology::{bigraded, Flavor, Space};
    use crate::lattice::FinAbGroup;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    /// `min(coordinates, 0)` summed — the standard modification function.
    fn min_values(fan: &Fan) -> Vec<BigInt> {
        (0..fan.n_rays())
            .map(|i| {
                fan.ray(i)
                    .iter()
                    .filter(|c| *c < &BigInt::zero())
                    .sum::<BigInt>()
            })
            .collect()
    }

    #[test]
    fn modifying_the_line_gives_the_tropical_line() {
        let fan = line_fan();
        let f = ConewiseLinear::new(&fan, min_values(&fan)).unwrap();
        let modification = tropical_modification(&f).unwrap();
        assert!(!modification.is_degenerate());
        assert!(modification.result.same_fan_as(&tropical_line_fan()));
    }

    #[test]
    fn linear_functions_give_degenerate_graph_isomorphisms() {
        let fan = projective_fan(2).unwrap();
        let f = ConewiseLinear::new(&fan, ints(&[1, 0, -1])).unwrap();
        assert!(f.is_linear());
        let modification = tropical_modification(&f).unwrap();
        assert!(modification.is_degenerate());
        assert!(modification.undivided_cone(&Cone::zero()).is_err());
        let identity: Vec<usize> = (0..fan.n_rays()).collect();
        assert!(matched_fan_iso(&fan, &modification.result, &identity).unwrap());
    }

    #[test]
    fn modifying_the_plane_along_the_cross() {
        let fan = line_power_fan(2).unwrap();
        let f = ConewiseLinear::new(&fan, min_values(&fan)).unwrap();
        let modification = tropical_modification(&f).unwrap();
        let result = &modification.result;
        assert_eq!(result.n_rays(), 5);
        assert_eq!(result.dim(), 2);
        assert_eq!(result.maximal_cones().len(), 8);
        assert!(result.is_pure());
        // The recorded structure of this fan: the rank of the coefficient
        // lattice F² at the origin is 3 (not 1), and Borel–Moore homology
        // has a free rank-4 group in bidegree (0, 2).
        let geom = Geometry::new(result);
        let origin = geom
            .faces()
            .index_of(&crate::fan::CompFace::finite(Cone::zero()))
            .unwrap();
        assert_eq!(geom.f_rank(2, origin), 3);
        let bm = bigraded(&geom, Space::Fan, Flavor::BorelMoore).unwrap();
        assert_eq!(bm[&(0, 2)], FinAbGroup::free(4));
    }

    #[test]
    fn non_reduced_divisors_are_rejected() {
        let fan = line_power_fan(2).unwrap();
        let doubled: Vec<BigInt> =
            min_values(&fan).into_iter().map(|v| v * BigInt::from(2)).collect();
        let f = ConewiseLinear::new(&fan, doubled).unwrap();
        assert!(matches!(
            tropical_modification(&f).unwrap_err(),
            Error::NonReducedDivisor(_)
        ));
    }

    #[test]
    fn star_fans_of_the_modified_plane_match_the_description() {
        let fan = line_power_fan(2).unwrap();
        let f = ConewiseLinear::new(&fan, min_values(&fan)).unwrap();
        let report = star_of_modification_check(&f).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
        assert_eq!(report.graph_faces, 9);
        assert_eq!(report.undivided_faces, 5);
    }

    #[test]
    fn star_fans_of_the_modified_line_match_the_description() {
        let fan = line_fan();
        let f = ConewiseLinear::new(&fan, min_values(&fan)).unwrap();
        let report = star_of_modification_check(&f).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
        assert_eq!(report.graph_faces, 3);
        assert_eq!(report.undivided_faces, 1);
    }

    #[test]
    fn deleting_an_element_of_a_uniform_matroid_is_a_modification() {
        // The Bergman fan of U(3,3) supports the function min(x₀, x₁, x₂)
        // (value min(v₀, v₁, 0) in the coordinates that drop the last
        // ground element).  Its divisor is the embedded Bergman fan of the
        // contraction U(2,3), and the modification along it carries the
        // support of the Bergman fan of U(3,4); the star fans of the
        // modification match the general description.
        use crate::matroid::Matroid;
        let fan = Matroid::uniform(3, 3).unwrap().bergman_fan().unwrap();
        let values: Vec<BigInt> = (0..fan.n_rays())
            .map(|i| {
                fan.ray(i)
                    .iter()
                    .chain(std::iter::once(&BigInt::zero()))
                    .min()
                    .unwrap()
                    .clone()
            })
            .collect();
        let f = ConewiseLinear::new(&fan, values).unwrap();
        let div = f.divisor().unwrap();
        assert!(div.is_reduced() && !div.is_zero());
        let support = div.support_fan(&fan).unwrap();
        let contraction = Matroid::uniform(2, 3).unwrap().bergman_fan().unwrap();
        assert!(support.same_fan_as(&contraction));
        let report = star_of_modification_check(&f).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
    }
}
