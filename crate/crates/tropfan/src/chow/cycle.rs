//! Cycle classes in the homology of the compactification, and the
//! diagonal comparison between Chow groups and compactified cohomology.
//!
//! A dimension-`k` cone `σ` of a weighted fan determines the fundamental
//! chain of the closure of its stratum at infinity: the faces `(σ, η)`
//! over the maximal cones `η ⊇ σ`, each carrying its canonical polyvector
//! scaled by the weight of `η`.  A Minkowski weight of dimension `p`
//! likewise determines a chain on the sedentarity-zero faces `(0, σ)`.
//! Both land in the `(p, p)` spot of the bigraded homology of the
//! compactification, and the cone-class chain descends to a map from the
//! Chow group.  In the opposite direction, evaluating a `(p, p)`-cocycle
//! on the canonical polyvectors of the sedentarity-zero faces produces a
//! Chow class; on smooth fans this is an isomorphism.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{chow_group, level_position};
use crate::error::{Error, Result};
use crate::fan::{CompFace, Cone};
use crate::homology::{Complex, Space, Supports};
use crate::lattice::{FinAbGroup, IntMat, PresentedGroup};

/// The chain of the closed stratum of `sigma` in the compactification,
/// inside the degree-`p` complex with `p = dim(fan) − dim(sigma)`; the
/// chain lives in homological dimension `p`.
pub fn stratum_chain(complex: &Complex, sigma: &Cone) -> Result<Vec<BigInt>> {
    let geom = complex.geom;
    let fan = geom.fan();
    let p = fan.dim() - sigma.dim();
    if complex.p != p {
        return Err(Error::DimensionMismatch(format!(
            "the stratum of {sigma} lives in the degree-{p} complex, got degree {}",
            complex.p
        )));
    }
    if !fan.contains_cone(sigma) {
        return Err(Error::InvalidInput(format!("{sigma} is not a cone of the fan")));
    }
    let mut chain = vec![BigInt::zero(); complex.dims[p]];
    for eta_index in fan.maximal_cones_containing(sigma) {
        let eta = &fan.maximal_cones()[eta_index];
        let face = CompFace::new(sigma.clone(), eta.clone());
        let fi = geom
            .faces()
            .index_of(&face)
            .ok_or_else(|| Error::InvalidInput(format!("missing face of {sigma}")))?;
        let (q, offset) = complex
            .block_of(fi)
            .ok_or_else(|| Error::InvalidInput("face outside the complex".into()))?;
        debug_assert_eq!(q, p);
        let coords = geom
            .f_lattice(p, fi)
            .coords_of(geom.nu(fi))
            .expect("the canonical polyvector generates a summand");
        let w = fan.weight_of(eta)?;
        for (j, c) in coords.into_iter().enumerate() {
            chain[offset + j] = w * c;
        }
    }
    Ok(chain)
}

/// The chain of a dimension-`p` weight vector on the sedentarity-zero
/// faces of the compactification, inside the degree-`p` complex.
pub fn mw_chain(complex: &Complex, weights: &[BigInt]) -> Result<Vec<BigInt>> {
    let geom = complex.geom;
    let fan = geom.fan();
    let p = complex.p;
    if weights.len() != fan.cones(p).len() {
        return Err(Error::DimensionMismatch(format!(
            "expected one weight per dimension-{p} cone ({}), got {}",
            fan.cones(p).len(),
            weights.len()
        )));
    }
    let mut chain = vec![BigInt::zero(); complex.dims[p]];
    for (sigma, w) in fan.cones(p).iter().zip(weights) {
        if w.is_zero() {
            continue;
        }
        let face = CompFace::finite(sigma.clone());
        let fi = geom
            .faces()
            .index_of(&face)
            .ok_or_else(|| Error::InvalidInput(format!("missing face of {sigma}")))?;
        let (q, offset) = complex
            .block_of(fi)
            .ok_or_else(|| Error::InvalidInput("face outside the complex".into()))?;
        debug_assert_eq!(q, p);
        let coords = geom
            .f_lattice(p, fi)
            .coords_of(geom.nu(fi))
            .expect("the canonical polyvector generates a summand");
        for (j, c) in coords.into_iter().enumerate() {
            chain[offset + j] = w * c;
        }
    }
    Ok(chain)
}

/// Comparison of a diagonal cohomology group of the compactification with
/// the Chow group of the same degree.
#[derive(Debug, Clone)]
pub struct HodgeReport {
    /// The common degree `p`.
    pub p: usize,
    /// `H^{p,p}` of the compactification.
    pub cohomology: FinAbGroup,
    /// The degree-`p` Chow group.
    pub chow: FinAbGroup,
    /// Whether evaluating cocycles on the canonical polyvectors hits every
    /// Chow class.
    pub surjective: bool,
    /// Surjective with matching isomorphism types (for finitely generated
    /// abelian groups a surjection between isomorphic groups is an
    /// isomorphism).
    pub isomorphism: bool,
}

/// Evaluates a degree-`p` cochain on the canonical polyvector of each
/// sedentarity-zero dimension-`p` face, producing Chow coefficients.
fn evaluate_on_polyvectors(complex: &Complex, cochain: &[BigInt]) -> Result<Vec<BigInt>> {
    let geom = complex.geom;
    let fan = geom.fan();
    let p = complex.p;
    let mut coeffs = vec![BigInt::zero(); fan.cones(p).len()];
    for sigma in fan.cones(p) {
        let face = CompFace::finite(sigma.clone());
        let fi = geom
            .faces()
            .index_of(&face)
            .ok_or_else(|| Error::InvalidInput(format!("missing face of {sigma}")))?;
        let (_, offset) = complex
            .block_of(fi)
            .ok_or_else(|| Error::InvalidInput("face outside the complex".into()))?;
        let coords = geom
            .f_lattice(p, fi)
            .coords_of(geom.nu(fi))
            .expect("the canonical polyvector generates a summand");
        let value: BigInt =
            coords.iter().enumerate().map(|(j, c)| c * &cochain[offset + j]).sum();
        coeffs[level_position(fan, sigma)?] = value;
    }
    Ok(coeffs)
}

/// Compares `H^{p,p}` of the compactification with the degree-`p` Chow
/// group for every `p` up to the dimension of the fan.
pub fn hodge_reports(geom: &crate::coeff::Geometry) -> Result<Vec<HodgeReport>> {
    let fan = geom.fan();
    let mut reports = Vec::with_capacity(fan.dim() + 1);
    for p in 0..=fan.dim() {
        let complex = Complex::build(geom, p, Space::Compactification, Supports::Compact);
        let h = complex.cohomology_at(p)?;
        let chow = chow_group(fan, p)?;
        let ambient = chow.presented().ambient_rank();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..chow.relations().rows() {
            rows.push(chow.relations().row_vec(i));
        }
        for rep in h.presented.generator_reps() {
            let cochain = h.cycles.apply_left(&rep);
            rows.push(evaluate_on_polyvectors(&complex, &cochain)?);
        }
        let surjective =
            PresentedGroup::new(ambient, &IntMat::from_rows(ambient, rows))
                .group()
                .is_zero();
        let isomorphism = surjective && h.group() == chow.group();
        reports.push(HodgeReport {
            p,
            cohomology: h.group().clone(),
            chow: chow.group().clone(),
            surjective,
            isomorphism,
        });
    }
    Ok(reports)
}

/// Whether the cohomology of the compactification vanishes in every
/// bidegree `(p, q)` with `q > p` and in `(p, 0)` for `p > 0`, as it does
/// for unimodular saturated fans.
pub fn off_diagonal_vanishing(geom: &crate::coeff::Geometry) -> Result<bool> {
    let groups = crate::homology::bigraded(
        geom,
        Space::Compactification,
        crate::homology::Flavor::Cohomology,
    )?;
    Ok(groups
        .iter()
        .all(|(&(p, q), g)| (q <= p && !(p > 0 && q == 0)) || g.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{chow_mul, degree, minkowski_weights, ChowElement};
    use crate::coeff::Geometry;
    use crate::constructors::{cube_fan_rebased, projective_fan};
    use num_traits::One;

    #[test]
    fn stratum_chains_are_cycles_and_relations_bound() {
        let fan = projective_fan(2).unwrap();
        let geom = Geometry::new(&fan);
        let k = 1;
        let complex =
            Complex::build(&geom, fan.dim() - k, Space::Compactification, Supports::Compact);
        let h = complex.homology_at(fan.dim() - k).unwrap();
        let group = chow_group(&fan, k).unwrap();
        let chains: Vec<Vec<BigInt>> = fan
            .cones(k)
            .iter()
            .map(|sigma| stratum_chain(&complex, sigma).unwrap())
            .collect();
        for chain in &chains {
            assert!(h.class_of(chain).is_some(), "stratum chain is a cycle");
        }
        for i in 0..group.relations().rows() {
            let relation = group.relations().row(i);
            let mut combined = vec![BigInt::zero(); complex.dims[fan.dim() - k]];
            for (c, chain) in relation.iter().zip(&chains) {
                for (acc, x) in combined.iter_mut().zip(chain) {
                    *acc += c * x;
                }
            }
            assert!(h.is_boundary(&combined), "relation {i} bounds");
        }
    }

    #[test]
    fn the_fundamental_weight_generates_top_homology() {
        let fan = projective_fan(2).unwrap();
        let geom = Geometry::new(&fan);
        let complex =
            Complex::build(&geom, fan.dim(), Space::Compactification, Supports::Compact);
        let h = complex.homology_at(fan.dim()).unwrap();
        assert_eq!(h.group(), &FinAbGroup::free(1));
        let ones = vec![BigInt::one(); fan.cones(fan.dim()).len()];
        let chain = mw_chain(&complex, &ones).unwrap();
        let (torsion, free) = h.class_of(&chain).expect("fundamental chain is a cycle");
        assert!(torsion.is_empty());
        assert_eq!(free.len(), 1);
        assert!(num_traits::Signed::abs(&free[0]) == BigInt::one());
    }

    #[test]
    fn the_two_cycle_class_maps_agree() {
        for fan in [projective_fan(2).unwrap(), cube_fan_rebased()] {
            let geom = Geometry::new(&fan);
            let d = fan.dim();
            for k in 0..=d {
                let complex =
                    Complex::build(&geom, d - k, Space::Compactification, Supports::Compact);
                let h = complex.homology_at(d - k).unwrap();
                for sigma in fan.cones(k) {
                    let psi = stratum_chain(&complex, sigma).unwrap();
                    // Pair the cone class against the complementary cones.
                    let a = ChowElement::cone_class(&fan, sigma).unwrap();
                    let weights: Vec<BigInt> = fan
                        .cones(d - k)
                        .iter()
                        .map(|eta| {
                            let b = ChowElement::cone_class(&fan, eta).unwrap();
                            degree(&fan, &chow_mul(&fan, &a, &b).unwrap()).unwrap()
                        })
                        .collect();
                    assert!(
                        crate::chow::is_minkowski_weight(&fan, d - k, &weights).unwrap()
                    );
                    let phi = mw_chain(&complex, &weights).unwrap();
                    let difference: Vec<BigInt> =
                        psi.iter().zip(&phi).map(|(x, y)| x - y).collect();
                    assert!(h.is_boundary(&difference), "classes differ at {sigma}");
                }
            }
        }
    }

    #[test]
    fn diagonal_cohomology_matches_chow_on_smooth_fans() {
        let fan = projective_fan(2).unwrap();
        let geom = Geometry::new(&fan);
        let reports = hodge_reports(&geom).unwrap();
        assert_eq!(reports.len(), 3);
        for report in &reports {
            assert!(report.isomorphism, "degree {}", report.p);
            assert_eq!(report.cohomology, FinAbGroup::free(1));
        }
    }

    #[test]
    fn minkowski_weight_chains_of_balanced_weights_are_cycles() {
        let fan = cube_fan_rebased();
        let geom = Geometry::new(&fan);
        for p in 1..=fan.dim() {
            let complex =
                Complex::build(&geom, p, Space::Compactification, Supports::Compact);
            let h = complex.homology_at(p).unwrap();
            let mw = minkowski_weights(&fan, p).unwrap();
            for i in 0..mw.rows() {
                let chain = mw_chain(&complex, &mw.row_vec(i)).unwrap();
                assert!(h.class_of(&chain).is_some(), "weight {i} gives a cycle");
            }
        }
    }

    #[test]
    fn compactified_cohomology_vanishes_above_the_diagonal() {
        for fan in [projective_fan(2).unwrap(), crate::constructors::line_power_fan(2).unwrap()]
        {
            let geom = Geometry::new(&fan);
            assert!(off_diagonal_vanishing(&geom).unwrap());
        }
        // A non-unimodular fan can have cohomology above the diagonal:
        // here H^{1,2} of the compactification is Z/3.
        let fan = crate::constructors::weighted_projective_113_fan();
        let geom = Geometry::new(&fan);
        assert!(!off_diagonal_vanishing(&geom).unwrap());
    }

    #[test]
    fn the_hodge_map_respects_cup_products_on_the_plane() {
        use crate::homology::CupRing;
        let fan = projective_fan(2).unwrap();
        let geom = Geometry::new(&fan);
        let ring = CupRing::new(&geom).unwrap();
        let z = ring.representative(1, 1, 0).unwrap();
        let square = ring.cup(&z, &z).unwrap();
        let on_lines = ChowElement::from_coeffs(
            &fan,
            1,
            evaluate_on_polyvectors(ring.complex(1), &z.values).unwrap(),
        )
        .unwrap();
        let on_points = ChowElement::from_coeffs(
            &fan,
            2,
            evaluate_on_polyvectors(ring.complex(2), &square.values).unwrap(),
        )
        .unwrap();
        let group = chow_group(&fan, 2).unwrap();
        assert!(!group.is_zero_class(&on_points).unwrap());
        let product = chow_mul(&fan, &on_lines, &on_lines).unwrap();
        assert_eq!(
            group.class_of(&product).unwrap(),
            group.class_of(&on_points).unwrap()
        );
    }
}
