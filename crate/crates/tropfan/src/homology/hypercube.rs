//! A small cochain complex on the infinite strata of a compactified
//! unimodular fan whose cohomology agrees with the cellular cohomology.
//!
//! Degree `q` collects, over the `q`-dimensional cones `σ`, the duals of
//! the coefficient lattices `F_{p−q}(∞_σ)` of the stratum at infinity of
//! `σ`. For `τ ⋖ σ` the differential is the dual of
//!
//! `F_{p−q−1}(∞_σ) → F_{p−q}(∞_τ)`, `x ↦ e ∧ s(x)`,
//!
//! where `e` is the primitive generator of `σ/τ` in `Z^n/N_τ` and `s` a
//! section of the projection `Z^n/N_τ → Z^n/N_σ`; the ambiguity of the
//! section dies against `e`. Squaring the differential swaps the two rays
//! being wedged, so it cancels without auxiliary signs. Unimodularity of
//! the cones keeps the wedge inside the coefficient lattice.
//!
//! The complex has one block per cone instead of one per compactified
//! face, so it is far smaller than the cellular complex it replaces.

use crate::coeff::Geometry;
use crate::error::{Error, Result};
use crate::fan::CompFace;
use crate::homology::HomologyGroup;
use crate::lattice::{exterior_power_map, left_kernel, subquotient, vec_mul_mat, wedge_mul, IntMat};

/// The dual-coefficient cochain complex of a compactified unimodular fan
/// in coefficient degree `p`, concentrated in degrees `0 ≤ q ≤ min(p, d)`.
pub struct HypercubeComplex<'g, 'f> {
    pub geom: &'g Geometry<'f>,
    pub p: usize,
    /// Indices of the faces `∞_σ` with `dim σ = q`.
    pub cells: Vec<Vec<usize>>,
    /// Column offset of each selected stratum's block.
    pub offsets: Vec<Vec<usize>>,
    /// Rank of the degree-`q` term.
    pub dims: Vec<usize>,
    /// `differentials[q]` is `d^q : C^q → C^{q+1}` acting on row vectors;
    /// the last entry has zero columns.
    pub differentials: Vec<IntMat>,
}

impl<'g, 'f> HypercubeComplex<'g, 'f> {
    /// Assembles the complex. Fails on non-unimodular fans, where the
    /// contraction need not preserve the integral coefficient lattices.
    pub fn build(geom: &'g Geometry<'f>, p: usize) -> Result<Self> {
        let fan = geom.fan();
        if !fan.is_unimodular() {
            return Err(Error::InvalidInput(
                "the hypercube complex is defined for unimodular fans only".into(),
            ));
        }
        let faces = geom.faces();
        let top = p.min(fan.dim());

        let mut cells = Vec::with_capacity(top + 1);
        let mut offsets = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let mut sel = Vec::new();
            let mut offs = Vec::new();
            let mut total = 0usize;
            for sigma in fan.cones(q) {
                let idx = faces
                    .index_of(&CompFace::new(sigma.clone(), sigma.clone()))
                    .expect("every cone has a stratum at infinity");
                offs.push(total);
                total += geom.f_rank(p - q, idx);
                sel.push(idx);
            }
            cells.push(sel);
            offsets.push(offs);
            dims.push(total);
        }

        let mut differentials = Vec::with_capacity(top + 1);
        for q in 0..top {
            let k = p - q; // coefficient degree of the source blocks
            let mut m = IntMat::zeros(dims[q], dims[q + 1]);
            for (tpos, &tidx) in cells[q].iter().enumerate() {
                let tau = &faces.face(tidx).cone;
                let source = geom.f_lattice(k, tidx);
                let row0 = offsets[q][tpos];
                let mt = geom.quotient(tau).quotient_rank();
                for (spos, &sidx) in cells[q + 1].iter().enumerate() {
                    let sigma = &faces.face(sidx).cone;
                    if !tau.is_face_of(sigma) {
                        continue;
                    }
                    let ray = sigma.difference(tau)[0];
                    let e = geom.primitive_image(tau, ray)?;
                    let lift = exterior_power_map(&geom.quotient_section(tau, sigma), k - 1);
                    let target = geom.f_lattice(k - 1, sidx);
                    let col0 = offsets[q + 1][spos];
                    for j in 0..target.rank() {
                        let lifted = vec_mul_mat(&target.basis().row_vec(j), &lift);
                        let w = wedge_mul(mt, 1, &e, k - 1, &lifted);
                        let coords = source.coords_of(&w).ok_or_else(|| {
                            Error::InvalidInput(
                                "contraction escapes the coefficient lattice".into(),
                            )
                        })?;
                        for (i, c) in coords.into_iter().enumerate() {
                            m.set(row0 + i, col0 + j, c);
                        }
                    }
                }
            }
            differentials.push(m);
        }
        differentials.push(IntMat::zeros(dims[top], 0));

        Ok(HypercubeComplex { geom, p, cells, offsets, dims, differentials })
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Rank of the degree-`q` term (zero outside the supported range).
    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    /// Checks `d^{q+1} ∘ d^q = 0` for all `q`.
    pub fn differential_squares_to_zero(&self) -> bool {
        (0..self.max_degree())
            .all(|q| self.differentials[q].mul(&self.differentials[q + 1]).is_zero())
    }

    /// Cohomology at `q`, presented on a saturated cocycle basis.
    pub fn cohomology_at(&self, q: usize) -> Result<HomologyGroup> {
        if q > self.max_degree() {
            return Ok(super::empty_group());
        }
        let cocycles = left_kernel(&self.differentials[q]);
        let image = if q == 0 {
            IntMat::zeros(0, self.dims[0])
        } else {
            self.differentials[q - 1].clone()
        };
        let presented = subquotient(&cocycles, &image)?;
        Ok(HomologyGroup { cycles: cocycles, presented })
    }

    /// Homology at `q` of the dual (transposed) complex, which computes the
    /// cellular homology of the compactification in the same degrees.
    pub fn dual_homology_at(&self, q: usize) -> Result<HomologyGroup> {
        if q > self.max_degree() {
            return Ok(super::empty_group());
        }
        let out = if q == 0 {
            IntMat::zeros(self.dims[0], 0)
        } else {
            self.differentials[q - 1].transpose()
        };
        let cycles = left_kernel(&out);
        let presented = subquotient(&cycles, &self.differentials[q].transpose())?;
        Ok(HomologyGroup { cycles, presented })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cube_fan_rebased, projective_fan, tropical_line_fan};
    use crate::homology::{bigraded, Flavor, Space};
    use crate::lattice::FinAbGroup;

    #[test]
    fn diagonal_terms_count_cones() {
        // In degree q = p each stratum contributes its rank-one degree-zero
        // dual, so the top term is free on the p-dimensional cones.
        let fan = projective_fan(2).unwrap();
        let geom = Geometry::new(&fan);
        for p in 0..=2 {
            let c = HypercubeComplex::build(&geom, p).unwrap();
            assert_eq!(c.dim(p), fan.cones(p).len());
            assert!(c.differential_squares_to_zero());
        }
    }

    #[test]
    fn projective_plane_cohomology_is_diagonal() {
        let fan = projective_fan(2).unwrap();
        let geom = Geometry::new(&fan);
        for p in 0..=2usize {
            let c = HypercubeComplex::build(&geom, p).unwrap();
            for q in 0..=2usize {
                let g = c.cohomology_at(q).unwrap().group().clone();
                if q == p {
                    assert_eq!(g, FinAbGroup::free(1), "H^{{{p},{q}}}");
                } else {
                    assert!(g.is_zero(), "H^{{{p},{q}}} = {g}");
                }
            }
        }
    }

    #[test]
    fn vanishing_above_the_diagonal_is_structural() {
        // q > p leaves no cells at all, so those groups vanish before any
        // linear algebra happens.
        let fan = cube_fan_rebased();
        let geom = Geometry::new(&fan);
        let c = HypercubeComplex::build(&geom, 1).unwrap();
        assert_eq!(c.max_degree(), 1);
        assert_eq!(c.dim(2), 0);
        assert!(c.cohomology_at(2).unwrap().group().is_zero());
    }

    #[test]
    fn agrees_with_cellular_cohomology_on_the_cube() {
        let fan = cube_fan_rebased();
        let geom = Geometry::new(&fan);
        let cellular = bigraded(&geom, Space::Compactification, Flavor::Cohomology).unwrap();
        let d = fan.dim();
        for p in 0..=d {
            let c = HypercubeComplex::build(&geom, p).unwrap();
            assert!(c.differential_squares_to_zero());
            for q in 0..=d {
                let got = c.cohomology_at(q).unwrap().group().clone();
                assert_eq!(got, cellular[&(p, q)], "bidegree ({p},{q})");
            }
        }
    }

    #[test]
    fn dual_complex_computes_homology() {
        let fan = tropical_line_fan();
        let geom = Geometry::new(&fan);
        let cellular = bigraded(&geom, Space::Compactification, Flavor::Homology).unwrap();
        for p in 0..=1usize {
            let c = HypercubeComplex::build(&geom, p).unwrap();
            for q in 0..=1usize {
                let got = c.dual_homology_at(q).unwrap().group().clone();
                assert_eq!(got, cellular[&(p, q)], "bidegree ({p},{q})");
            }
        }
    }

    #[test]
    fn rejects_non_unimodular_fans() {
        let fan = crate::constructors::weighted_projective_113_fan();
        let geom = Geometry::new(&fan);
        assert!(HypercubeComplex::build(&geom, 1).is_err());
    }
}
