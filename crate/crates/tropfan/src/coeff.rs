//! Orientation generators, multi-tangent coefficient lattices, and
//! incidence signs on the faces of a compactified fan.
//!
//! For a face `(τ, σ)` the ambient of all data is the quotient lattice
//! `Z^n / N_τ ≅ Z^{n−|τ|}`. Each cone `η ⊇ τ` spans there the sublattice
//! `L^τ_η` generated by the primitive images of the rays of `η ∖ τ` — the
//! rays themselves, not the saturation of their span, so a non-unimodular
//! cone contributes a finite-index sublattice and integral torsion survives
//! where it should. The coefficient lattice in degree `p` is
//!
//! `F_p(τ, σ) = Σ_η Λ^p( L^τ_η ) ⊆ Λ^p Z^{n−|τ|}`,
//!
//! the sum running over the maximal cones `η ⊇ σ` — lower cones contribute
//! nothing new. Cochain data is never materialized separately: in the bases
//! below, coboundary matrices are the transposes of boundary matrices.

use crate::error::{Error, Result};
use crate::fan::{comp_faces, CompactifiedFaces, Cone, Fan, Incidence, IncidenceKind};
use crate::lattice::{
    binomial, exterior_power_basis, exterior_power_map, primitive_vector, vec_mul_mat, vec_neg,
    wedge_mul, wedge_of_rows, IntMat, QuotientLattice, SublatticeBasis,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Sign of the ratio of two parallel nonzero integer vectors.
pub fn sign_ratio(a: &[BigInt], b: &[BigInt]) -> i32 {
    for (x, y) in a.iter().zip(b) {
        if !y.is_zero() {
            assert!(!x.is_zero(), "sign_ratio: vectors are not proportional");
            let pos = (x > &BigInt::zero()) == (y > &BigInt::zero());
            return if pos { 1 } else { -1 };
        }
    }
    panic!("sign_ratio: zero vector");
}

/// Precomputed orientation and coefficient data for one fan.
pub struct Geometry<'a> {
    fan: &'a Fan,
    faces: CompactifiedFaces,
    quotients: BTreeMap<Cone, QuotientLattice>,
    /// Orientation generator `ν` of `Λ^dim L^τ_σ` per face — up to sign the
    /// wedge of the primitive ray images of `σ ∖ τ` — oriented positively
    /// with respect to the sorted rays.
    nu: Vec<Vec<BigInt>>,
    /// `f_lattices[p][face]` is `F_p` of that face.
    f_lattices: Vec<Vec<SublatticeBasis>>,
}

impl<'a> Geometry<'a> {
    pub fn new(fan: &'a Fan) -> Geometry<'a> {
        let faces = comp_faces(fan);
        let mut quotients: BTreeMap<Cone, QuotientLattice> = BTreeMap::new();
        for cone in fan.all_cones() {
            let q = QuotientLattice::new(&fan.cone_lattice(cone))
                .expect("cone lattices are saturated");
            quotients.insert(cone.clone(), q);
        }

        // Ray-generated lattices L^τ_η, cached per (sedentarity, cone).
        let mut images: BTreeMap<(Cone, Cone), SublatticeBasis> = BTreeMap::new();
        let mut image = |tau: &Cone, eta: &Cone, q: &QuotientLattice| -> SublatticeBasis {
            images
                .entry((tau.clone(), eta.clone()))
                .or_insert_with(|| {
                    let rows: Vec<Vec<BigInt>> = eta
                        .rays()
                        .iter()
                        .filter(|r| !tau.contains_ray(**r))
                        .map(|&r| {
                            primitive_vector(&q.project(fan.ray(r)))
                                .expect("ray outside the sedentarity has nonzero image")
                        })
                        .collect();
                    SublatticeBasis::from_generators(&IntMat::from_rows(q.quotient_rank(), rows))
                })
                .clone()
        };

        let mut nu = Vec::with_capacity(faces.len());
        for face in faces.faces() {
            let q = &quotients[&face.sed];
            let m = q.quotient_rank();
            let k = face.dim();
            let img = image(&face.sed, &face.cone, q);
            debug_assert_eq!(img.rank(), k);
            let mut w = wedge_of_rows(img.basis(), &(0..k).collect::<Vec<_>>());
            // Orient positively with respect to the sorted primitive rays of
            // the moving part σ ∖ τ.
            let moving: Vec<Vec<BigInt>> = face
                .cone
                .rays()
                .iter()
                .filter(|r| !face.sed.contains_ray(**r))
                .map(|&r| q.project(fan.ray(r)))
                .collect();
            let reference =
                wedge_of_rows(&IntMat::from_rows(m, moving), &(0..k).collect::<Vec<_>>());
            if k > 0 && sign_ratio(&reference, &w) < 0 {
                w = vec_neg(&w);
            }
            nu.push(w);
        }

        let mut f_lattices = Vec::with_capacity(fan.ambient_rank() + 1);
        for p in 0..=fan.ambient_rank() {
            let mut per_face = Vec::with_capacity(faces.len());
            for face in faces.faces() {
                let q = &quotients[&face.sed];
                let m = q.quotient_rank();
                let ambient = binomial(m, p);
                let mut rows: Vec<Vec<BigInt>> = Vec::new();
                for idx in fan.maximal_cones_containing(&face.cone) {
                    let eta = &fan.maximal_cones()[idx];
                    let wedge = exterior_power_basis(&image(&face.sed, eta, q), p);
                    for i in 0..wedge.rank() {
                        rows.push(wedge.basis().row_vec(i));
                    }
                }
                per_face
                    .push(SublatticeBasis::from_generators(&IntMat::from_rows(ambient, rows)));
            }
            f_lattices.push(per_face);
        }

        Geometry { fan, faces, quotients, nu, f_lattices }
    }

    pub fn fan(&self) -> &Fan {
        self.fan
    }

    pub fn faces(&self) -> &CompactifiedFaces {
        &self.faces
    }

    /// The quotient `Z^n → Z^n / N_τ` for a cone of the fan.
    pub fn quotient(&self, cone: &Cone) -> &QuotientLattice {
        &self.quotients[cone]
    }

    /// Orientation generator of face `i`, in `Λ^dim Z^{n−|sed|}`.
    pub fn nu(&self, i: usize) -> &[BigInt] {
        &self.nu[i]
    }

    /// The coefficient lattice `F_p` of face `i`.
    pub fn f_lattice(&self, p: usize, i: usize) -> &SublatticeBasis {
        &self.f_lattices[p][i]
    }

    pub fn f_rank(&self, p: usize, i: usize) -> usize {
        self.f_lattices[p][i].rank()
    }

    /// The induced projection `Z^n/N_τ → Z^n/N_τ'` for nested cones
    /// `τ ⊆ τ'`, as a matrix acting on the right.
    pub fn quotient_map(&self, tau: &Cone, tau2: &Cone) -> IntMat {
        debug_assert!(tau.is_face_of(tau2));
        self.quotients[tau].lift_matrix().mul(self.quotients[tau2].proj_matrix())
    }

    /// A section of [`Geometry::quotient_map`]: right inverse as matrices,
    /// `section · map = id` on `Z^{n−|τ'|}`.
    pub fn quotient_section(&self, tau: &Cone, tau2: &Cone) -> IntMat {
        debug_assert!(tau.is_face_of(tau2));
        self.quotients[tau2].lift_matrix().mul(self.quotients[tau].proj_matrix())
    }

    /// Primitive image of a ray in `Z^n / N_τ`; fails if the ray lies in
    /// `N_τ` (it never does for rays outside the sedentarity).
    pub fn primitive_image(&self, tau: &Cone, ray: usize) -> Result<Vec<BigInt>> {
        primitive_vector(&self.quotients[tau].project(self.fan.ray(ray)))
    }

    /// The sign with which the codimension-one face `inc` of face `delta`
    /// enters the boundary.
    ///
    /// For a `SameSed` incidence the removed ray's image `u` is compared via
    /// `sign(u ∧ ν_γ : ν_δ)`; for a `SedRaise` incidence the smaller face's
    /// orientation is pulled back along a section and compared via
    /// `sign(−e ∧ s(ν_γ) : ν_δ)` with `e` the primitive image of the ray
    /// that went to infinity.
    pub fn incidence_sign(&self, delta: usize, inc: &Incidence) -> i32 {
        let df = self.faces.face(delta);
        let gf = self.faces.face(inc.face);
        let q = &self.quotients[&df.sed];
        let m = q.quotient_rank();
        let k = df.dim();
        match inc.kind {
            IncidenceKind::SameSed => {
                let u = q.project(self.fan.ray(inc.ray));
                let w = wedge_mul(m, 1, &u, k - 1, &self.nu[inc.face]);
                sign_ratio(&w, &self.nu[delta])
            }
            IncidenceKind::SedRaise => {
                let e = self
                    .primitive_image(&df.sed, inc.ray)
                    .expect("ray outside sedentarity has nonzero image");
                let section = self.quotient_section(&df.sed, &gf.sed);
                let lifted = vec_mul_mat(&self.nu[inc.face], &exterior_power_map(&section, k - 1));
                let w = wedge_mul(m, 1, &vec_neg(&e), k - 1, &lifted);
                sign_ratio(&w, &self.nu[delta])
            }
        }
    }

    /// The image of a coefficient vector of face `delta` in the coefficient
    /// space of its codimension-one face: identity for `SameSed` (the
    /// lattices share an ambient), `Λ^p` of the quotient map for `SedRaise`.
    pub fn push_coefficient(
        &self,
        p: usize,
        delta: usize,
        inc: &Incidence,
        v: &[BigInt],
    ) -> Vec<BigInt> {
        let df = self.faces.face(delta);
        let gf = self.faces.face(inc.face);
        match inc.kind {
            IncidenceKind::SameSed => v.to_vec(),
            IncidenceKind::SedRaise => {
                let map = self.quotient_map(&df.sed, &gf.sed);
                vec_mul_mat(v, &exterior_power_map(&map, p))
            }
        }
    }

    /// Coordinates of an ambient coefficient vector in the lattice basis of
    /// `F_p` of face `i`.
    pub fn coefficient_coords(&self, p: usize, i: usize, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.f_lattices[p][i]
            .coords_of(v)
            .ok_or_else(|| Error::InvalidInput("vector escapes the coefficient lattice".into()))
    }
}
