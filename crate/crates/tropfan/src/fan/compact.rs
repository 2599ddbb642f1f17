//! The face poset of the canonical compactification of a fan.
//!
//! Faces are pairs `(sed, cone)` of cones with `sed ⪯ cone`: the closure of
//! the part of `cone` at infinity in the directions of `sed` (its
//! sedentarity). The pair `(0, cone)` is the finite part of `cone` itself;
//! `(cone, cone)` is a point at infinity. Dimension is
//! `cone.dim() − sed.dim()`.

use super::{Cone, Fan};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// One face of the compactification: the cone `cone` at sedentarity `sed`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CompFace {
    pub sed: Cone,
    pub cone: Cone,
}

impl CompFace {
    pub fn new(sed: Cone, cone: Cone) -> Self {
        debug_assert!(sed.is_face_of(&cone));
        CompFace { sed, cone }
    }

    /// Every cone of the fan, viewed at sedentarity zero.
    pub fn finite(cone: Cone) -> Self {
        CompFace { sed: Cone::zero(), cone }
    }

    pub fn dim(&self) -> usize {
        self.cone.dim() - self.sed.dim()
    }

    /// True for faces of the fan itself (sedentarity zero).
    pub fn is_finite(&self) -> bool {
        self.sed.is_zero()
    }
}

impl fmt::Debug for CompFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.cone, self.sed)
    }
}

impl fmt::Display for CompFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How a codimension-one face sits inside a face: either the cone shrinks at
/// the same sedentarity, or the sedentarity grows within the same cone.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum IncidenceKind {
    /// `(sed, cone ∖ ray) ⋖ (sed, cone)`.
    SameSed,
    /// `(sed ∨ ray, cone) ⋖ (sed, cone)`.
    SedRaise,
}

/// One codimension-one face of a face, with the ray that was moved.
#[derive(Clone, Copy, Debug)]
pub struct Incidence {
    /// Index of the smaller face in [`CompactifiedFaces::faces`].
    pub face: usize,
    pub kind: IncidenceKind,
    /// The ray removed from the cone (`SameSed`) or added to the
    /// sedentarity (`SedRaise`).
    pub ray: usize,
}

/// The full face poset of the canonical compactification, with faces indexed
/// deterministically (by dimension, then sedentarity, then cone).
pub struct CompactifiedFaces {
    faces: Vec<CompFace>,
    index: BTreeMap<CompFace, usize>,
    by_dim: Vec<Vec<usize>>,
    facets_of: Vec<Vec<Incidence>>,
}

impl CompactifiedFaces {
    pub fn faces(&self) -> &[CompFace] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &CompFace {
        &self.faces[i]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, face: &CompFace) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// Indices of all faces of dimension `d`.
    pub fn by_dim(&self, d: usize) -> &[usize] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    /// Largest face dimension.
    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    /// The codimension-one faces of face `i`.
    pub fn facets_of(&self, i: usize) -> &[Incidence] {
        &self.facets_of[i]
    }

    /// Face relation of the compactification:
    /// `(sed', cone') ⪯ (sed, cone)` iff `sed ⊆ sed' ⊆ cone' ⊆ cone`.
    pub fn is_face(&self, smaller: &CompFace, larger: &CompFace) -> bool {
        larger.sed.is_face_of(&smaller.sed)
            && smaller.sed.is_face_of(&smaller.cone)
            && smaller.cone.is_face_of(&larger.cone)
    }
}

/// Enumerates all faces `(sed, cone)` with `sed ⪯ cone` over the cones of
/// the fan, together with their codimension-one incidences.
pub fn comp_faces(fan: &Fan) -> CompactifiedFaces {
    let mut faces: Vec<CompFace> = Vec::new();
    for cone in fan.all_cones() {
        for sed in cone.faces() {
            faces.push(CompFace::new(sed, cone.clone()));
        }
    }
    faces.sort_by(|a, b| {
        a.dim().cmp(&b.dim()).then_with(|| a.sed.cmp(&b.sed)).then_with(|| a.cone.cmp(&b.cone))
    });
    let index: BTreeMap<CompFace, usize> =
        faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let max_dim = faces.iter().map(CompFace::dim).max().unwrap_or(0);
    let mut by_dim = vec![Vec::new(); max_dim + 1];
    for (i, f) in faces.iter().enumerate() {
        by_dim[f.dim()].push(i);
    }
    let facets_of = faces
        .iter()
        .map(|f| {
            let mut out = Vec::new();
            for &ray in f.cone.rays() {
                if f.sed.contains_ray(ray) {
                    continue;
                }
                out.push(Incidence {
                    face: index[&CompFace::new(f.sed.clone(), f.cone.without_ray(ray))],
                    kind: IncidenceKind::SameSed,
                    ray,
                });
                out.push(Incidence {
                    face: index[&CompFace::new(f.sed.with_ray(ray), f.cone.clone())],
                    kind: IncidenceKind::SedRaise,
                    ray,
                });
            }
            out
        })
        .collect();
    CompactifiedFaces { faces, index, by_dim, facets_of }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn affine_line() -> Fan {
        // Rays ±1 in Z¹; compactifies to a closed segment.
        Fan::new(1, vec![bi(&[1]), bi(&[-1])], vec![
            Cone::from_indices([0]),
            Cone::from_indices([1]),
        ])
        .unwrap()
    }

    fn tropical_line() -> Fan {
        Fan::new(
            2,
            vec![bi(&[1, 0]), bi(&[0, 1]), bi(&[-1, -1])],
            vec![
                Cone::from_indices([0]),
                Cone::from_indices([1]),
                Cone::from_indices([2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn segment_has_five_faces() {
        // Origin, two open ends, two points at infinity.
        let cc = comp_faces(&affine_line());
        assert_eq!(cc.len(), 5);
        assert_eq!(cc.by_dim(0).len(), 3);
        assert_eq!(cc.by_dim(1).len(), 2);
    }

    #[test]
    fn tropical_line_has_seven_faces() {
        let cc = comp_faces(&tropical_line());
        assert_eq!(cc.len(), 7);
        assert_eq!(cc.by_dim(0).len(), 4); // origin + three endpoints
        assert_eq!(cc.by_dim(1).len(), 3); // three edges
    }

    #[test]
    fn plane_fan_face_count() {
        let fan = Fan::new(
            2,
            vec![bi(&[1, 0]), bi(&[0, 1]), bi(&[-1, -1])],
            vec![
                Cone::from_indices([0, 1]),
                Cone::from_indices([1, 2]),
                Cone::from_indices([0, 2]),
            ],
        )
        .unwrap();
        // 1 pair over the zero cone, 2 per ray, 4 per two-dimensional cone.
        let cc = comp_faces(&fan);
        assert_eq!(cc.len(), 1 + 2 * 3 + 4 * 3);
    }

    #[test]
    fn edge_incidences_of_the_segment() {
        let cc = comp_faces(&affine_line());
        let edge = cc
            .index_of(&CompFace::finite(Cone::from_indices([0])))
            .unwrap();
        let inc = cc.facets_of(edge);
        assert_eq!(inc.len(), 2);
        let kinds: Vec<IncidenceKind> = inc.iter().map(|i| i.kind).collect();
        assert!(kinds.contains(&IncidenceKind::SameSed));
        assert!(kinds.contains(&IncidenceKind::SedRaise));
        for i in inc {
            assert_eq!(cc.face(i.face).dim(), 0);
            assert_eq!(i.ray, 0);
        }
    }

    #[test]
    fn two_dimensional_face_has_four_facets() {
        let fan = Fan::new(
            2,
            vec![bi(&[1, 0]), bi(&[0, 1])],
            vec![Cone::from_indices([0, 1])],
        )
        .unwrap();
        let cc = comp_faces(&fan);
        assert_eq!(cc.len(), 1 + 2 + 2 + 4); // zero, two rays ×2, quadrant ×4
        let square = cc
            .index_of(&CompFace::finite(Cone::from_indices([0, 1])))
            .unwrap();
        assert_eq!(cc.face(square).dim(), 2);
        // The compactified quadrant is a square: four edges.
        assert_eq!(cc.facets_of(square).len(), 4);
        let same: Vec<_> = cc
            .facets_of(square)
            .iter()
            .filter(|i| i.kind == IncidenceKind::SameSed)
            .collect();
        assert_eq!(same.len(), 2);
    }

    #[test]
    fn face_relation_matches_definition() {
        let fan = Fan::new(
            2,
            vec![bi(&[1, 0]), bi(&[0, 1])],
            vec![Cone::from_indices([0, 1])],
        )
        .unwrap();
        let cc = comp_faces(&fan);
        let square = CompFace::finite(Cone::from_indices([0, 1]));
        let far_point = CompFace::new(Cone::from_indices([0, 1]), Cone::from_indices([0, 1]));
        let finite_edge = CompFace::finite(Cone::from_indices([0]));
        let infinite_edge = CompFace::new(Cone::from_indices([0]), Cone::from_indices([0, 1]));
        assert!(cc.is_face(&far_point, &square));
        assert!(cc.is_face(&finite_edge, &square));
        assert!(cc.is_face(&infinite_edge, &square));
        assert!(cc.is_face(&far_point, &infinite_edge));
        // A finite edge is not a face of an infinite edge.
        assert!(!cc.is_face(&finite_edge, &infinite_edge));
        assert!(!cc.is_face(&square, &finite_edge));
    }

    #[test]
    fn indexing_is_deterministic() {
        let cc1 = comp_faces(&tropical_line());
        let cc2 = comp_faces(&tropical_line());
        assert_eq!(cc1.faces(), cc2.faces());
        // Dimension is weakly increasing along the index order.
        for w in cc1.faces().windows(2) {
            assert!(w[0].dim() <= w[1].dim());
        }
    }
}
