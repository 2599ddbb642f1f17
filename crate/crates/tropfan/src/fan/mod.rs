//! Rational simplicial fans: cones, stars, skeleta, products, and the face
//! poset of the canonical compactification.
//!
//! A [`Fan`] stores primitive ray vectors and its maximal cones as sorted
//! sets of ray indices; every subset of a cone's rays is again a cone, so the
//! full face poset is derived data. Weights live on the maximal cones and
//! default to one.

mod compact;
mod lp;
mod rebase;
mod surgery;
mod validate;

pub use compact::{comp_faces, CompFace, CompactifiedFaces, Incidence, IncidenceKind};
pub use rebase::{rebase_to_ray_lattice, RebasedFan};
pub use validate::ValidationOptions;

use crate::error::{Error, Result};
use crate::lattice::{
    primitive_vector, rational_solve_left, solve_left, IntMat, QuotientLattice, SublatticeBasis,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A cone of a simplicial fan, named by the sorted set of its ray indices.
///
/// The zero cone is the empty set. Because the fans here are simplicial,
/// every subset of a cone's rays names a face of that cone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cone(Vec<usize>);

impl Cone {
    /// The zero cone.
    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    /// Builds a cone from ray indices; sorts and rejects duplicates.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "cone lists a ray twice: {indices:?}"
            )));
        }
        Ok(Cone(indices))
    }

    /// Builds a cone from indices known to be distinct.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Cone(v)
    }

    /// Number of rays, which equals the dimension for simplicial cones.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// True for the zero cone.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The sorted ray indices.
    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn contains_ray(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    /// Face relation: is `self` a face of `other`?
    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }

    /// The smallest cone containing both, as a ray set.
    pub fn join(&self, other: &Cone) -> Cone {
        Cone::from_indices(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Removes one ray; `ray` must be present.
    pub fn without_ray(&self, ray: usize) -> Cone {
        Cone(self.0.iter().copied().filter(|&r| r != ray).collect())
    }

    /// Adds one ray; `ray` must be absent.
    pub fn with_ray(&self, ray: usize) -> Cone {
        let mut v = self.0.clone();
        let pos = v.binary_search(&ray).unwrap_err();
        v.insert(pos, ray);
        Cone(v)
    }

    /// Rays of `self` not in `other`.
    pub fn difference(&self, other: &Cone) -> Vec<usize> {
        self.0.iter().copied().filter(|r| !other.contains_ray(*r)).collect()
    }

    /// All faces, i.e. all subsets of the ray set, in lex order by ray list.
    pub fn faces(&self) -> Vec<Cone> {
        let mut out = Vec::with_capacity(1 << self.0.len());
        for mask in 0u64..(1u64 << self.0.len()) {
            let subset: Vec<usize> = self
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &r)| r)
                .collect();
            out.push(Cone(subset));
        }
        out.sort();
        out
    }

    /// Applies a ray renumbering.
    pub fn relabel(&self, map: &BTreeMap<usize, usize>) -> Cone {
        Cone::from_indices(self.0.iter().map(|r| map[r]))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "⟩")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A weighted rational simplicial fan in `Z^n`.
///
/// Invariants enforced at construction: rays are nonzero, primitive and
/// pairwise distinct; every listed maximal cone has linearly independent
/// rays; no listed cone is a face of another; every ray occurs in some
/// maximal cone; and (unless disabled) the relative interiors of distinct
/// cones are disjoint, checked by an exact rational feasibility test.
#[derive(Clone, PartialEq, Eq)]
pub struct Fan {
    ambient_rank: usize,
    rays: Vec<Vec<BigInt>>,
    facets: Vec<Cone>,
    weights: Vec<BigInt>,
    cones_by_dim: Vec<Vec<Cone>>,
    dim: usize,
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan")
            .field("ambient_rank", &self.ambient_rank)
            .field("rays", &self.rays)
            .field("facets", &self.facets)
            .field("weights", &self.weights)
            .finish()
    }
}

impl Fan {
    /// Builds a fan with full validation and all weights equal to one.
    pub fn new(
        ambient_rank: usize,
        rays: Vec<Vec<BigInt>>,
        maximal_cones: Vec<Cone>,
    ) -> Result<Self> {
        Self::with_options(ambient_rank, rays, maximal_cones, None, &ValidationOptions::default())
    }

    /// Builds a weighted fan with full validation.
    pub fn new_weighted(
        ambient_rank: usize,
        rays: Vec<Vec<BigInt>>,
        maximal_cones: Vec<Cone>,
        weights: Vec<BigInt>,
    ) -> Result<Self> {
        Self::with_options(
            ambient_rank,
            rays,
            maximal_cones,
            Some(weights),
            &ValidationOptions::default(),
        )
    }

    /// Builds a fan with configurable validation (see [`ValidationOptions`]).
    pub fn with_options(
        ambient_rank: usize,
        rays: Vec<Vec<BigInt>>,
        mut maximal_cones: Vec<Cone>,
        weights: Option<Vec<BigInt>>,
        options: &ValidationOptions,
    ) -> Result<Self> {
        maximal_cones.sort();
        maximal_cones.dedup();
        let weights = match weights {
            Some(w) => {
                if w.len() != maximal_cones.len() {
                    return Err(Error::InvalidFan(format!(
                        "{} weights for {} maximal cones",
                        w.len(),
                        maximal_cones.len()
                    )));
                }
                w
            }
            None => vec![BigInt::one(); maximal_cones.len()],
        };

        let dim = maximal_cones.iter().map(Cone::dim).max().unwrap_or(0);
        let mut cones_by_dim: Vec<BTreeSet<Cone>> = vec![BTreeSet::new(); dim + 1];
        for facet in &maximal_cones {
            for face in facet.faces() {
                cones_by_dim[face.dim()].insert(face);
            }
        }
        if maximal_cones.is_empty() {
            cones_by_dim[0].insert(Cone::zero());
        }

        let fan = Fan {
            ambient_rank,
            rays,
            facets: maximal_cones,
            weights,
            cones_by_dim: cones_by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
            dim,
        };
        validate::validate(&fan, options)?;
        Ok(fan)
    }

    /// Rank of the ambient lattice `Z^n`.
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Dimension of the fan (largest cone dimension).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The primitive ray vectors, in input order.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, index: usize) -> &[BigInt] {
        &self.rays[index]
    }

    /// The maximal cones, sorted lexicographically.
    pub fn maximal_cones(&self) -> &[Cone] {
        &self.facets
    }

    /// Weights on the maximal cones, aligned with [`Fan::maximal_cones`].
    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    /// Weight of the maximal cone `sigma`, which must be maximal.
    pub fn weight_of(&self, sigma: &Cone) -> Result<&BigInt> {
        let idx = self
            .facets
            .binary_search(sigma)
            .map_err(|_| Error::InvalidInput(format!("{sigma} is not a maximal cone")))?;
        Ok(&self.weights[idx])
    }

    /// Replaces the weights, keeping everything else.
    pub fn with_weights(&self, weights: Vec<BigInt>) -> Result<Fan> {
        if weights.len() != self.facets.len() {
            return Err(Error::InvalidFan(format!(
                "{} weights for {} maximal cones",
                weights.len(),
                self.facets.len()
            )));
        }
        let mut fan = self.clone();
        fan.weights = weights;
        Ok(fan)
    }

    /// All cones of dimension `k`, sorted; empty slice when `k` exceeds the
    /// fan dimension.
    pub fn cones(&self, k: usize) -> &[Cone] {
        self.cones_by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    /// All cones in order of increasing dimension, then lexicographically.
    pub fn all_cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones_by_dim.iter().flatten()
    }

    pub fn contains_cone(&self, cone: &Cone) -> bool {
        self.cones_by_dim
            .get(cone.dim())
            .is_some_and(|level| level.binary_search(cone).is_ok())
    }

    /// True if every maximal cone has the same dimension.
    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.dim() == self.dim)
    }

    /// Cones of dimension `cone.dim() + 1` containing `cone`.
    pub fn cofaces(&self, cone: &Cone) -> Vec<&Cone> {
        self.cones(cone.dim() + 1).iter().filter(|c| cone.is_face_of(c)).collect()
    }

    /// Maximal cones containing `cone`.
    pub fn maximal_cones_containing(&self, cone: &Cone) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| cone.is_face_of(&self.facets[i])).collect()
    }

    /// Matrix whose rows are the primitive rays of `cone`, in index order.
    pub fn ray_matrix(&self, cone: &Cone) -> IntMat {
        IntMat::from_rows(
            self.ambient_rank,
            cone.rays().iter().map(|&r| self.rays[r].clone()).collect(),
        )
    }

    /// The sublattice generated by the rays of `cone` (not saturated).
    pub fn ray_span(&self, cone: &Cone) -> SublatticeBasis {
        SublatticeBasis::from_generators(&self.ray_matrix(cone))
    }

    /// The cone's lattice `N_σ = span(σ) ∩ Z^n`, i.e. the saturation of the
    /// ray span.
    pub fn cone_lattice(&self, cone: &Cone) -> SublatticeBasis {
        self.ray_span(cone).saturate()
    }

    /// Index of the ray span inside `N_σ`; one exactly when the cone is
    /// unimodular.
    pub fn cone_index(&self, cone: &Cone) -> BigInt {
        self.ray_span(cone).index_in_saturation()
    }

    pub fn cone_is_unimodular(&self, cone: &Cone) -> bool {
        self.cone_index(cone).is_one()
    }

    /// True if every cone is unimodular. Checking the maximal cones
    /// suffices: a subset of a basis of a saturated sublattice again spans a
    /// saturated sublattice.
    pub fn is_unimodular(&self) -> bool {
        self.facets.iter().all(|f| self.cone_is_unimodular(f))
    }

    /// The projection `Z^n → Z^n / N_σ` onto the quotient by the cone's
    /// (saturated) lattice.
    pub fn quotient(&self, cone: &Cone) -> QuotientLattice {
        QuotientLattice::new(&self.cone_lattice(cone))
            .expect("cone lattice is saturated by construction")
    }

    /// A lattice normal vector of `sigma` relative to its facet `tau`: an
    /// element of `N_σ` whose class generates `N_σ / N_τ` and points into
    /// `sigma`. Deterministic, but any other valid choice differs by an
    /// element of `N_τ` and yields the same downstream answers.
    pub fn lattice_normal(&self, tau: &Cone, sigma: &Cone) -> Result<Vec<BigInt>> {
        if !tau.is_face_of(sigma) || sigma.dim() != tau.dim() + 1 {
            return Err(Error::InvalidInput(format!(
                "{tau} is not a codimension-one face of {sigma}"
            )));
        }
        let q = self.quotient(tau);
        let extra = sigma.difference(tau)[0];
        // Image of N_σ under Z^n → Z^n/N_τ is a rank-one saturated lattice;
        // take its canonical generator, oriented toward sigma.
        let n_sigma = self.cone_lattice(sigma);
        let image_rows = IntMat::from_rows(
            q.quotient_rank(),
            (0..n_sigma.rank()).map(|i| q.project(n_sigma.basis().row(i))).collect(),
        );
        let image = SublatticeBasis::from_generators(&image_rows);
        debug_assert_eq!(image.rank(), 1);
        debug_assert!(image.is_saturated());
        let mut gen = image.basis().row_vec(0);
        let toward = q.project(self.ray(extra));
        // `toward` is a positive multiple of ±gen; match signs.
        let k = (0..gen.len()).find(|&i| !gen[i].is_zero()).expect("nonzero generator");
        if (toward[k].clone() * &gen[k]) < BigInt::zero() {
            gen = gen.iter().map(|c| -c).collect();
        }
        // Lift the generator into N_σ.
        let coords = solve_left(&image_rows, &gen)
            .ok_or_else(|| Error::InvalidInput("normal vector lift failed".into()))?;
        let mut normal = vec![BigInt::zero(); self.ambient_rank];
        for (i, c) in coords.iter().enumerate() {
            for (j, entry) in n_sigma.basis().row(i).iter().enumerate() {
                normal[j] += c * entry;
            }
        }
        debug_assert_eq!(q.project(&normal), gen);
        Ok(normal)
    }

    /// The star fan of `cone`: the fan induced in `Z^n / N_σ` by the cones
    /// containing `cone`, with inherited weights.
    pub fn star_fan(&self, cone: &Cone) -> Result<StarFan> {
        if !self.contains_cone(cone) {
            return Err(Error::InvalidInput(format!("{cone} is not a cone of the fan")));
        }
        let quotient = self.quotient(cone);
        // Star rays come from the cones one dimension up; remember which
        // parent ray produced each.
        let mut star_rays: Vec<Vec<BigInt>> = Vec::new();
        let mut ray_to_parent_ray: Vec<usize> = Vec::new();
        let mut parent_ray_to_star: BTreeMap<usize, usize> = BTreeMap::new();
        for coface in self.cofaces(cone) {
            let extra = coface.difference(cone)[0];
            let image = primitive_vector(&quotient.project(self.ray(extra)))?;
            debug_assert!(!star_rays.contains(&image), "star rays must be distinct");
            parent_ray_to_star.insert(extra, star_rays.len());
            ray_to_parent_ray.push(extra);
            star_rays.push(image);
        }
        let mut star_facets = Vec::new();
        let mut star_weights = Vec::new();
        let mut facet_to_parent = Vec::new();
        for (idx, facet) in self.facets.iter().enumerate() {
            if !cone.is_face_of(facet) {
                continue;
            }
            let star_cone = Cone::from_indices(
                facet.difference(cone).into_iter().map(|r| parent_ray_to_star[&r]),
            );
            star_facets.push(star_cone);
            star_weights.push(self.weights[idx].clone());
            facet_to_parent.push(idx);
        }
        // Keep facet/weight alignment while Fan::with_options sorts facets.
        let mut order: Vec<usize> = (0..star_facets.len()).collect();
        order.sort_by(|&a, &b| star_facets[a].cmp(&star_facets[b]));
        let facets_sorted: Vec<Cone> = order.iter().map(|&i| star_facets[i].clone()).collect();
        let weights_sorted: Vec<BigInt> = order.iter().map(|&i| star_weights[i].clone()).collect();
        let facet_to_parent: Vec<usize> = order.iter().map(|&i| facet_to_parent[i]).collect();
        let fan = Fan::with_options(
            quotient.quotient_rank(),
            star_rays,
            facets_sorted,
            Some(weights_sorted),
            &ValidationOptions::default(),
        )?;
        Ok(StarFan { fan, base: cone.clone(), quotient, ray_to_parent_ray, facet_to_parent })
    }

    /// The product fan in `Z^{n₁+n₂}`: rays of `self` (padded right) then
    /// rays of `other` (padded left); maximal cones are joins of one from
    /// each factor; weights multiply.
    pub fn product(&self, other: &Fan) -> Result<Fan> {
        let n1 = self.ambient_rank;
        let n2 = other.ambient_rank;
        let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(self.n_rays() + other.n_rays());
        for r in &self.rays {
            let mut v = r.clone();
            v.extend(std::iter::repeat_with(BigInt::zero).take(n2));
            rays.push(v);
        }
        for r in &other.rays {
            let mut v: Vec<BigInt> = std::iter::repeat_with(BigInt::zero).take(n1).collect();
            v.extend(r.iter().cloned());
            rays.push(v);
        }
        let offset = self.n_rays();
        let mut facets = Vec::new();
        let mut weights = Vec::new();
        for (i, f1) in self.facets.iter().enumerate() {
            for (j, f2) in other.facets.iter().enumerate() {
                let shifted = Cone::from_indices(f2.rays().iter().map(|&r| r + offset));
                facets.push(f1.join(&shifted));
                weights.push(&self.weights[i] * &other.weights[j]);
            }
        }
        let mut order: Vec<usize> = (0..facets.len()).collect();
        order.sort_by(|&a, &b| facets[a].cmp(&facets[b]));
        Fan::with_options(
            n1 + n2,
            rays,
            order.iter().map(|&i| facets[i].clone()).collect(),
            Some(order.iter().map(|&i| weights[i].clone()).collect()),
            &ValidationOptions::default(),
        )
    }

    /// The `k`-skeleton: all cones of dimension at most `k`, with weights
    /// reset to one on the new maximal cones.
    pub fn skeleton(&self, k: usize) -> Result<Fan> {
        let mut maximal: Vec<Cone> = Vec::new();
        for level in self.cones_by_dim.iter().take(k + 1) {
            for cone in level {
                if cone.dim() == k || !self.cones(cone.dim() + 1).iter().any(|c| cone.is_face_of(c))
                {
                    maximal.push(cone.clone());
                }
            }
        }
        let (rays, facets) = prune_rays(&self.rays, &maximal);
        Fan::with_options(
            self.ambient_rank,
            rays,
            facets,
            None,
            &ValidationOptions::default(),
        )
    }

    /// Structural equality up to renumbering rays by their vectors: same
    /// ambient rank, same set of ray vectors, and matching maximal cones
    /// with matching weights under that identification.
    pub fn same_fan_as(&self, other: &Fan) -> bool {
        if self.ambient_rank != other.ambient_rank || self.n_rays() != other.n_rays() {
            return false;
        }
        let theirs: BTreeMap<&[BigInt], usize> =
            other.rays.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
        let mut map = BTreeMap::new();
        for (i, r) in self.rays.iter().enumerate() {
            match theirs.get(r.as_slice()) {
                Some(&j) => {
                    map.insert(i, j);
                }
                None => return false,
            }
        }
        let mut mine: Vec<(Cone, BigInt)> = self
            .facets
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| (c.relabel(&map), w.clone()))
            .collect();
        mine.sort();
        let mut others: Vec<(Cone, BigInt)> =
            other.facets.iter().zip(&other.weights).map(|(c, w)| (c.clone(), w.clone())).collect();
        others.sort();
        mine == others
    }

    /// Applies a linear change of coordinates `x ↦ x·T` to every ray, for a
    /// unimodular square `T`; cone structure and weights are preserved.
    pub fn apply_unimodular(&self, t: &IntMat) -> Result<Fan> {
        if t.rows() != self.ambient_rank || t.cols() != self.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "change of basis is {}×{}, ambient rank is {}",
                t.rows(),
                t.cols(),
                self.ambient_rank
            )));
        }
        if !t.is_unimodular() {
            return Err(Error::InvalidInput("change of basis must be unimodular".into()));
        }
        let rays = self.rays.iter().map(|r| t.apply_left(r)).collect();
        Fan::with_options(
            self.ambient_rank,
            rays,
            self.facets.clone(),
            Some(self.weights.clone()),
            &ValidationOptions::default(),
        )
    }
}

/// A star fan together with its bookkeeping back to the parent fan.
#[derive(Clone, Debug)]
pub struct StarFan {
    /// The induced fan in the quotient lattice `Z^n / N_σ`.
    pub fan: Fan,
    /// The cone of the parent fan the star was taken at.
    pub base: Cone,
    /// The quotient `Z^n → Z^n / N_σ`.
    pub quotient: QuotientLattice,
    /// For each star ray, the parent ray whose image generates it.
    pub ray_to_parent_ray: Vec<usize>,
    /// For each maximal cone of the star fan (in sorted order), the index of
    /// the parent maximal cone it came from.
    pub facet_to_parent: Vec<usize>,
}

impl StarFan {
    /// The parent cone corresponding to a cone of the star fan.
    pub fn parent_cone(&self, star_cone: &Cone) -> Cone {
        Cone::from_indices(
            self.base
                .rays()
                .iter()
                .copied()
                .chain(star_cone.rays().iter().map(|&r| self.ray_to_parent_ray[r])),
        )
    }
}

/// Drops rays unused by `cones` and renumbers; returns the kept rays and the
/// relabeled cones (sorted).
pub(crate) fn prune_rays(
    rays: &[Vec<BigInt>],
    cones: &[Cone],
) -> (Vec<Vec<BigInt>>, Vec<Cone>) {
    let used: BTreeSet<usize> = cones.iter().flat_map(|c| c.rays().iter().copied()).collect();
    let map: BTreeMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let kept = used.iter().map(|&r| rays[r].clone()).collect();
    let mut relabeled: Vec<Cone> = cones.iter().map(|c| c.relabel(&map)).collect();
    relabeled.sort();
    (kept, relabeled)
}

/// Rational coordinates of `point` in the ray basis of `cone`, if the point
/// lies in the linear span.
pub(crate) fn coords_in_cone(
    fan: &Fan,
    cone: &Cone,
    point: &[BigInt],
) -> Option<Vec<num_rational::BigRational>> {
    rational_solve_left(&fan.ray_matrix(cone), point)
}
