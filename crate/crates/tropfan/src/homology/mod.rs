//! Bigraded integral homology and cohomology of fans and their canonical
//! compactifications.
//!
//! For fixed `p` the chains in degree `q` are `⊕_δ F_p(δ)` over the selected
//! faces `δ` of dimension `q`; boundary components are coefficient
//! inclusions (same sedentarity) or exterior powers of quotient projections
//! (rising sedentarity), with signs from the orientation generators.
//! Cochain complexes are the transposes of chain complexes in the same
//! bases, so cohomology needs no dual lattices.

mod cup;
mod hypercube;
mod pd;
mod relative;

pub use cup::{Cochain, CupRing};
pub use hypercube::HypercubeComplex;
pub use pd::{cap_fundamental, fundamental_chain, verifies_pd, PdReport};
pub use relative::{presented_homology, PresentedComplex};

use crate::coeff::Geometry;
use crate::error::Result;
use crate::lattice::{left_kernel, solve_left, subquotient, FinAbGroup, IntMat, PresentedGroup};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Chain supports: ordinary homology uses finitely supported chains (only
/// compact faces carry them), Borel–Moore homology uses locally finite
/// chains (all faces).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Supports {
    Compact,
    Closed,
}

/// Which space the complex lives on: the fan itself or its canonical
/// compactification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    Fan,
    Compactification,
}

/// The four (co)homology flavors exposed to callers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    /// `H_{p,q}`: homology with compact supports.
    Homology,
    /// `H^BM_{p,q}`: Borel–Moore homology.
    BorelMoore,
    /// `H^{p,q}`: cohomology.
    Cohomology,
    /// `H^{p,q}_c`: compactly supported cohomology.
    CompactCohomology,
}

impl Flavor {
    /// The chain supports whose complex (or its transpose) computes this
    /// flavor.
    pub fn supports(self) -> Supports {
        match self {
            Flavor::Homology | Flavor::Cohomology => Supports::Compact,
            Flavor::BorelMoore | Flavor::CompactCohomology => Supports::Closed,
        }
    }

    pub fn is_cohomology(self) -> bool {
        matches!(self, Flavor::Cohomology | Flavor::CompactCohomology)
    }
}

/// A cellular chain complex for one coefficient degree `p`.
pub struct Complex<'g, 'f> {
    pub geom: &'g Geometry<'f>,
    pub p: usize,
    /// Selected face indices per cell dimension.
    pub cells: Vec<Vec<usize>>,
    /// Column offset of each selected face's coefficient block.
    pub offsets: Vec<Vec<usize>>,
    /// Rank of `C_q`.
    pub dims: Vec<usize>,
    /// `boundaries[q]` is `∂_q : C_q → C_{q−1}` acting on row vectors;
    /// `boundaries[0]` has zero columns.
    pub boundaries: Vec<IntMat>,
}

/// A homology group in presentation form: a saturated basis of the cycle
/// lattice plus the boundary relations expressed in it.
pub struct HomologyGroup {
    /// Rows form a basis of the cycles inside `C_q`.
    pub cycles: IntMat,
    /// The subquotient presentation; its ambient rank is `cycles.rows()`.
    pub presented: PresentedGroup,
}

impl HomologyGroup {
    pub fn group(&self) -> &FinAbGroup {
        self.presented.group()
    }

    /// Class coordinates (torsion residues, free coordinates) of a chain;
    /// `None` when the chain is not a cycle.
    pub fn class_of(&self, chain: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let coords = solve_left(&self.cycles, chain)?;
        Some(self.presented.class_coords(&coords))
    }

    /// True when the chain is a cycle representing zero.
    pub fn is_boundary(&self, chain: &[BigInt]) -> bool {
        self.class_of(chain)
            .is_some_and(|(t, f)| {
                t.iter().all(num_traits::Zero::is_zero) && f.iter().all(num_traits::Zero::is_zero)
            })
    }
}

impl<'g, 'f> Complex<'g, 'f> {
    /// Assembles the degree-`p` chain complex over the faces selected by
    /// `space` and `supports`.
    pub fn build(geom: &'g Geometry<'f>, p: usize, space: Space, supports: Supports) -> Self {
        let faces = geom.faces();
        let keep = |i: usize| -> bool {
            match (space, supports) {
                (Space::Fan, Supports::Closed) => faces.face(i).is_finite(),
                (Space::Fan, Supports::Compact) => {
                    faces.face(i).is_finite() && faces.face(i).cone.is_zero()
                }
                (Space::Compactification, _) => true,
            }
        };
        let max_dim = faces.max_dim();
        let mut cells = Vec::with_capacity(max_dim + 1);
        let mut offsets = Vec::with_capacity(max_dim + 1);
        let mut dims = Vec::with_capacity(max_dim + 1);
        let mut position: BTreeMap<usize, (usize, usize)> = BTreeMap::new(); // face -> (q, offset)
        for q in 0..=max_dim {
            let selected: Vec<usize> =
                faces.by_dim(q).iter().copied().filter(|&i| keep(i)).collect();
            let mut offs = Vec::with_capacity(selected.len());
            let mut total = 0usize;
            for &i in &selected {
                offs.push(total);
                position.insert(i, (q, total));
                total += geom.f_rank(p, i);
            }
            cells.push(selected);
            offsets.push(offs);
            dims.push(total);
        }

        let mut boundaries = Vec::with_capacity(max_dim + 1);
        boundaries.push(IntMat::zeros(dims[0], 0));
        for q in 1..=max_dim {
            let mut m = IntMat::zeros(dims[q], dims[q.saturating_sub(1)]);
            for (pos, &delta) in cells[q].iter().enumerate() {
                let row0 = offsets[q][pos];
                let lattice = geom.f_lattice(p, delta);
                for inc in geom.faces().facets_of(delta) {
                    let Some(&(gq, col0)) = position.get(&inc.face) else {
                        continue; // face not selected (boundary leaves the subspace)
                    };
                    debug_assert_eq!(gq, q - 1);
                    let sign = BigInt::from(geom.incidence_sign(delta, inc));
                    for i in 0..lattice.rank() {
                        let v = lattice.basis().row_vec(i);
                        let image = geom.push_coefficient(p, delta, inc, &v);
                        let coords = geom
                            .f_lattice(p, inc.face)
                            .coords_of(&image)
                            .expect("coefficient functoriality");
                        for (j, c) in coords.iter().enumerate() {
                            let cur = m.at(row0 + i, col0 + j).clone();
                            m.set(row0 + i, col0 + j, cur + &sign * c);
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        Complex { geom, p, cells, offsets, dims, boundaries }
    }

    pub fn max_dim(&self) -> usize {
        self.dims.len() - 1
    }

    /// Rank of `C_q` (zero beyond the top dimension).
    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    /// `∂_{q+1}` as a matrix, or an empty matrix above the top degree.
    fn incoming(&self, q: usize) -> IntMat {
        if q + 1 <= self.max_dim() {
            self.boundaries[q + 1].clone()
        } else {
            IntMat::zeros(0, self.dim(q))
        }
    }

    /// Checks `∂_{q} ∘ ∂_{q+1} = 0` for all `q`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (1..self.max_dim()).all(|q| self.boundaries[q + 1].mul(&self.boundaries[q]).is_zero())
    }

    /// Homology at `q`, presented on a saturated cycle basis.
    pub fn homology_at(&self, q: usize) -> Result<HomologyGroup> {
        if q > self.max_dim() {
            return Ok(empty_group());
        }
        let cycles = left_kernel(&self.boundaries[q]);
        let presented = subquotient(&cycles, &self.incoming(q))?;
        Ok(HomologyGroup { cycles, presented })
    }

    /// Cohomology at `q` of the transposed complex, presented on a
    /// saturated cocycle basis inside `C_q` coordinates.
    pub fn cohomology_at(&self, q: usize) -> Result<HomologyGroup> {
        if q > self.max_dim() {
            return Ok(empty_group());
        }
        let out = self.incoming(q).transpose(); // d^q = ∂_{q+1}ᵀ
        let cocycles = left_kernel(&out);
        let image = self.boundaries[q].transpose(); // rows span im d^{q−1}
        let presented = subquotient(&cocycles, &image)?;
        Ok(HomologyGroup { cycles: cocycles, presented })
    }

    /// The group of the requested flavor at `q`, assuming the complex was
    /// built with the matching supports.
    pub fn group_at(&self, flavor: Flavor, q: usize) -> Result<HomologyGroup> {
        if flavor.is_cohomology() {
            self.cohomology_at(q)
        } else {
            self.homology_at(q)
        }
    }

    /// Offset of a face's block in `C_q`, if selected.
    pub fn block_of(&self, face: usize) -> Option<(usize, usize)> {
        let q = self.geom.faces().face(face).dim();
        let pos = self.cells.get(q)?.iter().position(|&f| f == face)?;
        Some((q, self.offsets[q][pos]))
    }
}

fn empty_group() -> HomologyGroup {
    HomologyGroup {
        cycles: IntMat::zeros(0, 0),
        presented: PresentedGroup::new(0, &IntMat::zeros(0, 0)),
    }
}

/// All groups `H_{p,q}` (or `H^{p,q}`) of the given flavor for
/// `0 ≤ p, q ≤ dim`, as a dense table keyed by `(p, q)`.
pub fn bigraded(
    geom: &Geometry,
    space: Space,
    flavor: Flavor,
) -> Result<BTreeMap<(usize, usize), FinAbGroup>> {
    let d = geom.fan().dim();
    let mut out = BTreeMap::new();
    for p in 0..=d {
        let complex = Complex::build(geom, p, space, flavor.supports());
        debug_assert!(complex.boundary_squares_to_zero());
        for q in 0..=d {
            out.insert((p, q), complex.group_at(flavor, q)?.group().clone());
        }
    }
    Ok(out)
}

/// Consistency of a cohomology table against a homology table by universal
/// coefficients: equal free ranks at `(p, q)`, and the torsion of `H^{p,q}`
/// equals the torsion of `H_{p,q−1}`.
pub fn uct_consistent(
    homology: &BTreeMap<(usize, usize), FinAbGroup>,
    cohomology: &BTreeMap<(usize, usize), FinAbGroup>,
) -> bool {
    cohomology.iter().all(|(&(p, q), co)| {
        let Some(h) = homology.get(&(p, q)) else { return false };
        if co.free_rank() != h.free_rank() {
            return false;
        }
        let expected: &[BigInt] =
            if q == 0 { &[] } else { homology.get(&(p, q - 1)).map_or(&[], |g| g.torsion()) };
        co.torsion() == expected
    })
}

/// Künneth rank check: `rank H_{p,q}(X×Y) = Σ rank H_{a,b}(X)·rank H_{p−a,q−b}(Y)`
/// over `a ≤ p`, `b ≤ q`. Torsion is ignored (it obeys a Tor-term formula
/// instead).
pub fn kunneth_rank_consistent(
    product: &BTreeMap<(usize, usize), FinAbGroup>,
    left: &BTreeMap<(usize, usize), FinAbGroup>,
    right: &BTreeMap<(usize, usize), FinAbGroup>,
) -> bool {
    product.iter().all(|(&(p, q), g)| {
        let expected: usize = (0..=p)
            .flat_map(|a| (0..=q).map(move |b| (a, b)))
            .map(|(a, b)| {
                let l = left.get(&(a, b)).map_or(0, FinAbGroup::free_rank);
                let r = right.get(&(p - a, q - b)).map_or(0, FinAbGroup::free_rank);
                l * r
            })
            .sum();
        g.free_rank() == expected
    })
}
