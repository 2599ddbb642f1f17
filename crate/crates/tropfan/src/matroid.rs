//! Matroids given by their bases, and their Bergman fans.
//!
//! The Bergman fan of a loopless matroid on ground set `{0, …, n−1}` lives
//! in `Z^E / Z·(1,…,1) ≅ Z^{n−1}`, realized by normalizing the last
//! coordinate to zero and dropping it. Rays correspond to nonempty proper
//! flats and cones to chains of such flats.

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use itertools::Itertools;
use num_bigint::BigInt;
use std::collections::BTreeSet;

/// A matroid on ground set `{0, …, ground−1}`, stored by its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: usize,
    bases: Vec<BTreeSet<usize>>,
    rank: usize,
}

impl Matroid {
    /// Validates the basis axioms: nonempty, equicardinal, in range, and
    /// closed under basis exchange.
    pub fn from_bases(ground: usize, bases: Vec<Vec<usize>>) -> Result<Matroid> {
        let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(bases.len());
        for b in &bases {
            let set: BTreeSet<usize> = b.iter().copied().collect();
            if set.len() != b.len() {
                return Err(Error::InvalidInput(format!("basis {b:?} repeats an element")));
            }
            if set.iter().any(|&e| e >= ground) {
                return Err(Error::InvalidInput(format!(
                    "basis {b:?} exceeds the ground set 0..{ground}"
                )));
            }
            if !sets.contains(&set) {
                sets.push(set);
            }
        }
        let Some(first) = sets.first() else {
            return Err(Error::InvalidInput("a matroid needs at least one basis".into()));
        };
        let rank = first.len();
        if sets.iter().any(|b| b.len() != rank) {
            return Err(Error::InvalidInput("bases must all have the same size".into()));
        }
        sets.sort();
        // Basis exchange: for B₁, B₂ and x ∈ B₁∖B₂ there is y ∈ B₂∖B₁ with
        // B₁ − x + y again a basis.
        for b1 in &sets {
            for b2 in &sets {
                for &x in b1.difference(b2) {
                    let found = b2.difference(b1).any(|&y| {
                        let mut c = b1.clone();
                        c.remove(&x);
                        c.insert(y);
                        sets.binary_search(&c).is_ok()
                    });
                    if !found {
                        return Err(Error::InvalidInput(format!(
                            "basis exchange fails for {b1:?}, {b2:?} at element {x}"
                        )));
                    }
                }
            }
        }
        Ok(Matroid { ground, bases: sets, rank })
    }

    /// The uniform matroid `U(r, n)`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::InvalidInput(format!("uniform matroid needs r ≤ n, got {r} > {n}")));
        }
        let bases: Vec<Vec<usize>> = (0..n).combinations(r).collect();
        Matroid::from_bases(n, bases)
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[BTreeSet<usize>] {
        &self.bases
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, set: &BTreeSet<usize>) -> usize {
        self.bases.iter().map(|b| b.intersection(set).count()).max().unwrap_or(0)
    }

    /// Closure: all elements whose addition does not raise the rank.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let r = self.rank_of(set);
        (0..self.ground)
            .filter(|&e| {
                let mut s = set.clone();
                s.insert(e);
                self.rank_of(&s) == r
            })
            .collect()
    }

    /// All flats (closure-closed subsets), sorted by size then
    /// lexicographically.
    pub fn flats(&self) -> Vec<BTreeSet<usize>> {
        let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for subset in (0..self.ground).powerset() {
            let s: BTreeSet<usize> = subset.into_iter().collect();
            out.insert(self.closure(&s));
        }
        let mut flats: Vec<BTreeSet<usize>> = out.into_iter().collect();
        flats.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        flats
    }

    /// True when no element has rank zero.
    pub fn is_loopless(&self) -> bool {
        self.closure(&BTreeSet::new()).is_empty()
    }

    /// The vector of a flat in `Z^E / Z·1 ≅ Z^{ground−1}`: the indicator
    /// vector, shifted by `−1` when the flat contains the last element so
    /// that the dropped coordinate is zero.
    fn flat_vector(&self, flat: &BTreeSet<usize>) -> Vec<BigInt> {
        let last = self.ground - 1;
        let shift = i64::from(flat.contains(&last));
        (0..last)
            .map(|e| BigInt::from(i64::from(flat.contains(&e)) - shift))
            .collect()
    }

    /// The Bergman fan: rays are the nonempty proper flats, cones are the
    /// chains of such flats, maximal cones the complete flags. Requires a
    /// loopless matroid of positive rank.
    pub fn bergman_fan(&self) -> Result<Fan> {
        if !self.is_loopless() {
            return Err(Error::InvalidInput("Bergman fan requires a loopless matroid".into()));
        }
        if self.rank == 0 || self.ground == 0 {
            return Err(Error::InvalidInput("Bergman fan requires positive rank".into()));
        }
        let full: BTreeSet<usize> = (0..self.ground).collect();
        let proper: Vec<BTreeSet<usize>> = self
            .flats()
            .into_iter()
            .filter(|f| !f.is_empty() && *f != full)
            .collect();
        let ambient = self.ground - 1;
        if proper.is_empty() {
            // Rank one: the fan is the single point at the origin.
            return Fan::new(ambient, vec![], vec![Cone::zero()]);
        }
        let rays: Vec<Vec<BigInt>> = proper.iter().map(|f| self.flat_vector(f)).collect();

        // Maximal chains of proper flats, one flat per rank 1..rank−1,
        // grown by extending each chain with the flats properly above its
        // top. Rank-one matroids were handled above; for rank ≥ 2 the
        // maximal cones are the chains of length rank−1.
        let mut chains: Vec<Vec<usize>> = proper
            .iter()
            .enumerate()
            .filter(|(_, f)| self.rank_of(f) == 1)
            .map(|(i, _)| vec![i])
            .collect();
        for level in 2..self.rank {
            let mut next = Vec::new();
            for chain in &chains {
                let top = &proper[*chain.last().expect("chains are nonempty")];
                for (i, f) in proper.iter().enumerate() {
                    if self.rank_of(f) == level && top.is_subset(f) {
                        let mut c = chain.clone();
                        c.push(i);
                        next.push(c);
                    }
                }
            }
            chains = next;
        }
        let facets: Vec<Cone> =
            chains.into_iter().map(Cone::from_indices).collect();
        Fan::new(ambient, rays, facets)
    }
}
