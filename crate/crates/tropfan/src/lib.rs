//! Exact integer computation for rational simplicial fans.
//!
//! This crate computes homology and cohomology (with torsion), Chow rings,
//! Minkowski weights, divisors and smoothness certificates for rational
//! simplicial fans and their canonical compactifications. All arithmetic is
//! exact: arbitrary-precision integers throughout, rationals only where a
//! verdict is genuinely rational. No floating point, no modular shortcuts.
//!
//! The main layers, bottom up:
//!
//! * [`lattice`] — integer matrices, Hermite and Smith normal forms,
//!   finitely generated abelian groups presented by relations, sublattices,
//!   saturation, exterior powers in lexicographic Plücker coordinates.
//! * [`fan`] — rational simplicial fans: validation, star fans, skeleta,
//!   products, stellar subdivisions (blow-ups) and their inverses, and the
//!   face poset of the canonical compactification.
//! * [`matroid`] — matroids given by their bases, and Bergman fans.
//! * [`coeff`] — the multi-tangent coefficient lattices `F_p` on
//!   compactified faces, with orientation data and signed inclusion maps.
//! * [`homology`] — cellular chain and cochain complexes in four flavors,
//!   homology via presentation subquotients, the hypercube cochain complex,
//!   relative complexes, cap and cup products.
//! * [`chow`] — Chow groups and rings, degree maps, Minkowski weights,
//!   divisor class maps, cycle class maps, and duality checks.
//! * [`divisor`] — conewise integral linear functions, orders of vanishing,
//!   divisors and tropical modifications.
//! * [`property`] — balancing, normality, irreducibility, Poincaré
//!   duality, smoothness, exactness checks, and shellability witness replay.

pub mod chow;
pub mod coeff;
pub mod constructors;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod homology;
pub mod lattice;
pub mod matroid;

pub use error::{Error, Result};
pub use fan::{Cone, Fan};
