//! Exact integer linear algebra.
//!
//! Conventions used across the crate:
//!
//! * Vectors are **row** vectors; matrices act on the right, `y = x · M`.
//! * Lattices are row spans of integer matrices.
//! * Hermite normal form is row-style and canonical: pivots positive,
//!   entries above a pivot reduced into `[0, pivot)`, zero rows at the
//!   bottom. Two sublattices are equal iff their HNF bases are identical.
//! * Smith normal form is `U · A · V = D` with `U`, `V` unimodular and `D`
//!   diagonal with a positive divisibility chain.
//! * Exterior powers use lexicographically ordered index subsets as the
//!   Plücker basis, which fixes every sign once and for all.

mod group;
mod hnf;
mod mat;
mod snf;
mod sublattice;
mod wedge;

pub use group::{quotient_group, subquotient, FinAbGroup, PresentedGroup};
pub use hnf::{left_kernel, row_hnf, solve_left, RowHnf};
pub use mat::{
    vec_add, vec_dot, vec_is_zero, vec_mul_mat, vec_neg, vec_scale, vec_sub, IntMat,
};
pub use snf::{invariant_factors, snf, Snf};
pub use sublattice::{
    primitive_in_lattice, primitive_vector, rational_solve_left, QuotientLattice,
    SublatticeBasis,
};
pub use wedge::{
    binomial, contraction_matrix, exterior_power_basis, exterior_power_map, subset_lex_index,
    subsets_lex, wedge_mul, wedge_of_rows,
};
