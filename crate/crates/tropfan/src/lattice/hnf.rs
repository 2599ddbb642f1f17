//! Row-style Hermite normal form with transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mat::IntMat;

/// Result of a Hermite normal form computation: `u · a = h` with `u`
/// unimodular, `h` in canonical row HNF (positive pivots, entries above a
/// pivot reduced into `[0, pivot)`, zero rows last).
#[derive(Clone, Debug)]
pub struct RowHnf {
    /// The Hermite normal form.
    pub h: IntMat,
    /// The unimodular transform with `u · a = h`.
    pub u: IntMat,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

/// Computes the canonical row Hermite normal form of `a`.
pub fn row_hnf(a: &IntMat) -> RowHnf {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMat::identity(m);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();

    for col in 0..n {
        if pivot_row == m {
            break;
        }
        // Euclidean reduction in this column, below the current pivot row.
        loop {
            let nonzero: Vec<usize> =
                (pivot_row..m).filter(|&r| !h.at(r, col).is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            // Move the entry of least absolute value into the pivot slot.
            let &best = nonzero
                .iter()
                .min_by(|&&r, &&s| h.at(r, col).abs().cmp(&h.at(s, col).abs()))
                .expect("nonempty");
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            if nonzero.len() == 1 {
                break;
            }
            for r in pivot_row + 1..m {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let (q, _) = h.at(r, col).div_rem(h.at(pivot_row, col));
                let neg_q = -q;
                h.add_multiple_of_row(r, pivot_row, &neg_q);
                u.add_multiple_of_row(r, pivot_row, &neg_q);
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for r in 0..pivot_row {
            let q = h.at(r, col).div_floor(h.at(pivot_row, col));
            if !q.is_zero() {
                let neg_q = -q;
                h.add_multiple_of_row(r, pivot_row, &neg_q);
                u.add_multiple_of_row(r, pivot_row, &neg_q);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }

    RowHnf { h, u, rank: pivot_row, pivots }
}

/// Solves `x · a = v` exactly over the integers.
///
/// Returns `None` when `v` is not in the row lattice of `a`. When `a` has
/// dependent rows the returned solution is the deterministic one obtained
/// from back-substitution against the HNF (zero coefficients on the
/// eliminated rows, mapped back through the transform).
pub fn solve_left(a: &IntMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), a.cols(), "target length must equal column count");
    let hnf = row_hnf(a);
    let mut residual = v.to_vec();
    let mut y = vec![BigInt::zero(); a.rows()];
    for (i, &c) in hnf.pivots.iter().enumerate() {
        let (q, r) = residual[c].div_rem(hnf.h.at(i, c));
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for j in 0..a.cols() {
                let delta = &q * hnf.h.at(i, j);
                residual[j] -= delta;
            }
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(hnf.u.apply_left(&y))
}

/// Basis of the left kernel `{x : x · a = 0}`, as rows.
///
/// The kernel of an integer matrix is saturated, so the returned rows are a
/// genuine lattice basis of it.
pub fn left_kernel(a: &IntMat) -> IntMat {
    let hnf = row_hnf(a);
    let rows: Vec<usize> = (hnf.rank..a.rows()).collect();
    hnf.u.select_rows(&rows)
}

/// Structural predicate: is `h` in canonical row Hermite normal form?
#[cfg(test)]
pub fn is_row_hnf(h: &IntMat) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&c| !h.at(r, c).is_zero());
        match pivot {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row {
                    return false;
                }
                if let Some(p) = last_pivot {
                    if c <= p {
                        return false;
                    }
                }
                if h.at(r, c).is_negative() {
                    return false;
                }
                for r2 in 0..r {
                    if h.at(r2, c).is_negative() || h.at(r2, c) >= h.at(r, c) {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn hnf_of_dependent_rows() {
        // [[2,4],[1,2]] reduces to [[1,2],[0,0]].
        let a = IntMat::from_i64(&[&[2, 4], &[1, 2]]);
        let r = row_hnf(&a);
        assert_eq!(r.h, IntMat::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn hnf_remultiplies_and_transform_is_unimodular() {
        let samples = [
            IntMat::from_i64(&[&[2, 4], &[1, 2]]),
            IntMat::from_i64(&[&[1, -1, 0], &[0, 3, -3]]),
            IntMat::from_i64(&[&[0, 0], &[0, 0]]),
            IntMat::from_i64(&[&[6, 10, 15], &[10, 15, 6], &[15, 6, 10]]),
            IntMat::from_i64(&[&[3, 0], &[-3, -9], &[0, 3]]),
        ];
        for a in samples {
            let r = row_hnf(&a);
            assert_eq!(r.u.mul(&a), r.h, "u·a must equal h");
            assert!(r.u.is_unimodular(), "transform must be unimodular");
            assert!(is_row_hnf(&r.h), "h must be canonical");
        }
    }

    #[test]
    fn solve_left_membership() {
        let a = IntMat::from_i64(&[&[2, 0, 2], &[0, 3, 3]]);
        // (2,3,5) = 1·(2,0,2) + 1·(0,3,3).
        let v: Vec<BigInt> = [2, 3, 5].iter().map(|&x| BigInt::from(x)).collect();
        let x = solve_left(&a, &v).expect("solvable");
        assert_eq!(a.apply_left(&x), v);
        // (1,0,1) is in the rational but not the integral row span.
        let w: Vec<BigInt> = [1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(solve_left(&a, &w).is_none());
    }

    #[test]
    fn left_kernel_is_kernel() {
        let a = IntMat::from_i64(&[&[1, 2], &[2, 4], &[1, 1]]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
        // The kernel row must be primitive: (2,-1,0) up to sign.
        let g = k.row(0).iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        assert!(g.is_one());
    }
}
