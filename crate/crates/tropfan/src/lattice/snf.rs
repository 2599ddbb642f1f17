//! Smith normal form with transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::hnf::row_hnf;
use super::mat::IntMat;

/// Result of a Smith normal form computation: `u · a · v = d` with `u`, `v`
/// unimodular and `d` diagonal, `d₁ | d₂ | …`, all diagonal entries
/// nonnegative and the nonzero ones first.
#[derive(Clone, Debug)]
pub struct Snf {
    /// The diagonal form.
    pub d: IntMat,
    /// Left transform (`rows × rows`).
    pub u: IntMat,
    /// Right transform (`cols × cols`).
    pub v: IntMat,
    /// Inverse of the right transform.
    pub v_inv: IntMat,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Snf {
    /// The nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.at(i, i).clone()).collect()
    }
}

/// Computes the Smith normal form of `a`.
pub fn snf(a: &IntMat) -> Snf {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    let mut t = 0;

    'outer: while t < m.min(n) {
        // Select the nonzero entry of least absolute value in the
        // remaining submatrix as the pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d.at(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if d.at(pi, pj).abs() <= d.at(i, j).abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear the rest of column t.
        for i in t + 1..m {
            if d.at(i, t).is_zero() {
                continue;
            }
            let (q, r) = d.at(i, t).div_rem(d.at(t, t));
            let neg_q = -q;
            d.add_multiple_of_row(i, t, &neg_q);
            u.add_multiple_of_row(i, t, &neg_q);
            if !r.is_zero() {
                continue 'outer;
            }
        }
        // Clear the rest of row t.
        for j in t + 1..n {
            if d.at(t, j).is_zero() {
                continue;
            }
            let (q, r) = d.at(t, j).div_rem(d.at(t, t));
            let neg_q = -q;
            d.add_multiple_of_col(j, t, &neg_q);
            v.add_multiple_of_col(j, t, &neg_q);
            if !r.is_zero() {
                continue 'outer;
            }
        }
        // Enforce divisibility of the remaining submatrix by the pivot.
        for i in t + 1..m {
            for j in t + 1..n {
                if !d.at(i, j).mod_floor(d.at(t, t)).is_zero() {
                    let one = BigInt::from(1);
                    d.add_multiple_of_row(t, i, &one);
                    u.add_multiple_of_row(t, i, &one);
                    continue 'outer;
                }
            }
        }
        t += 1;
    }

    for i in 0..t {
        if d.at(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }

    // Invert the right transform through the (independently tested) HNF:
    // the HNF of a unimodular matrix is the identity, so the transform of
    // that reduction is exactly v⁻¹.
    let v_hnf = row_hnf(&v);
    debug_assert_eq!(v_hnf.h, IntMat::identity(n), "v must be unimodular");
    let v_inv = v_hnf.u;
    debug_assert_eq!(v_inv.mul(&v), IntMat::identity(n));

    Snf { d, u, v, v_inv, rank: t }
}

/// The nonzero invariant factors of `a`, in divisibility order.
pub fn invariant_factors(a: &IntMat) -> Vec<BigInt> {
    snf(a).invariants()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_decomposition(a: &IntMat) -> Snf {
        let s = snf(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "u·a·v must equal d");
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.at(i, j).is_zero());
                }
            }
        }
        for i in 0..s.rank {
            assert!(s.d.at(i, i).is_positive());
            if i + 1 < s.rank {
                assert!(s.d.at(i + 1, i + 1).mod_floor(s.d.at(i, i)).is_zero());
            }
        }
        s
    }

    #[test]
    fn snf_of_diag_2_3() {
        let a = IntMat::from_i64(&[&[2, 0], &[0, 3]]);
        let s = check_decomposition(&a);
        assert_eq!(s.invariants(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn snf_of_rectangular_with_torsion() {
        let a = IntMat::from_i64(&[&[1, -1, 0], &[0, 3, -3]]);
        let s = check_decomposition(&a);
        assert_eq!(s.invariants(), vec![BigInt::one(), BigInt::from(3)]);
    }

    #[test]
    fn snf_of_zero_and_identity() {
        let z = IntMat::zeros(2, 3);
        let s = check_decomposition(&z);
        assert_eq!(s.rank, 0);
        let i = IntMat::identity(3);
        let s = check_decomposition(&i);
        assert_eq!(s.invariants(), vec![BigInt::one(); 3]);
    }

    /// Determinantal-divisor oracle: the product d₁⋯dₖ equals the gcd of
    /// all k×k minors, computed here by brute-force enumeration with the
    /// independent Bareiss determinant.
    #[test]
    fn snf_matches_determinantal_divisors() {
        let samples = [
            IntMat::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]),
            IntMat::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]),
            IntMat::from_i64(&[&[6, 10, 15], &[10, 15, 6], &[15, 6, 10]]),
        ];
        for a in samples {
            let s = check_decomposition(&a);
            let mut product = BigInt::one();
            for k in 1..=s.rank {
                product *= s.d.at(k - 1, k - 1);
                assert_eq!(product, gcd_of_minors(&a, k), "k = {k}");
            }
            assert!(gcd_of_minors(&a, s.rank + 1).is_zero());
        }
    }

    fn gcd_of_minors(a: &IntMat, k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                let minor = a.submatrix(&rows, &cols).det_bareiss().unwrap();
                g = g.gcd(&minor);
            }
        }
        g
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == k {
                out.push(current.clone());
                return;
            }
            for i in start..n {
                current.push(i);
                rec(i + 1, n, k, current, out);
                current.pop();
            }
        }
        rec(0, n, k, &mut current, &mut out);
        out
    }
}
