//! Exact rational linear feasibility (phase-one simplex, Bland's rule).

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Finds `x ≥ 0` with `A·x = b` exactly over the rationals, or proves
/// infeasibility. Bland's pivoting rule guarantees termination; artificial
/// variables start basic and are never allowed to re-enter.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![BigRational::zero(); n]);
    }

    // Tableau columns: n original variables, m artificials, then the rhs.
    let mut t = vec![vec![BigRational::zero(); n + m + 1]; m];
    for i in 0..m {
        let flip = b[i] < BigRational::zero();
        for j in 0..n {
            t[i][j] = if flip { -&a[i][j] } else { a[i][j].clone() };
        }
        t[i][n + i] = BigRational::one();
        t[i][n + m] = if flip { -&b[i] } else { b[i].clone() };
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Reduced cost of column j for the phase-one objective
        // (minimize the sum of artificials): improving iff the column sum
        // over rows with an artificial basic variable is positive.
        let price = |t: &Vec<Vec<BigRational>>, basis: &Vec<usize>, j: usize| -> BigRational {
            (0..m).filter(|&i| basis[i] >= n).map(|i| t[i][j].clone()).sum()
        };
        let entering = (0..n)
            .filter(|j| !basis.contains(j))
            .find(|&j| price(&t, &basis, j) > BigRational::zero());
        let Some(e) = entering else {
            // Optimal for phase one: feasible iff all artificials are zero.
            let w: BigRational =
                (0..m).filter(|&i| basis[i] >= n).map(|i| t[i][n + m].clone()).sum();
            if !w.is_zero() {
                return None;
            }
            let mut x = vec![BigRational::zero(); n];
            for i in 0..m {
                if basis[i] < n {
                    x[basis[i]] = t[i][n + m].clone();
                }
            }
            return Some(x);
        };

        // Ratio test with Bland's tie-break (smallest basic index).
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][e] <= BigRational::zero() {
                continue;
            }
            let ratio = &t[i][n + m] / &t[i][e];
            let better = match leave {
                None => true,
                Some(l) => {
                    let current = &t[l][n + m] / &t[l][e];
                    ratio < current || (ratio == current && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(l) = leave else {
            // Unbounded phase-one objective cannot happen (it is bounded
            // below by zero); reaching this means no positive pivot exists,
            // so the entering column cannot reduce the objective.
            return None;
        };

        // Pivot on (l, e).
        let pivot = t[l][e].clone();
        for v in t[l].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m {
            if i == l || t[i][e].is_zero() {
                continue;
            }
            let factor = t[i][e].clone();
            for j in 0..n + m + 1 {
                let delta = &factor * &t[l][j];
                t[i][j] -= delta;
            }
        }
        basis[l] = e;
    }
}
