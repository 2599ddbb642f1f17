//! Exterior powers in lexicographic Plücker coordinates.
//!
//! `Λ^p Z^n` is identified with `Z^C(n,p)` using the basis
//! `e_S = e_{s₁} ∧ … ∧ e_{s_p}` over the `p`-element subsets
//! `S = {s₁ < … < s_p}` of `{0, …, n−1}` in lexicographic order.
//! Fixing this order once fixes every sign in the crate.

use num_bigint::BigInt;
use num_traits::Zero;

use super::mat::IntMat;
use super::sublattice::SublatticeBasis;

/// Binomial coefficient as `usize` (sizes here are tiny).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    usize::try_from(num / den).expect("binomial overflow")
}

/// All `p`-element subsets of `{0, …, n−1}` in lexicographic order.
pub fn subsets_lex(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    let mut current = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == p {
            out.push(current.clone());
            return;
        }
        let remaining = p - current.len();
        for i in start..=n.saturating_sub(remaining) {
            current.push(i);
            rec(i + 1, n, p, current, out);
            current.pop();
        }
    }
    if p <= n {
        rec(0, n, p, &mut current, &mut out);
    }
    out
}

/// Lexicographic rank of a sorted `p`-subset among the `p`-subsets of
/// `{0, …, n−1}`.
pub fn subset_lex_index(n: usize, subset: &[usize]) -> usize {
    let p = subset.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (i, &s) in subset.iter().enumerate() {
        for j in (prev + 1) as usize..s {
            rank += binomial(n - 1 - j, p - 1 - i);
        }
        prev = s as isize;
    }
    rank
}

/// Plücker coordinates of the wedge of the selected rows of `m`, in
/// `Λ^p Z^cols` with `p = rows.len()`.
pub fn wedge_of_rows(m: &IntMat, rows: &[usize]) -> Vec<BigInt> {
    let p = rows.len();
    let n = m.cols();
    subsets_lex(n, p)
        .iter()
        .map(|cols| m.submatrix(rows, cols).det_bareiss().expect("square minor"))
        .collect()
}

/// Basis of `Λ^p L` for a sublattice `L ⊆ Z^n`, inside `Λ^p Z^n`.
///
/// The wedges of the `p`-subsets of a lattice basis form a lattice basis of
/// the exterior power; the result is canonicalized by HNF.
pub fn exterior_power_basis(l: &SublatticeBasis, p: usize) -> SublatticeBasis {
    let n = l.ambient_rank();
    let ambient = binomial(n, p);
    let rows: Vec<Vec<BigInt>> = subsets_lex(l.rank(), p)
        .iter()
        .map(|s| wedge_of_rows(l.basis(), s))
        .collect();
    SublatticeBasis::from_generators(&IntMat::from_rows(ambient, rows))
}

/// The matrix of `Λ^p f` for the linear map `f(x) = x · m : Z^a → Z^b`,
/// acting on the right on Plücker row vectors: `C(a,p) × C(b,p)`, entry
/// `(S, T) = det m[S, T]`.
pub fn exterior_power_map(m: &IntMat, p: usize) -> IntMat {
    let source = subsets_lex(m.rows(), p);
    let target = subsets_lex(m.cols(), p);
    let mut out = IntMat::zeros(source.len(), target.len());
    for (i, s) in source.iter().enumerate() {
        for (j, t) in target.iter().enumerate() {
            out.set(i, j, m.submatrix(s, t).det_bareiss().expect("square minor"));
        }
    }
    out
}

/// The contraction `ι_ℓ : Λ^p Z^n → Λ^(p−1) Z^n` by a covector `ℓ`,
/// as a matrix acting on the right on Plücker row vectors:
/// `ι_ℓ(e_{s₁}∧…∧e_{s_p}) = Σᵢ (−1)^(i−1) ℓ(e_{sᵢ}) e_{S∖sᵢ}`.
pub fn contraction_matrix(ell: &[BigInt], p: usize) -> IntMat {
    let n = ell.len();
    assert!(p >= 1);
    let source = subsets_lex(n, p);
    let mut out = IntMat::zeros(source.len(), binomial(n, p - 1));
    for (row, s) in source.iter().enumerate() {
        for (i, &si) in s.iter().enumerate() {
            if ell[si].is_zero() {
                continue;
            }
            let mut reduced = s.clone();
            reduced.remove(i);
            let col = subset_lex_index(n, &reduced);
            let coeff = if i % 2 == 0 { ell[si].clone() } else { -&ell[si] };
            let cur = out.at(row, col) + coeff;
            out.set(row, col, cur);
        }
    }
    out
}

/// Wedge product `Λ^p Z^n × Λ^q Z^n → Λ^(p+q) Z^n` on Plücker vectors.
pub fn wedge_mul(n: usize, p: usize, a: &[BigInt], q: usize, b: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(a.len(), binomial(n, p));
    assert_eq!(b.len(), binomial(n, q));
    let mut out = vec![BigInt::zero(); binomial(n, p + q)];
    let sources = subsets_lex(n, p);
    let targets = subsets_lex(n, q);
    for (i, s) in sources.iter().enumerate() {
        if a[i].is_zero() {
            continue;
        }
        'next: for (j, t) in targets.iter().enumerate() {
            if b[j].is_zero() {
                continue;
            }
            // Skip non-disjoint supports; count inversions for the sign.
            let mut inversions = 0usize;
            for &x in s {
                for &y in t {
                    if x == y {
                        continue 'next;
                    }
                    if x > y {
                        inversions += 1;
                    }
                }
            }
            let mut union: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
            union.sort_unstable();
            let idx = subset_lex_index(n, &union);
            let term = &a[i] * &b[j];
            out[idx] += if inversions % 2 == 0 { term } else { -term };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn subset_enumeration_and_ranking_agree() {
        for n in 0..6 {
            for p in 0..=n {
                let subs = subsets_lex(n, p);
                assert_eq!(subs.len(), binomial(n, p));
                for (i, s) in subs.iter().enumerate() {
                    assert_eq!(subset_lex_index(n, s), i, "n={n} p={p} s={s:?}");
                }
            }
        }
    }

    #[test]
    fn exterior_square_of_a_plane() {
        // Λ² span{(1,0,0),(0,1,1)} = span{(1,1,0)} in the basis
        // (e₀∧e₁, e₀∧e₂, e₁∧e₂).
        let l = SublatticeBasis::from_generators(&IntMat::from_i64(&[&[1, 0, 0], &[0, 1, 1]]));
        let w = exterior_power_basis(&l, 2);
        assert_eq!(w.basis(), &IntMat::from_i64(&[&[1, 1, 0]]));
    }

    #[test]
    fn zeroth_power_is_the_unit() {
        let l = SublatticeBasis::from_generators(&IntMat::from_i64(&[&[2, 0]]));
        let w = exterior_power_basis(&l, 0);
        assert_eq!(w.basis(), &IntMat::from_i64(&[&[1]]));
    }

    #[test]
    fn contraction_of_a_two_form() {
        // ι_ℓ(e₀∧e₁) = ℓ₀ e₁ − ℓ₁ e₀ for ℓ = (5, 7, 11) in Z³.
        let ell = big(&[5, 7, 11]);
        let c = contraction_matrix(&ell, 2);
        // Source basis: (e₀∧e₁, e₀∧e₂, e₁∧e₂); target: (e₀, e₁, e₂).
        let x = big(&[1, 0, 0]);
        assert_eq!(c.apply_left(&x), big(&[-7, 5, 0]));
        let y = big(&[0, 0, 1]);
        assert_eq!(c.apply_left(&y), big(&[0, -11, 7]));
    }

    #[test]
    fn contraction_squares_to_zero() {
        let ell = big(&[3, -2, 5, 1]);
        let c2 = contraction_matrix(&ell, 2);
        let c3 = contraction_matrix(&ell, 3);
        assert!(c3.mul(&c2).is_zero());
    }

    #[test]
    fn wedge_product_signs() {
        // e₁ ∧ e₀ = −e₀∧e₁ in Z².
        let a = big(&[0, 1]);
        let b = big(&[1, 0]);
        assert_eq!(wedge_mul(2, 1, &a, 1, &b), big(&[-1]));
        assert_eq!(wedge_mul(2, 1, &b, 1, &a), big(&[1]));
        // e₀ ∧ e₀ = 0.
        assert_eq!(wedge_mul(2, 1, &b, 1, &b), big(&[0]));
    }

    #[test]
    fn exterior_power_map_is_functorial() {
        // Cauchy–Binet: Λ²(A·B) = Λ²(A)·Λ²(B).
        let a = IntMat::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[2, 0, 1]]);
        let b = IntMat::from_i64(&[&[1, 1, 0], &[0, 2, 1], &[1, 0, 3]]);
        let lhs = exterior_power_map(&a.mul(&b), 2);
        let rhs = exterior_power_map(&a, 2).mul(&exterior_power_map(&b, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_of_rows_matches_map_on_basis() {
        let m = IntMat::from_i64(&[&[1, 0, 2], &[3, 1, 0]]);
        let w = wedge_of_rows(&m, &[0, 1]);
        // Minors over column pairs (0,1), (0,2), (1,2):
        assert_eq!(w, big(&[1, -6, -2]));
    }
}
