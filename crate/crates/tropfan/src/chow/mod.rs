//! Chow groups of rational simplicial fans, Minkowski weights, and the
//! intersection-theoretic maps between them.
//!
//! The degree-`k` Chow group is presented on the classes `X_σ` of the
//! `k`-dimensional cones, with one relation for every `(k−1)`-dimensional
//! cone `τ` and integral linear form `ℓ` vanishing on `τ`:
//!
//! ```text
//! Σ_{ρ: τ∨ρ a cone}  ℓ(e_ρ) · X_{τ∨ρ}.
//! ```
//!
//! Minkowski weights of dimension `k` are the integer weightings of the
//! `k`-cones balanced around every `(k−1)`-cone; they pair with the Chow
//! group, and on unimodular fans the cone classes multiply by square-free
//! rewriting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::divisor::order_of_values;
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::lattice::{
    left_kernel, solve_left, vec_mul_mat, FinAbGroup, IntMat, PresentedGroup,
    SublatticeBasis,
};

mod cycle;

pub use cycle::{
    hodge_reports, mw_chain, off_diagonal_vanishing, stratum_chain, HodgeReport,
};

/// Position of a cone inside its dimension level of the fan.
fn level_position(fan: &Fan, cone: &Cone) -> Result<usize> {
    fan.cones(cone.dim())
        .binary_search(cone)
        .map_err(|_| Error::InvalidInput(format!("{cone} is not a cone of the fan")))
}

/// The matrix of balancing conditions in dimension `k ≥ 1`: one row per
/// `k`-cone, and columns grouped by the `(k−1)`-cones `τ`, where the block
/// of a row `σ ⊇ τ` holds the image in `Z^n/N_τ` of a lattice normal of
/// `σ` over `τ`.  A weight vector on the `k`-cones is balanced exactly
/// when it lies in the left kernel.
pub fn balancing_matrix(fan: &Fan, k: usize) -> Result<IntMat> {
    let rows = fan.cones(k).len();
    if k == 0 {
        return Ok(IntMat::zeros(rows, 0));
    }
    let taus = fan.cones(k - 1);
    let mut offsets = Vec::with_capacity(taus.len());
    let mut cols = 0;
    for tau in taus {
        offsets.push(cols);
        cols += fan.ambient_rank() - tau.dim();
    }
    let mut m = IntMat::zeros(rows, cols);
    for (row, sigma) in fan.cones(k).iter().enumerate() {
        for &drop in sigma.rays() {
            let tau = sigma.without_ray(drop);
            let t = fan
                .cones(k - 1)
                .binary_search(&tau)
                .expect("faces of a cone are cones of the fan");
            let normal = fan.lattice_normal(&tau, sigma)?;
            let image = fan.quotient(&tau).project(&normal);
            for (j, c) in image.into_iter().enumerate() {
                m.set(row, offsets[t] + j, c);
            }
        }
    }
    Ok(m)
}

/// A basis, as matrix rows, of the Minkowski weights of dimension `k`:
/// the integer weightings of the `k`-cones balanced around every
/// `(k−1)`-cone.
pub fn minkowski_weights(fan: &Fan, k: usize) -> Result<IntMat> {
    Ok(left_kernel(&balancing_matrix(fan, k)?))
}

/// Whether a weighting of the `k`-cones is balanced around every
/// `(k−1)`-cone.
pub fn is_minkowski_weight(fan: &Fan, k: usize, weights: &[BigInt]) -> Result<bool> {
    let b = balancing_matrix(fan, k)?;
    if weights.len() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "expected one weight per dimension-{k} cone ({}), got {}",
            b.rows(),
            weights.len()
        )));
    }
    Ok(vec_mul_mat(weights, &b).iter().all(Zero::is_zero))
}

/// An integer combination of the classes of the dimension-`k` cones, in
/// the fan's cone order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowElement {
    k: usize,
    coeffs: Vec<BigInt>,
}

impl ChowElement {
    /// The zero element in degree `k`.
    pub fn zero(fan: &Fan, k: usize) -> Self {
        ChowElement { k, coeffs: vec![BigInt::zero(); fan.cones(k).len()] }
    }

    /// The class of a single cone.
    pub fn cone_class(fan: &Fan, cone: &Cone) -> Result<Self> {
        let mut elt = ChowElement::zero(fan, cone.dim());
        elt.coeffs[level_position(fan, cone)?] = BigInt::one();
        Ok(elt)
    }

    /// Wraps explicit coefficients on the dimension-`k` cones.
    pub fn from_coeffs(fan: &Fan, k: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != fan.cones(k).len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients in degree {k}, got {}",
                fan.cones(k).len(),
                coeffs.len()
            )));
        }
        Ok(ChowElement { k, coeffs })
    }

    /// The degree of the element.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The coefficients, in the fan's dimension-`k` cone order.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Pointwise sum of two elements of the same degree.
    pub fn plus(&self, other: &ChowElement) -> Result<ChowElement> {
        if self.k != other.k || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::DimensionMismatch(
                "summands live in different degrees".into(),
            ));
        }
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(ChowElement { k: self.k, coeffs })
    }

    /// The element scaled by an integer.
    pub fn scaled(&self, c: &BigInt) -> ChowElement {
        ChowElement { k: self.k, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }
}

/// The degree-`k` Chow group, presented on the dimension-`k` cone classes.
#[derive(Debug, Clone)]
pub struct ChowGroup {
    k: usize,
    relations: IntMat,
    presented: PresentedGroup,
}

impl ChowGroup {
    /// The grading degree.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The relation matrix, one relation per row, in the ambient `Z^{Σ_k}`.
    pub fn relations(&self) -> &IntMat {
        &self.relations
    }

    /// The presentation, for coordinates and representatives.
    pub fn presented(&self) -> &PresentedGroup {
        &self.presented
    }

    /// The isomorphism type.
    pub fn group(&self) -> &FinAbGroup {
        self.presented.group()
    }

    /// Smith coordinates (torsion residues, free coordinates) of an element.
    pub fn class_of(&self, elt: &ChowElement) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        if elt.k != self.k {
            return Err(Error::DimensionMismatch(format!(
                "element of degree {} in the degree-{} group",
                elt.k, self.k
            )));
        }
        Ok(self.presented.class_coords(&elt.coeffs))
    }

    /// Whether an element is zero in the group.
    pub fn is_zero_class(&self, elt: &ChowElement) -> Result<bool> {
        let (torsion, free) = self.class_of(elt)?;
        Ok(torsion.iter().all(Zero::is_zero) && free.iter().all(Zero::is_zero))
    }
}

/// Builds the degree-`k` Chow group of the fan.
pub fn chow_group(fan: &Fan, k: usize) -> Result<ChowGroup> {
    let ambient = fan.cones(k).len();
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    if k >= 1 {
        for tau in fan.cones(k - 1) {
            // Integral forms vanishing on tau, as the saturated left kernel
            // of the transposed ray matrix; deterministic via Hermite form.
            let forms = left_kernel(&fan.ray_matrix(tau).transpose());
            for i in 0..forms.rows() {
                let ell = forms.row(i);
                let mut relation = vec![BigInt::zero(); ambient];
                let mut nonzero = false;
                for sigma in fan.cofaces(tau) {
                    let extra = sigma.difference(tau)[0];
                    let value: BigInt =
                        ell.iter().zip(fan.ray(extra)).map(|(a, b)| a * b).sum();
                    if !value.is_zero() {
                        nonzero = true;
                    }
                    relation[level_position(fan, sigma)?] = value;
                }
                if nonzero {
                    relations.push(relation);
                }
            }
        }
    }
    let relations = IntMat::from_rows(ambient, relations);
    let presented = PresentedGroup::new(ambient, &relations);
    Ok(ChowGroup { k, relations, presented })
}

/// An integral linear form taking value one on `ray` and zero on the other
/// rays of `cone`; exists whenever the cone is unimodular.  Deterministic
/// (first Hermite solution).
fn dual_form(fan: &Fan, cone: &Cone, ray: usize) -> Result<Vec<BigInt>> {
    let pos = cone
        .rays()
        .iter()
        .position(|&r| r == ray)
        .ok_or_else(|| Error::InvalidInput(format!("ray {ray} is not in {cone}")))?;
    let mut target = vec![BigInt::zero(); cone.dim()];
    target[pos] = BigInt::one();
    solve_left(&fan.ray_matrix(cone).transpose(), &target).ok_or_else(|| {
        Error::NotUnimodular(format!("no integral form is dual to ray {ray} in {cone}"))
    })
}

/// Multiplies two elements by square-free rewriting of cone monomials;
/// requires a unimodular fan.  The result is one representative of the
/// product class (deterministic, but rewriting choices are only canonical
/// up to relations); compare products through [`ChowGroup::class_of`].
pub fn chow_mul(fan: &Fan, a: &ChowElement, b: &ChowElement) -> Result<ChowElement> {
    chow_mul_with(fan, a, b, &dual_form)
}

/// The product with an explicit choice of dual forms, used to confirm the
/// result does not depend on that choice.
fn chow_mul_with(
    fan: &Fan,
    a: &ChowElement,
    b: &ChowElement,
    chooser: &dyn Fn(&Fan, &Cone, usize) -> Result<Vec<BigInt>>,
) -> Result<ChowElement> {
    if !fan.is_unimodular() {
        return Err(Error::NotUnimodular(
            "products of cone classes require a unimodular fan".into(),
        ));
    }
    let k = a.k + b.k;
    // Pending monomials: sorted ray multisets with integer coefficients.
    let mut pending: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        let sigma = &fan.cones(a.k)[i];
        for (j, cb) in b.coeffs.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let tau = &fan.cones(b.k)[j];
            let mut m: Vec<usize> =
                sigma.rays().iter().chain(tau.rays()).copied().collect();
            m.sort_unstable();
            let entry = pending.entry(m).or_default();
            *entry += ca * cb;
        }
    }
    let mut result = ChowElement::zero(fan, k);
    while let Some((m, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let support = Cone::from_indices(m.iter().copied());
        if !fan.contains_cone(&support) {
            continue;
        }
        let repeated = m.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]);
        let Some(ray) = repeated else {
            // Square-free with cone support: a basis monomial.
            result.coeffs[level_position(fan, &support)?] += c;
            continue;
        };
        // Rewrite one copy of X_ray using a form dual to it on the support
        // cone: the form pairs to zero with the other rays of the support,
        // so only rays outside the support enter.
        let ell = chooser(fan, &support, ray)?;
        let mut rest = m.clone();
        let at = rest.iter().position(|&r| r == ray).expect("repeated ray present");
        rest.remove(at);
        for other in 0..fan.n_rays() {
            if support.contains_ray(other) {
                continue;
            }
            let value: BigInt =
                ell.iter().zip(fan.ray(other)).map(|(x, y)| x * y).sum();
            if value.is_zero() {
                continue;
            }
            let mut next = rest.clone();
            let pos = next.partition_point(|&r| r < other);
            next.insert(pos, other);
            let entry = pending.entry(next).or_default();
            *entry -= &value * &c;
        }
    }
    Ok(result)
}

/// The degree of a top-dimensional element: the weight-paired sum of its
/// coefficients.
pub fn degree(fan: &Fan, a: &ChowElement) -> Result<BigInt> {
    if a.k != fan.dim() {
        return Err(Error::DimensionMismatch(format!(
            "degree is defined in top degree {}, got {}",
            fan.dim(),
            a.k
        )));
    }
    let mut total = BigInt::zero();
    for (sigma, c) in fan.cones(fan.dim()).iter().zip(&a.coeffs) {
        total += c * fan.weight_of(sigma)?;
    }
    Ok(total)
}

/// The pairing of a degree-`k` element with a dimension-`k` weight vector.
pub fn mw_pairing(a: &ChowElement, weights: &[BigInt]) -> Result<BigInt> {
    if a.coeffs.len() != weights.len() {
        return Err(Error::DimensionMismatch(
            "element and weight vector have different lengths".into(),
        ));
    }
    Ok(a.coeffs.iter().zip(weights).map(|(x, y)| x * y).sum())
}

/// The matrix of the map sending a ray class to minus the divisor of its
/// indicator function: row `ρ` holds `−ord_τ(f_ρ)` over the
/// codimension-one cones `τ`.  Entries are rational because the indicator
/// of a ray need not be integral on non-unimodular fans.
pub fn divisor_map_matrix(fan: &Fan) -> Result<Vec<Vec<BigRational>>> {
    let d = fan.dim();
    if d == 0 {
        return Err(Error::InvalidFan(
            "the divisor map needs a positive-dimensional fan".into(),
        ));
    }
    let mut rows = Vec::with_capacity(fan.n_rays());
    for r in 0..fan.n_rays() {
        let mut values = vec![BigInt::zero(); fan.n_rays()];
        values[r] = BigInt::one();
        let mut row = Vec::with_capacity(fan.cones(d - 1).len());
        for tau in fan.cones(d - 1) {
            row.push(-order_of_values(fan, &values, tau)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Verdicts for the divisor map `A^1 → MW_{d−1}` of a fan.
///
/// When every order is an integer the verdicts are integral: `principal`
/// means every Minkowski weight of dimension `d−1` is the divisor of a
/// conewise integral linear function, and `div_faithful` means a class
/// with zero divisor is itself zero.  Otherwise both are decided after
/// tensoring with the rationals, and `over_integers` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorMapReport {
    pub over_integers: bool,
    pub principal: bool,
    pub div_faithful: bool,
}

/// Decides principality and divisorial faithfulness of a fan at its apex.
pub fn divisor_map_report(fan: &Fan) -> Result<DivisorMapReport> {
    let d = fan.dim();
    let rational = divisor_map_matrix(fan)?;
    let over_integers = rational.iter().flatten().all(BigRational::is_integer);
    let mw = minkowski_weights(fan, d - 1)?;
    let relations = chow_group(fan, 1)?.relations.clone();
    if over_integers {
        let cl = IntMat::from_rows(
            fan.cones(d - 1).len(),
            rational
                .iter()
                .map(|row| row.iter().map(|x| x.to_integer()).collect())
                .collect(),
        );
        // Coordinates of each image row in the Minkowski weight basis; the
        // divisor of any function is balanced, so these always exist.
        let mw_lattice = SublatticeBasis::from_generators(&mw);
        let mut coords = Vec::with_capacity(cl.rows());
        for i in 0..cl.rows() {
            let row = cl.row_vec(i);
            let c = mw_lattice.coords_of(&row).ok_or_else(|| {
                Error::InvalidFan("an indicator divisor is not balanced".into())
            })?;
            coords.push(c);
        }
        let coords = IntMat::from_rows(mw_lattice.rank(), coords);
        let principal =
            PresentedGroup::new(mw_lattice.rank(), &coords).group().is_zero();
        // Injectivity on the presented group: the kernel of the matrix must
        // be spanned over Z by the Chow relations.
        let relation_lattice = SublatticeBasis::from_generators(&relations);
        let kernel = left_kernel(&cl);
        let div_faithful =
            (0..kernel.rows()).all(|i| relation_lattice.contains(&kernel.row_vec(i)));
        return Ok(DivisorMapReport { over_integers, principal, div_faithful });
    }
    // Rational fallback: scale each row to integers (row scaling preserves
    // rank and row space) and compare ranks.
    let scaled: Vec<Vec<BigInt>> = rational
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| {
                num_integer::lcm(acc, x.denom().abs())
            });
            row.iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let cl = IntMat::from_rows(fan.cones(d - 1).len(), scaled);
    let rank_cl = cl.rows() - left_kernel(&cl).rows();
    let principal = rank_cl == mw.rows();
    let rank_relations = relations.rows() - left_kernel(&relations).rows();
    let div_faithful = rank_cl == fan.n_rays() - rank_relations;
    Ok(DivisorMapReport { over_integers, principal, div_faithful })
}

/// Invariant factors of the tensor product of two finitely generated
/// abelian groups.
pub fn tensor_group(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    let mut cyclic_orders: Vec<BigInt> = Vec::new();
    for t in a.torsion() {
        for _ in 0..b.free_rank() {
            cyclic_orders.push(t.clone());
        }
    }
    for s in b.torsion() {
        for _ in 0..a.free_rank() {
            cyclic_orders.push(s.clone());
        }
    }
    for t in a.torsion() {
        for s in b.torsion() {
            let g = num_integer::gcd(t.clone(), s.clone());
            if !g.is_one() {
                cyclic_orders.push(g);
            }
        }
    }
    let free = a.free_rank() * b.free_rank();
    let ambient = free + cyclic_orders.len();
    let mut relations = IntMat::zeros(cyclic_orders.len(), ambient);
    for (i, order) in cyclic_orders.into_iter().enumerate() {
        relations.set(i, free + i, order);
    }
    PresentedGroup::new(ambient, &relations).group().clone()
}

/// Checks the blow-up decomposition of the Chow groups: for a unimodular
/// fan and a cone `sigma` of dimension at least two,
///
/// ```text
/// A^k(Bl_σ Σ) ≅ A^k(Σ) ⊕ A^{k−1}(Σ^σ) ⊕ … ⊕ A^{k−|σ|+1}(Σ^σ).
/// ```
pub fn keel_check(fan: &Fan, sigma: &Cone) -> Result<bool> {
    if sigma.dim() < 2 {
        return Err(Error::InvalidInput(
            "the blow-up decomposition needs a cone of dimension at least two".into(),
        ));
    }
    let blown = fan.blow_up(sigma, None)?;
    let star = fan.star_fan(sigma)?;
    for k in 0..=blown.dim() {
        let mut expected = chow_group(fan, k)?.group().clone();
        for i in 1..sigma.dim() {
            if k >= i {
                expected = expected.direct_sum(chow_group(&star.fan, k - i)?.group());
            }
        }
        if chow_group(&blown, k)?.group() != &expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The intersection pairing between complementary Chow degrees.
#[derive(Debug, Clone)]
pub struct ChowPairingReport {
    /// The lower degree of the pair `(k, d−k)`.
    pub k: usize,
    /// Determinant of the pairing on free generators, when square.
    pub det: Option<BigInt>,
    /// Both groups torsion-free and the determinant a unit.
    pub perfect_integral: bool,
    /// Ranks equal and the determinant nonzero.
    pub perfect_rational: bool,
}

/// Evaluates the pairing `(a, b) ↦ deg(a·b)` between `A^k` and `A^{d−k}`
/// on free generator representatives, for every `k ≤ d/2`.
pub fn chow_pairing_reports(fan: &Fan) -> Result<Vec<ChowPairingReport>> {
    let d = fan.dim();
    let mut reports = Vec::new();
    for k in 0..=d / 2 {
        let left = chow_group(fan, k)?;
        let right = chow_group(fan, d - k)?;
        let torsion_free = left.group().is_free() && right.group().is_free();
        let left_reps = free_generator_reps(left.presented());
        let right_reps = free_generator_reps(right.presented());
        if left_reps.len() != right_reps.len() {
            reports.push(ChowPairingReport {
                k,
                det: None,
                perfect_integral: false,
                perfect_rational: false,
            });
            continue;
        }
        let n = left_reps.len();
        let mut pairing = IntMat::zeros(n, n);
        for (i, a) in left_reps.iter().enumerate() {
            let a = ChowElement::from_coeffs(fan, k, a.clone())?;
            for (j, b) in right_reps.iter().enumerate() {
                let b = ChowElement::from_coeffs(fan, d - k, b.clone())?;
                pairing.set(i, j, degree(fan, &chow_mul(fan, &a, &b)?)?);
            }
        }
        let det = pairing.det_bareiss()?;
        reports.push(ChowPairingReport {
            k,
            perfect_integral: torsion_free && det.abs().is_one(),
            perfect_rational: !det.is_zero(),
            det: Some(det),
        });
    }
    Ok(reports)
}

/// Representatives of the free generators of a presented group (its
/// torsion generators dropped).
fn free_generator_reps(presented: &PresentedGroup) -> Vec<Vec<BigInt>> {
    let torsion = presented.group().torsion().len();
    presented.generator_reps().into_iter().skip(torsion).collect()
}
