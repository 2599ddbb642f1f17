//! Conewise integral linear functions, orders of vanishing, and divisors.
//!
//! A conewise integral linear function on a simplicial fan is determined by
//! its values on the primitive ray generators; it restricts to a linear form
//! on every cone, and integrality means each restriction takes integer
//! values on the cone's saturated lattice.  The divisor of such a function
//! is the weighted codimension-one skeleton recording the failure of the
//! function to be linear across each codimension-one cone; for a weighted
//! balanced fan the divisor is again balanced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::lattice::{rational_solve_left, IntMat};

mod modification;

pub use modification::{
    induced_function_values, star_of_modification_check, tropical_modification,
    StarModReport, TropModification,
};

/// A function on the support of a fan that is linear on every cone and
/// integral on every cone lattice, encoded by its values on the primitive
/// ray generators.
#[derive(Debug, Clone)]
pub struct ConewiseLinear<'a> {
    fan: &'a Fan,
    values: Vec<BigInt>,
}

impl<'a> ConewiseLinear<'a> {
    /// Builds the function with value `values[i]` on the `i`-th ray,
    /// verifying integrality on the lattice of every maximal cone (which
    /// covers all cones, since cone lattices are nested under inclusion).
    pub fn new(fan: &'a Fan, values: Vec<BigInt>) -> Result<Self> {
        if values.len() != fan.n_rays() {
            return Err(Error::DimensionMismatch(format!(
                "expected one value per ray ({}), got {}",
                fan.n_rays(),
                values.len()
            )));
        }
        let f = ConewiseLinear { fan, values };
        for sigma in fan.maximal_cones() {
            let lattice = fan.cone_lattice(sigma);
            for i in 0..lattice.rank() {
                let v = lattice.basis().row_vec(i);
                let value = f.eval(sigma, &v)?;
                if !value.is_integer() {
                    return Err(Error::NonIntegralFunction(format!(
                        "value {value} on a lattice point of cone {sigma}"
                    )));
                }
            }
        }
        Ok(f)
    }

    /// The underlying fan.
    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    /// The value on the `i`-th primitive ray generator.
    pub fn value(&self, ray: usize) -> &BigInt {
        &self.values[ray]
    }

    /// All ray values, indexed like `fan.rays()`.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Evaluates the restriction to `sigma` at a vector `v` in the rational
    /// span of `sigma`.  Errors when `v` lies outside that span.
    pub fn eval(&self, sigma: &Cone, v: &[BigInt]) -> Result<BigRational> {
        eval_values(self.fan, &self.values, sigma, v)
    }

    /// A rational linear form on the ambient space agreeing with the
    /// function on every ray, when one exists.
    pub fn linear_form(&self) -> Option<Vec<BigRational>> {
        let rays = IntMat::from_rows(
            self.fan.n_rays(),
            (0..self.fan.ambient_rank())
                .map(|j| {
                    (0..self.fan.n_rays()).map(|i| self.fan.ray(i)[j].clone()).collect()
                })
                .collect(),
        );
        rational_solve_left(&rays, &self.values)
    }

    /// Whether the function is globally linear, i.e. the restrictions to the
    /// cones glue to a single linear form on the ambient space.
    pub fn is_linear(&self) -> bool {
        self.linear_form().is_some()
    }

    /// Pointwise sum with another function on the same fan.
    pub fn plus(&self, other: &ConewiseLinear<'a>) -> Result<ConewiseLinear<'a>> {
        if !self.fan.same_fan_as(other.fan) {
            return Err(Error::InvalidInput("functions live on different fans".into()));
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ConewiseLinear::new(self.fan, values)
    }

    /// Pointwise negation.
    pub fn negated(&self) -> ConewiseLinear<'a> {
        ConewiseLinear {
            fan: self.fan,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// The order of vanishing along a codimension-one cone `tau`: with
    /// `n_{σ/τ}` a lattice normal of each facet `σ ⊃ τ` and `w` the fan
    /// weights,
    ///
    /// ```text
    /// ord_τ(f) = − Σ_σ w(σ)·f_σ(n_{σ/τ}) + f_τ(Σ_σ w(σ)·n_{σ/τ}).
    /// ```
    ///
    /// The second term requires the weighted sum of normals to lie in the
    /// span of `tau`, i.e. the fan must be balanced around `tau`.
    pub fn order_at(&self, tau: &Cone) -> Result<BigInt> {
        let order = order_of_values(self.fan, &self.values, tau)?;
        if !order.is_integer() {
            return Err(Error::NonIntegralFunction(format!(
                "order {order} along {tau} is not an integer"
            )));
        }
        Ok(order.to_integer())
    }

    /// The divisor of the function: the codimension-one skeleton weighted by
    /// orders of vanishing.
    pub fn divisor(&self) -> Result<Divisor> {
        let d = self.fan.dim();
        if d == 0 {
            return Err(Error::InvalidFan(
                "a zero-dimensional fan has no codimension-one cones".into(),
            ));
        }
        let weights = self
            .fan
            .cones(d - 1)
            .iter()
            .map(|tau| self.order_at(tau))
            .collect::<Result<Vec<_>>>()?;
        Ok(Divisor { dim: d - 1, weights })
    }
}

/// Evaluates the linear extension of ray `values` on `sigma` at a vector
/// `v` in the rational span of `sigma`.
fn eval_values(
    fan: &Fan,
    values: &[BigInt],
    sigma: &Cone,
    v: &[BigInt],
) -> Result<BigRational> {
    let rays = fan.ray_matrix(sigma);
    let coords = rational_solve_left(&rays, v).ok_or_else(|| {
        Error::InvalidInput(format!("vector is not in the span of cone {sigma}"))
    })?;
    let mut total = BigRational::zero();
    for (c, &ray) in coords.iter().zip(sigma.rays()) {
        total += c * BigRational::from_integer(values[ray].clone());
    }
    Ok(total)
}

/// The order of vanishing along a codimension-one cone of the conewise
/// linear function with the given ray values, without requiring the
/// function to be integral on cone lattices (so the order may be a
/// non-integral rational number).
pub fn order_of_values(fan: &Fan, values: &[BigInt], tau: &Cone) -> Result<BigRational> {
    let d = fan.dim();
    if !fan.is_pure() {
        return Err(Error::InvalidFan("orders require a pure fan".into()));
    }
    if tau.dim() + 1 != d || !fan.contains_cone(tau) {
        return Err(Error::InvalidInput(format!(
            "{tau} is not a codimension-one cone of the fan"
        )));
    }
    let mut around = BigRational::zero();
    let mut normal_sum = vec![BigInt::zero(); fan.ambient_rank()];
    for sigma in fan.cofaces(tau) {
        let w = fan.weight_of(sigma)?;
        let normal = fan.lattice_normal(tau, sigma)?;
        around += BigRational::from_integer(w.clone())
            * eval_values(fan, values, sigma, &normal)?;
        for (acc, c) in normal_sum.iter_mut().zip(&normal) {
            *acc += w * c;
        }
    }
    let at_tau = if tau.is_zero() {
        if normal_sum.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidFan("fan is not balanced around the origin".into()));
        }
        BigRational::zero()
    } else {
        eval_values(fan, values, tau, &normal_sum)
            .map_err(|_| Error::InvalidFan(format!("fan is not balanced around {tau}")))?
    };
    Ok(at_tau - around)
}

/// A weighted codimension-one skeleton of a fan: one integer weight per
/// cone of the stated dimension, in the fan's cone order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    dim: usize,
    weights: Vec<BigInt>,
}

impl Divisor {
    /// Wraps explicit weights on the dimension-`dim` cones of a fan.
    pub fn from_weights(fan: &Fan, dim: usize, weights: Vec<BigInt>) -> Result<Self> {
        if weights.len() != fan.cones(dim).len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} weights for the dimension-{dim} cones, got {}",
                fan.cones(dim).len(),
                weights.len()
            )));
        }
        Ok(Divisor { dim, weights })
    }

    /// The dimension of the weighted cones.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The weight on each dimension-`dim` cone, in the fan's cone order.
    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    /// The cones carrying a nonzero weight.
    pub fn support<'f>(&self, fan: &'f Fan) -> Vec<&'f Cone> {
        fan.cones(self.dim)
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| !w.is_zero())
            .map(|(c, _)| c)
            .collect()
    }

    /// Whether every weight vanishes.
    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero())
    }

    /// Whether every weight on the support is positive.
    pub fn is_effective(&self) -> bool {
        self.weights.iter().all(|w| !(w < &BigInt::zero()))
    }

    /// Whether every weight on the support equals one.
    pub fn is_reduced(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero() || w.is_one())
    }

    /// The subfan spanned by the support, with the divisor weights on its
    /// maximal cones.  Errors when the support is empty.
    pub fn support_fan(&self, fan: &Fan) -> Result<Fan> {
        Ok(self.support_fan_with_rays(fan)?.0)
    }

    /// The support subfan together with its ray labelling: entry `i` of the
    /// returned vector is the original fan's index of the subfan's ray `i`.
    pub fn support_fan_with_rays(&self, fan: &Fan) -> Result<(Fan, Vec<usize>)> {
        let mut support: Vec<Cone> = Vec::new();
        let mut weights: Vec<BigInt> = Vec::new();
        for (cone, w) in fan.cones(self.dim).iter().zip(&self.weights) {
            if !w.is_zero() {
                support.push(cone.clone());
                weights.push(w.clone());
            }
        }
        if support.is_empty() {
            return Err(Error::InvalidFan("the divisor has empty support".into()));
        }
        let (subfan, kept, used) = prune_to_cones(fan, &support)?;
        // Align the weights with the subfan's sorted maximal-cone order.
        let ordered = kept
            .iter()
            .map(|c| {
                let at = support.iter().position(|s| s == c).expect("kept cone");
                weights[at].clone()
            })
            .collect();
        Ok((subfan.with_weights(ordered)?, used))
    }
}

/// Rebuilds a fan from a set of its cones (taken as the maximal cones),
/// relabelling rays to drop the unused ones.  Returns the new fan, the
/// surviving cones in the original labels (in the new fan's maximal-cone
/// order), and the original index of each kept ray.
fn prune_to_cones(fan: &Fan, cones: &[Cone]) -> Result<(Fan, Vec<Cone>, Vec<usize>)> {
    let mut used: Vec<usize> = cones.iter().flat_map(|c| c.rays().iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let mut relabel = vec![usize::MAX; fan.n_rays()];
    for (new, &old) in used.iter().enumerate() {
        relabel[old] = new;
    }
    let rays: Vec<Vec<BigInt>> = used.iter().map(|&r| fan.ray(r).to_vec()).collect();
    let maximal: Vec<Cone> = cones
        .iter()
        .map(|c| Cone::from_indices(c.rays().iter().map(|&r| relabel[r])))
        .collect();
    let subfan = Fan::new(fan.ambient_rank(), rays, maximal)?;
    let order: Vec<Cone> = subfan
        .maximal_cones()
        .iter()
        .map(|c| Cone::from_indices(c.rays().iter().map(|&r| used[r])))
        .collect();
    Ok((subfan, order, used))
}

/// A per-cone verdict from the divisor maps of the star fans.
#[derive(Debug, Clone)]
pub struct FaceVerdict {
    /// The cone whose star was examined.
    pub cone: Cone,
    /// Whether the verdict was decided over the integers (false means the
    /// star's ray indicators were non-integral and the verdict is rational).
    pub over_integers: bool,
    /// The verdict itself.
    pub ok: bool,
}

/// Verdicts of a star-fan property at every cone of a fan.
#[derive(Debug, Clone)]
pub struct LocalVerdicts {
    /// One verdict per cone, in order of increasing dimension.
    pub per_face: Vec<FaceVerdict>,
    /// Whether every verdict holds.
    pub all: bool,
}

fn local_divisor_verdicts(
    fan: &Fan,
    pick: fn(&crate::chow::DivisorMapReport) -> bool,
) -> Result<LocalVerdicts> {
    let mut per_face = Vec::new();
    let mut all = true;
    for eta in fan.all_cones() {
        let verdict = if eta.dim() == fan.dim() {
            // The star is a point: no divisors, nothing to decide.
            FaceVerdict { cone: eta.clone(), over_integers: true, ok: true }
        } else {
            let star = fan.star_fan(eta)?;
            let report = crate::chow::divisor_map_report(&star.fan)?;
            FaceVerdict {
                cone: eta.clone(),
                over_integers: report.over_integers,
                ok: pick(&report),
            }
        };
        all &= verdict.ok;
        per_face.push(verdict);
    }
    Ok(LocalVerdicts { per_face, all })
}

/// Whether every Minkowski weight of dimension `d−1` on every star fan is
/// the divisor of a conewise integral linear function (the fan is
/// *principal* when all verdicts hold).
pub fn principality_report(fan: &Fan) -> Result<LocalVerdicts> {
    local_divisor_verdicts(fan, |r| r.principal)
}

/// Whether a divisor class with zero divisor is zero on every star fan
/// (the fan is *divisorially faithful* when all verdicts hold).
pub fn div_faithful_report(fan: &Fan) -> Result<LocalVerdicts> {
    local_divisor_verdicts(fan, |r| r.div_faithful)
}
