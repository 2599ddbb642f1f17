//! Cup product on cochains of a compactified unimodular fan.
//!
//! A face of the compactification is a pair of cones `τ ⊆ η`; the product
//! of cochains of bidegrees `(p, q)` and `(p', q')` is supported on the
//! faces with `|η| − |τ| = q + q'` and sums over the intermediate cones
//! `τ ⊆ σ ⊆ η` with `|σ| − |τ| = q`:
//!
//! `(a ⌣ b)^τ_η = Σ_σ ω^τ_η(ν^τ_σ ∧ s(ν^σ_η)) · a^τ_σ ∧ π^*(b^σ_η)`,
//!
//! where `π : Z^n/N_τ → Z^n/N_σ` is the stratum projection, `s` a section
//! of it, and `ω^τ_η` reads off the multiple of the orientation generator
//! `ν^τ_η`. Functionals are stored by their values on the lattice bases of
//! the coefficient lattices; products are evaluated through exact rational
//! extensions, and the section ambiguities cancel inside the wedges.

use crate::coeff::Geometry;
use crate::error::{Error, Result};
use crate::homology::{Complex, Space, Supports};
use crate::lattice::{
    exterior_power_map, rational_solve_left, vec_is_zero, vec_mul_mat, wedge_mul, IntMat,
};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A cochain of bidegree `(p, q)` on the compactified fan: one value per
/// basis vector of each `q`-dimensional face's coefficient lattice, in the
/// block layout of the degree-`p` chain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub p: usize,
    pub q: usize,
    pub values: Vec<BigInt>,
}

/// Cup-product machinery for one compactified unimodular fan; owns the
/// chain complexes of every coefficient degree.
pub struct CupRing<'g, 'f> {
    geom: &'g Geometry<'f>,
    complexes: Vec<Complex<'g, 'f>>,
}

impl<'g, 'f> CupRing<'g, 'f> {
    /// Builds the complexes. Fails on non-unimodular fans: the orientation
    /// ratios `ω^τ_η` need not be integral there.
    pub fn new(geom: &'g Geometry<'f>) -> Result<Self> {
        if !geom.fan().is_unimodular() {
            return Err(Error::InvalidInput(
                "the cup product is defined over unimodular fans only".into(),
            ));
        }
        let complexes = (0..=geom.fan().ambient_rank())
            .map(|p| Complex::build(geom, p, Space::Compactification, Supports::Compact))
            .collect();
        Ok(CupRing { geom, complexes })
    }

    pub fn geometry(&self) -> &Geometry<'f> {
        self.geom
    }

    /// The cellular complex whose transpose carries degree-`p` cochains.
    pub fn complex(&self, p: usize) -> &Complex<'g, 'f> {
        &self.complexes[p]
    }

    /// The zero cochain of a bidegree.
    pub fn zero(&self, p: usize, q: usize) -> Cochain {
        let len = self.complexes.get(p).map_or(0, |c| c.dim(q));
        Cochain { p, q, values: vec![BigInt::zero(); len] }
    }

    /// The multiplicative unit: value one on every point of the
    /// compactification.
    pub fn unit(&self) -> Cochain {
        let len = self.complexes[0].dim(0);
        Cochain { p: 0, q: 0, values: vec![BigInt::one(); len] }
    }

    /// The coboundary `d c`, one cochain degree up.
    pub fn coboundary(&self, c: &Cochain) -> Cochain {
        let cx = &self.complexes[c.p];
        if c.q + 1 > cx.max_dim() {
            return self.zero(c.p, c.q + 1);
        }
        let values = vec_mul_mat(&c.values, &cx.boundaries[c.q + 1].transpose());
        Cochain { p: c.p, q: c.q + 1, values }
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        vec_is_zero(&self.coboundary(c).values)
    }

    /// A cocycle representing the `i`-th canonical generator of `H^{p,q}`
    /// (torsion generators first, then free ones), deterministically chosen
    /// through the Smith presentation of the cocycle subquotient.
    pub fn representative(&self, p: usize, q: usize, i: usize) -> Result<Cochain> {
        let hg = self.complexes[p].cohomology_at(q)?;
        let reps = hg.presented.generator_reps();
        let rep = reps.get(i).ok_or_else(|| {
            Error::InvalidInput(format!("cohomology generator {i} out of range"))
        })?;
        Ok(Cochain { p, q, values: hg.cycles.apply_left(rep) })
    }

    /// The cup product of two cocycles. Errors on non-cocycle input and on
    /// bidegree overflow of the ambient rank.
    pub fn cup(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        if !self.is_cocycle(a) || !self.is_cocycle(b) {
            return Err(Error::InvalidInput("cup product of a non-cocycle".into()));
        }
        let (p2, q2) = (a.p + b.p, a.q + b.q);
        if p2 >= self.complexes.len() {
            return Ok(Cochain { p: p2, q: q2, values: Vec::new() });
        }
        let mut out = self.zero(p2, q2);
        let target = &self.complexes[p2];
        if q2 > target.max_dim() {
            return Ok(out);
        }
        let faces = self.geom.faces();
        for (pos, &fidx) in target.cells[q2].iter().enumerate() {
            let face = faces.face(fidx);
            let (tau, eta) = (&face.sed, &face.cone);
            let col0 = target.offsets[q2][pos];
            let moving: Vec<usize> = eta.difference(tau);
            for subset in moving.iter().copied().combinations(a.q) {
                let sigma = tau.join(&crate::fan::Cone::from_indices(subset));
                let block = self.face_term(a, b, tau, &sigma, eta, fidx)?;
                for (i, v) in block.into_iter().enumerate() {
                    let cur = out.values[col0 + i].clone();
                    out.values[col0 + i] = cur + v;
                }
            }
        }
        Ok(out)
    }

    /// One `σ`-term of the sum: the values of
    /// `ω^τ_η(ν^τ_σ ∧ s(ν^σ_η)) · a^τ_σ ∧ π^*(b^σ_η)` on the basis of
    /// `F_{p+p'}(τ, η)`.
    fn face_term(
        &self,
        a: &Cochain,
        b: &Cochain,
        tau: &crate::fan::Cone,
        sigma: &crate::fan::Cone,
        eta: &crate::fan::Cone,
        target_face: usize,
    ) -> Result<Vec<BigInt>> {
        let faces = self.geom.faces();
        let face_a = faces
            .index_of(&crate::fan::CompFace::new(tau.clone(), sigma.clone()))
            .ok_or_else(|| Error::InvalidInput("missing intermediate face".into()))?;
        let face_b = faces
            .index_of(&crate::fan::CompFace::new(sigma.clone(), eta.clone()))
            .ok_or_else(|| Error::InvalidInput("missing intermediate face".into()))?;
        let m_tau = self.geom.quotient(tau).quotient_rank();

        // Orientation ratio ω^τ_η(ν^τ_σ ∧ s(ν^σ_η)).
        let lift_q = exterior_power_map(&self.geom.quotient_section(tau, sigma), b.q);
        let lifted_nu = vec_mul_mat(self.geom.nu(face_b), &lift_q);
        let w_nu = wedge_mul(m_tau, a.q, self.geom.nu(face_a), b.q, &lifted_nu);
        let nu_target = self.geom.nu(target_face);
        let omega = ratio_of(&w_nu, nu_target)?;

        // Rational extensions of the two functional blocks.
        let alpha = extend_functional(
            self.geom.f_lattice(a.p, face_a).basis(),
            self.block_values(a, face_a),
        )?;
        let beta = extend_functional(
            self.geom.f_lattice(b.p, face_b).basis(),
            self.block_values(b, face_b),
        )?;
        // Pull the second one back along the stratum projection.
        let proj = exterior_power_map(&self.geom.quotient_map(tau, sigma), b.p);
        let beta_tau: Vec<BigRational> = (0..proj.rows())
            .map(|i| (0..proj.cols()).map(|j| &beta[j] * proj.at(i, j)).sum())
            .collect();

        // Clear denominators, wedge over the integers, evaluate.
        let (alpha_int, da) = clear_denominators(&alpha);
        let (beta_int, db) = clear_denominators(&beta_tau);
        let wedge = wedge_mul(m_tau, a.p, &alpha_int, b.p, &beta_int);
        let denom = da * db;
        let f_target = self.geom.f_lattice(a.p + b.p, target_face);
        let mut vals = Vec::with_capacity(f_target.rank());
        for i in 0..f_target.rank() {
            let x = f_target.basis().row_vec(i);
            let raw = crate::lattice::vec_dot(&wedge, &x);
            let scaled = &omega * BigRational::new(raw, denom.clone());
            if !scaled.is_integer() {
                return Err(Error::InvalidInput(
                    "cup product value escapes the integers".into(),
                ));
            }
            vals.push(scaled.to_integer());
        }
        Ok(vals)
    }

    /// The slice of a cochain supported on one face.
    fn block_values(&self, c: &Cochain, face: usize) -> Vec<BigInt> {
        let cx = &self.complexes[c.p];
        let (q, off) = cx.block_of(face).expect("face is selected in its complex");
        debug_assert_eq!(q, c.q);
        c.values[off..off + self.geom.f_rank(c.p, face)].to_vec()
    }
}

/// The exact scalar `c` with `a = c · b`, for proportional vectors.
fn ratio_of(a: &[BigInt], b: &[BigInt]) -> Result<BigRational> {
    let lead = b
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::InvalidInput("orientation generator is zero".into()))?;
    let c = BigRational::new(a[lead].clone(), b[lead].clone());
    for (x, y) in a.iter().zip(b) {
        if BigRational::from_integer(x.clone()) != &c * y {
            return Err(Error::InvalidInput(
                "wedge of orientations is not proportional to the target".into(),
            ));
        }
    }
    Ok(c)
}

/// A rational functional on the ambient exterior power restricting to the
/// given values on the rows of `basis`.
fn extend_functional(basis: &IntMat, values: Vec<BigInt>) -> Result<Vec<BigRational>> {
    rational_solve_left(&basis.transpose(), &values)
        .ok_or_else(|| Error::InvalidInput("functional does not extend".into()))
}

/// Scales a rational vector to an integer one; returns the scale.
fn clear_denominators(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
    let ints = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    (ints, lcm)
}
