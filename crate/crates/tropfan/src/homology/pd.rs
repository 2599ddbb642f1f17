//! Poincaré duality via the cap product with the fundamental class.
//!
//! A weighted pure fan of dimension `d` has a canonical Borel–Moore chain
//! `ν = Σ_η w_η·ν_η` in degree `(d, d)`; it is a cycle exactly when the fan
//! is balanced. Capping cochains against it gives maps
//! `H^{p,q} → H^BM_{d−p,d−q}`, and the fan "verifies duality" when every
//! such map is an isomorphism. Since fan cohomology is concentrated in
//! `q = 0`, this reduces to (a) all Borel–Moore groups vanishing away from
//! `q = d` and (b) the cap maps `F_p(0)^∨ → H^BM_{d−p,d}` being unimodular.

use super::{Complex, HomologyGroup, Space, Supports};
use crate::coeff::{sign_ratio, Geometry};
use crate::error::{Error, Result};
use crate::fan::{CompFace, Cone};
use crate::lattice::{subsets_lex, vec_add, vec_scale, wedge_of_rows, FinAbGroup, IntMat};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

/// Sign of the shuffle permutation that moves the sorted positions `t`
/// (0-indexed) to the front.
fn shuffle_sign(t: &[usize]) -> i32 {
    let inversions: usize = t.iter().enumerate().map(|(i, &ti)| ti - i).sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The weighted fundamental chain in `C^BM_{d,d}` of the fan, expressed in
/// the coordinates of `Complex::build(geom, d, Fan, Closed)` at `q = d`.
pub fn fundamental_chain(geom: &Geometry, complex: &Complex) -> Result<Vec<BigInt>> {
    let fan = geom.fan();
    let d = fan.dim();
    if !fan.is_pure() {
        return Err(Error::InvalidInput("fundamental chain requires a pure fan".into()));
    }
    debug_assert_eq!(complex.p, d);
    let mut chain = vec![BigInt::zero(); complex.dim(d)];
    for eta in fan.maximal_cones() {
        let face = geom
            .faces()
            .index_of(&CompFace::finite(eta.clone()))
            .expect("maximal cone is a face");
        let (q, offset) = complex.block_of(face).expect("top faces are selected");
        debug_assert_eq!(q, d);
        let weight = fan.weight_of(eta)?;
        let weighted: Vec<BigInt> = geom.nu(face).iter().map(|c| c * weight).collect();
        let coords =
            geom.f_lattice(d, face).coords_of(&weighted).expect("ν_η generates F_d(η)");
        for (j, c) in coords.into_iter().enumerate() {
            chain[offset + j] = c;
        }
    }
    Ok(chain)
}

/// Caps the degree-`(p, 0)` cochain `alpha` (coordinates in the dual basis
/// of `F_p(0)`) with the fundamental chain. The result lives in
/// `C^BM_{d−p,d}`, in the coordinates of `target` which must be
/// `Complex::build(geom, d−p, Fan, Closed)`.
pub fn cap_fundamental(
    geom: &Geometry,
    p: usize,
    alpha: &[BigInt],
    target: &Complex,
) -> Result<Vec<BigInt>> {
    let fan = geom.fan();
    let d = fan.dim();
    if p > d {
        return Err(Error::InvalidInput("cap degree exceeds fan dimension".into()));
    }
    debug_assert_eq!(target.p, d - p);
    let origin = geom
        .faces()
        .index_of(&CompFace::finite(Cone::zero()))
        .expect("origin face");
    let f0 = geom.f_lattice(p, origin);
    if alpha.len() != f0.rank() {
        return Err(Error::DimensionMismatch("cap cochain length".into()));
    }
    let mut chain = vec![BigInt::zero(); target.dim(d)];
    for eta in fan.maximal_cones() {
        let face = geom
            .faces()
            .index_of(&CompFace::finite(eta.clone()))
            .expect("maximal cone is a face");
        let basis = geom.f_lattice(1, face); // the ray lattice of η
        let b = basis.basis();
        let all: Vec<usize> = (0..d).collect();
        let full = wedge_of_rows(b, &all);
        let eps = BigInt::from(sign_ratio(&full, geom.nu(face)));
        let scale = fan.weight_of(eta)? * eps;
        // ι_α(b_1∧…∧b_d) = Σ_{|T|=p} sgn(T)·α(b_T)·b_{[d]∖T}
        let mut result = vec![BigInt::zero(); crate::lattice::binomial(fan.ambient_rank(), d - p)];
        for t in subsets_lex(d, p) {
            let bt = wedge_of_rows(b, &t);
            let coeffs = f0.coords_of(&bt).expect("Λ^p L_η ⊆ F_p(0)");
            let value: BigInt = coeffs.iter().zip(alpha).map(|(c, a)| c * a).sum();
            if value.is_zero() {
                continue;
            }
            let complement: Vec<usize> = all.iter().copied().filter(|i| !t.contains(i)).collect();
            let bs = wedge_of_rows(b, &complement);
            let coeff = BigInt::from(shuffle_sign(&t)) * value;
            result = vec_add(&result, &vec_scale(&bs, &coeff));
        }
        let scaled: Vec<BigInt> = result.iter().map(|c| c * &scale).collect();
        let coords = geom
            .f_lattice(d - p, face)
            .coords_of(&scaled)
            .expect("contraction lands in Λ^{d−p} N_η");
        let (_, offset) = target.block_of(face).expect("top faces are selected");
        for (j, c) in coords.into_iter().enumerate() {
            let cur = chain[offset + j].clone();
            chain[offset + j] = cur + c;
        }
    }
    Ok(chain)
}

/// Outcome of the duality check on a weighted fan.
#[derive(Debug, Clone, Serialize)]
pub struct PdReport {
    /// The fan is pure and its fundamental chain is a cycle.
    pub balanced: bool,
    /// Borel–Moore homology vanishes in degrees `q ≠ dim`.
    pub vanishing_ok: bool,
    /// Nonvanishing offending groups `(p, q, group)`.
    pub vanishing_failures: Vec<(usize, usize, FinAbGroup)>,
    /// For each `p`, whether `F_p(0)^∨ → H^BM_{d−p,d}` is an isomorphism.
    pub cap_iso: Vec<(usize, bool)>,
    /// All checks passed.
    pub ok: bool,
}

/// Checks Poincaré duality for the weighted fan underlying `geom`.
pub fn verifies_pd(geom: &Geometry) -> Result<PdReport> {
    let fan = geom.fan();
    let d = fan.dim();
    let mut report = PdReport {
        balanced: false,
        vanishing_ok: true,
        vanishing_failures: Vec::new(),
        cap_iso: Vec::new(),
        ok: false,
    };
    if !fan.is_pure() {
        return Ok(report);
    }

    // Build one Borel–Moore complex per coefficient degree.
    let complexes: Vec<Complex> =
        (0..=d).map(|p| Complex::build(geom, p, Space::Fan, Supports::Closed)).collect();

    // Balancing: the fundamental chain is a cycle.
    let fund = fundamental_chain(geom, &complexes[d])?;
    report.balanced = if d == 0 {
        true
    } else {
        complexes[d].boundaries[d].apply_left(&fund).iter().all(Zero::is_zero)
    };
    if !report.balanced {
        return Ok(report);
    }

    for (p, complex) in complexes.iter().enumerate() {
        for q in 0..d {
            let g = complex.homology_at(q)?.group().clone();
            if !g.is_zero() {
                report.vanishing_ok = false;
                report.vanishing_failures.push((p, q, g));
            }
        }
    }

    for p in 0..=d {
        let origin = geom
            .faces()
            .index_of(&CompFace::finite(Cone::zero()))
            .expect("origin face");
        let a = geom.f_rank(p, origin);
        let target = &complexes[d - p];
        let top: HomologyGroup = target.homology_at(d)?;
        let rank = top.group().free_rank();
        debug_assert!(top.group().is_free(), "top Borel–Moore homology is a kernel");
        let mut rows = Vec::with_capacity(a);
        let mut all_cycles = true;
        for i in 0..a {
            let mut alpha = vec![BigInt::zero(); a];
            alpha[i] = BigInt::from(1);
            let chain = cap_fundamental(geom, p, &alpha, target)?;
            match top.class_of(&chain) {
                Some((_, free)) => rows.push(free),
                None => {
                    all_cycles = false;
                    break;
                }
            }
        }
        let iso = all_cycles
            && a == rank
            && (a == 0 || IntMat::from_rows(rank, rows).is_unimodular());
        report.cap_iso.push((p, iso));
    }

    report.ok =
        report.balanced && report.vanishing_ok && report.cap_iso.iter().all(|&(_, iso)| iso);
    Ok(report)
}
