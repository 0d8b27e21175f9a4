//! Verification harness for the pinned-distance results.
//!
//! * [`lemma_check`]: `max_u |Δ_u(E)| >= |E|^3 / N(E)` for any E ⊂ R^2.
//! * [`theorem_check`]: measures `max_u |Δ_u(A×A)|` against
//!   `min(q^r, |A|^3 / q^(2r-1))` and reports the ratio (the implied constant).
//! * [`incidence_check`]: the point/plane reduction for A and the incidence
//!   inequality on it.
//!
//! Sweeps over many subsets live in [`sweep`]; the built-in invariant suite in
//! [`selftest`].

pub mod selftest;
pub mod sweep;

use serde::Serialize;

use crate::chain_ring::{Ring, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::geometry::{best_pin, cartesian_profile, cartesian_square, Point, PointSet};
use crate::incidence::{
    build_config, check_bound, count_incidences, count_n, BoundCheck, IncidenceCount,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaRecord {
    pub ring: RingSpec,
    pub size: usize,
    /// Number of isosceles triples N(E).
    pub n: u64,
    /// `|E|^3 / N`.
    pub lower_bound: f64,
    pub max_pinned: usize,
    pub witness: Point,
    pub pass: bool,
}

pub fn lemma_check(set: &PointSet) -> Result<LemmaRecord> {
    if set.is_empty() {
        return Err(Error::Validation("E must be nonempty".into()));
    }
    if set.dim() != 2 {
        return Err(Error::Validation(format!(
            "E must lie in R^2, got dimension {}",
            set.dim()
        )));
    }
    let n = count_n(set);
    let (idx, max_pinned) = best_pin(set);
    let size = set.len();
    let cube = (size as u128).pow(3);
    Ok(LemmaRecord {
        ring: set.ring().spec(),
        size,
        n,
        lower_bound: cube as f64 / n as f64,
        max_pinned,
        witness: set.points()[idx].clone(),
        pass: max_pinned as u128 * n as u128 >= cube,
    })
}

/// One measurement of the pinned-distance bound for A × A.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub ring: RingSpec,
    pub subset: Vec<RingElement>,
    pub subset_size: usize,
    /// `min(q^r, |A|^3 / q^(2r-1))`.
    pub bound: f64,
    pub best_pin: Point,
    pub max_pinned: usize,
    pub ratio: f64,
    /// `|A| >= q^(r - 1/3)`, decided as `|A|^3 >= q^(3r-1)`.
    pub threshold_met: bool,
    /// N(A × A).
    pub isosceles_triples: u64,
    /// `max_pinned * N >= |A×A|^3`.
    pub lemma_holds: bool,
    /// `N <= |A|^6 / q^r + q^(2r-1) |A|^3`.
    pub chain: BoundCheck,
}

pub fn theorem_bound(spec: &RingSpec, subset_size: usize) -> f64 {
    let qr = spec.order() as f64;
    let denom = (spec.q() as f64).powi(2 * spec.r() as i32 - 1);
    qr.min((subset_size as f64).powi(3) / denom)
}

pub fn threshold_met(spec: &RingSpec, subset_size: usize) -> bool {
    let lhs = (subset_size as u128).pow(3);
    let exp = 3 * spec.r() - 1;
    match (spec.q() as u128).checked_pow(exp) {
        Some(rhs) => lhs >= rhs,
        None => false,
    }
}

pub fn theorem_check(ring: &Ring, a: &[RingElement]) -> Result<TheoremReport> {
    let prof = cartesian_profile(ring, a)?;
    let spec = ring.spec();
    let (idx, max_pinned, n) = (prof.best_pin, prof.max_pinned, prof.isosceles_triples);
    let bound = theorem_bound(&spec, a.len());
    let e = (a.len() * a.len()) as u128;
    let a3 = (a.len() as u64).pow(3);
    Ok(TheoremReport {
        ring: spec,
        subset: a.to_vec(),
        subset_size: a.len(),
        bound,
        best_pin: Point::new(vec![a[idx / a.len()], a[idx % a.len()]])?,
        max_pinned,
        ratio: max_pinned as f64 / bound,
        threshold_met: threshold_met(&spec, a.len()),
        isosceles_triples: n,
        lemma_holds: max_pinned as u128 * n as u128 >= e.pow(3),
        chain: check_bound(n, a3, a3, &spec),
    })
}

/// True iff the threshold is not met or `max_pinned >= c·q^r`.
pub fn positive_proportion_check(report: &TheoremReport, c: f64) -> bool {
    !report.threshold_met || report.max_pinned as f64 >= c * report.ring.order() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IncidenceReport {
    pub ring: RingSpec,
    pub subset: Vec<RingElement>,
    pub distinct_points: usize,
    pub distinct_planes: usize,
    pub incidences: IncidenceCount,
    /// N(A × A) from the isosceles-triple equation.
    pub isosceles_triples: u64,
    /// Weighted incidences equal N.
    pub identity_holds: bool,
    /// `|Q| = |Π| <= |A|^3`.
    pub size_claim_holds: bool,
    /// Distinct incidences against the incidence bound on distinct |Q|, |Π|.
    pub incidence_bound: BoundCheck,
    /// N against the same bound at |Q| = |Π| = |A|^3.
    pub chain: BoundCheck,
    pub pass: bool,
}

pub fn incidence_check(ring: &Ring, a: &[RingElement]) -> Result<IncidenceReport> {
    let cfg = build_config(ring, a)?;
    let spec = ring.spec();
    let incidences = count_incidences(&cfg);
    let n = count_n(&cartesian_square(ring, a)?);
    let (nq, npi) = (cfg.distinct_points(), cfg.distinct_planes());
    let a3 = (a.len() as u64).pow(3);
    let identity_holds = incidences.weighted == n;
    let size_claim_holds = nq == npi && nq as u64 <= a3;
    let incidence_bound = check_bound(incidences.distinct, nq as u64, npi as u64, &spec);
    let chain = check_bound(n, a3, a3, &spec);
    Ok(IncidenceReport {
        ring: spec,
        subset: a.to_vec(),
        distinct_points: nq,
        distinct_planes: npi,
        incidences,
        isosceles_triples: n,
        identity_holds,
        size_claim_holds,
        incidence_bound,
        chain,
        pass: identity_holds && size_claim_holds && incidence_bound.holds && chain.holds,
    })
}
