//! Point-plane incidences in R^3.
//!
//! For a subset A of R the isosceles-triple equation
//! `2u·(v - w) + ||w|| - ||v|| = 0` over `u, v, w ∈ A × A` factors as
//!
//! ```text
//! (2u1, v2 - w2, w2^2 - v2^2) · (v1 - w1, 2u2, 1) = v1^2 - w1^2
//! ```
//!
//! so its solutions are exactly the incidences between the point family
//! built by [`build_points`] and the plane family built by [`build_planes`],
//! counted with multiplicity.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::chain_ring::{Ring, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::geometry::{distance_codes, Point, PointSet};

/// The plane `{x : a x1 + b x2 + c x3 = offset}`; one of a, b, c is a unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneR3 {
    normal: [RingElement; 3],
    offset: RingElement,
}

impl PlaneR3 {
    pub fn new(ring: &Ring, normal: [RingElement; 3], offset: RingElement) -> Result<Self> {
        for x in normal.iter().chain([&offset]) {
            ring.check(x)?;
        }
        if !normal.iter().any(|c| ring.valuation_code(c.code()) == 0) {
            return Err(Error::Validation(format!(
                "plane normal ({},{},{}) has no unit coordinate",
                normal[0], normal[1], normal[2]
            )));
        }
        Ok(PlaneR3 { normal, offset })
    }

    pub fn normal(&self) -> &[RingElement; 3] {
        &self.normal
    }

    pub fn offset(&self) -> &RingElement {
        &self.offset
    }

    pub fn spec(&self) -> RingSpec {
        self.offset.spec()
    }

    fn pivot(&self, ring: &Ring) -> usize {
        self.normal
            .iter()
            .position(|c| ring.valuation_code(c.code()) == 0)
            .expect("constructor guarantees a unit coordinate")
    }
}

/// `[a,b,c|o]`.
impl fmt::Display for PlaneR3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &RingElement| {
            if e.spec().has_compound_elements() {
                format!("[{e}]")
            } else {
                e.to_string()
            }
        };
        let [a, b, c] = &self.normal;
        write!(
            f,
            "[{},{},{}|{}]",
            wrap(a),
            wrap(b),
            wrap(c),
            wrap(&self.offset)
        )
    }
}

impl Serialize for PlaneR3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Points and planes of R^3 with multiplicities.
#[derive(Clone, Debug)]
pub struct IncidenceConfig {
    ring: Ring,
    points: BTreeMap<Point, u64>,
    planes: BTreeMap<PlaneR3, u64>,
    provenance: Option<Vec<RingElement>>,
}

impl IncidenceConfig {
    pub fn new(ring: &Ring) -> Self {
        IncidenceConfig {
            ring: ring.clone(),
            points: BTreeMap::new(),
            planes: BTreeMap::new(),
            provenance: None,
        }
    }

    pub fn add_point(&mut self, pt: Point, multiplicity: u64) -> Result<()> {
        if pt.dim() != 3 || pt.spec() != self.ring.spec() {
            return Err(Error::ParameterMismatch(format!(
                "{pt} is not a point of R^3 over {}",
                self.ring.spec()
            )));
        }
        if multiplicity == 0 {
            return Err(Error::Validation("multiplicity must be >= 1".into()));
        }
        *self.points.entry(pt).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn add_plane(&mut self, plane: PlaneR3, multiplicity: u64) -> Result<()> {
        if plane.spec() != self.ring.spec() {
            return Err(Error::ParameterMismatch(format!(
                "{plane} is not over {}",
                self.ring.spec()
            )));
        }
        if multiplicity == 0 {
            return Err(Error::Validation("multiplicity must be >= 1".into()));
        }
        *self.planes.entry(plane).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn points(&self) -> &BTreeMap<Point, u64> {
        &self.points
    }

    pub fn planes(&self) -> &BTreeMap<PlaneR3, u64> {
        &self.planes
    }

    /// The subset A this configuration was built from, if any.
    pub fn provenance(&self) -> Option<&[RingElement]> {
        self.provenance.as_deref()
    }

    pub fn distinct_points(&self) -> usize {
        self.points.len()
    }

    pub fn distinct_planes(&self) -> usize {
        self.planes.len()
    }
}

/// Incidences counted over supports (`distinct`) and with multiplicities (`weighted`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IncidenceCount {
    pub distinct: u64,
    pub weighted: u64,
}

impl std::ops::Add for IncidenceCount {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        IncidenceCount {
            distinct: self.distinct + o.distinct,
            weighted: self.weighted + o.weighted,
        }
    }
}

pub fn is_incident(ring: &Ring, pt: &Point, plane: &PlaneR3) -> Result<bool> {
    if pt.dim() != 3 {
        return Err(Error::ParameterMismatch(format!(
            "{pt} is not a point of R^3"
        )));
    }
    for c in pt.coords() {
        ring.check(c)?;
    }
    ring.check(plane.offset())?;
    let ar = ring.arith();
    let lhs = plane
        .normal
        .iter()
        .zip(pt.coords())
        .fold(0, |acc, (n, x)| ar.add(acc, ar.mul(n.code(), x.code())));
    Ok(lhs == plane.offset.code())
}

/// Exact incidence count. Points are bucketed by the two coordinates other
/// than each plane's first unit coordinate, so every plane solves for the
/// remaining coordinate once per bucket instead of testing every point.
pub fn count_incidences(cfg: &IncidenceConfig) -> IncidenceCount {
    let ring = cfg.ring();
    let ar = ring.arith();

    // index[j]: (x_k, x_l) -> (x_j -> multiplicity), {k, l} = {0,1,2} \ {j}
    type Bucket = HashMap<(u64, u64), HashMap<u64, u64>>;
    let pivots: HashSet<usize> = cfg.planes.keys().map(|pl| pl.pivot(ring)).collect();
    let mut index: [Option<Bucket>; 3] = [None, None, None];
    for &j in &pivots {
        let (k, l) = others(j);
        let mut bucket: Bucket = HashMap::new();
        for (pt, &mult) in &cfg.points {
            let c = pt.coords();
            bucket
                .entry((c[k].code(), c[l].code()))
                .or_default()
                .insert(c[j].code(), mult);
        }
        index[j] = Some(bucket);
    }

    let planes: Vec<(&PlaneR3, u64)> = cfg.planes.iter().map(|(p, &m)| (p, m)).collect();
    planes
        .par_iter()
        .map(|&(plane, plane_mult)| {
            let j = plane.pivot(ring);
            let (k, l) = others(j);
            let n = &plane.normal;
            let inv = ring.inv_unit_code(n[j].code());
            let bucket = index[j].as_ref().expect("index built for every pivot");
            let mut count = IncidenceCount::default();
            for (&(xk, xl), column) in bucket {
                let rest = ar.add(ar.mul(n[k].code(), xk), ar.mul(n[l].code(), xl));
                let xj = ar.mul(inv, ar.sub(plane.offset.code(), rest));
                if let Some(&pt_mult) = column.get(&xj) {
                    count.distinct += 1;
                    count.weighted += pt_mult * plane_mult;
                }
            }
            count
        })
        .reduce(IncidenceCount::default, |a, b| a + b)
}

fn others(j: usize) -> (usize, usize) {
    match j {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Reference double loop over all point/plane pairs.
pub fn count_incidences_naive(cfg: &IncidenceConfig) -> IncidenceCount {
    let ring = cfg.ring();
    let mut count = IncidenceCount::default();
    for (plane, &pm) in &cfg.planes {
        for (pt, &qm) in &cfg.points {
            if is_incident(ring, pt, plane).expect("config holds matching points and planes") {
                count.distinct += 1;
                count.weighted += pm * qm;
            }
        }
    }
    count
}

fn check_subset(ring: &Ring, a: &[RingElement]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::Validation("A must be nonempty".into()));
    }
    let mut seen = HashSet::new();
    for x in a {
        ring.check(x)?;
        if !seen.insert(x.code()) {
            return Err(Error::Validation(format!("A contains {x} twice")));
        }
    }
    Ok(())
}

/// Points `(2u1, v2 - w2, w2^2 - v2^2)` over `(u1, v2, w2) ∈ A^3`, with the
/// number of generating triples as multiplicity.
pub fn build_points(ring: &Ring, a: &[RingElement]) -> Result<BTreeMap<Point, u64>> {
    check_subset(ring, a)?;
    let ar = ring.arith();
    let two = ring.from_int(2).code();
    let mut out = BTreeMap::new();
    for u1 in a {
        let x = ar.mul(two, u1.code());
        for v2 in a {
            for w2 in a {
                let (v, w) = (v2.code(), w2.code());
                let y = ar.sub(v, w);
                let z = ar.sub(ar.square(w), ar.square(v));
                let pt = Point::new(vec![ring.wrap(x), ring.wrap(y), ring.wrap(z)])?;
                *out.entry(pt).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

/// Planes with normal `(v1 - w1, 2u2, 1)` and offset `v1^2 - w1^2` over
/// `(v1, w1, u2) ∈ A^3`, with multiplicity.
pub fn build_planes(ring: &Ring, a: &[RingElement]) -> Result<BTreeMap<PlaneR3, u64>> {
    check_subset(ring, a)?;
    let ar = ring.arith();
    let two = ring.from_int(2).code();
    let mut out = BTreeMap::new();
    for v1 in a {
        for w1 in a {
            let (v, w) = (v1.code(), w1.code());
            let n0 = ring.wrap(ar.sub(v, w));
            let offset = ring.wrap(ar.sub(ar.square(v), ar.square(w)));
            for u2 in a {
                let n1 = ring.wrap(ar.mul(two, u2.code()));
                let plane = PlaneR3::new(ring, [n0, n1, ring.one()], offset)?;
                *out.entry(plane).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

/// Both families for `A`, with `A` recorded as provenance.
pub fn build_config(ring: &Ring, a: &[RingElement]) -> Result<IncidenceConfig> {
    Ok(IncidenceConfig {
        ring: ring.clone(),
        points: build_points(ring, a)?,
        planes: build_planes(ring, a)?,
        provenance: Some(a.to_vec()),
    })
}

/// Number of ordered triples `(u, v, w) ∈ E^3` with `2u·(v - w) + ||w|| - ||v|| = 0`.
///
/// For a fixed `u` the equation says `2u·v - ||v|| = 2u·w - ||w||`, so the
/// count is the sum over `u` of squared bucket sizes of that linear form.
pub fn count_n(set: &PointSet) -> u64 {
    let ring = set.ring();
    let ar = ring.arith();
    let two = ring.from_int(2).code();
    let zero: Vec<u64> = vec![0; set.dim()];
    let norms: Vec<u64> = (0..set.len())
        .map(|i| distance_codes(&ar, set.point_codes(i), &zero))
        .collect();
    (0..set.len())
        .into_par_iter()
        .map(|i| {
            let u = set.point_codes(i);
            let mut keys: Vec<u64> = (0..set.len())
                .map(|j| {
                    let v = set.point_codes(j);
                    let dot = u
                        .iter()
                        .zip(v)
                        .fold(0, |acc, (&a, &b)| ar.add(acc, ar.mul(a, b)));
                    ar.sub(ar.mul(two, dot), norms[j])
                })
                .collect();
            keys.sort_unstable();
            keys.chunk_by(|a, b| a == b)
                .map(|run| (run.len() as u64).pow(2))
                .sum::<u64>()
        })
        .sum()
}

/// `#{y ∈ R : s·y = t}`: `q^v(s)` when `v(s) <= v(t)`, else 0.
pub fn solve_linear_count(ring: &Ring, s: &RingElement, t: &RingElement) -> Result<u64> {
    let vs = ring.valuation(s)?;
    let vt = ring.valuation(t)?;
    Ok(if vs <= vt { ring.q().pow(vs) } else { 0 })
}

/// Brute-force count of `s·y = t` over the whole ring.
pub fn solve_linear_count_exhaustive(ring: &Ring, s: &RingElement, t: &RingElement) -> Result<u64> {
    ring.check(s)?;
    ring.check(t)?;
    let all = ring.enumerate()?;
    Ok(all
        .iter()
        .filter(|y| ring.mul_code(s.code(), y.code()) == t.code())
        .count() as u64)
}

/// `nq·npi/q^r + q^(2r-1)·sqrt(nq·npi)`.
pub fn bound_rhs(nq: u64, npi: u64, spec: &RingSpec) -> f64 {
    let qr = spec.order() as f64;
    let lead = (spec.q() as f64).powi(2 * spec.r() as i32 - 1);
    (nq as f64) * (npi as f64) / qr + lead * (nq as f64).sqrt() * (npi as f64).sqrt()
}

/// Integer left side against [`bound_rhs`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lhs: u64,
    pub rhs: f64,
    pub holds: bool,
    /// Whether the float comparison was close enough to need the exact recheck.
    pub exact_recheck: bool,
}

/// Relative gap below which the comparison is redone in exact arithmetic.
pub const RECHECK_MARGIN: f64 = 1e-6;

/// Compares `lhs <= bound_rhs(nq, npi)`; near-ties are settled exactly via
/// `(lhs·q^r - nq·npi)^2 <= q^(6r-2)·nq·npi`.
pub fn check_bound(lhs: u64, nq: u64, npi: u64, spec: &RingSpec) -> BoundCheck {
    let rhs = bound_rhs(nq, npi, spec);
    let gap = (rhs - lhs as f64).abs() / rhs.abs().max(1.0);
    if gap > RECHECK_MARGIN {
        return BoundCheck {
            lhs,
            rhs,
            holds: (lhs as f64) < rhs,
            exact_recheck: false,
        };
    }
    BoundCheck {
        lhs,
        rhs,
        holds: bound_holds_exact(lhs, nq, npi, spec),
        exact_recheck: true,
    }
}

pub fn bound_holds_exact(lhs: u64, nq: u64, npi: u64, spec: &RingSpec) -> bool {
    let q = BigUint::from(spec.q());
    let r = spec.r();
    let scaled = BigUint::from(lhs) * q.pow(r);
    let prod = BigUint::from(nq) * BigUint::from(npi);
    if scaled <= prod {
        return true;
    }
    let diff = scaled - &prod;
    &diff * &diff <= q.pow(6 * r - 2) * prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::cartesian_square;

    fn ring(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    fn pt(r: &Ring, xs: &[i64]) -> Point {
        Point::new(xs.iter().map(|&x| r.from_int(x)).collect()).unwrap()
    }

    fn plane(r: &Ring, n: [i64; 3], o: i64) -> PlaneR3 {
        PlaneR3::new(r, n.map(|x| r.from_int(x)), r.from_int(o)).unwrap()
    }

    fn ints(r: &Ring, xs: &[i64]) -> Vec<RingElement> {
        xs.iter().map(|&x| r.from_int(x)).collect()
    }

    #[test]
    fn incidence_examples() {
        let z9 = ring("gr:p=3,k=2,m=1");
        assert!(is_incident(&z9, &pt(&z9, &[5, 7, 0]), &plane(&z9, [0, 0, 1], 0)).unwrap());
        assert!(!is_incident(&z9, &pt(&z9, &[0, 0, 0]), &plane(&z9, [1, 1, 1], 1)).unwrap());
        assert!(is_incident(&z9, &pt(&z9, &[1, 0, 0]), &plane(&z9, [3, 0, 1], 3)).unwrap());
    }

    #[test]
    fn planes_need_a_unit_coordinate() {
        let z9 = ring("gr:p=3,k=2,m=1");
        let n = [3, 6, 0].map(|x| z9.from_int(x));
        assert!(PlaneR3::new(&z9, n, z9.zero()).is_err());
    }

    #[test]
    fn counting_examples() {
        let z3 = ring("gr:p=3,k=1,m=1");
        let mut cfg = IncidenceConfig::new(&z3);
        assert_eq!(count_incidences(&cfg), IncidenceCount::default());
        for c in 0..27 {
            cfg.add_point(pt(&z3, &[c % 3, (c / 3) % 3, c / 9]), 1)
                .unwrap();
        }
        assert_eq!(count_incidences(&cfg), IncidenceCount::default());
        cfg.add_plane(plane(&z3, [0, 0, 1], 0), 1).unwrap();
        assert_eq!(count_incidences(&cfg).distinct, 9);
    }

    #[test]
    fn build_examples() {
        let z3 = ring("gr:p=3,k=1,m=1");
        let q = build_points(&z3, &[z3.zero()]).unwrap();
        assert_eq!(
            q.into_iter().collect::<Vec<_>>(),
            vec![(pt(&z3, &[0, 0, 0]), 1)]
        );
        let pi = build_planes(&z3, &[z3.zero()]).unwrap();
        assert_eq!(
            pi.into_iter().collect::<Vec<_>>(),
            vec![(plane(&z3, [0, 0, 1], 0), 1)]
        );

        let a = ints(&z3, &[0, 1]);
        let q = build_points(&z3, &a).unwrap();
        assert_eq!(q.values().sum::<u64>(), 8);
        assert_eq!(q[&pt(&z3, &[0, 0, 0])], 2);
        assert_eq!(build_planes(&z3, &a).unwrap().values().sum::<u64>(), 8);
        assert!(build_points(&z3, &[]).is_err());
    }

    #[test]
    fn weighted_incidences_match_n_on_small_square() {
        let z3 = ring("gr:p=3,k=1,m=1");
        let a = ints(&z3, &[0, 1]);
        let cfg = build_config(&z3, &a).unwrap();
        let e = cartesian_square(&z3, &a).unwrap();
        assert_eq!(count_n(&e), 24);
        assert_eq!(count_incidences(&cfg).weighted, 24);
        assert_eq!(count_incidences(&cfg), count_incidences_naive(&cfg));
    }

    #[test]
    fn count_n_single_point() {
        let z3 = ring("gr:p=3,k=1,m=1");
        let e = cartesian_square(&z3, &[z3.one()]).unwrap();
        assert_eq!(count_n(&e), 1);
    }

    #[test]
    fn linear_count_examples() {
        let z9 = ring("gr:p=3,k=2,m=1");
        let c = |s, t| solve_linear_count(&z9, &z9.from_int(s), &z9.from_int(t)).unwrap();
        assert_eq!(c(3, 6), 3);
        assert_eq!(c(3, 1), 0);
        assert_eq!(c(0, 0), 9);
        for t in 0..9 {
            assert_eq!(c(2, t), 1);
        }
    }

    #[test]
    fn bound_examples() {
        let s31: RingSpec = "gr:p=3,k=1,m=1".parse().unwrap();
        assert!((bound_rhs(9, 9, &s31) - 54.0).abs() < 1e-12);
        let s32: RingSpec = "gr:p=3,k=2,m=1".parse().unwrap();
        let expect = 64.0 / 9.0 + 27.0 * 8.0;
        assert!((bound_rhs(8, 8, &s32) - expect).abs() / expect < 1e-12);
        assert!(bound_rhs(9, 8, &s32) > bound_rhs(8, 8, &s32));
        assert!(bound_rhs(8, 9, &s32) > bound_rhs(8, 8, &s32));
    }

    #[test]
    fn exact_recheck_at_ties() {
        let s: RingSpec = "gr:p=3,k=1,m=1".parse().unwrap();
        let tie = check_bound(54, 9, 9, &s);
        assert!(tie.holds && tie.exact_recheck);
        let over = check_bound(55, 9, 9, &s);
        assert!(!over.holds);
        assert!(!bound_holds_exact(55, 9, 9, &s));
        assert!(check_bound(10, 9, 9, &s).holds);
    }
}
