//! Points of R^d, the quadratic distance form and pinned distance sets.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::chain_ring::{Arith, Ring, RingElement, RingSpec};
use crate::error::{Error, Result};

/// A point of R^d.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<RingElement>,
}

impl Point {
    pub fn new(coords: Vec<RingElement>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::Validation("a point needs at least one coordinate".into()))?;
        if let Some(bad) = coords.iter().find(|c| c.spec() != first.spec()) {
            return Err(Error::ParameterMismatch(format!(
                "coordinates over {} and {}",
                first.spec(),
                bad.spec()
            )));
        }
        Ok(Point { coords })
    }

    pub fn coords(&self) -> &[RingElement] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn spec(&self) -> RingSpec {
        self.coords[0].spec()
    }

    pub(crate) fn codes(&self) -> impl Iterator<Item = u64> + '_ {
        self.coords.iter().map(RingElement::code)
    }
}

/// `(a,b)`; coordinates with several components are bracketed: `([1,2],[0,1])`.
impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compound = self.spec().has_compound_elements();
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if compound {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        f.write_str(")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A duplicate-free set of points of R^d, kept in insertion order.
#[derive(Clone, Debug)]
pub struct PointSet {
    ring: Ring,
    dim: usize,
    points: Vec<Point>,
    members: HashSet<Point>,
    /// Row-major coordinate codes, `dim` per point.
    codes: Vec<u64>,
}

impl PointSet {
    pub fn new(ring: &Ring, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Validation("dimension must be >= 1".into()));
        }
        Ok(PointSet {
            ring: ring.clone(),
            dim,
            points: Vec::new(),
            members: HashSet::new(),
            codes: Vec::new(),
        })
    }

    /// Builds a set, rejecting duplicate points.
    pub fn from_points(
        ring: &Ring,
        dim: usize,
        points: impl IntoIterator<Item = Point>,
    ) -> Result<Self> {
        let mut set = PointSet::new(ring, dim)?;
        for pt in points {
            if !set.insert(pt.clone())? {
                return Err(Error::Validation(format!("duplicate point {pt}")));
            }
        }
        Ok(set)
    }

    /// Adds `pt`; returns `false` if it was already present.
    pub fn insert(&mut self, pt: Point) -> Result<bool> {
        self.check_point(&pt)?;
        if self.members.contains(&pt) {
            return Ok(false);
        }
        self.codes.extend(pt.codes());
        self.members.insert(pt.clone());
        self.points.push(pt);
        Ok(true)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, pt: &Point) -> bool {
        self.members.contains(pt)
    }

    pub(crate) fn point_codes(&self, i: usize) -> &[u64] {
        &self.codes[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn check_point(&self, pt: &Point) -> Result<()> {
        if pt.spec() != self.ring.spec() || pt.dim() != self.dim {
            return Err(Error::ParameterMismatch(format!(
                "point {pt} (dim {} over {}) vs set of dim {} over {}",
                pt.dim(),
                pt.spec(),
                self.dim,
                self.ring.spec()
            )));
        }
        Ok(())
    }
}

/// Per-pin distance counts `r_u(t) = #{v in E : ||u - v|| = t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PinHistogram {
    pub pin: Point,
    pub counts: BTreeMap<RingElement, u64>,
}

impl PinHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum_t r_u(t)^2`, the number of pairs (v, w) equidistant from the pin.
    pub fn sum_of_squares(&self) -> u64 {
        self.counts.values().map(|c| c * c).sum()
    }
}

#[inline]
pub(crate) fn distance_codes(ar: &Arith<'_>, u: &[u64], v: &[u64]) -> u64 {
    u.iter()
        .zip(v)
        .fold(0, |acc, (&a, &b)| ar.add(acc, ar.square(ar.sub(a, b))))
}

/// `||u - v|| = sum_i (u_i - v_i)^2`, evaluated in R.
pub fn distance(ring: &Ring, u: &Point, v: &Point) -> Result<RingElement> {
    for pt in [u, v] {
        if pt.spec() != ring.spec() {
            return Err(Error::ParameterMismatch(format!(
                "point {pt} is not over {}",
                ring.spec()
            )));
        }
    }
    if u.dim() != v.dim() {
        return Err(Error::ParameterMismatch(format!(
            "dimensions {} and {} differ",
            u.dim(),
            v.dim()
        )));
    }
    let ar = ring.arith();
    let codes_u: Vec<u64> = u.codes().collect();
    let codes_v: Vec<u64> = v.codes().collect();
    Ok(ring.wrap(distance_codes(&ar, &codes_u, &codes_v)))
}

/// Componentwise `pt + offset`.
pub fn translate(ring: &Ring, pt: &Point, offset: &Point) -> Result<Point> {
    if pt.dim() != offset.dim() {
        return Err(Error::ParameterMismatch("dimensions differ".into()));
    }
    let coords = pt
        .coords()
        .iter()
        .zip(offset.coords())
        .map(|(a, b)| ring.add(a, b))
        .collect::<Result<Vec<_>>>()?;
    Point::new(coords)
}

/// All pairwise distances of `set` (including 0).
pub fn distance_set(set: &PointSet) -> Result<BTreeSet<RingElement>> {
    if set.is_empty() {
        return Err(Error::Validation(
            "distance set of an empty point set".into(),
        ));
    }
    let ring = set.ring();
    let ar = ring.arith();
    let n = set.len();
    let partial: Vec<BTreeSet<u64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let u = set.point_codes(i);
            (i..n)
                .map(|j| distance_codes(&ar, u, set.point_codes(j)))
                .collect()
        })
        .collect();
    Ok(partial
        .into_iter()
        .flatten()
        .map(|c| ring.wrap(c))
        .collect())
}

fn pin_codes(set: &PointSet, pin: &Point) -> Result<Vec<u64>> {
    set.check_point(pin)?;
    Ok(pin.codes().collect())
}

/// `{ ||u - v|| : v in E }`. The pin need not belong to the set.
pub fn pinned_set(pin: &Point, set: &PointSet) -> Result<BTreeSet<RingElement>> {
    Ok(pin_histogram(pin, set)?.counts.into_keys().collect())
}

pub fn pin_histogram(pin: &Point, set: &PointSet) -> Result<PinHistogram> {
    let u = pin_codes(set, pin)?;
    let ring = set.ring();
    let ar = ring.arith();
    let mut counts = BTreeMap::new();
    for i in 0..set.len() {
        let t = distance_codes(&ar, &u, set.point_codes(i));
        *counts.entry(ring.wrap(t)).or_insert(0u64) += 1;
    }
    Ok(PinHistogram {
        pin: pin.clone(),
        counts,
    })
}

/// A x A as a subset of R^2, in row-major order over `a`.
pub fn cartesian_square(ring: &Ring, a: &[RingElement]) -> Result<PointSet> {
    check_factor(ring, a)?;
    let mut set = PointSet::new(ring, 2)?;
    for x in a {
        for y in a {
            set.insert(Point::new(vec![*x, *y])?)?;
        }
    }
    Ok(set)
}

fn check_factor(ring: &Ring, a: &[RingElement]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::Validation("A must be nonempty".into()));
    }
    let mut seen = HashSet::new();
    for x in a {
        ring.check(x)?;
        if !seen.insert(x) {
            return Err(Error::Validation(format!("A contains {x} twice")));
        }
    }
    Ok(())
}

/// Pinned-distance data of `A × A` without materializing the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartesianProfile {
    /// Row-major index into `A × A` of the first pin attaining `max_pinned`.
    pub best_pin: usize,
    pub max_pinned: usize,
    /// N(A × A) = sum over pins of the squared pinned-histogram entries.
    pub isosceles_triples: u64,
}

/// Same answers as `best_pin` and `count_n` on [`cartesian_square`], faster.
///
/// For `u = (a, b)` the distance to `(x, y)` is `(a-x)^2 + (b-y)^2`, so the
/// pinned histogram at `u` is the additive convolution of the one-dimensional
/// profiles `r_a(s) = #{x in A : (a-x)^2 = s}` and `r_b`. Each profile has at
/// most `min(|A|, #squares)` nonzero entries.
pub fn cartesian_profile(ring: &Ring, a: &[RingElement]) -> Result<CartesianProfile> {
    check_factor(ring, a)?;
    let order = ring.order();
    if order > STAMP_LIMIT {
        let square = cartesian_square(ring, a)?;
        let (best_pin, max_pinned) = best_pin(&square);
        return Ok(CartesianProfile {
            best_pin,
            max_pinned,
            isosceles_triples: crate::incidence::count_n(&square),
        });
    }
    let ar = ring.arith();
    let profiles: Vec<Vec<(u64, u64)>> = a
        .iter()
        .map(|x| {
            let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
            for y in a {
                *counts
                    .entry(ar.square(ar.sub(x.code(), y.code())))
                    .or_insert(0) += 1;
            }
            counts.into_iter().collect()
        })
        .collect();
    let n = a.len();
    let rows: Vec<(Vec<usize>, u64)> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u64; order as usize], Vec::new()),
            |(hist, touched), i| {
                let mut sizes = Vec::with_capacity(n);
                let mut sumsq = 0u64;
                for pj in &profiles {
                    for &(s, c) in &profiles[i] {
                        for &(t, d) in pj {
                            let slot = ar.add(s, t) as usize;
                            if hist[slot] == 0 {
                                touched.push(slot);
                            }
                            hist[slot] += c * d;
                        }
                    }
                    sizes.push(touched.len());
                    for &slot in touched.iter() {
                        sumsq += hist[slot] * hist[slot];
                        hist[slot] = 0;
                    }
                    touched.clear();
                }
                (sizes, sumsq)
            },
        )
        .collect();
    let mut best = (0, 0);
    let mut total = 0u64;
    for (i, (sizes, sumsq)) in rows.iter().enumerate() {
        total += sumsq;
        for (j, &s) in sizes.iter().enumerate() {
            if s > best.1 {
                best = (i * n + j, s);
            }
        }
    }
    Ok(CartesianProfile {
        best_pin: best.0,
        max_pinned: best.1,
        isosceles_triples: total,
    })
}

/// Counts distinct values from a stream of codes below `order`.
pub(crate) struct DistinctCounter {
    stamps: Option<Vec<u32>>,
    hashed: HashSet<u64>,
    generation: u32,
    count: usize,
}

const STAMP_LIMIT: u64 = 1 << 22;

impl DistinctCounter {
    pub(crate) fn new(order: u64) -> Self {
        DistinctCounter {
            stamps: (order <= STAMP_LIMIT).then(|| vec![0; order as usize]),
            hashed: HashSet::new(),
            generation: 0,
            count: 0,
        }
    }

    pub(crate) fn reset(&mut self) {
        self.count = 0;
        self.hashed.clear();
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            if let Some(s) = self.stamps.as_mut() {
                s.iter_mut().for_each(|x| *x = 0);
            }
            self.generation = 1;
        }
    }

    #[inline]
    pub(crate) fn insert(&mut self, code: u64) {
        match self.stamps.as_mut() {
            Some(s) => {
                let slot = &mut s[code as usize];
                if *slot != self.generation {
                    *slot = self.generation;
                    self.count += 1;
                }
            }
            None => {
                if self.hashed.insert(code) {
                    self.count += 1;
                }
            }
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }
}

/// `|Δ_u(E)|` for every pin `u` of `pins`, computed in parallel.
pub(crate) fn pinned_sizes(pins: &PointSet, set: &PointSet) -> Vec<usize> {
    let ring = set.ring();
    let ar = ring.arith();
    let order = ring.order();
    (0..pins.len())
        .into_par_iter()
        .map_init(
            || DistinctCounter::new(order),
            |counter, i| {
                counter.reset();
                let u = pins.point_codes(i);
                for j in 0..set.len() {
                    counter.insert(distance_codes(&ar, u, set.point_codes(j)));
                }
                counter.count()
            },
        )
        .collect()
}

/// Index of the first pin attaining the largest pinned distance set, and that size.
pub(crate) fn best_pin(set: &PointSet) -> (usize, usize) {
    let sizes = pinned_sizes(set, set);
    let mut best = (0, 0);
    for (i, &s) in sizes.iter().enumerate() {
        if s > best.1 {
            best = (i, s);
        }
    }
    best
}
