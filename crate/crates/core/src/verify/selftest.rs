//! Built-in invariant suite over a fixed list of desk-scale rings.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{incidence_check, lemma_check, theorem_check};
use crate::chain_ring::{format_subset, Family, Ring, RingElement, RingSpec};
use crate::error::Result;
use crate::geometry::{cartesian_square, pin_histogram, Point, PointSet};
use crate::incidence::{
    build_config, count_incidences, count_incidences_naive, count_n, solve_linear_count,
    solve_linear_count_exhaustive,
};
use crate::rng::{task_stream, Stream};

/// `gr:3,1,1`, `gr:3,2,1`, `gr:3,1,2`, `gr:3,2,2`, `gr:5,1,1`, `gr:5,2,1`,
/// `gr:7,1,1`, `ec:3,2,1`, `ec:3,2,2`.
pub fn builtin_rings() -> Vec<RingSpec> {
    let gr = |p, k, m| RingSpec::galois(p, k, m).expect("built-in ring");
    let ec = |p, k, m| RingSpec::equal_char(p, k, m).expect("built-in ring");
    vec![
        gr(3, 1, 1),
        gr(3, 2, 1),
        gr(3, 1, 2),
        gr(3, 2, 2),
        gr(5, 1, 1),
        gr(5, 2, 1),
        gr(7, 1, 1),
        ec(3, 2, 1),
        ec(3, 2, 2),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub ring: RingSpec,
    pub pass: bool,
    pub detail: String,
    /// Smallest failing instance, when the check failed.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestResult {
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

pub const AXIOM_SAMPLES: usize = 1000;
pub const SUBSETS_PER_RING: usize = 20;

pub fn selftest(seed: u64) -> Result<SelftestResult> {
    let rings = builtin_rings();
    let per_ring: Vec<Vec<CheckRecord>> = rings
        .par_iter()
        .enumerate()
        .map(|(i, &spec)| ring_checks(spec, task_stream(seed, i as u64)))
        .collect::<Result<_>>()?;
    let checks: Vec<CheckRecord> = per_ring.into_iter().flatten().collect();
    let pass = checks.iter().all(|c| c.pass);
    Ok(SelftestResult { checks, pass })
}

struct Recorder {
    spec: RingSpec,
    out: Vec<CheckRecord>,
}

impl Recorder {
    fn record(&mut self, name: &str, detail: String, counterexample: Option<String>) {
        self.out.push(CheckRecord {
            name: name.into(),
            ring: self.spec,
            pass: counterexample.is_none(),
            detail,
            counterexample,
        });
    }
}

fn ring_checks(spec: RingSpec, mut rng: Stream) -> Result<Vec<CheckRecord>> {
    let ring = Ring::new(spec)?;
    let all = ring.enumerate()?;
    let mut rec = Recorder {
        spec,
        out: Vec::new(),
    };

    rec.record(
        "ring axioms",
        format!("{AXIOM_SAMPLES} random triples"),
        axioms(&ring, &mut rng),
    );

    let n = all.len() as u64;
    rec.record(
        "enumeration size",
        format!("|R| = {n}, q^r = {}", spec.order()),
        (n != spec.order() || all.iter().enumerate().any(|(i, e)| e.code() != i as u64))
            .then(|| format!("enumerated {n} elements")),
    );

    let units = all
        .iter()
        .filter(|a| ring.valuation_code(a.code()) == 0)
        .count() as u64;
    let expected_units = spec.order() - spec.order() / spec.q();
    rec.record(
        "unit count",
        format!("{units} units, expected {expected_units}"),
        (units != expected_units).then(|| format!("{units} units")),
    );

    let mut by_val = vec![0u64; spec.r() as usize + 1];
    for a in &all {
        by_val[ring.valuation_code(a.code()) as usize] += 1;
    }
    let ideal_bad = (0..=spec.r()).find(|&i| {
        let size: u64 = by_val[i as usize..].iter().sum();
        size != spec.q().pow(spec.r() - i)
    });
    rec.record(
        "ideal filtration sizes",
        "#{v >= i} = q^(r-i)".into(),
        ideal_bad.map(|i| format!("level {i}")),
    );

    rec.record(
        "valuation law",
        "v(ab) = min(v(a)+v(b), r)".into(),
        valuation_law(&ring, &all, &mut rng),
    );

    let residue_bad = all
        .iter()
        .find(|a| (ring.valuation_code(a.code()) == 0) != (ring.residue_code(a.code()) != 0));
    rec.record(
        "units have nonzero residue",
        "exhaustive".into(),
        residue_bad.map(|a| a.to_string()),
    );

    rec.record(
        "residue homomorphism",
        format!("{AXIOM_SAMPLES} random pairs"),
        residue_hom(&ring, &mut rng),
    );

    let two = ring.from_int(2);
    rec.record(
        "two is a unit",
        String::new(),
        (ring.valuation_code(two.code()) != 0).then(|| two.to_string()),
    );

    let inv_bad = all.iter().find(|a| {
        ring.valuation_code(a.code()) == 0
            && ring.inv_unit(a).ok() != ring.inv_unit_exhaustive(a).ok()
    });
    rec.record(
        "unit inverses agree",
        "Newton lift vs exhaustive search".into(),
        inv_bad.map(|a| a.to_string()),
    );

    if spec.family() == Family::Galois && spec.m() == 1 {
        let pk = spec.order();
        let bad = (0..pk)
            .flat_map(|a| (0..pk).map(move |b| (a, b)))
            .find(|&(a, b)| {
                ring.add_code(a, b) != (a + b) % pk || ring.mul_code(a, b) != a * b % pk
            });
        rec.record(
            "matches integers mod p^k",
            format!("exhaustive over Z/{pk}"),
            bad.map(|(a, b)| format!("a={a}, b={b}")),
        );
    }

    if spec.order() <= 81 {
        let mut bad = None;
        'outer: for s in &all {
            for t in &all {
                if solve_linear_count(&ring, s, t)? != solve_linear_count_exhaustive(&ring, s, t)? {
                    bad = Some(format!("s={s}, t={t}"));
                    break 'outer;
                }
            }
        }
        rec.record(
            "linear solution count",
            "exhaustive over (s, t)".into(),
            bad,
        );
    }

    counting_checks(&ring, &all, &mut rng, &mut rec)?;

    if spec == RingSpec::galois(3, 1, 1)? || spec == RingSpec::galois(3, 2, 1)? {
        let rep = theorem_check(&ring, &all)?;
        let expected = if spec.r() == 1 { 3 } else { 7 };
        rec.record(
            "pinned bound spot value",
            format!("A = R: max_pinned {} ratio {}", rep.max_pinned, rep.ratio),
            (rep.max_pinned != expected).then(|| format!("A = R, pin {}", rep.best_pin)),
        );
    }

    Ok(rec.out)
}

fn axioms(ring: &Ring, rng: &mut Stream) -> Option<String> {
    let (zero, one) = (ring.zero(), ring.one());
    for _ in 0..AXIOM_SAMPLES {
        let [a, b, c] = [(); 3].map(|_| ring.random_element(rng));
        let add = |x: &RingElement, y: &RingElement| ring.add(x, y).expect("same ring");
        let mul = |x: &RingElement, y: &RingElement| ring.mul(x, y).expect("same ring");
        let ok = add(&add(&a, &b), &c) == add(&a, &add(&b, &c))
            && mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
            && add(&a, &b) == add(&b, &a)
            && mul(&a, &b) == mul(&b, &a)
            && mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c))
            && add(&a, &zero) == a
            && mul(&a, &one) == a
            && mul(&a, &zero) == zero
            && add(&a, &ring.neg(&a).expect("same ring")) == zero;
        if !ok {
            return Some(format!("a={a}, b={b}, c={c}"));
        }
    }
    None
}

fn valuation_law(ring: &Ring, all: &[RingElement], rng: &mut Stream) -> Option<String> {
    let r = ring.r();
    let law = |a: &RingElement, b: &RingElement| {
        let v = ring.valuation_code(ring.mul_code(a.code(), b.code()));
        v == (ring.valuation_code(a.code()) + ring.valuation_code(b.code())).min(r)
    };
    if all.len() <= 81 {
        for a in all {
            for b in all {
                if !law(a, b) {
                    return Some(format!("a={a}, b={b}"));
                }
            }
        }
    } else {
        for _ in 0..AXIOM_SAMPLES {
            let (a, b) = (ring.random_element(rng), ring.random_element(rng));
            if !law(&a, &b) {
                return Some(format!("a={a}, b={b}"));
            }
        }
    }
    None
}

fn residue_hom(ring: &Ring, rng: &mut Stream) -> Option<String> {
    let f = ring.residue_field();
    for _ in 0..AXIOM_SAMPLES {
        let (a, b) = (ring.random_element(rng), ring.random_element(rng));
        let res = |x: &RingElement| ring.residue(x).expect("same ring");
        let sum_ok = res(&ring.add(&a, &b).ok()?) == f.add(&res(&a), &res(&b)).ok()?;
        let prod_ok = res(&ring.mul(&a, &b).ok()?) == f.mul(&res(&a), &res(&b)).ok()?;
        if !(sum_ok && prod_ok) {
            return Some(format!("a={a}, b={b}"));
        }
    }
    None
}

fn random_subset(all: &[RingElement], size: usize, rng: &mut Stream) -> Vec<RingElement> {
    let mut pool = all.to_vec();
    for i in 0..size {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    let mut a = pool[..size].to_vec();
    a.sort();
    a
}

/// Triple loop over E^3 evaluating `2u·(v - w) + ||w|| - ||v||` directly.
fn count_n_bruteforce(ring: &Ring, set: &PointSet) -> u64 {
    let pts = set.points();
    let two = ring.from_int(2);
    let norm = |p: &Point| {
        p.coords().iter().fold(ring.zero(), |acc, c| {
            ring.add(&acc, &ring.mul(c, c).expect("same ring"))
                .expect("same ring")
        })
    };
    let norms: Vec<RingElement> = pts.iter().map(norm).collect();
    let mut n = 0;
    for u in pts {
        for (v, nv) in pts.iter().zip(&norms) {
            for (w, nw) in pts.iter().zip(&norms) {
                let mut acc = ring.sub(nw, nv).expect("same ring");
                for i in 0..u.dim() {
                    let diff = ring.sub(&v.coords()[i], &w.coords()[i]).expect("same ring");
                    let term = ring.mul(&two, &ring.mul(&u.coords()[i], &diff).expect("same ring"));
                    acc = ring
                        .add(&acc, &term.expect("same ring"))
                        .expect("same ring");
                }
                if acc.is_zero() {
                    n += 1;
                }
            }
        }
    }
    n
}

fn counting_checks(
    ring: &Ring,
    all: &[RingElement],
    rng: &mut Stream,
    rec: &mut Recorder,
) -> Result<()> {
    let max_size = all.len().min(8);
    let mut failures: BTreeMap<&str, String> = BTreeMap::new();
    let mut note = |name: &'static str, msg: String| {
        failures.entry(name).or_insert(msg);
    };
    for _ in 0..SUBSETS_PER_RING {
        let size = rng.random_range(1..=max_size);
        let a = random_subset(all, size, rng);
        let square = cartesian_square(ring, &a)?;
        let n = count_n(&square);
        let hist_sum: u64 = square
            .points()
            .iter()
            .map(|u| pin_histogram(u, &square).map(|h| h.sum_of_squares()))
            .sum::<Result<u64>>()?;
        if n != hist_sum || (square.len() <= 36 && n != count_n_bruteforce(ring, &square)) {
            note(
                "isosceles count identity",
                format!("A = {}", format_subset(&a)),
            );
        }
        let cfg = build_config(ring, &a)?;
        let fast = count_incidences(&cfg);
        if fast.weighted != n || fast != count_incidences_naive(&cfg) {
            note(
                "weighted incidences equal N",
                format!("A = {}", format_subset(&a)),
            );
        }
        let inc = incidence_check(ring, &a)?;
        if !inc.incidence_bound.holds {
            note("incidence bound", format!("A = {}", format_subset(&a)));
        }
        if !inc.chain.holds {
            note("proof-chain bound", format!("A = {}", format_subset(&a)));
        }
        if !inc.size_claim_holds {
            note("|Q| = |Pi| <= |A|^3", format!("A = {}", format_subset(&a)));
        }
        let lemma = lemma_check(&square)?;
        if !lemma.pass {
            note(
                "isosceles lemma",
                format!("E = AxA, A = {}, pin {}", format_subset(&a), lemma.witness),
            );
        }
    }
    // non-Cartesian point sets
    for _ in 0..SUBSETS_PER_RING {
        let size = rng.random_range(1..=20.min(all.len() * all.len()));
        let mut set = PointSet::new(ring, 2)?;
        while set.len() < size {
            set.insert(Point::new(vec![
                ring.random_element(rng),
                ring.random_element(rng),
            ])?)?;
        }
        let lemma = lemma_check(&set)?;
        if !lemma.pass {
            let pts: Vec<String> = set.points().iter().map(Point::to_string).collect();
            note(
                "isosceles lemma",
                format!("E = {{{}}}, pin {}", pts.join(" "), lemma.witness),
            );
        }
    }
    for name in [
        "isosceles count identity",
        "weighted incidences equal N",
        "incidence bound",
        "proof-chain bound",
        "|Q| = |Pi| <= |A|^3",
        "isosceles lemma",
    ] {
        rec.record(
            name,
            format!("{SUBSETS_PER_RING} random subsets"),
            failures.get(name).cloned(),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_and_replays() {
        let a = selftest(3).unwrap();
        assert!(
            a.pass,
            "{:#?}",
            a.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert_eq!(a, selftest(3).unwrap());
    }

    #[test]
    fn brute_force_n_matches_on_small_square() {
        let z3 = Ring::parse("gr:p=3,k=1,m=1").unwrap();
        let e = cartesian_square(&z3, &[z3.zero(), z3.one()]).unwrap();
        assert_eq!(count_n_bruteforce(&z3, &e), 24);
    }
}
