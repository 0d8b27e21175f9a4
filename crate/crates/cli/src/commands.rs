//! Subcommand execution. Each runner returns an [`Outcome`] that the
//! renderer turns into JSON, CSV or human-readable text.

use std::fmt::Write as _;

use pinned_core::chain_ring::format_subset;
use pinned_core::geometry::cartesian_square;
use pinned_core::rng::{derive_seed, seeded};
use pinned_core::verify::selftest::selftest;
use pinned_core::verify::sweep::{
    run_sweep, sample_subset, summarize, SweepConfig, SweepEntry, MAX_HARNESS_ORDER,
};
use pinned_core::verify::{
    incidence_check, lemma_check, theorem_check, IncidenceReport, LemmaRecord,
};
use pinned_core::{Error, Family, Point, PointSet, Result, Ring, RingElement, RingSpec};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Invocation;

/// A failed check with enough context to rerun it.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub counterexample: String,
    pub reproduce: String,
}

pub struct Outcome {
    pub reports: Vec<Value>,
    pub summary: Value,
    pub pass: bool,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub human: String,
    pub failures: Vec<Failure>,
}

/// Failures listed individually; the rest are only counted.
const MAX_LISTED_FAILURES: usize = 10;

pub fn run(inv: &Invocation) -> Result<Outcome> {
    match inv.command {
        "ring-info" => ring_info(inv),
        "verify-lemma" => verify_lemma(inv),
        "verify-incidence" => verify_incidence(inv),
        "verify-theorem" => verify_theorem(inv),
        "sweep" => sweep(inv),
        "selftest" => run_selftest(inv),
        other => Err(Error::Validation(format!("unknown command {other}"))),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn opt(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "[PASS]"
    } else {
        "[FAIL]"
    }
}

fn quote(s: &str) -> String {
    format!("'{s}'")
}

fn harness_ring(text: &str) -> Result<Ring> {
    let spec: RingSpec = text.parse()?;
    if spec.order() > MAX_HARNESS_ORDER {
        return Err(Error::Capacity(format!(
            "{spec} has order {}, harness limit is {MAX_HARNESS_ORDER}",
            spec.order()
        )));
    }
    Ring::new(spec)
}

fn parse_set(ring: &Ring, text: &str) -> Result<Vec<RingElement>> {
    if text.trim() == "all" {
        ring.enumerate()
    } else {
        ring.parse_subset(text)
    }
}

/// Either one explicit subset or `trials` seeded samples of one size.
enum Source {
    Explicit(Vec<RingElement>),
    Sampled {
        size: usize,
        trials: usize,
        seed: u64,
    },
}

fn source(inv: &Invocation, ring: &Ring, max_size: u64) -> Result<Source> {
    if let Some(text) = &inv.set {
        return Ok(Source::Explicit(parse_set(ring, text)?));
    }
    let (Some(&size), Some(seed)) = (inv.sizes.first(), inv.seed) else {
        return Err(Error::Validation(
            "give --set, or --size with --seed".into(),
        ));
    };
    if size == 0 || size as u64 > max_size {
        return Err(Error::parse(
            size.to_string(),
            format!("--size must lie in [1, {max_size}]"),
        ));
    }
    let trials = inv.trials.unwrap_or(1);
    if trials == 0 {
        return Err(Error::parse("0", "--trials must be at least 1"));
    }
    Ok(Source::Sampled { size, trials, seed })
}

/// Subset for sampled trial `i`: the same derivation the sweep uses.
fn sampled_subset(ring: &Ring, size: usize, seed: u64, i: usize) -> (u64, Vec<RingElement>) {
    let task_seed = derive_seed(seed, i as u64);
    let a = sample_subset(ring.order(), size, task_seed)
        .into_iter()
        .map(|c| ring.from_code(c).expect("sampled code is in range"))
        .collect();
    (task_seed, a)
}

fn sampled_command(
    inv: &Invocation,
    spec: RingSpec,
    size: usize,
    trials: usize,
    seed: u64,
) -> String {
    format!(
        "pinned {} --ring {spec} --size {size} --trials {trials} --seed {seed}",
        inv.command
    )
}

fn set_command(command: &str, spec: RingSpec, a: &[RingElement]) -> String {
    format!(
        "pinned {command} --ring {spec} --set {}",
        quote(&format_subset(a))
    )
}

fn summary_value(mut summary: Value, failures: &[Failure], pass: bool) -> Value {
    let obj = summary.as_object_mut().expect("summary is an object");
    obj.insert("failures".into(), to_value(&failures));
    obj.insert("pass".into(), Value::Bool(pass));
    summary
}

/// `[1, 0, 1]` → `x^2 + 1` (ascending coefficients).
fn poly_text(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn ring_info(inv: &Invocation) -> Result<Outcome> {
    let spec: RingSpec = inv.rings[0].parse()?;
    let ring = Ring::new(spec)?;
    let family = match spec.family() {
        Family::Galois => "galois",
        Family::EqualChar => "equal-characteristic",
    };
    let uniformizer = ring.uniformizer();
    let modulus = match spec.family() {
        Family::Galois => poly_text(ring.galois_modulus()),
        Family::EqualChar => format!("t^{}", spec.k()),
    };
    let residue_modulus = poly_text(ring.residue_field().modulus());
    let report = json!({
        "ring": spec,
        "family": family,
        "p": spec.p(),
        "k": spec.k(),
        "m": spec.m(),
        "q": spec.q(),
        "r": spec.r(),
        "order": spec.order(),
        "uniformizer": uniformizer,
        "units": ring.unit_count(),
        "modulus": modulus,
        "residue_modulus": residue_modulus,
    });
    let mut human = String::new();
    writeln!(human, "ring {spec} ({family})").unwrap();
    writeln!(human, "  q={}", spec.q()).unwrap();
    writeln!(human, "  r={}", spec.r()).unwrap();
    writeln!(human, "  order={}", spec.order()).unwrap();
    writeln!(human, "  uniformizer={uniformizer}").unwrap();
    writeln!(human, "  units={}", ring.unit_count()).unwrap();
    writeln!(human, "  modulus={modulus}").unwrap();
    writeln!(human, "  residue field modulus={residue_modulus}").unwrap();
    Ok(Outcome {
        reports: vec![report],
        summary: summary_value(json!({ "reports": 1 }), &[], true),
        pass: true,
        csv_header: vec!["ring", "q", "r", "order", "uniformizer", "units"],
        csv_rows: vec![vec![
            spec.to_string(),
            spec.q().to_string(),
            spec.r().to_string(),
            spec.order().to_string(),
            uniformizer.to_string(),
            ring.unit_count().to_string(),
        ]],
        human,
        failures: Vec::new(),
    })
}

#[derive(Serialize)]
struct Trial<T: Serialize> {
    trial: usize,
    seed: Option<u64>,
    #[serde(flatten)]
    record: T,
}

/// Random E ⊂ R^2 of the given size drawn from `seeded(task_seed)`.
fn random_plane_set(ring: &Ring, size: usize, task_seed: u64) -> Result<PointSet> {
    let mut rng = seeded(task_seed);
    let mut e = PointSet::new(ring, 2)?;
    while e.len() < size {
        let pt = Point::new(vec![
            ring.random_element(&mut rng),
            ring.random_element(&mut rng),
        ])?;
        e.insert(pt)?;
    }
    Ok(e)
}

fn fmt_points(e: &PointSet) -> String {
    let pts: Vec<String> = e.points().iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", pts.join(","))
}

fn verify_lemma(inv: &Invocation) -> Result<Outcome> {
    let ring = harness_ring(&inv.rings[0])?;
    let spec = ring.spec();
    let src = source(inv, &ring, spec.order() * spec.order())?;
    // (trial, seed, E, description of E)
    let cases: Vec<(usize, Option<u64>, PointSet, String)> = match &src {
        Source::Explicit(a) => vec![(
            0,
            None,
            cartesian_square(&ring, a)?,
            format!("E = AxA, A = {{{}}}", format_subset(a)),
        )],
        Source::Sampled { size, trials, seed } => (0..*trials)
            .into_par_iter()
            .map(|i| {
                let task_seed = derive_seed(*seed, i as u64);
                let e = random_plane_set(&ring, *size, task_seed)?;
                let desc = format!("E = {}", fmt_points(&e));
                Ok((i, Some(task_seed), e, desc))
            })
            .collect::<Result<_>>()?,
    };
    let records: Vec<LemmaRecord> = cases
        .par_iter()
        .map(|(_, _, e, _)| lemma_check(e))
        .collect::<Result<_>>()?;

    let mut failures = Vec::new();
    let mut human = String::new();
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for ((trial, seed, _, desc), rec) in cases.iter().zip(&records) {
        writeln!(human, "{spec}  trial {trial}  {desc}  (|E| = {})", rec.size).unwrap();
        writeln!(
            human,
            "  {} isosceles-triple lemma: max_u |Δ_u(E)| = {} at pin {} >= |E|^3/N = {:.6} (N = {})",
            mark(rec.pass),
            rec.max_pinned,
            rec.witness,
            rec.lower_bound,
            rec.n
        )
        .unwrap();
        if !rec.pass {
            let reproduce = match &src {
                Source::Explicit(a) => set_command(inv.command, spec, a),
                Source::Sampled { size, trials, seed } => {
                    sampled_command(inv, spec, *size, *trials, *seed)
                }
            };
            failures.push(Failure {
                check: "isosceles-triple lemma".into(),
                counterexample: format!(
                    "ring {spec}, trial {trial}, {desc}, pin {}: max_pinned {} < |E|^3/N = {}",
                    rec.witness, rec.max_pinned, rec.lower_bound
                ),
                reproduce,
            });
        }
        rows.push(vec![
            spec.to_string(),
            rec.size.to_string(),
            rec.n.to_string(),
            rec.lower_bound.to_string(),
            rec.max_pinned.to_string(),
            rec.witness.to_string(),
            rec.pass.to_string(),
            opt(*seed),
            trial.to_string(),
        ]);
        reports.push(to_value(&Trial {
            trial: *trial,
            seed: *seed,
            record: rec,
        }));
    }
    let fail_count = records.iter().filter(|r| !r.pass).count();
    let pass = fail_count == 0;
    failures.truncate(MAX_LISTED_FAILURES);
    writeln!(human, "lemma failures: {fail_count} of {}", records.len()).unwrap();
    Ok(Outcome {
        summary: summary_value(
            json!({ "reports": records.len(), "lemma_failures": fail_count }),
            &failures,
            pass,
        ),
        reports,
        pass,
        csv_header: vec![
            "ring",
            "size",
            "n",
            "lower_bound",
            "max_pinned",
            "witness",
            "pass",
            "seed",
            "trial",
        ],
        csv_rows: rows,
        human,
        failures,
    })
}

/// (trial, derived seed, A).
type Sample = (usize, Option<u64>, Vec<RingElement>);

/// Subsets for verify-theorem / verify-incidence.
fn subsets(inv: &Invocation, ring: &Ring) -> Result<(Source, Vec<Sample>)> {
    let src = source(inv, ring, ring.order())?;
    let list = match &src {
        Source::Explicit(a) => vec![(0, None, a.clone())],
        Source::Sampled { size, trials, seed } => (0..*trials)
            .map(|i| {
                let (s, a) = sampled_subset(ring, *size, *seed, i);
                (i, Some(s), a)
            })
            .collect(),
    };
    Ok((src, list))
}

fn reproduce_for(inv: &Invocation, spec: RingSpec, a: &[RingElement]) -> String {
    set_command(inv.command, spec, a)
}

fn verify_incidence(inv: &Invocation) -> Result<Outcome> {
    let ring = harness_ring(&inv.rings[0])?;
    let spec = ring.spec();
    let (_, list) = subsets(inv, &ring)?;
    let reports: Vec<IncidenceReport> = list
        .par_iter()
        .map(|(_, _, a)| incidence_check(&ring, a))
        .collect::<Result<_>>()?;

    let mut failures = Vec::new();
    let mut human = String::new();
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for ((trial, seed, a), rep) in list.iter().zip(&reports) {
        let a3 = (a.len() as u64).pow(3);
        writeln!(
            human,
            "{spec}  trial {trial}  A = {{{}}}  (|A| = {})",
            format_subset(a),
            a.len()
        )
        .unwrap();
        writeln!(
            human,
            "  {} point/plane sizes: |Q| = {}, |Π| = {}, |A|^3 = {a3}",
            mark(rep.size_claim_holds),
            rep.distinct_points,
            rep.distinct_planes
        )
        .unwrap();
        writeln!(
            human,
            "  {} weighted incidences equal isosceles triples: {} = N(A×A) = {}",
            mark(rep.identity_holds),
            rep.incidences.weighted,
            rep.isosceles_triples
        )
        .unwrap();
        writeln!(
            human,
            "  {} point-plane incidence bound: I(Q,Π) = {} <= |Q||Π|/q^r + q^(2r-1)·sqrt(|Q||Π|) = {:.6}",
            mark(rep.incidence_bound.holds),
            rep.incidences.distinct,
            rep.incidence_bound.rhs
        )
        .unwrap();
        writeln!(
            human,
            "  {} proof-chain bound: N = {} <= |A|^6/q^r + q^(2r-1)|A|^3 = {:.6}",
            mark(rep.chain.holds),
            rep.chain.lhs,
            rep.chain.rhs
        )
        .unwrap();
        for (ok, name, detail) in [
            (
                rep.size_claim_holds,
                "point/plane sizes",
                format!(
                    "|Q| = {}, |Π| = {}",
                    rep.distinct_points, rep.distinct_planes
                ),
            ),
            (
                rep.identity_holds,
                "weighted incidences equal isosceles triples",
                format!("{} != {}", rep.incidences.weighted, rep.isosceles_triples),
            ),
            (
                rep.incidence_bound.holds,
                "point-plane incidence bound",
                format!("{} > {}", rep.incidences.distinct, rep.incidence_bound.rhs),
            ),
            (
                rep.chain.holds,
                "proof-chain bound",
                format!("{} > {}", rep.chain.lhs, rep.chain.rhs),
            ),
        ] {
            if !ok {
                failures.push(Failure {
                    check: name.into(),
                    counterexample: format!("ring {spec}, A = {{{}}}: {detail}", format_subset(a)),
                    reproduce: reproduce_for(inv, spec, a),
                });
            }
        }
        rows.push(vec![
            spec.to_string(),
            a.len().to_string(),
            rep.distinct_points.to_string(),
            rep.distinct_planes.to_string(),
            rep.incidences.distinct.to_string(),
            rep.incidences.weighted.to_string(),
            rep.isosceles_triples.to_string(),
            rep.incidence_bound.rhs.to_string(),
            rep.chain.rhs.to_string(),
            rep.pass.to_string(),
            opt(*seed),
            trial.to_string(),
        ]);
        values.push(to_value(&Trial {
            trial: *trial,
            seed: *seed,
            record: rep,
        }));
    }
    let fail_count = reports.iter().filter(|r| !r.pass).count();
    let pass = fail_count == 0;
    failures.truncate(MAX_LISTED_FAILURES);
    writeln!(
        human,
        "incidence failures: {fail_count} of {}",
        reports.len()
    )
    .unwrap();
    Ok(Outcome {
        summary: summary_value(
            json!({ "reports": reports.len(), "incidence_failures": fail_count }),
            &failures,
            pass,
        ),
        reports: values,
        pass,
        csv_header: vec![
            "ring",
            "subset_size",
            "distinct_points",
            "distinct_planes",
            "incidences",
            "weighted_incidences",
            "isosceles_triples",
            "incidence_rhs",
            "chain_rhs",
            "pass",
            "seed",
            "trial",
        ],
        csv_rows: rows,
        human,
        failures,
    })
}

const THEOREM_CSV: [&str; 8] = [
    "ring",
    "subset_size",
    "bound",
    "max_pinned",
    "ratio",
    "threshold_met",
    "seed",
    "trial",
];

fn theorem_row(e: &SweepEntry) -> Vec<String> {
    let r = &e.report;
    vec![
        r.ring.to_string(),
        r.subset_size.to_string(),
        r.bound.to_string(),
        r.max_pinned.to_string(),
        r.ratio.to_string(),
        r.threshold_met.to_string(),
        opt(e.seed),
        e.trial.to_string(),
    ]
}

fn theorem_failures(entries: &[SweepEntry]) -> Vec<Failure> {
    let mut out = Vec::new();
    for e in entries {
        let r = &e.report;
        let a = format_subset(&r.subset);
        if !r.lemma_holds {
            out.push(Failure {
                check: "isosceles-triple lemma".into(),
                counterexample: format!(
                    "ring {}, E = AxA, A = {{{a}}}, pin {}: max_pinned {} with N = {}",
                    r.ring, r.best_pin, r.max_pinned, r.isosceles_triples
                ),
                reproduce: set_command("verify-theorem", r.ring, &r.subset),
            });
        }
        if !r.chain.holds {
            out.push(Failure {
                check: "proof-chain bound".into(),
                counterexample: format!(
                    "ring {}, A = {{{a}}}: N = {} > {}",
                    r.ring, r.chain.lhs, r.chain.rhs
                ),
                reproduce: set_command("verify-theorem", r.ring, &r.subset),
            });
        }
        if r.ratio <= 0.0 {
            out.push(Failure {
                check: "positive implied constant".into(),
                counterexample: format!("ring {}, A = {{{a}}}: ratio {}", r.ring, r.ratio),
                reproduce: set_command("verify-theorem", r.ring, &r.subset),
            });
        }
        if out.len() >= MAX_LISTED_FAILURES {
            out.truncate(MAX_LISTED_FAILURES);
            break;
        }
    }
    out
}

fn theorem_human(human: &mut String, e: &SweepEntry) {
    let r = &e.report;
    writeln!(
        human,
        "{}  trial {}  A = {{{}}}  (|A| = {})",
        r.ring,
        e.trial,
        format_subset(&r.subset),
        r.subset_size
    )
    .unwrap();
    writeln!(
        human,
        "  [MEASURED] pinned distance bound: max_u |Δ_u(A×A)| = {} at pin {}, min(q^r, |A|^3/q^(2r-1)) = {:.6}, ratio = {:.6}, size threshold |A|^3 >= q^(3r-1) {}",
        r.max_pinned,
        r.best_pin,
        r.bound,
        r.ratio,
        if r.threshold_met { "met" } else { "not met" }
    )
    .unwrap();
    writeln!(
        human,
        "  {} isosceles-triple lemma: max_pinned·N >= |A×A|^3 (N = {})",
        mark(r.lemma_holds),
        r.isosceles_triples
    )
    .unwrap();
    writeln!(
        human,
        "  {} proof-chain bound: N = {} <= |A|^6/q^r + q^(2r-1)|A|^3 = {:.6}",
        mark(r.chain.holds),
        r.chain.lhs,
        r.chain.rhs
    )
    .unwrap();
}

fn sweep_human(human: &mut String, s: &pinned_core::verify::sweep::SweepSummary) {
    for st in &s.per_size {
        writeln!(
            human,
            "{}  |A| = {:>3}  reports {:>5}  min ratio {:.6}  median ratio {:.6}",
            st.ring, st.size, st.count, st.min_ratio, st.median_ratio
        )
        .unwrap();
    }
    writeln!(
        human,
        "{} isosceles-triple lemma on every report: {} failures",
        mark(s.lemma_failures == 0),
        s.lemma_failures
    )
    .unwrap();
    writeln!(
        human,
        "{} proof-chain bound on every report: {} failures",
        mark(s.chain_failures == 0),
        s.chain_failures
    )
    .unwrap();
    let argmin = s
        .argmin
        .as_ref()
        .map(|a| format!(" (ring {}, A = {{{}}})", a.ring, format_subset(&a.subset)))
        .unwrap_or_default();
    writeln!(
        human,
        "{} positive implied constant: c_min = {:.6}{argmin}",
        mark(s.c_min > 0.0),
        s.c_min
    )
    .unwrap();
}

fn theorem_outcome(entries: Vec<SweepEntry>, mut human: String, per_report_human: bool) -> Outcome {
    let summary = summarize(&entries);
    if per_report_human {
        for e in &entries {
            theorem_human(&mut human, e);
        }
    }
    sweep_human(&mut human, &summary);
    let failures = theorem_failures(&entries);
    let pass = summary.pass;
    Outcome {
        reports: entries.iter().map(to_value).collect(),
        summary: summary_value(to_value(&summary), &failures, pass),
        pass,
        csv_header: THEOREM_CSV.to_vec(),
        csv_rows: entries.iter().map(theorem_row).collect(),
        human,
        failures,
    }
}

fn verify_theorem(inv: &Invocation) -> Result<Outcome> {
    let ring = harness_ring(&inv.rings[0])?;
    let (_, list) = subsets(inv, &ring)?;
    let entries: Vec<SweepEntry> = list
        .into_par_iter()
        .enumerate()
        .map(|(index, (trial, seed, a))| {
            Ok(SweepEntry {
                index,
                seed,
                trial,
                report: theorem_check(&ring, &a)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(theorem_outcome(entries, String::new(), true))
}

fn sweep(inv: &Invocation) -> Result<Outcome> {
    let rings = inv
        .rings
        .iter()
        .map(|s| s.parse::<RingSpec>())
        .collect::<Result<Vec<_>>>()?;
    let sizes = (!inv.sizes.is_empty()).then(|| inv.sizes.clone());
    let mut cfg = match (inv.trials, inv.seed) {
        (Some(trials), Some(seed)) => SweepConfig::sampled(rings, sizes, trials, seed),
        (Some(_), None) => return Err(Error::Validation("--trials needs --seed".into())),
        (None, _) => {
            let mut c = SweepConfig::exhaustive(rings);
            c.sizes = sizes;
            c
        }
    };
    if let Some(cap) = inv.exhaustive_cap {
        cfg.exhaustive_cap = cap;
    }
    let res = run_sweep(&cfg)?;
    let mode = match cfg.mode {
        pinned_core::verify::sweep::SweepMode::Exhaustive => "exhaustive".to_string(),
        pinned_core::verify::sweep::SweepMode::Sampled { trials, seed } => {
            format!("sampled, {trials} trials per size, seed {seed}")
        }
    };
    let human = format!("sweep ({mode}): {} reports\n", res.entries.len());
    Ok(theorem_outcome(res.entries, human, false))
}

fn run_selftest(inv: &Invocation) -> Result<Outcome> {
    let seed = inv.seed.unwrap_or(0);
    let res = selftest(seed)?;
    let mut human = String::new();
    let mut failures = Vec::new();
    for c in &res.checks {
        writeln!(
            human,
            "{} {:<10} {}: {}",
            mark(c.pass),
            c.ring.to_string(),
            c.name,
            c.detail
        )
        .unwrap();
        if let Some(cx) = &c.counterexample {
            writeln!(human, "    counterexample: {cx}").unwrap();
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(Failure {
                    check: format!("{} ({})", c.name, c.ring),
                    counterexample: cx.clone(),
                    reproduce: format!("pinned selftest --seed {seed}"),
                });
            }
        }
    }
    let failed = res.checks.iter().filter(|c| !c.pass).count();
    writeln!(
        human,
        "checks: {} passed, {failed} failed",
        res.checks.len() - failed
    )
    .unwrap();
    Ok(Outcome {
        reports: res.checks.iter().map(to_value).collect(),
        summary: summary_value(
            json!({ "checks": res.checks.len(), "failed": failed }),
            &failures,
            res.pass,
        ),
        pass: res.pass,
        csv_header: vec!["ring", "check", "pass", "detail", "counterexample"],
        csv_rows: res
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.ring.to_string(),
                    c.name.clone(),
                    c.pass.to_string(),
                    c.detail.clone(),
                    c.counterexample.clone().unwrap_or_default(),
                ]
            })
            .collect(),
        human,
        failures,
    })
}
