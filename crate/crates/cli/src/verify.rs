//! Verification sweeps: each suite checks an identity on every point or pair
//! of every context with `2 ≤ n ≤ n_max` and `1 ≤ s ≤ s_max`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{Context as _, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use schubert_core::bruhat::{interval_below, leq, IntervalIndex};
use schubert_core::loci::{
    is_p_stable, one_string_critical_index, phi, search_unexplained_singular, singular_locus_p_stable, SearchLimits,
};
use schubert_core::oracle::{
    confirm_witness, dominance_maximal_below, matrix_u_tangent_dim, sample_pairs, Poset, DEFAULT_ENUMERATION_BOUND,
};
use schubert_core::patterns::{apply_pattern, find_patterns, pattern_certificates, PatternKind};
use schubert_core::reflections::{curve_set, down_exchange, down_exchange_codim};
use schubert_core::tangent::{classical_u_tangent_dim, tangent_dim_one_string};
use schubert_core::{codim, dim_schubert, Context, Error, Point};

use crate::Output;

const FAILURE_CAP: usize = 50;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub(crate) enum Suite {
    OrderEquivalence,
    CodimFormula,
    Deodhar,
    RationallySmooth,
    OneStringLocus,
    PStableLocus,
    TangentMatrix,
    PatternCertificates,
    UnexplainedSingular,
}

#[derive(Args)]
pub(crate) struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    s_max: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for cached interval indexes.
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// tangent-matrix only: check this many seeded random pairs per context instead of all pairs.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Refuse contexts with more points than this.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    max_points: u128,
    /// Include the wall time in the JSON report; off by default so output is reproducible.
    #[arg(long)]
    timing: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    suite: Suite,
    contexts: Vec<[usize; 2]>,
    checks: u64,
    failure_count: usize,
    /// The first failures, capped.
    failures: Vec<String>,
    /// Data reported by search suites; not failures.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    findings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u128>,
}

/// Collects check counts and failure messages across workers.
#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
    findings: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.findings.extend(other.findings);
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t);
            t
        })
        .reduce(Tally::default, |mut a, b| {
            a.merge(b);
            a
        })
}

fn cache_path(dir: &Path, c: Context) -> PathBuf {
    dir.join(format!("interval-n{}-s{}.json", c.n(), c.s()))
}

/// The interval below TOP, i.e. the whole context, read from or written to the cache.
fn full_interval(c: Context, cache: Option<&Path>) -> Result<IntervalIndex> {
    let Some(dir) = cache else { return Ok(interval_below(&c.top())?) };
    let path = cache_path(dir, c);
    if let Ok(text) = std::fs::read_to_string(&path) {
        // A stale or corrupt file is rebuilt.
        if let Ok(idx) = serde_json::from_str::<IntervalIndex>(&text) {
            if idx.ctx() == c && *idx.top() == c.top() {
                return Ok(idx);
            }
        }
    }
    let idx = interval_below(&c.top())?;
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    std::fs::write(&path, serde_json::to_string(&idx)?).with_context(|| format!("writing {}", path.display()))?;
    Ok(idx)
}

fn comparable_pairs(points: &[Point]) -> Vec<(Point, Point)> {
    let tuples: Vec<Vec<usize>> = points.iter().map(Point::tuple).collect();
    let mut out = Vec::new();
    for (b, w) in points.iter().enumerate() {
        for (a, x) in points.iter().enumerate() {
            if tuples[a].iter().zip(&tuples[b]).all(|(p, q)| p >= q) {
                out.push((x.clone(), w.clone()));
            }
        }
    }
    out
}

fn order_equivalence(c: Context, args: &VerifyArgs) -> Result<Tally> {
    let idx = full_interval(c, args.cache.as_deref())?;
    let closure = idx.up_closure();
    let poset = Poset::build(c, args.max_points)?;
    let members = idx.members();
    let rows: Vec<usize> = (0..members.len()).collect();
    Ok(par_tally(&rows, |&a, t| {
        let x = &members[a];
        for (b, w) in members.iter().enumerate() {
            let tuple = leq(x, w).unwrap_or(false);
            let covers = closure[a].contains(b);
            let oracle = poset.leq(x, w).unwrap_or(false);
            t.check(tuple == covers && covers == oracle, || {
                format!("{x} ≤ {w}: tuple {tuple}, engine covers {covers}, oracle covers {oracle}")
            });
        }
    }))
}

fn codim_formula(c: Context, args: &VerifyArgs) -> Result<Tally> {
    let poset = Poset::build(c, args.max_points)?;
    let points = c.points();
    Ok(par_tally(&points, |x, t| {
        for a in 1..=c.n() {
            for b in a + 1..=c.n() {
                let Ok(y) = down_exchange(x, a, b) else { continue };
                if y == *x {
                    continue;
                }
                let formula = down_exchange_codim(x, a, b).ok();
                let chain = poset.longest_chain(&y, x).ok();
                t.check(formula.is_some() && formula == chain, || {
                    format!("{x} strings ({a},{b}): formula {formula:?}, longest chain {chain:?}")
                });
            }
        }
    }))
}

fn deodhar(c: Context, args: &VerifyArgs) -> Result<Tally> {
    let idx = full_interval(c, args.cache.as_deref())?;
    let pairs = comparable_pairs(idx.members());
    Ok(par_tally(&pairs, |(x, w), t| {
        let curves = curve_set(x, w).map(|s| s.len()).unwrap_or(0);
        let dim = dim_schubert(w);
        t.check(curves >= dim, || format!("|E(X({w}),{x})| = {curves} < dim {dim}"));
    }))
}

fn rationally_smooth(c: Context, _: &VerifyArgs) -> Result<Tally> {
    let kappas: Vec<(usize, Point)> = (1..=c.d()).map(|k| Ok((k, c.kappa(k)?))).collect::<Result<_, Error>>()?;
    let points = c.points();
    Ok(par_tally(&kappas, |(k, w), t| {
        let want = k * (c.n() - 1);
        for x in points.iter().filter(|x| leq(x, w).unwrap_or(false)) {
            let got = curve_set(x, w).map(|s| s.len()).unwrap_or(0);
            t.check(got == want, || format!("|E(X(κ^{k}),{x})| = {got}, expected {want}"));
        }
    }))
}

fn one_string_locus(c: Context, _: &VerifyArgs) -> Result<Tally> {
    let points = c.points();
    let hosts: Vec<(usize, Point)> =
        points.iter().filter_map(|w| one_string_critical_index(w).map(|k| (k, w.clone()))).collect();
    Ok(par_tally(&hosts, |(k, w), t| {
        let f = if *k >= 2 { phi(w).ok() } else { None };
        if *k >= 2 && f.is_none() {
            t.check(false, || format!("φ({w}) failed"));
            return;
        }
        let dim = dim_schubert(w);
        for x in points.iter().filter(|x| leq(x, w).unwrap_or(false)) {
            let singular = tangent_dim_one_string(x, w).map(|r| r.total > dim).unwrap_or(false);
            let predicted = f.as_ref().is_some_and(|f| leq(x, f).unwrap_or(false));
            t.check(singular == predicted, || format!("{x} in X({w}): tangent test {singular}, φ-locus {predicted}"));
        }
        if *k > 2 {
            let f = f.as_ref().expect("checked above");
            let cd = codim(f, w).ok();
            t.check(cd == Some(2), || format!("codim(φ({w}), {w}) = {cd:?}, expected 2"));
        }
    }))
}

fn p_stable_locus(c: Context, _: &VerifyArgs) -> Result<Tally> {
    let hosts: Vec<Point> = c.points().into_iter().filter(is_p_stable).collect();
    Ok(par_tally(&hosts, |w, t| {
        let ours: BTreeSet<Point> = singular_locus_p_stable(w).unwrap_or_default().into_iter().collect();
        let oracle: BTreeSet<Point> = dominance_maximal_below(w).unwrap_or_default().into_iter().collect();
        t.check(ours == oracle, || format!("{w}: maximal pattern points {ours:?}, dominance maxima {oracle:?}"));
    }))
}

fn tangent_matrix(c: Context, args: &VerifyArgs) -> Result<Tally> {
    let pairs = match args.samples {
        Some(count) => sample_pairs(c, count, args.seed),
        None => comparable_pairs(&c.points()),
    };
    let failed = Mutex::new(None);
    let tally = par_tally(&pairs, |(x, w), t| {
        let ours = classical_u_tangent_dim(x, w);
        match matrix_u_tangent_dim(x, w) {
            Ok(rank) => t.check(ours.as_ref().ok() == Some(&rank), || format!("({x}, {w}): {ours:?} vs rank {rank}")),
            Err(e) => *failed.lock().expect("poisoned") = Some(e),
        }
    });
    match failed.into_inner().expect("poisoned") {
        Some(e) => Err(e.into()),
        None => Ok(tally),
    }
}

fn pattern_certificates_suite(c: Context, _: &VerifyArgs) -> Result<Tally> {
    let points = c.points();
    Ok(par_tally(&points, |w, t| {
        for p in find_patterns(w, &PatternKind::ALL) {
            let (Ok(images), Ok(certs)) = (apply_pattern(&p), pattern_certificates(&p)) else {
                t.check(false, || format!("{p} on {w}: construction failed"));
                continue;
            };
            let mut any = false;
            for (x, cert) in images.iter().zip(certs) {
                let Ok(wit) = cert else { continue };
                any = true;
                let ok = wit.validate(x, w) && confirm_witness(x, w, &wit) != Some(false);
                t.check(ok, || format!("{p} on {w}: certificate for {x} does not check"));
            }
            t.check(any, || format!("{p} on {w}: no certified point"));
        }
    }))
}

fn unexplained_singular(c: Context, args: &VerifyArgs) -> Result<Tally> {
    let found = search_unexplained_singular(c, SearchLimits { max_points: args.max_points })?;
    let mut t = Tally { checks: c.point_count() as u64, ..Tally::default() };
    t.findings = found.iter().map(|(w, x)| format!("{c}: {x} in X({w})")).collect();
    Ok(t)
}

fn run_suite(suite: Suite, c: Context, args: &VerifyArgs) -> Result<Tally> {
    match suite {
        Suite::OrderEquivalence => order_equivalence(c, args),
        Suite::CodimFormula => codim_formula(c, args),
        Suite::Deodhar => deodhar(c, args),
        Suite::RationallySmooth => rationally_smooth(c, args),
        Suite::OneStringLocus => one_string_locus(c, args),
        Suite::PStableLocus => p_stable_locus(c, args),
        Suite::TangentMatrix => tangent_matrix(c, args),
        Suite::PatternCertificates => pattern_certificates_suite(c, args),
        Suite::UnexplainedSingular => unexplained_singular(c, args),
    }
}

pub(crate) fn run(args: VerifyArgs) -> Result<Output> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let start = Instant::now();
    let mut contexts = Vec::new();
    for n in 2..=args.n_max {
        for s in 1..=args.s_max {
            let c = Context::new(n, s)?;
            let count = c.point_count();
            if count > args.max_points {
                return Err(Error::ResourceBound { count, bound: args.max_points }.into());
            }
            contexts.push(c);
        }
    }
    let mut total = Tally::default();
    for &c in &contexts {
        total.merge(run_suite(args.suite, c, &args)?);
    }
    let elapsed = start.elapsed().as_millis();
    let failure_count = total.failures.len();
    total.failures.truncate(FAILURE_CAP);
    let report = VerifyReport {
        suite: args.suite,
        contexts: contexts.iter().map(|c| [c.n(), c.s()]).collect(),
        checks: total.checks,
        failure_count,
        failures: total.failures,
        findings: total.findings,
        wall_time_ms: args.timing.then_some(elapsed),
    };
    let name = serde_json::to_value(args.suite)?;
    let mut text = format!(
        "{}: {} checks over {} contexts, {} failures ({elapsed} ms)",
        name.as_str().unwrap_or_default(),
        report.checks,
        report.contexts.len(),
        failure_count
    );
    for f in report.failures.iter().chain(&report.findings) {
        text.push_str("\n  ");
        text.push_str(f);
    }
    if failure_count > FAILURE_CAP {
        text.push_str(&format!("\n  … and {} more", failure_count - FAILURE_CAP));
    }
    let context = json!({ "n_max": args.n_max, "s_max": args.s_max });
    let query = json!({ "command": "verify", "suite": name, "samples": args.samples, "seed": args.seed });
    let mut out = Output::new(context, query, &report, text)?;
    out.failed = failure_count > 0;
    Ok(out)
}
