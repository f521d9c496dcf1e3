//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
//!
//! Every comparison is exact integer or set equality. A criterion that runs
//! past its time budget also fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use schubert_core::bruhat::{codim, dim_schubert, leq};
use schubert_core::loci::{
    classify_point, is_p_stable, one_string_critical_index, phi, singular_locus_p_stable, Status,
};
use schubert_core::oracle::{confirm_witness, dominance_maximal_below, matrix_u_tangent_dim, sample_pairs, Poset};
use schubert_core::patterns::{apply_pattern, find_patterns, pattern_certificates, Pattern, PatternKind};
use schubert_core::reflections::{curve_set, down_exchange, down_exchange_codim, exchange_gaps, up_reflections};
use schubert_core::tangent::{classical_u_tangent_dim, tangent_dim_one_string, tangent_dim_top};
use schubert_core::{Context, Point};

type Outcome = Result<String, String>;

fn ctx(n: usize, s: usize) -> Context {
    Context::new(n, s).expect("valid context")
}

fn pt(c: Context, l: &[usize]) -> Point {
    Point::from_lengths(c, l.to_vec()).expect("valid lengths")
}

fn below(w: &Point) -> Vec<Point> {
    w.ctx().points().into_iter().filter(|x| leq(x, w).unwrap()).collect()
}

fn all_pairs(c: Context) -> Vec<(Point, Point)> {
    let pts = c.points();
    pts.iter().flat_map(|w| pts.iter().filter(|x| leq(x, w).unwrap()).map(move |x| (x.clone(), w.clone()))).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kappa_curve_count() -> Outcome {
    let mut checked = 0;
    for c in [ctx(3, 1), ctx(4, 1), ctx(5, 1), ctx(3, 2), ctx(4, 2)] {
        for k in 1..=c.d() {
            let w = c.kappa(k).unwrap();
            let want = k * (c.n() - 1);
            ensure(dim_schubert(&w) == want, || format!("dim X(κ^{k}) at {c} is {}", dim_schubert(&w)))?;
            for x in below(&w) {
                let got = curve_set(&x, &w).unwrap().len();
                ensure(got == want, || format!("{c}: |E(X(κ^{k}),{x})| = {got}, expected {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs, every count equals c(n-1)"))
}

fn one_string_locus() -> Outcome {
    let (mut hosts, mut points) = (0, 0);
    for c in [ctx(4, 1), ctx(5, 1), ctx(3, 2)] {
        for w in c.points() {
            let Some(k) = one_string_critical_index(&w) else { continue };
            hosts += 1;
            let dim = dim_schubert(&w);
            let f = if k >= 2 { Some(phi(&w).unwrap()) } else { None };
            for x in below(&w) {
                let singular = tangent_dim_one_string(&x, &w).unwrap().total > dim;
                let predicted = f.as_ref().is_some_and(|f| leq(&x, f).unwrap());
                ensure(singular == predicted, || format!("{c}: {x} in X({w}) singular={singular}"))?;
                points += 1;
            }
            if k > 2 {
                let cd = codim(f.as_ref().unwrap(), &w).unwrap();
                ensure(cd == 2, || format!("{c}: codim(φ({w}), {w}) = {cd}"))?;
            }
        }
    }
    Ok(format!("{hosts} one-string hosts, {points} points, loci and φ-codimension exact"))
}

fn p_stable_maxima() -> Outcome {
    let mut hosts = 0;
    for c in [ctx(4, 1), ctx(4, 2), ctx(5, 1)] {
        for w in c.points().into_iter().filter(is_p_stable) {
            let ours: BTreeSet<Point> = singular_locus_p_stable(&w).unwrap().into_iter().collect();
            let oracle: BTreeSet<Point> = dominance_maximal_below(&w).unwrap().into_iter().collect();
            ensure(ours == oracle, || format!("{c}: {w}: {ours:?} vs {oracle:?}"))?;
            hosts += 1;
        }
    }
    Ok(format!("{hosts} P-stable hosts, sets equal"))
}

fn exchange_codimension() -> Outcome {
    let mut checked = 0;
    for c in [ctx(4, 1), ctx(4, 2), ctx(3, 2)] {
        let poset = Poset::build(c, 10_000).unwrap();
        for x in c.points() {
            for a in 1..=c.n() {
                for b in a + 1..=c.n() {
                    let y = down_exchange(&x, a, b).unwrap();
                    if y == x {
                        continue;
                    }
                    let formula = down_exchange_codim(&x, a, b).unwrap();
                    let chain = poset.longest_chain(&y, &x).unwrap();
                    ensure(formula == chain, || format!("{c}: {x} residues ({a},{b}): {formula} vs {chain}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} down-exchanges, formula equals longest chain"))
}

fn curve_lower_bound() -> Outcome {
    let mut checked = 0;
    for c in [ctx(4, 1), ctx(3, 2)] {
        let pairs = all_pairs(c);
        let bad = pairs.par_iter().find_any(|(x, w)| curve_set(x, w).unwrap().len() < dim_schubert(w));
        if let Some((x, w)) = bad {
            return Err(format!("{c}: |E(X({w}),{x})| < dim"));
        }
        checked += pairs.len();
    }
    Ok(format!("{checked} pairs, |E(X(w),x)| ≥ dim X(w)"))
}

fn order_equivalence() -> Outcome {
    let mut checked = 0;
    for c in [ctx(4, 1), ctx(3, 2), ctx(4, 2)] {
        let poset = Poset::build(c, 10_000).unwrap();
        let pts = c.points();
        for x in &pts {
            for w in &pts {
                let (a, b) = (leq(x, w).unwrap(), poset.leq(x, w).unwrap());
                ensure(a == b, || format!("{c}: {x} ≤ {w}: componentwise {a}, covers {b}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} ordered pairs agree"))
}

fn tangent_matrix() -> Outcome {
    let c = ctx(4, 1);
    let pairs = all_pairs(c);
    let bad = pairs
        .par_iter()
        .find_any(|(x, w)| classical_u_tangent_dim(x, w).unwrap() != matrix_u_tangent_dim(x, w).unwrap());
    if let Some((x, w)) = bad {
        return Err(format!("{c}: mismatch at ({x}, {w})"));
    }
    let sampled = sample_pairs(ctx(4, 2), 500, 0x5eed);
    let bad = sampled
        .par_iter()
        .find_any(|(x, w)| classical_u_tangent_dim(x, w).unwrap() != matrix_u_tangent_dim(x, w).unwrap());
    if let Some((x, w)) = bad {
        return Err(format!("(4,2): mismatch at ({x}, {w})"));
    }
    let (e, top) = (c.e(), c.top());
    let pinned_u = (classical_u_tangent_dim(&e, &top).unwrap(), matrix_u_tangent_dim(&e, &top).unwrap());
    ensure(pinned_u == (16, 16), || format!("dim T_e(Y(TOP))^u = {pinned_u:?}, expected 16"))?;
    let t = tangent_dim_top(&e).total;
    ensure(t == 15 && t == c.n() * c.n() - 1, || format!("dim T_e(X(TOP)) = {t}, expected 15"))?;
    Ok(format!("{} pairs at (4,1) and {} sampled at (4,2) agree; pinned 16 and 15 hold", pairs.len(), sampled.len()))
}

fn pattern_certificates_hold() -> Outcome {
    let (mut patterns, mut certified, mut unavailable) = (0, 0, 0);
    for c in [ctx(4, 1), ctx(3, 2)] {
        for w in c.points() {
            for p in find_patterns(&w, &PatternKind::ALL) {
                let points = apply_pattern(&p).map_err(|e| format!("{p} on {w}: {e}"))?;
                let certs = pattern_certificates(&p).map_err(|e| format!("{p} on {w}: {e}"))?;
                let mut any = false;
                for (x, cert) in points.iter().zip(certs) {
                    ensure(*x != w && leq(x, &w).unwrap(), || format!("{p} on {w}: {x} not below"))?;
                    match cert {
                        Ok(wit) => {
                            ensure(wit.validate(x, &w) && confirm_witness(x, &w, &wit) != Some(false), || {
                                format!("{p} on {w}: certificate {wit:?} for {x} does not check")
                            })?;
                            any = true;
                            certified += 1;
                        }
                        Err(_) => unavailable += 1,
                    }
                }
                ensure(any, || format!("{p} on {w}: no certified point"))?;
                patterns += 1;
            }
        }
    }
    Ok(format!("{patterns} patterns, {certified} certified points, {unavailable} second points without a certificate"))
}

fn worked_exceptional_example() -> Outcome {
    let c = ctx(4, 1);
    let w = pt(c, &[0, 4, 0, 0]);
    ensure(w.l_vector() == [0, 4, 0, 0, 1, 5, 1, 1], || format!("L(w) = {:?}", w.l_vector()))?;
    let p = Pattern::new(PatternKind::ExcFirst, vec![2, 5, 6, 7], w.clone()).map_err(|e| e.to_string())?;
    ensure(find_patterns(&w, &PatternKind::ALL).contains(&p), || "pattern (2,5,6,7) not found".into())?;
    let wp = apply_pattern(&p).map_err(|e| e.to_string())?.remove(0);
    ensure(wp.l_vector() == [0, 3, 1, 0, 1, 4, 2, 1], || format!("L(w_P) = {:?}", wp.l_vector()))?;
    let ups = up_reflections(&wp, &w).unwrap().len();
    ensure(ups == 4, || format!("{ups} upward reflections at w_P, expected 4"))?;
    let cd = codim(&wp, &w).unwrap();
    ensure(cd == 3, || format!("codim(w_P, w) = {cd}, expected 3"))?;
    let f = phi(&w).unwrap();
    let curves = curve_set(&f, &w).unwrap().len();
    let rational = curves == dim_schubert(&w);
    let status = classify_point(&f, &w).unwrap().status;
    let prefix = format!(
        "L(w_P) exact, 4 upward reflections, codim 3; φ(w) = {f} has |E| = {curves} = dim: rationally smooth = {rational}"
    );
    ensure(status != Status::Singular, || {
        format!("{prefix}; but φ(w) is classified {status:?}, expected not singular")
    })?;
    Ok(prefix)
}

fn anchored_examples() -> Outcome {
    let big = ctx(6, 3);
    let t = [75, 79, 81, 85, 86, 87, 91, 92, 93, 97, 98, 99, 102, 103, 104, 105, 107, 108];
    let p = Point::from_tuple(big, &t).map_err(|e| e.to_string())?;
    ensure(p.lengths() == [5, 4, 6, 0, 1, 2], || format!("lengths {:?}", p.lengths()))?;
    ensure(p.heads() == [79, 86, 75, 112, 107, 102], || format!("heads {:?}", p.heads()))?;

    let c = ctx(4, 1);
    let poset = Poset::build(c, 100).unwrap();
    let x = pt(c, &[3, 1, 0, 0]);
    let y = down_exchange(&x, 1, 3).unwrap();
    ensure(y == pt(c, &[0, 1, 3, 0]), || format!("exchange gave {y}"))?;
    let gaps = exchange_gaps(&x, 1, 3).unwrap();
    ensure(gaps == (1, 1), || format!("gaps {gaps:?}"))?;
    let cd = (down_exchange_codim(&x, 1, 3).unwrap(), poset.longest_chain(&y, &x).unwrap());
    ensure(cd == (3, 3), || format!("exchange codimension {cd:?}"))?;

    let w = pt(c, &[1, 2, 0, 1]);
    let pat = Pattern::new(PatternKind::RealSecond, vec![1, 2, 3, 4], w.clone()).map_err(|e| e.to_string())?;
    let wp = apply_pattern(&pat).map_err(|e| e.to_string())?.remove(0);
    ensure(wp == pt(c, &[0, 1, 1, 2]), || format!("second-kind w_P = {wp}"))?;
    let cd = codim(&wp, &w).unwrap();
    let ups = up_reflections(&wp, &w).unwrap().len();
    ensure((cd, ups) == (3, 4), || format!("second-kind codim {cd}, {ups} upward reflections"))?;
    Ok("eighteen-entry tuple, gap-(1,1) exchange of codim 3, second-kind pattern with codim 3 and 4 upward reflections"
        .into())
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { name: "κ^c curve count", budget: secs(30), run: kappa_curve_count },
        Criterion { name: "one-string singular locus", budget: secs(60), run: one_string_locus },
        Criterion { name: "P-stable maximal singularities", budget: secs(60), run: p_stable_maxima },
        Criterion { name: "down-exchange codimension formula", budget: secs(120), run: exchange_codimension },
        Criterion { name: "curve count lower bound", budget: secs(60), run: curve_lower_bound },
        Criterion { name: "order equivalence", budget: secs(120), run: order_equivalence },
        Criterion { name: "tangent matrix oracle", budget: secs(120), run: tangent_matrix },
        Criterion { name: "pattern certificates", budget: secs(120), run: pattern_certificates_hold },
        Criterion { name: "exceptional pattern worked example", budget: secs(10), run: worked_exceptional_example },
        Criterion { name: "anchored examples", budget: secs(10), run: anchored_examples },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&*e))));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > c.budget => Err(format!("{msg}; over budget")),
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += usize::from(outcome.is_err());
        println!(
            "criterion {:>2} {tag} [{}] tolerance=exact time={:.2}s budget={}s :: {msg}",
            k + 1,
            c.name,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}
