//! Singular loci for the one-string and P-stable classes, the general
//! classifier, and searches over whole contexts.

use rayon::prelude::*;
use serde::Serialize;

use crate::bruhat::{codim, dim_schubert, require_leq, tuple_leq};
use crate::error::{Error, Result};
use crate::patterns::{
    apply_pattern, certificate_witnesses, find_patterns, large_reflection_witness, pattern_certificates, PatternKind,
    SingularWitness,
};
use crate::point::{Context, Point};
use crate::reflections;
use crate::tangent::{one_string_report, s_imag_w, tangent_dim_top};

/// `ℓ_1 ≥ ℓ_2 ≥ … ≥ ℓ_n`.
pub fn is_p_stable(w: &Point) -> bool {
    w.lengths().windows(2).all(|p| p[0] >= p[1])
}

/// Minimal `c` with `w_k = e_k` for `k > c` and `w_1..w_c` in one string.
pub fn one_string_critical_index(w: &Point) -> Option<usize> {
    let ctx = w.ctx();
    let t = w.tuple();
    let d = ctx.d();
    let c = (0..d).rev().take_while(|&k| t[k] == ctx.e_entry(k + 1)).fold(d, |_, k| k);
    let r = ctx.residue(t[0]);
    t[..c].iter().all(|&v| ctx.residue(v) == r).then_some(c)
}

fn critical_index(w: &Point) -> Result<usize> {
    one_string_critical_index(w).ok_or_else(|| Error::NotOneString(w.to_string()))
}

/// `x ≤ w` for one-string `w`: `x_c ≥ w_c` and `x_i = w_i` for `i > c`.
pub fn one_string_leq(x: &Point, w: &Point, c: usize) -> Result<bool> {
    x.same_ctx(w)?;
    if one_string_critical_index(w) != Some(c) {
        return Err(Error::NotOneString(format!("{w} with critical index {c}")));
    }
    let (xt, wt) = (x.tuple(), w.tuple());
    Ok((c == 0 || xt[c - 1] >= wt[c - 1]) && xt[c..] == wt[c..])
}

fn replace_first(w: &Point, value: usize) -> Result<Point> {
    let mut t = w.tuple();
    t[0] = value;
    t.sort_unstable();
    Point::from_tuple(w.ctx(), &t)
}

/// `φ(w)` for one-string `w` with critical index `c ≥ 2`.
///
/// For `c = 2` this is `w_P` for the imaginary pattern `([w_1], [w_1]+1)`;
/// for `c > 2` it replaces `w_1` by `w_c + 1` when `w = κ^c` and by
/// `w_{c+1} - n` otherwise.
pub fn phi(w: &Point) -> Result<Point> {
    let c = critical_index(w)?;
    if c < 2 {
        return Err(Error::CriticalIndexTooSmall { c });
    }
    let ctx = w.ctx();
    let t = w.tuple();
    if c == 2 {
        return phi_two_pattern(w);
    }
    if *w == ctx.kappa(c)? {
        return phi_kappa_branch(w, c);
    }
    let next = if c == ctx.d() { ctx.e_entry(c + 1) } else { t[c] };
    replace_first(w, next - ctx.n())
}

/// `φ(κ^c)` by the replacement `κ^c_1 ↦ κ^c_c + 1`.
pub fn phi_kappa_branch(w: &Point, c: usize) -> Result<Point> {
    replace_first(w, w.tuple()[c - 1] + 1)
}

/// `w_P` for `P = ([w_1], [w_1]+1)`.
pub fn phi_two_pattern(w: &Point) -> Result<Point> {
    let a = w.ctx().residue(w.tuple()[0]);
    let pattern = crate::patterns::Pattern::new(PatternKind::Imaginary, vec![a, a + 1], w.clone())?;
    Ok(apply_pattern(&pattern)?.remove(0))
}

/// The singular locus `X(φ(w))` of a one-string `X(w)`; empty when `c ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneStringLocus {
    pub critical_index: usize,
    pub phi_point: Option<Point>,
    pub codim: Option<usize>,
}

impl OneStringLocus {
    pub fn contains(&self, x: &Point) -> bool {
        self.phi_point.as_ref().is_some_and(|p| tuple_leq(&x.tuple(), &p.tuple()))
    }
}

pub fn singular_locus_one_string(w: &Point) -> Result<OneStringLocus> {
    let c = critical_index(w)?;
    if c <= 1 {
        return Ok(OneStringLocus { critical_index: c, phi_point: None, codim: None });
    }
    let p = phi(w)?;
    let cd = codim(&p, w)?;
    Ok(OneStringLocus { critical_index: c, phi_point: Some(p), codim: Some(cd) })
}

/// One pair `(i_r, j_r)` of the P-stable construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PStablePair {
    pub i: usize,
    pub j: usize,
    pub maximal: bool,
}

/// Descents `i_r`, each paired with the first `j` with `ℓ_j < ℓ_{i_r} - 1`.
pub fn p_stable_patterns(w: &Point) -> Result<Vec<PStablePair>> {
    if !is_p_stable(w) {
        return Err(Error::NotPStable(w.to_string()));
    }
    let n = w.ctx().n();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        if w.length(i + 1) < w.length(i) {
            if let Some(j) = (1..=n).find(|&j| w.length(j) + 1 < w.length(i)) {
                pairs.push((i, j));
            }
        }
    }
    Ok(pairs
        .iter()
        .map(|&(i, j)| {
            let top_i = pairs.iter().filter(|p| p.1 == j).map(|p| p.0).max();
            PStablePair { i, j, maximal: top_i == Some(i) }
        })
        .collect())
}

/// The maximal singular points `w_{P_r}` of a P-stable `X(w)`.
pub fn singular_locus_p_stable(w: &Point) -> Result<Vec<Point>> {
    let mut out: Vec<Point> = p_stable_patterns(w)?
        .into_iter()
        .filter(|p| p.maximal)
        .map(|p| {
            let mut l = w.lengths().to_vec();
            l[p.i - 1] -= 1;
            l[p.j - 1] += 1;
            Point::from_lengths_unchecked(w.ctx(), l)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Smooth,
    Singular,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    OneStringExact,
    PStableExact,
    TopExact,
    CertificateOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub status: Status,
    pub method: Method,
    pub witnesses: Vec<SingularWitness>,
    /// The φ-point or the maximal pattern points, when the method uses them.
    pub locus_points: Vec<Point>,
}

fn imaginary_witnesses(x: &Point, w: &Point) -> Vec<SingularWitness> {
    (1..=x.ctx().d())
        .filter_map(|level| {
            let residues = s_imag_w(level, x, w).ok()?;
            (residues.len() >= 2).then_some(SingularWitness::ImaginaryTangent { level, residues })
        })
        .collect()
}

/// Whether `x` is a smooth point of `X(w)`, by the strongest available method.
pub fn classify_point(x: &Point, w: &Point) -> Result<Classification> {
    require_leq(x, w)?;
    let exact = |singular: bool, method, witnesses, locus_points| Classification {
        status: if singular { Status::Singular } else { Status::Smooth },
        method,
        witnesses,
        locus_points,
    };
    if x == w {
        let method = if *w == w.ctx().top() {
            Method::TopExact
        } else if one_string_critical_index(w).is_some() {
            Method::OneStringExact
        } else if is_p_stable(w) {
            Method::PStableExact
        } else {
            Method::CertificateOnly
        };
        return Ok(exact(false, method, Vec::new(), Vec::new()));
    }
    let mut witnesses = certificate_witnesses(x, w);
    if *w == w.ctx().top() {
        let report = tangent_dim_top(x);
        let singular = report.total > dim_schubert(w);
        if report.has_imaginary() {
            witnesses.extend(imaginary_witnesses(x, w));
        }
        let locus = singular_locus_one_string(w)?.phi_point.into_iter().collect();
        return Ok(exact(singular, Method::TopExact, witnesses, locus));
    }
    if one_string_critical_index(w).is_some() {
        let locus = singular_locus_one_string(w)?;
        let singular = locus.contains(x);
        let report = one_string_report(x, w);
        debug_assert_eq!(singular, report.total > dim_schubert(w), "{x} in X({w})");
        if report.has_imaginary() {
            witnesses.extend(imaginary_witnesses(x, w));
        }
        return Ok(exact(singular, Method::OneStringExact, witnesses, locus.phi_point.into_iter().collect()));
    }
    if is_p_stable(w) {
        let maxima = singular_locus_p_stable(w)?;
        let xt = x.tuple();
        let singular = maxima.iter().any(|m| tuple_leq(&xt, &m.tuple()));
        return Ok(exact(singular, Method::PStableExact, witnesses, maxima));
    }
    let status = if witnesses.is_empty() { Status::Unknown } else { Status::Singular };
    Ok(Classification { status, method: Method::CertificateOnly, witnesses, locus_points: Vec::new() })
}

/// Bounds for context-wide searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_points: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_points: 2_000 }
    }
}

fn guarded_points(ctx: Context, limits: SearchLimits) -> Result<Vec<Point>> {
    let count = ctx.point_count();
    if count > limits.max_points {
        return Err(Error::ResourceBound { count, bound: limits.max_points });
    }
    Ok(ctx.points())
}

/// Certified pattern points below `w`: every `w_P` whose certificate validates.
pub fn certified_pattern_points(w: &Point) -> Vec<Point> {
    let mut out = Vec::new();
    for p in find_patterns(w, &PatternKind::ALL) {
        let (Ok(points), Ok(certs)) = (apply_pattern(&p), pattern_certificates(&p)) else { continue };
        for (x, cert) in points.into_iter().zip(certs) {
            if cert.is_ok() {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Pairs `(w, x)` with `x` certified singular in `X(w)` but below no certified pattern point.
pub fn search_unexplained_singular(ctx: Context, limits: SearchLimits) -> Result<Vec<(Point, Point)>> {
    let points = guarded_points(ctx, limits)?;
    let tuples: Vec<Vec<usize>> = points.iter().map(Point::tuple).collect();
    let mut out: Vec<(Point, Point)> = points
        .par_iter()
        .zip(tuples.par_iter())
        .flat_map_iter(|(w, wt)| {
            let explained: Vec<Vec<usize>> = certified_pattern_points(w).iter().map(Point::tuple).collect();
            points
                .iter()
                .zip(&tuples)
                .filter(|(x, xt)| *x != w && tuple_leq(xt, wt))
                .filter(|(x, _)| !certificate_witnesses(x, w).is_empty())
                .filter(|(_, xt)| !explained.iter().any(|p| tuple_leq(xt, p)))
                .map(|(x, _)| (w.clone(), x.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Points `w` with no imaginary pattern, and at every `x ≤ w` exactly `dim X(w)`
/// curves and no large reflection inside `X(w)`.
pub fn search_smooth_candidates(ctx: Context, limits: SearchLimits) -> Result<Vec<Point>> {
    let points = guarded_points(ctx, limits)?;
    let mut out: Vec<Point> = points
        .par_iter()
        .filter(|w| find_patterns(w, &[PatternKind::Imaginary]).is_empty())
        .filter(|w| {
            let (wt, dim) = (w.tuple(), dim_schubert(w));
            points.iter().filter(|x| tuple_leq(&x.tuple(), &wt)).all(|x| {
                reflections::curve_set_unchecked(x, w).len() == dim && large_reflection_witness(x, w).is_none()
            })
        })
        .cloned()
        .collect();
    out.sort();
    Ok(out)
}
