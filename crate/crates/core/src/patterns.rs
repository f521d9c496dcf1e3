//! Singularity patterns in `L(w)` and the singular points `w_P` they produce.
//!
//! Positions index `L(w) = (l_1..l_2n)`; a position `p` and `p+n` name the
//! same string. `a↓b` below is the down-exchange of positions `a < b < a+n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bruhat::{dim_schubert, tuple_leq};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::reflections::{
    self, down_exchange, is_small, moving_reflections, reflection_between, swap_positions, Reflection,
};
use crate::tangent::s_imag_w;

/// A checkable proof that `x` is a singular point of `X(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SingularWitness {
    /// More T̂-curves through `x` than `dim X(w)`.
    ExcessCurves { curves: usize, dim: usize },
    /// A large reflection `r` with `x < r·x ≤ w`.
    LargeReflection { reflection: Reflection, image: Point },
    /// An imaginary weight in the exact tangent space of a one-string `X(w)`.
    ImaginaryTangent { level: usize, residues: Vec<usize> },
}

impl SingularWitness {
    /// Re-derives the payload from scratch.
    pub fn validate(&self, x: &Point, w: &Point) -> bool {
        if x.ctx() != w.ctx() || x == w || !tuple_leq(&x.tuple(), &w.tuple()) {
            return false;
        }
        match self {
            SingularWitness::ExcessCurves { curves, dim } => {
                let got = reflections::curve_set_unchecked(x, w).len();
                got == *curves && dim_schubert(w) == *dim && curves > dim
            }
            SingularWitness::LargeReflection { reflection, image } => {
                let (xt, it) = (x.tuple(), image.tuple());
                reflections::reflection_apply(x, reflection).as_ref() == Some(image)
                    && is_small(x, reflection) == Ok(false)
                    && image != x
                    && tuple_leq(&xt, &it)
                    && tuple_leq(&it, &w.tuple())
            }
            SingularWitness::ImaginaryTangent { level, residues } => {
                crate::loci::one_string_critical_index(w).is_some()
                    && residues.len() >= 2
                    && s_imag_w(*level, x, w).as_ref() == Ok(residues)
            }
        }
    }
}

/// Excess curves first, then the smallest large reflection upward inside `X(w)`.
pub fn certificate_witnesses(x: &Point, w: &Point) -> Vec<SingularWitness> {
    let mut out = Vec::new();
    if x == w {
        return out;
    }
    let curves = reflections::curve_set_unchecked(x, w).len();
    let dim = dim_schubert(w);
    if curves > dim {
        out.push(SingularWitness::ExcessCurves { curves, dim });
    }
    if let Some(wit) = large_reflection_witness(x, w) {
        out.push(wit);
    }
    out
}

pub fn large_reflection_witness(x: &Point, w: &Point) -> Option<SingularWitness> {
    let ctx = x.ctx();
    let (xt, wt) = (x.tuple(), w.tuple());
    moving_reflections(x)
        .into_iter()
        .filter(|(r, _)| !r.is_small_in(ctx))
        .find(|(_, y)| {
            let yt = y.tuple();
            tuple_leq(&xt, &yt) && tuple_leq(&yt, &wt)
        })
        .map(|(reflection, image)| SingularWitness::LargeReflection { reflection, image })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PatternKind {
    Imaginary,
    RealFirst,
    RealSecond,
    ExcFirst,
    ExcSecond,
}

impl PatternKind {
    pub const ALL: [PatternKind; 5] = [
        PatternKind::Imaginary,
        PatternKind::RealFirst,
        PatternKind::RealSecond,
        PatternKind::ExcFirst,
        PatternKind::ExcSecond,
    ];

    pub fn arity(self) -> usize {
        if self == PatternKind::Imaginary {
            2
        } else {
            4
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternKind::Imaginary => "IMAGINARY",
            PatternKind::RealFirst => "REAL_FIRST",
            PatternKind::RealSecond => "REAL_SECOND",
            PatternKind::ExcFirst => "EXC_FIRST",
            PatternKind::ExcSecond => "EXC_SECOND",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for PatternKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PatternKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::MalformedPattern(format!("unknown kind {s}")))
    }
}

/// A pattern occurrence in `L(host)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pattern {
    kind: PatternKind,
    indices: Vec<usize>,
    host: Point,
}

impl Pattern {
    /// Validates the index and value constraints of `kind` against `L(host)`.
    pub fn new(kind: PatternKind, indices: Vec<usize>, host: Point) -> Result<Self> {
        let bad = |why: &str| Error::MalformedPattern(format!("{kind} {indices:?} on {host}: {why}"));
        if indices.len() != kind.arity() {
            return Err(bad("wrong number of indices"));
        }
        let n = host.ctx().n();
        if indices.iter().any(|&p| p < 1 || p > 2 * n) || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("indices must increase inside [1, 2n]"));
        }
        if !matches_kind(kind, &indices, &host) {
            return Err(bad("constraints do not hold"));
        }
        Ok(Pattern { kind, indices, host })
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn host(&self) -> &Point {
        &self.host
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|v| v.to_string()).collect();
        write!(f, "{} ({})", self.kind, idx.join(","))
    }
}

fn matches_kind(kind: PatternKind, p: &[usize], w: &Point) -> bool {
    let n = w.ctx().n();
    let l = |k: usize| w.l_at(k);
    let r = |k: usize| w.ctx().residue(k);
    match (kind, p) {
        (PatternKind::Imaginary, &[i, j]) => i <= n && i < j && j < i + n && l(i) > l(j) + 1,
        (PatternKind::RealFirst, &[i, g, j, k]) => {
            i < n && j < i + n && k < g + n && l(i) >= l(j) && l(j) > l(g) && l(g) >= l(k)
        }
        (PatternKind::RealSecond, &[i, j, g, k]) => {
            i <= n && g < i + n && k < j + n && l(j) > l(i) && l(i) >= l(k) && l(k) > l(g)
        }
        (PatternKind::ExcFirst, &[i, g, j, k]) => j == i + n && k < g + n && l(i) > l(r(g)) + 1 && l(g) >= l(k),
        (PatternKind::ExcSecond, &[i, j, g, k]) => k == i + n && l(i) < l(j) && l(i) > l(g),
        _ => false,
    }
}

/// Every occurrence of the requested kinds, in kind order then index order.
pub fn find_patterns(w: &Point, kinds: &[PatternKind]) -> Vec<Pattern> {
    let n = w.ctx().n();
    let m = 2 * n;
    let mut out = Vec::new();
    for kind in PatternKind::ALL {
        if !kinds.contains(&kind) {
            continue;
        }
        let mut push = |idx: Vec<usize>| {
            if matches_kind(kind, &idx, w) {
                out.push(Pattern { kind, indices: idx, host: w.clone() });
            }
        };
        if kind == PatternKind::Imaginary {
            for i in 1..=n {
                for j in i + 1..i + n {
                    push(vec![i, j]);
                }
            }
            continue;
        }
        for a in 1..=m {
            for b in a + 1..=m {
                for c in b + 1..=m {
                    for d in c + 1..=m {
                        push(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn swap(x: &Point, p: usize, q: usize) -> Result<Point> {
    swap_positions(x, p, q).ok_or_else(|| Error::MalformedPattern(format!("swap ({p},{q}) leaves I^u")))
}

fn assign(w: &Point, values: &[(usize, usize)]) -> Result<Point> {
    let n = w.ctx().n();
    let mut l = w.lengths().to_vec();
    for &(pos, v) in values {
        if pos <= n {
            l[pos - 1] = v;
        } else {
            l[pos - n - 1] =
                v.checked_sub(1).ok_or_else(|| Error::MalformedPattern(format!("position {pos} would be negative")))?;
        }
    }
    Point::from_lengths(w.ctx(), l)
}

fn imaginary_point(w: &Point, i: usize, j: usize) -> Point {
    let mut l = w.lengths().to_vec();
    l[i - 1] -= 1;
    l[w.ctx().residue(j) - 1] += 1;
    Point::from_lengths_unchecked(w.ctx(), l)
}

fn exc_second_first(w: &Point, i: usize, j: usize, g: usize) -> Result<(Point, Point)> {
    let ctx = w.ctx();
    let w1 = down_exchange(w, i, j)?;
    let (rj, rg) = (ctx.residue(j), ctx.residue(g));
    let q = if rj < rg { rg } else { rg + ctx.n() };
    if !matches_kind(PatternKind::Imaginary, &[rj, q], &w1) {
        return Err(Error::MalformedPattern(format!("({rj},{q}) is not imaginary after {i}↓{j}")));
    }
    Ok((imaginary_point(&w1, rj, q), w1))
}

/// `w_P`, or `(w_{P,1}, w_{P,2})` for exceptional patterns of the second kind.
pub fn apply_pattern(p: &Pattern) -> Result<Vec<Point>> {
    let w = &p.host;
    let l = |k: usize| w.l_at(k);
    let points = match (p.kind, p.indices.as_slice()) {
        (PatternKind::Imaginary, &[i, j]) => vec![imaginary_point(w, i, j)],
        (PatternKind::RealFirst, &[i, g, j, k]) => {
            let direct = assign(w, &[(i, l(g)), (g, l(k)), (j, l(i)), (k, l(j))])?;
            let seq = [(i, g), (g, j), (g, k)].iter().try_fold(w.clone(), |x, &(a, b)| down_exchange(&x, a, b))?;
            debug_assert_eq!(direct, seq);
            vec![direct]
        }
        (PatternKind::RealSecond, &[i, j, g, k]) => {
            let direct = assign(w, &[(i, l(g)), (j, l(i)), (g, l(k)), (k, l(j))])?;
            let seq = [(j, k), (i, j), (i, g)].iter().try_fold(w.clone(), |x, &(a, b)| down_exchange(&x, a, b))?;
            debug_assert_eq!(direct, seq);
            vec![direct]
        }
        (PatternKind::ExcFirst, &[i, g, j, k]) => {
            let mut x = swap(w, i, g)?;
            if l(i) > l(g) + 1 {
                x = swap(&x, g, j)?;
            }
            x = swap(&x, g, k)?;
            vec![x]
        }
        (PatternKind::ExcSecond, &[i, j, g, _]) => {
            let (w1, _) = exc_second_first(w, i, j, g)?;
            let w2 = [(i, j), (i, j), (i, g)].iter().try_fold(w.clone(), |x, &(a, b)| down_exchange(&x, a, b))?;
            vec![w1, w2]
        }
        _ => return Err(Error::MalformedPattern(p.to_string())),
    };
    for x in &points {
        if x == w || !tuple_leq(&x.tuple(), &w.tuple()) {
            return Err(Error::MalformedPattern(format!("{p}: {x} is not strictly below {w}")));
        }
    }
    Ok(points)
}

fn named_large(x: &Point, target: &Point, w: &Point) -> Option<SingularWitness> {
    let r = reflection_between(x, target)?;
    let wit = SingularWitness::LargeReflection { reflection: r, image: target.clone() };
    wit.validate(x, w).then_some(wit)
}

fn first_valid(x: &Point, w: &Point, named: Option<SingularWitness>) -> Result<SingularWitness> {
    named
        .into_iter()
        .chain(certificate_witnesses(x, w))
        .find(|c| c.validate(x, w))
        .ok_or_else(|| Error::CertificateUnavailable(format!("no witness for {x} in X({w})")))
}

/// One certificate per point returned by [`apply_pattern`].
pub fn pattern_certificates(p: &Pattern) -> Result<Vec<Result<SingularWitness>>> {
    let w = &p.host;
    let ctx = w.ctx();
    let n = ctx.n();
    let points = apply_pattern(p)?;
    let x = &points[0];
    let l = |k: usize| w.l_at(k);
    Ok(match (p.kind, p.indices.as_slice()) {
        (PatternKind::Imaginary, _) => vec![first_valid(x, w, named_large(x, w, w))],
        (PatternKind::RealFirst, &[i, _, _, k]) | (PatternKind::RealSecond, &[i, _, _, k]) => {
            let curves = reflections::curve_set_unchecked(x, w).len();
            let dim = dim_schubert(w);
            let excess = (k < i + n).then_some(SingularWitness::ExcessCurves { curves, dim });
            vec![first_valid(x, w, excess)]
        }
        (PatternKind::ExcFirst, &[_, g, _, k]) => {
            let named = if g > n { named_large(x, &down_exchange(w, g, k)?, w) } else { None };
            vec![first_valid(x, w, named)]
        }
        (PatternKind::ExcSecond, &[i, j, g, _]) => {
            let (w1, w_prime) = exc_second_first(w, i, j, g)?;
            let first = first_valid(&w1, w, named_large(&w1, &w_prime, w));
            let second = if l(i) + 1 < l(j) {
                let w_second = down_exchange(w, i, g)?;
                first_valid(&points[1], w, named_large(&points[1], &w_second, w))
            } else {
                Err(Error::CertificateUnavailable(format!("{p}: second point needs l_i < l_j - 1")))
            };
            vec![first, second]
        }
        _ => return Err(Error::MalformedPattern(p.to_string())),
    })
}

/// The certificate for `w_P` (for `EXC_SECOND`, for `w_{P,1}`).
pub fn pattern_certificate(p: &Pattern) -> Result<SingularWitness> {
    pattern_certificates(p)?.swap_remove(0)
}
