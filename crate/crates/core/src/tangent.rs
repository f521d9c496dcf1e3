//! Real and imaginary tangent bookkeeping.
//!
//! Tangent spaces split by T̂-weight into a real part, one line per root
//! `ξ_α̂` defined at `x`, and imaginary levels `-hδ` spanned by `ξ_{i,h}`
//! for `i ∈ S(h,x)`. A trace relation cuts each imaginary level by one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bruhat::{dim_schubert, require_leq, tuple_leq};
use crate::classical::transpose;
use crate::error::{Error, Result};
use crate::loci::one_string_critical_index;
use crate::point::Point;
use crate::reflections::{self, reflection_apply, AffineRoot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Bounds { lower: usize, upper: usize },
}

/// Dimension breakdown of a tangent space by weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub point: Point,
    pub ambient: Point,
    pub real_dim: usize,
    /// Levels `1..=d`.
    pub imaginary_dims: BTreeMap<usize, usize>,
    pub total: usize,
    pub exactness: Exactness,
}

impl TangentReport {
    fn new(point: &Point, ambient: &Point, real_dim: usize, imag: BTreeMap<usize, usize>) -> Self {
        let total = real_dim + imag.values().sum::<usize>();
        TangentReport {
            point: point.clone(),
            ambient: ambient.clone(),
            real_dim,
            imaginary_dims: imag,
            total,
            exactness: Exactness::Exact,
        }
    }

    pub fn has_imaginary(&self) -> bool {
        self.imaginary_dims.values().any(|&v| v > 0)
    }
}

/// Whether `ξ_α̂` is defined at `x`.
pub fn real_tangent_defined(x: &Point, root: AffineRoot) -> bool {
    let ctx = x.ctx();
    let (n, d) = (ctx.n() as i64, ctx.d() as i64);
    let lj = x.length(root.j) as i64;
    if lj == 0 {
        return false;
    }
    let t = d - lj;
    let hi = x.head(root.i) as i64;
    let i = root.i as i64;
    t + root.h >= 0 && i + (t + root.h) * n < hi && i + (t + root.h + lj) * n >= hi
}

/// All roots whose real tangent is defined at `x`, sorted.
pub fn defined_roots(x: &Point) -> Vec<AffineRoot> {
    let ctx = x.ctx();
    let (n, d) = (ctx.n(), ctx.d() as i64);
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for h in -d..=d {
                let root = AffineRoot::new(i, j, h);
                if real_tangent_defined(x, root) {
                    out.push(root);
                }
            }
        }
    }
    out
}

fn in_classical(x: &Point, xt: &[usize], wt: &[usize], root: AffineRoot) -> bool {
    let ctx = x.ctx();
    let (n, d) = (ctx.n() as i64, ctx.d() as i64);
    let hi = x.head(root.i) as i64;
    (0..d).all(|k| {
        let q = root.j as i64 + k * n;
        let p = root.i as i64 + (k + root.h) * n;
        if xt.binary_search(&(q as usize)).is_err() || p < 1 || p >= hi {
            return true;
        }
        tuple_leq(&transpose(xt, p as usize, q as usize), wt)
    })
}

/// Whether every transposition in the support of `ξ_α̂` keeps `x` below `w`.
pub fn real_tangent_in_classical(x: &Point, w: &Point, root: AffineRoot) -> Result<bool> {
    require_leq(x, w)?;
    if !real_tangent_defined(x, root) {
        return Err(Error::RootNotDefined(root.to_string()));
    }
    Ok(in_classical(x, &x.tuple(), &w.tuple(), root))
}

/// `S(h,x) = {i : h ≤ ℓ_i ≤ d-h}`.
pub fn s_imag(h: usize, x: &Point) -> Vec<usize> {
    let d = x.ctx().d();
    (1..=x.ctx().n())
        .filter(|&i| {
            let l = x.length(i);
            h >= 1 && h <= l && l + h <= d
        })
        .collect()
}

fn s_imag_w_unchecked(h: usize, x: &Point, xt: &[usize], wt: &[usize]) -> Vec<usize> {
    let n = x.ctx().n();
    s_imag(h, x)
        .into_iter()
        .filter(|&i| {
            let hi = x.head(i);
            (0..h).all(|m| tuple_leq(&transpose(xt, hi + m * n - h * n, hi + m * n), wt))
        })
        .collect()
}

/// `S(h,x,w)`: the members of `S(h,x)` whose imaginary transpositions stay below `w`.
pub fn s_imag_w(h: usize, x: &Point, w: &Point) -> Result<Vec<usize>> {
    require_leq(x, w)?;
    Ok(s_imag_w_unchecked(h, x, &x.tuple(), &w.tuple()))
}

fn imaginary_levels(x: &Point, mut size: impl FnMut(usize) -> usize) -> BTreeMap<usize, usize> {
    (1..=x.ctx().d()).map(|h| (h, size(h).saturating_sub(1))).collect()
}

/// `T_x(X(wˢ))`, exact.
pub fn tangent_dim_top(x: &Point) -> TangentReport {
    let top = x.ctx().top();
    let real = reflections::curve_set_unchecked(x, &top).len();
    let imag = imaginary_levels(x, |h| s_imag(h, x).len());
    TangentReport::new(x, &top, real, imag)
}

/// `T_x(X(w))` for `w` consisting of one string, exact.
pub fn tangent_dim_one_string(x: &Point, w: &Point) -> Result<TangentReport> {
    require_leq(x, w)?;
    if one_string_critical_index(w).is_none() {
        return Err(Error::NotOneString(w.to_string()));
    }
    Ok(one_string_report(x, w))
}

pub(crate) fn one_string_report(x: &Point, w: &Point) -> TangentReport {
    let (xt, wt) = (x.tuple(), w.tuple());
    let real = reflections::curve_set_unchecked(x, w).len();
    let imag = imaginary_levels(x, |h| s_imag_w_unchecked(h, x, &xt, &wt).len());
    TangentReport::new(x, w, real, imag)
}

/// `dim T_x(Y(w))^u`.
pub fn classical_u_tangent_dim(x: &Point, w: &Point) -> Result<usize> {
    require_leq(x, w)?;
    let (xt, wt) = (x.tuple(), w.tuple());
    let real = defined_roots(x).into_iter().filter(|&r| in_classical(x, &xt, &wt, r)).count();
    let imag: usize = (1..=x.ctx().d()).map(|h| s_imag_w_unchecked(h, x, &xt, &wt).len()).sum();
    Ok(real + imag)
}

/// Curve-count lower bound and `T_x(X(wˢ)) ∩ T_x(Y(w))` upper bound for general `w`.
pub fn tangent_bounds_general(x: &Point, w: &Point) -> Result<TangentReport> {
    require_leq(x, w)?;
    if one_string_critical_index(w).is_some() {
        return Err(Error::ExactRouteAvailable(w.to_string()));
    }
    if x == w {
        let dim = dim_schubert(w);
        return Ok(TangentReport::new(x, w, dim, imaginary_levels(x, |_| 0)));
    }
    let ctx = x.ctx();
    let (xt, wt) = (x.tuple(), w.tuple());
    let lower = reflections::curve_set_unchecked(x, w).len();
    let real = defined_roots(x)
        .into_iter()
        .filter(|&root| {
            if root.is_positive() {
                return true;
            }
            let r = root.reflection();
            if r.is_small_in(ctx) {
                reflection_apply(x, &r).is_some_and(|y| tuple_leq(&y.tuple(), &wt))
            } else {
                in_classical(x, &xt, &wt, root)
            }
        })
        .count();
    let imag = imaginary_levels(x, |h| s_imag_w_unchecked(h, x, &xt, &wt).len());
    let mut report = TangentReport::new(x, w, real, imag);
    report.exactness = Exactness::Bounds { lower, upper: report.total };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Context;

    fn c41() -> Context {
        Context::new(4, 1).unwrap()
    }

    fn pt(c: Context, l: &[usize]) -> Point {
        Point::from_lengths(c, l.to_vec()).unwrap()
    }

    #[test]
    fn defined_at_examples() {
        let c = c41();
        assert!(real_tangent_defined(&c.e(), AffineRoot::new(1, 2, -1)));
        assert!(!real_tangent_defined(&c.e(), AffineRoot::new(1, 2, 0)));
        assert!(!real_tangent_defined(&c.top(), AffineRoot::new(1, 2, 0)));
        assert_eq!(defined_roots(&c.e()).len(), 12);
    }

    #[test]
    fn imaginary_sets() {
        let c = c41();
        let x = pt(c, &[3, 1, 0, 0]);
        assert_eq!(s_imag(1, &c.e()), vec![1, 2, 3, 4]);
        assert!(s_imag(2, &c.e()).is_empty());
        assert_eq!(s_imag(1, &x), vec![1, 2]);
        let k2 = c.kappa(2).unwrap();
        assert_eq!(s_imag_w(1, &c.e(), &k2).unwrap(), vec![1, 2]);
        assert_eq!(s_imag_w(1, &x, &c.top()).unwrap(), vec![1, 2]);
    }

    #[test]
    fn reports() {
        let c = c41();
        let r = tangent_dim_top(&c.e());
        assert_eq!((r.real_dim, r.imaginary_dims[&1], r.total), (12, 3, 15));
        assert_eq!(tangent_dim_top(&c.top()).total, 12);
        let r = tangent_dim_top(&pt(c, &[3, 1, 0, 0]));
        assert_eq!((r.real_dim, r.imaginary_dims[&1], r.total), (12, 1, 13));
        let k2 = c.kappa(2).unwrap();
        let r = tangent_dim_one_string(&c.e(), &k2).unwrap();
        assert_eq!((r.real_dim, r.imaginary_dims[&1], r.total), (6, 1, 7));
        assert_eq!(tangent_dim_one_string(&k2, &k2).unwrap().total, 6);
    }

    #[test]
    fn classical_u_counts() {
        let c = c41();
        assert_eq!(classical_u_tangent_dim(&c.e(), &c.top()).unwrap(), 16);
        assert_eq!(classical_u_tangent_dim(&c.top(), &c.top()).unwrap(), 12);
        assert_eq!(classical_u_tangent_dim(&c.e(), &c.kappa(2).unwrap()).unwrap(), 8);
    }

    #[test]
    fn bounds_routing() {
        let c = c41();
        assert!(matches!(tangent_bounds_general(&c.e(), &c.top()), Err(Error::ExactRouteAvailable(_))));
        let w = pt(c, &[0, 2, 2, 0]);
        let r = tangent_bounds_general(&c.e(), &w).unwrap();
        let Exactness::Bounds { lower, upper } = r.exactness else { panic!("expected bounds") };
        assert!(lower <= upper);
        let r = tangent_bounds_general(&w, &w).unwrap();
        assert_eq!((r.exactness, r.total), (Exactness::Exact, dim_schubert(&w)));
    }
}
