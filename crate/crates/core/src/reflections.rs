//! Affine reflections acting on points, up/down exchanges and curve sets.
//!
//! The root `(i j) + hδ` moves string lengths by `ℓ'_i = ℓ_j - h`,
//! `ℓ'_j = ℓ_i + h`. On the I-tuple it shifts residue-`j` entries by
//! `(i-j) + h·n` and residue-`i` entries by the opposite amount.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bruhat::{self, require_leq};
use crate::error::{Error, Result};
use crate::point::{Context, Point};

/// The affine root `(i j) + hδ` with residues `i ≠ j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub i: usize,
    pub j: usize,
    pub h: i64,
}

impl AffineRoot {
    pub fn new(i: usize, j: usize, h: i64) -> Self {
        debug_assert_ne!(i, j);
        AffineRoot { i, j, h }
    }

    pub fn negate(self) -> Self {
        AffineRoot { i: self.j, j: self.i, h: -self.h }
    }

    /// `h > 0`, or `h = 0` with `i > j`.
    pub fn is_positive(self) -> bool {
        self.h > 0 || (self.h == 0 && self.i > self.j)
    }

    pub fn reflection(self) -> Reflection {
        Reflection::new(self.i, self.j, self.h)
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.h)
    }
}

/// A reflection `s_α̂ = s_{-α̂}`, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "AffineRoot", into = "AffineRoot")]
pub struct Reflection {
    i: usize,
    j: usize,
    h: i64,
}

impl From<AffineRoot> for Reflection {
    fn from(r: AffineRoot) -> Self {
        r.reflection()
    }
}

impl From<Reflection> for AffineRoot {
    fn from(r: Reflection) -> Self {
        r.root()
    }
}

impl Reflection {
    pub fn new(i: usize, j: usize, h: i64) -> Self {
        debug_assert_ne!(i, j);
        if i < j {
            Reflection { i, j, h }
        } else {
            Reflection { i: j, j: i, h: -h }
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn root(&self) -> AffineRoot {
        AffineRoot { i: self.i, j: self.j, h: self.h }
    }

    /// Shift applied to residue-`j` entries of the I-tuple.
    pub fn displacement(&self, ctx: Context) -> i64 {
        (self.i as i64 - self.j as i64) + self.h * ctx.n() as i64
    }

    pub fn is_small_in(&self, ctx: Context) -> bool {
        self.displacement(ctx).unsigned_abs() < ctx.n() as u64
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.h)
    }
}

/// `s·x`, or `None` when `s` is not defined at `x`.
pub fn reflection_apply(x: &Point, r: &Reflection) -> Option<Point> {
    let (li, lj) = (x.length(r.i) as i64, x.length(r.j) as i64);
    let (ni, nj) = (lj - r.h, li + r.h);
    if ni < 0 || nj < 0 {
        return None;
    }
    let mut l = x.lengths().to_vec();
    l[r.i - 1] = ni as usize;
    l[r.j - 1] = nj as usize;
    Some(Point::from_lengths_unchecked(x.ctx(), l))
}

fn moved_image(x: &Point, r: &Reflection) -> Result<Point> {
    match reflection_apply(x, r) {
        None => Err(Error::ReflectionUndefined(r.to_string())),
        Some(y) if &y == x => Err(Error::ReflectionFixesPoint(r.to_string())),
        Some(y) => Ok(y),
    }
}

/// Whether every entry moved by `r` moves by less than `n`.
pub fn is_small(x: &Point, r: &Reflection) -> Result<bool> {
    moved_image(x, r)?;
    Ok(r.is_small_in(x.ctx()))
}

/// Every reflection moving `x`, paired with its image, sorted.
pub fn moving_reflections(x: &Point) -> Vec<(Reflection, Point)> {
    let n = x.ctx().n();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let (li, lj) = (x.length(i) as i64, x.length(j) as i64);
            for h in -li..=lj {
                if h == lj - li {
                    continue;
                }
                let r = Reflection { i, j, h };
                if let Some(y) = reflection_apply(x, &r) {
                    out.push((r, y));
                }
            }
        }
    }
    out
}

pub(crate) fn curve_set_unchecked(x: &Point, w: &Point) -> Vec<Reflection> {
    let wt = w.tuple();
    moving_reflections(x).into_iter().filter(|(_, y)| bruhat::tuple_leq(&y.tuple(), &wt)).map(|(r, _)| r).collect()
}

/// `E(X(w), x)`: reflections `s` with `x ≠ s·x ≤ w`.
pub fn curve_set(x: &Point, w: &Point) -> Result<Vec<Reflection>> {
    require_leq(x, w)?;
    Ok(curve_set_unchecked(x, w))
}

/// Reflections `s` with `x < s·x ≤ w`.
pub fn up_reflections(x: &Point, w: &Point) -> Result<Vec<Reflection>> {
    require_leq(x, w)?;
    let (xt, wt) = (x.tuple(), w.tuple());
    Ok(moving_reflections(x)
        .into_iter()
        .filter(|(_, y)| {
            let yt = y.tuple();
            bruhat::tuple_leq(&xt, &yt) && bruhat::tuple_leq(&yt, &wt)
        })
        .map(|(r, _)| r)
        .collect())
}

/// The reflection taking `x` to `y` when they differ in exactly two strings.
pub fn reflection_between(x: &Point, y: &Point) -> Option<Reflection> {
    if x.ctx() != y.ctx() {
        return None;
    }
    let diff: Vec<usize> = (1..=x.ctx().n()).filter(|&k| x.length(k) != y.length(k)).collect();
    let &[i, j] = diff.as_slice() else { return None };
    let r = Reflection::new(i, j, x.length(j) as i64 - y.length(i) as i64);
    (reflection_apply(x, &r).as_ref() == Some(y)).then_some(r)
}

fn residue_pair(ctx: Context, a: usize, b: usize) -> Result<(usize, usize)> {
    let max = 2 * ctx.n();
    for v in [a, b] {
        if v < 1 || v > max {
            return Err(Error::IndexOutOfRange { index: v, max });
        }
    }
    let (ra, rb) = (ctx.residue(a), ctx.residue(b));
    if ra == rb {
        return Err(Error::SameResidue { a, b });
    }
    Ok((ra.min(rb), ra.max(rb)))
}

/// Canonical positions `i < j < i+n` with `L_i > L_j` for a down-exchange of two residues.
pub fn down_positions(x: &Point, a: usize, b: usize) -> Result<Option<(usize, usize)>> {
    let n = x.ctx().n();
    let (a, b) = residue_pair(x.ctx(), a, b)?;
    let (la, lb) = (x.length(a), x.length(b));
    Ok(if la > lb {
        Some((a, b))
    } else if lb > la + 1 {
        Some((b, a + n))
    } else {
        None
    })
}

/// Canonical positions `i < j < i+n` with `L_i < L_j` for an up-exchange.
pub fn up_positions(x: &Point, a: usize, b: usize) -> Result<Option<(usize, usize)>> {
    let n = x.ctx().n();
    let (a, b) = residue_pair(x.ctx(), a, b)?;
    let (la, lb) = (x.length(a), x.length(b));
    Ok(if la < lb {
        Some((a, b))
    } else if lb == 0 {
        None
    } else {
        Some((b, a + n))
    })
}

/// Swaps the L-vector entries at positions `p < q < p+n`; `None` if a length turns negative.
pub fn swap_positions(x: &Point, p: usize, q: usize) -> Option<Point> {
    let n = x.ctx().n();
    debug_assert!(p < q && q < p + n && q <= 2 * n);
    let (lp, lq) = (x.l_at(p), x.l_at(q));
    let mut l = x.lengths().to_vec();
    for (pos, v) in [(p, lq), (q, lp)] {
        if pos <= n {
            l[pos - 1] = v;
        } else {
            l[pos - n - 1] = v.checked_sub(1)?;
        }
    }
    Some(Point::from_lengths_unchecked(x.ctx(), l))
}

// Canonical exchange positions never empty a string below zero.
pub(crate) fn exchange_at(x: &Point, p: usize, q: usize) -> Point {
    swap_positions(x, p, q).expect("canonical exchange keeps lengths non-negative")
}

/// The reflection realizing the L-vector swap at positions `p < q < p+n`.
pub fn position_swap_reflection(ctx: Context, p: usize, q: usize) -> Reflection {
    let n = ctx.n();
    let (p, q) = if p > n { (p - n, q - n) } else { (p, q) };
    if q <= n {
        Reflection::new(p, q, 0)
    } else {
        Reflection::new(q - n, p, 1)
    }
}

/// Down-exchange of residues `a`, `b`; the identity when no canonical pair exists.
pub fn down_exchange(x: &Point, a: usize, b: usize) -> Result<Point> {
    Ok(match down_positions(x, a, b)? {
        Some((i, j)) => exchange_at(x, i, j),
        None => x.clone(),
    })
}

/// Inverse of [`down_exchange`]; `None` when the source string is empty.
pub fn up_exchange(x: &Point, a: usize, b: usize) -> Result<Option<Point>> {
    Ok(up_positions(x, a, b)?.map(|(i, j)| exchange_at(x, i, j)))
}

fn nontrivial_down(x: &Point, a: usize, b: usize) -> Result<(usize, usize)> {
    down_positions(x, a, b)?.ok_or(Error::IdentityExchange { a, b })
}

/// `(g≥, g>)` over the positions strictly between the canonical pair.
pub fn exchange_gaps(x: &Point, a: usize, b: usize) -> Result<(usize, usize)> {
    let (i, j) = nontrivial_down(x, a, b)?;
    let (li, lj) = (x.l_at(i), x.l_at(j));
    let mid = || (i + 1..j).map(|k| x.l_at(k));
    let ge = mid().filter(|&l| li >= l && l >= lj).count();
    let gt = mid().filter(|&l| li > l && l > lj).count();
    Ok((ge, gt))
}

/// `1 + g≥ + g>`, the codimension of the down-exchange in `X(x)`.
pub fn down_exchange_codim(x: &Point, a: usize, b: usize) -> Result<usize> {
    let (ge, gt) = exchange_gaps(x, a, b)?;
    Ok(1 + ge + gt)
}

/// Reflections `s` with `y < s·y ≤ x` attached to the down-exchange `y` of `x`.
pub fn corresponding_reflections(x: &Point, a: usize, b: usize) -> Result<Vec<Reflection>> {
    let ctx = x.ctx();
    let (i, j) = nontrivial_down(x, a, b)?;
    let y = exchange_at(x, i, j);
    let (li, lj) = (x.l_at(i), x.l_at(j));
    let mut out = vec![position_swap_reflection(ctx, i, j)];
    let mut up = |p: usize, q: usize| -> Result<()> {
        if let Some((u, v)) = up_positions(&y, p, q)? {
            out.push(position_swap_reflection(ctx, u, v));
        }
        Ok(())
    };
    for k in i + 1..j {
        let lk = x.l_at(k);
        if li >= lk && lk >= lj {
            if li > lk {
                up(j, k)?;
            }
            if lk > lj {
                up(k, i)?;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// The unique small reflection on the same residue pair sandwiched between `x` and `s·x`.
pub fn small_companion(x: &Point, r: &Reflection) -> Result<Reflection> {
    let sx = moved_image(x, r)?;
    let ctx = x.ctx();
    if r.is_small_in(ctx) {
        return Ok(*r);
    }
    let (xt, st) = (x.tuple(), sx.tuple());
    let going_up = bruhat::tuple_leq(&xt, &st);
    let found: Vec<Reflection> = [0, 1]
        .into_iter()
        .map(|h| Reflection::new(r.i, r.j, h))
        .filter(|c| {
            let Some(y) = reflection_apply(x, c) else { return false };
            if y == *x {
                return false;
            }
            let yt = y.tuple();
            if going_up {
                bruhat::tuple_leq(&xt, &yt) && bruhat::tuple_leq(&yt, &st)
            } else {
                bruhat::tuple_leq(&yt, &xt) && bruhat::tuple_leq(&st, &yt)
            }
        })
        .collect();
    match found.as_slice() {
        [c] => Ok(*c),
        _ => Err(Error::ReflectionUndefined(format!("no unique small companion of {r}"))),
    }
}
