//! The classical Schubert variety `Y(w) ⊂ G(d,V)` on raw I-tuples:
//! conjugate Meyer diagram, hooks, dimension and tangent dimension.

use std::fmt;

use serde::Serialize;

use crate::bruhat::tuple_leq;
use crate::error::{Error, Result};
use crate::point::Context;

/// `r_{pq}·x`: replace `q` by `p` and re-sort.
pub fn transpose(x: &[usize], p: usize, q: usize) -> Vec<usize> {
    let mut out: Vec<usize> = x.iter().map(|&v| if v == q { p } else { v }).collect();
    out.sort_unstable();
    out
}

fn check_tuple(ctx: Context, w: &[usize]) -> Result<()> {
    let (d, max) = (ctx.d(), ctx.dim_v());
    if w.len() != d {
        return Err(Error::MalformedTuple(format!("{} entries, expected {d}", w.len())));
    }
    if w.iter().any(|&v| v < 1 || v > max) {
        return Err(Error::MalformedTuple(format!("entries must lie in [1, {max}]")));
    }
    if w.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::MalformedTuple("entries must be strictly increasing".into()));
    }
    Ok(())
}

/// Row lengths `d(n-1) + i - w_i`, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeyerDiagram {
    rows: Vec<usize>,
}

impl MeyerDiagram {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().sum()
    }
}

impl fmt::Display for MeyerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|&r| "□".repeat(r)).collect();
        write!(f, "{}", rows.join("\n"))
    }
}

pub fn meyer_diagram(ctx: Context, w: &[usize]) -> Result<MeyerDiagram> {
    check_tuple(ctx, w)?;
    let rows = w.iter().enumerate().map(|(k, &v)| ctx.e_entry(k + 1) - v).collect();
    Ok(MeyerDiagram { rows })
}

pub fn classical_dim(ctx: Context, w: &[usize]) -> Result<usize> {
    Ok(meyer_diagram(ctx, w)?.boxes())
}

/// `|R_i| > |R_{i+1}| = … = |R_{i+k}| > |R_{i+k+1}|` with `k > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hook {
    pub i: usize,
    pub k: usize,
}

pub fn hooks(ctx: Context, w: &[usize]) -> Result<Vec<Hook>> {
    let rows = meyer_diagram(ctx, w)?.rows;
    let d = rows.len();
    let row = |i: usize| if i <= d { rows[i - 1] } else { 0 };
    let mut out = Vec::new();
    for i in 1..d {
        if row(i) <= row(i + 1) {
            continue;
        }
        let mut k = 1;
        while i + k < d && row(i + k + 1) == row(i + 1) {
            k += 1;
        }
        if row(i + k) > row(i + k + 1) {
            out.push(Hook { i, k });
        }
    }
    Ok(out)
}

/// Replaces `w_i` by `w_{i+k} + 1`.
pub fn hook_point(ctx: Context, w: &[usize], hook: Hook) -> Result<Vec<usize>> {
    if !hooks(ctx, w)?.contains(&hook) {
        return Err(Error::MalformedTuple(format!("no hook at ({}, {})", hook.i, hook.k)));
    }
    let mut out = w.to_vec();
    out[hook.i - 1] = w[hook.i + hook.k - 1] + 1;
    out.sort_unstable();
    Ok(out)
}

/// `|{(p,q) : q ∈ x, p ∉ x, r_{pq}·x ≤ w}|`.
pub fn classical_tangent_dim(ctx: Context, x: &[usize], w: &[usize]) -> Result<usize> {
    check_pair(ctx, x, w)?;
    let mut count = 0;
    for &q in x {
        for p in 1..=ctx.dim_v() {
            if x.binary_search(&p).is_err() && tuple_leq(&transpose(x, p, q), w) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The same count, taken over every transposition of `S_{dn}` that moves `x`.
pub fn classical_tangent_dim_by_transpositions(ctx: Context, x: &[usize], w: &[usize]) -> Result<usize> {
    check_pair(ctx, x, w)?;
    let max = ctx.dim_v();
    let mut count = 0;
    for a in 1..=max {
        for b in a + 1..=max {
            let mut y: Vec<usize> = x
                .iter()
                .map(|&v| {
                    if v == a {
                        b
                    } else if v == b {
                        a
                    } else {
                        v
                    }
                })
                .collect();
            y.sort_unstable();
            if y != x && tuple_leq(&y, w) {
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn classical_smooth(ctx: Context, x: &[usize], w: &[usize]) -> Result<bool> {
    Ok(classical_tangent_dim(ctx, x, w)? == classical_dim(ctx, w)?)
}

fn check_pair(ctx: Context, x: &[usize], w: &[usize]) -> Result<()> {
    check_tuple(ctx, x)?;
    check_tuple(ctx, w)?;
    if !tuple_leq(x, w) {
        return Err(Error::NotComparable { x: format!("{x:?}"), w: format!("{w:?}") });
    }
    Ok(())
}
