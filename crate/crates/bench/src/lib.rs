//! Shared fixtures for the benchmarks.

use schubert_core::{Context, Point};

/// Comparable pairs `(x, w)` of `ctx` with `x ≤ w`, every `step`-th one, in enumeration order.
pub fn pairs(ctx: Context, step: usize) -> Vec<(Point, Point)> {
    let points = ctx.points();
    let mut out = Vec::new();
    let mut k = 0;
    for w in &points {
        for x in &points {
            if schubert_core::leq(x, w).unwrap_or(false) {
                if k % step == 0 {
                    out.push((x.clone(), w.clone()));
                }
                k += 1;
            }
        }
    }
    out
}

pub fn ctx(n: usize, s: usize) -> Context {
    Context::new(n, s).expect("valid context")
}
