//! The Bruhat order on I-tuples and on `I^u`, dimensions, and interval enumeration.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{Context, Point};
use crate::reflections;

/// Largest context enumerated without an explicit bound.
pub const DEFAULT_POINT_BOUND: u128 = 1_000_000;

/// `x ≤ w` on raw I-tuples: every entry of `x` is at least the matching entry of `w`.
pub fn tuple_leq(x: &[usize], w: &[usize]) -> bool {
    x.len() == w.len() && x.iter().zip(w).all(|(a, b)| a >= b)
}

pub fn leq(x: &Point, w: &Point) -> Result<bool> {
    x.same_ctx(w)?;
    Ok(tuple_leq(&x.tuple(), &w.tuple()))
}

pub fn lt(x: &Point, w: &Point) -> Result<bool> {
    Ok(x != w && leq(x, w)?)
}

pub(crate) fn require_leq(x: &Point, w: &Point) -> Result<()> {
    if leq(x, w)? {
        Ok(())
    } else {
        Err(Error::NotComparable { x: x.to_string(), w: w.to_string() })
    }
}

/// `dim X(w)`: the number of reflections moving `w` to a point below it.
pub fn dim_schubert(w: &Point) -> usize {
    reflections::curve_set_unchecked(w, w).len()
}

pub fn codim(x: &Point, w: &Point) -> Result<usize> {
    require_leq(x, w)?;
    Ok(dim_schubert(w) - dim_schubert(x))
}

/// The points below `top` with their Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalIndex {
    ctx: Context,
    top: Point,
    members: Vec<Point>,
    cover_edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    n: usize,
    s: usize,
    top: Vec<usize>,
    members: Vec<Vec<usize>>,
    cover_edges: Vec<(usize, usize)>,
}

impl Serialize for IntervalIndex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr {
            n: self.ctx.n(),
            s: self.ctx.s(),
            top: self.top.lengths().to_vec(),
            members: self.members.iter().map(|m| m.lengths().to_vec()).collect(),
            cover_edges: self.cover_edges.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntervalIndex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = IntervalRepr::deserialize(de)?;
        let build = || -> Result<IntervalIndex> {
            let ctx = Context::new(r.n, r.s)?;
            let top = Point::from_lengths(ctx, r.top)?;
            let members = r.members.into_iter().map(|l| Point::from_lengths(ctx, l)).collect::<Result<Vec<_>>>()?;
            Ok(IntervalIndex { ctx, top, members, cover_edges: r.cover_edges })
        };
        let idx = build().map_err(D::Error::custom)?;
        let m = idx.members.len();
        if idx.cover_edges.iter().any(|&(a, b)| a >= m || b >= m) {
            return Err(D::Error::custom("cover edge index out of range"));
        }
        Ok(idx)
    }
}

impl IntervalIndex {
    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn top(&self) -> &Point {
        &self.top
    }

    /// Members sorted by length vector.
    pub fn members(&self) -> &[Point] {
        &self.members
    }

    /// Pairs `(lower, upper)` of member indices.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.members.binary_search(p).ok()
    }

    /// Reflexive-transitive closure of the cover edges: row `a` holds all `b ≥ a`.
    pub fn up_closure(&self) -> Vec<FixedBitSet> {
        let m = self.members.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut indeg = vec![0usize; m];
        for &(a, b) in &self.cover_edges {
            up[a].push(b);
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(m);
        let mut stack: Vec<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &b in &up[v] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
        let mut reach = vec![FixedBitSet::with_capacity(m); m];
        for &v in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(m);
            row.insert(v);
            for &b in &up[v] {
                row.union_with(&reach[b]);
            }
            reach[v] = row;
        }
        reach
    }
}

pub fn interval_below(w: &Point) -> Result<IntervalIndex> {
    interval_below_bounded(w, DEFAULT_POINT_BOUND)
}

/// Enumerates `{p ≤ w}` and reduces the order to its cover relation.
pub fn interval_below_bounded(w: &Point, bound: u128) -> Result<IntervalIndex> {
    let ctx = w.ctx();
    let count = ctx.point_count();
    if count > bound {
        return Err(Error::ResourceBound { count, bound });
    }
    let wt = w.tuple();
    let members: Vec<Point> = ctx.points().into_par_iter().filter(|p| tuple_leq(&p.tuple(), &wt)).collect();
    let tuples: Vec<Vec<usize>> = members.par_iter().map(Point::tuple).collect();
    let m = members.len();
    let below: Vec<FixedBitSet> = (0..m)
        .into_par_iter()
        .map(|b| {
            let mut row = FixedBitSet::with_capacity(m);
            for a in 0..m {
                if a != b && tuple_leq(&tuples[a], &tuples[b]) {
                    row.insert(a);
                }
            }
            row
        })
        .collect();
    let mut cover_edges: Vec<(usize, usize)> = (0..m)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut covers = below[b].clone();
            for z in below[b].ones() {
                covers.difference_with(&below[z]);
            }
            covers.ones().map(move |a| (a, b)).collect::<Vec<_>>()
        })
        .collect();
    cover_edges.sort_unstable();
    Ok(IntervalIndex { ctx, top: w.clone(), members, cover_edges })
}

/// Longest-chain depth of every member, read off the Hasse diagram.
pub fn chain_depths(idx: &IntervalIndex) -> HashMap<Point, usize> {
    let m = idx.members.len();
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(a, b) in &idx.cover_edges {
        down[b].push(a);
    }
    let mut depth: Vec<Option<usize>> = vec![None; m];
    fn visit(v: usize, down: &[Vec<usize>], depth: &mut [Option<usize>]) -> usize {
        if let Some(d) = depth[v] {
            return d;
        }
        let d = down[v].iter().map(|&a| visit(a, down, depth) + 1).max().unwrap_or(0);
        depth[v] = Some(d);
        d
    }
    for v in 0..m {
        visit(v, &down, &mut depth);
    }
    idx.members.iter().cloned().zip(depth.into_iter().map(|d| d.unwrap_or(0))).collect()
}
