//! Brute-force reference implementations for tests and the verify suites.
//!
//! Nothing here goes through tuple comparison or curve counts. The order is
//! rebuilt from a Coxeter length and reflections acting on residue lattices.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bruhat::require_leq;
use crate::classical::transpose;
use crate::error::{Error, Result};
use crate::loci::is_p_stable;
use crate::patterns::SingularWitness;
use crate::point::{Context, Point};

pub const DEFAULT_ENUMERATION_BOUND: u128 = 20_000;

pub fn enumerate_iu(ctx: Context, bound: u128) -> Result<Vec<Point>> {
    let count = ctx.point_count();
    if count > bound {
        return Err(Error::ResourceBound { count, bound });
    }
    Ok(ctx.points())
}

/// `Σ_{i<j} |ℓ_i - ℓ_j| - #{i<j : ℓ_i < ℓ_j}`.
pub fn coxeter_length(x: &Point) -> usize {
    let l = x.lengths();
    let mut total = 0;
    let mut ascents = 0;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            total += l[i].abs_diff(l[j]);
            ascents += usize::from(l[i] < l[j]);
        }
    }
    total - ascents
}

fn affine_transposition(n: i64, i: i64, j: i64, h: i64) -> impl Fn(i64) -> i64 {
    move |m: i64| {
        let (r, k) = ((m - 1).rem_euclid(n) + 1, (m - 1).div_euclid(n));
        if r == i {
            j + (k - h) * n
        } else if r == j {
            i + (k + h) * n
        } else {
            m
        }
    }
}

/// Applies the affine transposition `i + kn ↔ j + (k-h)n` to the lattice
/// `⋃_i {i + kn : k ≥ d - ℓ_i}` and reads the lengths back off.
pub fn permutation_apply(x: &Point, i: usize, j: usize, h: i64) -> Option<Point> {
    let ctx = x.ctx();
    let (n, d) = (ctx.n() as i64, ctx.d() as i64);
    let sigma = affine_transposition(n, i as i64, j as i64, h);
    let reach = (h.abs() + d + 1) * n;
    let mut lowest = vec![i64::MAX; n as usize];
    for r in 1..=n {
        let start = r + (d - x.length(r as usize) as i64) * n;
        let mut m = start;
        while m <= start + reach {
            let image = sigma(m);
            let slot = &mut lowest[((image - 1).rem_euclid(n)) as usize];
            *slot = (*slot).min(image);
            m += n;
        }
    }
    let lengths: Option<Vec<usize>> = lowest
        .iter()
        .enumerate()
        .map(|(r, &m)| {
            let l = d - (m - 1 - r as i64).div_euclid(n);
            (0..=d).contains(&l).then_some(l as usize)
        })
        .collect();
    Point::from_lengths(ctx, lengths?).ok()
}

/// `max_k |σ(x_k) - x_k|` over the tuple entries of `x`.
pub fn max_displacement(x: &Point, i: usize, j: usize, h: i64) -> usize {
    let sigma = affine_transposition(x.ctx().n() as i64, i as i64, j as i64, h);
    x.tuple().iter().map(|&m| sigma(m as i64).abs_diff(m as i64) as usize).max().unwrap_or(0)
}

/// Every point `sx ≠ x` for reflections `s` with `|h| ≤ d`.
pub fn permutation_neighbours(x: &Point) -> Vec<Point> {
    let ctx = x.ctx();
    let (n, d) = (ctx.n(), ctx.d() as i64);
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for h in -d..=d {
                if let Some(y) = permutation_apply(x, i, j, h) {
                    if y != *x {
                        out.push(y);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The order generated by `x < sx` whenever `sx` is longer, with its covers.
pub struct Poset {
    ctx: Context,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    lengths: Vec<usize>,
    up: Vec<FixedBitSet>,
    covers: Vec<Vec<usize>>,
}

impl Poset {
    pub fn build(ctx: Context, bound: u128) -> Result<Poset> {
        let points = enumerate_iu(ctx, bound)?;
        let index: HashMap<Point, usize> = points.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let lengths: Vec<usize> = points.iter().map(coxeter_length).collect();
        let edges: Vec<Vec<usize>> = points
            .par_iter()
            .zip(&lengths)
            .map(|(x, &lx)| permutation_neighbours(x).iter().map(|y| index[y]).filter(|&k| lengths[k] > lx).collect())
            .collect();
        let size = points.len();
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(lengths[k]));
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for &k in &order {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(k);
            for &t in &edges[k] {
                set.union_with(&up[t]);
            }
            up[k] = set;
        }
        let covers = (0..size)
            .into_par_iter()
            .map(|k| {
                let mut strict = up[k].clone();
                strict.set(k, false);
                let mut beyond = FixedBitSet::with_capacity(size);
                for z in strict.ones() {
                    let mut above = up[z].clone();
                    above.set(z, false);
                    beyond.union_with(&above);
                }
                strict.difference(&beyond).collect()
            })
            .collect();
        Ok(Poset { ctx, points, index, lengths, up, covers })
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    fn idx(&self, p: &Point) -> Result<usize> {
        self.index
            .get(p)
            .copied()
            .ok_or(Error::ContextMismatch { left: self.ctx.to_string(), right: p.ctx().to_string() })
    }

    pub fn leq(&self, x: &Point, w: &Point) -> Result<bool> {
        Ok(self.up[self.idx(x)?].contains(self.idx(w)?))
    }

    /// Upward covers of `x`.
    pub fn covers(&self, x: &Point) -> Result<Vec<&Point>> {
        Ok(self.covers[self.idx(x)?].iter().map(|&k| &self.points[k]).collect())
    }

    pub fn cover_count(&self) -> usize {
        self.covers.iter().map(Vec::len).sum()
    }

    pub fn length(&self, x: &Point) -> Result<usize> {
        Ok(self.lengths[self.idx(x)?])
    }

    /// Longest path from `x` to `w` in the Hasse diagram.
    pub fn longest_chain(&self, x: &Point, w: &Point) -> Result<usize> {
        let (a, b) = (self.idx(x)?, self.idx(w)?);
        if !self.up[a].contains(b) {
            return Err(Error::NotComparable { x: x.to_string(), w: w.to_string() });
        }
        let mut members: Vec<usize> = self.up[a].ones().filter(|&k| self.up[k].contains(b)).collect();
        members.sort_by_key(|&k| self.lengths[k]);
        let mut best: HashMap<usize, usize> = HashMap::from([(a, 0)]);
        for &k in &members {
            let Some(&depth) = best.get(&k) else { continue };
            for &t in &self.covers[k] {
                if self.up[t].contains(b) {
                    let e = best.entry(t).or_insert(0);
                    *e = (*e).max(depth + 1);
                }
            }
        }
        Ok(best[&b])
    }
}

pub fn leq_via_covers(x: &Point, w: &Point) -> Result<bool> {
    x.same_ctx(w)?;
    Poset::build(x.ctx(), DEFAULT_ENUMERATION_BOUND)?.leq(x, w)
}

pub fn longest_chain_dim(w: &Point) -> Result<usize> {
    longest_chain_codim(&w.ctx().e(), w)
}

pub fn longest_chain_codim(x: &Point, w: &Point) -> Result<usize> {
    x.same_ctx(w)?;
    Poset::build(x.ctx(), DEFAULT_ENUMERATION_BOUND)?.longest_chain(x, w)
}

/// Integer matrix with rank by fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix { rows: rows.len(), cols, entries: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] += v;
    }

    /// Bareiss elimination; every intermediate is an exact minor.
    pub fn rank(&self) -> Result<usize> {
        let cols = self.cols;
        let mut m: Vec<Vec<i128>> =
            (0..self.rows).map(|r| (0..cols).map(|c| i128::from(self.get(r, c))).collect()).collect();
        let mut rank = 0;
        let mut prev: i128 = 1;
        for col in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, pivot);
            for r in rank + 1..m.len() {
                for c in col + 1..cols {
                    let a = m[rank][col].checked_mul(m[r][c]).ok_or(Error::Overflow)?;
                    let b = m[r][col].checked_mul(m[rank][c]).ok_or(Error::Overflow)?;
                    m[r][c] = a.checked_sub(b).ok_or(Error::Overflow)? / prev;
                }
                m[r][col] = 0;
            }
            prev = m[rank][col];
            rank += 1;
        }
        Ok(rank)
    }
}

/// `dim T_x(Y(w))^u` as the kernel of `ξ ↦ τξ - ξτ` on the basis `E_{pq}`.
pub fn matrix_u_tangent_dim(x: &Point, w: &Point) -> Result<usize> {
    require_leq(x, w)?;
    let (n, max) = (x.ctx().n(), x.ctx().dim_v());
    let (xt, wt) = (x.tuple(), w.tuple());
    let in_x = |p: usize| xt.binary_search(&p).is_ok();
    let mut unknowns: HashMap<(usize, usize), usize> = HashMap::new();
    for &q in &xt {
        for p in (1..=max).filter(|&p| !in_x(p)) {
            if crate::bruhat::tuple_leq(&transpose(&xt, p, q), &wt) {
                let k = unknowns.len();
                unknowns.insert((p, q), k);
            }
        }
    }
    let mut equations: Vec<Vec<i64>> = Vec::new();
    for &q in &xt {
        for p in (1..=max).filter(|&p| !in_x(p)) {
            let mut row = vec![0; unknowns.len()];
            let mut touched = false;
            if let Some(&k) = unknowns.get(&(p, q + n)) {
                row[k] += 1;
                touched = true;
            }
            if p > n && !in_x(p - n) {
                if let Some(&k) = unknowns.get(&(p - n, q)) {
                    row[k] -= 1;
                    touched = true;
                }
            }
            if touched {
                equations.push(row);
            }
        }
    }
    let rank = if equations.is_empty() { 0 } else { ExactMatrix::from_rows(equations).rank()? };
    Ok(unknowns.len() - rank)
}

/// `Σ_{i≤k} ℓ_i(x) ≤ Σ_{i≤k} ℓ_i(w)` for every `k`.
pub fn dominated(x: &Point, w: &Point) -> bool {
    let (mut a, mut b) = (0, 0);
    x.lengths().iter().zip(w.lengths()).all(|(u, v)| {
        a += u;
        b += v;
        a <= b
    })
}

/// Maximal P-stable points strictly below `w` in the partial-sum order.
pub fn dominance_maximal_below(w: &Point) -> Result<Vec<Point>> {
    if !is_p_stable(w) {
        return Err(Error::NotPStable(w.to_string()));
    }
    let below: Vec<Point> =
        w.ctx().points().into_iter().filter(|x| x != w && is_p_stable(x) && dominated(x, w)).collect();
    Ok(below.iter().filter(|x| !below.iter().any(|y| y != *x && dominated(x, y))).cloned().collect())
}

/// Re-derives a curve-excess or large-reflection witness through the
/// permutation action alone; `None` for imaginary tangents, which have no
/// brute-force counterpart here. Containment uses the tuple order, which
/// [`Poset`] checks against cover reachability separately.
pub fn confirm_witness(x: &Point, w: &Point, witness: &SingularWitness) -> Option<bool> {
    let below = |a: &Point, b: &Point| crate::bruhat::leq(a, b).unwrap_or(false);
    match witness {
        SingularWitness::ExcessCurves { curves, dim } => {
            let count = permutation_neighbours(x).iter().filter(|y| below(y, w)).count();
            Some(count == *curves && *dim == coxeter_length(w) && count > *dim)
        }
        SingularWitness::LargeReflection { reflection: r, image } => Some(
            permutation_apply(x, r.i(), r.j(), r.h()).as_ref() == Some(image)
                && max_displacement(x, r.i(), r.j(), r.h()) >= x.ctx().n()
                && below(x, image)
                && below(image, w),
        ),
        SingularWitness::ImaginaryTangent { .. } => None,
    }
}

/// `count` comparable pairs `(x, w)`, reproducible from `seed`.
pub fn sample_pairs(ctx: Context, count: usize, seed: u64) -> Vec<(Point, Point)> {
    let points = ctx.points();
    let tuples: Vec<Vec<usize>> = points.iter().map(Point::tuple).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<usize> = (0..points.len()).collect();
    (0..count)
        .map(|_| {
            let &w = ids.choose(&mut rng).expect("contexts are nonempty");
            let below: Vec<usize> =
                ids.iter().copied().filter(|&x| crate::bruhat::tuple_leq(&tuples[x], &tuples[w])).collect();
            let &x = below.choose(&mut rng).expect("w lies below itself");
            (points[x].clone(), points[w].clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::leq;

    fn c41() -> Context {
        Context::new(4, 1).unwrap()
    }

    fn pt(c: Context, l: &[usize]) -> Point {
        Point::from_lengths(c, l.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_iu(c41(), 100).unwrap().len(), 35);
        assert_eq!(enumerate_iu(Context::new(2, 1).unwrap(), 100).unwrap().len(), 3);
        assert_eq!(enumerate_iu(Context::new(4, 2).unwrap(), 1000).unwrap().len(), 165);
        assert!(matches!(enumerate_iu(c41(), 10), Err(Error::ResourceBound { count: 35, bound: 10 })));
    }

    #[test]
    fn permutation_action_examples() {
        let c = c41();
        assert_eq!(permutation_apply(&c.e(), 1, 2, 0), Some(c.e()));
        assert_eq!(permutation_apply(&c.e(), 1, 2, 1), Some(pt(c, &[0, 2, 1, 1])));
        assert_eq!(permutation_apply(&c.top(), 1, 2, 0), Some(pt(c, &[0, 4, 0, 0])));
        assert_eq!(permutation_apply(&c.top(), 1, 2, -1), Some(pt(c, &[1, 3, 0, 0])));
        assert_eq!(permutation_apply(&c.top(), 1, 2, 1), None);
        assert_eq!(max_displacement(&c.top(), 1, 2, 0), 1);
        assert_eq!(max_displacement(&c.top(), 1, 2, -1), 5);
        assert_eq!(max_displacement(&c.e(), 1, 2, 1), 3);
    }

    #[test]
    fn chains() {
        let c = c41();
        let poset = Poset::build(c, 100).unwrap();
        assert_eq!(poset.longest_chain(&c.e(), &c.top()).unwrap(), 12);
        assert_eq!(poset.longest_chain(&pt(c, &[3, 1, 0, 0]), &c.top()).unwrap(), 2);
        assert_eq!(poset.longest_chain(&c.top(), &c.top()).unwrap(), 0);
        assert_eq!(coxeter_length(&c.top()), 12);
        for x in poset.points() {
            for w in poset.points() {
                assert_eq!(poset.leq(x, w).unwrap(), leq(x, w).unwrap(), "{x} {w}");
            }
        }
    }

    #[test]
    fn exact_rank() {
        let m = ExactMatrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank().unwrap(), 2);
        assert_eq!(ExactMatrix::zeros(3, 3).rank().unwrap(), 0);
        let m = ExactMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.rank().unwrap(), 2);
    }

    #[test]
    fn matrix_tangent_examples() {
        let c = c41();
        assert_eq!(matrix_u_tangent_dim(&c.e(), &c.top()).unwrap(), 16);
        assert_eq!(matrix_u_tangent_dim(&c.top(), &c.top()).unwrap(), 12);
        assert_eq!(matrix_u_tangent_dim(&c.e(), &c.kappa(2).unwrap()).unwrap(), 8);
    }

    #[test]
    fn dominance_examples() {
        let c = Context::new(4, 2).unwrap();
        assert_eq!(dominance_maximal_below(&pt(c, &[4, 2, 1, 1])).unwrap(), vec![pt(c, &[3, 3, 1, 1])]);
        assert_eq!(dominance_maximal_below(&pt(c, &[4, 3, 1, 0])).unwrap(), vec![pt(c, &[4, 2, 2, 0])]);
        assert!(dominance_maximal_below(&c.e()).unwrap().is_empty());
    }

    #[test]
    fn sampling_is_reproducible() {
        let c = Context::new(4, 2).unwrap();
        let a = sample_pairs(c, 20, 7);
        assert_eq!(a, sample_pairs(c, 20, 7));
        assert!(a.iter().all(|(x, w)| leq(x, w).unwrap()));
    }
}
