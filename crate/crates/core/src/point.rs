//! Ambient parameters and the points of `I^u`.
//!
//! A point is stored as its length vector `ℓ`; the I-tuple, c-vector,
//! L-vector and heads are derived on demand.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The parameters `(n, s)` with `d = s·n` and `dim V = d·n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ContextRepr", into = "ContextRepr")]
pub struct Context {
    n: usize,
    s: usize,
}

#[derive(Serialize, Deserialize)]
struct ContextRepr {
    n: usize,
    s: usize,
}

impl TryFrom<ContextRepr> for Context {
    type Error = Error;
    fn try_from(r: ContextRepr) -> Result<Self> {
        Context::new(r.n, r.s)
    }
}

impl From<Context> for ContextRepr {
    fn from(c: Context) -> Self {
        ContextRepr { n: c.n, s: c.s }
    }
}

impl Context {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if n < 2 || s < 1 {
            return Err(Error::InvalidContext { n, s });
        }
        Ok(Context { n, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> usize {
        self.s * self.n
    }

    pub fn dim_v(&self) -> usize {
        self.d() * self.n
    }

    /// The representative of `k` mod n in `[1, n]`.
    pub fn residue(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        (k - 1) % self.n + 1
    }

    /// Number of points, `C(d+n-1, n-1)`.
    pub fn point_count(&self) -> u128 {
        let (top, k) = ((self.d() + self.n - 1) as u128, (self.n - 1) as u128);
        (1..=k).fold(1u128, |acc, i| acc * (top - k + i) / i)
    }

    /// All points in increasing lexicographic order of their length vectors.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        let mut buf = vec![0; self.n];
        compositions(self.d(), 0, &mut buf, &mut |l| out.push(Point { ctx: *self, lengths: l.to_vec() }));
        out
    }

    /// The minimal point `e`, all strings of length `s`.
    pub fn e(&self) -> Point {
        Point { ctx: *self, lengths: vec![self.s; self.n] }
    }

    /// The maximal point `wˢ`, a single string of length `d`.
    pub fn top(&self) -> Point {
        let mut lengths = vec![0; self.n];
        lengths[0] = self.d();
        Point { ctx: *self, lengths }
    }

    /// The tuple `e_k = d(n-1) + k` of the minimal point.
    pub fn e_entry(&self, k: usize) -> usize {
        self.d() * (self.n - 1) + k
    }

    /// `κ^c`: the largest point consisting of one string with critical index `c`.
    pub fn kappa(&self, c: usize) -> Result<Point> {
        let (n, d) = (self.n, self.d());
        if c > d {
            return Err(Error::KappaRange { c, d });
        }
        let tuple: Vec<usize> =
            (1..=d).map(|i| if i <= c { (d - c) * (n - 1) + (i - 1) * n + 1 } else { self.e_entry(i) }).collect();
        Point::from_tuple(*self, &tuple)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, s={})", self.n, self.s)
    }
}

fn compositions(rest: usize, pos: usize, buf: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if pos + 1 == buf.len() {
        buf[pos] = rest;
        emit(buf);
        return;
    }
    for a in 0..=rest {
        buf[pos] = a;
        compositions(rest - a, pos + 1, buf, emit);
    }
}

/// The named points `e`, `wˢ` and `κ^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Special {
    E,
    Top,
    Kappa(usize),
}

pub fn special_point(ctx: Context, which: Special) -> Result<Point> {
    match which {
        Special::E => Ok(ctx.e()),
        Special::Top => Ok(ctx.top()),
        Special::Kappa(c) => ctx.kappa(c),
    }
}

/// A point of `I^u`, identified with its string lengths `ℓ_1..ℓ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PointRepr", into = "PointRepr")]
pub struct Point {
    ctx: Context,
    lengths: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    n: usize,
    s: usize,
    lengths: Vec<usize>,
}

impl TryFrom<PointRepr> for Point {
    type Error = Error;
    fn try_from(r: PointRepr) -> Result<Self> {
        Point::from_lengths(Context::new(r.n, r.s)?, r.lengths)
    }
}

impl From<Point> for PointRepr {
    fn from(p: Point) -> Self {
        PointRepr { n: p.ctx.n, s: p.ctx.s, lengths: p.lengths }
    }
}

/// The four derived views of a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representations {
    pub i_tuple: Vec<usize>,
    pub c_vector: Vec<usize>,
    pub l_vector: Vec<usize>,
    pub heads: Vec<usize>,
}

impl Point {
    pub fn from_lengths(ctx: Context, lengths: Vec<usize>) -> Result<Self> {
        if lengths.len() != ctx.n {
            return Err(Error::LengthCount { expected: ctx.n, got: lengths.len() });
        }
        let sum: usize = lengths.iter().sum();
        if sum != ctx.d() {
            return Err(Error::LengthSum { sum, d: ctx.d() });
        }
        Ok(Point { ctx, lengths })
    }

    /// Parses an I-tuple, rejecting anything outside `I^u`.
    pub fn from_tuple(ctx: Context, tuple: &[usize]) -> Result<Self> {
        let (d, max) = (ctx.d(), ctx.dim_v());
        if tuple.len() != d {
            return Err(Error::TupleLength { expected: d, got: tuple.len() });
        }
        for (k, &v) in tuple.iter().enumerate() {
            if v < 1 || v > max {
                return Err(Error::OutOfRange { position: k + 1, value: v, max });
            }
        }
        for (k, w) in tuple.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::NotIncreasing { position: k + 1, prev: w[0], next: w[1] });
            }
        }
        for &v in tuple {
            let up = v + ctx.n;
            if up <= max && tuple.binary_search(&up).is_err() {
                return Err(Error::NotClosed { value: v, missing: up });
            }
        }
        let mut lengths = vec![0; ctx.n];
        for &v in tuple {
            lengths[ctx.residue(v) - 1] += 1;
        }
        Ok(Point { ctx, lengths })
    }

    pub(crate) fn from_lengths_unchecked(ctx: Context, lengths: Vec<usize>) -> Self {
        debug_assert_eq!(lengths.iter().sum::<usize>(), ctx.d());
        Point { ctx, lengths }
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// `ℓ_i` for a residue `i` in `[1, n]`.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i - 1]
    }

    /// The sorted I-tuple `∪_i {i + k·n : d-ℓ_i ≤ k < d}`.
    pub fn tuple(&self) -> Vec<usize> {
        let (n, d) = (self.ctx.n, self.ctx.d());
        let mut out = Vec::with_capacity(d);
        for k in 0..d {
            for i in 1..=n {
                if k >= d - self.lengths[i - 1] {
                    out.push(i + k * n);
                }
            }
        }
        out
    }

    pub fn c_vector(&self) -> Vec<usize> {
        self.lengths.iter().map(|&l| self.ctx.d() - l).collect()
    }

    /// `L(x) = (ℓ_1..ℓ_n, ℓ_1+1..ℓ_n+1)`.
    pub fn l_vector(&self) -> Vec<usize> {
        self.lengths.iter().copied().chain(self.lengths.iter().map(|&l| l + 1)).collect()
    }

    /// Entry of `L(x)` at position `p` in `[1, 2n]`.
    pub fn l_at(&self, p: usize) -> usize {
        let n = self.ctx.n;
        debug_assert!((1..=2 * n).contains(&p));
        if p <= n {
            self.lengths[p - 1]
        } else {
            self.lengths[p - n - 1] + 1
        }
    }

    /// `h_i = i + (d-ℓ_i)·n`; exceeds `d·n` exactly for empty strings.
    pub fn head(&self, i: usize) -> usize {
        i + (self.ctx.d() - self.lengths[i - 1]) * self.ctx.n
    }

    pub fn heads(&self) -> Vec<usize> {
        (1..=self.ctx.n).map(|i| self.head(i)).collect()
    }

    pub fn representations(&self) -> Representations {
        Representations {
            i_tuple: self.tuple(),
            c_vector: self.c_vector(),
            l_vector: self.l_vector(),
            heads: self.heads(),
        }
    }

    /// One row of boxes per string; `annotated` appends head and length.
    pub fn render(&self, annotated: bool) -> String {
        let d = self.ctx.d();
        let rows: Vec<String> = (1..=self.ctx.n)
            .map(|i| {
                let l = self.length(i);
                let boxes = "□".repeat(l);
                if annotated {
                    format!("{boxes}{}  h={} l={l}", " ".repeat(d - l), self.head(i))
                } else {
                    boxes
                }
            })
            .collect();
        rows.join("\n")
    }

    pub(crate) fn same_ctx(&self, other: &Point) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: self.ctx.to_string(), right: other.ctx.to_string() })
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ℓ(")?;
        for (k, l) in self.lengths.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}


#[cfg(test)]
mod sweeps {
    use proptest::prelude::*;

    use super::*;
    use crate::testing::{any_point, config, ctx};

    #[test]
    fn tuples_round_trip_and_close() {
        for n in 2..=5 {
            for s in 1..=2 {
                let c = ctx(n, s);
                let dn = c.dim_v();
                for p in c.points() {
                    let t = p.representations().i_tuple;
                    assert_eq!(Point::from_tuple(c, &t).unwrap(), p);
                    assert_eq!(p.lengths().iter().sum::<usize>(), c.d());
                    assert!(t.iter().all(|&v| v + n > dn || t.binary_search(&(v + n)).is_ok()));
                    for i in 1..=n {
                        assert_eq!(p.head(i) <= dn, p.length(i) > 0, "{p} string {i}");
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(config())]

        #[test]
        fn tuple_and_json_round_trip(p in any_point()) {
            prop_assert_eq!(Point::from_tuple(p.ctx(), &p.tuple()).unwrap(), p.clone());
            let text = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<Point>(&text).unwrap(), p);
        }
    }
}
