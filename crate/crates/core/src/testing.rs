//! Fixtures shared by the unit tests.

use proptest::prelude::*;

use crate::bruhat::leq;
use crate::point::{Context, Point};

pub(crate) fn ctx(n: usize, s: usize) -> Context {
    Context::new(n, s).unwrap()
}

/// Every comparable pair `(x, w)`.
pub(crate) fn comparable_pairs(c: Context) -> Vec<(Point, Point)> {
    let pts = c.points();
    let mut out = Vec::new();
    for w in &pts {
        for x in &pts {
            if leq(x, w).unwrap() {
                out.push((x.clone(), w.clone()));
            }
        }
    }
    out
}

pub(crate) fn below(w: &Point) -> Vec<Point> {
    w.ctx().points().into_iter().filter(|x| leq(x, w).unwrap()).collect()
}

pub(crate) fn point_in(n: usize, s: usize) -> impl Strategy<Value = Point> {
    let c = ctx(n, s);
    let d = c.d();
    // Stars and bars: n-1 cut points in [0, d].
    prop::collection::vec(0..=d, n - 1).prop_map(move |mut cuts| {
        cuts.sort_unstable();
        let mut lengths = Vec::with_capacity(n);
        let mut prev = 0;
        for cut in cuts {
            lengths.push(cut - prev);
            prev = cut;
        }
        lengths.push(d - prev);
        Point::from_lengths(c, lengths).unwrap()
    })
}

/// Contexts up to `(6, 3)`.
pub(crate) fn any_point() -> impl Strategy<Value = Point> {
    (2usize..=6, 1usize..=3).prop_flat_map(|(n, s)| point_in(n, s))
}

pub(crate) fn point_pair(max_n: usize, max_s: usize) -> impl Strategy<Value = (Point, Point)> {
    (2..=max_n, 1..=max_s).prop_flat_map(|(n, s)| (point_in(n, s), point_in(n, s)))
}

pub(crate) fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() }
}
