//! PL homeomorphisms of the line that commute with `x ↦ x+1`.
//!
//! Such a map is determined by its graph over one period `[0,1]`: breakpoints
//! `(0, y₀), …, (1, y₀+1)`, extended by `f(x+k) = f(x) + k`. These have
//! infinitely many breakpoints on the line, so they are not [`PLMap`]s.
//!
//! [`PLMap`]: crate::plmap::PLMap

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intervals::{ClosedSet, Endpoint};
use crate::plmap::{Affine, LineMap};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicMap {
    /// Breakpoints over `[0,1]`; always contains `x = 0` and `x = 1`.
    points: Vec<(Rational, Rational)>,
}

fn big(q: &BigInt) -> Rational {
    Rational::from_integer(q.clone())
}

impl PeriodicMap {
    /// `points` must start at `x = 0`, end at `x = 1` with `y_last = y_first + 1`,
    /// and be strictly increasing in both coordinates.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let (first, last) = match (points.first(), points.last()) {
            (Some(f), Some(l)) if points.len() >= 2 => (f, l),
            _ => return Err(Error::InvalidMap("a periodic map needs breakpoints at 0 and 1".into())),
        };
        if !first.0.is_zero() || !last.0.is_one() {
            return Err(Error::InvalidMap("periodic breakpoints must span exactly [0,1]".into()));
        }
        if last.1 != &first.1 + Rational::one() {
            return Err(Error::InvalidMap(format!(
                "f(1) = {} must equal f(0) + 1 = {}",
                last.1,
                &first.1 + Rational::one()
            )));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::InvalidMap(format!(
                    "breakpoints ({}, {}) and ({}, {}) are not strictly increasing",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self::canonical(points))
    }

    pub fn translation(t: Rational) -> Self {
        PeriodicMap {
            points: vec![(Rational::zero(), t.clone()), (Rational::one(), t + Rational::one())],
        }
    }

    /// Interior collinear points are dropped; the endpoints 0 and 1 stay.
    fn canonical(points: Vec<(Rational, Rational)>) -> Self {
        let n = points.len();
        let slope = |i: usize| (&points[i + 1].1 - &points[i].1) / (&points[i + 1].0 - &points[i].0);
        let mut keep = vec![true; n];
        for i in 1..n - 1 {
            keep[i] = slope(i - 1) != slope(i);
        }
        let points = points
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        PeriodicMap { points }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Builds the map whose breakpoints in `[0,1]` are among `xs` and whose
    /// values there come from `value`.
    fn sample(mut xs: Vec<Rational>, value: impl Fn(&Rational) -> Rational) -> Self {
        xs.push(Rational::zero());
        xs.push(Rational::one());
        xs.retain(|x| *x >= Rational::zero() && *x <= Rational::one());
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = value(&x);
                (x, y)
            })
            .collect();
        Self::canonical(points)
    }

    /// All translates `x + k` of `xs` landing in `[lo, lo+1]`.
    fn translates_into(xs: impl Iterator<Item = Rational>, lo: &Rational) -> Vec<Rational> {
        let hi = lo + Rational::one();
        let mut out = Vec::new();
        for x in xs {
            let k = big(&rational::floor_int(&(lo - &x)));
            for shift in 0..=2 {
                let t = &x + &k + rational::int(shift);
                if t >= *lo && t <= hi {
                    out.push(t);
                }
            }
        }
        out
    }

    fn eval_period(points: &[(Rational, Rational)], x: &Rational) -> Rational {
        let idx = points.partition_point(|p| p.0 <= *x).clamp(1, points.len() - 1);
        let (x0, y0) = &points[idx - 1];
        let (x1, y1) = &points[idx];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

impl LineMap for PeriodicMap {
    fn identity() -> Self {
        PeriodicMap::translation(Rational::zero())
    }

    fn eval(&self, x: &Rational) -> Rational {
        let k = big(&rational::floor_int(x));
        Self::eval_period(&self.points, &(x - &k)) + k
    }

    fn eval_inverse(&self, y: &Rational) -> Rational {
        let y0 = &self.points[0].1;
        let k = big(&rational::floor_int(&(y - y0)));
        let swapped: Vec<_> = self.points.iter().map(|(a, b)| (b + &k, a + &k)).collect();
        Self::eval_period(&swapped, y)
    }

    fn compose(&self, inner: &Self) -> Self {
        let mut xs: Vec<Rational> = inner.points.iter().map(|p| p.0.clone()).collect();
        let start = inner.points[0].1.clone();
        let outer_breaks = Self::translates_into(self.points.iter().map(|p| p.0.clone()), &start);
        xs.extend(outer_breaks.iter().map(|t| inner.eval_inverse(t)));
        Self::sample(xs, |x| self.eval(&inner.eval(x)))
    }

    fn inverse(&self) -> Self {
        let xs = Self::translates_into(self.points.iter().map(|p| p.1.clone()), &Rational::zero());
        Self::sample(xs, |y| self.eval_inverse(y))
    }

    fn fixed_set_within(&self, lo: &Rational, hi: &Rational) -> ClosedSet {
        if lo > hi {
            return ClosedSet::empty();
        }
        let first = rational::floor_int(lo);
        let last = rational::floor_int(hi);
        let mut spans = Vec::new();
        let mut k = first;
        while k <= last {
            let shift = big(&k);
            for w in self.points.windows(2) {
                let (a, b) = (&w[0].0 + &shift, &w[1].0 + &shift);
                let rule = Affine::through(&a, &(&w[0].1 + &shift), &b, &(&w[1].1 + &shift));
                if rule.slope.is_one() {
                    if rule.offset.is_zero() {
                        spans.push((Endpoint::Finite(a), Endpoint::Finite(b)));
                    }
                } else {
                    let p = &rule.offset / (Rational::one() - &rule.slope);
                    if p >= a && p <= b {
                        spans.push((Endpoint::Finite(p.clone()), Endpoint::Finite(p)));
                    }
                }
            }
            k += 1;
        }
        ClosedSet::new(spans)
            .expect("segment fixed sets are closed intervals")
            .restrict(lo, hi)
    }

    fn is_fixed_point_free(&self) -> bool {
        self.fixed_set_within(&Rational::zero(), &Rational::one()).is_empty()
    }
}

impl fmt::Display for PeriodicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("periodic[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("]")
    }
}
