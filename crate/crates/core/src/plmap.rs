//! Piecewise-linear orientation-preserving homeomorphisms of the line.
//!
//! A [`PLMap`] is a finite list of breakpoints joined by segments, extended
//! to the whole line by an affine tail on each side. Maps are kept in
//! canonical form (no breakpoint is collinear with its neighbours), so two
//! maps are equal as functions iff they are structurally equal.
//!
//! Maps of `[0,1]` are the subtype with identity tails whose support lies in
//! `[0,1]`; see [`PLMap::unit_interval`].

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intervals::{ClosedSet, Endpoint};
use crate::rational::{self, Rational};

/// `x ↦ slope·x + offset` with `slope > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rational,
    pub offset: Rational,
}

impl Affine {
    pub fn new(slope: Rational, offset: Rational) -> Result<Self> {
        if !slope.is_positive() {
            return Err(Error::InvalidMap(format!("slope {slope} is not positive")));
        }
        Ok(Affine { slope, offset })
    }

    pub fn identity() -> Self {
        Affine {
            slope: Rational::one(),
            offset: Rational::zero(),
        }
    }

    pub fn translation(t: Rational) -> Self {
        Affine {
            slope: Rational::one(),
            offset: t,
        }
    }

    /// The increasing affine map sending `a ↦ fa` and `b ↦ fb`.
    pub fn through(a: &Rational, fa: &Rational, b: &Rational, fb: &Rational) -> Self {
        let slope = (fb - fa) / (b - a);
        let offset = fa - &slope * a;
        Affine { slope, offset }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.offset
    }

    pub fn inverse(&self) -> Affine {
        let slope = self.slope.recip();
        let offset = -&self.offset * &slope;
        Affine { slope, offset }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Affine) -> Affine {
        Affine {
            slope: &self.slope * &inner.slope,
            offset: &self.slope * &inner.offset + &self.offset,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.offset.is_zero()
    }

    /// `r ↦ -self(-r)`.
    pub fn reversed(&self) -> Affine {
        Affine {
            slope: self.slope.clone(),
            offset: -&self.offset,
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x", self.slope)?;
        if self.offset.is_negative() {
            write!(f, "-{}", -&self.offset)
        } else {
            write!(f, "+{}", self.offset)
        }
    }
}

/// Fixed points of `a` restricted to the closed span `[lo, hi]`.
fn affine_fixed_on(a: &Affine, lo: &Endpoint, hi: &Endpoint) -> Option<(Endpoint, Endpoint)> {
    if a.slope.is_one() {
        return a.offset.is_zero().then(|| (lo.clone(), hi.clone()));
    }
    let p = &a.offset / (Rational::one() - &a.slope);
    let e = Endpoint::Finite(p);
    (*lo <= e && e <= *hi).then(|| (e.clone(), e))
}

/// Operations shared by every homeomorphism type the certificate builders
/// work over.
pub trait LineMap: Clone + PartialEq + fmt::Display {
    fn identity() -> Self;
    fn eval(&self, x: &Rational) -> Rational;
    fn eval_inverse(&self, y: &Rational) -> Rational;
    /// `self ∘ inner`.
    fn compose(&self, inner: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Fixed points inside the closed window `[lo, hi]`.
    fn fixed_set_within(&self, lo: &Rational, hi: &Rational) -> ClosedSet;
    fn is_fixed_point_free(&self) -> bool;

    fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    /// `g ∘ self ∘ g⁻¹`.
    fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }
}

/// Piecewise-linear increasing homeomorphism of the line in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    points: Vec<(Rational, Rational)>,
    left: Affine,
    right: Affine,
}

impl PLMap {
    /// Validates continuity and monotonicity, then canonicalizes.
    pub fn new(points: Vec<(Rational, Rational)>, left: Affine, right: Affine) -> Result<Self> {
        if !left.slope.is_positive() || !right.slope.is_positive() {
            return Err(Error::InvalidMap("tail slopes must be positive".into()));
        }
        match (points.first(), points.last()) {
            (Some(first), Some(last)) => {
                for w in points.windows(2) {
                    if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                        return Err(Error::InvalidMap(format!(
                            "breakpoints ({}, {}) and ({}, {}) are not strictly increasing",
                            w[0].0, w[0].1, w[1].0, w[1].1
                        )));
                    }
                }
                if left.apply(&first.0) != first.1 {
                    return Err(Error::InvalidMap(format!(
                        "left tail {left} does not pass through ({}, {})",
                        first.0, first.1
                    )));
                }
                if right.apply(&last.0) != last.1 {
                    return Err(Error::InvalidMap(format!(
                        "right tail {right} does not pass through ({}, {})",
                        last.0, last.1
                    )));
                }
            }
            _ => {
                if left != right {
                    return Err(Error::InvalidMap(
                        "a map without breakpoints needs equal tails".into(),
                    ));
                }
            }
        }
        Ok(Self::canonical(points, left, right))
    }

    /// Breakpoints with slope-one tails through the outermost points; with
    /// breakpoints on the diagonal at both ends the tails are the identity.
    pub fn from_points(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let (left, right) = match (points.first(), points.last()) {
            (Some(f), Some(l)) => (
                Affine::translation(&f.1 - &f.0),
                Affine::translation(&l.1 - &l.0),
            ),
            _ => (Affine::identity(), Affine::identity()),
        };
        Self::new(points, left, right)
    }

    /// A map of `[0,1]`: breakpoints starting at `(0,0)` and ending at
    /// `(1,1)`, identity outside.
    pub fn unit_interval(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let zero = (Rational::zero(), Rational::zero());
        let one = (Rational::one(), Rational::one());
        if points.first() != Some(&zero) || points.last() != Some(&one) {
            return Err(Error::NotUnitInterval(
                "breakpoints must start at (0,0) and end at (1,1)".into(),
            ));
        }
        Self::new(points, Affine::identity(), Affine::identity())
    }

    pub fn affine(slope: Rational, offset: Rational) -> Result<Self> {
        let a = Affine::new(slope, offset)?;
        Ok(PLMap {
            points: Vec::new(),
            left: a.clone(),
            right: a,
        })
    }

    pub fn translation(t: Rational) -> Self {
        let a = Affine::translation(t);
        PLMap {
            points: Vec::new(),
            left: a.clone(),
            right: a,
        }
    }

    fn canonical(points: Vec<(Rational, Rational)>, left: Affine, right: Affine) -> Self {
        if points.is_empty() {
            return PLMap { points, left, right };
        }
        let n = points.len();
        // slopes[i] is the slope just left of points[i]; slopes[n] is the right tail
        let mut slopes = Vec::with_capacity(n + 1);
        slopes.push(left.slope.clone());
        for w in points.windows(2) {
            slopes.push((&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0));
        }
        slopes.push(right.slope.clone());
        let kept: Vec<_> = points
            .into_iter()
            .enumerate()
            .filter(|(i, _)| slopes[*i] != slopes[i + 1])
            .map(|(_, p)| p)
            .collect();
        let right = if kept.is_empty() { left.clone() } else { right };
        PLMap {
            points: kept,
            left,
            right,
        }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn left_tail(&self) -> &Affine {
        &self.left
    }

    pub fn right_tail(&self) -> &Affine {
        &self.right
    }

    pub fn is_affine(&self) -> bool {
        self.points.is_empty()
    }

    /// Identity tails and support inside `[0,1]`.
    pub fn is_unit_interval(&self) -> bool {
        if !self.left.is_identity() || !self.right.is_identity() {
            return false;
        }
        match (self.points.first(), self.points.last()) {
            (Some(f), Some(l)) => f.0 >= Rational::zero() && l.0 <= Rational::one(),
            _ => true,
        }
    }

    /// The affine pieces: `(lo, hi, rule)` covering the line left to right.
    pub fn pieces(&self) -> Vec<(Endpoint, Endpoint, Affine)> {
        if self.points.is_empty() {
            return vec![(Endpoint::NegInf, Endpoint::PosInf, self.left.clone())];
        }
        let mut out = Vec::with_capacity(self.points.len() + 1);
        let first = &self.points[0];
        out.push((Endpoint::NegInf, Endpoint::Finite(first.0.clone()), self.left.clone()));
        for w in self.points.windows(2) {
            let rule = Affine::through(&w[0].0, &w[0].1, &w[1].0, &w[1].1);
            out.push((Endpoint::Finite(w[0].0.clone()), Endpoint::Finite(w[1].0.clone()), rule));
        }
        let last = self.points.last().unwrap();
        out.push((Endpoint::Finite(last.0.clone()), Endpoint::PosInf, self.right.clone()));
        out
    }

    fn interpolate(points: &[(Rational, Rational)], left: &Affine, right: &Affine, x: &Rational) -> Rational {
        let (first, last) = match (points.first(), points.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return left.apply(x),
        };
        if *x <= first.0 {
            return left.apply(x);
        }
        if *x >= last.0 {
            return right.apply(x);
        }
        let idx = points.partition_point(|p| p.0 <= *x);
        let (x0, y0) = &points[idx - 1];
        if x == x0 {
            return y0.clone();
        }
        let (x1, y1) = &points[idx];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// `r ↦ -f(-r)`. An involutive automorphism of the group of PL maps that
    /// swaps rightward and leftward translation.
    pub fn reverse(&self) -> PLMap {
        let points = self
            .points
            .iter()
            .rev()
            .map(|(x, y)| (-x, -y))
            .collect();
        PLMap {
            points,
            left: self.right.reversed(),
            right: self.left.reversed(),
        }
    }

    /// The exact fixed-point set, solved piece by piece.
    pub fn fixed_set(&self) -> ClosedSet {
        let spans = self
            .pieces()
            .iter()
            .filter_map(|(lo, hi, rule)| affine_fixed_on(rule, lo, hi))
            .collect();
        ClosedSet::new(spans).expect("piece fixed sets are closed intervals")
    }

    /// Sign of `f(x) - x` at `x`.
    pub fn displacement_sign(&self, x: &Rational) -> i8 {
        rational::sign(&(self.eval(x) - x))
    }
}

impl LineMap for PLMap {
    fn identity() -> Self {
        PLMap::translation(Rational::zero())
    }

    fn eval(&self, x: &Rational) -> Rational {
        Self::interpolate(&self.points, &self.left, &self.right, x)
    }

    fn eval_inverse(&self, y: &Rational) -> Rational {
        let swapped: Vec<_> = self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        Self::interpolate(&swapped, &self.left.inverse(), &self.right.inverse(), y)
    }

    fn compose(&self, inner: &Self) -> Self {
        let mut xs: Vec<Rational> = inner.points.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.points.iter().map(|p| inner.eval_inverse(&p.0)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        let left = self.left.after(&inner.left);
        let right = self.right.after(&inner.right);
        Self::canonical(points, left, right)
    }

    fn inverse(&self) -> Self {
        PLMap {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            left: self.left.inverse(),
            right: self.right.inverse(),
        }
    }

    fn fixed_set_within(&self, lo: &Rational, hi: &Rational) -> ClosedSet {
        self.fixed_set().restrict(lo, hi)
    }

    fn is_fixed_point_free(&self) -> bool {
        self.fixed_set().is_empty()
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "x -> {}", self.left);
        }
        f.write_str("pl[")?;
        if !self.left.is_identity() {
            write!(f, "{} | ", self.left)?;
        }
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x},{y})")?;
        }
        if !self.right.is_identity() {
            write!(f, " | {}", self.right)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn sample() -> PLMap {
        PLMap::unit_interval(vec![(int(0), int(0)), (frac(1, 2), frac(1, 4)), (int(1), int(1))]).unwrap()
    }

    fn half() -> PLMap {
        PLMap::affine(frac(1, 2), int(0)).unwrap()
    }

    #[test]
    fn eval_examples() {
        let id = PLMap::identity();
        assert_eq!(id.eval(&frac(1, 2)), frac(1, 2));
        let f = sample();
        assert_eq!(f.eval(&frac(1, 2)), frac(1, 4));
        // slope 3/2 between (1/2,1/4) and (1,1)
        assert_eq!(f.eval(&frac(3, 4)), frac(5, 8));
        assert_eq!(f.eval(&int(5)), int(5));
        assert_eq!(f.eval(&int(-3)), int(-3));
    }

    #[test]
    fn compose_examples() {
        let f = sample();
        assert_eq!(f.compose(&PLMap::identity()), f);
        assert!(f.compose(&f.inverse()).is_identity());
        assert_eq!(half().compose(&half()), PLMap::affine(frac(1, 4), int(0)).unwrap());
    }

    #[test]
    fn inverse_examples() {
        assert!(PLMap::identity().inverse().is_identity());
        let want =
            PLMap::unit_interval(vec![(int(0), int(0)), (frac(1, 4), frac(1, 2)), (int(1), int(1))]).unwrap();
        assert_eq!(sample().inverse(), want);
        assert_eq!(PLMap::translation(int(1)).inverse(), PLMap::translation(int(-1)));
    }

    #[test]
    fn power_examples() {
        assert!(sample().power(0).is_identity());
        assert_eq!(PLMap::translation(int(1)).power(3), PLMap::translation(int(3)));
        assert_eq!(half().power(2), PLMap::affine(frac(1, 4), int(0)).unwrap());
        assert_eq!(half().power(-2), PLMap::affine(int(4), int(0)).unwrap());
    }

    #[test]
    fn conjugate_examples() {
        let f = sample();
        assert_eq!(f.conjugate_by(&PLMap::identity()), f);
        assert!(PLMap::identity().conjugate_by(&f).is_identity());
        // (x/2) ∘ (x+1) ∘ (2x) = x + 1/2
        assert_eq!(
            PLMap::translation(int(1)).conjugate_by(&half()),
            PLMap::translation(frac(1, 2))
        );
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(PLMap::translation(int(1)).reverse(), PLMap::translation(int(-1)));
        assert!(PLMap::identity().reverse().is_identity());
        assert_eq!(half().reverse(), half());
        let f = sample();
        assert_eq!(f.reverse().eval(&frac(-1, 2)), frac(-1, 4));
    }

    #[test]
    fn equality_examples() {
        let f = sample();
        assert_eq!(PLMap::identity(), PLMap::identity());
        assert_eq!(f, f.compose(&PLMap::identity()));
        assert_ne!(PLMap::translation(int(1)), PLMap::translation(int(2)));
    }

    #[test]
    fn fixed_set_examples() {
        assert!(PLMap::identity().fixed_set().is_full());
        assert!(PLMap::translation(int(1)).fixed_set().is_empty());
        let rays = ClosedSet::new(vec![
            (Endpoint::NegInf, Endpoint::Finite(int(0))),
            (Endpoint::Finite(int(1)), Endpoint::PosInf),
        ])
        .unwrap();
        assert_eq!(sample().fixed_set(), rays);
        assert_eq!(half().fixed_set(), ClosedSet::point(int(0)));
    }

    #[test]
    fn collinear_points_are_dropped() {
        let f = PLMap::from_points(vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(2))]).unwrap();
        assert!(f.is_identity());
        let g = PLMap::from_points(vec![(int(0), int(0)), (int(1), int(2)), (int(2), int(4)), (int(3), int(5))]).unwrap();
        assert_eq!(g.points().len(), 2);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(PLMap::from_points(vec![(int(0), int(1)), (int(1), int(0))]).is_err());
        assert!(PLMap::new(vec![(int(0), int(0))], Affine::identity(), Affine::translation(int(1))).is_err());
        assert!(PLMap::affine(int(-1), int(0)).is_err());
        assert!(PLMap::unit_interval(vec![(int(0), int(0)), (int(2), int(2))]).is_err());
    }

    #[test]
    fn unit_subtype_survives_canonicalization() {
        let x1 = PLMap::unit_interval(vec![
            (int(0), int(0)),
            (frac(1, 2), frac(1, 2)),
            (frac(3, 4), frac(5, 8)),
            (frac(7, 8), frac(3, 4)),
            (int(1), int(1)),
        ])
        .unwrap();
        assert!(x1.is_unit_interval());
        assert_eq!(x1.points()[0], (frac(1, 2), frac(1, 2)));
        assert!(!PLMap::translation(int(1)).is_unit_interval());
    }
}
