//! Closed and open subsets of the line with exact rational endpoints.
//!
//! A [`ClosedSet`] is a finite union of disjoint closed intervals; every fixed
//! set of a piecewise-linear map has this shape. Its complement is an
//! [`OpenIntervalList`]. Infinite endpoints are the [`Endpoint::NegInf`] and
//! [`Endpoint::PosInf`] sentinels, never large rationals.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::plmap::{LineMap, PLMap};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    /// Image under an increasing map of the line; infinities are fixed.
    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Endpoint {
        match self {
            Endpoint::Finite(q) => Endpoint::Finite(f(q)),
            other => other.clone(),
        }
    }

    fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            Endpoint::NegInf => Ordering::Less,
            Endpoint::PosInf => Ordering::Greater,
            Endpoint::Finite(p) => p.cmp(q),
        }
    }

    pub fn parse(s: &str) -> Result<Endpoint> {
        match s.trim() {
            "-inf" => Ok(Endpoint::NegInf),
            "inf" | "+inf" => Ok(Endpoint::PosInf),
            other => rational::parse(other).map(Endpoint::Finite),
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(q: Rational) -> Self {
        Endpoint::Finite(q)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("inf"),
            Endpoint::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// A closed interval `[lo, hi]`; `lo = -inf` or `hi = inf` make it a ray.
pub type Span = (Endpoint, Endpoint);

/// Finite union of disjoint, sorted, non-touching closed intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClosedSet {
    intervals: Vec<Span>,
}

impl ClosedSet {
    pub fn empty() -> Self {
        ClosedSet::default()
    }

    pub fn full() -> Self {
        ClosedSet {
            intervals: vec![(Endpoint::NegInf, Endpoint::PosInf)],
        }
    }

    pub fn point(q: Rational) -> Self {
        ClosedSet {
            intervals: vec![(Endpoint::Finite(q.clone()), Endpoint::Finite(q))],
        }
    }

    pub fn interval(lo: Endpoint, hi: Endpoint) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    /// Builds the union of the given closed intervals, merging overlaps and
    /// touching neighbours. Intervals with `lo > hi` are rejected.
    pub fn new(spans: Vec<Span>) -> Result<Self> {
        for (lo, hi) in &spans {
            if lo > hi || *lo == Endpoint::PosInf || *hi == Endpoint::NegInf {
                return Err(Error::InvalidSet(format!("[{lo}, {hi}] is not a closed interval")));
            }
        }
        Ok(Self::normalize(spans))
    }

    fn normalize(mut spans: Vec<Span>) -> Self {
        spans.sort();
        let mut out: Vec<Span> = Vec::with_capacity(spans.len());
        for (lo, hi) in spans {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        ClosedSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Span] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals == [(Endpoint::NegInf, Endpoint::PosInf)]
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // first interval whose upper end is >= x
        let idx = self
            .intervals
            .partition_point(|(_, hi)| hi.cmp_rational(x) == Ordering::Less);
        self.intervals
            .get(idx)
            .is_some_and(|(lo, _)| lo.cmp_rational(x) != Ordering::Greater)
    }

    /// Sweep over both sorted lists.
    pub fn intersect(&self, other: &ClosedSet) -> ClosedSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = (&a[i].0).max(&b[j].0);
            let hi = (&a[i].1).min(&b[j].1);
            if lo <= hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        ClosedSet { intervals: out }
    }

    pub fn union(&self, other: &ClosedSet) -> ClosedSet {
        let mut spans = self.intervals.clone();
        spans.extend(other.intervals.iter().cloned());
        Self::normalize(spans)
    }

    /// The open complement in the line.
    pub fn complement_open(&self) -> OpenIntervalList {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = Endpoint::NegInf;
        let mut bounded = false;
        for (lo, hi) in &self.intervals {
            if cursor < *lo {
                out.push((cursor.clone(), lo.clone()));
            }
            cursor = hi.clone();
            bounded = true;
        }
        if !bounded {
            out.push((Endpoint::NegInf, Endpoint::PosInf));
        } else if cursor != Endpoint::PosInf {
            out.push((cursor, Endpoint::PosInf));
        }
        OpenIntervalList { intervals: out }
    }

    /// Restriction to the closed window `[lo, hi]`.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> ClosedSet {
        let window = ClosedSet {
            intervals: vec![(Endpoint::Finite(lo.clone()), Endpoint::Finite(hi.clone()))],
        };
        self.intersect(&window)
    }

    /// Image under an increasing bijection of the line.
    pub fn image(&self, f: impl Fn(&Rational) -> Rational) -> ClosedSet {
        let spans = self
            .intervals
            .iter()
            .map(|(lo, hi)| (lo.map(&f), hi.map(&f)))
            .collect();
        Self::normalize(spans)
    }

    /// Largest point of the set strictly below `x` and smallest strictly
    /// above, i.e. the closure endpoints of the complementary gap around `x`.
    /// `None` when `x` belongs to the set.
    pub fn gap_around(&self, x: &Rational) -> Option<(Endpoint, Endpoint)> {
        if self.contains(x) {
            return None;
        }
        let idx = self
            .intervals
            .partition_point(|(_, hi)| hi.cmp_rational(x) == Ordering::Less);
        let below = if idx == 0 {
            Endpoint::NegInf
        } else {
            self.intervals[idx - 1].1.clone()
        };
        let above = self
            .intervals
            .get(idx)
            .map_or(Endpoint::PosInf, |(lo, _)| lo.clone());
        Some((below, above))
    }

    /// Least element, if the set is bounded below and nonempty.
    pub fn min(&self) -> Option<&Rational> {
        self.intervals.first().and_then(|(lo, _)| lo.finite())
    }
}

impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            let open = if *lo == Endpoint::NegInf { '(' } else { '[' };
            let close = if *hi == Endpoint::PosInf { ')' } else { ']' };
            write!(f, "{open}{lo}, {hi}{close}")?;
        }
        Ok(())
    }
}

/// Sorted list of pairwise disjoint open intervals `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OpenIntervalList {
    intervals: Vec<Span>,
}

impl OpenIntervalList {
    pub fn empty() -> Self {
        OpenIntervalList::default()
    }

    /// Union of open intervals: overlapping ones merge, touching ones
    /// (sharing only an endpoint, which is excluded) stay separate.
    pub fn new(spans: Vec<Span>) -> Result<Self> {
        for (lo, hi) in &spans {
            if lo >= hi {
                return Err(Error::InvalidSet(format!("({lo}, {hi}) is empty")));
            }
        }
        Ok(Self::normalize(spans))
    }

    fn normalize(mut spans: Vec<Span>) -> Self {
        spans.sort();
        let mut out: Vec<Span> = Vec::with_capacity(spans.len());
        for (lo, hi) in spans {
            match out.last_mut() {
                Some(last) if lo < last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        OpenIntervalList { intervals: out }
    }

    pub fn intervals(&self) -> &[Span] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| {
            lo.cmp_rational(x) == Ordering::Less && hi.cmp_rational(x) == Ordering::Greater
        })
    }

    /// Whether the open interval `(lo, hi)` lies inside one component.
    pub fn contains_interval(&self, lo: &Endpoint, hi: &Endpoint) -> bool {
        self.intervals.iter().any(|(a, b)| a <= lo && hi <= b)
    }

    pub fn union(&self, other: &OpenIntervalList) -> OpenIntervalList {
        let mut spans = self.intervals.clone();
        spans.extend(other.intervals.iter().cloned());
        Self::normalize(spans)
    }

    pub fn intersect(&self, other: &OpenIntervalList) -> OpenIntervalList {
        let mut out = Vec::new();
        for (a, b) in &self.intervals {
            for (c, d) in &other.intervals {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo < hi {
                    out.push((lo.clone(), hi.clone()));
                }
            }
        }
        Self::normalize(out)
    }

    pub fn image(&self, f: impl Fn(&Rational) -> Rational) -> OpenIntervalList {
        let spans = self
            .intervals
            .iter()
            .map(|(lo, hi)| (lo.map(&f), hi.map(&f)))
            .collect();
        Self::normalize(spans)
    }
}

impl fmt::Display for OpenIntervalList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "({lo}, {hi})")?;
        }
        Ok(())
    }
}

/// Common fixed set of the generators, which is also the fixed set of the
/// group they generate.
pub fn group_fixed_set(gens: &[PLMap]) -> ClosedSet {
    gens.iter()
        .fold(ClosedSet::full(), |acc, g| acc.intersect(&g.fixed_set()))
}

fn require_unit(gens: &[PLMap]) -> Result<()> {
    match gens.iter().position(|g| !g.is_unit_interval()) {
        Some(i) => Err(Error::NotUnitInterval(format!("generator {i} is {}", gens[i]))),
        None => Ok(()),
    }
}

/// The open intervals of `[0,1]` on which the generated group has no global
/// fixed point. Each one is invariant under every generator.
pub fn orbit_intervals(gens: &[PLMap]) -> Result<OpenIntervalList> {
    require_unit(gens)?;
    let unit = OpenIntervalList {
        intervals: vec![(
            Endpoint::Finite(rational::int(0)),
            Endpoint::Finite(rational::int(1)),
        )],
    };
    let orbits = group_fixed_set(gens).complement_open().intersect(&unit);
    for (lo, hi) in orbits.intervals() {
        for g in gens {
            let moved = |e: &Endpoint| e.map(|q| g.eval(q)) != *e;
            if moved(lo) || moved(hi) {
                return Err(Error::Postcondition(format!(
                    "({lo}, {hi}) is not invariant under {g}"
                )));
            }
        }
    }
    Ok(orbits)
}

/// True iff the generators have no common fixed point in the open unit
/// interval.
pub fn is_plt(gens: &[PLMap]) -> Result<bool> {
    require_unit(gens)?;
    let zero = Endpoint::Finite(rational::int(0));
    let one = Endpoint::Finite(rational::int(1));
    // (0,1) misses the fixed set iff it lies inside one complementary gap
    Ok(group_fixed_set(gens).complement_open().contains_interval(&zero, &one))
}
