//! Left orders on groups of PL maps read off from the action on the line.
//!
//! `f < g` when `f(x) < g(x)` at the first point `x` (in a chosen
//! well-order of the line) where the two maps differ. The germ order starts
//! at `-∞` and marches right; an [`OrderOracle`] with priority points looks
//! at those points first.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plmap::{LineMap, PLMap};
use crate::rational::{self, Rational};
use crate::word::{reduced_words, Word};

/// Germ order: compare the maps just to the right of the infimum of the
/// points where they differ, or at `-∞` when the left tails differ.
pub fn germ_compare(f: &PLMap, g: &PLMap) -> Ordering {
    if f == g {
        return Ordering::Equal;
    }
    let (lf, lg) = (f.left_tail(), g.left_tail());
    if lf != lg {
        // near -∞ the steeper map is the smaller one
        return match lg.slope.cmp(&lf.slope) {
            Ordering::Equal => lf.offset.cmp(&lg.offset),
            o => o,
        };
    }
    let mut xs: Vec<&Rational> = f.points().iter().chain(g.points()).map(|p| &p.0).collect();
    xs.sort();
    xs.dedup();
    // equal left tails: f = g on (-∞, xs[0]]; both are affine between
    // consecutive xs
    for w in xs.windows(2) {
        if f.eval(w[1]) != g.eval(w[1]) {
            let mid = rational::midpoint(w[0], w[1]);
            return f.eval(&mid).cmp(&g.eval(&mid));
        }
    }
    let probe = *xs.last().expect("distinct maps with equal tails have breakpoints") + rational::int(1);
    f.eval(&probe).cmp(&g.eval(&probe))
}

/// A strict total order on PL maps.
pub trait MapOrder {
    fn compare(&self, f: &PLMap, g: &PLMap) -> Ordering;
    fn describe(&self) -> String;
}

/// Lexicographic comparison of values at the priority points, then the
/// germ order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderOracle {
    pub priority_points: Vec<Rational>,
}

impl OrderOracle {
    pub fn germ() -> Self {
        Self::default()
    }

    pub fn with_priority(points: Vec<Rational>) -> Self {
        OrderOracle { priority_points: points }
    }

    /// Whether `f` fixes every priority point.
    pub fn stabilizes(&self, f: &PLMap) -> bool {
        self.priority_points.iter().all(|p| f.eval(p) == *p)
    }
}

pub fn priority_compare(oracle: &OrderOracle, f: &PLMap, g: &PLMap) -> Ordering {
    for p in &oracle.priority_points {
        match f.eval(p).cmp(&g.eval(p)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    germ_compare(f, g)
}

impl MapOrder for OrderOracle {
    fn compare(&self, f: &PLMap, g: &PLMap) -> Ordering {
        priority_compare(self, f, g)
    }

    fn describe(&self) -> String {
        if self.priority_points.is_empty() {
            "germ".into()
        } else {
            let pts: Vec<String> = self.priority_points.iter().map(rational::fmt).collect();
            format!("priority[{}]", pts.join(","))
        }
    }
}

/// Compares values at one point and nothing else. Not an order on any
/// group containing two maps that agree there; a negative control for the
/// harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointValueOrder {
    pub point: Rational,
}

impl MapOrder for PointValueOrder {
    fn compare(&self, f: &PLMap, g: &PLMap) -> Ordering {
        f.eval(&self.point).cmp(&g.eval(&self.point))
    }

    fn describe(&self) -> String {
        format!("value-at[{}]", self.point)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Totality,
    Antisymmetry,
    Transitivity,
    LeftInvariance,
    Convexity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Totality => "totality",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::LeftInvariance => "left-invariance",
            Axiom::Convexity => "convexity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub words: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessReport {
    pub order: String,
    pub elements: usize,
    pub comparisons: usize,
    pub pair_checks: usize,
    pub transitivity_checks: usize,
    pub invariance_checks: usize,
    pub violations: Vec<Violation>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The identity and all reduced words up to `max_len`, one word per
/// distinct map (the first in enumeration order).
pub fn distinct_elements(gens: &[PLMap], max_len: usize) -> Vec<(Word, PLMap)> {
    let invs: Vec<PLMap> = gens.iter().map(LineMap::inverse).collect();
    let mut seen: HashMap<PLMap, ()> = HashMap::new();
    let mut out = Vec::new();
    for w in std::iter::once(Word::empty()).chain(reduced_words(gens.len(), max_len)) {
        let m = w.eval_with(gens, &invs);
        if seen.insert(m.clone(), ()).is_none() {
            out.push((w, m));
        }
    }
    out
}

/// Checks the left-order axioms on the distinct elements among reduced
/// words of length `≤ word_length`: totality and antisymmetry on every
/// pair, transitivity and left invariance on `samples` random triples each.
pub fn order_axiom_harness(
    gens: &[PLMap],
    order: &dyn MapOrder,
    word_length: usize,
    samples: usize,
    seed: u64,
) -> HarnessReport {
    let elems = distinct_elements(gens, word_length);
    let n = elems.len();
    let mut violations = Vec::new();
    let mut comparisons = 0;

    let mut table = vec![Ordering::Equal; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = order.compare(&elems[i].1, &elems[j].1);
            comparisons += 1;
        }
    }
    let cmp = |i: usize, j: usize| table[i * n + j];
    for i in 0..n {
        for j in i..n {
            if (cmp(i, j) == Ordering::Equal) != (i == j) {
                violations.push(Violation {
                    axiom: Axiom::Totality,
                    words: vec![elems[i].0.clone(), elems[j].0.clone()],
                });
            }
            if cmp(i, j) != cmp(j, i).reverse() {
                violations.push(Violation {
                    axiom: Axiom::Antisymmetry,
                    words: vec![elems[i].0.clone(), elems[j].0.clone()],
                });
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let ab = cmp(a, b);
        if ab != Ordering::Greater && ab == cmp(b, c) && cmp(a, c) != ab {
            violations.push(Violation {
                axiom: Axiom::Transitivity,
                words: vec![elems[a].0.clone(), elems[b].0.clone(), elems[c].0.clone()],
            });
        }
    }
    for _ in 0..samples {
        let (h, f, g) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let hm = &elems[h].1;
        comparisons += 1;
        if order.compare(&hm.compose(&elems[f].1), &hm.compose(&elems[g].1)) != cmp(f, g) {
            violations.push(Violation {
                axiom: Axiom::LeftInvariance,
                words: vec![elems[h].0.clone(), elems[f].0.clone(), elems[g].0.clone()],
            });
        }
    }

    HarnessReport {
        order: order.describe(),
        elements: n,
        comparisons,
        pair_checks: n * (n + 1) / 2,
        transitivity_checks: samples,
        invariance_checks: samples,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexReport {
    pub elements: usize,
    pub stabilizer_size: usize,
    pub triples_checked: usize,
    pub violations: Vec<Violation>,
}

impl ConvexReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// In the priority order, every `w` with `u ≤ w ≤ v` for stabilizer
/// elements `u, v` must itself fix the priority points.
pub fn convex_stabilizer_check(gens: &[PLMap], priority_points: &[Rational], word_length: usize) -> ConvexReport {
    let oracle = OrderOracle::with_priority(priority_points.to_vec());
    let mut elems = distinct_elements(gens, word_length);
    elems.sort_by(|a, b| oracle.compare(&a.1, &b.1));
    let stab: Vec<bool> = elems.iter().map(|(_, m)| oracle.stabilizes(m)).collect();
    let n = elems.len();
    let mut triples = 0;
    let mut violations = Vec::new();
    for u in (0..n).filter(|&i| stab[i]) {
        for v in (u..n).filter(|&i| stab[i]) {
            for w in u..=v {
                triples += 1;
                if !stab[w] {
                    violations.push(Violation {
                        axiom: Axiom::Convexity,
                        words: vec![elems[u].0.clone(), elems[w].0.clone(), elems[v].0.clone()],
                    });
                }
            }
        }
    }
    ConvexReport {
        elements: n,
        stabilizer_size: stab.iter().filter(|&&s| s).count(),
        triples_checked: triples,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn affine(s: Rational, c: Rational) -> PLMap {
        PLMap::affine(s, c).unwrap()
    }

    fn f_gens() -> Vec<PLMap> {
        vec![
            PLMap::unit_interval(vec![
                (int(0), int(0)),
                (frac(1, 2), frac(1, 4)),
                (frac(3, 4), frac(1, 2)),
                (int(1), int(1)),
            ])
            .unwrap(),
            PLMap::unit_interval(vec![
                (int(0), int(0)),
                (frac(1, 2), frac(1, 2)),
                (frac(3, 4), frac(5, 8)),
                (frac(7, 8), frac(3, 4)),
                (int(1), int(1)),
            ])
            .unwrap(),
        ]
    }

    #[test]
    fn germ_examples() {
        let id = PLMap::identity();
        assert_eq!(germ_compare(&PLMap::translation(int(1)), &PLMap::translation(int(2))), Ordering::Less);
        assert_eq!(germ_compare(&id, &id), Ordering::Equal);
        assert_eq!(germ_compare(&affine(frac(1, 2), int(0)), &id), Ordering::Greater);
        let g = f_gens();
        // x0 < id: x0 pulls points of (0,1) left
        assert_eq!(germ_compare(&g[0], &id), Ordering::Less);
        // x1 agrees with id up to 1/2, then lies below
        assert_eq!(germ_compare(&g[1], &id), Ordering::Less);
        assert_eq!(germ_compare(&g[0], &g[1]), Ordering::Less);
    }

    #[test]
    fn germ_compare_on_right_tail() {
        let f = PLMap::new(
            vec![(int(0), int(0))],
            crate::plmap::Affine::identity(),
            crate::plmap::Affine::new(int(2), int(0)).unwrap(),
        )
        .unwrap();
        assert_eq!(germ_compare(&f, &PLMap::identity()), Ordering::Greater);
    }

    #[test]
    fn priority_examples() {
        let o = OrderOracle::with_priority(vec![int(0)]);
        let up = PLMap::translation(int(1));
        let down = PLMap::translation(int(-1));
        assert_eq!(priority_compare(&o, &up, &down), Ordering::Greater);
        assert_eq!(priority_compare(&OrderOracle::germ(), &up, &down), germ_compare(&up, &down));
        // both fix 0; doubling on x > 0 only
        let f = PLMap::new(
            vec![(int(0), int(0))],
            crate::plmap::Affine::identity(),
            crate::plmap::Affine::new(int(2), int(0)).unwrap(),
        )
        .unwrap();
        let id = PLMap::identity();
        assert_eq!(priority_compare(&o, &f, &id), germ_compare(&f, &id));
        assert_eq!(priority_compare(&o, &f, &id), Ordering::Greater);
    }

    #[test]
    fn harness_translations_and_thompson() {
        let r = order_axiom_harness(&[PLMap::translation(int(1))], &OrderOracle::germ(), 4, 200, 1);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.elements, 9);
        let r = order_axiom_harness(&f_gens(), &OrderOracle::germ(), 3, 500, 7);
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn harness_rejects_point_value_order() {
        let bad = PointValueOrder { point: frac(1, 4) };
        let r = order_axiom_harness(&f_gens(), &bad, 2, 100, 3);
        assert!(r.violations.iter().any(|v| v.axiom == Axiom::Totality));
    }

    #[test]
    fn convex_examples() {
        let r = convex_stabilizer_check(&[PLMap::translation(int(1))], &[int(0)], 3);
        assert!(r.passed());
        assert_eq!(r.stabilizer_size, 1);
        let r = convex_stabilizer_check(&f_gens(), &[frac(1, 2)], 3);
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.stabilizer_size > 1);
        let r = convex_stabilizer_check(&f_gens(), &[], 2);
        assert!(r.passed());
        assert_eq!(r.stabilizer_size, r.elements);
    }
}
