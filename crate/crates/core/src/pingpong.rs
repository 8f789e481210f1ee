//! Ping-pong certificates for free subsemigroups and free subgroups.
//!
//! * [`free_semigroup_witness`]: two maps fixing the two ends of an interval
//!   `[a,b]` and nothing in between generate a free subsemigroup after
//!   taking suitable powers.
//! * [`ns_classify`]: a finite family whose members each fix a point either
//!   has a common fixed point or contains such a pair.
//! * [`free_group_witness`]: two maps with disjoint nonempty fixed sets,
//!   both commuting with a fixed-point-free `z`, have powers playing
//!   table tennis on a `z`-periodic pair of open sets.
//! * [`commuting_family_fixcheck`]: the corresponding dichotomy for a
//!   family centralized by `z`.
//!
//! Every inclusion is certified on interval endpoints; monotonicity of the
//! maps makes that exact.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intervals::{group_fixed_set, ClosedSet, Endpoint, OpenIntervalList};
use crate::plmap::{Affine, LineMap, PLMap};
use crate::rational::{self, Rational};
use crate::word::Word;

pub const DEFAULT_SEMIGROUP_DEPTH: usize = 12;
pub const DEFAULT_GROUP_DEPTH: usize = 6;
pub const DEFAULT_SEARCH_BOUND: u32 = 64;

/// One certified interval inclusion `map(domain) = image ⊆ target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inclusion {
    pub map: String,
    pub domain: String,
    pub image: String,
    pub target: String,
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} = {} ⊆ {}", self.map, self.domain, self.image, self.target)
    }
}

fn open(lo: &impl fmt::Display, hi: &impl fmt::Display) -> String {
    format!("({lo}, {hi})")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordMode {
    /// Positive words evaluated at a probe point must be pairwise distinct.
    Semigroup,
    /// Reduced words must all differ from the identity map.
    Group,
}

/// Outcome of [`verify_distinct_words`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCheck {
    pub passed: bool,
    pub words_checked: usize,
    /// Two words with equal value (semigroup mode), or a word and the empty
    /// word (group mode).
    pub counterexample: Option<(Word, Word)>,
}

/// Exhaustive check behind both witnesses.
pub fn verify_distinct_words<M: LineMap>(gens: &[M], mode: WordMode, depth: usize, probe: &Rational) -> WordCheck {
    match mode {
        WordMode::Semigroup => semigroup_words_distinct(gens, depth, probe),
        WordMode::Group => group_words_nontrivial(gens, depth),
    }
}

fn semigroup_words_distinct<M: LineMap>(gens: &[M], depth: usize, probe: &Rational) -> WordCheck {
    let mut seen: HashMap<Rational, Word> = HashMap::new();
    // a word acts right to left, so extending on the left applies one more map
    let mut layer: Vec<(Vec<i32>, Rational)> = vec![(Vec::new(), probe.clone())];
    let mut count = 0;
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for (letters, value) in &layer {
            for (g, map) in gens.iter().enumerate() {
                let mut w = Vec::with_capacity(letters.len() + 1);
                w.push(g as i32 + 1);
                w.extend_from_slice(letters);
                let v = map.eval(value);
                count += 1;
                if let Some(prev) = seen.get(&v) {
                    return WordCheck {
                        passed: false,
                        words_checked: count,
                        counterexample: Some((prev.clone(), Word(w))),
                    };
                }
                seen.insert(v.clone(), Word(w.clone()));
                next.push((w, v));
            }
        }
        layer = next;
    }
    WordCheck {
        passed: true,
        words_checked: count,
        counterexample: None,
    }
}

fn group_words_nontrivial<M: LineMap>(gens: &[M], depth: usize) -> WordCheck {
    let invs: Vec<M> = gens.iter().map(LineMap::inverse).collect();
    let mut layer: Vec<(Vec<i32>, M)> = vec![(Vec::new(), M::identity())];
    let mut count = 0;
    for _ in 0..depth {
        let mut next = Vec::new();
        for (letters, map) in &layer {
            for g in 0..gens.len() {
                for (l, gen) in [(g as i32 + 1, &gens[g]), (-(g as i32) - 1, &invs[g])] {
                    if letters.last() == Some(&-l) {
                        continue;
                    }
                    let mut w = letters.clone();
                    w.push(l);
                    let m = map.compose(gen);
                    count += 1;
                    if m.is_identity() {
                        return WordCheck {
                            passed: false,
                            words_checked: count,
                            counterexample: Some((Word(w), Word::empty())),
                        };
                    }
                    next.push((w, m));
                }
            }
        }
        layer = next;
    }
    WordCheck {
        passed: true,
        words_checked: count,
        counterexample: None,
    }
}

/// Certificate that `⟨γ, δ⟩` with `γ = α^m`, `δ = β^n` is a free semigroup:
/// `γ` maps `(a,b]` into `(a,x)` and `δ` maps `[a,b)` into `(x,b)`.
#[derive(Debug, Clone)]
pub struct SemigroupWitness<M> {
    pub m: u32,
    pub n: u32,
    /// The separating point `β(a)` after direction normalization.
    pub x: Rational,
    pub a: Rational,
    pub b: Rational,
    pub alpha_inverted: bool,
    pub beta_inverted: bool,
    /// `α^m` and `β^n`, with the normalized α and β.
    pub gamma: M,
    pub delta: M,
    pub inclusions: Vec<Inclusion>,
    pub check_depth: usize,
    pub words_checked: usize,
}

fn iterate_until<M: LineMap>(
    f: &M,
    start: &Rational,
    bound: u32,
    what: &str,
    done: impl Fn(&Rational) -> bool,
) -> Result<u32> {
    let mut v = start.clone();
    for k in 1..=bound {
        v = f.eval(&v);
        if done(&v) {
            return Ok(k);
        }
    }
    Err(Error::SearchExhausted {
        what: what.into(),
        bound: bound.into(),
    })
}

/// Builds a [`SemigroupWitness`] for α fixing `a` and β fixing `b`, with no
/// other fixed points of α in `(a,b]` or of β in `[a,b)`.
pub fn free_semigroup_witness<M: LineMap>(
    alpha: &M,
    beta: &M,
    a: &Rational,
    b: &Rational,
    check_depth: usize,
    bound: u32,
) -> Result<SemigroupWitness<M>> {
    if a >= b {
        return Err(Error::Precondition(format!("a = {a} must be below b = {b}")));
    }
    if alpha.eval(a) != *a {
        return Err(Error::Precondition(format!("alpha does not fix a = {a}")));
    }
    if beta.eval(b) != *b {
        return Err(Error::Precondition(format!("beta does not fix b = {b}")));
    }
    if alpha.fixed_set_within(a, b) != ClosedSet::point(a.clone()) {
        return Err(Error::Precondition(format!("alpha has a fixed point in ({a}, {b}]")));
    }
    if beta.fixed_set_within(a, b) != ClosedSet::point(b.clone()) {
        return Err(Error::Precondition(format!("beta has a fixed point in [{a}, {b})")));
    }

    let alpha_inverted = alpha.eval(b) > *b;
    let beta_inverted = beta.eval(a) < *a;
    let alpha = if alpha_inverted { alpha.inverse() } else { alpha.clone() };
    let beta = if beta_inverted { beta.inverse() } else { beta.clone() };

    let x = beta.eval(a);
    let m = iterate_until(&alpha, b, bound, "m with alpha^m(b) < x", |v| *v < x)?;
    let n = iterate_until(&beta, a, bound, "n with beta^n(a) > x", |v| *v > x)?;
    let gamma = alpha.power(m.into());
    let delta = beta.power(n.into());

    let inclusions = vec![
        Inclusion {
            map: format!("alpha^{m}"),
            domain: format!("({a}, {b}]"),
            image: format!("({a}, {}]", gamma.eval(b)),
            target: open(a, &x),
        },
        Inclusion {
            map: format!("beta^{n}"),
            domain: format!("[{a}, {b})"),
            image: format!("[{}, {b})", delta.eval(a)),
            target: open(&x, b),
        },
    ];

    let check = verify_distinct_words(&[gamma.clone(), delta.clone()], WordMode::Semigroup, check_depth, &x);
    if !check.passed {
        return Err(Error::Postcondition(format!(
            "positive words {:?} agree at {x}",
            check.counterexample
        )));
    }
    Ok(SemigroupWitness {
        m,
        n,
        x,
        a: a.clone(),
        b: b.clone(),
        alpha_inverted,
        beta_inverted,
        gamma,
        delta,
        inclusions,
        check_depth,
        words_checked: check.words_checked,
    })
}

/// Certificate that `⟨α^p, β^q⟩` is free, by table tennis on the
/// `z`-periodic sets `P = ⋃ z^r P₁` and `Q = ⋃ z^r Q₁`.
#[derive(Debug, Clone)]
pub struct GroupWitness<M> {
    pub p: u32,
    pub q: u32,
    /// The leftmost fixed point of β in `[0, z(0)]`.
    pub base_point: Rational,
    /// Affine change of coordinates sending `base_point ↦ 0` and
    /// `z(base_point) ↦ 1`.
    pub normalizer: Affine,
    pub z_inverted: bool,
    /// Alternating cover of `[base_point, z(base_point)]`: complementary
    /// intervals of `Fix(α)` at even positions, of `Fix(β)` at odd ones.
    pub chain: Vec<(Rational, Rational)>,
    /// Markers `x_0, …, x_{n-1}`.
    pub markers: Vec<Rational>,
    /// One period of P and of Q.
    pub p_set: OpenIntervalList,
    pub q_set: OpenIntervalList,
    pub alpha_power: M,
    pub beta_power: M,
    pub inclusions: Vec<Inclusion>,
    pub check_depth: usize,
    pub words_checked: usize,
}

impl<M> GroupWitness<M> {
    pub fn normalized_markers(&self) -> Vec<Rational> {
        self.markers.iter().map(|x| self.normalizer.apply(x)).collect()
    }
}

/// Translates of `set` by `z^r`, `-reach ≤ r ≤ reach`.
fn periodic_extension<M: LineMap>(set: &OpenIntervalList, z: &M, reach: i64) -> OpenIntervalList {
    (-reach..=reach).fold(OpenIntervalList::empty(), |acc, r| {
        let zr = z.power(r);
        acc.union(&set.image(|x| zr.eval(x)))
    })
}

fn finite_gap(fix: &ClosedSet, at: &Rational, what: &str) -> Result<(Rational, Rational)> {
    match fix.gap_around(at) {
        Some((Endpoint::Finite(lo), Endpoint::Finite(hi))) => Ok((lo, hi)),
        Some(_) => Err(Error::Cover(format!("the gap of Fix({what}) around {at} is unbounded"))),
        None => Err(Error::Cover(format!("{at} is fixed by {what}"))),
    }
}

/// Least `k ≥ 1` such that both `f^k` and `f^-k` move `(lo, hi)` off itself.
fn escape_power<M: LineMap>(f: &M, f_inv: &M, lo: &Rational, hi: &Rational, bound: u32, what: &str) -> Result<u32> {
    let (mut fl, mut fh) = (lo.clone(), hi.clone());
    let (mut bl, mut bh) = (lo.clone(), hi.clone());
    for k in 1..=bound {
        fl = f.eval(&fl);
        fh = f.eval(&fh);
        bl = f_inv.eval(&bl);
        bh = f_inv.eval(&bh);
        let fwd = fl >= *hi || fh <= *lo;
        let back = bl >= *hi || bh <= *lo;
        if fwd && back {
            return Ok(k);
        }
    }
    Err(Error::SearchExhausted {
        what: format!("{what} escape power on ({lo}, {hi})"),
        bound: bound.into(),
    })
}

/// Builds a [`GroupWitness`] for α, β with disjoint nonempty fixed sets,
/// both centralized by the fixed-point-free `z`.
pub fn free_group_witness<M: LineMap>(
    alpha: &M,
    beta: &M,
    z: &M,
    check_depth: usize,
    bound: u32,
) -> Result<GroupWitness<M>> {
    if !z.is_fixed_point_free() {
        return Err(Error::Precondition("z has a fixed point".into()));
    }
    if !z.commutes_with(alpha) {
        return Err(Error::Precondition("z does not commute with alpha".into()));
    }
    if !z.commutes_with(beta) {
        return Err(Error::Precondition("z does not commute with beta".into()));
    }
    let zero = Rational::zero();
    let z_inverted = z.eval(&zero) < zero;
    let z = if z_inverted { z.inverse() } else { z.clone() };
    let period_end = z.eval(&zero);

    // Fix(α), Fix(β) are z-invariant, so one fundamental domain decides
    // emptiness and disjointness.
    let fa0 = alpha.fixed_set_within(&zero, &period_end);
    let fb0 = beta.fixed_set_within(&zero, &period_end);
    if fa0.is_empty() {
        return Err(Error::Precondition("alpha has no fixed point".into()));
    }
    if fb0.is_empty() {
        return Err(Error::Precondition("beta has no fixed point".into()));
    }
    if !fa0.intersect(&fb0).is_empty() {
        return Err(Error::Precondition("the fixed sets of alpha and beta intersect".into()));
    }

    let b0 = fb0.min().expect("nonempty and bounded").clone();
    let b1 = z.eval(&b0);
    let normalizer = Affine::through(&b0, &zero, &b1, &rational::int(1));

    let window_lo = z.power(-2).eval(&zero);
    let window_hi = z.power(3).eval(&zero);
    let fa = alpha.fixed_set_within(&window_lo, &window_hi);
    let fb = beta.fixed_set_within(&window_lo, &window_hi);

    // Alternating chain: A-gap around b0, then the B-gap around its right
    // end, and so on until an A-gap contains z(b0).
    let mut chain = vec![finite_gap(&fa, &b0, "alpha")?];
    loop {
        if chain.len() > 100_000 {
            return Err(Error::Cover("alternating chain does not close".into()));
        }
        let (_, right) = chain.last().unwrap().clone();
        let is_a = chain.len() % 2 == 1;
        if is_a && right > b1 {
            break;
        }
        if right > window_hi {
            return Err(Error::Cover("alternating chain left the search window".into()));
        }
        let next = if is_a {
            finite_gap(&fb, &right, "beta")?
        } else {
            finite_gap(&fa, &right, "alpha")?
        };
        chain.push(next);
    }
    let n = chain.len();

    let mut markers = vec![Rational::zero(); n];
    for i in 1..n {
        // odd i: x_i in (b_i, a_i); even i: x_i in (a_i, b_i)
        markers[i] = rational::midpoint(&chain[i].0, &chain[i - 1].1);
    }
    markers[0] = z.eval_inverse(&markers[n - 1]);

    let spans = |parity: usize| {
        (0..n - 1)
            .filter(|i| i % 2 == parity)
            .map(|i| (Endpoint::Finite(markers[i].clone()), Endpoint::Finite(markers[i + 1].clone())))
            .collect::<Vec<_>>()
    };
    let p_set = OpenIntervalList::new(spans(0)).map_err(|e| Error::Cover(e.to_string()))?;
    let q_set = OpenIntervalList::new(spans(1)).map_err(|e| Error::Cover(e.to_string()))?;
    let p_ext = periodic_extension(&p_set, &z, 3);
    let q_ext = periodic_extension(&q_set, &z, 3);
    if !p_ext.intersect(&q_ext).is_empty() {
        return Err(Error::Postcondition("P and Q intersect".into()));
    }

    let alpha_inv = alpha.inverse();
    let beta_inv = beta.inverse();
    let mut p = 1;
    for (lo, hi) in p_set.intervals() {
        let (lo, hi) = (lo.finite().unwrap(), hi.finite().unwrap());
        p = p.max(escape_power(alpha, &alpha_inv, lo, hi, bound, "alpha")?);
    }
    let mut q = 1;
    for (lo, hi) in q_set.intervals() {
        let (lo, hi) = (lo.finite().unwrap(), hi.finite().unwrap());
        q = q.max(escape_power(beta, &beta_inv, lo, hi, bound, "beta")?);
    }

    let alpha_power = alpha.power(p.into());
    let beta_power = beta.power(q.into());
    let mut inclusions = Vec::new();
    for (name, map, exp, from, to) in [
        ("alpha", &alpha_power, p, &p_set, &q_ext),
        ("beta", &beta_power, q, &q_set, &p_ext),
    ] {
        for r in [-3i64, -2, -1, 1, 2, 3] {
            let f = map.power(r);
            for (lo, hi) in from.intervals() {
                let ilo = lo.map(|x| f.eval(x));
                let ihi = hi.map(|x| f.eval(x));
                let target = to
                    .intervals()
                    .iter()
                    .find(|(a, b)| *a <= ilo && ihi <= *b)
                    .ok_or_else(|| {
                        Error::Postcondition(format!(
                            "{name}^{} maps ({lo}, {hi}) to ({ilo}, {ihi}), outside the opposite set",
                            exp as i64 * r
                        ))
                    })?;
                inclusions.push(Inclusion {
                    map: format!("{name}^{}", exp as i64 * r),
                    domain: open(lo, hi),
                    image: open(&ilo, &ihi),
                    target: open(&target.0, &target.1),
                });
            }
        }
    }

    let check = verify_distinct_words(&[alpha_power.clone(), beta_power.clone()], WordMode::Group, check_depth, &zero);
    if !check.passed {
        return Err(Error::Postcondition(format!(
            "reduced word {:?} is the identity",
            check.counterexample
        )));
    }

    Ok(GroupWitness {
        p,
        q,
        base_point: b0,
        normalizer,
        z_inverted,
        chain,
        markers,
        p_set,
        q_set,
        alpha_power,
        beta_power,
        inclusions,
        check_depth,
        words_checked: check.words_checked,
    })
}

#[derive(Debug, Clone)]
pub enum Classification<M> {
    /// The common fixed set (for a `z`-centralized family, its part in the
    /// fundamental domain `[0, z(0)]`).
    CommonFixedPoint(ClosedSet),
    FreeSemigroup {
        witness: SemigroupWitness<M>,
        pair: (usize, usize),
    },
    FreeGroup {
        witness: GroupWitness<M>,
        pair: (usize, usize),
    },
    Inconclusive(String),
}

impl<M> Classification<M> {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::CommonFixedPoint(_) => "common-fixed-point",
            Classification::FreeSemigroup { .. } => "free-semigroup",
            Classification::FreeGroup { .. } => "free-group",
            Classification::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Either the generators share a fixed point, or two of them have
/// properly overlapping complementary intervals and so generate a free
/// subsemigroup.
pub fn ns_classify(gens: &[PLMap], check_depth: usize, bound: u32) -> Result<Classification<PLMap>> {
    if gens.is_empty() {
        return Err(Error::Precondition("no generators".into()));
    }
    if let Some(i) = gens.iter().position(|g| g.fixed_set().is_empty()) {
        return Err(Error::Precondition(format!("generator {i} has no fixed point")));
    }
    let common = group_fixed_set(gens);
    if !common.is_empty() {
        return Ok(Classification::CommonFixedPoint(common));
    }

    let gaps: Vec<(usize, Endpoint, Endpoint)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            g.fixed_set()
                .complement_open()
                .intervals()
                .iter()
                .map(|(lo, hi)| (i, lo.clone(), hi.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    let inside = |(_, a, b): &(usize, Endpoint, Endpoint), (_, c, d): &(usize, Endpoint, Endpoint)| c <= a && b <= d;
    let maximal = gaps
        .iter()
        .enumerate()
        .find(|(idx, g)| !gaps.iter().enumerate().any(|(j, h)| j != *idx && inside(g, h) && !inside(h, g)))
        .map(|(_, g)| g)
        .expect("a finite family of intervals has a maximal member");
    let partner = gaps.iter().find(|h| {
        let overlap = h.1.clone().max(maximal.1.clone()) < h.2.clone().min(maximal.2.clone());
        overlap && !inside(h, maximal)
    });
    let Some(partner) = partner else {
        return Ok(Classification::Inconclusive(
            "no properly overlapping pair of complementary intervals".into(),
        ));
    };
    // I ∩ J = (a,b); the map whose interval starts at a plays alpha
    let (first, second) = if maximal.1 > partner.1 { (maximal, partner) } else { (partner, maximal) };
    let (Some(a), Some(b)) = (first.1.finite(), second.2.finite()) else {
        return Ok(Classification::Inconclusive("overlap is unbounded".into()));
    };
    let witness = free_semigroup_witness(&gens[first.0], &gens[second.0], a, b, check_depth, bound)?;
    Ok(Classification::FreeSemigroup {
        witness,
        pair: (first.0, second.0),
    })
}

/// For a family centralized by the fixed-point-free `z`: a common fixed
/// point, or a free subgroup from a pair with disjoint fixed sets.
pub fn commuting_family_fixcheck<M: LineMap>(
    fs: &[M],
    z: &M,
    check_depth: usize,
    bound: u32,
) -> Result<Classification<M>> {
    if fs.is_empty() {
        return Err(Error::Precondition("empty family".into()));
    }
    if !z.is_fixed_point_free() {
        return Err(Error::Precondition("z has a fixed point".into()));
    }
    if let Some(i) = fs.iter().position(|f| !z.commutes_with(f)) {
        return Err(Error::Precondition(format!("z does not commute with member {i}")));
    }
    let zero = Rational::zero();
    let end = z.eval(&zero);
    let (lo, hi) = if end > zero { (zero, end) } else { (end, zero) };
    let fixed: Vec<ClosedSet> = fs.iter().map(|f| f.fixed_set_within(&lo, &hi)).collect();
    if let Some(i) = fixed.iter().position(ClosedSet::is_empty) {
        return Err(Error::Precondition(format!("member {i} has no fixed point")));
    }
    let common = fixed.iter().skip(1).fold(fixed[0].clone(), |acc, s| acc.intersect(s));
    if !common.is_empty() {
        return Ok(Classification::CommonFixedPoint(common));
    }
    let mut last_err = None;
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if !fixed[i].intersect(&fixed[j]).is_empty() {
                continue;
            }
            match free_group_witness(&fs[i], &fs[j], z, check_depth, bound) {
                Ok(witness) => return Ok(Classification::FreeGroup { witness, pair: (i, j) }),
                Err(e) => last_err = Some(e),
            }
        }
    }
    Ok(Classification::Inconclusive(match last_err {
        Some(e) => format!("no pair yields a witness: {e}"),
        None => "no common fixed point and no pair with disjoint fixed sets".into(),
    }))
}
