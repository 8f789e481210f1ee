//! Thompson's group F, the lifted group T̃, named fixtures, and the search
//! for a conjugator making two interior-supported subgroups commute.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::intervals::{is_plt, Endpoint};
use crate::literal::AnyMap;
use crate::periodic::PeriodicMap;
use crate::plmap::{LineMap, PLMap};
use crate::rational::{frac, int, Rational};
use crate::word::{reduced_words, Word};

fn pts(p: &[(i64, i64, i64, i64)]) -> Vec<(Rational, Rational)> {
    p.iter().map(|&(a, b, c, d)| (frac(a, b), frac(c, d))).collect()
}

const X0: [(i64, i64, i64, i64); 4] = [(0, 1, 0, 1), (1, 2, 1, 4), (3, 4, 1, 2), (1, 1, 1, 1)];
const X1: [(i64, i64, i64, i64); 5] = [(0, 1, 0, 1), (1, 2, 1, 2), (3, 4, 5, 8), (7, 8, 3, 4), (1, 1, 1, 1)];

/// The standard generators `x0, x1` of F as maps of `[0,1]`.
pub fn f_generators() -> (PLMap, PLMap) {
    let x0 = PLMap::unit_interval(pts(&X0)).expect("valid fixture");
    let x1 = PLMap::unit_interval(pts(&X1)).expect("valid fixture");
    (x0, x1)
}

fn commutator<M: LineMap>(a: &M, b: &M) -> M {
    a.compose(b).compose(&a.inverse()).compose(&b.inverse())
}

/// The two defining relations `[x0 x1⁻¹, x0⁻¹ x1 x0]` and
/// `[x0 x1⁻¹, x0⁻² x1 x0²]`, each paired with whether it holds exactly.
pub fn f_relations(x0: &PLMap, x1: &PLMap) -> Vec<(&'static str, bool)> {
    let u = x0.compose(&x1.inverse());
    let x2 = x1.conjugate_by(&x0.inverse());
    let x3 = x1.conjugate_by(&x0.power(-2));
    vec![
        ("[x0*x1^-1, x0^-1*x1*x0]", commutator(&u, &x2).is_identity()),
        ("[x0*x1^-1, x0^-2*x1*x0^2]", commutator(&u, &x3).is_identity()),
    ]
}

/// Lifts of Thompson's T generators to maps of the line commuting with
/// `z = x+1`, and `z` itself. `c³ = z²`.
pub fn ttilde_generators() -> (Vec<PeriodicMap>, PeriodicMap) {
    let a = PeriodicMap::new(pts(&X0)).expect("valid fixture");
    let b = PeriodicMap::new(pts(&X1)).expect("valid fixture");
    let c = PeriodicMap::new(pts(&[(0, 1, 3, 4), (1, 2, 1, 1), (3, 4, 3, 2), (1, 1, 7, 4)])).expect("valid fixture");
    (vec![a, b, c], PeriodicMap::translation(int(1)))
}

/// The periodic pair with fixed sets ℤ and ℤ + 1/2.
pub fn periodic_pair() -> (PeriodicMap, PeriodicMap) {
    let alpha = PeriodicMap::new(pts(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 1, 1, 1)])).expect("valid fixture");
    let beta = alpha.conjugate_by(&PeriodicMap::translation(frac(1, 2)));
    (alpha, beta)
}

pub const FIXTURE_NAMES: &[&str] = &[
    "F.x0",
    "F.x1",
    "Ttilde.a",
    "Ttilde.b",
    "Ttilde.c",
    "Ttilde.z",
    "Periodic.alpha",
    "Periodic.beta",
    "Line.halving",
    "Line.averaging",
    "Line.shift",
    "Trefoil.d",
    "Trefoil.k",
];

/// Looks up a named fixture.
pub fn fixture(name: &str) -> Option<AnyMap> {
    let (x0, x1) = f_generators();
    let (t, z) = ttilde_generators();
    let (alpha, beta) = periodic_pair();
    let line = |s, c| AnyMap::Line(PLMap::affine(s, c).expect("positive slope"));
    Some(match name {
        "F.x0" => x0.into(),
        "F.x1" => x1.into(),
        "Ttilde.a" => t[0].clone().into(),
        "Ttilde.b" => t[1].clone().into(),
        "Ttilde.c" => t[2].clone().into(),
        "Ttilde.z" => z.into(),
        "Periodic.alpha" => alpha.into(),
        "Periodic.beta" => beta.into(),
        "Line.halving" => line(frac(1, 2), int(0)),
        "Line.averaging" => line(frac(1, 2), frac(1, 2)),
        "Line.shift" | "Trefoil.k" => line(int(1), int(1)),
        "Trefoil.d" => line(int(1), frac(1, 2)),
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct Conjugator {
    pub word: Word,
    pub map: PLMap,
    /// Hull `(r, s)` of the supports of the A and B generators.
    pub support: Option<(Rational, Rational)>,
    pub words_tried: usize,
}

fn support_hull(maps: &[PLMap]) -> Result<Option<(Rational, Rational)>> {
    let mut hull: Option<(Rational, Rational)> = None;
    for (i, f) in maps.iter().enumerate() {
        let moved = f.fixed_set().complement_open();
        let (Some(first), Some(last)) = (moved.intervals().first(), moved.intervals().last()) else {
            continue;
        };
        let (lo, hi) = match (&first.0, &last.1) {
            (Endpoint::Finite(lo), Endpoint::Finite(hi)) if lo.is_positive() && *hi < int(1) => {
                (lo.clone(), hi.clone())
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "map {i} moves points outside a compact subinterval of (0,1): support {moved}"
                )))
            }
        };
        hull = Some(match hull {
            None => (lo, hi),
            Some((r, s)) => (r.min(lo), s.max(hi)),
        });
    }
    Ok(hull)
}

fn commute_after_conjugation(a_gens: &[PLMap], b_gens: &[PLMap], g: &PLMap) -> bool {
    a_gens
        .iter()
        .all(|a| b_gens.iter().all(|b| commutator(&a.conjugate_by(g), b).is_identity()))
}

/// Breadth-first search over reduced words in `g_gens` for `g` with
/// `g(r) > s`, where `(r, s)` contains every support in A and B; then
/// `g A g⁻¹` and `B` have disjoint supports and commute.
pub fn lplt_conjugator(a_gens: &[PLMap], b_gens: &[PLMap], g_gens: &[PLMap], depth: usize) -> Result<Conjugator> {
    if g_gens.is_empty() || !is_plt(g_gens)? {
        return Err(Error::Precondition("the group generators have a common fixed point in (0,1)".into()));
    }
    let all: Vec<PLMap> = a_gens.iter().chain(b_gens).cloned().collect();
    let support = support_hull(&all)?;
    if commute_after_conjugation(a_gens, b_gens, &PLMap::identity()) {
        return Ok(Conjugator {
            word: Word::empty(),
            map: PLMap::identity(),
            support,
            words_tried: 0,
        });
    }
    let (r, s) = support.clone().expect("non-commuting maps have support");
    let invs: Vec<PLMap> = g_gens.iter().map(LineMap::inverse).collect();
    for (i, w) in reduced_words(g_gens.len(), depth).into_iter().enumerate() {
        let g = w.eval_with(g_gens, &invs);
        if g.eval(&r) > s {
            if !commute_after_conjugation(a_gens, b_gens, &g) {
                return Err(Error::Postcondition(format!("conjugating by {w:?} left a nontrivial commutator")));
            }
            return Ok(Conjugator {
                word: w,
                map: g,
                support,
                words_tried: i + 1,
            });
        }
    }
    Err(Error::SearchExhausted {
        what: format!("g with g({r}) > {s}"),
        bound: depth as u64,
    })
}
