//! Gluing actions of `G` and `H = ⟨k⟩` along a cyclic subgroup, and
//! reduction of words in the amalgamated product `G *_C H`.
//!
//! `C = ⟨c⟩ ⊂ G` is identified with `⟨h⟩ ⊂ H`, `h = k^e`, via `c^n ↔ h^n`.
//! Both `c` and `h` act without fixed points in the same direction, so an
//! intertwiner `φ` with `φ∘h = c∘φ` exists, and `θ(g) = φ⁻¹∘g∘φ`,
//! `θ(k) = k` respects the identification.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::literal::{map_from_value, AnyMap};
use crate::plmap::{Affine, LineMap, PLMap};
use crate::rational::{self, Rational};
use crate::word::Word;

/// Conjugacy `φ` between fixed-point-free `h` and `c` translating the same
/// way: the affine map of `[t0, h(t0))` onto `[u0, c(u0))`, extended by
/// `φ(h^j x) = c^j φ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intertwiner {
    /// Both normalized to translate upward.
    h: PLMap,
    c: PLMap,
    t0: Rational,
    u0: Rational,
    domain_map: Affine,
}

const SEARCH_LIMIT: u64 = 1_000_000;

impl Intertwiner {
    pub fn new(h: &PLMap, c: &PLMap, t0: Rational, u0: Rational) -> Result<Self> {
        if !h.fixed_set().is_empty() {
            return Err(Error::Precondition("h has a fixed point".into()));
        }
        if !c.fixed_set().is_empty() {
            return Err(Error::Precondition("c has a fixed point".into()));
        }
        let zero = Rational::zero();
        let h_up = h.eval(&zero) > zero;
        let c_up = c.eval(&zero) > zero;
        if h_up != c_up {
            return Err(Error::DirectionMismatch(format!(
                "h moves points {} but c moves them {}",
                if h_up { "up" } else { "down" },
                if c_up { "up" } else { "down" }
            )));
        }
        // φ∘h = c∘φ iff φ∘h⁻¹ = c⁻¹∘φ
        let (h, c) = if h_up { (h.clone(), c.clone()) } else { (h.inverse(), c.inverse()) };
        let domain_map = Affine::through(&t0, &u0, &h.eval(&t0), &c.eval(&u0));
        Ok(Intertwiner {
            h,
            c,
            t0,
            u0,
            domain_map,
        })
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let top = self.h.eval(&self.t0);
        let mut y = x.clone();
        let mut k: i64 = 0;
        let mut steps = 0;
        while y >= top || y < self.t0 {
            steps += 1;
            assert!(steps < SEARCH_LIMIT, "fundamental domain search did not terminate");
            if y >= top {
                y = self.h.eval_inverse(&y);
                k += 1;
            } else {
                y = self.h.eval(&y);
                k -= 1;
            }
        }
        let mut v = self.domain_map.apply(&y);
        for _ in 0..k.unsigned_abs() {
            v = if k > 0 { self.c.eval(&v) } else { self.c.eval_inverse(&v) };
        }
        v
    }

    /// The intertwiner from `c` to `h`.
    pub fn inverse(&self) -> Intertwiner {
        Intertwiner {
            h: self.c.clone(),
            c: self.h.clone(),
            t0: self.u0.clone(),
            u0: self.t0.clone(),
            domain_map: self.domain_map.inverse(),
        }
    }

    /// `φ` as a single affine map, when the domain map already intertwines
    /// globally (both `h` and `c` affine).
    pub fn as_affine(&self) -> Option<Affine> {
        let a = PLMap::affine(self.domain_map.slope.clone(), self.domain_map.offset.clone()).ok()?;
        (a.compose(&self.h) == self.c.compose(&a)).then(|| self.domain_map.clone())
    }
}

impl fmt::Display for Intertwiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "intertwiner[{} -> {} on [{}, {})]",
            self.h,
            self.c,
            self.t0,
            self.h.eval(&self.t0)
        )
    }
}

pub fn intertwiner(h: &PLMap, c: &PLMap, t0: Rational, u0: Rational) -> Result<Intertwiner> {
    Intertwiner::new(h, c, t0, u0)
}

/// An increasing self-map of ℝ known through an evaluation procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LazyMap {
    Pl(PLMap),
    Intertwiner(Arc<Intertwiner>),
    /// `parts[0] ∘ parts[1] ∘ ⋯`
    Compose(Vec<LazyMap>),
}

impl LazyMap {
    pub fn eval(&self, x: &Rational) -> Rational {
        match self {
            LazyMap::Pl(f) => f.eval(x),
            LazyMap::Intertwiner(phi) => phi.eval(x),
            LazyMap::Compose(parts) => parts.iter().rev().fold(x.clone(), |v, p| p.eval(&v)),
        }
    }

    pub fn inverse(&self) -> LazyMap {
        match self {
            LazyMap::Pl(f) => LazyMap::Pl(f.inverse()),
            LazyMap::Intertwiner(phi) => LazyMap::Intertwiner(Arc::new(phi.inverse())),
            LazyMap::Compose(parts) => LazyMap::Compose(parts.iter().rev().map(LazyMap::inverse).collect()),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LazyMap) -> LazyMap {
        LazyMap::Compose(vec![self.clone(), inner.clone()])
    }

    /// A finite PL form, when every part has one.
    pub fn materialize(&self) -> Option<PLMap> {
        match self {
            LazyMap::Pl(f) => Some(f.clone()),
            LazyMap::Intertwiner(phi) => {
                let a = phi.as_affine()?;
                PLMap::affine(a.slope, a.offset).ok()
            }
            LazyMap::Compose(parts) => parts
                .iter()
                .try_fold(PLMap::identity(), |acc, p| Some(acc.compose(&p.materialize()?))),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            LazyMap::Pl(f) => f.to_string(),
            LazyMap::Intertwiner(phi) => phi.to_string(),
            LazyMap::Compose(parts) => {
                let inner: Vec<String> = parts.iter().map(LazyMap::descriptor).collect();
                format!("({})", inner.join(" o "))
            }
        }
    }
}

impl fmt::Display for LazyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.materialize() {
            Some(m) => m.fmt(f),
            None => f.write_str(&self.descriptor()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Syllable {
    G(Word),
    H(i64),
}

/// A word in `G *_C H` as a list of syllables; the rightmost acts first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AmalgamWord(pub Vec<Syllable>);

impl AmalgamWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &AmalgamWord) -> AmalgamWord {
        AmalgamWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Parses space-separated `g:<word>` and `h:<integer>` tokens.
    pub fn parse(s: &str, g_names: &[String]) -> Result<AmalgamWord> {
        s.split_whitespace()
            .enumerate()
            .map(|(i, tok)| {
                let loc = format!("amalgam word token {}", i + 1);
                if let Some(w) = tok.strip_prefix("g:") {
                    Word::parse(w, g_names)
                        .map(Syllable::G)
                        .map_err(|e| Error::parse(loc, e.to_string()))
                } else if let Some(n) = tok.strip_prefix("h:") {
                    n.parse()
                        .map(Syllable::H)
                        .map_err(|_| Error::parse(loc, format!("bad exponent {n:?}")))
                } else {
                    Err(Error::parse(loc, format!("expected g:<word> or h:<int>, got {tok:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(AmalgamWord)
    }

    pub fn display<'a>(&'a self, g_names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a AmalgamWord, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_empty() {
                    return f.write_str("1");
                }
                for (i, s) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match s {
                        Syllable::G(w) => write!(f, "g:{}", w.display(self.1))?,
                        Syllable::H(n) => write!(f, "h:{n}")?,
                    }
                }
                Ok(())
            }
        }
        D(self, g_names)
    }
}

/// The glued action `θ` of `G *_C H` on ℝ.
#[derive(Debug, Clone)]
pub struct GluedAction {
    pub g_gens: Vec<PLMap>,
    pub g_names: Vec<String>,
    pub c_word: Word,
    pub c: PLMap,
    pub k: PLMap,
    pub e: i64,
    pub phi: Arc<Intertwiner>,
    /// `θ(g_i) = φ⁻¹ ∘ g_i ∘ φ`.
    pub theta_g: Vec<LazyMap>,
}

pub fn glued_action(
    g_gens: &[PLMap],
    g_names: &[String],
    c_word: &Word,
    k: &PLMap,
    e: i64,
    t0: Rational,
    u0: Rational,
) -> Result<GluedAction> {
    if g_names.len() != g_gens.len() {
        return Err(Error::Precondition("one name per G generator".into()));
    }
    if e == 0 {
        return Err(Error::Precondition("e must be nonzero".into()));
    }
    if !k.fixed_set().is_empty() {
        return Err(Error::Precondition("k has a fixed point".into()));
    }
    let c = c_word.eval(g_gens);
    let h = k.power(e);
    let phi = Arc::new(intertwiner(&h, &c, t0, u0)?);
    let phi_map = LazyMap::Intertwiner(phi.clone());
    let phi_inv = phi_map.inverse();
    let theta_g = g_gens
        .iter()
        .map(|g| LazyMap::Compose(vec![phi_inv.clone(), LazyMap::Pl(g.clone()), phi_map.clone()]))
        .collect();
    Ok(GluedAction {
        g_gens: g_gens.to_vec(),
        g_names: g_names.to_vec(),
        c_word: c_word.clone(),
        c,
        k: k.clone(),
        e,
        phi,
        theta_g,
    })
}

impl GluedAction {
    pub fn theta_k(&self) -> LazyMap {
        LazyMap::Pl(self.k.clone())
    }

    /// `θ` of a G-word, as one lazy map.
    pub fn theta_word(&self, w: &Word) -> LazyMap {
        let phi = LazyMap::Intertwiner(self.phi.clone());
        LazyMap::Compose(vec![phi.inverse(), LazyMap::Pl(w.eval(&self.g_gens)), phi])
    }

    /// `θ` of an amalgam word, as one lazy map.
    pub fn theta(&self, w: &AmalgamWord) -> LazyMap {
        LazyMap::Compose(
            w.0.iter()
                .map(|s| match s {
                    Syllable::G(g) => self.theta_word(g),
                    Syllable::H(n) => LazyMap::Pl(self.k.power(*n)),
                })
                .collect(),
        )
    }

    /// The exponent `n` with `g = c^n`, if any.
    pub fn c_exponent(&self, g: &PLMap) -> Option<i64> {
        let zero = Rational::zero();
        let target = g.eval(&zero);
        let up = self.c.eval(&zero) > zero;
        let step_up = target > zero;
        let step = if step_up == up { 1 } else { -1 };
        let mut v = zero;
        let mut n: i64 = 0;
        for _ in 0..SEARCH_LIMIT {
            if v == target {
                return (self.c.power(n) == *g).then_some(n);
            }
            if (step_up && v > target) || (!step_up && v < target) {
                return None;
            }
            v = if step > 0 { self.c.eval(&v) } else { self.c.eval_inverse(&v) };
            n += step;
        }
        None
    }
}

pub fn amalgam_eval(theta: &GluedAction, w: &AmalgamWord, x: &Rational) -> Rational {
    theta.theta(w).eval(x)
}

fn is_trivial_syllable(theta: &GluedAction, s: &Syllable) -> bool {
    match s {
        Syllable::G(w) => w.is_empty() || w.eval(&theta.g_gens).is_identity(),
        Syllable::H(n) => *n == 0,
    }
}

/// Merges neighbours from the same factor and pinches syllables lying in
/// the amalgamated subgroup into their neighbours until neither applies.
pub fn amalgam_reduce(theta: &GluedAction, w: &AmalgamWord) -> AmalgamWord {
    let mut syl = w.0.clone();
    loop {
        syl.retain(|s| !is_trivial_syllable(theta, s));
        let mut merged: Vec<Syllable> = Vec::with_capacity(syl.len());
        for s in syl.drain(..) {
            match (merged.last_mut(), s) {
                (Some(Syllable::G(a)), Syllable::G(b)) => *a = a.concat(&b),
                (Some(Syllable::H(a)), Syllable::H(b)) => *a += b,
                (_, s) => merged.push(s),
            }
        }
        syl = merged;
        if syl.iter().any(|s| is_trivial_syllable(theta, s)) {
            continue;
        }
        if syl.len() < 2 {
            break;
        }
        let pinch = syl.iter().enumerate().find_map(|(i, s)| match s {
            Syllable::G(w) => theta.c_exponent(&w.eval(&theta.g_gens)).map(|n| (i, Syllable::H(n * theta.e))),
            Syllable::H(m) => (m % theta.e == 0).then(|| {
                let n = m / theta.e;
                let c = if n < 0 { theta.c_word.inverse() } else { theta.c_word.clone() };
                let w = (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&c));
                (i, Syllable::G(w))
            }),
        });
        match pinch {
            Some((i, s)) => syl[i] = s,
            None => break,
        }
    }
    AmalgamWord(syl)
}

/// Amalgam data read from JSON:
///
/// ```json
/// {"g_generators": [{"name": "d", "map": {"left_tail": {"slope": "1", "offset": "1/2"}}}],
///  "c": "d^2", "k": {"left_tail": {"slope": "1", "offset": "1"}}, "e": 3}
/// ```
///
/// Optional `"t0"` and `"u0"` default to 0.
pub fn glued_action_from_json(text: &str, loc: &str) -> Result<GluedAction> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("{loc}:{}:{}", e.line(), e.column()), e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| Error::parse(loc, "expected a JSON object"))?;
    let line_map = |v: &Value, l: &str| match map_from_value(v, l)? {
        AnyMap::Line(f) => Ok(f),
        AnyMap::Periodic(_) => Err(Error::parse(l, "amalgam maps must be finite PL maps")),
    };
    let gens = obj
        .get("g_generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse(format!("{loc}.g_generators"), "expected a list"))?;
    let mut names = Vec::new();
    let mut maps = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let gl = format!("{loc}.g_generators[{i}]");
        let name = g
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse(format!("{gl}.name"), "expected a string"))?;
        let map = g.get("map").ok_or_else(|| Error::parse(format!("{gl}.map"), "missing"))?;
        names.push(name.to_string());
        maps.push(line_map(map, &format!("{gl}.map"))?);
    }
    let c_text = obj
        .get("c")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse(format!("{loc}.c"), "expected a G-word string"))?;
    let c_word = Word::parse(c_text, &names).map_err(|e| Error::parse(format!("{loc}.c"), e.to_string()))?;
    let k = line_map(obj.get("k").ok_or_else(|| Error::parse(format!("{loc}.k"), "missing"))?, &format!("{loc}.k"))?;
    let e = obj
        .get("e")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::parse(format!("{loc}.e"), "expected an integer"))?;
    let point = |key: &str| match obj.get(key) {
        None => Ok(Rational::zero()),
        Some(Value::String(s)) => rational::parse(s).map_err(|err| Error::parse(format!("{loc}.{key}"), err.to_string())),
        Some(_) => Err(Error::parse(format!("{loc}.{key}"), "expected a rational string")),
    };
    glued_action(&maps, &names, &c_word, &k, e, point("t0")?, point("u0")?)
}
