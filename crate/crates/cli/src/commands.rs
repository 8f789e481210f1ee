use std::cmp::Ordering;

use serde_json::{json, Value};

use ordalab::amalgam::{amalgam_eval, amalgam_reduce, glued_action_from_json, intertwiner, AmalgamWord, GluedAction, Syllable};
use ordalab::braid::{
    braid_compare, center_generator, commutes_with_generators, exponent_sum, handle_reduce, is_identity_permutation,
    is_trivial, permutation_projection, BraidWord, DEFAULT_BUDGET,
};
use ordalab::intervals::{group_fixed_set, is_plt, orbit_intervals};
use ordalab::literal::{map_to_value, open_list_to_value, set_to_value};
use ordalab::ordering::{
    convex_stabilizer_check, germ_compare, order_axiom_harness, priority_compare, MapOrder, OrderOracle,
    PointValueOrder, Violation,
};
use ordalab::pingpong::{
    commuting_family_fixcheck, free_group_witness, free_semigroup_witness, ns_classify, Classification,
    GroupWitness, SemigroupWitness, DEFAULT_GROUP_DEPTH, DEFAULT_SEARCH_BOUND, DEFAULT_SEMIGROUP_DEPTH,
};
use ordalab::thompson::{f_generators, f_relations, fixture, lplt_conjugator, ttilde_generators, FIXTURE_NAMES};
use ordalab::word::default_names;
use ordalab::{rational, AnyMap, Error, LineMap, PLMap, PeriodicMap, Rational};

use crate::input::{family, split_list, Family, InputError, InputResult, Inputs};
use crate::report::Outcome;
use crate::{AmalgamCmd, BraidCmd, Cli, Command, MapCmd, OrderCmd, OrderKind, PingpongCmd, SetsCmd, ThompsonCmd};

const DEFAULT_CONJUGATOR_DEPTH: usize = 4;

fn q(x: &Rational) -> Value {
    Value::String(rational::fmt(x))
}

fn lit<M: Clone + Into<AnyMap>>(m: &M) -> Value {
    map_to_value(&m.clone().into())
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

/// A certificate that fails its own check is a violation; anything else
/// the library rejects is an input error.
fn lib<T>(r: ordalab::Result<T>) -> InputResult<LibOutcome<T>> {
    match r {
        Ok(t) => Ok(LibOutcome::Done(t)),
        Err(Error::Postcondition(msg)) => Ok(LibOutcome::Failed(msg)),
        Err(e) => Err(e.into()),
    }
}

enum LibOutcome<T> {
    Done(T),
    Failed(String),
}

fn failed(msg: String) -> Outcome {
    Outcome::ok(json!({ "failure": msg })).checked(false)
}

/// Step budget: the flag, then `ORDALAB_BUDGET`, then `default`.
fn budget(cli: &Cli, default: u64) -> InputResult<u64> {
    if let Some(b) = cli.global.budget {
        return Ok(b);
    }
    match std::env::var("ORDALAB_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| InputError(format!("ORDALAB_BUDGET: expected a non-negative integer, got {s:?}"))),
        Err(_) => Ok(default),
    }
}

fn search_bound(cli: &Cli) -> InputResult<u32> {
    let b = budget(cli, DEFAULT_SEARCH_BOUND as u64)?;
    u32::try_from(b).map_err(|_| InputError(format!("budget {b} is too large for a power search")))
}

/// Generator names for word output: fixture names lose their prefix.
fn gen_names(operand: &str) -> Vec<String> {
    let parts = split_list(operand);
    if parts.iter().all(|p| fixture(p).is_some()) {
        parts.iter().map(|p| p.rsplit('.').next().unwrap_or(p).to_string()).collect()
    } else {
        default_names(parts.len())
    }
}

pub fn run(cli: &Cli, inputs: &mut Inputs) -> InputResult<Outcome> {
    match &cli.command {
        Command::Map(c) => map_cmd(c, inputs),
        Command::Sets(c) => sets_cmd(c, inputs),
        Command::Pingpong(c) => pingpong_cmd(cli, c, inputs),
        Command::Order(c) => order_cmd(cli, c, inputs),
        Command::Amalgam(c) => amalgam_cmd(c, inputs),
        Command::Thompson(c) => thompson_cmd(cli, c, inputs),
        Command::Braid(c) => braid_cmd(cli, c, inputs),
    }
}

fn map_cmd(cmd: &MapCmd, inputs: &mut Inputs) -> InputResult<Outcome> {
    match cmd {
        MapCmd::Eval { map, x } => {
            let f = inputs.map("--map", map)?;
            let xs = inputs.rationals("--x", x)?;
            let values: Vec<Value> = xs
                .iter()
                .map(|x| {
                    let y = match &f {
                        AnyMap::Line(m) => m.eval(x),
                        AnyMap::Periodic(m) => m.eval(x),
                    };
                    json!({"x": q(x), "y": q(&y)})
                })
                .collect();
            Ok(Outcome::ok(json!({ "values": values })))
        }
        MapCmd::Compose { maps } => {
            let fs = maps
                .iter()
                .enumerate()
                .map(|(i, m)| inputs.map(&format!("--map[{i}]"), m))
                .collect::<InputResult<Vec<_>>>()?;
            let composite: AnyMap = match family("--map", fs)? {
                Family::Line(v) => v.iter().fold(PLMap::identity(), |acc, f| acc.compose(f)).into(),
                Family::Periodic(v) => v.iter().fold(PeriodicMap::identity(), |acc, f| acc.compose(f)).into(),
            };
            Ok(Outcome::ok(json!({ "map": map_to_value(&composite), "display": composite.to_string() })))
        }
        MapCmd::Inverse { map } => {
            let inv: AnyMap = match inputs.map("--map", map)? {
                AnyMap::Line(f) => f.inverse().into(),
                AnyMap::Periodic(f) => f.inverse().into(),
            };
            Ok(Outcome::ok(json!({ "map": map_to_value(&inv), "display": inv.to_string() })))
        }
        MapCmd::Fix { map, within } => {
            let f = inputs.map("--map", map)?;
            let window = match within {
                Some(w) => {
                    let ends = inputs.rationals("--within", w)?;
                    match ends.as_slice() {
                        [lo, hi] if lo <= hi => Some((lo.clone(), hi.clone())),
                        _ => return Err(InputError("--within: expected lo,hi with lo <= hi".into())),
                    }
                }
                None => None,
            };
            let set = match (&f, window) {
                (AnyMap::Line(m), None) => m.fixed_set(),
                (AnyMap::Periodic(m), None) => m.fixed_set_within(&rational::int(0), &rational::int(1)),
                (AnyMap::Line(m), Some((lo, hi))) => m.fixed_set_within(&lo, &hi),
                (AnyMap::Periodic(m), Some((lo, hi))) => m.fixed_set_within(&lo, &hi),
            };
            Ok(Outcome::ok(json!({
                "fixed_set": set_to_value(&set),
                "moved": open_list_to_value(&set.complement_open()),
            })))
        }
        MapCmd::Reverse { map } => {
            let f = inputs.line_map("--map", map)?;
            let r = f.reverse();
            Ok(Outcome::ok(json!({ "map": lit(&r), "display": r.to_string() })))
        }
    }
}

fn sets_cmd(cmd: &SetsCmd, inputs: &mut Inputs) -> InputResult<Outcome> {
    match cmd {
        SetsCmd::Intersect { sets } => {
            let parsed = sets
                .iter()
                .enumerate()
                .map(|(i, s)| inputs.set(&format!("--set[{i}]"), s))
                .collect::<InputResult<Vec<_>>>()?;
            let meet = parsed.iter().skip(1).fold(parsed[0].clone(), |acc, s| acc.intersect(s));
            Ok(Outcome::ok(json!({ "set": set_to_value(&meet), "empty": meet.is_empty() })))
        }
        SetsCmd::Complement { set } => {
            let s = inputs.set("--set", set)?;
            Ok(Outcome::ok(json!({ "open": open_list_to_value(&s.complement_open()) })))
        }
        SetsCmd::Groupfix { gens } => {
            let g = inputs.line_maps("--gens", gens)?;
            let fix = group_fixed_set(&g);
            Ok(Outcome::ok(json!({ "fixed_set": set_to_value(&fix), "generators": g.len() })))
        }
        SetsCmd::Plt { gens } => {
            let g = inputs.line_maps("--gens", gens)?;
            let plt = is_plt(&g)?;
            let orbits = orbit_intervals(&g)?;
            Ok(Outcome::ok(json!({ "plt": plt, "orbit_intervals": open_list_to_value(&orbits) })))
        }
    }
}

fn semigroup_parts<M: Clone + Into<AnyMap>>(w: &SemigroupWitness<M>) -> (Value, Value) {
    let result = json!({
        "m": w.m,
        "n": w.n,
        "x": q(&w.x),
        "a": q(&w.a),
        "b": q(&w.b),
        "alpha_inverted": w.alpha_inverted,
        "beta_inverted": w.beta_inverted,
    });
    let cert = json!({
        "gamma": lit(&w.gamma),
        "delta": lit(&w.delta),
        "inclusions": w.inclusions.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        "check_depth": w.check_depth,
        "words_checked": w.words_checked,
    });
    (result, cert)
}

fn group_parts<M: Clone + Into<AnyMap>>(w: &GroupWitness<M>) -> (Value, Value) {
    let result = json!({
        "p": w.p,
        "q": w.q,
        "base_point": q(&w.base_point),
        "normalizer": w.normalizer.to_string(),
        "z_inverted": w.z_inverted,
    });
    let cert = json!({
        "chain": w.chain.iter().map(|(lo, hi)| json!([q(lo), q(hi)])).collect::<Vec<_>>(),
        "markers": w.markers.iter().map(q).collect::<Vec<_>>(),
        "normalized_markers": w.normalized_markers().iter().map(q).collect::<Vec<_>>(),
        "p_set": open_list_to_value(&w.p_set),
        "q_set": open_list_to_value(&w.q_set),
        "alpha_power": lit(&w.alpha_power),
        "beta_power": lit(&w.beta_power),
        "inclusions": w.inclusions.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        "check_depth": w.check_depth,
        "words_checked": w.words_checked,
    });
    (result, cert)
}

fn classification_outcome<M: Clone + Into<AnyMap>>(c: Classification<M>) -> Outcome {
    let tag = c.tag();
    match c {
        Classification::CommonFixedPoint(set) => {
            Outcome::ok(json!({ "classification": tag, "fixed_set": set_to_value(&set) }))
        }
        Classification::FreeSemigroup { witness, pair } => {
            let (mut result, cert) = semigroup_parts(&witness);
            result["classification"] = json!(tag);
            result["pair"] = json!([pair.0, pair.1]);
            Outcome::ok(result).with_certificate(cert)
        }
        Classification::FreeGroup { witness, pair } => {
            let (mut result, cert) = group_parts(&witness);
            result["classification"] = json!(tag);
            result["pair"] = json!([pair.0, pair.1]);
            Outcome::ok(result).with_certificate(cert)
        }
        Classification::Inconclusive(why) => {
            Outcome::ok(json!({ "classification": tag, "reason": why })).checked(false)
        }
    }
}

fn pingpong_cmd(cli: &Cli, cmd: &PingpongCmd, inputs: &mut Inputs) -> InputResult<Outcome> {
    let bound = search_bound(cli)?;
    inputs.param("--budget", bound);
    match cmd {
        PingpongCmd::Semigroup { alpha, beta, a, b } => {
            let depth = cli.global.depth.unwrap_or(DEFAULT_SEMIGROUP_DEPTH);
            inputs.param("--depth", depth);
            let maps = vec![inputs.map("--alpha", alpha)?, inputs.map("--beta", beta)?];
            let (a, b) = (inputs.rational("--a", a)?, inputs.rational("--b", b)?);
            let parts = match family("--alpha/--beta", maps)? {
                Family::Line(m) => lib(free_semigroup_witness(&m[0], &m[1], &a, &b, depth, bound))?.map(|w| semigroup_parts(&w)),
                Family::Periodic(m) => {
                    lib(free_semigroup_witness(&m[0], &m[1], &a, &b, depth, bound))?.map(|w| semigroup_parts(&w))
                }
            };
            Ok(match parts {
                LibOutcome::Done((r, c)) => Outcome::ok(r).with_certificate(c),
                LibOutcome::Failed(msg) => failed(msg),
            })
        }
        PingpongCmd::Classify { gens } => {
            let depth = cli.global.depth.unwrap_or(DEFAULT_SEMIGROUP_DEPTH);
            inputs.param("--depth", depth);
            let g = inputs.line_maps("--gens", gens)?;
            Ok(match lib(ns_classify(&g, depth, bound))? {
                LibOutcome::Done(c) => classification_outcome(c),
                LibOutcome::Failed(msg) => failed(msg),
            })
        }
        PingpongCmd::Freegroup { alpha, beta, z } => {
            let depth = cli.global.depth.unwrap_or(DEFAULT_GROUP_DEPTH);
            inputs.param("--depth", depth);
            let maps = vec![inputs.map("--alpha", alpha)?, inputs.map("--beta", beta)?, inputs.map("--z", z)?];
            let parts = match family("--alpha/--beta/--z", maps)? {
                Family::Line(m) => lib(free_group_witness(&m[0], &m[1], &m[2], depth, bound))?.map(|w| group_parts(&w)),
                Family::Periodic(m) => lib(free_group_witness(&m[0], &m[1], &m[2], depth, bound))?.map(|w| group_parts(&w)),
            };
            Ok(match parts {
                LibOutcome::Done((r, c)) => Outcome::ok(r).with_certificate(c),
                LibOutcome::Failed(msg) => failed(msg),
            })
        }
        PingpongCmd::Fixcheck { gens, z } => {
            let depth = cli.global.depth.unwrap_or(DEFAULT_GROUP_DEPTH);
            inputs.param("--depth", depth);
            let mut maps = inputs.maps("--gens", gens)?;
            maps.push(inputs.map("--z", z)?);
            Ok(match family("--gens/--z", maps)? {
                Family::Line(mut m) => {
                    let z = m.pop().expect("z was pushed");
                    match lib(commuting_family_fixcheck(&m, &z, depth, bound))? {
                        LibOutcome::Done(c) => classification_outcome(c),
                        LibOutcome::Failed(msg) => failed(msg),
                    }
                }
                Family::Periodic(mut m) => {
                    let z = m.pop().expect("z was pushed");
                    match lib(commuting_family_fixcheck(&m, &z, depth, bound))? {
                        LibOutcome::Done(c) => classification_outcome(c),
                        LibOutcome::Failed(msg) => failed(msg),
                    }
                }
            })
        }
    }
}

impl<T> LibOutcome<T> {
    fn map<U>(self, f: impl FnOnce(T) -> U) -> LibOutcome<U> {
        match self {
            LibOutcome::Done(t) => LibOutcome::Done(f(t)),
            LibOutcome::Failed(m) => LibOutcome::Failed(m),
        }
    }
}

fn violations_value(vs: &[Violation], names: &[String]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| {
                json!({
                    "axiom": v.axiom.to_string(),
                    "words": v.words.iter().map(|w| w.display(names).to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn order_cmd(cli: &Cli, cmd: &OrderCmd, inputs: &mut Inputs) -> InputResult<Outcome> {
    match cmd {
        OrderCmd::Compare { f, g, priority } => {
            let f = inputs.line_map("--f", f)?;
            let g = inputs.line_map("--g", g)?;
            let oracle = match priority {
                Some(p) => OrderOracle::with_priority(inputs.rationals("--priority", p)?),
                None => OrderOracle::germ(),
            };
            let o = if oracle.priority_points.is_empty() {
                germ_compare(&f, &g)
            } else {
                priority_compare(&oracle, &f, &g)
            };
            Ok(Outcome::ok(json!({ "order": oracle.describe(), "comparison": ordering_name(o) })))
        }
        OrderCmd::Harness { gens, length, samples, order, priority } => {
            let g = inputs.line_maps("--gens", gens)?;
            inputs.param("--length", length);
            inputs.param("--samples", samples);
            inputs.param("--seed", cli.global.seed);
            let points = match priority {
                Some(p) => inputs.rationals("--priority", p)?,
                None => Vec::new(),
            };
            let ord: Box<dyn MapOrder> = match order {
                OrderKind::Germ => Box::new(OrderOracle::germ()),
                OrderKind::Priority => Box::new(OrderOracle::with_priority(points)),
                OrderKind::Value => match points.first() {
                    Some(p) => Box::new(PointValueOrder { point: p.clone() }),
                    None => return Err(InputError("--order value needs --priority <point>".into())),
                },
            };
            let rep = order_axiom_harness(&g, ord.as_ref(), *length, *samples, cli.global.seed);
            let names = gen_names(gens);
            Ok(Outcome::ok(json!({
                "order": rep.order,
                "elements": rep.elements,
                "violations": rep.violations.len(),
            }))
            .with_certificate(json!({
                "comparisons": rep.comparisons,
                "pair_checks": rep.pair_checks,
                "transitivity_checks": rep.transitivity_checks,
                "invariance_checks": rep.invariance_checks,
                "seed": cli.global.seed,
                "violations": violations_value(&rep.violations, &names),
            }))
            .checked(rep.passed()))
        }
        OrderCmd::Convex { gens, priority, length } => {
            let g = inputs.line_maps("--gens", gens)?;
            let points = inputs.rationals("--priority", priority)?;
            inputs.param("--length", length);
            let rep = convex_stabilizer_check(&g, &points, *length);
            let names = gen_names(gens);
            Ok(Outcome::ok(json!({
                "elements": rep.elements,
                "stabilizer_size": rep.stabilizer_size,
                "violations": rep.violations.len(),
            }))
            .with_certificate(json!({
                "triples_checked": rep.triples_checked,
                "violations": violations_value(&rep.violations, &names),
            }))
            .checked(rep.passed()))
        }
    }
}

fn default_probes() -> Vec<Rational> {
    (-8..=8).map(|i| rational::frac(i, 4)).collect()
}

fn glued(inputs: &mut Inputs, data: &str) -> InputResult<GluedAction> {
    let (text, loc) = inputs.text("--data", data)?;
    Ok(glued_action_from_json(&text, &loc)?)
}

fn amalgam_word(inputs: &mut Inputs, theta: &GluedAction, word: &str) -> InputResult<AmalgamWord> {
    let (text, loc) = inputs.text("--word", word)?;
    AmalgamWord::parse(text.trim(), &theta.g_names).map_err(|e| InputError(format!("{loc}: {e}")))
}

fn amalgam_cmd(cmd: &AmalgamCmd, inputs: &mut Inputs) -> InputResult<Outcome> {
    match cmd {
        AmalgamCmd::Intertwine { h, c, t0, u0, x } => {
            let h = inputs.line_map("--h", h)?;
            let c = inputs.line_map("--c", c)?;
            let (t0, u0) = (inputs.rational("--t0", t0)?, inputs.rational("--u0", u0)?);
            let probes = match x {
                Some(x) => inputs.rationals("--x", x)?,
                None => default_probes(),
            };
            let phi = intertwiner(&h, &c, t0, u0)?;
            let inv = phi.inverse();
            let bad: Vec<Value> = probes
                .iter()
                .filter(|x| phi.eval(&h.eval(x)) != c.eval(&phi.eval(x)) || inv.eval(&phi.eval(x)) != **x)
                .map(q)
                .collect();
            let values: Vec<Value> = probes.iter().map(|x| json!([q(x), q(&phi.eval(x))])).collect();
            Ok(Outcome::ok(json!({
                "phi": phi.to_string(),
                "affine": phi.as_affine().map(|a| a.to_string()),
                "values": values,
            }))
            .with_certificate(json!({ "probes": probes.len(), "failures": bad }))
            .checked(bad.is_empty()))
        }
        AmalgamCmd::Glue { data } => {
            let theta = glued(inputs, data)?;
            let images: Vec<Value> = theta
                .g_names
                .iter()
                .enumerate()
                .map(|(i, name)| {
                    let m = &theta.theta_g[i];
                    json!({ "name": name, "theta": m.to_string(), "exact": m.materialize().is_some() })
                })
                .collect();
            let tk = theta.theta_k();
            // θ(c) θ(k)^-e must act trivially
            let relation = AmalgamWord(vec![Syllable::G(theta.c_word.clone()), Syllable::H(-theta.e)]);
            let probes = default_probes();
            let bad: Vec<Value> = probes.iter().filter(|x| amalgam_eval(&theta, &relation, x) != **x).map(q).collect();
            Ok(Outcome::ok(json!({
                "g": images,
                "k": { "theta": tk.to_string(), "exact": tk.materialize().is_some() },
                "c": theta.c_word.display(&theta.g_names).to_string(),
                "e": theta.e,
            }))
            .with_certificate(json!({
                "relation": relation.display(&theta.g_names).to_string(),
                "probes": probes.len(),
                "failures": bad,
            }))
            .checked(bad.is_empty()))
        }
        AmalgamCmd::Reduce { data, word } => {
            let theta = glued(inputs, data)?;
            let w = amalgam_word(inputs, &theta, word)?;
            let r = amalgam_reduce(&theta, &w);
            let probes = default_probes();
            let sound = probes.iter().all(|x| amalgam_eval(&theta, &r, x) == amalgam_eval(&theta, &w, x));
            Ok(Outcome::ok(json!({
                "reduced": r.display(&theta.g_names).to_string(),
                "length": r.len(),
                "input_length": w.len(),
            }))
            .with_certificate(json!({ "probes": probes.len(), "action_preserved": sound }))
            .checked(sound))
        }
        AmalgamCmd::Eval { data, word, x } => {
            let theta = glued(inputs, data)?;
            let w = amalgam_word(inputs, &theta, word)?;
            let xs = inputs.rationals("--x", x)?;
            let values: Vec<Value> = xs
                .iter()
                .map(|x| json!({"x": q(x), "y": q(&amalgam_eval(&theta, &w, x))}))
                .collect();
            Ok(Outcome::ok(json!({ "word": w.display(&theta.g_names).to_string(), "values": values })))
        }
    }
}

fn thompson_cmd(cli: &Cli, cmd: &ThompsonCmd, inputs: &mut Inputs) -> InputResult<Outcome> {
    match cmd {
        ThompsonCmd::Fixtures { name } => {
            let names: Vec<&str> = match name {
                Some(n) if fixture(n).is_some() => vec![n.as_str()],
                Some(n) => return Err(InputError(format!("--name: unknown fixture {n:?}"))),
                None => FIXTURE_NAMES.to_vec(),
            };
            inputs.param("--name", names.join(","));
            let listing: Vec<Value> = names
                .iter()
                .map(|n| {
                    let m = fixture(n).expect("listed fixture");
                    json!({ "name": n, "display": m.to_string(), "map": map_to_value(&m) })
                })
                .collect();
            let (x0, x1) = f_generators();
            let relations = f_relations(&x0, &x1);
            let (t, z) = ttilde_generators();
            let central = t.iter().all(|g| g.commutes_with(&z));
            let c_cubed = t[2].power(3) == z.power(2);
            let passed = relations.iter().all(|(_, ok)| *ok) && central && c_cubed;
            Ok(Outcome::ok(json!({ "fixtures": listing }))
                .with_certificate(json!({
                    "f_relations": relations.iter().map(|(r, ok)| json!({"relation": r, "holds": ok})).collect::<Vec<_>>(),
                    "ttilde_commutes_with_z": central,
                    "ttilde_c_cubed_is_z_squared": c_cubed,
                }))
                .checked(passed))
        }
        ThompsonCmd::Conjugator { a, b, gens } => {
            let depth = cli.global.depth.unwrap_or(DEFAULT_CONJUGATOR_DEPTH);
            inputs.param("--depth", depth);
            let a_gens = inputs.line_maps("--a", a)?;
            let b_gens = inputs.line_maps("--b", b)?;
            let g_gens = inputs.line_maps("--gens", gens)?;
            let names = gen_names(gens);
            Ok(match lib(lplt_conjugator(&a_gens, &b_gens, &g_gens, depth))? {
                LibOutcome::Done(c) => Outcome::ok(json!({
                    "word": c.word.display(&names).to_string(),
                    "map": lit(&c.map),
                    "support": c.support.map(|(r, s)| json!([q(&r), q(&s)])),
                }))
                .with_certificate(json!({
                    "words_tried": c.words_tried,
                    "commutators_checked": a_gens.len() * b_gens.len(),
                })),
                LibOutcome::Failed(msg) => failed(msg),
            })
        }
    }
}

fn sign_name(w: &BraidWord) -> &'static str {
    match w.sigma_sign() {
        Some(true) => "positive",
        Some(false) => "negative",
        None if w.is_empty() => "trivial",
        None => "mixed",
    }
}

fn braid_cmd(cli: &Cli, cmd: &BraidCmd, inputs: &mut Inputs) -> InputResult<Outcome> {
    let budget = budget(cli, DEFAULT_BUDGET)?;
    inputs.param("--budget", budget);
    match cmd {
        BraidCmd::Reduce { word } => {
            let w = inputs.braid("--word", word)?;
            let r = handle_reduce(&w, budget)?;
            Ok(Outcome::ok(json!({ "reduced": r.to_string(), "sign": sign_name(&r), "length": r.len() })))
        }
        BraidCmd::Compare { u, v } => {
            let u = inputs.braid("--u", u)?;
            let v = inputs.braid("--v", v)?;
            let o = braid_compare(&u, &v, budget)?;
            let d = handle_reduce(&u.inverse().concat(&v)?, budget)?;
            Ok(Outcome::ok(json!({ "comparison": ordering_name(o) }))
                .with_certificate(json!({ "quotient_reduced": d.to_string(), "quotient_sign": sign_name(&d) })))
        }
        BraidCmd::Trivial { word } => {
            let w = inputs.braid("--word", word)?;
            Ok(Outcome::ok(json!({ "trivial": is_trivial(&w, budget)? })))
        }
        BraidCmd::Center { strands, power } => {
            inputs.param("--strands", strands);
            inputs.param("--power", power);
            let z = center_generator(*strands)?;
            let n = *strands as i64;
            let sum = exponent_sum(&z);
            let commutes = commutes_with_generators(&z, *power, budget)?;
            Ok(Outcome::ok(json!({ "word": z.to_string(), "exponent_sum": sum, "commutes": commutes }))
                .with_certificate(json!({ "expected_exponent_sum": n * (n - 1) }))
                .checked(commutes && sum == n * (n - 1)))
        }
        BraidCmd::Expsum { word } => {
            let w = inputs.braid("--word", word)?;
            let p = permutation_projection(&w);
            Ok(Outcome::ok(json!({
                "exponent_sum": exponent_sum(&w),
                "permutation": p,
                "pure": is_identity_permutation(&p),
            })))
        }
    }
}
