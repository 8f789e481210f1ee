//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any failed.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ordalab::amalgam::{amalgam_reduce, glued_action, intertwiner, AmalgamWord};
use ordalab::braid::{
    braid_compare, center_generator, commutes_with_generators, exponent_sum, handle_reduce, is_trivial,
    permutation_projection, BraidWord, DEFAULT_BUDGET,
};
use ordalab::intervals::{group_fixed_set, is_plt};
use ordalab::ordering::{convex_stabilizer_check, order_axiom_harness, OrderOracle};
use ordalab::periodic::PeriodicMap;
use ordalab::pingpong::{
    commuting_family_fixcheck, free_group_witness, free_semigroup_witness, ns_classify, verify_distinct_words,
    Classification, WordMode,
};
use ordalab::rational::{frac, int};
use ordalab::thompson::{f_generators, f_relations, lplt_conjugator, periodic_pair};
use ordalab::{Affine, LineMap, OpenIntervalList, PLMap, Rational, Word};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

/// All values of positive words of length 1..=depth at `x`, by recursion.
fn positive_word_values(gens: &[PLMap], x: &Rational, depth: usize, out: &mut Vec<Rational>) {
    if depth == 0 {
        return;
    }
    for g in gens {
        let y = g.eval(x);
        out.push(y.clone());
        positive_word_values(gens, &y, depth - 1, out);
    }
}

fn semigroup_witness() -> Outcome {
    let alpha = PLMap::affine(frac(1, 2), int(0)).unwrap();
    let beta = PLMap::affine(frac(1, 2), frac(1, 2)).unwrap();
    let start = Instant::now();
    let w = free_semigroup_witness(&alpha, &beta, &int(0), &int(1), 12, 64).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    check((w.m, w.n) == (2, 2), format!("(m, n) = ({}, {})", w.m, w.n))?;
    check(w.x == frac(1, 2), format!("x = {}", w.x))?;

    let mut values = Vec::new();
    positive_word_values(&[alpha.power(2), beta.power(2)], &w.x, 12, &mut values);
    let distinct: HashSet<&Rational> = values.iter().collect();
    check(values.len() == (1 << 13) - 2, format!("{} words enumerated", values.len()))?;
    check(distinct.len() == values.len(), "two positive words agree at 1/2")?;
    check(w.words_checked == values.len(), "witness word count differs")?;

    // (a, b] -> (a, x) under alpha^m, [a, b) -> (x, b) under beta^n
    let (a, b, x) = (int(0), int(1), w.x.clone());
    let alpha_ok = |m: i64| alpha.power(m).eval(&b) < x && alpha.power(m).eval(&a) == a;
    let beta_ok = |n: i64| beta.power(n).eval(&a) > x && beta.power(n).eval(&b) == b;
    check(alpha_ok(2) && beta_ok(2), "inclusions fail at (m, n)")?;
    check(!alpha_ok(1), "(m-1, n) still satisfies the alpha inclusion")?;
    check(!beta_ok(1), "(m, n-1) still satisfies the beta inclusion")?;
    Ok(format!(
        "m=2 n=2 x=1/2, {} positive words distinct, minimal, {elapsed:.2?}",
        values.len()
    ))
}

fn classifier() -> Outcome {
    let f = PLMap::unit_interval(vec![(int(0), int(0)), (frac(1, 2), frac(1, 4)), (int(1), int(1))]).unwrap();
    match ns_classify(std::slice::from_ref(&f), 10, 64).map_err(|e| e.to_string())? {
        Classification::CommonFixedPoint(s) => check(s == f.fixed_set(), format!("fixed set {s}"))?,
        other => return Err(format!("single generator classified as {}", other.tag())),
    }
    let alpha = PLMap::new(vec![(int(0), int(0))], Affine::identity(), Affine::new(frac(1, 2), int(0)).unwrap()).unwrap();
    let beta = PLMap::new(vec![(int(1), int(1))], Affine::new(frac(1, 2), frac(1, 2)).unwrap(), Affine::identity()).unwrap();
    check(alpha.fixed_set().to_string() == "(-inf, 0]", "alpha fixed set")?;
    check(beta.fixed_set().to_string() == "[1, inf)", "beta fixed set")?;
    match ns_classify(&[alpha, beta], 10, 64).map_err(|e| e.to_string())? {
        Classification::FreeSemigroup { witness, .. } => {
            check((witness.a.clone(), witness.b.clone()) == (int(0), int(1)), "overlap is not (0, 1)")?;
            let c = verify_distinct_words(
                &[witness.gamma.clone(), witness.delta.clone()],
                WordMode::Semigroup,
                10,
                &witness.x,
            );
            check(c.passed, format!("distinctness fails: {:?}", c.counterexample))?;
            Ok(format!(
                "single map -> common fixed point; ray pair -> free semigroup (m={}, n={}), {} words distinct",
                witness.m, witness.n, c.words_checked
            ))
        }
        other => Err(format!("ray pair classified as {}", other.tag())),
    }
}

fn periodic_extension(set: &OpenIntervalList, z: &PeriodicMap, reach: i64) -> OpenIntervalList {
    (-reach..=reach).fold(OpenIntervalList::empty(), |acc, r| {
        let zr = z.power(r);
        acc.union(&set.image(|x| zr.eval(x)))
    })
}

fn free_group() -> Outcome {
    let (alpha, beta) = periodic_pair();
    let z = PeriodicMap::translation(int(1));
    let start = Instant::now();
    let w = free_group_witness(&alpha, &beta, &z, 6, 64).map_err(|e| e.to_string())?;

    let p_ext = periodic_extension(&w.p_set, &z, 4);
    let q_ext = periodic_extension(&w.q_set, &z, 4);
    check(p_ext.intersect(&q_ext).is_empty(), "P and Q intersect")?;
    let mut inclusions = 0;
    for (map, from, to) in [(&w.alpha_power, &w.p_set, &q_ext), (&w.beta_power, &w.q_set, &p_ext)] {
        for r in [-3, -2, -1, 1, 2, 3] {
            let f = map.power(r);
            for (lo, hi) in from.intervals() {
                let image = (lo.map(|x| f.eval(x)), hi.map(|x| f.eval(x)));
                check(to.contains_interval(&image.0, &image.1), format!("image ({}, {}) escapes", image.0, image.1))?;
                inclusions += 1;
            }
        }
    }
    let words = verify_distinct_words(&[w.alpha_power.clone(), w.beta_power.clone()], WordMode::Group, 6, &int(0));
    check(words.passed, format!("identity word {:?}", words.counterexample))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;

    let fam = commuting_family_fixcheck(&[alpha, beta], &z, 3, 64).map_err(|e| e.to_string())?;
    check(fam.tag() == "free-group", format!("family classified as {}", fam.tag()))?;
    let markers: Vec<String> = w.markers.iter().map(|m| m.to_string()).collect();
    Ok(format!(
        "p={} q={} markers [{}], P∩Q=∅, {inclusions} inclusions, {} reduced words nontrivial, {elapsed:.2?}",
        w.p,
        w.q,
        markers.join(", "),
        words.words_checked
    ))
}

fn order_axioms() -> Outcome {
    let (x0, x1) = f_generators();
    let r = order_axiom_harness(&[x0, x1], &OrderOracle::germ(), 4, 10_000, 20_240_601);
    check(r.passed(), format!("{} violations, first {:?}", r.violations.len(), r.violations.first()))?;
    Ok(format!(
        "{} elements, {} pairs, {} transitivity and {} left-invariance samples, 0 violations",
        r.elements, r.pair_checks, r.transitivity_checks, r.invariance_checks
    ))
}

fn convex_stabilizer() -> Outcome {
    let (x0, x1) = f_generators();
    let r = convex_stabilizer_check(&[x0, x1], &[frac(1, 2)], 4);
    check(r.passed(), format!("{} violations", r.violations.len()))?;
    check(r.stabilizer_size > 1, "stabilizer of 1/2 is trivial on the ball")?;
    Ok(format!(
        "{} elements, stabilizer {}, {} triples, 0 violations",
        r.elements, r.stabilizer_size, r.triples_checked
    ))
}

fn commuting_conjugates() -> Outcome {
    let (x0, x1) = f_generators();
    let pts = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| frac(n, d)).collect::<Vec<_>>();
    let bump = |mid: (i64, i64), val: (i64, i64)| {
        let xs = pts(&[(0, 1), (1, 4), mid, (1, 2), (1, 1)]);
        let ys = pts(&[(0, 1), (1, 4), val, (1, 2), (1, 1)]);
        PLMap::unit_interval(xs.into_iter().zip(ys).collect()).unwrap()
    };
    let a = bump((3, 8), (5, 16));
    let b = bump((3, 8), (7, 16));
    check(a.compose(&b) != b.compose(&a), "A and B already commute")?;
    let c = lplt_conjugator(std::slice::from_ref(&a), std::slice::from_ref(&b), &[x0.clone(), x1.clone()], 4).map_err(|e| e.to_string())?;
    let names = vec!["x0".to_string(), "x1".to_string()];
    check(c.word.len() <= 2, format!("conjugator {} longer than x0^-2", c.word.display(&names)))?;
    check(c.map.eval(&frac(1, 4)) > frac(1, 2), "g(1/4) <= 1/2")?;
    let a_g = a.conjugate_by(&c.map);
    check(a_g.compose(&b) == b.compose(&a_g), "conjugated commutator is not the identity")?;
    for (name, holds) in f_relations(&x0, &x1) {
        check(holds, format!("relation {name} fails"))?;
    }
    check(is_plt(&[x0, x1]).map_err(|e| e.to_string())?, "F has an interior global fixed point")?;
    Ok(format!(
        "g = {}, commutator trivial, both F relations hold, F acts without interior global fixed point",
        c.word.display(&names)
    ))
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    let d = rng.gen_range(1..=12);
    frac(rng.gen_range(-span * d..=span * d), d)
}

fn trefoil() -> Outcome {
    let d = PLMap::translation(frac(1, 2));
    let k = PLMap::translation(int(1));
    let names = vec!["d".to_string()];
    let theta = glued_action(&[d], &names, &Word::power(0, 2), &k, 3, int(0), int(0)).map_err(|e| e.to_string())?;
    let td = theta.theta_g[0].materialize().ok_or("theta(d) has no finite form")?;
    let tk = theta.theta_k().materialize().ok_or("theta(k) has no finite form")?;
    check(td == PLMap::translation(frac(3, 2)), format!("theta(d) = {td}"))?;
    check(tk == PLMap::translation(int(1)), format!("theta(k) = {tk}"))?;
    check(td.power(2) == tk.power(3), "theta(d)^2 != theta(k)^3")?;

    let rel = AmalgamWord::parse("g:d^2 h:-3", &names).map_err(|e| e.to_string())?;
    check(amalgam_reduce(&theta, &rel).is_empty(), "d^2 k^-3 does not reduce to the empty word")?;
    let comm = AmalgamWord::parse("g:d h:1 g:d^-1 h:-1", &names).map_err(|e| e.to_string())?;
    let reduced = amalgam_reduce(&theta, &comm);
    check(reduced.len() == 4, format!("commutator reduced to {}", reduced.display(&names)))?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = k.power(3);
    let c = theta.c.clone();
    let bent = PLMap::new(
        vec![(int(0), int(1)), (frac(1, 3), frac(3, 2)), (int(1), int(2))],
        Affine::translation(int(1)),
        Affine::translation(int(1)),
    )
    .unwrap();
    let phis = [
        (h.clone(), c.clone(), intertwiner(&h, &c, int(0), int(0)).map_err(|e| e.to_string())?),
        (bent.clone(), c.clone(), intertwiner(&bent, &c, frac(1, 5), int(-2)).map_err(|e| e.to_string())?),
    ];
    for (h, c, phi) in &phis {
        for _ in 0..1000 {
            let x = random_rational(&mut rng, 40);
            check(phi.eval(&h.eval(&x)) == c.eval(&phi.eval(&x)), format!("intertwining fails at {x}"))?;
        }
    }
    Ok("theta(d)=x+3/2 theta(k)=x+1, d^2 k^-3 -> 1, [d,k] irreducible of length 4, 2000 intertwining samples".into())
}

fn random_braid(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

fn braids() -> Outcome {
    let start = Instant::now();
    let e = |r: ordalab::Result<bool>| r.map_err(|e| e.to_string());
    let b = DEFAULT_BUDGET;
    check(e(is_trivial(&BraidWord::parse("n=3 1 2 1 -2 -1 -2").unwrap(), b))?, "braid relation")?;
    check(e(is_trivial(&BraidWord::parse("n=4 1 3 -1 -3").unwrap(), b))?, "far commutation")?;
    for n in 3..=6usize {
        let z = center_generator(n).unwrap();
        check(exponent_sum(&z) == (n * (n - 1)) as i64, format!("exponent sum of center generator {n}"))?;
        for k in [-3i64, -2, -1, 1, 2, 3] {
            check(exponent_sum(&z.power(k)) == k * (n * (n - 1)) as i64, "central power exponent sum")?;
        }
    }
    for n in [3, 4] {
        check(e(commutes_with_generators(&center_generator(n).unwrap(), 1, b))?, format!("center of B_{n}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1_000_003);
    let cmp = |u: &BraidWord, v: &BraidWord| braid_compare(u, v, b).map_err(|e| e.to_string());
    for _ in 0..500 {
        let n = rng.gen_range(2..=4);
        let (u, v, w) = (random_braid(&mut rng, n, 10), random_braid(&mut rng, n, 10), random_braid(&mut rng, n, 10));
        let uv = cmp(&u, &v)?;
        check(cmp(&v, &u)? == uv.reverse(), format!("antisymmetry fails on {u} / {v}"))?;
        check((uv == Ordering::Equal) == e(is_trivial(&u.inverse().concat(&v).unwrap(), b))?, "totality")?;
        let (vw, uw) = (cmp(&v, &w)?, cmp(&u, &w)?);
        if uv != Ordering::Greater && vw == uv {
            check(uw == uv, format!("transitivity fails on {u} / {v} / {w}"))?;
        }
        check(
            cmp(&w.concat(&u).unwrap(), &w.concat(&v).unwrap())? == uv,
            format!("left invariance fails on {w} * ({u} / {v})"),
        )?;
    }
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=5);
        let w = random_braid(&mut rng, n, 30);
        let r = handle_reduce(&w, b).map_err(|e| e.to_string())?;
        check(exponent_sum(&r) == exponent_sum(&w), format!("exponent sum changed on {w}"))?;
        check(permutation_projection(&r) == permutation_projection(&w), format!("permutation changed on {w}"))?;
        check(r.is_empty() || r.sigma_sign().is_some(), format!("{w} reduced to a word with no sign"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "relations trivial, center exponent sums n(n-1), central for n=3,4, 500 order triples, 10000 reductions, {elapsed:.2?}"
    ))
}

fn random_plmap(rng: &mut ChaCha8Rng) -> PLMap {
    let n = rng.gen_range(0..=6);
    let mut xs: Vec<Rational> = (0..n).map(|_| random_rational(rng, 4)).collect();
    xs.sort();
    xs.dedup();
    let mut points: Vec<(Rational, Rational)> = Vec::new();
    for x in xs {
        let y = match points.last() {
            Some((_, py)) if rng.gen_bool(0.3) && x > *py => x.clone(),
            Some((px, py)) => {
                let slope = frac(rng.gen_range(1..=8), rng.gen_range(1..=4));
                py + slope * (&x - px)
            }
            None if rng.gen_bool(0.5) => x.clone(),
            None => &x + random_rational(rng, 1),
        };
        points.push((x, y));
    }
    let slope = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.3) {
            int(1)
        } else {
            frac(rng.gen_range(1..=6), rng.gen_range(1..=6))
        }
    };
    match (points.first().cloned(), points.last().cloned()) {
        (Some((x0, y0)), Some((x1, y1))) => {
            let (sl, sr) = (slope(rng), slope(rng));
            let left = Affine::new(sl.clone(), &y0 - &sl * &x0).unwrap();
            let right = Affine::new(sr.clone(), &y1 - &sr * &x1).unwrap();
            PLMap::new(points, left, right).unwrap()
        }
        _ => PLMap::affine(slope(rng), random_rational(rng, 2)).unwrap(),
    }
}

fn fixed_set_cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut nonempty = 0;
    for i in 0..100 {
        let f = random_plmap(&mut rng);
        let fix = f.fixed_set();
        if !fix.is_empty() {
            nonempty += 1;
        }
        let mut probes: Vec<Rational> = fix
            .intervals()
            .iter()
            .flat_map(|(lo, hi)| [lo.finite().cloned(), hi.finite().cloned()])
            .flatten()
            .collect();
        while probes.len() < 1000 {
            probes.push(random_rational(&mut rng, 6));
        }
        for x in &probes {
            let moved = !(f.eval(x) - x).is_zero();
            check(fix.contains(x) != moved, format!("map {i} ({f}) disagrees at {x}"))?;
        }
        check(group_fixed_set(std::slice::from_ref(&f)) == fix, "group fixed set of one map")?;
    }
    Ok(format!("100 maps ({nonempty} with fixed points), 1000 probes each, membership matches displacement"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("free semigroup witness", semigroup_witness),
        ("semigroup classifier", classifier),
        ("free group witness", free_group),
        ("germ order axioms", order_axioms),
        ("convex stabilizer", convex_stabilizer),
        ("commuting conjugates in F", commuting_conjugates),
        ("trefoil glued action", trefoil),
        ("braid suite", braids),
        ("fixed set cross-check", fixed_set_cross_check),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {}  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
