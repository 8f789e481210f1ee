use std::cmp::Ordering;

use num_traits::Zero;
use proptest::prelude::*;

use ordalab::amalgam::{amalgam_eval, amalgam_reduce, glued_action, intertwiner, AmalgamWord, Syllable};
use ordalab::braid::{
    braid_compare, center_generator, exponent_sum, handle_reduce, is_identity_permutation, is_trivial,
    permutation_projection, BraidWord, DEFAULT_BUDGET,
};
use ordalab::intervals::{group_fixed_set, orbit_intervals};
use ordalab::ordering::{distinct_elements, germ_compare, priority_compare, OrderOracle};
use ordalab::periodic::PeriodicMap;
use ordalab::pingpong::{free_semigroup_witness, ns_classify, verify_distinct_words, Classification, WordMode};
use ordalab::rational::{frac, int};
use ordalab::thompson::f_generators;
use ordalab::{Affine, ClosedSet, Endpoint, LineMap, PLMap, Rational, Word};

fn rational() -> impl Strategy<Value = Rational> {
    (-64i64..64, 1i64..9).prop_map(|(n, d)| frac(n, d))
}

fn slope() -> impl Strategy<Value = Rational> {
    (1i64..9, 1i64..5).prop_map(|(n, d)| frac(n, d))
}

/// Random PL map: up to five breakpoints with x in [-5, 5], positive slopes.
fn plmap() -> impl Strategy<Value = PLMap> {
    (
        prop::collection::btree_set(-40i64..40, 0..6),
        prop::collection::vec(slope(), 6),
        -16i64..16,
        slope(),
        slope(),
    )
        .prop_map(|(xs, slopes, shift, sl, sr)| {
            let xs: Vec<Rational> = xs.into_iter().map(|n| frac(n, 8)).collect();
            if xs.is_empty() {
                return PLMap::affine(sl, frac(shift, 8)).unwrap();
            }
            let mut points = vec![(xs[0].clone(), &xs[0] + frac(shift, 8))];
            for (i, x) in xs.iter().enumerate().skip(1) {
                let (px, py) = points.last().unwrap().clone();
                points.push((x.clone(), py + &slopes[i] * (x - px)));
            }
            let (x0, y0) = points[0].clone();
            let (x1, y1) = points.last().unwrap().clone();
            let left = Affine::new(sl.clone(), y0 - &sl * x0).unwrap();
            let right = Affine::new(sr.clone(), y1 - &sr * x1).unwrap();
            PLMap::new(points, left, right).unwrap()
        })
}

/// Random map of [0,1] with dyadic breakpoints.
fn unit_map() -> impl Strategy<Value = PLMap> {
    (0usize..5)
        .prop_flat_map(|k| {
            let grid: Vec<i64> = (1..16).collect();
            (
                prop::sample::subsequence(grid.clone(), k),
                prop::sample::subsequence(grid, k),
            )
        })
        .prop_map(|(xs, ys)| {
            let mut points = vec![(int(0), int(0))];
            points.extend(xs.into_iter().zip(ys).map(|(x, y)| (frac(x, 16), frac(y, 16))));
            points.push((int(1), int(1)));
            PLMap::unit_interval(points).unwrap()
        })
}

fn closed_set() -> impl Strategy<Value = ClosedSet> {
    prop::collection::vec((prop::option::of(-20i64..20), prop::option::of(0i64..10)), 0..4).prop_map(|raw| {
        let spans = raw
            .into_iter()
            .map(|(lo, len)| {
                let lo = lo.map_or(Endpoint::NegInf, |n| Endpoint::Finite(frac(n, 4)));
                let hi = match (&lo, len) {
                    (_, None) => Endpoint::PosInf,
                    (Endpoint::Finite(l), Some(k)) => Endpoint::Finite(l + frac(k, 4)),
                    (_, Some(k)) => Endpoint::Finite(frac(k, 4)),
                };
                (lo, hi)
            })
            .collect();
        ClosedSet::new(spans).unwrap()
    })
}

fn braid_word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len).prop_map(move |ls| {
            BraidWord::new(n, ls.into_iter().map(|(i, pos)| if pos { i } else { -i }).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_associative(f in plmap(), g in plmap(), h in plmap()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn composition_agrees_with_evaluation(f in plmap(), g in plmap(), x in rational()) {
        prop_assert_eq!(f.compose(&g).eval(&x), f.eval(&g.eval(&x)));
    }

    #[test]
    fn inverse_is_two_sided(f in plmap(), x in rational()) {
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert!(f.inverse().compose(&f).is_identity());
        prop_assert_eq!(f.eval_inverse(&f.eval(&x)), x);
    }

    #[test]
    fn powers_add(f in plmap(), a in -3i64..4, b in -3i64..4) {
        prop_assert_eq!(f.power(a + b), f.power(a).compose(&f.power(b)));
    }

    #[test]
    fn maps_are_increasing(f in plmap(), x in rational(), y in rational()) {
        prop_assert_eq!(f.eval(&x).cmp(&f.eval(&y)), x.cmp(&y));
    }

    #[test]
    fn conjugation_moves_fixed_sets(f in plmap(), g in plmap()) {
        let moved = f.fixed_set().image(|x| g.eval(x));
        prop_assert_eq!(f.conjugate_by(&g).fixed_set(), moved);
    }

    #[test]
    fn reverse_is_an_involutive_homomorphism(f in plmap(), g in plmap(), x in rational()) {
        prop_assert_eq!(f.compose(&g).reverse(), f.reverse().compose(&g.reverse()));
        prop_assert_eq!(f.reverse().reverse(), f.clone());
        prop_assert_eq!(f.reverse().eval(&x), -f.eval(&-x));
    }

    #[test]
    fn reverse_flips_direction(t in 1i64..20, f in plmap(), samples in prop::collection::vec(rational(), 1..50)) {
        // conjugating a translation keeps it fixed-point free and upward
        let up = PLMap::translation(frac(t, 3)).conjugate_by(&f);
        prop_assert!(up.fixed_set().is_empty());
        for x in &samples {
            prop_assert!(up.eval(x) > *x);
            prop_assert!(up.reverse().eval(x) < *x);
        }
    }

    #[test]
    fn canonical_form_is_idempotent(f in plmap()) {
        let again = PLMap::new(f.points().to_vec(), f.left_tail().clone(), f.right_tail().clone()).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn de_morgan(a in closed_set(), b in closed_set(), xs in prop::collection::vec(rational(), 50)) {
        let lhs = a.intersect(&b).complement_open();
        let rhs = a.complement_open().union(&b.complement_open());
        for x in &xs {
            prop_assert_eq!(lhs.contains(x), rhs.contains(x));
            prop_assert_eq!(lhs.contains(x), !(a.contains(x) && b.contains(x)));
            prop_assert_eq!(a.union(&b).contains(x), a.contains(x) || b.contains(x));
        }
    }

    #[test]
    fn group_fixed_set_is_common_fixed_points(gens in prop::collection::vec(plmap(), 1..4), xs in prop::collection::vec(rational(), 30)) {
        let fix = group_fixed_set(&gens);
        for x in &xs {
            prop_assert_eq!(fix.contains(x), gens.iter().all(|g| g.eval(x) == *x));
        }
    }

    #[test]
    fn orbit_intervals_are_invariant(gens in prop::collection::vec(unit_map(), 1..4)) {
        let orbits = orbit_intervals(&gens).unwrap();
        for (lo, hi) in orbits.intervals() {
            for g in &gens {
                prop_assert_eq!(lo.map(|x| g.eval(x)), lo.clone());
                prop_assert_eq!(hi.map(|x| g.eval(x)), hi.clone());
            }
        }
    }

    #[test]
    fn semigroup_witness_is_minimal_and_sound(s in 1i64..8, t in 1i64..8, invert in any::<(bool, bool)>()) {
        // alpha contracts toward 0, beta toward 1
        let alpha = PLMap::affine(frac(s, 9), int(0)).unwrap();
        let beta = PLMap::affine(frac(t, 9), int(1) - frac(t, 9)).unwrap();
        let a_in = if invert.0 { alpha.inverse() } else { alpha.clone() };
        let b_in = if invert.1 { beta.inverse() } else { beta.clone() };
        let w = free_semigroup_witness(&a_in, &b_in, &int(0), &int(1), 8, 64).unwrap();
        let (m, n) = (w.m as i64, w.n as i64);
        prop_assert!(alpha.power(m).eval(&int(1)) < w.x);
        prop_assert!(alpha.power(m - 1).eval(&int(1)) >= w.x);
        prop_assert!(beta.power(n).eval(&int(0)) > w.x);
        prop_assert!(beta.power(n - 1).eval(&int(0)) <= w.x);
        prop_assert!(verify_distinct_words(&[w.gamma.clone(), w.delta.clone()], WordMode::Semigroup, 8, &w.x).passed);
        let again = free_semigroup_witness(&alpha, &beta, &int(0), &int(1), 4, 64).unwrap();
        prop_assert_eq!((again.m, again.n), (w.m, w.n));
    }

    #[test]
    fn classifier_dichotomy(gens in prop::collection::vec(plmap(), 1..4)) {
        prop_assume!(gens.iter().all(|g| !g.fixed_set().is_empty()));
        let common = !group_fixed_set(&gens).is_empty();
        match ns_classify(&gens, 6, 64) {
            Ok(Classification::CommonFixedPoint(_)) => prop_assert!(common),
            Ok(Classification::FreeSemigroup { witness, .. }) => {
                prop_assert!(!common);
                prop_assert!(verify_distinct_words(&[witness.gamma, witness.delta], WordMode::Semigroup, 6, &witness.x).passed);
            }
            Ok(other) => prop_assert!(!common, "tag {}", other.tag()),
            // the m, n search can exhaust its bound on very slow dynamics
            Err(e) => prop_assert!(!common, "{}", e),
        }
    }

    #[test]
    fn germ_order_is_left_invariant(f in plmap(), g in plmap(), h in plmap()) {
        prop_assert_eq!(germ_compare(&f, &g), germ_compare(&h.compose(&f), &h.compose(&g)));
        prop_assert_eq!(germ_compare(&f, &g), germ_compare(&g, &f).reverse());
        prop_assert_eq!(germ_compare(&f, &g) == Ordering::Equal, f == g);
    }

    #[test]
    fn priority_order_refines_to_germ_order(f in plmap(), g in plmap(), h in plmap(), p in rational()) {
        let oracle = OrderOracle::with_priority(vec![p.clone()]);
        if f.eval(&p) == g.eval(&p) {
            prop_assert_eq!(priority_compare(&oracle, &f, &g), germ_compare(&f, &g));
        }
        prop_assert_eq!(priority_compare(&oracle, &f, &g), priority_compare(&oracle, &h.compose(&f), &h.compose(&g)));
    }

    #[test]
    fn intertwiner_conjugates(a in 1i64..12, b in 1i64..12, f in plmap(), t0 in rational(), u0 in rational(), xs in prop::collection::vec(rational(), 20)) {
        let h = PLMap::translation(frac(a, 4)).conjugate_by(&f);
        let c = PLMap::translation(frac(b, 3));
        let phi = intertwiner(&h, &c, t0, u0).unwrap();
        for x in &xs {
            prop_assert_eq!(phi.eval(&h.eval(x)), c.eval(&phi.eval(x)));
            prop_assert_eq!(phi.inverse().eval(&phi.eval(x)), x.clone());
        }
    }

    #[test]
    fn glued_action_is_a_homomorphism(
        w1 in prop::collection::vec((any::<bool>(), -3i64..4), 0..5),
        w2 in prop::collection::vec((any::<bool>(), -3i64..4), 0..5),
        x in rational(),
    ) {
        let names = vec!["d".to_string()];
        let theta = glued_action(&[PLMap::translation(frac(1, 2))], &names, &Word::power(0, 2), &PLMap::translation(int(1)), 3, int(0), int(0)).unwrap();
        let build = |raw: &[(bool, i64)]| AmalgamWord(raw.iter().map(|&(g, n)| if g { Syllable::G(Word::power(0, n)) } else { Syllable::H(n) }).collect());
        let (u, v) = (build(&w1), build(&w2));
        prop_assert_eq!(amalgam_eval(&theta, &u.concat(&v), &x), amalgam_eval(&theta, &u, &amalgam_eval(&theta, &v, &x)));
        prop_assert_eq!(amalgam_eval(&theta, &amalgam_reduce(&theta, &u), &x), amalgam_eval(&theta, &u, &x));
        let rel = AmalgamWord(vec![Syllable::G(Word::power(0, 2)), Syllable::H(-3)]);
        prop_assert_eq!(amalgam_eval(&theta, &rel, &x), x);
    }

    #[test]
    fn disjoint_supports_commute(f in unit_map(), g in unit_map()) {
        // squeeze f into [0,1/2] and g into [1/2,1]
        let right = PLMap::affine(frac(1, 2), frac(1, 2)).unwrap();
        let f = PLMap::new(f.points().iter().map(|(x, y)| (x / int(2), y / int(2))).collect(), Affine::identity(), Affine::identity()).unwrap();
        let g = PLMap::new(g.points().iter().map(|(x, y)| (right.eval(x), right.eval(y))).collect(), Affine::identity(), Affine::identity()).unwrap();
        prop_assert_eq!(f.compose(&g), g.compose(&f));
    }

    #[test]
    fn periodic_maps_commute_with_translation(xs in prop::collection::btree_set(1i64..16, 0..4), ys in prop::collection::btree_set(1i64..16, 4), y0 in -8i64..8, x in rational()) {
        let ys: Vec<i64> = ys.into_iter().take(xs.len()).collect();
        let mut points = vec![(int(0), frac(y0, 16))];
        points.extend(xs.iter().zip(&ys).map(|(&a, &b)| (frac(a, 16), frac(b, 16) + frac(y0, 16))));
        points.push((int(1), frac(y0, 16) + int(1)));
        let f = PeriodicMap::new(points).unwrap();
        let z = PeriodicMap::translation(int(1));
        prop_assert!(f.commutes_with(&z));
        prop_assert_eq!(f.eval(&(&x + int(1))), f.eval(&x) + int(1));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert_eq!(f.compose(&f).eval(&x), f.eval(&f.eval(&x)));
    }

    #[test]
    fn handle_reduction_preserves_invariants(w in braid_word(5, 30)) {
        let r = handle_reduce(&w, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(exponent_sum(&r), exponent_sum(&w));
        prop_assert_eq!(permutation_projection(&r), permutation_projection(&w));
        if is_trivial(&w, DEFAULT_BUDGET).unwrap() {
            prop_assert!(is_identity_permutation(&permutation_projection(&w)));
            prop_assert_eq!(exponent_sum(&w), 0);
        }
    }

    #[test]
    fn braid_order_reduces_to_positivity(u in braid_word(4, 10), v in braid_word(4, 10)) {
        prop_assume!(u.strands() == v.strands());
        let e = BraidWord::empty(u.strands());
        let d = u.inverse().concat(&v).unwrap();
        prop_assert_eq!(
            braid_compare(&u, &v, DEFAULT_BUDGET).unwrap() == Ordering::Less,
            braid_compare(&e, &d, DEFAULT_BUDGET).unwrap() == Ordering::Less
        );
        // w w⁻¹ is trivial
        prop_assert!(is_trivial(&u.concat(&u.inverse()).unwrap(), DEFAULT_BUDGET).unwrap());
    }
}

#[test]
fn central_powers_have_nonzero_exponent_sum() {
    for n in 3..=6usize {
        let z = center_generator(n).unwrap();
        for k in [-3i64, -2, -1, 1, 2, 3] {
            let zk = z.power(k);
            assert_eq!(exponent_sum(&zk), k * (n * (n - 1)) as i64);
            assert!(!is_trivial(&zk, DEFAULT_BUDGET).unwrap());
        }
    }
}

#[test]
fn positive_cone_is_closed() {
    let (x0, x1) = f_generators();
    let elems = distinct_elements(&[x0, x1], 3);
    let id = PLMap::identity();
    let positive: Vec<&PLMap> = elems
        .iter()
        .map(|(_, m)| m)
        .filter(|m| germ_compare(m, &id) == Ordering::Greater)
        .collect();
    assert!(!positive.is_empty());
    for f in &positive {
        for g in &positive {
            assert_eq!(germ_compare(&f.compose(g), &id), Ordering::Greater);
        }
    }
}

#[test]
fn factor_faithfulness_on_probes() {
    let names = vec!["d".to_string()];
    let theta = glued_action(
        &[PLMap::translation(frac(1, 2))],
        &names,
        &Word::power(0, 2),
        &PLMap::translation(int(1)),
        3,
        int(0),
        int(0),
    )
    .unwrap();
    let probes: Vec<Rational> = (-4..=4).map(|i| frac(i, 3)).collect();
    for n in (-4i64..=4).filter(|n| *n != 0) {
        let g = theta.theta_word(&Word::power(0, n));
        assert!(probes.iter().any(|x| g.eval(x) != *x), "theta(d^{n}) fixes the probes");
        let k = AmalgamWord(vec![Syllable::H(n)]);
        assert!(probes.iter().any(|x| amalgam_eval(&theta, &k, x) != *x));
    }
    assert!(Rational::zero() == theta.theta_word(&Word::empty()).eval(&Rational::zero()));
}
