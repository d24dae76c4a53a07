//! Property tests for exact values, convex hulls, and monad structure on
//! carriers larger than the exhaustive suites reach.

use proptest::prelude::*;

use lawkit::gallery;
use lawkit::kernel::{convex_canonical, convex_member, parse_value, Morphism, Rat, Value};
use lawkit::monads;

fn base(n: u32) -> impl Strategy<Value = Value> {
    (0..n).prop_map(Value::Base)
}

fn rat() -> impl Strategy<Value = Rat> {
    (-40i128..40, 1i128..30).prop_map(|(p, q)| Rat::new(p, q))
}

fn weights(k: usize) -> impl Strategy<Value = Vec<i128>> {
    prop::collection::vec(1i128..12, k)
}

fn dist_over(atoms: Vec<Value>, w: Vec<i128>) -> Value {
    let total: i128 = w.iter().sum();
    Value::dist(atoms.into_iter().zip(w).map(|(a, x)| (a, Rat::new(x, total))))
}

fn distribution(n: u32) -> impl Strategy<Value = Value> {
    prop::collection::btree_set(0..n, 1..=n as usize).prop_flat_map(|atoms| {
        let atoms: Vec<Value> = atoms.into_iter().map(Value::Base).collect();
        let k = atoms.len();
        weights(k).prop_map(move |w| dist_over(atoms.clone(), w))
    })
}

fn value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![base(5), Just(Value::InR), distribution(3)];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Value::set),
            inner.clone().prop_map(Value::inl),
            (prop_oneof![Just("e"), Just("g")], inner.clone()).prop_map(|(m, v)| Value::pair(m, v)),
            prop::collection::vec(inner, 2).prop_map(Value::FuncOf),
        ]
    })
}

fn set_of(n: u32, max: usize) -> impl Strategy<Value = Value> {
    prop::collection::vec(base(n), 0..max).prop_map(Value::set)
}

fn set_of_sets(n: u32) -> impl Strategy<Value = Value> {
    prop::collection::vec(set_of(n, 4), 0..4).prop_map(Value::set)
}

proptest! {
    #[test]
    fn text_form_round_trips(v in value()) {
        prop_assert_eq!(parse_value(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn rationals_are_exact(a in rat(), b in rat()) {
        prop_assert_eq!((a + b) - b, a);
        if !b.is_zero() {
            prop_assert_eq!((a * b) / b, a);
        }
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a);
        prop_assert!(a.denom() > 0);
    }

    #[test]
    fn convex_combinations_are_members(
        gens in prop::collection::vec(distribution(3), 1..4),
        w in weights(3),
    ) {
        let w = &w[..gens.len()];
        let total: i128 = w.iter().sum();
        let mut terms = Vec::new();
        for (g, &x) in gens.iter().zip(w) {
            for (a, p) in g.dist_terms().unwrap() {
                terms.push((a.clone(), *p * Rat::new(x, total)));
            }
        }
        let point = Value::dist(terms);
        prop_assert!(convex_member(&point, &gens).is_some());
        let mut with_point = gens.clone();
        with_point.push(point);
        prop_assert_eq!(convex_canonical(&with_point), convex_canonical(&gens));
    }

    #[test]
    fn powerset_laws_on_six_points(u in set_of(6, 6), w in prop::collection::vec(set_of_sets(6), 0..3)) {
        let p = monads::powerset();
        prop_assert_eq!(p.mu(&p.eta(&u)), u.clone());
        prop_assert_eq!(p.mu(&p.fmap(&|x| p.eta(x), &u)), u);
        let www = Value::set(w);
        prop_assert_eq!(p.mu(&p.mu(&www)), p.mu(&p.fmap(&|x| p.mu(x), &www)));
    }

    #[test]
    fn distribution_unit_laws_on_four_points(d in distribution(4)) {
        let m = monads::distribution();
        prop_assert_eq!(m.mu(&m.eta(&d)), d.clone());
        prop_assert_eq!(m.mu(&m.fmap(&|x| m.eta(x), &d)), d);
    }

    #[test]
    fn pp_is_natural_on_five_points(uu in set_of_sets(5), mapping in prop::collection::vec(0u32..3, 5)) {
        let f = Morphism::new(3, mapping);
        let pp = gallery::pp_law();
        let stage = pp.st();
        let lhs = stage.fmap(&|y| f.apply(y), &pp.apply(&uu));
        let rhs = pp.apply(&pp.ts().fmap(&|y| f.apply(y), &uu));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn morphism_composition_is_associative(
        f in prop::collection::vec(0u32..3, 4),
        g in prop::collection::vec(0u32..3, 3),
        h in prop::collection::vec(0u32..2, 3),
    ) {
        let (f, g, h) = (Morphism::new(3, f), Morphism::new(3, g), Morphism::new(2, h));
        prop_assert_eq!(h.compose(&g).compose(&f), h.compose(&g.compose(&f)));
    }
}
