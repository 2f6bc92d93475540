mod common;

use common::*;
use proptest::prelude::*;
use realperiodic::families::chebyshev;
use realperiodic::invariants::{is_backward_invariant, preimage, ArcEnd};
use realperiodic::{Budget, CircleSet, RationalMap};

fn arc_end() -> impl Strategy<Value = ArcEnd> {
    prop_oneof![
        8 => (-8i64..=8).prop_map(|n| ArcEnd::rational(q(n, 2))),
        1 => Just(ArcEnd::NegInf),
        1 => Just(ArcEnd::PosInf),
    ]
}

fn circle_set() -> impl Strategy<Value = CircleSet> {
    prop::collection::vec((arc_end(), arc_end()), 1..=3).prop_map(|arcs| CircleSet::from_arcs(arcs).unwrap())
}

fn small_map(d: usize) -> impl Strategy<Value = RationalMap> {
    any::<u64>().prop_map(move |seed| random_map(&mut rng(seed), d, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn preimage_of_union(f in small_map(2), a in circle_set(), b in circle_set()) {
        let lhs = preimage(&f, &a.union(&b).unwrap()).unwrap();
        let rhs = preimage(&f, &a).unwrap().union(&preimage(&f, &b).unwrap()).unwrap();
        prop_assert!(lhs.set_eq(&rhs).unwrap(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn preimage_is_monotone(f in small_map(2), a in circle_set(), b in circle_set()) {
        let big = a.union(&b).unwrap();
        prop_assert!(a.is_subset(&big).unwrap());
        prop_assert!(preimage(&f, &a).unwrap().is_subset(&preimage(&f, &big).unwrap()).unwrap());
    }

    #[test]
    fn full_circle_is_its_own_preimage(f in prop_oneof![small_map(2), small_map(3)]) {
        prop_assert!(preimage(&f, &CircleSet::full()).unwrap().is_full());
    }

    #[test]
    fn preimage_of_preimage_is_preimage_under_the_square(f in small_map(2), s in circle_set()) {
        let twice = preimage(&f, &preimage(&f, &s).unwrap()).unwrap();
        let g = f.iterate(2, &Budget::default()).unwrap();
        let direct = preimage(&g, &s).unwrap();
        prop_assert!(twice.set_eq(&direct).unwrap(), "{} vs {}", twice, direct);
    }

    #[test]
    fn preimage_points_map_into_the_set(f in small_map(2), s in circle_set(), x in -40i64..=40) {
        let pre = preimage(&f, &s).unwrap();
        let x = q(x, 4);
        prop_assert_eq!(pre.contains_rational(&x), s.contains_point(&f.eval_rational(&x)));
    }
}

#[test]
fn chebyshev_interval_is_backward_invariant() {
    let s = CircleSet::interval(q(-1, 1), q(1, 1)).unwrap();
    for d in 2..=6 {
        let t = chebyshev(d).unwrap();
        assert!(is_backward_invariant(&t, &s).unwrap(), "T_{d}");
        assert!(preimage(&t, &s).unwrap().set_eq(&s).unwrap(), "T_{d}");
    }
}

#[test]
fn chebyshev_half_interval_is_not_invariant() {
    let t2 = chebyshev(2).unwrap();
    let s = CircleSet::interval(q(0, 1), q(1, 1)).unwrap();
    let pre = preimage(&t2, &s).unwrap();
    assert_eq!(pre.arcs().len(), 2);
    assert!(!is_backward_invariant(&t2, &s).unwrap());
}
