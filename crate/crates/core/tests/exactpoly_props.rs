use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use realperiodic::exactpoly::{
    isolate_real_roots, poly_compose, poly_gcd, refine_interval, squarefree_part, sturm_count, Bound, IntPoly,
};
use realperiodic::{Rational, RootKind};

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1)
        .prop_map(|c| IntPoly::from_i64s(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    poly(max_deg, bound).prop_filter("nonconstant", |p| p.deg() >= 1)
}

/// Products of powers of linear factors `bz + a` and positive definite
/// quadratics `bz² + a² + 1`, with the expected real roots and multiplicities.
fn with_repeats() -> impl Strategy<Value = (IntPoly, Vec<(Rational, u32)>)> {
    prop::collection::vec((-6i64..=6, 1i64..=4, 1u32..=3), 1..=4).prop_map(|fs| {
        let mut expected: Vec<(Rational, u32)> = Vec::new();
        let mut a = IntPoly::one();
        for (c, b, m) in fs {
            let f = if c % 2 == 0 {
                let r = Rational::new((-c).into(), b.into());
                match expected.iter_mut().find(|(x, _)| *x == r) {
                    Some(e) => e.1 += m,
                    None => expected.push((r, m)),
                }
                IntPoly::from_i64s(&[c, b])
            } else {
                IntPoly::from_i64s(&[c * c + 1, 0, b])
            };
            a = &a * &f.pow(m);
        }
        expected.sort();
        (a, expected)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn isolation_count_matches_sturm(a in nonconstant(10, 30)) {
        let s = squarefree_part(&a).unwrap();
        prop_assert!(s.deg() <= a.deg());
        let n = sturm_count(&s, &Bound::NegInf, &Bound::PosInf).unwrap();
        prop_assert_eq!(isolate_real_roots(&a).unwrap().len(), n);
    }

    #[test]
    fn nonreal_roots_pair_up(a in nonconstant(10, 30)) {
        let s = squarefree_part(&a).unwrap();
        let n = sturm_count(&s, &Bound::NegInf, &Bound::PosInf).unwrap();
        prop_assert_eq!((s.deg() - n) % 2, 0);
    }

    #[test]
    fn multiplicities_match_factorization((a, expected) in with_repeats()) {
        let roots = isolate_real_roots(&a).unwrap();
        let got: Vec<(Rational, u32)> = roots
            .iter()
            .map(|r| (r.as_rational().expect("rational roots snap to exact points").clone(), r.multiplicity()))
            .collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn isolating_intervals_are_sorted_and_disjoint(a in nonconstant(9, 20)) {
        let roots = isolate_real_roots(&a).unwrap();
        for w in roots.windows(2) {
            prop_assert!(w[0].upper() <= w[1].lower());
            prop_assert!(w[0].lower() < w[1].upper());
        }
        for r in &roots {
            // Power-of-two denominators on open intervals.
            if r.kind() == RootKind::Open {
                for e in [r.lower(), r.upper()] {
                    let d = e.denom();
                    prop_assert!((d & (d - BigInt::from(1))) == BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn refinement_keeps_the_root(a in nonconstant(8, 20), bits in 1u32..40) {
        let s = squarefree_part(&a).unwrap();
        for r in isolate_real_roots(&a).unwrap() {
            let w = Rational::new(1.into(), BigInt::from(1) << bits);
            let fine = refine_interval(&r, &w).unwrap();
            prop_assert!(fine.width() <= w || fine.is_exact());
            prop_assert!(r.lower() <= fine.lower() && fine.upper() <= r.upper());
            if fine.kind() == RootKind::Open {
                let lo = s.eval_sign(fine.lower());
                let hi = s.eval_sign(fine.upper());
                prop_assert!(lo != hi && lo != std::cmp::Ordering::Equal && hi != std::cmp::Ordering::Equal);
                prop_assert_eq!(lo, s.eval_sign(r.lower()));
            } else {
                prop_assert!(s.eval_rational(fine.as_rational().unwrap()) == Rational::from_integer(0.into()));
            }
        }
    }

    #[test]
    fn compose_degree_law(outer in nonconstant(4, 9), num in poly(3, 9), den in poly(3, 9)) {
        let g = poly_gcd(&num, &den).unwrap();
        prop_assume!(g.is_constant());
        let inner = num.deg().max(den.deg());
        prop_assume!(inner >= 1);
        let (n, d) = poly_compose(&outer, &num, &den).unwrap();
        let lhs = n.degree().unwrap_or(0).max(d.degree().unwrap_or(0));
        prop_assert_eq!(lhs, outer.deg() * inner);
    }

    #[test]
    fn gcd_divides_both(a in poly(6, 20), b in poly(6, 20), c in nonconstant(3, 5)) {
        let a = &a * &c;
        let b = &b * &c;
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert!(g.deg() >= c.deg());
        prop_assert!(g.leading().unwrap().is_positive());
    }
}
