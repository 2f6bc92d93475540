mod common;

use common::*;
use rand::Rng;
use realperiodic::families::{chebyshev, fatou_form, hermite, interlacing_random};
use realperiodic::ratmap::fixed_point_data;
use realperiodic::realcert::{
    all_roots_real, certify_auto, certify_main, certify_rf, check_cor_even, check_cor_odd,
    indifferent_fixed_point_count, is_real_fibered, scan_real_periodic, Verdict,
};
use realperiodic::{Budget, CircleSet, Rational, RationalMap};

/// A real fibered map whose numerator and denominator degrees differ by at
/// most one, with a random nonzero leading coefficient.
fn random_real_fibered(seed: u64) -> RationalMap {
    let mut g = rng(seed);
    let deg_q = g.random_range(1..=3usize);
    let deg_p = match g.random_range(0..3) {
        0 => deg_q - 1,
        1 => deg_q,
        _ => deg_q + 1,
    };
    let deg_p = deg_p.max(if deg_q == 1 { 1 } else { 0 });
    let total = deg_p + deg_q;
    let mut picks: Vec<i64> = Vec::new();
    while picks.len() < total {
        let n = g.random_range(-40..=40);
        if !picks.contains(&n) {
            picks.push(n);
        }
    }
    picks.sort_unstable();
    // Alternate the roots; the larger side starts.
    let p_first = deg_p >= deg_q;
    let mut pr = Vec::new();
    let mut qr = Vec::new();
    for (i, n) in picks.iter().enumerate() {
        let r = q(*n, 4);
        if (i % 2 == 0) == p_first {
            pr.push(r);
        } else {
            qr.push(r);
        }
    }
    let sign = if g.random_bool(0.5) { 1 } else { -1 };
    let lead = q(sign * g.random_range(1..=24i64), 8);
    let prod = |rs: &[Rational]| {
        rs.iter().fold(vec![q(1, 1)], |acc, r| {
            let mut out = vec![q(0, 1); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                out[i + 1] += c.clone();
                out[i] -= c * r;
            }
            out
        })
    };
    let p: Vec<Rational> = prod(&pr).into_iter().map(|c| c * &lead).collect();
    RationalMap::from_rationals(&p, &prod(&qr)).unwrap()
}

#[test]
fn real_fibered_generator_is_real_fibered() {
    for seed in 0..100 {
        let f = random_real_fibered(seed);
        assert!(is_real_fibered(&f).unwrap(), "{f:?}");
    }
}

#[test]
fn rf_verdicts_agree_with_fixed_points_of_iterates() {
    let b = Budget::default();
    let mut seen = [0usize; 3];
    for seed in 0..120 {
        let f = random_real_fibered(seed);
        if f.degree() < 2 {
            continue;
        }
        let c = certify_rf(&f, &b).unwrap();
        assert!(indifferent_fixed_point_count(&f, &b).unwrap() <= 1, "{f:?}");
        match c.verdict {
            Verdict::CertifiedInRd | Verdict::BoundaryIndifferent => {
                seen[0] += 1;
                for k in 1..=4 {
                    assert!(fixed_point_data(&f, k, &b).unwrap().all_real, "{f:?} k={k}");
                }
            }
            Verdict::CertifiedNotInRd => {
                seen[1] += 1;
                let f2 = f.iterate(2, &b).unwrap().fixed_point_polynomial();
                assert!(!all_roots_real(&f2).unwrap(), "{f:?}");
            }
            Verdict::Inconclusive => panic!("certify_rf cannot be inconclusive on {f:?}"),
        }
    }
    for seed in 0..100 {
        for d in [2, 3, 4] {
            let f = interlacing_random(d, seed).unwrap();
            let c = certify_rf(&f, &b).unwrap();
            assert_eq!(c.verdict, Verdict::CertifiedInRd, "{f:?}");
            seen[2] += 1;
            if d == 4 && seed % 10 != 0 {
                continue;
            }
            for k in 1..=4 {
                assert!(fixed_point_data(&f, k, &b).unwrap().all_real, "{f:?} k={k}");
            }
        }
    }
    assert!(seen[0] > 10 && seen[1] > 10, "{seen:?}");
}

#[test]
fn boundary_map_and_its_perturbations() {
    let b = Budget::default();
    let f = map("-1,0,1 | 0,1");
    assert_eq!(certify_rf(&f, &b).unwrap().verdict, Verdict::BoundaryIndifferent);
    for (n, d) in [(1, 8), (1, 16), (1, 100)] {
        // Shrinking makes ∞ repelling: the fixed points ±√(c/(c−1)) turn nonreal.
        let shrunk = f.scaled(&(q(1, 1) - q(n, d))).unwrap();
        let c = scan_real_periodic(&shrunk, 4, &b).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedNotInRd);
        assert_eq!(c.evidence.first_nonreal_k, Some(1));
        assert_eq!(certify_rf(&shrunk, &b).unwrap().verdict, Verdict::CertifiedNotInRd);
        // Growing makes ∞ attracting with λ = 1/(1+ε): the map moves inside.
        let grown = f.scaled(&(q(1, 1) + q(n, d))).unwrap();
        assert_eq!(certify_rf(&grown, &b).unwrap().verdict, Verdict::CertifiedInRd);
        assert_eq!(
            scan_real_periodic(&grown, 4, &b).unwrap().verdict,
            Verdict::Inconclusive
        );
    }
}

fn certified_maps() -> Vec<RationalMap> {
    let mut maps = vec![
        chebyshev(2).unwrap(),
        chebyshev(3).unwrap(),
        chebyshev(4).unwrap(),
        hermite(3).unwrap(),
        hermite(4).unwrap(),
        map("-1,0,2 | 0,1"),
        map("0,-3,0,1"),
    ];
    for seed in 0..4 {
        maps.push(interlacing_random(2, seed).unwrap());
        maps.push(interlacing_random(3, seed).unwrap());
    }
    maps
}

#[test]
fn certified_maps_have_real_periodic_points_up_to_degree_2000() {
    let b = Budget::default();
    for f in certified_maps() {
        let c = certify_auto(&f, None, 1, &b).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd, "{f:?}");
        let d = f.degree();
        let mut k = 1;
        while d.pow(k) <= 2000 {
            assert!(fixed_point_data(&f, k, &b).unwrap().all_real, "{f:?} k={k}");
            k += 1;
        }
    }
}

#[test]
fn corollaries_imply_the_main_criterion() {
    let b = Budget::default();
    let mut polys = vec![
        chebyshev(2).unwrap(),
        chebyshev(3).unwrap(),
        chebyshev(5).unwrap(),
        chebyshev(6).unwrap(),
        hermite(2).unwrap(),
        hermite(3).unwrap(),
        hermite(4).unwrap(),
        hermite(5).unwrap(),
        map("0,-3,0,1"),
    ];
    let mut g = rng(11);
    for _ in 0..40 {
        let d = g.random_range(2..=4usize);
        let mut c: Vec<i64> = (0..d).map(|_| g.random_range(-12..=12)).collect();
        c.push(g.random_range(1..=4));
        polys.push(RationalMap::polynomial(realperiodic::IntPoly::from_i64s(&c)).unwrap());
    }
    let mut succeeded = 0;
    for f in polys {
        let c = if f.degree() % 2 == 1 {
            check_cor_odd(&f, &b).unwrap()
        } else {
            check_cor_even(&f, &b).unwrap()
        };
        if c.verdict != Verdict::CertifiedInRd {
            continue;
        }
        succeeded += 1;
        let s = CircleSet::algebraic_interval(c.evidence.x0.unwrap(), c.evidence.x1.unwrap()).unwrap();
        let m = certify_main(&f, &s, &b).unwrap();
        assert_eq!(m.verdict, Verdict::CertifiedInRd, "{f:?}");
    }
    assert!(succeeded >= 9, "{succeeded}");
}

#[test]
fn fatou_forms_have_real_fixed_points() {
    let mut g = rng(5);
    for _ in 0..50 {
        let m = g.random_range(0..=3usize);
        let c = q(g.random_range(0..=12), 4);
        let a: Vec<Rational> = (0..m).map(|_| q(g.random_range(1..=12), 4)).collect();
        let mut bs: Vec<i64> = Vec::new();
        while bs.len() < m {
            let n = g.random_range(0..=20);
            if !bs.contains(&n) {
                bs.push(n);
            }
        }
        let b: Vec<Rational> = bs.iter().map(|&n| q(n, 4)).collect();
        let f = fatou_form(&c, &a, &b).unwrap();
        let big_f = f.fixed_point_polynomial();
        if big_f.is_zero() {
            continue;
        }
        assert!(all_roots_real(&big_f).unwrap(), "{f:?}");
    }
}
