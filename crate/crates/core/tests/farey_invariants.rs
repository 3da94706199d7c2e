mod common;

use proptest::prelude::*;

use common::{s, FareyBox};
use ulfp::annular::{annular_distance, twist_coord, Annulus};
use ulfp::farey::{
    adjacent, canonical, dehn_twist, distance, geodesics, half_twist, intersection, link_at_distance,
    normalizer_to_infinity, pivot_candidates, MobiusMap, Slope, SurfaceKind,
};

fn slope() -> impl Strategy<Value = Slope> {
    (-300i64..300, 0i64..80)
        .prop_filter("not 0/0", |&(p, q)| p != 0 || q != 0)
        .prop_map(|(p, q)| canonical(p, q).unwrap())
}

fn small_slope() -> impl Strategy<Value = Slope> {
    (-40i64..40, 0i64..25)
        .prop_filter("not 0/0", |&(p, q)| p != 0 || q != 0)
        .prop_map(|(p, q)| canonical(p, q).unwrap())
}

fn mobius() -> impl Strategy<Value = MobiusMap> {
    prop::collection::vec(-3i64..=3, 0..5).prop_map(|shears| {
        let swap = MobiusMap::new(0, -1, 1, 0).unwrap();
        shears
            .into_iter()
            .fold(MobiusMap::IDENTITY, |m, n| m.compose(&MobiusMap::shear(n).compose(&swap).unwrap()).unwrap())
    })
}

fn kind() -> impl Strategy<Value = SurfaceKind> {
    prop_oneof![Just(SurfaceKind::Torus), Just(SurfaceKind::Sphere)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_is_idempotent(p in -1000i64..1000, q in -1000i64..1000, k in 1i64..20) {
        prop_assume!(p != 0 || q != 0);
        let x = canonical(p, q).unwrap();
        prop_assert_eq!(canonical(x.numer(), x.denom()).unwrap(), x);
        prop_assert_eq!(canonical(k * p, k * q).unwrap(), x);
        prop_assert_eq!(canonical(-p, -q).unwrap(), x);
        prop_assert!(x.denom() >= 0);
    }

    #[test]
    fn text_round_trip(x in slope()) {
        prop_assert_eq!(x.to_string().parse::<Slope>().unwrap(), x);
    }

    #[test]
    fn intersection_and_adjacency(x in slope(), y in slope()) {
        let det = (x.numer() as i128 * y.denom() as i128 - x.denom() as i128 * y.numer() as i128).unsigned_abs();
        prop_assert_eq!(intersection(SurfaceKind::Torus, x, y) as u128, det);
        prop_assert_eq!(intersection(SurfaceKind::Sphere, x, y) as u128, 2 * det);
        prop_assert_eq!(adjacent(x, y), det == 1);
        prop_assert_eq!(distance(x, y) == 1, det == 1);
    }

    #[test]
    fn mobius_preserves_everything(m in mobius(), x in small_slope(), y in small_slope()) {
        prop_assert_eq!(intersection(SurfaceKind::Torus, m.apply(x), m.apply(y)), intersection(SurfaceKind::Torus, x, y));
        prop_assert_eq!(distance(m.apply(x), m.apply(y)), distance(x, y));
        let moved: Vec<Vec<Slope>> = geodesics(x, y)
            .iter()
            .map(|g| g.vertices().iter().map(|&v| m.apply(v)).collect())
            .collect();
        let mut moved = moved;
        moved.sort();
        let direct: Vec<Vec<Slope>> = geodesics(m.apply(x), m.apply(y)).iter().map(|g| g.vertices().to_vec()).collect();
        prop_assert_eq!(moved, direct);
        prop_assert_eq!(m.inverse().apply(m.apply(x)), x);
    }

    #[test]
    fn metric_axioms(x in slope(), y in slope(), z in slope()) {
        let d = distance(x, y);
        prop_assert_eq!(d, distance(y, x));
        prop_assert_eq!(d == 0, x == y);
        prop_assert!(d <= distance(x, z) + distance(z, y));
    }

    #[test]
    fn geodesics_are_geodesics(x in slope(), y in slope()) {
        let d = distance(x, y);
        let gs = geodesics(x, y);
        prop_assert!(!gs.is_empty());
        let pivots = if x == y { None } else { Some(pivot_candidates(x, y).unwrap()) };
        for g in &gs {
            prop_assert_eq!(g.len() as u32, d);
            prop_assert_eq!(g.first(), x);
            prop_assert_eq!(g.last(), y);
            for (i, &v) in g.vertices().iter().enumerate() {
                prop_assert_eq!(distance(x, v), i as u32);
            }
            if let Some(p) = &pivots {
                prop_assert!(p.contains(&x) && p.contains(&y));
            }
        }
        let mut sorted = gs.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted, gs);
    }

    #[test]
    fn link_is_the_next_layer(x in small_slope(), y in small_slope(), d in 1u32..4) {
        let link = link_at_distance(x, y, d);
        for &v in &link {
            prop_assert!(adjacent(x, v));
            prop_assert_eq!(distance(v, y), d);
        }
        if x != y && d + 1 == distance(x, y) {
            prop_assert!(!link.is_empty());
        }
    }

    #[test]
    fn normalizer_sends_to_infinity(x in slope()) {
        let g = normalizer_to_infinity(x);
        prop_assert_eq!(g.det().abs(), 1);
        prop_assert_eq!(g.apply(x), Slope::INFINITY);
    }

    #[test]
    fn twists_fix_core_and_compose(k in kind(), x in small_slope(), y in small_slope(), a in -6i64..6, b in -6i64..6) {
        prop_assert_eq!(dehn_twist(k, x, a, x), x);
        let twice = dehn_twist(k, x, a, dehn_twist(k, x, b, y));
        prop_assert_eq!(twice, dehn_twist(k, x, a + b, y));
        prop_assert_eq!(dehn_twist(k, x, -a, dehn_twist(k, x, a, y)), y);
        prop_assert_eq!(intersection(k, x, dehn_twist(k, x, a, y)), intersection(k, x, y));
    }

    #[test]
    fn half_twist_squares_to_sphere_twist(x in small_slope(), y in small_slope(), n in -8i64..8) {
        prop_assert_eq!(half_twist(x, 2 * n, y), dehn_twist(SurfaceKind::Sphere, x, n, y));
    }

    #[test]
    fn twist_coordinate_is_a_bijection(x in small_slope(), y in small_slope(), w in small_slope()) {
        let z = Annulus::new(x);
        prop_assume!(y != x && w != x);
        let ty = twist_coord(&z, y).unwrap();
        let tw = twist_coord(&z, w).unwrap();
        prop_assert_eq!(ty == tw, y == w);
    }

    #[test]
    fn twist_equivariance(x in small_slope(), y in small_slope(), w in small_slope(), m in mobius()) {
        prop_assume!(y != x && w != x);
        let z = Annulus::new(x);
        let mz = Annulus::new(m.apply(x));
        let torus = |z: &Annulus, a, b| annular_distance(SurfaceKind::Torus, z, a, b).unwrap();
        prop_assert_eq!(torus(&z, y, w), torus(&mz, m.apply(y), m.apply(w)));
        // Sphere twist coordinates are read in units of 2, so a normalizer
        // differing by an odd shear moves the distance by at most one.
        let sphere = |z: &Annulus, a, b| annular_distance(SurfaceKind::Sphere, z, a, b).unwrap() as i64;
        prop_assert!((sphere(&z, y, w) - sphere(&mz, m.apply(y), m.apply(w))).abs() <= 1);
    }

    #[test]
    fn torus_twist_is_exact(x in small_slope(), y in small_slope(), n in -60i64..60) {
        prop_assume!(y != x && n != 0);
        let z = dehn_twist(SurfaceKind::Torus, x, n, y);
        prop_assert_eq!(annular_distance(SurfaceKind::Torus, &Annulus::new(x), y, z).unwrap(), n.unsigned_abs() + 2);
    }

    #[test]
    fn sphere_twists(x in small_slope(), y in small_slope(), n in -60i64..60) {
        prop_assume!(y != x && n != 0);
        let z = Annulus::new(x);
        let full = dehn_twist(SurfaceKind::Sphere, x, n, y);
        prop_assert_eq!(annular_distance(SurfaceKind::Sphere, &z, y, full).unwrap(), n.unsigned_abs() + 2);
        let half = half_twist(x, n, y);
        let d = annular_distance(SurfaceKind::Sphere, &z, y, half).unwrap() as i64;
        prop_assert!((d - (n.abs() / 2 + 2)).abs() <= 1);
    }

    #[test]
    fn annular_distance_is_a_metric_up_to_one(k in kind(), x in small_slope(), y in small_slope(), w in small_slope(), v in small_slope()) {
        prop_assume!(![y, w, v].contains(&x));
        let z = Annulus::new(x);
        let d = |a, b| annular_distance(k, &z, a, b).unwrap();
        prop_assert_eq!(d(y, w), d(w, y));
        prop_assert_eq!(d(y, y), 1);
        prop_assert!(d(y, w) <= d(y, v) + d(v, w));
    }
}

#[test]
fn distances_match_box_bfs_up_to_denominator_34() {
    let oracle = FareyBox::new(68, -2, 3);
    let mut endpoints = vec![Slope::INFINITY];
    for q in 1..=34i64 {
        for p in 0..=q {
            let v = s(p, q);
            if !endpoints.contains(&v) {
                endpoints.push(v);
            }
        }
    }
    for (i, &x) in endpoints.iter().enumerate() {
        let row = oracle.bfs(x);
        for &y in &endpoints[i + 1..] {
            let j = oracle.vertices.iter().position(|&v| v == y).unwrap();
            assert_eq!(Some(distance(x, y)), row[j], "{x} {y}");
        }
    }
}

#[test]
fn geodesic_denominators_stay_below_the_endpoints() {
    // Interior geodesic vertices stay inside the denominator box of the ends.
    for (x, y) in common::pair_corpus(11, 60, 2, 6) {
        let h = x.denom().max(y.denom());
        for g in geodesics(x, y) {
            for v in g.interior() {
                assert!(v.denom() <= h, "{v} on a geodesic {x} -> {y}");
            }
        }
    }
}
