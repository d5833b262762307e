mod common;

use std::cmp::Ordering;

use ifctp_core::crispify::build_bi_objective;
use ifctp_core::fuzzy::membership;
use ifctp_core::{
    distance_to_ideal, evaluate_interval_objective, parse_instance, prefer, render_instance, CenterWidth, Interval,
    Preference,
};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval> {
    (-1e3..1e3f64, 0.0..1e3f64).prop_map(|(lo, len)| Interval::new(lo, lo + len).unwrap())
}

fn point() -> impl Strategy<Value = CenterWidth> {
    (-1e3..1e3f64, 0.0..1e3f64).prop_map(|(c, w)| CenterWidth { c, w })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn same(a: Interval, b: Interval) -> bool {
    close(a.lo(), b.lo()) && close(a.hi(), b.hi())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn addition_commutes_and_associates(a in interval(), b in interval(), c in interval()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert!(same((a + b) + c, a + (b + c)));
    }

    #[test]
    fn addition_widens(a in interval(), b in interval()) {
        let s = a + b;
        prop_assert!(close(s.width(), a.width() + b.width()));
        prop_assert!(close(s.center(), a.center() + b.center()));
    }

    #[test]
    fn scaling_composes(a in interval(), g in -10.0..10.0f64, h in -10.0..10.0f64) {
        prop_assert!(same(a.scale(g).scale(h), a.scale(g * h)));
        prop_assert!(a.scale(g).lo() <= a.scale(g).hi());
        prop_assert!(close(a.scale(g).width(), g.abs() * a.width()));
    }

    #[test]
    fn scaling_distributes(a in interval(), b in interval(), g in -10.0..10.0f64) {
        prop_assert!(same((a + b).scale(g), a.scale(g) + b.scale(g)));
    }

    #[test]
    fn center_width_round_trip(a in interval(), p in point()) {
        let back = Interval::from_center_width(a.to_center_width()).unwrap();
        prop_assert!(same(back, a));
        let q = p.to_interval().unwrap().to_center_width();
        prop_assert!(close(q.c, p.c) && close(q.w, p.w));
    }

    #[test]
    fn distance_is_a_metric(p in point(), q in point(), r in point()) {
        prop_assert!(distance_to_ideal(p, p) == 0.0);
        prop_assert_eq!(distance_to_ideal(p, q), distance_to_ideal(q, p));
        prop_assert!(distance_to_ideal(p, r) <= distance_to_ideal(p, q) + distance_to_ideal(q, r) + 1e-9);
    }

    #[test]
    fn preference_is_a_total_preorder(p in point(), q in point(), r in point(), ideal in point()) {
        let pq = prefer(p, q, ideal);
        prop_assert_eq!(pq.as_ordering(), prefer(q, p, ideal).as_ordering().reverse());
        prop_assert_eq!(prefer(p, p, ideal), Preference::Tie);
        let le = |a, b| prefer(a, b, ideal).as_ordering() != Ordering::Greater;
        if le(p, q) && le(q, r) && pq != Preference::Tie && prefer(q, r, ideal) != Preference::Tie {
            prop_assert!(le(p, r));
        }
    }

    #[test]
    fn membership_is_clipped_and_monotone(z in -1e3..2e3f64, dz in 0.0..100.0f64, best in 0.0..500.0f64, len in 0.0..500.0f64) {
        let worst = best + len;
        let m = membership(z, best, worst);
        prop_assert!((0.0..=1.0).contains(&m));
        prop_assert!(membership(z + dz, best, worst) <= m);
        if z <= best {
            prop_assert_eq!(m, 1.0);
        }
        if z >= worst && len > 1e-6 {
            prop_assert_eq!(m, 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn upper_limit_is_lower_plus_twice_width(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_instance(&mut rng, 4, 5);
        let plan = common::random_plan(&mut rng, inst.sources(), inst.destinations());
        let bi = build_bi_objective(&inst);
        let z = evaluate_interval_objective(&inst, &plan).unwrap();
        let lower = bi.obj_lower.evaluate(&plan);
        let width = bi.obj_width.evaluate(&plan);
        prop_assert!(close(z.lo(), lower));
        prop_assert!(close(z.width(), width));
        prop_assert!(close(z.hi(), lower + 2.0 * width));
    }

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let inst = common::random_instance(&mut common::rng(seed), 4, 5);
        let text = render_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst.clone());
        prop_assert_eq!(render_instance(&parse_instance(&text).unwrap()), text);
    }
}
