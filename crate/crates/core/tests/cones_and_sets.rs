mod common;

use common::{int_vec, plane_set};
use latconv::cones::{dual_cone, in_cone, OrderCone};
use latconv::lp::{Cmp, LpOutcome, Problem};
use latconv::oracle::oracle_support;
use latconv::rational::{add, dot, is_zero, q, qr, qvec, scale, ExtReal, Vector, Q};
use latconv::upper_sets::{
    contains, indicator_quasiconcavity_report, is_subset, lattice_inf, lattice_sup, minkowski_sum, set_equal, support, UpperSet,
};
use num_traits::Zero;
use proptest::prelude::*;

fn cone_strategy() -> impl Strategy<Value = OrderCone> {
    (2usize..=3).prop_flat_map(|d| {
        prop::collection::vec(int_vec(d, -2, 2), 0..=3).prop_map(move |g| OrderCone::new(d, g.into_iter().filter(|v| !is_zero(v)).collect()).unwrap())
    })
}

/// Brute-force: best vertex of a bounded planar polygon, `None` if empty.
fn planar_vertex_min(rows: &[(Vector, Q)], c: &[Q]) -> Option<Q> {
    let mut best: Option<Q> = None;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (a, b) = (&rows[i].0, &rows[j].0);
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            if det.is_zero() {
                continue;
            }
            let x = (&rows[i].1 * &b[1] - &rows[j].1 * &a[1]) / &det;
            let y = (&a[0] * &rows[j].1 - &b[0] * &rows[i].1) / &det;
            let p = vec![x, y];
            if rows.iter().all(|(n, l)| dot(n, &p) >= *l) {
                let v = dot(c, &p);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_matches_vertex_enumeration(
        cons in prop::collection::vec((int_vec(2, -3, 3), -4i64..=4), 1..=5),
        c in int_vec(2, -3, 3),
    ) {
        let mut rows: Vec<(Vector, Q)> = cons.into_iter().map(|(a, b)| (a, q(b))).collect();
        for (a, b) in [([1, 0], -10), ([-1, 0], -10), ([0, 1], -10), ([0, -1], -10)] {
            rows.push((qvec(&a), q(b)));
        }
        let mut p = Problem::new(2);
        p.set_free(0).set_free(1).minimize(c.clone());
        for (a, b) in &rows {
            p.constrain(a.clone(), Cmp::Ge, b.clone());
        }
        match (p.solve(), planar_vertex_min(&rows, &c)) {
            (LpOutcome::Optimal { x, value }, Some(v)) => {
                prop_assert_eq!(value, v);
                prop_assert!(rows.iter().all(|(a, b)| dot(a, &x) >= *b));
            }
            (LpOutcome::Infeasible, None) => {}
            (got, want) => prop_assert!(false, "lp {:?} vs enumeration {:?}", got, want),
        }
    }

    #[test]
    fn double_dual_has_same_members(cone in cone_strategy(), probes in prop::collection::vec(int_vec(3, -3, 3), 20)) {
        let back = dual_cone(&dual_cone(&cone));
        for v in probes {
            let v = v[..cone.dim()].to_vec();
            prop_assert_eq!(cone.contains(&v), back.contains(&v));
            prop_assert_eq!(cone.contains(&v), in_cone(&cone, &v).unwrap());
        }
    }

    #[test]
    fn support_is_homogeneous_and_superadditive(
        a in plane_set(OrderCone::orthant(2).unwrap()),
        z1 in int_vec(2, -2, 3),
        z2 in int_vec(2, -2, 3),
        t in 1i64..=5,
    ) {
        let t = qr(t, 2);
        prop_assert_eq!(support(&a, &scale(&z1, &t)).unwrap(), support(&a, &z1).unwrap().mul_pos(&t));
        let sum = support(&a, &z1).unwrap().add_lower(&support(&a, &z2).unwrap());
        prop_assert!(support(&a, &add(&z1, &z2)).unwrap() >= sum);
    }

    #[test]
    fn support_routes_agree(a in plane_set(OrderCone::new(2, vec![qvec(&[1, 1])]).unwrap()), z in int_vec(2, -3, 3)) {
        prop_assert_eq!(support(&a, &z).unwrap(), oracle_support(&a, &z));
    }

    #[test]
    fn membership_routes_agree(a in plane_set(OrderCone::orthant(2).unwrap()), z in int_vec(2, -4, 4)) {
        prop_assert_eq!(contains(&a, &z).unwrap(), a.satisfies_hrep(&z));
    }

    #[test]
    fn minkowski_support_adds(
        a in plane_set(OrderCone::orthant(2).unwrap()),
        b in plane_set(OrderCone::orthant(2).unwrap()),
        z in int_vec(2, -2, 3),
    ) {
        let s = minkowski_sum(&a, &b).unwrap();
        prop_assert_eq!(support(&s, &z).unwrap(), support(&a, &z).unwrap().add_lower(&support(&b, &z).unwrap()));
    }

    #[test]
    fn lattice_bounds(
        a in plane_set(OrderCone::orthant(2).unwrap()),
        b in plane_set(OrderCone::orthant(2).unwrap()),
        c in plane_set(OrderCone::orthant(2).unwrap()),
    ) {
        let inf = lattice_inf(&[a.clone(), b.clone()]).unwrap();
        let sup = lattice_sup(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(is_subset(&a, &inf).unwrap() && is_subset(&b, &inf).unwrap());
        prop_assert!(is_subset(&sup, &a).unwrap() && is_subset(&sup, &b).unwrap());
        let c_above = is_subset(&a, &c).unwrap() && is_subset(&b, &c).unwrap();
        prop_assert_eq!(c_above, is_subset(&inf, &c).unwrap());
        let c_below = is_subset(&c, &a).unwrap() && is_subset(&c, &b).unwrap();
        prop_assert_eq!(c_below, is_subset(&c, &sup).unwrap());
    }

    #[test]
    fn halfspace_round_trip(a in plane_set(OrderCone::orthant(2).unwrap())) {
        let b = UpperSet::from_halfspaces(a.ambient(), a.hrep()).unwrap();
        let probes = vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1]), qvec(&[1, 2]), qvec(&[2, 1])];
        prop_assert!(set_equal(&a, &b, &probes).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn indicator_equivalence_on_nested_pairs(
        b in plane_set(OrderCone::new(2, vec![]).unwrap()),
        c in plane_set(OrderCone::new(2, vec![]).unwrap()),
        seed in 0u64..1000,
    ) {
        let a = lattice_sup(&[b.clone(), c]).unwrap();
        prop_assume!(!a.is_empty());
        let rep = indicator_quasiconcavity_report(&a, &b, 48, seed).unwrap();
        prop_assert!(rep.equivalent(), "{:?}", rep);
    }
}

#[test]
fn empty_and_full_conventions() {
    let c = OrderCone::orthant(2).unwrap();
    let z = qvec(&[1, 1]);
    assert_eq!(support(&UpperSet::empty(&c), &z).unwrap(), ExtReal::PosInf);
    assert_eq!(support(&UpperSet::full(&c), &z).unwrap(), ExtReal::NegInf);
    let a = UpperSet::translate(&c, qvec(&[0, 0])).unwrap();
    assert_eq!(minkowski_sum(&a, &UpperSet::empty(&c)).unwrap(), UpperSet::empty(&c));
}
