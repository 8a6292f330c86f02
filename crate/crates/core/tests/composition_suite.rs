mod common;

use latconv::composition::{conjugate_formula, outer_properness_check, scalarization_identity, strict_section_closure_check};
use latconv::generate::{generate, generate_control, GenParams};
use latconv::oracle::oracle_conjugate_of_composition;
use latconv::rational::{qvec, ExtReal};
use latconv::report::Status;
use proptest::prelude::*;

#[test]
fn generated_instances_meet_every_identity() {
    for p in common::mixed_params(24, 1000) {
        let inst = generate(&p).unwrap().build().unwrap();
        let h = inst.hypotheses();
        assert!(h.duality_ready() && h.composed_convex, "{p:?}");
        let mut probes = inst.z_directions();
        probes.push(probes[0].iter().map(|v| -v).collect());
        for z in &probes {
            for x in inst.g.grid() {
                let (l, r) = scalarization_identity(&inst, z, x).unwrap();
                assert_eq!(l, r, "{p:?} z*={z:?} x={x:?}");
            }
        }
        for z in inst.z_directions() {
            for xs in &inst.x_dual_grid {
                let f = conjugate_formula(&inst, xs, &z).unwrap();
                assert!(f.lhs <= f.rhs, "{p:?}");
                assert!(f.formula_exact, "{p:?}");
                assert_eq!(f.gap, ExtReal::zero(), "{p:?} x*={xs:?} z*={z:?}");
                assert_eq!(oracle_conjugate_of_composition(&inst, xs, &z).unwrap(), f.lhs);
            }
        }
        assert!(outer_properness_check(&inst).unwrap().iter().all(|e| e.status != Status::Fail));
        assert!(strict_section_closure_check(&inst).unwrap().iter().all(|e| e.passed()), "{p:?}");
    }
}

#[test]
fn controls_keep_weak_duality() {
    for p in common::mixed_params(24, 2000) {
        let inst = generate_control(&p).unwrap().build().unwrap();
        for z in inst.z_directions() {
            for xs in &inst.x_dual_grid {
                let f = conjugate_formula(&inst, xs, &z).unwrap();
                assert!(f.lhs <= f.rhs, "{p:?} x*={xs:?} z*={z:?}: {f:?}");
                assert_eq!(oracle_conjugate_of_composition(&inst, xs, &z).unwrap(), f.lhs);
            }
        }
        assert!(outer_properness_check(&inst).unwrap().iter().all(|e| e.status != Status::Fail));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn off_grid_dual_points_agree_with_enumeration(
        seed in 0u64..500,
        dims in (1usize..=2, 1usize..=2, 1usize..=2),
        xs in prop::collection::vec(-4i64..=4, 2),
        zs in prop::collection::vec(0i64..=3, 2),
    ) {
        let p = GenParams { dim_x: dims.0, dim_y: dims.1, dim_z: dims.2, grid_size: 2, seed };
        let inst = generate(&p).unwrap().build().unwrap();
        let xstar = qvec(&xs[..dims.0]);
        let mut z = zs[..dims.2].to_vec();
        if z.iter().all(|v| *v == 0) {
            z[0] = 1;
        }
        let zstar = qvec(&z);
        let f = conjugate_formula(&inst, &xstar, &zstar).unwrap();
        prop_assert!(f.lhs <= f.rhs);
        prop_assert_eq!(&f.gap, &ExtReal::zero());
        prop_assert_eq!(oracle_conjugate_of_composition(&inst, &xstar, &zstar).unwrap(), f.lhs);
    }
}
