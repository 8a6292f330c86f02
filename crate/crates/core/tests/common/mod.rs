#![allow(dead_code)]

use latconv::cones::OrderCone;
use latconv::generate::GenParams;
use latconv::rational::{is_zero, qvec, Vector};
use latconv::upper_sets::UpperSet;
use proptest::prelude::*;

/// Mixed shapes within the generator's limits, cycling seeds.
pub fn mixed_params(count: usize, seed0: u64) -> Vec<GenParams> {
    let shapes: [(usize, usize, usize, usize); 12] = [
        (1, 1, 1, 3),
        (1, 1, 1, 5),
        (1, 1, 1, 7),
        (1, 2, 1, 3),
        (2, 1, 1, 3),
        (1, 1, 2, 4),
        (2, 2, 1, 2),
        (1, 2, 2, 3),
        (2, 2, 2, 2),
        (3, 1, 1, 2),
        (1, 3, 2, 2),
        (2, 3, 3, 2),
    ];
    (0..count)
        .map(|i| {
            let (dim_x, dim_y, dim_z, grid_size) = shapes[i % shapes.len()];
            GenParams { dim_x, dim_y, dim_z, grid_size, seed: seed0 + i as u64 }
        })
        .collect()
}

pub fn int_vec(dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(lo..=hi, dim).prop_map(|v| qvec(&v))
}

/// A random upper set in the plane: one to three points plus an optional extra ray.
pub fn plane_set(cone: OrderCone) -> impl Strategy<Value = UpperSet> {
    (prop::collection::vec(int_vec(2, -3, 3), 1..=3), prop::option::of(int_vec(2, -1, 1))).prop_map(move |(pts, ray)| {
        let extra: Vec<Vector> = ray.into_iter().filter(|r| !is_zero(r)).collect();
        UpperSet::new(&cone, pts, extra).unwrap()
    })
}
