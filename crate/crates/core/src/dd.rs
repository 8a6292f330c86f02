//! Double description: generators of `{y : a_i . y >= 0 for all i}`.
//!
//! This is the single conversion engine behind dual cones, H-representations
//! of V-represented sets, and V-representations of halfspace intersections.
//! Constraints are inserted one at a time; adjacency of rays across a new
//! hyperplane is decided combinatorially from zero sets, which is exact for
//! minimal generating sets.

use num_traits::{Signed, Zero};

use crate::rational::{axpy, dedup_directions, dot, is_zero, neg, primitive, unit, Q, Vector};

/// Generators of a polyhedral cone: `lin(lineality) + cone(rays)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConeGenerators {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

impl ConeGenerators {
    /// All generators as a single list of nonnegative-combination directions.
    pub fn all(&self) -> Vec<Vector> {
        let mut out = Vec::with_capacity(2 * self.lineality.len() + self.rays.len());
        for l in &self.lineality {
            out.push(l.clone());
            out.push(neg(l));
        }
        out.extend(self.rays.iter().cloned());
        out
    }
}

#[derive(Clone)]
struct Ray {
    v: Vector,
    zeros: Vec<bool>,
}

/// Generators of the cone cut out by `constraints` (each `a` means `a . y >= 0`) in `R^dim`.
pub fn cone_from_inequalities(constraints: &[Vector], dim: usize) -> ConeGenerators {
    let mut lineality: Vec<Vector> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = 0usize;

    for a in constraints {
        if is_zero(a) {
            continue;
        }
        let idx = processed;
        processed += 1;
        for r in rays.iter_mut() {
            r.zeros.push(false);
        }

        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            // The new hyperplane cuts the lineality space: one lineality
            // direction turns into a ray, everything else is projected onto a.y = 0.
            let mut l0 = lineality.swap_remove(pos);
            let mut al0 = dot(a, &l0);
            if al0.is_negative() {
                l0 = neg(&l0);
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let f = dot(a, l) / &al0;
                if !f.is_zero() {
                    *l = axpy(l, &-f, &l0);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / &al0;
                if !f.is_zero() {
                    r.v = axpy(&r.v, &-f, &l0);
                }
                r.zeros[idx] = true;
            }
            let mut zeros = vec![true; processed];
            zeros[idx] = false;
            rays.push(Ray { v: primitive(&l0), zeros });
            continue;
        }

        let vals: Vec<Q> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_positive() {
                plus.push(i);
                next.push(r.clone());
            } else if vals[i].is_zero() {
                let mut r = r.clone();
                r.zeros[idx] = true;
                next.push(r);
            } else {
                minus.push(i);
            }
        }
        for &p in &plus {
            for &m in &minus {
                if !adjacent(&rays, p, m, idx) {
                    continue;
                }
                // (a.r+) r- - (a.r-) r+ lies on the hyperplane and inside the cone.
                let v = axpy(&crate::rational::scale(&rays[m].v, &vals[p]), &-vals[m].clone(), &rays[p].v);
                let zeros: Vec<bool> = rays[p]
                    .zeros
                    .iter()
                    .zip(&rays[m].zeros)
                    .enumerate()
                    .map(|(k, (x, y))| k == idx || (*x && *y))
                    .collect();
                next.push(Ray { v: primitive(&v), zeros });
            }
        }
        rays = next;
    }

    let rays = dedup_directions(rays.into_iter().map(|r| r.v));
    let lineality = lineality.into_iter().map(|l| primitive(&l)).collect();
    ConeGenerators { lineality, rays }
}

fn adjacent(rays: &[Ray], p: usize, m: usize, current: usize) -> bool {
    let common: Vec<usize> = (0..current)
        .filter(|&k| rays[p].zeros[k] && rays[m].zeros[k])
        .collect();
    !rays.iter().enumerate().any(|(i, r)| {
        i != p && i != m && common.iter().all(|&k| r.zeros[k])
    })
}
