//! Seeded random instances.
//!
//! `G(x) = ∩_k (Q_k - B_k x)` over a box grid, with `B_k >= 0` sharing the
//! columns `b_j` of the descent coordinates `j`, so `G(x + t e_j) = G(x) - t b_j`.
//! `F(y) = P + C y` with `C > 0`, sampled at every vertex of every `G(x)`.
//! Orthant cones throughout.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::OrderCone;
use crate::error::{Error, Result};
use crate::rational::{dedup_points, neg, q, unit, Vector, Q};
use crate::scenario::{cone_dto, from_vector, upper_set_dto, ModeDto, RayDto, Rat, Scenario, SetValuedDto};
use crate::setvalued_fn::{biconjugate_directions, derived_dual_primal_grid, translate};
use crate::upper_sets::{lattice_sup, UpperSet};

pub const MAX_DIM: usize = 3;
pub const MAX_GRID: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub dim_x: usize,
    pub dim_y: usize,
    pub dim_z: usize,
    pub grid_size: usize,
    pub seed: u64,
}

impl GenParams {
    fn validate(&self) -> Result<()> {
        for (name, d) in [("dim_x", self.dim_x), ("dim_y", self.dim_y), ("dim_z", self.dim_z)] {
            if d == 0 || d > MAX_DIM {
                return Err(Error::InvalidParameter(format!("{name} = {d} is outside 1..={MAX_DIM}")));
            }
        }
        if self.grid_size == 0 || self.grid_size > MAX_GRID {
            return Err(Error::InvalidParameter(format!("grid_size = {} is outside 1..={MAX_GRID}", self.grid_size)));
        }
        Ok(())
    }
}

fn box_grid(dim: usize, n: usize) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|p: Vector| (0..n as i64).map(move |v| [p.clone(), vec![q(v)]].concat())).collect();
    }
    out
}

fn rand_vec(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> Vector {
    (0..dim).map(|_| q(rng.gen_range(lo..=hi))).collect()
}

fn rand_set(rng: &mut ChaCha8Rng, cone: &OrderCone) -> Result<UpperSet> {
    let k = rng.gen_range(1..=2);
    let pts = (0..k).map(|_| rand_vec(rng, cone.dim(), -2, 2)).collect();
    UpperSet::new(cone, pts, vec![])
}

/// `M x` for a matrix given by columns.
fn apply(cols: &[Vector], x: &[Q], rows: usize) -> Vector {
    let mut out = vec![q(0); rows];
    for (c, xi) in cols.iter().zip(x) {
        for (o, v) in out.iter_mut().zip(c) {
            *o += v * xi;
        }
    }
    out
}

fn f_values(p: &UpperSet, c: &[Vector], grid: &[Vector], dz: usize) -> Vec<UpperSet> {
    grid.iter().map(|y| translate(p, &apply(c, y, dz))).collect()
}

fn sorted_points(points: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut v = dedup_points(points);
    v.sort();
    v
}

fn finish(mut s: Scenario) -> Result<Scenario> {
    let inst = s.build().map_err(|e| Error::InvalidParameter(format!("generated instance is invalid: {e}")))?;
    s.x_dual_grid = Some(inst.x_dual_grid.iter().map(|v| from_vector(v)).collect());
    if let Ok(base) = &inst.z_base {
        let dirs = biconjugate_directions(&inst.f, base)?;
        s.y_dual_grid = Some(derived_dual_primal_grid(&inst.f, &dirs)?.iter().map(|v| from_vector(v)).collect());
    }
    Ok(s)
}

/// A convex instance satisfying the unbounded-descent hypothesis.
pub fn generate(p: &GenParams) -> Result<Scenario> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (xc, yc, zc) = (OrderCone::orthant(p.dim_x)?, OrderCone::orthant(p.dim_y)?, OrderCone::orthant(p.dim_z)?);

    let mut coords: Vec<usize> = (0..p.dim_x).collect();
    coords.shuffle(&mut rng);
    let descent = &coords[..rng.gen_range(1..=p.dim_x)];
    let shared: Vec<Vector> = (0..p.dim_x).map(|_| rand_vec(&mut rng, p.dim_y, 1, 2)).collect();
    let pieces = rng.gen_range(1..=2);
    let mut qs = Vec::new();
    let mut bs = Vec::new();
    for _ in 0..pieces {
        qs.push(rand_set(&mut rng, &yc)?);
        let cols: Vec<Vector> =
            (0..p.dim_x).map(|j| if descent.contains(&j) { shared[j].clone() } else { rand_vec(&mut rng, p.dim_y, 0, 2) }).collect();
        bs.push(cols);
    }
    let grid = box_grid(p.dim_x, p.grid_size);
    let mut g_values = Vec::with_capacity(grid.len());
    for x in &grid {
        let parts: Vec<UpperSet> = qs.iter().zip(&bs).map(|(qk, b)| translate(qk, &neg(&apply(b, x, p.dim_y)))).collect();
        g_values.push(lattice_sup(&parts)?);
    }

    let pset = rand_set(&mut rng, &zc)?;
    let c: Vec<Vector> = (0..p.dim_y).map(|_| rand_vec(&mut rng, p.dim_z, 1, 2)).collect();
    let f_grid = sorted_points(g_values.iter().flat_map(|v| v.points().to_vec()));
    let f_vals = f_values(&pset, &c, &f_grid, p.dim_z);

    let mut descent_sorted = descent.to_vec();
    descent_sorted.sort();
    let descent_rays: Vec<RayDto> =
        descent_sorted.iter().map(|&j| RayDto { direction: from_vector(&unit(p.dim_x, j)), image: from_vector(&neg(&shared[j])) }).collect();
    let mut f_dirs: Vec<Vector> = (0..p.dim_y).map(|i| unit(p.dim_y, i)).collect();
    for &j in &descent_sorted {
        let d = neg(&shared[j]);
        if !f_dirs.iter().any(|e| crate::rational::primitive(e) == crate::rational::primitive(&d)) {
            f_dirs.push(d);
        }
    }
    let ray_images = f_dirs.iter().map(|d| RayDto { direction: from_vector(d), image: from_vector(&apply(&c, d, p.dim_z)) }).collect();

    finish(Scenario {
        name: Some(format!("generated {}x{}x{} grid {} seed {}", p.dim_x, p.dim_y, p.dim_z, p.grid_size, p.seed)),
        g: SetValuedDto { primal_grid: grid.iter().map(|v| from_vector(v)).collect(), values: g_values.iter().map(upper_set_dto).collect(), ambient_primal_cone: None },
        f: SetValuedDto { primal_grid: f_grid.iter().map(|v| from_vector(v)).collect(), values: f_vals.iter().map(upper_set_dto).collect(), ambient_primal_cone: None },
        y_cone: cone_dto(&yc),
        z_cone: cone_dto(&zc),
        x_cone: Some(cone_dto(&xc)),
        x_dual_grid: None,
        y_dual_grid: None,
        lambda_grid: Some(crate::composition::DEFAULT_LAMBDAS.iter().map(|&(n, d)| Rat(crate::rational::qr(n, d))).collect()),
        assumption_mode: ModeDto::A,
        descent_rays,
        ray_images,
    })
}

/// A control instance: `G(x) = Q + u(x)` with independent random shifts, so
/// `G` is generally neither convex nor decreasing, and no descent rays.
pub fn generate_control(p: &GenParams) -> Result<Scenario> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x5eed_c0de);
    let (xc, yc, zc) = (OrderCone::orthant(p.dim_x)?, OrderCone::orthant(p.dim_y)?, OrderCone::orthant(p.dim_z)?);
    let qset = rand_set(&mut rng, &yc)?;
    let grid = box_grid(p.dim_x, p.grid_size);
    let g_values: Vec<UpperSet> = grid.iter().map(|_| translate(&qset, &rand_vec(&mut rng, p.dim_y, -2, 2))).collect();
    let pset = rand_set(&mut rng, &zc)?;
    let c: Vec<Vector> = (0..p.dim_y).map(|_| rand_vec(&mut rng, p.dim_z, 1, 2)).collect();
    let f_grid = sorted_points(g_values.iter().flat_map(|v| v.points().to_vec()));
    let f_vals = f_values(&pset, &c, &f_grid, p.dim_z);
    let ray_images =
        (0..p.dim_y).map(|i| RayDto { direction: from_vector(&unit(p.dim_y, i)), image: from_vector(&apply(&c, &unit(p.dim_y, i), p.dim_z)) }).collect();
    finish(Scenario {
        name: Some(format!("control {}x{}x{} grid {} seed {}", p.dim_x, p.dim_y, p.dim_z, p.grid_size, p.seed)),
        g: SetValuedDto { primal_grid: grid.iter().map(|v| from_vector(v)).collect(), values: g_values.iter().map(upper_set_dto).collect(), ambient_primal_cone: None },
        f: SetValuedDto { primal_grid: f_grid.iter().map(|v| from_vector(v)).collect(), values: f_vals.iter().map(upper_set_dto).collect(), ambient_primal_cone: None },
        y_cone: cone_dto(&yc),
        z_cone: cone_dto(&zc),
        x_cone: Some(cone_dto(&xc)),
        x_dual_grid: None,
        y_dual_grid: None,
        lambda_grid: None,
        assumption_mode: ModeDto::A,
        descent_rays: vec![],
        ray_images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: usize, n: usize, seed: u64) -> GenParams {
        GenParams { dim_x: d, dim_y: d, dim_z: d, grid_size: n, seed }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(generate(&params(4, 3, 0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(generate(&params(1, 8, 0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(generate(&params(0, 3, 0)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(&params(1, 3, 42)).unwrap().to_json();
        let b = generate(&params(1, 3, 42)).unwrap().to_json();
        assert_eq!(a, b);
        assert_ne!(a, generate(&params(1, 3, 43)).unwrap().to_json());
    }

    #[test]
    fn generated_instance_satisfies_hypotheses() {
        for seed in 0..4 {
            let inst = generate(&params(2, 2, seed)).unwrap().build().unwrap();
            let h = inst.hypotheses();
            assert!(h.g_convex && h.f_convex && h.composed_convex, "seed {seed}");
            assert!(h.assumptions.satisfied(), "seed {seed}");
        }
    }

    #[test]
    fn box_grid_enumerates() {
        assert_eq!(box_grid(2, 2).len(), 4);
        assert_eq!(box_grid(3, 3)[5], vec![q(0), q(1), q(2)]);
    }
}
