//! Polyhedral ordering cones, their duals, and compact bases of dual cones.

use num_traits::{One, Signed};

use crate::dd::cone_from_inequalities;
use crate::error::{check_dim, Error, Result};
use crate::lp::{Cmp, Problem};
use crate::rational::{dedup_directions, dot, fmt_vec, is_zero, nullspace, primitive, rank, scale, zeros, Q, Vector};

/// A finitely generated convex cone `cone(generators)` in `R^dim`.
///
/// An empty generator list is the cone `{0}`. The dual generators are
/// computed once at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderCone {
    dim: usize,
    generators: Vec<Vector>,
    dual_generators: Vec<Vector>,
}

impl OrderCone {
    pub fn new(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for (i, g) in generators.iter().enumerate() {
            check_dim(dim, g.len())?;
            if is_zero(g) {
                return Err(Error::ZeroGenerator(i));
            }
        }
        let generators = dedup_directions(generators);
        let dual_generators = cone_from_inequalities(&generators, dim).all();
        Ok(Self { dim, generators, dual_generators })
    }

    /// The nonnegative orthant `R^dim_+`.
    pub fn orthant(dim: usize) -> Result<Self> {
        Self::new(dim, (0..dim).map(|i| crate::rational::unit(dim, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn dual_generators(&self) -> &[Vector] {
        &self.dual_generators
    }

    /// Membership through the dual description: `v` is in the cone iff it
    /// pairs nonnegatively with every dual generator.
    pub fn contains(&self, v: &[Q]) -> bool {
        self.dual_generators.iter().all(|d| !dot(d, v).is_negative())
    }

    /// Membership in the dual cone: `w` pairs nonnegatively with every generator.
    pub fn dual_contains(&self, w: &[Q]) -> bool {
        self.generators.iter().all(|g| !dot(g, w).is_negative())
    }

    /// True iff the cone contains no line.
    pub fn is_pointed(&self) -> bool {
        rank(&self.dual_generators) == self.dim
    }

    /// A point `x` with `<d, x> >= 1` for every nonzero dual generator `d`,
    /// i.e. a point of the strict-positivity set. `None` if that set is empty.
    pub fn strict_interior_point(&self) -> Option<Vector> {
        if self.dual_generators.is_empty() {
            return Some(zeros(self.dim));
        }
        let mut p = Problem::new(self.dim);
        for v in 0..self.dim {
            p.set_free(v);
        }
        for d in &self.dual_generators {
            p.constrain(d.clone(), Cmp::Ge, Q::one());
        }
        p.feasible_point()
    }
}

/// The positive dual cone `{w : <w, z> >= 0 for all z in cone}`.
pub fn dual_cone(cone: &OrderCone) -> OrderCone {
    OrderCone::new(cone.dim, cone.dual_generators.clone()).expect("dual generators are nonzero and well-dimensioned")
}

/// Exact membership by feasibility of a nonnegative combination of generators.
pub fn in_cone(cone: &OrderCone, v: &[Q]) -> Result<bool> {
    check_dim(cone.dim, v.len())?;
    if is_zero(v) {
        return Ok(true);
    }
    let k = cone.generators.len();
    if k == 0 {
        return Ok(false);
    }
    let mut p = Problem::new(k);
    for i in 0..cone.dim {
        let row: Vector = cone.generators.iter().map(|g| g[i].clone()).collect();
        p.constrain(row, Cmp::Eq, v[i].clone());
    }
    Ok(p.feasible_point().is_some())
}

/// A compact base of a pointed dual cone: every nonzero element of the cone
/// is a positive multiple of a convex combination of `directions`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeBase {
    pub directions: Vec<Vector>,
    /// The functional `c` with `<c, b> = 1` on the base.
    pub normalization: Vector,
}

impl ConeBase {
    /// Writes a nonzero dual element as `lambda * sum(w_i b_i)` with convex weights.
    pub fn decompose(&self, w: &[Q]) -> Option<(Q, Vec<Q>)> {
        let lambda = dot(&self.normalization, w);
        if !lambda.is_positive() {
            return None;
        }
        let target = scale(w, &lambda.recip());
        let k = self.directions.len();
        let mut p = Problem::new(k);
        for i in 0..w.len() {
            let row: Vector = self.directions.iter().map(|b| b[i].clone()).collect();
            p.constrain(row, Cmp::Eq, target[i].clone());
        }
        p.constrain(vec![Q::one(); k], Cmp::Eq, Q::one());
        p.feasible_point().map(|weights| (lambda, weights))
    }
}

/// Builds a compact base of `cone_dual` normalized by the sum of the
/// generators of its predual cone.
pub fn cone_base(cone_dual: &OrderCone) -> Result<ConeBase> {
    if cone_dual.generators.is_empty() {
        return Err(Error::TrivialCone);
    }
    let predual = &cone_dual.dual_generators;
    if rank(predual) < cone_dual.dim {
        let line = nullspace(predual, cone_dual.dim)
            .into_iter()
            .next()
            .expect("rank deficiency yields a nullspace vector");
        return Err(Error::NotPointed { witness: fmt_vec(&primitive(&line)) });
    }
    let sum = predual.iter().fold(zeros(cone_dual.dim), |acc, g| crate::rational::add(&acc, g));
    let c = primitive(&sum);
    let directions = cone_dual
        .generators
        .iter()
        .map(|d| {
            let s = dot(&c, d);
            debug_assert!(s.is_positive());
            scale(d, &s.recip())
        })
        .collect::<Vec<_>>();
    let mut uniq: Vec<Vector> = Vec::new();
    for d in directions {
        if !uniq.contains(&d) {
            uniq.push(d);
        }
    }
    Ok(ConeBase { directions: uniq, normalization: c })
}
