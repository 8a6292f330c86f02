//! Extended-real functions sampled on a finite grid, optionally extended
//! affinely along declared rays, with exact discrete conjugation.
//!
//! A ray `(d, s)` extends the function to `x + t d` (t >= 0) by
//! `rho(x + t d) = rho(x) + t s`. Rays let grid data describe functions with
//! unbounded domains, which matters whenever a conjugate is `+inf` because of
//! unbounded descent rather than because of the grid edge.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::lp::{Cmp, LpOutcome, Problem};
use crate::rational::{dot, fmt_vec, qr, sub, ExtReal, Q, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarRay {
    pub direction: Vector,
    pub slope: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtScalarFn {
    dim: usize,
    grid: Vec<Vector>,
    values: Vec<ExtReal>,
    rays: Vec<ScalarRay>,
}

impl ExtScalarFn {
    pub fn new(dim: usize, grid: Vec<Vector>, values: Vec<ExtReal>) -> Result<Self> {
        Self::with_rays(dim, grid, values, Vec::new())
    }

    pub fn with_rays(dim: usize, grid: Vec<Vector>, values: Vec<ExtReal>, rays: Vec<ScalarRay>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::LengthMismatch(format!("{} grid points, {} values", grid.len(), values.len())));
        }
        for (i, x) in grid.iter().enumerate() {
            check_dim(dim, x.len())?;
            if grid[..i].contains(x) {
                return Err(Error::DuplicateGridPoint(fmt_vec(x)));
            }
        }
        for r in &rays {
            check_dim(dim, r.direction.len())?;
            if r.direction.iter().all(Zero::is_zero) {
                return Err(Error::InconsistentRay("zero ray direction".into()));
            }
        }
        let f = Self { dim, grid, values, rays };
        f.check_ray_consistency()?;
        Ok(f)
    }

    /// For data already known to respect the rays, e.g. scalarizations of a
    /// validated set-valued function.
    pub(crate) fn from_parts_unchecked(dim: usize, grid: Vec<Vector>, values: Vec<ExtReal>, rays: Vec<ScalarRay>) -> Self {
        Self { dim, grid, values, rays }
    }

    /// Every pair of grid points joined by a positive step along a declared
    /// ray must carry values related by that ray's slope.
    fn check_ray_consistency(&self) -> Result<()> {
        for r in &self.rays {
            for (i, x) in self.grid.iter().enumerate() {
                for (j, y) in self.grid.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let Some(t) = step_along(x, y, &r.direction) else { continue };
                    let expected = self.values[i].add_q(&(&t * &r.slope));
                    if expected != self.values[j] {
                        return Err(Error::InconsistentRay(format!(
                            "value at {} is {}, but the ray {} from {} predicts {}",
                            fmt_vec(y),
                            self.values[j],
                            fmt_vec(&r.direction),
                            fmt_vec(x),
                            expected
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid(&self) -> &[Vector] {
        &self.grid
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn rays(&self) -> &[ScalarRay] {
        &self.rays
    }

    pub fn index_of(&self, x: &[Q]) -> Option<usize> {
        self.grid.iter().position(|g| g.as_slice() == x)
    }

    pub fn value(&self, x: &[Q]) -> Result<&ExtReal> {
        self.index_of(x).map(|i| &self.values[i]).ok_or_else(|| Error::OffGrid(fmt_vec(x)))
    }

    /// Indices of grid points with value below `+inf`.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.grid.len()).filter(|&i| self.values[i] != ExtReal::PosInf).collect()
    }

    /// Discrete convexity: `rho(m) <= (rho(a) + rho(b)) / 2` whenever the
    /// midpoint `m` of two grid points is itself a grid point. Returns the
    /// first violating triple `(a, b, m)`.
    pub fn midpoint_convexity_violation(&self) -> Option<(Vector, Vector, Vector)> {
        let half = qr(1, 2);
        for i in 0..self.grid.len() {
            for j in i + 1..self.grid.len() {
                let m: Vector = self.grid[i].iter().zip(&self.grid[j]).map(|(a, b)| (a + b) * &half).collect();
                let Some(k) = self.index_of(&m) else { continue };
                let rhs = self.values[i].add_upper(&self.values[j]);
                let rhs = match rhs {
                    ExtReal::Finite(v) => ExtReal::Finite(v * &half),
                    other => other,
                };
                if self.values[k] > rhs {
                    return Some((self.grid[i].clone(), self.grid[j].clone(), m));
                }
            }
        }
        None
    }
}

/// `t > 0` with `y = x + t d`, if it exists.
pub(crate) fn step_along(x: &[Q], y: &[Q], d: &[Q]) -> Option<Q> {
    let diff = sub(y, x);
    let k = d.iter().position(|v| !v.is_zero())?;
    let t = &diff[k] / &d[k];
    if !t.is_positive() {
        return None;
    }
    if diff.iter().zip(d).all(|(a, b)| *a == &t * b) {
        Some(t)
    } else {
        None
    }
}

/// `sup_x <xstar, x> - rho(x)` over the grid and its ray extension.
pub fn conjugate(rho: &ExtScalarFn, xstar: &[Q]) -> Result<ExtReal> {
    check_dim(rho.dim, xstar.len())?;
    if rho.values.contains(&ExtReal::NegInf) {
        return Ok(ExtReal::PosInf);
    }
    let dom = rho.domain();
    if dom.is_empty() {
        return Ok(ExtReal::NegInf);
    }
    if rho.rays.iter().any(|r| dot(xstar, &r.direction) > r.slope) {
        return Ok(ExtReal::PosInf);
    }
    let best = dom
        .iter()
        .map(|&i| dot(xstar, &rho.grid[i]) - rho.values[i].finite().expect("domain values are finite"))
        .max()
        .expect("nonempty domain");
    Ok(ExtReal::Finite(best))
}

/// `sup_{x* in dual_grid} <x*, x> - rho*(x*)` at a grid point `x`.
pub fn biconjugate(rho: &ExtScalarFn, dual_grid: &[Vector], x: &[Q]) -> Result<ExtReal> {
    rho.index_of(x).ok_or_else(|| Error::OffGrid(fmt_vec(x)))?;
    if dual_grid.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut best = ExtReal::NegInf;
    for xs in dual_grid {
        let term = (-conjugate(rho, xs)?).add_q(&dot(xs, x));
        best = best.max(term);
    }
    Ok(best)
}

/// True iff some value is below `+inf` and none is `-inf`.
pub fn is_proper(rho: &ExtScalarFn) -> bool {
    rho.values.iter().any(|v| *v != ExtReal::PosInf) && rho.values.iter().all(|v| *v != ExtReal::NegInf)
}

/// `max_x rho(x) - rho**(x)` over the grid; equal infinities count as zero gap.
pub fn fenchel_moreau_gap(rho: &ExtScalarFn, dual_grid: &[Vector]) -> Result<ExtReal> {
    let mut worst = ExtReal::zero();
    for (i, x) in rho.grid.iter().enumerate() {
        let bi = biconjugate(rho, dual_grid, x)?;
        worst = worst.max(rho.values[i].gap_from(&bi));
    }
    Ok(worst)
}

/// A slope `x*` attaining the closed convex envelope of `rho` at the grid point
/// `x0`, together with the envelope value there. `None` when the envelope is
/// `+inf` at `x0` or `rho` takes the value `-inf`.
pub fn supporting_slope(rho: &ExtScalarFn, x0: &[Q]) -> Result<Option<(Vector, Q)>> {
    rho.index_of(x0).ok_or_else(|| Error::OffGrid(fmt_vec(x0)))?;
    if !is_proper(rho) {
        return Ok(None);
    }
    // Variables (x*, c): maximize <x*, x0> - c with c >= <x*, x> - rho(x) on
    // the domain and <x*, d> <= s along every ray.
    let n = rho.dim;
    let mut p = Problem::new(n + 1);
    for v in 0..=n {
        p.set_free(v);
    }
    for i in rho.domain() {
        let mut row: Vector = rho.grid[i].iter().map(|v| -v).collect();
        row.push(Q::one());
        let val = rho.values[i].finite().unwrap();
        p.constrain(row, Cmp::Ge, -val.clone());
    }
    for r in &rho.rays {
        let mut row = r.direction.clone();
        row.push(Q::zero());
        p.constrain(row, Cmp::Le, r.slope.clone());
    }
    let mut obj: Vector = x0.iter().map(|v| -v).collect();
    obj.push(Q::one());
    p.minimize(obj);
    Ok(match p.solve() {
        LpOutcome::Optimal { x, value } => Some((x[..n].to_vec(), -value)),
        _ => None,
    })
}

/// Slopes supporting the envelope at every domain point; a dual grid on which
/// the discrete biconjugate recovers the envelope.
pub fn slope_dual_grid(rho: &ExtScalarFn) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for i in rho.domain() {
        if let Ok(Some((s, _))) = supporting_slope(rho, &rho.grid[i]) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}
