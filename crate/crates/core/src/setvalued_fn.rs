//! Set-valued functions from a finite grid into upper sets, extended along
//! declared translation rays, with scalarization, inverses, diagnostics and
//! set-valued conjugation.
//!
//! A ray `(d, w)` extends the function by `R(x + t d) = R(x) + t w` for
//! `t >= 0`. Grid data must be consistent with every declared ray.

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cones::{in_cone, ConeBase, OrderCone};
use crate::error::{check_dim, Error, Result};
use crate::rational::{add, axpy, dedup_directions, dedup_points, dot, fmt_vec, is_zero, q, qr, scale, sub, ExtReal, Q, Vector};
use crate::report::{ReportEntry, Status};
use crate::scalar_fn::{self, step_along, ExtScalarFn, ScalarRay};
use crate::upper_sets::{self, add_cone, halfspace_set, is_subset, lattice_inf, minkowski_sum, Halfspace, Kind, UpperSet};

/// A translation ray of a set-valued function: moving the argument by `t * direction`
/// translates the value by `t * image`.
#[derive(Clone, Debug, PartialEq)]
pub struct SetRay {
    pub direction: Vector,
    pub image: Vector,
}

#[derive(Clone, Debug)]
pub struct SetValuedFn {
    primal_grid: Vec<Vector>,
    values: Vec<UpperSet>,
    ambient: OrderCone,
    primal_cone: Option<OrderCone>,
    rays: Vec<SetRay>,
    primal_dim: usize,
}

impl SetValuedFn {
    pub fn new(
        primal_dim: usize,
        primal_grid: Vec<Vector>,
        values: Vec<UpperSet>,
        ambient: OrderCone,
        primal_cone: Option<OrderCone>,
        rays: Vec<SetRay>,
    ) -> Result<Self> {
        if primal_grid.len() != values.len() {
            return Err(Error::LengthMismatch(format!("{} grid points, {} values", primal_grid.len(), values.len())));
        }
        for (i, x) in primal_grid.iter().enumerate() {
            check_dim(primal_dim, x.len())?;
            if primal_grid[..i].contains(x) {
                return Err(Error::DuplicateGridPoint(fmt_vec(x)));
            }
        }
        for v in &values {
            if v.ambient() != &ambient {
                return Err(Error::AmbientMismatch);
            }
        }
        if let Some(c) = &primal_cone {
            check_dim(primal_dim, c.dim())?;
        }
        for r in &rays {
            check_dim(primal_dim, r.direction.len())?;
            check_dim(ambient.dim(), r.image.len())?;
            if is_zero(&r.direction) {
                return Err(Error::InconsistentRay("zero ray direction".into()));
            }
        }
        let f = Self { primal_grid, values, ambient, primal_cone, rays, primal_dim };
        f.check_ray_consistency()?;
        Ok(f)
    }

    fn check_ray_consistency(&self) -> Result<()> {
        let probes = self.probe_directions();
        for r in &self.rays {
            for (i, x) in self.primal_grid.iter().enumerate() {
                for (j, y) in self.primal_grid.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let Some(t) = step_along(x, y, &r.direction) else { continue };
                    let moved = translate(&self.values[i], &scale(&r.image, &t));
                    if !upper_sets::set_equal(&moved, &self.values[j], &probes)? {
                        return Err(Error::InconsistentRay(format!(
                            "value at {} is not the value at {} translated along the ray {}",
                            fmt_vec(y),
                            fmt_vec(x),
                            fmt_vec(&r.direction)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn primal_dim(&self) -> usize {
        self.primal_dim
    }

    pub fn grid(&self) -> &[Vector] {
        &self.primal_grid
    }

    pub fn values(&self) -> &[UpperSet] {
        &self.values
    }

    pub fn ambient(&self) -> &OrderCone {
        &self.ambient
    }

    pub fn primal_cone(&self) -> Option<&OrderCone> {
        self.primal_cone.as_ref()
    }

    pub fn rays(&self) -> &[SetRay] {
        &self.rays
    }

    pub fn index_of(&self, x: &[Q]) -> Option<usize> {
        self.primal_grid.iter().position(|g| g.as_slice() == x)
    }

    pub fn value(&self, x: &[Q]) -> Result<&UpperSet> {
        self.index_of(x).map(|i| &self.values[i]).ok_or_else(|| Error::OffGrid(fmt_vec(x)))
    }

    /// Grid points with nonempty value.
    pub fn domain(&self) -> Vec<&Vector> {
        self.primal_grid.iter().zip(&self.values).filter(|(_, v)| !v.is_empty()).map(|(x, _)| x).collect()
    }

    /// Dual probes: dual generators of the ambient cone, their sum, and every
    /// facet normal of every value.
    pub fn probe_directions(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = self.ambient.dual_generators().to_vec();
        if !out.is_empty() {
            let sum = out.iter().skip(1).fold(out[0].clone(), |acc, d| add(&acc, d));
            out.push(sum);
        }
        for v in &self.values {
            out.extend(v.hrep().iter().map(|h| h.normal.clone()));
        }
        let mut out = dedup_directions(out);
        if out.is_empty() {
            out.push(crate::rational::unit(self.ambient.dim(), 0));
        }
        out
    }
}

/// `A + v`.
pub fn translate(a: &UpperSet, v: &[Q]) -> UpperSet {
    if a.kind() != Kind::Proper {
        return a.clone();
    }
    let shifted: Vec<Vector> = a.points().iter().map(|p| add(p, v)).collect();
    UpperSet::new(a.ambient(), shifted, a.rays().to_vec()).expect("dimensions already checked")
}

/// The scalarization `x -> support(R(x), zstar)`, with rays carried over as slopes.
pub fn scalarize(r: &SetValuedFn, zstar: &[Q]) -> Result<ExtScalarFn> {
    check_dim(r.ambient.dim(), zstar.len())?;
    let values = r.values.iter().map(|v| upper_sets::support(v, zstar)).collect::<Result<Vec<_>>>()?;
    let rays = r
        .rays
        .iter()
        .map(|ray| ScalarRay { direction: ray.direction.clone(), slope: dot(zstar, &ray.image) })
        .collect();
    // Supports shift by <z*, w> under translation by w, so consistency carries over.
    Ok(ExtScalarFn::from_parts_unchecked(r.primal_dim, r.primal_grid.clone(), values, rays))
}

/// Grid points whose value contains `z`.
pub fn inverse(r: &SetValuedFn, z: &[Q]) -> Result<Vec<Vector>> {
    check_dim(r.ambient.dim(), z.len())?;
    let mut out = Vec::new();
    for (x, v) in r.primal_grid.iter().zip(&r.values) {
        if upper_sets::contains(v, z)? {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// First pair `x1 <= x2` with `R(x1) ⊄ R(x2)`; declared rays along the primal
/// cone are checked as well (`x2 = x1 + d`).
pub fn decreasing_violation(r: &SetValuedFn) -> Result<Option<(Vector, Vector)>> {
    let cone = r.primal_cone.as_ref().ok_or(Error::MissingPrimalCone)?;
    for (i, x1) in r.primal_grid.iter().enumerate() {
        for (j, x2) in r.primal_grid.iter().enumerate() {
            if i == j || !in_cone(cone, &sub(x2, x1))? {
                continue;
            }
            if !is_subset(&r.values[i], &r.values[j])? {
                return Ok(Some((x1.clone(), x2.clone())));
            }
        }
    }
    for ray in &r.rays {
        if !in_cone(cone, &ray.direction)? {
            continue;
        }
        for (x, v) in r.primal_grid.iter().zip(&r.values) {
            if !is_subset(v, &translate(v, &ray.image))? {
                return Ok(Some((x.clone(), add(x, &ray.direction))));
            }
        }
    }
    Ok(None)
}

pub fn is_decreasing(r: &SetValuedFn) -> Result<bool> {
    Ok(decreasing_violation(r)?.is_none())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityReport {
    pub convex: bool,
    /// Midpoint-closed grid pairs examined; zero means the check was vacuous.
    pub pairs_checked: usize,
    /// `(x1, x2, z1, z2)` with `(z1 + z2) / 2` outside `R((x1 + x2) / 2)`.
    pub witness: Option<(Vector, Vector, Vector, Vector)>,
    /// Every probe scalarization passes the discrete midpoint test.
    pub scalarizations_convex: bool,
}

/// Sampled midpoint test of graph convexity. Up to `samples` midpoint-closed
/// grid pairs are drawn (all of them if there are fewer); for each pair every
/// combination of vertices, and of vertices pushed along recession rays, is tested.
pub fn convexity_report(r: &SetValuedFn, samples: usize, seed: u64) -> Result<ConvexityReport> {
    let half = qr(1, 2);
    let mut pairs = Vec::new();
    for i in 0..r.primal_grid.len() {
        for j in i + 1..r.primal_grid.len() {
            let m: Vector = r.primal_grid[i].iter().zip(&r.primal_grid[j]).map(|(a, b)| (a + b) * &half).collect();
            if let Some(k) = r.index_of(&m) {
                pairs.push((i, j, k));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(samples.max(1));
    let mut report = ConvexityReport { convex: true, pairs_checked: pairs.len(), witness: None, scalarizations_convex: true };
    'pairs: for &(i, j, k) in &pairs {
        let (a, b, m) = (&r.values[i], &r.values[j], &r.values[k]);
        if a.is_empty() || b.is_empty() || m.is_full() {
            continue;
        }
        let sa = sample_members(a);
        let sb = sample_members(b);
        for z1 in &sa {
            for z2 in &sb {
                let mid: Vector = z1.iter().zip(z2).map(|(u, v)| (u + v) * &half).collect();
                if !m.satisfies_hrep(&mid) {
                    report.convex = false;
                    report.witness = Some((r.primal_grid[i].clone(), r.primal_grid[j].clone(), z1.clone(), z2.clone()));
                    break 'pairs;
                }
            }
        }
    }
    for z in r.probe_directions() {
        if scalarize(r, &z)?.midpoint_convexity_violation().is_some() {
            report.scalarizations_convex = false;
        }
    }
    Ok(report)
}

/// Vertices, and vertices moved a unit step along each recession generator.
fn sample_members(a: &UpperSet) -> Vec<Vector> {
    if a.is_full() {
        return Vec::new();
    }
    let mut out = a.points().to_vec();
    for p in a.points() {
        for ray in a.rays() {
            out.push(add(p, ray));
        }
    }
    dedup_points(out)
}

pub fn is_convex_graph(r: &SetValuedFn, samples: usize, seed: u64) -> Result<bool> {
    Ok(convexity_report(r, samples, seed)?.convex)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProperReport {
    pub proper: bool,
    /// A dual direction with proper scalarization, if one exists among the probes.
    pub scalar_witness: Option<Vector>,
}

impl ProperReport {
    /// Properness agrees with existence of a proper scalarization.
    pub fn consistent(&self) -> bool {
        self.proper == self.scalar_witness.is_some()
    }
}

pub fn proper_report(r: &SetValuedFn) -> Result<ProperReport> {
    let proper = r.values.iter().any(|v| !v.is_empty()) && !r.values.iter().any(UpperSet::is_full);
    let mut scalar_witness = None;
    for z in r.probe_directions() {
        if !r.ambient.dual_contains(&z) {
            continue;
        }
        if scalar_fn::is_proper(&scalarize(r, &z)?) {
            scalar_witness = Some(z);
            break;
        }
    }
    Ok(ProperReport { proper, scalar_witness })
}

pub fn is_proper_sv(r: &SetValuedFn) -> bool {
    r.values.iter().any(|v| !v.is_empty()) && !r.values.iter().any(UpperSet::is_full)
}

/// Base directions along which the scalarization is proper.
pub fn proper_direction_cone(r: &SetValuedFn, base: &ConeBase) -> Result<Vec<Vector>> {
    let mut out = Vec::new();
    for d in &base.directions {
        if scalar_fn::is_proper(&scalarize(r, d)?) {
            out.push(d.clone());
        }
    }
    Ok(out)
}

/// `-R*(x*, z*)` stored as the level of the halfspace `{<z*, z> >= level}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateRadius {
    pub xstar: Vector,
    pub zstar: Vector,
    pub level: ExtReal,
}

impl ConjugateRadius {
    pub fn to_set(&self, ambient: &OrderCone) -> UpperSet {
        level_set(ambient, &self.zstar, &self.level)
    }
}

fn level_set(ambient: &OrderCone, zstar: &[Q], level: &ExtReal) -> UpperSet {
    match level {
        ExtReal::PosInf => UpperSet::empty(ambient),
        ExtReal::NegInf => UpperSet::full(ambient),
        ExtReal::Finite(l) => halfspace_set(ambient, zstar.to_vec(), l.clone()).expect("dimension checked"),
    }
}

fn check_dual_direction(r: &SetValuedFn, zstar: &[Q]) -> Result<()> {
    check_dim(r.ambient.dim(), zstar.len())?;
    if is_zero(zstar) || !r.ambient.dual_contains(zstar) {
        return Err(Error::BadDirection(fmt_vec(zstar)));
    }
    Ok(())
}

/// The conjugate through the scalarization: level `-conj(phi_{R,z*})(x*)`.
pub fn set_conjugate(r: &SetValuedFn, xstar: &[Q], zstar: &[Q]) -> Result<ConjugateRadius> {
    check_dual_direction(r, zstar)?;
    check_dim(r.primal_dim, xstar.len())?;
    let level = -scalar_fn::conjugate(&scalarize(r, zstar)?, xstar)?;
    Ok(ConjugateRadius { xstar: xstar.to_vec(), zstar: zstar.to_vec(), level })
}

/// The conjugate from its definition: the closed convex hull of the union of
/// `R(x) + H(z*, -<x*, x>)` over the grid, plus the cone swept out along the rays.
pub fn set_conjugate_direct(r: &SetValuedFn, xstar: &[Q], zstar: &[Q]) -> Result<UpperSet> {
    check_dual_direction(r, zstar)?;
    check_dim(r.primal_dim, xstar.len())?;
    let mut parts = Vec::with_capacity(r.primal_grid.len());
    for (x, v) in r.primal_grid.iter().zip(&r.values) {
        let h = halfspace_set(&r.ambient, zstar.to_vec(), -dot(xstar, x))?;
        parts.push(minkowski_sum(v, &h)?);
    }
    let base = lattice_inf(&parts)?;
    let zz = dot(zstar, zstar);
    let sweeps: Vec<Vector> = r
        .rays
        .iter()
        .map(|ray| axpy(&ray.image, &-(dot(xstar, &ray.direction) / &zz), zstar))
        .collect();
    Ok(add_cone(&base, &sweeps))
}

/// The dual directions used to intersect conjugate halfspaces: those among
/// the base directions and the base-normalized facet normals of the values
/// whose scalarization is proper. If none is proper, every candidate is used.
pub fn biconjugate_directions(r: &SetValuedFn, base: &ConeBase) -> Result<Vec<Vector>> {
    let mut candidates = base.directions.clone();
    for v in &r.values {
        for h in v.hrep() {
            let s = dot(&base.normalization, &h.normal);
            if s.is_positive() && r.ambient.dual_contains(&h.normal) {
                candidates.push(scale(&h.normal, &s.recip()));
            }
        }
    }
    let candidates = dedup_points(candidates);
    let mut proper = Vec::new();
    for z in &candidates {
        if scalar_fn::is_proper(&scalarize(r, z)?) {
            proper.push(z.clone());
        }
    }
    Ok(if proper.is_empty() { candidates } else { proper })
}

/// Slopes supporting every proper direction's scalarization at every domain
/// point: a primal dual grid rich enough for biconjugate recovery.
pub fn derived_dual_primal_grid(r: &SetValuedFn, directions: &[Vector]) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::new();
    for z in directions {
        let phi = scalarize(r, z)?;
        for s in scalar_fn::slope_dual_grid(&phi) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    if out.is_empty() {
        out.push(vec![Q::zero(); r.primal_dim]);
    }
    Ok(out)
}

/// The intersection of `H(z*, <x*, x> + level(x*, z*))` over the dual grid and
/// the proper directions.
pub fn set_biconjugate(r: &SetValuedFn, x: &[Q], dual_primal_grid: &[Vector], base: &ConeBase) -> Result<UpperSet> {
    r.index_of(x).ok_or_else(|| Error::OffGrid(fmt_vec(x)))?;
    let dirs = biconjugate_directions(r, base)?;
    let mut hs: Vec<Halfspace> = Vec::new();
    for z in &dirs {
        let phi = scalarize(r, z)?;
        for xs in dual_primal_grid {
            let level = (-scalar_fn::conjugate(&phi, xs)?).add_q(&dot(xs, x));
            match level {
                ExtReal::PosInf => return Ok(UpperSet::empty(&r.ambient)),
                ExtReal::NegInf => {}
                ExtReal::Finite(l) => hs.push(Halfspace::new(z.clone(), l)),
            }
        }
    }
    if hs.is_empty() {
        return Ok(UpperSet::full(&r.ambient));
    }
    UpperSet::from_halfspaces(&r.ambient, &hs)
}

/// Biconjugate recovery `R(x) = R**(x)` at every grid point.
pub fn sv_fenchel_moreau_check(r: &SetValuedFn, dual_primal_grid: &[Vector], base: &ConeBase, label: &str) -> Result<Vec<ReportEntry>> {
    let probes = r.probe_directions();
    let mut out = Vec::new();
    for (x, v) in r.primal_grid.iter().zip(&r.values) {
        let bi = set_biconjugate(r, x, dual_primal_grid, base)?;
        let sep = upper_sets::separating_probe(v, &bi, &probes)?;
        let inputs = format!("{label} x={}", fmt_vec(x));
        let entry = ReportEntry::new("fm_setvalued", inputs, if sep.is_none() { Status::Pass } else { Status::Fail }).values(v, &bi);
        out.push(match sep {
            None => entry,
            Some(z) => {
                let lhs = upper_sets::support(v, &z)?;
                let rhs = upper_sets::support(&bi, &z)?;
                entry.witness(format!("support at {} is {} for R(x) but {} for R**(x)", fmt_vec(&z), lhs, rhs))
            }
        });
    }
    Ok(out)
}

/// Membership points used to probe inverses: vertices of all values, those
/// vertices moved along recession rays, and small integer points.
fn inverse_probes(r: &SetValuedFn) -> Vec<Vector> {
    let mut out = Vec::new();
    for v in &r.values {
        for p in v.points() {
            out.push(p.clone());
            for ray in v.rays() {
                out.push(axpy(p, &q(2), ray));
                out.push(axpy(p, &-q(1), ray));
            }
        }
    }
    let n = r.ambient.dim();
    for k in -2..=2 {
        out.push(vec![q(k); n]);
    }
    dedup_points(out)
}

/// Outcome of the two equivalences relating monotonicity of `R` and of its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseMonotonicity {
    /// Every value is closed under adding ambient generators.
    pub values_monotone: bool,
    /// `z1 <= z2` implies `inverse(z1) ⊆ inverse(z2)` on the probes.
    pub inverse_decreasing: bool,
    /// `R` is decreasing on the grid.
    pub decreasing: bool,
    /// Every probed `inverse(z)` is an upper set of the grid order.
    pub inverses_upper: bool,
}

impl InverseMonotonicity {
    pub fn holds(&self) -> bool {
        self.values_monotone == self.inverse_decreasing && self.decreasing == self.inverses_upper
    }
}

pub fn inverse_monotonicity(r: &SetValuedFn) -> Result<InverseMonotonicity> {
    let cone = r.primal_cone.as_ref().ok_or(Error::MissingPrimalCone)?;
    let gens = r.ambient.generators();
    let mut values_monotone = true;
    for v in &r.values {
        for p in v.points() {
            for g in gens {
                if !upper_sets::contains(v, &add(p, g))? {
                    values_monotone = false;
                }
            }
        }
    }
    let probes = inverse_probes(r);
    let inverses: Vec<Vec<Vector>> = probes.iter().map(|z| inverse(r, z)).collect::<Result<_>>()?;
    let mut inverse_decreasing = true;
    for (z, inv) in probes.iter().zip(&inverses) {
        for g in gens {
            let bigger = inverse(r, &add(z, g))?;
            if !inv.iter().all(|x| bigger.contains(x)) {
                inverse_decreasing = false;
            }
        }
    }
    let decreasing = decreasing_violation(r)?.is_none();
    let mut inverses_upper = true;
    for inv in &inverses {
        for x1 in inv {
            for x2 in &r.primal_grid {
                if !inv.contains(x2) && in_cone(cone, &sub(x2, x1))? {
                    inverses_upper = false;
                }
            }
        }
    }
    Ok(InverseMonotonicity { values_monotone, inverse_decreasing, decreasing, inverses_upper })
}

/// `x ∈ inverse(R, z)` iff `z ∈ R(x)`, on the probe points; returns a disagreeing pair.
pub fn inverse_roundtrip_violation(r: &SetValuedFn) -> Result<Option<(Vector, Vector)>> {
    for z in inverse_probes(r) {
        let inv = inverse(r, &z)?;
        for (x, v) in r.primal_grid.iter().zip(&r.values) {
            if inv.contains(x) != v.satisfies_hrep(&z) {
                return Ok(Some((x.clone(), z)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::cone_base;
    use crate::rational::qvec;

    fn line() -> Vec<Vector> {
        (-1..=1).map(|v| qvec(&[v])).collect()
    }

    fn r1() -> OrderCone {
        OrderCone::orthant(1).unwrap()
    }

    /// `x -> [f(x), inf)` on {-1, 0, 1}.
    fn halflines(f: impl Fn(i64) -> i64, rays: Vec<SetRay>) -> SetValuedFn {
        let c = r1();
        let values = (-1..=1).map(|x| UpperSet::translate(&c, qvec(&[f(x)])).unwrap()).collect();
        SetValuedFn::new(1, line(), values, c.clone(), Some(r1()), rays).unwrap()
    }

    fn fin(v: i64) -> ExtReal {
        ExtReal::Finite(q(v))
    }

    #[test]
    fn scalarize_examples() {
        let c = r1();
        let empty = SetValuedFn::new(1, line(), vec![UpperSet::empty(&c); 3], c.clone(), None, vec![]).unwrap();
        let phi = scalarize(&empty, &qvec(&[1])).unwrap();
        assert!(phi.values().iter().all(|v| *v == ExtReal::PosInf));

        let g = halflines(|x| -x, vec![]);
        let phi = scalarize(&g, &qvec(&[1])).unwrap();
        assert_eq!(phi.values(), &[fin(1), fin(0), fin(-1)]);

        let k = halflines(|_| 0, vec![]);
        let phi = scalarize(&k, &qvec(&[-1])).unwrap();
        assert!(phi.values().iter().all(|v| *v == ExtReal::NegInf));
    }

    #[test]
    fn inverse_examples() {
        let g = halflines(|x| -x, vec![]);
        assert_eq!(inverse(&g, &qvec(&[0])).unwrap(), vec![qvec(&[0]), qvec(&[1])]);
        assert_eq!(inverse(&g, &qvec(&[10])).unwrap(), line());
        let c = r1();
        let empty = SetValuedFn::new(1, line(), vec![UpperSet::empty(&c); 3], c.clone(), None, vec![]).unwrap();
        assert!(inverse(&empty, &qvec(&[0])).unwrap().is_empty());
    }

    #[test]
    fn decreasing_examples() {
        assert!(is_decreasing(&halflines(|x| -x, vec![])).unwrap());
        assert!(is_decreasing(&halflines(|_| 3, vec![])).unwrap());
        let inc = halflines(|x| x, vec![]);
        assert_eq!(decreasing_violation(&inc).unwrap(), Some((qvec(&[-1]), qvec(&[0]))));
        let c = r1();
        let no_cone = SetValuedFn::new(1, line(), vec![UpperSet::translate(&c, qvec(&[0])).unwrap(); 3], c, None, vec![]).unwrap();
        assert_eq!(is_decreasing(&no_cone), Err(Error::MissingPrimalCone));
    }

    #[test]
    fn convexity_examples() {
        assert!(is_convex_graph(&halflines(|_| 2, vec![]), 10, 1).unwrap());
        assert!(is_convex_graph(&halflines(|x| x * x, vec![]), 10, 1).unwrap());
        let rep = convexity_report(&halflines(|x| -x * x, vec![]), 10, 1).unwrap();
        assert!(!rep.convex);
        assert!(!rep.scalarizations_convex);
        assert_eq!(rep.pairs_checked, 1);
    }

    #[test]
    fn properness_examples() {
        let c = r1();
        let empty = SetValuedFn::new(1, line(), vec![UpperSet::empty(&c); 3], c.clone(), None, vec![]).unwrap();
        assert!(!is_proper_sv(&empty));
        let mut vals = vec![UpperSet::translate(&c, qvec(&[0])).unwrap(); 3];
        vals[1] = UpperSet::full(&c);
        let full = SetValuedFn::new(1, line(), vals, c.clone(), None, vec![]).unwrap();
        assert!(!is_proper_sv(&full));
        let rep = proper_report(&halflines(|x| x, vec![])).unwrap();
        assert!(rep.proper && rep.consistent());
        assert_eq!(rep.scalar_witness, Some(qvec(&[1])));
    }

    #[test]
    fn proper_directions() {
        let base = cone_base(&OrderCone::orthant(1).unwrap()).unwrap();
        assert_eq!(proper_direction_cone(&halflines(|x| x, vec![]), &base).unwrap(), vec![qvec(&[1])]);
        let c = r1();
        let full = SetValuedFn::new(1, line(), vec![UpperSet::full(&c); 3], c.clone(), None, vec![]).unwrap();
        assert!(proper_direction_cone(&full, &base).unwrap().is_empty());

        // Values (x, 0) + R^2_+ + cone{(-1, 0)}: the (1,0) scalarization is -inf.
        let c2 = OrderCone::orthant(2).unwrap();
        let values = line()
            .iter()
            .map(|x| UpperSet::new(&c2, vec![vec![x[0].clone(), q(0)]], vec![qvec(&[-1, 0])]).unwrap())
            .collect();
        let r = SetValuedFn::new(1, line(), values, c2.clone(), None, vec![]).unwrap();
        let base2 = cone_base(&OrderCone::orthant(2).unwrap()).unwrap();
        assert_eq!(proper_direction_cone(&r, &base2).unwrap(), vec![qvec(&[0, 1])]);
    }

    #[test]
    fn conjugate_examples() {
        let c = r1();
        let empty = SetValuedFn::new(1, line(), vec![UpperSet::empty(&c); 3], c.clone(), None, vec![]).unwrap();
        let rad = set_conjugate(&empty, &qvec(&[1]), &qvec(&[1])).unwrap();
        assert_eq!(rad.level, ExtReal::PosInf);
        assert!(rad.to_set(&c).is_empty());

        let id = halflines(|x| x, vec![]);
        assert_eq!(set_conjugate(&id, &qvec(&[1]), &qvec(&[1])).unwrap().level, fin(0));
        let sq = halflines(|x| x * x, vec![]);
        assert_eq!(set_conjugate(&sq, &qvec(&[1]), &qvec(&[1])).unwrap().level, fin(0));

        assert!(set_conjugate(&id, &qvec(&[1]), &qvec(&[-1])).is_err());
        assert!(set_conjugate(&id, &qvec(&[1]), &qvec(&[0])).is_err());
    }

    #[test]
    fn conjugate_routes_agree_with_rays() {
        let g = halflines(|x| -x, vec![SetRay { direction: qvec(&[1]), image: qvec(&[-1]) }]);
        for xs in -2..=2 {
            let rad = set_conjugate(&g, &qvec(&[xs]), &qvec(&[1])).unwrap();
            let direct = set_conjugate_direct(&g, &qvec(&[xs]), &qvec(&[1])).unwrap();
            assert!(upper_sets::set_equal(&rad.to_set(g.ambient()), &direct, &[qvec(&[1])]).unwrap(), "x* = {xs}");
        }
    }

    #[test]
    fn biconjugate_examples() {
        let base = cone_base(&r1()).unwrap();
        let k = halflines(|_| 2, vec![]);
        let dual = derived_dual_primal_grid(&k, &base.directions).unwrap();
        for x in line() {
            let bi = set_biconjugate(&k, &x, &dual, &base).unwrap();
            assert!(upper_sets::set_equal(&bi, k.value(&x).unwrap(), &[qvec(&[1])]).unwrap());
        }
        let c = r1();
        let full = SetValuedFn::new(1, line(), vec![UpperSet::full(&c); 3], c.clone(), None, vec![]).unwrap();
        assert!(set_biconjugate(&full, &qvec(&[0]), &[qvec(&[0])], &base).unwrap().is_full());

        let sq = halflines(|x| x * x, vec![]);
        let bi = set_biconjugate(&sq, &qvec(&[0]), &[qvec(&[-1]), qvec(&[1])], &base).unwrap();
        assert!(upper_sets::set_equal(&bi, &UpperSet::translate(&c, qvec(&[0])).unwrap(), &[qvec(&[1])]).unwrap());
    }

    #[test]
    fn fm_check_examples() {
        let base = cone_base(&r1()).unwrap();
        let g = halflines(|x| x * x, vec![]);
        let dual = derived_dual_primal_grid(&g, &base.directions).unwrap();
        assert!(sv_fenchel_moreau_check(&g, &dual, &base, "sq").unwrap().iter().all(|e| e.status == Status::Pass));

        let c = r1();
        let empty = SetValuedFn::new(1, line(), vec![UpperSet::empty(&c); 3], c.clone(), None, vec![]).unwrap();
        assert!(sv_fenchel_moreau_check(&empty, &[qvec(&[0])], &base, "empty").unwrap().iter().all(|e| e.status == Status::Pass));

        let bad = halflines(|x| -x * x, vec![]);
        let dual = derived_dual_primal_grid(&bad, &base.directions).unwrap();
        let entries = sv_fenchel_moreau_check(&bad, &dual, &base, "nonconvex").unwrap();
        let failed: Vec<_> = entries.iter().filter(|e| e.status == Status::Fail).collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].witness.is_some());
    }

    #[test]
    fn inverse_properties() {
        let g = halflines(|x| -x, vec![]);
        let m = inverse_monotonicity(&g).unwrap();
        assert!(m.holds() && m.decreasing && m.inverses_upper);
        let inc = halflines(|x| x, vec![]);
        let m = inverse_monotonicity(&inc).unwrap();
        assert!(m.holds() && !m.decreasing && !m.inverses_upper);
        assert!(inverse_roundtrip_violation(&g).unwrap().is_none());
    }

    #[test]
    fn inconsistent_rays_rejected() {
        let c = r1();
        let values = (-1..=1).map(|x: i64| UpperSet::translate(&c, qvec(&[x * x])).unwrap()).collect();
        let err = SetValuedFn::new(1, line(), values, c.clone(), None, vec![SetRay { direction: qvec(&[1]), image: qvec(&[-1]) }]);
        assert!(matches!(err, Err(Error::InconsistentRay(_))));
    }
}
