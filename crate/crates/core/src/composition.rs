//! The composition `F∘G` of two set-valued functions, its structural
//! properties, and verifiers for the conjugate-of-composition formula and the
//! resulting dual representation.
//!
//! `F∘G(x)` is the closed convex hull of `F(y)` over `y` in `G(x)`. With grid
//! data this is the hull of `F(p)` over the vertices `p` of `G(x)`, plus the
//! images under `F`'s declared rays of the recession directions of `G(x)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{Signed, Zero};

use crate::cones::{cone_base, dual_cone, ConeBase, OrderCone};
use crate::error::{check_dim, Error, Result};
use crate::lp::{Cmp, LpOutcome, Problem};
use crate::rational::{add, dedup_points, dot, fmt_q, fmt_vec, neg, q, qr, scale, sub, ExtReal, Q, Vector};
use crate::report::{ReportEntry, Status};
use crate::scalar_fn::{self, ExtScalarFn};
use crate::setvalued_fn::{
    biconjugate_directions, convexity_report, decreasing_violation, derived_dual_primal_grid, scalarize, SetRay, SetValuedFn,
};
use crate::upper_sets::{self, add_cone, is_subset, lattice_inf, Halfspace, UpperSet};

/// Which unboundedness/monotonicity hypothesis an instance claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssumptionMode {
    /// Every base scalarization of `G` is unbounded below.
    Descent,
    /// Every base scalarization of `G` is strictly decreasing.
    StrictDecrease,
}

pub const DEFAULT_LAMBDAS: [(i64, i64); 5] = [(1, 4), (1, 2), (1, 1), (2, 1), (4, 1)];

pub struct CompositionInstance {
    pub g: SetValuedFn,
    pub f: SetValuedFn,
    pub x_cone: Option<OrderCone>,
    /// Compact base of the dual of `Y+`, or the reason none exists.
    pub y_base: std::result::Result<ConeBase, Error>,
    pub z_base: std::result::Result<ConeBase, Error>,
    pub x_dual_grid: Vec<Vector>,
    pub lambda_grid: Vec<Q>,
    pub mode: AssumptionMode,
    composed: SetValuedFn,
    hypotheses: OnceLock<Hypotheses>,
    g_scalar: Mutex<HashMap<Vector, ExtScalarFn>>,
    f_scalar: Mutex<HashMap<Vector, ExtScalarFn>>,
    formulas: Mutex<HashMap<(Vector, Vector), ConjugateFormula>>,
}

/// Facts about the instance that gate the duality statements.
#[derive(Clone, Debug)]
pub struct Hypotheses {
    pub g_convex: bool,
    pub f_convex: bool,
    pub composed_convex: bool,
    pub composed_convexity_witness: Option<String>,
    pub assumptions: AssumptionStatus,
}

impl Hypotheses {
    pub fn duality_ready(&self) -> bool {
        self.g_convex && self.f_convex && self.assumptions.satisfied()
    }

    pub fn reason(&self) -> Option<String> {
        let mut r = Vec::new();
        if !self.g_convex {
            r.push("G is not convex");
        }
        if !self.f_convex {
            r.push("F is not convex");
        }
        if !self.assumptions.base_ok {
            r.push("the dual of Y+ has no compact base");
        }
        if !(self.assumptions.descent_ok || self.assumptions.strict_ok) {
            r.push("neither unbounded descent nor strict decrease holds");
        }
        if r.is_empty() {
            None
        } else {
            Some(r.join("; "))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssumptionStatus {
    pub base_ok: bool,
    pub base_witness: Option<String>,
    pub descent_ok: bool,
    /// Per base direction: the declared ray giving unbounded descent, or `None`.
    pub descent_rays: Vec<(Vector, Option<Vector>)>,
    pub strict_ok: bool,
    pub strict_witness: Option<String>,
    pub mode: AssumptionMode,
}

impl AssumptionStatus {
    pub fn satisfied(&self) -> bool {
        self.base_ok && (self.descent_ok || self.strict_ok)
    }
}

/// `t * image` for the declared ray of `f` whose direction is `t * dir`'s positive multiple.
pub fn ray_image(f: &SetValuedFn, dir: &[Q]) -> Option<Vector> {
    for r in f.rays() {
        if let Some(t) = positive_multiple(dir, &r.direction) {
            return Some(scale(&r.image, &t));
        }
    }
    None
}

/// `t > 0` with `a = t * b`.
fn positive_multiple(a: &[Q], b: &[Q]) -> Option<Q> {
    let k = b.iter().position(|v| !v.is_zero())?;
    let t = &a[k] / &b[k];
    if t.is_positive() && a.iter().zip(b).all(|(u, v)| *u == &t * v) {
        Some(t)
    } else {
        None
    }
}

/// `F∘G(x)` at the grid point with index `i` of `g`.
pub fn compose_value(g: &SetValuedFn, f: &SetValuedFn, i: usize) -> Result<UpperSet> {
    let gx = &g.values()[i];
    let x = &g.grid()[i];
    if gx.is_empty() {
        return Ok(UpperSet::empty(f.ambient()));
    }
    if gx.is_full() {
        return Err(Error::NotComposable(format!("G({}) is the whole space", fmt_vec(x))));
    }
    let mut parts = Vec::with_capacity(gx.points().len());
    for p in gx.points() {
        let v = f.value(p).map_err(|_| Error::NotComposable(format!("vertex {} of G({}) is not on F's grid", fmt_vec(p), fmt_vec(x))))?;
        parts.push(v.clone());
    }
    let mut images = Vec::new();
    for rho in gx.rays() {
        let img = ray_image(f, rho)
            .ok_or_else(|| Error::NotComposable(format!("recession direction {} of G({}) has no declared image under F", fmt_vec(rho), fmt_vec(x))))?;
        images.push(img);
    }
    let value = add_cone(&lattice_inf(&parts)?, &images);
    // The vertex hull must account for every other grid point of F inside G(x).
    for (y, fy) in f.grid().iter().zip(f.values()) {
        if gx.satisfies_hrep(y) && !is_subset(fy, &value)? {
            return Err(Error::NotComposable(format!(
                "F({}) is not covered by the hull over the vertices of G({})",
                fmt_vec(y),
                fmt_vec(x)
            )));
        }
    }
    Ok(value)
}

impl CompositionInstance {
    pub fn new(
        g: SetValuedFn,
        f: SetValuedFn,
        x_cone: Option<OrderCone>,
        x_dual_grid: Option<Vec<Vector>>,
        lambda_grid: Option<Vec<Q>>,
        mode: AssumptionMode,
    ) -> Result<Self> {
        check_dim(g.ambient().dim(), f.primal_dim())?;
        if let Some(c) = &x_cone {
            check_dim(g.primal_dim(), c.dim())?;
        }
        let mut values = Vec::with_capacity(g.grid().len());
        for i in 0..g.grid().len() {
            values.push(compose_value(&g, &f, i)?);
        }
        let mut rays = Vec::with_capacity(g.rays().len());
        for r in g.rays() {
            let img = ray_image(&f, &r.image).ok_or_else(|| {
                Error::NotComposable(format!("image {} of the descent ray {} has no declared image under F", fmt_vec(&r.image), fmt_vec(&r.direction)))
            })?;
            rays.push(SetRay { direction: r.direction.clone(), image: img });
        }
        let primal_cone = x_cone.clone().or_else(|| g.primal_cone().cloned());
        let composed = SetValuedFn::new(g.primal_dim(), g.grid().to_vec(), values, f.ambient().clone(), primal_cone, rays)?;
        let y_base = cone_base(&dual_cone(g.ambient()));
        let z_base = cone_base(&dual_cone(f.ambient()));
        let lambda_grid = match lambda_grid {
            Some(l) if !l.is_empty() => {
                if let Some(bad) = l.iter().find(|v| !v.is_positive()) {
                    return Err(Error::InvalidParameter(format!("lambda grid entry {} is not positive", fmt_q(bad))));
                }
                l
            }
            _ => DEFAULT_LAMBDAS.iter().map(|&(n, d)| qr(n, d)).collect(),
        };
        let mut inst = Self {
            g,
            f,
            x_cone,
            y_base,
            z_base,
            x_dual_grid: Vec::new(),
            lambda_grid,
            mode,
            composed,
            hypotheses: OnceLock::new(),
            g_scalar: Mutex::new(HashMap::new()),
            f_scalar: Mutex::new(HashMap::new()),
            formulas: Mutex::new(HashMap::new()),
        };
        inst.x_dual_grid = match x_dual_grid {
            Some(grid) => {
                for v in &grid {
                    check_dim(inst.g.primal_dim(), v.len())?;
                }
                grid
            }
            None => derived_dual_primal_grid(&inst.composed, &inst.z_directions())?,
        };
        Ok(inst)
    }

    pub fn composed(&self) -> &SetValuedFn {
        &self.composed
    }

    pub fn hypotheses(&self) -> &Hypotheses {
        self.hypotheses.get_or_init(|| {
            let g = convexity_report(&self.g, 64, 0).map(|r| r.convex).unwrap_or(false);
            let f = convexity_report(&self.f, 64, 0).map(|r| r.convex).unwrap_or(false);
            let c = convexity_report(&self.composed, 64, 0).ok();
            let composed_convexity_witness = c.as_ref().and_then(|r| r.witness.as_ref()).map(|(x1, x2, z1, z2)| {
                format!(
                    "midpoint of {} in F∘G({}) and {} in F∘G({}) is outside the value at the midpoint",
                    fmt_vec(z1),
                    fmt_vec(x1),
                    fmt_vec(z2),
                    fmt_vec(x2)
                )
            });
            Hypotheses {
                g_convex: g,
                f_convex: f,
                composed_convex: c.map(|r| r.convex).unwrap_or(false),
                composed_convexity_witness,
                assumptions: check_assumptions(self),
            }
        })
    }

    /// Base directions of the dual of `Y+`; the dual generators if no base exists.
    pub fn y_directions(&self) -> Vec<Vector> {
        match &self.y_base {
            Ok(b) => b.directions.clone(),
            Err(_) => self.g.ambient().dual_generators().to_vec(),
        }
    }

    /// Dual directions on `Z` used for conjugates: base directions and
    /// normalized facet normals of the composition's values.
    pub fn z_directions(&self) -> Vec<Vector> {
        match &self.z_base {
            Ok(b) => {
                let mut out = b.directions.clone();
                for v in self.composed.values() {
                    for h in v.hrep() {
                        let s = dot(&b.normalization, &h.normal);
                        if s.is_positive() && self.f.ambient().dual_contains(&h.normal) {
                            out.push(scale(&h.normal, &s.recip()));
                        }
                    }
                }
                dedup_points(out)
            }
            Err(_) => self.composed.probe_directions().into_iter().filter(|z| self.f.ambient().dual_contains(z)).collect(),
        }
    }

    fn g_scalarization(&self, ystar: &[Q]) -> Result<ExtScalarFn> {
        if let Some(s) = self.g_scalar.lock().unwrap().get(ystar) {
            return Ok(s.clone());
        }
        let s = scalarize(&self.g, ystar)?;
        self.g_scalar.lock().unwrap().insert(ystar.to_vec(), s.clone());
        Ok(s)
    }

    fn f_scalarization(&self, zstar: &[Q]) -> Result<ExtScalarFn> {
        if let Some(s) = self.f_scalar.lock().unwrap().get(zstar) {
            return Ok(s.clone());
        }
        let s = scalarize(&self.f, zstar)?;
        self.f_scalar.lock().unwrap().insert(zstar.to_vec(), s.clone());
        Ok(s)
    }

    /// `conj(phi_{G,y'})(x*) + conj(phi_{F,z*})(y')`, with `+inf` dominating.
    pub fn dual_objective(&self, xstar: &[Q], zstar: &[Q], yprime: &[Q]) -> Result<ExtReal> {
        let a = scalar_fn::conjugate(&self.g_scalarization(yprime)?, xstar)?;
        let b = scalar_fn::conjugate(&self.f_scalarization(zstar)?, yprime)?;
        Ok(a.add_upper(&b))
    }
}

pub fn compose(inst: &CompositionInstance, x: &[Q]) -> Result<UpperSet> {
    inst.composed.value(x).cloned()
}

/// `(support(F∘G(x), z*), min over vertices p of G(x) of support(F(p), z*))`,
/// the latter lowered to `-inf` when a recession direction of `G(x)` has an
/// image pairing negatively with `z*`.
pub fn scalarization_identity(inst: &CompositionInstance, zstar: &[Q], x: &[Q]) -> Result<(ExtReal, ExtReal)> {
    let lhs = upper_sets::support(&compose(inst, x)?, zstar)?;
    let gx = inst.g.value(x)?;
    if gx.is_empty() {
        return Ok((lhs, ExtReal::PosInf));
    }
    let mut rhs = ExtReal::PosInf;
    for p in gx.points() {
        rhs = rhs.min(upper_sets::support(inst.f.value(p)?, zstar)?);
    }
    for rho in gx.rays() {
        let img = ray_image(&inst.f, rho).ok_or_else(|| Error::NotComposable(fmt_vec(rho)))?;
        if dot(zstar, &img).is_negative() {
            rhs = ExtReal::NegInf;
        }
    }
    Ok((lhs, rhs))
}

/// Evaluates both sides of the conjugate-of-composition formula.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateFormula {
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    /// `rhs - lhs`, zero when both are the same infinity.
    pub gap: ExtReal,
    /// A minimizing dual point `y'`.
    pub argmin: Option<Vector>,
    /// The right-hand side did not move when the candidate set was refined.
    pub formula_exact: bool,
    /// Scaled base directions alone attain the right-hand side.
    pub lambda_attains: bool,
}

/// Dual points `y'` with `phi_{G,y'}` proper among base directions scaled by `lambdas`.
fn scaled_candidates(inst: &CompositionInstance, bases: &[Vector], lambdas: &[Q]) -> Result<Vec<Vector>> {
    let mut out = Vec::new();
    for b in bases {
        if !scalar_fn::is_proper(&inst.g_scalarization(b)?) {
            continue;
        }
        for l in lambdas {
            out.push(scale(b, l));
        }
    }
    Ok(out)
}

/// Solves for the best dual point directly: minimize `s + u` over `(y*, s, u)` with
/// `s >= <x*, x> - <y*, v>` for vertices `v` of `G(x)`, `u >= <y*, y> - phi_F(y)`
/// on F's grid, and the slope conditions along all declared and recession rays.
pub fn certificate(inst: &CompositionInstance, xstar: &[Q], zstar: &[Q]) -> Result<Option<Vector>> {
    let m = inst.g.ambient().dim();
    let phi_f = inst.f_scalarization(zstar)?;
    if phi_f.values().contains(&ExtReal::NegInf) || phi_f.domain().is_empty() {
        return Ok(None);
    }
    if inst.g.values().iter().any(UpperSet::is_full) || inst.g.domain().is_empty() {
        return Ok(None);
    }
    let (s, u) = (m, m + 1);
    let mut p = Problem::new(m + 2);
    for v in 0..m + 2 {
        p.set_free(v);
    }
    let row = |ys: &[Q], sv: i64, uv: i64| {
        let mut r = ys.to_vec();
        r.push(q(sv));
        r.push(q(uv));
        r
    };
    for (x, gx) in inst.g.grid().iter().zip(inst.g.values()) {
        if gx.is_empty() {
            continue;
        }
        let ax = dot(xstar, x);
        for v in gx.points() {
            // s + <y*, v> >= <x*, x>
            p.constrain(row(v, 1, 0), Cmp::Ge, ax.clone());
        }
        for rho in gx.rays() {
            p.constrain(row(rho, 0, 0), Cmp::Ge, Q::zero());
        }
    }
    for r in inst.g.rays() {
        p.constrain(row(&r.image, 0, 0), Cmp::Ge, dot(xstar, &r.direction));
    }
    for g in inst.g.ambient().generators() {
        p.constrain(row(g, 0, 0), Cmp::Ge, Q::zero());
    }
    for i in phi_f.domain() {
        let y = &phi_f.grid()[i];
        let val = phi_f.values()[i].finite().unwrap().clone();
        // u - <y*, y> >= -phi_F(y)
        p.constrain(row(&neg(y), 0, 1), Cmp::Ge, -val);
    }
    for r in phi_f.rays() {
        p.constrain(row(&r.direction, 0, 0), Cmp::Le, r.slope.clone());
    }
    let mut obj = vec![Q::zero(); m + 2];
    obj[s] = q(1);
    obj[u] = q(1);
    p.minimize(obj);
    Ok(match p.solve() {
        LpOutcome::Optimal { x, .. } => Some(x[..m].to_vec()),
        _ => None,
    })
}

fn best_over(inst: &CompositionInstance, xstar: &[Q], zstar: &[Q], cands: &[Vector]) -> Result<(ExtReal, Option<Vector>)> {
    let mut best = ExtReal::PosInf;
    let mut arg = None;
    for c in cands {
        let v = inst.dual_objective(xstar, zstar, c)?;
        if v < best || arg.is_none() {
            if v < best {
                best = v;
            }
            arg = Some(c.clone());
        }
    }
    Ok((best, arg))
}

/// `conj(phi_{F∘G,z*})(x*)` against the infimum over proper dual directions of
/// `conj(phi_{G,y'})(x*) + conj(phi_{F,z*})(y')`.
///
/// The infimum is taken over base directions scaled by the lambda grid, an
/// exact LP minimizer, and the origin (a limit point of the cone of proper
/// directions, included whenever that cone is nonempty).
pub fn conjugate_formula(inst: &CompositionInstance, xstar: &[Q], zstar: &[Q]) -> Result<ConjugateFormula> {
    check_dim(inst.g.primal_dim(), xstar.len())?;
    check_dim(inst.f.ambient().dim(), zstar.len())?;
    let key = (xstar.to_vec(), zstar.to_vec());
    if let Some(r) = inst.formulas.lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let r = evaluate_formula(inst, xstar, zstar)?;
    inst.formulas.lock().unwrap().insert(key, r.clone());
    Ok(r)
}

fn evaluate_formula(inst: &CompositionInstance, xstar: &[Q], zstar: &[Q]) -> Result<ConjugateFormula> {
    let lhs = scalar_fn::conjugate(&scalarize(&inst.composed, zstar)?, xstar)?;
    let bases = inst.y_directions();

    let mut extras = Vec::new();
    let any_proper = !scaled_candidates(inst, &bases, &[q(1)])?.is_empty();
    if let Some(c) = certificate(inst, xstar, zstar)? {
        let proper = !c.iter().all(Zero::is_zero) && scalar_fn::is_proper(&inst.g_scalarization(&c)?);
        if proper {
            extras.push(c);
        }
    }
    if any_proper {
        extras.push(vec![Q::zero(); inst.g.ambient().dim()]);
    }

    let scaled = scaled_candidates(inst, &bases, &inst.lambda_grid)?;
    let mut cands = scaled.clone();
    cands.extend(extras.iter().cloned());
    let (rhs, argmin) = best_over(inst, xstar, zstar, &cands)?;
    let (lambda_best, _) = best_over(inst, xstar, zstar, &scaled)?;

    // Refinement: midpoints and wider ends of the lambda grid, midpoints of base pairs.
    let mut lambdas = inst.lambda_grid.clone();
    lambdas.sort();
    let mut refined_l = lambdas.clone();
    for w in lambdas.windows(2) {
        refined_l.push((&w[0] + &w[1]) * qr(1, 2));
    }
    if let (Some(lo), Some(hi)) = (lambdas.first(), lambdas.last()) {
        refined_l.push(lo * qr(1, 2));
        refined_l.push(hi * q(2));
    }
    let mut refined_b = bases.clone();
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            refined_b.push(scale(&add(&bases[i], &bases[j]), &qr(1, 2)));
        }
    }
    let mut refined = scaled_candidates(inst, &refined_b, &refined_l)?;
    refined.extend(extras);
    let (rhs_refined, _) = best_over(inst, xstar, zstar, &refined)?;

    Ok(ConjugateFormula {
        gap: rhs.gap_from(&lhs),
        formula_exact: rhs_refined == rhs,
        lambda_attains: lambda_best == rhs,
        lhs,
        rhs,
        argmin,
    })
}

/// The intersection over the dual grid, proper dual directions on `Z` and the
/// candidate dual points of halfspaces `<z*, z> >= <x*, x> - conj_G - conj_F`.
pub fn dual_representation(inst: &CompositionInstance, x: &[Q]) -> Result<UpperSet> {
    inst.composed.index_of(x).ok_or_else(|| Error::OffGrid(fmt_vec(x)))?;
    let mut hs = Vec::new();
    for zstar in inst.z_directions() {
        if !scalar_fn::is_proper(&inst.f_scalarization(&zstar)?) {
            continue;
        }
        for xstar in &inst.x_dual_grid {
            let r = conjugate_formula(inst, xstar, &zstar)?;
            match (-r.rhs).add_q(&dot(xstar, x)) {
                ExtReal::PosInf => return Ok(UpperSet::empty(inst.f.ambient())),
                ExtReal::NegInf => {}
                ExtReal::Finite(l) => hs.push(Halfspace::new(zstar.clone(), l)),
            }
        }
    }
    UpperSet::from_halfspaces(inst.f.ambient(), &hs)
}

/// Outcome of the closure check for sections of the sublevel region.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionClosure {
    pub holds: bool,
    /// Grid points of `{x : <y*, y> >= phi_{G,y*}(x)}` examined.
    pub boundary_points: usize,
    pub witness: Option<Vector>,
}

/// Every grid point `x` with `<y*, y> >= phi_{G,y*}(x)` is approached by
/// points with strict inequality: along a declared ray with negative slope,
/// strictness is verified at steps `1, 1/2, ..., 1/2^steps`.
pub fn strict_section_closure(inst: &CompositionInstance, y: &[Q], ystar: &[Q], steps: u32) -> Result<SectionClosure> {
    check_dim(inst.g.ambient().dim(), y.len())?;
    let phi = inst.g_scalarization(ystar)?;
    let level = ExtReal::Finite(dot(ystar, y));
    let mut out = SectionClosure { holds: true, boundary_points: 0, witness: None };
    for (i, x) in phi.grid().iter().enumerate() {
        let v = &phi.values()[i];
        if *v > level {
            continue;
        }
        out.boundary_points += 1;
        if *v < level {
            continue;
        }
        let mut approached = false;
        for r in phi.rays() {
            if !r.slope.is_negative() {
                continue;
            }
            let strict_everywhere = (0..=steps).all(|k| {
                let t = qr(1, 1i64 << k);
                v.add_q(&(&t * &r.slope)) < level
            });
            if strict_everywhere {
                approached = true;
                break;
            }
        }
        if !approached {
            out.holds = false;
            out.witness.get_or_insert(x.clone());
        }
    }
    Ok(out)
}

/// Compact-base, unbounded-descent and strict-decrease hypotheses.
pub fn check_assumptions(inst: &CompositionInstance) -> AssumptionStatus {
    let (base_ok, base_witness) = match &inst.y_base {
        Ok(_) => (true, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let dirs = inst.y_directions();
    let has_domain = !inst.g.domain().is_empty();
    let mut descent_rays = Vec::new();
    for d in &dirs {
        let ray = inst.g.rays().iter().find(|r| dot(d, &r.image).is_negative()).map(|r| r.direction.clone());
        descent_rays.push((d.clone(), ray));
    }
    let descent_ok = has_domain && !dirs.is_empty() && descent_rays.iter().all(|(_, r)| r.is_some());

    let (strict_ok, strict_witness) = strict_decrease(inst, &dirs);
    AssumptionStatus { base_ok, base_witness, descent_ok, descent_rays, strict_ok, strict_witness, mode: inst.mode }
}

fn strict_decrease(inst: &CompositionInstance, dirs: &[Vector]) -> (bool, Option<String>) {
    let Some(cone) = &inst.x_cone else {
        return (false, Some("no ordering cone on X".into()));
    };
    if cone.strict_interior_point().is_none() {
        return (false, Some("the strict-positivity cone of X is empty".into()));
    }
    let strictly_above = |a: &Vector, b: &Vector| {
        let d = sub(b, a);
        let nonzero: Vec<&Vector> = cone.dual_generators().iter().filter(|g| !g.iter().all(Zero::is_zero)).collect();
        nonzero.iter().all(|g| dot(g, &d).is_positive())
    };
    for ystar in dirs {
        let Ok(phi) = inst.g_scalarization(ystar) else {
            return (false, Some(format!("cannot scalarize G along {}", fmt_vec(ystar))));
        };
        for (i, x1) in phi.grid().iter().enumerate() {
            for (j, x2) in phi.grid().iter().enumerate() {
                if i == j {
                    continue;
                }
                let above = strictly_above(x1, x2);
                let drops = phi.values()[i] > phi.values()[j];
                if above != drops {
                    return (
                        false,
                        Some(format!(
                            "along {}: x1 = {}, x2 = {}, strictly above = {}, value drops = {}",
                            fmt_vec(ystar),
                            fmt_vec(x1),
                            fmt_vec(x2),
                            above,
                            drops
                        )),
                    );
                }
            }
        }
    }
    (true, None)
}

// Report-producing checks. Each returns entries tagged with the CLI check name.

pub fn composition_structure_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    let h = inst.hypotheses();
    let mut out = Vec::new();
    let premise = h.f_convex && h.g_convex;
    let entry = ReportEntry::new("prop31", "F, G convex => F∘G convex", match (premise, h.composed_convex) {
        (false, _) => Status::Skipped,
        (true, true) => Status::Pass,
        (true, false) => Status::Fail,
    })
    .values(format!("F convex = {}, G convex = {}", h.f_convex, h.g_convex), format!("F∘G convex = {}", h.composed_convex));
    out.push(match &h.composed_convexity_witness {
        Some(w) => entry.witness(w.clone()),
        None => entry,
    });
    if inst.composed.primal_cone().is_some() && inst.g.primal_cone().is_some() {
        let g_dec = decreasing_violation(&inst.g)?;
        let c_dec = decreasing_violation(&inst.composed)?;
        let status = match (g_dec.is_none(), c_dec.is_none()) {
            (false, _) => Status::Skipped,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        };
        let mut e = ReportEntry::new("prop31", "G decreasing => F∘G decreasing", status)
            .values(format!("G decreasing = {}", g_dec.is_none()), format!("F∘G decreasing = {}", c_dec.is_none()));
        if let Some((a, b)) = c_dec.or(g_dec) {
            e = e.witness(format!("x1 = {} <= x2 = {} but the value at x1 is not contained in the value at x2", fmt_vec(&a), fmt_vec(&b)));
        }
        out.push(e);
    }
    Ok(out)
}

/// Probe directions on `Z` for the scalarization identity: the conjugate
/// directions plus one direction outside the dual cone when one exists.
fn identity_probes(inst: &CompositionInstance) -> Vec<Vector> {
    let mut probes = inst.z_directions();
    let gens = inst.f.ambient().dual_generators();
    if let Some(first) = gens.first() {
        let off = neg(first);
        if !inst.f.ambient().dual_contains(&off) {
            probes.push(off);
        }
    }
    probes
}

pub fn scalarization_identity_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    for zstar in identity_probes(inst) {
        for x in inst.g.grid() {
            let (lhs, rhs) = scalarization_identity(inst, &zstar, x)?;
            let status = if lhs == rhs { Status::Pass } else { Status::Fail };
            let mut e = ReportEntry::new("prop32", format!("z*={} x={}", fmt_vec(&zstar), fmt_vec(x)), status).values(&lhs, &rhs).gap(rhs.gap_from(&lhs));
            if status == Status::Fail {
                e = e.witness(format!("F∘G(x) = {}", compose(inst, x)?));
            }
            out.push(e);
        }
    }
    Ok(out)
}

pub fn outer_properness_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    for zstar in inst.z_directions() {
        let comp = scalar_fn::is_proper(&scalarize(&inst.composed, &zstar)?);
        let outer = scalar_fn::is_proper(&inst.f_scalarization(&zstar)?);
        let status = match (comp, outer) {
            (false, _) => Status::Vacuous,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        };
        out.push(
            ReportEntry::new("cor33", format!("z*={}", fmt_vec(&zstar)), status)
                .values(format!("F∘G scalarization proper = {comp}"), format!("F scalarization proper = {outer}")),
        );
    }
    Ok(out)
}

pub fn assumption_entries(inst: &CompositionInstance) -> Vec<ReportEntry> {
    let a = &inst.hypotheses().assumptions;
    let mut out = Vec::new();
    let mut e = ReportEntry::new("assumptions", "compact base of the dual of Y+", if a.base_ok { Status::Pass } else { Status::Skipped });
    if let Some(w) = &a.base_witness {
        e = e.witness(w.clone());
    }
    out.push(e);
    let claimed = |m| inst.mode == m;
    let status = |ok: bool, m| {
        if ok {
            Status::Pass
        } else if claimed(m) {
            Status::Skipped
        } else {
            Status::Vacuous
        }
    };
    let missing: Vec<String> = a.descent_rays.iter().filter(|(_, r)| r.is_none()).map(|(d, _)| fmt_vec(d)).collect();
    let mut e = ReportEntry::new("assumptions", "unbounded descent along declared rays", status(a.descent_ok, AssumptionMode::Descent));
    if !missing.is_empty() {
        e = e.witness(format!("no declared ray with negative slope for base directions {}", missing.join(", ")));
    } else if !a.descent_ok {
        e = e.witness("G has empty domain or no base directions");
    }
    out.push(e);
    let mut e = ReportEntry::new("assumptions", "strict decrease along strictly positive directions", status(a.strict_ok, AssumptionMode::StrictDecrease));
    if let Some(w) = &a.strict_witness {
        e = e.witness(w.clone());
    }
    out.push(e);
    out
}

pub fn conjugate_formula_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    let h = inst.hypotheses();
    let mut out = Vec::new();
    for zstar in inst.z_directions() {
        let proper = scalar_fn::is_proper(&scalarize(&inst.composed, &zstar)?);
        for xstar in &inst.x_dual_grid {
            let r = conjugate_formula(inst, xstar, &zstar)?;
            let inputs = format!("x*={} z*={}", fmt_vec(xstar), fmt_vec(&zstar));
            let weak = r.lhs <= r.rhs;
            let status = if !weak {
                Status::Fail
            } else if !proper || !h.duality_ready() {
                Status::Skipped
            } else if r.gap == ExtReal::zero() {
                Status::Pass
            } else {
                Status::Fail
            };
            let mut e = ReportEntry::new("thm36", inputs, status).values(&r.lhs, &r.rhs).gap(&r.gap);
            let arg = r.argmin.as_ref().map(|a| fmt_vec(a)).unwrap_or_else(|| "none".into());
            e = match status {
                Status::Fail if !weak => e.witness(format!("weak duality violated; minimizing y' = {arg}")),
                Status::Fail => e.witness(format!("minimizing y' = {arg}; refinement stable = {}", r.formula_exact)),
                Status::Skipped if !proper => e.witness("scalarization of F∘G along z* is not proper"),
                Status::Skipped => e.witness(h.reason().unwrap_or_default()),
                _ => e,
            };
            out.push(e);
        }
    }
    Ok(out)
}

pub fn dual_representation_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    let h = inst.hypotheses();
    let proper = crate::setvalued_fn::is_proper_sv(&inst.composed);
    let probes = inst.composed.probe_directions();
    let mut out = Vec::new();
    for x in inst.g.grid() {
        let lhs = compose(inst, x)?;
        let rhs = dual_representation(inst, x)?;
        let sep = upper_sets::separating_probe(&lhs, &rhs, &probes)?;
        let ready = proper && h.composed_convex && h.duality_ready();
        let status = match (ready, sep.is_none()) {
            (_, false) if ready => Status::Fail,
            (false, _) => Status::Skipped,
            _ => Status::Pass,
        };
        let mut e = ReportEntry::new("cor37", format!("x={}", fmt_vec(x)), status).values(&lhs, &rhs);
        if let Some(z) = sep {
            e = e.witness(format!(
                "support along {}: {} vs {}",
                fmt_vec(&z),
                upper_sets::support(&lhs, &z)?,
                upper_sets::support(&rhs, &z)?
            ));
        } else if !ready {
            e = e.witness(if proper { h.reason().unwrap_or_else(|| "F∘G is not convex".into()) } else { "F∘G is not proper".into() });
        }
        out.push(e);
    }
    Ok(out)
}

pub fn strict_section_closure_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    // Under strict decrease alone the approaching points `x + t x_bar` lie
    // off the sampled grid, so a miss there is inconclusive rather than false.
    let a = &inst.hypotheses().assumptions;
    let ready = a.base_ok && a.descent_ok;
    let mut out = Vec::new();
    for ystar in inst.y_directions() {
        for y in inst.f.grid() {
            let r = strict_section_closure(inst, y, &ystar, 6)?;
            let status = match (r.boundary_points, r.holds, ready) {
                (0, _, _) => Status::Vacuous,
                (_, true, _) => Status::Pass,
                (_, false, true) => Status::Fail,
                (_, false, false) => Status::Skipped,
            };
            let mut e = ReportEntry::new("lemma42i", format!("y={} y*={}", fmt_vec(y), fmt_vec(&ystar)), status);
            if let Some(w) = r.witness {
                e = e.witness(format!("grid point {} is not approached by strictly feasible points", fmt_vec(&w)));
            }
            out.push(e);
        }
    }
    Ok(out)
}

/// Scalar biconjugate recovery for the scalarizations of `G` and `F∘G`.
pub fn scalar_fm_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    let mut run = |label: &str, phi: ExtScalarFn| -> Result<()> {
        let dual = scalar_fn::slope_dual_grid(&phi);
        let dual = if dual.is_empty() { vec![vec![Q::zero(); phi.dim()]] } else { dual };
        let gap = scalar_fn::fenchel_moreau_gap(&phi, &dual)?;
        let status = if gap == ExtReal::zero() { Status::Pass } else { Status::Fail };
        let mut e = ReportEntry::new("fm_scalar", label, status).gap(&gap);
        if status == Status::Fail {
            for x in phi.grid() {
                let bi = scalar_fn::biconjugate(&phi, &dual, x)?;
                if &bi != phi.value(x)? {
                    e = e.values(phi.value(x)?, &bi).witness(format!("x = {}", fmt_vec(x)));
                    break;
                }
            }
        }
        out.push(e);
        Ok(())
    };
    for ystar in inst.y_directions() {
        run(&format!("G along y*={}", fmt_vec(&ystar)), inst.g_scalarization(&ystar)?)?;
    }
    for zstar in inst.z_directions() {
        run(&format!("F∘G along z*={}", fmt_vec(&zstar)), scalarize(&inst.composed, &zstar)?)?;
    }
    Ok(out)
}

/// Set-valued biconjugate recovery for `G`, `F∘G`, and `F` when a dual grid on `Y` is given.
pub fn setvalued_fm_check(inst: &CompositionInstance, y_dual_grid: Option<&[Vector]>) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    let mut run = |label: &str, r: &SetValuedFn, base: &std::result::Result<ConeBase, Error>, grid: Option<Vec<Vector>>| -> Result<()> {
        match base {
            Err(e) => out.push(ReportEntry::new("fm_setvalued", label, Status::Skipped).witness(e.to_string())),
            Ok(b) => {
                let grid = match grid {
                    Some(g) => g,
                    None => derived_dual_primal_grid(r, &biconjugate_directions(r, b)?)?,
                };
                out.extend(crate::setvalued_fn::sv_fenchel_moreau_check(r, &grid, b, label)?);
            }
        }
        Ok(())
    };
    run("G", &inst.g, &inst.y_base, None)?;
    run("F∘G", &inst.composed, &inst.z_base, Some(inst.x_dual_grid.clone()).filter(|g| !g.is_empty()).map(|g| {
        let mut g = g;
        if let Ok(b) = &inst.z_base {
            if let Ok(d) = biconjugate_directions(&inst.composed, b) {
                if let Ok(extra) = derived_dual_primal_grid(&inst.composed, &d) {
                    g.extend(extra);
                }
            }
        }
        dedup_points(g)
    }))?;
    if let Some(yg) = y_dual_grid {
        run("F", &inst.f, &inst.z_base, Some(yg.to_vec()))?;
    }
    Ok(out)
}

const MAX_NESTED_PAIRS: usize = 12;

/// Sampled convexity of the indicator of a value on a larger value, for the
/// first pairs (in grid order) of composition values ordered by inclusion.
pub fn indicator_check(inst: &CompositionInstance, seed: u64) -> Result<Vec<ReportEntry>> {
    let vals = inst.composed.values();
    let grid = inst.composed.grid();
    let mut out = Vec::new();
    for i in 0..vals.len() {
        for j in 0..vals.len() {
            if out.len() == MAX_NESTED_PAIRS {
                break;
            }
            if i == j || vals[i].is_empty() || vals[j].is_full() || !is_subset(&vals[i], &vals[j])? {
                continue;
            }
            let rep = upper_sets::indicator_quasiconcavity_report(&vals[i], &vals[j], 64, seed)?;
            let status = if rep.equivalent() { Status::Pass } else { Status::Fail };
            out.push(
                ReportEntry::new("lemma21", format!("A=F∘G({}) B=F∘G({})", fmt_vec(&grid[i]), fmt_vec(&grid[j])), status)
                    .values(format!("B\\A convex = {}", rep.difference_convex), format!("indicator quasiconcave = {}", rep.indicator_quasiconcave)),
            );
        }
    }
    if out.is_empty() {
        out.push(ReportEntry::new("lemma21", "no nested composition values", Status::Vacuous));
    }
    Ok(out)
}
