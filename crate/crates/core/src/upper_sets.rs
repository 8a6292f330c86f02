//! Closed convex monotone polyhedral sets with the infimum-convention support
//! function, halfspaces, Minkowski sums, and lattice infimum/supremum.
//!
//! A proper set is stored in both representations: a minimal V-rep
//! (vertices plus generators of the recession cone, which always contains the
//! ambient cone) and the H-rep derived from it. Both are computed once at
//! construction.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::OrderCone;
use crate::dd::cone_from_inequalities;
use crate::error::{check_dim, Error, Result};
use crate::lp::{Cmp, Problem};
use crate::rational::{add, dedup_directions, dedup_points, dot, fmt_vec, is_zero, neg, primitive, q, qr, scale, ExtReal, Q, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Empty,
    Full,
    Proper,
}

/// The closed halfspace `{z : <normal, z> >= level}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vector,
    pub level: Q,
}

impl Halfspace {
    pub fn new(normal: Vector, level: Q) -> Self {
        debug_assert!(!is_zero(&normal));
        Self { normal, level }
    }

    pub fn contains(&self, z: &[Q]) -> bool {
        dot(&self.normal, z) >= self.level
    }
}

#[derive(Clone, Debug)]
pub struct UpperSet {
    ambient: OrderCone,
    kind: Kind,
    points: Vec<Vector>,
    rays: Vec<Vector>,
    hrep: Vec<Halfspace>,
}

impl PartialEq for UpperSet {
    /// Structural equality of the canonical representations. Use
    /// [`set_equal`] for set equality.
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.points == other.points && self.rays == other.rays && self.ambient == other.ambient
    }
}

impl UpperSet {
    pub fn empty(ambient: &OrderCone) -> Self {
        Self { ambient: ambient.clone(), kind: Kind::Empty, points: Vec::new(), rays: Vec::new(), hrep: Vec::new() }
    }

    pub fn full(ambient: &OrderCone) -> Self {
        Self { ambient: ambient.clone(), kind: Kind::Full, points: Vec::new(), rays: Vec::new(), hrep: Vec::new() }
    }

    /// `conv(points) + cone(ambient generators ∪ extra_rays)`. No points gives the empty set;
    /// a set without any proper supporting halfspace is reported as `Full`.
    pub fn new(ambient: &OrderCone, points: Vec<Vector>, extra_rays: Vec<Vector>) -> Result<Self> {
        let n = ambient.dim();
        for v in points.iter().chain(&extra_rays) {
            check_dim(n, v.len())?;
        }
        if points.is_empty() {
            return Ok(Self::empty(ambient));
        }
        let mut rays: Vec<Vector> = ambient.generators().to_vec();
        rays.extend(extra_rays);
        Ok(Self::from_generators(ambient, &points, &rays))
    }

    /// `z + ambient cone`.
    pub fn translate(ambient: &OrderCone, z: Vector) -> Result<Self> {
        Self::new(ambient, vec![z], Vec::new())
    }

    fn from_generators(ambient: &OrderCone, points: &[Vector], rays: &[Vector]) -> Self {
        let n = ambient.dim();
        let mut homog: Vec<Vector> = Vec::with_capacity(points.len() + rays.len());
        for p in points {
            let mut h = vec![Q::one()];
            h.extend(p.iter().cloned());
            homog.push(h);
        }
        for r in rays {
            if is_zero(r) {
                continue;
            }
            let mut h = vec![Q::zero()];
            h.extend(r.iter().cloned());
            homog.push(h);
        }
        let dual = cone_from_inequalities(&homog, n + 1);
        let mut hrep = Vec::new();
        let mut push = |beta: &Q, a: &[Q]| {
            if !is_zero(a) {
                hrep.push(Halfspace::new(a.to_vec(), -beta.clone()));
            }
        };
        for g in &dual.rays {
            push(&g[0], &g[1..]);
        }
        for l in &dual.lineality {
            push(&l[0], &l[1..]);
            let m = neg(l);
            push(&m[0], &m[1..]);
        }
        if hrep.is_empty() {
            return Self::full(ambient);
        }
        Self::from_hrep_nonfull(ambient, hrep).expect("a set with points is nonempty")
    }

    /// V-rep of `{z : h.normal . z >= h.level for all h}`; `None` if empty.
    fn from_hrep_nonfull(ambient: &OrderCone, hrep: Vec<Halfspace>) -> Option<Self> {
        let n = ambient.dim();
        let mut cons: Vec<Vector> = Vec::with_capacity(hrep.len() + 1);
        for h in &hrep {
            let mut row = vec![-h.level.clone()];
            row.extend(h.normal.iter().cloned());
            cons.push(row);
        }
        let mut t = vec![Q::zero(); n + 1];
        t[0] = Q::one();
        cons.push(t);
        let gens = cone_from_inequalities(&cons, n + 1);
        let mut points = Vec::new();
        let mut rays = Vec::new();
        for g in &gens.rays {
            if g[0].is_positive() {
                points.push(scale(&g[1..], &g[0].recip()));
            } else {
                rays.push(g[1..].to_vec());
            }
        }
        for l in &gens.lineality {
            rays.push(l[1..].to_vec());
            rays.push(neg(&l[1..]));
        }
        if points.is_empty() {
            return None;
        }
        // Sorted so that equal sets get identical representations.
        let mut points = dedup_points(points);
        let mut rays = dedup_directions(rays);
        let mut hrep = dedup_halfspaces(hrep);
        points.sort();
        rays.sort();
        hrep.sort_by(|a, b| (&a.normal, &a.level).cmp(&(&b.normal, &b.level)));
        Some(Self { ambient: ambient.clone(), kind: Kind::Proper, points, rays, hrep })
    }

    /// The monotone hull of the intersection of `halfspaces`: the ambient cone
    /// is added to the recession cone, so normals outside the dual cone give `Full`.
    pub fn from_halfspaces(ambient: &OrderCone, halfspaces: &[Halfspace]) -> Result<Self> {
        for h in halfspaces {
            check_dim(ambient.dim(), h.normal.len())?;
        }
        let hs: Vec<Halfspace> = halfspaces.iter().filter(|h| !is_zero(&h.normal)).cloned().collect();
        if hs.is_empty() {
            return Ok(Self::full(ambient));
        }
        let Some(raw) = Self::from_hrep_nonfull(ambient, hs) else {
            return Ok(Self::empty(ambient));
        };
        // Rebuilding from generators also drops redundant halfspaces.
        let mut rays = raw.rays.clone();
        rays.extend(ambient.generators().iter().cloned());
        Ok(Self::from_generators(ambient, &raw.points, &rays))
    }

    pub fn ambient(&self) -> &OrderCone {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_empty(&self) -> bool {
        self.kind == Kind::Empty
    }

    pub fn is_full(&self) -> bool {
        self.kind == Kind::Full
    }

    /// Vertices (minimal-face representatives) of a proper set.
    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    /// Generators of the recession cone, ambient directions included.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    /// Recession generators that do not already lie in the ambient cone.
    pub fn extra_rays(&self) -> Vec<Vector> {
        self.rays.iter().filter(|r| !self.ambient.contains(r)).cloned().collect()
    }

    /// Facet description; empty for `Empty` and `Full`.
    pub fn hrep(&self) -> &[Halfspace] {
        &self.hrep
    }

    /// Membership through the facet description.
    pub fn satisfies_hrep(&self, z: &[Q]) -> bool {
        match self.kind {
            Kind::Empty => false,
            Kind::Full => true,
            Kind::Proper => self.hrep.iter().all(|h| h.contains(z)),
        }
    }
}

fn dedup_halfspaces(hs: Vec<Halfspace>) -> Vec<Halfspace> {
    let mut out: Vec<Halfspace> = Vec::new();
    for h in hs {
        let p = primitive(&h.normal);
        let f = &p[p.iter().position(|v| !v.is_zero()).unwrap()] / &h.normal[h.normal.iter().position(|v| !v.is_zero()).unwrap()];
        let h = Halfspace { normal: p, level: &h.level * f };
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

/// `{z : <normal, z> >= level}` as an upper set of `ambient`.
pub fn halfspace_set(ambient: &OrderCone, normal: Vector, level: Q) -> Result<UpperSet> {
    UpperSet::from_halfspaces(ambient, &[Halfspace::new(normal, level)])
}

/// `inf { <zstar, z> : z in A }`, computed as a linear program over the facet description.
pub fn support(a: &UpperSet, zstar: &[Q]) -> Result<ExtReal> {
    check_dim(a.dim(), zstar.len())?;
    Ok(match a.kind {
        Kind::Empty => ExtReal::PosInf,
        Kind::Full if is_zero(zstar) => ExtReal::zero(),
        Kind::Full => ExtReal::NegInf,
        Kind::Proper => {
            if a.rays.iter().any(|r| dot(zstar, r).is_negative()) {
                ExtReal::NegInf
            } else {
                a.points.iter().map(|p| ExtReal::Finite(dot(zstar, p))).min().expect("proper sets have points")
            }
        }
    })
}

/// Exact membership: is `z` a convex combination of vertices plus a
/// nonnegative combination of recession generators?
pub fn contains(a: &UpperSet, z: &[Q]) -> Result<bool> {
    check_dim(a.dim(), z.len())?;
    Ok(match a.kind {
        Kind::Empty => false,
        Kind::Full => true,
        Kind::Proper => {
            let np = a.points.len();
            let nr = a.rays.len();
            let mut p = Problem::new(np + nr);
            for i in 0..a.dim() {
                let row: Vector = a.points.iter().chain(&a.rays).map(|v| v[i].clone()).collect();
                p.constrain(row, Cmp::Eq, z[i].clone());
            }
            let mut convex = vec![Q::one(); np];
            convex.extend(vec![Q::zero(); nr]);
            p.constrain(convex, Cmp::Eq, Q::one());
            p.feasible_point().is_some()
        }
    })
}

fn same_ambient(a: &UpperSet, b: &UpperSet) -> Result<()> {
    if a.ambient == b.ambient {
        Ok(())
    } else {
        Err(Error::AmbientMismatch)
    }
}

/// `A + B`, with `A + ∅ = ∅ + B = ∅`.
pub fn minkowski_sum(a: &UpperSet, b: &UpperSet) -> Result<UpperSet> {
    same_ambient(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(UpperSet::empty(&a.ambient));
    }
    if a.is_full() || b.is_full() {
        return Ok(UpperSet::full(&a.ambient));
    }
    let points: Vec<Vector> = a.points.iter().flat_map(|p| b.points.iter().map(move |r| add(p, r))).collect();
    let rays: Vec<Vector> = a.rays.iter().chain(&b.rays).cloned().collect();
    Ok(UpperSet::from_generators(&a.ambient, &dedup_points(points), &rays))
}

/// Adds the cone generated by `rays` to `a`.
pub fn add_cone(a: &UpperSet, rays: &[Vector]) -> UpperSet {
    if a.kind != Kind::Proper || rays.iter().all(|r| is_zero(r)) {
        return a.clone();
    }
    let mut all = a.rays.clone();
    all.extend(rays.iter().cloned());
    UpperSet::from_generators(&a.ambient, &a.points, &all)
}

/// Greatest lower bound under `⊇`: the closed convex hull of the union.
pub fn lattice_inf(sets: &[UpperSet]) -> Result<UpperSet> {
    let first = sets.first().ok_or(Error::EmptySequence)?;
    for s in sets {
        same_ambient(first, s)?;
    }
    if sets.iter().any(UpperSet::is_full) {
        return Ok(UpperSet::full(&first.ambient));
    }
    let nonempty: Vec<&UpperSet> = sets.iter().filter(|s| !s.is_empty()).collect();
    if nonempty.is_empty() {
        return Ok(UpperSet::empty(&first.ambient));
    }
    if nonempty.len() == 1 {
        return Ok(nonempty[0].clone());
    }
    let points = dedup_points(nonempty.iter().flat_map(|s| s.points.iter().cloned()));
    let rays = dedup_directions(nonempty.iter().flat_map(|s| s.rays.iter().cloned()));
    Ok(UpperSet::from_generators(&first.ambient, &points, &rays))
}

/// Least upper bound under `⊇`: the intersection.
pub fn lattice_sup(sets: &[UpperSet]) -> Result<UpperSet> {
    let first = sets.first().ok_or(Error::EmptySequence)?;
    for s in sets {
        same_ambient(first, s)?;
    }
    if sets.iter().any(UpperSet::is_empty) {
        return Ok(UpperSet::empty(&first.ambient));
    }
    let hs: Vec<Halfspace> = sets.iter().flat_map(|s| s.hrep.iter().cloned()).collect();
    UpperSet::from_halfspaces(&first.ambient, &hs)
}

/// Set equality certified by comparing support functions on `probes` and on
/// every facet normal of either set.
pub fn set_equal(a: &UpperSet, b: &UpperSet, probes: &[Vector]) -> Result<bool> {
    Ok(separating_probe(a, b, probes)?.is_none())
}

/// A direction on which the supports of `a` and `b` differ, if any.
pub fn separating_probe(a: &UpperSet, b: &UpperSet, probes: &[Vector]) -> Result<Option<Vector>> {
    if probes.is_empty() {
        return Err(Error::EmptySequence);
    }
    same_ambient(a, b)?;
    let normals = a.hrep.iter().chain(&b.hrep).map(|h| &h.normal);
    for z in probes.iter().chain(normals) {
        if support(a, z)? != support(b, z)? {
            return Ok(Some(z.clone()));
        }
    }
    Ok(None)
}

/// `A ⊆ B`, decided on the facet normals of `B`.
pub fn is_subset(a: &UpperSet, b: &UpperSet) -> Result<bool> {
    same_ambient(a, b)?;
    Ok(match (a.kind, b.kind) {
        (Kind::Empty, _) | (_, Kind::Full) => true,
        (_, Kind::Empty) | (Kind::Full, _) => false,
        (Kind::Proper, Kind::Proper) => {
            for h in &b.hrep {
                if support(a, &h.normal)? < ExtReal::Finite(h.level.clone()) {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// Outcome of the sampled check relating convexity of `B \ A` with
/// quasiconcavity of the indicator of `A` on `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiconcavityReport {
    pub difference_convex: bool,
    pub indicator_quasiconcave: bool,
    /// Endpoints and interior point of a violating segment, if one was found.
    pub witness: Option<(Vector, Vector, Vector)>,
}

impl QuasiconcavityReport {
    pub fn equivalent(&self) -> bool {
        self.difference_convex == self.indicator_quasiconcave
    }
}

/// Samples segments in `B` and tests both sides of the equivalence
/// "`B \ A` convex iff `I_A` quasiconcave on `B`". Returns whether they agree.
pub fn indicator_quasiconcavity_check(a: &UpperSet, b: &UpperSet, samples: usize, seed: u64) -> Result<bool> {
    Ok(indicator_quasiconcavity_report(a, b, samples, seed)?.equivalent())
}

pub fn indicator_quasiconcavity_report(a: &UpperSet, b: &UpperSet, samples: usize, seed: u64) -> Result<QuasiconcavityReport> {
    if !is_subset(a, b)? {
        return Err(Error::NotSubset);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = sample_points(b, 4 * samples.max(4), &mut rng);
    let lambdas = [qr(1, 2), qr(1, 3), qr(2, 3), qr(1, 4), qr(3, 4)];
    let indicator = |z: &[Q]| if a.satisfies_hrep(z) { ExtReal::zero() } else { ExtReal::PosInf };

    let mut report = QuasiconcavityReport { difference_convex: true, indicator_quasiconcave: true, witness: None };
    if pool.len() < 2 {
        return Ok(report);
    }
    for _ in 0..samples {
        let z1 = &pool[rng.gen_range(0..pool.len())];
        let z2 = &pool[rng.gen_range(0..pool.len())];
        for l in &lambdas {
            let mid: Vector = z1.iter().zip(z2).map(|(u, v)| l * u + (Q::one() - l) * v).collect();
            let (i1, i2, im) = (indicator(z1), indicator(z2), indicator(&mid));
            if im < i1.clone().min(i2.clone()) {
                report.indicator_quasiconcave = false;
                report.witness.get_or_insert((z1.clone(), z2.clone(), mid.clone()));
            }
            if i1 == ExtReal::PosInf && i2 == ExtReal::PosInf && a.satisfies_hrep(&mid) {
                report.difference_convex = false;
            }
        }
    }
    Ok(report)
}

/// Rational points of `set`: grid points of a box around its vertices that pass
/// the membership test, plus random generator combinations.
fn sample_points(set: &UpperSet, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    if set.is_empty() {
        return Vec::new();
    }
    let n = set.dim();
    let mut out = Vec::new();
    let (lo, hi) = match set.kind {
        Kind::Full => (-3i64, 3i64),
        _ => {
            let mut lo = -1i64;
            let mut hi = 1i64;
            for p in &set.points {
                for v in p {
                    let f = v.floor().to_integer();
                    let c = v.ceil().to_integer();
                    lo = lo.min(i64::try_from(f).unwrap_or(-8) - 2);
                    hi = hi.max(i64::try_from(c).unwrap_or(8) + 2);
                }
            }
            (lo.max(-16), hi.min(16))
        }
    };
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count {
        attempts += 1;
        let z: Vector = (0..n).map(|_| qr(rng.gen_range(2 * lo..=2 * hi), 2)).collect();
        if set.satisfies_hrep(&z) {
            out.push(z);
        }
    }
    if set.kind == Kind::Proper {
        for _ in 0..count / 4 {
            let i = rng.gen_range(0..set.points.len());
            let j = rng.gen_range(0..set.points.len());
            let t = qr(rng.gen_range(0..=4), 4);
            let mut z: Vector = set.points[i].iter().zip(&set.points[j]).map(|(u, v)| &t * u + (Q::one() - &t) * v).collect();
            if !set.rays.is_empty() {
                let r = &set.rays[rng.gen_range(0..set.rays.len())];
                z = crate::rational::axpy(&z, &q(rng.gen_range(0..3)), r);
            }
            out.push(z);
        }
    }
    out
}

impl fmt::Display for UpperSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Empty => f.write_str("empty"),
            Kind::Full => f.write_str("full"),
            Kind::Proper => {
                let pts: Vec<String> = self.points.iter().map(|p| fmt_vec(p)).collect();
                let rays: Vec<String> = self.rays.iter().map(|r| fmt_vec(r)).collect();
                write!(f, "conv{{{}}} + cone{{{}}}", pts.join(", "), rays.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn r2() -> OrderCone {
        OrderCone::orthant(2).unwrap()
    }

    fn tr(c: &OrderCone, z: &[i64]) -> UpperSet {
        UpperSet::translate(c, qvec(z)).unwrap()
    }

    fn probes2() -> Vec<Vector> {
        vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1]), qvec(&[1, 2]), qvec(&[2, 1])]
    }

    #[test]
    fn support_examples() {
        let c = r2();
        assert_eq!(support(&UpperSet::empty(&c), &qvec(&[1, 1])).unwrap(), ExtReal::PosInf);
        let a = tr(&c, &[1, 2]);
        assert_eq!(support(&a, &qvec(&[1, 1])).unwrap(), ExtReal::Finite(q(3)));
        assert_eq!(support(&a, &qvec(&[1, -1])).unwrap(), ExtReal::NegInf);
        assert!(support(&a, &qvec(&[1])).is_err());
    }

    #[test]
    fn contains_examples() {
        let c = r2();
        let a = tr(&c, &[0, 0]);
        assert!(contains(&a, &qvec(&[1, 1])).unwrap());
        assert!(!contains(&a, &qvec(&[-1, 0])).unwrap());
        assert!(!contains(&UpperSet::empty(&c), &qvec(&[0, 0])).unwrap());
    }

    #[test]
    fn minkowski_examples() {
        let c = r2();
        let s = minkowski_sum(&tr(&c, &[1, 0]), &tr(&c, &[0, 1])).unwrap();
        assert!(set_equal(&s, &tr(&c, &[1, 1]), &probes2()).unwrap());
        let e = minkowski_sum(&tr(&c, &[1, 0]), &UpperSet::empty(&c)).unwrap();
        assert!(e.is_empty());
        let h = halfspace_set(&c, qvec(&[1, 0]), q(0)).unwrap();
        let s = minkowski_sum(&tr(&c, &[0, 0]), &h).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                let z = qvec(&[a, b]);
                assert_eq!(contains(&s, &z).unwrap(), a >= 0);
            }
        }
    }

    #[test]
    fn lattice_inf_examples() {
        let c = r2();
        let a = tr(&c, &[0, 0]);
        let b = tr(&c, &[2, -1]);
        let i = lattice_inf(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(support(&i, &qvec(&[1, 1])).unwrap(), ExtReal::Finite(q(0)));
        assert!(contains(&i, &qvec(&[2, -1])).unwrap());
        assert!(!contains(&i, &qvec(&[1, -1])).unwrap());
        assert!(set_equal(&lattice_inf(std::slice::from_ref(&a)).unwrap(), &a, &probes2()).unwrap());
        assert!(set_equal(&lattice_inf(&[UpperSet::empty(&c), a.clone()]).unwrap(), &a, &probes2()).unwrap());
        assert_eq!(lattice_inf(&[]), Err(Error::EmptySequence));
    }

    #[test]
    fn lattice_sup_examples() {
        let c = r2();
        let s = lattice_sup(&[tr(&c, &[0, 0]), tr(&c, &[2, -1])]).unwrap();
        assert!(set_equal(&s, &tr(&c, &[2, 0]), &probes2()).unwrap());
        let a = tr(&c, &[1, 3]);
        assert!(set_equal(&lattice_sup(&[a.clone(), UpperSet::full(&c)]).unwrap(), &a, &probes2()).unwrap());
        let c1 = OrderCone::orthant(1).unwrap();
        let s = lattice_sup(&[tr(&c1, &[0]), tr(&c1, &[1])]).unwrap();
        assert!(set_equal(&s, &tr(&c1, &[1]), &[qvec(&[1])]).unwrap());
    }

    #[test]
    fn set_equal_examples() {
        let c = r2();
        let a = tr(&c, &[0, 0]);
        assert!(set_equal(&a, &a, &probes2()).unwrap());
        let b = UpperSet::new(&c, vec![qvec(&[0, 0])], vec![qvec(&[1, -1])]).unwrap();
        assert!(!set_equal(&a, &b, &probes2()).unwrap());
        assert_eq!(support(&b, &qvec(&[0, 1])).unwrap(), ExtReal::NegInf);
        assert!(!set_equal(&UpperSet::empty(&c), &UpperSet::full(&c), &probes2()).unwrap());
        assert!(set_equal(&a, &a, &[]).is_err());
    }

    #[test]
    fn spanning_rays_give_full() {
        let c = r2();
        let a = UpperSet::new(&c, vec![qvec(&[0, 0])], vec![qvec(&[-1, -1])]).unwrap();
        assert!(a.is_full());
    }

    #[test]
    fn redundant_points_are_dropped() {
        let c = r2();
        let a = UpperSet::new(&c, vec![qvec(&[0, 0]), qvec(&[1, 1]), qvec(&[2, 0])], vec![]).unwrap();
        assert_eq!(a.points(), &[qvec(&[0, 0])]);
    }

    #[test]
    fn quasiconcavity_examples() {
        let zero = OrderCone::new(2, vec![]).unwrap();
        let square = |r: i64| {
            let pts = vec![qvec(&[-r, -r]), qvec(&[-r, r]), qvec(&[r, -r]), qvec(&[r, r])];
            UpperSet::new(&zero, pts, vec![]).unwrap()
        };
        let b = square(2);
        assert!(indicator_quasiconcavity_check(&b, &b, 100, 7).unwrap());

        let a = square(1);
        let rep = indicator_quasiconcavity_report(&a, &b, 200, 7).unwrap();
        assert!(!rep.difference_convex);
        assert!(!rep.indicator_quasiconcave);
        assert!(rep.witness.is_some());

        let up = OrderCone::new(2, vec![qvec(&[0, 1]), qvec(&[1, 0]), qvec(&[-1, 0])]).unwrap();
        let b = halfspace_set(&up, qvec(&[0, 1]), q(0)).unwrap();
        let a = halfspace_set(&up, qvec(&[0, 1]), q(1)).unwrap();
        let rep = indicator_quasiconcavity_report(&a, &b, 200, 7).unwrap();
        assert!(rep.difference_convex && rep.indicator_quasiconcave);

        assert_eq!(indicator_quasiconcavity_check(&b, &a, 10, 1), Err(Error::NotSubset));
    }
}
