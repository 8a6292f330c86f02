//! Brute-force reference computations, kept free of the LP solver and of
//! the routes the main code takes, so they can cross-check it.

use num_traits::{Signed, Zero};

use crate::composition::CompositionInstance;
use crate::error::{Error, Result};
use crate::rational::{dot, ExtReal, Q, Vector};
use crate::scalar_fn::ExtScalarFn;
use crate::setvalued_fn::SetValuedFn;
use crate::upper_sets::{Kind, UpperSet};

/// `inf <z*, z>` over `A`, from its halfspaces alone: the best value
/// `sum lambda_i level_i` over basic nonnegative multipliers with
/// `sum lambda_i normal_i = z*`, found by enumerating independent subsets.
/// No multipliers means `z*` leaves the recession cone's dual, giving `-inf`.
pub fn oracle_support(a: &UpperSet, zstar: &[Q]) -> ExtReal {
    match a.kind() {
        Kind::Empty => ExtReal::PosInf,
        Kind::Full if zstar.iter().all(Zero::is_zero) => ExtReal::zero(),
        Kind::Full => ExtReal::NegInf,
        Kind::Proper => {
            let hs = a.hrep();
            let mut best = ExtReal::NegInf;
            let mut subset = Vec::new();
            enumerate_subsets(hs.len(), a.dim(), 0, &mut subset, &mut |idx| {
                let cols: Vec<&Vector> = idx.iter().map(|&i| &hs[i].normal).collect();
                if let Some(lambda) = solve_nonnegative(&cols, zstar) {
                    let v: Q = lambda.iter().zip(idx).map(|(l, &i)| l * &hs[i].level).sum();
                    let v = ExtReal::Finite(v);
                    if v > best {
                        best = v;
                    }
                }
            });
            best
        }
    }
}

fn enumerate_subsets(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    visit(cur);
    if cur.len() == max {
        return;
    }
    for i in start..n {
        cur.push(i);
        enumerate_subsets(n, max, i + 1, cur, visit);
        cur.pop();
    }
}

/// The unique `lambda >= 0` with `sum lambda_i cols_i = b` when the columns
/// are independent and the system is consistent.
fn solve_nonnegative(cols: &[&Vector], b: &[Q]) -> Option<Vec<Q>> {
    let (m, k) = (b.len(), cols.len());
    let mut rows: Vec<Vec<Q>> = (0..m).map(|r| cols.iter().map(|c| c[r].clone()).chain([b[r].clone()]).collect()).collect();
    let mut pivot_row = 0;
    for c in 0..k {
        let p = (pivot_row..m).find(|&r| !rows[r][c].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][c].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m {
            if r != pivot_row && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in 0..=k {
                    let d = &f * &rows[pivot_row][j];
                    rows[r][j] -= d;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let lambda: Vec<Q> = rows[..k].iter().map(|r| r[k].clone()).collect();
    lambda.iter().all(|l| !l.is_negative()).then_some(lambda)
}

fn lookup<'a>(f: &'a SetValuedFn, y: &[Q]) -> Option<&'a UpperSet> {
    f.grid().iter().position(|g| g.as_slice() == y).map(|i| &f.values()[i])
}

fn image_of(f: &SetValuedFn, dir: &[Q]) -> Option<Vector> {
    f.rays().iter().find_map(|r| {
        let k = r.direction.iter().position(|v| !v.is_zero())?;
        let t = &dir[k] / &r.direction[k];
        (t.is_positive() && dir.iter().zip(&r.direction).all(|(a, b)| *a == &t * b)).then(|| r.image.iter().map(|v| v * &t).collect())
    })
}

/// `sup <x*, x> - <z*, z>` over pairs `(x, z)` with `z` generated by `F(y)`
/// for `y` a vertex of `G(x)`, extended along declared and recession rays.
/// Unboundedness is detected by evaluating the objective at steps 1 and 2.
pub fn oracle_conjugate_of_composition(inst: &CompositionInstance, xstar: &[Q], zstar: &[Q]) -> Result<ExtReal> {
    let (g, f) = (&inst.g, &inst.f);
    let mut best = ExtReal::NegInf;
    let mut anchor: Option<(Vector, Q)> = None;
    let mut moves: Vec<(Vector, Vector)> = Vec::new();
    for (x, gx) in g.grid().iter().zip(g.values()) {
        if gx.kind() == Kind::Empty {
            continue;
        }
        for p in gx.points() {
            let fp = lookup(f, p).ok_or_else(|| Error::OffGrid(crate::rational::fmt_vec(p)))?;
            match oracle_support(fp, zstar) {
                ExtReal::NegInf => return Ok(ExtReal::PosInf),
                ExtReal::PosInf => {}
                ExtReal::Finite(s) => {
                    let v = dot(xstar, x) - &s;
                    best = best.max(ExtReal::Finite(v.clone()));
                    anchor.get_or_insert((x.clone(), s));
                }
            }
        }
        for rho in gx.rays() {
            let img = image_of(f, rho).ok_or_else(|| Error::NotComposable(crate::rational::fmt_vec(rho)))?;
            moves.push((vec![Q::zero(); x.len()], img));
        }
    }
    for r in g.rays() {
        let img = image_of(f, &r.image).ok_or_else(|| Error::NotComposable(crate::rational::fmt_vec(&r.image)))?;
        moves.push((r.direction.clone(), img));
    }
    if let Some((x, s)) = anchor {
        let at = |d: &Vector, v: &Vector, t: i64| {
            let t = Q::from_integer(t.into());
            let xs: Vector = x.iter().zip(d).map(|(a, b)| a + b * &t).collect();
            dot(xstar, &xs) - (&s + dot(zstar, v) * &t)
        };
        for (d, v) in &moves {
            if at(d, v, 2) > at(d, v, 1) {
                return Ok(ExtReal::PosInf);
            }
        }
    }
    Ok(best)
}

/// Lower convex envelope of a ray-free grid function in one or two
/// dimensions, by enumerating segments and triangles of finite grid points.
pub fn oracle_envelope(rho: &ExtScalarFn) -> Result<Vec<ExtReal>> {
    if !rho.rays().is_empty() {
        return Err(Error::Unsupported("envelope of a function with declared rays".into()));
    }
    if rho.dim() == 0 || rho.dim() > 2 {
        return Err(Error::Unsupported(format!("envelope in dimension {}", rho.dim())));
    }
    let n = rho.grid().len();
    if rho.values().contains(&ExtReal::NegInf) {
        return Ok(vec![ExtReal::NegInf; n]);
    }
    let pts: Vec<(&Vector, &Q)> = rho.grid().iter().zip(rho.values()).filter_map(|(x, v)| v.finite().map(|v| (x, v))).collect();
    let mut out = Vec::with_capacity(n);
    for x in rho.grid() {
        let mut best = ExtReal::PosInf;
        for (i, (a, fa)) in pts.iter().enumerate() {
            if *a == x {
                best = best.min(ExtReal::Finite((*fa).clone()));
            }
            for (j, (b, fb)) in pts.iter().enumerate().skip(i + 1) {
                if let Some(t) = on_segment(a, b, x) {
                    best = best.min(ExtReal::Finite(&(Q::from_integer(1.into()) - &t) * *fa + &t * *fb));
                }
                if rho.dim() == 2 {
                    for (c, fc) in pts.iter().skip(j + 1) {
                        if let Some((la, lb, lc)) = barycentric(a, b, c, x) {
                            best = best.min(ExtReal::Finite(la * *fa + lb * *fb + lc * *fc));
                        }
                    }
                }
            }
        }
        out.push(best);
    }
    Ok(out)
}

/// `t` in `[0, 1]` with `x = a + t (b - a)`.
fn on_segment(a: &[Q], b: &[Q], x: &[Q]) -> Option<Q> {
    let k = a.iter().zip(b).position(|(u, v)| u != v)?;
    let t = (&x[k] - &a[k]) / (&b[k] - &a[k]);
    if t.is_negative() || t > Q::from_integer(1.into()) {
        return None;
    }
    a.iter().zip(b).zip(x).all(|((u, v), w)| *w == u + &t * (v - u)).then_some(t)
}

fn barycentric(a: &[Q], b: &[Q], c: &[Q], x: &[Q]) -> Option<(Q, Q, Q)> {
    let (e1, e2, r) = ([&b[0] - &a[0], &b[1] - &a[1]], [&c[0] - &a[0], &c[1] - &a[1]], [&x[0] - &a[0], &x[1] - &a[1]]);
    let det = &e1[0] * &e2[1] - &e1[1] * &e2[0];
    if det.is_zero() {
        return None;
    }
    let lb = (&r[0] * &e2[1] - &r[1] * &e2[0]) / &det;
    let lc = (&e1[0] * &r[1] - &e1[1] * &r[0]) / &det;
    let la = Q::from_integer(1.into()) - &lb - &lc;
    (!la.is_negative() && !lb.is_negative() && !lc.is_negative()).then_some((la, lb, lc))
}
