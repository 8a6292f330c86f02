//! Exact two-phase simplex over the rationals.
//!
//! Problems are small, so a dense tableau is adequate and keeps every answer
//! exact: feasibility, optimal values, and unboundedness are decided without
//! tolerances.

use num_traits::{Signed, Zero};

use crate::rational::{Q, Vector};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vector, value: Q },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

/// Linear program in general form: `minimize c.x` subject to rows
/// `a.x (<=|>=|=) b`, with each variable either free or nonnegative.
#[derive(Clone, Debug)]
pub struct Problem {
    n: usize,
    free: Vec<bool>,
    rows: Vec<(Vector, Cmp, Q)>,
    objective: Vector,
}

impl Problem {
    pub fn new(n: usize) -> Self {
        Self { n, free: vec![false; n], rows: Vec::new(), objective: vec![Q::zero(); n] }
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn constrain(&mut self, coeffs: Vector, cmp: Cmp, rhs: Q) -> &mut Self {
        debug_assert_eq!(coeffs.len(), self.n);
        self.rows.push((coeffs, cmp, rhs));
        self
    }

    pub fn minimize(&mut self, objective: Vector) -> &mut Self {
        debug_assert_eq!(objective.len(), self.n);
        self.objective = objective;
        self
    }

    pub fn solve(&self) -> LpOutcome {
        let mut rows: Vec<&(Vector, Cmp, Q)> = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            if !rows.contains(&r) {
                rows.push(r);
            }
        }
        // Standard form columns: x+ for every var, x- for free vars, one slack per inequality.
        let mut col_of_neg = vec![None; self.n];
        let mut ncols = self.n;
        for v in 0..self.n {
            if self.free[v] {
                col_of_neg[v] = Some(ncols);
                ncols += 1;
            }
        }
        let mut slack_col = Vec::with_capacity(rows.len());
        for (_, cmp, _) in &rows {
            if *cmp == Cmp::Eq {
                slack_col.push(None);
            } else {
                slack_col.push(Some(ncols));
                ncols += 1;
            }
        }
        let mut a = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        for (i, (coeffs, cmp, rhs)) in rows.iter().enumerate() {
            let mut row = vec![Q::zero(); ncols];
            for v in 0..self.n {
                row[v] = coeffs[v].clone();
                if let Some(c) = col_of_neg[v] {
                    row[c] = -coeffs[v].clone();
                }
            }
            if let Some(s) = slack_col[i] {
                row[s] = match cmp {
                    Cmp::Le => Q::from_integer(1.into()),
                    _ => Q::from_integer((-1).into()),
                };
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let mut c = vec![Q::zero(); ncols];
        for v in 0..self.n {
            c[v] = self.objective[v].clone();
            if let Some(col) = col_of_neg[v] {
                c[col] = -self.objective[v].clone();
            }
        }
        match minimize_standard(&c, &a, &b) {
            LpOutcome::Optimal { x, value } => {
                let mut out = x[..self.n].to_vec();
                for v in 0..self.n {
                    if let Some(col) = col_of_neg[v] {
                        out[v] = &out[v] - &x[col];
                    }
                }
                LpOutcome::Optimal { x: out, value }
            }
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vector> {
        let mut p = self.clone();
        p.objective = vec![Q::zero(); self.n];
        match p.solve() {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

/// `minimize c.x  s.t.  A x = b, x >= 0`.
pub fn minimize_standard(c: &[Q], a: &[Vector], b: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows: Vec<Vector> = Vec::with_capacity(m);
    let mut rhs: Vec<Q> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        rows.push(a[i].iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect());
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    // Start from unit columns already present (slacks); artificials only where none fit.
    let one = Q::from_integer(1.into());
    let mut basis: Vec<Option<usize>> = vec![None; m];
    let mut used = vec![false; n];
    for j in 0..n {
        let mut hit = None;
        let mut unit = true;
        for i in 0..m {
            if rows[i][j].is_zero() {
                continue;
            }
            if rows[i][j] == one && hit.is_none() {
                hit = Some(i);
            } else {
                unit = false;
                break;
            }
        }
        if let (true, Some(i)) = (unit, hit) {
            if basis[i].is_none() && !used[j] {
                basis[i] = Some(j);
                used[j] = true;
            }
        }
    }
    let art: Vec<usize> = (0..m).filter(|&i| basis[i].is_none()).collect();
    let k = art.len();
    let width = n + k + 1;
    let mut t: Vec<Vector> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = rows[i].clone();
        row.resize(n + k, Q::zero());
        row.push(rhs[i].clone());
        t.push(row);
    }
    for (slot, &i) in art.iter().enumerate() {
        t[i][n + slot] = one.clone();
        basis[i] = Some(n + slot);
    }
    let mut basis: Vec<usize> = basis.into_iter().map(Option::unwrap).collect();

    if k > 0 {
        // Phase 1: minimize the sum of artificials.
        let mut phase1 = vec![Q::zero(); n + k];
        for v in phase1.iter_mut().skip(n) {
            *v = one.clone();
        }
        if run_simplex(&mut t, &mut basis, &phase1, n + k).is_err() {
            unreachable!("phase 1 objective is bounded below by zero");
        }
        let infeas: Q = basis
            .iter()
            .enumerate()
            .filter(|(_, &bv)| bv >= n)
            .fold(Q::zero(), |acc, (r, _)| acc + &t[r][width - 1]);
        if infeas.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut r = 0;
        while r < t.len() {
            if basis[r] >= n {
                if let Some(col) = (0..n).find(|&j| !t[r][j].is_zero()) {
                    pivot(&mut t, &mut basis, r, col);
                } else {
                    t.remove(r);
                    basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
    }
    // Phase 2 over the original columns only.
    let mut t2: Vec<Vector> = t
        .iter()
        .map(|row| {
            let mut nr: Vector = row[..n].to_vec();
            nr.push(row[width - 1].clone());
            nr
        })
        .collect();
    if run_simplex(&mut t2, &mut basis, c, n).is_err() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &bv) in basis.iter().enumerate() {
        x[bv] = t2[r][n].clone();
    }
    let value = c.iter().zip(&x).fold(Q::zero(), |acc, (ci, xi)| acc + ci * xi);
    LpOutcome::Optimal { x, value }
}

fn pivot(t: &mut [Vector], basis: &mut [usize], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        *v *= &inv;
    }
    let prow = t[row].clone();
    for (r, other) in t.iter_mut().enumerate() {
        if r != row && !other[col].is_zero() {
            let f = other[col].clone();
            for (o, p) in other.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *o -= &f * p;
                }
            }
        }
    }
    basis[row] = col;
}

struct Unbounded;

/// Degenerate pivots tolerated under steepest-cost pricing before switching
/// to Bland's rule until progress resumes.
const DEGENERATE_LIMIT: usize = 8;

/// Simplex on a tableau whose last column is the rhs. Prices by most negative
/// reduced cost, falling back to Bland's rule on degenerate streaks so the
/// method cannot cycle. `ncols` is the number of structural columns.
fn run_simplex(t: &mut [Vector], basis: &mut [usize], cost: &[Q], ncols: usize) -> Result<(), Unbounded> {
    let rhs = t.first().map_or(ncols, |r| r.len() - 1);
    let mut streak = 0;
    loop {
        let mut is_basic = vec![false; ncols];
        for &bv in basis.iter() {
            is_basic[bv] = true;
        }
        // Reduced costs: c_j - c_B B^-1 A_j, read off the canonical tableau.
        let mut entering: Option<(usize, Q)> = None;
        for j in (0..ncols).filter(|&j| !is_basic[j]) {
            let mut rc = cost[j].clone();
            for (r, &bv) in basis.iter().enumerate() {
                if !t[r][j].is_zero() && !cost[bv].is_zero() {
                    rc -= &cost[bv] * &t[r][j];
                }
            }
            if rc.is_negative() && entering.as_ref().is_none_or(|(_, best)| rc < *best) {
                entering = Some((j, rc));
                if streak >= DEGENERATE_LIMIT {
                    break;
                }
            }
        }
        let Some((col, _)) = entering else {
            return Ok(());
        };
        let mut best: Option<(usize, Q)> = None;
        for r in 0..t.len() {
            if t[r][col].is_positive() {
                let ratio = &t[r][rhs] / &t[r][col];
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => ratio < *bratio || (ratio == *bratio && basis[r] < basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
        }
        let Some((row, ratio)) = best else {
            return Err(Unbounded);
        };
        streak = if ratio.is_zero() { streak + 1 } else { 0 };
        pivot(t, basis, row, col);
    }
}
