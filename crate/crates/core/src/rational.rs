//! Exact rational scalars, vectors, and the extended real line over them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type Vector = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(values: &[i64]) -> Vector {
    values.iter().map(|&v| q(v)).collect()
}

pub fn zeros(dim: usize) -> Vector {
    vec![Q::zero(); dim]
}

pub fn unit(dim: usize, index: usize) -> Vector {
    let mut v = zeros(dim);
    v[index] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Q]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `a + s * b`
pub fn axpy(a: &[Q], s: &Q, b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Rescales a nonzero direction to its primitive integer representative
/// (coprime integer entries, same orientation). Zero vectors are returned unchanged.
pub fn primitive(a: &[Q]) -> Vector {
    if is_zero(a) {
        return a.to_vec();
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Q::from_integer(x / &gcd))
        .collect()
}

/// Deduplicates directions up to positive scaling, keeping first occurrences.
pub fn dedup_directions(dirs: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for d in dirs {
        if is_zero(&d) {
            continue;
        }
        let p = primitive(&d);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn dedup_points(points: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for p in points {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(", "))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rank of a list of row vectors (exact Gaussian elimination).
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vector> = rows.to_vec();
    echelon(&mut m).len()
}

/// Reduces `m` in place to reduced row echelon form and returns pivot columns.
pub fn echelon(m: &mut Vec<Vector>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        m[row] = scale(&m[row], &inv);
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                m[r] = axpy(&m[r], &-f, &m[row]);
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

/// Basis of `{y : row . y = 0 for every row}` in dimension `dim`.
pub fn nullspace(rows: &[Vector], dim: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.to_vec();
    let pivots = echelon(&mut m);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(dim);
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// A value of the extended rational line `[-inf, +inf]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(Q),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(Q::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Sum with the inf-convention: `+inf` dominates (`(+inf) + (-inf) = +inf`).
    ///
    /// Suprema of `a - b` terms never reach this case in the conjugate
    /// routines; the convention only matters for sums of conjugates, where
    /// an infinite penalty must survive.
    pub fn add_upper(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::PosInf, _) | (_, ExtReal::PosInf) => ExtReal::PosInf,
            (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => ExtReal::NegInf,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
        }
    }

    /// Sum with the sup-convention: `-inf` dominates.
    pub fn add_lower(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => ExtReal::NegInf,
            (ExtReal::PosInf, _) | (_, ExtReal::PosInf) => ExtReal::PosInf,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
        }
    }

    pub fn add_q(&self, x: &Q) -> ExtReal {
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a + x),
            other => other.clone(),
        }
    }

    pub fn mul_pos(&self, s: &Q) -> ExtReal {
        debug_assert!(s.is_positive());
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a * s),
            other => other.clone(),
        }
    }

    /// `self - other` where both sides are the same infinity counts as zero.
    /// Used for gap reporting only.
    pub fn gap_from(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a - b),
            (a, b) if a == b => ExtReal::zero(),
            (ExtReal::PosInf, _) | (_, ExtReal::NegInf) => ExtReal::PosInf,
            _ => ExtReal::NegInf,
        }
    }
}

impl From<Q> for ExtReal {
    fn from(v: Q) -> Self {
        ExtReal::Finite(v)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(v) => ExtReal::Finite(-v),
        }
    }
}

impl Add<&Q> for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: &Q) -> ExtReal {
        self.add_q(rhs)
    }
}

impl Sub<&Q> for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: &Q) -> ExtReal {
        self.add_q(&-rhs)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("+inf"),
            ExtReal::Finite(v) => f.write_str(&fmt_q(v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_direction() {
        let v = vec![qr(2, 3), qr(-4, 3), q(0)];
        assert_eq!(primitive(&v), qvec(&[1, -2, 0]));
        assert_eq!(primitive(&qvec(&[-6, 9])), qvec(&[-2, 3]));
    }

    #[test]
    fn nullspace_of_plane() {
        let basis = nullspace(&[qvec(&[1, 1, 0])], 3);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(dot(b, &qvec(&[1, 1, 0])).is_zero());
        }
        assert_eq!(rank(&basis), 2);
    }

    #[test]
    fn ext_order_and_gap() {
        assert!(ExtReal::NegInf < ExtReal::zero());
        assert!(ExtReal::Finite(q(5)) < ExtReal::PosInf);
        assert_eq!(ExtReal::PosInf.gap_from(&ExtReal::PosInf), ExtReal::zero());
        assert_eq!(ExtReal::Finite(q(3)).gap_from(&ExtReal::Finite(q(1))), ExtReal::Finite(q(2)));
        assert_eq!(ExtReal::PosInf.add_upper(&ExtReal::NegInf), ExtReal::PosInf);
        assert_eq!(-ExtReal::PosInf, ExtReal::NegInf);
    }
}
