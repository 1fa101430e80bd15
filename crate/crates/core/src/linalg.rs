//! Exact dense linear algebra over `Scalar`.
//!
//! Everything is built on [`Echelon`], an incrementally maintained reduced
//! row echelon basis. Pivots are the first nonzero coordinate, so callers
//! control leading terms by ordering coordinates.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `v -= c * w`
pub fn axpy(v: &mut [Scalar], c: &Scalar, w: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in v.iter_mut().zip(w) {
        if !y.is_zero() {
            *x -= &(c * y);
        }
    }
}

/// Reduced row echelon basis of a subspace of K^dim.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; dim] }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut e = Echelon::new(dim);
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Subtracts the span from `v`, leaving zeros in every pivot column.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                axpy(v, &c, row);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero(&w)
    }

    /// Adds `v` to the span; returns its pivot column if the rank grew.
    pub fn insert(&mut self, mut v: Vector) -> Option<usize> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        self.reduce(&mut v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                axpy(row, &c, &v);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        Some(p)
    }

    /// Coordinates of `v` in terms of `rows()`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (row, ci) in self.rows.iter().zip(&c) {
            axpy(&mut w, ci, row);
        }
        is_zero(&w).then_some(c)
    }

    /// Basis of the kernel of the linear forms given by the rows.
    pub fn kernel(&self) -> Vec<Vector> {
        (0..self.dim)
            .filter(|&f| self.pivot_row[f].is_none())
            .map(|f| {
                let mut x = zeros(self.dim);
                x[f] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        x[p] = -&row[f];
                    }
                }
                x
            })
            .collect()
    }
}

/// Solutions of `M x = 0` where `rows` are the rows of `M`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    Echelon::from_vectors(ncols, rows).kernel()
}

pub fn rank(vs: &[Vector], dim: usize) -> usize {
    Echelon::from_vectors(dim, vs).rank()
}

/// The quotient `space / sub` with a chosen basis of representatives.
///
/// Representatives are kept reduced against `sub`, so the class of a vector
/// can be read off the representative pivots after reducing by `sub`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Echelon,
    reps: Echelon,
}

impl Quotient {
    pub fn new(dim: usize, sub: &[Vector], space: &[Vector]) -> Self {
        let sub = Echelon::from_vectors(dim, sub);
        let mut q = Quotient { reps: Echelon::new(dim), sub };
        for v in space {
            q.push(v.clone());
        }
        q
    }

    fn push(&mut self, mut v: Vector) -> bool {
        self.sub.reduce(&mut v);
        self.reps.insert(v).is_some()
    }

    pub fn dim(&self) -> usize {
        self.reps.rank()
    }

    pub fn ambient(&self) -> usize {
        self.sub.dim()
    }

    pub fn reps(&self) -> &[Vector] {
        self.reps.rows()
    }

    pub fn sub(&self) -> &Echelon {
        &self.sub
    }

    /// Class coordinates of `v` in the representative basis.
    pub fn class(&self, v: &[Scalar]) -> Result<Vector> {
        let mut w = v.to_vec();
        self.sub.reduce(&mut w);
        self.reps
            .coords(&w)
            .ok_or_else(|| Error::Invariant("vector lies outside the quotient's ambient space".into()))
    }
}

pub type Matrix = Vec<Vector>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            let mut r = zeros(n);
            r[i] = Scalar::one();
            r
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zeros(m);
            for (x, brow) in row.iter().zip(b) {
                if !x.is_zero() {
                    for (o, y) in out.iter_mut().zip(brow) {
                        if !y.is_zero() {
                            *o += &(x * y);
                        }
                    }
                }
            }
            out
        })
        .collect()
}

pub fn transpose(a: &Matrix, ncols: usize) -> Matrix {
    (0..ncols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Gauss–Jordan inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::Invariant("matrix is singular".into()))?;
        aug.swap(col, piv);
        let inv = aug[col][col].inv()?;
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        let prow = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let c = row[col].clone();
                axpy(row, &c, &prow);
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `x · basis = target` for the row vector `x`, if possible.
pub fn express(basis: &[Vector], target: &[Scalar]) -> Option<Vector> {
    let dim = target.len();
    // augment each basis vector with an identity tag to recover coefficients
    let k = basis.len();
    let mut e = Echelon::new(dim + k);
    for (i, b) in basis.iter().enumerate() {
        let mut v = b.clone();
        v.extend((0..k).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
        e.insert(v);
    }
    let mut t = target.to_vec();
    t.extend(zeros(k));
    e.reduce(&mut t);
    if !is_zero(&t[..dim]) {
        return None;
    }
    Some(t[dim..].iter().map(|x| -x).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn echelon_rank_and_coords() {
        let mut e = Echelon::new(3);
        assert!(e.insert(v(&[1, 2, 3])).is_some());
        assert!(e.insert(v(&[2, 4, 6])).is_none());
        assert!(e.insert(v(&[0, 1, 1])).is_some());
        assert_eq!(e.rank(), 2);
        let target = v(&[1, 3, 4]);
        let c = e.coords(&target).unwrap();
        let mut back = zeros(3);
        for (ci, row) in c.iter().zip(e.rows()) {
            axpy(&mut back, &-ci, row);
        }
        assert_eq!(back, target);
        assert!(e.coords(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let ker = nullspace(&[v(&[1, 1, 1])], 3);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let s = k.iter().fold(Scalar::zero(), |a, b| &a + b);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn quotient_classes() {
        let q = Quotient::new(3, &[v(&[1, 0, 0])], &[v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 2, 0])]);
        assert_eq!(q.dim(), 1);
        let a = q.class(&v(&[5, 3, 0])).unwrap();
        let b = q.class(&v(&[0, 3, 0])).unwrap();
        assert_eq!(a, b);
        assert!(q.class(&v(&[0, 0, 1])).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&vec![v(&[1, 2]), v(&[2, 4])]).is_err());
    }

    #[test]
    fn express_recovers_coefficients() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let c = express(&basis, &v(&[2, 3, 5])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(express(&basis, &v(&[0, 0, 1])).is_none());
    }
}
