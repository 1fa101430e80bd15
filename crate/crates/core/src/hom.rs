//! Morphism spaces between 2-term complexes in the homotopy category.
//!
//! Every space is computed as an exact linear system over flattened
//! coordinates: a matrix of algebra elements between sums of projectives is
//! laid out entry by entry, each entry contributing the basis of its block
//! `e_r Λ e_c`.

use crate::algebra::Algebra;
use crate::complex::{ProjMatrix, TwoTermComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Quotient, Vector};
use crate::scalar::Scalar;

/// Coordinates on the space of matrices `⊕ P_{cols} → ⊕ P_{rows}`.
#[derive(Clone, Debug)]
pub struct MatLayout {
    rows: Vec<usize>,
    cols: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl MatLayout {
    pub fn new(a: &Algebra, rows: &[usize], cols: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() * cols.len());
        let mut dim = 0;
        for &r in rows {
            for &c in cols {
                offsets.push(dim);
                dim += a.block(r, c).len();
            }
        }
        MatLayout { rows: rows.to_vec(), cols: cols.to_vec(), offsets, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        self.offsets[i * self.cols.len() + j]
    }

    pub fn flatten(&self, a: &Algebra, m: &ProjMatrix) -> Vector {
        let mut v = linalg::zeros(self.dim);
        for (i, row) in m.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let off = self.offset(i, j);
                for (b, c) in e {
                    v[off + a.block_pos(*b)] = c.clone();
                }
            }
        }
        v
    }

    pub fn unflatten(&self, a: &Algebra, v: &[Scalar]) -> ProjMatrix {
        let mut m = ProjMatrix::zero(&self.rows, &self.cols);
        for (i, &r) in self.rows.iter().enumerate() {
            for (j, &c) in self.cols.iter().enumerate() {
                let off = self.offset(i, j);
                m.entries[i][j] = a
                    .block(r, c)
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| !v[off + p].is_zero())
                    .map(|(p, &b)| (b, v[off + p].clone()))
                    .collect();
            }
        }
        m
    }

    /// Coordinate index ↦ `(row, col, basis element)`.
    fn units<'a>(&'a self, a: &'a Algebra) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
        self.rows.iter().enumerate().flat_map(move |(i, &r)| {
            self.cols.iter().enumerate().flat_map(move |(j, &c)| a.block(r, c).iter().map(move |&b| (i, j, b)))
        })
    }
}

/// `m ∘ E_{ij}(b)` where `E_{ij}(b)` has the single entry `b` at `(i, j)`.
fn compose_unit_right(a: &Algebra, m: &ProjMatrix, i: usize, j: usize, b: usize, cols: &[usize]) -> ProjMatrix {
    let mut out = ProjMatrix::zero(&m.rows, cols);
    let unit = a.unit(b);
    for (r, row) in m.entries.iter().enumerate() {
        if !row[i].is_empty() {
            out.entries[r][j] = a.mul(&row[i], &unit);
        }
    }
    out
}

/// `E_{ij}(b) ∘ m`.
fn compose_unit_left(a: &Algebra, m: &ProjMatrix, i: usize, j: usize, b: usize, rows: &[usize]) -> ProjMatrix {
    let mut out = ProjMatrix::zero(rows, &m.cols);
    let unit = a.unit(b);
    for (c, e) in m.entries[j].iter().enumerate() {
        if !e.is_empty() {
            out.entries[i][c] = a.mul(&unit, e);
        }
    }
    out
}

/// Kernel of the linear map whose value on the `k`-th unit vector is `images[k]`.
fn kernel_of(images: &[Vector], out_dim: usize) -> Vec<Vector> {
    let n = images.len();
    let rows: Vec<Vector> = (0..out_dim).map(|o| images.iter().map(|im| im[o].clone()).collect()).collect();
    linalg::nullspace(&rows, n)
}

/// A chain map between 2-term complexes: `minus` acts in degree −1, `zero` in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub minus: ProjMatrix,
    pub zero: ProjMatrix,
}

impl ChainMap {
    pub fn identity(t: &TwoTermComplex) -> Self {
        ChainMap {
            minus: ProjMatrix::identity(&t.algebra, &t.minus),
            zero: ProjMatrix::identity(&t.algebra, &t.zero),
        }
    }

    pub fn zero_map(t: &TwoTermComplex, u: &TwoTermComplex) -> Self {
        ChainMap { minus: ProjMatrix::zero(&u.minus, &t.minus), zero: ProjMatrix::zero(&u.zero, &t.zero) }
    }

    /// `self ∘ other`
    pub fn compose(&self, a: &Algebra, other: &ChainMap) -> ChainMap {
        ChainMap { minus: self.minus.compose(a, &other.minus), zero: self.zero.compose(a, &other.zero) }
    }

    /// `self + c·other`
    pub fn axpy(&self, c: &Scalar, other: &ChainMap) -> ChainMap {
        ChainMap { minus: self.minus.axpy(c, &other.minus), zero: self.zero.axpy(c, &other.zero) }
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap { minus: self.minus.scale(c), zero: self.zero.scale(c) }
    }

    pub fn is_chain_map(&self, t: &TwoTermComplex, u: &TwoTermComplex) -> bool {
        let a = &t.algebra;
        self.zero.compose(a, &t.d).axpy(&-Scalar::one(), &u.d.compose(a, &self.minus)).is_zero()
    }

    /// Block-diagonal residue matrix over the base field (degree −1 block first).
    pub fn residue_matrix(&self, a: &Algebra) -> Vec<Vec<Scalar>> {
        let rm = self.minus.residue(a);
        let rz = self.zero.residue(a);
        let (p, q) = (rm.len(), rz.len());
        let mut out = vec![vec![Scalar::zero(); p + q]; p + q];
        for (i, row) in rm.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                out[i][j] = x;
            }
        }
        for (i, row) in rz.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                out[p + i][p + j] = x;
            }
        }
        out
    }
}

/// `Hom(T, U)` in degree 0, as chain maps modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct ChainHom {
    lu: MatLayout,
    lv: MatLayout,
    quotient: Quotient,
    basis: Vec<ChainMap>,
}

impl ChainHom {
    pub fn new(t: &TwoTermComplex, u: &TwoTermComplex) -> Result<Self> {
        same_algebra(t, u)?;
        let a = &*t.algebra;
        let lu = MatLayout::new(a, &u.minus, &t.minus);
        let lv = MatLayout::new(a, &u.zero, &t.zero);
        let lout = MatLayout::new(a, &u.zero, &t.minus);
        let nu = lu.dim();
        // v∘d_T − d_U∘u = 0
        let mut images = Vec::with_capacity(nu + lv.dim());
        for (i, j, b) in lu.units(a) {
            let m = compose_unit_right(a, &u.d, i, j, b, &t.minus);
            images.push(lout.flatten(a, &m.neg()));
        }
        for (i, j, b) in lv.units(a) {
            let m = compose_unit_left(a, &t.d, i, j, b, &u.zero);
            images.push(lout.flatten(a, &m));
        }
        let cycles = kernel_of(&images, lout.dim());
        // null-homotopic maps (s∘d_T, d_U∘s) for s: T^0 → U^{-1}
        let ls = MatLayout::new(a, &u.minus, &t.zero);
        let mut bounds = Vec::with_capacity(ls.dim());
        for (i, j, b) in ls.units(a) {
            let su = compose_unit_left(a, &t.d, i, j, b, &u.minus);
            let sv = compose_unit_right(a, &u.d, i, j, b, &t.zero);
            let mut v = lu.flatten(a, &su);
            v.extend(lv.flatten(a, &sv));
            bounds.push(v);
        }
        let quotient = Quotient::new(nu + lv.dim(), &bounds, &cycles);
        let basis = quotient.reps().iter().map(|r| split_pair(a, &lu, &lv, r)).collect();
        Ok(ChainHom { lu, lv, quotient, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ChainMap] {
        &self.basis
    }

    pub fn flatten(&self, a: &Algebra, m: &ChainMap) -> Vector {
        let mut v = self.lu.flatten(a, &m.minus);
        v.extend(self.lv.flatten(a, &m.zero));
        v
    }

    /// Coordinates of the homotopy class of `m` in `basis()`.
    pub fn coords(&self, a: &Algebra, m: &ChainMap) -> Result<Vector> {
        self.quotient.class(&self.flatten(a, m))
    }

    pub fn is_null_homotopic(&self, a: &Algebra, m: &ChainMap) -> bool {
        self.quotient.sub().contains(&self.flatten(a, m))
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> ChainMap {
        let mut out = ChainMap {
            minus: ProjMatrix::zero(&self.lu.rows, &self.lu.cols),
            zero: ProjMatrix::zero(&self.lv.rows, &self.lv.cols),
        };
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.axpy(c, b);
            }
        }
        out
    }
}

fn split_pair(a: &Algebra, lu: &MatLayout, lv: &MatLayout, v: &[Scalar]) -> ChainMap {
    let nu = lu.dim();
    ChainMap { minus: lu.unflatten(a, &v[..nu]), zero: lv.unflatten(a, &v[nu..]) }
}

fn same_algebra(t: &TwoTermComplex, u: &TwoTermComplex) -> Result<()> {
    if std::sync::Arc::ptr_eq(&t.algebra, &u.algebra) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// A representative of a homotopy class in `Hom(T, U[k])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomRep {
    /// `k = 0`
    Chain(ChainMap),
    /// `k = 1`: `T^{-1} → U^0`; `k = −1`: `T^0 → U^{-1}`.
    Map(ProjMatrix),
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub shift: i32,
    pub basis: Vec<HomRep>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `Hom(T, U[k])` for `k ∈ {−1, 0, 1}`.
pub fn hom_space(t: &TwoTermComplex, u: &TwoTermComplex, k: i32) -> Result<HomSpace> {
    same_algebra(t, u)?;
    let basis = match k {
        0 => ChainHom::new(t, u)?.basis.into_iter().map(HomRep::Chain).collect(),
        1 => positive_shift(t, u).into_iter().map(HomRep::Map).collect(),
        -1 => negative_shift(t, u).into_iter().map(HomRep::Map).collect(),
        _ => return Err(Error::UnsupportedShift(k)),
    };
    Ok(HomSpace { shift: k, basis })
}

/// `dim Hom(T, U[1])`, the obstruction to `T ≥ U`.
pub fn ext1_dim(t: &TwoTermComplex, u: &TwoTermComplex) -> Result<usize> {
    same_algebra(t, u)?;
    let a = &*t.algebra;
    let lh = MatLayout::new(a, &u.zero, &t.minus);
    Ok(lh.dim() - homotopies_shift1(a, t, u, &lh).rank())
}

fn homotopies_shift1(a: &Algebra, t: &TwoTermComplex, u: &TwoTermComplex, lh: &MatLayout) -> Echelon {
    let mut sub = Echelon::new(lh.dim());
    // d_U∘s for s: T^{-1} → U^{-1}
    let ls = MatLayout::new(a, &u.minus, &t.minus);
    for (i, j, b) in ls.units(a) {
        sub.insert(lh.flatten(a, &compose_unit_right(a, &u.d, i, j, b, &t.minus)));
    }
    // t∘d_T for t: T^0 → U^0
    let lt = MatLayout::new(a, &u.zero, &t.zero);
    for (i, j, b) in lt.units(a) {
        sub.insert(lh.flatten(a, &compose_unit_left(a, &t.d, i, j, b, &u.zero)));
    }
    sub
}

fn positive_shift(t: &TwoTermComplex, u: &TwoTermComplex) -> Vec<ProjMatrix> {
    let a = &*t.algebra;
    let lh = MatLayout::new(a, &u.zero, &t.minus);
    let sub = homotopies_shift1(a, t, u, &lh);
    let all: Vec<Vector> = (0..lh.dim()).map(|k| unit_vector(lh.dim(), k)).collect();
    let q = Quotient::new(lh.dim(), sub.rows(), &all);
    q.reps().iter().map(|r| lh.unflatten(a, r)).collect()
}

fn negative_shift(t: &TwoTermComplex, u: &TwoTermComplex) -> Vec<ProjMatrix> {
    let a = &*t.algebra;
    let lw = MatLayout::new(a, &u.minus, &t.zero);
    let l1 = MatLayout::new(a, &u.zero, &t.zero);
    let l2 = MatLayout::new(a, &u.minus, &t.minus);
    let images: Vec<Vector> = lw
        .units(a)
        .map(|(i, j, b)| {
            let mut v = l1.flatten(a, &compose_unit_right(a, &u.d, i, j, b, &t.zero));
            v.extend(l2.flatten(a, &compose_unit_left(a, &t.d, i, j, b, &u.minus)));
            v
        })
        .collect();
    kernel_of(&images, l1.dim() + l2.dim()).iter().map(|v| lw.unflatten(a, v)).collect()
}

fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = linalg::zeros(n);
    v[k] = Scalar::one();
    v
}

/// The scalar `λ` such that `m − λ·id` is nilpotent modulo homotopy.
///
/// `m` must be an endomorphism of an indecomposable minimal complex, whose
/// endomorphism ring is local with residue field the base field. The
/// kernel of this functional is the radical of that ring.
pub fn residue_scalar(a: &Algebra, m: &ChainMap) -> Result<Scalar> {
    let r = m.residue_matrix(a);
    let n = r.len();
    if n == 0 {
        return Err(Error::Invariant("residue of an endomorphism of the zero complex".into()));
    }
    let p = a.field().characteristic();
    if p == 0 {
        let tr = (0..n).fold(Scalar::zero(), |acc, i| &acc + &r[i][i]);
        return Ok(&tr * &Scalar::from_int(n as i64).inv()?);
    }
    // (λ + N)^{p^k} = λ for p^k ≥ n over F_p
    let mut q = r;
    let mut reach = 1u64;
    while reach < n as u64 {
        q = mat_pow(&q, p);
        reach = reach.saturating_mul(p);
    }
    Ok(q[0][0].clone())
}

fn mat_pow(m: &linalg::Matrix, mut e: u64) -> linalg::Matrix {
    let mut base = m.clone();
    let mut acc = linalg::identity(m.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = linalg::mat_mul(&acc, &base);
        }
        base = linalg::mat_mul(&base, &base);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::pathalg::build_algebra;
    use crate::scalar::FieldKind;
    use std::sync::Arc;

    fn alg(p: crate::quiver::Presentation) -> Arc<Algebra> {
        Arc::new(build_algebra(&p).unwrap())
    }

    #[test]
    fn stalk_homs_are_path_counts() {
        let a = alg(catalog::linear_a(2, 0, FieldKind::Rational).unwrap());
        let p1 = TwoTermComplex::stalk(&a, 0);
        let p2 = TwoTermComplex::stalk(&a, 1);
        assert_eq!(hom_space(&p2, &p1, 0).unwrap().dim(), 1);
        assert_eq!(hom_space(&p1, &p2, 0).unwrap().dim(), 0);
        assert_eq!(hom_space(&p1, &p1, 1).unwrap().dim(), 0);
        assert_eq!(hom_space(&p1, &p1, 2).unwrap_err(), Error::UnsupportedShift(2));
    }

    #[test]
    fn cone_of_arrow_is_rigid() {
        let a = alg(catalog::linear_a(2, 0, FieldKind::Rational).unwrap());
        let t = TwoTermComplex::from_map(&a, 1, 0, a.unit(2)).unwrap();
        assert_eq!(hom_space(&t, &t, 1).unwrap().dim(), 0);
        assert_eq!(ext1_dim(&t, &t).unwrap(), 0);
        assert_eq!(hom_space(&t, &t, 0).unwrap().dim(), 1);
        // Λ ≥ [P2 → P1] but not conversely
        let lam = TwoTermComplex::stalk(&a, 0).direct_sum(&TwoTermComplex::stalk(&a, 1)).unwrap();
        assert_eq!(ext1_dim(&lam, &t).unwrap(), 0);
        assert_eq!(ext1_dim(&t, &lam).unwrap(), 1);
    }

    #[test]
    fn negative_shift_of_shifted_stalk() {
        let a = alg(catalog::nakayama(1, 2, FieldKind::Rational).unwrap());
        let s = TwoTermComplex::stalk(&a, 0);
        let sh = TwoTermComplex::shifted_stalk(&a, 0);
        // Hom(P, P[1][-1]) = End(P)
        assert_eq!(hom_space(&s, &sh, -1).unwrap().dim(), 2);
        assert_eq!(hom_space(&sh, &s, -1).unwrap().dim(), 0);
    }

    #[test]
    fn residue_scalar_of_identity_and_radical() {
        for field in [FieldKind::Rational, FieldKind::prime(3).unwrap()] {
            let a = alg(catalog::nakayama(1, 3, field).unwrap());
            let t = TwoTermComplex::stalk(&a, 0).direct_sum(&TwoTermComplex::stalk(&a, 0)).unwrap();
            let id = ChainMap::identity(&t);
            assert!(residue_scalar(&a, &id).unwrap().is_one());
            let h = ChainHom::new(&t, &t).unwrap();
            assert_eq!(h.dim(), 12);
        }
    }

    #[test]
    fn null_homotopic_maps_vanish() {
        let a = alg(catalog::linear_a(2, 0, FieldKind::Rational).unwrap());
        let t = TwoTermComplex::from_map(&a, 0, 0, a.unit(a.idempotent(0))).unwrap();
        let h = ChainHom::new(&t, &t).unwrap();
        assert_eq!(h.dim(), 0);
        assert!(h.is_null_homotopic(&a, &ChainMap::identity(&t)));
        let x = TwoTermComplex::from_map(&a, 1, 0, a.unit(2)).unwrap();
        let p1 = TwoTermComplex::stalk(&a, 0);
        assert_eq!(ChainHom::new(&x, &p1).unwrap().dim(), 0);
        assert_eq!(ChainHom::new(&p1, &x).unwrap().dim(), 1);
    }
}
