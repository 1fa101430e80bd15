//! Complexes of finitely generated projective modules.
//!
//! Projective summands are the indecomposables `P_v = e_v Λ`. A morphism
//! `⊕ P_{c_j} → ⊕ P_{r_i}` is a matrix whose `(i, j)` entry lies in
//! `e_{r_i} Λ e_{c_j}` and acts by left multiplication, so composition is the
//! ordinary matrix product.

use std::sync::Arc;

use crate::algebra::{elem_add, elem_axpy, elem_neg, elem_scale, Algebra, Elem};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<Elem>>,
}

impl ProjMatrix {
    pub fn zero(rows: &[usize], cols: &[usize]) -> Self {
        ProjMatrix { rows: rows.to_vec(), cols: cols.to_vec(), entries: vec![vec![Vec::new(); cols.len()]; rows.len()] }
    }

    pub fn identity(a: &Algebra, vs: &[usize]) -> Self {
        let mut m = ProjMatrix::zero(vs, vs);
        for (i, &v) in vs.iter().enumerate() {
            m.entries[i][i] = a.unit(a.idempotent(v));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Vec::is_empty)
    }

    /// `self ∘ other`
    pub fn compose(&self, a: &Algebra, other: &ProjMatrix) -> ProjMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = ProjMatrix::zero(&self.rows, &other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                if x.is_empty() {
                    continue;
                }
                for (j, y) in other.entries[k].iter().enumerate() {
                    if !y.is_empty() {
                        let p = a.mul(x, y);
                        if !p.is_empty() {
                            out.entries[i][j] = elem_add(&out.entries[i][j], &p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ProjMatrix) -> ProjMatrix {
        self.axpy(&Scalar::one(), other)
    }

    /// `self + c·other`
    pub fn axpy(&self, c: &Scalar, other: &ProjMatrix) -> ProjMatrix {
        let mut out = self.clone();
        for (orow, row) in out.entries.iter_mut().zip(&other.entries) {
            for (o, y) in orow.iter_mut().zip(row) {
                if !y.is_empty() {
                    *o = elem_axpy(o, c, y);
                }
            }
        }
        out
    }

    pub fn neg(&self) -> ProjMatrix {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> ProjMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut().flatten() {
            *e = elem_scale(e, c);
        }
        out
    }

    /// Stacks `self` above `other` (same columns).
    pub fn vstack(&self, other: &ProjMatrix) -> ProjMatrix {
        let mut out = self.clone();
        out.rows.extend_from_slice(&other.rows);
        out.entries.extend(other.entries.iter().cloned());
        out
    }

    /// Places `self` left of `other` (same rows).
    pub fn hstack(&self, other: &ProjMatrix) -> ProjMatrix {
        let mut out = self.clone();
        out.cols.extend_from_slice(&other.cols);
        for (row, orow) in out.entries.iter_mut().zip(&other.entries) {
            row.extend(orow.iter().cloned());
        }
        out
    }

    pub fn block_diag(blocks: &[&ProjMatrix]) -> ProjMatrix {
        let rows: Vec<usize> = blocks.iter().flat_map(|b| b.rows.iter().copied()).collect();
        let cols: Vec<usize> = blocks.iter().flat_map(|b| b.cols.iter().copied()).collect();
        let mut out = ProjMatrix::zero(&rows, &cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (i, row) in b.entries.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    out.entries[r0 + i][c0 + j] = e.clone();
                }
            }
            r0 += b.nrows();
            c0 += b.ncols();
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ProjMatrix {
        ProjMatrix {
            rows: rows.iter().map(|&i| self.rows[i]).collect(),
            cols: cols.iter().map(|&j| self.cols[j]).collect(),
            entries: rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        }
    }

    /// Entrywise image under `f` combined with a transpose: the `(j, i)`
    /// entry of the result is `f(self[i][j])`.
    pub fn transpose_map(&self, rows: Vec<usize>, cols: Vec<usize>, f: impl Fn(&Elem) -> Elem) -> ProjMatrix {
        let mut out = ProjMatrix::zero(&rows, &cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_empty() {
                    out.entries[j][i] = f(e);
                }
            }
        }
        out
    }

    /// Residue matrix over the base field: entries between equal vertices
    /// reduced modulo the radical.
    pub fn residue(&self, a: &Algebra) -> Vec<Vec<Scalar>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| if self.rows[i] == self.cols[j] { a.residue(e, self.rows[i]) } else { Scalar::zero() })
                    .collect()
            })
            .collect()
    }

    /// True when every entry lies in the radical.
    pub fn is_radical(&self, a: &Algebra) -> bool {
        self.residue(a).iter().flatten().all(Scalar::is_zero)
    }
}

/// Inverse of a unit `u ∈ e_v Λ e_v`, via the nilpotent series.
pub fn local_inverse(a: &Algebra, u: &Elem, v: usize) -> Result<Elem> {
    let lambda = a.residue(u, v);
    if lambda.is_zero() {
        return Err(Error::Invariant("element is not a unit of its local ring".into()));
    }
    let li = lambda.inv()?;
    let e = a.unit(a.idempotent(v));
    // u / λ = e + m with m nilpotent
    let m = elem_axpy(&elem_scale(u, &li), &-Scalar::one(), &e);
    let neg_m = elem_neg(&m);
    let mut term = e.clone();
    let mut sum = e;
    for _ in 0..=a.loewy_length() {
        term = a.mul(&term, &neg_m);
        if term.is_empty() {
            break;
        }
        sum = elem_add(&sum, &term);
    }
    Ok(elem_scale(&sum, &li))
}

/// A bounded complex `terms[0] → terms[1] → …` starting in degree `lo`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub lo: i32,
    pub terms: Vec<Vec<usize>>,
    pub diffs: Vec<ProjMatrix>,
}

impl Complex {
    pub fn check(&self, a: &Algebra) -> Result<()> {
        if self.diffs.len() + 1 != self.terms.len() {
            return Err(Error::Invariant("complex has the wrong number of differentials".into()));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            if d.cols != self.terms[k] || d.rows != self.terms[k + 1] {
                return Err(Error::Invariant(format!("differential {k} has the wrong shape")));
            }
            for (i, row) in d.entries.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if e.iter().any(|(b, _)| a.tags()[*b] != (d.rows[i], d.cols[j])) {
                        return Err(Error::Invariant(format!("entry ({i},{j}) of differential {k} leaves its block")));
                    }
                }
            }
            if k + 1 < self.diffs.len() && !self.diffs[k + 1].compose(a, d).is_zero() {
                return Err(Error::Invariant(format!("d∘d ≠ 0 at position {k}")));
            }
        }
        Ok(())
    }

    /// Splits off contractible summands `[P --unit--> P]` until every
    /// differential entry lies in the radical.
    pub fn minimize(mut self, a: &Algebra) -> Complex {
        while let Some((k, r, c)) = self.find_unit(a) {
            self.cancel(a, k, r, c);
        }
        self
    }

    fn find_unit(&self, a: &Algebra) -> Option<(usize, usize, usize)> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (r, row) in d.entries.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if d.rows[r] == d.cols[c] && !a.residue(e, d.rows[r]).is_zero() {
                        return Some((k, r, c));
                    }
                }
            }
        }
        None
    }

    fn cancel(&mut self, a: &Algebra, k: usize, r: usize, c: usize) {
        let d = &self.diffs[k];
        let v = d.rows[r];
        let uinv = local_inverse(a, &d.entries[r][c], v).expect("pivot is a unit");
        let keep_rows: Vec<usize> = (0..d.nrows()).filter(|&i| i != r).collect();
        let keep_cols: Vec<usize> = (0..d.ncols()).filter(|&j| j != c).collect();
        let mut nd = d.select(&keep_rows, &keep_cols);
        for (ni, &i) in keep_rows.iter().enumerate() {
            let left = &d.entries[i][c];
            if left.is_empty() {
                continue;
            }
            let left_u = a.mul(left, &uinv);
            for (nj, &j) in keep_cols.iter().enumerate() {
                let right = &d.entries[r][j];
                if right.is_empty() {
                    continue;
                }
                let corr = a.mul(&left_u, right);
                nd.entries[ni][nj] = elem_axpy(&nd.entries[ni][nj], &-Scalar::one(), &corr);
            }
        }
        self.diffs[k] = nd;
        self.terms[k].remove(c);
        self.terms[k + 1].remove(r);
        if k > 0 {
            let prev = &self.diffs[k - 1];
            let rows: Vec<usize> = (0..prev.nrows()).filter(|&i| i != c).collect();
            let cols: Vec<usize> = (0..prev.ncols()).collect();
            self.diffs[k - 1] = prev.select(&rows, &cols);
        }
        if k + 1 < self.diffs.len() {
            let next = &self.diffs[k + 1];
            let rows: Vec<usize> = (0..next.nrows()).collect();
            let cols: Vec<usize> = (0..next.ncols()).filter(|&j| j != r).collect();
            self.diffs[k + 1] = next.select(&rows, &cols);
        }
    }
}

/// A complex `T^{-1} → T^0` of projectives.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub algebra: Arc<Algebra>,
    /// Vertices of the copies of `P_v` in degree −1.
    pub minus: Vec<usize>,
    /// Vertices of the copies of `P_v` in degree 0.
    pub zero: Vec<usize>,
    /// Rows indexed by `zero`, columns by `minus`.
    pub d: ProjMatrix,
}

impl TwoTermComplex {
    pub fn new(algebra: Arc<Algebra>, minus: Vec<usize>, zero: Vec<usize>, d: ProjMatrix) -> Result<Self> {
        let n = algebra.vertex_count();
        if let Some(&v) = minus.iter().chain(&zero).find(|&&v| v >= n) {
            return Err(Error::BadVertex(v));
        }
        if d.rows != zero || d.cols != minus {
            return Err(Error::Invariant("differential shape does not match the terms".into()));
        }
        let t = TwoTermComplex { algebra, minus, zero, d };
        t.to_complex().check(&t.algebra)?;
        Ok(t)
    }

    /// `P_v` in degree 0.
    pub fn stalk(algebra: &Arc<Algebra>, v: usize) -> Self {
        TwoTermComplex {
            algebra: algebra.clone(),
            minus: Vec::new(),
            zero: vec![v],
            d: ProjMatrix::zero(&[v], &[]),
        }
    }

    /// `P_v[1]`, i.e. `P_v` in degree −1.
    pub fn shifted_stalk(algebra: &Arc<Algebra>, v: usize) -> Self {
        TwoTermComplex {
            algebra: algebra.clone(),
            minus: vec![v],
            zero: Vec::new(),
            d: ProjMatrix::zero(&[], &[v]),
        }
    }

    /// `[P_s --x--> P_t]` for `x ∈ e_t Λ e_s`.
    pub fn from_map(algebra: &Arc<Algebra>, s: usize, t: usize, x: Elem) -> Result<Self> {
        let mut d = ProjMatrix::zero(&[t], &[s]);
        d.entries[0][0] = x;
        TwoTermComplex::new(algebra.clone(), vec![s], vec![t], d)
    }

    pub fn direct_sum(&self, other: &TwoTermComplex) -> Result<Self> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let mut minus = self.minus.clone();
        minus.extend_from_slice(&other.minus);
        let mut zero = self.zero.clone();
        zero.extend_from_slice(&other.zero);
        Ok(TwoTermComplex { algebra: self.algebra.clone(), minus, zero, d: ProjMatrix::block_diag(&[&self.d, &other.d]) })
    }

    pub fn is_zero(&self) -> bool {
        self.minus.is_empty() && self.zero.is_empty()
    }

    pub fn is_minimal(&self) -> bool {
        self.d.is_radical(&self.algebra)
    }

    pub fn to_complex(&self) -> Complex {
        Complex { lo: -1, terms: vec![self.minus.clone(), self.zero.clone()], diffs: vec![self.d.clone()] }
    }

    /// Homotopy-equivalent complex with radical differential.
    pub fn minimize(&self) -> TwoTermComplex {
        let c = self.to_complex().minimize(&self.algebra);
        TwoTermComplex {
            algebra: self.algebra.clone(),
            minus: c.terms[0].clone(),
            zero: c.terms[1].clone(),
            d: c.diffs[0].clone(),
        }
    }

    /// `g_v = #(P_v in degree 0) − #(P_v in degree −1)`.
    pub fn g_vector(&self) -> Vec<i64> {
        let mut g = vec![0i64; self.algebra.vertex_count()];
        for &v in &self.zero {
            g[v] += 1;
        }
        for &v in &self.minus {
            g[v] -= 1;
        }
        g
    }

    /// Number of indecomposable projective copies in both terms.
    pub fn size(&self) -> usize {
        self.minus.len() + self.zero.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::pathalg::build_algebra;
    use crate::scalar::FieldKind;

    fn a2() -> Arc<Algebra> {
        Arc::new(build_algebra(&catalog::linear_a(2, 0, FieldKind::Rational).unwrap()).unwrap())
    }

    #[test]
    fn contractible_summand_is_removed() {
        let a = a2();
        // [P1 ⊕ P1 → P1] with differential (1, 0)
        let mut d = ProjMatrix::zero(&[0], &[0, 0]);
        d.entries[0][0] = a.unit(a.idempotent(0));
        let t = TwoTermComplex::new(a.clone(), vec![0, 0], vec![0], d).unwrap();
        let m = t.minimize();
        assert_eq!(m.minus, vec![0]);
        assert!(m.zero.is_empty());
        let again = m.minimize();
        assert_eq!(again.minus, m.minus);
        assert_eq!(again.d, m.d);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let a = a2();
        let id = ProjMatrix::identity(&a, &[0, 1]);
        let t = TwoTermComplex::new(a.clone(), vec![0, 1], vec![0, 1], id).unwrap();
        assert!(t.minimize().is_zero());
    }

    #[test]
    fn local_inverse_of_unit() {
        let p = catalog::nakayama(1, 3, FieldKind::Rational).unwrap();
        let a = build_algebra(&p).unwrap();
        // u = 2e + x
        let u = vec![(0, Scalar::from_int(2)), (1, Scalar::one())];
        let ui = local_inverse(&a, &u, 0).unwrap();
        assert_eq!(a.mul(&u, &ui), a.unit(0));
        assert_eq!(a.mul(&ui, &u), a.unit(0));
    }

    #[test]
    fn g_vectors_of_stalks() {
        let a = a2();
        assert_eq!(TwoTermComplex::stalk(&a, 1).g_vector(), vec![0, 1]);
        assert_eq!(TwoTermComplex::shifted_stalk(&a, 0).g_vector(), vec![-1, 0]);
    }

    #[test]
    fn entries_must_respect_blocks() {
        let a = a2();
        let x = a.unit(2);
        assert!(TwoTermComplex::from_map(&a, 1, 0, x.clone()).is_ok());
        assert!(TwoTermComplex::from_map(&a, 0, 1, x).is_err());
        let shape = TwoTermComplex::new(a.clone(), vec![0], vec![1], ProjMatrix::zero(&[0], &[1]));
        assert!(shape.is_err());
    }
}
