//! Krull–Schmidt decomposition of 2-term complexes.
//!
//! Idempotents are found in `End(T)` in the homotopy category by the
//! Fitting decomposition of candidate endomorphisms: if the minimal
//! polynomial of `z` is `t^a q(t)` with `q(0) ≠ 0`, then the polynomial `f`
//! with `f ≡ 0 mod t^a` and `f ≡ 1 mod q` gives an idempotent `f(z)`. The
//! class is lifted to a genuine idempotent chain map by Newton iteration
//! (null-homotopic endomorphisms of a minimal complex are nilpotent) and
//! `T` is split along it.

use std::sync::Arc;

use crate::algebra::{elem_scale, radical_from_products, Algebra};
use crate::complex::{ProjMatrix, TwoTermComplex};
use crate::error::{Error, Result};
use crate::hom::{ChainHom, ChainMap};
use crate::linalg::{self, Echelon, Vector};
use crate::scalar::Scalar;
use crate::silting::isomorphic;

const NEWTON_STEPS: usize = 64;

/// Indecomposable summands of `T` up to isomorphism, with multiplicities,
/// in order of first appearance.
pub fn decompose(t: &TwoTermComplex) -> Result<Vec<(TwoTermComplex, usize)>> {
    let mut pieces = Vec::new();
    split_all(&t.minimize(), &mut pieces)?;
    let mut out: Vec<(TwoTermComplex, usize)> = Vec::new();
    for p in pieces {
        let mut found = false;
        for (q, m) in out.iter_mut() {
            if isomorphic(q, &p)? {
                *m += 1;
                found = true;
                break;
            }
        }
        if !found {
            out.push((p, 1));
        }
    }
    Ok(out)
}

fn split_all(t: &TwoTermComplex, out: &mut Vec<TwoTermComplex>) -> Result<()> {
    if t.is_zero() {
        return Ok(());
    }
    match find_idempotent(t)? {
        None => out.push(t.clone()),
        Some(e) => {
            let (x, y) = split(t, &e)?;
            split_all(&x, out)?;
            split_all(&y, out)?;
        }
    }
    Ok(())
}

struct EndRing<'a> {
    t: &'a TwoTermComplex,
    hom: ChainHom,
}

impl EndRing<'_> {
    fn a(&self) -> &Algebra {
        &self.t.algebra
    }

    fn coords(&self, m: &ChainMap) -> Result<Vector> {
        self.hom.coords(self.a(), m)
    }

    fn mul(&self, x: &ChainMap, y: &ChainMap) -> ChainMap {
        x.compose(self.a(), y)
    }

    fn is_local(&self) -> Result<bool> {
        let m = self.hom.dim();
        let basis: Vec<Vector> = (0..m).map(|i| self.unit_vec(i)).collect();
        let product = |x: &[(usize, Scalar)], y: &[(usize, Scalar)]| -> Vector {
            let cx = self.combine_sparse(x);
            let cy = self.combine_sparse(y);
            self.coords(&self.mul(&cx, &cy)).expect("endomorphisms compose")
        };
        let rad = radical_from_products(m, &basis, &product)?;
        Ok(m - rad.len() == 1)
    }

    fn unit_vec(&self, i: usize) -> Vector {
        (0..self.hom.dim()).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
    }

    fn combine_sparse(&self, x: &[(usize, Scalar)]) -> ChainMap {
        let mut v = linalg::zeros(self.hom.dim());
        for (i, c) in x {
            v[*i] = c.clone();
        }
        self.hom.combine(&v)
    }
}

/// An idempotent chain map `T → T` that is neither 0 nor 1 up to
/// homotopy, or `None` when `T` is indecomposable.
fn find_idempotent(t: &TwoTermComplex) -> Result<Option<ChainMap>> {
    let ring = EndRing { t, hom: ChainHom::new(t, t)? };
    if ring.hom.dim() <= 1 || ring.is_local()? {
        return Ok(None);
    }
    let a = &*t.algebra;
    let id = ChainMap::identity(t);
    let basis = ring.hom.basis().to_vec();
    let mut candidates: Vec<ChainMap> = Vec::new();
    for z in &basis {
        candidates.push(z.clone());
        let r = z.residue_matrix(a);
        let mut seen = Vec::new();
        for (i, row) in r.iter().enumerate() {
            let lambda = &row[i];
            if !lambda.is_zero() && !seen.contains(lambda) {
                seen.push(lambda.clone());
                candidates.push(z.axpy(&-lambda, &id));
            }
        }
    }
    for x in &basis {
        for y in &basis {
            candidates.push(ring.mul(x, y));
        }
    }
    for z in &candidates {
        if let Some(e) = fitting_idempotent(&ring, z)? {
            return newton_lift(t, e).map(Some);
        }
    }
    Err(Error::NotSplitEndomorphism(
        "no candidate endomorphism produced an idempotent; the residue field of End(T) may be larger than the base field"
            .into(),
    ))
}

/// `f(z)` for the Fitting idempotent of `z`, if it is nontrivial.
fn fitting_idempotent(ring: &EndRing, z: &ChainMap) -> Result<Option<ChainMap>> {
    let id = ChainMap::identity(ring.t);
    let mut powers = vec![id.clone()];
    let mut coords = vec![ring.coords(&id)?];
    let minpoly = loop {
        let next = ring.mul(powers.last().expect("nonempty"), z);
        let c = ring.coords(&next)?;
        if let Some(dep) = linalg::express(&coords, &c) {
            let mut m: Vec<Scalar> = dep.iter().map(|x| -x).collect();
            m.push(Scalar::one());
            break m;
        }
        powers.push(next);
        coords.push(c);
    };
    let a = minpoly.iter().position(|c| !c.is_zero()).expect("monic");
    let q: Vec<Scalar> = minpoly[a..].to_vec();
    if a == 0 || q.len() == 1 {
        return Ok(None);
    }
    let mut ta = vec![Scalar::zero(); a];
    ta.push(Scalar::one());
    let (g, s, _) = poly::ext_gcd(&ta, &q)?;
    debug_assert_eq!(g.len(), 1);
    let ginv = g[0].inv()?;
    let f = poly::rem(&poly::scale(&poly::mul(&s, &ta), &ginv), &minpoly)?;
    let mut e = ChainMap::zero_map(ring.t, ring.t);
    for (c, p) in f.iter().zip(&powers) {
        if !c.is_zero() {
            e = e.axpy(c, p);
        }
    }
    Ok(Some(e))
}

/// Newton iteration `e ↦ 3e² − 2e³` until `e² = e` exactly.
fn newton_lift(t: &TwoTermComplex, mut e: ChainMap) -> Result<ChainMap> {
    let a = &*t.algebra;
    let three = Scalar::from_int(3);
    let minus_two = Scalar::from_int(-2);
    for _ in 0..NEWTON_STEPS {
        let e2 = e.compose(a, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = e2.compose(a, &e);
        e = e2.scale(&three).axpy(&minus_two, &e3);
    }
    Err(Error::Invariant("idempotent lifting did not converge".into()))
}

/// Splits `T = X ⊕ Y` along an idempotent chain map `e`, with `X` the image of `e`.
pub fn split(t: &TwoTermComplex, e: &ChainMap) -> Result<(TwoTermComplex, TwoTermComplex)> {
    let a = &t.algebra;
    let id = ChainMap::identity(t);
    let f = id.axpy(&-Scalar::one(), e);
    Ok((image(a, t, e)?, image(a, t, &f)?))
}

fn image(a: &Arc<Algebra>, t: &TwoTermComplex, e: &ChainMap) -> Result<TwoTermComplex> {
    let (i1, _) = split_projective(a, &e.minus)?;
    let (i0, p0) = split_projective(a, &e.zero)?;
    let d = p0.compose(a, &t.d).compose(a, &i1);
    TwoTermComplex::new(a.clone(), i1.cols.clone(), i0.cols.clone(), d)
}

/// For an idempotent `u` on `⊕P`, maps `ι: Q → ⊕P`, `π: ⊕P → Q` with
/// `πι = 1` and `ιπ = u`.
fn split_projective(a: &Algebra, u: &ProjMatrix) -> Result<(ProjMatrix, ProjMatrix)> {
    let r = u.residue(a);
    let n = u.nrows();
    let all: Vec<usize> = (0..n).collect();
    let col = |j: usize| -> Vector { (0..n).map(|i| r[i][j].clone()).collect() };
    let mut ech = Echelon::new(n);
    let cs: Vec<usize> = (0..n).filter(|&j| ech.insert(col(j)).is_some()).collect();
    let mut ech = Echelon::new(cs.len());
    let rs: Vec<usize> =
        (0..n).filter(|&i| ech.insert(cs.iter().map(|&j| r[i][j].clone()).collect()).is_some()).collect();
    let iota = u.select(&all, &cs);
    let block = u.select(&rs, &cs);
    let pi = invert(a, &block)?.compose(a, &u.select(&rs, &all));
    Ok((iota, pi))
}

/// Inverse of a square matrix whose residue is invertible.
pub fn invert(a: &Algebra, m: &ProjMatrix) -> Result<ProjMatrix> {
    let r = m.residue(a);
    let rinv = linalg::inverse(&r)?;
    let mut b = ProjMatrix::zero(&m.cols, &m.rows);
    for (i, row) in rinv.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                if m.cols[i] != m.rows[j] {
                    return Err(Error::Invariant("residue inverse crosses vertices".into()));
                }
                b.entries[i][j] = elem_scale(&a.unit(a.idempotent(m.cols[i])), c);
            }
        }
    }
    // m b = 1 − N with N nilpotent, so m^{-1} = b (1 + N + N² + ⋯)
    let one = ProjMatrix::identity(a, &m.rows);
    let nil = one.axpy(&-Scalar::one(), &m.compose(a, &b));
    let mut term = one.clone();
    let mut sum = one;
    for _ in 0..=a.loewy_length() {
        term = term.compose(a, &nil);
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    let inv = b.compose(a, &sum);
    if inv.compose(a, m) != ProjMatrix::identity(a, &m.cols) {
        return Err(Error::Invariant("matrix inversion failed".into()));
    }
    Ok(inv)
}

/// Dense polynomials over a field, lowest degree first.
mod poly {
    use crate::error::Result;
    use crate::scalar::Scalar;

    fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
        while p.last().is_some_and(Scalar::is_zero) {
            p.pop();
        }
        p
    }

    pub fn scale(p: &[Scalar], c: &Scalar) -> Vec<Scalar> {
        trim(p.iter().map(|x| x * c).collect())
    }

    pub fn sub(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
        let n = p.len().max(q.len());
        let z = Scalar::zero();
        trim((0..n).map(|i| p.get(i).unwrap_or(&z) - q.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
        if p.is_empty() || q.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Scalar::zero(); p.len() + q.len() - 1];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        trim(out)
    }

    pub fn divrem(p: &[Scalar], q: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
        let q = trim(q.to_vec());
        let lead = q.last().expect("nonzero divisor").inv()?;
        let mut r = trim(p.to_vec());
        let mut quot = vec![Scalar::zero(); r.len().saturating_sub(q.len()) + 1];
        while r.len() >= q.len() {
            let shift = r.len() - q.len();
            let c = r.last().expect("nonempty") * &lead;
            let mut term = vec![Scalar::zero(); shift];
            term.push(c.clone());
            quot[shift] = c;
            r = sub(&r, &mul(&term, &q));
        }
        Ok((trim(quot), r))
    }

    pub fn rem(p: &[Scalar], q: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(divrem(p, q)?.1)
    }

    /// `(g, s, t)` with `s·p + t·q = g = gcd(p, q)`.
    pub fn ext_gcd(p: &[Scalar], q: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)> {
        let (mut r0, mut r1) = (trim(p.to_vec()), trim(q.to_vec()));
        let (mut s0, mut s1) = (vec![Scalar::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![Scalar::one()]);
        while !r1.is_empty() {
            let (quot, r) = divrem(&r0, &r1)?;
            let s = sub(&s0, &mul(&quot, &s1));
            let t = sub(&t0, &mul(&quot, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        Ok((r0, s0, t0))
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
    fn regular_splits_into_stalks() {
        let a = Arc::new(build_algebra(&catalog::nakayama(3, 4, FieldKind::Rational).unwrap()).unwrap());
        let lam = TwoTermComplex::stalk(&a, 0)
            .direct_sum(&TwoTermComplex::stalk(&a, 1))
            .unwrap()
            .direct_sum(&TwoTermComplex::stalk(&a, 2))
            .unwrap();
        let parts = decompose(&lam).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|(p, m)| *m == 1 && p.size() == 1));
    }

    #[test]
    fn cone_plus_stalk() {
        let a = a2();
        let cone = TwoTermComplex::from_map(&a, 1, 0, a.unit(2)).unwrap();
        let t = cone.direct_sum(&TwoTermComplex::stalk(&a, 0)).unwrap();
        let mut gs: Vec<_> = decompose(&t).unwrap().into_iter().map(|(p, m)| (p.g_vector(), m)).collect();
        gs.sort();
        assert_eq!(gs, vec![(vec![1, -1], 1), (vec![1, 0], 1)]);
        let doubled = t.direct_sum(&t).unwrap();
        assert!(decompose(&doubled).unwrap().iter().all(|(_, m)| *m == 2));
    }

    #[test]
    fn polynomial_gcd() {
        let s = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
        // t² and t − 1 are coprime
        let (g, a, b) = poly::ext_gcd(&s(&[0, 0, 1]), &s(&[-1, 1])).unwrap();
        assert_eq!(g.len(), 1);
        let lhs = poly::sub(&poly::mul(&a, &s(&[0, 0, 1])), &poly::scale(&poly::mul(&b, &s(&[-1, 1])), &-Scalar::one()));
        assert_eq!(lhs, g);
    }
}
