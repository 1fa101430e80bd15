//! Basic 2-term silting objects: predicates, the silting order, g-vectors
//! and irreducible mutation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::complex::{Complex, ProjMatrix, TwoTermComplex};
use crate::error::{Error, Result};
use crate::hom::{ext1_dim, hom_space, residue_scalar, ChainHom, ChainMap};
use crate::linalg::{self, Quotient, Vector};
use crate::scalar::Scalar;

pub type GVector = Vec<i64>;

/// A basic 2-term object, stored as its indecomposable minimal summands in
/// lexicographic order of their g-vectors.
#[derive(Clone, Debug)]
pub struct SiltingObject {
    summands: Vec<Arc<TwoTermComplex>>,
    g: Vec<GVector>,
}

impl SiltingObject {
    /// The summands must be minimal, indecomposable and pairwise
    /// non-isomorphic; only the cheap consequences of this are checked.
    pub fn new(summands: Vec<Arc<TwoTermComplex>>) -> Result<Self> {
        let Some(first) = summands.first() else {
            return Ok(SiltingObject { summands, g: Vec::new() });
        };
        let algebra = first.algebra.clone();
        for s in &summands {
            if !Arc::ptr_eq(&s.algebra, &algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if s.is_zero() || !s.is_minimal() {
                return Err(Error::Invariant("silting summands must be nonzero and minimal".into()));
            }
        }
        let mut pairs: Vec<(GVector, Arc<TwoTermComplex>)> = summands.into_iter().map(|s| (s.g_vector(), s)).collect();
        pairs.sort_by(|x, y| x.0.cmp(&y.0));
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invariant("repeated summand; silting objects are kept basic".into()));
        }
        let (g, summands) = pairs.into_iter().unzip();
        Ok(SiltingObject { summands, g })
    }

    /// `Λ`, the sum of the stalk complexes `P_v`.
    pub fn regular(a: &Arc<Algebra>) -> Self {
        let s = (0..a.vertex_count()).map(|v| Arc::new(TwoTermComplex::stalk(a, v))).collect();
        SiltingObject::new(s).expect("stalks form a basic object")
    }

    /// `Λ[1]`.
    pub fn shifted_regular(a: &Arc<Algebra>) -> Self {
        let s = (0..a.vertex_count()).map(|v| Arc::new(TwoTermComplex::shifted_stalk(a, v))).collect();
        SiltingObject::new(s).expect("shifted stalks form a basic object")
    }

    pub fn summands(&self) -> &[Arc<TwoTermComplex>] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Canonical key: the g-vectors of the summands in lexicographic order.
    pub fn key(&self) -> &[GVector] {
        &self.g
    }

    pub fn algebra(&self) -> Option<&Arc<Algebra>> {
        self.summands.first().map(|s| &s.algebra)
    }

    /// The direct sum of all summands as a single complex.
    pub fn total(&self) -> Option<TwoTermComplex> {
        let mut it = self.summands.iter();
        let first = (**it.next()?).clone();
        Some(it.fold(first, |acc, s| acc.direct_sum(s).expect("summands share an algebra")))
    }

    /// True when some summand has `P_v` in degree −1.
    pub fn has_in_minus(&self, v: usize) -> bool {
        self.summands.iter().any(|s| s.minus.contains(&v))
    }

    pub fn has_in_zero(&self, v: usize) -> bool {
        self.summands.iter().any(|s| s.zero.contains(&v))
    }
}

/// Per-summand g-vectors in canonical order.
pub fn g_vector(t: &SiltingObject) -> Vec<GVector> {
    t.key().to_vec()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub presilting: bool,
    pub silting: bool,
    pub tilting: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            _ => Err(Error::Parse(format!("direction must be left or right, got {s:?}"))),
        }
    }
}

/// Result of an irreducible mutation.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub object: SiltingObject,
    /// The summand that was removed.
    pub removed: Arc<TwoTermComplex>,
    /// Its replacement.
    pub added: Arc<TwoTermComplex>,
    pub direction: Direction,
}

/// Caches shared by repeated silting computations over one algebra.
///
/// Summands are canonicalized by g-vector, so that every cache can be
/// keyed by g-vectors. This relies on g-vectors separating indecomposable
/// 2-term presilting complexes; with `check_iso` set, every identification
/// is certified by a pair of maps composing to a unit.
///
/// A workspace binds to the algebra of the first complex it sees and
/// rejects complexes over any other algebra.
#[derive(Debug, Default)]
pub struct Workspace {
    algebra: Mutex<Option<Arc<Algebra>>>,
    summands: Mutex<HashMap<GVector, Arc<TwoTermComplex>>>,
    homs: Mutex<HashMap<(GVector, GVector), Arc<ChainHom>>>,
    ext1: Mutex<HashMap<(GVector, GVector), usize>>,
    rad_end: Mutex<HashMap<GVector, Arc<Vec<ChainMap>>>>,
    check_iso: bool,
}

impl Workspace {
    pub fn new() -> Self {
        Workspace::default()
    }

    /// Honors `SILTQ_DEBUG_ISO=1`.
    pub fn from_env() -> Self {
        let check_iso = std::env::var("SILTQ_DEBUG_ISO").is_ok_and(|v| v == "1");
        Workspace { check_iso, ..Workspace::default() }
    }

    pub fn with_iso_checks(check_iso: bool) -> Self {
        Workspace { check_iso, ..Workspace::default() }
    }

    fn bind(&self, x: &TwoTermComplex) -> Result<()> {
        let mut bound = self.algebra.lock().unwrap();
        match &*bound {
            Some(a) if !Arc::ptr_eq(a, &x.algebra) => Err(Error::AlgebraMismatch),
            Some(_) => Ok(()),
            None => {
                *bound = Some(x.algebra.clone());
                Ok(())
            }
        }
    }

    pub fn summand_count(&self) -> usize {
        self.summands.lock().unwrap().len()
    }

    /// The registered representative with the same g-vector as `x`.
    pub fn canonical(&self, x: &Arc<TwoTermComplex>) -> Result<Arc<TwoTermComplex>> {
        self.bind(x)?;
        let g = x.g_vector();
        let existing = self.summands.lock().unwrap().get(&g).cloned();
        match existing {
            Some(rep) => {
                if self.check_iso && !Arc::ptr_eq(&rep, x) && !isomorphic(&rep, x)? {
                    return Err(Error::Invariant(format!("non-isomorphic summands share the g-vector {g:?}")));
                }
                Ok(rep)
            }
            None => Ok(self.summands.lock().unwrap().entry(g).or_insert_with(|| x.clone()).clone()),
        }
    }

    pub fn canonical_object(&self, t: &SiltingObject) -> Result<SiltingObject> {
        let s = t.summands.iter().map(|x| self.canonical(x)).collect::<Result<Vec<_>>>()?;
        Ok(SiltingObject { summands: s, g: t.g.clone() })
    }

    /// `Hom(X, Y)` for canonical summands.
    pub fn hom(&self, x: &TwoTermComplex, y: &TwoTermComplex) -> Result<Arc<ChainHom>> {
        self.bind(x)?;
        self.bind(y)?;
        let key = (x.g_vector(), y.g_vector());
        if let Some(h) = self.homs.lock().unwrap().get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(ChainHom::new(x, y)?);
        Ok(self.homs.lock().unwrap().entry(key).or_insert(h).clone())
    }

    pub fn ext1(&self, x: &TwoTermComplex, y: &TwoTermComplex) -> Result<usize> {
        self.bind(x)?;
        self.bind(y)?;
        let key = (x.g_vector(), y.g_vector());
        if let Some(&d) = self.ext1.lock().unwrap().get(&key) {
            return Ok(d);
        }
        let d = ext1_dim(x, y)?;
        self.ext1.lock().unwrap().insert(key, d);
        Ok(d)
    }

    /// Basis of the radical of `End(X)` for an indecomposable `X`.
    pub fn radical_end(&self, x: &TwoTermComplex) -> Result<Arc<Vec<ChainMap>>> {
        let g = x.g_vector();
        if let Some(r) = self.rad_end.lock().unwrap().get(&g) {
            return Ok(r.clone());
        }
        let end = self.hom(x, x)?;
        let a = &*x.algebra;
        let eps = end.basis().iter().map(|m| residue_scalar(a, m)).collect::<Result<Vec<_>>>()?;
        let kernel = linalg::nullspace(&[eps], end.dim());
        let r = Arc::new(kernel.iter().map(|c| end.combine(c)).collect::<Vec<_>>());
        Ok(self.rad_end.lock().unwrap().entry(g).or_insert(r).clone())
    }

    /// Basis of `rad(X, Y)` for indecomposables `X`, `Y`.
    fn radical_hom(&self, x: &TwoTermComplex, y: &TwoTermComplex) -> Result<Vec<ChainMap>> {
        if x.g_vector() == y.g_vector() {
            Ok(self.radical_end(x)?.to_vec())
        } else {
            Ok(self.hom(x, y)?.basis().to_vec())
        }
    }

    pub fn geq(&self, t: &SiltingObject, u: &SiltingObject) -> Result<bool> {
        for x in &t.summands {
            for y in &u.summands {
                if self.ext1(x, y)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn classify(&self, t: &SiltingObject) -> Result<Flags> {
        let presilting = self.geq(t, t)?;
        let n = t.algebra().map_or(0, |a| a.vertex_count());
        let silting = presilting && t.len() == n;
        let mut tilting = silting;
        if tilting {
            'outer: for x in &t.summands {
                for y in &t.summands {
                    if hom_space(x, y, -1)?.dim() != 0 {
                        tilting = false;
                        break 'outer;
                    }
                }
            }
        }
        Ok(Flags { presilting, silting, tilting })
    }

    /// Irreducible mutation of `t` at summand `at` (canonical order).
    pub fn mutate(&self, t: &SiltingObject, at: usize, dir: Direction) -> Result<Mutation> {
        if at >= t.len() {
            return Err(Error::NotASummand(at));
        }
        let t = self.canonical_object(t)?;
        let x = t.summands[at].clone();
        let others: Vec<Arc<TwoTermComplex>> =
            t.summands.iter().enumerate().filter(|&(i, _)| i != at).map(|(_, s)| s.clone()).collect();
        let y = match dir {
            Direction::Left => self.left_exchange(&x, &others)?,
            Direction::Right => self.right_exchange(&x, &others)?,
        };
        if y.is_zero() {
            return Err(Error::Invariant("mutation produced a zero summand".into()));
        }
        let y = self.canonical(&Arc::new(y))?;
        let mut summands = others;
        summands.push(y.clone());
        let object = SiltingObject::new(summands)?;
        Ok(Mutation { object, removed: x, added: y, direction: dir })
    }

    /// Mutation in whichever direction stays 2-term, left first.
    pub fn neighbor(&self, t: &SiltingObject, at: usize) -> Result<Mutation> {
        match self.mutate(t, at, Direction::Left) {
            Err(Error::NotTwoTerm) => self.mutate(t, at, Direction::Right),
            other => other,
        }
    }

    /// Components of a minimal left `add M`-approximation `X → M'`.
    fn left_approximation(&self, x: &TwoTermComplex, m: &[Arc<TwoTermComplex>]) -> Result<Vec<(usize, ChainMap)>> {
        let a = &*x.algebra;
        let homs = m.iter().map(|mi| self.hom(x, mi)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for (i, mi) in m.iter().enumerate() {
            let hi = &homs[i];
            if hi.dim() == 0 {
                continue;
            }
            // maps X → M_j → M_i whose second factor is radical
            let mut sub: Vec<Vector> = Vec::new();
            for (j, mj) in m.iter().enumerate() {
                if homs[j].dim() == 0 {
                    continue;
                }
                for g in self.radical_hom(mj, mi)? {
                    for h in homs[j].basis() {
                        sub.push(hi.coords(a, &g.compose(a, h))?);
                    }
                }
            }
            for c in irreducible_part(hi.dim(), &sub) {
                out.push((i, hi.combine(&c)));
            }
        }
        Ok(out)
    }

    /// Components of a minimal right `add M`-approximation `M'' → X`.
    fn right_approximation(&self, x: &TwoTermComplex, m: &[Arc<TwoTermComplex>]) -> Result<Vec<(usize, ChainMap)>> {
        let a = &*x.algebra;
        let homs = m.iter().map(|mi| self.hom(mi, x)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for (i, mi) in m.iter().enumerate() {
            let hi = &homs[i];
            if hi.dim() == 0 {
                continue;
            }
            let mut sub: Vec<Vector> = Vec::new();
            for (j, mj) in m.iter().enumerate() {
                if homs[j].dim() == 0 {
                    continue;
                }
                for g in self.radical_hom(mi, mj)? {
                    for h in homs[j].basis() {
                        sub.push(hi.coords(a, &h.compose(a, &g))?);
                    }
                }
            }
            for c in irreducible_part(hi.dim(), &sub) {
                out.push((i, hi.combine(&c)));
            }
        }
        Ok(out)
    }

    fn left_exchange(&self, x: &TwoTermComplex, m: &[Arc<TwoTermComplex>]) -> Result<TwoTermComplex> {
        let a = &*x.algebra;
        let approx = self.left_approximation(x, m)?;
        let target = sum_of(x, approx.iter().map(|(i, _)| &*m[*i]));
        let f_minus = stack_rows(&target.minus, &x.minus, approx.iter().map(|(_, f)| &f.minus));
        let f_zero = stack_rows(&target.zero, &x.zero, approx.iter().map(|(_, f)| &f.zero));
        // cone: X^{-1} → X^0 ⊕ M'^{-1} → M'^0
        let mut mid = x.zero.clone();
        mid.extend_from_slice(&target.minus);
        let cone = Complex {
            lo: -2,
            terms: vec![x.minus.clone(), mid, target.zero.clone()],
            diffs: vec![x.d.neg().vstack(&f_minus), f_zero.hstack(&target.d)],
        };
        debug_assert!(cone.check(a).is_ok());
        let c = cone.minimize(a);
        if !c.terms[0].is_empty() {
            return Err(Error::NotTwoTerm);
        }
        Ok(TwoTermComplex {
            algebra: x.algebra.clone(),
            minus: c.terms[1].clone(),
            zero: c.terms[2].clone(),
            d: c.diffs[1].clone(),
        })
    }

    fn right_exchange(&self, x: &TwoTermComplex, m: &[Arc<TwoTermComplex>]) -> Result<TwoTermComplex> {
        let a = &*x.algebra;
        let approx = self.right_approximation(x, m)?;
        let source = sum_of(x, approx.iter().map(|(i, _)| &*m[*i]));
        let g_minus = stack_cols(&x.minus, &source.minus, approx.iter().map(|(_, g)| &g.minus));
        let g_zero = stack_cols(&x.zero, &source.zero, approx.iter().map(|(_, g)| &g.zero));
        // cocone: M''^{-1} → M''^0 ⊕ X^{-1} → X^0
        let mut mid = source.zero.clone();
        mid.extend_from_slice(&x.minus);
        let cocone = Complex {
            lo: -1,
            terms: vec![source.minus.clone(), mid, x.zero.clone()],
            diffs: vec![source.d.vstack(&g_minus), g_zero.hstack(&x.d.neg())],
        };
        debug_assert!(cocone.check(a).is_ok());
        let c = cocone.minimize(a);
        if !c.terms[2].is_empty() {
            return Err(Error::NotTwoTerm);
        }
        Ok(TwoTermComplex {
            algebra: x.algebra.clone(),
            minus: c.terms[0].clone(),
            zero: c.terms[1].clone(),
            d: c.diffs[0].clone(),
        })
    }
}

/// Coordinates of a basis of `K^dim / span(sub)`.
fn irreducible_part(dim: usize, sub: &[Vector]) -> Vec<Vector> {
    let units: Vec<Vector> = (0..dim)
        .map(|k| {
            let mut v = linalg::zeros(dim);
            v[k] = Scalar::one();
            v
        })
        .collect();
    Quotient::new(dim, sub, &units).reps().to_vec()
}

fn sum_of<'a>(x: &TwoTermComplex, parts: impl Iterator<Item = &'a TwoTermComplex>) -> TwoTermComplex {
    let empty = TwoTermComplex {
        algebra: x.algebra.clone(),
        minus: Vec::new(),
        zero: Vec::new(),
        d: ProjMatrix::zero(&[], &[]),
    };
    parts.fold(empty, |acc, p| acc.direct_sum(p).expect("same algebra"))
}

fn stack_rows<'a>(rows: &[usize], cols: &[usize], parts: impl Iterator<Item = &'a ProjMatrix>) -> ProjMatrix {
    let out = parts.fold(ProjMatrix::zero(&[], cols), |acc, p| acc.vstack(p));
    debug_assert_eq!(out.rows, rows);
    out
}

fn stack_cols<'a>(rows: &[usize], cols: &[usize], parts: impl Iterator<Item = &'a ProjMatrix>) -> ProjMatrix {
    let out = parts.fold(ProjMatrix::zero(rows, &[]), |acc, p| acc.hstack(p));
    debug_assert_eq!(out.cols, cols);
    out
}

/// True when `x ≅ y`, for indecomposable minimal complexes.
pub fn isomorphic(x: &TwoTermComplex, y: &TwoTermComplex) -> Result<bool> {
    if x.g_vector() != y.g_vector() || x.size() != y.size() {
        return Ok(false);
    }
    let a = &*x.algebra;
    let xy = ChainHom::new(x, y)?;
    let yx = ChainHom::new(y, x)?;
    for f in xy.basis() {
        for g in yx.basis() {
            if !residue_scalar(a, &g.compose(a, f))?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn classify(t: &SiltingObject) -> Result<Flags> {
    Workspace::new().classify(t)
}

/// `T ≥ U`, i.e. `Hom(T, U[1]) = 0`.
pub fn geq(t: &SiltingObject, u: &SiltingObject) -> Result<bool> {
    Workspace::new().geq(t, u)
}

pub fn mutate(t: &SiltingObject, at: usize, dir: Direction) -> Result<SiltingObject> {
    Ok(Workspace::new().mutate(t, at, dir)?.object)
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
    fn regular_and_shift_are_tilting() {
        let a = a2();
        for t in [SiltingObject::regular(&a), SiltingObject::shifted_regular(&a)] {
            assert_eq!(classify(&t).unwrap(), Flags { presilting: true, silting: true, tilting: true });
        }
        assert_eq!(g_vector(&SiltingObject::regular(&a)), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(g_vector(&SiltingObject::shifted_regular(&a)), vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn first_left_mutation_in_a2() {
        let a = a2();
        let lam = SiltingObject::regular(&a);
        let ws = Workspace::new();
        // canonical order puts P2 = (0, 1) first
        let m = ws.mutate(&lam, 0, Direction::Left).unwrap();
        assert_eq!(m.object.key(), &[vec![1, -1], vec![1, 0]]);
        assert_eq!(m.added.g_vector(), vec![1, -1]);
        assert!(ws.geq(&lam, &m.object).unwrap());
        assert!(!ws.geq(&m.object, &lam).unwrap());
        let back = ws.mutate(&m.object, 0, Direction::Right).unwrap();
        assert_eq!(back.object.key(), lam.key());
    }

    #[test]
    fn shifted_regular_only_mutates_right() {
        let a = a2();
        let sh = SiltingObject::shifted_regular(&a);
        let ws = Workspace::new();
        for at in 0..2 {
            assert!(matches!(ws.mutate(&sh, at, Direction::Left), Err(Error::NotTwoTerm)));
            assert!(ws.mutate(&sh, at, Direction::Right).is_ok());
        }
        assert!(matches!(ws.mutate(&sh, 5, Direction::Right), Err(Error::NotASummand(5))));
    }
}
