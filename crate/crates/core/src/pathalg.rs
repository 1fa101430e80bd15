//! Path-algebra quotients `KQ/I` for admissible ideals.
//!
//! For growing degree bounds `M` the span `S_M` of all products `p·r·q`
//! (relation `r`, paths `p`, `q`) whose terms have length at most `M` is row
//! reduced, until some `N` is found with every path of length `N` inside
//! `S_M`. That certifies `J^N ⊆ I`, after which `KQ/I` is the quotient of the
//! paths of length `< N` by the truncated products. Leading terms are the
//! longest paths, so the surviving basis prefers short paths.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Algebra, Elem};
use crate::error::{Error, Result};
use crate::quiver::{Presentation, Relation};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_PATHS: usize = 200_000;

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Largest degree tried before giving up; `None` uses
    /// `max(2 · #arrows · max relation length, #vertices + 1)`.
    pub degree_cap: Option<usize>,
    /// Bound on the number of enumerated paths; `None` uses [`DEFAULT_MAX_PATHS`].
    pub max_paths: Option<usize>,
}

type Key = (Reverse<u32>, u32);
type SVec = Vec<(Key, Scalar)>;

struct Paths {
    arrows: Vec<Vec<usize>>,
    ends: Vec<(usize, usize)>,
    index: HashMap<Vec<usize>, usize>,
    // by_len[len][vertex] = ids of paths of that length starting (resp. ending) there
    starting: Vec<Vec<Vec<usize>>>,
    ending: Vec<Vec<Vec<usize>>>,
}

impl Paths {
    fn new(p: &Presentation) -> Self {
        let n = p.vertex_count();
        let mut paths = Paths {
            arrows: Vec::new(),
            ends: Vec::new(),
            index: HashMap::new(),
            starting: vec![vec![Vec::new(); n]],
            ending: vec![vec![Vec::new(); n]],
        };
        for v in 0..n {
            paths.push(Vec::new(), (v, v), 0);
        }
        paths
    }

    fn push(&mut self, arrows: Vec<usize>, ends: (usize, usize), len: usize) {
        let id = self.arrows.len();
        self.starting[len][ends.0].push(id);
        self.ending[len][ends.1].push(id);
        self.index.insert(arrows.clone(), id);
        self.arrows.push(arrows);
        self.ends.push(ends);
    }

    fn max_len(&self) -> usize {
        self.starting.len() - 1
    }

    fn extend(&mut self, p: &Presentation) {
        let n = p.vertex_count();
        let len = self.starting.len();
        self.starting.push(vec![Vec::new(); n]);
        self.ending.push(vec![Vec::new(); n]);
        let arrows = p.quiver.arrows();
        if len == 1 {
            for (i, a) in arrows.iter().enumerate() {
                self.push(vec![i], (a.source, a.target), 1);
            }
            return;
        }
        let prev: Vec<usize> = self.starting[len - 1].iter().flatten().copied().collect::<Vec<_>>();
        let mut prev = prev;
        prev.sort_unstable();
        for id in prev {
            let (s, t) = self.ends[id];
            for (i, a) in arrows.iter().enumerate() {
                if a.source == t {
                    let mut w = self.arrows[id].clone();
                    w.push(i);
                    self.push(w, (s, a.target), len);
                }
            }
        }
    }

    fn key(&self, id: usize) -> Key {
        (Reverse(self.arrows[id].len() as u32), id as u32)
    }

    fn id_of(&self, w: &[usize]) -> usize {
        self.index[w]
    }
}

/// Row echelon form on sparse vectors, keyed by leading term.
#[derive(Default)]
struct SparseEchelon {
    rows: HashMap<Key, SVec>,
}

impl SparseEchelon {
    fn normal_form(&self, v: SVec) -> SVec {
        let mut work: BTreeMap<Key, Scalar> = BTreeMap::new();
        for (k, c) in v {
            add_term(&mut work, k, c);
        }
        let mut out = Vec::new();
        while let Some((k, c)) = work.pop_first() {
            match self.rows.get(&k) {
                Some(row) => {
                    for (k2, c2) in &row[1..] {
                        add_term(&mut work, *k2, -(&c * c2));
                    }
                }
                None => out.push((k, c)),
            }
        }
        out
    }

    fn insert(&mut self, v: SVec) -> bool {
        let nf = self.normal_form(v);
        let Some((lead, c)) = nf.first().cloned() else {
            return false;
        };
        let inv = c.inv().expect("nonzero leading coefficient");
        let row = nf.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    fn contains(&self, v: SVec) -> bool {
        self.normal_form(v).is_empty()
    }
}

fn add_term(work: &mut BTreeMap<Key, Scalar>, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match work.get_mut(&k) {
        Some(s) => {
            *s += &c;
            if s.is_zero() {
                work.remove(&k);
            }
        }
        None => {
            work.insert(k, c);
        }
    }
}

/// Builds `KQ/I` with default options.
pub fn build_algebra(p: &Presentation) -> Result<Algebra> {
    build_algebra_with(p, &BuildOptions::default())
}

pub fn build_algebra_with(p: &Presentation, opts: &BuildOptions) -> Result<Algebra> {
    let n = p.vertex_count();
    let m = p.quiver.arrows().len();
    let max_rel = p.relations.iter().map(Relation::max_len).max().unwrap_or(0);
    let cap = opts.degree_cap.unwrap_or((2 * m * max_rel).max(n + 1));
    let max_paths = opts.max_paths.unwrap_or(DEFAULT_MAX_PATHS);
    let rel_ends: Vec<Option<(usize, usize)>> = p
        .relations
        .iter()
        .map(|r| r.terms.first().and_then(|(_, w)| p.quiver.path_endpoints(w)))
        .collect();

    let mut paths = Paths::new(p);
    let mut span = SparseEchelon::default();
    let mut nilpotency = None;
    for bound in 1..=cap {
        paths.extend(p);
        if paths.arrows.len() > max_paths {
            return Err(Error::NotFiniteDimensional {
                cap: bound,
                reason: format!("more than {max_paths} paths of length at most {bound}"),
            });
        }
        for (r, ends) in p.relations.iter().zip(&rel_ends) {
            let Some((s, t)) = *ends else { continue };
            let ml = r.max_len();
            if ml > bound {
                continue;
            }
            let slack = bound - ml;
            for lp in 0..=slack {
                for &pid in &paths.ending[lp][s] {
                    for &qid in &paths.starting[slack - lp][t] {
                        span.insert(sandwich(&paths, pid, r, qid, None));
                    }
                }
            }
        }
        let found = (1..=bound).find(|&len| {
            paths.starting[len].iter().flatten().all(|&id| span.contains(vec![(paths.key(id), Scalar::one())]))
        });
        if let Some(len) = found {
            nilpotency = Some(len);
            break;
        }
    }
    let big_n = nilpotency.ok_or_else(|| Error::NotFiniteDimensional {
        cap,
        reason: "paths of every length up to the cap survive the relations".into(),
    })?;

    // quotient of paths of length < N by truncated products
    let mut ideal = SparseEchelon::default();
    for (r, ends) in p.relations.iter().zip(&rel_ends) {
        let Some((s, t)) = *ends else { continue };
        let min_len = r.terms.iter().map(|(_, w)| w.len()).min().unwrap_or(0);
        if min_len >= big_n {
            continue;
        }
        let slack = big_n - 1 - min_len;
        for lp in 0..=slack.min(paths.max_len()) {
            for &pid in &paths.ending[lp][s] {
                for lq in 0..=(slack - lp) {
                    for &qid in &paths.starting[lq][t] {
                        ideal.insert(sandwich(&paths, pid, r, qid, Some(big_n)));
                    }
                }
            }
        }
    }

    let mut basis_ids = Vec::new();
    for id in 0..paths.arrows.len() {
        if paths.arrows[id].len() < big_n && !ideal.rows.contains_key(&paths.key(id)) {
            basis_ids.push(id);
        }
    }
    let basis_of: HashMap<usize, usize> = basis_ids.iter().enumerate().map(|(b, &id)| (id, b)).collect();
    let d = basis_ids.len();
    let mut table: Vec<Elem> = vec![Vec::new(); d * d];
    for (i, &pi) in basis_ids.iter().enumerate() {
        for (j, &pj) in basis_ids.iter().enumerate() {
            if paths.ends[pi].1 != paths.ends[pj].0 {
                continue;
            }
            let w = concat(&paths.arrows[pi], &paths.arrows[pj]);
            if w.len() >= big_n {
                continue;
            }
            let id = if w.is_empty() { pi } else { paths.id_of(&w) };
            let nf = ideal.normal_form(vec![(paths.key(id), Scalar::one())]);
            let mut e: Elem = nf.into_iter().map(|((_, id), c)| (basis_of[&(id as usize)], c)).collect();
            e.sort_by_key(|t| t.0);
            table[i * d + j] = e;
        }
    }
    let q = &p.quiver;
    let labels = basis_ids
        .iter()
        .map(|&id| {
            let w = &paths.arrows[id];
            if w.is_empty() {
                format!("e{}", q.vertices()[paths.ends[id].0])
            } else {
                q.path_name(w)
            }
        })
        .collect();
    let tags = basis_ids.iter().map(|&id| paths.ends[id]).collect();
    let idempotents = (0..n).map(|v| basis_of[&v]).collect();
    let basis_paths = basis_ids.iter().map(|&id| paths.arrows[id].clone()).collect();
    let alg = Algebra::from_parts(p.field, q.vertices().to_vec(), labels, tags, idempotents, table)?;
    Ok(alg.with_provenance(basis_paths, p.clone()))
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

/// `p·r·q` as a sparse path vector, dropping terms of length `≥ truncate`.
fn sandwich(paths: &Paths, pid: usize, r: &Relation, qid: usize, truncate: Option<usize>) -> SVec {
    let mut out = Vec::new();
    for (c, w) in &r.terms {
        let mut full = paths.arrows[pid].clone();
        full.extend_from_slice(w);
        full.extend_from_slice(&paths.arrows[qid]);
        if truncate.is_some_and(|t| full.len() >= t) {
            continue;
        }
        out.push((paths.key(paths.id_of(&full)), c.clone()));
    }
    out
}

/// Expresses a path (given by arrow indices) in the basis of a presented algebra.
pub fn path_element(a: &Algebra, start: usize, w: &[usize]) -> Result<Elem> {
    let mut acc: Elem = a.unit(a.idempotent(start));
    for &arrow in w {
        acc = a.mul(&acc, &arrow_element(a, arrow)?);
    }
    Ok(acc)
}

/// The basis element of a presented algebra corresponding to an arrow.
///
/// Relations only involve paths of length at least two, so arrows always
/// survive as basis elements.
pub fn arrow_element(a: &Algebra, arrow: usize) -> Result<Elem> {
    let paths = a.basis_paths().ok_or_else(|| Error::InvalidAlgebra("algebra has no presentation".into()))?;
    paths
        .iter()
        .position(|w| w.len() == 1 && w[0] == arrow)
        .map(|b| a.unit(b))
        .ok_or_else(|| Error::InvalidAlgebra(format!("arrow {arrow} is not a basis element")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldKind;

    fn pres(vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[&[(i64, &str)]]) -> Presentation {
        Presentation::from_names(FieldKind::Rational, vs, arrows, rels).unwrap()
    }

    #[test]
    fn linear_a2_has_three_basis_elements() {
        let a = build_algebra(&pres(&["1", "2"], &[("x", "1", "2")], &[])).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1", "e2", "x"]);
        assert_eq!(a.radical_basis().len(), 1);
    }

    #[test]
    fn linear_a3_multiplication() {
        let a = build_algebra(&pres(&["1", "2", "3"], &[("x12", "1", "2"), ("x23", "2", "3")], &[])).unwrap();
        assert_eq!(a.dim(), 6);
        let x12 = a.unit(3);
        let x23 = a.unit(4);
        assert_eq!(a.labels()[5], "x12·x23");
        assert_eq!(a.mul(&x12, &x23), a.unit(5));
        assert_eq!(a.mul(&a.unit(0), &x12), x12);
        assert!(a.mul(&x12, &a.unit(0)).is_empty());
        assert!(a.mul(&x23, &x12).is_empty());
    }

    #[test]
    fn commutator_on_a2_double_quiver_kills_both_loops() {
        let p = pres(&["1", "2"], &[("a", "1", "2"), ("a*", "2", "1")], &[&[(1, "a a*")], &[(1, "a* a")]]);
        let a = build_algebra(&p).unwrap();
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn cycle_with_cubes_zero() {
        let p = pres(
            &["1", "2"],
            &[("x1", "1", "2"), ("x2", "2", "1")],
            &[&[(1, "x1 x2 x1")], &[(1, "x2 x1 x2")]],
        );
        let a = build_algebra(&p).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.radical_basis().len(), 4);
        assert_eq!(a.computed_radical().unwrap().len(), 4);
    }

    #[test]
    fn mixed_degree_relation_reduces_to_short_paths() {
        // loop x with x^2 = x^3 is not admissible: x^2 never lies in the ideal span
        let p = pres(&["1"], &[("x", "1", "1")], &[&[(1, "x x"), (-1, "x x x")]]);
        let r = build_algebra_with(&p, &BuildOptions { degree_cap: Some(8), max_paths: None });
        assert!(matches!(r, Err(Error::NotFiniteDimensional { .. })));
    }

    #[test]
    fn free_loop_is_infinite() {
        let p = pres(&["1"], &[("x", "1", "1"), ("y", "1", "1")], &[&[(1, "x y")]]);
        assert!(matches!(build_algebra(&p), Err(Error::NotFiniteDimensional { .. })));
    }
}
