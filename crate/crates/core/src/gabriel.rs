//! Quiver-with-relations presentations of split basic algebras, and
//! isomorphism search against a given presentation.

use crate::algebra::{elem_axpy, Algebra, Elem};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Vector};
use crate::pathalg::build_algebra;
use crate::quiver::{Arrow, Presentation, Quiver, Relation};
use crate::scalar::Scalar;

/// Bound on the number of paths examined while computing relations.
const MAX_PATHS: usize = 200_000;

/// A Gabriel presentation together with the elements the arrows map to.
#[derive(Clone, Debug)]
pub struct Gabriel {
    pub presentation: Presentation,
    /// Image of each arrow in the algebra; these span `J/J²`.
    pub arrow_images: Vec<Elem>,
}

/// `e_l J² e_r` for every block, as echelon bases over the full coordinate space.
fn radical_square(a: &Algebra) -> Vec<Echelon> {
    let n = a.vertex_count();
    let d = a.dim();
    let mut blocks = vec![Echelon::new(d); n * n];
    let rad: Vec<usize> = (0..d).filter(|&b| !a.is_idempotent_basis(b)).collect();
    for &x in &rad {
        for &y in &rad {
            let p = a.basis_product(x, y);
            if !p.is_empty() {
                let (l, _) = a.tags()[x];
                let (_, r) = a.tags()[y];
                blocks[l * n + r].insert(a.dense(p));
            }
        }
    }
    blocks
}

pub fn gabriel_presentation(a: &Algebra) -> Result<Presentation> {
    Ok(gabriel(a)?.presentation)
}

pub fn gabriel(a: &Algebra) -> Result<Gabriel> {
    let n = a.vertex_count();
    for v in 0..n {
        if a.block(v, v).iter().filter(|&&b| a.is_idempotent_basis(b)).count() != 1 {
            return Err(Error::NotSplitBasic(format!("vertex {v} has no unique idempotent")));
        }
    }
    // arrows: basis elements of each block that are independent modulo J²
    let sq = radical_square(a);
    let mut arrows = Vec::new();
    let mut images = Vec::new();
    let mut used = std::collections::HashSet::new();
    for l in 0..n {
        for r in 0..n {
            let mut span = sq[l * n + r].clone();
            for &b in a.block(l, r) {
                if a.is_idempotent_basis(b) {
                    continue;
                }
                if span.insert(a.unit_dense(b)).is_some() {
                    let mut name = sanitize(&a.labels()[b]);
                    if !used.insert(name.clone()) {
                        name = format!("{name}_{}", arrows.len());
                        used.insert(name.clone());
                    }
                    arrows.push(Arrow { name, source: l, target: r });
                    images.push(a.unit(b));
                }
            }
        }
    }
    let quiver = Quiver::new(a.vertices().to_vec(), arrows)?;
    let relations = relations_for(a, &quiver, &images)?;
    let presentation = Presentation::new(a.field(), quiver, relations)?;
    Ok(Gabriel { presentation, arrow_images: images })
}

fn sanitize(label: &str) -> String {
    let s: String = label.chars().map(|c| if c.is_alphanumeric() || c == '*' || c == '_' { c } else { '_' }).collect();
    if s.is_empty() {
        "arrow".to_string()
    } else {
        s
    }
}

/// All paths of length `lo..=hi`, grouped by length.
fn paths_between(q: &Quiver, lo: usize, hi: usize) -> Result<Vec<Vec<usize>>> {
    let out_arrows = q.out_arrows();
    let mut layer: Vec<Vec<usize>> = (0..q.arrows().len()).map(|a| vec![a]).collect();
    let mut all = Vec::new();
    for len in 1..=hi {
        if len >= lo {
            all.extend(layer.iter().cloned());
        }
        if all.len() > MAX_PATHS {
            return Err(Error::DimensionCapExceeded { dim: all.len(), cap: MAX_PATHS });
        }
        if len == hi {
            break;
        }
        let mut next = Vec::new();
        for p in &layer {
            let end = q.arrows()[*p.last().unwrap()].target;
            for &b in &out_arrows[end] {
                let mut w = p.clone();
                w.push(b);
                next.push(w);
            }
        }
        layer = next;
    }
    Ok(all)
}

fn evaluate(a: &Algebra, q: &Quiver, images: &[Elem], path: &[usize]) -> Elem {
    let mut acc = a.unit(a.idempotent(q.arrows()[path[0]].source));
    for &x in path {
        acc = a.mul(&acc, &images[x]);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// A generating set of the kernel of `KQ → A`, pruned greedily.
fn relations_for(a: &Algebra, q: &Quiver, images: &[Elem]) -> Result<Vec<Relation>> {
    let top = a.loewy_length();
    let paths = paths_between(q, 2, top.max(1) + 1)?;
    let n = a.vertex_count();
    let index: std::collections::HashMap<&[usize], usize> =
        paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut candidates: Vec<Vector> = Vec::new();
    for l in 0..n {
        for r in 0..n {
            let ids: Vec<usize> = paths
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    q.arrows()[p[0]].source == l && q.arrows()[*p.last().unwrap()].target == r
                })
                .map(|(i, _)| i)
                .collect();
            if ids.is_empty() {
                continue;
            }
            let values: Vec<Vector> = ids.iter().map(|&i| a.dense(&evaluate(a, q, images, &paths[i]))).collect();
            let rows: Vec<Vector> =
                (0..a.dim()).map(|k| values.iter().map(|v| v[k].clone()).collect()).collect();
            for c in linalg::nullspace(&rows, ids.len()) {
                let mut v = linalg::zeros(paths.len());
                for (x, &i) in c.iter().zip(&ids) {
                    v[i] = x.clone();
                }
                candidates.push(v);
            }
        }
    }
    // shortest relations first
    candidates.sort_by_key(|v| {
        let support: Vec<usize> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| paths[i].len()).collect();
        (support.iter().copied().max().unwrap_or(0), support.len())
    });
    let max_len = top.max(1) + 1;
    let mut ideal = Echelon::new(paths.len());
    let mut chosen = Vec::new();
    for c in candidates {
        if ideal.contains(&c) {
            continue;
        }
        let terms: Vec<(Scalar, Vec<usize>)> = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (x.clone(), paths[i].clone()))
            .collect();
        // close up under multiplication by paths, staying below the length bound
        let longest = terms.iter().map(|t| t.1.len()).max().unwrap_or(0);
        let (s, t) = q.path_endpoints(&terms[0].1).expect("composable");
        let mut lefts: Vec<Vec<usize>> = vec![Vec::new()];
        lefts.extend(paths_ending(q, s, max_len - longest));
        let mut rights: Vec<Vec<usize>> = vec![Vec::new()];
        rights.extend(paths_starting(q, t, max_len - longest));
        for u in &lefts {
            for w in &rights {
                if u.len() + w.len() + longest > max_len {
                    continue;
                }
                let mut v = linalg::zeros(paths.len());
                for (x, p) in &terms {
                    let mut full = u.clone();
                    full.extend_from_slice(p);
                    full.extend_from_slice(w);
                    v[index[full.as_slice()]] = x.clone();
                }
                ideal.insert(v);
            }
        }
        chosen.push(Relation::new(terms));
    }
    Ok(chosen)
}

fn paths_ending(q: &Quiver, v: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for p in &layer {
            let end = p.first().map_or(v, |&x| q.arrows()[x].source);
            for (i, a) in q.arrows().iter().enumerate() {
                if a.target == end {
                    let mut w = vec![i];
                    w.extend_from_slice(p);
                    next.push(w);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn paths_starting(q: &Quiver, v: usize, max: usize) -> Vec<Vec<usize>> {
    let out_arrows = q.out_arrows();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for p in &layer {
            let end = p.last().map_or(v, |&x| q.arrows()[x].target);
            for &b in &out_arrows[end] {
                let mut w = p.clone();
                w.push(b);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// An isomorphism `KQ/I → A` given by a vertex bijection and arrow images.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    /// Vertex `v` of the presentation goes to vertex `perm[v]` of the algebra.
    pub perm: Vec<usize>,
    pub arrow_images: Vec<Elem>,
}

/// Searches for an isomorphism from the algebra presented by `p` onto `a`.
///
/// Arrows are sent to `±` the Gabriel arrows of `a`, optionally corrected by
/// elements of `J²` with coefficients in `{−1, 0, 1}` when that space is
/// small. A returned map sends arrows onto a basis of `J/J²`, satisfies the
/// relations and the dimensions agree, so it is an isomorphism; `None` only
/// means that none was found in this search space.
pub fn find_isomorphism(p: &Presentation, a: &Algebra) -> Result<Option<Isomorphism>> {
    let b = build_algebra(p)?;
    let n = a.vertex_count();
    if b.dim() != a.dim() || b.vertex_count() != n {
        return Ok(None);
    }
    let g = gabriel(a)?;
    let q = &p.quiver;
    let cb = b.cartan();
    let ca = a.cartan();
    let counts_p = q.arrow_counts();
    let counts_a = g.presentation.quiver.arrow_counts();
    let sq = radical_square(a);
    for perm in permutations(n) {
        let ok = (0..n).all(|u| {
            (0..n).all(|v| cb[u][v] == ca[perm[u]][perm[v]] && counts_p[u][v] == counts_a[perm[u]][perm[v]])
        });
        if !ok {
            continue;
        }
        // candidate images per arrow
        let mut options: Vec<Vec<Elem>> = Vec::new();
        for arrow in q.arrows() {
            let (l, r) = (perm[arrow.source], perm[arrow.target]);
            let gens: Vec<&Elem> = g
                .presentation
                .quiver
                .arrows()
                .iter()
                .zip(&g.arrow_images)
                .filter(|(ga, _)| ga.source == l && ga.target == r)
                .map(|(_, e)| e)
                .collect();
            let corrections = small_combinations(sq[l * n + r].rows());
            let mut opts = Vec::new();
            for gen in &gens {
                for sign in [Scalar::one(), -Scalar::one()] {
                    for c in &corrections {
                        opts.push(elem_axpy(c, &sign, gen));
                    }
                }
            }
            options.push(opts);
        }
        let total: f64 = options.iter().map(|o| o.len() as f64).product();
        if total > 5e6 {
            continue;
        }
        let mut choice = vec![0usize; options.len()];
        if let Some(found) = search(a, p, &perm, &options, 0, &mut choice)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn small_combinations(rows: &[Vector]) -> Vec<Elem> {
    if rows.len() > 3 {
        return vec![Vec::new()];
    }
    let mut out: Vec<Vector> = vec![linalg::zeros(rows.first().map_or(0, Vec::len))];
    for r in rows {
        let mut next = Vec::new();
        for v in &out {
            for c in [0i64, 1, -1] {
                let mut w = v.clone();
                linalg::axpy(&mut w, &Scalar::from_int(-c), r);
                next.push(w);
            }
        }
        out = next;
    }
    out.iter().map(|v| crate::algebra::to_sparse(v)).collect()
}

fn search(
    a: &Algebra,
    p: &Presentation,
    perm: &[usize],
    options: &[Vec<Elem>],
    k: usize,
    choice: &mut Vec<usize>,
) -> Result<Option<Isomorphism>> {
    if k == options.len() {
        let images: Vec<Elem> = choice.iter().zip(options).map(|(&c, o)| o[c].clone()).collect();
        if !spans_top(a, &images) {
            return Ok(None);
        }
        for r in &p.relations {
            let mut acc: Elem = Vec::new();
            for (c, w) in &r.terms {
                let start = perm[p.quiver.arrows()[w[0]].source];
                let mut x = a.unit(a.idempotent(start));
                for &arrow in w {
                    x = a.mul(&x, &images[arrow]);
                }
                acc = elem_axpy(&acc, c, &x);
            }
            if !acc.is_empty() {
                return Ok(None);
            }
        }
        return Ok(Some(Isomorphism { perm: perm.to_vec(), arrow_images: images }));
    }
    for c in 0..options[k].len() {
        choice[k] = c;
        if let Some(f) = search(a, p, perm, options, k + 1, choice)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// True when the images are independent modulo `J²`.
fn spans_top(a: &Algebra, images: &[Elem]) -> bool {
    let sq = radical_square(a);
    let n = a.vertex_count();
    let mut per_block: Vec<Echelon> = sq;
    for x in images {
        let Some((b, _)) = x.first() else { return false };
        let (l, r) = a.tags()[*b];
        if per_block[l * n + r].insert(a.dense(x)).is_none() {
            return false;
        }
    }
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Checks that a presentation describes `a` by building it and comparing
/// dimensions block by block.
pub fn same_shape(p: &Presentation, a: &Algebra) -> Result<bool> {
    let b = build_algebra(p)?;
    Ok(b.dim() == a.dim() && b.cartan() == a.cartan())
}
