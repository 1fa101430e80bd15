//! Anti-automorphisms and the induced order-reversing involution of
//! `2silt Λ`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{elem_axpy, Algebra, Elem};
use crate::complex::TwoTermComplex;
use crate::enumerate::{enumerate_with, Census, EnumerateOptions};
use crate::error::{Error, Result};
use crate::gabriel::{gabriel_presentation, permutations};
use crate::linalg::{self, Vector};
use crate::pathalg::{arrow_element, build_algebra};
use crate::quiver::Presentation;
use crate::scalar::Scalar;
use crate::silting::{Direction, GVector, SiltingObject, Workspace};

/// A linear bijection `ς` of an algebra with `ς(xy) = ς(y)ς(x)` that
/// permutes the primitive idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiAutomorphism {
    /// `ς(e_v) = e_{perm[v]}`.
    pub perm: Vec<usize>,
    /// `ς(b)` for every basis element `b`.
    pub images: Vec<Elem>,
    /// For presented algebras: arrow `a` goes to `scalar · arrow`.
    pub arrows: Option<Vec<(usize, Scalar)>>,
}

impl AntiAutomorphism {
    /// Wraps basis images, reading off the vertex permutation and checking
    /// every invariant.
    pub fn from_images(a: &Algebra, images: Vec<Elem>) -> Result<Self> {
        if images.len() != a.dim() {
            return Err(Error::InvalidAntiAutomorphism(format!("{} images for dimension {}", images.len(), a.dim())));
        }
        let mut perm = Vec::with_capacity(a.vertex_count());
        for v in 0..a.vertex_count() {
            let img = &images[a.idempotent(v)];
            let w = (0..a.vertex_count()).find(|&w| *img == a.unit(a.idempotent(w))).ok_or_else(|| {
                Error::InvalidAntiAutomorphism(format!("image of e_{} is not a primitive idempotent", v + 1))
            })?;
            perm.push(w);
        }
        let s = AntiAutomorphism { perm, images, arrows: None };
        s.validate(a)?;
        Ok(s)
    }

    pub fn validate(&self, a: &Algebra) -> Result<()> {
        let d = a.dim();
        let bad = |m: String| Err(Error::InvalidAntiAutomorphism(m));
        if self.images.len() != d || self.perm.len() != a.vertex_count() {
            return bad("size mismatch".into());
        }
        let mut seen = vec![false; self.perm.len()];
        for &w in &self.perm {
            if w >= seen.len() || std::mem::replace(&mut seen[w], true) {
                return bad("vertex map is not a permutation".into());
            }
        }
        if linalg::rank(&self.images.iter().map(|x| a.dense(x)).collect::<Vec<_>>(), d) != d {
            return bad("map is not bijective".into());
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.apply(a.basis_product(i, j));
                let rhs = a.mul(&self.images[j], &self.images[i]);
                if lhs != rhs {
                    return bad(format!("ς({}·{}) ≠ ς({})ς({})", a.labels()[i], a.labels()[j], a.labels()[j], a.labels()[i]));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &[(usize, Scalar)]) -> Elem {
        x.iter().fold(Vec::new(), |acc, (b, c)| elem_axpy(&acc, c, &self.images[*b]))
    }

    pub fn fixed_vertices(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&v| self.perm[v] == v).collect()
    }

    pub fn fixes_all_vertices(&self) -> bool {
        self.fixed_vertices().len() == self.perm.len()
    }

    /// Human-readable summary, e.g. `1↦1 2↦3 3↦2; alpha↦-gamma*`.
    pub fn describe(&self, a: &Algebra) -> String {
        let verts: Vec<String> =
            self.perm.iter().enumerate().map(|(v, &w)| format!("{}↦{}", a.vertices()[v], a.vertices()[w])).collect();
        let mut out = verts.join(" ");
        if let (Some(arrows), Some(p)) = (&self.arrows, a.presentation()) {
            let names: Vec<String> = arrows
                .iter()
                .enumerate()
                .map(|(x, (y, c))| {
                    let sign = if c.is_one() { String::new() } else { format!("{c}·") };
                    format!("{}↦{sign}{}", p.quiver.arrows()[x].name, p.quiver.arrows()[*y].name)
                })
                .collect();
            out.push_str("; ");
            out.push_str(&names.join(" "));
        }
        out
    }
}

/// All anti-automorphisms of a presented algebra that send each arrow to
/// `±1` times an arrow, one per class under rescaling by `±1` at vertices.
pub fn find_anti_automorphisms(a: &Algebra) -> Result<Vec<AntiAutomorphism>> {
    let Some(p) = a.presentation() else {
        return Ok(Vec::new());
    };
    let q = &p.quiver;
    let n = q.vertex_count();
    let counts = q.arrow_counts();
    let arrow_elems = (0..q.arrows().len()).map(|x| arrow_element(a, x)).collect::<Result<Vec<_>>>()?;
    let signs: Vec<Scalar> = if a.field().characteristic() == 2 {
        vec![a.field().one()]
    } else {
        vec![a.field().one(), -a.field().one()]
    };
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    for perm in permutations(n) {
        if !(0..n).all(|u| (0..n).all(|v| counts[u][v] == counts[perm[v]][perm[u]])) {
            continue;
        }
        let candidates: Vec<Vec<usize>> = q
            .arrows()
            .iter()
            .map(|x| {
                (0..q.arrows().len())
                    .filter(|&y| q.arrows()[y].source == perm[x.target] && q.arrows()[y].target == perm[x.source])
                    .collect()
            })
            .collect();
        let mut choice = Vec::new();
        let mut used = vec![false; q.arrows().len()];
        let mut leaves = Vec::new();
        bijections(&candidates, &mut used, &mut choice, &mut leaves);
        for bij in leaves {
            for sign_idx in 0..signs.len().pow(bij.len() as u32) {
                let mut k = sign_idx;
                let scal: Vec<Scalar> = (0..bij.len())
                    .map(|_| {
                        let s = signs[k % signs.len()].clone();
                        k /= signs.len();
                        s
                    })
                    .collect();
                let key = (perm.clone(), bij.clone(), normalize_signs(q, &perm, &bij, &scal));
                if seen.contains(&key) {
                    continue;
                }
                let images: Vec<Elem> =
                    bij.iter().zip(&scal).map(|(&y, c)| crate::algebra::elem_scale(&arrow_elems[y], c)).collect();
                if !kills_relations(a, p, &perm, &images) {
                    continue;
                }
                seen.insert(key);
                let basis_images = extend_to_basis(a, &perm, &images)?;
                let s = AntiAutomorphism {
                    perm: perm.clone(),
                    images: basis_images,
                    arrows: Some(bij.iter().copied().zip(scal.iter().cloned()).collect()),
                };
                s.validate(a)?;
                found.push(s);
            }
        }
    }
    Ok(found)
}

fn bijections(cands: &[Vec<usize>], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == cands.len() {
        out.push(cur.clone());
        return;
    }
    for &y in &cands[cur.len()] {
        if !used[y] {
            used[y] = true;
            cur.push(y);
            bijections(cands, used, cur, out);
            cur.pop();
            used[y] = false;
        }
    }
}

/// Representative sign pattern under `ς ↦ D ς D^{-1}` for diagonal `D = Σ ±e_v`.
fn normalize_signs(q: &crate::quiver::Quiver, perm: &[usize], bij: &[usize], scal: &[Scalar]) -> Vec<bool> {
    let n = perm.len();
    let neg: Vec<bool> = scal.iter().map(|c| !c.is_one()).collect();
    if n > 16 {
        return neg;
    }
    (0..1u32 << n)
        .map(|mask| {
            bij.iter()
                .zip(&neg)
                .map(|(&y, &s)| {
                    let flip = (mask >> q.arrows()[y].source) & 1 != (mask >> q.arrows()[y].target) & 1;
                    s ^ flip
                })
                .collect::<Vec<bool>>()
        })
        .min()
        .unwrap_or(neg)
}

/// `ς(w)` for a path `w`, given arrow images: `ς(a_1⋯a_k) = ς(a_k)⋯ς(a_1)`.
fn reverse_image(a: &Algebra, perm: &[usize], images: &[Elem], start: usize, w: &[usize]) -> Elem {
    let end = match (w.last(), a.presentation()) {
        (Some(&last), Some(p)) => p.quiver.arrows()[last].target,
        _ => start,
    };
    let mut acc = a.unit(a.idempotent(perm[end]));
    for &x in w.iter().rev() {
        acc = a.mul(&acc, &images[x]);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn kills_relations(a: &Algebra, p: &Presentation, perm: &[usize], images: &[Elem]) -> bool {
    p.relations.iter().all(|r| {
        let mut acc: Elem = Vec::new();
        for (c, w) in &r.terms {
            let start = p.quiver.arrows()[w[0]].source;
            acc = elem_axpy(&acc, c, &reverse_image(a, perm, images, start, w));
        }
        acc.is_empty()
    })
}

fn extend_to_basis(a: &Algebra, perm: &[usize], images: &[Elem]) -> Result<Vec<Elem>> {
    let paths = a.basis_paths().ok_or_else(|| Error::InvalidAlgebra("algebra has no presentation".into()))?;
    Ok((0..a.dim())
        .map(|b| {
            let (l, _) = a.tags()[b];
            reverse_image(a, perm, images, l, &paths[b])
        })
        .collect())
}

/// `T^* = Hom(T, Λ)` as a complex over `Λ^op`, shifted so that it is again
/// concentrated in degrees −1 and 0: `(T^0)^* → (T^{-1})^*`.
///
/// `op` must be `a.opposite()` for the algebra of `t`, sharing its basis.
pub fn dualize(t: &TwoTermComplex, op: &Arc<Algebra>) -> Result<TwoTermComplex> {
    let a = &t.algebra;
    let swapped = a.tags().iter().zip(op.tags()).all(|(&(l, r), &(l2, r2))| l == r2 && r == l2);
    if op.dim() != a.dim() || !swapped {
        return Err(Error::AlgebraMismatch);
    }
    let d = t.d.transpose_map(t.minus.clone(), t.zero.clone(), |e| e.clone());
    TwoTermComplex::new(op.clone(), t.zero.clone(), t.minus.clone(), d)
}

/// `S_σ = [1] ∘ σ ∘ (−)^*` on one indecomposable complex. This is
/// [`dualize`] followed by transport along `σ: Λ^op → Λ`, done in one pass.
pub fn apply_to_complex(s: &AntiAutomorphism, t: &TwoTermComplex) -> Result<TwoTermComplex> {
    let minus: Vec<usize> = t.zero.iter().map(|&v| s.perm[v]).collect();
    let zero: Vec<usize> = t.minus.iter().map(|&v| s.perm[v]).collect();
    let d = t.d.transpose_map(zero.clone(), minus.clone(), |e| s.apply(e));
    TwoTermComplex::new(t.algebra.clone(), minus, zero, d)
}

pub fn apply_s_sigma(s: &AntiAutomorphism, t: &SiltingObject) -> Result<SiltingObject> {
    let summands = t.summands().iter().map(|x| apply_to_complex(s, x).map(Arc::new)).collect::<Result<Vec<_>>>()?;
    SiltingObject::new(summands)
}

/// Expected key of `S_σ T` computed from g-vectors alone:
/// `g(S_σ X)_{perm[v]} = −g(X)_v`.
pub fn predicted_key(s: &AntiAutomorphism, key: &[GVector]) -> Vec<GVector> {
    let mut out: Vec<GVector> = key
        .iter()
        .map(|g| {
            let mut h = vec![0; g.len()];
            for (v, &x) in g.iter().enumerate() {
                h[s.perm[v]] = -x;
            }
            h
        })
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisectionReport {
    pub vertex: usize,
    /// Elements with `P_v` in degree −1.
    pub minus: Vec<usize>,
    /// Elements with `P_v` in degree 0.
    pub plus: Vec<usize>,
    /// Every element lies in exactly one part.
    pub partition: bool,
}

impl BisectionReport {
    pub fn sizes(&self) -> (usize, usize) {
        (self.minus.len(), self.plus.len())
    }
}

pub fn bisect(c: &Census, vertex: usize) -> Result<BisectionReport> {
    if !c.complete {
        return Err(Error::IncompleteCensus);
    }
    if vertex >= c.algebra.vertex_count() {
        return Err(Error::BadVertex(vertex));
    }
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    let mut partition = true;
    for (i, t) in c.elements.iter().enumerate() {
        let (m, z) = (t.has_in_minus(vertex), t.has_in_zero(vertex));
        partition &= m != z;
        if m {
            minus.push(i);
        }
        if z {
            plus.push(i);
        }
    }
    Ok(BisectionReport { vertex, minus, plus, partition })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSymmetry {
    pub vertex: usize,
    pub minus: usize,
    pub plus: usize,
    /// `S_σ` maps the degree −1 part onto the degree 0 part.
    pub swaps_halves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    /// `orbit[i]` is the index of `S_σ(T_i)`.
    pub orbit: Vec<usize>,
    pub bijection: bool,
    pub order_reversing: bool,
    pub arrows_reversed: bool,
    pub fixed_vertices: Vec<usize>,
    pub bisections: Vec<VertexSymmetry>,
    /// Present when `σ` fixes every vertex.
    pub g_negation: Option<bool>,
    pub fixed_points: Vec<usize>,
    pub even: bool,
}

impl SymmetryReport {
    pub fn holds(&self) -> bool {
        self.bijection
            && self.order_reversing
            && self.arrows_reversed
            && self.bisections.iter().all(|b| b.swaps_halves && b.minus == b.plus)
            && self.g_negation != Some(false)
            && (self.fixed_vertices.is_empty() || self.even)
    }
}

pub fn verify_symmetry(c: &Census, s: &AntiAutomorphism, ws: &Workspace) -> Result<SymmetryReport> {
    if !c.complete {
        return Err(Error::IncompleteCensus);
    }
    let a = &c.algebra;
    s.validate(a)?;
    let n = c.len();
    let mut orbit = Vec::with_capacity(n);
    let mut bijection = true;
    for t in &c.elements {
        let image = apply_s_sigma(s, t)?;
        debug_assert_eq!(image.key(), predicted_key(s, t.key()).as_slice());
        match c.find(image.key()) {
            Some(j) => orbit.push(j),
            None => {
                bijection = false;
                orbit.push(usize::MAX);
            }
        }
    }
    bijection &= orbit.iter().copied().collect::<HashSet<_>>().len() == n;
    let mut order_reversing = bijection;
    if bijection {
        let geq = c.order_matrix(ws)?;
        order_reversing = (0..n).all(|i| (0..n).all(|j| geq[i][j] == geq[orbit[j]][orbit[i]]));
    }
    let arrows_reversed = bijection && {
        let set: HashSet<(usize, usize)> = c.arrows.iter().map(|x| (x.from, x.to)).collect();
        c.arrows.iter().all(|x| set.contains(&(orbit[x.to], orbit[x.from])))
    };
    let fixed_vertices = s.fixed_vertices();
    let mut bisections = Vec::new();
    for &v in &fixed_vertices {
        let b = bisect(c, v)?;
        let plus: HashSet<usize> = b.plus.iter().copied().collect();
        let swaps = bijection && b.partition && b.minus.iter().all(|i| plus.contains(&orbit[*i]));
        bisections.push(VertexSymmetry { vertex: v, minus: b.minus.len(), plus: b.plus.len(), swaps_halves: swaps });
    }
    let g_negation = s.fixes_all_vertices().then(|| {
        c.elements.iter().zip(&orbit).all(|(t, &j)| {
            let mut neg: Vec<GVector> = t.key().iter().map(|g| g.iter().map(|x| -x).collect()).collect();
            neg.sort();
            j != usize::MAX && c.elements[j].key() == neg.as_slice()
        })
    });
    let fixed_points = (0..n).filter(|&i| orbit[i] == i).collect();
    Ok(SymmetryReport {
        orbit,
        bijection,
        order_reversing,
        arrows_reversed,
        fixed_vertices,
        bisections,
        g_negation,
        fixed_points,
        even: n.is_multiple_of(2),
    })
}

/// `End(T)` in the homotopy category, with one primitive idempotent per
/// summand (vertex `i` is the `i`-th summand in canonical order).
///
/// A basis element with tags `(i, j)` is a map `T_j → T_i`, and the product
/// is composition, `x·y = x∘y`.
pub fn endomorphism_algebra(t: &SiltingObject, ws: &Workspace) -> Result<Algebra> {
    let t = ws.canonical_object(t)?;
    let s = t.summands();
    let n = s.len();
    let alg = t.algebra().ok_or_else(|| Error::InvalidAlgebra("empty object".into()))?.clone();
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut labels = Vec::new();
    let mut tags = Vec::new();
    let mut maps = Vec::new();
    let mut idempotents = vec![0; n];
    let mut block_start = vec![0; n * n];
    // per summand: our End basis written in the coordinates of the Hom quotient
    let mut end_coords: Vec<Vec<Vector>> = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            block_start[i * n + j] = maps.len();
            if i == j {
                idempotents[i] = maps.len();
                labels.push(format!("e{}", i + 1));
                tags.push((i, i));
                let id = crate::hom::ChainMap::identity(&s[i]);
                let h = ws.hom(&s[i], &s[i])?;
                let mut coords = vec![h.coords(&alg, &id)?];
                maps.push(id);
                for (k, r) in ws.radical_end(&s[i])?.iter().enumerate() {
                    labels.push(format!("r{}_{}", i + 1, k + 1));
                    tags.push((i, i));
                    coords.push(h.coords(&alg, r)?);
                    maps.push(r.clone());
                }
                if coords.len() != h.dim() {
                    return Err(Error::NotSplitEndomorphism(format!("summand {} has a non-split top", i + 1)));
                }
                end_coords.push(coords);
            } else {
                end_coords.push(Vec::new());
                for (k, m) in ws.hom(&s[j], &s[i])?.basis().iter().enumerate() {
                    labels.push(format!("h{}_{}_{}", i + 1, j + 1, k + 1));
                    tags.push((i, j));
                    maps.push(m.clone());
                }
            }
        }
    }
    let d = maps.len();
    let mut table = vec![Vec::new(); d * d];
    for x in 0..d {
        for y in 0..d {
            let (i, j) = tags[x];
            let (j2, k) = tags[y];
            if j != j2 {
                continue;
            }
            let comp = maps[x].compose(&alg, &maps[y]);
            let h = ws.hom(&s[k], &s[i])?;
            let c = h.coords(&alg, &comp)?;
            let local = if i == k {
                linalg::express(&end_coords[i * n + i], &c)
                    .ok_or_else(|| Error::Invariant("composition left the endomorphism ring".into()))?
            } else {
                c
            };
            let start = block_start[i * n + k];
            table[x * d + y] =
                local.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(p, v)| (start + p, v.clone())).collect();
        }
    }
    Algebra::from_parts(alg.field(), names, labels, tags, idempotents, table)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwiceReport {
    pub vertex: usize,
    pub sigma_fixes_vertex: bool,
    pub mutation_two_term: bool,
    pub mutation_is_tilting: bool,
    pub gamma_dim: usize,
    /// Vertex of `Γ` belonging to the new summand of the mutation.
    pub gamma_vertex: Option<usize>,
    pub gamma_anti_automorphism: bool,
    pub lambda_count: usize,
    pub lambda_complete: bool,
    pub gamma_count: usize,
    pub gamma_complete: bool,
    pub lambda_bisection: (usize, usize),
    pub gamma_bisection: Option<(usize, usize)>,
    pub failed: Vec<String>,
    #[serde(skip)]
    pub gamma_presentation: Option<Presentation>,
}

impl TwiceReport {
    pub fn counts_equal(&self) -> bool {
        self.lambda_complete && self.gamma_complete && self.lambda_count == self.gamma_count
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.failed.is_empty()
    }
}

/// Compares `2silt Λ` with `2silt Γ` for `Γ = End(μ⁻_P(Λ))`, `P = e_v Λ`,
/// recording which hypotheses of the comparison hold.
pub fn twice_pipeline(
    a: &Arc<Algebra>,
    s: Option<&AntiAutomorphism>,
    vertex: usize,
    opts: &EnumerateOptions,
    ws: &Workspace,
) -> Result<TwiceReport> {
    if vertex >= a.vertex_count() {
        return Err(Error::BadVertex(vertex));
    }
    let mut failed = Vec::new();
    let sigma_fixes_vertex = s.is_some_and(|s| s.perm[vertex] == vertex);
    if !sigma_fixes_vertex {
        failed.push("anti-automorphism of Λ fixing e".to_string());
    }
    let lambda = enumerate_with(a, opts, ws)?;
    let lambda_bisection = if lambda.complete { bisect(&lambda, vertex)?.sizes() } else { (0, 0) };
    let regular = ws.canonical_object(&SiltingObject::regular(a))?;
    let at = regular
        .key()
        .iter()
        .position(|g| g.iter().enumerate().all(|(v, &x)| x == i64::from(v == vertex)))
        .expect("stalk summand present");
    let mutation = match ws.mutate(&regular, at, Direction::Left) {
        Ok(m) => m,
        Err(Error::NotTwoTerm) => {
            failed.push("left mutation stays 2-term".to_string());
            return Ok(TwiceReport {
                vertex,
                sigma_fixes_vertex,
                mutation_two_term: false,
                mutation_is_tilting: false,
                gamma_dim: 0,
                gamma_vertex: None,
                gamma_anti_automorphism: false,
                lambda_count: lambda.len(),
                lambda_complete: lambda.complete,
                gamma_count: 0,
                gamma_complete: false,
                lambda_bisection,
                gamma_bisection: None,
                failed,
                gamma_presentation: None,
            });
        }
        Err(e) => return Err(e),
    };
    let flags = ws.classify(&mutation.object)?;
    if !flags.tilting {
        failed.push("μ⁻_P(Λ) is tilting".to_string());
    }
    let end = endomorphism_algebra(&mutation.object, ws)?;
    let gamma_vertex = mutation.object.key().iter().position(|g| *g == mutation.added.g_vector());
    let pres = gabriel_presentation(&end)?;
    let gamma = Arc::new(build_algebra(&pres)?);
    let anti = find_anti_automorphisms(&gamma)?;
    let gamma_anti_automorphism = gamma_vertex.is_some_and(|e| anti.iter().any(|s| s.perm[e] == e));
    if !gamma_anti_automorphism {
        failed.push("anti-automorphism of Γ fixing e'".to_string());
    }
    let gws = Workspace::with_iso_checks(false);
    let gcensus = enumerate_with(&gamma, opts, &gws)?;
    let gamma_bisection = match gamma_vertex {
        Some(e) if gcensus.complete => Some(bisect(&gcensus, e)?.sizes()),
        _ => None,
    };
    Ok(TwiceReport {
        vertex,
        sigma_fixes_vertex,
        mutation_two_term: true,
        mutation_is_tilting: flags.tilting,
        gamma_dim: gamma.dim(),
        gamma_vertex,
        gamma_anti_automorphism,
        lambda_count: lambda.len(),
        lambda_complete: lambda.complete,
        gamma_count: gcensus.len(),
        gamma_complete: gcensus.complete,
        lambda_bisection,
        gamma_bisection,
        failed,
        gamma_presentation: Some(pres),
    })
}

/// Orbits of `S_σ` on a census, as sorted index pairs (fixed points appear once).
pub fn orbit_pairs(report: &SymmetryReport) -> Vec<Vec<usize>> {
    let mut seen = BTreeMap::new();
    for (i, &j) in report.orbit.iter().enumerate() {
        let key = (i.min(j), i.max(j));
        seen.entry(key).or_insert_with(|| if i == j { vec![i] } else { vec![key.0, key.1] });
    }
    seen.into_values().collect()
}
