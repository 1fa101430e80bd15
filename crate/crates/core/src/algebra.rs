//! Finite-dimensional split basic algebras given by structure constants.
//!
//! The basis always contains a complete set of primitive orthogonal
//! idempotents `e_1, …, e_n`, and every other basis element lies in the
//! Jacobson radical. A basis element `b` carries tags `(l, r)` with
//! `b = e_l b e_r`, so a product `b b'` can only be nonzero when `r = l'`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Vector};
use crate::quiver::Presentation;
use crate::scalar::{FieldKind, Scalar};

/// Sparse algebra element: `(basis index, coefficient)` sorted by index, no zeros.
pub type Elem = Vec<(usize, Scalar)>;

/// Dimension up to which associativity is checked on every basis triple.
pub const EXHAUSTIVE_ASSOC_DIM: usize = 48;
const SAMPLED_TRIPLES: usize = 20_000;

#[derive(Clone, Debug)]
pub struct Algebra {
    field: FieldKind,
    vertices: Vec<String>,
    labels: Vec<String>,
    tags: Vec<(usize, usize)>,
    idempotents: Vec<usize>,
    table: Vec<Elem>,
    blocks: Vec<Vec<usize>>,
    block_pos: Vec<usize>,
    loewy_length: usize,
    paths: Option<Vec<Vec<usize>>>,
    presentation: Option<Presentation>,
}

impl Algebra {
    /// Builds and validates an algebra from structure constants.
    ///
    /// `table[i * d + j]` is the expansion of `b_i b_j`.
    pub fn from_parts(
        field: FieldKind,
        vertices: Vec<String>,
        labels: Vec<String>,
        tags: Vec<(usize, usize)>,
        idempotents: Vec<usize>,
        table: Vec<Elem>,
    ) -> Result<Self> {
        let d = labels.len();
        let n = vertices.len();
        if tags.len() != d || table.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, got: table.len() });
        }
        if idempotents.len() != n {
            return Err(Error::InvalidAlgebra(format!("{} idempotents for {n} vertices", idempotents.len())));
        }
        let mut blocks = vec![Vec::new(); n * n];
        let mut block_pos = vec![0; d];
        for (b, &(l, r)) in tags.iter().enumerate() {
            if l >= n || r >= n {
                return Err(Error::InvalidAlgebra(format!("basis element {b} has a tag out of range")));
            }
            block_pos[b] = blocks[l * n + r].len();
            blocks[l * n + r].push(b);
        }
        let table = table
            .into_iter()
            .map(|e| e.into_iter().map(|(k, c)| field.embed(&c).map(|c| (k, c))).collect::<Result<Elem>>())
            .collect::<Result<Vec<_>>>()?;
        let mut alg = Algebra {
            field,
            vertices,
            labels,
            tags,
            idempotents,
            table,
            blocks,
            block_pos,
            loewy_length: 0,
            paths: None,
            presentation: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub(crate) fn with_provenance(mut self, paths: Vec<Vec<usize>>, p: Presentation) -> Self {
        self.paths = Some(paths);
        self.presentation = Some(p);
        self
    }

    fn validate(&mut self) -> Result<()> {
        let d = self.dim();
        let n = self.vertex_count();
        for (i, &e) in self.idempotents.iter().enumerate() {
            if self.tags[e] != (i, i) {
                return Err(Error::InvalidAlgebra(format!("idempotent {i} is not tagged ({i},{i})")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let p = &self.table[i * d + j];
                let (li, ri) = self.tags[i];
                let (lj, rj) = self.tags[j];
                if p.windows(2).any(|w| w[0].0 >= w[1].0) || p.iter().any(|(k, c)| *k >= d || c.is_zero()) {
                    return Err(Error::InvalidAlgebra(format!("malformed product entry ({i},{j})")));
                }
                if ri != lj && !p.is_empty() {
                    return Err(Error::InvalidAlgebra(format!("product of {i} and {j} ignores the idempotent tags")));
                }
                if p.iter().any(|(k, _)| self.tags[*k] != (li, rj)) {
                    return Err(Error::InvalidAlgebra(format!("product of {i} and {j} leaves its block")));
                }
            }
        }
        // idempotents act as identities on their blocks
        for (v, &e) in self.idempotents.iter().enumerate() {
            for b in 0..d {
                let (l, r) = self.tags[b];
                let unit = vec![(b, Scalar::one())];
                if l == v && self.table[e * d + b] != unit {
                    return Err(Error::InvalidAlgebra(format!("e_{v} does not fix basis element {b} on the left")));
                }
                if r == v && self.table[b * d + e] != unit {
                    return Err(Error::InvalidAlgebra(format!("e_{v} does not fix basis element {b} on the right")));
                }
            }
        }
        self.check_associative()?;
        // the non-idempotent basis elements must span a nilpotent ideal
        let is_idem = self.idempotent_mask();
        for i in 0..d {
            for j in 0..d {
                if (is_idem[i] && is_idem[j]) || self.table[i * d + j].is_empty() {
                    continue;
                }
                if self.table[i * d + j].iter().any(|(k, _)| is_idem[*k]) {
                    return Err(Error::NotSplitBasic(format!(
                        "the product of basis elements {i} and {j} has an idempotent component"
                    )));
                }
            }
        }
        let rad: Vec<usize> = (0..d).filter(|&b| !is_idem[b]).collect();
        let mut power: Vec<Vector> = rad.iter().map(|&b| self.unit_dense(b)).collect();
        let mut loewy = 1;
        while !power.is_empty() {
            if loewy > d + 1 {
                return Err(Error::NotSplitBasic("radical is not nilpotent".into()));
            }
            let mut next = Echelon::new(d);
            for x in &power {
                let xs = to_sparse(x);
                for &b in &rad {
                    let p = self.mul(&xs, &[(b, Scalar::one())]);
                    next.insert(self.dense(&p));
                }
            }
            power = next.rows().to_vec();
            loewy += 1;
        }
        self.loewy_length = if n == 0 { 0 } else { loewy };
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let ij = &self.table[i * d + j];
            let jk = &self.table[j * d + k];
            let left = self.mul(ij, &[(k, Scalar::one())]);
            let right = self.mul(&[(i, Scalar::one())], jk);
            if left != right {
                return Err(Error::InvalidAlgebra(format!("associativity fails on basis triple ({i},{j},{k})")));
            }
            Ok(())
        };
        if d <= EXHAUSTIVE_ASSOC_DIM {
            for i in 0..d {
                for j in 0..d {
                    if self.tags[i].1 != self.tags[j].0 {
                        continue;
                    }
                    for k in 0..d {
                        if self.tags[j].1 == self.tags[k].0 {
                            check(i, j, k)?;
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5117);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }

    fn idempotent_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.dim()];
        for &e in &self.idempotents {
            m[e] = true;
        }
        m
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tags(&self) -> &[(usize, usize)] {
        &self.tags
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn is_idempotent_basis(&self, b: usize) -> bool {
        self.idempotents[self.tags[b].0] == b
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    /// Basis indices of `e_l Λ e_r`.
    pub fn block(&self, l: usize, r: usize) -> &[usize] {
        &self.blocks[l * self.vertex_count() + r]
    }

    /// Position of a basis element inside its block.
    pub fn block_pos(&self, b: usize) -> usize {
        self.block_pos[b]
    }

    /// Matrix of `dim e_l Λ e_r`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        (0..n).map(|l| (0..n).map(|r| self.block(l, r).len()).collect()).collect()
    }

    /// Basis paths, for algebras built from a presentation.
    pub fn basis_paths(&self) -> Option<&[Vec<usize>]> {
        self.paths.as_deref()
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Elem {
        &self.table[i * self.dim() + j]
    }

    pub fn unit(&self, b: usize) -> Elem {
        vec![(b, Scalar::one())]
    }

    pub fn unit_dense(&self, b: usize) -> Vector {
        let mut v = linalg::zeros(self.dim());
        v[b] = Scalar::one();
        v
    }

    pub fn one(&self) -> Elem {
        let mut e: Elem = self.idempotents.iter().map(|&b| (b, Scalar::one())).collect();
        e.sort_by_key(|t| t.0);
        e
    }

    pub fn dense(&self, x: &[(usize, Scalar)]) -> Vector {
        let mut v = linalg::zeros(self.dim());
        for (k, c) in x {
            v[*k] = c.clone();
        }
        v
    }

    /// Sparse product.
    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Elem {
        let d = self.dim();
        let mut acc: Vec<Option<Scalar>> = Vec::new();
        let mut touched = Vec::new();
        for (i, a) in x {
            let ri = self.tags[*i].1;
            for (j, b) in y {
                if self.tags[*j].0 != ri {
                    continue;
                }
                let entry = &self.table[i * d + j];
                if entry.is_empty() {
                    continue;
                }
                if acc.is_empty() {
                    acc = vec![None; d];
                }
                let ab = a * b;
                for (k, c) in entry {
                    let t = &ab * c;
                    match &mut acc[*k] {
                        Some(s) => *s += &t,
                        slot @ None => {
                            touched.push(*k);
                            *slot = Some(t);
                        }
                    }
                }
            }
        }
        touched.sort_unstable();
        touched
            .into_iter()
            .filter_map(|k| acc[k].take().filter(|c| !c.is_zero()).map(|c| (k, c)))
            .collect()
    }

    /// Dense product with a length check.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vector> {
        let d = self.dim();
        for v in [a, b] {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: v.len() });
            }
        }
        Ok(self.dense(&self.mul(&to_sparse(a), &to_sparse(b))))
    }

    /// Coefficient of `e_v` in `x`; for `x ∈ e_v Λ e_v` this is its image in `Λ/J`.
    pub fn residue(&self, x: &[(usize, Scalar)], v: usize) -> Scalar {
        let e = self.idempotents[v];
        x.iter().find(|(k, _)| *k == e).map_or_else(Scalar::zero, |(_, c)| c.clone())
    }

    /// Basis of the Jacobson radical (the non-idempotent basis elements).
    pub fn radical_basis(&self) -> Vec<Vector> {
        (0..self.dim()).filter(|&b| !self.is_idempotent_basis(b)).map(|b| self.unit_dense(b)).collect()
    }

    /// Recomputes the radical from the structure constants alone.
    pub fn computed_radical(&self) -> Result<Vec<Vector>> {
        let d = self.dim();
        let basis: Vec<Vector> = (0..d).map(|b| self.unit_dense(b)).collect();
        let products = |x: &[(usize, Scalar)], y: &[(usize, Scalar)]| self.dense(&self.mul(x, y));
        radical_from_products(d, &basis, &products)
    }

    /// `Λ^op` on the same basis with swapped tags.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let mut table = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                table[i * d + j] = self.table[j * d + i].clone();
            }
        }
        let tags: Vec<(usize, usize)> = self.tags.iter().map(|&(l, r)| (r, l)).collect();
        let n = self.vertex_count();
        let mut blocks = vec![Vec::new(); n * n];
        let mut block_pos = vec![0; d];
        for (b, &(l, r)) in tags.iter().enumerate() {
            block_pos[b] = blocks[l * n + r].len();
            blocks[l * n + r].push(b);
        }
        Algebra {
            field: self.field,
            vertices: self.vertices.clone(),
            labels: self.labels.iter().map(|l| format!("{l}^op")).collect(),
            tags,
            idempotents: self.idempotents.clone(),
            table,
            blocks,
            block_pos,
            loewy_length: self.loewy_length,
            paths: self.paths.as_ref().map(|ps| ps.iter().map(|p| p.iter().rev().copied().collect()).collect()),
            presentation: self.presentation.as_ref().map(crate::quiver::opposite_presentation),
        }
    }
}

pub fn to_sparse(v: &[Scalar]) -> Elem {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

pub fn elem_add(x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Elem {
    elem_axpy(x, &Scalar::one(), y)
}

/// `x + c·y`
pub fn elem_axpy(x: &[(usize, Scalar)], c: &Scalar, y: &[(usize, Scalar)]) -> Elem {
    if c.is_zero() {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, c * &y[j].1));
            j += 1;
        } else {
            let s = &x[i].1 + &(c * &y[j].1);
            if !s.is_zero() {
                out.push((x[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn elem_scale(x: &[(usize, Scalar)], c: &Scalar) -> Elem {
    if c.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(k, a)| (*k, a * c)).collect()
}

pub fn elem_neg(x: &[(usize, Scalar)]) -> Elem {
    x.iter().map(|(k, a)| (*k, -a)).collect()
}

/// Bilinear product on sparse coordinates.
pub type ProductFn<'a> = dyn Fn(&[(usize, Scalar)], &[(usize, Scalar)]) -> Vector + 'a;

/// Radical of an algebra given by a spanning set and a product, via the
/// trace form `(x, y) ↦ tr(L_{xy})`.
///
/// In characteristic zero the kernel of the trace form is exactly the
/// radical. Over F_p it can be larger; the candidate is then rejected unless
/// it is a nilpotent ideal.
pub fn radical_from_products(
    d: usize,
    basis: &[Vector],
    product: &ProductFn<'_>,
) -> Result<Vec<Vector>> {
    let sparse: Vec<Elem> = basis.iter().map(|b| to_sparse(b)).collect();
    let coords_basis = Echelon::from_vectors(d, basis);
    if coords_basis.rank() != basis.len() {
        return Err(Error::RadicalComputationFailed("spanning set is not a basis".into()));
    }
    let m = basis.len();
    // left multiplication matrices in the given basis
    let coords = |v: &Vector| -> Result<Vector> {
        linalg::express(basis, v).ok_or_else(|| Error::RadicalComputationFailed("product left the span".into()))
    };
    let mut lmul = Vec::with_capacity(m);
    for x in &sparse {
        let cols = sparse.iter().map(|y| coords(&product(x, y))).collect::<Result<Vec<_>>>()?;
        lmul.push(cols);
    }
    let traces: Vec<Scalar> =
        (0..m).map(|k| (0..m).fold(Scalar::zero(), |acc, i| &acc + &lmul[k][i][i])).collect();
    // tr(L_z) = Σ_k z_k tr(L_{b_k})
    let trace_of = |z: &Vector| -> Scalar {
        z.iter().zip(&traces).fold(Scalar::zero(), |acc, (zk, tk)| &acc + &(zk * tk))
    };
    let gram: Vec<Vec<Scalar>> = lmul.iter().map(|row| row.iter().map(&trace_of).collect()).collect();
    let kernel = linalg::nullspace(&gram, m);
    let rad: Vec<Vector> = kernel
        .iter()
        .map(|c| {
            let mut v = linalg::zeros(d);
            for (ci, b) in c.iter().zip(basis) {
                linalg::axpy(&mut v, &-ci, b);
            }
            v
        })
        .collect();
    // verify nilpotency: the radical must vanish after at most m powers
    let mut power = rad.clone();
    for _ in 0..=m {
        if power.is_empty() {
            return Ok(rad);
        }
        let mut next = Echelon::new(d);
        for x in &power {
            let xs = to_sparse(x);
            for r in &rad {
                next.insert(product(&xs, &to_sparse(r)));
            }
        }
        power = next.rows().to_vec();
    }
    Err(Error::RadicalComputationFailed(
        "trace-form kernel is not nilpotent; rerun over the rationals or a larger prime".into(),
    ))
}
