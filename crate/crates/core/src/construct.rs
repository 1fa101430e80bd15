//! Algebras built from other algebras: trivial extensions and enveloping
//! algebras, together with their induced anti-automorphisms.

use crate::algebra::{Algebra, Elem};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;
use crate::symmetry::AntiAutomorphism;

/// Default bound on `dim(Λ^op ⊗ Λ)`.
pub const DEFAULT_ENVELOPING_CAP: usize = 1024;

/// `T(A) = A ⊕ DA` with `(a, f)·(b, g) = (ab, ag + fb)`.
///
/// Basis element `i < dim A` is `b_i`; `dim A + j` is the dual functional
/// `f_j`. When `sigma` is given, the result carries `(a, f) ↦ (σ(a), f∘σ^{-1})`.
pub fn trivial_extension(
    a: &Algebra,
    sigma: Option<&AntiAutomorphism>,
) -> Result<(Algebra, Option<AntiAutomorphism>)> {
    if let Some(s) = sigma {
        s.validate(a)?;
    }
    let d = a.dim();
    let dd = 2 * d;
    let mut labels: Vec<String> = a.labels().to_vec();
    labels.extend(a.labels().iter().map(|l| format!("D{l}")));
    let mut tags: Vec<(usize, usize)> = a.tags().to_vec();
    tags.extend(a.tags().iter().map(|&(l, r)| (r, l)));
    let mut table = vec![Vec::new(); dd * dd];
    for i in 0..d {
        for k in 0..d {
            table[i * dd + k] = a.basis_product(i, k).clone();
            // b_i f_j = Σ_k [b_j](b_k b_i) f_k and f_j b_i = Σ_k [b_j](b_i b_k) f_k
            for (j, c) in a.basis_product(k, i) {
                push_sorted(&mut table[i * dd + d + j], d + k, c);
            }
            for (j, c) in a.basis_product(i, k) {
                push_sorted(&mut table[(d + j) * dd + i], d + k, c);
            }
        }
    }
    let t = Algebra::from_parts(a.field(), a.vertices().to_vec(), labels, tags, a.idempotents().to_vec(), table)?;
    let lifted = match sigma {
        None => None,
        Some(s) => {
            // columns of `m` are the images σ(b_k)
            let mut m = vec![vec![a.field().zero(); d]; d];
            for (k, img) in s.images.iter().enumerate() {
                for (j, c) in img {
                    m[*j][k] = c.clone();
                }
            }
            let inv = linalg::inverse(&m)?;
            let mut images: Vec<Elem> = s.images.clone();
            for row in inv.iter().take(d) {
                images.push(row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (d + k, c.clone())).collect());
            }
            let lifted = AntiAutomorphism { perm: s.perm.clone(), images, arrows: None };
            lifted.validate(&t)?;
            Some(lifted)
        }
    };
    Ok((t, lifted))
}

fn push_sorted(e: &mut Elem, k: usize, c: &Scalar) {
    match e.binary_search_by_key(&k, |(b, _)| *b) {
        Ok(p) => {
            e[p].1 = &e[p].1 + c;
            if e[p].1.is_zero() {
                e.remove(p);
            }
        }
        Err(p) => e.insert(p, (k, c.clone())),
    }
}

/// `Λ^e = Λ^op ⊗ Λ` with the swap anti-automorphism `a ⊗ b ↦ b ⊗ a`.
#[derive(Clone, Debug)]
pub struct Enveloping {
    pub algebra: Algebra,
    pub swap: AntiAutomorphism,
    /// Vertex of `e ⊗ e` for the chosen `e = e_v`.
    pub fixed_vertex: usize,
    /// Basis index of `e ⊗ e`.
    pub fixed_idempotent: usize,
}

/// Basis element `i·d + j` is `b_i ⊗ b_j` and vertex `u·n + w` is
/// `e_u ⊗ e_w`. The product is `(a ⊗ b)(c ⊗ d) = ca ⊗ bd`.
pub fn enveloping_algebra(a: &Algebra, vertex: usize, cap: usize) -> Result<Enveloping> {
    let d = a.dim();
    let n = a.vertex_count();
    if vertex >= n {
        return Err(Error::BadVertex(vertex));
    }
    if d * d > cap {
        return Err(Error::DimensionCapExceeded { dim: d * d, cap });
    }
    let dd = d * d;
    let vname = |u: usize, w: usize| format!("{}⊗{}", a.vertices()[u], a.vertices()[w]);
    let vertices: Vec<String> = (0..n * n).map(|x| vname(x / n, x % n)).collect();
    let mut labels = Vec::with_capacity(dd);
    let mut tags = Vec::with_capacity(dd);
    for i in 0..d {
        for j in 0..d {
            let (li, ri) = a.tags()[i];
            let (lj, rj) = a.tags()[j];
            labels.push(format!("{}⊗{}", a.labels()[i], a.labels()[j]));
            tags.push((ri * n + lj, li * n + rj));
        }
    }
    let idempotents: Vec<usize> =
        (0..n * n).map(|x| a.idempotent(x / n) * d + a.idempotent(x % n)).collect();
    let mut table = vec![Vec::new(); dd * dd];
    for x in 0..dd {
        let (i, j) = (x / d, x % d);
        for y in 0..dd {
            let (k, l) = (y / d, y % d);
            let left = a.basis_product(k, i);
            let right = a.basis_product(j, l);
            if left.is_empty() || right.is_empty() {
                continue;
            }
            let mut out: Elem = Vec::new();
            for (p, c) in left {
                for (q, c2) in right {
                    out.push((p * d + q, c * c2));
                }
            }
            out.sort_by_key(|(b, _)| *b);
            table[x * dd + y] = out;
        }
    }
    let algebra = Algebra::from_parts(a.field(), vertices, labels, tags, idempotents, table)?;
    let one = a.field().one();
    let images: Vec<Elem> = (0..dd).map(|x| vec![((x % d) * d + x / d, one.clone())]).collect();
    let swap = AntiAutomorphism::from_images(&algebra, images)?;
    let fixed_vertex = vertex * n + vertex;
    debug_assert_eq!(swap.perm[fixed_vertex], fixed_vertex);
    Ok(Enveloping { fixed_idempotent: algebra.idempotent(fixed_vertex), algebra, swap, fixed_vertex })
}
