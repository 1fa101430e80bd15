//! Quivers, relations and presentations `KQ/I`.
//!
//! Paths compose left to right: the path `[a, b]` traverses `a` and then `b`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {:?}", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("arrow {:?} has an endpoint out of range", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds a quiver from named endpoints.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |n: &str| {
            vs.iter()
                .position(|v| v == n)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {n:?}")))
        };
        let arrows = arrows
            .iter()
            .map(|&(name, s, t)| Ok(Arrow { name: name.to_string(), source: find(s)?, target: find(t)? }))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(vs, arrows)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows leaving each vertex.
    pub fn out_arrows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            out[a.source].push(i);
        }
        out
    }

    /// Number of arrows from `s` to `t`, as an n×n table.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut c = vec![vec![0; n]; n];
        for a in &self.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }

    /// Endpoints of a nonempty arrow sequence, if composable.
    pub fn path_endpoints(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut end = first.target;
        for &a in &path[1..] {
            let arrow = self.arrows.get(a)?;
            if arrow.source != end {
                return None;
            }
            end = arrow.target;
        }
        Some((first.source, end))
    }

    pub fn path_name(&self, path: &[usize]) -> String {
        path.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("·")
    }
}

/// A linear combination of paths of length at least two with common endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Vec<usize>)>) -> Self {
        Relation { terms }
    }

    pub fn monomial(path: Vec<usize>) -> Self {
        Relation { terms: vec![(Scalar::one(), path)] }
    }

    /// `p − q`
    pub fn binomial(p: Vec<usize>, q: Vec<usize>) -> Self {
        Relation { terms: vec![(Scalar::one(), p), (-Scalar::one(), q)] }
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldKind,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    /// Validates relations and embeds their coefficients into `field`.
    pub fn new(field: FieldKind, quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for (index, r) in relations.into_iter().enumerate() {
            let mut ends = None;
            let mut terms = Vec::new();
            for (c, path) in r.terms {
                if path.len() < 2 {
                    return Err(Error::NotAdmissible {
                        index,
                        path: path.iter().filter_map(|&a| quiver.arrows.get(a)).map(|a| a.name.clone()).collect(),
                    });
                }
                let e = quiver.path_endpoints(&path).ok_or_else(|| Error::InconsistentRelation {
                    index,
                    reason: format!("path {} is not composable", describe_path(&quiver, &path)),
                })?;
                if *ends.get_or_insert(e) != e {
                    return Err(Error::InconsistentRelation {
                        index,
                        reason: "paths have different endpoints".into(),
                    });
                }
                let c = field.embed(&c)?;
                if !c.is_zero() {
                    terms.push((c, path));
                }
            }
            rels.push(Relation { terms });
        }
        Ok(Presentation { field, quiver, relations: rels })
    }

    /// Convenience constructor from named arrows; relation terms are
    /// `(coefficient, "a b c")` with arrow names separated by spaces.
    pub fn from_names(
        field: FieldKind,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[(i64, &str)]],
    ) -> Result<Self> {
        let quiver = Quiver::from_names(vertices, arrows)?;
        let mut rels = Vec::new();
        for terms in relations {
            let mut ts = Vec::new();
            for &(c, word) in terms.iter() {
                let path = word
                    .split_whitespace()
                    .map(|n| {
                        quiver.arrow_index(n).ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ts.push((Scalar::from_int(c), path));
            }
            rels.push(Relation::new(ts));
        }
        Presentation::new(field, quiver, rels)
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
}

fn describe_path(q: &Quiver, path: &[usize]) -> String {
    path.iter()
        .map(|&a| q.arrows.get(a).map_or("?", |a| a.name.as_str()))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn op_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

/// `(Q^op, I^op)`: arrows reversed and renamed `a^op`, relation paths reversed.
pub fn opposite_presentation(p: &Presentation) -> Presentation {
    let arrows = p
        .quiver
        .arrows
        .iter()
        .map(|a| Arrow { name: op_name(&a.name), source: a.target, target: a.source })
        .collect();
    let quiver = Quiver { vertices: p.quiver.vertices.clone(), arrows };
    let relations = p
        .relations
        .iter()
        .map(|r| Relation {
            terms: r.terms.iter().map(|(c, path)| (c.clone(), path.iter().rev().copied().collect())).collect(),
        })
        .collect();
    Presentation { field: p.field, quiver, relations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_path() -> Presentation {
        Presentation::from_names(
            FieldKind::Rational,
            &["1", "2", "3"],
            &[("x", "1", "2"), ("y", "2", "3")],
            &[&[(1, "x y")]],
        )
        .unwrap()
    }

    #[test]
    fn opposite_reverses_relation_paths() {
        let p = a3_path();
        let op = opposite_presentation(&p);
        let q = &op.quiver;
        assert_eq!(q.arrows()[0].name, "x^op");
        assert_eq!((q.arrows()[0].source, q.arrows()[0].target), (1, 0));
        let path = &op.relations[0].terms[0].1;
        assert_eq!(q.path_name(path), "y^op·x^op");
        assert_eq!(q.path_endpoints(path), Some((2, 0)));
        assert_eq!(opposite_presentation(&op), p);
    }

    #[test]
    fn rejects_short_and_broken_paths() {
        let short = Presentation::from_names(FieldKind::Rational, &["1", "2"], &[("x", "1", "2")], &[&[(1, "x")]]);
        assert!(matches!(short, Err(Error::NotAdmissible { .. })));
        let broken = Presentation::from_names(
            FieldKind::Rational,
            &["1", "2", "3"],
            &[("x", "1", "2"), ("y", "2", "3")],
            &[&[(1, "y x")]],
        );
        assert!(matches!(broken, Err(Error::InconsistentRelation { .. })));
        let mismatch = Presentation::from_names(
            FieldKind::Rational,
            &["1", "2"],
            &[("x", "1", "2"), ("y", "2", "1")],
            &[&[(1, "x y"), (1, "y x")]],
        );
        assert!(matches!(mismatch, Err(Error::InconsistentRelation { .. })));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Quiver::from_names(&["1", "1"], &[]).is_err());
        assert!(Quiver::from_names(&["1", "2"], &[("x", "1", "2"), ("x", "2", "1")]).is_err());
        assert!(Quiver::from_names(&["1"], &[("x", "1", "2")]).is_err());
    }
}
