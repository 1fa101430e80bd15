//! Built-in presentations.
//!
//! Vertices are named `1..n`. Naming of arrows:
//! * `linear_a`, `nakayama`: `x{i}` goes from `i` to `i+1` (cyclically for `nakayama`).
//! * `preprojective_a`, `double_a`, `rcz_symmetric_a`: `a{i}: i → i+1` and
//!   its reverse `a{i}*: i+1 → i`.
//! * `brauer_triangle`: `a{i}: i → i+1` around the triangle and `a{i}*` reversed.
//! * the three-vertex symmetric algebra `sym3` and its mutation partners use
//!   ASCII spellings of the Greek arrow names (`alpha`, `beta`, `gamma`, …).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, Presentation, Quiver, Relation};
use crate::scalar::{FieldKind, Scalar};

pub type Params = BTreeMap<String, i64>;

pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "linear_a",
        params: "n>=1, r=0 or r>=2",
        summary: "linear A_n quiver 1 -> 2 -> ... -> n; r>0 kills all paths of length r",
    },
    CatalogEntry {
        name: "nakayama",
        params: "n>=1, r>=2",
        summary: "selfinjective Nakayama algebra: cyclic quiver with all paths of length r zero",
    },
    CatalogEntry {
        name: "preprojective_a",
        params: "n>=1",
        summary: "preprojective algebra of type A_n (mesh relations a a* = a* a at each vertex)",
    },
    CatalogEntry {
        name: "double_a",
        params: "n>=1, r=0 or r>=2",
        summary: "double-quiver algebra of A_n with I = paths of length r: ideal generated by p, p* and a b*",
    },
    CatalogEntry {
        name: "rcz_symmetric_a",
        params: "n>=2",
        summary: "radical cube zero symmetric algebra on the double quiver of A_n (a a* = b b*)",
    },
    CatalogEntry {
        name: "brauer_triangle",
        params: "",
        summary: "multiplicity-free Brauer triangle algebra: a a* = a* a, a^2 = 0 = (a*)^2",
    },
    CatalogEntry {
        name: "brauer_triangle_gamma",
        params: "",
        summary: "2 <-> 1 <-> 3 with a a* = 0 = b b*, a* a b* b = b* b a* a",
    },
    CatalogEntry {
        name: "sym3",
        params: "",
        summary: "symmetric algebra on 2 -> 1 -> 3 <-> 2 with beta gamma alpha = 0 = gamma (gamma* gamma)^3, alpha beta = gamma* gamma gamma*",
    },
    CatalogEntry {
        name: "sym3_gamma1",
        params: "",
        summary: "endomorphism algebra of the left mutation of sym3 at vertex 1",
    },
    CatalogEntry {
        name: "sym3_gamma2",
        params: "",
        summary: "endomorphism algebra of the left mutation of sym3 at vertex 2",
    },
];

fn param(name: &str, params: &Params, key: &str, default: Option<i64>) -> Result<i64> {
    params.get(key).copied().or(default).ok_or_else(|| Error::BadParams {
        name: name.to_string(),
        reason: format!("missing parameter {key}"),
    })
}

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::BadParams { name: name.to_string(), reason: reason.into() }
}

fn check_keys(name: &str, params: &Params, allowed: &[&str]) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(bad(name, format!("unknown parameter {k}"))),
        None => Ok(()),
    }
}

/// Builds a catalog presentation over `field`.
pub fn builtin(name: &str, params: &Params, field: FieldKind) -> Result<Presentation> {
    let p = match name {
        "linear_a" => {
            check_keys(name, params, &["n", "r"])?;
            let n = param(name, params, "n", None)?;
            let r = param(name, params, "r", Some(0))?;
            if !(1..=64).contains(&n) || r == 1 || r < 0 {
                return Err(bad(name, "need 1 <= n <= 64 and r = 0 or r >= 2"));
            }
            linear_a(n as usize, r as usize, field)?
        }
        "nakayama" => {
            check_keys(name, params, &["n", "r"])?;
            let n = param(name, params, "n", None)?;
            let r = param(name, params, "r", None)?;
            if !(1..=64).contains(&n) || !(2..=64).contains(&r) {
                return Err(bad(name, "need 1 <= n <= 64 and 2 <= r <= 64"));
            }
            nakayama(n as usize, r as usize, field)?
        }
        "preprojective_a" => {
            check_keys(name, params, &["n"])?;
            let n = param(name, params, "n", None)?;
            if !(1..=16).contains(&n) {
                return Err(bad(name, "need 1 <= n <= 16"));
            }
            preprojective_a(n as usize, field)?
        }
        "double_a" => {
            check_keys(name, params, &["n", "r"])?;
            let n = param(name, params, "n", None)?;
            let r = param(name, params, "r", Some(0))?;
            if !(1..=16).contains(&n) || r == 1 || r < 0 {
                return Err(bad(name, "need 1 <= n <= 16 and r = 0 or r >= 2"));
            }
            double_a(n as usize, r as usize, field)?
        }
        "rcz_symmetric_a" => {
            check_keys(name, params, &["n"])?;
            let n = param(name, params, "n", None)?;
            if !(2..=16).contains(&n) {
                return Err(bad(name, "need 2 <= n <= 16"));
            }
            rcz_symmetric_a(n as usize, field)?
        }
        "brauer_triangle" | "brauer_triangle_gamma" | "sym3" | "sym3_gamma1" | "sym3_gamma2" => {
            check_keys(name, params, &[])?;
            match name {
                "brauer_triangle" => brauer_triangle(field)?,
                "brauer_triangle_gamma" => brauer_triangle_gamma(field)?,
                "sym3" => sym3(field)?,
                "sym3_gamma1" => sym3_gamma1(field)?,
                _ => sym3_gamma2(field)?,
            }
        }
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    Ok(p)
}

fn vertex_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Every path of length `r` in `q` as a monomial relation.
fn paths_of_length(q: &Quiver, r: usize) -> Vec<Relation> {
    let out = q.out_arrows();
    let mut level: Vec<Vec<usize>> = q.arrows().iter().enumerate().map(|(i, _)| vec![i]).collect();
    for _ in 1..r {
        let mut next = Vec::new();
        for w in &level {
            let t = q.arrows()[*w.last().expect("nonempty")].target;
            for &a in &out[t] {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        level = next;
    }
    level.into_iter().map(Relation::monomial).collect()
}

pub fn linear_a(n: usize, r: usize, field: FieldKind) -> Result<Presentation> {
    let arrows = (1..n).map(|i| Arrow { name: format!("x{i}"), source: i - 1, target: i }).collect();
    let q = Quiver::new(vertex_names(n), arrows)?;
    let rels = if r == 0 { Vec::new() } else { paths_of_length(&q, r) };
    Presentation::new(field, q, rels)
}

pub fn nakayama(n: usize, r: usize, field: FieldKind) -> Result<Presentation> {
    let arrows = (0..n).map(|i| Arrow { name: format!("x{}", i + 1), source: i, target: (i + 1) % n }).collect();
    let q = Quiver::new(vertex_names(n), arrows)?;
    let rels = paths_of_length(&q, r);
    Presentation::new(field, q, rels)
}

/// Double quiver of linear A_n: arrows `a{i}` (index `2(i-1)`) and `a{i}*` (index `2(i-1)+1`).
fn double_a_quiver(n: usize) -> Result<Quiver> {
    let mut arrows = Vec::new();
    for i in 1..n {
        arrows.push(Arrow { name: format!("a{i}"), source: i - 1, target: i });
        arrows.push(Arrow { name: format!("a{i}*"), source: i, target: i - 1 });
    }
    Quiver::new(vertex_names(n), arrows)
}

fn up(i: usize) -> usize {
    2 * (i - 1)
}

fn down(i: usize) -> usize {
    2 * (i - 1) + 1
}

pub fn preprojective_a(n: usize, field: FieldKind) -> Result<Presentation> {
    let q = double_a_quiver(n)?;
    let mut rels = Vec::new();
    for v in 1..=n {
        let mut terms = Vec::new();
        if v < n {
            terms.push((Scalar::one(), vec![up(v), down(v)]));
        }
        if v > 1 {
            terms.push((-Scalar::one(), vec![down(v - 1), up(v - 1)]));
        }
        if !terms.is_empty() {
            rels.push(Relation::new(terms));
        }
    }
    Presentation::new(field, q, rels)
}

pub fn double_a(n: usize, r: usize, field: FieldKind) -> Result<Presentation> {
    let q = double_a_quiver(n)?;
    let mut rels = Vec::new();
    // a b* for arrows a, b of A_n sharing a target; in A_n that forces a = b
    for i in 1..n {
        rels.push(Relation::monomial(vec![up(i), down(i)]));
    }
    if r >= 2 && r < n {
        for start in 1..=(n - r) {
            let p: Vec<usize> = (start..start + r).map(up).collect();
            let p_star: Vec<usize> = (start..start + r).rev().map(down).collect();
            rels.push(Relation::monomial(p));
            rels.push(Relation::monomial(p_star));
        }
    }
    Presentation::new(field, q, rels)
}

pub fn rcz_symmetric_a(n: usize, field: FieldKind) -> Result<Presentation> {
    let q = double_a_quiver(n)?;
    let mut rels = Vec::new();
    for v in 1..=n {
        if v > 1 && v < n {
            rels.push(Relation::binomial(vec![up(v), down(v)], vec![down(v - 1), up(v - 1)]));
        }
        if v + 2 <= n {
            rels.push(Relation::monomial(vec![up(v), up(v + 1)]));
            rels.push(Relation::monomial(vec![down(v + 1), down(v)]));
        }
    }
    // radical cube zero; only needed explicitly at the two end vertices
    rels.extend(paths_of_length(&q, 3));
    Presentation::new(field, q, rels)
}

pub fn brauer_triangle(field: FieldKind) -> Result<Presentation> {
    // a{i}: i → i+1, a{i}*: i+1 → i (mod 3)
    let mut arrows = Vec::new();
    for i in 0..3 {
        arrows.push(Arrow { name: format!("a{}", i + 1), source: i, target: (i + 1) % 3 });
    }
    for i in 0..3 {
        arrows.push(Arrow { name: format!("a{}*", i + 1), source: (i + 1) % 3, target: i });
    }
    let q = Quiver::new(vertex_names(3), arrows)?;
    let a = |i: usize| i % 3;
    let s = |i: usize| 3 + i % 3;
    let mut rels = Vec::new();
    for v in 0..3 {
        let prev = (v + 2) % 3;
        // at vertex v: a_v a_v* = a_{v-1}* a_{v-1}
        rels.push(Relation::binomial(vec![a(v), s(v)], vec![s(prev), a(prev)]));
        rels.push(Relation::monomial(vec![a(v), a(v + 1)]));
        rels.push(Relation::monomial(vec![s(v + 1), s(v)]));
    }
    Presentation::new(field, q, rels)
}

pub fn brauer_triangle_gamma(field: FieldKind) -> Result<Presentation> {
    Presentation::from_names(
        field,
        &["1", "2", "3"],
        &[("a", "2", "1"), ("a*", "1", "2"), ("b*", "1", "3"), ("b", "3", "1")],
        &[&[(1, "a a*")], &[(1, "b b*")], &[(1, "a* a b* b"), (-1, "b* b a* a")]],
    )
}

pub fn sym3(field: FieldKind) -> Result<Presentation> {
    Presentation::from_names(
        field,
        &["1", "2", "3"],
        &[("alpha", "2", "1"), ("beta", "1", "3"), ("gamma", "3", "2"), ("gamma*", "2", "3")],
        &[
            &[(1, "beta gamma alpha")],
            &[(1, "gamma gamma* gamma gamma* gamma gamma* gamma")],
            &[(1, "alpha beta"), (-1, "gamma* gamma gamma*")],
        ],
    )
}

pub fn sym3_gamma1(field: FieldKind) -> Result<Presentation> {
    Presentation::from_names(
        field,
        &["1", "2", "3"],
        &[("alpha", "2", "1"), ("alpha*", "1", "2"), ("beta", "1", "3"), ("beta*", "3", "1")],
        &[
            &[(1, "alpha beta beta* beta")],
            &[(1, "beta* beta beta* alpha*")],
            &[(1, "alpha alpha*")],
            &[(1, "alpha* alpha"), (-1, "beta beta* beta beta*")],
        ],
    )
}

pub fn sym3_gamma2(field: FieldKind) -> Result<Presentation> {
    Presentation::from_names(
        field,
        &["1", "2", "3"],
        &[
            ("beta", "1", "2"),
            ("beta*", "2", "1"),
            ("gamma", "2", "3"),
            ("gamma*", "3", "2"),
            ("alpha", "2", "2"),
        ],
        &[
            &[(1, "beta gamma")],
            &[(1, "beta beta*")],
            &[(1, "gamma* beta*")],
            &[(1, "gamma* alpha")],
            &[(1, "alpha gamma")],
            &[(1, "alpha alpha"), (-1, "beta* beta")],
            &[(1, "alpha alpha alpha"), (-1, "gamma gamma*")],
        ],
    )
}

pub fn parse_params(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("parameter {part:?} is not of the form key=value")))?;
        let v: i64 = v.trim().parse().map_err(|_| Error::Parse(format!("parameter {k} is not an integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathalg::build_algebra;

    fn dim(name: &str, params: &str) -> usize {
        let p = builtin(name, &parse_params(params).unwrap(), FieldKind::Rational).unwrap();
        build_algebra(&p).unwrap().dim()
    }

    #[test]
    fn dimensions_by_path_count() {
        assert_eq!(dim("linear_a", "n=2"), 3);
        assert_eq!(dim("linear_a", "n=3,r=0"), 6);
        assert_eq!(dim("linear_a", "n=4,r=2"), 7);
        assert_eq!(dim("nakayama", "n=2,r=3"), 6);
        assert_eq!(dim("nakayama", "n=3,r=4"), 12);
        assert_eq!(dim("nakayama", "n=2,r=2"), 4);
        assert_eq!(dim("preprojective_a", "n=2"), 4);
        assert_eq!(dim("brauer_triangle", ""), 12);
    }

    #[test]
    fn preprojective_dimension_matches_formula() {
        // dim Π(A_n) = n(n+1)(n+2)/6
        for n in 1..=5 {
            assert_eq!(dim("preprojective_a", &format!("n={n}")), n * (n + 1) * (n + 2) / 6);
        }
    }

    #[test]
    fn symmetric_algebras_have_symmetric_cartan_matrices() {
        for name in ["brauer_triangle", "sym3", "sym3_gamma1", "sym3_gamma2", "brauer_triangle_gamma"] {
            let p = builtin(name, &Params::new(), FieldKind::Rational).unwrap();
            let a = build_algebra(&p).unwrap();
            let c = a.cartan();
            for (i, row) in c.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert_eq!(*x, c[j][i], "{name}");
                }
            }
        }
    }

    #[test]
    fn unknown_and_bad_params() {
        assert!(matches!(builtin("nope", &Params::new(), FieldKind::Rational), Err(Error::UnknownBuiltin(_))));
        let bad = parse_params("n=3,r=1").unwrap();
        assert!(matches!(builtin("linear_a", &bad, FieldKind::Rational), Err(Error::BadParams { .. })));
        let extra = parse_params("n=3,q=1").unwrap();
        assert!(matches!(builtin("linear_a", &extra, FieldKind::Rational), Err(Error::BadParams { .. })));
        assert!(parse_params("n").is_err());
    }
}
