//! JSON formats for presentations and censuses, DOT output for Hasse quivers.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::Algebra;
use crate::complex::TwoTermComplex;
use crate::enumerate::{summarize, Arrow, Census, CensusReport, Key, StopReason};
use crate::error::{Error, Result};
use crate::quiver::{Arrow as QArrow, Presentation, Quiver, Relation};
use crate::scalar::FieldKind;
use crate::silting::GVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub field: FieldKind,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    /// Arrow names, composed left to right.
    pub path: Vec<String>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

pub fn parse_spec(text: &str) -> Result<Presentation> {
    let spec: SpecFile = serde_json::from_str(text).map_err(syntax)?;
    spec_to_presentation(&spec)
}

pub fn spec_to_presentation(spec: &SpecFile) -> Result<Presentation> {
    let verts: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> =
        spec.arrows.iter().map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str())).collect();
    let quiver = Quiver::from_names(&verts, &arrows)?;
    let mut relations = Vec::with_capacity(spec.relations.len());
    for r in &spec.relations {
        let mut terms = Vec::with_capacity(r.terms.len());
        for t in &r.terms {
            let c = spec.field.parse(&t.coeff)?;
            let path = t
                .path
                .iter()
                .map(|n| quiver.arrow_index(n).ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n:?}"))))
                .collect::<Result<Vec<_>>>()?;
            terms.push((c, path));
        }
        relations.push(Relation::new(terms));
    }
    Presentation::new(spec.field, quiver, relations)
}

pub fn presentation_to_spec(p: &Presentation) -> SpecFile {
    let q = &p.quiver;
    let name = |a: usize| q.arrows()[a].name.clone();
    SpecFile {
        field: p.field,
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a: &QArrow| ArrowSpec {
                name: a.name.clone(),
                source: q.vertices()[a.source].clone(),
                target: q.vertices()[a.target].clone(),
            })
            .collect(),
        relations: p
            .relations
            .iter()
            .map(|r| RelationSpec {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, w)| TermSpec { coeff: c.to_string(), path: w.iter().map(|&a| name(a)).collect() })
                    .collect(),
            })
            .collect(),
    }
}

pub fn serialize_spec(p: &Presentation) -> String {
    let mut s = serde_json::to_string_pretty(&presentation_to_spec(p)).expect("spec serializes");
    s.push('\n');
    s
}

/// SHA-256 over the structure constants, labels and vertex names.
pub fn algebra_hash(a: &Algebra) -> String {
    let mut h = Sha256::new();
    let mut line = String::new();
    let _ = writeln!(line, "{}", a.field().describe());
    let _ = writeln!(line, "{}", a.vertices().join("\u{1f}"));
    let _ = writeln!(line, "{}", a.labels().join("\u{1f}"));
    h.update(line.as_bytes());
    for (b, &(l, r)) in a.tags().iter().enumerate() {
        h.update(format!("t{b}:{l},{r};").as_bytes());
    }
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            let p = a.basis_product(i, j);
            if !p.is_empty() {
                h.update(format!("m{i},{j}:").as_bytes());
                for (k, c) in p {
                    h.update(format!("{k}={c};").as_bytes());
                }
            }
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusFile {
    pub metadata: CensusMetadata,
    pub elements: Vec<ElementRecord>,
    pub arrows: Vec<ArrowRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetrySection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusMetadata {
    pub algebra_hash: String,
    pub field: FieldKind,
    pub vertices: Vec<String>,
    pub dim: usize,
    pub cap: usize,
    pub complete: bool,
    pub stop_reason: StopReason,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRecord {
    pub key: Key,
    pub summands: Vec<SummandRecord>,
}

/// One indecomposable summand `⊕P_minus → ⊕P_zero`.
///
/// `d[i][j]` is the entry from `minus[j]` to `zero[i]` as `(basis label, coefficient)` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandRecord {
    pub g: GVector,
    pub minus: Vec<String>,
    pub zero: Vec<String>,
    pub d: Vec<Vec<Vec<(String, String)>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub from: Key,
    pub to: Key,
    pub mutated: GVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetrySection {
    pub anti_automorphisms: Vec<String>,
    /// Orbits of `S_σ` for the first anti-automorphism, as element indices.
    pub orbits: Vec<Vec<usize>>,
    pub fixed_points: Vec<usize>,
    pub bisections: Vec<BisectionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisectionRecord {
    pub vertex: String,
    pub minus: usize,
    pub plus: usize,
}

fn summand_record(a: &Algebra, t: &TwoTermComplex) -> SummandRecord {
    let name = |v: &usize| a.vertices()[*v].clone();
    SummandRecord {
        g: t.g_vector(),
        minus: t.minus.iter().map(name).collect(),
        zero: t.zero.iter().map(name).collect(),
        d: t.d
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.iter().map(|(b, c)| (a.labels()[*b].clone(), c.to_string())).collect())
                    .collect()
            })
            .collect(),
    }
}

impl CensusFile {
    pub fn from_census(c: &Census, symmetry: Option<SymmetrySection>) -> Self {
        let a = &c.algebra;
        let keys: Vec<Key> = c.keys().map(<[GVector]>::to_vec).collect();
        CensusFile {
            metadata: CensusMetadata {
                algebra_hash: algebra_hash(a),
                field: a.field(),
                vertices: a.vertices().to_vec(),
                dim: a.dim(),
                cap: c.cap,
                complete: c.complete,
                stop_reason: c.stop_reason,
                count: c.len(),
            },
            elements: c
                .elements
                .iter()
                .map(|t| ElementRecord {
                    key: t.key().to_vec(),
                    summands: t.summands().iter().map(|x| summand_record(a, x)).collect(),
                })
                .collect(),
            arrows: c
                .arrows
                .iter()
                .map(|x| ArrowRecord { from: keys[x.from].clone(), to: keys[x.to].clone(), mutated: x.mutated.clone() })
                .collect(),
            symmetry,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("census serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: CensusFile = serde_json::from_str(text).map_err(syntax)?;
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        if self.metadata.count != self.elements.len() {
            return Err(Error::Parse(format!(
                "metadata count {} but {} elements",
                self.metadata.count,
                self.elements.len()
            )));
        }
        let index = self.index()?;
        for a in &self.arrows {
            if !index.contains_key(&a.from) || !index.contains_key(&a.to) {
                return Err(Error::Parse("arrow endpoint is not a census key".into()));
            }
        }
        Ok(())
    }

    fn index(&self) -> Result<HashMap<&Key, usize>> {
        let mut index = HashMap::with_capacity(self.elements.len());
        for (i, e) in self.elements.iter().enumerate() {
            if index.insert(&e.key, i).is_some() {
                return Err(Error::Parse(format!("duplicate key {:?}", e.key)));
            }
        }
        Ok(index)
    }

    pub fn report(&self) -> Result<CensusReport> {
        let index = self.index()?;
        let keys: Vec<Key> = self.elements.iter().map(|e| e.key.clone()).collect();
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow { from: index[&a.from], to: index[&a.to], mutated: a.mutated.clone() })
            .collect();
        Ok(summarize(&keys, &arrows, self.metadata.complete, self.metadata.stop_reason))
    }
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NodeLabel {
    /// `1, 2, …` in key order, with the key table as comments.
    #[default]
    Ordinal,
    GVectors,
}

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    pub label: NodeLabel,
    /// Draw `𝒯⁺` (the projective at this vertex sits in degree 0) as boxes
    /// and `𝒯⁻` as circles. Ignored for incomplete censuses.
    pub bisection: Option<usize>,
    /// Elements fixed by `S_σ`, drawn filled.
    pub fixed: Vec<usize>,
}

fn key_string(k: &[GVector]) -> String {
    let rows: Vec<String> =
        k.iter().map(|g| g.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
    rows.join("; ")
}

pub fn emit_dot(c: &Census, opts: &DotOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph hasse {{");
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  node [fontname=\"Helvetica\"];");
    for (i, t) in c.elements.iter().enumerate() {
        let label = match opts.label {
            NodeLabel::Ordinal => (i + 1).to_string(),
            NodeLabel::GVectors => key_string(t.key()),
        };
        let mut attrs = vec![format!("label=\"{label}\"")];
        if let Some(v) = opts.bisection.filter(|_| c.complete) {
            attrs.push(if t.has_in_zero(v) { "shape=box".into() } else { "shape=circle".into() });
        }
        if opts.fixed.contains(&i) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=black".into());
            attrs.push("fontcolor=white".into());
        }
        let _ = writeln!(out, "  n{i} [{}];", attrs.join(", "));
    }
    for a in &c.arrows {
        let _ = writeln!(out, "  n{} -> n{};", a.from, a.to);
    }
    let _ = writeln!(out, "}}");
    if opts.label == NodeLabel::Ordinal {
        for (i, t) in c.elements.iter().enumerate() {
            let _ = writeln!(out, "// {}: {}", i + 1, key_string(t.key()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::enumerate::enumerate_2silt;
    use crate::pathalg::build_algebra;
    use std::sync::Arc;

    const A2: &str = r#"{
  "field": {"kind": "Q"},
  "vertices": ["1", "2"],
  "arrows": [{"name": "x", "source": "1", "target": "2"}],
  "relations": []
}"#;

    #[test]
    fn parses_a2() {
        let p = parse_spec(A2).unwrap();
        assert_eq!((p.quiver.vertex_count(), p.quiver.arrows().len(), p.relations.len()), (2, 1, 0));
        assert_eq!(parse_spec(&serialize_spec(&p)).unwrap(), p);
    }

    #[test]
    fn rejects_unknown_fields_with_position() {
        let bad = A2.replace("\"relations\"", "\"relatoins\"");
        assert!(matches!(parse_spec(&bad), Err(Error::Syntax { line: 5, .. })));
    }

    #[test]
    fn semantic_errors() {
        let bad = r#"{"field":{"kind":"Q"},"vertices":["1","2","3"],
            "arrows":[{"name":"a","source":"1","target":"2"},{"name":"b","source":"2","target":"3"}],
            "relations":[{"terms":[{"coeff":"1","path":["b","a"]}]}]}"#;
        assert!(!matches!(parse_spec(bad), Ok(_) | Err(Error::Syntax { .. })));
        let unknown = bad.replace("[\"b\",\"a\"]", "[\"a\",\"c\"]");
        assert!(matches!(parse_spec(&unknown), Err(Error::InvalidQuiver(_))));
    }

    #[test]
    fn coefficient_over_f5() {
        let text = r#"{"field":{"kind":"Fp","p":5},"vertices":["1","2","3"],
            "arrows":[{"name":"a","source":"1","target":"2"},{"name":"b","source":"2","target":"3"}],
            "relations":[{"terms":[{"coeff":"1/3","path":["a","b"]}]}]}"#;
        let p = parse_spec(text).unwrap();
        assert_eq!(p.relations[0].terms[0].0.to_string(), "2");
    }

    #[test]
    fn census_round_trip_and_dot() {
        let a = Arc::new(build_algebra(&catalog::linear_a(2, 0, FieldKind::Rational).unwrap()).unwrap());
        let c = enumerate_2silt(&a, 100).unwrap();
        let f = CensusFile::from_census(&c, None);
        let text = f.to_json();
        let back = CensusFile::from_json(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.report().unwrap().count, 5);
        let dot = emit_dot(&c, &DotOptions { fixed: vec![0], ..DotOptions::default() });
        assert_eq!(dot.matches(" -> ").count(), 5);
        assert_eq!(dot.matches("fillcolor=black").count(), 1);
        assert_eq!(dot, emit_dot(&c, &DotOptions { fixed: vec![0], ..DotOptions::default() }));
    }
}
