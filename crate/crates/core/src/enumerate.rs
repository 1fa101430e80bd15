//! Breadth-first enumeration of 2-term silting objects by mutation from `Λ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::silting::{Direction, GVector, SiltingObject, Workspace};

pub type Key = Vec<GVector>;

/// Default bound on the number of projective copies in one summand.
///
/// Over a τ-tilting infinite algebra the summands grow without bound along
/// the exchange graph, and each step costs a dense exact solve in that size.
pub const DEFAULT_MAX_SUMMAND_SIZE: usize = 24;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub cap: usize,
    pub max_summand_size: usize,
    pub parallel: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { cap: 10_000, max_summand_size: DEFAULT_MAX_SUMMAND_SIZE, parallel: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Every element was expanded.
    Exhausted,
    /// More than `cap` elements were found.
    Cap,
    /// A summand exceeded the size guard.
    SummandSize,
}

/// A Hasse arrow `from → to`: `to` is the left mutation of `from` at the
/// summand with g-vector `mutated`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub mutated: GVector,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub algebra: Arc<Algebra>,
    /// Elements in key order.
    pub elements: Vec<SiltingObject>,
    pub arrows: Vec<Arrow>,
    pub complete: bool,
    pub cap: usize,
    pub stop_reason: StopReason,
    index: HashMap<Key, usize>,
}

impl Census {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn find(&self, key: &[GVector]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn keys(&self) -> impl Iterator<Item = &[GVector]> {
        self.elements.iter().map(SiltingObject::key)
    }

    fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteCensus)
        }
    }

    /// Undirected exchange-graph degrees.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.len()];
        for a in &self.arrows {
            deg[a.from] += 1;
            deg[a.to] += 1;
        }
        deg
    }

    pub fn sources(&self) -> Vec<usize> {
        let mut indeg = vec![0; self.len()];
        for a in &self.arrows {
            indeg[a.to] += 1;
        }
        (0..self.len()).filter(|&i| indeg[i] == 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let mut outdeg = vec![0; self.len()];
        for a in &self.arrows {
            outdeg[a.from] += 1;
        }
        (0..self.len()).filter(|&i| outdeg[i] == 0).collect()
    }

    /// `geq[i][j]` is `elements[i] ≥ elements[j]`.
    pub fn order_matrix(&self, ws: &Workspace) -> Result<Vec<Vec<bool>>> {
        (0..self.len())
            .into_par_iter()
            .map(|i| (0..self.len()).map(|j| ws.geq(&self.elements[i], &self.elements[j])).collect())
            .collect()
    }
}

/// Enumerates `2silt Λ` with the default options and the given cap.
pub fn enumerate_2silt(a: &Arc<Algebra>, cap: usize) -> Result<Census> {
    let opts = EnumerateOptions { cap, ..EnumerateOptions::default() };
    enumerate_with(a, &opts, &Workspace::from_env())
}

struct Neighbor {
    index: usize,
    object: SiltingObject,
    direction: Direction,
    removed: GVector,
    added: GVector,
    added_size: usize,
}

pub fn enumerate_with(a: &Arc<Algebra>, opts: &EnumerateOptions, ws: &Workspace) -> Result<Census> {
    if opts.cap == 0 {
        return Err(Error::Invariant("cap must be at least 1".into()));
    }
    let start = ws.canonical_object(&SiltingObject::regular(a))?;
    let mut found: BTreeMap<Key, SiltingObject> = BTreeMap::new();
    let mut edges: BTreeMap<(Key, Key), GVector> = BTreeMap::new();
    found.insert(start.key().to_vec(), start.clone());
    let mut frontier = vec![start];
    let mut stop = StopReason::Exhausted;
    'bfs: while !frontier.is_empty() {
        let expand = |t: &SiltingObject| -> Result<Vec<Neighbor>> {
            (0..t.len())
                .map(|i| {
                    let m = ws.neighbor(t, i)?;
                    Ok(Neighbor {
                        index: i,
                        direction: m.direction,
                        removed: m.removed.g_vector(),
                        added: m.added.g_vector(),
                        added_size: m.added.size(),
                        object: m.object,
                    })
                })
                .collect()
        };
        let results: Vec<Vec<Neighbor>> = if opts.parallel {
            frontier.par_iter().map(expand).collect::<Result<_>>()?
        } else {
            frontier.iter().map(expand).collect::<Result<_>>()?
        };
        let mut next = Vec::new();
        for (t, neighbors) in frontier.iter().zip(results) {
            for nb in neighbors {
                debug_assert_eq!(t.key()[nb.index], nb.removed);
                let (from, to, label) = match nb.direction {
                    Direction::Left => (t.key().to_vec(), nb.object.key().to_vec(), nb.removed),
                    Direction::Right => (nb.object.key().to_vec(), t.key().to_vec(), nb.added),
                };
                edges.insert((from, to), label);
                if nb.added_size > opts.max_summand_size {
                    stop = StopReason::SummandSize;
                    break 'bfs;
                }
                if !found.contains_key(nb.object.key()) {
                    found.insert(nb.object.key().to_vec(), nb.object.clone());
                    next.push(nb.object);
                    if found.len() > opts.cap {
                        stop = StopReason::Cap;
                        break 'bfs;
                    }
                }
            }
        }
        next.sort_by(|x, y| x.key().cmp(y.key()));
        frontier = next;
    }
    let complete = stop == StopReason::Exhausted;
    let index: HashMap<Key, usize> = found.keys().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut arrows: Vec<Arrow> = edges
        .into_iter()
        .filter_map(|((f, t), label)| Some(Arrow { from: *index.get(&f)?, to: *index.get(&t)?, mutated: label }))
        .collect();
    arrows.sort();
    Ok(Census {
        algebra: a.clone(),
        elements: found.into_values().collect(),
        arrows,
        complete,
        cap: opts.cap,
        stop_reason: stop,
        index,
    })
}

/// Certificate that an arrow is a covering relation of the silting order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseCheck {
    pub arrows: usize,
    pub descending: bool,
    pub covering: bool,
}

/// Verifies that the census arrows are exactly covering relations and
/// returns them.
pub fn hasse_quiver(c: &Census, ws: &Workspace) -> Result<(Vec<Arrow>, HasseCheck)> {
    c.require_complete()?;
    let geq = c.order_matrix(ws)?;
    let n = c.len();
    let mut descending = true;
    let mut covering = true;
    for a in &c.arrows {
        descending &= geq[a.from][a.to] && !geq[a.to][a.from];
        covering &= !(0..n).any(|v| {
            v != a.from && v != a.to && geq[a.from][v] && geq[v][a.to] && !geq[v][a.from] && !geq[a.to][v]
        });
    }
    // every covering pair must be an arrow
    let arrow_set: std::collections::HashSet<(usize, usize)> = c.arrows.iter().map(|a| (a.from, a.to)).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && geq[i][j] && !arrow_set.contains(&(i, j)) {
                let between = (0..n).any(|v| v != i && v != j && geq[i][v] && geq[v][j]);
                covering &= between;
            }
        }
    }
    Ok((c.arrows.clone(), HasseCheck { arrows: c.arrows.len(), descending, covering }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub count: usize,
    pub complete: bool,
    pub stop_reason: StopReason,
    pub arrows: usize,
    /// The common exchange-graph degree, if every element has the same one.
    pub regular_degree: Option<usize>,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub longest_chain: usize,
    pub sources: usize,
    pub sinks: usize,
    /// Distinct g-vectors of indecomposable summands (rays of the g-fan).
    pub rays: Vec<GVector>,
}

pub fn census_report(c: &Census) -> CensusReport {
    let keys: Vec<Key> = c.keys().map(<[GVector]>::to_vec).collect();
    summarize(&keys, &c.arrows, c.complete, c.stop_reason)
}

/// [`census_report`] from the raw keys and arrows, e.g. as read back from a file.
pub fn summarize(keys: &[Key], arrows: &[Arrow], complete: bool, stop_reason: StopReason) -> CensusReport {
    let n = keys.len();
    let mut degrees = vec![0; n];
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for a in arrows {
        degrees[a.from] += 1;
        degrees[a.to] += 1;
        outdeg[a.from] += 1;
        indeg[a.to] += 1;
    }
    let mut hist = BTreeMap::new();
    for &d in &degrees {
        *hist.entry(d).or_insert(0) += 1;
    }
    let regular_degree = if hist.len() == 1 { hist.keys().next().copied() } else { None };
    let mut rays: Vec<GVector> = keys.iter().flatten().cloned().collect();
    rays.sort();
    rays.dedup();
    CensusReport {
        count: n,
        complete,
        stop_reason,
        arrows: arrows.len(),
        regular_degree,
        degree_histogram: hist,
        longest_chain: longest_chain(n, arrows),
        sources: indeg.iter().filter(|&&d| d == 0).count(),
        sinks: outdeg.iter().filter(|&&d| d == 0).count(),
        rays,
    }
}

/// Number of arrows on a longest directed path.
fn longest_chain(n: usize, arrows: &[Arrow]) -> usize {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0; n];
    for a in arrows {
        out[a.from].push(a.to);
        indeg[a.to] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut best = vec![0usize; n];
    let mut result = 0;
    while let Some(v) = stack.pop() {
        result = result.max(best[v]);
        for &w in &out[v] {
            best[w] = best[w].max(best[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::pathalg::build_algebra;
    use crate::scalar::FieldKind;

    fn census(p: crate::quiver::Presentation) -> Census {
        let a = Arc::new(build_algebra(&p).unwrap());
        enumerate_2silt(&a, 1000).unwrap()
    }

    #[test]
    fn a2_census() {
        let c = census(catalog::linear_a(2, 0, FieldKind::Rational).unwrap());
        assert_eq!(c.len(), 5);
        assert!(c.complete);
        assert_eq!(c.arrows.len(), 5);
        let r = census_report(&c);
        assert_eq!(r.regular_degree, Some(2));
        assert_eq!((r.sources, r.sinks), (1, 1));
        assert_eq!(r.longest_chain, 3);
        let (_, check) = hasse_quiver(&c, &Workspace::new()).unwrap();
        assert!(check.descending && check.covering);
    }

    #[test]
    fn cap_marks_incomplete() {
        let a = Arc::new(build_algebra(&catalog::linear_a(3, 0, FieldKind::Rational).unwrap()).unwrap());
        let c = enumerate_2silt(&a, 3).unwrap();
        assert!(!c.complete);
        assert_eq!(c.stop_reason, StopReason::Cap);
        assert!(hasse_quiver(&c, &Workspace::new()).is_err());
    }

    #[test]
    fn nakayama_counts() {
        assert_eq!(census(catalog::nakayama(2, 3, FieldKind::Rational).unwrap()).len(), 6);
        assert_eq!(census(catalog::nakayama(2, 2, FieldKind::Rational).unwrap()).len(), 6);
    }
}
