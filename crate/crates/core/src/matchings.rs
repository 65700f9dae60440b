//! Perfect and simple matchings.
//!
//! Perfect matchings are the exact covers of the face set in which every arrow
//! covers the two faces it borders. Enumeration is a plain Algorithm X
//! search that always branches on the uncovered face with the fewest
//! remaining candidate arrows, trying candidates in arrow-id order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, DimerQuiver, VertexId};

/// A set of arrows meeting every face exactly once. Stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    arrows: Vec<ArrowId>,
}

impl PerfectMatching {
    /// Wraps an arrow set without checking the matching condition.
    pub fn from_arrows<I: IntoIterator<Item = ArrowId>>(arrows: I) -> Self {
        let mut arrows: Vec<ArrowId> = arrows.into_iter().collect();
        arrows.sort_unstable();
        arrows.dedup();
        PerfectMatching { arrows }
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.arrows.binary_search(&a).is_ok()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn display(&self, q: &DimerQuiver) -> String {
        let names: Vec<&str> = self.arrows.iter().map(|&a| q.arrow_name(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// True when every face of `q` contains exactly one arrow of `arrows`
/// (counted with multiplicity along the face).
pub fn is_perfect_matching(q: &DimerQuiver, d: &PerfectMatching) -> bool {
    if d.arrows.iter().any(|a| a.0 >= q.arrow_count()) {
        return false;
    }
    q.faces()
        .iter()
        .all(|f| f.arrows.iter().filter(|&&a| d.contains(a)).count() == 1)
}

/// An ordered list of matchings; the order fixes the coordinates of exponent
/// vectors and the names are the printable variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingFamily {
    matchings: Vec<PerfectMatching>,
    names: Vec<String>,
}

impl MatchingFamily {
    pub fn new(matchings: Vec<PerfectMatching>, names: Vec<String>) -> Result<Self> {
        if matchings.len() != names.len() {
            return Err(Error::Precondition(format!(
                "{} matchings but {} names",
                matchings.len(),
                names.len()
            )));
        }
        let distinct: BTreeSet<&PerfectMatching> = matchings.iter().collect();
        if distinct.len() != matchings.len() {
            return Err(Error::Precondition("matchings are not distinct".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Precondition("variable names are not distinct".into()));
        }
        Ok(MatchingFamily { matchings, names })
    }

    /// Names the members `{prefix}0, {prefix}1, ...`.
    pub fn with_prefix(matchings: Vec<PerfectMatching>, prefix: &str) -> Self {
        let names = (0..matchings.len()).map(|k| format!("{prefix}{k}")).collect();
        MatchingFamily { matchings, names }
    }

    pub fn empty() -> Self {
        MatchingFamily {
            matchings: Vec::new(),
            names: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    pub fn matchings(&self) -> &[PerfectMatching] {
        &self.matchings
    }

    pub fn get(&self, k: usize) -> &PerfectMatching {
        &self.matchings[k]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index_of(&self, d: &PerfectMatching) -> Option<usize> {
        self.matchings.iter().position(|m| m == d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PerfectMatching)> {
        self.names.iter().map(String::as_str).zip(self.matchings.iter())
    }

    /// `degrees[a][k]` is 1 when arrow `a` lies in the `k`-th matching.
    pub fn arrow_degrees(&self, arrow_count: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.len()]; arrow_count];
        for (k, d) in self.matchings.iter().enumerate() {
            for &a in d.arrows() {
                if a.0 < arrow_count {
                    out[a.0][k] = 1;
                }
            }
        }
        out
    }

    pub fn renamed(mut self, names: Vec<String>) -> Result<Self> {
        self.names = names;
        MatchingFamily::new(self.matchings, self.names)
    }
}

impl fmt::Display for MatchingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

/// All perfect matchings of `q`, sorted lexicographically by sorted arrow ids.
pub fn enumerate_perfect_matchings(q: &DimerQuiver) -> MatchingFamily {
    let mut search = CoverSearch::new(q);
    search.run();
    let mut found = search.solutions;
    found.sort();
    MatchingFamily::with_prefix(found, "p")
}

struct CoverSearch<'q> {
    q: &'q DimerQuiver,
    /// The faces each arrow covers (distinct face indices).
    covers: Vec<Vec<usize>>,
    covered: Vec<bool>,
    chosen: Vec<ArrowId>,
    solutions: Vec<PerfectMatching>,
}

impl<'q> CoverSearch<'q> {
    fn new(q: &'q DimerQuiver) -> Self {
        let covers = q
            .arrow_ids()
            .map(|a| {
                let mut fs: Vec<usize> = q.slots(a).iter().map(|s| s.face).collect();
                fs.sort_unstable();
                fs
            })
            .collect();
        CoverSearch {
            q,
            covers,
            covered: vec![false; q.face_count()],
            chosen: Vec::new(),
            solutions: Vec::new(),
        }
    }

    fn available(&self, a: ArrowId) -> bool {
        let fs = &self.covers[a.0];
        // an arrow occurring twice in one face would cover it twice
        fs.windows(2).all(|w| w[0] != w[1]) && fs.iter().all(|&f| !self.covered[f])
    }

    fn run(&mut self) {
        let mut best: Option<(usize, Vec<ArrowId>)> = None;
        for (fi, face) in self.q.faces().iter().enumerate() {
            if self.covered[fi] {
                continue;
            }
            let mut cands: Vec<ArrowId> = face.arrows.iter().copied().filter(|&a| self.available(a)).collect();
            cands.sort_unstable();
            cands.dedup();
            if cands.is_empty() {
                return;
            }
            if best.as_ref().is_none_or(|(_, c)| cands.len() < c.len()) {
                best = Some((fi, cands));
            }
        }
        let Some((_, cands)) = best else {
            self.solutions
                .push(PerfectMatching::from_arrows(self.chosen.iter().copied()));
            return;
        };
        for a in cands {
            let fs = self.covers[a.0].clone();
            for &f in &fs {
                self.covered[f] = true;
            }
            self.chosen.push(a);
            self.run();
            self.chosen.pop();
            for &f in &fs {
                self.covered[f] = false;
            }
        }
    }
}

/// Strong connectivity of the subquiver on all vertices using only `keep` arrows.
pub(crate) fn strongly_connected_with<F>(q: &DimerQuiver, keep: F) -> bool
where
    F: Fn(ArrowId) -> bool,
{
    let n = q.vertex_count();
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for a in q.arrow_ids().filter(|&a| keep(a)) {
        fwd[q.tail(a).0].push(q.head(a).0);
        bwd[q.head(a).0].push(q.tail(a).0);
    }
    let reach_all = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    };
    reach_all(&fwd) && reach_all(&bwd)
}

/// True iff `q` minus the arrows of `d` is strongly connected on all vertices.
pub fn is_simple_matching(q: &DimerQuiver, d: &PerfectMatching) -> Result<bool> {
    if !is_perfect_matching(q, d) {
        return Err(Error::NotPerfectMatching(d.display(q)));
    }
    Ok(strongly_connected_with(q, |a| !d.contains(a)))
}

/// The simple members of the perfect-matching family, named `m0, m1, ...`.
pub fn simple_matchings(q: &DimerQuiver) -> MatchingFamily {
    simple_subfamily(q, &enumerate_perfect_matchings(q))
}

pub(crate) fn simple_subfamily(q: &DimerQuiver, perfect: &MatchingFamily) -> MatchingFamily {
    let simple = perfect
        .matchings()
        .iter()
        .filter(|d| strongly_connected_with(q, |a| !d.contains(a)))
        .cloned()
        .collect();
    MatchingFamily::with_prefix(simple, "m")
}

/// Arrows contained in no member of `fam`.
pub fn uncovered_arrows(q: &DimerQuiver, fam: &MatchingFamily) -> BTreeSet<ArrowId> {
    q.arrow_ids()
        .filter(|&a| !fam.matchings().iter().any(|d| d.contains(a)))
        .collect()
}

pub fn is_nondegenerate(q: &DimerQuiver) -> bool {
    uncovered_arrows(q, &enumerate_perfect_matchings(q)).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cancellativity {
    pub cancellative: bool,
    pub simple_matchings: usize,
    /// Arrows lying in no simple matching; empty exactly when cancellative.
    pub uncovered: BTreeSet<ArrowId>,
}

/// Cancellative iff every arrow lies in some simple matching.
pub fn is_cancellative(q: &DimerQuiver) -> Cancellativity {
    let simple = simple_matchings(q);
    let uncovered = uncovered_arrows(q, &simple);
    Cancellativity {
        cancellative: uncovered.is_empty(),
        simple_matchings: simple.len(),
        uncovered,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoCycleKind {
    Removable,
    Permanent,
}

/// The other face containing `a`, as the arrows after `a` up to (excluding) `a`.
pub(crate) fn complementary_rest(q: &DimerQuiver, a: ArrowId, not_face: usize) -> Option<(usize, Vec<ArrowId>)> {
    let slot = q.slots(a).iter().find(|s| s.face != not_face)?;
    let face = q.face(slot.face);
    let rest = face.rotation(slot.position).skip(1).collect();
    Some((slot.face, rest))
}

/// Classifies every length-2 face `ab`: permanent when the complementary
/// face `sa` of `a` has `b` inside `s`, or symmetrically for `b`.
pub fn classify_two_cycles(q: &DimerQuiver) -> Vec<(usize, TwoCycleKind)> {
    let mut out = Vec::new();
    for (fi, face) in q.faces().iter().enumerate() {
        if face.len() != 2 {
            continue;
        }
        let (a, b) = (face.arrows[0], face.arrows[1]);
        let hits = |x: ArrowId, y: ArrowId| match complementary_rest(q, x, fi) {
            Some((_, rest)) => rest.contains(&y),
            None => true,
        };
        let kind = if hits(a, b) || hits(b, a) {
            TwoCycleKind::Permanent
        } else {
            TwoCycleKind::Removable
        };
        out.push((fi, kind));
    }
    out
}

/// Vertices reachable from `v` along arrows not in `d`; used in reports.
pub fn reachable_without(q: &DimerQuiver, d: &PerfectMatching, v: VertexId) -> BTreeSet<VertexId> {
    let adj = q.out_adjacency();
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &a in &adj[u.0] {
            if !d.contains(a) && seen.insert(q.head(a)) {
                queue.push_back(q.head(a));
            }
        }
    }
    seen
}
