//! Equality in the dimer algebra by exhaustive rewriting.
//!
//! Every relation `p = q` of the superpotential ideal preserves endpoints,
//! homology and the matching-degree label over all perfect matchings. Two
//! paths are therefore equal in the dimer algebra exactly when one is
//! reachable from the other by substituting rule sides on subpaths, and the
//! search never leaves the label class of its start. When every arrow lies
//! in some perfect matching the label bounds the path length, so the class
//! is finite and the search is exact.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::matchings::{enumerate_perfect_matchings, simple_subfamily, uncovered_arrows, MatchingFamily};
use crate::path_algebra::{rewrite_rules, Labeler, Path, RewriteRule};
use crate::quiver::{unit_cycle_at, ArrowId, DimerQuiver, VertexId};

/// Default bound on the number of paths a single closure may visit.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub pivot: ArrowId,
    /// Index of the first replaced arrow.
    pub position: usize,
    /// `true` when the plus-face side was replaced by the minus-face side.
    pub forward: bool,
    pub result: Path,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    /// Equal; the chain rewrites the first path into the second.
    Equal(Vec<RewriteStep>),
    Distinct,
    /// The closure cap was reached before the question was settled.
    Undecided {
        explored: usize,
    },
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Equality::Distinct)
    }
}

#[derive(Clone, Debug)]
struct Pattern {
    from: Vec<ArrowId>,
    to: Vec<ArrowId>,
    pivot: ArrowId,
    forward: bool,
}

type Parent = Option<(usize, usize, ArrowId, bool)>;

/// Result of a directed search inside one equivalence class.
pub(crate) enum Search {
    Found(Vec<RewriteStep>),
    /// The whole class of the start was visited without meeting the target.
    Exhausted(Vec<Vec<ArrowId>>),
    Capped(usize),
}

/// Shared prefix plus shared suffix, never counting an arrow twice.
fn affinity(x: &[ArrowId], target: &[ArrowId]) -> usize {
    let prefix = x.iter().zip(target).take_while(|(a, b)| a == b).count();
    let suffix = x
        .iter()
        .rev()
        .zip(target.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    (prefix + suffix).min(x.len().min(target.len()))
}

/// The dimer algebra `kQ/I` of a quiver, with its rewrite system and the
/// labeling over all perfect matchings.
#[derive(Clone, Debug)]
pub struct DimerAlgebra<'q> {
    q: &'q DimerQuiver,
    rules: Vec<RewriteRule>,
    patterns: Vec<Pattern>,
    by_first: Vec<Vec<usize>>,
    /// Patterns with an empty left side, by the vertex they are inserted at.
    empty_at: Vec<Vec<usize>>,
    perfect: MatchingFamily,
    simple: MatchingFamily,
    eta: Labeler,
    nondegenerate: bool,
    cancellative: bool,
    cap: usize,
}

impl<'q> DimerAlgebra<'q> {
    pub fn new(q: &'q DimerQuiver) -> Self {
        let perfect = enumerate_perfect_matchings(q);
        DimerAlgebra::with_perfect_matchings(q, perfect)
    }

    pub fn with_perfect_matchings(q: &'q DimerQuiver, perfect: MatchingFamily) -> Self {
        let rules = rewrite_rules(q);
        let mut patterns = Vec::with_capacity(2 * rules.len());
        for r in &rules {
            patterns.push(Pattern {
                from: r.left.arrows().to_vec(),
                to: r.right.arrows().to_vec(),
                pivot: r.pivot,
                forward: true,
            });
            patterns.push(Pattern {
                from: r.right.arrows().to_vec(),
                to: r.left.arrows().to_vec(),
                pivot: r.pivot,
                forward: false,
            });
        }
        patterns.retain(|p| p.from != p.to);
        let mut by_first = vec![Vec::new(); q.arrow_count()];
        let mut empty_at = vec![Vec::new(); q.vertex_count()];
        for (k, p) in patterns.iter().enumerate() {
            match p.from.first() {
                Some(a) => by_first[a.0].push(k),
                None => empty_at[q.head(p.pivot).0].push(k),
            }
        }
        let nondegenerate = uncovered_arrows(q, &perfect).is_empty();
        let eta = Labeler::new(q, &perfect);
        let simple = simple_subfamily(q, &perfect);
        let cancellative = uncovered_arrows(q, &simple).is_empty();
        DimerAlgebra {
            q,
            rules,
            patterns,
            by_first,
            empty_at,
            perfect,
            simple,
            eta,
            nondegenerate,
            cancellative,
            cap: DEFAULT_CLOSURE_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn quiver(&self) -> &'q DimerQuiver {
        self.q
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn perfect_matchings(&self) -> &MatchingFamily {
        &self.perfect
    }

    pub fn simple_matchings(&self) -> &MatchingFamily {
        &self.simple
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellative
    }

    pub fn eta(&self) -> &Labeler {
        &self.eta
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The first unit cycle at `v` (all of them are equal in the algebra).
    pub fn unit_cycle(&self, v: VertexId) -> Result<Path> {
        unit_cycle_at(self.q, v)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Precondition(format!("no unit cycle at vertex {v}")))
    }

    fn vertex_at(&self, tail: VertexId, arrows: &[ArrowId], pos: usize) -> VertexId {
        if pos == 0 {
            tail
        } else {
            self.q.head(arrows[pos - 1])
        }
    }

    /// Every path obtained from `arrows` by a single substitution.
    fn for_each_neighbor<F>(&self, tail: VertexId, arrows: &[ArrowId], mut visit: F)
    where
        F: FnMut(Vec<ArrowId>, usize, &Pattern),
    {
        for pos in 0..=arrows.len() {
            if pos < arrows.len() {
                for &k in &self.by_first[arrows[pos].0] {
                    let pat = &self.patterns[k];
                    let end = pos + pat.from.len();
                    if end <= arrows.len() && arrows[pos..end] == pat.from[..] {
                        let mut next = Vec::with_capacity(arrows.len() - pat.from.len() + pat.to.len());
                        next.extend_from_slice(&arrows[..pos]);
                        next.extend_from_slice(&pat.to);
                        next.extend_from_slice(&arrows[end..]);
                        visit(next, pos, pat);
                    }
                }
            }
            let v = self.vertex_at(tail, arrows, pos);
            for &k in &self.empty_at[v.0] {
                let pat = &self.patterns[k];
                let mut next = Vec::with_capacity(arrows.len() + pat.to.len());
                next.extend_from_slice(&arrows[..pos]);
                next.extend_from_slice(&pat.to);
                next.extend_from_slice(&arrows[pos..]);
                visit(next, pos, pat);
            }
        }
    }

    /// Decides `p = r` in the dimer algebra.
    pub fn equal(&self, p: &Path, r: &Path) -> Result<Equality> {
        self.q.check_path(p)?;
        self.q.check_path(r)?;
        if p == r {
            return Ok(Equality::Equal(Vec::new()));
        }
        if p.tail() != r.tail() || p.head() != r.head() {
            return Ok(Equality::Distinct);
        }
        if self.eta.label(self.q, p)? != self.eta.label(self.q, r)? {
            return Ok(Equality::Distinct);
        }
        Ok(match self.search(p, r) {
            Search::Found(chain) => Equality::Equal(chain),
            Search::Exhausted(_) => Equality::Distinct,
            Search::Capped(explored) => Equality::Undecided { explored },
        })
    }

    /// Best-first walk through the class of `p`, preferring paths that agree
    /// with `r` on a longer prefix and suffix. Visiting the whole class
    /// without meeting `r` proves the two paths distinct.
    pub(crate) fn search(&self, p: &Path, r: &Path) -> Search {
        let tail = p.tail();
        let head = p.head();
        let target = r.arrows();
        let mut nodes: Vec<(Vec<ArrowId>, Parent)> = vec![(p.arrows().to_vec(), None)];
        let mut index: HashMap<Vec<ArrowId>, usize> = HashMap::from([(p.arrows().to_vec(), 0)]);
        let mut heap = BinaryHeap::from([(affinity(p.arrows(), target), Reverse(0usize))]);
        while let Some((_, Reverse(cur))) = heap.pop() {
            let current = nodes[cur].0.clone();
            let mut found = None;
            let mut over_cap = false;
            self.for_each_neighbor(tail, &current, |next, pos, pat| {
                if found.is_some() || over_cap || index.contains_key(&next) {
                    return;
                }
                if nodes.len() >= self.cap {
                    over_cap = true;
                    return;
                }
                let id = nodes.len();
                if next == target {
                    found = Some(id);
                }
                heap.push((affinity(&next, target), Reverse(id)));
                index.insert(next.clone(), id);
                nodes.push((next, Some((cur, pos, pat.pivot, pat.forward))));
            });
            if let Some(mut k) = found {
                let mut chain = Vec::new();
                while let Some((parent, position, pivot, forward)) = nodes[k].1 {
                    chain.push(RewriteStep {
                        pivot,
                        position,
                        forward,
                        result: Path::from_parts(tail, head, nodes[k].0.clone()),
                    });
                    k = parent;
                }
                chain.reverse();
                return Search::Found(chain);
            }
            if over_cap {
                return Search::Capped(nodes.len());
            }
        }
        Search::Exhausted(nodes.into_iter().map(|(a, _)| a).collect())
    }

    /// All arrow sequences equal to `p` in the dimer algebra.
    ///
    /// Classes are finite on nondegenerate quivers. Otherwise a class may be
    /// an infinite chain of ever longer paths, and reaching the cap can take
    /// time quadratic in it.
    pub fn class_members(&self, p: &Path) -> Result<Vec<Vec<ArrowId>>> {
        self.q.check_path(p)?;
        let tail = p.tail();
        let mut seen: HashSet<Vec<ArrowId>> = HashSet::new();
        seen.insert(p.arrows().to_vec());
        let mut order = vec![p.arrows().to_vec()];
        let mut k = 0;
        while k < order.len() {
            let current = order[k].clone();
            k += 1;
            let mut over_cap = false;
            self.for_each_neighbor(tail, &current, |next, _, _| {
                if over_cap || seen.contains(&next) {
                    return;
                }
                if seen.len() >= self.cap {
                    over_cap = true;
                    return;
                }
                seen.insert(next.clone());
                order.push(next);
            });
            if over_cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
        }
        Ok(order)
    }

    /// The equivalence class of `p` as paths.
    pub fn class_of(&self, p: &Path) -> Result<Vec<Path>> {
        Ok(self
            .class_members(p)?
            .into_iter()
            .map(|arrows| Path::from_parts(p.tail(), p.head(), arrows))
            .collect())
    }
}

/// Convenience wrapper around [`DimerAlgebra::equal`].
pub fn equal_in_a(q: &DimerQuiver, p: &Path, r: &Path) -> Result<Equality> {
    DimerAlgebra::new(q).equal(p, r)
}
