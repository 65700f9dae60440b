//! Paths, matching-degree labels and the dimer algebra relations.
//!
//! Paths are stored in traversal order: the first arrow listed is the first
//! arrow walked. (Algebraic products are usually written right to left, so the
//! product `ab` is the path that walks `b` and then `a`.)

pub(crate) mod closure;
mod cycles;
mod pairs;

pub use closure::{equal_in_a, DimerAlgebra, Equality, RewriteStep, DEFAULT_CLOSURE_CAP};
pub use cycles::{enumerate_cycle_paths, enumerate_cycles, in_c_hat, CHatMethod};
pub use pairs::{find_non_cancellative_pairs, NonCancellativePair, PairSearch, PairSearchReport};

use std::fmt;

use crate::error::{Error, Result};
use crate::matchings::MatchingFamily;
use crate::quiver::{ArrowId, DimerQuiver, Homology, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    tail: VertexId,
    head: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    /// The trivial path `e_v`.
    pub fn trivial(v: VertexId) -> Self {
        Path {
            tail: v,
            head: v,
            arrows: Vec::new(),
        }
    }

    /// Builds a path from `start`, checking composability.
    pub fn new(q: &DimerQuiver, start: VertexId, arrows: Vec<ArrowId>) -> Result<Self> {
        let head = match arrows.last() {
            Some(&a) if a.0 < q.arrow_count() => q.head(a),
            Some(&a) => return Err(Error::UnknownArrow(format!("#{}", a.0))),
            None => start,
        };
        let p = Path {
            tail: start,
            head,
            arrows,
        };
        q.check_path(&p)?;
        Ok(p)
    }

    /// Builds a nonempty path from its arrows.
    pub fn from_arrows(q: &DimerQuiver, arrows: Vec<ArrowId>) -> Result<Self> {
        let start = match arrows.first() {
            Some(&a) if a.0 < q.arrow_count() => q.tail(a),
            Some(&a) => return Err(Error::UnknownArrow(format!("#{}", a.0))),
            None => return Err(Error::Precondition("empty arrow list needs a base vertex".into())),
        };
        Path::new(q, start, arrows)
    }

    /// Unchecked constructor for callers that already know the walk composes.
    pub(crate) fn from_parts(tail: VertexId, head: VertexId, arrows: Vec<ArrowId>) -> Self {
        Path { tail, head, arrows }
    }

    /// Parses whitespace-separated arrow names in traversal order; `e<k>`
    /// denotes the trivial path at vertex `k`.
    pub fn parse(q: &DimerQuiver, text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() == 1 {
            if let Some(v) = tokens[0].strip_prefix('e').and_then(|s| s.parse::<usize>().ok()) {
                if q.arrow_by_name(tokens[0]).is_none() {
                    q.check_vertex(VertexId(v))?;
                    return Ok(Path::trivial(VertexId(v)));
                }
            }
        }
        let arrows = q.arrows_by_names(tokens)?;
        Path::from_arrows(q, arrows)
    }

    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn head(&self) -> VertexId {
        self.head
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.tail == self.head
    }

    /// Walks `self` and then `next`.
    pub fn then(&self, next: &Path) -> Result<Path> {
        if self.head != next.tail {
            return Err(Error::NotComposable { position: self.len() });
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Ok(Path {
            tail: self.tail,
            head: next.head,
            arrows,
        })
    }

    /// `self` walked `k` times; requires a cycle.
    pub fn power(&self, k: usize) -> Result<Path> {
        if !self.is_cycle() {
            return Err(Error::Precondition("only cycles have powers".into()));
        }
        Ok(Path {
            tail: self.tail,
            head: self.head,
            arrows: self.arrows.repeat(k),
        })
    }

    /// Vertices visited, `len + 1` entries.
    pub fn vertices(&self, q: &DimerQuiver) -> Vec<VertexId> {
        std::iter::once(self.tail)
            .chain(self.arrows.iter().map(|&a| q.head(a)))
            .collect()
    }

    pub fn display(&self, q: &DimerQuiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.tail.0)
        } else {
            let names: Vec<&str> = self.arrows.iter().map(|&a| q.arrow_name(a)).collect();
            names.join(" ")
        }
    }
}

/// Image of a path under a matching-degree labeling: the single nonzero
/// matrix entry position `(head, tail)`, the homology class, and the
/// exponent of each family variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathLabel {
    pub tail: VertexId,
    pub head: VertexId,
    pub homology: Homology,
    pub degree: Vec<u32>,
}

impl PathLabel {
    pub fn total_degree(&self) -> u32 {
        self.degree.iter().sum()
    }

    /// The label of walking `self` and then `next`.
    pub fn then(&self, next: &PathLabel) -> Option<PathLabel> {
        if self.head != next.tail || self.degree.len() != next.degree.len() {
            return None;
        }
        Some(PathLabel {
            tail: self.tail,
            head: next.head,
            homology: self.homology + next.homology,
            degree: self.degree.iter().zip(&next.degree).map(|(a, b)| a + b).collect(),
        })
    }

    /// Monomial notation over the family's variable names, e.g. `m0*m2^2`.
    pub fn monomial(&self, names: &[String]) -> String {
        monomial_string(&self.degree, names)
    }
}

pub fn monomial_string(degree: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = degree
        .iter()
        .zip(names)
        .filter(|(d, _)| **d > 0)
        .map(|(d, n)| if *d == 1 { n.clone() } else { format!("{n}^{d}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Precomputed per-arrow degrees for one labeling.
#[derive(Clone, Debug)]
pub struct Labeler {
    arrow_degrees: Vec<Vec<u32>>,
    dim: usize,
}

impl Labeler {
    pub fn new(q: &DimerQuiver, fam: &MatchingFamily) -> Self {
        Labeler {
            arrow_degrees: fam.arrow_degrees(q.arrow_count()),
            dim: fam.len(),
        }
    }

    /// A labeling given directly by its arrow degrees.
    pub fn from_arrow_degrees(arrow_degrees: Vec<Vec<u32>>, dim: usize) -> Self {
        Labeler { arrow_degrees, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arrow_degree(&self, a: ArrowId) -> &[u32] {
        &self.arrow_degrees[a.0]
    }

    pub fn degree_of(&self, arrows: &[ArrowId]) -> Vec<u32> {
        let mut d = vec![0u32; self.dim];
        for &a in arrows {
            for (acc, x) in d.iter_mut().zip(&self.arrow_degrees[a.0]) {
                *acc += x;
            }
        }
        d
    }

    pub fn label(&self, q: &DimerQuiver, p: &Path) -> Result<PathLabel> {
        q.check_path(p)?;
        Ok(PathLabel {
            tail: p.tail,
            head: p.head,
            homology: p.arrows.iter().map(|&a| q.offset(a)).sum(),
            degree: self.degree_of(&p.arrows),
        })
    }
}

/// Label of `p` under the labeling defined by `fam`.
pub fn label(q: &DimerQuiver, fam: &MatchingFamily, p: &Path) -> Result<PathLabel> {
    Labeler::new(q, fam).label(q, p)
}

/// The all-ones degree vector of a family (the label degree of a unit cycle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaVector(pub Vec<u32>);

impl SigmaVector {
    pub fn for_family(fam: &MatchingFamily) -> Self {
        SigmaVector(vec![1; fam.len()])
    }

    /// True when `σ` divides the monomial with exponent vector `degree`.
    pub fn divides(&self, degree: &[u32]) -> bool {
        self.0.len() == degree.len() && self.0.iter().zip(degree).all(|(s, d)| d >= s)
    }
}

/// The two complementary face paths from `head(pivot)` to `tail(pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub pivot: ArrowId,
    /// Rest of the plus face through `pivot`.
    pub left: Path,
    /// Rest of the minus face through `pivot`.
    pub right: Path,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule@{}", self.pivot.0)
    }
}

/// One rule per arrow. Arrows not lying in one face of each orientation are
/// skipped (they cannot occur in a valid quiver).
pub fn rewrite_rules(q: &DimerQuiver) -> Vec<RewriteRule> {
    use crate::quiver::Orientation;
    let mut out = Vec::with_capacity(q.arrow_count());
    for a in q.arrow_ids() {
        let (Some(plus), Some(minus)) = (
            q.slot_with_orientation(a, Orientation::Plus),
            q.slot_with_orientation(a, Orientation::Minus),
        ) else {
            continue;
        };
        let rest = |slot: crate::quiver::FaceSlot| {
            let arrows: Vec<ArrowId> = q.face(slot.face).rotation(slot.position).skip(1).collect();
            Path::from_parts(q.head(a), q.tail(a), arrows)
        };
        out.push(RewriteRule {
            pivot: a,
            left: rest(plus),
            right: rest(minus),
        });
    }
    out
}
