//! Affine semigroups of exponent vectors, truncated at a total degree.
//!
//! Corner semigroups are computed exactly: the labels of cycles at a vertex
//! with total degree at most `d` are the states `(i, e)` reachable from
//! `(i, 0)` in the finite graph on pairs (vertex, exponent vector of degree
//! at most `d`). Enumerated cycles are used only as a cross-check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::path_algebra::{monomial_string, Labeler};
use crate::quiver::{ArrowId, DimerQuiver, Homology, VertexId};

pub type ExponentVector = Vec<u32>;

pub fn total_degree(v: &[u32]) -> u32 {
    v.iter().sum()
}

fn add(a: &[u32], b: &[u32]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[u32], b: &[u32]) -> Option<ExponentVector> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

/// A finitely generated submonoid of `N^dim`, with every element of total
/// degree at most `degree_bound` cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidDescription {
    dim: usize,
    generators: Vec<ExponentVector>,
    degree_bound: u32,
    monomials: BTreeSet<ExponentVector>,
}

/// All sums of `gens` of total degree at most `d`, including zero.
pub fn generate(dim: usize, gens: &[ExponentVector], d: u32) -> Result<MonoidDescription> {
    for g in gens {
        if g.len() != dim {
            return Err(Error::Precondition(format!(
                "generator {g:?} has length {}, expected {dim}",
                g.len()
            )));
        }
        if total_degree(g) == 0 {
            return Err(Error::Precondition("generators must be nonzero".into()));
        }
    }
    let zero = vec![0; dim];
    let mut monomials = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(s) = queue.pop_front() {
        for g in gens {
            let t = add(&s, g);
            if total_degree(&t) <= d && monomials.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut generators: Vec<ExponentVector> = gens.to_vec();
    generators.sort();
    generators.dedup();
    Ok(MonoidDescription {
        dim,
        generators,
        degree_bound: d,
        monomials,
    })
}

/// Exact membership by memoized subtraction of generators.
pub fn member(gens: &[ExponentVector], v: &[u32]) -> bool {
    fn go(gens: &[ExponentVector], v: &[u32], memo: &mut HashMap<ExponentVector, bool>) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&known) = memo.get(v) {
            return known;
        }
        let found = gens
            .iter()
            .filter(|g| total_degree(g) > 0)
            .filter_map(|g| sub(v, g))
            .any(|rest| go(gens, &rest, memo));
        memo.insert(v.to_vec(), found);
        found
    }
    go(gens, v, &mut HashMap::new())
}

/// Generators that are not a sum of two nonzero elements of the monoid.
pub fn minimal_generators(m: &MonoidDescription) -> Vec<ExponentVector> {
    let gens = &m.generators;
    let out: Vec<ExponentVector> = gens
        .iter()
        .filter(|g| {
            !gens
                .iter()
                .any(|h| h != *g && sub(g, h).is_some_and(|rest| total_degree(&rest) > 0 && member(gens, &rest)))
        })
        .cloned()
        .collect();
    out
}

impl MonoidDescription {
    /// Wraps a set of monomials closed under addition up to degree `d`; the
    /// generators are its irreducible elements.
    pub fn from_monomials(dim: usize, monomials: BTreeSet<ExponentVector>, d: u32) -> Self {
        let mut monomials: BTreeSet<ExponentVector> = monomials.into_iter().filter(|v| total_degree(v) <= d).collect();
        monomials.insert(vec![0; dim]);
        let nonzero: Vec<&ExponentVector> = monomials.iter().filter(|v| total_degree(v) > 0).collect();
        let generators = nonzero
            .iter()
            .filter(|v| {
                !nonzero.iter().any(|s| {
                    s != *v && sub(v, s).is_some_and(|rest| total_degree(&rest) > 0 && monomials.contains(&rest))
                })
            })
            .map(|v| (*v).clone())
            .collect();
        MonoidDescription {
            dim,
            generators,
            degree_bound: d,
            monomials,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn monomials(&self) -> &BTreeSet<ExponentVector> {
        &self.monomials
    }

    pub fn minimal_generators(&self) -> Vec<ExponentVector> {
        minimal_generators(self)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if total_degree(v) <= self.degree_bound {
            self.monomials.contains(v)
        } else {
            member(&self.generators, v)
        }
    }

    /// Number of cached monomials in each total degree `0..=degree_bound`.
    pub fn counts_by_degree(&self) -> Vec<usize> {
        let mut counts = vec![0; self.degree_bound as usize + 1];
        for v in &self.monomials {
            counts[total_degree(v) as usize] += 1;
        }
        counts
    }

    /// Restriction to total degree at most `d`.
    pub fn truncated(&self, d: u32) -> Result<MonoidDescription> {
        if d > self.degree_bound {
            return Err(Error::DegreeBeyondCache {
                requested: d,
                available: self.degree_bound,
            });
        }
        Ok(MonoidDescription::from_monomials(self.dim, self.monomials.clone(), d))
    }

    /// The monoid generated by both, at the smaller bound.
    pub fn join(&self, other: &MonoidDescription) -> Result<MonoidDescription> {
        self.check_dim(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        generate(self.dim, &gens, self.degree_bound.min(other.degree_bound))
    }

    /// Elements common to both, at the smaller bound.
    pub fn intersection(&self, other: &MonoidDescription) -> Result<MonoidDescription> {
        self.check_dim(other)?;
        let d = self.degree_bound.min(other.degree_bound);
        let common = self.monomials.intersection(&other.monomials).cloned().collect();
        Ok(MonoidDescription::from_monomials(self.dim, common, d))
    }

    /// Coordinates moved by `perm`: coordinate `k` becomes coordinate `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> MonoidDescription {
        let mv = |v: &ExponentVector| permute(v, perm);
        let mut generators: Vec<ExponentVector> = self.generators.iter().map(mv).collect();
        generators.sort();
        MonoidDescription {
            dim: self.dim,
            generators,
            degree_bound: self.degree_bound,
            monomials: self.monomials.iter().map(mv).collect(),
        }
    }

    pub fn display_generators(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .minimal_generators()
            .iter()
            .map(|g| monomial_string(g, names))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn check_dim(&self, other: &MonoidDescription) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Precondition(format!(
                "monoids live in N^{} and N^{}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

impl fmt::Display for MonoidDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|k| format!("m{k}")).collect();
        write!(
            f,
            "monoid generated by {} (up to degree {})",
            self.display_generators(&names),
            self.degree_bound
        )
    }
}

pub fn permute(v: &[u32], perm: &[usize]) -> ExponentVector {
    let mut out = vec![0; v.len()];
    for (k, &x) in v.iter().enumerate() {
        out[perm[k]] = x;
    }
    out
}

/// `None` when the cached monomials of degree at most `d` agree; otherwise
/// the smallest monomial in exactly one of them.
pub fn equal_up_to_degree(a: &MonoidDescription, b: &MonoidDescription, d: u32) -> Result<Option<ExponentVector>> {
    a.check_dim(b)?;
    for m in [a, b] {
        if d > m.degree_bound {
            return Err(Error::DegreeBeyondCache {
                requested: d,
                available: m.degree_bound,
            });
        }
    }
    let low = |m: &MonoidDescription| -> BTreeSet<ExponentVector> {
        m.monomials.iter().filter(|v| total_degree(v) <= d).cloned().collect()
    };
    let (la, lb) = (low(a), low(b));
    Ok(la
        .symmetric_difference(&lb)
        .min_by_key(|v| (total_degree(v), (*v).clone()))
        .cloned())
}

/// Every coordinate permutation taking `a` onto `b` up to degree `d`, in
/// lexicographic order.
pub fn matching_permutations(a: &MonoidDescription, b: &MonoidDescription, d: u32) -> Result<Vec<Vec<usize>>> {
    a.check_dim(b)?;
    equal_up_to_degree(a, a, d)?;
    equal_up_to_degree(b, b, d)?;
    if a.truncated(d)?.counts_by_degree() != b.truncated(d)?.counts_by_degree() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for perm in (0..a.dim).permutations(a.dim) {
        if equal_up_to_degree(&a.permuted(&perm), b, d)?.is_none() {
            out.push(perm);
        }
    }
    Ok(out)
}

/// Some coordinate permutation taking `a` onto `b` up to degree `d`.
pub fn match_up_to_permutation(a: &MonoidDescription, b: &MonoidDescription, d: u32) -> Result<Option<Vec<usize>>> {
    Ok(matching_permutations(a, b, d)?.into_iter().next())
}

/// Bounds shared by the semigroup computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub degree_bound: u32,
    /// Box for the enumerated-cycle cross-check.
    pub box_size: i64,
    /// Path length for the enumerated-cycle cross-check.
    pub max_len: usize,
    /// Largest number of reachability states explored per vertex.
    pub state_cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            degree_bound: 8,
            box_size: 3,
            max_len: 12,
            state_cap: 5_000_000,
        }
    }
}

/// Comparison of the exact corner with the monoid generated by the labels of
/// cycles whose lift is simple and stays in the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub max_len: usize,
    /// Distinct labels of enumerated cycles up to `max_len`.
    pub labels: usize,
    /// The generated monomial set did not change from `max_len` to `max_len + 2`.
    pub stable: bool,
    /// Exact monomials not generated by enumerated cycles.
    pub missing: usize,
    /// Generated monomials the exact computation did not find (a bug if nonzero).
    pub extra: usize,
}

impl CrossCheck {
    /// The enumeration heuristic reached a fixed point.
    pub fn saturated(&self) -> bool {
        self.stable
    }

    pub fn agrees(&self) -> bool {
        self.missing == 0 && self.extra == 0
    }
}

#[derive(Clone, Debug)]
pub struct Corner {
    pub vertex: VertexId,
    pub monoid: MonoidDescription,
    pub states: usize,
}

/// Labels of all cycles at `i` with total degree at most `d`, exactly.
pub fn corner_semigroup(q: &DimerQuiver, labeler: &Labeler, i: VertexId, bounds: &Bounds) -> Result<Corner> {
    q.check_vertex(i)?;
    let dim = labeler.dim();
    let d = bounds.degree_bound;
    let adj = q.out_adjacency();
    let start = (i, vec![0u32; dim]);
    let mut seen: HashSet<(VertexId, ExponentVector)> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut labels: BTreeSet<ExponentVector> = BTreeSet::new();
    while let Some((v, e)) = queue.pop_front() {
        for &a in &adj[v.0] {
            let next = add(&e, labeler.arrow_degree(a));
            if total_degree(&next) > d {
                continue;
            }
            let h = q.head(a);
            if h == i {
                labels.insert(next.clone());
            }
            let state = (h, next);
            if !seen.contains(&state) {
                if seen.len() >= bounds.state_cap {
                    return Err(Error::CapExceeded { cap: bounds.state_cap });
                }
                seen.insert(state.clone());
                queue.push_back(state);
            }
        }
    }
    Ok(Corner {
        vertex: i,
        monoid: MonoidDescription::from_monomials(dim, labels, d),
        states: seen.len(),
    })
}

/// Labels of cycles at `i` with simple lift in the box, indexed by length and
/// pruned at total degree `d`. Unit-cycle powers are included.
fn enumerated_labels(
    q: &DimerQuiver,
    labeler: &Labeler,
    i: VertexId,
    box_size: i64,
    max_len: usize,
    d: u32,
) -> Result<Vec<BTreeSet<ExponentVector>>> {
    struct Walk<'a> {
        q: &'a DimerQuiver,
        labeler: &'a Labeler,
        adj: Vec<Vec<ArrowId>>,
        start: VertexId,
        box_size: i64,
        max_len: usize,
        d: u32,
        visited: HashSet<(VertexId, Homology)>,
        out: Vec<BTreeSet<ExponentVector>>,
    }
    impl Walk<'_> {
        fn go(&mut self, at: (VertexId, Homology), len: usize, deg: &ExponentVector) {
            if len == self.max_len {
                return;
            }
            for k in 0..self.adj[at.0 .0].len() {
                let a = self.adj[at.0 .0][k];
                let next = (self.q.head(a), at.1 + self.q.offset(a));
                if next.1.x.abs() > self.box_size || next.1.y.abs() > self.box_size {
                    continue;
                }
                let e = add(deg, self.labeler.arrow_degree(a));
                if total_degree(&e) > self.d {
                    continue;
                }
                if next.0 == self.start {
                    self.out[len + 1].insert(e.clone());
                }
                if next.0 == self.start && next.1.is_zero() || self.visited.contains(&next) {
                    continue;
                }
                self.visited.insert(next);
                self.go(next, len + 1, &e);
                self.visited.remove(&next);
            }
        }
    }
    q.check_vertex(i)?;
    let mut w = Walk {
        q,
        labeler,
        adj: q.out_adjacency(),
        start: i,
        box_size,
        max_len,
        d,
        visited: HashSet::from([(i, Homology::ZERO)]),
        out: vec![BTreeSet::new(); max_len + 1],
    };
    w.go((i, Homology::ZERO), 0, &vec![0; labeler.dim()]);
    if let Some(sigma) = crate::quiver::unit_cycle_at(q, i)?.into_iter().next() {
        let unit = labeler.degree_of(sigma.arrows());
        let mut power = unit.clone();
        let mut len = sigma.len();
        while len <= max_len && total_degree(&power) <= d {
            w.out[len].insert(power.clone());
            power = add(&power, &unit);
            len += sigma.len();
        }
    }
    Ok(w.out)
}

/// Compares a corner with the monoid generated by enumerated cycles, and
/// checks that this monoid is stable from `bounds.max_len` to `bounds.max_len + 2`.
pub fn cross_check_corner(q: &DimerQuiver, labeler: &Labeler, corner: &Corner, bounds: &Bounds) -> Result<CrossCheck> {
    let d = corner.monoid.degree_bound;
    let by_len = enumerated_labels(q, labeler, corner.vertex, bounds.box_size, bounds.max_len + 2, d)?;
    let upto = |n: usize| -> Result<(usize, MonoidDescription)> {
        let gens: BTreeSet<ExponentVector> = by_len[..=n]
            .iter()
            .flatten()
            .filter(|g| total_degree(g) > 0)
            .cloned()
            .collect();
        let gens: Vec<ExponentVector> = gens.into_iter().collect();
        Ok((gens.len(), generate(labeler.dim(), &gens, d)?))
    };
    let (labels, generated) = upto(bounds.max_len)?;
    let (_, plus1) = upto(bounds.max_len + 1)?;
    let (_, plus2) = upto(bounds.max_len + 2)?;
    Ok(CrossCheck {
        max_len: bounds.max_len,
        labels,
        stable: generated.monomials == plus1.monomials && plus1.monomials == plus2.monomials,
        missing: corner.monoid.monomials.difference(&generated.monomials).count(),
        extra: generated.monomials.difference(&corner.monoid.monomials).count(),
    })
}

/// Corners at every vertex, their union (the cycle algebra) and their
/// intersection (the center).
#[derive(Clone, Debug)]
pub struct CornerSummary {
    pub corners: Vec<Corner>,
    pub cycle_algebra: MonoidDescription,
    pub center: MonoidDescription,
}

pub fn corner_summary(q: &DimerQuiver, labeler: &Labeler, bounds: &Bounds) -> Result<CornerSummary> {
    let corners = q
        .vertices()
        .map(|i| corner_semigroup(q, labeler, i, bounds))
        .collect::<Result<Vec<_>>>()?;
    let dim = labeler.dim();
    let d = bounds.degree_bound;
    let mut union = generate(dim, &[], d)?;
    let mut center: Option<MonoidDescription> = None;
    for c in &corners {
        union = union.join(&c.monoid)?;
        center = Some(match center {
            None => c.monoid.clone(),
            Some(z) => z.intersection(&c.monoid)?,
        });
    }
    Ok(CornerSummary {
        cycle_algebra: union,
        center: center.unwrap_or_else(|| MonoidDescription::from_monomials(dim, BTreeSet::new(), d)),
        corners,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[u32]) -> ExponentVector {
        x.to_vec()
    }

    #[test]
    fn generate_examples() {
        let m = generate(4, &[v(&[1, 1, 0, 0])], 3).unwrap();
        assert_eq!(m.monomials().len(), 2);
        assert_eq!(generate(3, &[], 5).unwrap().monomials().len(), 1);
        // xz, xw, yz, yw over (x, y, z, w)
        let s = generate(
            4,
            &[v(&[1, 0, 1, 0]), v(&[1, 0, 0, 1]), v(&[0, 1, 1, 0]), v(&[0, 1, 0, 1])],
            4,
        )
        .unwrap();
        assert_eq!(s.counts_by_degree(), [1, 0, 4, 0, 9]);
        assert!(generate(2, &[v(&[0, 0])], 2).is_err());
    }

    #[test]
    fn membership() {
        let s = [v(&[1, 0, 1, 0]), v(&[1, 0, 0, 1]), v(&[0, 1, 1, 0]), v(&[0, 1, 0, 1])];
        assert!(member(&s, &[0, 0, 0, 0]));
        assert!(member(&s, &[1, 1, 1, 1]));
        let iv = [v(&[1, 0, 1, 0]), v(&[0, 1, 0, 1]), v(&[2, 0, 0, 2]), v(&[0, 2, 2, 0])];
        assert!(!member(&iv, &[1, 0, 0, 1]));
    }

    #[test]
    fn minimal() {
        let m = generate(2, &[v(&[1, 0]), v(&[2, 0])], 4).unwrap();
        assert_eq!(minimal_generators(&m), [v(&[1, 0])]);
        let from = MonoidDescription::from_monomials(2, m.monomials().clone(), 4);
        assert_eq!(from.generators(), [v(&[1, 0])]);
    }

    #[test]
    fn permutation_matching() {
        let a = generate(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])], 4).unwrap();
        let b = generate(3, &[v(&[0, 1, 1]), v(&[1, 0, 0])], 4).unwrap();
        assert_eq!(match_up_to_permutation(&a, &a, 4).unwrap(), Some(vec![0, 1, 2]));
        let perm = match_up_to_permutation(&a, &b, 4).unwrap().unwrap();
        assert_eq!(equal_up_to_degree(&a.permuted(&perm), &b, 4).unwrap(), None);
        let c = generate(3, &[v(&[2, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], 4).unwrap();
        assert_eq!(match_up_to_permutation(&a, &c, 4).unwrap(), None);
        assert!(matches!(
            equal_up_to_degree(&a, &b, 5),
            Err(Error::DegreeBeyondCache {
                requested: 5,
                available: 4
            })
        ));
    }
}
