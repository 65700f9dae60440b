//! Bounded enumeration of cycles and the `Ĉ` membership tests.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::matchings::MatchingFamily;
use crate::path_algebra::{DimerAlgebra, Equality, Labeler, Path, PathLabel, SigmaVector};
use crate::quiver::{lift, ArrowId, DimerQuiver, Homology, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CHatMethod {
    /// No representative `p` has a cyclic subpath in the lift of `p²`.
    Lift,
    /// `σ` does not divide the label over the simple matchings.
    Sigma,
}

/// Cycles at `i` of length at most `max_len` whose lift from the origin is
/// simple and stays in `[-bound, bound]²`, together with the unit-cycle powers
/// of length at most `max_len`. Sorted by length, then by arrows.
pub fn enumerate_cycles(
    q: &DimerQuiver,
    fam: &MatchingFamily,
    i: VertexId,
    bound: i64,
    max_len: usize,
) -> Result<Vec<(Path, PathLabel)>> {
    let labeler = Labeler::new(q, fam);
    enumerate_cycle_paths(q, i, bound, max_len)?
        .into_iter()
        .map(|p| {
            let l = labeler.label(q, &p)?;
            Ok((p, l))
        })
        .collect()
}

/// [`enumerate_cycles`] without the labels.
pub fn enumerate_cycle_paths(q: &DimerQuiver, i: VertexId, bound: i64, max_len: usize) -> Result<Vec<Path>> {
    q.check_vertex(i)?;
    let adj = q.out_adjacency();
    let mut found: BTreeSet<(usize, Vec<ArrowId>)> = BTreeSet::new();
    let mut visited: HashSet<(VertexId, Homology)> = HashSet::from([(i, Homology::ZERO)]);
    let mut stack: Vec<ArrowId> = Vec::new();
    dfs(
        q,
        &adj,
        i,
        (i, Homology::ZERO),
        bound,
        max_len,
        &mut visited,
        &mut stack,
        &mut found,
    );
    if let Some(sigma) = crate::quiver::unit_cycle_at(q, i)?.into_iter().next() {
        let mut k = 1;
        while k * sigma.len() <= max_len {
            let p = sigma.power(k)?;
            found.insert((p.len(), p.arrows().to_vec()));
            k += 1;
        }
    }
    Ok(found
        .into_iter()
        .map(|(_, arrows)| Path::from_parts(i, i, arrows))
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    q: &DimerQuiver,
    adj: &[Vec<ArrowId>],
    start: VertexId,
    at: (VertexId, Homology),
    bound: i64,
    max_len: usize,
    visited: &mut HashSet<(VertexId, Homology)>,
    stack: &mut Vec<ArrowId>,
    found: &mut BTreeSet<(usize, Vec<ArrowId>)>,
) {
    if stack.len() == max_len {
        return;
    }
    for &a in &adj[at.0 .0] {
        let next = (q.head(a), at.1 + q.offset(a));
        if next.1.x.abs() > bound || next.1.y.abs() > bound {
            continue;
        }
        if next == (start, Homology::ZERO) {
            stack.push(a);
            found.insert((stack.len(), stack.clone()));
            stack.pop();
            continue;
        }
        if visited.contains(&next) {
            continue;
        }
        stack.push(a);
        if next.0 == start {
            found.insert((stack.len(), stack.clone()));
        }
        visited.insert(next);
        dfs(q, adj, start, next, bound, max_len, visited, stack, found);
        visited.remove(&next);
        stack.pop();
    }
}

fn lift_of_square_is_simple(q: &DimerQuiver, c: &Path) -> Result<bool> {
    let doubled = c.power(2)?;
    Ok(lift(q, &doubled, Homology::ZERO)?.is_simple())
}

/// Searches the cycles at `c.tail()` with the `η`-label and homology of `c`
/// for one whose square does not lift simply and which equals `c` in `A`.
/// Every representative of the class of `c` is among these cycles, since the
/// prefix degree never exceeds the target.
fn bad_representative(alg: &DimerAlgebra<'_>, c: &Path) -> Result<bool> {
    struct Walk<'a, 'b> {
        alg: &'a DimerAlgebra<'b>,
        c: &'a Path,
        adj: Vec<Vec<ArrowId>>,
        target: Vec<u32>,
        goal: Homology,
        stack: Vec<ArrowId>,
    }
    impl Walk<'_, '_> {
        fn go(&mut self, at: (VertexId, Homology), deg: &mut Vec<u32>) -> Result<bool> {
            let q = self.alg.quiver();
            let start = self.c.tail();
            for k in 0..self.adj[at.0 .0].len() {
                let a = self.adj[at.0 .0][k];
                let da = self.alg.eta().arrow_degree(a);
                if deg.iter().zip(da).zip(&self.target).any(|((x, y), t)| x + y > *t) {
                    continue;
                }
                let next = (q.head(a), at.1 + q.offset(a));
                for (x, y) in deg.iter_mut().zip(da) {
                    *x += y;
                }
                self.stack.push(a);
                let found = if *deg == self.target {
                    // no arrow has zero degree, so the walk cannot go on
                    if next.0 == start && next.1 == self.goal {
                        let r = Path::from_parts(start, start, self.stack.clone());
                        if lift_of_square_is_simple(q, &r)? {
                            false
                        } else {
                            match self.alg.equal(self.c, &r)? {
                                Equality::Equal(_) => true,
                                Equality::Distinct => false,
                                Equality::Undecided { .. } => return Err(Error::CapExceeded { cap: self.alg.cap() }),
                            }
                        }
                    } else {
                        false
                    }
                } else {
                    self.go(next, deg)?
                };
                self.stack.pop();
                for (x, y) in deg.iter_mut().zip(da) {
                    *x -= y;
                }
                if found {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
    let q = alg.quiver();
    if let Some(a) = q
        .arrow_ids()
        .find(|&a| alg.eta().arrow_degree(a).iter().all(|&x| x == 0))
    {
        return Err(Error::Precondition(format!(
            "arrow {} lies in no perfect matching",
            q.arrow_name(a)
        )));
    }
    let mut w = Walk {
        alg,
        c,
        adj: q.out_adjacency(),
        target: alg.eta().degree_of(c.arrows()),
        goal: crate::quiver::homology(q, c)?,
        stack: Vec::new(),
    };
    let mut deg = vec![0; alg.eta().dim()];
    w.go((c.tail(), Homology::ZERO), &mut deg)
}

/// Membership of the cycle `c` in `Ĉ`.
///
/// The lift test requires every representative of the class of `c` to have a
/// square whose lift has no cyclic subpath. The sigma test is only valid on
/// cancellative quivers and is refused otherwise.
pub fn in_c_hat(alg: &DimerAlgebra<'_>, c: &Path, method: CHatMethod) -> Result<bool> {
    let q = alg.quiver();
    q.check_path(c)?;
    if !c.is_cycle() {
        return Err(Error::Precondition(format!("{} is not a cycle", c.display(q))));
    }
    if c.is_empty() {
        return Ok(false);
    }
    match method {
        CHatMethod::Lift => {
            if crate::quiver::homology(q, c)?.is_zero() || !lift_of_square_is_simple(q, c)? {
                return Ok(false);
            }
            Ok(!bad_representative(alg, c)?)
        }
        CHatMethod::Sigma => {
            if !alg.is_cancellative() {
                return Err(Error::Precondition("the sigma test needs a cancellative quiver".into()));
            }
            let simple = alg.simple_matchings();
            let degree = Labeler::new(q, simple).degree_of(c.arrows());
            Ok(!SigmaVector::for_family(simple).divides(&degree))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matchings::enumerate_perfect_matchings;

    #[test]
    fn c3_small_cycles() {
        let q = fixtures::quiver("c3_hex").unwrap();
        let fam = enumerate_perfect_matchings(&q);
        let cycles = enumerate_cycles(&q, &fam, VertexId(0), 1, 3).unwrap();
        let shown: Vec<String> = cycles.iter().map(|(p, _)| p.display(&q)).collect();
        for want in ["x", "y", "z", "x y", "x y z"] {
            assert!(shown.iter().any(|s| s == want), "missing {want}: {shown:?}");
        }
        for (p, l) in &cycles {
            assert_eq!(l.degree.iter().sum::<u32>() as usize, p.len());
            assert!(lift(&q, p, Homology::ZERO)
                .unwrap()
                .visited
                .iter()
                .all(|(_, h)| h.x.abs() <= 1 && h.y.abs() <= 1));
        }
    }

    #[test]
    fn c_hat_examples() {
        let q = fixtures::quiver("c3_hex").unwrap();
        let alg = DimerAlgebra::new(&q);
        let x = Path::parse(&q, "x").unwrap();
        assert!(in_c_hat(&alg, &x, CHatMethod::Lift).unwrap());
        assert!(in_c_hat(&alg, &x, CHatMethod::Sigma).unwrap());
        let sigma = alg.unit_cycle(VertexId(0)).unwrap();
        assert!(!in_c_hat(&alg, &sigma, CHatMethod::Lift).unwrap());
        assert!(!in_c_hat(&alg, &sigma, CHatMethod::Sigma).unwrap());
    }

    #[test]
    fn sigma_method_refused_when_non_cancellative() {
        let q = fixtures::quiver("fig1iii_Q").unwrap();
        let alg = DimerAlgebra::new(&q);
        let c = alg.unit_cycle(VertexId(0)).unwrap();
        assert!(matches!(
            in_c_hat(&alg, &c, CHatMethod::Sigma),
            Err(Error::Precondition(_))
        ));
    }
}
