//! Search for non-cancellative pairs.
//!
//! Equivalence classes of the dimer algebra are discovered level by level:
//! every class containing a path of length `L + 1` is the class of `p·a` for a
//! class representative `p` of length `L`. A candidate is compared only with
//! the classes already known under the same label, so the work is governed by
//! the number of classes rather than the number of paths.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::path_algebra::closure::Search;
use crate::path_algebra::{DimerAlgebra, Equality, Path, PathLabel};
use crate::quiver::{ArrowId, DimerQuiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSearch {
    pub max_len: usize,
    /// Stop after this many pairs.
    pub limit: Option<usize>,
    /// Largest unit-cycle power tried when certifying a pair.
    pub max_witness_power: usize,
}

impl PairSearch {
    pub fn new(max_len: usize) -> Self {
        PairSearch {
            max_len,
            limit: None,
            max_witness_power: 8,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

/// Distinct paths with the same label, made equal by walking `witness`
/// (a power of the unit cycle at their tail) first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCancellativePair {
    pub p: Path,
    pub r: Path,
    pub label: PathLabel,
    pub witness_power: usize,
    pub witness: Path,
}

#[derive(Clone, Debug)]
pub struct PairSearchReport {
    pub max_len: usize,
    pub pairs: Vec<NonCancellativePair>,
    /// Number of classes discovered.
    pub classes: usize,
    /// True when the search stopped at the pair limit.
    pub truncated: bool,
}

impl PairSearchReport {
    pub fn summary(&self, q: &DimerQuiver) -> String {
        if self.pairs.is_empty() {
            return format!("none found <= {} ({} classes)", self.max_len, self.classes);
        }
        let mut out = format!("{} pair(s) found <= {}", self.pairs.len(), self.max_len);
        if self.truncated {
            out.push_str(" (stopped at limit)");
        }
        for pair in &self.pairs {
            out.push_str(&format!(
                "\n  [{}] vs [{}]; equal after sigma^{}",
                pair.p.display(q),
                pair.r.display(q),
                pair.witness_power
            ));
        }
        out
    }

    /// True when `(a, b)` was reported in either order.
    pub fn contains(&self, a: &Path, b: &Path) -> bool {
        self.pairs
            .iter()
            .any(|pair| (&pair.p == a && &pair.r == b) || (&pair.p == b && &pair.r == a))
    }
}

fn decided(e: Equality, cap: usize) -> Result<bool> {
    match e {
        Equality::Equal(_) => Ok(true),
        Equality::Distinct => Ok(false),
        Equality::Undecided { .. } => Err(Error::CapExceeded { cap }),
    }
}

fn certify(alg: &DimerAlgebra<'_>, p: &Path, r: &Path, max_power: usize) -> Result<(usize, Path)> {
    let sigma = alg.unit_cycle(p.tail())?;
    for m in 1..=max_power {
        let s = sigma.power(m)?;
        if decided(alg.equal(&s.then(p)?, &s.then(r)?)?, alg.cap())? {
            return Ok((m, s));
        }
    }
    Err(Error::Inconsistent(format!(
        "no unit-cycle power up to {max_power} equalizes {} and {}",
        p.display(alg.quiver()),
        r.display(alg.quiver())
    )))
}

/// Non-cancellative pairs among paths of length at most `search.max_len`.
///
/// One pair is reported per extra class sharing a label with an earlier
/// class; paths are the shortest representatives. An empty result is only
/// evidence up to the bound.
pub fn find_non_cancellative_pairs(alg: &DimerAlgebra<'_>, search: &PairSearch) -> Result<PairSearchReport> {
    let q = alg.quiver();
    if !alg.is_nondegenerate() {
        return Err(Error::Precondition("pair search needs a nondegenerate quiver".into()));
    }
    let mut reps: Vec<Path> = q.vertices().map(Path::trivial).collect();
    let mut by_label: HashMap<PathLabel, Vec<usize>> = HashMap::new();
    for (k, p) in reps.iter().enumerate() {
        by_label.entry(alg.eta().label(q, p)?).or_default().push(k);
    }
    // Classes enumerated in full while proving distinctness, and their members.
    let mut complete = vec![false; reps.len()];
    let mut members: HashMap<Vec<ArrowId>, usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut level_start = 0;
    let mut truncated = false;
    'levels: for _ in 0..search.max_len {
        let level_end = reps.len();
        for k in level_start..level_end {
            let base = reps[k].clone();
            for a in q.out_arrows(base.head()) {
                let cand = base.then(&Path::from_parts(q.tail(a), q.head(a), vec![a]))?;
                let l = alg.eta().label(q, &cand)?;
                let group = by_label.get(&l).cloned().unwrap_or_default();
                let mut known = members.contains_key(cand.arrows());
                for &c in &group {
                    if known {
                        break;
                    }
                    if complete[c] {
                        continue;
                    }
                    match alg.search(&reps[c], &cand) {
                        Search::Found(_) => known = true,
                        Search::Exhausted(class) => {
                            complete[c] = true;
                            for m in class {
                                members.insert(m, c);
                            }
                        }
                        Search::Capped(_) => return Err(Error::CapExceeded { cap: alg.cap() }),
                    }
                }
                if known {
                    continue;
                }
                let id = reps.len();
                reps.push(cand.clone());
                complete.push(false);
                by_label.entry(l.clone()).or_default().push(id);
                if let Some(&first) = group.first() {
                    let p = reps[first].clone();
                    let (witness_power, witness) = certify(alg, &p, &cand, search.max_witness_power)?;
                    pairs.push(NonCancellativePair {
                        p,
                        r: cand,
                        label: l,
                        witness_power,
                        witness,
                    });
                    if search.limit.is_some_and(|n| pairs.len() >= n) {
                        truncated = true;
                        break 'levels;
                    }
                }
            }
        }
        level_start = level_end;
    }
    Ok(PairSearchReport {
        max_len: search.max_len,
        pairs,
        classes: reps.len(),
        truncated,
    })
}
