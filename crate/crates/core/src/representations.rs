//! Representations of dimension vector `1^{Q_0}` at points of the target's
//! matching coordinates.
//!
//! A point assigns a scalar to each simple matching of the target. Arrow `a`
//! of the source acts by the monomial `τψ(a)` evaluated at the point.

use std::fmt::Debug;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::contraction::{source_corners, ContractionMap};
use crate::error::{Error, Result};
use crate::matchings::strongly_connected_with;
use crate::monoid::Bounds;
use crate::path_algebra::{rewrite_rules, Labeler, Path};
use crate::quiver::ArrowId;

pub trait Scalar: Clone + Debug + PartialEq + Zero + One + Mul<Output = Self> {}

impl<T: Clone + Debug + PartialEq + Zero + One + Mul<Output = T>> Scalar for T {}

fn power<T: Scalar>(x: &T, k: u32) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

/// Values of the target simple matchings, in family order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAssignment<T> {
    names: Vec<String>,
    values: Vec<T>,
}

impl<T: Scalar> PointAssignment<T> {
    pub fn new(m: &ContractionMap, values: Vec<T>) -> Result<Self> {
        let names = m.target_simple_matchings().names().to_vec();
        if names.len() != values.len() {
            return Err(Error::Precondition(format!(
                "expected {} values, got {}",
                names.len(),
                values.len()
            )));
        }
        Ok(PointAssignment { names, values })
    }

    /// Every simple matching must be named exactly once.
    pub fn from_pairs<S: AsRef<str>>(m: &ContractionMap, pairs: &[(S, T)]) -> Result<Self> {
        let fam = m.target_simple_matchings();
        let mut values: Vec<Option<T>> = vec![None; fam.len()];
        for (name, v) in pairs {
            let name = name.as_ref();
            let k = fam
                .index_of_name(name)
                .ok_or_else(|| Error::Precondition(format!("no simple matching named {name}")))?;
            if values[k].replace(v.clone()).is_some() {
                return Err(Error::Precondition(format!("{name} given twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| Error::Precondition(format!("missing value for {}", fam.name(k)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, values)
    }

    pub fn constant(m: &ContractionMap, v: T) -> Self {
        let names = m.target_simple_matchings().names().to_vec();
        let values = vec![v; names.len()];
        PointAssignment { names, values }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, name: &str) -> Option<&T> {
        self.names.iter().position(|n| n == name).map(|k| &self.values[k])
    }

    /// No value is zero, so `σ` does not vanish.
    pub fn is_generic(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    /// The monomial with exponent vector `degree` at this point.
    pub fn evaluate(&self, degree: &[u32]) -> T {
        degree
            .iter()
            .zip(&self.values)
            .fold(T::one(), |acc, (&k, v)| acc * power(v, k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<T> {
    arrow_values: Vec<T>,
}

impl<T: Scalar> Representation<T> {
    pub fn arrow_values(&self) -> &[T] {
        &self.arrow_values
    }

    pub fn arrow_value(&self, a: ArrowId) -> &T {
        &self.arrow_values[a.0]
    }

    /// The scalar by which `p` acts (1 on trivial paths).
    pub fn path_value(&self, p: &Path) -> T {
        p.arrows()
            .iter()
            .fold(T::one(), |acc, a| acc * self.arrow_values[a.0].clone())
    }
}

/// Arrow values from `b`, checked against every relation of the source.
pub fn build_representation<T: Scalar>(m: &ContractionMap, b: &PointAssignment<T>) -> Result<Representation<T>> {
    if b.names() != m.target_simple_matchings().names() {
        return Err(Error::Precondition("point is for a different matching family".into()));
    }
    let labeler = m.tau_psi_labeler();
    let q = m.source();
    let r = Representation {
        arrow_values: q.arrow_ids().map(|a| b.evaluate(labeler.arrow_degree(a))).collect(),
    };
    for rule in rewrite_rules(q) {
        if r.path_value(&rule.left) != r.path_value(&rule.right) {
            return Err(Error::Inconsistent(format!(
                "relation at {} fails: {} vs {}",
                q.arrow_name(rule.pivot),
                rule.left.display(q),
                rule.right.display(q)
            )));
        }
    }
    Ok(r)
}

/// The arrows acting by nonzero scalars connect every pair of vertices.
pub fn is_simple<T: Scalar>(m: &ContractionMap, r: &Representation<T>) -> bool {
    strongly_connected_with(m.source(), |a| !r.arrow_values[a.0].is_zero())
}

/// Isomorphism test for two generic points: every cycle label up to
/// `bounds.degree_bound` takes the same value at both.
///
/// The labels come from the exact corner computation, so they cover every
/// cycle of bounded degree, not only enumerated ones.
pub fn reps_equivalent<T: Scalar>(
    m: &ContractionMap,
    b1: &PointAssignment<T>,
    b2: &PointAssignment<T>,
    bounds: &Bounds,
) -> Result<bool> {
    if !b1.is_generic() || !b2.is_generic() {
        return Err(Error::Precondition(
            "equivalence is only decided for generic points".into(),
        ));
    }
    let summary = source_corners(m, bounds)?;
    Ok(summary
        .cycle_algebra
        .generators()
        .iter()
        .all(|g| b1.evaluate(g) == b2.evaluate(g)))
}

/// Value of the cycle `c` computed from its label alone.
pub fn cycle_value<T: Scalar>(m: &ContractionMap, b: &PointAssignment<T>, c: &Path) -> Result<T> {
    let l: Labeler = m.tau_psi_labeler();
    Ok(b.evaluate(&l.label(m.source(), c)?.degree))
}
