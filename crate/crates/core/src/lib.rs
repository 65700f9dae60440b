//! Exact computations for dimer quivers on the torus.

pub mod contraction;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod matchings;
pub mod monoid;
pub mod path_algebra;
pub mod quiver;
pub mod render;
pub mod report;
pub mod representations;

pub use error::{Error, Result};
pub use matchings::{MatchingFamily, PerfectMatching};
pub use path_algebra::{DimerAlgebra, Equality, Path, PathLabel};
pub use quiver::{ArrowId, DimerQuiver, Homology, Orientation, VertexId};

pub type Rational = num_rational::BigRational;
pub type RationalPoint = representations::PointAssignment<Rational>;
pub type RationalRepresentation = representations::Representation<Rational>;
