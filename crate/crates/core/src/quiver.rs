//! Dimer quivers on the two-torus.
//!
//! A [`DimerQuiver`] stores its torus embedding combinatorially: every arrow
//! carries the lattice displacement between the lifts of its tail and head in
//! the universal cover, and every face is an oriented cycle of arrows tagged
//! with one of two orientation classes. Nothing here depends on geometric
//! coordinates; the optional layout is only consumed by the renderer.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::path_algebra::Path;

/// Dense vertex index `0..vertex_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Dense arrow index `0..arrow_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArrowId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z²`: a homology class, or a translation of the universal cover.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homology {
    pub x: i64,
    pub y: i64,
}

impl Homology {
    pub const ZERO: Homology = Homology { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Homology { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Determinant of the 2×2 matrix with columns `self`, `other`.
    pub fn det(self, other: Homology) -> i64 {
        self.x * other.y - self.y * other.x
    }
}

impl Add for Homology {
    type Output = Homology;
    fn add(self, o: Homology) -> Homology {
        Homology::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Homology {
    fn add_assign(&mut self, o: Homology) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Homology {
    type Output = Homology;
    fn sub(self, o: Homology) -> Homology {
        Homology::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Homology {
    fn sub_assign(&mut self, o: Homology) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Neg for Homology {
    type Output = Homology;
    fn neg(self) -> Homology {
        Homology::new(-self.x, -self.y)
    }
}

impl std::iter::Sum for Homology {
    fn sum<I: Iterator<Item = Homology>>(iter: I) -> Homology {
        iter.fold(Homology::ZERO, Add::add)
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
    /// Head lift minus tail lift in the universal cover.
    pub offset: Homology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn opposite(self) -> Orientation {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Plus => '+',
            Orientation::Minus => '-',
        }
    }
}

/// A unit cycle: the arrows are listed in traversal order, cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub arrows: Vec<ArrowId>,
    pub orientation: Orientation,
}

impl Face {
    pub fn new(orientation: Orientation, arrows: Vec<ArrowId>) -> Self {
        Face { arrows, orientation }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The face read cyclically starting at position `start`.
    pub fn rotation(&self, start: usize) -> impl Iterator<Item = ArrowId> + '_ {
        let n = self.arrows.len();
        (0..n).map(move |k| self.arrows[(start + k) % n])
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.arrows.contains(&a)
    }
}

/// Position of an arrow inside a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceSlot {
    pub face: usize,
    pub position: usize,
}

#[derive(Clone, Debug)]
pub struct DimerQuiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    faces: Vec<Face>,
    layout: Option<Vec<[f64; 2]>>,
    /// Face slots of each arrow; well-formed quivers have exactly two per arrow.
    slots: Vec<Vec<FaceSlot>>,
}

impl PartialEq for DimerQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.arrows == other.arrows
            && self.faces == other.faces
            && self.layout == other.layout
    }
}

impl DimerQuiver {
    /// Assembles a quiver without checking the dimer invariants; see [`validate`].
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>, faces: Vec<Face>, layout: Option<Vec<[f64; 2]>>) -> Self {
        let mut slots = vec![Vec::new(); arrows.len()];
        for (fi, face) in faces.iter().enumerate() {
            for (pos, a) in face.arrows.iter().enumerate() {
                if let Some(s) = slots.get_mut(a.0) {
                    s.push(FaceSlot {
                        face: fi,
                        position: pos,
                    });
                }
            }
        }
        DimerQuiver {
            vertex_count,
            arrows,
            faces,
            layout,
            slots,
        }
    }

    /// Builds the quiver and rejects it unless [`validate`] reports no violations.
    pub fn validated(
        vertex_count: usize,
        arrows: Vec<Arrow>,
        faces: Vec<Face>,
        layout: Option<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        let q = DimerQuiver::new(vertex_count, arrows, faces, layout);
        let report = validate(&q);
        if report.is_valid() {
            Ok(q)
        } else {
            Err(Error::InvalidQuiver(report))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + Clone {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].tail
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].head
    }

    pub fn offset(&self, a: ArrowId) -> Homology {
        self.arrows[a.0].offset
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn layout(&self) -> Option<&[[f64; 2]]> {
        self.layout.as_deref()
    }

    pub fn with_layout(mut self, layout: Option<Vec<[f64; 2]>>) -> Self {
        self.layout = layout;
        self
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    /// Resolves a list of arrow names.
    pub fn arrows_by_names<'a, I>(&self, names: I) -> Result<Vec<ArrowId>>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names
            .into_iter()
            .map(|n| self.arrow_by_name(n).ok_or_else(|| Error::UnknownArrow(n.to_string())))
            .collect()
    }

    /// Face slots holding arrow `a`.
    pub fn slots(&self, a: ArrowId) -> &[FaceSlot] {
        &self.slots[a.0]
    }

    /// The slot of `a` in the face of the given orientation, if any.
    pub fn slot_with_orientation(&self, a: ArrowId, o: Orientation) -> Option<FaceSlot> {
        self.slots[a.0]
            .iter()
            .copied()
            .find(|s| self.faces[s.face].orientation == o)
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.tail(a) == v)
    }

    pub fn in_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.head(a) == v)
    }

    /// Outgoing arrows of every vertex, in arrow-id order.
    pub fn out_adjacency(&self) -> Vec<Vec<ArrowId>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for a in self.arrow_ids() {
            adj[self.tail(a).0].push(a);
        }
        adj
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v.0,
                count: self.vertex_count,
            })
        }
    }

    /// Checks that `p` is a composable arrow sequence in this quiver.
    pub fn check_path(&self, p: &Path) -> Result<()> {
        self.check_vertex(p.tail())?;
        let mut at = p.tail();
        for (k, &a) in p.arrows().iter().enumerate() {
            if a.0 >= self.arrows.len() {
                return Err(Error::UnknownArrow(format!("#{}", a.0)));
            }
            if self.tail(a) != at {
                return Err(Error::NotComposable { position: k });
            }
            at = self.head(a);
        }
        if at != p.head() {
            return Err(Error::NotComposable { position: p.len() });
        }
        Ok(())
    }

    /// Replaces every arrow offset by `offset(a) + shift(tail) - shift(head)`.
    ///
    /// This changes the lift representatives of the vertices but no face sum
    /// or cycle class.
    pub fn regauged(&self, shift: &[Homology]) -> DimerQuiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                offset: a.offset + shift[a.tail.0] - shift[a.head.0],
                ..a.clone()
            })
            .collect();
        DimerQuiver::new(self.vertex_count, arrows, self.faces.clone(), self.layout.clone())
    }
}

/// One broken dimer invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    DuplicateArrowName { name: String },
    ArrowEndpointOutOfRange { arrow: String, vertex: usize },
    EmptyFace { face: usize },
    FaceArrowOutOfRange { face: usize, arrow: usize },
    FaceNotComposable { face: usize, position: usize },
    FaceHomologyNonzero { face: usize, sum: Homology },
    ArrowFaceCount { arrow: String, count: usize },
    SameOrientation { arrow: String },
    LayoutSize { expected: usize, found: usize },
    EulerCharacteristic { value: i64 },
    Disconnected { components: usize },
    HomologyNotFull { index: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "quiver has no vertices"),
            Violation::DuplicateArrowName { name } => write!(f, "duplicate arrow name {name}"),
            Violation::ArrowEndpointOutOfRange { arrow, vertex } => {
                write!(f, "arrow {arrow} references missing vertex {vertex}")
            }
            Violation::EmptyFace { face } => write!(f, "face {face} is empty"),
            Violation::FaceArrowOutOfRange { face, arrow } => {
                write!(f, "face {face} references missing arrow #{arrow}")
            }
            Violation::FaceNotComposable { face, position } => {
                write!(f, "face {face} does not compose at position {position}")
            }
            Violation::FaceHomologyNonzero { face, sum } => {
                write!(f, "face {face} has nonzero offset sum {sum}")
            }
            Violation::ArrowFaceCount { arrow, count } => {
                write!(f, "arrow {arrow} lies in {count} faces, expected 2")
            }
            Violation::SameOrientation { arrow } => {
                write!(f, "arrow in two faces of same orientation: {arrow}")
            }
            Violation::LayoutSize { expected, found } => {
                write!(f, "layout has {found} points, expected {expected}")
            }
            Violation::EulerCharacteristic { value } => {
                write!(f, "Euler characteristic is {value}, expected 0")
            }
            Violation::Disconnected { components } => {
                write!(f, "underlying graph has {components} components")
            }
            Violation::HomologyNotFull { index } => {
                if *index == 0 {
                    write!(f, "cycle homology classes do not span Z^2")
                } else {
                    write!(f, "cycle homology classes generate a sublattice of index {index}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every dimer invariant and lists all violations.
///
/// Structural problems (dangling ids, non-composing faces) are reported first;
/// the global checks (Euler characteristic, connectivity, homology) only run
/// once the local structure is sound.
pub fn validate(q: &DimerQuiver) -> ValidationReport {
    let mut out = Vec::new();
    let n = q.vertex_count;
    if n == 0 {
        out.push(Violation::NoVertices);
    }
    let mut seen = std::collections::HashSet::new();
    for a in &q.arrows {
        if !seen.insert(a.name.as_str()) {
            out.push(Violation::DuplicateArrowName { name: a.name.clone() });
        }
        for v in [a.tail, a.head] {
            if v.0 >= n {
                out.push(Violation::ArrowEndpointOutOfRange {
                    arrow: a.name.clone(),
                    vertex: v.0,
                });
            }
        }
    }
    if let Some(layout) = &q.layout {
        if layout.len() != n {
            out.push(Violation::LayoutSize {
                expected: n,
                found: layout.len(),
            });
        }
    }
    let structural_ok = out.is_empty();
    let mut faces_ok = true;
    for (fi, face) in q.faces.iter().enumerate() {
        if face.arrows.is_empty() {
            out.push(Violation::EmptyFace { face: fi });
            faces_ok = false;
            continue;
        }
        if let Some(bad) = face.arrows.iter().find(|a| a.0 >= q.arrows.len()) {
            out.push(Violation::FaceArrowOutOfRange { face: fi, arrow: bad.0 });
            faces_ok = false;
            continue;
        }
        if structural_ok {
            let len = face.arrows.len();
            for k in 0..len {
                let a = face.arrows[k];
                let b = face.arrows[(k + 1) % len];
                if q.head(a) != q.tail(b) {
                    out.push(Violation::FaceNotComposable { face: fi, position: k });
                    faces_ok = false;
                    break;
                }
            }
        }
        let sum: Homology = face.arrows.iter().map(|&a| q.offset(a)).sum();
        if !sum.is_zero() {
            out.push(Violation::FaceHomologyNonzero { face: fi, sum });
        }
    }
    for (ai, a) in q.arrows.iter().enumerate() {
        let slots = &q.slots[ai];
        if slots.len() != 2 {
            out.push(Violation::ArrowFaceCount {
                arrow: a.name.clone(),
                count: slots.len(),
            });
            faces_ok = false;
        } else if q.faces[slots[0].face].orientation == q.faces[slots[1].face].orientation {
            out.push(Violation::SameOrientation { arrow: a.name.clone() });
            faces_ok = false;
        }
    }
    if !(structural_ok && faces_ok) {
        return ValidationReport { violations: out };
    }

    let euler = n as i64 - q.arrows.len() as i64 + q.faces.len() as i64;
    if euler != 0 {
        out.push(Violation::EulerCharacteristic { value: euler });
    }
    let (components, potential) = spanning_potential(q);
    if components > 1 {
        out.push(Violation::Disconnected { components });
    } else {
        let index = cycle_lattice_index(q, &potential);
        if index != 1 {
            out.push(Violation::HomologyNotFull { index });
        }
    }
    ValidationReport { violations: out }
}

/// Lift representatives from a spanning forest of the underlying graph.
///
/// Returns the number of connected components and, for each vertex, the
/// position of its lift reached along forest arrows from the component root.
pub(crate) fn spanning_potential(q: &DimerQuiver) -> (usize, Vec<Homology>) {
    let n = q.vertex_count;
    let mut incident: Vec<Vec<ArrowId>> = vec![Vec::new(); n];
    for a in q.arrow_ids() {
        incident[q.tail(a).0].push(a);
        if q.head(a) != q.tail(a) {
            incident[q.head(a).0].push(a);
        }
    }
    let mut pot = vec![Homology::ZERO; n];
    let mut seen = vec![false; n];
    let mut components = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        components += 1;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &a in &incident[v] {
                let (t, h) = (q.tail(a).0, q.head(a).0);
                let (w, pw) = if t == v {
                    (h, pot[v] + q.offset(a))
                } else {
                    (t, pot[v] - q.offset(a))
                };
                if !seen[w] {
                    seen[w] = true;
                    pot[w] = pw;
                    queue.push_back(w);
                }
            }
        }
    }
    (components, pot)
}

/// Index of the sublattice of `Z²` spanned by the classes of all closed walks
/// (0 when the classes do not span a rank-2 lattice).
fn cycle_lattice_index(q: &DimerQuiver, pot: &[Homology]) -> i64 {
    let classes: Vec<Homology> = q
        .arrow_ids()
        .map(|a| pot[q.tail(a).0] + q.offset(a) - pot[q.head(a).0])
        .filter(|c| !c.is_zero())
        .collect();
    let mut g = 0i64;
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            g = gcd(g, classes[i].det(classes[j]).abs());
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

/// Every unit cycle through `i`: one rotation per occurrence of `i` as the
/// tail of a face arrow.
pub fn unit_cycle_at(q: &DimerQuiver, i: VertexId) -> Result<Vec<Path>> {
    q.check_vertex(i)?;
    let mut out = Vec::new();
    for face in &q.faces {
        for (k, &a) in face.arrows.iter().enumerate() {
            if q.tail(a) == i {
                let arrows: Vec<ArrowId> = face.rotation(k).collect();
                out.push(Path::from_parts(i, i, arrows));
            }
        }
    }
    Ok(out)
}

/// A path together with its lift to the universal cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPath {
    pub base: Path,
    pub start_offset: Homology,
    /// `len + 1` lifted vertices, starting at `(tail, start_offset)`.
    pub visited: Vec<(VertexId, Homology)>,
}

impl LiftedPath {
    pub fn end(&self) -> (VertexId, Homology) {
        *self.visited.last().expect("lift visits at least its start")
    }

    /// True when no lifted vertex is visited twice.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.visited.len());
        self.visited.iter().all(|v| seen.insert(*v))
    }
}

pub fn lift(q: &DimerQuiver, p: &Path, start: Homology) -> Result<LiftedPath> {
    q.check_path(p)?;
    let mut visited = Vec::with_capacity(p.len() + 1);
    let mut at = start;
    visited.push((p.tail(), at));
    for &a in p.arrows() {
        at += q.offset(a);
        visited.push((q.head(a), at));
    }
    Ok(LiftedPath {
        base: p.clone(),
        start_offset: start,
        visited,
    })
}

pub fn homology(q: &DimerQuiver, p: &Path) -> Result<Homology> {
    q.check_path(p)?;
    Ok(p.arrows().iter().map(|&a| q.offset(a)).sum())
}
