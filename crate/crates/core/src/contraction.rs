//! Arrow contractions `ψ: Q → Q'` and what they transport.
//!
//! The source is re-gauged before contracting so that every contracted arrow
//! has offset zero. `ψ` then preserves the homology of every path literally,
//! and no face sum or cycle class changes.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::matchings::{
    classify_two_cycles, complementary_rest, is_cancellative, is_perfect_matching, simple_matchings, MatchingFamily,
    PerfectMatching, TwoCycleKind,
};
use crate::monoid::{
    corner_summary, cross_check_corner, equal_up_to_degree, Bounds, CornerSummary, CrossCheck, ExponentVector,
};
use crate::path_algebra::{Labeler, Path, PathLabel};
use crate::quiver::{validate, Arrow, ArrowId, DimerQuiver, Face, Homology, VertexId};

#[derive(Clone, Debug)]
pub struct ContractionMap {
    source: DimerQuiver,
    contracted: BTreeSet<ArrowId>,
    target: DimerQuiver,
    vertex_map: Vec<VertexId>,
    arrow_map: Vec<Option<ArrowId>>,
    target_simple: MatchingFamily,
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Contracts `arrows` in `q`.
pub fn contract(q: &DimerQuiver, arrows: &[ArrowId]) -> Result<ContractionMap> {
    let report = validate(q);
    if !report.is_valid() {
        return Err(Error::InvalidQuiver(report));
    }
    for &a in arrows {
        if a.0 >= q.arrow_count() {
            return Err(Error::UnknownArrow(format!("#{}", a.0)));
        }
    }
    let contracted: BTreeSet<ArrowId> = arrows.iter().copied().collect();
    for (fi, face) in q.faces().iter().enumerate() {
        if face.arrows.iter().all(|a| contracted.contains(a)) {
            return Err(Error::UnitCycleToVertex { face: fi });
        }
    }
    let n = q.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    for &a in &contracted {
        let (t, h) = (find(&mut parent, q.tail(a).0), find(&mut parent, q.head(a).0));
        if t == h {
            return Err(Error::ContractsCycle {
                arrow: q.arrow_name(a).to_string(),
            });
        }
        parent[t.max(h)] = t.min(h);
    }

    // Potentials along the contracted forest, rooted at the smallest vertex of each tree.
    let mut incident: Vec<Vec<ArrowId>> = vec![Vec::new(); n];
    for &a in &contracted {
        incident[q.tail(a).0].push(a);
        incident[q.head(a).0].push(a);
    }
    let mut shift = vec![Homology::ZERO; n];
    let mut seen = vec![false; n];
    let mut class_of = vec![usize::MAX; n];
    let mut classes = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        class_of[root] = classes;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &a in &incident[v] {
                let (w, pw) = if q.tail(a).0 == v {
                    (q.head(a).0, shift[v] + q.offset(a))
                } else {
                    (q.tail(a).0, shift[v] - q.offset(a))
                };
                if !seen[w] {
                    seen[w] = true;
                    shift[w] = pw;
                    class_of[w] = classes;
                    queue.push_back(w);
                }
            }
        }
        classes += 1;
    }
    let source = q.regauged(&shift);
    let vertex_map: Vec<VertexId> = class_of.iter().map(|&c| VertexId(c)).collect();

    let mut arrow_map = vec![None; q.arrow_count()];
    let mut target_arrows = Vec::new();
    for a in source.arrow_ids() {
        if contracted.contains(&a) {
            continue;
        }
        arrow_map[a.0] = Some(ArrowId(target_arrows.len()));
        let arr = source.arrow(a);
        target_arrows.push(Arrow {
            name: arr.name.clone(),
            tail: vertex_map[arr.tail.0],
            head: vertex_map[arr.head.0],
            offset: arr.offset,
        });
    }
    let target_faces = source
        .faces()
        .iter()
        .map(|f| Face::new(f.orientation, f.arrows.iter().filter_map(|a| arrow_map[a.0]).collect()))
        .collect();
    // each class is drawn at its smallest source vertex, which comes first in id order
    let layout = q.layout().map(|points| {
        let mut out = vec![[0.0, 0.0]; classes];
        for v in (0..n).rev() {
            out[class_of[v]] = points[v];
        }
        out
    });
    let target = DimerQuiver::new(classes, target_arrows, target_faces, layout);
    let report = validate(&target);
    if !report.is_valid() {
        return Err(Error::InvalidTarget(report));
    }
    let target_simple = simple_matchings(&target);
    Ok(ContractionMap {
        source,
        contracted,
        target,
        vertex_map,
        arrow_map,
        target_simple,
    })
}

/// Contracts the arrows named in `names`.
pub fn contract_by_names<'a, I>(q: &DimerQuiver, names: I) -> Result<ContractionMap>
where
    I: IntoIterator<Item = &'a str>,
{
    let ids = q.arrows_by_names(names)?;
    contract(q, &ids)
}

impl ContractionMap {
    /// The re-gauged source (same arrows, ids and faces as the input).
    pub fn source(&self) -> &DimerQuiver {
        &self.source
    }

    pub fn contracted(&self) -> &BTreeSet<ArrowId> {
        &self.contracted
    }

    pub fn target(&self) -> &DimerQuiver {
        &self.target
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn map_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0]
    }

    pub fn map_arrow(&self, a: ArrowId) -> Option<ArrowId> {
        self.arrow_map[a.0]
    }

    /// Simple matchings of the target, named `m0, m1, ...`.
    pub fn target_simple_matchings(&self) -> &MatchingFamily {
        &self.target_simple
    }

    /// Labeling of source arrows by `τ∘ψ`: contracted arrows get degree zero.
    pub fn tau_psi_labeler(&self) -> Labeler {
        let target_degrees = self.target_simple.arrow_degrees(self.target.arrow_count());
        let dim = self.target_simple.len();
        let degrees = self
            .arrow_map
            .iter()
            .map(|m| match m {
                Some(b) => target_degrees[b.0].clone(),
                None => vec![0; dim],
            })
            .collect();
        Labeler::from_arrow_degrees(degrees, dim)
    }
}

pub fn psi_path(m: &ContractionMap, p: &Path) -> Result<Path> {
    m.source.check_path(p)?;
    let arrows = p.arrows().iter().filter_map(|&a| m.arrow_map[a.0]).collect();
    Path::new(&m.target, m.map_vertex(p.tail()), arrows)
}

/// `ψ^{-1}(D')`, checked to be perfect in the source.
pub fn pullback_matching(m: &ContractionMap, d: &PerfectMatching) -> Result<PerfectMatching> {
    if !is_perfect_matching(&m.target, d) {
        return Err(Error::NotPerfectMatching(d.display(&m.target)));
    }
    let pre = PerfectMatching::from_arrows(
        m.source
            .arrow_ids()
            .filter(|&a| m.arrow_map[a.0].is_some_and(|b| d.contains(b))),
    );
    if !is_perfect_matching(&m.source, &pre) {
        return Err(Error::Inconsistent(format!(
            "preimage {} of {} is not a perfect matching",
            pre.display(&m.source),
            d.display(&m.target)
        )));
    }
    Ok(pre)
}

/// `ψ(D)` when it is a perfect matching of the target.
pub fn push_matching(m: &ContractionMap, d: &PerfectMatching) -> Result<Option<PerfectMatching>> {
    if !is_perfect_matching(&m.source, d) {
        return Err(Error::NotPerfectMatching(d.display(&m.source)));
    }
    let image = PerfectMatching::from_arrows(d.arrows().iter().filter_map(|&a| m.arrow_map[a.0]));
    Ok(is_perfect_matching(&m.target, &image).then_some(image))
}

/// Source matchings whose image is a simple matching of the target, named
/// after that simple matching.
pub fn p_zero(m: &ContractionMap) -> Result<MatchingFamily> {
    let mut members = Vec::new();
    for d in crate::matchings::enumerate_perfect_matchings(&m.source).matchings() {
        if let Some(image) = push_matching(m, d)? {
            if let Some(k) = m.target_simple.index_of(&image) {
                members.push((k, d.clone()));
            }
        }
    }
    members.sort();
    let names = members
        .iter()
        .map(|(k, _)| m.target_simple.name(*k).to_string())
        .collect();
    MatchingFamily::new(members.into_iter().map(|(_, d)| d).collect(), names)
}

/// `P_0` against the pullbacks of the target's simple matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PZeroComparison {
    pub p_zero: MatchingFamily,
    pub pullbacks: MatchingFamily,
    pub only_in_p_zero: Vec<PerfectMatching>,
    pub only_in_pullbacks: Vec<PerfectMatching>,
}

impl PZeroComparison {
    pub fn agrees(&self) -> bool {
        self.only_in_p_zero.is_empty() && self.only_in_pullbacks.is_empty()
    }
}

pub fn compare_p_zero(m: &ContractionMap) -> Result<PZeroComparison> {
    let pz = p_zero(m)?;
    let pulled = m
        .target_simple
        .matchings()
        .iter()
        .map(|d| pullback_matching(m, d))
        .collect::<Result<Vec<_>>>()?;
    let pullbacks = MatchingFamily::new(pulled, m.target_simple.names().to_vec())?;
    let a: BTreeSet<&PerfectMatching> = pz.matchings().iter().collect();
    let b: BTreeSet<&PerfectMatching> = pullbacks.matchings().iter().collect();
    Ok(PZeroComparison {
        only_in_p_zero: a.difference(&b).map(|d| (*d).clone()).collect(),
        only_in_pullbacks: b.difference(&a).map(|d| (*d).clone()).collect(),
        p_zero: pz,
        pullbacks,
    })
}

/// `τ(ψ(p))` over the target's simple matchings.
pub fn tau_psi_label(m: &ContractionMap, p: &Path) -> Result<PathLabel> {
    let image = psi_path(m, p)?;
    Labeler::new(&m.target, &m.target_simple).label(&m.target, &image)
}

/// Repeatedly deletes removable 2-cycles, merging the two faces beside each.
pub fn reduce_removable_two_cycles(q: &DimerQuiver) -> Result<DimerQuiver> {
    let mut q = q.clone();
    loop {
        let Some(digon) = classify_two_cycles(&q)
            .into_iter()
            .find(|(_, kind)| *kind == TwoCycleKind::Removable)
            .map(|(f, _)| f)
        else {
            return Ok(q);
        };
        let (a, b) = (q.face(digon).arrows[0], q.face(digon).arrows[1]);
        let (fa, rest_a) = complementary_rest(&q, a, digon)
            .ok_or_else(|| Error::Inconsistent(format!("arrow {} lies in one face", q.arrow_name(a))))?;
        let (fb, rest_b) = complementary_rest(&q, b, digon)
            .ok_or_else(|| Error::Inconsistent(format!("arrow {} lies in one face", q.arrow_name(b))))?;
        let mut merged = rest_a;
        merged.extend(rest_b);
        let orientation = q.face(fa).orientation;
        let renumber = |x: ArrowId| ArrowId(x.0 - usize::from(x.0 > a.0) - usize::from(x.0 > b.0));
        let arrows: Vec<Arrow> = q
            .arrow_ids()
            .filter(|&x| x != a && x != b)
            .map(|x| q.arrow(x).clone())
            .collect();
        let mut faces = Vec::new();
        for (fi, face) in q.faces().iter().enumerate() {
            if fi == digon || fi == fb {
                continue;
            }
            let list = if fi == fa { &merged } else { &face.arrows };
            faces.push(Face::new(
                if fi == fa { orientation } else { face.orientation },
                list.iter().map(|&x| renumber(x)).collect(),
            ));
        }
        let next = DimerQuiver::new(q.vertex_count(), arrows, faces, q.layout().map(|l| l.to_vec()));
        let report = validate(&next);
        if !report.is_valid() {
            return Err(Error::InvalidTarget(report));
        }
        q = next;
    }
}

#[derive(Clone, Debug)]
pub struct CyclicReport {
    pub bounds: Bounds,
    pub target_cancellative: bool,
    pub source: CornerSummary,
    pub target: CornerSummary,
    /// Smallest monomial lying in exactly one of the two cycle algebras.
    pub discrepancy: Option<ExponentVector>,
    /// Enumerated-cycle cross-checks, source vertices then target vertices.
    pub cross_checks: Vec<CrossCheck>,
}

impl CyclicReport {
    pub fn is_cyclic(&self) -> bool {
        self.target_cancellative && self.discrepancy.is_none()
    }

    pub fn saturated(&self) -> bool {
        self.cross_checks.iter().all(CrossCheck::saturated)
    }
}

/// Cycle algebra of the contraction: labels `τ∘ψ` of source cycles.
pub fn source_corners(m: &ContractionMap, bounds: &Bounds) -> Result<CornerSummary> {
    corner_summary(&m.source, &m.tau_psi_labeler(), bounds)
}

/// The same computation inside the target, with `τ`.
pub fn target_corners(m: &ContractionMap, bounds: &Bounds) -> Result<CornerSummary> {
    corner_summary(&m.target, &Labeler::new(&m.target, &m.target_simple), bounds)
}

/// Decides, up to `bounds.degree_bound`, whether the contraction is cyclic:
/// the target is cancellative and both sides have the same cycle algebra.
///
/// With `cross_check` set, each corner is also compared with the monoid
/// generated by the enumerated cycles within `bounds.box_size` and
/// `bounds.max_len`.
pub fn is_cyclic(m: &ContractionMap, bounds: &Bounds, cross_check: bool) -> Result<CyclicReport> {
    let target_cancellative = is_cancellative(&m.target).cancellative;
    let source = source_corners(m, bounds)?;
    let target = target_corners(m, bounds)?;
    let discrepancy = equal_up_to_degree(&source.cycle_algebra, &target.cycle_algebra, bounds.degree_bound)?;
    let mut cross_checks = Vec::new();
    if cross_check {
        let sl = m.tau_psi_labeler();
        for c in &source.corners {
            cross_checks.push(cross_check_corner(&m.source, &sl, c, bounds)?);
        }
        let tl = Labeler::new(&m.target, &m.target_simple);
        for c in &target.corners {
            cross_checks.push(cross_check_corner(&m.target, &tl, c, bounds)?);
        }
    }
    Ok(CyclicReport {
        bounds: *bounds,
        target_cancellative,
        source,
        target,
        discrepancy,
        cross_checks,
    })
}

/// A vertex bijection and arrow bijection carrying `a` onto `b`, preserving
/// endpoints, offsets up to a vertex re-gauging, and oriented faces.
pub fn isomorphic(a: &DimerQuiver, b: &DimerQuiver) -> bool {
    if a.vertex_count() != b.vertex_count() || a.arrow_count() != b.arrow_count() || a.face_count() != b.face_count() {
        return false;
    }
    // Faces as cyclic sequences determine everything once a starting arrow
    // correspondence is fixed; try every image of arrow 0 and propagate.
    let na = a.arrow_count();
    if na == 0 {
        return a.vertex_count() == b.vertex_count();
    }
    (0..na).any(|img| propagate(a, b, ArrowId(0), ArrowId(img)))
}

fn propagate(a: &DimerQuiver, b: &DimerQuiver, a0: ArrowId, b0: ArrowId) -> bool {
    let mut amap: Vec<Option<ArrowId>> = vec![None; a.arrow_count()];
    let mut used = vec![false; b.arrow_count()];
    let mut queue = VecDeque::from([(a0, b0)]);
    while let Some((x, y)) = queue.pop_front() {
        match amap[x.0] {
            Some(z) if z == y => continue,
            Some(_) => return false,
            None => {}
        }
        if used[y.0] {
            return false;
        }
        amap[x.0] = Some(y);
        used[y.0] = true;
        for sx in a.slots(x) {
            let o = a.face(sx.face).orientation;
            let Some(sy) = b.slot_with_orientation(y, o) else {
                return false;
            };
            let (fx, fy) = (a.face(sx.face), b.face(sy.face));
            if fx.len() != fy.len() {
                return false;
            }
            for (u, v) in fx.rotation(sx.position).zip(fy.rotation(sy.position)) {
                queue.push_back((u, v));
            }
        }
    }
    if amap.iter().any(Option::is_none) {
        return false;
    }
    let amap: Vec<ArrowId> = amap.into_iter().flatten().collect();
    // vertex map induced by tails and heads must be a well-defined bijection
    let mut vmap: Vec<Option<VertexId>> = vec![None; a.vertex_count()];
    for x in a.arrow_ids() {
        let y = amap[x.0];
        for (u, v) in [(a.tail(x), b.tail(y)), (a.head(x), b.head(y))] {
            match vmap[u.0] {
                Some(w) if w != v => return false,
                _ => vmap[u.0] = Some(v),
            }
        }
    }
    let mut image: Vec<VertexId> = vmap.iter().flatten().copied().collect();
    image.sort();
    image.dedup();
    if image.len() != b.vertex_count() {
        return false;
    }
    // face cycles carry the same homology on both sides; cycle classes agree
    // iff the offset differences are a coboundary
    let mut pot: Vec<Option<Homology>> = vec![None; a.vertex_count()];
    pot[0] = Some(Homology::ZERO);
    let mut changed = true;
    while changed {
        changed = false;
        for x in a.arrow_ids() {
            let y = amap[x.0];
            let diff = b.offset(y) - a.offset(x);
            let (t, h) = (a.tail(x).0, a.head(x).0);
            match (pot[t], pot[h]) {
                (Some(pt), None) => {
                    pot[h] = Some(pt + diff);
                    changed = true;
                }
                (None, Some(ph)) => {
                    pot[t] = Some(ph - diff);
                    changed = true;
                }
                (Some(pt), Some(ph)) if ph - pt != diff => return false,
                _ => {}
            }
        }
    }
    true
}
