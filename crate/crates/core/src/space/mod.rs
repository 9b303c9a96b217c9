//! L-sets and L-topological spaces over a shared finite frame.

mod construct;
mod map;

pub use construct::{
    evaluation_embedding, find_homeomorphism, initial_topology, is_t0, power_of_sierpinski,
    product_space, quotient_opens_by_filter, quotient_opens_by_pushforward, quotient_space,
    sierpinski_space, subspace, t0_reflection, Evaluation, Product, HOMEOMORPHISM_SEARCH_MAX,
};
pub use map::{map_predicate, Check, MapKind, MapWitness, StructuredMap};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::frame::{generate, Elem, Frame, Lattice};
use crate::limits::Limits;

/// A function from a finite point set into a frame, stored by point index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LSet(Vec<Elem>);

impl LSet {
    pub fn new(values: Vec<Elem>) -> Self {
        LSet(values)
    }

    pub fn constant(width: usize, value: Elem) -> Self {
        LSet(vec![value; width])
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn at(&self, point: usize) -> Elem {
        self.0[point]
    }

    pub fn meet(&self, other: &LSet, frame: &Frame) -> LSet {
        LSet(self.0.iter().zip(&other.0).map(|(&a, &b)| frame.meet(a, b)).collect())
    }

    pub fn join(&self, other: &LSet, frame: &Frame) -> LSet {
        LSet(self.0.iter().zip(&other.0).map(|(&a, &b)| frame.join(a, b)).collect())
    }

    pub fn leq(&self, other: &LSet, frame: &Frame) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| frame.leq(a, b))
    }

    /// `self ∘ mapping`.
    pub fn preimage(&self, mapping: &[usize]) -> LSet {
        preimage_lset(mapping, self)
    }

    /// Restriction to the listed points, in the listed order.
    pub fn restrict(&self, keep: &[usize]) -> LSet {
        LSet(keep.iter().map(|&p| self.0[p]).collect())
    }

    pub fn into_values(self) -> Vec<Elem> {
        self.0
    }

    /// Renders with element labels, e.g. `(0, m, 1)`.
    pub fn render(&self, frame: &Frame) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&e| frame.label(e)).collect();
        format!("({})", parts.join(", "))
    }
}

/// `ν ∘ f`: the pullback of an L-set along a point function.
pub fn preimage_lset(mapping: &[usize], nu: &LSet) -> LSet {
    LSet(mapping.iter().map(|&y| nu.0[y]).collect())
}

/// `f→(μ)(y) = ∨{μ(x) | f(x) = y}`, with empty fibers sent to 0.
pub fn image_lset(frame: &Frame, mapping: &[usize], target_width: usize, mu: &LSet) -> LSet {
    let mut out = vec![frame.bottom(); target_width];
    for (x, &y) in mapping.iter().enumerate() {
        out[y] = frame.join(out[y], mu.0[x]);
    }
    LSet(out)
}

/// The frame `L^X` of all L-sets of a fixed width, ordered pointwise.
#[derive(Debug, Clone, Copy)]
pub struct PowerFrame<'a> {
    pub frame: &'a Frame,
    pub width: usize,
}

impl Lattice for PowerFrame<'_> {
    type Elt = LSet;

    fn bottom(&self) -> LSet {
        LSet::constant(self.width, self.frame.bottom())
    }
    fn top(&self) -> LSet {
        LSet::constant(self.width, self.frame.top())
    }
    fn meet(&self, a: &LSet, b: &LSet) -> LSet {
        a.meet(b, self.frame)
    }
    fn join(&self, a: &LSet, b: &LSet) -> LSet {
        a.join(b, self.frame)
    }
    fn leq(&self, a: &LSet, b: &LSet) -> bool {
        a.leq(b, self.frame)
    }
}

/// The first way a family of L-sets fails to be an L-topology.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyViolation {
    #[error("open #{index} has {width} values, expected {expected}")]
    WrongWidth { index: usize, width: usize, expected: usize },
    #[error("open #{index} has value #{value} at point #{point}, not an element of the frame")]
    BadValue { index: usize, point: usize, value: Elem },
    #[error("missing constant bottom {0}")]
    MissingBottom(String),
    #[error("missing meet {left} ∧ {right} = {result}")]
    MissingMeet { left: String, right: String, result: String },
    #[error("missing join {left} ∨ {right} = {result}")]
    MissingJoin { left: String, right: String, result: String },
    #[error("missing constant top {0}")]
    MissingTop(String),
}

/// Checks that `candidates` is a subframe of `L^X` for `|X| = width`.
///
/// In a finite setting closure under arbitrary joins reduces to containing
/// bottom and closure under binary joins.
pub fn is_ltopology(frame: &Frame, width: usize, candidates: &[LSet]) -> std::result::Result<(), TopologyViolation> {
    for (index, c) in candidates.iter().enumerate() {
        if c.width() != width {
            return Err(TopologyViolation::WrongWidth { index, width: c.width(), expected: width });
        }
        if let Some((point, &value)) = c.values().iter().enumerate().find(|(_, &v)| v >= frame.len()) {
            return Err(TopologyViolation::BadValue { index, point, value });
        }
    }
    let set: BTreeSet<&LSet> = candidates.iter().collect();
    let bottom = LSet::constant(width, frame.bottom());
    if !set.contains(&bottom) {
        return Err(TopologyViolation::MissingBottom(bottom.render(frame)));
    }
    for a in &set {
        for b in &set {
            let m = a.meet(b, frame);
            if !set.contains(&m) {
                return Err(TopologyViolation::MissingMeet {
                    left: a.render(frame),
                    right: b.render(frame),
                    result: m.render(frame),
                });
            }
        }
    }
    for a in &set {
        for b in &set {
            let j = a.join(b, frame);
            if !set.contains(&j) {
                return Err(TopologyViolation::MissingJoin {
                    left: a.render(frame),
                    right: b.render(frame),
                    result: j.render(frame),
                });
            }
        }
    }
    let top = LSet::constant(width, frame.top());
    if !set.contains(&top) {
        return Err(TopologyViolation::MissingTop(top.render(frame)));
    }
    Ok(())
}

/// All L-sets of the given width in lexicographic order.
pub fn all_lsets(frame: &Frame, width: usize, limits: &Limits) -> Result<Vec<LSet>> {
    limits.check_maps("L-set space |L|^|X|", frame.len(), width)?;
    Ok(point_functions(width, frame.len()).map(LSet).collect())
}

/// Every function `{0..domain} → {0..codomain}` as a table, in lexicographic
/// order with the first point most significant.
pub fn point_functions(domain: usize, codomain: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if domain == 0 || codomain > 0 { Some(vec![0; domain]) } else { None };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = domain;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < codomain {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    })
}

/// A finite L-topological space. Opens are kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    frame: Arc<Frame>,
    points: Vec<String>,
    opens: Vec<LSet>,
}

impl Space {
    /// Validates `opens` as an L-topology on the labelled points.
    pub fn new(frame: Arc<Frame>, points: Vec<String>, opens: Vec<LSet>) -> Result<Space> {
        check_labels(&points)?;
        let mut opens = opens;
        opens.sort();
        opens.dedup();
        is_ltopology(&frame, points.len(), &opens)?;
        Ok(Space { frame, points, opens })
    }

    /// The L-topology `⟨generators⟩`.
    pub fn generated(frame: Arc<Frame>, points: Vec<String>, generators: Vec<LSet>) -> Result<Space> {
        check_labels(&points)?;
        let width = points.len();
        for (index, g) in generators.iter().enumerate() {
            if g.width() != width {
                return Err(TopologyViolation::WrongWidth { index, width: g.width(), expected: width }.into());
            }
            if let Some((point, &value)) = g.values().iter().enumerate().find(|(_, &v)| v >= frame.len()) {
                return Err(TopologyViolation::BadValue { index, point, value }.into());
            }
        }
        let opens: Vec<LSet> = generate(&PowerFrame { frame: &frame, width }, generators).into_iter().collect();
        Ok(Space { frame, points, opens })
    }

    /// `{0̄, 1̄}`.
    pub fn indiscrete(frame: Arc<Frame>, points: Vec<String>) -> Result<Space> {
        Space::generated(frame, points, Vec::new())
    }

    /// Every L-set is open.
    pub fn discrete(frame: Arc<Frame>, points: Vec<String>, limits: &Limits) -> Result<Space> {
        check_labels(&points)?;
        let opens = all_lsets(&frame, points.len(), limits)?;
        Ok(Space { frame, points, opens })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_label(&self, p: usize) -> &str {
        &self.points[p]
    }

    pub fn point(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn opens(&self) -> &[LSet] {
        &self.opens
    }

    pub fn open_index(&self, lset: &LSet) -> Option<usize> {
        self.opens.binary_search(lset).ok()
    }

    pub fn is_open(&self, lset: &LSet) -> bool {
        self.open_index(lset).is_some()
    }

    pub fn bottom(&self) -> LSet {
        LSet::constant(self.len(), self.frame.bottom())
    }

    pub fn top(&self) -> LSet {
        LSet::constant(self.len(), self.frame.top())
    }

    pub fn power_frame(&self) -> PowerFrame<'_> {
        PowerFrame { frame: &self.frame, width: self.len() }
    }

    pub fn render_lset(&self, lset: &LSet) -> String {
        lset.render(&self.frame)
    }

    pub fn render_points(&self, points: &[usize]) -> String {
        let labels: Vec<&str> = points.iter().map(|&p| self.point_label(p)).collect();
        format!("{{{}}}", labels.join(", "))
    }

    /// The topology `τ` as a frame under the pointwise order, element `i`
    /// being `opens()[i]`.
    pub fn open_frame(&self) -> Frame {
        let labels: Vec<String> = self.opens.iter().map(|o| self.render_lset(o)).collect();
        Frame::from_order(&labels, |i, j| self.opens[i].leq(&self.opens[j], &self.frame))
            .expect("an L-topology is a frame under the pointwise order")
    }

    pub(crate) fn from_sorted(frame: Arc<Frame>, points: Vec<String>, opens: Vec<LSet>) -> Space {
        debug_assert!(opens.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(is_ltopology(&frame, points.len(), &opens).is_ok());
        Space { frame, points, opens }
    }
}

fn check_labels(points: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(p.as_str()) {
            return Err(Error::DuplicatePoint(p.clone()));
        }
    }
    Ok(())
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} points, {} opens over {}", self.len(), self.opens.len(), self.frame)
    }
}
