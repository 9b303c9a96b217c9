//! Finite frames.
//!
//! A finite lattice is complete, and a finite distributive lattice satisfies
//! the infinite distributive law, so a finite frame is exactly a finite
//! distributive lattice. Elements are addressed by index; labels exist only
//! for input and output.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Index of an element in a [`Frame`] carrier.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("frame carrier is empty")]
    Empty,
    #[error("order matrix row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("`{0}` and `{1}` have no meet")]
    MissingMeet(String, String),
    #[error("`{0}` and `{1}` have no join")]
    MissingJoin(String, String),
    #[error(
        "distributivity fails at ({0}, {1}, {2}): {0}∧({1}∨{2}) = {3} but ({0}∧{1})∨({0}∧{2}) = {4}"
    )]
    NotDistributive(String, String, String, String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
}

impl FrameError {
    /// The witnessing tuple of a distributivity failure, as labels.
    pub fn distributivity_witness(&self) -> Option<(&str, &str, &str)> {
        match self {
            FrameError::NotDistributive(a, b, c, _, _) => Some((a, b, c)),
            _ => None,
        }
    }
}

/// Bounded lattice operations on some carrier.
///
/// Implemented by [`Frame`] on element indices and by [`PowerFrame`] on
/// L-sets, so subframe generation runs unchanged on both.
pub trait Lattice {
    type Elt: Clone + Ord;

    fn bottom(&self) -> Self::Elt;
    fn top(&self) -> Self::Elt;
    fn meet(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn join(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;

    fn leq(&self, a: &Self::Elt, b: &Self::Elt) -> bool {
        self.meet(a, b) == *a
    }
}

/// A validated finite frame with derived meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Frame {
    /// Validates a carrier and order matrix, deriving meets and joins.
    ///
    /// Axioms are checked in order (poset, meets, joins, distributivity)
    /// and the first violation is reported with a witness. Triples are
    /// scanned in lexicographic index order.
    pub fn validate(labels: Vec<String>, leq: Vec<Vec<bool>>) -> std::result::Result<Frame, FrameError> {
        let n = labels.len();
        if n == 0 {
            return Err(FrameError::Empty);
        }
        if leq.len() != n {
            return Err(FrameError::NotSquare { row: leq.len().min(n), len: leq.len(), expected: n });
        }
        for (row, r) in leq.iter().enumerate() {
            if r.len() != n {
                return Err(FrameError::NotSquare { row, len: r.len(), expected: n });
            }
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(FrameError::DuplicateLabel(l.clone()));
            }
        }
        let lab = |i: usize| labels[i].clone();

        for i in 0..n {
            if !leq[i][i] {
                return Err(FrameError::NotReflexive(lab(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(FrameError::NotAntisymmetric(lab(i), lab(j)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        return Err(FrameError::NotTransitive(lab(i), lab(j), lab(k)));
                    }
                }
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
                match lower.iter().find(|&&k| lower.iter().all(|&l| leq[l][k])) {
                    Some(&m) => meet[i * n + j] = m,
                    None => return Err(FrameError::MissingMeet(lab(i), lab(j))),
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let upper: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
                match upper.iter().find(|&&k| upper.iter().all(|&u| leq[k][u])) {
                    Some(&m) => join[i * n + j] = m,
                    None => return Err(FrameError::MissingJoin(lab(i), lab(j))),
                }
            }
        }

        let bottom = (0..n).fold(0, |acc, i| meet[acc * n + i]);
        let top = (0..n).fold(0, |acc, i| join[acc * n + i]);

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet[a * n + join[b * n + c]];
                    let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                    if lhs != rhs {
                        return Err(FrameError::NotDistributive(
                            lab(a),
                            lab(b),
                            lab(c),
                            lab(lhs),
                            lab(rhs),
                        ));
                    }
                }
            }
        }

        Ok(Frame {
            labels,
            leq: leq.into_iter().flatten().collect(),
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Builds a frame from labels and an order predicate on indices.
    pub fn from_order<S, F>(labels: &[S], leq: F) -> std::result::Result<Frame, FrameError>
    where
        S: AsRef<str>,
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let matrix = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        Frame::validate(labels.iter().map(|s| s.as_ref().to_string()).collect(), matrix)
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> std::result::Result<Frame, FrameError> {
        Frame::from_order(labels, |i, j| i <= j)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn element(&self, label: &str) -> std::result::Result<Elem, FrameError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FrameError::UnknownElement(label.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    /// `∧S`, with the empty meet equal to top.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// `∨S`, with the empty join equal to bottom.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    /// n-ary meet or join of a set of element ids, checking membership.
    pub fn fold(&self, kind: LatticeOp, items: &[Elem]) -> Result<Elem> {
        if let Some(&bad) = items.iter().find(|&&e| e >= self.len()) {
            return Err(Error::Frame(FrameError::UnknownElement(format!("#{bad}"))));
        }
        Ok(match kind {
            LatticeOp::Meet => self.meet_all(items.iter().copied()),
            LatticeOp::Join => self.join_all(items.iter().copied()),
        })
    }

    /// Order matrix as nested rows, the form used by frame documents.
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|i| self.leq[i * n..(i + 1) * n].to_vec()).collect()
    }

    /// Elements in an order that lists every element after everything below it.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&x| (self.elements().filter(|&y| self.leq(y, x)).count(), x));
        order
    }
}

impl Lattice for Frame {
    type Elt = Elem;

    fn bottom(&self) -> Elem {
        self.bottom
    }
    fn top(&self) -> Elem {
        self.top
    }
    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        Frame::meet(self, *a, *b)
    }
    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        Frame::join(self, *a, *b)
    }
    fn leq(&self, a: &Elem, b: &Elem) -> bool {
        Frame::leq(self, *a, *b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
}

/// A map between frames, stored as its table over source element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrameMap(Vec<Elem>);

impl FrameMap {
    pub fn new(table: Vec<Elem>) -> Self {
        FrameMap(table)
    }

    pub fn identity(frame: &Frame) -> Self {
        FrameMap(frame.elements().collect())
    }

    pub fn table(&self) -> &[Elem] {
        &self.0
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.0[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FrameMap) -> FrameMap {
        FrameMap(self.0.iter().map(|&b| other.apply(b)).collect())
    }
}

/// The first law a candidate frame map breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameMapViolation {
    #[error("table has {len} entries, source has {expected} elements")]
    WrongLength { len: usize, expected: usize },
    #[error("value #{value} at source element #{at} is not a target element")]
    OutOfRange { at: Elem, value: Elem },
    #[error("bottom is sent to #{0}, not bottom")]
    Bottom(Elem),
    #[error("top is sent to #{0}, not top")]
    Top(Elem),
    #[error("meet of #{0} and #{1} is not preserved")]
    Meet(Elem, Elem),
    #[error("join of #{0} and #{1} is not preserved")]
    Join(Elem, Elem),
}

/// Checks that `table` is a frame map `source → target`.
pub fn is_frame_map(table: &[Elem], source: &Frame, target: &Frame) -> std::result::Result<(), FrameMapViolation> {
    if table.len() != source.len() {
        return Err(FrameMapViolation::WrongLength { len: table.len(), expected: source.len() });
    }
    if let Some((at, &value)) = table.iter().enumerate().find(|(_, &v)| v >= target.len()) {
        return Err(FrameMapViolation::OutOfRange { at, value });
    }
    if table[source.bottom()] != target.bottom() {
        return Err(FrameMapViolation::Bottom(table[source.bottom()]));
    }
    if table[source.top()] != target.top() {
        return Err(FrameMapViolation::Top(table[source.top()]));
    }
    for a in source.elements() {
        for b in source.elements() {
            if table[source.meet(a, b)] != target.meet(table[a], table[b]) {
                return Err(FrameMapViolation::Meet(a, b));
            }
        }
    }
    for a in source.elements() {
        for b in source.elements() {
            if table[source.join(a, b)] != target.join(table[a], table[b]) {
                return Err(FrameMapViolation::Join(a, b));
            }
        }
    }
    Ok(())
}

/// All frame maps `source → target`, sorted by table.
///
/// Backtracks along a linear extension of the source. Bottom and top are
/// pinned, candidates must respect the order against assigned elements, and
/// each meet or join whose operands are both assigned is checked as soon as
/// its result is assigned. Every candidate value tried counts against
/// `limits.max_nodes`.
pub fn enumerate_frame_maps(source: &Frame, target: &Frame, limits: &Limits) -> Result<Vec<FrameMap>> {
    let order = source.linear_extension();
    let n = source.len();
    // For each element, the unordered pairs whose join is that element.
    let mut join_pairs: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in (a + 1)..n {
            let j = source.join(a, b);
            if j != a && j != b {
                join_pairs[j].push((a, b));
            }
        }
    }

    struct Search<'a> {
        source: &'a Frame,
        target: &'a Frame,
        order: Vec<Elem>,
        join_pairs: Vec<Vec<(Elem, Elem)>>,
        table: Vec<Option<Elem>>,
        nodes: u64,
        max_nodes: u64,
        found: Vec<FrameMap>,
    }

    impl Search<'_> {
        fn consistent(&self, x: Elem, v: Elem) -> bool {
            let (s, t) = (self.source, self.target);
            for y in s.elements() {
                let Some(fy) = self.table[y] else { continue };
                if s.leq(y, x) && !t.leq(fy, v) {
                    return false;
                }
                if s.leq(x, y) && !t.leq(v, fy) {
                    return false;
                }
                // The meet lies below x, so it is already assigned.
                let m = s.meet(x, y);
                let fm = if m == x { Some(v) } else { self.table[m] };
                if fm != Some(t.meet(v, fy)) {
                    return false;
                }
                let j = s.join(x, y);
                if j == x && v != t.join(v, fy) {
                    return false;
                }
            }
            self.join_pairs[x].iter().all(|&(a, b)| match (self.table[a], self.table[b]) {
                (Some(fa), Some(fb)) => t.join(fa, fb) == v,
                _ => true,
            })
        }

        fn run(&mut self, depth: usize) -> Result<()> {
            if depth == self.order.len() {
                let table: Vec<Elem> = self.table.iter().map(|v| v.expect("assigned")).collect();
                debug_assert!(is_frame_map(&table, self.source, self.target).is_ok());
                self.found.push(FrameMap(table));
                return Ok(());
            }
            let x = self.order[depth];
            let candidates: Vec<Elem> = if x == self.source.bottom() && x == self.source.top() {
                let (b, t) = (self.target.bottom(), self.target.top());
                if b == t { vec![b] } else { Vec::new() }
            } else if x == self.source.bottom() {
                vec![self.target.bottom()]
            } else if x == self.source.top() {
                vec![self.target.top()]
            } else {
                self.target.elements().collect()
            };
            for v in candidates {
                self.nodes += 1;
                if self.nodes > self.max_nodes {
                    return Err(Error::CapExceeded {
                        what: "frame-map search nodes",
                        needed: self.nodes as u128,
                        limit: self.max_nodes as u128,
                    });
                }
                if self.consistent(x, v) {
                    self.table[x] = Some(v);
                    self.run(depth + 1)?;
                    self.table[x] = None;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        source,
        target,
        order,
        join_pairs,
        table: vec![None; n],
        nodes: 0,
        max_nodes: limits.max_nodes,
        found: Vec::new(),
    };
    search.run(0)?;
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// A subset of a frame closed under its finite meets and finite joins,
/// including the empty ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubframeSubset {
    members: Vec<Elem>,
}

impl SubframeSubset {
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    /// Checks the subframe conditions for an arbitrary subset.
    pub fn check(frame: &Frame, members: &[Elem]) -> bool {
        let set: BTreeSet<Elem> = members.iter().copied().collect();
        set.contains(&frame.bottom())
            && set.contains(&frame.top())
            && set.iter().all(|&a| {
                set.iter()
                    .all(|&b| set.contains(&frame.meet(a, b)) && set.contains(&frame.join(a, b)))
            })
    }
}

/// `⟨ζ⟩` in a frame: all joins of finite meets of the generators.
pub fn generate_subframe(frame: &Frame, generators: &[Elem]) -> SubframeSubset {
    SubframeSubset { members: generate(frame, generators.iter().copied()).into_iter().collect() }
}

/// Joins of finite meets of `generators`, both including the empty case.
///
/// In a distributive lattice the join-closure of a meet-closed set is
/// again meet-closed, so two closure passes suffice.
pub fn generate<L: Lattice>(lattice: &L, generators: impl IntoIterator<Item = L::Elt>) -> BTreeSet<L::Elt> {
    let mut seeds: Vec<L::Elt> = generators.into_iter().collect();
    seeds.push(lattice.top());
    let meets = close_under(seeds, |a, b| lattice.meet(a, b));
    let mut seeds: Vec<L::Elt> = meets.into_iter().collect();
    seeds.push(lattice.bottom());
    close_under(seeds, |a, b| lattice.join(a, b))
}

fn close_under<T: Clone + Ord>(seeds: Vec<T>, op: impl Fn(&T, &T) -> T) -> BTreeSet<T> {
    let mut set: BTreeSet<T> = BTreeSet::new();
    let mut all: Vec<T> = Vec::new();
    let mut pending: Vec<T> = Vec::new();
    for s in seeds {
        if set.insert(s.clone()) {
            pending.push(s);
        }
    }
    while let Some(next) = pending.pop() {
        for other in all.iter().chain(std::iter::once(&next)) {
            let r = op(&next, other);
            if set.insert(r.clone()) {
                pending.push(r);
            }
        }
        all.push(next);
    }
    set
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{d4, f2, f3, n5_labels_and_order};

    #[test]
    fn accepts_small_frames() {
        assert_eq!(f2().len(), 2);
        assert_eq!(f3().len(), 3);
        let d = d4();
        assert_eq!(d.label(d.bottom()), "0");
        assert_eq!(d.label(d.top()), "1");
    }

    #[test]
    fn rejects_pentagon_with_witness() {
        let (labels, leq) = n5_labels_and_order();
        let err = Frame::validate(labels, leq).unwrap_err();
        assert_eq!(err.distributivity_witness(), Some(("c", "a", "b")));
        match err {
            FrameError::NotDistributive(_, _, _, lhs, rhs) => {
                assert_eq!(lhs, "c");
                assert_eq!(rhs, "a");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_posets() {
        let l = vec!["x".to_string(), "y".to_string()];
        assert_eq!(
            Frame::validate(l.clone(), vec![vec![true, true], vec![true, true]]),
            Err(FrameError::NotAntisymmetric("x".into(), "y".into()))
        );
        assert_eq!(
            Frame::validate(l.clone(), vec![vec![false, true], vec![false, true]]),
            Err(FrameError::NotReflexive("x".into()))
        );
        // Two incomparable elements: no meet.
        assert_eq!(
            Frame::validate(l.clone(), vec![vec![true, false], vec![false, true]]),
            Err(FrameError::MissingMeet("x".into(), "y".into()))
        );
        assert!(matches!(
            Frame::validate(l, vec![vec![true, true]]),
            Err(FrameError::NotSquare { .. })
        ));
        assert_eq!(Frame::validate(vec![], vec![]), Err(FrameError::Empty));
    }

    #[test]
    fn rejects_intransitive_order() {
        let l: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let leq = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(
            Frame::validate(l, leq),
            Err(FrameError::NotTransitive("a".into(), "b".into(), "c".into()))
        );
    }

    #[test]
    fn nary_folds() {
        let f = f2();
        assert_eq!(f.fold(LatticeOp::Join, &[]).unwrap(), f.bottom());
        assert_eq!(f.fold(LatticeOp::Meet, &[]).unwrap(), f.top());
        let d = d4();
        let a = d.element("a").unwrap();
        let b = d.element("b").unwrap();
        assert_eq!(d.fold(LatticeOp::Meet, &[a, b]).unwrap(), d.bottom());
        assert_eq!(d.fold(LatticeOp::Join, &[a, b]).unwrap(), d.top());
        assert!(d.fold(LatticeOp::Join, &[7]).is_err());
    }

    #[test]
    fn frame_map_checks() {
        let f = f3();
        assert!(is_frame_map(&FrameMap::identity(&f).0, &f, &f).is_ok());
        let two = f2();
        let m = f.element("m").unwrap();
        let mut t = vec![0; 3];
        t[f.bottom()] = two.bottom();
        t[m] = two.bottom();
        t[f.top()] = two.top();
        assert!(is_frame_map(&t, &f, &two).is_ok());

        let d = d4();
        let mut t = vec![0; 4];
        t[d.bottom()] = two.bottom();
        t[d.top()] = two.top();
        t[d.element("a").unwrap()] = two.top();
        t[d.element("b").unwrap()] = two.top();
        let (a, b) = (d.element("a").unwrap(), d.element("b").unwrap());
        let v = is_frame_map(&t, &d, &two).unwrap_err();
        assert!(v == FrameMapViolation::Meet(a, b) || v == FrameMapViolation::Meet(b, a));
        assert!(matches!(is_frame_map(&[0], &d, &two), Err(FrameMapViolation::WrongLength { .. })));
    }

    #[test]
    fn enumerates_small_hom_sets() {
        let lim = Limits::default();
        let two = f2();
        assert_eq!(enumerate_frame_maps(&two, &two, &lim).unwrap(), vec![FrameMap::identity(&two)]);
        let three = f3();
        let maps = enumerate_frame_maps(&three, &three, &lim).unwrap();
        assert_eq!(maps.len(), 3);
        let m = three.element("m").unwrap();
        let images: BTreeSet<Elem> = maps.iter().map(|p| p.apply(m)).collect();
        assert_eq!(images.len(), 3);
        let d = d4();
        let maps = enumerate_frame_maps(&d, &two, &lim).unwrap();
        assert_eq!(maps.len(), 2);
        let (a, b) = (d.element("a").unwrap(), d.element("b").unwrap());
        for p in &maps {
            assert_ne!(p.apply(a), p.apply(b));
        }
    }

    #[test]
    fn enumeration_respects_cap() {
        let lim = Limits { max_nodes: 2, ..Limits::default() };
        let err = enumerate_frame_maps(&d4(), &d4(), &lim).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { limit: 2, .. }));
    }

    #[test]
    fn generation_examples() {
        let f = f3();
        let s = generate_subframe(&f, &[]);
        assert_eq!(s.members(), &[f.bottom().min(f.top()), f.bottom().max(f.top())]);
        let m = f.element("m").unwrap();
        let s = generate_subframe(&f, &[m]);
        assert_eq!(s.members().len(), 3);
        assert!(SubframeSubset::check(&f, s.members()));
    }

    #[test]
    fn trivial_frame() {
        let f = Frame::chain(&["*"]).unwrap();
        assert_eq!(f.bottom(), f.top());
        assert_eq!(generate_subframe(&f, &[]).members(), &[0]);
    }
}
