//! Exhaustive categorical checks over finite universes of spaces.
//!
//! Quantifiers over "every object" are replaced by a [`TestFamily`], and
//! every suite reports the universe it ran over.

mod claims;
mod report;
mod suites;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fixtures::{family, frame_by_name};
use crate::frame::Frame;
use crate::limits::Limits;
use crate::sober::{is_sober, sobrify};
use crate::space::{is_t0, t0_reflection, Check, LSet, MapKind, MapWitness, Space, StructuredMap};

pub use claims::{
    evaluation_by_generators, verify_epireflection, verify_injective_cogenerator, verify_manes_conditions,
    verify_sierpinski_object,
};
pub use report::{Counterexample, VerificationReport};
pub use suites::{run_suite, Suite};

/// The ambient category of a morphism question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    /// All L-topological spaces.
    LTop,
    /// T₀ L-topological spaces.
    LTop0,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::LTop => "LTop",
            Category::LTop0 => "LTop0",
        }
    }

    fn require(self, f: &StructuredMap) -> Result<()> {
        if self == Category::LTop0 {
            for (role, s) in [("source", f.source()), ("target", f.target())] {
                if let Err((x, y)) = is_t0(s) {
                    return Err(Error::Precondition(format!(
                        "{role} is not T0 (`{}` and `{}` are not separated), so the map is not in LTop0",
                        s.point_label(x),
                        s.point_label(y)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a map is not an epimorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpiWitness {
    /// A target point outside the image.
    MissedPoint { point: usize },
    /// Two distinct target opens with the same pullback.
    Collapsing { first: LSet, second: LSet },
}

impl EpiWitness {
    pub fn describe(&self, f: &StructuredMap) -> String {
        let t = f.target();
        match self {
            EpiWitness::MissedPoint { point } => format!("`{}` is not in the image", t.point_label(*point)),
            EpiWitness::Collapsing { first, second } => format!(
                "distinct opens {} and {} have the same preimage {}",
                t.render_lset(first),
                t.render_lset(second),
                f.source().render_lset(&f.preimage(first))
            ),
        }
    }
}

/// Epimorphism test: surjectivity in `LTop`; in `LTop0`, injectivity of
/// `ν ↦ f←(ν)` on the target opens.
///
/// The collapsing witness is the pair with the greatest shared pullback,
/// smaller open first.
pub fn is_epimorphism(f: &StructuredMap, category: Category) -> Result<Check<EpiWitness>> {
    category.require(f)?;
    Ok(match category {
        Category::LTop => f.check_surjective().map_err(|w| match w {
            MapWitness::NotSurjective { point } => EpiWitness::MissedPoint { point },
            other => unreachable!("surjectivity witness {other:?}"),
        }),
        Category::LTop0 => {
            let mut seen: HashMap<LSet, &LSet> = HashMap::new();
            for nu in f.target().opens().iter().rev() {
                if let Some(&later) = seen.get(&f.preimage(nu)) {
                    return Ok(Err(EpiWitness::Collapsing { first: nu.clone(), second: later.clone() }));
                }
                seen.insert(f.preimage(nu), nu);
            }
            Ok(())
        }
    })
}

/// Brute-force epimorphism test: no two distinct continuous maps from the
/// target into any of `codomains` agree after composing with `f`. The
/// witness is the codomain index and the offending pair.
pub fn is_epimorphism_by_test_maps(
    f: &StructuredMap,
    codomains: &[Arc<Space>],
    limits: &Limits,
) -> Result<Check<(usize, StructuredMap, StructuredMap)>> {
    for (i, z) in codomains.iter().enumerate() {
        let mut by_composite: HashMap<Vec<usize>, StructuredMap> = HashMap::new();
        for g in enumerate_continuous_maps(f.target(), z, limits)? {
            let composite: Vec<usize> = f.mapping().iter().map(|&y| g.apply(y)).collect();
            if let Some(h) = by_composite.get(&composite) {
                return Ok(Err((i, h.clone(), g)));
            }
            by_composite.insert(composite, g);
        }
    }
    Ok(Ok(()))
}

/// All continuous maps `a → b`, in lexicographic order of their point tables.
///
/// Points of `a` are assigned in order; a partial assignment survives only
/// while every open of `b` still pulls back to something that agrees with
/// some open of `a` on the assigned points. The search is bounded by
/// `limits.max_nodes` tried assignments and `limits.max_maps` results
/// rather than by the size of the whole function space.
pub fn enumerate_continuous_maps(a: &Arc<Space>, b: &Arc<Space>, limits: &Limits) -> Result<Vec<StructuredMap>> {
    if a.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let all: Vec<usize> = (0..a.opens().len()).collect();
    let mut search = ContinuousSearch {
        a,
        b,
        limits,
        nodes: 0,
        mapping: Vec::with_capacity(a.len()),
        found: Vec::new(),
    };
    let candidates = vec![all; b.opens().len()];
    search.run(&candidates)?;
    let found = std::mem::take(&mut search.found);
    found.into_iter().map(|m| StructuredMap::new(a.clone(), b.clone(), m)).collect()
}

struct ContinuousSearch<'a> {
    a: &'a Arc<Space>,
    b: &'a Arc<Space>,
    limits: &'a Limits,
    nodes: u64,
    mapping: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl ContinuousSearch<'_> {
    /// `candidates[j]` lists the opens of `a` agreeing with `b.opens()[j] ∘ f` so far.
    fn run(&mut self, candidates: &[Vec<usize>]) -> Result<()> {
        let x = self.mapping.len();
        if x == self.a.len() {
            self.found.push(self.mapping.clone());
            if self.found.len() as u128 > self.limits.max_maps {
                return Err(Error::CapExceeded {
                    what: "continuous maps",
                    needed: self.found.len() as u128,
                    limit: self.limits.max_maps,
                });
            }
            return Ok(());
        }
        for y in 0..self.b.len() {
            self.nodes += 1;
            if self.nodes > self.limits.max_nodes {
                return Err(Error::CapExceeded {
                    what: "continuous map search nodes",
                    needed: self.nodes as u128,
                    limit: self.limits.max_nodes as u128,
                });
            }
            let next: Vec<Vec<usize>> = self
                .b
                .opens()
                .iter()
                .zip(candidates)
                .map(|(nu, cands)| {
                    let v = nu.at(y);
                    cands.iter().copied().filter(|&m| self.a.opens()[m].at(x) == v).collect()
                })
                .collect();
            if next.iter().any(Vec::is_empty) {
                continue;
            }
            self.mapping.push(y);
            self.run(&next)?;
            self.mapping.pop();
        }
        Ok(())
    }
}

/// `[M] = {x | any two opens agreeing on M agree at x}`, sorted.
///
/// Two opens are maps into the T₀ space `L_S`, and any pair of maps into a
/// T₀ space that disagrees at `x` is separated by one of its opens, so this
/// is the intersection of all equalizers into T₀ spaces that contain `M`.
pub fn bracket_closure(space: &Space, subset: &[usize]) -> Vec<usize> {
    let mut m: Vec<usize> = subset.to_vec();
    m.sort_unstable();
    m.dedup();
    let mut groups: HashMap<LSet, Vec<&LSet>> = HashMap::new();
    for mu in space.opens() {
        groups.entry(mu.restrict(&m)).or_default().push(mu);
    }
    (0..space.len())
        .filter(|&x| groups.values().all(|g| g.iter().all(|mu| mu.at(x) == g[0].at(x))))
        .collect()
}

/// Why a map is not an extremal monomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoWitness {
    NotEmbedding(MapWitness),
    /// A point of the image's closure outside the image.
    NotClosed { point: usize },
}

impl MonoWitness {
    pub fn describe(&self, f: &StructuredMap) -> String {
        match self {
            MonoWitness::NotEmbedding(w) => format!("not an embedding: {}", w.describe(f)),
            MonoWitness::NotClosed { point } => {
                format!("image is not closed: its closure contains `{}`", f.target().point_label(*point))
            }
        }
    }
}

/// Extremal monomorphisms: embeddings in `LTop`; embeddings with closed
/// image in `LTop0`.
pub fn is_extremal_mono(f: &StructuredMap, category: Category) -> Result<Check<MonoWitness>> {
    category.require(f)?;
    if let Err(w) = f.check(MapKind::Embedding) {
        return Ok(Err(MonoWitness::NotEmbedding(w)));
    }
    if category == Category::LTop0 {
        let image = f.image_points();
        if let Some(point) = bracket_closure(f.target(), &image).into_iter().find(|p| image.binary_search(p).is_err()) {
            return Ok(Err(MonoWitness::NotClosed { point }));
        }
    }
    Ok(Ok(()))
}

/// A reflection onto a full subcategory.
pub trait Reflector {
    fn name(&self) -> &str;
    /// The category the reflection morphisms must be epimorphisms in.
    fn ambient(&self) -> Category;
    /// Membership in the reflective subcategory.
    fn contains(&self, space: &Arc<Space>, limits: &Limits) -> Result<bool>;
    /// The reflection morphism `space → R(space)`.
    fn reflect(&self, space: &Arc<Space>, limits: &Limits) -> Result<StructuredMap>;
}

/// T₀ spaces inside all spaces.
#[derive(Debug, Clone, Copy, Default)]
pub struct T0Reflector;

impl Reflector for T0Reflector {
    fn name(&self) -> &str {
        "t0"
    }

    fn ambient(&self) -> Category {
        Category::LTop
    }

    fn contains(&self, space: &Arc<Space>, _: &Limits) -> Result<bool> {
        Ok(is_t0(space).is_ok())
    }

    fn reflect(&self, space: &Arc<Space>, _: &Limits) -> Result<StructuredMap> {
        Ok(t0_reflection(space).1)
    }
}

/// Sober spaces inside T₀ spaces.
#[derive(Debug, Clone, Copy, Default)]
pub struct SoberReflector;

impl Reflector for SoberReflector {
    fn name(&self) -> &str {
        "sober"
    }

    fn ambient(&self) -> Category {
        Category::LTop0
    }

    fn contains(&self, space: &Arc<Space>, limits: &Limits) -> Result<bool> {
        Ok(is_sober(space, limits)?.is_ok())
    }

    fn reflect(&self, space: &Arc<Space>, limits: &Limits) -> Result<StructuredMap> {
        Ok(sobrify(space, limits)?.eta)
    }
}

/// A finite universe of named spaces over one frame.
#[derive(Debug, Clone)]
pub struct TestFamily {
    frame: Arc<Frame>,
    members: Vec<(String, Arc<Space>)>,
}

impl TestFamily {
    pub fn new(frame: Arc<Frame>, members: Vec<(String, Arc<Space>)>) -> Result<TestFamily> {
        if members.iter().any(|(_, s)| *s.frame() != frame) {
            return Err(Error::FrameMismatch);
        }
        Ok(TestFamily { frame, members })
    }

    /// The stock fixtures over a stock frame.
    pub fn stock(frame_name: &str) -> Option<TestFamily> {
        let frame = Arc::new(frame_by_name(frame_name)?);
        let members = family(frame_name)?;
        TestFamily::new(frame, members).ok()
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn members(&self) -> &[(String, Arc<Space>)] {
        &self.members
    }

    pub fn spaces(&self) -> Vec<Arc<Space>> {
        self.members.iter().map(|(_, s)| s.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member names, the universe a report quantifies over.
    pub fn universe(&self) -> Vec<String> {
        self.members.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn filter(&self, keep: impl Fn(&Space) -> bool) -> TestFamily {
        let members = self.members.iter().filter(|(_, s)| keep(s)).cloned().collect();
        TestFamily { frame: self.frame.clone(), members }
    }

    pub fn with_max_points(&self, max: usize) -> TestFamily {
        self.filter(|s| s.len() <= max)
    }

    pub fn t0(&self) -> TestFamily {
        self.filter(|s| is_t0(s).is_ok())
    }

    pub fn sober(&self, limits: &Limits) -> Result<TestFamily> {
        let mut members = Vec::new();
        for (n, s) in &self.members {
            if is_sober(s, limits)?.is_ok() {
                members.push((n.clone(), s.clone()));
            }
        }
        Ok(TestFamily { frame: self.frame.clone(), members })
    }
}
