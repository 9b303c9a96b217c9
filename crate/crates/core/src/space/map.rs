use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::construct::{quotient_opens_by_filter, quotient_opens_by_pushforward, subspace, QUOTIENT_FILTER_MAX};
use super::{image_lset, preimage_lset, LSet, Space};
use crate::error::{Error, Result};
use crate::limits::power;

/// Outcome of a predicate that can fail with a witness.
pub type Check<W> = std::result::Result<(), W>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Continuous,
    Open,
    Embedding,
    Homeomorphism,
    Quotient,
}

impl MapKind {
    pub const ALL: [MapKind; 5] =
        [MapKind::Continuous, MapKind::Open, MapKind::Embedding, MapKind::Homeomorphism, MapKind::Quotient];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Continuous => "continuous",
            MapKind::Open => "open",
            MapKind::Embedding => "embedding",
            MapKind::Homeomorphism => "homeomorphism",
            MapKind::Quotient => "quotient",
        }
    }
}

/// Why a map fails a [`MapKind`] predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapWitness {
    /// A target open whose preimage is not open.
    NotContinuous { open: LSet, preimage: LSet },
    /// A source open whose image is not open.
    NotOpen { open: LSet, image: LSet },
    NotInjective { first: usize, second: usize },
    NotSurjective { point: usize },
    /// A source open that is not the pullback of any open of the image subspace.
    InverseNotContinuous { open: LSet },
    /// An L-set on the target in exactly one of `δ` and `{ν | f←(ν) ∈ τ}`.
    QuotientMismatch { lset: LSet, in_target: bool },
}

impl MapWitness {
    /// Human-readable form with point and element labels.
    pub fn describe(&self, f: &StructuredMap) -> String {
        let (s, t) = (f.source(), f.target());
        match self {
            MapWitness::NotContinuous { open, preimage } => format!(
                "preimage of open {} is {}, which is not open",
                t.render_lset(open),
                s.render_lset(preimage)
            ),
            MapWitness::NotOpen { open, image } => {
                format!("image of open {} is {}, which is not open", s.render_lset(open), t.render_lset(image))
            }
            MapWitness::NotInjective { first, second } => format!(
                "points `{}` and `{}` have the same image",
                s.point_label(*first),
                s.point_label(*second)
            ),
            MapWitness::NotSurjective { point } => format!("point `{}` is not hit", t.point_label(*point)),
            MapWitness::InverseNotContinuous { open } => format!(
                "open {} is not the restriction of any target open along the map",
                s.render_lset(open)
            ),
            MapWitness::QuotientMismatch { lset, in_target: true } => format!(
                "{} is open in the target but its preimage is not open",
                t.render_lset(lset)
            ),
            MapWitness::QuotientMismatch { lset, in_target: false } => format!(
                "{} has an open preimage but is not open in the target",
                t.render_lset(lset)
            ),
        }
    }
}

impl fmt::Display for MapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Default)]
struct Cache {
    continuous: OnceLock<Check<MapWitness>>,
    open: OnceLock<Check<MapWitness>>,
    embedding: OnceLock<Check<MapWitness>>,
    homeomorphism: OnceLock<Check<MapWitness>>,
    quotient: OnceLock<Check<MapWitness>>,
}

/// A point function between two spaces over the same frame.
#[derive(Debug, Clone)]
pub struct StructuredMap {
    source: Arc<Space>,
    target: Arc<Space>,
    mapping: Vec<usize>,
    cache: Cache,
}

impl PartialEq for StructuredMap {
    fn eq(&self, other: &Self) -> bool {
        self.mapping == other.mapping && self.source == other.source && self.target == other.target
    }
}

impl Eq for StructuredMap {}

impl StructuredMap {
    pub fn new(source: Arc<Space>, target: Arc<Space>, mapping: Vec<usize>) -> Result<Self> {
        if source.frame() != target.frame() {
            return Err(Error::FrameMismatch);
        }
        if mapping.len() != source.len() {
            return Err(Error::MalformedMap(format!(
                "{} values for {} source points",
                mapping.len(),
                source.len()
            )));
        }
        if let Some((x, &y)) = mapping.iter().enumerate().find(|(_, &y)| y >= target.len()) {
            return Err(Error::MalformedMap(format!(
                "point `{}` is sent to #{y}, outside the target",
                source.point_label(x)
            )));
        }
        Ok(StructuredMap { source, target, mapping, cache: Cache::default() })
    }

    pub fn identity(space: Arc<Space>) -> Self {
        let mapping = (0..space.len()).collect();
        StructuredMap { source: space.clone(), target: space, mapping, cache: Cache::default() }
    }

    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &StructuredMap) -> Result<StructuredMap> {
        if self.target.len() != next.source.len() || *self.target != *next.source {
            return Err(Error::MalformedMap("maps are not composable".into()));
        }
        let mapping = self.mapping.iter().map(|&y| next.mapping[y]).collect();
        StructuredMap::new(self.source.clone(), next.target.clone(), mapping)
    }

    pub fn preimage(&self, nu: &LSet) -> LSet {
        preimage_lset(&self.mapping, nu)
    }

    pub fn image(&self, mu: &LSet) -> LSet {
        image_lset(self.source.frame(), &self.mapping, self.target.len(), mu)
    }

    /// Sorted, duplicate-free image points.
    pub fn image_points(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.mapping.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn check_injective(&self) -> Check<MapWitness> {
        let mut seen: Vec<Option<usize>> = vec![None; self.target.len()];
        for (x, &y) in self.mapping.iter().enumerate() {
            if let Some(first) = seen[y] {
                return Err(MapWitness::NotInjective { first, second: x });
            }
            seen[y] = Some(x);
        }
        Ok(())
    }

    pub fn check_surjective(&self) -> Check<MapWitness> {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.mapping {
            hit[y] = true;
        }
        match hit.iter().position(|h| !h) {
            Some(point) => Err(MapWitness::NotSurjective { point }),
            None => Ok(()),
        }
    }

    pub fn check(&self, kind: MapKind) -> Check<MapWitness> {
        let cell = match kind {
            MapKind::Continuous => &self.cache.continuous,
            MapKind::Open => &self.cache.open,
            MapKind::Embedding => &self.cache.embedding,
            MapKind::Homeomorphism => &self.cache.homeomorphism,
            MapKind::Quotient => &self.cache.quotient,
        };
        cell.get_or_init(|| self.compute(kind)).clone()
    }

    pub fn is(&self, kind: MapKind) -> bool {
        self.check(kind).is_ok()
    }

    pub fn is_continuous(&self) -> bool {
        self.is(MapKind::Continuous)
    }

    fn compute(&self, kind: MapKind) -> Check<MapWitness> {
        match kind {
            MapKind::Continuous => {
                for nu in self.target.opens() {
                    let preimage = self.preimage(nu);
                    if !self.source.is_open(&preimage) {
                        return Err(MapWitness::NotContinuous { open: nu.clone(), preimage });
                    }
                }
                Ok(())
            }
            MapKind::Open => {
                for mu in self.source.opens() {
                    let image = self.image(mu);
                    if !self.target.is_open(&image) {
                        return Err(MapWitness::NotOpen { open: mu.clone(), image });
                    }
                }
                Ok(())
            }
            MapKind::Homeomorphism => {
                self.check_injective()?;
                self.check_surjective()?;
                self.check(MapKind::Continuous)?;
                // For a bijection, `(f⁻¹)←(μ) = f→(μ)`.
                for mu in self.source.opens() {
                    if !self.target.is_open(&self.image(mu)) {
                        return Err(MapWitness::InverseNotContinuous { open: mu.clone() });
                    }
                }
                Ok(())
            }
            MapKind::Embedding => {
                self.check_injective()?;
                self.check(MapKind::Continuous)?;
                let (_, corestriction) = self.corestriction();
                corestriction.check(MapKind::Homeomorphism)
            }
            MapKind::Quotient => {
                self.check_surjective()?;
                let width = self.target.len();
                let frame = self.source.frame();
                let induced = if power(frame.len(), width) <= QUOTIENT_FILTER_MAX {
                    quotient_opens_by_filter(&self.source, &self.mapping, width)
                } else {
                    quotient_opens_by_pushforward(&self.source, &self.mapping, width)
                };
                let induced: BTreeSet<&LSet> = induced.iter().collect();
                let actual: BTreeSet<&LSet> = self.target.opens().iter().collect();
                if let Some(lset) = actual.difference(&induced).next() {
                    return Err(MapWitness::QuotientMismatch { lset: (*lset).clone(), in_target: true });
                }
                if let Some(lset) = induced.difference(&actual).next() {
                    return Err(MapWitness::QuotientMismatch { lset: (*lset).clone(), in_target: false });
                }
                Ok(())
            }
        }
    }

    /// The image subspace and the map onto it.
    pub fn corestriction(&self) -> (Arc<Space>, StructuredMap) {
        let image = self.image_points();
        let sub = Arc::new(subspace(&self.target, &image).expect("image points lie in the target"));
        let mapping = self
            .mapping
            .iter()
            .map(|y| image.binary_search(y).expect("point is in the image"))
            .collect();
        let map = StructuredMap::new(self.source.clone(), sub.clone(), mapping).expect("corestriction is well formed");
        (sub, map)
    }
}

/// Decides `kind` for `f`.
pub fn map_predicate(f: &StructuredMap, kind: MapKind) -> Check<MapWitness> {
    f.check(kind)
}
