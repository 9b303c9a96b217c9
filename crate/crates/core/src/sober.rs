//! Points of an L-topology, sobriety, and sobrification.
//!
//! A point of `(X, τ)` is a frame map `τ → L`. The point space carries the
//! opens `φ(μ)(p) = p(μ)`, and `η(x)(μ) = μ(x)` maps the space into it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{enumerate_frame_maps, Elem, Frame, FrameMap};
use crate::limits::Limits;
use crate::space::{is_t0, Check, LSet, MapKind, Space, StructuredMap};
use crate::verify::{is_epimorphism, Category};

/// `(pt_L τ, φ_L(τ))` together with the space it was built from.
#[derive(Debug, Clone)]
pub struct PointSpace {
    base: Arc<Space>,
    open_frame: Frame,
    points: Vec<FrameMap>,
    space: Arc<Space>,
}

impl PointSpace {
    pub fn build(base: &Arc<Space>, limits: &Limits) -> Result<PointSpace> {
        let open_frame = base.open_frame();
        let points = enumerate_frame_maps(&open_frame, base.frame(), limits)?;
        let labels = (0..points.len()).map(point_label).collect();
        let opens = (0..base.opens().len())
            .map(|i| LSet::new(points.iter().map(|p| p.apply(i)).collect()))
            .collect();
        let space = Arc::new(Space::new(base.frame().clone(), labels, opens)?);
        Ok(PointSpace { base: base.clone(), open_frame, points, space })
    }

    pub fn base(&self) -> &Arc<Space> {
        &self.base
    }

    /// `τ` as a frame; element `i` is `base().opens()[i]`.
    pub fn open_frame(&self) -> &Frame {
        &self.open_frame
    }

    /// Frame maps `τ → L` in canonical order; point `i` of [`Self::space`] is `points()[i]`.
    pub fn points(&self) -> &[FrameMap] {
        &self.points
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    /// `φ(μ)(p) = p(μ)`.
    pub fn phi(&self, mu: &LSet) -> Result<LSet> {
        let i = self.base.open_index(mu).ok_or(Error::NotOpen)?;
        Ok(LSet::new(self.points.iter().map(|p| p.apply(i)).collect()))
    }

    /// The point whose table is `table`, if it is one.
    pub fn find_point(&self, table: &[Elem]) -> Option<usize> {
        self.points.binary_search_by(|p| p.table().cmp(table)).ok()
    }

    /// `η(x)(μ) = μ(x)`.
    pub fn eta(&self) -> Result<StructuredMap> {
        let mapping = (0..self.base.len())
            .map(|x| {
                let table: Vec<Elem> = self.base.opens().iter().map(|o| o.at(x)).collect();
                self.find_point(&table).ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "evaluation at `{}` is not among the enumerated frame maps",
                        self.base.point_label(x)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StructuredMap::new(self.base.clone(), self.space.clone(), mapping)
    }
}

/// Label of the `i`-th point of a point space.
pub fn point_label(i: usize) -> String {
    format!("p{i}")
}

/// All frame maps `τ → L`.
pub fn points(space: &Space, limits: &Limits) -> Result<Vec<FrameMap>> {
    enumerate_frame_maps(&space.open_frame(), space.frame(), limits)
}

/// `η` from a space into its point space.
pub fn eta(space: &Arc<Space>, limits: &Limits) -> Result<StructuredMap> {
    PointSpace::build(space, limits)?.eta()
}

/// Why a space is not sober.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoberWitness {
    /// No point of the space realizes this frame map.
    Unrealized { point: FrameMap },
    /// Two points realize the same frame map.
    Duplicate { point: FrameMap, first: usize, second: usize },
}

impl SoberWitness {
    pub fn describe(&self, space: &Space) -> String {
        let render = |p: &FrameMap| {
            let parts: Vec<String> = space
                .opens()
                .iter()
                .zip(p.table())
                .map(|(o, &v)| format!("{} ↦ {}", space.render_lset(o), space.frame().label(v)))
                .collect();
            format!("[{}]", parts.join(", "))
        };
        match self {
            SoberWitness::Unrealized { point } => format!("frame map {} is realized by no point", render(point)),
            SoberWitness::Duplicate { point, first, second } => format!(
                "frame map {} is realized by both `{}` and `{}`",
                render(point),
                space.point_label(*first),
                space.point_label(*second)
            ),
        }
    }
}

/// Every frame map `τ → L` is evaluation at exactly one point.
pub fn is_sober(space: &Space, limits: &Limits) -> Result<Check<SoberWitness>> {
    for point in points(space, limits)? {
        let mut realizers = (0..space.len())
            .filter(|&x| space.opens().iter().zip(point.table()).all(|(o, &v)| o.at(x) == v));
        match (realizers.next(), realizers.next()) {
            (None, _) => return Ok(Err(SoberWitness::Unrealized { point })),
            (Some(first), Some(second)) => return Ok(Err(SoberWitness::Duplicate { point, first, second })),
            (Some(_), None) => {}
        }
    }
    Ok(Ok(()))
}

/// The sobrification and its reflection map.
#[derive(Debug, Clone)]
pub struct Sobrification {
    pub points: PointSpace,
    pub eta: StructuredMap,
}

impl Sobrification {
    pub fn space(&self) -> &Arc<Space> {
        self.points.space()
    }
}

pub fn sobrify(space: &Arc<Space>, limits: &Limits) -> Result<Sobrification> {
    let points = PointSpace::build(space, limits)?;
    let eta = points.eta()?;
    Ok(Sobrification { points, eta })
}

/// The isomorphism `f*` from the sobrification of the source onto a sober
/// codomain of an epimorphic embedding `f`, with its inverse `g`.
#[derive(Debug, Clone)]
pub struct Firm {
    pub points: PointSpace,
    /// `pt_L τ → Y`.
    pub f_star: StructuredMap,
    /// `Y → pt_L τ`.
    pub inverse: StructuredMap,
}

/// Builds `f*(p)` as the unique `y` with `ν(y) = p(ν ∘ f)` for all `ν ∈ δ`,
/// and `g(y)(μ) = μ_f(y)` where `μ_f` is the unique open with `μ_f ∘ f = μ`.
pub fn firm_factorization(f: &StructuredMap, limits: &Limits) -> Result<Firm> {
    let (source, target) = (f.source(), f.target());
    for (role, s) in [("source", source), ("target", target)] {
        if let Err((x, y)) = is_t0(s) {
            return Err(Error::Precondition(format!(
                "{role} is not T0: `{}` and `{}` are not separated",
                s.point_label(x),
                s.point_label(y)
            )));
        }
    }
    if let Err(w) = f.check(MapKind::Embedding) {
        return Err(Error::Precondition(format!("map is not an embedding: {}", w.describe(f))));
    }
    if is_epimorphism(f, Category::LTop0)?.is_err() {
        return Err(Error::Precondition("map is not an epimorphism of T0 spaces".into()));
    }
    if let Err(w) = is_sober(target, limits)? {
        return Err(Error::Precondition(format!("target is not sober: {}", w.describe(target))));
    }

    let points = PointSpace::build(source, limits)?;
    // Index in τ of ν ∘ f, for each ν ∈ δ.
    let pulled: Vec<usize> = target
        .opens()
        .iter()
        .map(|nu| {
            source
                .open_index(&f.preimage(nu))
                .ok_or_else(|| Error::Inconsistent("embedding is not continuous".into()))
        })
        .collect::<Result<_>>()?;

    let mut star = Vec::with_capacity(points.points().len());
    for p in points.points() {
        let mut realizers = (0..target.len()).filter(|&y| {
            target.opens().iter().zip(&pulled).all(|(nu, &i)| nu.at(y) == p.apply(i))
        });
        match (realizers.next(), realizers.next()) {
            (Some(y), None) => star.push(y),
            _ => return Err(Error::Inconsistent("sober target does not realize a point uniquely".into())),
        }
    }

    // μ_f for each μ ∈ τ, as an index into δ.
    let mut lift = Vec::with_capacity(source.opens().len());
    for i in 0..source.opens().len() {
        let mut hits = pulled.iter().enumerate().filter(|&(_, &j)| j == i).map(|(k, _)| k);
        match (hits.next(), hits.next()) {
            (Some(k), None) => lift.push(k),
            (None, _) => return Err(Error::Inconsistent("open has no extension along the embedding".into())),
            _ => return Err(Error::Inconsistent("open extends non-uniquely; map is not epi".into())),
        }
    }
    let inverse = (0..target.len())
        .map(|y| {
            let table: Vec<Elem> = lift.iter().map(|&k| target.opens()[k].at(y)).collect();
            points
                .find_point(&table)
                .ok_or_else(|| Error::Inconsistent(format!("g(`{}`) is not a frame map", target.point_label(y))))
        })
        .collect::<Result<Vec<_>>>()?;

    let f_star = StructuredMap::new(points.space().clone(), target.clone(), star)?;
    let inverse = StructuredMap::new(target.clone(), points.space().clone(), inverse)?;
    Ok(Firm { points, f_star, inverse })
}
