use std::collections::BTreeSet;
use std::sync::Arc;

use super::map::{Check, MapKind, StructuredMap};
use super::{all_lsets, LSet, Space};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::limits::{power, Limits};

/// Quotient opens are found by filtering all of `L^Y` up to this many
/// candidates, and by pushing `τ` forward above it.
pub(crate) const QUOTIENT_FILTER_MAX: u128 = 4096;

/// Largest carrier for which [`find_homeomorphism`] searches bijections.
pub const HOMEOMORPHISM_SEARCH_MAX: usize = 8;

/// The subspace on `keep` (point indices, kept in the given order), with
/// opens `{μ|_Y | μ ∈ τ}`.
pub fn subspace(space: &Space, keep: &[usize]) -> Result<Space> {
    let mut seen = vec![false; space.len()];
    for &p in keep {
        if p >= space.len() {
            return Err(Error::UnknownPoint(format!("#{p}")));
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::DuplicatePoint(space.point_label(p).to_string()));
        }
    }
    let points = keep.iter().map(|&p| space.point_label(p).to_string()).collect();
    let opens: BTreeSet<LSet> = space.opens().iter().map(|o| o.restrict(keep)).collect();
    Ok(Space::from_sorted(space.frame().clone(), points, opens.into_iter().collect()))
}

/// The initial L-topology on a labelled point set induced by a family of
/// point functions into spaces over `frame`.
pub fn initial_topology(frame: Arc<Frame>, points: Vec<String>, family: &[(&[usize], &Space)]) -> Result<Space> {
    let mut generators = Vec::new();
    for (mapping, target) in family {
        if **target.frame() != *frame {
            return Err(Error::FrameMismatch);
        }
        if mapping.len() != points.len() || mapping.iter().any(|&y| y >= target.len()) {
            return Err(Error::MalformedMap("family member is not a function into its target".into()));
        }
        generators.extend(target.opens().iter().map(|nu| nu.preimage(mapping)));
    }
    Space::generated(frame, points, generators)
}

/// A finite product with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub space: Arc<Space>,
    pub factors: Vec<Arc<Space>>,
    pub projections: Vec<StructuredMap>,
}

impl Product {
    /// Point index of a coordinate tuple; the first coordinate is most significant.
    pub fn encode(&self, coords: &[usize]) -> usize {
        encode(&self.factors, coords)
    }

    pub fn decode(&self, point: usize) -> Vec<usize> {
        decode(&self.factors, point)
    }
}

fn encode(factors: &[Arc<Space>], coords: &[usize]) -> usize {
    factors.iter().zip(coords).fold(0, |acc, (f, &c)| acc * f.len() + c)
}

fn decode(factors: &[Arc<Space>], mut point: usize) -> Vec<usize> {
    let mut coords = vec![0; factors.len()];
    for (i, f) in factors.iter().enumerate().rev() {
        coords[i] = point % f.len();
        point /= f.len();
    }
    coords
}

/// Cartesian product carrying the initial topology of the projections.
pub fn product_space(frame: Arc<Frame>, factors: &[Arc<Space>], limits: &Limits) -> Result<Product> {
    if factors.iter().any(|f| **f.frame() != *frame) {
        return Err(Error::FrameMismatch);
    }
    let size = factors.iter().fold(1u128, |acc, f| acc.saturating_mul(f.len() as u128));
    limits.check_points("product carrier", size)?;
    let size = size as usize;
    let tuples: Vec<Vec<usize>> = (0..size).map(|p| decode(factors, p)).collect();
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&c, f)| f.point_label(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mappings: Vec<Vec<usize>> =
        (0..factors.len()).map(|i| tuples.iter().map(|t| t[i]).collect()).collect();
    let family: Vec<(&[usize], &Space)> =
        mappings.iter().zip(factors).map(|(m, f)| (m.as_slice(), f.as_ref())).collect();
    let space = Arc::new(initial_topology(frame, labels, &family)?);
    let projections = mappings
        .into_iter()
        .zip(factors)
        .map(|(m, f)| StructuredMap::new(space.clone(), f.clone(), m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Product { space, factors: factors.to_vec(), projections })
}

/// `{ν ∈ L^Y | ν ∘ f ∈ τ}` by scanning every candidate.
pub fn quotient_opens_by_filter(space: &Space, mapping: &[usize], width: usize) -> Vec<LSet> {
    let unbounded = Limits { max_maps: u128::MAX, ..Limits::default() };
    all_lsets(space.frame(), width, &unbounded)
        .expect("unbounded")
        .into_iter()
        .filter(|nu| space.is_open(&nu.preimage(mapping)))
        .collect()
}

/// The same set, read off the opens of `τ` that are constant on fibres.
///
/// For surjective `f`, `ν ∘ f ∈ τ` exactly when `ν ∘ f` is such an open, and
/// `ν` is then its pushforward.
pub fn quotient_opens_by_pushforward(space: &Space, mapping: &[usize], width: usize) -> Vec<LSet> {
    let mut representative = vec![None; width];
    for (x, &y) in mapping.iter().enumerate() {
        representative[y].get_or_insert(x);
    }
    let reps: Vec<usize> = representative.into_iter().map(|r| r.expect("surjective")).collect();
    let opens: BTreeSet<LSet> = space
        .opens()
        .iter()
        .filter(|mu| mapping.iter().enumerate().all(|(x, &y)| mu.at(x) == mu.at(reps[y])))
        .map(|mu| mu.restrict(&reps))
        .collect();
    opens.into_iter().collect()
}

/// The quotient space along a surjection onto `target_points`.
pub fn quotient_space(
    space: &Arc<Space>,
    mapping: &[usize],
    target_points: Vec<String>,
) -> Result<(Arc<Space>, StructuredMap)> {
    let width = target_points.len();
    if mapping.len() != space.len() || mapping.iter().any(|&y| y >= width) {
        return Err(Error::MalformedMap("quotient map is not a function onto the target points".into()));
    }
    let mut hit = vec![false; width];
    mapping.iter().for_each(|&y| hit[y] = true);
    if let Some(y) = hit.iter().position(|h| !h) {
        return Err(Error::NotSurjective(target_points[y].clone()));
    }
    let opens = if power(space.frame().len(), width) <= QUOTIENT_FILTER_MAX {
        quotient_opens_by_filter(space, mapping, width)
    } else {
        quotient_opens_by_pushforward(space, mapping, width)
    };
    let target = Arc::new(Space::new(space.frame().clone(), target_points, opens)?);
    let map = StructuredMap::new(space.clone(), target.clone(), mapping.to_vec())?;
    Ok((target, map))
}

/// `(L, ⟨id_L⟩)`.
pub fn sierpinski_space(frame: Arc<Frame>) -> Space {
    let points = frame.labels().to_vec();
    let id = LSet::new(frame.elements().collect());
    Space::generated(frame, points, vec![id]).expect("identity is an L-set on L")
}

/// T₀: every pair of distinct points is separated by an open. The witness
/// is the first unseparated pair.
pub fn is_t0(space: &Space) -> Check<(usize, usize)> {
    for x in 0..space.len() {
        for y in (x + 1)..space.len() {
            if space.opens().iter().all(|o| o.at(x) == o.at(y)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// Quotient by "no open distinguishes x and y".
///
/// Classes are numbered by first member; a singleton class keeps its
/// point label and larger classes are labelled `{x,y,...}`.
pub fn t0_reflection(space: &Arc<Space>) -> (Arc<Space>, StructuredMap) {
    let n = space.len();
    let mut class: Vec<Option<usize>> = vec![None; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class[x].is_some() {
            continue;
        }
        let c = members.len();
        let mut group = Vec::new();
        for y in x..n {
            if class[y].is_none() && space.opens().iter().all(|o| o.at(x) == o.at(y)) {
                class[y] = Some(c);
                group.push(y);
            }
        }
        members.push(group);
    }
    let labels = members
        .iter()
        .map(|g| match g.as_slice() {
            [single] => space.point_label(*single).to_string(),
            _ => {
                let parts: Vec<&str> = g.iter().map(|&p| space.point_label(p)).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let mapping: Vec<usize> = class.into_iter().map(|c| c.expect("classified")).collect();
    quotient_space(space, &mapping, labels).expect("class map is a surjection")
}

/// `L_S^k` as a product of `k` copies of the Sierpinski space.
pub fn power_of_sierpinski(frame: Arc<Frame>, k: usize, limits: &Limits) -> Result<Product> {
    limits.check_points("power of the Sierpinski space", power(frame.len(), k))?;
    let ls = Arc::new(sierpinski_space(frame.clone()));
    product_space(frame, &vec![ls; k], limits)
}

/// The evaluation map into a power of the Sierpinski space.
#[derive(Debug, Clone)]
pub struct Evaluation {
    /// `L_S^τ`, coordinate `i` indexed by `opens()[i]`.
    pub power: Product,
    pub map: StructuredMap,
}

/// `e(x)(μ) = μ(x)`, into `L_S^τ`.
pub fn evaluation_embedding(space: &Arc<Space>, require_t0: bool, limits: &Limits) -> Result<Evaluation> {
    if require_t0 {
        if let Err((x, y)) = is_t0(space) {
            return Err(Error::NotT0(space.point_label(x).into(), space.point_label(y).into()));
        }
    }
    let power = power_of_sierpinski(space.frame().clone(), space.opens().len(), limits)?;
    let mapping = (0..space.len())
        .map(|x| {
            let coords: Vec<usize> = space.opens().iter().map(|o| o.at(x)).collect();
            power.encode(&coords)
        })
        .collect();
    let map = StructuredMap::new(space.clone(), power.space.clone(), mapping)?;
    Ok(Evaluation { power, map })
}

/// A homeomorphism `a → b` if one exists, searching bijections that
/// preserve each point's multiset of open values.
pub fn find_homeomorphism(a: &Arc<Space>, b: &Arc<Space>) -> Result<Option<StructuredMap>> {
    if a.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    if a.len() != b.len() || a.opens().len() != b.opens().len() {
        return Ok(None);
    }
    if a.len() > HOMEOMORPHISM_SEARCH_MAX {
        return Err(Error::CapExceeded {
            what: "homeomorphism search carrier",
            needed: a.len() as u128,
            limit: HOMEOMORPHISM_SEARCH_MAX as u128,
        });
    }
    let signature = |s: &Space, p: usize| {
        let mut v: Vec<usize> = s.opens().iter().map(|o| o.at(p)).collect();
        v.sort_unstable();
        v
    };
    let sa: Vec<Vec<usize>> = (0..a.len()).map(|p| signature(a, p)).collect();
    let sb: Vec<Vec<usize>> = (0..b.len()).map(|p| signature(b, p)).collect();

    fn search(
        depth: usize,
        sa: &[Vec<usize>],
        sb: &[Vec<usize>],
        mapping: &mut Vec<usize>,
        used: &mut [bool],
        a: &Arc<Space>,
        b: &Arc<Space>,
    ) -> Option<StructuredMap> {
        if depth == sa.len() {
            let f = StructuredMap::new(a.clone(), b.clone(), mapping.clone()).ok()?;
            return f.is(MapKind::Homeomorphism).then_some(f);
        }
        for y in 0..sb.len() {
            if used[y] || sa[depth] != sb[y] {
                continue;
            }
            used[y] = true;
            mapping.push(y);
            let found = search(depth + 1, sa, sb, mapping, used, a, b);
            mapping.pop();
            used[y] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    Ok(search(0, &sa, &sb, &mut Vec::new(), &mut vec![false; b.len()], a, b))
}
