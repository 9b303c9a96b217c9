//! The universally quantified claims, checked over a [`TestFamily`].

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::report::{VerificationReport, Witness};
use super::{enumerate_continuous_maps, is_epimorphism, Reflector, TestFamily};
use crate::error::{Error, Result};
use crate::frame::{generate, Frame};
use crate::limits::{power, Limits};
use crate::space::{
    initial_topology, point_functions, power_of_sierpinski, sierpinski_space, Check, LSet, MapKind, MapWitness, Space,
    StructuredMap,
};

fn compose(first: &[usize], second: &StructuredMap) -> Vec<usize> {
    first.iter().map(|&y| second.apply(y)).collect()
}

/// Opens of `x` of the form `ν ∘ f` for continuous `f: x → candidate`.
fn pulled_opens(x: &Arc<Space>, candidate: &Arc<Space>, limits: &Limits) -> Result<Vec<LSet>> {
    let mut set = BTreeSet::new();
    for f in enumerate_continuous_maps(x, candidate, limits)? {
        set.extend(candidate.opens().iter().map(|nu| f.preimage(nu)));
    }
    Ok(set.into_iter().collect())
}

/// For all `X`, `Z` in the family and every point function `g: Z → X`:
/// `g` is continuous exactly when `f ∘ g` is continuous for every
/// continuous `f: X → candidate`. Cases are `(X, Z, g)` triples.
pub fn verify_sierpinski_object(
    candidate_name: &str,
    candidate: &Arc<Space>,
    family: &TestFamily,
    limits: &Limits,
) -> Result<VerificationReport> {
    let claim = format!("sierpinski-object({candidate_name})");
    if candidate.frame() != family.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut cases = 0;
    for (xn, x) in family.members() {
        let pulled = pulled_opens(x, candidate, limits)?;
        for (zn, z) in family.members() {
            limits.check_maps("point functions in the Sierpinski object check", x.len(), z.len())?;
            for g in point_functions(z.len(), x.len()) {
                cases += 1;
                let gmap = StructuredMap::new(z.clone(), x.clone(), g)?;
                let direct = gmap.is_continuous();
                let via = pulled.iter().all(|mu| z.is_open(&mu.preimage(gmap.mapping())));
                if direct != via {
                    let description = if direct {
                        format!("g: {zn} → {xn} is continuous but some composite with a map into {candidate_name} is not")
                    } else {
                        format!(
                            "g: {zn} → {xn} is not continuous, yet every composite with a continuous map into {candidate_name} is"
                        )
                    };
                    let witness = Witness::new()
                        .space("X", x)
                        .space("Z", z)
                        .space("S", candidate)
                        .map("g", "Z", "X", &gmap)
                        .finish(description);
                    return Ok(VerificationReport::fail(&claim, cases, family.universe(), witness));
                }
            }
        }
    }
    Ok(VerificationReport::pass(&claim, cases, family.universe()))
}

/// Injectivity (maps into the candidate extend along embeddings) and
/// cogeneration (the candidate separates distinct parallel maps), as two
/// reports in that order. Every family member must be T₀.
pub fn verify_injective_cogenerator(
    candidate_name: &str,
    candidate: &Arc<Space>,
    family: &TestFamily,
    limits: &Limits,
) -> Result<Vec<VerificationReport>> {
    if candidate.frame() != family.frame() {
        return Err(Error::FrameMismatch);
    }
    if let Some((n, _)) = family.members().iter().find(|(_, s)| crate::space::is_t0(s).is_err()) {
        return Err(Error::Precondition(format!("family member `{n}` is not T0")));
    }
    let universe = family.universe();
    let inj_claim = format!("injective-cogenerator.injectivity({candidate_name})");
    let cog_claim = format!("injective-cogenerator.cogenerator({candidate_name})");
    let into_candidate: Vec<Vec<StructuredMap>> = family
        .members()
        .iter()
        .map(|(_, s)| enumerate_continuous_maps(s, candidate, limits))
        .collect::<Result<_>>()?;

    let mut inj_cases = 0;
    let mut inj_failure = None;
    let mut cog_cases = 0;
    let mut cog_failure = None;
    for (i, (xn, x)) in family.members().iter().enumerate() {
        for (j, (yn, y)) in family.members().iter().enumerate() {
            let maps = enumerate_continuous_maps(x, y, limits)?;
            let hs = &into_candidate[j];
            if inj_failure.is_none() {
                for e in maps.iter().filter(|e| e.is(MapKind::Embedding)) {
                    let extensions: HashSet<Vec<usize>> = hs.iter().map(|h| compose(e.mapping(), h)).collect();
                    for f in &into_candidate[i] {
                        inj_cases += 1;
                        if !extensions.contains(f.mapping()) {
                            let witness = Witness::new()
                                .space("X", x)
                                .space("Y", y)
                                .space("S", candidate)
                                .map("e", "X", "Y", e)
                                .map("f", "X", "S", f)
                                .finish(format!(
                                    "f: {xn} → {candidate_name} does not extend along the embedding e: {xn} → {yn}"
                                ));
                            inj_failure = Some(witness);
                            break;
                        }
                    }
                    if inj_failure.is_some() {
                        break;
                    }
                }
            }
            if cog_failure.is_none() {
                'pairs: for (a, f) in maps.iter().enumerate() {
                    for g in &maps[a + 1..] {
                        cog_cases += 1;
                        if hs.iter().all(|h| compose(f.mapping(), h) == compose(g.mapping(), h)) {
                            let witness = Witness::new()
                                .space("X", x)
                                .space("Y", y)
                                .space("S", candidate)
                                .map("f", "X", "Y", f)
                                .map("g", "X", "Y", g)
                                .finish(format!(
                                    "distinct f, g: {xn} → {yn} are not separated by any map into {candidate_name}"
                                ));
                            cog_failure = Some(witness);
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    let report = |claim: &str, cases, failure: Option<_>| match failure {
        None => VerificationReport::pass(claim, cases, universe.clone()),
        Some(w) => VerificationReport::fail(claim, cases, universe.clone(), w),
    };
    Ok(vec![report(&inj_claim, inj_cases, inj_failure), report(&cog_claim, cog_cases, cog_failure)])
}

/// For every domain `S` and every continuous `f: S → Y` with `Y` among the
/// codomains, `f` factors through the reflection `r: S → R(S)` by exactly
/// one continuous map. Also checks that `r` is continuous, epimorphic in
/// the ambient category, and lands in the subcategory. Factorizations are
/// counted, not searched for first hits.
pub fn verify_epireflection(
    reflector: &dyn Reflector,
    domains: &TestFamily,
    codomains: &TestFamily,
    limits: &Limits,
) -> Result<VerificationReport> {
    let claim = format!("{}-reflection.universal", reflector.name());
    for (n, y) in codomains.members() {
        if !reflector.contains(y, limits)? {
            return Err(Error::Precondition(format!("codomain `{n}` is not in the reflective subcategory")));
        }
    }
    let mut universe = domains.universe();
    universe.extend(codomains.universe().into_iter().map(|n| format!("→{n}")));
    let mut cases = 0;
    for (sn, s) in domains.members() {
        let r = reflector.reflect(s, limits)?;
        let rs = r.target().clone();
        let fail = |cases, w: Witness, what: String| {
            Ok(VerificationReport::fail(&claim, cases, universe.clone(), w.map("r", "S", "RS", &r).finish(what)))
        };
        let base = || Witness::new().space("S", s).space("RS", &rs);
        if !r.is_continuous() {
            return fail(cases, base(), format!("reflection of {sn} is not continuous"));
        }
        if let Err(w) = is_epimorphism(&r, reflector.ambient())? {
            return fail(
                cases,
                base(),
                format!("reflection of {sn} is not an epimorphism in {}: {}", reflector.ambient(), w.describe(&r)),
            );
        }
        if !reflector.contains(&rs, limits)? {
            return fail(cases, base(), format!("reflection of {sn} is not in the subcategory"));
        }
        for (yn, y) in codomains.members() {
            let lifts = enumerate_continuous_maps(&rs, y, limits)?;
            for f in enumerate_continuous_maps(s, y, limits)? {
                cases += 1;
                let count = lifts.iter().filter(|h| compose(r.mapping(), h) == f.mapping()).count();
                if count != 1 {
                    let w = base().space("Y", y).map("f", "S", "Y", &f);
                    return fail(cases, w, format!("f: {sn} → {yn} factors through the reflection in {count} ways"));
                }
            }
        }
    }
    Ok(VerificationReport::pass(&claim, cases, universe))
}

/// Decides whether evaluation into `L_S^τ` is an embedding without
/// building the power.
///
/// Preimage is a frame map, so continuity into the product and the
/// subspace topology of the image are determined by the coordinate
/// projections, which pull back to the opens of `τ` themselves. The map is
/// then an embedding exactly when it is injective and the subspace on the
/// image, generated by the restricted projections, transports back to `τ`.
pub fn evaluation_by_generators(space: &Arc<Space>) -> Result<Check<MapWitness>> {
    let tuples: Vec<Vec<usize>> = (0..space.len()).map(|x| space.opens().iter().map(|o| o.at(x)).collect()).collect();
    for x in 0..tuples.len() {
        if let Some(y) = (x + 1..tuples.len()).find(|&y| tuples[y] == tuples[x]) {
            return Ok(Err(MapWitness::NotInjective { first: x, second: y }));
        }
    }
    let projections: Vec<LSet> =
        (0..space.opens().len()).map(|i| LSet::new(tuples.iter().map(|t| t[i]).collect())).collect();
    if let Some(mu) = projections.iter().find(|mu| !space.is_open(mu)) {
        return Ok(Err(MapWitness::NotContinuous { open: mu.clone(), preimage: mu.clone() }));
    }
    let image = Arc::new(Space::generated(space.frame().clone(), space.points().to_vec(), projections)?);
    let corestriction = StructuredMap::new(space.clone(), image, (0..space.len()).collect())?;
    Ok(corestriction.check(MapKind::Homeomorphism).map_err(|w| match w {
        MapWitness::NotContinuous { open, .. } | MapWitness::NotOpen { open, .. } => {
            MapWitness::InverseNotContinuous { open }
        }
        other => other,
    }))
}

/// `sup` or `inf` on `L_S^n`, decided by direct preimage checks and by the
/// identity `sup←(id) = ∨ p_x` (or `∧ p_x`); the two must agree. Points of
/// `L_S` are listed in element order, so a fold result is its own point index.
fn sup_inf_claim(
    claim: &str,
    frame: &Arc<Frame>,
    sizes: &[usize],
    join: bool,
    limits: &Limits,
) -> Result<VerificationReport> {
    let ls = Arc::new(sierpinski_space(frame.clone()));
    let id = LSet::new(frame.elements().collect());
    let universe = sizes.iter().map(|n| format!("LS^{n}")).collect();
    let mut cases = 0;
    for &n in sizes {
        let product = power_of_sierpinski(frame.clone(), n, limits)?;
        let p = &product.space;
        let fold = |coords: &[usize]| {
            if join {
                frame.join_all(coords.iter().copied())
            } else {
                frame.meet_all(coords.iter().copied())
            }
        };
        let mapping: Vec<usize> = (0..p.len()).map(|t| fold(&product.decode(t))).collect();
        let map = StructuredMap::new(p.clone(), ls.clone(), mapping)?;
        cases += 1;
        let direct = map.is_continuous();

        let coordinates: Vec<LSet> = product.projections.iter().map(|pr| pr.preimage(&id)).collect();
        let combined = coordinates.iter().skip(1).fold(coordinates[0].clone(), |acc, c| {
            if join {
                acc.join(c, frame)
            } else {
                acc.meet(c, frame)
            }
        });
        let identity_holds = combined == map.preimage(&id);
        let by_identity = identity_holds && p.is_open(&combined);
        if !(direct && by_identity) {
            let op = if join { "sup" } else { "inf" };
            let description = if !identity_holds {
                format!("{op}←(id) differs from the coordinatewise combination of projections on LS^{n}")
            } else {
                format!(
                    "{op}: LS^{n} → LS: direct preimage check says {}, projection identity says {}",
                    if direct { "continuous" } else { "not continuous" },
                    if by_identity { "continuous" } else { "not continuous" }
                )
            };
            let w = Witness::new().space("P", p).space("LS", &ls).map(op, "P", "LS", &map).finish(description);
            return Ok(VerificationReport::fail(claim, cases, universe, w));
        }
    }
    Ok(VerificationReport::pass(claim, cases, universe))
}

/// Initial lifts: for each carrier of a family member and each family of
/// L-sets on it (every single L-set, and every member's topology), the
/// generated topology makes exactly the right maps continuous.
fn initial_lift_claim(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let claim = "manes-2";
    let frame = family.frame();
    let ls = Arc::new(sierpinski_space(frame.clone()));
    let mut universe = family.universe();
    universe.push("all single L-sets on member carriers".into());
    let mut cases = 0;
    let mut carriers_seen = BTreeSet::new();
    let mut lifts: Vec<(Vec<String>, Vec<LSet>)> = Vec::new();
    for (_, s) in family.members() {
        lifts.push((s.points().to_vec(), s.opens().to_vec()));
        if carriers_seen.insert(s.points().to_vec()) {
            limits.check_maps("L-sets on a carrier", frame.len(), s.len())?;
            for values in point_functions(s.len(), frame.len()) {
                lifts.push((s.points().to_vec(), vec![LSet::new(values)]));
            }
        }
    }
    for (points, lsets) in lifts {
        let members: Vec<(&[usize], &Space)> = lsets.iter().map(|l| (l.values(), ls.as_ref())).collect();
        let lift = Arc::new(initial_topology(frame.clone(), points, &members)?);
        for (zn, z) in family.members() {
            limits.check_maps("point functions in the initial lift check", lift.len(), z.len())?;
            for g in point_functions(z.len(), lift.len()) {
                cases += 1;
                let gmap = StructuredMap::new(z.clone(), lift.clone(), g)?;
                let direct = gmap.is_continuous();
                let via = lsets.iter().all(|l| z.is_open(&l.preimage(gmap.mapping())));
                if direct != via {
                    let rendered: Vec<String> = lsets.iter().map(|l| lift.render_lset(l)).collect();
                    let w = Witness::new().space("X", &lift).space("Z", z).map("g", "Z", "X", &gmap).finish(format!(
                        "topology generated by [{}] is not initial: g from {zn} is {} but its composites are {}",
                        rendered.join(", "),
                        if direct { "continuous" } else { "not continuous" },
                        if via { "continuous" } else { "not continuous" }
                    ));
                    return Ok(VerificationReport::fail(claim, cases, universe, w));
                }
            }
        }
    }
    Ok(VerificationReport::pass(claim, cases, universe))
}

/// For each member and each initial family of maps into `L_S` (the full
/// set, and every subfamily of at most two maps that generates the
/// topology), the lift contains every continuous map into `L_S`.
fn initial_family_claim(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let claim = "manes-5";
    let frame = family.frame();
    let ls = Arc::new(sierpinski_space(frame.clone()));
    let id = LSet::new(frame.elements().collect());
    let mut cases = 0;
    for (xn, x) in family.members() {
        let maps = enumerate_continuous_maps(x, &ls, limits)?;
        let as_lsets: Vec<LSet> = maps.iter().map(|f| f.preimage(&id)).collect();
        let mut subfamilies: Vec<Vec<usize>> = vec![(0..maps.len()).collect()];
        for a in 0..maps.len() {
            subfamilies.push(vec![a]);
            for b in a + 1..maps.len() {
                subfamilies.push(vec![a, b]);
            }
        }
        for sub in subfamilies {
            let lift = generate(&x.power_frame(), sub.iter().map(|&i| as_lsets[i].clone()));
            if !lift.iter().eq(x.opens().iter()) {
                continue;
            }
            for (g, mu) in maps.iter().zip(&as_lsets) {
                cases += 1;
                if !lift.contains(mu) {
                    let w = Witness::new().space("X", x).space("LS", &ls).map("g", "X", "LS", g).finish(format!(
                        "continuous g: {xn} → LS is missing from the lift of an initial family"
                    ));
                    return Ok(VerificationReport::fail(claim, cases, family.universe(), w));
                }
            }
        }
    }
    Ok(VerificationReport::pass(claim, cases, family.universe()))
}

/// The five conditions characterizing `L-Top` by `L_S`, one report each:
/// Sierpinski object, initial lifts, `sup` continuity on `L_S^X`, `inf`
/// continuity on `L_S^X`, and initial families. `sizes` are the carrier
/// sizes `|X|` for the `sup`/`inf` checks.
pub fn verify_manes_conditions(
    frame: &Arc<Frame>,
    sizes: &[usize],
    family: &TestFamily,
    limits: &Limits,
) -> Result<Vec<VerificationReport>> {
    if family.frame() != frame {
        return Err(Error::FrameMismatch);
    }
    for &n in sizes {
        limits.check_points("power of the Sierpinski space", power(frame.len(), n))?;
    }
    let ls = Arc::new(sierpinski_space(frame.clone()));
    let mut first = verify_sierpinski_object("LS", &ls, family, limits)?;
    first.claim = "manes-1".into();
    Ok(vec![
        first,
        initial_lift_claim(family, limits)?,
        sup_inf_claim("manes-3", frame, sizes, true, limits)?,
        sup_inf_claim("manes-4", frame, sizes, false, limits)?,
        initial_family_claim(family, limits)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f2, labels, space_by_name};
    use crate::verify::{SoberReflector, T0Reflector};

    fn lim() -> Limits {
        Limits::default()
    }

    fn stock(name: &str) -> TestFamily {
        TestFamily::stock(name).unwrap()
    }

    #[test]
    fn sierpinski_object_over_f2() {
        let fam = stock("F2");
        let ls = space_by_name("LS_F2").unwrap();
        let r = verify_sierpinski_object("LS", &ls, &fam, &lim()).unwrap();
        assert!(r.passed, "{r}");
        assert!(r.cases >= 100);
    }

    #[test]
    fn one_point_candidate_is_not_sierpinski() {
        let fam = stock("F2");
        let one = space_by_name("IND1_F2").unwrap();
        let r = verify_sierpinski_object("one", &one, &fam, &lim()).unwrap();
        assert!(!r.passed);
        let doc = r.counterexample.unwrap().replay().unwrap();
        assert!(!doc.map("g").unwrap().is_continuous());
    }

    #[test]
    fn candidate_alone() {
        let ls = space_by_name("LS_F3").unwrap();
        let fam = TestFamily::new(ls.frame().clone(), vec![("LS".into(), ls.clone())]).unwrap();
        assert!(verify_sierpinski_object("LS", &ls, &fam, &lim()).unwrap().passed);
    }

    #[test]
    fn injective_cogenerator_halves() {
        let fam = stock("F2").t0();
        let ls = space_by_name("LS_F2").unwrap();
        let reports = verify_injective_cogenerator("LS", &ls, &fam, &lim()).unwrap();
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
        let one = space_by_name("IND1_F2").unwrap();
        let reports = verify_injective_cogenerator("one", &one, &fam, &lim()).unwrap();
        assert!(!reports[1].passed);
        let empty = TestFamily::new(fam.frame().clone(), vec![]).unwrap();
        let reports = verify_injective_cogenerator("LS", &ls, &empty, &lim()).unwrap();
        assert!(reports.iter().all(|r| r.passed && r.cases == 0));
        assert!(matches!(
            verify_injective_cogenerator("LS", &ls, &stock("F2"), &lim()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn t0_reflection_is_universal() {
        let f3 = stock("F3");
        let domains = f3.filter(|s| s.len() == 3 && s.opens().len() == 3 || s.len() == 2 && s.opens().len() == 3);
        let r = verify_epireflection(&T0Reflector, &domains, &f3.t0(), &lim()).unwrap();
        assert!(r.passed, "{r}");
        assert!(r.cases > 0);
    }

    #[test]
    fn sober_reflection_is_universal() {
        let f3 = stock("F3");
        let p3 = f3.filter(|s| s.len() == 1 && s.opens().len() == 3);
        assert_eq!(p3.len(), 1);
        let r = verify_epireflection(&SoberReflector, &p3, &f3.sober(&lim()).unwrap(), &lim()).unwrap();
        assert!(r.passed, "{r}");
    }

    struct Collapse;

    impl Reflector for Collapse {
        fn name(&self) -> &str {
            "collapse"
        }
        fn ambient(&self) -> super::super::Category {
            super::super::Category::LTop
        }
        fn contains(&self, s: &Arc<Space>, _: &Limits) -> Result<bool> {
            Ok(crate::space::is_t0(s).is_ok())
        }
        fn reflect(&self, s: &Arc<Space>, _: &Limits) -> Result<StructuredMap> {
            let one = Arc::new(Space::indiscrete(s.frame().clone(), labels(&["*"]))?);
            StructuredMap::new(s.clone(), one, vec![0; s.len()])
        }
    }

    #[test]
    fn sabotaged_reflector_fails() {
        let fam = stock("F2");
        let r = verify_epireflection(&Collapse, &fam, &fam.t0(), &lim()).unwrap();
        assert!(!r.passed);
        let doc = r.counterexample.unwrap().replay().unwrap();
        let f = doc.map("f").unwrap();
        assert!(f.is_continuous());
        assert!(f.image_points().len() > 1);
    }

    #[test]
    fn manes_over_f2() {
        let frame = Arc::new(f2());
        let reports = verify_manes_conditions(&frame, &[1, 2, 3], &stock("F2"), &lim()).unwrap();
        assert_eq!(reports.len(), 5);
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
    }

    #[test]
    fn evaluation_routes_agree() {
        for (name, s) in crate::fixtures::family("F2").unwrap() {
            let by_gen = evaluation_by_generators(&s).unwrap().is_ok();
            let e = crate::space::evaluation_embedding(&s, false, &lim()).unwrap();
            assert_eq!(by_gen, e.map.is(MapKind::Embedding), "{name}");
        }
    }
}
