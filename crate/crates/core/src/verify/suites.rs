//! Named bundles of claims, as run by `ltop verify`.

use std::sync::Arc;

use super::claims::{
    evaluation_by_generators, verify_epireflection, verify_injective_cogenerator, verify_manes_conditions,
    verify_sierpinski_object,
};
use super::report::{VerificationReport, Witness};
use super::{
    bracket_closure, enumerate_continuous_maps, is_epimorphism, is_epimorphism_by_test_maps, is_extremal_mono,
    Category, SoberReflector, T0Reflector, TestFamily,
};
use crate::error::Result;
use crate::limits::{power, Limits};
use crate::sober::{is_sober, sobrify, firm_factorization, PointSpace};
use crate::space::{
    evaluation_embedding, is_ltopology, is_t0, power_of_sierpinski, sierpinski_space, t0_reflection, MapKind,
    Space, StructuredMap,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    SierpinskiObject,
    InjectiveCogenerator,
    Manes,
    T0Reflection,
    SoberReflection,
    Firmness,
    BracketLaws,
}

impl Suite {
    /// Every suite, in the order `verify all` runs them.
    pub const ALL: [Suite; 7] = [
        Suite::SierpinskiObject,
        Suite::InjectiveCogenerator,
        Suite::Manes,
        Suite::T0Reflection,
        Suite::SoberReflection,
        Suite::Firmness,
        Suite::BracketLaws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SierpinskiObject => "sierpinski-object",
            Suite::InjectiveCogenerator => "injective-cogenerator",
            Suite::Manes => "manes",
            Suite::T0Reflection => "t0-reflection",
            Suite::SoberReflection => "sober-reflection",
            Suite::Firmness => "firmness",
            Suite::BracketLaws => "bracket-laws",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Runs a suite over `family`. `candidate` replaces `L_S` as the object
/// under test in the Sierpinski-object and injective-cogenerator suites.
pub fn run_suite(
    suite: Suite,
    family: &TestFamily,
    candidate: Option<(&str, &Arc<Space>)>,
    limits: &Limits,
) -> Result<Vec<VerificationReport>> {
    let ls = Arc::new(sierpinski_space(family.frame().clone()));
    let (cname, candidate) = candidate.unwrap_or(("LS", &ls));
    match suite {
        Suite::SierpinskiObject => Ok(vec![verify_sierpinski_object(cname, candidate, family, limits)?]),
        Suite::InjectiveCogenerator => verify_injective_cogenerator(cname, candidate, &family.t0(), limits),
        Suite::Manes => {
            let sizes: &[usize] = if family.frame().len() <= 2 { &[1, 2, 3] } else { &[1, 2] };
            verify_manes_conditions(family.frame(), sizes, family, limits)
        }
        Suite::T0Reflection => Ok(vec![
            t0_output(family)?,
            verify_epireflection(&T0Reflector, family, &family.t0(), limits)?,
            evaluation_embeds(family, limits)?,
            evaluation_collapses(family, limits)?,
        ]),
        Suite::SoberReflection => sober_suite(family, limits),
        Suite::Firmness => Ok(vec![firmness(family, limits)?]),
        Suite::BracketLaws => Ok(vec![
            closure_laws(family)?,
            epi_criteria(family, limits)?,
            extremal_monos(family, limits)?,
            point_space_closed(family, limits)?,
            sober_image_closed(family, limits)?,
        ]),
    }
}

/// Case counter for one claim.
struct Tally {
    claim: &'static str,
    universe: Vec<String>,
    cases: u64,
}

impl Tally {
    fn new(claim: &'static str, family: &TestFamily) -> Tally {
        Tally { claim, universe: family.universe(), cases: 0 }
    }

    fn case(&mut self) {
        self.cases += 1;
    }

    fn note(&mut self, note: String) {
        self.universe.push(note);
    }

    fn pass(self) -> Result<VerificationReport> {
        Ok(VerificationReport::pass(self.claim, self.cases, self.universe))
    }

    fn fail(self, witness: Witness, description: String) -> Result<VerificationReport> {
        Ok(VerificationReport::fail(self.claim, self.cases, self.universe, witness.finish(description)))
    }
}

fn reflection_witness(s: &Arc<Space>, map: &StructuredMap) -> Witness {
    Witness::new().space("S", s).space("R", map.target()).map("r", "S", "R", map)
}

fn t0_output(family: &TestFamily) -> Result<VerificationReport> {
    let mut t = Tally::new("t0-reflection.output", family);
    for (n, s) in family.members() {
        t.case();
        let (r, map) = t0_reflection(s);
        if is_t0(&r).is_err() || !map.is(MapKind::Quotient) {
            return t.fail(reflection_witness(s, &map), format!("T0 reflection of {n} is not a T0 quotient"));
        }
    }
    t.pass()
}

/// Every T₀ member embeds in `L_S^τ`. The generator route runs on every
/// member; the evaluation map into the materialized power is checked too
/// whenever the power has at most `max_points` points, and both must agree.
fn evaluation_embeds(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let mut t = Tally::new("t0-reflection.evaluation-embedding", family);
    let mut materialized = Vec::new();
    for (n, s) in family.t0().members() {
        t.case();
        let by_generators = evaluation_by_generators(s)?;
        if let Err(w) = &by_generators {
            let id = StructuredMap::identity(s.clone());
            return t.fail(Witness::new().space("X", s), format!("evaluation of {n} is not an embedding: {}", w.describe(&id)));
        }
        if power(s.frame().len(), s.opens().len()) <= limits.max_points as u128 {
            let e = evaluation_embedding(s, true, limits)?;
            if let Err(w) = e.map.check(MapKind::Embedding) {
                let witness = Witness::new().space("X", s).space("P", &e.power.space).map("e", "X", "P", &e.map);
                return t.fail(
                    witness,
                    format!("evaluation of {n} into the power is not an embedding: {}", w.describe(&e.map)),
                );
            }
            materialized.push(n.clone());
        }
    }
    t.note(format!("materialized: {}", materialized.join(" ")));
    t.pass()
}

fn evaluation_collapses(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let mut t = Tally::new("t0-reflection.evaluation-non-injective", family);
    for (n, s) in family.filter(|s| is_t0(s).is_err()).members() {
        t.case();
        let by_generators = matches!(evaluation_by_generators(s)?, Err(crate::space::MapWitness::NotInjective { .. }));
        let materialized = if power(s.frame().len(), s.opens().len()) <= limits.max_points as u128 {
            evaluation_embedding(s, false, limits)?.map.check_injective().is_err()
        } else {
            by_generators
        };
        if !(by_generators && materialized) {
            return t.fail(Witness::new().space("X", s), format!("{n} is not T0 yet its evaluation map is injective"));
        }
    }
    t.pass()
}

fn sober_suite(family: &TestFamily, limits: &Limits) -> Result<Vec<VerificationReport>> {
    let mut phi = Tally::new("sober-reflection.phi-topology", family);
    let mut t0_eta = Tally::new("sober-reflection.t0-iff-eta-injective", family);
    let mut sober_eta = Tally::new("sober-reflection.sober-iff-eta-homeomorphism", family);
    let mut output = Tally::new("sober-reflection.output-sober", family);
    let mut twice = Tally::new("sober-reflection.idempotent", family);
    let mut epi = Tally::new("sober-reflection.eta-epi", family);
    let mut failures: Vec<Option<(Witness, String)>> = vec![None, None, None, None, None, None];
    let mut record = |slot: usize, w: Witness, d: String| {
        if failures[slot].is_none() {
            failures[slot] = Some((w, d));
        }
    };

    for (n, s) in family.members() {
        let sob = sobrify(s, limits)?;
        let pts = sob.space();
        let base = || Witness::new().space("X", s).space("PT", pts).map("eta", "X", "PT", &sob.eta);

        phi.case();
        let images = s.opens().iter().map(|mu| sob.points.phi(mu)).collect::<Result<Vec<_>>>()?;
        if let Err(v) = is_ltopology(s.frame(), pts.len(), &images) {
            record(0, base(), format!("φ(τ) of {n} is not an L-topology: {v}"));
        }

        t0_eta.case();
        let t0 = is_t0(s).is_ok();
        if t0 != sob.eta.check_injective().is_ok() {
            record(1, base(), format!("{n}: T0 is {t0} but η injective is {}", !t0));
        }

        sober_eta.case();
        let sober = is_sober(s, limits)?.is_ok();
        if sober != sob.eta.is(MapKind::Homeomorphism) {
            record(2, base(), format!("{n}: sober is {sober} but η homeomorphism is {}", !sober));
        }

        output.case();
        if is_sober(pts, limits)?.is_err() || is_t0(pts).is_err() {
            record(3, base(), format!("sobrification of {n} is not sober and T0"));
        }

        twice.case();
        let again = sobrify(pts, limits)?;
        if !again.eta.is(MapKind::Homeomorphism) {
            let w = base().space("PT2", again.space()).map("eta2", "PT", "PT2", &again.eta);
            record(4, w, format!("η of the sobrification of {n} is not a homeomorphism"));
        }

        if t0 {
            epi.case();
            if let Err(w) = is_epimorphism(&sob.eta, Category::LTop0)? {
                record(5, base(), format!("η of {n} is not epi in LTop0: {}", w.describe(&sob.eta)));
            }
        }
    }

    let mut reports = Vec::new();
    for (tally, failure) in [phi, t0_eta, sober_eta, output, twice, epi].into_iter().zip(failures) {
        reports.push(match failure {
            None => tally.pass()?,
            Some((w, d)) => tally.fail(w, d)?,
        });
    }
    reports.push(verify_epireflection(&SoberReflector, &family.t0(), &family.sober(limits)?, limits)?);
    Ok(reports)
}

/// Every epimorphic embedding from a T₀ member into a sober member, plus
/// every `η_X` for T₀ `X`, has a firm factorization with the stated laws.
fn firmness(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let mut t = Tally::new("firmness", family);
    let t0 = family.t0();
    let sober = family.sober(limits)?;
    let mut candidates: Vec<StructuredMap> = Vec::new();
    for (_, x) in t0.members() {
        for (_, y) in sober.members() {
            for f in enumerate_continuous_maps(x, y, limits)? {
                if f.is(MapKind::Embedding) && is_epimorphism(&f, Category::LTop0)?.is_ok() {
                    candidates.push(f);
                }
            }
        }
        candidates.push(sobrify(x, limits)?.eta);
    }
    let name_of = |s: &Arc<Space>| {
        family.members().iter().find(|(_, m)| m == s).map(|(n, _)| n.clone()).unwrap_or_else(|| "pt".into())
    };
    for f in candidates {
        t.case();
        let firm = firm_factorization(&f, limits)?;
        let eta = firm.points.eta()?;
        let laws = [
            (eta.then(&firm.f_star)?.mapping() == f.mapping(), "f*∘η = f"),
            (firm.inverse.then(&firm.f_star)?.mapping() == (0..f.target().len()).collect::<Vec<_>>(), "f*∘g = id"),
            (
                firm.f_star.then(&firm.inverse)?.mapping() == (0..firm.points.space().len()).collect::<Vec<_>>(),
                "g∘f* = id",
            ),
            (firm.f_star.is_continuous() && firm.inverse.is_continuous(), "f* and g continuous"),
        ];
        if let Some((_, law)) = laws.iter().find(|(ok, _)| !ok) {
            let w = Witness::new()
                .space("X", f.source())
                .space("Y", f.target())
                .space("PT", firm.points.space())
                .map("f", "X", "Y", &f)
                .map("f_star", "PT", "Y", &firm.f_star)
                .map("g", "Y", "PT", &firm.inverse);
            return t.fail(w, format!("{law} fails for f: {} → {}", name_of(f.source()), name_of(f.target())));
        }
    }
    t.pass()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Extensive, idempotent and monotone, over every subset of every member
/// with at most three points.
fn closure_laws(family: &TestFamily) -> Result<VerificationReport> {
    let mut t = Tally::new("bracket-laws.closure-operator", family);
    for (n, s) in family.with_max_points(3).members() {
        let all: Vec<Vec<usize>> = subsets(s.len()).collect();
        let closed: Vec<Vec<usize>> = all.iter().map(|m| bracket_closure(s, m)).collect();
        for (m, c) in all.iter().zip(&closed) {
            t.case();
            if !is_subset(m, c) || bracket_closure(s, c) != *c {
                let d = format!("closure of {} in {n} is {}, not an idempotent extension", s.render_points(m), s.render_points(c));
                return t.fail(Witness::new().space("X", s), d);
            }
        }
        for (a, ca) in all.iter().zip(&closed) {
            for (b, cb) in all.iter().zip(&closed) {
                if is_subset(a, b) {
                    t.case();
                    if !is_subset(ca, cb) {
                        let d = format!(
                            "closure in {n} is not monotone: {} ⊆ {} but closures are {} and {}",
                            s.render_points(a),
                            s.render_points(b),
                            s.render_points(ca),
                            s.render_points(cb)
                        );
                        return t.fail(Witness::new().space("X", s), d);
                    }
                }
            }
        }
    }
    t.pass()
}

/// On every continuous map between T₀ members: injective pullback on
/// opens, dense image, and the brute-force coequalizer test agree.
fn epi_criteria(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let mut t = Tally::new("bracket-laws.epi-criteria", family);
    let t0 = family.t0();
    let codomains = t0.spaces();
    for (xn, x) in t0.members() {
        for (yn, y) in t0.members() {
            for f in enumerate_continuous_maps(x, y, limits)? {
                t.case();
                let pullback = is_epimorphism(&f, Category::LTop0)?.is_ok();
                let dense = bracket_closure(y, &f.image_points()).len() == y.len();
                let brute = is_epimorphism_by_test_maps(&f, &codomains, limits)?.is_ok();
                if pullback != dense || pullback != brute {
                    let w = Witness::new().space("X", x).space("Y", y).map("f", "X", "Y", &f);
                    let d = format!(
                        "epi criteria disagree on f: {xn} → {yn}: pullback {pullback}, dense image {dense}, test maps {brute}"
                    );
                    return t.fail(w, d);
                }
            }
        }
    }
    t.pass()
}

fn extremal_monos(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let mut t = Tally::new("bracket-laws.extremal-mono", family);
    for (xn, x) in family.members() {
        for (yn, y) in family.members() {
            for f in enumerate_continuous_maps(x, y, limits)? {
                t.case();
                if is_extremal_mono(&f, Category::LTop)?.is_ok() != f.is(MapKind::Embedding) {
                    let w = Witness::new().space("X", x).space("Y", y).map("f", "X", "Y", &f);
                    return t.fail(w, format!("extremal mono in LTop disagrees with embedding on f: {xn} → {yn}"));
                }
            }
        }
    }
    t.pass()
}

/// The points of each T₀ member, read as tuples indexed by `τ`, form a
/// closed subset of `L_S^τ` whenever that power has at most `max_points`
/// points.
fn point_space_closed(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let mut t = Tally::new("bracket-laws.point-space-closed", family);
    let mut skipped = Vec::new();
    for (n, s) in family.t0().members() {
        let size = power(s.frame().len(), s.opens().len());
        if size > limits.max_points as u128 {
            skipped.push(format!("{n}({size})"));
            continue;
        }
        t.case();
        let pts = PointSpace::build(s, limits)?;
        let product = power_of_sierpinski(s.frame().clone(), s.opens().len(), limits)?;
        let mut image: Vec<usize> = pts.points().iter().map(|p| product.encode(p.table())).collect();
        image.sort_unstable();
        let closure = bracket_closure(&product.space, &image);
        if closure != image {
            let extra = closure.iter().find(|p| image.binary_search(p).is_err()).copied().unwrap_or_default();
            let d = format!(
                "points of {n} are not closed in the power: closure adds {}",
                product.space.point_label(extra)
            );
            return t.fail(Witness::new().space("X", s), d);
        }
    }
    if !skipped.is_empty() {
        t.note(format!("skipped over cap: {}", skipped.join(" ")));
    }
    t.pass()
}

/// Each sober member embeds in `L_S^τ` with closed image, when the power
/// has at most `max_points` points.
fn sober_image_closed(family: &TestFamily, limits: &Limits) -> Result<VerificationReport> {
    let mut t = Tally::new("bracket-laws.sober-closed", family);
    let mut skipped = Vec::new();
    for (n, s) in family.sober(limits)?.members() {
        let size = power(s.frame().len(), s.opens().len());
        if size > limits.max_points as u128 {
            skipped.push(format!("{n}({size})"));
            continue;
        }
        t.case();
        let e = evaluation_embedding(s, true, limits)?;
        if let Err(w) = is_extremal_mono(&e.map, Category::LTop0)? {
            let witness = Witness::new().space("X", s).space("P", &e.power.space).map("e", "X", "P", &e.map);
            return t.fail(witness, format!("evaluation of sober {n}: {}", w.describe(&e.map)));
        }
    }
    if !skipped.is_empty() {
        t.note(format!("skipped over cap: {}", skipped.join(" ")));
    }
    t.pass()
}
