//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use ltop::doc::{parse_document, serialize_document};
use ltop::fixtures::{family, frame_by_name, n5_labels_and_order, FRAME_NAMES};
use ltop::sober::{is_sober, sobrify, PointSpace};
use ltop::space::{
    evaluation_embedding, find_homeomorphism, is_ltopology, is_t0, power_of_sierpinski, sierpinski_space,
    t0_reflection,
};
use ltop::verify::{
    bracket_closure, enumerate_continuous_maps, evaluation_by_generators, is_epimorphism,
    is_epimorphism_by_test_maps, run_suite, verify_epireflection, verify_injective_cogenerator,
    verify_manes_conditions, verify_sierpinski_object, Category, Suite, T0Reflector, TestFamily,
    VerificationReport,
};
use ltop::{enumerate_frame_maps, Frame, LSet, Limits, MapKind, Space, StructuredMap};
use ltop_cli::run_command;

type Outcome = Result<String, String>;
type Named = Vec<(String, Arc<Space>)>;
type Criterion = (&'static str, fn() -> Outcome);

fn lim() -> Limits {
    Limits::default()
}

fn fixtures(frame: &str) -> Named {
    family(frame).expect("stock frame")
}

fn t0_only(spaces: &Named) -> Named {
    spaces.iter().filter(|(_, s)| is_t0(s).is_ok()).cloned().collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(reports: &[VerificationReport]) -> Result<u64, String> {
    match reports.iter().find(|r| !r.passed) {
        Some(r) => Err(r.to_string()),
        None => Ok(reports.iter().map(|r| r.cases).sum()),
    }
}

/// Every function `0..n → 0..m`, first coordinate most significant.
fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|f| (0..m).map(move |y| [f.clone(), vec![y]].concat())).collect();
    }
    out
}

/// `ν ∘ f ∈ τ_A` for every open `ν` of `B`.
fn continuous_by_definition(a: &Space, b: &Space, f: &[usize]) -> bool {
    let opens: BTreeSet<Vec<usize>> = a.opens().iter().map(|o| o.values().to_vec()).collect();
    b.opens().iter().all(|nu| opens.contains(&f.iter().map(|&y| nu.at(y)).collect::<Vec<_>>()))
}

fn continuous_maps_by_filter(a: &Space, b: &Space) -> BTreeSet<Vec<usize>> {
    all_functions(a.len(), b.len()).into_iter().filter(|f| continuous_by_definition(a, b, f)).collect()
}

/// Preserves bottom, top, binary meets and binary joins.
fn frame_hom_by_definition(t: &[usize], a: &Frame, b: &Frame) -> bool {
    t[a.bottom()] == b.bottom()
        && t[a.top()] == b.top()
        && a.elements().all(|x| {
            a.elements().all(|y| t[a.meet(x, y)] == b.meet(t[x], t[y]) && t[a.join(x, y)] == b.join(t[x], t[y]))
        })
}

/// Greatest lower bound read off the order matrix alone.
fn glb_by_scan(f: &Frame, x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = f.elements().filter(|&z| f.leq(z, x) && f.leq(z, y)).collect();
    lower.iter().copied().find(|&z| lower.iter().all(|&w| f.leq(w, z)))
}

fn lub_by_scan(f: &Frame, x: usize, y: usize) -> Option<usize> {
    let upper: Vec<usize> = f.elements().filter(|&z| f.leq(x, z) && f.leq(y, z)).collect();
    upper.iter().copied().find(|&z| upper.iter().all(|&w| f.leq(z, w)))
}

fn c1_frame_laws() -> Outcome {
    let mut triples = 0u64;
    for name in FRAME_NAMES {
        let stock = frame_by_name(name).unwrap();
        let f = Frame::validate(stock.labels().to_vec(), stock.order_matrix()).map_err(|e| format!("{name}: {e}"))?;
        for a in f.elements() {
            for b in f.elements() {
                ensure(glb_by_scan(&f, a, b) == Some(f.meet(a, b)), || format!("{name}: meet({a},{b})"))?;
                ensure(lub_by_scan(&f, a, b) == Some(f.join(a, b)), || format!("{name}: join({a},{b})"))?;
                ensure(f.meet(a, f.join(a, b)) == a && f.join(a, f.meet(a, b)) == a, || format!("{name}: absorption"))?;
                for c in f.elements() {
                    triples += 1;
                    ensure(f.meet(a, f.meet(b, c)) == f.meet(f.meet(a, b), c), || format!("{name}: meet assoc"))?;
                    ensure(f.join(a, f.join(b, c)) == f.join(f.join(a, b), c), || format!("{name}: join assoc"))?;
                    ensure(
                        f.meet(a, f.join(b, c)) == f.join(f.meet(a, b), f.meet(a, c)),
                        || format!("{name}: distributivity at ({a},{b},{c})"),
                    )?;
                }
            }
        }
    }
    let (l, o) = n5_labels_and_order();
    let err = Frame::validate(l, o).err().ok_or("N5 accepted")?;
    let w = err.distributivity_witness().ok_or_else(|| format!("N5 rejected without a triple: {err}"))?;
    ensure(w == ("c", "a", "b"), || format!("N5 witness {w:?}"))?;
    Ok(format!("F2, F3, D4 accepted, {triples} triples; N5 rejected at (c, a, b)"))
}

fn c2_opens_classify() -> Outcome {
    let mut checked = 0u64;
    for name in FRAME_NAMES {
        for (n, x) in fixtures(name) {
            let ls = Arc::new(sierpinski_space(x.frame().clone()));
            for mu in ltop::space::all_lsets(x.frame(), x.len(), &lim()).map_err(|e| e.to_string())? {
                checked += 1;
                let f = StructuredMap::new(x.clone(), ls.clone(), mu.values().to_vec()).map_err(|e| e.to_string())?;
                ensure(x.is_open(&mu) == f.is_continuous(), || format!("{n}: {}", x.render_lset(&mu)))?;
            }
        }
    }
    Ok(format!("{checked} L-sets, zero exceptions"))
}

fn c3_sierpinski_object() -> Outcome {
    let mut parts = Vec::new();
    for name in ["F2", "F3"] {
        let fam = TestFamily::stock(name).unwrap();
        let ls = Arc::new(sierpinski_space(fam.frame().clone()));
        let r = verify_sierpinski_object("LS", &ls, &fam, &lim()).map_err(|e| e.to_string())?;
        ensure(r.passed, || r.to_string())?;
        ensure(r.cases >= 100, || format!("{name}: only {} cases", r.cases))?;
        parts.push(format!("{name} {} cases", r.cases));
    }
    Ok(parts.join(", "))
}

fn c4_injective_cogenerator() -> Outcome {
    let mut parts = Vec::new();
    for name in ["F2", "F3"] {
        let fam = TestFamily::stock(name).unwrap().t0();
        let ls = Arc::new(sierpinski_space(fam.frame().clone()));
        let reports = verify_injective_cogenerator("LS", &ls, &fam, &lim()).map_err(|e| e.to_string())?;
        ensure(reports.len() == 2, || "expected two halves".into())?;
        parts.push(format!("{name} {} cases", passed(&reports)?));
    }
    Ok(parts.join(", "))
}

fn c5_sup_inf() -> Outcome {
    let mut routes = 0;
    for (name, sizes) in [("F2", vec![1, 2, 3]), ("F3", vec![1, 2])] {
        let frame = Arc::new(frame_by_name(name).unwrap());
        let fam = TestFamily::stock(name).unwrap();
        let reports = verify_manes_conditions(&frame, &sizes, &fam, &lim()).map_err(|e| e.to_string())?;
        let sup_inf: Vec<_> =
            reports.into_iter().filter(|r| r.claim == "manes-3" || r.claim == "manes-4").collect();
        ensure(sup_inf.len() == 2, || "manes-3/4 missing".into())?;
        passed(&sup_inf)?;

        let ls = Arc::new(sierpinski_space(frame.clone()));
        let id = LSet::new(frame.elements().collect());
        for &k in &sizes {
            let power = power_of_sierpinski(frame.clone(), k, &lim()).map_err(|e| e.to_string())?;
            let proj: Vec<LSet> = power.projections.iter().map(|p| p.preimage(&id)).collect();
            for is_sup in [true, false] {
                let mapping: Vec<usize> = (0..power.space.len())
                    .map(|p| {
                        let c = power.decode(p);
                        if is_sup {
                            frame.join_all(c)
                        } else {
                            frame.meet_all(c)
                        }
                    })
                    .collect();
                let direct = StructuredMap::new(power.space.clone(), ls.clone(), mapping.clone())
                    .map_err(|e| e.to_string())?
                    .is_continuous()
                    && continuous_by_definition(&power.space, &ls, &mapping);
                let pulled = LSet::new(mapping.clone());
                let combined = proj
                    .iter()
                    .skip(1)
                    .fold(proj[0].clone(), |acc, p| if is_sup { acc.join(p, &frame) } else { acc.meet(p, &frame) });
                let identity = pulled == combined && power.space.is_open(&combined);
                ensure(direct && identity, || format!("{name} |X|={k} sup={is_sup}: direct {direct}, identity {identity}"))?;
                routes += 1;
            }
        }
    }
    Ok(format!("{routes} sup/inf maps, both routes agree"))
}

fn c6_t0_reflection() -> Outcome {
    let mut factorizations = 0u64;
    for name in FRAME_NAMES {
        let spaces = fixtures(name);
        let targets = t0_only(&spaces);
        let fam = TestFamily::stock(name).unwrap();
        let r = verify_epireflection(&T0Reflector, &fam, &fam.t0(), &lim()).map_err(|e| e.to_string())?;
        ensure(r.passed, || r.to_string())?;
        for (n, x) in &spaces {
            let (t0, r) = t0_reflection(x);
            ensure(is_t0(&t0).is_ok(), || format!("T0({n}) is not T0"))?;
            for (m, y) in &targets {
                for f in continuous_maps_by_filter(x, y) {
                    let count = continuous_maps_by_filter(&t0, y)
                        .into_iter()
                        .filter(|g| (0..x.len()).all(|p| g[r.apply(p)] == f[p]))
                        .count();
                    ensure(count == 1, || format!("{n} → {m} via {f:?}: {count} factorizations"))?;
                    factorizations += 1;
                }
            }
        }
    }
    Ok(format!("{factorizations} maps, each with exactly one factorization"))
}

fn c7_evaluation() -> Outcome {
    let (mut materialized, mut generated, mut collapsed) = (0, 0, 0);
    for name in FRAME_NAMES {
        for (n, x) in fixtures(name) {
            let size = ltop::limits::power(x.frame().len(), x.opens().len());
            if is_t0(&x).is_err() {
                let e = evaluation_embedding(&x, false, &lim()).map_err(|e| e.to_string())?;
                ensure(e.map.check_injective().is_err(), || format!("{n}: evaluation injective"))?;
                collapsed += 1;
            } else if size <= lim().max_points as u128 {
                let e = evaluation_embedding(&x, true, &lim()).map_err(|e| e.to_string())?;
                ensure(e.map.is(MapKind::Embedding), || format!("{n}: not an embedding"))?;
                materialized += 1;
            } else {
                ensure(evaluation_by_generators(&x).map_err(|e| e.to_string())?.is_ok(), || format!("{n}: not an embedding"))?;
                generated += 1;
            }
        }
    }
    Ok(format!("{materialized} embeddings into materialized powers, {generated} via generators, {collapsed} non-T0 collapse"))
}

/// Each frame map `τ → L` is realized by exactly one point.
fn sober_by_definition(x: &Space, pts: &PointSpace) -> bool {
    pts.points().iter().all(|p| {
        (0..x.len()).filter(|&y| x.opens().iter().enumerate().all(|(i, mu)| p.apply(i) == mu.at(y))).count() == 1
    })
}

fn c8_points_and_sobriety() -> Outcome {
    let mut count = 0;
    for name in FRAME_NAMES {
        for (n, x) in fixtures(name) {
            let pts = PointSpace::build(&x, &lim()).map_err(|e| e.to_string())?;
            let ps = pts.space();
            ensure(is_ltopology(ps.frame(), ps.len(), ps.opens()).is_ok(), || format!("{n}: φ(τ) not an L-topology"))?;
            for (i, mu) in x.opens().iter().enumerate() {
                let phi = pts.phi(mu).map_err(|e| e.to_string())?;
                ensure(
                    pts.points().iter().enumerate().all(|(j, p)| phi.at(j) == p.apply(i)),
                    || format!("{n}: φ disagrees with evaluation"),
                )?;
            }
            let eta = pts.eta().map_err(|e| e.to_string())?;
            ensure(is_t0(&x).is_ok() == eta.check_injective().is_ok(), || format!("{n}: T0 vs η injective"))?;
            let sober = sober_by_definition(&x, &pts);
            ensure(sober == eta.is(MapKind::Homeomorphism), || format!("{n}: sober vs η homeomorphism"))?;
            ensure(sober == is_sober(&x, &lim()).map_err(|e| e.to_string())?.is_ok(), || format!("{n}: is_sober"))?;
            let once = sobrify(&x, &lim()).map_err(|e| e.to_string())?;
            let twice = sobrify(once.space(), &lim()).map_err(|e| e.to_string())?;
            ensure(twice.eta.is(MapKind::Homeomorphism), || format!("{n}: second η not a homeomorphism"))?;
            count += 1;
        }
    }
    let p3 = fixtures("F3").into_iter().find(|(n, _)| n == "P3").unwrap().1;
    ensure(is_t0(&p3).is_ok() && is_sober(&p3, &lim()).unwrap().is_err(), || "P3 should be T0, not sober".into())?;
    let sob = sobrify(&p3, &lim()).map_err(|e| e.to_string())?;
    ensure(sob.space().len() == 3, || "sobrification of P3 size".into())?;
    let ls = Arc::new(sierpinski_space(p3.frame().clone()));
    ensure(find_homeomorphism(sob.space(), &ls).map_err(|e| e.to_string())?.is_some(), || "SOB(P3) ≇ L_S".into())?;
    Ok(format!("{count} fixtures; P3 sobrifies to 3 points ≅ L_S(F3)"))
}

fn c9_epi_criteria() -> Outcome {
    let (mut etas, mut maps) = (0, 0);
    for name in FRAME_NAMES {
        let t0s = t0_only(&fixtures(name));
        let codomains: Vec<Arc<Space>> = t0s.iter().map(|(_, s)| s.clone()).collect();
        for (n, x) in &t0s {
            let eta = sobrify(x, &lim()).map_err(|e| e.to_string())?.eta;
            ensure(is_epimorphism(&eta, Category::LTop0).map_err(|e| e.to_string())?.is_ok(), || format!("η_{n} not epi"))?;
            etas += 1;
        }
        for (n, x) in &t0s {
            for (m, y) in &t0s {
                for f in enumerate_continuous_maps(x, y, &lim()).map_err(|e| e.to_string())? {
                    let pullback = is_epimorphism(&f, Category::LTop0).map_err(|e| e.to_string())?.is_ok();
                    let dense = bracket_closure(y, &f.image_points()).len() == y.len();
                    let brute = is_epimorphism_by_test_maps(&f, &codomains, &lim()).map_err(|e| e.to_string())?.is_ok();
                    ensure(pullback == dense && dense == brute, || {
                        format!("{n} → {m} {:?}: pullback {pullback}, closure {dense}, test maps {brute}", f.mapping())
                    })?;
                    maps += 1;
                }
            }
        }
    }
    Ok(format!("{etas} η maps epi; three criteria agree on {maps} maps"))
}

fn c10_firmness() -> Outcome {
    let mut cases = 0;
    for name in FRAME_NAMES {
        let t0s = t0_only(&fixtures(name));
        for (n, x) in &t0s {
            let mut targets: Named = Vec::new();
            for (m, y) in &t0s {
                if is_sober(y, &lim()).map_err(|e| e.to_string())?.is_ok() {
                    targets.push((m.clone(), y.clone()));
                }
            }
            targets.push((format!("SOB({n})"), sobrify(x, &lim()).map_err(|e| e.to_string())?.space().clone()));
            for (m, y) in &targets {
                for f in enumerate_continuous_maps(x, y, &lim()).map_err(|e| e.to_string())? {
                    if !f.is(MapKind::Embedding) || is_epimorphism(&f, Category::LTop0).map_err(|e| e.to_string())?.is_err() {
                        continue;
                    }
                    let firm = ltop::sober::firm_factorization(&f, &lim()).map_err(|e| format!("{n} → {m}: {e}"))?;
                    let eta = firm.points.eta().map_err(|e| e.to_string())?;
                    let (fs, g) = (&firm.f_star, &firm.inverse);
                    let ok = eta.then(fs).map_err(|e| e.to_string())?.mapping() == f.mapping()
                        && fs.then(g).map_err(|e| e.to_string())?.mapping().iter().enumerate().all(|(i, &j)| i == j)
                        && g.then(fs).map_err(|e| e.to_string())?.mapping().iter().enumerate().all(|(i, &j)| i == j)
                        && fs.is_continuous()
                        && g.is_continuous();
                    ensure(ok, || format!("{n} → {m} {:?}: factorization laws fail", f.mapping()))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} epimorphic embeddings factor through isomorphisms"))
}

/// `[M]` straight from its definition: the intersection of the equalizers
/// of all pairs of continuous maps into T₀ spaces that agree on `M`. The
/// fixture codomains include `L_S`, which suffices.
fn closure_by_equalizers(x: &Space, codomains: &Named) -> Vec<u32> {
    let full = (1u32 << x.len()) - 1;
    let mut equalizers = BTreeSet::new();
    for (_, y) in codomains {
        let maps: Vec<_> = continuous_maps_by_filter(x, y).into_iter().collect();
        for f in &maps {
            for g in &maps {
                equalizers.insert((0..x.len()).filter(|&p| f[p] == g[p]).fold(0u32, |m, p| m | 1 << p));
            }
        }
    }
    (0..=full).map(|m| equalizers.iter().filter(|&&e| e & m == m).fold(full, |acc, e| acc & e)).collect()
}

fn c11_bracket() -> Outcome {
    let (mut subsets, mut closed) = (0, 0);
    let mut skipped = Vec::new();
    for name in FRAME_NAMES {
        let spaces = fixtures(name);
        let t0s = t0_only(&spaces);
        for (n, x) in spaces.iter().filter(|(_, s)| s.len() <= 3) {
            let oracle = closure_by_equalizers(x, &t0s);
            let as_set = |m: u32| (0..x.len()).filter(|&p| m >> p & 1 == 1).collect::<Vec<_>>();
            let to_mask = |s: &[usize]| s.iter().fold(0u32, |m, &p| m | 1 << p);
            for m in 0..(1u32 << x.len()) {
                let c = to_mask(&bracket_closure(x, &as_set(m)));
                ensure(c == oracle[m as usize], || format!("{n}: [{m:b}] = {c:b}, definition gives {:b}", oracle[m as usize]))?;
                ensure(c & m == m, || format!("{n}: not extensive at {m:b}"))?;
                ensure(to_mask(&bracket_closure(x, &as_set(c))) == c, || format!("{n}: not idempotent at {m:b}"))?;
                for bigger in (m..(1u32 << x.len())).filter(|b| b & m == m) {
                    ensure(to_mask(&bracket_closure(x, &as_set(bigger))) & c == c, || format!("{n}: not monotone"))?;
                }
                subsets += 1;
            }
        }
        for (n, x) in &t0s {
            let size = ltop::limits::power(x.frame().len(), x.opens().len());
            if size > 10_000 {
                skipped.push(n.clone());
                continue;
            }
            let pts = PointSpace::build(x, &lim()).map_err(|e| e.to_string())?;
            let power = power_of_sierpinski(x.frame().clone(), x.opens().len(), &lim()).map_err(|e| e.to_string())?;
            let mut image: Vec<usize> = pts.points().iter().map(|p| power.encode(p.table())).collect();
            image.sort_unstable();
            ensure(bracket_closure(&power.space, &image) == image, || format!("points of {n} not closed"))?;
            closed += 1;
        }
        let fam = TestFamily::stock(name).unwrap();
        passed(&run_suite(Suite::BracketLaws, &fam, None, &lim()).map_err(|e| e.to_string())?)?;
    }
    Ok(format!(
        "{subsets} subsets match the definition; {closed} point spaces closed; over 10^4: {}",
        skipped.join(" ")
    ))
}

fn c12_oracles() -> Outcome {
    let mut frame_pairs = 0;
    for (a, b) in [("F3", "F3"), ("D4", "F2"), ("D4", "D4")] {
        let (fa, fb) = (frame_by_name(a).unwrap(), frame_by_name(b).unwrap());
        let found: BTreeSet<Vec<usize>> = enumerate_frame_maps(&fa, &fb, &lim())
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|m| m.table().to_vec())
            .collect();
        let oracle: BTreeSet<Vec<usize>> =
            all_functions(fa.len(), fb.len()).into_iter().filter(|t| frame_hom_by_definition(t, &fa, &fb)).collect();
        ensure(found == oracle, || format!("({a},{b}): {found:?} vs {oracle:?}"))?;
        frame_pairs += 1;
    }
    let (mut pairs, mut maps) = (0, 0);
    for name in FRAME_NAMES {
        let spaces = fixtures(name);
        for (n, a) in &spaces {
            for (m, b) in &spaces {
                if ltop::limits::power(b.len(), a.len()) > 10_000 {
                    continue;
                }
                let found: BTreeSet<Vec<usize>> = enumerate_continuous_maps(a, b, &lim())
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .map(|f| f.mapping().to_vec())
                    .collect();
                let oracle = continuous_maps_by_filter(a, b);
                ensure(found == oracle, || format!("{n} → {m}: {} vs {}", found.len(), oracle.len()))?;
                pairs += 1;
                maps += oracle.len();
            }
        }
    }
    Ok(format!("{frame_pairs} frame pairs; {pairs} space pairs, {maps} continuous maps"))
}

fn run(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_command(std::iter::once("ltop").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn c13_cli() -> Outcome {
    for frame in FRAME_NAMES {
        let name = format!("fixtures_{}.json", frame.to_lowercase());
        let text = std::fs::read_to_string(corpus(&name)).map_err(|e| e.to_string())?;
        let doc = parse_document(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(serialize_document(&doc) == text, || format!("{name} does not round-trip"))?;
    }
    let (code, out) = run(&["reflect", "sober", "--space", "P3"]);
    ensure(code == 0, || out.clone())?;
    let doc = parse_document(&out).map_err(|e| e.to_string())?;
    ensure(serialize_document(&doc) == out, || "sobrification output does not round-trip".into())?;

    let (code, out) = run(&["verify", "all"]);
    ensure(code == 0, || format!("verify all exited {code}:\n{out}"))?;

    let bad = corpus("corrupted_sierpinski.json");
    let (code, out) = run(&["--json", "--doc", &bad, "verify", "all", "--frame", "F2", "--candidate", "LS"]);
    ensure(code == 1, || format!("corrupted fixture exited {code}"))?;
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let failing = v["reports"]
        .as_array()
        .and_then(|rs| rs.iter().find(|r| r["passed"] == false))
        .ok_or("no failing report")?;
    let payload = serde_json::to_string(&failing["counterexample"]["document"]).map_err(|e| e.to_string())?;
    let replayed = parse_document(&payload).map_err(|e| e.to_string())?;
    let g = replayed.map("g").ok_or("counterexample has no map g")?;
    ensure(!g.is_continuous(), || "replayed g is continuous".into())?;

    let path = std::env::temp_dir().join(format!("ltop-acceptance-{}.json", std::process::id()));
    std::fs::write(&path, &payload).map_err(|e| e.to_string())?;
    let (code, _) = run(&["--doc", &path.to_string_lossy(), "check", "continuous", "--map", "g"]);
    std::fs::remove_file(&path).ok();
    ensure(code == 1, || format!("replayed `check continuous --map g` exited {code}"))?;
    Ok(format!("round-trips hold; verify all exits 0; corrupted fixture fails {}", failing["claim"]))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("frame laws", c1_frame_laws),
        ("opens are the continuous maps into L_S", c2_opens_classify),
        ("Sierpinski object", c3_sierpinski_object),
        ("injective cogenerator", c4_injective_cogenerator),
        ("sup and inf are continuous", c5_sup_inf),
        ("T0 reflection", c6_t0_reflection),
        ("evaluation embedding", c7_evaluation),
        ("points and sobriety", c8_points_and_sobriety),
        ("epimorphisms in LTop0", c9_epi_criteria),
        ("firmness", c10_firmness),
        ("bracket closure", c11_bracket),
        ("enumeration oracles", c12_oracles),
        ("command line", c13_cli),
    ];
    // Keep panics from individual criteria out of the report.
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {reason} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
