//! The `ltop` command line: checks, constructions, and verification suites
//! over workbench documents and the stock fixtures.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a cap was exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ltop::doc::{serialize_document, serialize_raw, DocError, DocumentDoc, WorkbenchDocument};
use ltop::fixtures::{frame_by_name, space_by_name, FRAME_NAMES};
use ltop::sober::{is_sober, sobrify, PointSpace};
use ltop::space::{
    initial_topology, is_t0, product_space, quotient_space, sierpinski_space, subspace, t0_reflection, MapKind,
};
use ltop::verify::{bracket_closure, is_epimorphism, run_suite, Category, Suite, TestFamily, VerificationReport};
use ltop::{generate_subframe, Frame, Limits, Space, StructuredMap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ltop", version, about = "Workbench for finite L-topological spaces")]
struct Cli {
    /// Workbench document (JSON). Names not found in it fall back to the stock fixtures.
    #[arg(long, global = true)]
    doc: Option<std::path::PathBuf>,
    /// Cap on materialized point sets. For `verify`, fixtures with more points are left out.
    #[arg(long, global = true)]
    max_points: Option<usize>,
    /// Cap on enumerated functions and maps.
    #[arg(long, global = true)]
    max_maps: Option<u128>,
    /// Cap on backtracking search nodes.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a property of a frame, space or map.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Build a structure and print it as a document.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Reflect a space and print the reflection as a document.
    #[command(subcommand)]
    Reflect(ReflectCommand),
    /// List the frame maps `τ → L` of a space.
    Points(SpaceArg),
    /// The closure `[M]` of a subset of points.
    Closure {
        #[arg(long)]
        space: String,
        /// Comma-separated point labels.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        subset: Vec<String>,
    },
    /// Run a verification suite over the fixtures.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SpaceArg {
    #[arg(long)]
    space: String,
}

#[derive(Debug, Args)]
struct MapArg {
    #[arg(long)]
    map: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CategoryArg {
    Ltop,
    Ltop0,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    Frame {
        #[arg(long)]
        frame: String,
    },
    Topology(SpaceArg),
    T0(SpaceArg),
    Sober(SpaceArg),
    Continuous(MapArg),
    Embedding(MapArg),
    Epi {
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value = "ltop")]
        category: CategoryArg,
    },
}

#[derive(Debug, Subcommand)]
enum GenerateCommand {
    /// The subframe generated by some elements.
    Subframe {
        #[arg(long)]
        frame: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        generators: Vec<String>,
    },
    /// The initial topology on labelled points from point functions into spaces.
    Initial {
        #[arg(long)]
        frame: String,
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        /// `SPACE=y1,y2,...`, the images of the points in order. Repeatable.
        #[arg(long = "via")]
        via: Vec<String>,
    },
    /// The product of spaces with its projections.
    Product {
        #[arg(long, value_delimiter = ',', required = true)]
        spaces: Vec<String>,
    },
    /// The quotient of a space along a surjection given as `x=y` pairs.
    Quotient {
        #[arg(long)]
        space: String,
        #[arg(long, value_delimiter = ',', required = true)]
        mapping: Vec<String>,
    },
    /// The subspace on some points.
    Subspace {
        #[arg(long)]
        space: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        points: Vec<String>,
    },
    /// The Sierpinski space of a frame.
    Sierpinski {
        #[arg(long)]
        frame: String,
    },
}

#[derive(Debug, Subcommand)]
enum ReflectCommand {
    T0(SpaceArg),
    Sober(SpaceArg),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// sierpinski-object, injective-cogenerator, t0-reflection, sober-reflection,
    /// firmness, manes, bracket-laws, or all.
    suite: String,
    /// Frames to run over; defaults to F2, F3 and D4. Repeatable.
    #[arg(long)]
    frame: Vec<String>,
    /// Space replacing the Sierpinski space as the object under test.
    #[arg(long)]
    candidate: Option<String>,
}

/// Why a command stopped before producing its result.
#[derive(Debug)]
enum Failure {
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Cap(_) => EXIT_CAP,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<ltop::Error> for Failure {
    fn from(e: ltop::Error) -> Self {
        if e.is_cap_exceeded() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        match &e {
            DocError::Invalid { source, .. } if source.is_cap_exceeded() => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Results go to `out`, diagnostics to `err`.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

struct Context {
    raw: DocumentDoc,
    doc: Option<WorkbenchDocument>,
    doc_error: Option<DocError>,
    limits: Limits,
    json: bool,
}

impl Context {
    fn load(cli: &Cli) -> Result<Context, Failure> {
        let defaults = Limits::default();
        let mut limits = Limits {
            max_points: cli.max_points.unwrap_or(defaults.max_points),
            max_maps: cli.max_maps.unwrap_or(defaults.max_maps),
            max_nodes: cli.max_nodes.unwrap_or(defaults.max_nodes),
        };
        if matches!(cli.command, Command::Verify(_)) {
            // For verify, --max-points selects fixtures rather than capping constructions.
            limits.max_points = defaults.max_points;
        }
        let (raw, doc, doc_error) = match &cli.doc {
            None => (DocumentDoc::default(), None, None),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
                let raw: DocumentDoc = serde_json::from_str(&text).map_err(|e| {
                    Failure::Input(format!("{}: syntax error at line {}, column {}: {e}", path.display(), e.line(), e.column()))
                })?;
                match WorkbenchDocument::from_doc(raw.clone()) {
                    Ok(d) => (raw, Some(d), None),
                    Err(e) => (raw, None, Some(e)),
                }
            }
        };
        Ok(Context { raw, doc, doc_error, limits, json: cli.json })
    }

    /// The validated document; an invalid document is an input error here.
    fn doc(&self) -> Result<Option<&WorkbenchDocument>, Failure> {
        match &self.doc_error {
            Some(e) => Err(e.clone().into()),
            None => Ok(self.doc.as_ref()),
        }
    }

    fn frame(&self, name: &str) -> Result<Arc<Frame>, Failure> {
        if let Some(f) = self.doc()?.and_then(|d| d.frame(name)) {
            return Ok(f.clone());
        }
        frame_by_name(name).map(Arc::new).ok_or_else(|| Failure::Input(format!("unknown frame `{name}`")))
    }

    fn space(&self, name: &str) -> Result<Arc<Space>, Failure> {
        if let Some(s) = self.doc()?.and_then(|d| d.space(name)) {
            return Ok(s.clone());
        }
        space_by_name(name).ok_or_else(|| Failure::Input(format!("unknown space `{name}`")))
    }

    fn map(&self, name: &str) -> Result<StructuredMap, Failure> {
        self.doc()?
            .and_then(|d| d.map(name))
            .cloned()
            .ok_or_else(|| Failure::Input(format!("unknown map `{name}`")))
    }

    /// A name under which `frame` can be referenced from an output
    /// document, adding document frames to `output` as needed.
    fn frame_ref(&self, frame: &Arc<Frame>, output: &mut WorkbenchDocument) -> Result<Option<String>, Failure> {
        if let Some(doc) = self.doc()? {
            if let Some((n, f)) = doc.frames().iter().find(|(_, f)| *f == frame) {
                output.add_frame(n, f.clone());
                return Ok(Some(n.clone()));
            }
        }
        Ok(FRAME_NAMES.iter().find(|n| frame_by_name(n).as_ref() == Some(&**frame)).map(|n| n.to_string()))
    }

    fn add_space(&self, output: &mut WorkbenchDocument, name: &str, space: &Arc<Space>) -> Result<(), Failure> {
        let frame = self.frame_ref(space.frame(), output)?;
        output.add_space(name, frame.as_deref(), space.clone());
        Ok(())
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let ctx = Context::load(&cli)?;
    match cli.command {
        Command::Check(c) => check(&ctx, c, out),
        Command::Generate(g) => generate(&ctx, g, out),
        Command::Reflect(r) => reflect(&ctx, r, out),
        Command::Points(SpaceArg { space }) => points(&ctx, &space, out),
        Command::Closure { space, subset } => closure(&ctx, &space, &subset, out),
        Command::Verify(v) => verify(&ctx, &v, cli.max_points, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

/// Reports a check result and picks the exit code.
fn verdict(ctx: &Context, out: &mut dyn Write, check: &str, subject: &str, witness: Option<String>) -> Outcome {
    let passed = witness.is_none();
    let text = if ctx.json {
        let v = json!({ "check": check, "subject": subject, "passed": passed, "witness": witness });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
    } else {
        match &witness {
            None => format!("PASS {check} {subject}\n"),
            Some(w) => format!("FAIL {check} {subject}\n  witness: {w}\n"),
        }
    };
    emit(out, &text)?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn check(ctx: &Context, command: CheckCommand, out: &mut dyn Write) -> Outcome {
    match command {
        CheckCommand::Frame { frame } => {
            let Some(fd) = ctx.raw.frames.get(&frame) else {
                if frame_by_name(&frame).is_some() {
                    return verdict(ctx, out, "frame", &frame, None);
                }
                return Err(Failure::Input(format!("unknown frame `{frame}`")));
            };
            match Frame::validate(fd.elements.clone(), fd.leq.clone()) {
                Ok(_) => verdict(ctx, out, "frame", &frame, None),
                Err(e) => verdict(ctx, out, "frame", &frame, Some(e.to_string())),
            }
        }
        CheckCommand::Topology(SpaceArg { space }) => {
            let Some(sd) = ctx.raw.spaces.get(&space) else {
                ctx.space(&space)?;
                return verdict(ctx, out, "topology", &space, None);
            };
            // Validate just this space (and its frame) so a bad topology is a
            // failed check rather than an unreadable document.
            let mut single = DocumentDoc::default();
            if let ltop::doc::FrameRefDoc::Name(n) = &sd.frame {
                if let Some(fd) = ctx.raw.frames.get(n) {
                    single.frames.insert(n.clone(), fd.clone());
                }
            }
            let mut sd = sd.clone();
            sd.frame_maps = None;
            single.spaces.insert(space.clone(), sd);
            match WorkbenchDocument::from_doc(single) {
                Ok(_) => verdict(ctx, out, "topology", &space, None),
                Err(DocError::Invalid { source: ltop::Error::Topology(v), .. }) => {
                    verdict(ctx, out, "topology", &space, Some(v.to_string()))
                }
                Err(e) => Err(e.into()),
            }
        }
        CheckCommand::T0(SpaceArg { space }) => {
            let s = ctx.space(&space)?;
            let witness = is_t0(&s).err().map(|(x, y)| {
                format!("`{}` and `{}` are not separated by any open", s.point_label(x), s.point_label(y))
            });
            verdict(ctx, out, "t0", &space, witness)
        }
        CheckCommand::Sober(SpaceArg { space }) => {
            let s = ctx.space(&space)?;
            let witness = is_sober(&s, &ctx.limits)?.err().map(|w| w.describe(&s));
            verdict(ctx, out, "sober", &space, witness)
        }
        CheckCommand::Continuous(MapArg { map }) => map_check(ctx, out, &map, MapKind::Continuous),
        CheckCommand::Embedding(MapArg { map }) => map_check(ctx, out, &map, MapKind::Embedding),
        CheckCommand::Epi { map, category } => {
            let f = ctx.map(&map)?;
            let category = match category {
                CategoryArg::Ltop => Category::LTop,
                CategoryArg::Ltop0 => Category::LTop0,
            };
            let witness = is_epimorphism(&f, category)?.err().map(|w| w.describe(&f));
            verdict(ctx, out, &format!("epi({category})"), &map, witness)
        }
    }
}

fn map_check(ctx: &Context, out: &mut dyn Write, name: &str, kind: MapKind) -> Outcome {
    let f = ctx.map(name)?;
    let witness = f.check(kind).err().map(|w| w.describe(&f));
    verdict(ctx, out, kind.name(), name, witness)
}

fn print_document(out: &mut dyn Write, doc: &WorkbenchDocument) -> Outcome {
    emit(out, &serialize_document(doc))?;
    Ok(EXIT_OK)
}

fn point_indices(space: &Space, labels: &[String]) -> Result<Vec<usize>, Failure> {
    labels.iter().map(|l| space.point(l).map_err(Failure::from)).collect()
}

fn generate(ctx: &Context, command: GenerateCommand, out: &mut dyn Write) -> Outcome {
    let mut output = WorkbenchDocument::new();
    match command {
        GenerateCommand::Subframe { frame, generators } => {
            let f = ctx.frame(&frame)?;
            let gens = generators
                .iter()
                .map(|g| f.element(g).map_err(|e| Failure::Input(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let sub = generate_subframe(&f, &gens);
            let labels: Vec<&str> = sub.members().iter().map(|&e| f.label(e)).collect();
            let text = if ctx.json {
                format!("{}\n", serde_json::to_string_pretty(&json!({ "frame": frame, "subframe": labels })).expect("json"))
            } else {
                format!("{{{}}}\n", labels.join(", "))
            };
            emit(out, &text)?;
            return Ok(EXIT_OK);
        }
        GenerateCommand::Initial { frame, points, via } => {
            let f = ctx.frame(&frame)?;
            let mut family = Vec::new();
            for item in &via {
                let (name, images) = item
                    .split_once('=')
                    .ok_or_else(|| Failure::Input(format!("`--via {item}` is not of the form SPACE=y1,y2,...")))?;
                let target = ctx.space(name)?;
                let images: Vec<String> = images.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect();
                family.push((point_indices(&target, &images)?, target));
            }
            let refs: Vec<(&[usize], &Space)> = family.iter().map(|(m, s)| (m.as_slice(), s.as_ref())).collect();
            let space = Arc::new(initial_topology(f, points, &refs)?);
            ctx.add_space(&mut output, "initial", &space)?;
        }
        GenerateCommand::Product { spaces } => {
            let factors = spaces.iter().map(|n| ctx.space(n)).collect::<Result<Vec<_>, _>>()?;
            let frame = factors.first().map(|s| s.frame().clone()).ok_or_else(|| Failure::Input("no factors".into()))?;
            let product = product_space(frame, &factors, &ctx.limits)?;
            ctx.add_space(&mut output, "product", &product.space)?;
            for (i, p) in product.projections.iter().enumerate() {
                let factor = format!("factor{}", i + 1);
                ctx.add_space(&mut output, &factor, p.target())?;
                output.add_map(&format!("p{}", i + 1), "product", &factor, p.clone());
            }
        }
        GenerateCommand::Quotient { space, mapping } => {
            let s = ctx.space(&space)?;
            let mut targets: Vec<String> = Vec::new();
            let mut images = vec![None; s.len()];
            for pair in &mapping {
                let (x, y) = pair
                    .split_once('=')
                    .ok_or_else(|| Failure::Input(format!("`{pair}` is not of the form point=class")))?;
                let x = s.point(x)?;
                let y = match targets.iter().position(|t| t == y) {
                    Some(i) => i,
                    None => {
                        targets.push(y.to_string());
                        targets.len() - 1
                    }
                };
                images[x] = Some(y);
            }
            let mapping = images
                .iter()
                .enumerate()
                .map(|(x, y)| y.ok_or_else(|| Failure::Input(format!("point `{}` has no image", s.point_label(x)))))
                .collect::<Result<Vec<_>, _>>()?;
            let (q, map) = quotient_space(&s, &mapping, targets)?;
            ctx.add_space(&mut output, &space, &s)?;
            ctx.add_space(&mut output, "quotient", &q)?;
            output.add_map("q", &space, "quotient", map);
        }
        GenerateCommand::Subspace { space, points } => {
            let s = ctx.space(&space)?;
            let keep = point_indices(&s, &points)?;
            let sub = Arc::new(subspace(&s, &keep)?);
            ctx.add_space(&mut output, &space, &s)?;
            ctx.add_space(&mut output, "subspace", &sub)?;
            output.add_map("inclusion", "subspace", &space, StructuredMap::new(sub.clone(), s.clone(), keep)?);
        }
        GenerateCommand::Sierpinski { frame } => {
            let f = ctx.frame(&frame)?;
            ctx.add_space(&mut output, "LS", &Arc::new(sierpinski_space(f)))?;
        }
    }
    print_document(out, &output)
}

fn reflect(ctx: &Context, command: ReflectCommand, out: &mut dyn Write) -> Outcome {
    let mut output = WorkbenchDocument::new();
    match command {
        ReflectCommand::T0(SpaceArg { space }) => {
            let s = ctx.space(&space)?;
            let (r, map) = t0_reflection(&s);
            ctx.add_space(&mut output, &space, &s)?;
            ctx.add_space(&mut output, "T0", &r)?;
            output.add_map("r", &space, "T0", map);
        }
        ReflectCommand::Sober(SpaceArg { space }) => {
            let s = ctx.space(&space)?;
            let sob = sobrify(&s, &ctx.limits)?;
            ctx.add_space(&mut output, &space, &s)?;
            let frame = ctx.frame_ref(s.frame(), &mut output)?;
            output.add_point_space("SOB", frame.as_deref(), &space, &sob.points);
            output.add_map("eta", &space, "SOB", sob.eta.clone());
        }
    }
    print_document(out, &output)
}

fn points(ctx: &Context, name: &str, out: &mut dyn Write) -> Outcome {
    let s = ctx.space(name)?;
    let pts = PointSpace::build(&s, &ctx.limits)?;
    if ctx.json {
        let mut output = WorkbenchDocument::new();
        ctx.add_space(&mut output, name, &s)?;
        let frame = ctx.frame_ref(s.frame(), &mut output)?;
        output.add_point_space("PT", frame.as_deref(), name, &pts);
        return print_document(out, &output);
    }
    let mut text = format!("{} frame maps τ → L on {name}\n", pts.points().len());
    for (i, p) in pts.points().iter().enumerate() {
        let parts: Vec<String> = s
            .opens()
            .iter()
            .zip(p.table())
            .map(|(o, &v)| format!("{} ↦ {}", s.render_lset(o), s.frame().label(v)))
            .collect();
        let realized: Vec<&str> = (0..s.len())
            .filter(|&x| s.opens().iter().zip(p.table()).all(|(o, &v)| o.at(x) == v))
            .map(|x| s.point_label(x))
            .collect();
        text.push_str(&format!("  {}: {}  realized by {{{}}}\n", pts.space().point_label(i), parts.join(", "), realized.join(", ")));
    }
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn closure(ctx: &Context, name: &str, subset: &[String], out: &mut dyn Write) -> Outcome {
    let s = ctx.space(name)?;
    let m = point_indices(&s, subset)?;
    let c = bracket_closure(&s, &m);
    let labels: Vec<&str> = c.iter().map(|&p| s.point_label(p)).collect();
    let text = if ctx.json {
        format!("{}\n", serde_json::to_string_pretty(&json!({ "space": name, "closure": labels })).expect("json"))
    } else {
        format!("{}\n", s.render_points(&c))
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

/// The universe for a frame: the stock fixtures over it (if it is a stock
/// frame) and every document space over an equal frame, minus the candidate.
fn family_for(ctx: &Context, frame_name: &str, candidate: Option<&str>, max_points: Option<usize>) -> Result<TestFamily, Failure> {
    let frame = ctx.frame(frame_name)?;
    let mut members = TestFamily::stock(frame_name)
        .filter(|f| f.frame() == &frame)
        .map(|f| f.members().to_vec())
        .unwrap_or_default();
    if let Some(doc) = ctx.doc()? {
        for (n, e) in doc.spaces() {
            if e.space.frame() == &frame && Some(n.as_str()) != candidate && members.iter().all(|(m, _)| m != n) {
                members.push((n.clone(), e.space.clone()));
            }
        }
    }
    let family = TestFamily::new(frame, members)?;
    Ok(match max_points {
        Some(n) => family.with_max_points(n),
        None => family,
    })
}

fn verify(ctx: &Context, args: &VerifyArgs, max_points: Option<usize>, out: &mut dyn Write) -> Outcome {
    let suites: Vec<Suite> = match args.suite.as_str() {
        "all" => Suite::ALL.to_vec(),
        name => vec![Suite::from_name(name).ok_or_else(|| Failure::Input(format!("unknown suite `{name}`")))?],
    };
    let frames: Vec<String> =
        if args.frame.is_empty() { FRAME_NAMES.iter().map(|s| s.to_string()).collect() } else { args.frame.clone() };
    let candidate = match &args.candidate {
        Some(n) => Some((n.clone(), ctx.space(n)?)),
        None => None,
    };

    let mut all_reports: Vec<(String, &'static str, VerificationReport)> = Vec::new();
    for frame in &frames {
        let family = family_for(ctx, frame, args.candidate.as_deref(), max_points)?;
        let candidate = match &candidate {
            Some((n, s)) if s.frame() == family.frame() => Some((n.as_str(), s)),
            Some((n, _)) => return Err(Failure::Input(format!("candidate `{n}` is not over frame `{frame}`"))),
            None => None,
        };
        for &suite in &suites {
            for r in run_suite(suite, &family, candidate, &ctx.limits)? {
                all_reports.push((frame.clone(), suite.name(), r));
            }
        }
    }
    let passed = all_reports.iter().all(|(_, _, r)| r.passed);

    if ctx.json {
        let items: Vec<serde_json::Value> = all_reports
            .iter()
            .map(|(frame, suite, r)| {
                let mut v = serde_json::to_value(r).expect("json");
                v["frame"] = json!(frame);
                v["suite"] = json!(suite);
                v
            })
            .collect();
        let v = json!({ "passed": passed, "reports": items });
        emit(out, &format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))?;
    } else {
        let mut text = String::new();
        for frame in &frames {
            for &suite in &suites {
                let reports: Vec<&VerificationReport> = all_reports
                    .iter()
                    .filter(|(f, s, _)| f == frame && *s == suite.name())
                    .map(|(_, _, r)| r)
                    .collect();
                let cases: u64 = reports.iter().map(|r| r.cases).sum();
                let ok = reports.iter().all(|r| r.passed);
                text.push_str(&format!(
                    "{} {frame} {}: {cases} cases\n",
                    if ok { "PASS" } else { "FAIL" },
                    suite.name()
                ));
                for r in reports {
                    text.push_str(&format!("  {r}\n"));
                    if let Some(c) = &r.counterexample {
                        for line in serialize_raw(&c.document).lines() {
                            text.push_str(&format!("    {line}\n"));
                        }
                    }
                }
            }
        }
        text.push_str(if passed { "all claims passed\n" } else { "some claims failed\n" });
        emit(out, &text)?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}
