use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncode_core::bounds::{bound_report, BoundReport};
use ncode_core::families::{make_s_c_over_d, make_s_c_over_min, make_s_delta, make_s_n, make_t_n};
use ncode_core::geometry::arrangement::{code_with_witnesses, CodeOptions, DEFAULT_MAX_HYPERPLANES};
use ncode_core::geometry::rational::{format_rational, parse_rational, Rational};
use ncode_core::geometry::transform::{close_realization, inflate_all, inflate_realization, trim_all, trim_realization};
use ncode_core::geometry::Realization;
use ncode_core::io;
use ncode_core::morphisms::{apply_morphism, find_minor, restriction, sdelta_to_sm};
use ncode_core::realize::{realize_closed, realize_closed_completion, verify_plan_with, PlanCheck};
use ncode_core::sunflower::{build_counterexample, run_trials, tverberg_partition, weight_k_census, Certification};
use ncode_core::{Code, Codeword, Error};
use serde_json::{json, Value};

// Printing to a closed pipe (`ncode ... | head`) is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

const EXIT_INTERNAL: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "ncode", version, about = "Intersection complete neural codes and exact convex realizations")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for trials and cell enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a code: size, maximal words, intersection completeness.
    Inspect {
        code: PathBuf,
        /// Reject codes that do not list the empty word.
        #[arg(long)]
        strict: bool,
    },
    /// Emit a named code family as code JSON.
    #[command(subcommand)]
    Family(Family),
    /// Bounds on the open and closed embedding dimensions.
    Bounds { code: PathBuf },
    /// Apply, construct or search for trunk morphisms
    #[command(subcommand)]
    Morphism(Morphism),
    /// The code realized by a realization file.
    CodeOf { realization: PathBuf },
    /// Shrink an open realization; closures then realize the same code.
    Trim(Transform),
    /// Grow a closed realization into an open one with the same code.
    Inflate(Transform),
    /// Build a closed convex realization of an intersection complete code.
    Realize {
        code: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the full construction plan.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Realize the intersection completion when the code is not complete.
        #[arg(long)]
        completion: bool,
    },
    /// Check a realization or plan file against a code.
    Verify {
        code: PathBuf,
        /// A realization or a plan written by `realize --plan`.
        target: PathBuf,
        /// Also compare the full realized code (dimension at most 3).
        #[arg(long)]
        deep: bool,
    },
    /// Flexible sunflower constructions and random trials
    #[command(subcommand)]
    Sunflower(Sunflower),
    /// Split points into r parts whose hulls share a point.
    Tverberg {
        points: PathBuf,
        #[arg(short, default_value_t = 2)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// S_n on n+1 neurons.
    Sn { n: usize },
    /// T_n on 2n neurons.
    Tn { n: usize },
    /// S_Δ for a simplicial complex Δ.
    Sdelta { complex: PathBuf },
    /// S_{C/D} for codes D ⊆ C.
    Scd { c: PathBuf, d: PathBuf },
    /// S_{C/D} with D the minimal nonempty words of C.
    Scmin { c: PathBuf },
}

#[derive(Subcommand)]
enum Morphism {
    /// Apply a trunk list to its source code.
    Apply { file: PathBuf },
    /// The facet-trunk morphism from S_Δ onto S_m, as a trunk list.
    SdeltaToSm { complex: PathBuf },
    /// Restrict a code to a set of neurons.
    Restrict {
        code: PathBuf,
        /// Comma-separated neurons, e.g. 1,2,4.
        #[arg(long, value_delimiter = ',')]
        to: Vec<usize>,
    },
    /// Search for the target as a minor of the source.
    Minor { source: PathBuf, target: PathBuf },
}

#[derive(Args)]
struct Transform {
    realization: PathBuf,
    /// Use this shift instead of computing a safe one.
    #[arg(long)]
    eps: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sunflower {
    /// A k-flexible sunflower whose petal points miss the center.
    Counterexample {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        /// Fan the copies of each petal apart instead of repeating them.
        #[arg(long)]
        skew: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random k-flexible sunflowers: does the hull of petal points meet the center?
    Trials {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Skip enumerating each petal code.
        #[arg(long)]
        no_verify: bool,
    },
    /// Count the weight-k codewords of a sunflower spec.
    Census { spec: PathBuf },
}

enum Failure {
    Core(Error),
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => write(p, text),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn print_json(v: &Value) {
    out!("{}", io::to_pretty(v));
}

fn words(ws: &[Codeword]) -> String {
    format!("{{{}}}", ws.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

struct Ctx {
    json: bool,
    seed: u64,
    opts: CodeOptions,
}

impl Ctx {
    fn code(&self, path: &Path, strict: bool) -> Result<Code, Failure> {
        Ok(io::code_from_json(&read(path)?, strict)?)
    }

    fn realization(&self, path: &Path) -> Result<Realization, Failure> {
        Ok(io::realization_from_json(&read(path)?)?)
    }
}

fn inspect(ctx: &Ctx, path: &Path, strict: bool) -> Outcome {
    let c = ctx.code(path, strict)?;
    let maximal = c.maximal_codewords();
    let missing = c.first_missing_intersection();
    if ctx.json {
        print_json(&json!({
            "n": c.n(),
            "codewords": c.len(),
            "intersection_complete": missing.is_none(),
            "simplicial_complex": c.is_simplicial_complex(),
            "complex_dim": c.dim(),
            "maximal": maximal.iter().map(|w| w.neurons()).collect::<Vec<_>>(),
        }));
    } else {
        out!("n = {}", c.n());
        out!("codewords = {}", c.len());
        out!("code = {c}");
        out!("maximal = {}", words(&maximal));
        match missing {
            None => out!("IC = true"),
            Some((a, b)) => out!("IC = false ({a} ∩ {b} missing)"),
        }
        out!("simplicial complex = {}", c.is_simplicial_complex());
        out!("dim Δ(C) = {}", c.dim());
    }
    Ok(())
}

fn family(f: &Family, ctx: &Ctx) -> Outcome {
    let code = match f {
        Family::Sn { n } => make_s_n(*n)?,
        Family::Tn { n } => make_t_n(*n)?,
        Family::Sdelta { complex } => make_s_delta(&io::complex_from_json(&read(complex)?)?)?,
        Family::Scd { c, d } => make_s_c_over_d(&ctx.code(c, false)?, &ctx.code(d, false)?)?,
        Family::Scmin { c } => make_s_c_over_min(&ctx.code(c, false)?)?,
    };
    out!("{}", io::code_to_json(&code));
    Ok(())
}

fn show_bound(lo: usize, hi: Option<usize>) -> String {
    match hi {
        Some(h) if h == lo => format!("{lo}"),
        Some(h) => format!("[{lo}, {h}]"),
        None => format!(">= {lo}"),
    }
}

fn print_report(r: &BoundReport) {
    out!("n                  {}", r.n);
    out!("codewords          {}", r.codewords);
    out!("maximal codewords  {}", r.maximal_codewords);
    out!("IC                 {}", r.intersection_complete);
    out!("complex            {}", r.simplicial_complex);
    out!("dim Δ(C)           {}", r.complex_dim);
    if let Some(f) = &r.family {
        out!("family             {f}");
    }
    out!("odim               {}", show_bound(r.odim_lower, r.odim_upper));
    out!("cdim               {}", show_bound(r.cdim_lower, r.cdim_upper));
    for reason in &r.reasons {
        out!("  {:<12} {:>4}  {}", format!("{:?}", reason.quantity), reason.value, reason.source);
    }
}

fn bounds(ctx: &Ctx, path: &Path) -> Outcome {
    let r = bound_report(&ctx.code(path, false)?);
    if ctx.json {
        print_json(&serde_json::to_value(&r).expect("reports serialize"));
    } else {
        print_report(&r);
    }
    Ok(())
}

fn morphism(m: &Morphism, ctx: &Ctx) -> Outcome {
    match m {
        Morphism::Apply { file } => {
            let f = io::morphism_from_json(&read(file)?)?;
            out!("{}", io::code_to_json(&apply_morphism(&f)?));
        }
        Morphism::SdeltaToSm { complex } => {
            let f = sdelta_to_sm(&io::complex_from_json(&read(complex)?)?)?;
            out!("{}", io::morphism_to_json(&f));
        }
        Morphism::Restrict { code, to } => {
            let c = ctx.code(code, false)?;
            let sigma = Codeword::from_neurons(c.n(), to)?;
            out!("{}", io::code_to_json(&restriction(&c, sigma)?));
        }
        Morphism::Minor { source, target } => {
            let (s, t) = (ctx.code(source, false)?, ctx.code(target, false)?);
            match find_minor(&s, &t)? {
                Some(w) if ctx.json => print_json(&json!({
                    "minor": true,
                    "trunk_of": w.trunk_of.neurons(),
                    "morphism": serde_json::from_str::<Value>(&io::morphism_to_json(&w.morphism)).expect("valid JSON"),
                })),
                Some(w) => out!("minor: yes, via the trunk of {} and {} trunks", w.trunk_of, w.morphism.target_n()),
                None if ctx.json => print_json(&json!({"minor": false})),
                None => out!("minor: no"),
            }
        }
    }
    Ok(())
}

fn code_of(ctx: &Ctx, path: &Path) -> Outcome {
    let r = ctx.realization(path)?;
    let census = code_with_witnesses(&r, ctx.opts)?;
    if ctx.json {
        let witnesses: Vec<Value> = census
            .witnesses
            .iter()
            .map(|(c, p)| json!({"word": c.neurons(), "point": p.iter().map(format_rational).collect::<Vec<_>>()}))
            .collect();
        print_json(&json!({"code": io::code_to_value(&census.code), "witnesses": witnesses}));
    } else {
        out!("code = {}", census.code);
        out!("codewords = {}", census.code.len());
        for (c, p) in &census.witnesses {
            out!("  {c}: ({})", p.iter().map(format_rational).collect::<Vec<_>>().join(", "));
        }
    }
    Ok(())
}

fn parse_eps(s: &str) -> Result<Rational, Failure> {
    let e = parse_rational(s)?;
    if e <= Rational::from_integer(0.into()) {
        return Err(Failure::Core(Error::Precondition(format!("eps must be positive, got {s}"))));
    }
    Ok(e)
}

fn transform(ctx: &Ctx, t: &Transform, inflate: bool) -> Outcome {
    let r = ctx.realization(&t.realization)?;
    let (out, eps, preserved) = match &t.eps {
        None => {
            let (out, eps) = if inflate { inflate_realization(&r, ctx.opts)? } else { trim_realization(&r, ctx.opts)? };
            (out, eps, Some(true))
        }
        Some(s) => {
            let eps = parse_eps(s)?;
            let out = if inflate {
                if r.topology().is_open() {
                    return Err(Failure::Core(Error::Precondition("inflation expects a closed realization".into())));
                }
                inflate_all(&r.to_h_form()?, &eps)?
            } else {
                if !r.topology().is_open() {
                    return Err(Failure::Core(Error::Precondition("trimming expects an open realization".into())));
                }
                trim_all(&r, &eps)?
            };
            // Compare codes when that stays within the caps.
            let before = code_with_witnesses(&r, ctx.opts).map(|c| c.code);
            let after = code_with_witnesses(&out, ctx.opts).and_then(|a| {
                if inflate {
                    Ok(a.code)
                } else {
                    let closed = code_with_witnesses(&close_realization(&out)?, ctx.opts)?.code;
                    Ok(if closed == a.code { a.code } else { Code::empty(r.n()) })
                }
            });
            let preserved = match (before, after) {
                (Ok(b), Ok(a)) => Some(a == b),
                _ => None,
            };
            (out, eps, preserved)
        }
    };
    let text = io::realization_to_json(&out);
    let summary = json!({"eps": format_rational(&eps), "code_preserved": preserved});
    match &t.output {
        Some(p) => {
            write(p, &text)?;
            if ctx.json {
                print_json(&summary);
            } else {
                out!("eps = {}", format_rational(&eps));
                out!("code preserved = {}", preserved.map_or("unknown (cap)".to_string(), |b| b.to_string()));
            }
        }
        None => {
            out!("{text}");
            eprintln!("eps = {}", format_rational(&eps));
        }
    }
    if preserved == Some(false) {
        eprintln!("warning: this eps changes the code");
    }
    Ok(())
}

fn realize(ctx: &Ctx, code: &Path, output: &Option<PathBuf>, plan_path: &Option<PathBuf>, completion: bool) -> Outcome {
    let c = ctx.code(code, false)?;
    let (r, plan, changed) = if completion {
        realize_closed_completion(&c)?
    } else {
        let (r, p) = realize_closed(&c)?;
        (r, p, false)
    };
    if changed {
        eprintln!("warning: the code is not intersection complete; realized its completion {}", plan.code);
    }
    if let Some(p) = plan_path {
        write(p, &io::plan_to_json(&plan))?;
    }
    let text = io::realization_to_json(&r);
    match output {
        Some(p) => {
            write(p, &text)?;
            let summary = json!({"dim": plan.m, "route": plan.route.to_string(), "completion": changed});
            if ctx.json {
                print_json(&summary);
            } else {
                out!("realized in R^{} ({} route)", plan.m, plan.route);
            }
        }
        None => out!("{text}"),
    }
    Ok(())
}

fn report_check(ctx: &Ctx, check: &PlanCheck) -> Outcome {
    let layer = |b: Option<bool>| match b {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "skipped",
    };
    if ctx.json {
        print_json(&json!({
            "combinatorial": check.combinatorial,
            "witness": check.witness,
            "geometric": check.geometric,
            "passed": check.passed(),
            "notes": check.notes,
        }));
    } else {
        out!("combinatorial: {}", layer(Some(check.combinatorial)));
        out!("witness:       {}", layer(Some(check.witness)));
        out!("geometric:     {}", layer(check.geometric));
        for n in &check.notes {
            out!("  {n}");
        }
    }
    if check.passed() {
        return Ok(());
    }
    let failed = if !check.combinatorial {
        "combinatorial"
    } else if !check.witness {
        "witness"
    } else {
        "geometric"
    };
    Err(Failure::Check(format!("verification failed at the {failed} layer")))
}

fn verify(ctx: &Ctx, code: &Path, target: &Path, deep: bool) -> Outcome {
    let c = ctx.code(code, false)?;
    let text = read(target)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", target.display())))?;
    if v.get("face_points").is_some() {
        let plan = io::plan_from_value(&v)?;
        return report_check(ctx, &verify_plan_with(&c, &plan, deep, ctx.opts)?);
    }
    // A bare realization: only the realized code can be compared.
    let r = io::realization_from_value(&v)?;
    let got = code_with_witnesses(&r, ctx.opts)?.code;
    let same = got == c;
    if ctx.json {
        print_json(&json!({"geometric": same, "passed": same, "realized": io::code_to_value(&got)}));
    } else {
        out!("geometric:     {}", if same { "pass" } else { "FAIL" });
        if !same {
            out!("  realized code is {got}");
        }
    }
    if same {
        Ok(())
    } else {
        Err(Failure::Check("verification failed at the geometric layer".into()))
    }
}

fn sunflower(ctx: &Ctx, s: &Sunflower) -> Outcome {
    match s {
        Sunflower::Counterexample { d, k, skew, output } => {
            let (spec, points) = build_counterexample(*d, *k, *skew)?;
            let census = weight_k_census(&spec).ok();
            let cert = match spec.certification {
                Certification::CodeChecked => "code-checked",
                Certification::ByConstruction => "by-construction",
            };
            let text = io::sunflower_to_json(&spec, &points);
            if output.is_none() {
                out!("{text}");
                return Ok(());
            }
            emit(output, &text)?;
            if ctx.json {
                print_json(&json!({
                    "petals": spec.n(),
                    "certification": cert,
                    "hull_meets_center": false,
                    "weight_k_words": census,
                }));
            } else {
                out!("{} petals in R^{d}, {k}-flexible ({cert})", spec.n());
                out!("hull of the petal points misses the center");
                if let Some(w) = census {
                    out!("weight-{k} codewords: {w}");
                }
            }
        }
        Sunflower::Trials { d, k, n, trials, no_verify } => {
            let summary = run_trials(*d, *k, *n, *trials, ctx.seed, !no_verify)?;
            if ctx.json {
                print_json(&json!({
                    "d": d, "k": k, "n": n,
                    "trials": summary.trials,
                    "hits": summary.hits,
                    "miss_seeds": summary.misses,
                }));
            } else {
                out!("(d, k, n) = ({d}, {k}, {n}), seeds {}..{}", ctx.seed, ctx.seed.wrapping_add(*trials as u64));
                out!("hull meets center: {}/{}", summary.hits, summary.trials);
                if !summary.misses.is_empty() {
                    let shown: Vec<String> = summary.misses.iter().take(10).map(u64::to_string).collect();
                    out!("missed at seeds {}{}", shown.join(", "), if summary.misses.len() > 10 { ", ..." } else { "" });
                }
            }
        }
        Sunflower::Census { spec } => {
            let (spec, _) = io::sunflower_from_json(&read(spec)?)?;
            let count = weight_k_census(&spec)?;
            if ctx.json {
                print_json(&json!({"k": spec.k, "weight_k_words": count}));
            } else {
                out!("weight-{} codewords: {count}", spec.k);
            }
        }
    }
    Ok(())
}

fn tverberg(ctx: &Ctx, path: &Path, r: usize) -> Outcome {
    let (_, points) = io::points_from_json(&read(path)?)?;
    let found = tverberg_partition(&points, r)?;
    let one_indexed = |parts: &[Vec<usize>]| -> Vec<Vec<usize>> { parts.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect() };
    match found {
        Some(t) if ctx.json => print_json(&json!({
            "parts": one_indexed(&t.parts),
            "point": t.point.iter().map(format_rational).collect::<Vec<_>>(),
        })),
        Some(t) => {
            let parts: Vec<String> = one_indexed(&t.parts)
                .iter()
                .map(|p| format!("{{{}}}", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            out!("parts: {}", parts.join(" "));
            out!("common point: ({})", t.point.iter().map(format_rational).collect::<Vec<_>>().join(", "));
        }
        None if ctx.json => print_json(&json!({"parts": null})),
        None => out!("no partition into {r} parts"),
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if cli.threads == 0 {
        return Err(Failure::Core(Error::Precondition("--threads must be at least 1".into())));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let max_hyperplanes = match std::env::var("NCODE_MAX_HYPERPLANES") {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Input(format!("NCODE_MAX_HYPERPLANES must be a positive integer, got {v:?}")))?,
        Err(_) => DEFAULT_MAX_HYPERPLANES,
    };
    let ctx = Ctx {
        json: cli.json,
        seed: cli.seed,
        opts: CodeOptions { max_hyperplanes, parallel: cli.threads > 1, ..CodeOptions::default() },
    };
    match &cli.command {
        Command::Inspect { code, strict } => inspect(&ctx, code, *strict),
        Command::Family(f) => family(f, &ctx),
        Command::Bounds { code } => bounds(&ctx, code),
        Command::Morphism(m) => morphism(m, &ctx),
        Command::CodeOf { realization } => code_of(&ctx, realization),
        Command::Trim(t) => transform(&ctx, t, false),
        Command::Inflate(t) => transform(&ctx, t, true),
        Command::Realize { code, output, plan, completion } => realize(&ctx, code, output, plan, *completion),
        Command::Verify { code, target, deep } => verify(&ctx, code, target, *deep),
        Command::Sunflower(s) => sunflower(&ctx, s),
        Command::Tverberg { points, r } => tverberg(&ctx, points, *r),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_PRECONDITION,
            })
        }
        Err(Failure::Input(msg)) | Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}
