//! Command-line front end. Exit codes: 0 ok, 1 verification failure, 2 usage error,
//! 3 cap exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ydcalc::classify::{classification_report, ReportOptions};
use ydcalc::error::ErrorClass;
use ydcalc::exactla::DEFAULT_CAP;
use ydcalc::hopf::{self, HopfAlgebra};
use ydcalc::nichols::{self, graded_dims, presentation_for, quantum_symmetrizer, verify_presentation};
use ydcalc::rewrite::{self, build_lifting, hopf_check_presented, in_lambda3, Dimension, Family};
use ydcalc::ydmod::{self, Summand};
use ydcalc::{Error, ScalarContext};

#[derive(Parser)]
#[command(name = "ydcalc", version, about = "Exact Hopf-algebra, Yetter-Drinfeld and Nichols computations over H_{p,-1}")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hopf algebras H, A, gr A, their dual and double.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Yetter-Drinfeld modules.
    #[command(subcommand)]
    Yd(YdCmd),
    /// Nichols algebras.
    #[command(subcommand)]
    Nichols(NicholsCmd),
    /// Rewriting systems for the lifting families.
    #[command(subcommand)]
    Rewrite(RewriteCmd),
    /// Classification reports.
    #[command(subcommand)]
    Classify(ClassifyCmd),
}

#[derive(Subcommand)]
enum HopfCmd {
    /// Build an algebra and print its structure tensors.
    Build(HopfArgs),
    /// Check every Hopf axiom.
    Verify(HopfArgs),
    /// Build the Drinfeld double and check it.
    Double(Common),
    /// Check A ≅ H* via the explicit map.
    Dual(Common),
}

#[derive(Subcommand)]
enum YdCmd {
    /// Construct a module and check the YD compatibility.
    Make(ModArgs),
    /// The braiding matrix, the braid equation, and the closed-form comparison.
    Braiding(ModArgs),
    /// The generalized Dynkin diagram of X ⊕ V and the finiteness verdict.
    Dynkin(ModArgs),
    /// All simple modules over the double.
    Census(Common),
}

#[derive(Subcommand)]
enum NicholsCmd {
    /// Graded dimensions of B(V).
    Dims(ModArgs),
    /// Quadratic criterion against dim ker Ω₂.
    Quad(ModArgs),
    /// Check the explicit presentation of B(V).
    VerifyPresentation(PresArgs),
}

#[derive(Subcommand)]
enum RewriteCmd {
    /// Irreducible-word count.
    Dim(LiftArgs),
    /// Ambiguity resolution report.
    Overlaps(LiftArgs),
    /// Hopf check of the presented algebra.
    HopfCheck(LiftArgs),
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Finite-type objects and Hopf algebras for one p.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraKind {
    H,
    A,
    GrA,
    Dual,
    Double,
}

#[derive(Args)]
struct HopfArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = AlgebraKind::H)]
    algebra: AlgebraKind,
    /// Read the algebra from a JSON file written by `hopf build --format json`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ModArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_negative_numbers = true)]
    i: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    j: Option<i64>,
    /// χ-exponent of a second summand, or with --l the first index of V_{k,l}.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    l: Option<i64>,
    /// One-dimensional summands K_{χ^k}; repeatable.
    #[arg(long, allow_negative_numbers = true)]
    chi: Vec<i64>,
    #[arg(long)]
    cutoff: Option<usize>,
}

#[derive(Args)]
struct PresArgs {
    #[command(flatten)]
    m: ModArgs,
    /// Use (v₃v₁)^N + (v₁v₃)^N in the V ⊕ χ case.
    #[arg(long)]
    derived_sign: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    H,
    Quadratic,
    Cubic,
    Pair,
}

#[derive(Args)]
struct LiftArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_negative_numbers = true)]
    i: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Defaults: pair with --nu, quadratic for (i,j) ∈ Λ³, cubic otherwise, H without --i.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    common: Common,
    /// Skip executed certificates (formula and quoted evidence only).
    #[arg(long)]
    no_execute: bool,
}

struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.cmd {
        Cmd::Hopf(HopfCmd::Build(a) | HopfCmd::Verify(a)) => a.common.clone(),
        Cmd::Hopf(HopfCmd::Double(c) | HopfCmd::Dual(c)) | Cmd::Yd(YdCmd::Census(c)) => c.clone(),
        Cmd::Yd(YdCmd::Make(m) | YdCmd::Braiding(m) | YdCmd::Dynkin(m)) => m.common.clone(),
        Cmd::Nichols(NicholsCmd::Dims(m) | NicholsCmd::Quad(m)) => m.common.clone(),
        Cmd::Nichols(NicholsCmd::VerifyPresentation(a)) => a.m.common.clone(),
        Cmd::Rewrite(RewriteCmd::Dim(a) | RewriteCmd::Overlaps(a) | RewriteCmd::HopfCheck(a)) => a.common.clone(),
        Cmd::Classify(ClassifyCmd::Report(a)) => a.common.clone(),
    };
    match run(&cli.cmd).and_then(|o| emit(&common, o)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Usage => 2,
                ErrorClass::Verification => 1,
                ErrorClass::Cap => 3,
            })
        }
    }
}

fn emit(c: &Common, o: Outcome) -> Res<bool> {
    let mut s = match c.format {
        Format::Json => serde_json::to_string_pretty(&o.json).expect("json"),
        Format::Text => o.text,
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    match &c.out {
        Some(path) => std::fs::write(path, s).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => print!("{s}"),
    }
    Ok(o.ok)
}

fn run(cmd: &Cmd) -> Res<Outcome> {
    match cmd {
        Cmd::Hopf(h) => match h {
            HopfCmd::Build(a) => hopf_build(a),
            HopfCmd::Verify(a) => hopf_verify(a),
            HopfCmd::Double(c) => hopf_double(c),
            HopfCmd::Dual(c) => hopf_dual(c),
        },
        Cmd::Yd(y) => match y {
            YdCmd::Make(m) => yd_make(m),
            YdCmd::Braiding(m) => yd_braiding(m),
            YdCmd::Dynkin(m) => yd_dynkin(m),
            YdCmd::Census(c) => yd_census(c),
        },
        Cmd::Nichols(n) => match n {
            NicholsCmd::Dims(m) => nichols_dims(m),
            NicholsCmd::Quad(m) => nichols_quad(m),
            NicholsCmd::VerifyPresentation(a) => nichols_verify(a),
        },
        Cmd::Rewrite(r) => match r {
            RewriteCmd::Dim(a) => rewrite_dim(a),
            RewriteCmd::Overlaps(a) => rewrite_overlaps(a),
            RewriteCmd::HopfCheck(a) => rewrite_hopf_check(a),
        },
        Cmd::Classify(ClassifyCmd::Report(a)) => classify_report(a),
    }
}

fn ctx(c: &Common) -> Res<ScalarContext> {
    Ok(ScalarContext::new(c.p)?)
}

fn usage(m: &str) -> Failure {
    Failure::Lib(Error::InvalidParameter(m.into()))
}

// ---------------------------------------------------------------------------
// hopf

fn load_algebra(a: &HopfArgs, k: &ScalarContext) -> Res<HopfAlgebra> {
    if let Some(path) = &a.input {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        // A file that does not describe a valid algebra is a verification failure, not a usage error.
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Shape(format!("{}: {e}", path.display()))))?;
        let h = HopfAlgebra::from_json(&v).map_err(|e| Failure::Lib(Error::Shape(e.to_string())))?;
        if h.ctx.p() != k.p() {
            return Err(usage(&format!("{} is over p = {}, not {}", path.display(), h.ctx.p(), k.p())));
        }
        return Ok(h);
    }
    Ok(match a.algebra {
        AlgebraKind::H => hopf::build_h(k)?,
        AlgebraKind::A => hopf::build_a(k)?,
        AlgebraKind::GrA => hopf::build_gr_a(k)?,
        AlgebraKind::Dual => hopf::dual(&hopf::build_h(k)?)?,
        AlgebraKind::Double => hopf::drinfeld_double(k)?,
    })
}

fn hopf_build(a: &HopfArgs) -> Res<Outcome> {
    let k = ctx(&a.common)?;
    let h = load_algebra(a, &k)?;
    let text = format!("{}: dim {}, generators {:?}\n", h.name, h.dim, h.generators.iter().map(|&g| h.basis_labels[g].as_str()).collect::<Vec<_>>());
    Ok(Outcome { json: h.to_json(), text, ok: true })
}

fn report_text(r: &hopf::HopfReport) -> String {
    let mut s = format!("{} (dim {})\n", r.algebra, r.dim);
    for c in &r.checks {
        let _ = writeln!(s, "  {:<28} {:<4} [{}]{}", c.axiom, if c.pass { "ok" } else { "FAIL" }, c.method, c.witness.as_ref().map(|w| format!(" {w}")).unwrap_or_default());
    }
    if let Some(o) = r.antipode_order {
        let _ = writeln!(s, "  antipode order {o}");
    }
    s
}

fn hopf_verify(a: &HopfArgs) -> Res<Outcome> {
    let k = ctx(&a.common)?;
    let h = load_algebra(a, &k)?;
    let r = hopf::verify_hopf(&h)?;
    Ok(Outcome { json: serde_json::to_value(&r).expect("json"), text: report_text(&r), ok: r.all_pass() })
}

fn hopf_double(c: &Common) -> Res<Outcome> {
    let k = ctx(c)?;
    let d = hopf::drinfeld_double(&k)?;
    let failing = hopf::double_cross_relations(&k, &d);
    let r = hopf::verify_hopf(&d)?;
    let want = 16 * c.p * c.p;
    let ok = d.dim == want && failing.is_empty() && r.all_pass();
    let mut text = format!("dim {} (expected {want})\ncross relations: {}\n", d.dim, if failing.is_empty() { "all hold".into() } else { failing.join(", ") });
    text += &report_text(&r);
    let json = json!({ "dim": d.dim, "expected_dim": want, "failing_cross_relations": failing, "hopf": r, "ok": ok });
    Ok(Outcome { json, text, ok })
}

fn hopf_dual(c: &Common) -> Res<Outcome> {
    let k = ctx(c)?;
    let (json, text, ok) = match hopf::dual_iso_check(&k) {
        Ok(m) => (
            json!({ "source": m.source, "target": m.target, "dim": 4 * c.p, "isomorphism": true }),
            format!("{} ≅ {} (dim {})\n", m.source, m.target, 4 * c.p),
            true,
        ),
        Err(Error::IsoCheckFailed(why)) => (json!({ "isomorphism": false, "reason": why }), format!("isomorphism check failed: {why}\n"), false),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome { json, text, ok })
}

// ---------------------------------------------------------------------------
// yd

fn summands(m: &ModArgs) -> Res<Vec<Summand>> {
    let mut out = vec![];
    match (m.i, m.j) {
        (Some(i), Some(j)) => {
            out.push(Summand::V(i, j));
            match (m.k, m.l) {
                (Some(k), Some(l)) => out.push(Summand::V(k, l)),
                (Some(k), None) => out.push(Summand::Chi(k)),
                (None, Some(_)) => return Err(usage("--l needs --k")),
                (None, None) => {}
            }
        }
        (None, None) if m.k.is_none() && m.l.is_none() => {}
        _ => return Err(usage("give --i and --j together (and --k/--l only with them)")),
    }
    out.extend(m.chi.iter().map(|&k| Summand::Chi(k)));
    if out.is_empty() {
        return Err(usage("no module: give --i --j and/or --chi"));
    }
    let p = m.common.p;
    Ok(out.into_iter().map(|s| s.normalized(p)).collect())
}

fn module_of(k: &ScalarContext, ss: &[Summand]) -> Res<ydmod::YDModule> {
    let h = ydmod::shared_h(k)?;
    for s in ss {
        if let Summand::V(i, j) = s {
            if !ydmod::in_lambda(k.p(), *i, *j) {
                return Err(Error::NotInLambda { i: *i, j: *j }.into());
            }
        }
    }
    let parts = ss.iter().map(|&s| ydmod::make_simple(&h, s)).collect::<ydcalc::Result<Vec<_>>>()?;
    Ok(if parts.len() == 1 { parts.into_iter().next().unwrap() } else { ydmod::direct_sum(&parts)? })
}

fn name_of(ss: &[Summand]) -> String {
    ss.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ⊕ ")
}

fn yd_make(m: &ModArgs) -> Res<Outcome> {
    let k = ctx(&m.common)?;
    let ss = summands(m)?;
    let md = module_of(&k, &ss)?;
    let verified = md.verify();
    let ok = verified.is_ok();
    let gens: Vec<Value> = md
        .hopf
        .generators
        .iter()
        .map(|&g| json!({ "generator": md.hopf.basis_labels[g], "matrix": md.action_matrix(g).to_text_rows(&k) }))
        .collect();
    let coaction: Vec<Value> = (0..md.dim)
        .map(|r| {
            let terms: Vec<Value> = md.coaction_terms(r).into_iter().map(|(h, s, c)| json!([md.hopf.basis_labels[h], s, c.to_text()])).collect();
            json!(terms)
        })
        .collect();
    let json = json!({ "module": name_of(&ss), "dim": md.dim, "action": gens, "coaction": coaction, "yd_compatible": ok });
    let mut text = format!("{} : dim {}\n", name_of(&ss), md.dim);
    for g in &gens {
        let _ = writeln!(text, "  {} acts by {}", g["generator"].as_str().unwrap_or(""), g["matrix"]);
    }
    let _ = writeln!(text, "  YD compatibility: {}", match &verified {
        Ok(()) => "ok".to_string(),
        Err(e) => format!("FAIL ({e})"),
    });
    Ok(Outcome { json, text, ok })
}

fn yd_braiding(m: &ModArgs) -> Res<Outcome> {
    let k = ctx(&m.common)?;
    let ss = summands(m)?;
    let md = module_of(&k, &ss)?;
    let c = ydmod::braiding(&md);
    let ybe = c.satisfies_braid_equation(m.common.cap)?;
    let closed = match ss.as_slice() {
        [Summand::V(i, j)] => Some(ydmod::closed_form_braiding(&k, *i, *j) == c),
        [Summand::Chi(e)] => Some(c.matrix.entry(&k, 0, 0) == k.xi_pow(k.p() as i64 * e * e)),
        _ => None,
    };
    let ok = ybe && closed != Some(false);
    let rows = c.matrix.to_text_rows(&k);
    let json = json!({ "module": name_of(&ss), "dim": c.dim, "matrix": rows, "braid_equation": ybe, "matches_closed_form": closed });
    let mut text = format!("braiding of {} on V⊗V (column r·d+s is c(e_r⊗e_s))\n", name_of(&ss));
    for r in &rows {
        let _ = writeln!(text, "  [{}]", r.join(", "));
    }
    let _ = writeln!(text, "braid equation: {}", if ybe { "holds" } else { "FAILS" });
    if let Some(cl) = closed {
        let _ = writeln!(text, "closed form: {}", if cl { "matches" } else { "DIFFERS" });
    }
    Ok(Outcome { json, text, ok })
}

fn yd_dynkin(m: &ModArgs) -> Res<Outcome> {
    let k = ctx(&m.common)?;
    let ss = summands(m)?;
    let d = ydmod::dynkin_diagram(k.p(), &ss)?;
    let v = ydmod::finiteness_verdict(&k, &ss, m.cutoff.unwrap_or(0))?;
    let json = json!({ "module": name_of(&ss), "diagram": d.to_json(&k), "verdict": v });
    let mut text = format!("diagram of X ⊕ {}\n", name_of(&ss));
    for (u, vx) in d.vertices.iter().enumerate() {
        let _ = writeln!(text, "  vertex {} label ξ^{}", vx.name, d.labels[u]);
    }
    for (u, w, e) in d.edges() {
        let _ = writeln!(text, "  edge {}–{} ξ^{e}", d.vertices[u].name, d.vertices[w].name);
    }
    let _ = writeln!(text, "verdict: {}", match &v {
        ydmod::Verdict::FiniteCertified { dim, row, .. } => format!("finite ({row}), dim {}", dim.map(|d| d.to_string()).unwrap_or_else(|| "?".into())),
        ydmod::Verdict::InfiniteCertified { reason } => format!("infinite ({reason})"),
        ydmod::Verdict::Undetermined { note, .. } => format!("undetermined ({note})"),
    });
    Ok(Outcome { json, text, ok: true })
}

fn yd_census(c: &Common) -> Res<Outcome> {
    let k = ctx(c)?;
    let (census, _) = ydmod::enumerate_simples(&k)?;
    let ok = census.one_dim == 2 * c.p && census.two_dim == 4 * c.p * c.p - 2 * c.p && census.relation_failures.is_empty() && census.weights_distinct;
    let text = format!(
        "p = {}: {} one-dimensional, {} two-dimensional simples ({} total); relations {}; pairwise non-isomorphic: {}\n",
        census.p,
        census.one_dim,
        census.two_dim,
        census.total,
        if census.relation_failures.is_empty() { "all hold".to_string() } else { format!("{} failures", census.relation_failures.len()) },
        census.weights_distinct
    );
    Ok(Outcome { json: serde_json::to_value(&census).expect("json"), text, ok })
}

// ---------------------------------------------------------------------------
// nichols

fn nichols_dims(m: &ModArgs) -> Res<Outcome> {
    let k = ctx(&m.common)?;
    let ss = summands(m)?;
    let md = module_of(&k, &ss)?;
    let c = ydmod::braiding(&md);
    let cutoff = m.cutoff.unwrap_or_else(|| nichols::default_cutoff(c.dim));
    let g = graded_dims(&c, cutoff, m.common.cap)?;
    let total = g.total();
    let json = json!({ "module": name_of(&ss), "graded_dims": g, "total": total });
    let text = format!(
        "B({}): graded dims {:?}{}; total {}\n",
        name_of(&ss),
        g.dims,
        if g.complete { "" } else { " (cutoff reached)" },
        total.map(|t| t.to_string()).unwrap_or_else(|| "unknown".into())
    );
    Ok(Outcome { json, text, ok: true })
}

fn nichols_quad(m: &ModArgs) -> Res<Outcome> {
    let k = ctx(&m.common)?;
    let ss = summands(m)?;
    let md = module_of(&k, &ss)?;
    let c = ydmod::braiding(&md);
    let omega = quantum_symmetrizer(&c, 2, m.common.cap)?;
    let kernel = c.dim * c.dim - omega.rank()?;
    let criterion = match ss.as_slice() {
        [Summand::V(i, j)] => Some(nichols::quad_criterion(&k, *i, *j)),
        _ => None,
    };
    let ok = criterion.map_or(true, |q| q == (kernel > 0));
    let json = json!({ "module": name_of(&ss), "dim_ker_omega2": kernel, "criterion": criterion, "agree": ok });
    let text = format!(
        "{}: dim ker Ω₂ = {kernel}{}\n",
        name_of(&ss),
        criterion.map(|q| format!(", criterion says {}, {}", if q { "quadratic relations" } else { "none" }, if ok { "agree" } else { "DISAGREE" })).unwrap_or_default()
    );
    Ok(Outcome { json, text, ok })
}

fn nichols_verify(a: &PresArgs) -> Res<Outcome> {
    let m = &a.m;
    let k = ctx(&m.common)?;
    let ss = summands(m)?;
    let spec = match (ss.as_slice(), a.derived_sign) {
        ([Summand::V(i, j), Summand::Chi(e)], true) => nichols::presentation_v_chi_derived_sign(&k, *i, *j, *e)?,
        _ => presentation_for(&k, &ss)?,
    };
    let md = module_of(&k, &ss)?;
    let c = ydmod::braiding(&md);
    let cutoff = m.cutoff.unwrap_or(6);
    let max_degree = (spec.profile.claimed_total as usize).min(64);
    let r = verify_presentation(&c, &spec, cutoff, max_degree, m.common.cap)?;
    // verify_presentation returns an error on the first failing check.
    let ok = r.pbw_count_matches != Some(false);
    let mut text = format!("{:?} presentation of B({}){}\n", spec.profile.kind, name_of(&ss), if spec.profile.conjectural { " (conjectural)" } else { "" });
    for rc in &r.relations_checked {
        let _ = writeln!(text, "  {:<12} degree {:<3} {}", rc.label, rc.degree, rc.status);
    }
    let _ = writeln!(text, "  B(V) dims     {:?}", r.nichols_dims);
    let _ = writeln!(text, "  quotient dims {:?} (compared up to {})", r.quotient_dims, r.compared_up_to);
    let _ = writeln!(text, "  total {} vs claimed {}", r.total.map(|t| t.to_string()).unwrap_or_else(|| "?".into()), spec.profile.claimed_total);
    Ok(Outcome { json: serde_json::to_value(&r).expect("json"), text, ok })
}

// ---------------------------------------------------------------------------
// rewrite

struct Built {
    pres: rewrite::Presentation,
    coalg: Option<rewrite::CoalgebraData>,
}

fn lifting(a: &LiftArgs) -> Res<Built> {
    let k = ctx(&a.common)?;
    let scalar = |s: &Option<String>| -> Res<ydcalc::ThetaScalar> { Ok(s.as_deref().map(|t| k.parse(t)).transpose()?.unwrap_or_else(|| k.zero())) };
    let kind = match (a.family, &a.nu, a.i) {
        (Some(f), _, _) => f,
        (None, Some(_), _) => FamilyKind::Pair,
        (None, None, None) => FamilyKind::H,
        (None, None, Some(i)) => {
            let j = a.j.ok_or_else(|| usage("--i needs --j"))?;
            if in_lambda3(&k, i, j) {
                FamilyKind::Quadratic
            } else {
                FamilyKind::Cubic
            }
        }
    };
    let ij = || -> Res<(i64, i64)> { Ok((a.i.ok_or_else(|| usage("family needs --i"))?, a.j.ok_or_else(|| usage("family needs --j"))?)) };
    let family = match kind {
        FamilyKind::H => return Ok(Built { pres: rewrite::h_presentation(&k)?, coalg: None }),
        FamilyKind::Quadratic => {
            let (i, j) = ij()?;
            Family::A3 { i, j, mu: scalar(&a.mu)? }
        }
        FamilyKind::Cubic => {
            let (i, j) = ij()?;
            Family::A4 { i, j, mu: scalar(&a.mu)? }
        }
        FamilyKind::Pair => Family::A33 { mu: scalar(&a.mu)?, nu: scalar(&a.nu)? },
    };
    let l = build_lifting(&k, family)?;
    Ok(Built { pres: l.pres, coalg: Some(l.coalg) })
}

fn rewrite_dim(a: &LiftArgs) -> Res<Outcome> {
    let b = lifting(a)?;
    let d = b.pres.dimension(a.common.cap)?;
    let dim = match d {
        Dimension::Finite(n) => Some(n),
        Dimension::Infinite => None,
    };
    let json = json!({ "algebra": b.pres.name, "presentation": b.pres.to_json(), "dimension": dim, "completion_rules": b.pres.completion });
    let text = format!(
        "{}: {} rules ({} added by completion); dimension {}\n",
        b.pres.name,
        b.pres.rules.len(),
        b.pres.completion.len(),
        dim.map(|n| n.to_string()).unwrap_or_else(|| "infinite".into())
    );
    Ok(Outcome { json, text, ok: true })
}

fn rewrite_overlaps(a: &LiftArgs) -> Res<Outcome> {
    let b = lifting(a)?;
    let r = b.pres.overlaps_resolvable()?;
    let mut text = format!("{}: {} ambiguities checked, {}\n", b.pres.name, r.checked, if r.resolvable { "all resolvable" } else { "UNRESOLVED" });
    for f in &r.failures {
        let _ = writeln!(text, "  {} ({} / {}): {} ≠ {}", f.word, f.rules.0, f.rules.1, f.left, f.right);
    }
    Ok(Outcome { json: serde_json::to_value(&r).expect("json"), text, ok: r.resolvable })
}

fn rewrite_hopf_check(a: &LiftArgs) -> Res<Outcome> {
    let b = lifting(a)?;
    let coalg = b.coalg.ok_or_else(|| usage("hopf-check needs a lifting family (--i --j or --nu)"))?;
    let (json, text, ok) = match hopf_check_presented(&b.pres, &coalg, a.common.cap.max(1 << 16)) {
        Ok(c) => (
            json!({ "algebra": b.pres.name, "dim": c.basis.len(), "report": c.report }),
            report_text(&c.report),
            c.report.all_pass(),
        ),
        Err(e @ (Error::BialgebraAxiomFailed(_) | Error::AntipodeNotFound(_))) => {
            (json!({ "algebra": b.pres.name, "failure": e.to_string() }), format!("{}: {e}\n", b.pres.name), false)
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome { json, text, ok })
}

// ---------------------------------------------------------------------------
// classify

fn classify_report(a: &ReportArgs) -> Res<Outcome> {
    let k = ctx(&a.common)?;
    let opts = ReportOptions { execute: !a.no_execute, cap: a.common.cap, ..ReportOptions::default() };
    let r = classification_report(&k, &opts)?;
    let ok = r.quoted_checks.iter().all(|q| q.matches) && r.shape_holds != Some(false);
    Ok(Outcome { json: serde_json::to_value(&r).expect("json"), text: r.to_text(), ok })
}
