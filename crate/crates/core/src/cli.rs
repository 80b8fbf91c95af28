//! Command-line front end for the `polyiso` binary.
//!
//! Exit codes: 0 success, 1 certification failed, 2 invalid input
//! (parse error, degenerate body, bad apex pair, bad config), 3 budget
//! exceeded.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certify::minimize::{Strange5Ratio, DEFAULT_MAX_EVALUATIONS};
use crate::certify::sampling::random_feasible;
use crate::certify::{
    branch_and_bound_with, certify_lemma_distanceest, certify_lemma_volumeest, certify_min_1d, Budget,
    Certificate, ConstraintSet, LemmaReport, Min1d, RunOptions,
};
use crate::error::{Error, Partial, Result};
use crate::geometry::io::{load_polytope, polytope_to_json};
use crate::geometry::{insphere, shapes, Polytope3, TriangulatedBoundary, Vec3};
use crate::interval::{Box5, Interval};
use crate::strange::{
    feasible_with, realize, strange_g, strange_s, strange_v, violations, FiveVertexConstants, Profile, StrangeParams,
    Thresholds,
};
use crate::symmetrize::{bipyramid_symmetral, find_apex_pair, steiner_symmetral, ApexPair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit code for an error returned by a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificationFailed(_) => EXIT_FAILED,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

#[derive(Parser, Debug)]
#[command(name = "polyiso", version, about = "Isoperimetric ratios, Steiner symmetrals and certified bounds for 3-polytopes")]
pub struct Cli {
    /// JSON run configuration; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Volume, surface area, S^3/V^2 and insphere of a polytope file.
    Ratio {
        inputs: Vec<PathBuf>,
    },
    /// Steiner symmetral along a normal or an apex pair.
    Symmetrize(SymmetrizeArgs),
    /// Evaluate or realize a strange double pyramid.
    #[command(subcommand)]
    Strange(StrangeCommand),
    /// Run certifications and write certificates.
    Certify(CertifyArgs),
    /// Quick end-to-end checks of the library.
    Selftest,
}

#[derive(Args, Debug)]
pub struct SymmetrizeArgs {
    pub input: Option<PathBuf>,
    /// Symmetrization direction `x,y,z`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub normal: Option<Vec<f64>>,
    /// Vertex indices `i,j` of an apex pair, or `auto`.
    #[arg(long)]
    pub apex_pair: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum StrangeCommand {
    /// Closed-form area, V, S and G, plus feasibility.
    Eval(StrangeArgs),
    /// Build the body as a convex hull and compare with the closed forms.
    Realize(StrangeArgs),
}

#[derive(Args, Debug)]
pub struct StrangeArgs {
    /// x1 x2 x3 y1 y2
    #[arg(num_args = 5, required = true)]
    pub params: Vec<f64>,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct ThresholdArgs {
    #[arg(long, value_enum)]
    pub profile: Option<ProfileName>,
    /// Constant set for five-vertex bodies.
    #[arg(long, value_enum)]
    pub constants: Option<ConstantsName>,
    #[arg(long)]
    pub area_min: Option<f64>,
    #[arg(long)]
    pub area_max: Option<f64>,
    #[arg(long)]
    pub coord_max: Option<f64>,
}

#[derive(Args, Debug, Default)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub claim: Option<Claim>,
    /// Target for the five-variable claim: G > threshold.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Threshold to certify instead when the main run exceeds its budget.
    #[arg(long)]
    pub fallback_threshold: Option<f64>,
    #[arg(long)]
    pub max_boxes: Option<u64>,
    #[arg(long)]
    pub max_depth: Option<u32>,
    #[arg(long)]
    pub max_seconds: Option<f64>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Certificate JSON (the partial certificate when the budget runs out).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// One-line-per-claim CSV summary.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Append-only JSON-lines log of leaves as they are produced.
    #[arg(long)]
    pub stream: Option<PathBuf>,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileName {
    SixVertex,
    FiveVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantsName {
    /// area in [0.09, 15], coordinates at most 17
    Lemma,
    /// area at least 0.18, coordinates at most 11
    TheoremText,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Mutant6,
    Volumeest,
    Distanceest,
    Strange5,
    All,
}

/// Settings shared by all commands, as read from `--config` and overridden
/// by flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub inputs: Vec<PathBuf>,
    pub normal: Option<[f64; 3]>,
    pub apex_pair: Option<String>,
    pub claim: Option<Claim>,
    pub profile: Option<ProfileName>,
    pub constants: Option<ConstantsName>,
    pub area_min: Option<f64>,
    pub area_max: Option<f64>,
    pub coord_max: Option<f64>,
    pub threshold: Option<f64>,
    pub fallback_threshold: Option<f64>,
    pub max_boxes: Option<u64>,
    pub max_depth: Option<u32>,
    pub max_seconds: Option<f64>,
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub stream: Option<PathBuf>,
}

macro_rules! overlay {
    ($dst:ident, $src:expr, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    fn apply_thresholds(&mut self, t: &ThresholdArgs) {
        overlay!(self, t, profile, constants, area_min, area_max, coord_max);
    }

    /// Fold the parsed command line over `self`.
    pub fn apply(&mut self, cmd: &Command) -> Result<()> {
        match cmd {
            Command::Ratio { inputs } => {
                self.command = Some("ratio".into());
                if !inputs.is_empty() {
                    self.inputs = inputs.clone();
                }
            }
            Command::Symmetrize(a) => {
                self.command = Some("symmetrize".into());
                if let Some(i) = &a.input {
                    self.inputs = vec![i.clone()];
                }
                if let Some(n) = &a.normal {
                    let n: [f64; 3] = n.as_slice().try_into().map_err(|_| {
                        Error::Parse(format!("--normal needs three components, got {}", n.len()))
                    })?;
                    self.normal = Some(n);
                }
                overlay!(self, a, apex_pair, output);
            }
            Command::Strange(s) => {
                let a = match s {
                    StrangeCommand::Eval(a) => {
                        self.command = Some("strange eval".into());
                        a
                    }
                    StrangeCommand::Realize(a) => {
                        self.command = Some("strange realize".into());
                        a
                    }
                };
                self.apply_thresholds(&a.thresholds);
                overlay!(self, a, output);
            }
            Command::Certify(a) => {
                self.command = Some("certify".into());
                self.apply_thresholds(&a.thresholds);
                overlay!(
                    self,
                    a,
                    claim,
                    threshold,
                    fallback_threshold,
                    max_boxes,
                    max_depth,
                    max_seconds,
                    jobs,
                    output,
                    csv,
                    stream
                );
            }
            Command::Selftest => self.command = Some("selftest".into()),
        }
        Ok(())
    }

    pub fn profile(&self) -> Profile {
        match self.profile.unwrap_or(ProfileName::SixVertex) {
            ProfileName::SixVertex => Profile::SixVertex,
            ProfileName::FiveVertex => Profile::FiveVertex(match self.constants.unwrap_or(ConstantsName::Lemma) {
                ConstantsName::Lemma => FiveVertexConstants::Lemma,
                ConstantsName::TheoremText => FiveVertexConstants::TheoremText,
            }),
        }
    }

    /// Profile thresholds with any explicit overrides applied.
    pub fn thresholds(&self) -> Result<Thresholds> {
        let mut t = self.profile().thresholds();
        if let Some(a) = self.area_min {
            t.area_min = a;
        }
        if self.area_max.is_some() {
            t.area_max = self.area_max;
        }
        if let Some(c) = self.coord_max {
            t.coord_max = c;
        }
        positive("area_min", t.area_min)?;
        positive("coord_max", t.coord_max)?;
        if let Some(m) = t.area_max {
            positive("area_max", m)?;
        }
        Ok(t)
    }

    pub fn budget(&self) -> Result<Budget> {
        let mut b = Budget::default();
        if let Some(n) = self.max_boxes {
            b.max_boxes = n;
        }
        if let Some(d) = self.max_depth {
            b.max_depth = d;
        }
        if let Some(s) = self.max_seconds {
            b.max_seconds = s;
        }
        if b.max_boxes == 0 || b.max_depth == 0 {
            return Err(Error::DomainError("budgets must be positive".into()));
        }
        positive("max_seconds", b.max_seconds)?;
        Ok(b)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("{name} must be positive, got {v}")))
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.apply(&cli.command)?;
    match &cli.command {
        Command::Ratio { .. } => cmd_ratio(&cfg, out),
        Command::Symmetrize(_) => cmd_symmetrize(&cfg, out),
        Command::Strange(StrangeCommand::Eval(a)) => cmd_strange_eval(&params(&a.params), &cfg, out),
        Command::Strange(StrangeCommand::Realize(a)) => cmd_strange_realize(&params(&a.params), &cfg, out),
        Command::Certify(_) => cmd_certify(&cfg, out),
        Command::Selftest => cmd_selftest(out),
    }
}

fn params(v: &[f64]) -> StrangeParams {
    StrangeParams::new(v[0], v[1], v[2], v[3], v[4])
}

/// Lower bound on `S^3/V^2` claimed for bodies with `n` vertices.
pub fn theorem_bound(n: usize) -> Option<(f64, &'static str)> {
    match n {
        4 => Some((216.0 * 3f64.sqrt(), "216 sqrt 3")),
        5 => Some((243.0 * 2f64.sqrt(), "243 sqrt 2")),
        6 => Some((108.0 * 3f64.sqrt(), "108 sqrt 3")),
        _ => None,
    }
}

pub const AT_BOUND_REL_TOL: f64 = 1e-9;

/// `AT-BOUND`, `ABOVE`, `BELOW-BOUND` or `INFO` for a ratio of an `n`-vertex body.
pub fn bound_status(n: usize, ratio: f64) -> &'static str {
    match theorem_bound(n) {
        None => "INFO",
        Some((b, _)) if (ratio - b).abs() <= AT_BOUND_REL_TOL * b => "AT-BOUND",
        Some((b, _)) if ratio > b => "ABOVE",
        Some(_) => "BELOW-BOUND",
    }
}

pub fn cmd_ratio(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    if cfg.inputs.is_empty() {
        return Err(Error::Parse("no input polytope given".into()));
    }
    for path in &cfg.inputs {
        let p = load_polytope(path)?;
        ratio_report(&path.display().to_string(), &p, out)?;
    }
    Ok(EXIT_OK)
}

pub fn ratio_report(name: &str, p: &Polytope3, out: &mut dyn Write) -> Result<()> {
    let ratio = p.isoperimetric_ratio()?;
    let n = p.n_vertices();
    let ins = insphere(p);
    writeln!(out, "{name}")?;
    writeln!(out, "  vertices    {n}")?;
    writeln!(out, "  facets      {}", p.facets().len())?;
    writeln!(out, "  volume      {:.12}", p.volume())?;
    writeln!(out, "  surface     {:.12}", p.surface_area())?;
    writeln!(out, "  S^3/V^2     {ratio:.10}")?;
    let c = ins.center;
    writeln!(out, "  insphere    center ({:.9}, {:.9}, {:.9}) radius {:.9}", c.x, c.y, c.z, ins.radius)?;
    writeln!(out, "  touching    {} of {} facets", ins.touching.len(), p.facets().len())?;
    let status = bound_status(n, ratio);
    match theorem_bound(n) {
        Some((b, label)) => writeln!(out, "  bound       {label} = {b:.10}  {status}")?,
        None => writeln!(out, "  bound       none for {n} vertices  {status}")?,
    }
    Ok(())
}

fn parse_apex_pair(s: &str, t: &TriangulatedBoundary) -> Result<ApexPair> {
    if s == "auto" {
        return find_apex_pair(t).ok_or_else(|| Error::InvalidApexPair("the triangulation has no apex pair".into()));
    }
    let bad = || Error::InvalidApexPair(format!("expected `i,j` or `auto`, got `{s}`"));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    Ok(ApexPair {
        i: i.trim().parse().map_err(|_| bad())?,
        j: j.trim().parse().map_err(|_| bad())?,
    })
}

pub fn cmd_symmetrize(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let path = cfg.inputs.first().ok_or_else(|| Error::Parse("no input polytope given".into()))?;
    let p = load_polytope(path)?;
    let (sym, preserved) = match (&cfg.apex_pair, cfg.normal) {
        (Some(s), _) => {
            let t = TriangulatedBoundary::fan(&p);
            let pair = parse_apex_pair(s, &t)?;
            writeln!(out, "apex pair   ({}, {})", pair.i, pair.j)?;
            let (q, tq) = bipyramid_symmetral(&t, pair)?;
            let same = q.n_vertices() == p.n_vertices() && tq.is_isomorphic(&t);
            (q, Some(same))
        }
        (None, Some(n)) => (steiner_symmetral(&p, Vec3::from(n))?, None),
        (None, None) => return Err(Error::DomainError("give --normal or --apex-pair".into())),
    };
    let (v0, v1) = (p.volume(), sym.volume());
    let (s0, s1) = (p.surface_area(), sym.surface_area());
    writeln!(out, "volume      {v0:.12} -> {v1:.12}  dV = {:.3e}", v1 - v0)?;
    writeln!(out, "surface     {s0:.12} -> {s1:.12}  dS = {:.3e}", s1 - s0)?;
    writeln!(out, "vertices    {} -> {}", p.n_vertices(), sym.n_vertices())?;
    if let Some(same) = preserved {
        writeln!(out, "type        {}", if same { "preserved" } else { "changed" })?;
    }
    if let Some(o) = &cfg.output {
        fs::write(o, polytope_to_json(&sym)?)?;
        writeln!(out, "wrote       {}", o.display())?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_strange_eval(p: &StrangeParams, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let t = cfg.thresholds()?;
    let (v, s) = (strange_v(p), strange_s(p));
    writeln!(out, "params      x1={} x2={} x3={} y1={} y2={}", p.x1, p.x2, p.x3, p.y1, p.y2)?;
    writeln!(out, "area        {:.12}", p.base_area())?;
    writeln!(out, "V           {v:.12}")?;
    writeln!(out, "S           {s:.12}")?;
    writeln!(out, "G           {:.12}", strange_g(p))?;
    if v > 0.0 {
        writeln!(out, "S^3/V^2     {:.10}", s.powi(3) / (v * v))?;
    }
    let viol = violations(p, &t);
    if viol.is_empty() {
        writeln!(out, "feasible    yes")?;
    } else {
        let names: Vec<String> = viol.iter().map(|c| c.to_string()).collect();
        writeln!(out, "feasible    no: {}", names.join(", "))?;
    }
    debug_assert_eq!(viol.is_empty(), feasible_with(p, &t));
    Ok(EXIT_OK)
}

pub fn cmd_strange_realize(p: &StrangeParams, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let body = realize(p)?;
    let q = &body.polytope;
    writeln!(out, "vertices    {}", q.n_vertices())?;
    writeln!(out, "origin      {}", if body.origin_is_vertex { "base corner" } else { "inside a base edge" })?;
    if !body.absorbed.is_empty() {
        writeln!(out, "absorbed    {}", body.absorbed.join(", "))?;
    }
    writeln!(out, "V           hull {:.12}  formula {:.12}", q.volume(), strange_v(p))?;
    writeln!(out, "S           hull {:.12}  formula {:.12}", q.surface_area(), strange_s(p))?;
    if let Some(o) = &cfg.output {
        fs::write(o, polytope_to_json(q)?)?;
        writeln!(out, "wrote       {}", o.display())?;
    }
    Ok(EXIT_OK)
}

/// One row of the `--csv` summary.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub claim: String,
    pub status: String,
    pub value: String,
    pub detail: String,
}

impl SummaryRow {
    fn new(claim: &str, status: &str, value: impl ToString, detail: impl ToString) -> Self {
        SummaryRow {
            claim: claim.into(),
            status: status.into(),
            value: value.to_string(),
            detail: detail.to_string(),
        }
    }
}

/// Outcome of one claim: exit code plus CSV rows.
struct ClaimRun {
    code: i32,
    rows: Vec<SummaryRow>,
}

pub const STRANGE5_DOMAIN: (f64, f64) = (0.1, 100.0);
pub const STRANGE5_TOL: f64 = 1e-6;

pub fn cmd_certify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let claim = cfg.claim.unwrap_or(Claim::All);
    let claims = match claim {
        Claim::All => vec![Claim::Volumeest, Claim::Distanceest, Claim::Strange5, Claim::Mutant6],
        c => vec![c],
    };
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    for c in claims {
        let r = match c {
            Claim::Mutant6 => certify_mutant6(cfg, out)?,
            Claim::Volumeest => lemma_run(certify_lemma_volumeest(), "volumeest", out)?,
            Claim::Distanceest => lemma_run(certify_lemma_distanceest(), "distanceest", out)?,
            Claim::Strange5 => certify_strange5(out)?,
            Claim::All => unreachable!(),
        };
        rows.extend(r.rows);
        code = code.max(r.code);
    }
    if let Some(path) = &cfg.csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(io::Error::other(e)))?;
        for r in &rows {
            w.serialize(r).map_err(|e| Error::Io(io::Error::other(e)))?;
        }
        w.flush()?;
    }
    Ok(code)
}

fn lemma_run(r: Result<LemmaReport>, name: &str, out: &mut dyn Write) -> Result<ClaimRun> {
    let report = match r {
        Ok(r) => r,
        Err(Error::CertificationFailed(msg)) => {
            writeln!(out, "{name}: FAILED {msg}")?;
            return Ok(ClaimRun {
                code: EXIT_FAILED,
                rows: vec![SummaryRow::new(name, "failed", "", msg)],
            });
        }
        Err(e) => return Err(e),
    };
    writeln!(out, "{}", report.lemma)?;
    let mut rows = Vec::new();
    for c in &report.claims {
        let status = if c.certified { "certified" } else { "failed" };
        writeln!(out, "  {status:<9}  {}  enclosure {}", c.label, c.enclosure)?;
        rows.push(SummaryRow::new(
            name,
            status,
            c.enclosure,
            format!("{}{}", c.label, c.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default()),
        ));
    }
    Ok(ClaimRun {
        code: if report.all_certified() { EXIT_OK } else { EXIT_FAILED },
        rows,
    })
}

/// Certified minimum of the five-vertex double-pyramid ratio over the inradius.
pub fn strange5_minimum() -> Result<Min1d> {
    let dom = Interval::new(STRANGE5_DOMAIN.0, STRANGE5_DOMAIN.1)?;
    certify_min_1d(&Strange5Ratio, dom, STRANGE5_TOL)
}

fn certify_strange5(out: &mut dyn Write) -> Result<ClaimRun> {
    let m = match strange5_minimum() {
        Ok(m) => m,
        Err(Error::BudgetExceeded(p)) => {
            writeln!(out, "strange5: budget exceeded ({DEFAULT_MAX_EVALUATIONS} evaluations): {p}")?;
            return Ok(ClaimRun {
                code: EXIT_BUDGET,
                rows: vec![SummaryRow::new("strange5", "budget", "", p)],
            });
        }
        Err(e) => return Err(e),
    };
    let claimed_arg = 2f64.sqrt();
    let claimed_min = 243.0 * 2f64.sqrt();
    let ok = m.argmin.contains(claimed_arg) && m.min.contains(claimed_min);
    writeln!(out, "strange5")?;
    writeln!(out, "  argmin     {}", m.argmin)?;
    writeln!(out, "  minimum    {}", m.min)?;
    writeln!(out, "  evaluations {}", m.evaluations)?;
    let status = if ok { "certified" } else { "failed" };
    writeln!(
        out,
        "  {status:<9}  claimed minimum 243 sqrt 2 = {claimed_min:.10} at rho = sqrt 2{}",
        if ok { "" } else { ": not contained in the certified enclosures" }
    )?;
    Ok(ClaimRun {
        code: if ok { EXIT_OK } else { EXIT_FAILED },
        rows: vec![
            SummaryRow::new("strange5", status, m.min, format!("argmin {}", m.argmin)),
        ],
    })
}

fn certify_mutant6(cfg: &RunConfig, out: &mut dyn Write) -> Result<ClaimRun> {
    let t = cfg.thresholds()?;
    let budget = cfg.budget()?;
    let threshold = cfg.threshold.unwrap_or(MUTANT6_THRESHOLD);
    if !(threshold >= 0.0) {
        return Err(Error::DomainError(format!("threshold must be non-negative, got {threshold}")));
    }
    let cs = ConstraintSet::from_thresholds(&t);
    let root = Box5::cube(0.0, t.coord_max)?;
    writeln!(out, "mutant6: G = S^3 - 188 V^2 > {threshold} over [0, {}]^5", t.coord_max)?;
    let main = run_bnb(cfg, &root, &cs, threshold, &budget, "mutant6")?;
    let mut rows = Vec::new();
    let code = match main {
        Ok(cert) => {
            report_certificate(&cert, out)?;
            write_json(cfg.output.as_deref(), &cert.to_json()?, out)?;
            rows.push(certificate_row(&cert));
            if cert.holds() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(partial) => {
            writeln!(out, "  budget exceeded: {}", Partial::Search(partial.clone()))?;
            match partial.min_unresolved_bound {
                Some(b) => writeln!(out, "  min unresolved lower bound {b:.9}")?,
                None => writeln!(out, "  some unresolved box has no finite lower bound")?,
            }
            write_json(cfg.output.as_deref(), &serde_json::to_string(&partial)?, out)?;
            rows.push(SummaryRow::new(
                "mutant6",
                "budget",
                partial.min_unresolved_bound.map(|b| b.to_string()).unwrap_or_default(),
                format!("threshold {threshold}; {} unresolved boxes", partial.unresolved.len()),
            ));
            if let Some(fb) = cfg.fallback_threshold {
                writeln!(out, "fallback: G > {fb}")?;
                match run_bnb(cfg, &root, &cs, fb, &budget, "mutant6-fallback")? {
                    Ok(cert) => {
                        report_certificate(&cert, out)?;
                        let path = cfg.output.as_ref().map(|o| o.with_extension("fallback.json"));
                        write_json(path.as_deref(), &cert.to_json()?, out)?;
                        rows.push(certificate_row(&cert));
                    }
                    Err(p) => {
                        writeln!(out, "  fallback budget exceeded: {}", Partial::Search(p.clone()))?;
                        rows.push(SummaryRow::new(
                            "mutant6-fallback",
                            "budget",
                            p.min_unresolved_bound.map(|b| b.to_string()).unwrap_or_default(),
                            format!("threshold {fb}"),
                        ));
                    }
                }
            }
            EXIT_BUDGET
        }
    };
    Ok(ClaimRun { code, rows })
}

/// Threshold of the six-vertex claim.
pub const MUTANT6_THRESHOLD: f64 = 3.44;

type BnbOutcome = std::result::Result<Certificate, crate::certify::PartialCertificate>;

fn run_bnb(cfg: &RunConfig, root: &Box5, cs: &ConstraintSet, threshold: f64, budget: &Budget, claim: &str) -> Result<BnbOutcome> {
    let mut stream = match &cfg.stream {
        Some(p) => Some(BufWriter::new(fs::OpenOptions::new().create(true).append(true).open(p)?)),
        None => None,
    };
    let mut opts = RunOptions {
        jobs: cfg.jobs,
        stream: stream.as_mut().map(|s| s as &mut dyn Write),
        claim: Some(claim.into()),
    };
    let r = branch_and_bound_with(root, cs, threshold, budget, &mut opts);
    if let Some(s) = stream.as_mut() {
        s.flush()?;
    }
    match r {
        Ok(c) => Ok(Ok(c)),
        Err(Error::BudgetExceeded(p)) => match *p {
            Partial::Search(p) => Ok(Err(p)),
            other => Err(Error::BudgetExceeded(Box::new(other))),
        },
        Err(e) => Err(e),
    }
}

fn report_certificate(c: &Certificate, out: &mut dyn Write) -> Result<()> {
    let s = &c.stats;
    writeln!(
        out,
        "  {} boxes, {} leaves ({} verified, {} infeasible), depth {}, {:.1}s",
        s.boxes, s.leaves, s.verified, s.infeasible, s.max_depth, s.seconds
    )?;
    match c.global_margin {
        Some(m) => writeln!(out, "  global margin {m:.9}  {}", if c.holds() { "certified" } else { "failed" })?,
        None => writeln!(out, "  root is infeasible")?,
    }
    Ok(())
}

fn certificate_row(c: &Certificate) -> SummaryRow {
    SummaryRow::new(
        &c.claim,
        if c.holds() { "certified" } else { "failed" },
        c.global_margin.map(|m| m.to_string()).unwrap_or_default(),
        format!("threshold {}; {} leaves; {} boxes", c.threshold, c.stats.leaves, c.stats.boxes),
    )
}

fn write_json(path: Option<&Path>, json: &str, out: &mut dyn Write) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, json)?;
        writeln!(out, "  wrote {}", p.display())?;
    }
    Ok(())
}

/// Small fixed checks across all modules; prints one line per check.
pub fn cmd_selftest(out: &mut dyn Write) -> Result<i32> {
    let mut failed = 0;
    let mut check = |name: &str, ok: bool, out: &mut dyn Write| -> Result<()> {
        writeln!(out, "{} {name}", if ok { "PASS" } else { "FAIL" })?;
        if !ok {
            failed += 1;
        }
        Ok(())
    };
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs();

    let tet = shapes::regular_tetrahedron().isoperimetric_ratio()?;
    check("tetrahedron ratio 216 sqrt 3", rel(tet, 216.0 * 3f64.sqrt()), out)?;
    let oct = shapes::octahedron(1.0, 1.0, 1.0).isoperimetric_ratio()?;
    check("octahedron ratio 108 sqrt 3", rel(oct, 108.0 * 3f64.sqrt()), out)?;
    let bip = shapes::triangle_bipyramid(2f64.sqrt()).isoperimetric_ratio()?;
    check("bipyramid at sqrt 2 ratio 243 sqrt 2", rel(bip, 243.0 * 2f64.sqrt()), out)?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let small = rng.gen_bool(0.5);
        let p = random_feasible(&mut rng, Profile::SixVertex, small);
        let b = realize(&p)?;
        worst = worst
            .max((b.polytope.volume() - strange_v(&p)).abs() / strange_v(&p))
            .max((b.polytope.surface_area() - strange_s(&p)).abs() / strange_s(&p));
    }
    check("closed forms match hulls", worst <= 1e-9, out)?;

    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let pts: Vec<Vec3> = (0..8)
            .map(|_| Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let p = Polytope3::hull(&pts)?;
        let n = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 1.0);
        let q = steiner_symmetral(&p, n)?;
        worst = worst.max((q.volume() - p.volume()).abs() / p.volume());
    }
    check("Steiner symmetral preserves volume", worst <= 1e-8, out)?;

    check("volume thresholds", certify_lemma_volumeest().is_ok(), out)?;
    check("distance thresholds", certify_lemma_distanceest().is_ok(), out)?;

    let near = Box5::from_bounds([[0.0, 1e-3], [1.0, 1.001], [1.0, 1.001], [1.0, 1.001], [1.0, 1.001]])?;
    let small = branch_and_bound_with(
        &near,
        &ConstraintSet::six_vertex(),
        MUTANT6_THRESHOLD,
        &Budget::default(),
        &mut RunOptions::default(),
    )?;
    check("branch and bound near (0,1,1,1,1)", small.holds() && small.leaves.len() == 1, out)?;

    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}
