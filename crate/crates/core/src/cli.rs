//! Command-line front end. Data goes to stdout (or `--output`), diagnostics
//! to stderr. Exit codes: 0 success, 1 a checked claim failed or I/O error,
//! 2 invalid input, 3 a size cap was hit, 4 a hypothesis does not hold.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::charsum::{compute_mq, decimal12};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, FieldElement, FiniteField};
use crate::graphs::{
    build_bipartite, build_s_graph, distance_two, BipartiteSpec, EdgeFormat, Graph, SGraphSpec,
    Side, SpecFile,
};
use crate::poly::Poly;
use crate::spectral::{
    cheeger_exact, classify_cubic, connectivity_rank, cover_check, is_decreasing, lemma51_sweep,
    remark1_witness, remark2_bound, remark3_scan, second_eigenvalue, spectrum_formula,
    verify_theorem3, verify_theorem4, SweepOptions, Verdict, CHEEGER_CAP,
};

#[derive(Parser, Debug)]
#[command(
    name = "skq",
    version,
    about = "Exact spectra of the Cayley graphs S(k,q) over finite fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// TOML file with run settings; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format. Spectrum CSV columns: value,multiplicity,coeffs,witness_w.
    /// Family CSV columns: q,lambda2,gap,lambda2_over_q2,cheeger_lower,status.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads for the eigenvalue sweep.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on elementary character evaluations per sweep.
    #[arg(long, global = true, env = crate::config::WORK_CAP_ENV)]
    pub work_cap: Option<u64>,
    #[arg(long, global = true)]
    pub vertex_cap: Option<u64>,
    #[arg(long, global = true)]
    pub mq_cap: Option<usize>,
    /// Number of w-vectors drawn when a sweep is too large to be exhaustive.
    #[arg(long, global = true)]
    pub sample: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

impl GlobalArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = self.$field.clone() { cfg.$field = v; } )* };
        }
        take!(work_cap, vertex_cap, mq_cap, sample, seed, format);
        if self.threads.is_some() {
            cfg.threads = self.threads;
        }
        if self.output.is_some() {
            cfg.output = self.output.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full spectrum of S(k,q) from the character-sum formula.
    Spectrum(SpecArgs),
    /// Check one of the eigenvalue claims.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// λ₂ trend over a list of field orders for a polynomial template.
    Family(FamilyArgs),
    /// Write graph artifacts.
    #[command(subcommand)]
    Export(ExportCommand),
}

/// An S(k,q) spec, either inline or from a JSON file `{p, e, k, f, g}`.
/// Polynomials are JSON arrays of canonical coefficient encodings, constant term first.
#[derive(Args, Debug, Default, Clone)]
pub struct SpecArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long)]
    pub k: Option<usize>,
    /// f₃, …, f_k, e.g. "[[0,0,1]]".
    #[arg(long)]
    pub f: Option<String>,
    /// g₃, …, g_k, e.g. "[[0,0,0,1]]".
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long, conflicts_with_all = ["p", "k", "f", "g"])]
    pub spec_file: Option<PathBuf>,
}

impl SpecArgs {
    fn given(&self) -> bool {
        self.spec_file.is_some()
            || self.p.is_some()
            || self.k.is_some()
            || self.f.is_some()
            || self.g.is_some()
    }

    pub fn resolve(&self, cfg: &RunConfig) -> Result<SGraphSpec> {
        let file: SpecFile = match &self.spec_file {
            Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?,
            None => {
                let missing = |name: &str| {
                    Error::InvalidSpec(format!("missing --{name} (or give --spec-file)"))
                };
                SpecFile {
                    p: self.p.ok_or_else(|| missing("p"))?,
                    e: self.e,
                    k: self.k.ok_or_else(|| missing("k"))?,
                    f: parse_poly_list(self.f.as_deref().ok_or_else(|| missing("f"))?)?,
                    g: parse_poly_list(self.g.as_deref().ok_or_else(|| missing("g"))?)?,
                }
            }
        };
        SGraphSpec::from_file(&file, cfg.field_cap)
    }
}

fn parse_poly_list(s: &str) -> Result<Vec<Vec<u64>>> {
    serde_json::from_str(s).map_err(|e| Error::InvalidSpec(format!("polynomial list {s:?}: {e}")))
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// λ₂ = max{q(k−3), (q−1)M_q} for f_i = X^(i−1), g_i = X^3.
    Thm3(QkArgs),
    /// λ₂ ≤ max{q(p^(k−3)−1), (q−1)M_q} for f_i = X^(p^(i−2)), g_i = X^3.
    Thm4(QkArgs),
    /// Per-w bound λ_w ≤ N_w(q−1) + |S_w|((d_g−1)√q+1).
    Lemma51(SpecArgs),
    /// Per-w classification λ_w = q(T_w−1) or λ_w ≤ (q−T_w)M_q when all g_i = X^3.
    Lemma61(SpecArgs),
    /// λ_min < −q; defaults to S(3,q; X^2, X^3).
    Remark1(Remark1Args),
    /// λ₂ ≤ max{q(k−3), 2n(q−1)√q} for g_i = X^(2n+1).
    Remark2(Remark2Args),
    /// 2√q − 2 ≤ M_q ≤ 2√q over odd q ≤ qmax with q ≡ 2 mod 3.
    Remark3(Remark3Args),
    /// Spectrum containment and λ₂ monotonicity for a one-step extension.
    Remark4(CoverArgs),
    /// Exact Cheeger constant against the spectral bounds.
    Cheeger(CheegerArgs),
    /// Same as remark4.
    Cover(CoverArgs),
}

impl VerifyCommand {
    pub fn name(&self) -> &'static str {
        match self {
            VerifyCommand::Thm3(_) => "thm3",
            VerifyCommand::Thm4(_) => "thm4",
            VerifyCommand::Lemma51(_) => "lemma51",
            VerifyCommand::Lemma61(_) => "lemma61",
            VerifyCommand::Remark1(_) => "remark1",
            VerifyCommand::Remark2(_) => "remark2",
            VerifyCommand::Remark3(_) => "remark3",
            VerifyCommand::Remark4(_) => "remark4",
            VerifyCommand::Cheeger(_) => "cheeger",
            VerifyCommand::Cover(_) => "cover",
        }
    }
}

#[derive(Args, Debug)]
pub struct QkArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct Remark1Args {
    /// Use S(3,q; X^2, X^3).
    #[arg(long)]
    pub q: Option<u64>,
    #[command(flatten)]
    pub spec: SpecArgs,
}

#[derive(Args, Debug)]
pub struct Remark2Args {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: u64,
}

#[derive(Args, Debug)]
pub struct Remark3Args {
    #[arg(long, default_value_t = 49)]
    pub qmax: usize,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Appended f, e.g. "[0,0,0,1]".
    #[arg(long)]
    pub f_next: String,
    /// Appended g.
    #[arg(long)]
    pub g_next: String,
}

#[derive(Args, Debug)]
pub struct CheegerArgs {
    /// Use the n-cycle.
    #[arg(long, conflicts_with = "complete")]
    pub cycle: Option<usize>,
    /// Use the complete graph K_n.
    #[arg(long)]
    pub complete: Option<usize>,
    #[command(flatten)]
    pub spec: SpecArgs,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Comma-separated f₃, …, f_k templates: sums of terms c*X^n, X^(p^n), constants.
    #[arg(long)]
    pub f: String,
    /// Comma-separated g₃, …, g_k templates.
    #[arg(long)]
    pub g: String,
    /// Field orders, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub qs: Vec<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ExportCommand {
    /// Edge list of S(k,q).
    Edges(SpecArgs),
    /// The connection set, one generator per line.
    ConnectionSet(SpecArgs),
    /// Edge list of a bipartite graph; points are 0..q^k, lines q^k..2q^k.
    Bipartite(BipartiteArgs),
    /// Edge list of the distance-two graph on one side of a bipartite graph.
    DistanceTwo(DistanceTwoArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BipartiteFamily {
    Wenger,
    Linearized,
    D4,
}

#[derive(Args, Debug)]
pub struct BipartiteArgs {
    #[arg(long, value_enum)]
    pub family: BipartiteFamily,
    #[arg(long)]
    pub q: u64,
    /// Wenger order m (ignored for d4).
    #[arg(long, default_value_t = 2)]
    pub m: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Points,
    Lines,
}

#[derive(Args, Debug)]
pub struct DistanceTwoArgs {
    #[command(flatten)]
    pub graph: BipartiteArgs,
    #[arg(long, value_enum)]
    pub side: SideArg,
}

/// Parses arguments from the process and runs; returns the exit code.
pub fn run() -> i32 {
    run_with(Cli::parse())
}

pub fn run_with(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let cfg = cli.global.resolve()?;
    if let Some(n) = cfg.threads {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(&cfg, args),
        Command::Verify(which) => cmd_verify(&cfg, which),
        Command::Family(args) => cmd_family(&cfg, args),
        Command::Export(what) => cmd_export(&cfg, what),
    }
}

fn emit(cfg: &RunConfig, bytes: &[u8]) -> Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json(cfg: &RunConfig, value: &impl Serialize) -> Result<()> {
    let mut out = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    out.push('\n');
    emit(cfg, out.as_bytes())
}

fn cmd_spectrum(cfg: &RunConfig, args: &SpecArgs) -> Result<bool> {
    let spec = args.resolve(cfg)?;
    let s = spectrum_formula(&spec, &SweepOptions::from(cfg))?;
    let l2 = second_eigenvalue(&s);
    let min = s.min();
    eprintln!(
        "S({}, {}): degree {}, λ_max = {}, λ₂ = {}, gap = {}, λ_min = {}, components = {}{}",
        s.k,
        s.q,
        s.degree,
        decimal12(s.max().numeric),
        decimal12(l2.numeric),
        decimal12(l2.gap),
        decimal12(min.numeric),
        s.components(),
        if s.exhaustive { "" } else { " (sampled)" }
    );
    if let Ok(r) = connectivity_rank(&spec) {
        eprintln!(
            "rank {} of the N_w = q system predicts {} component(s)",
            r.rank, r.predicted_components
        );
    }
    if remark1_witness(&s).holds {
        eprintln!(
            "λ_min < −{}: not the distance-two graph of any {}-regular bipartite graph",
            s.q, s.q
        );
    }
    match cfg.format {
        OutputFormat::Csv => emit(cfg, s.to_csv().as_bytes())?,
        _ => emit_json(cfg, &s.to_json())?,
    }
    Ok(true)
}

fn note_reduced(reduced: bool) {
    if reduced {
        eprintln!("note: exponents ≥ q were reduced modulo X^q − X");
    }
}

fn cmd_verify(cfg: &RunConfig, which: &VerifyCommand) -> Result<bool> {
    let opts = SweepOptions::from(cfg);
    let verdicts = match collect_verdicts(cfg, &opts, which) {
        Ok(v) => v,
        Err(e @ Error::HypothesisViolated(_)) => {
            emit_json(cfg, &[Verdict::not_applicable(which.name(), &e)])?;
            return Err(e);
        }
        Err(e) => return Err(e),
    };
    for v in &verdicts {
        eprintln!("{:?}: {}", v.verdict, v.claim);
    }
    emit_json(cfg, &verdicts)?;
    Ok(verdicts.iter().all(Verdict::passed))
}

fn collect_verdicts(
    cfg: &RunConfig,
    opts: &SweepOptions,
    which: &VerifyCommand,
) -> Result<Vec<Verdict>> {
    Ok(match which {
        VerifyCommand::Thm3(a) => {
            let r = verify_theorem3(&field_of_order(a.q)?, a.k, opts, cfg.mq_cap)?;
            note_reduced(r.reduced);
            vec![Verdict::sampled(
                format!("λ₂(S({}, {})) = max{{q(k−3), (q−1)M_q}}", a.k, a.q),
                json!(r.lambda2.numeric),
                json!(r.predicted),
                r.holds,
                r.lambda2.certified,
            )]
        }
        VerifyCommand::Thm4(a) => {
            let r = verify_theorem4(&field_of_order(a.q)?, a.k, opts, cfg.mq_cap)?;
            note_reduced(r.reduced);
            vec![Verdict::new(
                format!("λ₂(S({}, {})) ≤ max{{q(p^(k−3)−1), (q−1)M_q}}", a.k, a.q),
                json!(r.lambda2.numeric),
                json!(r.predicted),
                r.holds,
            )]
        }
        VerifyCommand::Lemma51(a) => {
            let spec = a.resolve(cfg)?;
            let c = lemma51_sweep(&spec, cfg.work_cap)?;
            vec![Verdict::new(
                "λ_w ≤ N_w(q−1) + |S_w|((d_g−1)√q+1) and λ_w = q(q−1) ⇔ N_w = q, all w",
                json!(c),
                json!({ "violations": 0 }),
                c.holds(),
            )]
        }
        VerifyCommand::Lemma61(a) => {
            let spec = a.resolve(cfg)?;
            let mq = compute_mq(spec.field(), cfg.mq_cap)?;
            let r = classify_cubic(&spec, &mq, cfg.work_cap)?;
            vec![Verdict::new(
                "λ_w = q(T_w−1) or λ_w ≤ (q−T_w)M_q, all w",
                json!(r),
                json!({ "violations": 0 }),
                r.check.holds(),
            )]
        }
        VerifyCommand::Remark1(a) => {
            let spec = match (a.q, a.spec.given()) {
                (Some(q), false) => SGraphSpec::monomial(&field_of_order(q)?, 3, &[2], &[3])?.0,
                (None, true) => a.spec.resolve(cfg)?,
                _ => return Err(Error::InvalidSpec("give either --q or a spec".into())),
            };
            let s = spectrum_formula(&spec, opts)?;
            let r = remark1_witness(&s);
            vec![Verdict::sampled(
                format!("λ_min(S({}, {})) < −{}", spec.k(), spec.q(), spec.q()),
                json!(r.numeric),
                json!(-(spec.q() as f64)),
                r.holds,
                true,
            )]
        }
        VerifyCommand::Remark2(a) => {
            let r = remark2_bound(&field_of_order(a.q)?, a.k, a.n, opts)?;
            vec![
                Verdict::sampled(
                    format!(
                        "λ₂(S({}, {})) ≤ max{{q(k−3), 2n(q−1)√q}}, n = {}",
                        a.k, a.q, a.n
                    ),
                    json!(r.lambda2.numeric),
                    json!(r.bound),
                    r.holds,
                    r.lambda2.certified,
                ),
                Verdict::new(
                    "λ_w = q(N_w−1) or λ_w ≤ 2n(q−N_w)√q, all w",
                    json!(r.per_w),
                    json!({ "violations": 0 }),
                    r.per_w.holds(),
                ),
            ]
        }
        VerifyCommand::Remark3(a) => remark3_scan(a.qmax, cfg.mq_cap)?
            .into_iter()
            .map(|row| {
                Verdict::new(
                    format!("2√q − 2 ≤ M_q ≤ 2√q, q = {}", row.q),
                    json!(row.mq),
                    json!([row.lower, row.upper]),
                    row.holds,
                )
            })
            .collect(),
        VerifyCommand::Remark4(a) | VerifyCommand::Cover(a) => {
            let base = a.spec.resolve(cfg)?;
            let field = base.field();
            let parse = |s: &str| -> Result<Poly> {
                let c: Vec<u64> = serde_json::from_str(s)
                    .map_err(|e| Error::InvalidSpec(format!("{s:?}: {e}")))?;
                Poly::from_encodings(field, &c)
            };
            let cover = base.extend(parse(&a.f_next)?, parse(&a.g_next)?)?;
            let r = cover_check(&base, &cover, opts)?;
            vec![
                Verdict::new(
                    "spectrum of S(k,q) ⊆ spectrum of S(k+1,q)",
                    json!(r.is_submultiset),
                    json!(true),
                    r.is_submultiset,
                ),
                Verdict::new(
                    "λ₂(S(k+1,q)) ≥ λ₂(S(k,q))",
                    json!([r.lambda2_cover.numeric, r.lambda2_base.numeric]),
                    json!("monotone"),
                    r.lambda2_monotone,
                ),
                Verdict::new(
                    "λ_(w,0) of the cover = λ_w of the base",
                    json!(r.projection),
                    json!(true),
                    r.projection,
                ),
            ]
        }
        VerifyCommand::Cheeger(a) => {
            let (name, g) = match (a.cycle, a.complete) {
                (Some(n), _) => (format!("C_{n}"), Graph::cycle(n)),
                (None, Some(n)) => (format!("K_{n}"), Graph::complete(n)),
                (None, None) => {
                    let spec = a.spec.resolve(cfg)?;
                    let g = build_s_graph(&spec, cfg.vertex_cap as u128)?.to_graph();
                    (format!("S({}, {})", spec.k(), spec.q()), g)
                }
            };
            cheeger_verdicts(&name, &g)?
        }
    })
}

/// The sandwich on every connected component (the whole graph if connected).
fn cheeger_verdicts(name: &str, g: &Graph) -> Result<Vec<Verdict>> {
    let comps = g.components();
    let mut out = Vec::new();
    for c in 0..comps.count {
        let vertices: Vec<usize> = (0..g.n()).filter(|&v| comps.labels[v] == c).collect();
        if vertices.len() > CHEEGER_CAP {
            return Err(Error::SizeExceeded {
                what: "Cheeger enumeration order",
                value: vertices.len() as u128,
                cap: CHEEGER_CAP as u128,
            });
        }
        if vertices.len() < 2 {
            continue;
        }
        let r = cheeger_exact(&g.induced(&vertices))?;
        out.push(Verdict::new(
            format!("(d−λ₂)/2 ≤ h ≤ √(d²−λ₂²) on component {c} of {name}"),
            json!({ "h": r.h, "argmin": r.argmin }),
            json!([r.lower, r.upper]),
            r.sandwich.unwrap_or(false),
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct FamilyRow {
    q: u64,
    lambda2: Option<f64>,
    gap: Option<f64>,
    lambda2_over_q2: Option<f64>,
    cheeger_lower: Option<f64>,
    status: String,
}

fn cmd_family(cfg: &RunConfig, args: &FamilyArgs) -> Result<bool> {
    let fs: Vec<&str> = args.f.split(',').map(str::trim).collect();
    let gs: Vec<&str> = args.g.split(',').map(str::trim).collect();
    if fs.len() != gs.len() {
        return Err(Error::InvalidSpec(
            "--f and --g need the same number of templates".into(),
        ));
    }
    let k = fs.len() + 2;
    let opts = SweepOptions::from(cfg);
    let mut rows = Vec::new();
    for &q in &args.qs {
        let row = match family_row(q, k, &fs, &gs, &opts) {
            Ok(row) => row,
            Err(e @ Error::SizeExceeded { .. }) => return Err(e),
            Err(e) => FamilyRow {
                q,
                lambda2: None,
                gap: None,
                lambda2_over_q2: None,
                cheeger_lower: None,
                status: match e {
                    Error::HypothesisViolated(m) => format!("hypothesis-violated: {m}"),
                    other => format!("invalid: {other}"),
                },
            },
        };
        rows.push(row);
    }
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.lambda2_over_q2).collect();
    let decreasing = is_decreasing(&ratios);
    match decreasing {
        Some(true) => eprintln!("λ₂/q² decreases along the family"),
        Some(false) => eprintln!("non-monotone: λ₂/q² does not decrease along the family"),
        None => eprintln!("fewer than two computed rows: no trend verdict"),
    }
    if cfg.format == OutputFormat::Csv {
        let opt = |x: Option<f64>| x.map(decimal12).unwrap_or_default();
        let mut out = String::from("q,lambda2,gap,lambda2_over_q2,cheeger_lower,status\n");
        for r in &rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.q,
                opt(r.lambda2),
                opt(r.gap),
                opt(r.lambda2_over_q2),
                opt(r.cheeger_lower),
                r.status.replace(',', ";")
            ));
        }
        emit(cfg, out.as_bytes())?;
    } else {
        emit_json(
            cfg,
            &json!({ "rows": rows, "decreasing": decreasing, "non_monotone": decreasing == Some(false) }),
        )?;
    }
    Ok(true)
}

fn family_row(
    q: u64,
    k: usize,
    fs: &[&str],
    gs: &[&str],
    opts: &SweepOptions,
) -> Result<FamilyRow> {
    let field = field_of_order(q)?;
    let mut reduced = false;
    let mut polys = |ts: &[&str]| -> Result<Vec<Poly>> {
        ts.iter()
            .map(|t| {
                let (p, r) = parse_template(&field, t)?;
                reduced |= r;
                Ok(p)
            })
            .collect()
    };
    let f = polys(fs)?;
    let g = polys(gs)?;
    let spec = SGraphSpec::new(&field, k, f, g)?;
    crate::spectral::check_lemma51_hypothesis(&spec)?;
    let s = spectrum_formula(&spec, opts)?;
    let l2 = second_eigenvalue(&s);
    let qf = q as f64;
    let status = match (s.exhaustive, reduced) {
        (true, false) => "ok",
        (true, true) => "ok (exponents reduced mod X^q − X)",
        (false, false) => "sampled",
        (false, true) => "sampled (exponents reduced mod X^q − X)",
    };
    Ok(FamilyRow {
        q,
        lambda2: Some(l2.numeric),
        gap: Some(l2.gap),
        lambda2_over_q2: Some(l2.numeric / (qf * qf)),
        cheeger_lower: Some(l2.gap / 2.0),
        status: status.into(),
    })
}

/// Parses a template such as `2*X^3+X`, `X^(p^2)` or `1` into a polynomial
/// over `field`; exponents reaching q are reduced modulo X^q − X.
pub fn parse_template(field: &FiniteField, template: &str) -> Result<(Poly, bool)> {
    let bad = || Error::InvalidSpec(format!("cannot parse polynomial template {template:?}"));
    let compact: String = template.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let q = field.q();
    let mut coeffs = vec![FieldElement::ZERO; q];
    let mut reduced = false;
    for term in compact.split('+') {
        let (coeff, mono) = match term.split_once('*') {
            Some((c, m)) => (c.parse::<i64>().map_err(|_| bad())?, m),
            None if !term.contains(['X', 'x']) => (term.parse::<i64>().map_err(|_| bad())?, ""),
            None => (1, term),
        };
        let exp: u64 = if mono.is_empty() {
            0
        } else {
            let rest = mono.strip_prefix(['X', 'x']).ok_or_else(bad)?;
            match rest.strip_prefix('^') {
                None if rest.is_empty() => 1,
                None => return Err(bad()),
                Some(e) => {
                    let e = e
                        .trim_start_matches(['(', '{'])
                        .trim_end_matches([')', '}']);
                    match e.strip_prefix("p^") {
                        Some(c) => (field.p() as u64)
                            .checked_pow(c.parse().map_err(|_| bad())?)
                            .ok_or_else(bad)?,
                        None => e.parse().map_err(|_| bad())?,
                    }
                }
            }
        };
        let (m, r) = Poly::monomial_reduced(field, field.from_int(coeff), exp);
        reduced |= r;
        let j = m.degree().unwrap_or(0);
        coeffs[j] = field.add(coeffs[j], m.coeff(j));
    }
    Ok((Poly::new(field, coeffs)?, reduced))
}

fn cmd_export(cfg: &RunConfig, what: &ExportCommand) -> Result<bool> {
    let edge_format = if cfg.format == OutputFormat::Json {
        EdgeFormat::Json
    } else {
        EdgeFormat::Text
    };
    let cap = cfg.vertex_cap as u128;
    let bytes = match what {
        ExportCommand::Edges(a) => build_s_graph(&a.resolve(cfg)?, cap)?
            .to_graph()
            .export_edges(edge_format),
        ExportCommand::ConnectionSet(a) => {
            build_s_graph(&a.resolve(cfg)?, cap)?.export_connection_set()
        }
        ExportCommand::Bipartite(a) => build_bipartite(&bipartite_spec(a)?, cap)?
            .graph()
            .export_edges(edge_format),
        ExportCommand::DistanceTwo(a) => {
            let bg = build_bipartite(&bipartite_spec(&a.graph)?, cap)?;
            let side = match a.side {
                SideArg::Points => Side::Points,
                SideArg::Lines => Side::Lines,
            };
            let d2 = distance_two(&bg, side);
            eprintln!(
                "distance-two graph: {} vertices, {} edges, 4-cycle free: {}",
                d2.graph.n(),
                d2.graph.edge_count(),
                d2.four_cycle_free
            );
            d2.graph.export_edges(edge_format)
        }
    };
    emit(cfg, &bytes)?;
    Ok(true)
}

fn bipartite_spec(a: &BipartiteArgs) -> Result<BipartiteSpec> {
    let field = field_of_order(a.q)?;
    match a.family {
        BipartiteFamily::Wenger => BipartiteSpec::wenger(&field, a.m),
        BipartiteFamily::Linearized => BipartiteSpec::linearized_wenger(&field, a.m),
        BipartiteFamily::D4 => BipartiteSpec::d4(&field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn templates() {
        let f5 = make_field(5, 1).unwrap();
        let (p, r) = parse_template(&f5, "2*X^3 + X").unwrap();
        assert_eq!(p.encodings(), vec![0, 1, 0, 2]);
        assert!(!r);
        let (p, r) = parse_template(&f5, "X^(p^1)").unwrap();
        assert_eq!(p.encodings(), vec![0, 1]);
        assert!(r);
        let (p, _) = parse_template(&f5, "3").unwrap();
        assert_eq!(p.encodings(), vec![3]);
        assert!(parse_template(&f5, "Y^2").is_err());
        assert!(parse_template(&f5, "").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
