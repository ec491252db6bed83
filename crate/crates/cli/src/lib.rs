//! The `wradius` command line: compute radii of a matrix file, run the
//! inequality suite, reproduce the 2x2 worked example, and audit the norm
//! registry.
//!
//! Exit codes: 0 on success, 1 when a check or assertion fails, 2 on usage,
//! configuration or input errors.

use std::f64::consts::SQRT_2;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wradius::eigen::spectral_norm;
use wradius::ensembles::{generate, EnsembleSpec};
use wradius::io::{fmt_f64, read_matrix_file};
use wradius::lab::{format, inf_over_phi, run_suite, CheckId, SuiteConfig};
use wradius::norms::{registry, validate_norm, NormAudit, NormSpec};
use wradius::optimize::GridOpts;
use wradius::radius::{generalized_radius, hs_radius_sq, numerical_radius, omega_norm, OmegaOpts, RadiusOpts};
use wradius::{CMat, Error};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Norms and radii of the matrix given by --matrix.
    Compute,
    /// Run the inequality suite over seeded ensembles.
    Verify,
    /// Check the 2x2 example T = [[1, 1], [0, 0]] against its closed forms.
    PaperExample,
    /// Audit every registered norm against its declared properties.
    ValidateNorms,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Matrix file: {"rows": n, "cols": n, "data": [[re, im], ...]}.
    #[arg(long, global = true, value_name = "PATH")]
    pub matrix: Option<PathBuf>,
    /// Norm id: op, schatten:p, schatten:inf, wnum or omega.
    #[arg(long, global = true, value_name = "ID")]
    pub norm: Option<String>,
    /// Comma-separated ensemble ids such as ginibre:4,nil:3.
    #[arg(long, global = true, value_name = "CSV")]
    pub ensembles: Option<String>,
    /// Comma-separated check ids.
    #[arg(long, global = true, value_name = "CSV")]
    pub checks: Option<String>,
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Slack tolerance (default 1e-9; 1e-8 for paper-example).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(name = "wradius", version, about = "Numerical radii and norm inequalities for complex matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

/// Validated settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub matrix_path: Option<PathBuf>,
    pub norm_id: String,
    pub norm_given: bool,
    pub ensemble_ids: Vec<String>,
    pub check_ids: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub out_path: Option<PathBuf>,
    pub format: Format,
}

fn split_csv(s: &Option<String>) -> Vec<String> {
    s.as_deref()
        .map(|s| s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect())
        .unwrap_or_default()
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, String> {
        let f = &cli.flags;
        if f.trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        let default_tol = if cli.command == Command::PaperExample { 1e-8 } else { 1e-9 };
        let tol = f.tol.unwrap_or(default_tol);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(format!("--tol must be a positive number, got {tol}"));
        }
        if cli.command == Command::Compute && f.matrix.is_none() {
            return Err("compute requires --matrix".into());
        }
        Ok(RunConfig {
            command: cli.command,
            matrix_path: f.matrix.clone(),
            norm_id: f.norm.clone().unwrap_or_else(|| "op".into()),
            norm_given: f.norm.is_some(),
            ensemble_ids: split_csv(&f.ensembles),
            check_ids: split_csv(&f.checks),
            trials: f.trials,
            seed: f.seed,
            tol,
            out_path: f.out.clone(),
            format: f.format,
        })
    }
}

/// A command's outcome: exit code, the report text, and diagnostics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub diagnostics: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            report: String::new(),
            diagnostics: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name), runs the command, and writes
/// the report to `--out` or `stdout` and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match RunConfig::from_cli(&cli) {
        Ok(cfg) => execute(&cfg),
        Err(msg) => Outcome::usage(msg),
    };
    let _ = stderr.write_all(outcome.diagnostics.as_bytes());
    match cli.flags.out.as_ref() {
        Some(path) if !outcome.report.is_empty() => {
            if let Err(e) = std::fs::write(path, &outcome.report) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        _ => {
            let _ = stdout.write_all(outcome.report.as_bytes());
        }
    }
    outcome.code
}

pub fn execute(cfg: &RunConfig) -> Outcome {
    match cfg.command {
        Command::Compute => cmd_compute(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::PaperExample => cmd_paper_example(cfg),
        Command::ValidateNorms => cmd_validate_norms(cfg),
    }
}

fn parse_norm(id: &str) -> Result<NormSpec, Outcome> {
    NormSpec::parse(id).map_err(|e| Outcome::usage(format!("--norm: {e}")))
}

/// Key-value lines for machine output; aligned `key value` pairs for humans.
struct Lines {
    format: Format,
    text: String,
}

impl Lines {
    fn new(format: Format) -> Self {
        Lines {
            format,
            text: String::new(),
        }
    }

    fn push(&mut self, kind: &str, fields: &[(&str, String)]) {
        match self.format {
            Format::Machine => {
                let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(self.text, "{kind} {}", body.join(" "));
            }
            Format::Human => {
                let mut it = fields.iter();
                if let Some((_, head)) = it.next() {
                    let rest: Vec<String> = it.map(|(k, v)| format!("{k} {v}")).collect();
                    let _ = writeln!(self.text, "{head:<24} {}", rest.join("  "));
                }
            }
        }
    }
}

pub fn cmd_compute(cfg: &RunConfig) -> Outcome {
    let path = cfg.matrix_path.as_ref().expect("validated");
    let t = match read_matrix_file(path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("{}: {e}", path.display())),
    };
    if !t.is_square() {
        return Outcome::usage(format!(
            "{}: parse error in field \"cols\": matrix is {}x{}, expected a square matrix",
            path.display(),
            t.rows(),
            t.cols()
        ));
    }
    let norm = match parse_norm(&cfg.norm_id) {
        Ok(n) => n,
        Err(o) => return o,
    };
    match compute_report(&t, &norm, cfg.format) {
        Ok(report) => Outcome {
            code: EXIT_PASS,
            report,
            diagnostics: String::new(),
        },
        Err(e) => Outcome::usage(e),
    }
}

/// The quantities printed by `compute`.
pub fn compute_report(t: &CMat, norm: &NormSpec, format: Format) -> Result<String, Error> {
    let opts = RadiusOpts::default();
    let w = numerical_radius(t, &opts)?;
    let wn = generalized_radius(t, norm, &opts)?;
    let om = omega_norm(t, &OmegaOpts::default())?;
    let mut out = Lines::new(format);
    let q = |name: &str, v: f64| vec![("name", name.to_string()), ("value", fmt_f64(v))];
    out.push("quantity", &q("norm", spectral_norm(t)));
    out.push("quantity", &q("frobenius", t.frobenius_norm()));
    let mut fields = q("w", w.value);
    fields.push(("argmax_theta", fmt_f64(w.argmax_theta)));
    out.push("quantity", &fields);
    let mut fields = q(&format!("w_n[{}]", norm.id), wn.value);
    fields.push(("argmax_theta", fmt_f64(wn.argmax_theta)));
    out.push("quantity", &fields);
    let mut fields = q("omega", om.value);
    fields.push(("argmax_s", fmt_f64(om.argmax.0)));
    fields.push(("argmax_psi", fmt_f64(om.argmax.1)));
    out.push("quantity", &fields);
    out.push("quantity", &q("w_omega", SQRT_2 * w.value));
    out.push("quantity", &q("hs_radius_sq", hs_radius_sq(t)?));
    out.push("quantity", &q("norm_re", spectral_norm(&t.re_part()?)));
    out.push("quantity", &q("norm_im", spectral_norm(&t.im_part()?)));
    out.push("quantity", &q(&format!("n_re[{}]", norm.id), norm.evaluate(&t.re_part()?)));
    out.push("quantity", &q(&format!("n_im[{}]", norm.id), norm.evaluate(&t.im_part()?)));
    Ok(out.text)
}

/// Builds the suite configuration selected by the flags.
pub fn suite_config(cfg: &RunConfig) -> Result<SuiteConfig, String> {
    let mut sc = SuiteConfig {
        trials: cfg.trials,
        base_seed: cfg.seed,
        ..SuiteConfig::default()
    };
    sc.opts.tol = cfg.tol;
    if !cfg.ensemble_ids.is_empty() {
        sc.ensembles = cfg
            .ensemble_ids
            .iter()
            .map(|id| {
                let spec = EnsembleSpec::parse(id, cfg.seed).map_err(|e| format!("--ensembles: {e}"))?;
                generate(&spec).map_err(|e| format!("--ensembles: {e}"))?;
                Ok(spec)
            })
            .collect::<Result<_, String>>()?;
    }
    if !cfg.check_ids.is_empty() {
        sc.checks = cfg
            .check_ids
            .iter()
            .map(|id| id.parse::<CheckId>().map_err(|e| format!("--checks: {e}")))
            .collect::<Result<_, String>>()?;
    }
    if cfg.norm_given {
        let n = NormSpec::parse(&cfg.norm_id).map_err(|e| format!("--norm: {e}"))?;
        sc.norms = Some(vec![n]);
    }
    Ok(sc)
}

pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let sc = match suite_config(cfg) {
        Ok(sc) => sc,
        Err(msg) => return Outcome::usage(msg),
    };
    let report = match run_suite(&sc) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let text = match cfg.format {
        Format::Human => format::human(&report),
        Format::Machine => format::machine(&report),
    };
    let mut diagnostics = String::new();
    for cell in &report.cells {
        if let Some(f) = cell.failures.first() {
            let _ = writeln!(
                diagnostics,
                "violation: {} on {} ({}) at seed {}, input {}",
                f.name,
                cell.ensemble,
                cell.norm.as_deref().unwrap_or("-"),
                f.seed,
                f.input_digest
            );
        }
        if let Some(e) = &cell.error {
            let _ = writeln!(diagnostics, "error: {} on {}: {e}", cell.check, cell.ensemble);
        }
    }
    Outcome {
        code: if report.passed() { EXIT_PASS } else { EXIT_VIOLATION },
        report: text,
        diagnostics,
    }
}

/// One closed-form assertion of the worked example.
#[derive(Debug, Clone, PartialEq)]
pub struct Assertion {
    pub name: &'static str,
    pub computed: f64,
    pub expected: f64,
    pub deviation: f64,
    pub pass: bool,
}

/// Evaluates the closed forms of the example `T = [[1, 1], [0, 0]]` at `tol`.
pub fn paper_example_assertions(tol: f64) -> Result<Vec<Assertion>, Error> {
    let t = CMat::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]])?;
    let opts = GridOpts::default();
    let mut out = Vec::new();
    let mut check = |name, computed: f64, expected: f64| {
        let deviation = (computed - expected).abs();
        out.push(Assertion {
            name,
            computed,
            expected,
            deviation,
            pass: deviation <= tol,
        });
    };
    let w = numerical_radius(&t, &opts)?.value;
    check("w", w, (1.0 + SQRT_2) / 2.0);
    let re = spectral_norm(&t.re_part()?);
    let im = spectral_norm(&t.im_part()?);
    check("norm_re", re, (3.0 + 2.0 * SQRT_2).sqrt() / 2.0);
    check("norm_im", im, 0.5);

    let mut worst: f64 = 0.0;
    let mut at = 0.0;
    for k in 0..360 {
        let phi = k as f64 * std::f64::consts::TAU / 360.0;
        let n = spectral_norm(&t.rotated_re_part(phi)?);
        let c2 = phi.cos().powi(2);
        let closed = (1.0 + 2.0 * c2) / 4.0 + (c2 + c2 * c2).sqrt() / 2.0;
        let dev = (n * n - closed).abs();
        if dev > worst {
            worst = dev;
            at = n * n;
        }
    }
    check("rotated_re_norm_sq_closed_form", at, at - worst);

    let inf = inf_over_phi(
        |phi| {
            let r = spectral_norm(&t.rotated_re_part(phi).expect("square"));
            let i = spectral_norm(&t.rotated_im_part(phi).expect("square"));
            r.hypot(i)
        },
        std::f64::consts::TAU,
        &opts,
    )?
    .value;
    check("inf_phi", inf, (1.0 + SQRT_2 / 2.0).sqrt());
    check("sum_re_im", re + im, 1.0 + SQRT_2 / 2.0);
    let strict = w < inf && inf < re + im;
    out.push(Assertion {
        name: "strict_order",
        computed: (inf - w).min(re + im - inf),
        expected: 0.0,
        deviation: 0.0,
        pass: strict,
    });
    Ok(out)
}

pub fn cmd_paper_example(cfg: &RunConfig) -> Outcome {
    let assertions = match paper_example_assertions(cfg.tol) {
        Ok(a) => a,
        Err(e) => return Outcome::usage(e),
    };
    let mut out = Lines::new(cfg.format);
    for a in &assertions {
        out.push(
            "assertion",
            &[
                ("name", a.name.to_string()),
                ("computed", fmt_f64(a.computed)),
                ("expected", fmt_f64(a.expected)),
                ("deviation", fmt_f64(a.deviation)),
                ("pass", a.pass.to_string()),
            ],
        );
    }
    let failed = assertions.iter().find(|a| !a.pass);
    Outcome {
        code: if failed.is_some() { EXIT_VIOLATION } else { EXIT_PASS },
        report: out.text,
        diagnostics: failed
            .map(|a| format!("assertion {} failed: deviation {} > {}\n", a.name, fmt_f64(a.deviation), cfg.tol))
            .unwrap_or_default(),
    }
}

pub const AUDIT_DIMS: [usize; 3] = [2, 4, 8];

/// Audits `norms` at every size in [`AUDIT_DIMS`].
pub fn audit_norms(norms: &[NormSpec], trials: usize, seed: u64) -> Vec<NormAudit> {
    let mut out = Vec::new();
    for n in norms {
        for &dim in &AUDIT_DIMS {
            out.push(validate_norm(n, dim, trials, seed));
        }
    }
    out
}

pub fn render_audits(audits: &[NormAudit], format: Format) -> String {
    let mut out = Lines::new(format);
    for a in audits {
        for (axiom, violation, tol) in a.items() {
            out.push(
                "audit",
                &[
                    ("norm", format!("{}:n={}", a.id, a.dim)),
                    ("axiom", axiom.to_string()),
                    ("violation", fmt_f64(violation)),
                    ("tolerance", fmt_f64(tol)),
                    ("pass", (violation <= tol).to_string()),
                ],
            );
        }
        if let Some(w) = &a.submultiplicativity_witness {
            out.push(
                "witness",
                &[
                    ("norm", format!("{}:n={}", a.id, a.dim)),
                    ("algebra_declared", a.algebra_declared.to_string()),
                    ("n_ab", fmt_f64(w.n_ab)),
                    ("n_a_n_b", fmt_f64(w.n_a_n_b)),
                ],
            );
        }
    }
    out.text
}

pub fn cmd_validate_norms(cfg: &RunConfig) -> Outcome {
    let norms = if cfg.norm_given {
        match parse_norm(&cfg.norm_id) {
            Ok(n) => vec![n],
            Err(o) => return o,
        }
    } else {
        registry()
    };
    validate_norms_with(&norms, cfg)
}

/// Runs the audit over an explicit list of norms.
pub fn validate_norms_with(norms: &[NormSpec], cfg: &RunConfig) -> Outcome {
    let audits = audit_norms(norms, cfg.trials, cfg.seed);
    let dirty: Vec<&NormAudit> = audits.iter().filter(|a| !a.clean()).collect();
    let diagnostics = dirty
        .iter()
        .map(|a| format!("norm {} fails its declared properties at n={}\n", a.id, a.dim))
        .collect();
    Outcome {
        code: if dirty.is_empty() { EXIT_PASS } else { EXIT_VIOLATION },
        report: render_audits(&audits, cfg.format),
        diagnostics,
    }
}
