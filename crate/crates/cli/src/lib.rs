//! `mwrank` command line: each subcommand writes one JSON document and maps
//! failures to exit codes (2 inconclusive, 3 bad configuration, 4 budget,
//! 5 internal inconsistency).

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mwrank::algebra::{
    parse_polynomial, variables_in_order, EisensteinInt, PrimeField, Rational, WPolynomial,
};
use mwrank::betti::{self, BettiInputs};
use mwrank::curve::{self, THREEFOLD_VARS, THREEFOLD_WEIGHTS};
use mwrank::hodge::{self, GradedRingSpec};
use mwrank::sections::{self, SectionCheck};
use mwrank::singular::{self, ProjectivePoint};
use mwrank::wps_count::{self, CountMethod, WeightedSpace};
use mwrank::{CountOptions, Error};

#[derive(Debug, Parser)]
#[command(
    name = "mwrank",
    version,
    about = "Point counts and Mordell-Weil rank of an elliptic threefold"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count F_p-points of the hypersurface
    Count(Opts),
    /// List singular points over F_p
    Singular(Opts),
    /// Jacobian-ring and Milnor-number inputs
    Hodge(Opts),
    /// Solve the trace-formula inequality for w23
    Bounds(Opts),
    /// Full pipeline: count, singular locus, Hodge inputs, bounds, sections
    Rank(Opts),
    /// Verify the explicit sections
    Sections(Opts),
    /// Point count predicted by w23 and h4
    Predict(Opts),
}

#[derive(Debug, Clone, Args)]
struct Opts {
    #[arg(long, default_value_t = 7)]
    prime: u64,
    /// naive, burnside, weierstrass-fast or all
    #[arg(long)]
    method: Option<String>,
    /// Polynomial text; defaults to the built-in threefold
    #[arg(long, allow_hyphen_values = true)]
    curve: Option<String>,
    /// Variable order for --curve, comma separated
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<u32>>,
    #[arg(long, allow_hyphen_values = true)]
    count: Option<i64>,
    #[arg(long, default_value_t = 18, allow_hyphen_values = true)]
    h4sigma: i64,
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    chi: i64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = mwrank::enumerate::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 12, allow_hyphen_values = true)]
    w23: i64,
    #[arg(long, default_value_t = 7, allow_hyphen_values = true)]
    h4: i64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<SingularJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sections: Option<Vec<SectionCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_count: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountsJson {
    pub cone: u64,
    pub projective: u64,
    pub orbits: u64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<Vec<MethodRun>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodRun {
    pub method: CountMethod,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projective: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularJson {
    pub points: Vec<String>,
    pub matches_expected: Option<bool>,
    pub excluded_ambient: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct HodgeJson {
    pub h3_smooth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pieces: Option<Vec<hodge::GradedPiece>>,
    pub milnor: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h4_sigma: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_smooth: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_h2: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BettiJson {
    pub feasible_w23: Vec<i64>,
    pub w23: Option<i64>,
    pub w33: Option<i64>,
    pub h4: Option<i64>,
    pub rank: Option<i64>,
    pub assumption_note: Option<String>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InconsistentInputs | Error::Inconclusive { .. } => 2,
        Error::BudgetExceeded { .. } => 4,
        Error::Internal(_) => 5,
        _ => 3,
    }
}

fn status_of(err: &Error) -> &'static str {
    match err {
        Error::InconsistentInputs => "inconsistent",
        Error::Inconclusive { .. } => "inconclusive",
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::Internal(_) => "internal-error",
        _ => "invalid-config",
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code with the report. `None` for help and version output.
pub fn execute<I, T>(argv: I) -> (i32, Option<Report>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return (0, None);
            }
            let report = Report {
                status: "invalid-config".into(),
                error: Some(e.render().to_string().trim().to_string()),
                ..Report::default()
            };
            return (3, Some(report));
        }
    };
    let (code, report) = dispatch(cli.command);
    (code, Some(report))
}

/// JSON text of a report, with a trailing newline.
pub fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let json_path = json_target(&argv);
    let (code, report) = execute(argv);
    let Some(report) = report else { return code };
    eprintln!("{}", summary(&report));
    let text = render(&report);
    match json_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 3;
            }
        }
        None => print!("{text}"),
    }
    code
}

fn json_target(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--json" {
            return it.next().map(PathBuf::from);
        }
        if let Some(rest) = a.strip_prefix("--json=") {
            return Some(PathBuf::from(rest));
        }
    }
    None
}

fn summary(r: &Report) -> String {
    let mut parts = vec![format!(
        "{}: {}",
        if r.command.is_empty() {
            "mwrank"
        } else {
            &r.command
        },
        r.status
    )];
    if let Some(p) = r.prime {
        parts.push(format!("p = {p}"));
    }
    if let Some(c) = &r.counts {
        parts.push(format!("#Y(F_p) = {} ({})", c.projective, c.method));
    }
    if let Some(s) = &r.singular {
        parts.push(format!("{} singular points", s.points.len()));
    }
    if let Some(h) = &r.hodge {
        parts.push(format!("h3 = {}", h.h3_smooth));
        if let (Some(hs), Some(chi)) = (h.h4_sigma, h.chi) {
            parts.push(format!("h4_sigma = {hs}, chi = {chi}"));
        }
    }
    if let Some(b) = &r.betti {
        parts.push(format!("w23 in {:?}", b.feasible_w23));
        if let Some(rank) = b.rank {
            parts.push(format!("rank = {rank}"));
        }
    }
    if let Some(s) = &r.sections {
        let ok = s.iter().filter(|c| c.verified).count();
        parts.push(format!("{ok}/{} sections verified", s.len()));
    }
    if let Some(n) = r.predicted_count {
        parts.push(format!("predicted {n}"));
    }
    if let Some(e) = &r.error {
        parts.push(e.clone());
    }
    parts.join("; ")
}

fn dispatch(command: Command) -> (i32, Report) {
    let start = Instant::now();
    let (name, opts) = match &command {
        Command::Count(o) => ("count", o),
        Command::Singular(o) => ("singular", o),
        Command::Hodge(o) => ("hodge", o),
        Command::Bounds(o) => ("bounds", o),
        Command::Rank(o) => ("rank", o),
        Command::Sections(o) => ("sections", o),
        Command::Predict(o) => ("predict", o),
    };
    let mut report = Report {
        command: name.to_string(),
        status: "ok".into(),
        prime: Some(opts.prime),
        ..Report::default()
    };
    let result = match &command {
        Command::Count(o) => cmd_count(o, &mut report),
        Command::Singular(o) => cmd_singular(o, &mut report),
        Command::Hodge(o) => cmd_hodge(o, &mut report),
        Command::Bounds(o) => cmd_bounds(o, &mut report),
        Command::Rank(o) => cmd_rank(o, &mut report),
        Command::Sections(_) => {
            report.prime = None;
            cmd_sections(&mut report)
        }
        Command::Predict(o) => cmd_predict(o, &mut report),
    };
    let code = match result {
        Ok(()) => 0,
        Err(e) => {
            report.status = status_of(&e).into();
            report.error = Some(e.to_string());
            exit_code(&e)
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    (code, report)
}

struct Target {
    poly: WPolynomial<EisensteinInt>,
    space: WeightedSpace,
    builtin: bool,
}

fn target(o: &Opts) -> mwrank::Result<Target> {
    let Some(text) = &o.curve else {
        let weights = o.weights.clone().unwrap_or(THREEFOLD_WEIGHTS.to_vec());
        let poly = curve::threefold::<EisensteinInt>()?.with_weights(&weights)?;
        return Ok(Target {
            space: WeightedSpace::new(&weights)?,
            poly,
            builtin: weights == THREEFOLD_WEIGHTS,
        });
    };
    let vars = match &o.vars {
        Some(v) => v.clone(),
        None => variables_in_order(text)?,
    };
    let weights = match &o.weights {
        Some(w) => w.clone(),
        None if vars.len() == THREEFOLD_WEIGHTS.len() => THREEFOLD_WEIGHTS.to_vec(),
        None => {
            return Err(Error::InvalidInput(format!(
                "--weights is required for a curve in {} variables",
                vars.len()
            )))
        }
    };
    let poly = parse_polynomial(text, &vars, &weights)?;
    if !poly.is_weighted_homogeneous() {
        return Err(Error::NotHomogeneous { weights });
    }
    let builtin = vars == THREEFOLD_VARS && poly == curve::threefold()?.with_weights(&weights)?;
    Ok(Target {
        space: WeightedSpace::new(&weights)?,
        poly,
        builtin: builtin && weights == THREEFOLD_WEIGHTS,
    })
}

fn options(o: &Opts) -> mwrank::Result<CountOptions> {
    if o.threads == 0 {
        return Err(Error::InvalidInput("--threads must be positive".into()));
    }
    Ok(CountOptions {
        budget: o.budget,
        threads: o.threads,
    })
}

fn parse_method(o: &Opts, default: &str) -> mwrank::Result<Option<CountMethod>> {
    match o.method.as_deref().unwrap_or(default) {
        "all" => Ok(None),
        m => m.parse().map(Some),
    }
}

fn counts_for(
    field: &PrimeField,
    t: &Target,
    method: Option<CountMethod>,
    opts: &CountOptions,
) -> mwrank::Result<CountsJson> {
    if let Some(m) = method {
        let r = wps_count::count_projective(field, &t.poly, &t.space, m, opts)?;
        return Ok(CountsJson {
            cone: r.cone_count,
            projective: r.projective_count,
            orbits: r.orbit_count,
            method: m.to_string(),
            runs: None,
        });
    }
    let mut runs = Vec::new();
    let mut agreed: Option<(u64, u64, u64)> = None;
    for m in CountMethod::ALL {
        let r = match wps_count::count_projective(field, &t.poly, &t.space, m, opts) {
            Ok(r) => r,
            Err(Error::NotWeierstrass(_)) if m == CountMethod::WeierstrassFast => {
                runs.push(MethodRun {
                    method: m,
                    status: "not-applicable".into(),
                    cone: None,
                    projective: None,
                    orbits: None,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let triple = (r.cone_count, r.projective_count, r.orbit_count);
        if let Some(prev) = agreed {
            if prev != triple {
                return Err(Error::Internal(format!(
                    "methods disagree: {prev:?} vs {m} {triple:?}"
                )));
            }
        }
        agreed = Some(triple);
        runs.push(MethodRun {
            method: m,
            status: "ok".into(),
            cone: Some(r.cone_count),
            projective: Some(r.projective_count),
            orbits: Some(r.orbit_count),
        });
    }
    let (cone, projective, orbits) = agreed.expect("naive always runs");
    Ok(CountsJson {
        cone,
        projective,
        orbits,
        method: "all".into(),
        runs: Some(runs),
    })
}

fn cmd_count(o: &Opts, report: &mut Report) -> mwrank::Result<()> {
    let field = PrimeField::new(o.prime)?;
    let t = target(o)?;
    let opts = options(o)?;
    let method = parse_method(o, "all")?;
    report.counts = Some(counts_for(&field, &t, method, &opts)?);
    Ok(())
}

fn singular_for(
    field: &PrimeField,
    t: &Target,
    opts: &CountOptions,
) -> mwrank::Result<SingularJson> {
    let mut rep = singular::singular_points(field, &t.poly, &t.space, opts)?;
    if t.builtin {
        if let Ok(expected) = singular::expected_singularities(field) {
            rep.compare_with(&expected);
        }
    }
    let text = |v: &[ProjectivePoint]| v.iter().map(ToString::to_string).collect();
    Ok(SingularJson {
        points: text(&rep.points),
        matches_expected: rep.matches_expected,
        excluded_ambient: text(&rep.excluded_ambient),
    })
}

fn cmd_singular(o: &Opts, report: &mut Report) -> mwrank::Result<()> {
    let field = PrimeField::new(o.prime)?;
    let t = target(o)?;
    let opts = options(o)?;
    report.singular = Some(singular_for(&field, &t, &opts)?);
    Ok(())
}

fn builtin_hodge(num_points: usize) -> mwrank::Result<HodgeJson> {
    let c = hodge::builtin_cohomology(num_points)?;
    Ok(HodgeJson {
        h3_smooth: c.h3_smooth,
        pieces: None,
        milnor: c.milnor_numbers,
        h4_sigma: Some(c.h4_sigma),
        chi: Some(c.chi),
        chi_smooth: Some(c.chi_smooth),
        local_h2: Some(c.local_h2),
        warnings: Vec::new(),
    })
}

fn cmd_hodge(o: &Opts, report: &mut Report) -> mwrank::Result<()> {
    report.prime = None;
    let Some(text) = &o.curve else {
        report.hodge = Some(builtin_hodge(9)?);
        return Ok(());
    };
    let vars = match &o.vars {
        Some(v) => v.clone(),
        None => variables_in_order(text)?,
    };
    let weights = o.weights.clone().unwrap_or(THREEFOLD_WEIGHTS.to_vec());
    let f: WPolynomial<Rational> = parse_polynomial(text, &vars, &weights)?;
    let spec = GradedRingSpec::new(f)?;
    let h3 = hodge::hodge_h3_smooth(&spec)?;
    report.hodge = Some(HodgeJson {
        h3_smooth: h3.h3,
        pieces: Some(h3.pieces),
        warnings: h3.warnings,
        ..HodgeJson::default()
    });
    Ok(())
}

fn bounds_for(inp: &BettiInputs, report: &mut Report) -> mwrank::Result<()> {
    match betti::resolve(inp) {
        Ok(r) => {
            report.betti = Some(BettiJson {
                feasible_w23: r.feasible_w23,
                w23: Some(r.w23),
                w33: Some(r.w33),
                h4: Some(r.h4),
                rank: Some(r.rank),
                assumption_note: Some(r.assumption_note),
            });
            Ok(())
        }
        Err(e) => {
            let feasible = match &e {
                Error::Inconclusive { feasible } => feasible.clone(),
                Error::InconsistentInputs => Vec::new(),
                _ => return Err(e),
            };
            report.betti = Some(BettiJson {
                feasible_w23: feasible,
                ..BettiJson::default()
            });
            Err(e)
        }
    }
}

fn cmd_bounds(o: &Opts, report: &mut Report) -> mwrank::Result<()> {
    let count = match o.count {
        Some(n) => n,
        None => {
            let field = PrimeField::new(o.prime)?;
            let t = target(o)?;
            let c = counts_for(
                &field,
                &t,
                parse_method(o, "weierstrass-fast")?,
                &options(o)?,
            )?;
            let n = c.projective as i64;
            report.counts = Some(c);
            n
        }
    };
    let inp = BettiInputs::new(o.prime, count, o.h4sigma, o.chi)?;
    bounds_for(&inp, report)
}

fn cmd_rank(o: &Opts, report: &mut Report) -> mwrank::Result<()> {
    let field = PrimeField::new(o.prime)?;
    let t = target(o)?;
    if !t.builtin {
        return Err(Error::InvalidInput(
            "rank runs only on the built-in threefold".into(),
        ));
    }
    if o.prime % 3 != 1 {
        return Err(Error::UnsupportedCharacteristic {
            p: o.prime,
            reason: "need p = 1 mod 3",
        });
    }
    let opts = options(o)?;
    let counts = counts_for(&field, &t, parse_method(o, "weierstrass-fast")?, &opts)?;
    let n = counts.projective as i64;
    report.counts = Some(counts);

    let sing = singular_for(&field, &t, &opts)?;
    let num_points = sing.points.len();
    let matches = sing.matches_expected;
    report.singular = Some(sing);
    if num_points != 9 || matches != Some(true) {
        return Err(Error::Internal(format!(
            "expected the 9 listed singular points, found {num_points}"
        )));
    }

    let h = builtin_hodge(num_points)?;
    let (h4_sigma, chi) = (h.h4_sigma.unwrap_or(0) as i64, h.chi.unwrap_or(0));
    report.hodge = Some(h);
    if (h4_sigma, chi) != (18, -2) {
        return Err(Error::Internal(format!(
            "expected h4_sigma = 18 and chi = -2, got {h4_sigma} and {chi}"
        )));
    }

    bounds_for(&BettiInputs::new(o.prime, n, h4_sigma, chi)?, report)?;
    cmd_sections(report)
}

fn cmd_sections(report: &mut Report) -> mwrank::Result<()> {
    report.sections = Some(sections::section_report());
    Ok(())
}

fn cmd_predict(o: &Opts, report: &mut Report) -> mwrank::Result<()> {
    PrimeField::new(o.prime)?;
    if o.prime % 3 != 1 {
        return Err(Error::UnsupportedCharacteristic {
            p: o.prime,
            reason: "need p = 1 mod 3",
        });
    }
    report.predicted_count = Some(betti::predicted_count(o.prime, o.w23, o.h4));
    Ok(())
}
