use std::collections::BTreeMap;
use std::process::ExitCode;

use apw_core::apolar::dual_socle_generator;
use apw_core::apolar::{
    detect_fermat, hilbert_function, is_apolar_scheme, perp, waring_from_points,
    ArtinianGorenstein, FermatVerdict, GradedIdeal,
};
use apw_core::pipeline::{
    curve_on_scroll, gamma_cut, rational_cut, run_trial_with, verify_theorem, CurveSource, EtaPair,
    EtaRegime, Exec, PipelineReport, TheoremKind, VerifyParams,
};
use apw_core::poly::{LinearFormPoint, Poly, RingSide};
use apw_core::surfaces::{build_embedding, curve_invariants, EmbeddingKind};
use apw_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// `println!` that exits quietly when stdout is closed early (e.g. piped into `head`).
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "apw",
    version,
    about = "Apolarity workbench: apolar ideals, dual forms and Fermat certificates"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apolar ideal of a form: dimensions, minimal generators, Hilbert function.
    Perp { form: String },
    /// Hilbert function of the apolar algebra of a form.
    Hf { form: String },
    /// Dual socle generator of T/I for an ideal given by operator generators (d0, d1, ...).
    Dual {
        #[arg(required = true)]
        generators: Vec<String>,
        /// Number of variables; inferred from the generators by default.
        #[arg(long)]
        vars: Option<usize>,
        /// Highest degree in which the ideal is generated.
        #[arg(long, default_value_t = 12)]
        degree_cap: u32,
    },
    /// Decide whether a form is projectively equivalent to a Fermat form.
    Fermat { form: String },
    /// Check whether points (as `1,0;0,1`) are apolar to a form.
    Apolar {
        form: String,
        #[arg(long)]
        points: String,
    },
    /// Run the pipeline once for a curve on a scroll.
    Scroll {
        #[command(flatten)]
        window: ScrollArgs,
        #[arg(long, value_enum, default_value_t = EtaArg::Rational)]
        eta: EtaArg,
        /// Curve equation in Cox variables x0=t0, x1=t1, x2=u, x3=v; sampled if absent.
        #[arg(long)]
        equation: Option<String>,
        #[arg(long)]
        timings: bool,
    },
    /// Genus, degree and flags of the subcanonical class on a scroll.
    Invariants {
        #[command(flatten)]
        window: ScrollArgs,
    },
    /// Run the theorem verifier over several seeded trials.
    Verify {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        a1: Option<u32>,
        #[arg(long)]
        a2: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = EtaArg::Rational)]
        eta: EtaArg,
        /// Run trials one after another.
        #[arg(long)]
        sequential: bool,
        /// Record wall-clock timings (makes the output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Cut a surface by two hyperplanes and report the point scheme.
    Cut {
        #[arg(value_enum)]
        surface: SurfaceArg,
        #[arg(long)]
        a1: Option<u32>,
        #[arg(long)]
        a2: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = EtaArg::Rational)]
        eta: EtaArg,
        /// Highest degree of the Hilbert function computed.
        #[arg(long, default_value_t = 4)]
        degree_cap: u32,
    },
}

#[derive(Args, Debug)]
struct ScrollArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    a1: u32,
    #[arg(long)]
    a2: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    ScrollFermat,
    PlaneWaring,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SurfaceArg {
    Scroll,
    Veronese,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EtaArg {
    Rational,
    Generic,
}

impl From<EtaArg> for EtaRegime {
    fn from(e: EtaArg) -> Self {
        match e {
            EtaArg::Rational => EtaRegime::Rational,
            EtaArg::Generic => EtaRegime::Generic,
        }
    }
}

/// Errors leaving a subcommand, mapped onto the exit-code contract.
#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Usage(_) => EXIT_USAGE,
        Failure::Core(Error::Input(_) | Error::Parse { .. }) => EXIT_USAGE,
        Failure::Core(Error::Structural(_) | Error::Undetermined(_)) => EXIT_UNDETERMINED,
        Failure::Core(Error::Internal(_)) => EXIT_INTERNAL,
    }
}

fn message(f: &Failure) -> String {
    match f {
        Failure::Usage(m) => m.clone(),
        Failure::Core(e) => e.to_string(),
    }
}

type Outcome = Result<u8, Failure>;

fn init_logging() -> Result<(), Failure> {
    let level = match std::env::var("APW_LOG").as_deref() {
        Err(_) => log::LevelFilter::Warn,
        Ok("quiet") => log::LevelFilter::Off,
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        Ok(other) => {
            return Err(Failure::Usage(format!(
                "APW_LOG must be quiet, info or debug, not {other:?}"
            )))
        }
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
    Ok(())
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let line = serde_json::to_string(value).map_err(|e| Error::Internal(e.to_string()))?;
    outln!("{line}");
    Ok(())
}

fn parse_form(text: &str) -> Result<Poly, Failure> {
    let f = Poly::parse(text)?;
    if f.side() != RingSide::Point {
        return Err(Failure::Usage("forms are written in x0, x1, ...".into()));
    }
    if !f.is_homogeneous() || f.is_zero() {
        return Err(Failure::Usage(format!(
            "{text:?} is not a nonzero homogeneous form"
        )));
    }
    Ok(f)
}

fn parse_points(text: &str, n: usize) -> Result<Vec<LinearFormPoint>, Failure> {
    text.split(';')
        .map(|p| {
            let coords = p
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<apw_core::linalg::Rational>()
                        .map_err(|_| Failure::Usage(format!("bad coordinate {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != n {
                return Err(Failure::Usage(format!("point {p:?} needs {n} coordinates")));
            }
            Ok(LinearFormPoint::new(coords)?)
        })
        .collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct PerpReport {
    form: String,
    num_vars: usize,
    degree: u32,
    perp_dimensions: Vec<usize>,
    generator_counts: BTreeMap<u32, usize>,
    minimal_generators: BTreeMap<u32, Vec<String>>,
    hilbert_function: Vec<usize>,
}

fn cmd_perp(form: &str, format: Format) -> Outcome {
    let f = parse_form(form)?;
    let p = perp(&f)?;
    let d = p.socle_degree();
    let gens = p.minimal_generators();
    let report = PerpReport {
        form: f.to_string(),
        num_vars: f.num_vars(),
        degree: d,
        perp_dimensions: (0..=d + 1).map(|e| p.dim(e)).collect(),
        generator_counts: gens.iter().map(|(&e, g)| (e, g.len())).collect(),
        minimal_generators: gens
            .iter()
            .map(|(&e, g)| (e, g.iter().map(ToString::to_string).collect()))
            .collect(),
        hilbert_function: p.hilbert_function(),
    };
    match format {
        Format::Json => emit(&report)?,
        Format::Text => {
            outln!("F = {}", report.form);
            outln!(
                "dim (F^perp)_e for e = 0..{}: {}",
                d + 1,
                join(&report.perp_dimensions)
            );
            for (e, g) in &report.minimal_generators {
                outln!("generators in degree {e} ({}): {}", g.len(), g.join("; "));
            }
            outln!("HF: {}", join(&report.hilbert_function));
        }
    }
    Ok(0)
}

fn cmd_hf(form: &str, format: Format) -> Outcome {
    let f = parse_form(form)?;
    let hf = hilbert_function(&f)?;
    match format {
        Format::Json => {
            emit(&serde_json::json!({ "form": f.to_string(), "hilbert_function": hf }))?
        }
        Format::Text => outln!("{}", join(&hf)),
    }
    Ok(0)
}

fn cmd_dual(generators: &[String], vars: Option<usize>, cap: u32, format: Format) -> Outcome {
    let parsed = generators
        .iter()
        .map(|g| Poly::parse(g))
        .collect::<Result<Vec<_>, _>>()?;
    let n = vars.unwrap_or_else(|| parsed.iter().map(Poly::num_vars).max().unwrap_or(1));
    let gens = generators
        .iter()
        .map(|g| Poly::parse_as(g, RingSide::Operator, n))
        .collect::<Result<Vec<_>, _>>()?;
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Failure::Usage("generators must be homogeneous".into()));
    }
    let ideal = GradedIdeal::generated_by(n, &gens, cap)?;
    if !ideal.piece(cap).is_full() {
        return Err(Error::Undetermined(format!(
            "T/I is not zero by degree {cap}; it may vanish later (raise --degree-cap)"
        ))
        .into());
    }
    let algebra = match ArtinianGorenstein::from_ideal(ideal) {
        Err(Error::Structural(m)) => {
            return Err(Failure::Usage(format!("T/I is not Gorenstein: {m}")))
        }
        other => other?,
    };
    let f = dual_socle_generator(&algebra)?;
    match format {
        Format::Json => emit(&serde_json::json!({
            "dual_form": f.to_string(),
            "hilbert_function": algebra.hilbert_function(),
        }))?,
        Format::Text => {
            outln!("F = {f}");
            outln!("HF: {}", join(algebra.hilbert_function()));
        }
    }
    Ok(0)
}

fn verdict_code(v: &FermatVerdict) -> u8 {
    match v {
        FermatVerdict::CertifiedFermat(_) => 0,
        FermatVerdict::CertifiedNot(_) => EXIT_NEGATIVE,
        FermatVerdict::Undetermined { .. } => EXIT_UNDETERMINED,
    }
}

fn describe_verdict(v: &FermatVerdict, d: u32) -> String {
    use apw_core::apolar::FermatDecomposition as D;
    match v {
        FermatVerdict::CertifiedFermat(D::Rational { points, lambdas }) => {
            let terms: Vec<String> = points
                .iter()
                .zip(lambdas)
                .map(|(p, l)| format!("({l})*({})^{d}", p.linear_form()))
                .collect();
            format!("CertifiedFermat: {}", terms.join(" + "))
        }
        FermatVerdict::CertifiedFermat(D::Irrational {
            minimal_polynomial, ..
        }) => {
            format!("CertifiedFermat (irrational points; minimal polynomial {minimal_polynomial})")
        }
        FermatVerdict::CertifiedNot(w) => format!(
            "CertifiedNot ({}): {}",
            w.name(),
            serde_json::to_string(w).unwrap_or_default()
        ),
        FermatVerdict::Undetermined { reason } => format!("Undetermined: {reason}"),
    }
}

fn cmd_fermat(form: &str, seed: u64, format: Format) -> Outcome {
    let f = parse_form(form)?;
    let verdict = detect_fermat(&f, seed)?;
    if !verdict.reverify(&f)? {
        return Err(Error::Internal("the certificate does not re-verify".into()).into());
    }
    match format {
        Format::Json => {
            emit(&serde_json::json!({ "form": f.to_string(), "fermat_verdict": verdict }))?
        }
        Format::Text => outln!("{}", describe_verdict(&verdict, f.degree().unwrap_or(0))),
    }
    Ok(verdict_code(&verdict))
}

fn cmd_apolar(form: &str, points: &str, format: Format) -> Outcome {
    let f = parse_form(form)?;
    let points = parse_points(points, f.num_vars())?;
    let cert = is_apolar_scheme(&points, &f)?;
    let lambdas = waring_from_points(&points, &f)?;
    if cert.apolar != lambdas.is_some() {
        return Err(Error::Internal("apolarity and the Waring solve disagree".into()).into());
    }
    match format {
        Format::Json => emit(&serde_json::json!({
            "apolar": cert.apolar,
            "first_failure": cert.first_failure,
            "lambdas": lambdas.as_ref().map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>()),
        }))?,
        Format::Text => match (&lambdas, cert.first_failure) {
            (Some(l), _) => outln!(
                "apolar; F = sum of lambda_i L_i^d with lambda = {}",
                join(l)
            ),
            (None, Some(e)) => outln!("not apolar: I(Γ) fails to annihilate F in degree {e}"),
            (None, None) => outln!("not apolar"),
        },
    }
    Ok(if cert.apolar { 0 } else { EXIT_NEGATIVE })
}

fn print_report(r: &PipelineReport, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => emit(r),
        Format::Text => {
            outln!("trial {} (seed {})", r.trial, r.seed);
            outln!("  normality j=1..: {}", join(&r.normality));
            outln!("  HF: {}", join(&r.hilbert_function));
            outln!("  F = {}", r.dual_form.as_deref().unwrap_or("-"));
            outln!(
                "  verdict: {}",
                describe_verdict(&r.fermat_verdict, r.params.s + 2)
            );
            if let Some(g) = &r.gamma {
                outln!("  Γ: length {}, apolar {}", g.length, g.apolar);
                if let Some(p) = &g.points {
                    let pts: Vec<String> = p
                        .iter()
                        .map(|q| format!("({})", join(q.coords())))
                        .collect();
                    outln!("  points: {}", pts.join(" "));
                }
            }
            if let Some(t) = &r.timings_ms {
                outln!("  time: {:.1} ms", t.total);
            }
            Ok(())
        }
    }
}

fn report_code(reports: &[PipelineReport]) -> u8 {
    if reports.iter().all(PipelineReport::confirmed) {
        0
    } else if reports.iter().any(|r| {
        matches!(r.fermat_verdict, FermatVerdict::CertifiedNot(_))
            || r.gamma.as_ref().is_some_and(|g| !g.apolar)
    }) {
        EXIT_NEGATIVE
    } else {
        EXIT_UNDETERMINED
    }
}

fn cmd_scroll(
    window: &ScrollArgs,
    eta: EtaArg,
    equation: Option<&str>,
    timings: bool,
    seed: u64,
    format: Format,
) -> Outcome {
    let params = VerifyParams::scroll(window.s, window.a1, window.a2)
        .with_eta(eta.into())
        .with_timings(timings);
    params.validate()?;
    let g = equation
        .map(|e| Poly::parse_as(e, RingSide::Point, 4))
        .transpose()?;
    if let Some(g) = &g {
        // A wrong class is the caller's mistake, not an inconclusive trial.
        curve_on_scroll(
            window.s,
            window.a1,
            window.a2,
            CurveSource::Equation(g.clone()),
        )?;
    }
    let report = run_trial_with(&params, seed, 0, g.as_ref());
    print_report(&report, format)?;
    Ok(report_code(std::slice::from_ref(&report)))
}

fn cmd_invariants(window: &ScrollArgs, format: Format) -> Outcome {
    let inv = curve_invariants(window.s, window.a1, window.a2)?;
    match format {
        Format::Json => emit(&inv)?,
        Format::Text => {
            outln!("class      {}", inv.class);
            outln!("genus      {}", inv.genus);
            outln!("degree     {}", inv.degree);
            outln!("N          {}", inv.ambient_dim);
            outln!("smooth     {}", inv.smooth_ok);
            outln!("very ample {}", inv.very_ample_ok);
            outln!("C.f        {}", inv.gonality_pencil_degree);
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct Summary {
    trials: usize,
    confirmed: usize,
    verdicts: BTreeMap<&'static str, usize>,
    apolar: usize,
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    kind: KindArg,
    s: u32,
    a1: Option<u32>,
    a2: Option<u32>,
    m: Option<u32>,
    trials: usize,
    eta: EtaArg,
    sequential: bool,
    timings: bool,
    seed: u64,
    format: Format,
) -> Outcome {
    let params = match kind {
        KindArg::ScrollFermat => {
            let (Some(a1), Some(a2)) = (a1, a2) else {
                return Err(Failure::Usage("scroll-fermat needs --a1 and --a2".into()));
            };
            VerifyParams::scroll(s, a1, a2)
        }
        KindArg::PlaneWaring => {
            let Some(m) = m else {
                return Err(Failure::Usage("plane-waring needs --m".into()));
            };
            VerifyParams::plane(m, s)
        }
    }
    .with_eta(eta.into())
    .with_timings(timings);
    let exec = if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let reports = verify_theorem(&params, trials, seed, exec)?;
    for r in &reports {
        print_report(r, format)?;
    }
    let mut verdicts = BTreeMap::new();
    for r in &reports {
        *verdicts.entry(r.fermat_verdict.tag()).or_insert(0) += 1;
    }
    let summary = Summary {
        trials,
        confirmed: reports.iter().filter(|r| r.confirmed()).count(),
        verdicts,
        apolar: reports
            .iter()
            .filter(|r| r.gamma.as_ref().is_some_and(|g| g.apolar))
            .count(),
    };
    match format {
        Format::Json => emit(&serde_json::json!({ "summary": summary }))?,
        Format::Text => {
            let counts: Vec<String> = summary
                .verdicts
                .iter()
                .map(|(k, v)| format!("{v} {k}"))
                .collect();
            let what = match params.kind {
                TheoremKind::ScrollFermat => "Fermat",
                TheoremKind::PlaneWaring => "apolar",
            };
            outln!(
                "summary: {}/{} {what}; verdicts: {}; apolar Γ: {}",
                summary.confirmed,
                summary.trials,
                counts.join(", "),
                summary.apolar
            );
        }
    }
    Ok(report_code(&reports))
}

#[derive(Serialize)]
struct CutReport {
    surface: EmbeddingKind,
    eta1: Vec<String>,
    eta2: Vec<String>,
    hilbert_function: Vec<usize>,
    length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<LinearFormPoint>>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_cut(
    surface: SurfaceArg,
    a1: Option<u32>,
    a2: Option<u32>,
    m: Option<u32>,
    eta: EtaArg,
    cap: u32,
    seed: u64,
    format: Format,
) -> Outcome {
    let kind = match (surface, a1, a2, m) {
        (SurfaceArg::Scroll, Some(a1), Some(a2), _) => EmbeddingKind::Scroll { a1, a2 },
        (SurfaceArg::Veronese, _, _, Some(m)) => EmbeddingKind::Veronese { m },
        (SurfaceArg::Scroll, ..) => {
            return Err(Failure::Usage("scroll needs --a1 and --a2".into()))
        }
        (SurfaceArg::Veronese, ..) => return Err(Failure::Usage("veronese needs --m".into())),
    };
    if let EmbeddingKind::Scroll { a1, a2 } = kind {
        if a2 > a1 || a2 == 0 {
            return Err(Failure::Usage("requires 1 <= a2 <= a1".into()));
        }
    }
    let s = build_embedding(kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (eta, gamma) = match eta {
        EtaArg::Rational => {
            let c = rational_cut(&s, None, cap, &mut rng)?;
            (c.eta, c.gamma)
        }
        EtaArg::Generic => {
            let eta = EtaPair::random(&mut rng, s.coordinates().len());
            let g = gamma_cut(&s, &eta, cap)?;
            (eta, g)
        }
    };
    let strings =
        |v: &[apw_core::linalg::Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let report = CutReport {
        surface: kind,
        eta1: strings(&eta.eta1),
        eta2: strings(&eta.eta2),
        hilbert_function: gamma.hilbert_function,
        length: gamma.length,
        points: gamma.points,
    };
    match format {
        Format::Json => emit(&report)?,
        Format::Text => {
            outln!("eta1 = ({})", report.eta1.join(","));
            outln!("eta2 = ({})", report.eta2.join(","));
            outln!("HF: {}", join(&report.hilbert_function));
            outln!("length {}", report.length);
            if let Some(p) = &report.points {
                let pts: Vec<String> = p
                    .iter()
                    .map(|q| format!("({})", join(q.coords())))
                    .collect();
                outln!("points: {}", pts.join(" "));
            }
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    let (seed, format) = (cli.seed, cli.format);
    match cli.command {
        Command::Perp { form } => cmd_perp(&form, format),
        Command::Hf { form } => cmd_hf(&form, format),
        Command::Dual {
            generators,
            vars,
            degree_cap,
        } => cmd_dual(&generators, vars, degree_cap, format),
        Command::Fermat { form } => cmd_fermat(&form, seed, format),
        Command::Apolar { form, points } => cmd_apolar(&form, &points, format),
        Command::Scroll {
            window,
            eta,
            equation,
            timings,
        } => cmd_scroll(&window, eta, equation.as_deref(), timings, seed, format),
        Command::Invariants { window } => cmd_invariants(&window, format),
        Command::Verify {
            kind,
            s,
            a1,
            a2,
            m,
            trials,
            eta,
            sequential,
            timings,
        } => cmd_verify(
            kind, s, a1, a2, m, trials, eta, sequential, timings, seed, format,
        ),
        Command::Cut {
            surface,
            a1,
            a2,
            m,
            eta,
            degree_cap,
        } => cmd_cut(surface, a1, a2, m, eta, degree_cap, seed, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = init_logging().and_then(|()| run(cli));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", message(&f));
            ExitCode::from(exit_code(&f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        assert_eq!(exit_code(&Failure::Usage("x".into())), 2);
        assert_eq!(exit_code(&Error::Input("x".into()).into()), 2);
        assert_eq!(
            exit_code(
                &Error::Parse {
                    offset: 0,
                    message: "x".into()
                }
                .into()
            ),
            2
        );
        assert_eq!(exit_code(&Error::Undetermined("x".into()).into()), 3);
        assert_eq!(exit_code(&Error::Structural("x".into()).into()), 3);
        assert_eq!(exit_code(&Error::Internal("x".into()).into()), 4);
    }

    #[test]
    fn points_parse() {
        let p = parse_points("1,0; 0,1", 2).unwrap();
        assert_eq!(
            p,
            vec![
                LinearFormPoint::from_i64(&[1, 0]).unwrap(),
                LinearFormPoint::from_i64(&[0, 1]).unwrap()
            ]
        );
        assert!(parse_points("1,0,0", 2).is_err());
        assert!(parse_points("1,a", 2).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
