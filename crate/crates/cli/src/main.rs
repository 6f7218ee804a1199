//! `qcharm`: construct, verify and plot harmonic mappings.
//!
//! Exit codes: 0 pass, 1 bound violation, 2 bad parameters, 3 I/O.

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use qcharm::bounds::{verify, Check, VerifyOptions};
use qcharm::document::{series_from_json, MappingDocument};
use qcharm::mapclass::{
    couple_g, counterexample_h, default_collision_step, extremal_h, from_schwarz, sample_membership,
    CollisionCertificate, MEMBERSHIP_GRID,
};
use qcharm::radii::{solve_radius, EquationId};
use qcharm::{ClassParams, Exec, HarmonicMapping, SchwarzFunction};

use render::{image_curves, Format, RenderSpec};

#[derive(Parser)]
#[command(name = "qcharm", version, about = "Quasiconformal close-to-convex harmonic mappings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a mapping and write its JSON document
    Construct(ConstructArgs),
    /// Check a mapping document against the class bounds
    Verify(VerifyArgs),
    /// Solve a radius equation
    Radius(RadiusArgs),
    /// Certify that h_beta = (1 - (1-z)^beta)/beta takes one value twice
    Counterexample(CounterexampleArgs),
    /// Draw the image of a polar grid
    Plot(PlotArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["schwarz_monomial", "h_extremal", "h_beta", "h_coeffs"])))]
struct ConstructArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda_im: f64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = qcharm::series::DEFAULT_ORDER)]
    order: usize,
    /// `c,m` or `re,im,m`: w(t) = c t^m
    #[arg(long, allow_hyphen_values = true)]
    schwarz_monomial: Option<String>,
    /// Extremal h for the coefficient bound at index k
    #[arg(long)]
    h_extremal: Option<usize>,
    /// h = (1 - (1-z)^beta)/beta, stored without class parameters
    #[arg(long)]
    h_beta: Option<f64>,
    /// JSON list `[[re, im], ...]` of h coefficients
    #[arg(long)]
    h_coeffs: Option<PathBuf>,
    /// Write the document here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    mapping: PathBuf,
    /// Comma-separated subset of coefficients,fekete-szego,growth,area,distortion,tail
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Comma-separated radii in (0, 1)
    #[arg(long, alias = "r", value_delimiter = ',')]
    radii: Vec<f64>,
    #[arg(long, default_value_t = 64)]
    angles: usize,
}

#[derive(Args)]
struct RadiusArgs {
    /// r1 | r2 | r3 | r4 | rc
    #[arg(long)]
    equation: String,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long)]
    beta: f64,
    /// Step from 1 along the rays at angle -+pi/beta; defaults to cos(pi/beta)
    #[arg(long)]
    s: Option<f64>,
    /// Order of the series evaluation reported next to the closed form
    #[arg(long, default_value_t = qcharm::series::DEFAULT_ORDER)]
    order: usize,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    mapping: PathBuf,
    #[arg(long, short)]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    #[arg(long, default_value_t = 12)]
    rings: usize,
    #[arg(long, default_value_t = 24)]
    spokes: usize,
    #[arg(long, default_value_t = 0.98)]
    max_radius: f64,
    #[arg(long, default_value_t = 256)]
    samples: usize,
    #[arg(long, default_value_t = 800)]
    width: usize,
    #[arg(long, default_value_t = 800)]
    height: usize,
}

enum Failure {
    Violation,
    BadParams(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation => 1,
            Failure::BadParams(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<qcharm::Error> for Failure {
    fn from(e: qcharm::Error) -> Self {
        Failure::BadParams(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> CmdResult {
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn out(line: &str) -> CmdResult {
    writeln!(io::stdout().lock(), "{line}").map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn load_mapping(path: &Path) -> Result<HarmonicMapping, Failure> {
    Ok(MappingDocument::from_json(&read(path)?)?.to_mapping()?)
}

fn class_params(args: &ConstructArgs) -> Result<ClassParams, Failure> {
    let alpha = args
        .alpha
        .ok_or_else(|| Failure::BadParams("--alpha is required for this source".into()))?;
    Ok(ClassParams::new(alpha, Complex64::new(args.lambda_re, args.lambda_im), args.n)?)
}

fn parse_monomial(spec: &str) -> Result<(Complex64, usize), Failure> {
    let bad = || Failure::BadParams(format!("--schwarz-monomial expects c,m or re,im,m (got {spec:?})"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let (c, m) = match parts.as_slice() {
        [c, m] => (Complex64::new(num(c)?, 0.0), m),
        [re, im, m] => (Complex64::new(num(re)?, num(im)?), m),
        _ => return Err(bad()),
    };
    Ok((c, m.parse().map_err(|_| bad())?))
}

fn construct(args: ConstructArgs) -> CmdResult {
    let f = if let Some(spec) = &args.schwarz_monomial {
        let (c, m) = parse_monomial(spec)?;
        from_schwarz(&SchwarzFunction::monomial(c, m, args.order)?, class_params(&args)?)?
    } else if let Some(k) = args.h_extremal {
        let params = class_params(&args)?;
        couple_g(extremal_h(k, params.alpha(), args.order)?, params)?
    } else if let Some(beta) = args.h_beta {
        HarmonicMapping::analytic(counterexample_h(beta, args.order)?)?
    } else if let Some(path) = &args.h_coeffs {
        let h = series_from_json(&read(path)?)?;
        couple_g(h, class_params(&args)?)?
    } else {
        unreachable!("clap enforces one source")
    };

    // h_beta lies in G((1 + beta)/2) and no smaller class
    let alpha = match (f.params(), args.h_beta) {
        (Some(p), _) => p.alpha(),
        (None, Some(beta)) => args.alpha.unwrap_or(0.5 * (1.0 + beta)),
        (None, None) => unreachable!("only h_beta omits parameters"),
    };
    let sample = sample_membership(f.h(), alpha, MEMBERSHIP_GRID, Exec::default())?;
    let summary = json!({
        "K": f.params().map(|p| p.qc_constant()),
        "membership": {
            "alpha": sample.alpha,
            "max_real_part": sample.max_real_part,
            "argmax": [sample.argmax.re, sample.argmax.im],
            "satisfied": sample.satisfied,
        },
    })
    .to_string();

    let doc = MappingDocument::from(&f).to_json();
    match &args.output {
        Some(path) => {
            write(path, format!("{doc}\n").as_bytes())?;
            out(&summary)?;
        }
        None => {
            out(&doc)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn verify_cmd(args: VerifyArgs) -> CmdResult {
    let f = load_mapping(&args.mapping)?;
    if f.params().is_none() {
        return Err(Failure::BadParams("mapping has no class parameters; nothing to verify".into()));
    }
    let checks = if args.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        args.checks
            .iter()
            .map(|s| Check::parse(s.trim()).ok_or_else(|| Failure::BadParams(format!("unknown check {s:?}"))))
            .collect::<Result<_, _>>()?
    };
    let mut opts = VerifyOptions {
        angles: args.angles,
        ..VerifyOptions::default()
    };
    if !args.radii.is_empty() {
        if let Some(r) = args.radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Failure::BadParams(format!("radius {r} not in (0, 1)")));
        }
        opts.radii = args.radii;
    }
    if opts.angles == 0 {
        return Err(Failure::BadParams("--angles must be positive".into()));
    }
    let reports = verify(&f, &checks, &opts);
    for r in &reports {
        out(&r.to_json_line())?;
    }
    let failed = reports.iter().filter(|r| !r.is_satisfied()).count();
    if failed > 0 {
        eprintln!("{failed} of {} bounds violated", reports.len());
        return Err(Failure::Violation);
    }
    Ok(())
}

fn radius(args: RadiusArgs) -> CmdResult {
    let eq = EquationId::parse(&args.equation)
        .ok_or_else(|| Failure::BadParams(format!("unknown equation {:?}", args.equation)))?;
    out(&solve_radius(eq)?.to_json())?;
    Ok(())
}

fn counterexample(args: CounterexampleArgs) -> CmdResult {
    if !(args.beta > 2.0 && args.beta < 3.0) {
        return Err(Failure::BadParams(format!("beta = {} not in (2, 3)", args.beta)));
    }
    let s = args.s.unwrap_or_else(|| default_collision_step(args.beta));
    let cert = CollisionCertificate::new(args.beta, s, args.order)?;
    let report = json!({
        "beta": cert.beta,
        "s": cert.s,
        "z1": [cert.z1.re, cert.z1.im],
        "z2": [cert.z2.re, cert.z2.im],
        "value_gap": cert.value_gap,
        "point_distance": cert.point_distance,
        "series_gap": cert.series_gap,
        "order": cert.order,
        "holds": cert.holds(),
    });
    out(&report.to_string())?;
    if cert.holds() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn plot(args: PlotArgs) -> CmdResult {
    let spec = RenderSpec {
        rings: args.rings,
        spokes: args.spokes,
        max_radius: args.max_radius,
        samples_per_curve: args.samples,
        format: args.format,
    };
    spec.validate()?;
    if args.width == 0 || args.height == 0 {
        return Err(Failure::BadParams("image size must be positive".into()));
    }
    let f = load_mapping(&args.mapping)?;
    let curves = image_curves(&f, &spec, Exec::default())?;
    write(&args.output, &render::render(&curves, spec.format, args.width, args.height))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Radius(a) => radius(a),
        Command::Counterexample(a) => counterexample(a),
        Command::Plot(a) => plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                Failure::Violation => {}
                Failure::BadParams(msg) => eprintln!("error: {msg}"),
                Failure::Io(msg) => eprintln!("i/o error: {msg}"),
            }
            ExitCode::from(e.code())
        }
    }
}
