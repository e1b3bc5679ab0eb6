use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wantzel::census::{census, enumerate_with_heights, CensusRow};
use wantzel::chebyshev::chebyshev;
use wantzel::density::{decay_fit, density_grid, parse_grid, CountMethod, DecayFit, DensityRecord};
use wantzel::quad_roots::quad_roots;
use wantzel::quadratic::parse_elem;
use wantzel::rational::{compact, parse_rational, valuation};
use wantzel::roots::{clear_denominators, rational_roots};
use wantzel::sect::{decide_sectable, witness_family, witness_family_exponent};
use wantzel::shard::default_shards;
use wantzel::verify::{run_all, DEFAULT_SEED};
use wantzel::{Error, FieldDesc, QuadElem, QuadPoly, RatPoly, Rational};

#[derive(Parser)]
#[command(name = "wantzel", version, about = "Exact angle m-section decisions and height-density experiments")]
struct Cli {
    /// Worker threads for enumeration and counting.
    #[arg(long, global = true, env = "WANTZEL_SHARDS", value_parser = clap::value_parser!(u32).range(1..))]
    shards: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the angle with cosine A is M-sectable.
    Decide {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        m: u32,
        /// Field containing A; defaults to Q.
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldDesc,
    },
    /// Print the Chebyshev polynomial T_M (or U_M).
    Chebyshev {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Kind::T)]
        kind: Kind,
        /// Emit both polynomials with coefficient arrays, constant first.
        #[arg(long)]
        json: bool,
    },
    /// All roots of a polynomial lying in the given field.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldDesc,
    },
    /// Count elements of height at most B, in total and in [-1, 1].
    Census {
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldDesc,
        /// One or more bounds; one CSV row each.
        #[arg(long = "B", required = true, num_args = 1.., value_parser = parse_rat)]
        bounds: Vec<Rational>,
    },
    /// List the elements of height at most B.
    Enumerate {
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldDesc,
        #[arg(long = "B", value_parser = parse_rat)]
        bound: Rational,
        #[arg(long, value_enum, default_value_t = Emit::Elements)]
        emit: Emit,
    },
    /// Density of M-sectable cosines over a geometric grid of bounds, as CSV.
    Density {
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldDesc,
        #[arg(long)]
        m: u32,
        /// start:end:xfactor, e.g. 32:1024:x2.
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value_t = Method::ForwardImage)]
        method: Method,
        /// Largest bound accepted over a quadratic field.
        #[arg(long, default_value_t = 100)]
        max_quad_bound: u32,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit the decay exponent of a density CSV.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also write a log-log chart as SVG.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Run the invariant suite; exits 3 if any check fails.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// The rational witness T_{M/2}(1/3) for even M that is not a power of two.
    Witness {
        #[arg(long)]
        m: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    T,
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Elements,
    Heights,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    PerElement,
    ForwardImage,
    CrossCheck,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::PerElement => CountMethod::PerElement,
            Method::ForwardImage => CountMethod::ForwardImage,
            Method::CrossCheck => CountMethod::CrossCheck,
        }
    }
}

fn parse_field(s: &str) -> Result<FieldDesc, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Inconsistent(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Failure::Inconsistent(e.to_string()),
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::InvalidField(_)
            | Error::FieldMismatch(..)
            | Error::OutOfUnitInterval(_)
            | Error::NotPrime(_)
            | Error::ZeroDenominator => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn print_json(value: &impl Serialize) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn open_out(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn decide(a: &str, m: u32, field: FieldDesc) -> Outcome {
    let a = parse_elem(a, field)?;
    print_json(&decide_sectable(&a, m)?.report())
}

#[derive(Serialize)]
struct ChebyshevJson {
    m: u32,
    t: String,
    t_coeffs: Vec<String>,
    u: String,
    u_coeffs: Vec<String>,
}

fn chebyshev_cmd(m: u32, kind: Kind, json: bool) -> Outcome {
    let pair = chebyshev(m);
    if json {
        return print_json(&ChebyshevJson {
            m,
            t: pair.t.to_string(),
            t_coeffs: pair.t.to_coeff_strings(),
            u: pair.u.to_string(),
            u_coeffs: pair.u.to_coeff_strings(),
        });
    }
    let poly = match kind {
        Kind::T => &pair.t,
        Kind::U => &pair.u,
    };
    println!("{poly}");
    Ok(())
}

#[derive(Serialize)]
struct RootsJson {
    field: String,
    polynomial: String,
    roots: Vec<String>,
    rational_candidates: u64,
    pair_candidates: u64,
}

fn roots_cmd(text: &str, field: FieldDesc) -> Outcome {
    let report = match field {
        FieldDesc::Rational => {
            let p = RatPoly::parse(text, field)?;
            if p.is_zero() {
                return Err(Failure::Usage("the zero polynomial has every root".into()));
            }
            let (cleared, _) = clear_denominators(&p)?;
            let search = rational_roots(&cleared)?;
            RootsJson {
                field: field.to_string(),
                polynomial: p.to_string(),
                roots: search.roots.iter().map(compact).collect(),
                rational_candidates: search.candidates,
                pair_candidates: 0,
            }
        }
        FieldDesc::Quad(k) => {
            let p = QuadPoly::parse(text, field)?;
            let search = quad_roots(&p, k)?;
            RootsJson {
                field: field.to_string(),
                polynomial: p.to_string(),
                roots: search.roots.iter().map(ToString::to_string).collect(),
                rational_candidates: search.rational_candidates,
                pair_candidates: search.pair_candidates,
            }
        }
    };
    print_json(&report)
}

fn census_cmd(field: FieldDesc, bounds: &[Rational], shards: usize) -> Outcome {
    let rows = bounds.iter().map(|b| census(field, b, shards)).collect::<Result<Vec<_>, _>>()?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(CensusRow::csv_header())?;
    for row in &rows {
        w.write_record(row.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

fn enumerate_cmd(field: FieldDesc, bound: &Rational, emit: Emit, shards: usize) -> Outcome {
    let mut out = open_out(None)?;
    for c in enumerate_with_heights(field, bound, shards)? {
        match emit {
            Emit::Elements => writeln!(out, "{}", c.elem)?,
            Emit::Heights => writeln!(out, "{},{}", c.elem, c.height)?,
        }
    }
    out.flush()?;
    Ok(())
}

fn density_cmd(
    field: FieldDesc,
    m: u32,
    grid: &str,
    method: Method,
    max_quad_bound: u32,
    out: Option<&Path>,
    shards: usize,
) -> Outcome {
    let grid = parse_grid(grid)?;
    if let (FieldDesc::Quad(_), Some(top)) = (field, grid.last()) {
        if *top > Rational::from_integer(max_quad_bound.into()) {
            return Err(Failure::Usage(format!(
                "bound {} exceeds --max-quad-bound {max_quad_bound} over {field}",
                compact(top)
            )));
        }
    }
    let records = density_grid(field, m, &grid, method.into(), shards)?;
    let mut w = csv::Writer::from_writer(open_out(out)?);
    w.write_record(DensityRecord::csv_header())?;
    for r in &records {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

fn read_density_csv(path: &Path) -> Result<Vec<DensityRecord>, Failure> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != DensityRecord::csv_header() {
        return Err(Failure::Usage(format!("{}: unexpected header {header:?}", path.display())));
    }
    let mut out = Vec::new();
    for row in r.records() {
        let row = row?;
        let fields: Vec<&str> = row.iter().collect();
        out.push(DensityRecord::from_csv_record(&fields)?);
    }
    Ok(out)
}

/// A static log-log chart: measured densities, the fitted line and a line
/// of the theoretical slope through the same centroid.
fn write_svg(path: &Path, fit: &DecayFit) -> io::Result<()> {
    let pts: Vec<(f64, f64)> = fit
        .records
        .iter()
        .filter(|r| r.numerator > 0)
        .map(|r| (num_traits::ToPrimitive::to_f64(&r.bound).unwrap().ln(), r.delta_float.ln()))
        .collect();
    let (w, h, pad) = (640.0, 420.0, 50.0);
    let (x0, x1) = pts.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let line = |slope: f64, icept: f64, x: f64| slope * x + icept;
    let (mx, my) = {
        let n = pts.len() as f64;
        (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n)
    };
    let theo_icept = my - fit.theoretical_slope * mx;
    let ys = pts
        .iter()
        .map(|p| p.1)
        .chain([x0, x1].into_iter().flat_map(|x| {
            [line(fit.fitted_slope, fit.intercept, x), line(fit.theoretical_slope, theo_icept, x)]
        }));
    let (y0, y1) = ys.fold((f64::MAX, f64::MIN), |(a, b), y| (a.min(y), b.max(y)));
    let span = |a: f64, b: f64| if b > a { b - a } else { 1.0 };
    let sx = |x: f64| pad + (x - x0) / span(x0, x1) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / span(y0, y1) * (h - 2.0 * pad);
    let mut f = BufWriter::new(File::create(path)?);
    writeln!(f, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#)?;
    writeln!(f, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        f,
        r#"<path d="M{pad} {pad} V{} H{}" stroke="black" fill="none"/>"#,
        h - pad,
        w - pad
    )?;
    writeln!(f, r#"<text x="{}" y="{}" text-anchor="middle">log B</text>"#, w / 2.0, h - 15.0)?;
    writeln!(f, r#"<text x="15" y="{}" transform="rotate(-90 15 {})" text-anchor="middle">log delta</text>"#, h / 2.0, h / 2.0)?;
    for (slope, icept, colour, label) in [
        (fit.fitted_slope, fit.intercept, "steelblue", format!("fit {:.3}", fit.fitted_slope)),
        (fit.theoretical_slope, theo_icept, "gray", format!("theory {:.3}", fit.theoretical_slope)),
    ] {
        writeln!(
            f,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{colour}" stroke-dasharray="{}"/>"#,
            sx(x0),
            sy(line(slope, icept, x0)),
            sx(x1),
            sy(line(slope, icept, x1)),
            if colour == "gray" { "6 4" } else { "none" }
        )?;
        writeln!(f, r#"<text x="{:.1}" y="{:.1}" fill="{colour}">{label}</text>"#, sx(x1) - 80.0, sy(line(slope, icept, x1)) - 6.0)?;
    }
    for (x, y) in &pts {
        writeln!(f, r#"<circle cx="{:.1}" cy="{:.1}" r="4" fill="crimson"/>"#, sx(*x), sy(*y))?;
    }
    writeln!(f, "</svg>")?;
    f.flush()
}

fn fit_cmd(input: &Path, plot: Option<&Path>) -> Outcome {
    let records = read_density_csv(input)?;
    let fit = decay_fit(&records)?;
    if let Some(p) = plot {
        write_svg(p, &fit)?;
    }
    print_json(&fit.summary())
}

fn verify_cmd(seed: u64, json: bool, shards: usize) -> Outcome {
    let checks = run_all(seed, shards);
    if json {
        print_json(&checks)?;
    } else {
        for c in &checks {
            println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(Failure::Inconsistent(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

#[derive(Serialize)]
struct WitnessJson {
    m: u32,
    a: String,
    /// `a = T_e(1/3)`.
    exponent: u32,
    /// `|a|_3`.
    abs_3: String,
    sectable: bool,
    witness: Option<String>,
}

fn witness_cmd(m: u32) -> Outcome {
    let a = witness_family(m)?;
    let verdict = decide_sectable(&QuadElem::from(a.clone()), m)?;
    let abs_3 = valuation(&a, 3)?.multiplicative_value().map_or_else(|| "0".into(), |v| compact(&v));
    print_json(&WitnessJson {
        m,
        a: compact(&a),
        exponent: witness_family_exponent(m),
        abs_3,
        sectable: verdict.sectable,
        witness: verdict.witness.map(|w| w.to_string()),
    })
}

fn run(cli: Cli) -> Outcome {
    let shards = cli.shards.map_or_else(default_shards, |s| s as usize);
    match cli.command {
        Command::Decide { a, m, field } => decide(&a, m, field),
        Command::Chebyshev { m, kind, json } => chebyshev_cmd(m, kind, json),
        Command::Roots { poly, field } => roots_cmd(&poly, field),
        Command::Census { field, bounds } => census_cmd(field, &bounds, shards),
        Command::Enumerate { field, bound, emit } => enumerate_cmd(field, &bound, emit, shards),
        Command::Density { field, m, grid, method, max_quad_bound, out } => {
            density_cmd(field, m, &grid, method, max_quad_bound, out.as_deref(), shards)
        }
        Command::Fit { input, plot } => fit_cmd(&input, plot.as_deref()),
        Command::Verify { seed, json } => verify_cmd(seed, json, shards),
        Command::Witness { m } => witness_cmd(m),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
