//! Command-line front end.
//!
//! Subcommands: `solve` (coefficient table), `classify` (full pipeline with
//! JSON/SVG/ASCII output), `variation` (print the first variation),
//! `polygon` (classify a user-supplied support list), `corpus-check`
//! (run every built-in case against its recorded expectations).
//!
//! Exit codes: 0 ok, 1 parse/usage error, 2 resonance, 3 degenerate leading
//! coefficient, 4 corpus mismatch.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use gevrey_core::corpus::{corpus, find_case, CorpusCase};
use gevrey_core::diffsum::{parse_diffsum, DiffSum};
use gevrey_core::error::Error;
use gevrey_core::exponent::RamifiedExponent;
use gevrey_core::gaussian::GaussianRational;
use gevrey_core::pipeline::{classify, Classification};
use gevrey_core::polygon::{gevrey_candidates, polygon, SupportPoint};
use gevrey_core::report::{build_report, polygon_ascii, polygon_svg, ReportContext};
use gevrey_core::seedspec::parse_seed_spec;
use gevrey_core::solver::{extend, SeedExpansion};
use gevrey_core::stirling::StirlingTables;

#[derive(Parser)]
#[command(
    name = "gevrey",
    about = "Newton-polygon Gevrey classification of formal series solutions of polynomial ODEs",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Extend a seed to N coefficients and print the table.
    Solve(ProblemArgs),
    /// Full pipeline: solve, linearize, polygon, Gevrey candidates.
    Classify(ClassifyArgs),
    /// Print the first variation of a differential sum.
    Variation(SourceArgs),
    /// Build the polygon from an explicit support list like "0:-1,1:1,2:1".
    Polygon(PolygonArgs),
    /// Re-run every corpus case and compare against recorded expectations.
    CorpusCheck(CorpusCheckArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in case id (see `corpus-check` for the list).
    #[arg(long)]
    corpus: Option<String>,
    /// Equation as a differential sum: literal text or a file path.
    #[arg(long, allow_hyphen_values = true)]
    equation: Option<String>,
}

#[derive(Args)]
struct ProblemArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Seed specification, e.g. "-1=2" or "1=i,0=2+i".
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    /// Ramification of the exponent grid (default: inferred from the seed).
    #[arg(long)]
    ram: Option<u32>,
    /// Number of coefficients to derive beyond the prescribed ones.
    #[arg(short = 'N', long = "terms", default_value_t = 12)]
    n: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an SVG rendering of the polygon.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print an ASCII rendering of the polygon.
    #[arg(long)]
    ascii: bool,
}

#[derive(Args)]
struct PolygonArgs {
    /// Support points as `k:j` pairs, `j` an exact rational: "0:-1,1:1,2:1".
    #[arg(long, allow_hyphen_values = true)]
    support: String,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    ascii: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CorpusCheckArgs {
    /// Only run cases whose id contains this substring.
    #[arg(long)]
    filter: Option<String>,
    /// Additional cases to check, in the report JSON schema.
    #[arg(long)]
    cases: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Resonance { .. } => 2,
                Error::DegenerateLeadingCoefficient => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let tables = StirlingTables::new(12);
    match cli.cmd {
        Cmd::Solve(args) => {
            let problem = Problem::from_args(&args)?;
            let sol = extend(&problem.equation, &problem.seed, args.n)?;
            if args.json {
                let coeffs: Vec<_> = sol
                    .series
                    .terms()
                    .map(|(q, v)| {
                        serde_json::json!({
                            "exponent": scale_exp(*q, &problem),
                            "value": { "re": fmt_part(v.re()), "im": fmt_part(v.im()) },
                        })
                    })
                    .collect();
                let body = serde_json::json!({
                    "schema_version": gevrey_core::report::SCHEMA_VERSION,
                    "case_id": problem.case.as_ref().map(|c| c.id.clone()),
                    "coefficients": coeffs,
                    "residual_leading_exponent":
                        sol.residual_leads.last().and_then(|r| r.map(|q| scale_exp(q, &problem))),
                });
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            } else {
                println!("# {}", problem.describe());
                println!("{:>12}  value", "exponent");
                for (q, v) in sol.series.terms() {
                    println!("{:>12}  {v}", scale_exp(*q, &problem));
                }
                println!();
                println!("characteristic values (exponent: divisor):");
                for (q, kappa) in &sol.characteristic_values {
                    println!("{:>12}: {kappa}", scale_exp(*q, &problem));
                }
                if let Some(r) = sol.residual_leads.last() {
                    match r {
                        Some(q) => {
                            println!("residual leading exponent: {}", scale_exp(*q, &problem))
                        }
                        None => println!("residual: exactly zero"),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify(args) => {
            let problem = Problem::from_args(&args.problem)?;
            let c = classify(&problem.equation, &problem.seed, args.problem.n, &tables)?;
            let ctx = ReportContext {
                case: problem.case.as_ref(),
                equation: &problem.equation,
                z_scale: problem.z_scale(),
                ramification: problem.z_ram,
                branch: problem.seed.branch(),
            };
            let report = build_report(&ctx, &c);
            let json = serde_json::to_string_pretty(&report).unwrap();
            if let Some(path) = &args.svg {
                std::fs::write(path, polygon_svg(&c.polygon)).map_err(io_err)?;
            }
            if let Some(path) = &args.out {
                std::fs::write(path, json.as_bytes()).map_err(io_err)?;
                print_classification_summary(&problem, &c);
            } else if args.problem.json {
                println!("{json}");
            } else {
                print_classification_summary(&problem, &c);
            }
            if args.ascii {
                println!("{}", polygon_ascii(&c.polygon));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Variation(args) => {
            let problem = Problem::from_source(&args, None, None)?;
            println!("{}", problem.equation.first_variation());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Polygon(args) => {
            let points = parse_support_list(&args.support)?;
            let poly = polygon(&points)?;
            let candidates = gevrey_candidates(&poly);
            if args.json {
                let body = serde_json::json!({
                    "support": points.iter().map(|p| (p.k, p.j0.to_string())).collect::<Vec<_>>(),
                    "hull_vertices": poly
                        .vertices()
                        .iter()
                        .map(|(k, j)| (*k, j.to_string()))
                        .collect::<Vec<_>>(),
                    "positive_slopes":
                        poly.positive_slopes().iter().map(fmt_slope).collect::<Vec<_>>(),
                    "gevrey_candidates": candidates.iter().map(fmt_slope).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            } else {
                println!("positive slopes: {}", join_slopes(poly.positive_slopes()));
                println!("gevrey candidates: {}", join_slopes(&candidates));
            }
            if let Some(path) = &args.svg {
                std::fs::write(path, polygon_svg(&poly)).map_err(io_err)?;
            }
            if args.ascii {
                println!("{}", polygon_ascii(&poly));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CorpusCheck(args) => corpus_check(&args, &tables),
    }
}

struct Problem {
    equation: DiffSum,
    seed: SeedExpansion,
    case: Option<CorpusCase>,
    /// Grid of the expansion viewed in `z`.
    z_ram: u32,
}

impl Problem {
    fn from_args(args: &ProblemArgs) -> Result<Self, Error> {
        Self::from_source(&args.source, args.seed.as_deref(), args.ram)
    }

    fn from_source(
        source: &SourceArgs,
        seed_spec: Option<&str>,
        ram: Option<u32>,
    ) -> Result<Self, Error> {
        match (&source.corpus, &source.equation) {
            (Some(id), None) => {
                let case = find_case(id)?;
                Ok(Self {
                    equation: case.equation(),
                    seed: case.seed.clone(),
                    z_ram: case.z_ramification,
                    case: Some(case),
                })
            }
            (None, Some(src)) => {
                let text = read_equation(src)?;
                let equation = parse_diffsum(&text)?;
                let seed = match seed_spec {
                    Some(spec) => parse_seed_spec(spec, ram, None)?,
                    None => {
                        // the variation subcommand needs no seed
                        SeedExpansion::new(
                            ram.unwrap_or(1),
                            [(RamifiedExponent::from_int(0), GaussianRational::one())],
                            None,
                        )?
                    }
                };
                Ok(Self {
                    equation,
                    z_ram: seed.ram(),
                    seed,
                    case: None,
                })
            }
            _ => Err(Error::Invalid {
                detail: "provide exactly one of --corpus or --equation".into(),
            }),
        }
    }

    fn z_scale(&self) -> num_rational::Rational64 {
        match &self.case {
            Some(c) => c.z_exponent_scale(),
            None => num_rational::Rational64::from_integer(1),
        }
    }

    fn describe(&self) -> String {
        match &self.case {
            Some(c) => format!("{} - {}", c.id, c.citation),
            None => self.equation.to_string(),
        }
    }
}

fn print_classification_summary(problem: &Problem, c: &Classification) {
    println!("# {}", problem.describe());
    println!("equation: {}", problem.equation);
    println!("support: {}", describe_support(&c.support));
    if let Some(case) = &problem.case {
        if case.reported_support != c.support {
            println!(
                "support as published: {}",
                describe_support(&case.reported_support)
            );
            if let Some(note) = case.support_note {
                println!("note: {note}");
            }
        }
    }
    println!(
        "positive slopes: {}",
        join_slopes(c.polygon.positive_slopes())
    );
    println!(
        "gevrey candidates: {} (the series converges or has exactly one of these orders)",
        join_slopes(&c.candidates)
    );
}

fn corpus_check(args: &CorpusCheckArgs, tables: &StirlingTables) -> Result<ExitCode, Error> {
    let mut cases = corpus();
    if let Some(path) = &args.cases {
        cases.extend(load_external_cases(path)?);
    }
    if let Some(filter) = &args.filter {
        cases.retain(|c| c.id.contains(filter.as_str()));
    }
    if cases.is_empty() {
        println!("warning: no cases matched the filter");
        return Ok(ExitCode::SUCCESS);
    }
    let mut failures: Vec<String> = Vec::new();
    for case in &cases {
        match check_one(case, tables) {
            Ok(()) => println!("ok   {}", case.id),
            Err(msg) => {
                println!("FAIL {}: {msg}", case.id);
                failures.push(case.id.clone());
            }
        }
    }
    if failures.is_empty() {
        println!("all {} cases pass", cases.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("mismatched cases: {}", failures.join(", "));
        Ok(ExitCode::from(4))
    }
}

fn check_one(case: &CorpusCase, tables: &StirlingTables) -> Result<(), String> {
    let f = case.equation();
    let c = classify(&f, &case.seed, case.default_n, tables).map_err(|e| e.to_string())?;
    if c.support != case.expected_support {
        return Err(format!(
            "support {} != expected {}",
            describe_support(&c.support),
            describe_support(&case.expected_support)
        ));
    }
    if c.polygon.positive_slopes() != case.expected_slopes.as_slice() {
        return Err(format!(
            "slopes {} != expected {}",
            join_slopes(c.polygon.positive_slopes()),
            join_slopes(&case.expected_slopes)
        ));
    }
    if c.candidates != case.expected_candidates {
        return Err(format!(
            "candidates {} != expected {}",
            join_slopes(&c.candidates),
            join_slopes(&case.expected_candidates)
        ));
    }
    for pair in c.solution.residual_leads.windows(2) {
        if let (Some(a), Some(b)) = (pair[0], pair[1]) {
            if b >= a {
                return Err(format!("residual lead did not decrease: {a} -> {b}"));
            }
        }
    }
    Ok(())
}

fn describe_support(points: &[SupportPoint]) -> String {
    points
        .iter()
        .map(|p| format!("({},{})", p.k, p.j0))
        .collect::<Vec<_>>()
        .join(" ")
}

/// External cases reuse the report schema keys: `case_id`, `equation` (kind
/// name `P5`/`P5-delta0`/`P3`, or differential-sum text), `parameters`,
/// `ramification`, `branch`, `seed`, `support`, `positive_slopes`,
/// `gevrey_candidates`. Seed exponents are on the `z` grid.
fn load_external_cases(path: &Path) -> Result<Vec<CorpusCase>, Error> {
    use gevrey_core::corpus::{EquationKind, ParameterSet, SeriesFamily};
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    let raw: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Invalid {
        detail: format!("bad cases file: {e}"),
    })?;
    let list = raw.as_array().ok_or_else(|| Error::Invalid {
        detail: "cases file must be a JSON array".into(),
    })?;
    let mut out = Vec::new();
    for item in list {
        let get_str = |key: &str| -> Result<&str, Error> {
            item.get(key)
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Invalid {
                    detail: format!("case missing string field `{key}`"),
                })
        };
        let id = get_str("case_id")?.to_string();
        let ramification = item
            .get("ramification")
            .and_then(|v| v.as_u64())
            .unwrap_or(1) as u32;
        let branch = item.get("branch").and_then(|v| v.as_i64()).unwrap_or(0);
        let equation_text = get_str("equation")?;
        let kind = match equation_text {
            "P5" => Some(EquationKind::P5),
            "P5-delta0" => Some(EquationKind::P5Delta0),
            "P3" => Some(EquationKind::P3),
            _ => None,
        };
        let params = match item.get("parameters") {
            Some(p) if !p.is_null() => ParameterSet {
                alpha: parse_pair(p, "alpha")?,
                beta: parse_pair(p, "beta")?,
                gamma: parse_pair(p, "gamma")?,
                delta: parse_pair(p, "delta")?,
            },
            _ => {
                if kind.is_some() {
                    return Err(Error::Invalid {
                        detail: format!("case `{id}` names a built-in equation but has no parameters"),
                    });
                }
                ParameterSet::from_ints(0, 0, 0, 0)
            }
        };
        let custom_equation = if kind.is_none() {
            Some(parse_diffsum(equation_text)?)
        } else {
            None
        };
        let working_scale = if kind == Some(EquationKind::P5Delta0) {
            i64::from(ramification)
        } else {
            1
        };
        let mut seed_terms = Vec::new();
        for entry in item
            .get("seed")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Invalid {
                detail: "case missing seed array".into(),
            })?
        {
            let exp_text =
                entry
                    .get("exponent")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::Invalid {
                        detail: "seed entry missing exponent".into(),
                    })?;
            let q = parse_exponent_text(exp_text)?;
            let value = entry.get("value").ok_or_else(|| Error::Invalid {
                detail: "seed entry missing value".into(),
            })?;
            let re = value.get("re").and_then(|v| v.as_str()).unwrap_or("0");
            let im = value.get("im").and_then(|v| v.as_str()).unwrap_or("0");
            let coeff = GaussianRational::new(parse_big(re)?, parse_big(im)?);
            seed_terms.push((q.times(working_scale), coeff));
        }
        let seed = SeedExpansion::new(
            if kind == Some(EquationKind::P5Delta0) {
                1
            } else {
                ramification
            },
            seed_terms,
            Some(branch),
        )?;
        let support = parse_support_json(item.get("support"))?;
        let slopes = parse_ratio_list(item.get("positive_slopes"))?;
        let candidates = parse_ratio_list(item.get("gevrey_candidates"))?;
        out.push(CorpusCase {
            id,
            kind: kind.unwrap_or(EquationKind::P3),
            family: SeriesFamily::F13, // informational only for external cases
            params,
            branch,
            z_ramification: ramification,
            seed,
            expected_support: support.clone(),
            expected_slopes: slopes,
            expected_candidates: candidates,
            reported_support: support,
            custom_equation,
            support_note: None,
            citation: "external case",
            default_n: 12,
        });
    }
    Ok(out)
}

fn parse_pair(p: &serde_json::Value, key: &str) -> Result<GaussianRational, Error> {
    let v = p.get(key).ok_or_else(|| Error::Invalid {
        detail: format!("parameters missing `{key}`"),
    })?;
    let re = v.get("re").and_then(|x| x.as_str()).unwrap_or("0");
    let im = v.get("im").and_then(|x| x.as_str()).unwrap_or("0");
    Ok(GaussianRational::new(parse_big(re)?, parse_big(im)?))
}

fn parse_big(text: &str) -> Result<num_rational::BigRational, Error> {
    let g = GaussianRational::from_str(text)?;
    if !g.is_real() {
        return Err(Error::Invalid {
            detail: format!("expected a real rational, got `{text}`"),
        });
    }
    Ok(g.re().clone())
}

fn parse_support_json(v: Option<&serde_json::Value>) -> Result<Vec<SupportPoint>, Error> {
    let arr = v.and_then(|x| x.as_array()).ok_or_else(|| Error::Invalid {
        detail: "case missing support array".into(),
    })?;
    let mut out = Vec::new();
    for entry in arr {
        let pair = entry
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Invalid {
                detail: "support entries are [k, \"j\"] pairs".into(),
            })?;
        let k = pair[0].as_u64().ok_or_else(|| Error::Invalid {
            detail: "support order must be a nonnegative integer".into(),
        })? as u32;
        let j_text = pair[1].as_str().ok_or_else(|| Error::Invalid {
            detail: "support ordinate must be an exact rational string".into(),
        })?;
        out.push(SupportPoint::new(k, parse_exponent_text(j_text)?));
    }
    Ok(out)
}

fn parse_ratio_list(v: Option<&serde_json::Value>) -> Result<Vec<num_rational::Rational64>, Error> {
    let arr = v.and_then(|x| x.as_array()).ok_or_else(|| Error::Invalid {
        detail: "expected an array of rational strings".into(),
    })?;
    arr.iter()
        .map(|x| {
            let s = x.as_str().ok_or_else(|| Error::Invalid {
                detail: "rationals are serialized as strings".into(),
            })?;
            parse_ratio64(s)
        })
        .collect()
}

fn parse_ratio64(text: &str) -> Result<num_rational::Rational64, Error> {
    let bad = || Error::Invalid {
        detail: format!("bad rational `{text}`"),
    };
    match text.split_once('/') {
        None => text
            .trim()
            .parse::<i64>()
            .map(num_rational::Rational64::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n = n.trim().parse::<i64>().map_err(|_| bad())?;
            let d = d.trim().parse::<i64>().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(num_rational::Rational64::new(n, d))
        }
    }
}

fn parse_exponent_text(text: &str) -> Result<RamifiedExponent, Error> {
    let r = parse_ratio64(text)?;
    Ok(RamifiedExponent::new(*r.numer(), *r.denom() as u32))
}

fn parse_support_list(text: &str) -> Result<Vec<SupportPoint>, Error> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, j) = part.split_once(':').ok_or_else(|| Error::Invalid {
            detail: format!("support point `{part}` is not of the form k:j"),
        })?;
        let k = k.trim().parse::<u32>().map_err(|_| Error::Invalid {
            detail: format!("bad order in `{part}`"),
        })?;
        out.push(SupportPoint::new(k, parse_exponent_text(j.trim())?));
    }
    Ok(out)
}

fn read_equation(src: &str) -> Result<String, Error> {
    let path = Path::new(src);
    if path.exists() && path.is_file() {
        std::fs::read_to_string(path).map_err(io_err)
    } else {
        Ok(src.to_string())
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Invalid {
        detail: format!("io error: {e}"),
    }
}

fn fmt_part(r: &num_rational::BigRational) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_slope(r: &num_rational::Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn join_slopes(rs: &[num_rational::Rational64]) -> String {
    if rs.is_empty() {
        return "none".to_string();
    }
    rs.iter().map(fmt_slope).collect::<Vec<_>>().join(", ")
}

fn scale_exp(q: RamifiedExponent, problem: &Problem) -> String {
    let scaled = q.as_ratio() * problem.z_scale();
    fmt_slope(&scaled)
}
