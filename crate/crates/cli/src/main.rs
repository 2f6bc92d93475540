mod config;
mod scan;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use realperiodic::exactpoly::parse_rational;
use realperiodic::families::FamilySpec;
use realperiodic::invariants::{algebraic_json, is_backward_invariant, preimage};
use realperiodic::ratmap::{classify_multiplier_of_iterate, fixed_point_data};
use realperiodic::realcert::{certify_auto, default_scan_k, multiplier_json, Verdict, EVIDENCE_BITS};
use realperiodic::{CircleSet, Error, IsolatingInterval, RationalMap, Result};
use serde_json::{json, Value};

use config::{Format, RunConfig};

const EXIT_PARSE: u8 = 64;
const EXIT_BUDGET: u8 = 65;
const EXIT_OTHER: u8 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "realperiodic",
    version,
    about = "Certify that a real rational map has only real periodic points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct MapArgs {
    /// Map as "p | q", coefficients constant term first, e.g. "-1,0,1 | 0,1".
    #[arg(long, allow_hyphen_values = true)]
    map: Option<String>,
    /// Family name, or a family spec as JSON {"name":..,"params":{..},"seed":n}.
    #[arg(long)]
    family: Option<String>,
    /// Degree parameter (a list or inclusive range like 2..6 for scan).
    #[arg(long)]
    d: Option<String>,
    /// Perturbation parameter (a comma list for scan).
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// Seed (a list or range for scan).
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct RunArgs {
    /// key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
    /// Output format: json or csv.
    #[arg(long)]
    format: Option<String>,
    /// Largest iterate degree d^k.
    #[arg(long = "max-degree")]
    max_degree: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the applicable certifier and print a certificate.
    Certify {
        #[command(flatten)]
        map: MapArgs,
        /// Candidate backward-invariant set as JSON, e.g. '[["-1","1"]]'.
        #[arg(long = "S", allow_hyphen_values = true)]
        s: Option<String>,
        /// Largest k for the fallback scan.
        #[arg(long = "K")]
        big_k: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Scan fixed points of iterates over a family grid.
    Scan {
        #[command(flatten)]
        map: MapArgs,
        /// Largest k per member.
        #[arg(long = "K")]
        big_k: Option<u32>,
        /// Leave wall_time_ms empty so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the real fixed points of f^k with multiplicities and multipliers.
    FixedPoints {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the preimage of a circle set and whether it is backward invariant.
    Preimage {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long = "S", allow_hyphen_values = true)]
        s: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print a family member.
    Family {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn run_config(run: &RunArgs) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    if let Some(path) = &run.config {
        c.apply_file(path)?;
    }
    if let Some(t) = run.threads {
        c.set("threads", &t.to_string())?;
    }
    if let Some(f) = &run.format {
        c.format = Some(Format::parse(f)?);
    }
    if let Some(m) = run.max_degree {
        c.set("max_iterate_degree", &m.to_string())?;
    }
    if let Some(n) = c.threads {
        // Only the first call in a process can set the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(c)
}

/// The family spec named by the flags, or `None` when `--map` is used.
fn family_spec(a: &MapArgs) -> Result<Option<FamilySpec>> {
    let Some(name) = &a.family else { return Ok(None) };
    if name.trim_start().starts_with('{') {
        return FamilySpec::parse(name).map(Some);
    }
    let mut spec = FamilySpec::new(name);
    if let Some(d) = &a.d {
        let d: u64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("--d must be an integer, found {d:?}")))?;
        spec = spec.with_param("d", json!(d));
    }
    if let Some(e) = &a.eps {
        spec = spec.with_param("eps", json!(parse_rational(e)?.to_string()));
    }
    if let Some(s) = &a.seed {
        let s: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("--seed must be an integer, found {s:?}")))?;
        spec = spec.with_seed(s);
    }
    Ok(Some(spec))
}

fn subject(a: &MapArgs) -> Result<RationalMap> {
    match (&a.map, family_spec(a)?) {
        (Some(_), Some(_)) => Err(Error::Parse("give either --map or --family, not both".into())),
        (Some(text), None) => RationalMap::parse(text),
        (None, Some(spec)) => spec.build().map_err(|e| match e {
            Error::Family(msg) => Error::Parse(msg),
            other => other,
        }),
        (None, None) => Err(Error::Parse("give --map or --family".into())),
    }
}

fn refined(x: &IsolatingInterval) -> IsolatingInterval {
    let mut x = x.clone();
    x.refine_to_bits(EVIDENCE_BITS);
    x
}

/// Output failure. A reader that closed the pipe early ends the run quietly.
fn output_err(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    Error::Precondition(format!("cannot write output: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => output_err(e),
        other => Error::Precondition(format!("cannot write output: {other:?}")),
    }
}

fn print_json(v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    writeln!(io::stdout(), "{text}").map_err(output_err)
}

fn cmd_certify(map: &MapArgs, s: Option<&str>, big_k: Option<u32>, cfg: &RunConfig) -> Result<u8> {
    let f = subject(map)?;
    let s = s.map(CircleSet::parse).transpose()?;
    let k = big_k
        .or(cfg.scan_k)
        .unwrap_or_else(|| default_scan_k(f.degree().max(2), &cfg.budget));
    let cert = certify_auto(&f, s.as_ref(), k, &cfg.budget)?;
    print_json(&cert.to_json())?;
    Ok(match cert.verdict {
        Verdict::CertifiedInRd => 0,
        Verdict::CertifiedNotInRd => 1,
        Verdict::BoundaryIndifferent => 2,
        Verdict::Inconclusive if cert.evidence.budget_exhausted.is_some() => EXIT_BUDGET,
        Verdict::Inconclusive => 3,
    })
}

fn scan_members(map: &MapArgs) -> Result<Vec<scan::Member>> {
    if let Some(text) = &map.map {
        if map.family.is_some() {
            return Err(Error::Parse("give either --map or --family, not both".into()));
        }
        return Ok(vec![scan::Member {
            name: "map".into(),
            map: RationalMap::parse(text)?,
        }]);
    }
    let family = map
        .family
        .as_deref()
        .ok_or_else(|| Error::Parse("scan needs --family or --map".into()))?;
    if family.trim_start().starts_with('{') {
        let spec = FamilySpec::parse(family)?;
        return Ok(vec![scan::Member {
            name: spec.label(),
            map: spec.build().map_err(|e| Error::Parse(e.to_string()))?,
        }]);
    }
    let ds = map
        .d
        .as_deref()
        .map(scan::parse_int_list)
        .transpose()?
        .unwrap_or_default();
    let seeds = map
        .seed
        .as_deref()
        .map(scan::parse_int_list)
        .transpose()?
        .unwrap_or_default();
    let eps: Vec<String> = map
        .eps
        .as_deref()
        .map(|e| e.split(',').map(|s| s.trim().to_string()).collect())
        .unwrap_or_default();
    scan::grid(family, &ds, &eps, &seeds)
}

fn cmd_scan(map: &MapArgs, big_k: Option<u32>, no_timing: bool, cfg: &RunConfig) -> Result<u8> {
    let members = scan_members(map)?;
    let rows = scan::scan_grid(&members, big_k.or(cfg.scan_k), &cfg.budget, !no_timing);
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(scan::CSV_HEADER).map_err(csv_err)?;
            for r in &rows {
                w.write_record(r.csv_fields()).map_err(csv_err)?;
            }
            w.flush().map_err(output_err)?;
        }
        Format::Json => print_json(&Value::Array(rows.iter().map(scan::Row::to_json).collect()))?,
    }
    Ok(0)
}

fn cmd_fixed_points(map: &MapArgs, k: u32, cfg: &RunConfig) -> Result<u8> {
    let f = subject(map)?;
    let fp = fixed_point_data(&f, k, &cfg.budget)?;
    let mut points = Vec::new();
    for r in &fp.roots {
        let c = classify_multiplier_of_iterate(&f, &fp.iterate, r, k, &cfg.budget)?;
        points.push((refined(r), c));
    }
    let infinity = if fp.infinity_multiplicity > 0 {
        let x = IsolatingInterval::infinity(fp.infinity_multiplicity);
        Some(classify_multiplier_of_iterate(&f, &fp.iterate, &x, k, &cfg.budget)?)
    } else {
        None
    };
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let roots: Vec<Value> = points
                .iter()
                .map(|(r, c)| {
                    json!({
                        "value": algebraic_json(r),
                        "enclosure": [r.lower().to_string(), r.upper().to_string()],
                        "multiplicity": r.multiplicity(),
                        "multiplier": multiplier_json(c),
                    })
                })
                .collect();
            let mut v = json!({
                "subject": f.to_text(),
                "k": k,
                "deg_Fk": fp.degree(),
                "all_real": fp.all_real,
                "real_count_with_multiplicity": fp.real_count_with_multiplicity(),
                "roots": roots,
                "infinity_multiplicity": fp.infinity_multiplicity,
            });
            if let Some(c) = &infinity {
                v["infinity_multiplier"] = multiplier_json(c);
            }
            print_json(&v)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["lower", "upper", "multiplicity", "multiplier", "lambda_lo", "lambda_hi"])
                .map_err(csv_err)?;
            let bounds = |c: &realperiodic::ratmap::MultiplierClass| match &c.lambda_bounds {
                Some((lo, hi)) => (lo.to_string(), hi.to_string()),
                None => (String::new(), String::new()),
            };
            for (r, c) in &points {
                let (lo, hi) = bounds(c);
                w.write_record([
                    r.lower().to_string(),
                    r.upper().to_string(),
                    r.multiplicity().to_string(),
                    c.verdict.as_str().to_string(),
                    lo,
                    hi,
                ])
                .map_err(csv_err)?;
            }
            if let Some(c) = &infinity {
                let (lo, hi) = bounds(c);
                w.write_record([
                    "inf".to_string(),
                    "inf".to_string(),
                    fp.infinity_multiplicity.to_string(),
                    c.verdict.as_str().to_string(),
                    lo,
                    hi,
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(output_err)?;
        }
    }
    Ok(0)
}

fn cmd_preimage(map: &MapArgs, s: &str, _cfg: &RunConfig) -> Result<u8> {
    let f = subject(map)?;
    let s = CircleSet::parse(s)?;
    let pre = preimage(&f, &s)?;
    let invariant = is_backward_invariant(&f, &s)?;
    print_json(&json!({
        "subject": f.to_text(),
        "S": s.to_json(),
        "preimage": pre.to_json(),
        "backward_invariant": invariant,
    }))?;
    Ok(0)
}

fn cmd_family(map: &MapArgs, cfg: &RunConfig) -> Result<u8> {
    let spec = family_spec(map)?.ok_or_else(|| Error::Parse("family needs --family".into()))?;
    let f = spec.build().map_err(|e| Error::Parse(e.to_string()))?;
    let coeffs = |p: &realperiodic::IntPoly| -> Vec<String> { p.coeffs().iter().map(|c| c.to_string()).collect() };
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&json!({
            "family": spec.to_json(),
            "map": f.to_text(),
            "p": coeffs(f.p()),
            "q": coeffs(f.q()),
            "degree": f.degree(),
        }))?,
        Format::Csv => {
            writeln!(io::stdout(), "{}", f.to_text()).map_err(output_err)?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Certify { map, s, big_k, run } => cmd_certify(&map, s.as_deref(), big_k, &run_config(&run)?),
        Command::Scan {
            map,
            big_k,
            no_timing,
            run,
        } => cmd_scan(&map, big_k, no_timing, &run_config(&run)?),
        Command::FixedPoints { map, k, run } => cmd_fixed_points(&map, k, &run_config(&run)?),
        Command::Preimage { map, s, run } => cmd_preimage(&map, &s, &run_config(&run)?),
        Command::Family { map, run } => cmd_family(&map, &run_config(&run)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("realperiodic: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::Family(_) => EXIT_PARSE,
                Error::Budget(_) => EXIT_BUDGET,
                _ => EXIT_OTHER,
            })
        }
    }
}
