mod input;
mod paper;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qgp_core::catalog::{self, Params};
use qgp_core::geometry::{intersection_profile, is_smooth, PlaneCurve, ProjLine, ProjPoint};
use qgp_core::groups::{closure, DEFAULT_GROUP_CAP};
use qgp_core::oracle::{numeric_census, NumericCurve, OracleSettings};
use qgp_core::quasigalois::{
    census_with, decide_gp, default_seeds, CensusOptions, CensusSummary, DEFAULT_CAP,
};
use qgp_core::Error;
use serde_json::{json, Value};

use input::InputError;

#[derive(Parser)]
#[command(
    name = "qgp",
    version,
    about = "Quasi-Galois points of smooth plane curves over cyclotomic fields"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit-expansion census with certification.
    Analyze {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Exact smoothness test.
    Smooth {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Decides |G[P]| for one point.
    Point {
        #[arg(long)]
        curve: PathBuf,
        /// Comma-separated literals, e.g. "1,z^4,0".
        #[arg(long)]
        point: String,
    },
    /// Intersection multiplicities of a line with the curve.
    Profile {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        line: String,
    },
    /// Closure of a set of projective matrices.
    Closure {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        generators: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        cap: usize,
    },
    /// Runs the reference cases.
    VerifyPaper {
        #[arg(long = "case")]
        cases: Vec<String>,
        #[arg(long)]
        list: bool,
        /// Oracle disagreements fail the case instead of warning.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        starts: usize,
        #[arg(long)]
        skip_oracle: bool,
    },
    /// Numeric census of homology centres of a given order.
    OracleCensus {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = OracleSettings::default().starts)]
        starts: usize,
        #[arg(long, default_value_t = OracleSettings::default().residual_tol)]
        tol: f64,
        #[arg(long, default_value_t = OracleSettings::default().cluster_tol)]
        cluster_tol: f64,
    },
    /// Writes a catalog curve as curve JSON.
    Export {
        family: String,
        /// Family parameters as key=value.
        #[arg(long = "param")]
        params: Vec<String>,
        /// Also emit the seed points.
        #[arg(long)]
        seeds: bool,
    },
}

/// What a command produced: a JSON value, its text rendering, and whether every check passed.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

enum Failure {
    Input(InputError),
    /// A mathematical rejection or failed computation (exit 1).
    Compute(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema { .. }
            | Error::Parse(_)
            | Error::ParameterViolation(_)
            | Error::UnknownFamily(_)
            | Error::ZeroVector
            | Error::ContextMismatch
            | Error::DegreeTooLow(_) => Failure::Input(InputError::from_core(e)),
            other => Failure::Compute(other),
        }
    }
}

fn curve(path: &Path) -> Result<PlaneCurve, Failure> {
    Ok(input::load_curve(path)??)
}

fn summary_text(s: &CensusSummary) -> String {
    let counts = |m: &BTreeMap<u32, usize>| {
        if m.is_empty() {
            return "none".to_string();
        }
        m.iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = vec![
        format!("curve {} of degree {}", s.curve_id, s.degree),
        format!("delta_prime {}", counts(&s.delta_prime)),
        format!("delta {}", counts(&s.delta)),
        format!(
            "certification {}{}",
            serde_json::to_value(s.certification)
                .expect("plain enum")
                .as_str()
                .unwrap_or("?"),
            s.bound.map(|b| format!(" (bound {b})")).unwrap_or_default()
        ),
        format!("pairs {} triples {}", s.pairs.len(), s.triples.len()),
    ];
    if let Some(r) = &s.lambda_specialization {
        out.push(format!("lambda specialized to {r}"));
    }
    for p in &s.points {
        out.push(format!(
            "  ({}) order {} {}{}",
            p.point.join(" : "),
            p.order,
            serde_json::to_value(p.locus)
                .expect("plain enum")
                .as_str()
                .unwrap_or("?"),
            p.axis
                .as_ref()
                .map(|a| format!(" axis [{}]", a.join(" : ")))
                .unwrap_or_default()
        ));
    }
    out.join("\n")
}

fn analyze(path: &Path, seeds: &Option<PathBuf>, cap: usize) -> Result<Outcome, Failure> {
    let c = curve(path)?;
    let seeds = match seeds {
        Some(s) => input::load_seeds(s, c.context())?,
        None => default_seeds(&c),
    };
    let opts = CensusOptions {
        cap,
        curve_id: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        ..CensusOptions::default()
    };
    let s = census_with(&c, &seeds, &opts)?.summary();
    Ok(Outcome {
        json: serde_json::to_value(&s).expect("plain data"),
        text: summary_text(&s),
        ok: true,
    })
}

fn smooth(path: &Path) -> Result<Outcome, Failure> {
    let f = input::load_form(path)?;
    let s = is_smooth(&f)?;
    Ok(Outcome {
        json: json!({"degree": f.degree(), "smooth": s}),
        text: if s { "smooth" } else { "singular" }.into(),
        ok: s,
    })
}

fn point(path: &Path, p: &str) -> Result<Outcome, Failure> {
    let c = curve(path)?;
    let p = ProjPoint::parse(c.context(), p)?;
    let r = decide_gp(&c, &p)?;
    let text = format!(
        "{} order {} {}{}",
        r.point,
        r.order,
        serde_json::to_value(r.locus)
            .expect("plain enum")
            .as_str()
            .unwrap_or("?"),
        r.axis().map(|a| format!(" axis {a}")).unwrap_or_default()
    );
    Ok(Outcome {
        json: r.to_json(),
        text,
        ok: true,
    })
}

fn profile(path: &Path, l: &str) -> Result<Outcome, Failure> {
    let c = curve(path)?;
    let l = ProjLine::parse(c.context(), l)?;
    let prof = intersection_profile(c.form(), &l)?;
    Ok(Outcome {
        json: json!({"line": l.to_json(), "profile": prof}),
        text: prof
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        ok: true,
    })
}

fn group(path: &Path, gens: &Path, cap: usize) -> Result<Outcome, Failure> {
    let c = curve(path)?;
    let gens = input::load_generators(gens, c.context())?;
    let mut preserving = Vec::new();
    for g in &gens {
        preserving.push(c.form().proportionality(&c.form().pullback(g))?.is_some());
    }
    let g = closure(c.context(), &gens, cap)?;
    let hist = g.order_histogram()?;
    let abelian = g.is_abelian()?;
    let ok = preserving.iter().all(|&b| b);
    let text = format!(
        "order {}\nabelian {}\nhistogram {}\ngenerators preserve the curve: {}",
        g.order(),
        abelian,
        hist.iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(" "),
        ok
    );
    Ok(Outcome {
        json: json!({
            "order": g.order(),
            "abelian": abelian,
            "histogram": hist.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
            "generators_preserve_curve": preserving,
        }),
        text,
        ok,
    })
}

fn verify_paper(
    cases: &[String],
    list: bool,
    strict: bool,
    threads: Option<usize>,
    settings: OracleSettings,
    skip_oracle: bool,
) -> Result<Outcome, Failure> {
    if list {
        let names = paper::case_names()?;
        return Ok(Outcome {
            json: json!({"cases": names}),
            text: names.join("\n"),
            ok: true,
        });
    }
    let names =
        paper::select(cases)?.map_err(|n| InputError::new(format!("unknown case `{n}`")))?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| InputError::new(e.to_string()))?;
    let oracle = (!skip_oracle).then_some(&settings);
    let reports = pool.install(|| paper::run_suite(&names, oracle, strict))?;
    let suite = paper::SuiteReport {
        passed: reports.iter().all(|r| r.passed),
        strict,
        seed: settings.seed,
        starts: if skip_oracle { 0 } else { settings.starts },
        cases: reports,
    };
    let mut text = Vec::new();
    for r in &suite.cases {
        text.push(format!(
            "{} {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.case
        ));
        for c in &r.checks {
            text.push(format!(
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        for o in &r.oracle {
            text.push(format!(
                "  [{}] oracle n={}: exact {} numeric {} ({}/{} converged)",
                if o.agrees() { "ok" } else { "warn" },
                o.n,
                o.exact,
                o.numeric,
                o.converged,
                o.starts
            ));
        }
    }
    let passed = suite.cases.iter().filter(|r| r.passed).count();
    text.push(format!("{passed}/{} cases passed", suite.cases.len()));
    Ok(Outcome {
        json: serde_json::to_value(&suite).expect("plain data"),
        text: text.join("\n"),
        ok: suite.passed,
    })
}

fn oracle_census(path: &Path, n: u32, settings: OracleSettings) -> Result<Outcome, Failure> {
    if n < 2 {
        return Err(InputError::new("--order must be at least 2").into());
    }
    if !(settings.residual_tol > 0.0 && settings.cluster_tol > 0.0) {
        return Err(InputError::new("tolerances must be positive").into());
    }
    let c = curve(path)?;
    let r = numeric_census(&NumericCurve::from_form(c.form()), n, &settings);
    let mut text = vec![
        format!("order {n}: {} centres", r.count),
        format!(
            "converged {}/{}, worst cluster radius {:.3e}",
            r.converged, r.starts, r.worst_cluster_radius
        ),
    ];
    for p in &r.centers {
        text.push(format!(
            "  ({})",
            p.iter()
                .map(|(a, b)| format!("{a:.6}{b:+.6}i"))
                .collect::<Vec<_>>()
                .join(" : ")
        ));
    }
    Ok(Outcome {
        json: serde_json::to_value(&r).expect("plain data"),
        text: text.join("\n"),
        ok: true,
    })
}

fn export(family: &str, params: &[String], with_seeds: bool) -> Result<Outcome, Failure> {
    let mut p = Params::new();
    for kv in params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| InputError::new(format!("--param expects key=value, got `{kv}`")))?;
        p.insert(k.trim().to_string(), v.trim().to_string());
    }
    let e = catalog::make(family, &p)?;
    let mut json = e.curve.form().to_json();
    if with_seeds {
        json["seeds"] = Value::Array(
            e.seeds
                .iter()
                .map(|s| {
                    Value::Array(
                        s.coords()
                            .iter()
                            .map(|x| Value::String(x.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        );
    }
    Ok(Outcome {
        text: serde_json::to_string_pretty(&json).expect("plain data"),
        json,
        ok: true,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Analyze { curve, seeds, cap } => analyze(curve, seeds, *cap),
        Command::Smooth { curve } => smooth(curve),
        Command::Point { curve, point: p } => point(curve, p),
        Command::Profile { curve, line } => profile(curve, line),
        Command::Closure {
            curve,
            generators,
            cap,
        } => group(curve, generators, *cap),
        Command::VerifyPaper {
            cases,
            list,
            strict,
            threads,
            seed,
            starts,
            skip_oracle,
        } => verify_paper(
            cases,
            *list,
            *strict,
            *threads,
            OracleSettings {
                seed: *seed,
                starts: *starts,
                ..OracleSettings::default()
            },
            *skip_oracle,
        ),
        Command::OracleCensus {
            curve,
            order,
            seed,
            starts,
            tol,
            cluster_tol,
        } => oracle_census(
            curve,
            *order,
            OracleSettings {
                seed: *seed,
                starts: *starts,
                residual_tol: *tol,
                cluster_tol: *cluster_tol,
                ..OracleSettings::default()
            },
        ),
        Command::Export {
            family,
            params,
            seeds,
        } => export(family, params, *seeds),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.format == Format::Json;
    match run(&cli) {
        Ok(o) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("plain data")
                );
            } else {
                println!("{}", o.text);
            }
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(Failure::Input(e)) => {
            if json {
                println!("{}", e.to_json());
            } else {
                eprintln!("{}", e.render());
            }
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            let kind = if matches!(e, Error::NotSmooth) {
                "singular"
            } else {
                "computation"
            };
            if json {
                println!(
                    "{}",
                    json!({"error": {"kind": kind, "message": e.to_string()}})
                );
            } else if matches!(e, Error::NotSmooth) {
                println!("singular");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
