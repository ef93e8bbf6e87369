use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fanshift::experiments::{self, ExperimentError, RunParams};
use fanshift::quotients::AParam;
use fanshift::render::{render, Figure, RenderError, RenderOptions};
use fanshift::report;

#[derive(Parser, Debug)]
#[command(name = "fanshift", version, about = "Shift dynamics on Mahavier products and their quotient fans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write an SVG figure.
    Render {
        /// fig1, fig2, fig3, fig4, fig5, fig6 or glue
        figure: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        /// Parameter for the gluing diagram, e.g. 1,4,5
        #[arg(long)]
        a: Option<String>,
    },
    /// Run a verification experiment and emit a JSON report.
    Verify(VerifyArgs),
    /// Print the JSON schema of reports.
    Schema,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// decomposition, diam, cantor, impression, product, hlavna, quotient, juma, distinguish or orbit
    name: String,
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    /// A decimal or a fraction such as 1/16
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "seed-t")]
    seed_t: Option<f64>,
    /// A decimal or a fraction such as 1/1024
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Plain key=value file; flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Where to write the report; stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Record wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_ratio(key: &str, s: &str) -> Result<f64> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| usage(format!("{key}: cannot parse {s:?}")))?;
            let d: f64 = d.trim().parse().map_err(|_| usage(format!("{key}: cannot parse {s:?}")))?;
            n / d
        }
        None => s.parse().map_err(|_| usage(format!("{key}: cannot parse {s:?}")))?,
    };
    Ok(v)
}

fn parse_a(key: &str, s: &str) -> Result<AParam> {
    s.parse().map_err(|e| usage(format!("{key}: {e}")))
}

fn parse_num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| usage(format!("{key}: cannot parse {s:?}")))
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(usage(format!("{}:{}: expected key=value", path.display(), i + 1)));
        };
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

/// Flags, then the config file, then `FANSHIFT_SEED`, then defaults.
fn resolve(args: &VerifyArgs) -> Result<RunParams> {
    let mut cfg = match &args.config {
        Some(p) => read_config(p)?,
        None => BTreeMap::new(),
    };
    let mut p = RunParams::default();
    macro_rules! num {
        ($field:ident, $key:literal) => {
            let from_file = cfg.remove($key).map(|s| parse_num($key, &s)).transpose()?;
            p.$field = args.$field.or(from_file);
        };
    }
    num!(kmax, "kmax");
    num!(samples, "samples");
    num!(depth, "depth");
    num!(window, "window");
    num!(seed_t, "seed_t");
    num!(seed, "seed");
    if p.seed.is_none() {
        if let Ok(s) = std::env::var("FANSHIFT_SEED") {
            p.seed = Some(parse_num("FANSHIFT_SEED", &s)?);
        }
    }
    let text = |flag: &Option<String>, key: &str, cfg: &mut BTreeMap<String, String>| {
        let from_file = cfg.remove(key);
        flag.clone().or(from_file)
    };
    p.eps = text(&args.eps, "eps", &mut cfg).map(|s| parse_ratio("eps", &s)).transpose()?;
    p.grid = text(&args.grid, "grid", &mut cfg).map(|s| parse_ratio("grid", &s)).transpose()?;
    p.a = text(&args.a, "a", &mut cfg).map(|s| parse_a("a", &s)).transpose()?;
    p.b = text(&args.b, "b", &mut cfg).map(|s| parse_a("b", &s)).transpose()?;
    if let Some(k) = cfg.keys().next() {
        return Err(usage(format!("unknown config key {k:?}")));
    }
    Ok(p)
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let params = resolve(args)?;
    let start = Instant::now();
    let mut r = experiments::run(&args.name, &params).map_err(|e| match e {
        ExperimentError::Unknown(_) | ExperimentError::BadParam(_) => usage(e.to_string()),
    })?;
    if args.timings {
        r.timings = Some(BTreeMap::from([("total".to_string(), start.elapsed().as_secs_f64())]));
    }
    let json = r.to_json();
    match &args.report {
        Some(path) => write_out(path, &json)?,
        None => print!("{json}"),
    }
    eprintln!("{}: {}", r.name, if r.pass { "pass" } else { "FAIL" });
    Ok(r.pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Render { figure, out, depth, a } => {
            let fig: Figure = figure.parse().map_err(|e: RenderError| usage(e.to_string()))?;
            let mut opts = RenderOptions::default();
            if let Some(d) = depth {
                opts.depth = d;
            }
            if let Some(a) = a {
                opts.a = parse_a("a", &a)?;
            }
            let svg = render(fig, &opts).map_err(|e| match e {
                RenderError::UnknownFigure(_) | RenderError::BadDepth { .. } => usage(e.to_string()),
                other => anyhow::Error::new(other),
            })?;
            write_out(&out, &svg)?;
            Ok(true)
        }
        Command::Verify(args) => verify(&args),
        Command::Schema => {
            print!("{}", report::schema_text());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
