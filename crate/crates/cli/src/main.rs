//! `sgff`: runs the verification suites and prints towers, words and tables.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sgff_core::fermions::{apply_bare_determinant, FermionWord, Variant, WordContext};
use sgff_core::pairing::omega_polynomial;
use sgff_core::scalars::{parse_rational, AlphaLine, Consts, Rational};
use sgff_core::suite::{run_suite, Config, SuiteReport, Verdict};
use sgff_core::towers::{Layout, ShiftedPrimary, Tower, TowerComponent};
use sgff_core::virasoro::{null_table, NullTableRow};
use sgff_core::SgffError;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sgff", version, about = "Exact checks for tower/fermion form-factor identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite: towers, exact-residue, fermions, pairing, nullvec, bethe, virasoro or all.
    Verify {
        suite: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print a tower (`M0`, `M1`, `M-1`, ...), a fermion word on M0, or `omega`.
    Show {
        object: String,
        #[command(flatten)]
        opts: Opts,
        /// Particle-pair number of the component to print.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Print a data table.
    Table {
        #[arg(value_parser = ["null"])]
        which: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Clone, Default)]
struct Opts {
    /// key=value file with defaults for the options below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    precision_bits: Option<u32>,
    #[arg(long)]
    level_max: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

fn usage(msg: impl Into<String>) -> SgffError {
    SgffError::Usage(msg.into())
}

fn read_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>, SgffError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, SgffError> {
    v.parse().map_err(|_| usage(format!("bad value for {key}: {v}")))
}

fn parse_format(v: &str) -> Result<Format, SgffError> {
    Format::from_str(v, true).map_err(|_| usage(format!("format must be json, csv or text, got {v}")))
}

/// Defaults, then the config file, then the flags.
fn resolve(opts: &Opts) -> Result<(Config, Format), SgffError> {
    let mut cfg = Config::default();
    let mut format = Format::Text;
    if let Some(path) = &opts.config {
        for (k, v) in read_config_file(path)? {
            match k.as_str() {
                "nu" => cfg.nu = parse_rational(&v)?,
                "alpha" => cfg.alpha = Some(parse_rational(&v)?),
                "n_max" => cfg.n_max = parse_num(&k, &v)?,
                "order" => cfg.order = parse_num(&k, &v)?,
                "samples" => cfg.samples = parse_num(&k, &v)?,
                "seed" => cfg.seed = parse_num(&k, &v)?,
                "precision_bits" => cfg.precision_bits = parse_num(&k, &v)?,
                "level_max" => cfg.level_max = parse_num(&k, &v)?,
                "format" => format = parse_format(&v)?,
                _ => return Err(usage(format!("unknown config key `{k}`"))),
            }
        }
    }
    if let Some(v) = &opts.nu {
        cfg.nu = parse_rational(v)?;
    }
    if let Some(v) = &opts.alpha {
        cfg.alpha = Some(parse_rational(v)?);
    }
    cfg.n_max = opts.n_max.unwrap_or(cfg.n_max);
    cfg.order = opts.order.unwrap_or(cfg.order);
    cfg.samples = opts.samples.unwrap_or(cfg.samples);
    cfg.seed = opts.seed.unwrap_or(cfg.seed);
    cfg.precision_bits = opts.precision_bits.unwrap_or(cfg.precision_bits);
    cfg.level_max = opts.level_max.unwrap_or(cfg.level_max);
    format = opts.format.unwrap_or(format);
    cfg.validate()?;
    Ok((cfg, format))
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, SgffError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| SgffError::Structure(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| SgffError::Structure(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Error => "ERROR",
    }
}

fn render_report(r: &SuiteReport, format: Format) -> Result<String, SgffError> {
    Ok(match format {
        Format::Json => json_string(r),
        Format::Csv => {
            let rows = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.id.clone(),
                        verdict_word(c.verdict).to_lowercase(),
                        c.anchor.clone(),
                        c.params.nu.clone(),
                        c.params.alpha.clone(),
                        c.params.n.map(|n| n.to_string()).unwrap_or_default(),
                        c.params.seed.to_string(),
                        c.params.order.map(|o| o.to_string()).unwrap_or_default(),
                        c.witness_hash.clone(),
                        format!("{:.3}", c.wall_ms),
                        c.detail.clone(),
                    ]
                })
                .collect();
            let header = ["id", "verdict", "anchor", "nu", "alpha", "n", "seed", "order", "witness_hash", "wall_ms", "detail"];
            csv_string(&header, rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for c in &r.checks {
                s += &format!("{:<5} {:<40} {:>9.1} ms  {}\n", verdict_word(c.verdict), c.id, c.wall_ms, c.detail);
            }
            let a = &r.aggregate;
            s += &format!(
                "{}: {} checks, {} passed, {} failed, {} errors in {:.1} ms\n",
                r.suite, a.total, a.passed, a.failed, a.errors, a.wall_ms
            );
            s
        }
    })
}

#[derive(Serialize)]
struct Shown {
    object: String,
    components: Vec<TowerComponent<Rational>>,
    note: Option<String>,
}

fn show(object: &str, n: usize, cfg: &Config) -> Result<Shown, SgffError> {
    if object == "omega" {
        if n == 0 {
            return Err(usage("omega needs n >= 1"));
        }
        let lay = Layout::new(n, 2 * n, 1, 1);
        let c = omega_polynomial(&lay, n, lay.z[0], lay.x[0], &lay.formal_roots(n), &cfg.nu)?;
        return Ok(Shown { object: object.into(), components: vec![c], note: None });
    }
    if let Some(m) = object.strip_prefix('M') {
        let m: i64 = m.parse().map_err(|_| usage(format!("tower names look like M0, M1, M-1; got {object}")))?;
        let lay = Layout::new(n.max(1), 2 * n.max(1), 0, 0);
        let t = Tower::<Rational>::from_source(&ShiftedPrimary { m }, &lay, n, object)?;
        return Ok(Shown { object: object.into(), components: t.components.into_values().collect(), note: None });
    }
    let word = FermionWord::parse(object).map_err(|e| usage(e.to_string()))?;
    if word.is_bare() {
        let lay = Layout::for_words(n.max(1), word.factors.len());
        let c = apply_bare_determinant(&lay, &word, &lay.formal_roots(n), &cfg.nu)?;
        return Ok(Shown { object: word.to_string(), components: vec![c], note: None });
    }
    let consts = Consts::<Rational>::generic(&cfg.nu, AlphaLine::Generic, cfg.seed);
    let lay = Layout::for_words(n.max(1), word.factors.len());
    let ctx = WordContext::new(&lay, lay.formal_roots(n), &consts, cfg.order)?;
    let c = ctx.apply_determinant(&word, Variant::Dressed)?;
    let note = format!("coupling constants drawn at random from seed {}", cfg.seed);
    Ok(Shown { object: word.to_string(), components: vec![c], note: Some(note) })
}

fn render_shown(s: &Shown, format: Format) -> Result<String, SgffError> {
    Ok(match format {
        Format::Json => json_string(s),
        Format::Csv => {
            let rows =
                s.components.iter().map(|c| vec![c.l.to_string(), c.n.to_string(), c.num.to_string(), c.den.to_string()]).collect();
            csv_string(&["l", "n", "numerator", "denominator"], rows)?
        }
        Format::Text => {
            let mut out = format!("{}\n", s.object);
            if let Some(note) = &s.note {
                out += &format!("({note})\n");
            }
            for c in &s.components {
                out += &format!("  l = {}, n = {}:\n    ({})\n    / ({})\n", c.l, c.n, c.num, c.den);
            }
            out
        }
    })
}

fn render_table(rows: &[NullTableRow], format: Format) -> Result<String, SgffError> {
    Ok(match format {
        Format::Json => json_string(&rows),
        Format::Csv => {
            let mut out = Vec::new();
            for r in rows {
                for v in &r.vectors {
                    out.push(vec![r.module.to_string(), r.m.to_string(), r.level.to_string(), v.to_string()]);
                }
            }
            csv_string(&["module", "m", "level", "vector"], out)?
        }
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                let v: Vec<String> = r.vectors.iter().map(|v| v.to_string()).collect();
                out += &format!("W{:<2} level {:<2} {}\n", r.module, r.level, v.join(" ;  "));
            }
            out
        }
    })
}

fn run(cli: Cli) -> Result<bool, SgffError> {
    match cli.command {
        Command::Verify { suite, opts } => {
            let (cfg, format) = resolve(&opts)?;
            let report = run_suite(&suite, &cfg)?;
            print!("{}", render_report(&report, format)?);
            Ok(report.passed())
        }
        Command::Show { object, opts, n } => {
            let (cfg, format) = resolve(&opts)?;
            print!("{}", render_shown(&show(&object, n, &cfg)?, format)?);
            Ok(true)
        }
        Command::Table { opts, .. } => {
            let (cfg, format) = resolve(&opts)?;
            let rows = null_table(cfg.level_max).map_err(|e| match e {
                SgffError::Unsupported(m) => usage(m),
                e => e,
            })?;
            print!("{}", render_table(&rows, format)?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ SgffError::Usage(_)) => {
            eprintln!("sgff: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("sgff: {e}");
            ExitCode::from(1)
        }
    }
}
