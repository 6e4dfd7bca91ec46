//! `ibeta`: command-line front end for the kneading, classification and
//! transitivity computations.
//!
//! Exit codes: 0 success, 2 malformed input, 3 parameters outside the domain,
//! 4 I/O failure.

mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ibeta::constructions::{family_beta, family_params, family_polynomial, verify_family, xi_word, FamilyIndex};
use ibeta::dynamics::{kneading_pair, project, Expansion, KneadingResult, Variant};
use ibeta::exactnum::{isolate_roots, parse_field_element, parse_int_poly, parse_interval, Field};
use ibeta::scan::{scan, to_csv, to_svg, Grid};
use ibeta::shifts::{classify, classify_extended};
use ibeta::spectra::{perron_check, pisot_check, pm1_witness_search};
use ibeta::transitivity::{transitivity_verdict, Basis};
use ibeta::{EPWord, Params, DEFAULT_MAX_ITER};
use serde_json::{json, Map, Value};

use crate::config::Config;

/// Longest prefix printed for an expansion that was not certified periodic.
const PREFIX_SHOWN: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "ibeta", version, about = "Intermediate β-transformations in exact arithmetic")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Defining polynomial of β in x, e.g. "x^2-x-1" or "5x-9".
    #[arg(long, global = true)]
    beta_poly: Option<String>,
    /// Isolating interval "lo,hi" for β (default 1,2).
    #[arg(long, global = true)]
    beta_interval: Option<String>,
    /// α as a polynomial in b (the symbol for β), e.g. "5-3*b".
    #[arg(long, global = true)]
    alpha_expr: Option<String>,
    /// Orbit length cap for kneading computations.
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Emit JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// key=value file supplying defaults for the options above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kneading invariants τ±(p).
    Kneading,
    /// Finite-type classification of Ω and Ω̃.
    Classify,
    /// Transitivity verdict from the regions D_{k,n}.
    Transitive,
    /// The family member (β_{n,k}, α_{n,k}) and its checks.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// π_{β,α} of an eventually periodic word such as "100(10)".
    Project {
        #[arg(long)]
        word: String,
    },
    /// Pisot/Perron checks and a {−1,0,1}-polynomial witness for β.
    Pm1 {
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
    },
    /// Transitivity scan of Δ written as CSV or SVG.
    Scan {
        #[arg(long, default_value_t = 200)]
        beta_steps: usize,
        #[arg(long, default_value_t = 200)]
        alpha_steps: usize,
        /// β range "lo,hi".
        #[arg(long, default_value = "1,2")]
        beta_range: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Domain(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

/// Options after merging flags over the config file over defaults.
struct Settings {
    beta_poly: Option<String>,
    beta_interval: String,
    alpha_expr: Option<String>,
    max_iter: usize,
}

impl Settings {
    fn resolve(common: &Common) -> Result<Settings, CliError> {
        let cfg = match &common.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                Config::parse(&text).map_err(CliError::Parse)?
            }
            None => Config::default(),
        };
        let max_iter = match (common.max_iter, cfg.get("max-iter")) {
            (Some(n), _) => n,
            (None, Some(s)) => s.parse().map_err(|_| CliError::Parse(format!("max-iter: not a count: {s}")))?,
            (None, None) => DEFAULT_MAX_ITER,
        };
        Ok(Settings {
            beta_poly: common.beta_poly.clone().or_else(|| cfg.get("beta-poly").map(str::to_owned)),
            beta_interval: common
                .beta_interval
                .clone()
                .or_else(|| cfg.get("beta-interval").map(str::to_owned))
                .unwrap_or_else(|| "1,2".into()),
            alpha_expr: common.alpha_expr.clone().or_else(|| cfg.get("alpha-expr").map(str::to_owned)),
            max_iter,
        })
    }

    fn field(&self) -> Result<Field, CliError> {
        let src = self.beta_poly.as_deref().ok_or_else(|| CliError::Parse("--beta-poly is required".into()))?;
        let poly = parse_int_poly(src).map_err(|e| CliError::Parse(format!("--beta-poly: {e}")))?;
        let range = parse_interval(&self.beta_interval).map_err(|e| CliError::Parse(format!("--beta-interval: {e}")))?;
        let roots = isolate_roots(&poly, &range);
        match roots.len() {
            1 => Ok(Field::new(roots.into_iter().next().expect("one root"))),
            n => Err(CliError::Domain(format!("{poly} has {n} roots in [{}], need exactly one", self.beta_interval))),
        }
    }

    fn params(&self) -> Result<Params, CliError> {
        let field = self.field()?;
        let src = self.alpha_expr.as_deref().ok_or_else(|| CliError::Parse("--alpha-expr is required".into()))?;
        let alpha = parse_field_element(src, &field).map_err(|e| CliError::Parse(format!("--alpha-expr: {e}")))?;
        Params::new(&field, alpha).map_err(|e| CliError::Domain(e.to_string()))
    }
}

fn expansion_text(e: &Expansion) -> String {
    match e {
        Expansion::Eventual(w) => w.to_string(),
        Expansion::Prefix(p) => format!("{}...", p.prefix(PREFIX_SHOWN.min(p.len()))),
    }
}

fn kneading_fields(out: &mut Map<String, Value>, tag: &str, r: &KneadingResult) {
    out.insert(tag.into(), json!(expansion_text(&r.expansion)));
    out.insert(format!("{tag}_status"), json!(r.status.to_string()));
    out.insert(format!("{tag}_orbit_len"), json!(r.orbit_len));
    out.insert(format!("{tag}_cycle_len"), json!(r.cycle_len));
}

fn params_fields(out: &mut Map<String, Value>, params: &Params) {
    out.insert("beta_poly".into(), json!(params.field().defining().to_string()));
    out.insert("beta_approx".into(), json!(params.beta().to_f64()));
    out.insert("alpha".into(), json!(params.alpha().to_string()));
    out.insert("alpha_approx".into(), json!(params.alpha().to_f64()));
}

fn run(cli: &Cli) -> Result<Option<Value>, CliError> {
    let settings = Settings::resolve(&cli.common)?;
    let mut out = Map::new();
    match &cli.command {
        Command::Kneading => {
            let params = settings.params()?;
            params_fields(&mut out, &params);
            out.insert("p".into(), json!(params.p().to_string()));
            let (minus, plus) = kneading_pair(&params, settings.max_iter);
            kneading_fields(&mut out, "tau_minus", &minus);
            kneading_fields(&mut out, "tau_plus", &plus);
        }
        Command::Classify => {
            let params = settings.params()?;
            let cls = classify(&params, settings.max_iter).map_err(|e| CliError::Domain(e.to_string()))?;
            out.insert("verdict".into(), json!(cls.verdict.to_string()));
            out.insert("memory".into(), json!(cls.memory));
            let forbidden = cls.forbidden.map(|ws| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>());
            out.insert("forbidden".into(), json!(forbidden));
            let extended = classify_extended(&params, settings.max_iter).map_err(|e| CliError::Domain(e.to_string()))?;
            out.insert("extended_verdict".into(), json!(extended.verdict.to_string()));
        }
        Command::Transitive => {
            let params = settings.params()?;
            let v = transitivity_verdict(&params);
            out.insert("transitive".into(), json!(v.transitive));
            out.insert("region".into(), json!(v.witness.map(|r| r.to_string())));
            let basis = match v.basis {
                Basis::RegionMembership => "region_membership",
                Basis::CompleteClassification => "complete_classification",
            };
            out.insert("basis".into(), json!(basis));
        }
        Command::Construct { n, k } => {
            let idx = FamilyIndex::new(*n, *k).map_err(|e| CliError::Domain(e.to_string()))?;
            let params = family_params(idx);
            let beta = family_beta(idx);
            out.insert("n".into(), json!(n));
            out.insert("k".into(), json!(k));
            out.insert("beta_poly".into(), json!(family_polynomial(idx).to_string()));
            out.insert("beta_interval".into(), json!(format!("{},{}", beta.lo(), beta.hi())));
            out.insert("beta_approx".into(), json!(beta.to_f64()));
            out.insert("alpha".into(), json!(params.alpha().to_string()));
            out.insert("alpha_approx".into(), json!(params.alpha().to_f64()));
            out.insert("period".into(), json!(idx.period()));
            out.insert("xi_minus".into(), json!(xi_word(idx, Variant::Minus).to_string()));
            out.insert("xi_plus".into(), json!(xi_word(idx, Variant::Plus).to_string()));
            let r = verify_family(idx);
            out.insert("self_admissible".into(), json!(r.self_admissible));
            out.insert("maximal_root".into(), json!(r.maximal_root));
            out.insert("projection_half".into(), json!(r.projection_half));
            out.insert("substitution".into(), json!(r.substitution));
        }
        Command::Project { word } => {
            let params = settings.params()?;
            let w: EPWord = word.parse().map_err(|e| CliError::Parse(format!("--word: {e}")))?;
            let x = project(&params, &w);
            out.insert("word".into(), json!(w.to_string()));
            out.insert("value".into(), json!(x.to_string()));
            out.insert("approx".into(), json!(x.to_f64()));
        }
        Command::Pm1 { max_degree } => {
            let field = settings.field()?;
            let poly = field.defining().clone();
            out.insert("beta_poly".into(), json!(poly.to_string()));
            out.insert("beta_approx".into(), json!(field.root().to_f64()));
            let witness = pm1_witness_search(field.root(), *max_degree);
            out.insert("witness".into(), json!(witness.map(|p| p.to_string())));
            out.insert("pisot".into(), json!(pisot_check(&poly).map(|v| format!("{v:?}")).ok()));
            out.insert("perron".into(), json!(perron_check(&poly).map(|v| format!("{v:?}")).ok()));
        }
        Command::Scan { beta_steps, alpha_steps, beta_range, format, output } => {
            let range = parse_interval(beta_range).map_err(|e| CliError::Parse(format!("--beta-range: {e}")))?;
            let one = num_rational::BigRational::from_integer(1.into());
            let two = num_rational::BigRational::from_integer(2.into());
            if *beta_steps < 2 || *alpha_steps < 2 {
                return Err(CliError::Parse("a grid needs at least 2 cells per axis".into()));
            }
            if range.lo() < &one || range.hi() > &two || range.lo() >= range.hi() {
                return Err(CliError::Domain("--beta-range must be a nonempty part of [1, 2]".into()));
            }
            let grid = Grid::new(range.lo().clone(), range.hi().clone(), *beta_steps, *alpha_steps);
            let cells = scan(&grid);
            let body = match format {
                Format::Csv => to_csv(&cells),
                Format::Svg => to_svg(&grid, &cells),
            };
            match output {
                Some(path) => fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
                None => print!("{body}"),
            }
            return Ok(None);
        }
    }
    Ok(Some(Value::Object(out)))
}

fn render_text(value: &Value) -> String {
    let Value::Object(map) = value else {
        return value.to_string();
    };
    map.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}: {s}\n"),
            other => format!("{k}: {other}\n"),
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(value)) => {
            if cli.common.json {
                println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
            } else {
                print!("{}", render_text(&value));
            }
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ibeta: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
