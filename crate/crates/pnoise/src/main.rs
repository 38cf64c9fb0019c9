use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pnoise::{
    barcode_csv, build_h0, default_prime, fcf_csv, fcf_svg, parse_fcf_csv, parse_module, parse_rational, parse_rational_list,
    parse_t_values, write_denoised, write_module, BifiltrationInput, FormatError, H0Error, Metric,
};
use pnoise_core::barcode1::{decompose, BarcodeError};
use pnoise_core::denoise::{quotient_denoise, subfunctor_denoise, DenoiseError};
use pnoise_core::exactalg::{int, PrimeField, Rational};
use pnoise_core::fcf::{bar_search, fcf_interleaving_distance, Engine, FcfError, FeatureCountingFunction};
use pnoise_core::gridmod::GridModule;
use pnoise_core::noise::{NoiseError, NoiseSpec};
use pnoise_core::structure::{betti0, rank, support};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pnoise", version, about = "Noise systems and feature counting for multiparameter persistence modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Exact,
    Orbit,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Quotient,
    Subfunctor,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a module file.
    Validate { file: PathBuf },
    /// Print rank, support and Betti numbers.
    Info { file: PathBuf },
    /// Barcode of a one-parameter module as `start,end` rows.
    Barcode { file: PathBuf },
    /// Feature counting function `t -> bar(F)_t`.
    Fcf {
        file: PathBuf,
        #[arg(long)]
        noise: String,
        /// Values to sample, `0,1/2,1` or `start:end:step`. Prints a
        /// `t,value,exact` table instead of the step function.
        #[arg(long)]
        t: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
    },
    /// Interleaving distance between two feature counting functions.
    DistanceFcf { f: PathBuf, g: PathBuf },
    /// Denoise at `t` and print the resulting module.
    Denoise {
        file: PathBuf,
        #[arg(long)]
        noise: String,
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value = "quotient")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
    },
    /// Build the H0 module of a Rips bifiltration.
    BuildH0 {
        /// One point per line, comma separated coordinates.
        #[arg(long, conflicts_with = "distances", required_unless_present = "distances")]
        points: Option<PathBuf>,
        /// A symmetric distance matrix, one row per line.
        #[arg(long)]
        distances: Option<PathBuf>,
        /// One density value per point, one per line or comma separated.
        #[arg(long)]
        density: Option<PathBuf>,
        #[arg(long)]
        scales: String,
        #[arg(long, default_value = "0")]
        densities: String,
        #[arg(long, default_value = "1")]
        alpha: String,
    },
    /// Render a feature counting function as SVG or CSV. The input is a
    /// `t,value` table, or a module when `--noise` is given.
    Export {
        file: PathBuf,
        #[arg(long, conflicts_with = "csv", required_unless_present = "csv")]
        svg: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        noise: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

struct CliError {
    code: &'static str,
    message: String,
    location: String,
}

impl CliError {
    fn new(code: &'static str, message: impl ToString, location: impl ToString) -> Self {
        CliError { code, message: message.to_string(), location: location.to_string() }
    }

    fn exit(&self) -> u8 {
        match self.code {
            "parse" => 2,
            "validation" => 3,
            "resource" => 4,
            _ => 1,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        let code = match e {
            FormatError::Parse { .. } => "parse",
            FormatError::Validation(_) => "validation",
        };
        CliError::new(code, &e, e.location())
    }
}

impl From<NoiseError> for CliError {
    fn from(e: NoiseError) -> Self {
        let code = match e {
            NoiseError::Parse(_) => "parse",
            NoiseError::ElementEnumerationTooLarge { .. } => "resource",
            NoiseError::InvalidSpec(_) | NoiseError::DimensionMismatch { .. } => "validation",
            _ => "error",
        };
        CliError::new(code, e, "")
    }
}

impl From<FcfError> for CliError {
    fn from(e: FcfError) -> Self {
        match e {
            FcfError::Noise(n) => n.into(),
            FcfError::SearchSpaceTooLarge { .. } | FcfError::NatSpaceTooLarge { .. } => CliError::new("resource", e, ""),
            FcfError::NotOneDimensional(_) => CliError::new("validation", e, ""),
            _ => CliError::new("error", e, ""),
        }
    }
}

impl From<DenoiseError> for CliError {
    fn from(e: DenoiseError) -> Self {
        match e {
            DenoiseError::Fcf(f) => f.into(),
            DenoiseError::Noise(n) => n.into(),
            DenoiseError::NotNested { .. } => CliError::new("error", e, ""),
        }
    }
}

impl From<BarcodeError> for CliError {
    fn from(e: BarcodeError) -> Self {
        CliError::new("validation", e, "")
    }
}

impl From<H0Error> for CliError {
    fn from(e: H0Error) -> Self {
        CliError::new("validation", e, "")
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new("io", e, path.display()))
}

fn load(path: &Path) -> Result<GridModule, CliError> {
    let text = read(path)?;
    let prime = default_prime()?;
    parse_module(&text, prime).map_err(|e| {
        let mut err = CliError::from(e);
        err.location = format!("{}:{}", path.display(), err.location);
        err
    })
}

fn noise(spec: &str) -> Result<NoiseSpec, CliError> {
    Ok(spec.parse::<NoiseSpec>()?)
}

fn engine(e: EngineArg) -> Engine {
    match e {
        EngineArg::Exact => Engine::Exhaustive,
        EngineArg::Orbit => Engine::GeneratorOrbit,
        EngineArg::Auto => Engine::Auto,
    }
}

fn arg_parse<T>(r: Result<T, String>, what: &str) -> Result<T, CliError> {
    r.map_err(|e| CliError::new("parse", e, what))
}

fn show_point(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn info(f: &GridModule) -> String {
    let mut out = format!(
        "prime {}\nr {}\nalpha {}\nbox {}\ntotal_dim {}\nrank {}\n",
        f.field().p(),
        f.r(),
        f.alpha(),
        f.size(),
        f.total_dim(),
        rank(f)
    );
    let supp: Vec<String> = support(f).iter().map(|v| show_point(v)).collect();
    out.push_str(&format!("support {}\n", supp.join(" ")));
    let a = f.alpha();
    let betti: Vec<String> = betti0(f)
        .into_iter()
        .map(|(v, b)| {
            let q: Vec<Rational> = v.iter().map(|&x| a * Rational::from_integer(x as i64)).collect();
            format!("{}:{b}", show_point(&q))
        })
        .collect();
    out.push_str(&format!("betti0 {}\n", betti.join(" ")));
    out
}

fn read_rows(path: &Path) -> Result<Vec<Vec<Rational>>, CliError> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'))
        .map(|(i, l)| parse_rational_list(l).map_err(|e| CliError::new("parse", e, format!("{}:line {}", path.display(), i + 1))))
        .collect()
}

fn fcf_of(file: &Path, spec: &str, e: EngineArg) -> Result<pnoise_core::fcf::BarSearch, CliError> {
    let f = load(file)?;
    Ok(bar_search(&noise(spec)?, &f, &[], engine(e))?)
}

fn load_fcf(path: &Path) -> Result<FeatureCountingFunction, CliError> {
    parse_fcf_csv(&read(path)?).map_err(|e| CliError::new("parse", e, path.display()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { file } => {
            load(&file)?;
            Ok("ok\n".into())
        }
        Command::Info { file } => Ok(info(&load(&file)?)),
        Command::Barcode { file } => Ok(barcode_csv(&decompose(&load(&file)?)?)),
        Command::Fcf { file, noise: spec, t, engine: e } => {
            let f = load(&file)?;
            let t_values = match &t {
                Some(t) => arg_parse(parse_t_values(t), "--t")?,
                None => Vec::new(),
            };
            let search = bar_search(&noise(&spec)?, &f, &t_values, engine(e))?;
            if t.is_none() {
                return Ok(fcf_csv(&search));
            }
            let mut out = String::from("t,value,exact\n");
            for s in &search.samples {
                if t_values.contains(&s.t) {
                    out.push_str(&format!("{},{},{}\n", s.t, s.value, s.exact));
                }
            }
            Ok(out)
        }
        Command::DistanceFcf { f, g } => Ok(format!("{}\n", fcf_interleaving_distance(&load_fcf(&f)?, &load_fcf(&g)?))),
        Command::Denoise { file, noise: spec, t, mode, engine: e } => {
            let f = load(&file)?;
            let t = arg_parse(parse_rational(&t), "--t")?;
            let spec = noise(&spec)?;
            let d = match mode {
                ModeArg::Quotient => quotient_denoise(&spec, &f, t)?,
                ModeArg::Subfunctor => subfunctor_denoise(&spec, &f, t, engine(e))?,
            };
            Ok(write_denoised(&d))
        }
        Command::BuildH0 { points, distances, density, scales, densities, alpha } => {
            let metric = match (points, distances) {
                (Some(p), _) => Metric::Points(read_rows(&p)?),
                (None, Some(d)) => Metric::Distances(read_rows(&d)?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let density = match density {
                Some(p) => read_rows(&p)?.concat(),
                None => Vec::new(),
            };
            let input = BifiltrationInput {
                metric,
                density,
                scale_grid: arg_parse(parse_t_values(&scales), "--scales")?,
                density_grid: arg_parse(parse_t_values(&densities), "--densities")?,
            };
            let alpha = arg_parse(parse_rational(&alpha), "--alpha")?;
            if alpha <= int(0) {
                return Err(CliError::new("validation", "alpha must be positive", "--alpha"));
            }
            let field = PrimeField::new(default_prime()?).map_err(|e| CliError::new("validation", e, pnoise::FIELD_ENV))?;
            Ok(write_module(&build_h0(field, alpha, &input)?))
        }
        Command::Export { file, svg, csv: _, noise: spec, engine: e, out } => {
            let (function, text) = match &spec {
                Some(spec) => {
                    let search = fcf_of(&file, spec, e)?;
                    let text = fcf_csv(&search);
                    (search.function, text)
                }
                None => {
                    let f = load_fcf(&file)?;
                    let text = pnoise::table::steps_csv(&f);
                    (f, text)
                }
            };
            let title = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let rendered = if svg { fcf_svg(&function, &title) } else { text };
            match out {
                Some(path) => {
                    fs::write(&path, rendered).map_err(|e| CliError::new("io", e, path.display()))?;
                    Ok(String::new())
                }
                None => Ok(rendered),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({ "code": e.code, "message": e.message, "location": e.location }));
            ExitCode::from(e.exit())
        }
    }
}
