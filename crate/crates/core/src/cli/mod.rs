//! The `fuzzdiag` command line.
//!
//! Exit codes: 0 on success (an undefined diagnosis included), 1 for usage
//! errors, 2 for unreadable or malformed data.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{ConfigOverrides, PipelineConfig};
use crate::error::Error;
use crate::fixture::{generate, FixtureSpec, Geometry};
use crate::harness::{bench_diagnose, bench_inputs, compare_families, run_experiment, synthetic_rule_base, Comparison};
use crate::intervalgebra::compile;
use crate::model::DiagnosticModel;
use crate::vibdata::{
    class_distribution, extract_intervals, extract_intervals_per_position, read_frames, write_csv, write_ndjson,
    DataFormat, StateIntervalTable,
};

#[derive(Debug, Parser)]
#[command(name = "fuzzdiag", version, about = "Fuzzy machine state diagnosis from vibration RMS intervals")]
pub struct Cli {
    /// `key = value` file with pipeline settings; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(flatten)]
    pub knobs: Knobs,

    #[command(subcommand)]
    pub command: Command,
}

/// Settings that may also come from the config file.
#[derive(Debug, Default, Args)]
pub struct Knobs {
    /// Membership family: trap, tri or gauss.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Gaussian sigma as interval width over this divisor.
    #[arg(long, global = true)]
    pub sigma_divisor: Option<f64>,
    /// Trapezoid shoulder as a fraction of interval width.
    #[arg(long, global = true)]
    pub shoulder: Option<f64>,
    /// Points on the output universe grid.
    #[arg(long, global = true)]
    pub grid_points: Option<usize>,
    /// Probe offset from interval ends, as a fraction of width.
    #[arg(long, global = true)]
    pub probe_offset: Option<f64>,
    /// Firing strengths below this count as zero.
    #[arg(long, global = true)]
    pub activation_floor: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Md,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract per-state RMS intervals from labelled frames (NDJSON or CSV).
    Extract {
        /// Input frames; defaults to `data` from the config file.
        data: Option<PathBuf>,
        /// Output table; printed to stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write one table per sensor position (`<out>.P1.json`, ...).
        #[arg(long, requires = "out")]
        per_position: bool,
    },
    /// Compile an interval table into a rule base with membership families.
    Compile {
        table: PathBuf,
        /// Output rule base; defaults to `rulebase` from the config file, else stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Diagnose one crisp input pair.
    #[command(allow_negative_numbers = true)]
    Diagnose {
        /// Rule base file; defaults to `rulebase` from the config file.
        rulebase: Option<PathBuf>,
        #[arg(long = "xv")]
        x_v: f64,
        #[arg(long = "xg")]
        x_g: f64,
    },
    /// Run the probe experiment on an interval table.
    Experiment {
        table: PathBuf,
        /// Only run the configured family instead of comparing all three.
        #[arg(long)]
        single_family: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: ReportFormat,
        /// Write `experiment.md` and `experiment.json` here; defaults to `reports`.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Measure single-diagnosis latency.
    Bench {
        /// Rule base file; defaults to `rulebase` from the config file.
        rulebase: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        iterations: usize,
        /// Benchmark a synthetic base of this many rules instead.
        #[arg(long)]
        synthetic_rules: Option<usize>,
        #[arg(long, value_enum, default_value = "md")]
        format: ReportFormat,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic labelled dataset.
    GenFixture {
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        frames: usize,
        /// Endpoint jitter as a fraction of interval width.
        #[arg(long, default_value_t = 0.0)]
        jitter: f64,
        /// reference, disjoint or single.
        #[arg(long, default_value = "reference")]
        geometry: String,
        #[arg(long, default_value_t = 64)]
        bins: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::InvalidArgument(_)) => 1,
        _ => 2,
    }
}

fn resolve_config(cli: &Cli) -> anyhow::Result<PipelineConfig> {
    let mut config = PipelineConfig::default();
    if let Some(path) = &cli.config {
        let file = ConfigOverrides::load(path).with_context(|| format!("reading config {}", path.display()))?;
        config.apply(&file)?;
    }
    let k = &cli.knobs;
    config.apply(&ConfigOverrides {
        family: k.family.clone(),
        sigma_divisor: k.sigma_divisor,
        shoulder: k.shoulder,
        grid_points: k.grid_points,
        probe_offset: k.probe_offset,
        activation_floor: k.activation_floor,
        ..Default::default()
    })?;
    config.validate()?;
    Ok(config)
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidArgument(msg.into()).into()
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_table(path: &Path) -> anyhow::Result<StateIntervalTable> {
    StateIntervalTable::from_json(&read_text(path)?).with_context(|| format!("loading {}", path.display()))
}

fn load_model(path: Option<&PathBuf>, config: &PipelineConfig) -> anyhow::Result<DiagnosticModel> {
    let path = path
        .or(config.rulebase.as_ref())
        .ok_or_else(|| usage("no rule base given (argument or `rulebase` in the config file)"))?;
    DiagnosticModel::from_json(&read_text(path)?).with_context(|| format!("loading {}", path.display()))
}

fn per_position_path(out: &Path, position: impl std::fmt::Display) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{position}.json"))
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let config = resolve_config(&cli)?;
    match cli.command {
        Command::Extract { data, out, per_position } => {
            let path = data
                .or_else(|| config.data.clone())
                .ok_or_else(|| usage("no input data given (argument or `data` in the config file)"))?;
            let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            let frames = read_frames(BufReader::new(file), DataFormat::from_path(&path))
                .with_context(|| format!("reading {}", path.display()))?;
            if frames.is_empty() {
                return Err(Error::NoData(format!("{} contains no frames", path.display())).into());
            }
            let distribution = class_distribution(&frames)?
                .iter()
                .map(|(s, f)| format!("{s}: {:.1}%", 100.0 * f))
                .collect::<Vec<_>>()
                .join(", ");
            let table = extract_intervals(&frames)?;
            match (&out, per_position) {
                (Some(out), true) => {
                    write_text(out, &table.to_json()?)?;
                    for (pos, t) in extract_intervals_per_position(&frames)? {
                        write_text(&per_position_path(out, pos), &t.to_json()?)?;
                    }
                }
                _ => emit(out.as_deref(), &table.to_json()?)?,
            }
            let line = format!("{} frames, {} states. Distribution: {distribution}", frames.len(), table.len());
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
        Command::Compile { table, out } => {
            let compilation = compile(&load_table(&table)?);
            let rb = &compilation.rule_base;
            let model = DiagnosticModel::build(rb.clone(), config.family, config.engine_settings())?;
            let out = out.or_else(|| config.rulebase.clone());
            let summary = format!(
                "{} rules, {} v-terms, {} g-terms ({} family)\n{}{}",
                rb.len(),
                rb.v_terms().len(),
                rb.g_terms().len(),
                config.family,
                compilation.diagnostics(),
                rb
            );
            emit(out.as_deref(), &model.to_json()?)?;
            if out.is_some() {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
        }
        Command::Diagnose { rulebase, x_v, x_g } => {
            if !x_v.is_finite() || !x_g.is_finite() {
                return Err(usage("inputs must be finite"));
            }
            let engine = load_model(rulebase.as_ref(), &config)?.engine()?;
            let start = Instant::now();
            let d = engine.diagnose(x_v, x_g);
            let latency = start.elapsed().as_secs_f64() * 1e6;
            match d.score {
                Some(score) => println!("score={score:.2} {}", d.decomposition),
                None => println!("no rule fired"),
            }
            println!("latency: {latency:.1} us");
        }
        Command::Experiment { table, single_family, format, out_dir } => {
            let table = load_table(&table)?;
            let (md, json) = if single_family {
                let e = run_experiment(&table, config.family, &config)?;
                (e.to_markdown(), e.to_json()?)
            } else {
                let c: Comparison = compare_families(&table, &config)?;
                (c.to_markdown(), c.to_json()?)
            };
            match out_dir.or_else(|| config.reports.clone()) {
                Some(dir) => {
                    write_text(&dir.join("experiment.md"), &md)?;
                    write_text(&dir.join("experiment.json"), &json)?;
                    println!(
                        "wrote {} and {}",
                        dir.join("experiment.md").display(),
                        dir.join("experiment.json").display()
                    );
                }
                None => print!("{}", if format == ReportFormat::Md { &md } else { &json }),
            }
        }
        Command::Bench { rulebase, iterations, synthetic_rules, format, out } => {
            let model = match synthetic_rules {
                Some(n) => DiagnosticModel::build(synthetic_rule_base(n)?, config.family, config.engine_settings())?,
                None => load_model(rulebase.as_ref(), &config)?,
            };
            let engine = model.engine()?;
            let stats = bench_diagnose(&engine, &bench_inputs(&model.rule_base), iterations)?;
            let text = match format {
                ReportFormat::Md => stats.to_markdown(),
                ReportFormat::Json => stats.to_json()?,
            };
            emit(out.as_deref(), &text)?;
        }
        Command::GenFixture { out, seed, frames, jitter, geometry, bins, samples } => {
            let geometry: Geometry = geometry.parse()?;
            let spec = FixtureSpec { seed, geometry, frames, spectrum_bins: bins, waveform_samples: samples, jitter };
            let data = generate(&spec)?;
            if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            let mut w = BufWriter::new(File::create(&out).with_context(|| format!("creating {}", out.display()))?);
            match DataFormat::from_path(&out) {
                DataFormat::Csv => write_csv(&mut w, &data)?,
                DataFormat::Ndjson => write_ndjson(&mut w, &data)?,
            }
            w.flush()?;
            println!("wrote {} frames to {}", data.len(), out.display());
        }
    }
    Ok(())
}
