//! The `oqw` command line.
//!
//! ```text
//! oqw simulate --theta0 2*pi/7 --theta1 'arcsin(c0/s0)' --p 0.5 --t 500
//! oqw moments  --theta0 pi/3 --theta1 pi/2 --p 0.75 --t-max 500 --stride 10
//! oqw classify --theta0 pi/6 --theta1 pi/3
//! oqw spectrum --theta0 pi/2 --theta1 0 --k pi/3
//! oqw sweep    --grid 629 --threads 8 --out sweep.csv
//! ```
//!
//! Exit codes: 0 on success, 2 for a bad configuration, 3 when a numerical
//! invariant fails.

mod commands;
mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_classify, cmd_moments, cmd_simulate, cmd_spectrum, cmd_sweep, SweepOutput};
pub use format::{format_g17, render_row, Cell, OutputFormat, Table};

use crate::error::Error;
use crate::phases::DEFAULT_EPS;
use crate::walk::{parse_angle, AngleSpec, WalkParameters};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "OQW_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "oqw", version, about = "Open quantum walk on the integer line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Position distribution at time t.
    Simulate {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Moment series with the closed forms for comparison.
    Moments {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long = "t-max", visible_alias = "t", default_value_t = 0)]
        t_max: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        stride: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Regime and limit constant of one parameter point.
    Classify {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues and characteristic polynomial of the generator at k.
    Spectrum {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Phase diagram over a grid×grid lattice of [0, 2π)².
    Sweep {
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 629, value_parser = clap::value_parser!(u64).range(2..))]
        grid: u64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        threads: u64,
        /// Where the analytic ballistic curve goes; defaults next to --out.
        #[arg(long)]
        curve_out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct WalkArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta0: String,
    #[arg(long, allow_hyphen_values = true)]
    theta1: String,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Simulate,
    Moments,
    Classify,
    Spectrum,
    Sweep,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::Simulate => "simulate",
            CommandKind::Moments => "moments",
            CommandKind::Classify => "classify",
            CommandKind::Spectrum => "spectrum",
            CommandKind::Sweep => "sweep",
        }
    }
}

/// A validated invocation. `t` doubles as `t_max` for `moments`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub theta0: AngleSpec,
    pub theta1: AngleSpec,
    pub p: f64,
    pub t: usize,
    pub stride: usize,
    pub k: Option<f64>,
    pub grid: usize,
    pub eps: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub curve_out: Option<PathBuf>,
    pub threads: usize,
}

impl RunConfig {
    fn base(command: CommandKind) -> Self {
        Self {
            command,
            theta0: AngleSpec::Radians(0.0),
            theta1: AngleSpec::Radians(0.0),
            p: 0.5,
            t: 0,
            stride: 1,
            k: None,
            grid: 2,
            eps: DEFAULT_EPS,
            format: OutputFormat::Csv,
            out: None,
            curve_out: None,
            threads: 1,
        }
    }

    /// Resolves the angles, including `arcsin(c0/s0)` for `θ1`.
    pub fn params(&self) -> crate::Result<WalkParameters> {
        let theta0 = self.theta0.resolve(None)?;
        let theta1 = self.theta1.resolve(Some(theta0))?;
        WalkParameters::new(theta0, theta1, self.p)
    }

    /// `--out`, else `$OQW_OUT_DIR/<command>.<ext>`, else standard output.
    pub fn output_path(&self) -> Option<PathBuf> {
        self.out.clone().or_else(|| {
            std::env::var_os(OUT_DIR_ENV).map(|dir| {
                Path::new(&dir).join(format!(
                    "{}.{}",
                    self.command.name(),
                    self.format.extension()
                ))
            })
        })
    }

    /// `--curve-out`, else `<stem>_curve.<ext>` beside the main output, else
    /// `ballistic_curve.<ext>` in the working directory.
    pub fn curve_path(&self) -> PathBuf {
        let ext = self.format.extension();
        if let Some(p) = &self.curve_out {
            return p.clone();
        }
        match self.output_path() {
            Some(main) => {
                let stem = main
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                main.with_file_name(format!("{stem}_curve.{ext}"))
            }
            None => PathBuf::from(format!("ballistic_curve.{ext}")),
        }
    }
}

fn angle(text: &str) -> crate::Result<AngleSpec> {
    parse_angle(text)
}

fn into_config(cli: Cli) -> crate::Result<RunConfig> {
    let walk_fields = |cfg: &mut RunConfig, w: &WalkArgs| -> crate::Result<()> {
        cfg.theta0 = angle(&w.theta0)?;
        cfg.theta1 = angle(&w.theta1)?;
        cfg.p = w.p;
        Ok(())
    };
    let cfg = match cli.command {
        Command::Simulate { walk, t, output } => {
            let mut cfg = RunConfig::base(CommandKind::Simulate);
            walk_fields(&mut cfg, &walk)?;
            cfg.t = t;
            (cfg.format, cfg.out) = (output.format, output.out);
            cfg
        }
        Command::Moments {
            walk,
            t_max,
            stride,
            output,
        } => {
            let mut cfg = RunConfig::base(CommandKind::Moments);
            walk_fields(&mut cfg, &walk)?;
            cfg.t = t_max;
            cfg.stride = stride as usize;
            (cfg.format, cfg.out) = (output.format, output.out);
            cfg
        }
        Command::Classify {
            walk,
            eps,
            format,
            out,
        } => {
            let mut cfg = RunConfig::base(CommandKind::Classify);
            walk_fields(&mut cfg, &walk)?;
            (cfg.eps, cfg.format, cfg.out) = (eps, format, out);
            cfg
        }
        Command::Spectrum { walk, k, output } => {
            let mut cfg = RunConfig::base(CommandKind::Spectrum);
            walk_fields(&mut cfg, &walk)?;
            cfg.k = Some(angle(&k)?.resolve(None)?);
            (cfg.format, cfg.out) = (output.format, output.out);
            cfg
        }
        Command::Sweep {
            p,
            grid,
            eps,
            threads,
            curve_out,
            output,
        } => {
            let mut cfg = RunConfig::base(CommandKind::Sweep);
            cfg.p = p;
            cfg.grid = grid as usize;
            cfg.eps = eps;
            cfg.threads = threads as usize;
            cfg.curve_out = curve_out;
            (cfg.format, cfg.out) = (output.format, output.out);
            cfg
        }
    };
    if !(cfg.eps > 0.0 && cfg.eps.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {}",
            cfg.eps
        )));
    }
    if !(0.0..=1.0).contains(&cfg.p) {
        return Err(Error::InvalidParameter(format!(
            "p must lie in [0, 1], got {}",
            cfg.p
        )));
    }
    if cfg.command != CommandKind::Sweep {
        cfg.params()?;
    }
    Ok(cfg)
}

/// Maps a library error onto the CLI's exit codes.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. }
        | Error::DivisionByZero(_)
        | Error::OutOfRange(_)
        | Error::InvalidParameter(_)
        | Error::WrongCase { .. }
        | Error::NotReducible { .. } => EXIT_CONFIG,
        Error::NonConvergence { .. }
        | Error::ResidueTooLarge { .. }
        | Error::DegenerateEigenvalue(_)
        | Error::NegativeRadicand(_)
        | Error::InvariantViolation(_) => EXIT_INVARIANT,
    }
}

/// Executes a validated configuration, writing to `stdout` when no output
/// path applies.
pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), (i32, String)> {
    let lib = |e: Error| (exit_code(&e), e.to_string());
    let text = match cfg.command {
        CommandKind::Simulate => cmd_simulate(cfg).map_err(lib)?.render(cfg.format),
        CommandKind::Moments => cmd_moments(cfg).map_err(lib)?.render(cfg.format),
        CommandKind::Spectrum => cmd_spectrum(cfg).map_err(lib)?.render(cfg.format),
        CommandKind::Classify => {
            let report = cmd_classify(cfg).map_err(lib)?;
            match cfg.format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string(&report)
                        .map_err(|e| (EXIT_INVARIANT, e.to_string()))?;
                    s.push('\n');
                    s
                }
                f => commands::classify_table(&report).render(f),
            }
        }
        CommandKind::Sweep => {
            let SweepOutput { cells, curve } = cmd_sweep(cfg).map_err(lib)?;
            write_file(&cfg.curve_path(), &curve.render(cfg.format))?;
            cells.render(cfg.format)
        }
    };
    match cfg.output_path() {
        Some(path) => write_file(&path, &text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| (EXIT_CONFIG, format!("cannot write output: {e}"))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), (i32, String)> {
    std::fs::write(path, text)
        .map_err(|e| (EXIT_CONFIG, format!("cannot write {}: {e}", path.display())))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let cfg = match into_config(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    match execute(&cfg, stdout) {
        Ok(()) => EXIT_OK,
        Err((code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}
