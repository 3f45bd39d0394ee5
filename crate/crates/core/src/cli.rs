//! Command-line interface.
//!
//! Everything goes through [`run`], which parses arguments, dispatches to
//! the library and maps failures to exit codes: `0` on success, `1` when
//! the library reports an error (with a one-line diagnostic naming the error
//! case), `2` on a usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chart::{geodesic_chart, write_chart_crossings, write_chart_points, ChartConfig};
use crate::error::{Error, Result};
use crate::experiment::{run_noise_experiment, ExperimentConfig};
use crate::pfsa::{
    format_real, generate_sequence, minimal_closed_restriction, minimize, parse_pfsa,
    stationary_distribution, validate, word_probability, write_pfsa, Pfsa, DEFAULT_MINIMIZE_TOL,
};
use crate::process::{
    angle, inner, scale_process, sum_processes, InnerMode, McConfig, ProcessHandle,
};
use crate::stream::{
    estimate_derivatives, table_angle, DerivativeTable, DEFAULT_DEPTH, DEFAULT_SMOOTHING,
};
use crate::symbols::{Alphabet, SymbolStream};
use crate::sync::{default_max_depth, synchronize_all};

const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "pfsa-space",
    version,
    about = "Geometry of processes encoded by probabilistic automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a machine file describes a valid automaton.
    Validate { model: PathBuf },
    /// Print the stationary state distribution.
    Stationary { model: PathBuf },
    /// Restrict to the minimal closed class carrying all stationary mass.
    Clx {
        model: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Merge indistinguishable states.
    Minimize {
        model: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MINIMIZE_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sample a symbol stream from the stationary process.
    Generate {
        model: PathBuf,
        #[arg(long, short = 'n')]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Probability of a word (compact like `0110` or space separated).
    Wordprob { model: PathBuf, word: String },
    /// Shortest string that concentrates the belief of every model on one
    /// state up to `eps`.
    Sync {
        #[arg(required = true)]
        models: Vec<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Scale a process by a real factor.
    Scale {
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sum of two processes.
    Sum {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Inner product of two processes.
    Inner {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        est: EstimatorArgs,
    },
    /// Angle between two processes, in radians.
    Angle {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        est: EstimatorArgs,
    },
    /// Sample a grid of geodesics on the 2-simplex as CSV.
    GeodesicChart {
        #[arg(long, default_value_t = 3)]
        lines: usize,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        #[arg(long, default_value_t = 4.0)]
        extent: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Direction of the first family in log-ratio coordinates.
        #[arg(long, num_args = 2, value_names = ["U1", "U2"], allow_hyphen_values = true, default_values_t = [1.0, 0.0])]
        direction: Vec<f64>,
        /// Also write the line crossings to this CSV file.
        #[arg(long)]
        crossings: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Estimate context-conditioned next-symbol distributions from a stream
    /// and optionally its angle to a second stream.
    Estimate {
        stream: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SMOOTHING)]
        smoothing: f64,
        /// Space-separated alphabet; inferred from the stream when omitted.
        #[arg(long)]
        alphabet: Option<String>,
        /// Print the empirical angle to this stream instead of the table.
        #[arg(long)]
        against: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the noise-robustness experiment on scaled copies of a model.
    Experiment {
        model: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, -1.0, 0.1, -0.1, 0.0])]
        scales: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
        #[arg(long, short = 'n', default_value_t = 1_000_000)]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SMOOTHING)]
        smoothing: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Directory for the CSV tables and summary.
        #[arg(long, short = 'o')]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Args)]
struct OutArg {
    /// Write here instead of standard output.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

#[derive(Debug, Args)]
struct EstimatorArgs {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    walk_length: usize,
    #[arg(long, default_value_t = 20)]
    repeats: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Synchronization tolerance for the walk start.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
}

impl EstimatorArgs {
    fn mode(&self) -> InnerMode {
        match self.mode {
            Mode::Exact => InnerMode::Exact,
            Mode::Mc => InnerMode::MonteCarlo,
        }
    }

    fn config(&self) -> McConfig {
        McConfig {
            eps: self.eps,
            walk_length: self.walk_length,
            repeats: self.repeats,
            seed: self.seed,
            max_depth: None,
        }
    }

    fn header(&self) -> Option<String> {
        (self.mode == Mode::Mc).then(|| {
            format!(
                "# mode=monte-carlo seed={} repeats={} walk_length={} eps={}",
                self.seed, self.repeats, self.walk_length, self.eps
            )
        })
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            // messages start with the error case name
            let _ = writeln!(err, "error: {}", first_line(&e.to_string()));
            1
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

fn read_model(path: &Path) -> Result<Pfsa> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_pfsa(&text)
}

fn handle(path: &Path) -> Result<ProcessHandle> {
    let label = path
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    ProcessHandle::new(&read_model(path)?, label)
}

fn read_stream(path: &Path, alphabet: Option<&Alphabet>) -> Result<SymbolStream> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match alphabet {
        Some(a) => SymbolStream::parse(a.clone(), &text),
        None => SymbolStream::parse_inferred(&text),
    }
}

fn emit(target: &OutArg, text: &str, out: &mut dyn Write) -> Result<()> {
    match &target.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_with<F>(target: &OutArg, out: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match &target.output {
        Some(path) => {
            let mut file = std::io::BufWriter::new(fs::File::create(path)?);
            f(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => f(out),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Validate { model } => {
            let g = read_model(&model)?;
            let report = validate(&g);
            if !report.is_valid() {
                return Err(Error::InvalidMachine(
                    report.to_string().replace('\n', "; "),
                ));
            }
            writeln!(
                out,
                "valid: {} states over {{{}}}",
                g.num_states(),
                g.alphabet()
            )?;
        }
        Command::Stationary { model } => {
            let g = read_model(&model)?;
            let p = stationary_distribution(&g)?;
            let cells: Vec<String> = p.as_slice().iter().map(|&x| format_real(x)).collect();
            writeln!(out, "{}", cells.join(" "))?;
        }
        Command::Clx { model, out: target } => {
            let g = minimal_closed_restriction(&read_model(&model)?)?;
            emit(&target, &write_pfsa(&g), out)?;
        }
        Command::Minimize {
            model,
            tol,
            out: target,
        } => {
            let g = minimize(&read_model(&model)?, tol);
            emit(&target, &write_pfsa(&g), out)?;
        }
        Command::Generate {
            model,
            length,
            seed,
            out: target,
        } => {
            let s = generate_sequence(&read_model(&model)?, length, seed)?;
            let text = format!("# seed={seed} length={length}\n{}", s.to_text());
            emit(&target, &text, out)?;
        }
        Command::Wordprob { model, word } => {
            let g = read_model(&model)?;
            let w = g.alphabet().parse_word(&word)?;
            writeln!(out, "{}", format_real(word_probability(&g, &w)?))?;
        }
        Command::Sync {
            models,
            eps,
            max_depth,
        } => {
            let gs = models
                .iter()
                .map(|p| read_model(p))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Pfsa> = gs.iter().collect();
            let depth = max_depth.unwrap_or_else(|| default_max_depth(&refs));
            let r = synchronize_all(&refs, eps, depth)?;
            writeln!(out, "{}", gs[0].alphabet().format_word(&r.string))?;
            writeln!(out, "achieved: {}", format_real(r.achieved()))?;
            for (g, m) in gs.iter().zip(&r.per_machine) {
                writeln!(
                    out,
                    "state: {} {}",
                    g.state_name(m.state),
                    format_real(m.achieved)
                )?;
            }
        }
        Command::Scale {
            model,
            alpha,
            out: target,
        } => {
            let g = scale_process(alpha, &handle(&model)?)?;
            emit(&target, &write_pfsa(g.machine()), out)?;
        }
        Command::Sum {
            left,
            right,
            out: target,
        } => {
            let g = sum_processes(&handle(&left)?, &handle(&right)?)?;
            emit(&target, &write_pfsa(g.machine()), out)?;
        }
        Command::Inner { left, right, est } => {
            let r = inner(&handle(&left)?, &handle(&right)?, est.mode(), &est.config())?;
            if let Some(h) = est.header() {
                writeln!(out, "{h}")?;
            }
            writeln!(out, "{}", format_real(r.value))?;
            if est.mode == Mode::Mc {
                writeln!(out, "std_error: {}", format_real(r.std_error))?;
            }
        }
        Command::Angle { left, right, est } => {
            let r = angle(&handle(&left)?, &handle(&right)?, est.mode(), &est.config())?;
            if let Some(h) = est.header() {
                writeln!(out, "{h}")?;
            }
            writeln!(out, "{}", format_real(r.value))?;
            if est.mode == Mode::Mc {
                writeln!(out, "std_error: {}", format_real(r.std_error))?;
            }
        }
        Command::GeodesicChart {
            lines,
            spacing,
            extent,
            samples,
            direction,
            crossings,
            out: target,
        } => {
            let cfg = ChartConfig {
                lines_per_side: lines,
                spacing,
                extent,
                samples,
                direction: [direction[0], direction[1]],
            };
            let chart = geodesic_chart(&cfg)?;
            emit_with(&target, out, |w| write_chart_points(&chart, w))?;
            if let Some(path) = crossings {
                write_chart_crossings(&chart, fs::File::create(path)?)?;
            }
        }
        Command::Estimate {
            stream,
            depth,
            smoothing,
            alphabet,
            against,
            out: target,
        } => {
            let alphabet = alphabet
                .map(|a| Alphabet::new(&a.split_whitespace().collect::<Vec<_>>()))
                .transpose()?;
            let s = read_stream(&stream, alphabet.as_ref())?;
            let table = estimate_derivatives(&s, depth, smoothing)?;
            match against {
                Some(other) => {
                    let t = read_stream(&other, Some(&s.alphabet))?;
                    let other = estimate_derivatives(&t, depth, smoothing)?;
                    writeln!(out, "{}", format_real(table_angle(&table, &other)?))?;
                }
                None => emit_with(&target, out, |w| write_table(&table, w))?,
            }
        }
        Command::Experiment {
            model,
            scales,
            labels,
            length,
            depth,
            smoothing,
            seed,
            out_dir,
        } => {
            let mut cfg = ExperimentConfig::new(read_model(&model)?);
            cfg.labels = match labels {
                Some(l) => l,
                None if scales == cfg.scales => cfg.labels,
                None => (1..=scales.len()).map(|i| format!("M{i}")).collect(),
            };
            cfg.scales = scales;
            cfg.length = length;
            cfg.depth = depth;
            cfg.smoothing = smoothing;
            cfg.seed = seed;
            let report = run_noise_experiment(&cfg)?;
            report.write_to(&out_dir)?;
            out.write_all(report.summary().as_bytes())?;
        }
    }
    Ok(())
}

fn write_table(t: &DerivativeTable, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "# depth={} smoothing={}", t.depth, t.smoothing)?;
    let mut csv = csv::Writer::from_writer(w);
    let mut header = vec!["context".to_string(), "count".to_string()];
    header.extend(t.alphabet.symbols().iter().map(|s| format!("p_{s}")));
    csv.write_record(&header)?;
    for i in 0..t.num_contexts() {
        let mut rec = vec![
            t.alphabet.format_word(&t.context(i)),
            t.occurrences(i).to_string(),
        ];
        rec.extend(t.estimates[i].as_slice().iter().map(|&p| format_real(p)));
        csv.write_record(&rec)?;
    }
    csv.flush()?;
    Ok(())
}
