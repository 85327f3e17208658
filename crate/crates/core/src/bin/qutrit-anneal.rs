//! Command-line front end.
//!
//! Exit codes: 0 when every run matched the oracle, 1 when a run completed but
//! did not match, 2 on input errors, 3 when a size guard rejected the problem.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qutrit_anneal::hamiltonian::default_centroid_states;
use qutrit_anneal::harness::{self, EmitFormat, Preset, ProblemSpec, RunResult};
use qutrit_anneal::{AnnealConfig, EncodingScheme, Error, Method, StepMode};

#[derive(Parser, Debug)]
#[command(
    name = "qutrit-anneal",
    version,
    about = "Clustering by adiabatic annealing on qutrits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Overrides,
}

#[derive(Args, Debug, Clone, Default)]
struct Overrides {
    /// Comma-separated outputs: table, csv, svg.
    #[arg(long, global = true, value_delimiter = ',')]
    emit: Vec<String>,

    /// Step integrator, overriding the problem file.
    #[arg(long, global = true, value_parser = ["exact", "split"])]
    mode: Option<String>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Pin point 0 (two-cluster problems only).
    #[arg(long, global = true)]
    pinned: Option<bool>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one or more problem files; several files run concurrently.
    Run {
        #[arg(required = true)]
        specs: Vec<PathBuf>,
    },
    /// Run a published instance: fig1, fig2, fig3 or fig4.
    Preset { name: String },
    /// Print a random instance as a problem file.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "one-hot-k3-pinned")]
        method: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        h: Option<f64>,
    },
}

/// `print!` that exits quietly when stdout is a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {
        if let Err(e) = write!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    };
}

fn exit_code(e: &Error) -> u8 {
    if e.is_size_guard() {
        3
    } else {
        2
    }
}

impl Overrides {
    fn apply(&self, spec: &mut ProblemSpec) -> Result<(), Error> {
        if let Some(mode) = &self.mode {
            spec.anneal.mode = if mode == "split" {
                StepMode::Split
            } else {
                StepMode::Exact
            };
        }
        if let Some(pinned) = self.pinned {
            if spec.scheme.method != Method::OneHotK2Penalty {
                return Err(Error::Validation(
                    "--pinned only applies to one-hot-k2-penalty problems".into(),
                ));
            }
            spec.scheme.pinned = pinned;
        }
        if !self.emit.is_empty() {
            spec.emit = self
                .emit
                .iter()
                .map(|s| s.parse::<EmitFormat>())
                .collect::<Result<_, _>>()?;
        }
        if let Some(out) = &self.out {
            spec.out_dir = Some(out.clone());
        }
        Ok(())
    }
}

/// Prints the summary and writes any requested files.
fn report(result: &RunResult) -> Result<(), Error> {
    out!("{}", harness::render_table(result));
    let spec = &result.spec;
    let wants_files = spec
        .emit
        .iter()
        .any(|f| *f != EmitFormat::Table || spec.out_dir.is_some());
    if !wants_files {
        return Ok(());
    }
    let dir = spec.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"));
    for p in harness::emit(result, &spec.emit, &dir)? {
        out!("wrote         {}\n", p.display());
    }
    Ok(())
}

fn run_specs(specs: Vec<ProblemSpec>) -> u8 {
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|s| scope.spawn(move || harness::run(s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("run thread panicked"))
            .collect()
    });
    let mut code = 0;
    for (i, result) in results.into_iter().enumerate() {
        if i > 0 {
            out!("\n");
        }
        let outcome = result.and_then(|r| report(&r).map(|()| r.matched));
        code = code.max(match outcome {
            Ok(true) => 0,
            Ok(false) => 1,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        });
    }
    code
}

fn load_all(paths: &[PathBuf], opts: &Overrides) -> Result<Vec<ProblemSpec>, Error> {
    paths
        .iter()
        .map(|path| {
            let mut s = harness::load_spec(path)?;
            opts.apply(&mut s)?;
            if paths.len() > 1 {
                if let Some(dir) = &s.out_dir {
                    s.out_dir = Some(dir.join(&s.name));
                }
            }
            Ok(s)
        })
        .collect()
}

fn preset_spec(name: &str, opts: &Overrides) -> Result<ProblemSpec, Error> {
    let preset: Preset = name.parse()?;
    if preset != Preset::Fig2 && opts.pinned.is_some() {
        return Err(Error::Validation("--pinned only applies to fig2".into()));
    }
    let mut spec = preset.spec(true);
    opts.apply(&mut spec)?;
    Ok(spec)
}

fn generate(
    n: usize,
    seed: u64,
    method: &str,
    k: Option<usize>,
    h: Option<f64>,
    opts: &Overrides,
) -> Result<(), Error> {
    let points = harness::generate_instance(n, seed)?;
    let method: Method = serde_json::from_value(serde_json::Value::String(method.to_string()))
        .map_err(|_| Error::Validation(format!("unknown method `{method}`")))?;
    let (scheme, centroids) = match method {
        Method::OneHotK3 => (EncodingScheme::onehot_k3(), None),
        Method::OneHotK3Pinned => (EncodingScheme::onehot_k3_pinned(), None),
        Method::OneHotK2Penalty => (
            EncodingScheme::k2_penalty(opts.pinned.unwrap_or(true)),
            None,
        ),
        Method::OneHotMultispin => (EncodingScheme::multispin(k.unwrap_or(3))?, None),
        Method::Kmeanspp => {
            let k = k.unwrap_or(3);
            if k >= n {
                return Err(Error::Validation(format!(
                    "{k} centroids need more than {n} points"
                )));
            }
            let scheme = EncodingScheme::kmeanspp(default_centroid_states(k))?;
            (scheme, Some((0..k).collect()))
        }
    };
    let mut anneal = AnnealConfig::default();
    if let Some(h) = h {
        anneal.h = h;
    }
    anneal.validate()?;
    let mut spec = ProblemSpec {
        name: format!("random-n{n}-s{seed}"),
        points,
        scheme,
        centroids,
        anneal,
        seed: Some(seed),
        emit: Vec::new(),
        out_dir: None,
    };
    let out_dir = opts.out.clone();
    Overrides {
        out: None,
        pinned: None,
        ..opts.clone()
    }
    .apply(&mut spec)?;
    let json = spec.to_json();
    match out_dir {
        Some(dir) => {
            let io = |path: &std::path::Path| {
                let path = path.display().to_string();
                move |source| Error::Io { path, source }
            };
            std::fs::create_dir_all(&dir).map_err(io(&dir))?;
            let path = dir.join(format!("{}.json", spec.name));
            std::fs::write(&path, json + "\n").map_err(io(&path))?;
            out!("{}\n", path.display());
        }
        None => out!("{json}\n"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    let code = match &cli.command {
        Command::Run { specs } => match load_all(specs, opts) {
            Ok(loaded) => run_specs(loaded),
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Command::Preset { name } => match preset_spec(name, opts) {
            Ok(spec) => run_specs(vec![spec]),
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Command::Generate {
            n,
            seed,
            method,
            k,
            h,
        } => match generate(*n, *seed, method, *k, *h, opts) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
    };
    ExitCode::from(code)
}
