use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use vqelab_core::bundled;
use vqelab_core::harness::{
    emit_plots, read_records, summarize, sweep, write_records, write_summary, InitialParams,
    Reference, RunInfo,
};
use vqelab_core::pauli::load_hamiltonian;
use vqelab_core::{AnsatzSpec, EstimatorMode, ExperimentConfig, OptimizerConfig, QubitHamiltonian};

/// Sweeps a coherent readout-rotation error through a pulse-level VQE.
#[derive(Parser)]
#[command(name = "vqelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep over the error angle N and write records, summary and plots.
    Run(RunArgs),
    /// Print the exact ground-state energy of a molecule file.
    Fci {
        #[arg(long)]
        molecule: String,
    },
    /// Recompute the sweep summary from a records CSV.
    Stats { csv: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sampled,
    Analytic,
}

#[derive(Clone, Copy, ValueEnum)]
enum RefState {
    /// Lowest-diagonal basis state (Hartree-Fock for the bundled molecules).
    Hf,
    Zero,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Molecule file, or a bundled name (h2, heh_plus).
    #[arg(long)]
    molecule: String,
    #[arg(long, default_value_t = -15.0, allow_negative_numbers = true)]
    n_start: f64,
    #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
    n_end: f64,
    #[arg(long, default_value_t = 0.5)]
    n_step: f64,
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    #[arg(long, default_value_t = 100)]
    maxiter: usize,
    #[arg(long, default_value_t = 0.1)]
    rhobeg: f64,
    #[arg(long, default_value_t = 1e-4)]
    rhoend: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Sampled)]
    mode: Mode,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Also perturb the Y-basis readout rotation.
    #[arg(long)]
    inject_y: bool,
    /// VQE runs averaged per grid point.
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Write per-evaluation optimizer traces to trace.txt.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = RefState::Hf)]
    reference: RefState,
    /// Initial drive magnitude for every block (phases start at 0).
    #[arg(long, default_value_t = 0.05, conflicts_with = "init_seed")]
    init: f64,
    /// Draw initial parameters uniformly from this seed instead.
    #[arg(long)]
    init_seed: Option<u64>,
    #[arg(long)]
    blocks: Option<usize>,
    /// Drive strength at full magnitude, rad/ns.
    #[arg(long)]
    rabi_rate: Option<f64>,
    #[arg(long)]
    samples_per_block: Option<usize>,
    /// Sample duration, ns.
    #[arg(long)]
    dt: Option<f64>,
}

fn load_molecule(name: &str) -> Result<QubitHamiltonian> {
    let path = Path::new(name);
    let text = if path.exists() {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    } else if let Some(text) = bundled::by_name(name) {
        text.to_string()
    } else {
        bail!("no molecule file or bundled molecule named {name:?}");
    };
    let h = load_hamiltonian(&text)
        .and_then(|m| m.into_qubit())
        .with_context(|| format!("loading molecule {name:?}"))?;
    Ok(h)
}

fn label(name: &str) -> String {
    Path::new(name)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| name.to_string())
}

fn run(args: RunArgs) -> Result<()> {
    if args.shots == 0 {
        bail!("--shots must be at least 1");
    }
    let h = load_molecule(&args.molecule)?;
    let mut ansatz = AnsatzSpec::linear_chain(h.n_qubits());
    if let Some(b) = args.blocks {
        ansatz.blocks = b;
    }
    if let Some(r) = args.rabi_rate {
        ansatz.rabi_rate = r;
    }
    if let Some(s) = args.samples_per_block {
        ansatz.samples_per_block = s;
    }
    if let Some(dt) = args.dt {
        ansatz.dt = dt;
    }
    ansatz.validate()?;

    let mut cfg = ExperimentConfig::new(h);
    cfg.ansatz = ansatz;
    cfg.n_start = args.n_start;
    cfg.n_end = args.n_end;
    cfg.n_step = args.n_step;
    cfg.vqe.mode = match args.mode {
        Mode::Sampled => EstimatorMode::Sampled { shots: args.shots },
        Mode::Analytic => EstimatorMode::Analytic,
    };
    cfg.vqe.optimizer = OptimizerConfig {
        max_iterations: args.maxiter,
        rhobeg: args.rhobeg,
        rhoend: args.rhoend,
    };
    cfg.vqe.initial = match args.init_seed {
        Some(seed) => InitialParams::Random { seed },
        None => InitialParams::Constant(args.init),
    };
    cfg.vqe.reference = match args.reference {
        RefState::Hf => Reference::LowestDiagonal,
        RefState::Zero => Reference::Zero,
    };
    cfg.master_seed = args.seed;
    cfg.inject_y = args.inject_y;
    cfg.workers = args.workers;
    cfg.repeats = args.repeats;
    cfg.trace = args.trace;

    let out = sweep(&cfg)?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_records(&out.records, &args.out.join("records.csv"))?;
    let info = RunInfo {
        label: label(&args.molecule),
        e_fci: out.e_fci,
        mode: match args.mode {
            Mode::Sampled => "sampled",
            Mode::Analytic => "analytic",
        }
        .into(),
        shots: args.shots,
        master_seed: args.seed,
        repeats: args.repeats,
        inject_y: args.inject_y,
    };
    write_summary(&out.summary, &info, &args.out.join("summary.txt"))?;
    emit_plots(&out.records, &args.out)?;
    if args.trace {
        let mut text = String::new();
        for (r, lines) in out.records.iter().zip(&out.traces) {
            text.push_str(&format!("# N = {}\n", r.epsilon_degrees));
            for l in lines {
                text.push_str(l);
                text.push('\n');
            }
        }
        let p = args.out.join("trace.txt");
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
    }

    println!("e_fci = {}", out.e_fci);
    print!("{}", out.summary);
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Fci { molecule } => {
            let h = load_molecule(&molecule)?;
            println!("{}", h.exact_ground_energy()?);
            Ok(())
        }
        Command::Stats { csv } => {
            let records = read_records(&csv)?;
            print!("{}", summarize(&records)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
