//! `qsim` — validate and simulate small circuits, run teleport demos and
//! idle-gate decoherence sweeps.
//!
//! Exit status: 0 success, 1 the circuit or request violates a device or
//! physics constraint, 2 usage, parse or I/O error.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsim_core::circuit::{parse_spanned, retarget_cnots, validate, SpannedCircuit};
use qsim_core::gates::GateKind;
use qsim_core::measure::{bloch_measure, probabilities, sample};
use qsim_core::protocols::{decoherence_sweep, run_teleport, Sampling};
use qsim_core::{execute, DeviceModel, Error, Processor};

use render::{Format, SimulateOutput};

/// Largest identity-gate count accepted by `sweep`.
const MAX_SWEEP_N: usize = 200;

#[derive(Parser)]
#[command(
    name = "qsim",
    version,
    about = "Small-register quantum circuit simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct DeviceArg {
    /// Device description (JSON). Defaults to the built-in 5-qubit device.
    #[arg(long, env = "QSIM_DEVICE", value_name = "FILE")]
    device: Option<PathBuf>,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = ProcessorArg::Ideal)]
    processor: ProcessorArg,
    #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Report exact Born probabilities instead of sampling shots.
    #[arg(long)]
    probabilities: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check a circuit file against the device constraints.
    Validate {
        circuit: PathBuf,
        #[command(flatten)]
        device: DeviceArg,
    },
    /// Run a circuit file and print the outcome histogram.
    Simulate {
        circuit: PathBuf,
        #[command(flatten)]
        device: DeviceArg,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Rewrite CNOTs with a forbidden target before validating.
        #[arg(long)]
        retarget: bool,
    },
    /// Teleport |1⟩ or |+⟩ and report per-branch fidelities.
    Teleport {
        #[arg(long, value_enum)]
        state: TeleportState,
        #[command(flatten)]
        device: DeviceArg,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Idle-gate decoherence sweep: H, then n identities, then measure.
    Sweep {
        #[arg(long)]
        qubit: usize,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        device: DeviceArg,
        #[arg(long, value_enum, default_value_t = ProcessorArg::Real)]
        processor: ProcessorArg,
        #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        probabilities: bool,
        /// Append an ASCII plot of p0 against n after the CSV.
        #[arg(long)]
        plot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcessorArg {
    Ideal,
    Real,
}

impl From<ProcessorArg> for Processor {
    fn from(p: ProcessorArg) -> Self {
        match p {
            ProcessorArg::Ideal => Processor::Ideal,
            ProcessorArg::Real => Processor::Real,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TeleportState {
    One,
    Plus,
}

enum Failure {
    /// Exit 1, message on stderr.
    Domain(String),
    /// Exit 1, violation listing on stdout.
    Rejected(String),
    /// Exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Device(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_device(arg: &DeviceArg) -> Result<DeviceModel, Failure> {
    match &arg.device {
        None => Ok(DeviceModel::ibmqx_like()),
        Some(path) => DeviceModel::from_json(&read(path)?)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
    }
}

fn load_circuit(path: &Path) -> Result<SpannedCircuit, Failure> {
    parse_spanned(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// One line per violation, tagged with its source line.
fn violation_report(path: &Path, spanned: &SpannedCircuit, device: &DeviceModel) -> Option<String> {
    let violations = validate(&spanned.circuit, device);
    if violations.is_empty() {
        return None;
    }
    let lines: Vec<String> = violations
        .iter()
        .map(|v| {
            let at = match spanned.lines.get(v.index) {
                Some(line) => format!("line {line}"),
                None => "end of file".to_string(),
            };
            format!("{}:{at}: {:?}: {}", path.display(), v.code, v.message)
        })
        .collect();
    Some(lines.join("\n"))
}

fn cmd_validate(path: &Path, device: &DeviceArg) -> Result<String, Failure> {
    let device = load_device(device)?;
    let spanned = load_circuit(path)?;
    match violation_report(path, &spanned, &device) {
        Some(report) => Err(Failure::Rejected(report)),
        None => Ok(format!(
            "{}: ok ({} instructions, device {})\n",
            path.display(),
            spanned.circuit.len(),
            device.name
        )),
    }
}

fn cmd_simulate(
    path: &Path,
    device: &DeviceArg,
    run: &RunArgs,
    format: Format,
    retarget: bool,
) -> Result<String, Failure> {
    let device = load_device(device)?;
    let mut spanned = load_circuit(path)?;
    if retarget {
        // retargeted circuits lose the one-to-one line mapping
        spanned.circuit = retarget_cnots(&spanned.circuit, &device)?;
        spanned.lines.clear();
    }
    if let Some(report) = violation_report(path, &spanned, &device) {
        return Err(Failure::Domain(report));
    }
    let circuit = &spanned.circuit;
    let processor = Processor::from(run.processor);
    let state = execute(circuit, &device, processor)?;
    let measured = circuit.measured_qubits();
    let (probs, histogram) = match (measured.is_empty(), run.probabilities) {
        (true, _) => (None, None),
        (false, true) => (Some(probabilities(&state, &measured)?), None),
        (false, false) => (None, Some(sample(&state, &measured, run.shots, run.seed)?)),
    };
    let bloch = circuit
        .bloch_qubits()
        .into_iter()
        .map(|q| Ok((q, bloch_measure(&state, q)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let out = SimulateOutput {
        circuit: path.display().to_string(),
        processor,
        device: device.name.clone(),
        seed: run.seed,
        shots: histogram.as_ref().map(|h| h.shots),
        rng: histogram.as_ref().map(|h| h.rng),
        measured,
        probabilities: probs,
        histogram,
        bloch: bloch.into_iter().map(render::BlochEntry::from).collect(),
    };
    Ok(render::simulate(&out, format))
}

fn cmd_teleport(
    state: TeleportState,
    device: &DeviceArg,
    run: &RunArgs,
    format: Format,
) -> Result<String, Failure> {
    let device = load_device(device)?;
    let (prep, label): (&[GateKind], &str) = match state {
        TeleportState::One => (&[GateKind::X], "|1>"),
        TeleportState::Plus => (&[GateKind::H], "|+>"),
    };
    let report = run_teleport(prep, run.processor.into(), run.shots, run.seed, &device)?;
    Ok(render::teleport(
        &report,
        label,
        &device.name,
        run.probabilities,
        format,
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    qubit: usize,
    n_max: usize,
    device: &DeviceArg,
    processor: ProcessorArg,
    shots: u64,
    seed: u64,
    exact: bool,
    plot: bool,
) -> Result<String, Failure> {
    if n_max > MAX_SWEEP_N {
        return Err(Failure::Usage(format!(
            "--n-max {n_max} exceeds {MAX_SWEEP_N}"
        )));
    }
    let device = load_device(device)?;
    if qubit >= device.num_qubits {
        return Err(Failure::Usage(format!(
            "--qubit {qubit} is not on device {} ({} qubits)",
            device.name, device.num_qubits
        )));
    }
    let sampling = if exact {
        Sampling::Exact
    } else {
        Sampling::Shots { shots, seed }
    };
    let result = decoherence_sweep(qubit, n_max, processor.into(), &device, sampling)?;
    let mut out = result.to_csv();
    if plot {
        out.push('\n');
        out.push_str(&render::sweep_plot(&result));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { circuit, device } => cmd_validate(circuit, device),
        Command::Simulate {
            circuit,
            device,
            run,
            format,
            retarget,
        } => cmd_simulate(circuit, device, run, *format, *retarget),
        Command::Teleport {
            state,
            device,
            run,
            format,
        } => cmd_teleport(*state, device, run, *format),
        Command::Sweep {
            qubit,
            n_max,
            device,
            processor,
            shots,
            seed,
            probabilities,
            plot,
        } => cmd_sweep(
            *qubit,
            *n_max,
            device,
            *processor,
            *shots,
            *seed,
            *probabilities,
            *plot,
        ),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Rejected(listing)) => {
            println!("{listing}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
