// Copyright 2026 The enspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end. Every structured report is wrapped together with
//! the command's full configuration (seed included), so reruns with the same
//! arguments produce byte-identical output.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::circuit::CircuitIR;
use crate::circuit::CircuitSpec;
use crate::diag::WeightPreset;
use crate::energy::{
    exact_energy_distribution, perturb_distribution, sample_counts, theorem1_distribution,
    EnergyDistribution, EnergyGrid, Histogram,
};
use crate::error::{Error, Result};
use crate::fast_forward::{verify_ff, FFParams, PhaseRounding};
use crate::fk::certify_ground_space;
use crate::io::{
    histogram_csv, parse_marginal, read_json, spectrum_csv, to_json, write_atomic, HamiltonianFile,
    InputFile, LoadedHamiltonian, WeightsSpec,
};
use crate::iqp::{LatticeSpec, ProductInput, DEFAULT_ANGLES};
use crate::linalg::StateVector;
use crate::reductions::{
    anticoncentration_stats, polybox_success_rate, theorem2_check, NoiseModel, PolyBoxParams,
};
use crate::rng;
use rand::Rng;

/// Exit status for failed numeric checks.
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "enspec",
    version,
    about = "Energy-sampling simulation and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Write a lattice Hamiltonian file.
    BuildHam(BuildHamArgs),
    /// Eigenvalues as CSV (index,eigenvalue).
    Spectrum(SpectrumArgs),
    /// Sample energies on a 2^-digits grid; histogram CSV.
    Sample(SampleArgs),
    /// Compare the phase-table evolution against exact evolution.
    FfVerify(FfVerifyArgs),
    /// Write a clock Hamiltonian file for a circuit.
    FkBuild(FkBuildArgs),
    /// Certify the ground space of a clock Hamiltonian file.
    Certify(CertifyArgs),
    /// Reductions from energy sampling.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Estimate a marginal output probability from energy samples.
    Polybox(PolyboxArgs),
    /// Fraction of lattice output probabilities above alpha/2^n.
    Anticoncentration(AnticoncentrationArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "reduction")]
pub enum ReduceCommand {
    /// Decode output strings from a noisy energy sampler and check the
    /// l1 bound 2*eps + beta.
    Thm2(Thm2Args),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Output {
    /// Output file (written atomically); stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LatticeArgs {
    #[arg(long)]
    pub rows: usize,
    #[arg(long)]
    pub cols: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BuildHamArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    /// `u`, `v`, or a comma-separated weight list.
    #[arg(long, default_value = "u")]
    pub weights: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub ham: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub ham: PathBuf,
    /// Input state JSON (`{"theta":[..],"x":[..]}` or `{"basis":k}`);
    /// |0...0> when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub digits: u32,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Optional JSON report with the configuration and sampler distribution.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct FfVerifyArgs {
    #[arg(long)]
    pub ham: PathBuf,
    #[arg(long)]
    pub time: f64,
    #[arg(long)]
    pub bits: u32,
    /// Round the phase to nearest instead of truncating.
    #[arg(long)]
    pub round: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct FkBuildArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    /// Marginal `k=b,...`; without it the initialization form is built.
    #[arg(long)]
    pub marginal: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    #[arg(long)]
    pub ham: PathBuf,
    /// Circuit input whose readout probability is checked.
    #[arg(long, default_value_t = 0)]
    pub x: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct Thm2Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Number of random inputs.
    #[arg(long, default_value_t = 20)]
    pub inputs: usize,
    #[arg(long, value_enum, default_value_t = NoiseArg::Saturating)]
    pub noise: NoiseArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct PolyboxArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub marginal: String,
    #[arg(long, default_value_t = 0)]
    pub x: usize,
    #[arg(long = "delta-p")]
    pub delta_p: f64,
    #[arg(long = "eps-p")]
    pub eps_p: f64,
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    #[arg(long, value_enum, default_value_t = NoiseArg::Random)]
    pub noise: NoiseArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct AnticoncentrationArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Comma-separated input angles; defaults to 0 and pi/4.
    #[arg(long, value_delimiter = ',')]
    pub angles: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseArg {
    Ideal,
    Random,
    Saturating,
    Inward,
}

impl From<NoiseArg> for NoiseModel {
    fn from(n: NoiseArg) -> Self {
        match n {
            NoiseArg::Ideal => NoiseModel::Ideal,
            NoiseArg::Random => NoiseModel::Random,
            NoiseArg::Saturating => NoiseModel::Saturating,
            NoiseArg::Inward => NoiseModel::Inward,
        }
    }
}

/// What a command produced: the primary output text and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    config: &'a Command,
    report: T,
}

fn report<T: Serialize>(config: &Command, value: T, pass: bool) -> Result<Outcome> {
    Ok(Outcome {
        output: to_json(&Envelope {
            config,
            report: value,
        })?,
        exit_code: if pass { 0 } else { EXIT_CHECK_FAILED },
    })
}

fn text(output: String) -> Outcome {
    Outcome {
        output,
        exit_code: 0,
    }
}

fn load_ham(path: &std::path::Path) -> Result<LoadedHamiltonian> {
    read_json::<HamiltonianFile>(path)?.load()
}

fn parse_weights(s: &str) -> Result<WeightsSpec> {
    match s {
        "u" => Ok(WeightsSpec::Preset(WeightPreset::U)),
        "v" => Ok(WeightsSpec::Preset(WeightPreset::V)),
        list => list
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::validation(format!("weights: '{w}': {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeightsSpec::List),
    }
}

/// Execute a parsed command. Output files are written here; the returned
/// text is what belongs on stdout (empty when `--out` consumed it).
pub fn run(command: &Command) -> Result<Outcome> {
    let outcome = execute(command)?;
    let out = match command {
        Command::BuildHam(a) => &a.output,
        Command::Spectrum(a) => &a.output,
        Command::Sample(a) => &a.output,
        Command::FfVerify(a) => &a.output,
        Command::FkBuild(a) => &a.output,
        Command::Certify(a) => &a.output,
        Command::Reduce(ReduceCommand::Thm2(a)) => &a.output,
        Command::Polybox(a) => &a.output,
        Command::Anticoncentration(a) => &a.output,
    };
    match &out.out {
        Some(path) => {
            write_atomic(path, outcome.output.as_bytes())?;
            Ok(Outcome {
                output: String::new(),
                ..outcome
            })
        }
        None => Ok(outcome),
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::BuildHam(a) => {
            let file = HamiltonianFile::H2d {
                rows: a.lattice.rows,
                cols: a.lattice.cols,
                weights: parse_weights(&a.weights)?,
            };
            file.load()?;
            Ok(text(to_json(&file)?))
        }
        Command::Spectrum(a) => Ok(text(spectrum_csv(&load_ham(&a.ham)?.spectrum()?))),
        Command::Sample(a) => sample(a),
        Command::FfVerify(a) => {
            let LoadedHamiltonian::Diagonal(h) = load_ham(&a.ham)? else {
                return Err(Error::validation(
                    "ham: fast-forwarding needs a Hamiltonian with a known diagonalizer (kind h2d)",
                ));
            };
            let mut p = FFParams::new(a.time, a.bits)?;
            if a.round {
                p.rounding = PhaseRounding::Round;
            }
            let r = verify_ff(&h, &p)?;
            report(command, r, r.pass)
        }
        Command::FkBuild(a) => {
            let circuit: CircuitSpec = read_json(&a.circuit)?;
            let file = HamiltonianFile::Fk {
                circuit,
                marginal: a
                    .marginal
                    .as_deref()
                    .map(|m| parse_marginal(m).map(|s| s.to_string()))
                    .transpose()?,
            };
            file.load()?;
            Ok(text(to_json(&file)?))
        }
        Command::Certify(a) => {
            let LoadedHamiltonian::Fk(fk) = load_ham(&a.ham)? else {
                return Err(Error::validation(
                    "ham: certification needs a clock Hamiltonian (kind fk)",
                ));
            };
            let r = certify_ground_space(&fk, a.x)?;
            let pass = r.pass;
            report(command, r, pass)
        }
        Command::Reduce(ReduceCommand::Thm2(a)) => {
            let lattice = LatticeSpec::new(a.lattice.rows, a.lattice.cols)?;
            let n = lattice.num_qubits();
            let mut r = rng::rng(a.seed);
            let reports = (0..a.inputs)
                .map(|_| {
                    let input = ProductInput::random(n, &DEFAULT_ANGLES, &mut r)?;
                    theorem2_check(&lattice, &input, a.eps, a.beta, a.noise.into(), r.random())
                })
                .collect::<Result<Vec<_>>>()?;
            let pass = reports.iter().all(|r| r.pass);
            report(command, reports, pass)
        }
        Command::Polybox(a) => {
            let circuit = CircuitIR::try_from(&read_json::<CircuitSpec>(&a.circuit)?)?;
            let r = polybox_success_rate(
                &circuit,
                a.x,
                &parse_marginal(&a.marginal)?,
                PolyBoxParams::new(a.delta_p, a.eps_p)?,
                a.noise.into(),
                a.runs,
                a.seed,
            )?;
            let pass = r.pass;
            report(command, r, pass)
        }
        Command::Anticoncentration(a) => {
            let lattice = LatticeSpec::new(a.lattice.rows, a.lattice.cols)?;
            let angles = a.angles.clone().unwrap_or_else(|| DEFAULT_ANGLES.to_vec());
            let r = anticoncentration_stats(&lattice, a.trials, a.alpha, &angles, a.seed)?;
            report(command, r, true)
        }
    }
}

#[derive(Serialize)]
struct SampleReport<'a> {
    distribution: &'a EnergyDistribution,
    histogram: &'a Histogram,
}

fn sample(a: &SampleArgs) -> Result<Outcome> {
    let ham = load_ham(&a.ham)?;
    let n = ham.num_qubits();
    let state = match &a.input {
        Some(p) => read_json::<InputFile>(p)?.state(n)?,
        None => StateVector::zero(n),
    };
    let dist = match &ham {
        LoadedHamiltonian::Diagonal(h) => {
            theorem1_distribution(h, &state, a.digits, a.beta, a.seed)?
        }
        other => {
            let ideal = exact_energy_distribution(
                &other.operator()?,
                &state,
                EnergyGrid::dyadic(a.digits)?,
            )?;
            EnergyDistribution::new(ideal.grid, perturb_distribution(&ideal.q, a.beta, a.seed)?)?
        }
    };
    let hist = Histogram {
        grid: dist.grid,
        counts: sample_counts(&dist.q, a.shots, a.seed.wrapping_add(1)),
        shots: a.shots,
    };
    if let Some(path) = &a.report {
        let cfg = Command::Sample(a.clone());
        let body = to_json(&Envelope {
            config: &cfg,
            report: SampleReport {
                distribution: &dist,
                histogram: &hist,
            },
        })?;
        write_atomic(path, body.as_bytes())?;
    }
    Ok(text(histogram_csv(&dist, &hist)))
}

/// Size the global thread pool from `ENSPEC_NUM_THREADS`, if set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ENSPEC_NUM_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Error::validation(format!("ENSPEC_NUM_THREADS: '{v}' is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::validation(format!("ENSPEC_NUM_THREADS: {e}")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn weights_parse() {
        assert_eq!(
            parse_weights("v").unwrap(),
            WeightsSpec::Preset(WeightPreset::V)
        );
        assert_eq!(
            parse_weights("0.5, 0.25").unwrap(),
            WeightsSpec::List(vec![0.5, 0.25])
        );
        assert!(parse_weights("x").is_err());
    }

    #[test]
    fn thm2_command_reports() {
        let cli = Cli::try_parse_from([
            "enspec", "reduce", "thm2", "--rows", "1", "--cols", "2", "--eps", "0.01", "--beta",
            "0.02", "--inputs", "3",
        ])
        .unwrap();
        let o = run(&cli.command).unwrap();
        assert_eq!(o.exit_code, 0);
        assert!(o.output.contains("\"seed\": 0"), "{}", o.output);
    }
}
