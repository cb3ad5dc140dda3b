use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dpo_cli::figure::{self, Figure};
use dpo_cli::output::{to_json_pretty, write_atomic, Table};
use dpo_cli::sweep::{sweep, Quantity, SweepConfig};
use dpo_cli::verify::{verify, VerifyConfig, DEFAULT_FOCK_CUTOFF, DEFAULT_GAMMA_C};
use dpo_cli::{CliError, GridOverride, OutputFormat, OUT_DIR_ENV};
use dpo_core::UniformGrid;

const EXIT_VALIDATION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;

/// Two-level atom in a degenerate parametric oscillator: figure data,
/// sweeps and oracle verification.
#[derive(Debug, Parser)]
#[command(name = "dpo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output directory.
    #[arg(long, env = OUT_DIR_ENV, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the curves of one figure (fig2..fig9).
    Figure {
        name: String,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        /// Lower end of the x axis.
        #[arg(long, allow_hyphen_values = true)]
        min: Option<f64>,
        /// Upper end of the x axis.
        #[arg(long, allow_hyphen_values = true)]
        max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Tabulate a closed-form quantity against ε/κ.
    Sweep {
        quantity: String,
        #[arg(long)]
        epsilon_min: f64,
        #[arg(long)]
        epsilon_max: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_GAMMA_C)]
        gamma_c_over_kappa: f64,
        /// Add a second column evaluated at this γ_c/κ.
        #[arg(long)]
        reference_gamma_c: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
    /// Compare the exact master equation with the closed forms.
    Verify {
        #[arg(long, default_value_t = DEFAULT_FOCK_CUTOFF)]
        fock_cutoff: usize,
        #[arg(long, default_value_t = DEFAULT_GAMMA_C)]
        gamma_c_over_kappa: f64,
        /// Comma-separated ε/κ values.
        #[arg(long, value_delimiter = ',', default_values_t = dpo_cli::verify::DEFAULT_POINTS)]
        points: Vec<f64>,
        /// Skip the (slow) fluorescent half-width comparison.
        #[arg(long)]
        no_spectrum: bool,
        /// Also write the steady-state photon-number distribution per point.
        #[arg(long)]
        dump_populations: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Figure {
            name,
            out,
            format,
            min,
            max,
            points,
        } => {
            let fig: Figure = name.parse()?;
            let data = figure::build(fig, GridOverride { min, max, points })?;
            for path in figure::write(&data, &out.out, format)? {
                println!("{}", path.display());
            }
            Ok(true)
        }
        Command::Sweep {
            quantity,
            epsilon_min,
            epsilon_max,
            points,
            gamma_c_over_kappa,
            reference_gamma_c,
            out,
            format,
        } => {
            let q: Quantity = quantity.parse()?;
            let config = SweepConfig {
                epsilon: UniformGrid::new(epsilon_min, epsilon_max, points)?,
                gamma_c_over_kappa,
                reference_gamma_c,
            };
            let table = sweep(q, &config)?;
            let path = write_atomic(
                &out.out,
                &format!("sweep_{q}.{}", format.extension()),
                &table.render(format),
            )?;
            println!("{}", path.display());
            Ok(true)
        }
        Command::Verify {
            fock_cutoff,
            gamma_c_over_kappa,
            points,
            no_spectrum,
            dump_populations,
            out,
        } => {
            let report = verify(&VerifyConfig {
                fock_cutoff,
                gamma_c_over_kappa,
                points,
                half_width: !no_spectrum,
            });
            if dump_populations {
                for point in &report.points {
                    if let Some(pops) = &point.fock_populations {
                        let table = Table::new(
                            "photons",
                            (0..pops.len()).map(|n| n as f64).collect(),
                            vec![pops.clone()],
                        );
                        let name = format!("populations_epsilon_{}.csv", point.epsilon_over_kappa);
                        write_atomic(&out.out, &name, &table.to_csv())?;
                    }
                }
            }
            let path = write_atomic(&out.out, "verify_report.json", &to_json_pretty(&report))?;
            for point in &report.points {
                for w in &point.warnings {
                    eprintln!("warning: epsilon/kappa = {}: {w}", point.epsilon_over_kappa);
                }
                for e in &point.entries {
                    let status = match (e.passed, e.gated) {
                        (true, _) => "pass",
                        (false, true) => "FAIL",
                        (false, false) => "info",
                    };
                    let detail = match (&e.error, e.deviation) {
                        (Some(err), _) => err.clone(),
                        (None, Some(d)) => {
                            format!("deviation {d:.3e} (tolerance {:.3e})", e.tolerance)
                        }
                        (None, None) => String::new(),
                    };
                    println!(
                        "{status} eps={} {} {detail}",
                        point.epsilon_over_kappa, e.quantity
                    );
                }
            }
            println!("{}", path.display());
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFICATION),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
