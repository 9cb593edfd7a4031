//! `hgfam`: build the rank-jump families and verify their combinatorics.
//!
//! Exit codes: 0 success, 1 verification failure (including a negative
//! hole check), 2 usage or input error, 3 resource limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgfam::family::{build_instance, FamilyInstance, Variant};
use hgfam::hypergeometric::{
    assemble_system_with_limit, predicted_stats, render_system, RenderFormat,
};
use hgfam::lattice::lattice_index;
use hgfam::matrix::parse_rational;
use hgfam::polytope::{normalized_volume, volume_dfact};
use hgfam::semigroup::GradedSemigroup;
use hgfam::toric::{pair_limit_from_env, toric_generators_with_limit};
use hgfam::verify::{ratio_table, render_table, verify, CheckStatus, Depth, VerifyOptions};
use hgfam::{Error, IntegerMatrix, ParameterVector};

#[derive(Parser)]
#[command(name = "hgfam", version, about = "Exact checks for A-hypergeometric rank-jump families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family matrix in the shared matrix format.
    Family {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also write a JSON sidecar with parameter, glue columns and predictions.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Run the claim catalog on a family instance.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "quick")]
        depth: DepthArg,
        /// Largest d whose whole system is assembled at full depth.
        #[arg(long, default_value_t = 5)]
        assembly_max_d: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Normalized volume and lattice index of a matrix.
    Volume {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generators of the toric ideal of a matrix.
    Toric {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether an integer vector is a hole of the semigroup of a matrix.
    Hole {
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form rank/volume ratios and bounds over a range of d.
    Table {
        #[arg(long, default_value_t = 2)]
        d_min: usize,
        #[arg(long, default_value_t = 12)]
        d_max: usize,
        #[arg(long, value_enum, default_value = "hat")]
        variant: VariantArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the generators of a hypergeometric system.
    Render {
        /// Matrix file; when absent the family given by --d/--variant is used.
        #[arg(long, requires = "beta")]
        matrix: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[command(flatten)]
        instance: InstanceArgs,
        /// Emit a Macaulay2 script instead of plain text.
        #[arg(long)]
        script: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, value_enum, default_value = "hat")]
    variant: VariantArg,
    /// Homogenizing parameter for hat-h, a rational such as 0 or 1/2.
    #[arg(long, allow_hyphen_values = true)]
    beta0: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DepthArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plain2,
    Plain3,
    Product,
    Hat,
    #[value(name = "hat-h")]
    HatH,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain2 => Variant::Plain2,
            VariantArg::Plain3 => Variant::Plain3,
            VariantArg::Product => Variant::Product,
            VariantArg::Hat => Variant::Hat,
            VariantArg::HatH => Variant::HatHomogenized,
        }
    }
}

enum Failure {
    /// Verification ran and came out negative.
    Negative,
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("hgfam: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("hgfam: {msg} (raise {} to allow more)", hgfam::toric::PAIR_LIMIT_ENV);
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Family {
            instance,
            output,
            sidecar,
        } => {
            let inst = instance.build()?;
            let body = match output.format {
                Format::Text => inst.matrix.to_text(),
                Format::Json => pretty(&inst.matrix.to_json()),
            };
            emit(output.out.as_deref(), &body)?;
            if let Some(path) = sidecar {
                let stats = predicted_stats(&inst)?;
                write_file(&path, &pretty(&inst.sidecar(&stats)))?;
            }
            Ok(())
        }
        Command::Verify {
            instance,
            depth,
            assembly_max_d,
            output,
        } => {
            let inst = instance.build()?;
            let mut options = VerifyOptions::new(match depth {
                DepthArg::Quick => Depth::Quick,
                DepthArg::Full => Depth::Full,
            });
            options.assembly_max_d = assembly_max_d;
            let report = verify(&inst, &options)?;
            let body = match output.format {
                Format::Text => report.render_text(),
                Format::Json => report.to_json_string() + "\n",
            };
            emit(output.out.as_deref(), &body)?;
            if !report.passed() {
                return Err(Failure::Negative);
            }
            let limited = report.checks.iter().any(|c| {
                c.status == CheckStatus::Skipped && c.details.starts_with("resource limit")
            });
            if limited {
                return Err(Failure::Resource("some claims were skipped at the pair limit".into()));
            }
            Ok(())
        }
        Command::Volume { matrix, output } => {
            let a = read_matrix(&matrix)?;
            a.require_full_rank()?;
            let vol = normalized_volume(&a)?;
            let index = lattice_index(&a)?;
            let dfact = volume_dfact(&a);
            let body = match output.format {
                Format::Text => format!(
                    "normalized volume: {vol}\nlattice index: {index}\nd! vol: {dfact}\n"
                ),
                Format::Json => pretty(&serde_json::json!({
                    "normalized_volume": vol.to_string(),
                    "lattice_index": index.to_string(),
                    "d_factorial_volume": dfact.to_string(),
                })),
            };
            emit(output.out.as_deref(), &body)
        }
        Command::Toric { matrix, output } => {
            let a = read_matrix(&matrix)?;
            a.require_full_rank()?;
            let gens = toric_generators_with_limit(&a, pair_limit_from_env())?;
            let lines: Vec<String> = gens.iter().map(|g| g.lex_oriented().render()).collect();
            let body = match output.format {
                Format::Text => lines.iter().map(|l| format!("{l}\n")).collect(),
                Format::Json => pretty(&serde_json::json!({
                    "variables": a.cols(),
                    "generators": lines,
                })),
            };
            emit(output.out.as_deref(), &body)
        }
        Command::Hole {
            matrix,
            beta,
            output,
        } => {
            let a = read_matrix(&matrix)?;
            let b = ParameterVector::parse_csv(&beta)?
                .to_integers()
                .ok_or_else(|| Failure::Input("--beta must be integral".into()))?;
            if b.len() != a.rows() {
                return Err(Error::DimensionMismatch {
                    expected: a.rows(),
                    found: b.len(),
                }
                .into());
            }
            let hole = GradedSemigroup::new(&a)?.is_hole(&b)?;
            let body = match output.format {
                Format::Text => format!("hole: {hole}\n"),
                Format::Json => pretty(&serde_json::json!({ "hole": hole })),
            };
            emit(output.out.as_deref(), &body)?;
            if hole {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Table {
            d_min,
            d_max,
            variant,
            output,
        } => {
            let rows = ratio_table(d_min, d_max, variant.into())?;
            let body = match output.format {
                Format::Text => render_table(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
            };
            emit(output.out.as_deref(), &body)
        }
        Command::Render {
            matrix,
            beta,
            instance,
            script,
            out,
        } => {
            let (a, b) = match (matrix, beta) {
                (Some(path), Some(beta)) => (read_matrix(&path)?, ParameterVector::parse_csv(&beta)?),
                (None, None) => {
                    let inst = instance.build()?;
                    (inst.matrix, inst.parameter)
                }
                _ => return Err(Failure::Input("--beta needs --matrix".into())),
            };
            let sys = assemble_system_with_limit(&a, &b, pair_limit_from_env())?;
            let format = if script {
                RenderFormat::Script
            } else {
                RenderFormat::Text
            };
            emit(out.as_deref(), &render_system(&sys, format))
        }
    }
}

impl InstanceArgs {
    fn build(&self) -> Result<FamilyInstance, Failure> {
        let beta0 = self.beta0.as_deref().map(parse_rational).transpose()?;
        let variant: Variant = self.variant.into();
        if beta0.is_some() && variant != Variant::HatHomogenized {
            return Err(Failure::Input("--beta0 applies to --variant hat-h only".into()));
        }
        Ok(build_instance(variant, self.d, beta0)?)
    }
}

fn read_matrix(path: &Path) -> Result<IntegerMatrix, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(IntegerMatrix::parse_any(&text)?)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn write_file(path: &Path, body: &str) -> Outcome {
    fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, body: &str) -> Outcome {
    match out {
        Some(path) => write_file(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
