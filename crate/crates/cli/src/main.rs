//! `yamabe` — certified lower bounds for the conformal Yamabe constants of
//! the model spaces `H^v_c × S^w` and the surgery constants `Λ_{n,k}`.
//!
//! Exit codes: `0` success, `2` usage or domain error, `3` missing registry
//! constant, `4` numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use yamabe_cli::render::{
    render_bound, render_sigma, render_squeeze, render_table1, render_tn, BoundReport,
    OutputFormat, SqueezeReport,
};
use yamabe_core::bounds::BoundKind;
use yamabe_core::constants::sphere_yamabe;
use yamabe_core::model_space::ModelSpaceParams;
use yamabe_core::mu_zero::{effective_gamma, ConstantRegistry, GammaInput};
use yamabe_core::optimizer::{minimize_bound, MinimizationConfig};
use yamabe_core::squeeze::SqueezeMap;
use yamabe_core::tables::{
    build_table1, build_table_tn, sigma_bound_dim5, sigma_bound_dim6, sigma_bound_dim9_10,
};
use yamabe_core::{Error, Real, Result};

#[derive(Parser)]
#[command(
    name = "yamabe",
    version,
    about = "Certified lower bounds for conformal Yamabe constants of H^v_c x S^w \
             and for surgery constants Lambda_{n,k}",
    after_help = "Exit codes: 0 success, 2 usage/domain error, 3 missing constant, \
                  4 numerical failure."
)]
struct Cli {
    /// JSON file of ratio constants gamma <= mu_0/mu(S^n) and named extras;
    /// replaces the compiled-in registry entirely.
    #[arg(long, global = true, value_name = "FILE")]
    registry: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Write the output to a file (atomically, after all computation)
    /// instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize a lower-bound formula for mu_c over the curvature c in [0,1].
    Bound {
        /// Hyperbolic dimension (v >= 2).
        #[arg(long)]
        v: u32,
        /// Sphere dimension (w >= 2).
        #[arg(long)]
        w: u32,
        /// Ratio bound gamma <= mu_0/mu(S^n) in (0,1]; defaults to the
        /// registry entry for (v,w), or to the sphere-product formula when
        /// w = 2 and v >= 4.
        #[arg(long)]
        gamma: Option<Real>,
        /// Bound formula to minimize (see `bound --help` for the list).
        #[arg(long, default_value = "general")]
        formula: String,
        /// Bracket tolerance for the golden-section refinement.
        #[arg(long, value_name = "TOL")]
        tol: Option<Real>,
    },
    /// Emit one of the built-in summary tables.
    Table {
        /// Which table to build.
        #[arg(value_enum)]
        which: TableKind,
    },
    /// Evaluate the radial squeezing map f_c: R^v -> H^v_c at one radius.
    Squeeze {
        /// Dimension of the hyperbolic factor (v >= 2).
        #[arg(long)]
        v: u32,
        /// Curvature parameter c in (0,1].
        #[arg(long)]
        c: Real,
        /// Euclidean radius r >= 0.
        #[arg(long)]
        r: Real,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Surgery-constant lower bounds for the six tabulated (v,w) pairs.
    Table1,
    /// Uniform sigma-invariant bounds t_n for 2-connected n-manifolds.
    Tn,
    /// Sigma-invariant bounds in dimensions 5, 6, 9 and 10.
    Sigma,
}

fn load_registry(path: &Option<PathBuf>) -> Result<ConstantRegistry> {
    match path {
        Some(file) => ConstantRegistry::from_json_file(file),
        None => Ok(ConstantRegistry::with_defaults()),
    }
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Bound {
            v,
            w,
            gamma,
            formula,
            tol,
        } => {
            if *v < 2 || *w < 2 {
                return Err(Error::Domain(format!(
                    "bound requires v >= 2 and w >= 2, got (v, w) = ({v}, {w})"
                )));
            }
            let params = ModelSpaceParams::new(*v, *w)?;
            let kind: BoundKind = formula.parse()?;
            let registry = load_registry(&cli.registry)?;
            let gamma_input = match gamma {
                Some(value) => GammaInput::new(params, *value, "command-line --gamma")?,
                None => effective_gamma(params, &registry)?,
            };
            let mut config = MinimizationConfig::default();
            if let Some(tol) = tol {
                config.refine_tolerance = *tol;
            }
            let result = minimize_bound(params, gamma_input.gamma(), kind, &config)?;
            let mu1: Real = sphere_yamabe(params.n())?;
            Ok(render_bound(
                &BoundReport {
                    params,
                    gamma: gamma_input,
                    result,
                    mu1,
                },
                cli.format,
            ))
        }
        Command::Table { which } => {
            let registry = load_registry(&cli.registry)?;
            let config = MinimizationConfig::default();
            match which {
                TableKind::Table1 => {
                    let rows = build_table1(&registry, &config)?;
                    Ok(render_table1(&rows, cli.format))
                }
                TableKind::Tn => {
                    let table = build_table_tn(&registry, &config)?;
                    Ok(render_tn(&table, cli.format))
                }
                TableKind::Sigma => {
                    let dim5 = sigma_bound_dim5(&registry, &config)?;
                    let dim6 = sigma_bound_dim6(&registry, &config)?;
                    let (dim9, dim10) = sigma_bound_dim9_10(&registry, &config)?;
                    Ok(render_sigma(&[dim5, dim6, dim9, dim10], cli.format))
                }
            }
        }
        Command::Squeeze { v, c, r } => {
            let map = SqueezeMap::new(*v, *c)?;
            let evaluation = map.evaluate(*r)?;
            Ok(render_squeeze(
                &SqueezeReport {
                    v: *v,
                    c: *c,
                    evaluation,
                },
                cli.format,
            ))
        }
    }
}

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::Domain(_) => 2,
        Error::MissingConstant(_) => 3,
        Error::Numerical(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code(&error))
        }
    }
}
