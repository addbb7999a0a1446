use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use plmorse::complex::CanonicalComplex;
use plmorse::complexity::analyze;
use plmorse::ensembles::{montecarlo_flat_cell_with, montecarlo_plmorse_with};
use plmorse::homology::{grid_oracle, GridPredicate};
use plmorse::network::{coarse_bound_network, fan_network, random_network, Network, Scheme};
use plmorse::rational::parse_rational;
use plmorse::svg::export_svg;
use plmorse::{Error, Rational};

#[derive(Parser)]
#[command(name = "plmorse", version, about = "Exact PL Morse analysis of small ReLU networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Gaussian,
    Uniform,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Gaussian => Scheme::Gaussian,
            SchemeArg::Uniform => Scheme::Uniform,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Sublevel,
    Superlevel,
}

#[derive(Subcommand)]
enum Command {
    /// Full complexity report of a network.
    Analyze {
        net: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a network JSON.
    #[command(group(ArgGroup::new("kind").required(true).args(["fan", "coarse_bound", "random"])))]
    Generate {
        /// Network with a central flat cell of local complexity n.
        #[arg(long)]
        fan: Option<usize>,
        /// Network attaining the coarse bound with m hidden units.
        #[arg(long)]
        coarse_bound: Option<usize>,
        /// Random network with the given widths, e.g. 2,3,1.
        #[arg(long, value_delimiter = ',')]
        random: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "gaussian")]
        scheme: SchemeArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo estimates with binomial confidence bounds.
    #[command(group(ArgGroup::new("experiment").required(true).args(["plmorse", "flat"])))]
    Montecarlo {
        /// Input width and hidden width.
        #[arg(long, num_args = 2, value_names = ["N", "N1"])]
        plmorse: Option<Vec<usize>>,
        /// Architecture, e.g. 2,3,1.
        #[arg(long, value_delimiter = ',')]
        flat: Option<Vec<usize>>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "gaussian")]
        scheme: SchemeArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Betti numbers of a sub- or superlevel set on a cubical grid.
    Oracle {
        net: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        threshold: String,
        #[arg(long, default_value = "1/32")]
        resolution: String,
        /// Half-width of the sampling box.
        #[arg(long = "box", default_value = "4")]
        half_width: String,
        #[arg(long, value_enum, default_value = "sublevel")]
        side: Side,
    },
    /// Draw the canonical complex of a network on the plane.
    ExportSvg {
        net: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn rational(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Analyze { net, report } => {
            let net = Network::load(&net)?;
            let r = analyze(&net)?;
            emit(&pretty(&r.to_json()), report.as_deref())
        }
        Command::Generate { fan, coarse_bound, random, seed, scheme, output } => {
            let net = match (fan, coarse_bound, random) {
                (Some(n), _, _) => fan_network(n),
                (_, Some(m), _) => coarse_bound_network(m),
                (_, _, Some(arch)) => random_network(&arch, seed, scheme.into())?,
                _ => unreachable!("clap requires one network kind"),
            };
            emit(&pretty(&net.to_json()), output.as_deref())
        }
        Command::Montecarlo { plmorse, flat, trials, seed, scheme, output } => {
            let summary = match (plmorse, flat) {
                (Some(p), _) => montecarlo_plmorse_with(p[0], p[1], trials, seed, scheme.into())?,
                (_, Some(arch)) => montecarlo_flat_cell_with(&arch, trials, seed, scheme.into())?,
                _ => unreachable!("clap requires one experiment"),
            };
            emit(&pretty(&summary.to_json()), output.as_deref())
        }
        Command::Oracle { net, threshold, resolution, half_width, side } => {
            let net = Network::load(&net)?;
            let c = rational(&threshold)?;
            let h = rational(&half_width)?;
            let step = rational(&resolution)?;
            let n = net.input_dim();
            let lo = vec![-h.clone(); n];
            let hi = vec![h; n];
            let predicate = match side {
                Side::Sublevel => GridPredicate::AtMost(c),
                Side::Superlevel => GridPredicate::AtLeast(c),
            };
            let r = grid_oracle(&net, &lo, &hi, &step, &predicate);
            emit(&pretty(&json!({ "betti": r.betti, "margin": r.margin, "cubes": r.cubes })), None)
        }
        Command::ExportSvg { net, output } => {
            let net = Network::load(&net)?;
            if net.input_dim() != 2 {
                return Err(Error::Precondition(format!("export-svg needs a 2-dimensional input, found {}", net.input_dim())));
            }
            emit(&export_svg(&CanonicalComplex::build(&net))?, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Unsupported(_)) => {
            eprintln!("plmorse: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("plmorse: {e}");
            ExitCode::FAILURE
        }
    }
}
