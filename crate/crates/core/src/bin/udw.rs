use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use udw_core::sweep::{uniform_grid, SweepRow};
use udw_core::{
    find_dark_point, find_death_temperature, format_g9, measure_all, run_sweep_with_threads,
    udw_equilibrium_state, write_csv, Error, Measure, SweepSpec, UdwParams,
};

#[derive(Parser, Debug)]
#[command(
    name = "udw",
    version,
    about = "Correlations and coherence of two accelerated Unruh-deWitt detectors"
)]
struct Cli {
    /// Worker threads for sweeps; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the 4x4 equilibrium state (real part, then imaginary part).
    State(Point),
    /// Print one CSV row with the selected measures.
    Measure {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value = "c,lqu,uin,coh")]
        measures: String,
    },
    /// Evaluate a grid and write CSV.
    Sweep {
        /// Unruh temperature axis as start:stop:steps.
        #[arg(long, allow_hyphen_values = true)]
        tu: String,
        /// Comma-separated energy spacings.
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Comma-separated initial-state parameters.
        #[arg(long, allow_hyphen_values = true)]
        delta0: String,
        #[arg(long, default_value = "c,lqu,uin,coh")]
        measures: String,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Temperature at which entanglement vanishes.
    Deathpoint(Curve),
    /// Temperature at which the coherence vanishes before reviving.
    Darkpoint(Curve),
}

#[derive(Args, Debug)]
struct Point {
    #[arg(long, allow_negative_numbers = true)]
    tu: f64,
    #[arg(long, allow_negative_numbers = true)]
    omega: f64,
    #[arg(long, allow_negative_numbers = true)]
    delta0: f64,
}

#[derive(Args, Debug)]
struct Curve {
    #[arg(long, allow_negative_numbers = true)]
    omega: f64,
    #[arg(long, allow_negative_numbers = true)]
    delta0: f64,
}

fn parse_axis(s: &str) -> Result<(f64, f64, usize), Error> {
    let bad = || Error::InvalidArgument(format!("tu: expected <start>:<stop>:<steps>, got '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, steps] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((
        start.trim().parse().map_err(|_| bad())?,
        stop.trim().parse().map_err(|_| bad())?,
        steps.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_list(name: &str, s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|_| {
                Error::InvalidArgument(format!("{name}: '{}' is not a number", t.trim()))
            })
        })
        .collect()
}

fn print_optional(out: &mut impl Write, t_u: Option<f64>) -> io::Result<()> {
    match t_u {
        Some(t) => writeln!(out, "t_u={}", format_g9(t)),
        None => writeln!(out, "none"),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::State(p) => {
            let rho = udw_equilibrium_state(&UdwParams::new(p.tu, p.omega, p.delta0)?)?;
            let m = rho.matrix();
            for (label, part) in [("re", 0), ("im", 1)] {
                writeln!(out, "{label}:")?;
                for i in 0..4 {
                    let row: Vec<String> = (0..4)
                        .map(|j| {
                            format_g9(if part == 0 {
                                m[(i, j)].re
                            } else {
                                m[(i, j)].im
                            })
                        })
                        .collect();
                    writeln!(out, "{}", row.join(","))?;
                }
            }
        }
        Command::Measure { point, measures } => {
            let columns = Measure::parse_list(&measures)?;
            let rho = udw_equilibrium_state(&UdwParams::new(point.tu, point.omega, point.delta0)?)?;
            let report = measure_all(&rho)?;
            let row = SweepRow {
                t_u: point.tu,
                omega: point.omega,
                delta0: point.delta0,
                values: columns.iter().map(|&m| report.get(m)).collect(),
            };
            write_csv(&columns, &[row], &mut out)?;
        }
        Command::Sweep {
            tu,
            omega,
            delta0,
            measures,
            out: path,
        } => {
            let (tu_start, tu_stop, tu_steps) = parse_axis(&tu)?;
            let spec = SweepSpec {
                tu_start,
                tu_stop,
                tu_steps,
                omegas: parse_list("omega", &omega)?,
                delta0s: parse_list("delta0", &delta0)?,
                measures: Measure::parse_list(&measures)?,
            };
            spec.validate()?;
            debug_assert_eq!(spec.tu_grid(), uniform_grid(tu_start, tu_stop, tu_steps));
            let rows = run_sweep_with_threads(&spec, cli.threads)?;
            match path {
                Some(path) => {
                    write_csv(&spec.columns(), &rows, BufWriter::new(File::create(path)?))?
                }
                None => write_csv(&spec.columns(), &rows, &mut out)?,
            }
        }
        Command::Deathpoint(c) => {
            print_optional(&mut out, find_death_temperature(c.omega, c.delta0)?.t_u)?
        }
        Command::Darkpoint(c) => print_optional(&mut out, find_dark_point(c.omega, c.delta0)?.t_u)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_domain_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
