//! Parameter sweeps over `(T_U, ω, Δ0)` and their CSV serialization.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{measure_all, Measure};
use crate::states::{udw_equilibrium_state, UdwParams};

/// Grid description: a uniform `T_U` axis (endpoints included) crossed with
/// lists of energy spacings and initial-state parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub tu_start: f64,
    pub tu_stop: f64,
    pub tu_steps: usize,
    pub omegas: Vec<f64>,
    pub delta0s: Vec<f64>,
    pub measures: Vec<Measure>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub t_u: f64,
    pub omega: f64,
    pub delta0: f64,
    /// One value per selected measure, in `SweepSpec::measures` order.
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be positive and finite",
                })
            }
        };
        positive("tu start", self.tu_start)?;
        positive("tu stop", self.tu_stop)?;
        if self.tu_start >= self.tu_stop {
            return Err(Error::InvalidParameter {
                name: "tu stop",
                value: self.tu_stop,
                reason: "must exceed tu start",
            });
        }
        if self.tu_steps < 2 {
            return Err(Error::InvalidParameter {
                name: "tu steps",
                value: self.tu_steps as f64,
                reason: "need at least 2 grid points",
            });
        }
        if self.omegas.is_empty() {
            return Err(Error::InvalidArgument("omega: empty list".into()));
        }
        if self.delta0s.is_empty() {
            return Err(Error::InvalidArgument("delta0: empty list".into()));
        }
        if self.measures.is_empty() {
            return Err(Error::InvalidArgument("measures: empty list".into()));
        }
        for &w in &self.omegas {
            positive("omega", w)?;
        }
        for &d in &self.delta0s {
            if !(-3.0..=1.0).contains(&d) {
                return Err(Error::InvalidParameter {
                    name: "delta0",
                    value: d,
                    reason: "must lie in [-3, 1]",
                });
            }
        }
        Ok(())
    }

    pub fn tu_grid(&self) -> Vec<f64> {
        uniform_grid(self.tu_start, self.tu_stop, self.tu_steps)
    }

    /// Measures in canonical column order, deduplicated.
    pub fn columns(&self) -> Vec<Measure> {
        let mut m = self.measures.clone();
        m.sort();
        m.dedup();
        m
    }

    /// Every grid point in output order: by `ω`, then `Δ0`, then `T_U`.
    fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut omegas = self.omegas.clone();
        let mut deltas = self.delta0s.clone();
        omegas.sort_by(f64::total_cmp);
        omegas.dedup();
        deltas.sort_by(f64::total_cmp);
        deltas.dedup();
        let grid = self.tu_grid();
        let mut out = Vec::with_capacity(omegas.len() * deltas.len() * grid.len());
        for &w in &omegas {
            for &d in &deltas {
                for &t in &grid {
                    out.push((t, w, d));
                }
            }
        }
        out
    }
}

/// `steps` points from `start` to `stop` inclusive.
pub fn uniform_grid(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (steps - 1) as f64;
            (0..steps)
                .map(|i| {
                    if i == steps - 1 {
                        stop
                    } else {
                        start + (stop - start) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}

fn evaluate(t_u: f64, omega: f64, delta0: f64, columns: &[Measure]) -> Result<SweepRow> {
    let at_point = |source: Error| Error::GridPoint {
        t_u,
        omega,
        delta0,
        source: Box::new(source),
    };
    let params = UdwParams::new(t_u, omega, delta0).map_err(at_point)?;
    let rho = udw_equilibrium_state(&params).map_err(at_point)?;
    let report = measure_all(&rho).map_err(at_point)?;
    Ok(SweepRow {
        t_u,
        omega,
        delta0,
        values: columns.iter().map(|&m| report.get(m)).collect(),
    })
}

/// Evaluates the sweep on the current rayon pool. Row order does not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let columns = spec.columns();
    spec.points()
        .into_par_iter()
        .map(|(t, w, d)| evaluate(t, w, d, &columns))
        .collect()
}

/// Runs the sweep on a dedicated pool of `threads` workers (`None` = rayon default).
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    match threads {
        None => run_sweep(spec),
        Some(0) => Err(Error::InvalidArgument("threads: must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Numerical(format!("cannot start thread pool: {e}")))?;
            pool.install(|| run_sweep(spec))
        }
    }
}

pub fn csv_header(columns: &[Measure]) -> String {
    let mut header = String::from("t_u,omega,delta0");
    for m in columns {
        header.push(',');
        header.push_str(m.name());
    }
    header
}

pub fn csv_line(row: &SweepRow) -> String {
    let mut fields = vec![
        format_g9(row.t_u),
        format_g9(row.omega),
        format_g9(row.delta0),
    ];
    fields.extend(row.values.iter().map(|&v| format_g9(v)));
    fields.join(",")
}

/// Writes the header line followed by one line per row, `\n`-terminated.
pub fn write_csv<W: Write>(columns: &[Measure], rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{}", csv_header(columns))?;
    for row in rows {
        if row.values.len() != columns.len() {
            return Err(Error::DimensionMismatch {
                expected: columns.len(),
                found: row.values.len(),
            });
        }
        writeln!(out, "{}", csv_line(row))?;
    }
    out.flush()?;
    Ok(())
}

/// Nine significant digits with trailing zeros kept, the layout of C's `%#.9g`
/// (`1` → `1.00000000`, `0.1` → `0.100000000`, `1e9` → `1.00000000e+09`).
/// Negative zero prints as zero.
pub fn format_g9(value: f64) -> String {
    const PRECISION: i32 = 9;
    if value.is_nan() {
        return "nan".into();
    }
    if value.is_infinite() {
        return if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let value = if value == 0.0 { 0.0 } else { value };
    // The exponent after rounding to 9 digits decides between fixed and scientific.
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        let fixed = format!("{:.*}", decimals, value);
        if decimals == 0 {
            format!("{fixed}.")
        } else {
            fixed
        }
    }
}
