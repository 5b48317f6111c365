//! Quantum correlations and coherence of two uniformly accelerated
//! Unruh-deWitt detectors in their asymptotic equilibrium state.
//!
//! * [`cmatrix`]: dense complex matrices, Hermitian eigensolver, PSD square root.
//! * [`states`]: the equilibrium state, product states, reference states.
//! * [`measures`]: concurrence, local quantum uncertainty, uncertainty-induced
//!   nonlocality and l1-norm coherence, each with an independent check route.
//! * [`sweep`] and [`critical`]: parameter sweeps with CSV output, death
//!   temperature and coherence dark point.

pub mod cmatrix;
pub mod critical;
pub mod error;
pub mod measures;
pub mod states;
pub mod sweep;

pub use cmatrix::{Complex, ComplexMatrix, HermitianEigen};
pub use critical::{
    dark_points_in_column, find_dark_point, find_death_temperature, revival_check, CriticalKind,
    CriticalPoint,
};
pub use error::{Error, Result};
pub use measures::{
    bloch_a, concurrence, l1_coherence, lqu, lqu_bruteforce, measure_all, skew_information, uin,
    uin_bruteforce, w_matrix, x_state_concurrence, Measure, MeasureReport, WMatrix,
};
pub use states::{
    delta0_of_product, delta0_of_state, gamma_of, product_state, spin_flip,
    temperature_from_acceleration, udw_equilibrium_state, BlochQubit, DensityMatrix, UdwParams,
};
pub use sweep::{format_g9, run_sweep, run_sweep_with_threads, write_csv, SweepRow, SweepSpec};
