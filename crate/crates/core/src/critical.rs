//! Characteristic temperatures of the equilibrium state: where entanglement
//! dies, and where the coherence reaches zero before reviving.

use crate::error::{Error, Result};
use crate::measures::{concurrence, l1_coherence};
use crate::states::{udw_equilibrium_state, EquilibriumElements, UdwParams};

/// Concurrence at or below this value counts as zero.
pub const ZERO_CONCURRENCE: f64 = 1e-12;

/// The death-temperature search covers `[LOW, HIGH] · ω`.
pub const SEARCH_RANGE_LOW: f64 = 1e-3;
pub const SEARCH_RANGE_HIGH: f64 = 1e3;

/// Final bisection bracket width, relative to `ω`.
pub const BRACKET_WIDTH: f64 = 1e-12;

const SCAN_POINTS: usize = 600;
const DARK_POINT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    EntanglementDeath,
    CoherenceDarkPoint,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub kind: CriticalKind,
    pub t_u: Option<f64>,
}

fn concurrence_at(t_u: f64, omega: f64, delta0: f64) -> Result<f64> {
    let rho = udw_equilibrium_state(&UdwParams::new(t_u, omega, delta0)?)?;
    concurrence(&rho)
}

fn check_inputs(omega: f64, delta0: f64) -> Result<()> {
    // Any admissible temperature will do for the domain checks.
    UdwParams::new(omega, omega, delta0).map(|_| ())
}

/// Largest temperature at which the concurrence drops to zero.
///
/// A logarithmic scan over `[1e-3·ω, 1e3·ω]` finds the last interval where the
/// concurrence goes from positive to zero, then bisection narrows it. Absent
/// when the concurrence never crosses zero in that range (zero throughout, or
/// still positive at the hot end, which happens for `Δ0 < −1`).
pub fn find_death_temperature(omega: f64, delta0: f64) -> Result<CriticalPoint> {
    check_inputs(omega, delta0)?;
    let none = CriticalPoint {
        kind: CriticalKind::EntanglementDeath,
        t_u: None,
    };
    let lo = SEARCH_RANGE_LOW * omega;
    let hi = SEARCH_RANGE_HIGH * omega;
    let ratio = (hi / lo).ln();
    let temps: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| {
            if i == SCAN_POINTS - 1 {
                hi
            } else {
                lo * (ratio * i as f64 / (SCAN_POINTS - 1) as f64).exp()
            }
        })
        .collect();
    let alive = temps
        .iter()
        .map(|&t| concurrence_at(t, omega, delta0).map(|c| c > ZERO_CONCURRENCE))
        .collect::<Result<Vec<bool>>>()?;

    let Some(k) = (0..SCAN_POINTS - 1)
        .rev()
        .find(|&k| alive[k] && !alive[k + 1])
    else {
        return Ok(none);
    };
    let (mut a, mut b) = (temps[k], temps[k + 1]);
    let width = BRACKET_WIDTH * omega;
    while b - a > width {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if concurrence_at(mid, omega, delta0)? > ZERO_CONCURRENCE {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(CriticalPoint {
        kind: CriticalKind::EntanglementDeath,
        t_u: Some(0.5 * (a + b)),
    })
}

/// Temperature at which the equilibrium coherence vanishes.
///
/// `⟨01|ρ|10⟩ ∝ Δ0 − γ²` is zero at `γ = √Δ0`, i.e. `T* = ω / (2·artanh √Δ0)`,
/// which is a positive finite temperature only for `0 < Δ0 < 1`.
pub fn find_dark_point(omega: f64, delta0: f64) -> Result<CriticalPoint> {
    check_inputs(omega, delta0)?;
    let none = CriticalPoint {
        kind: CriticalKind::CoherenceDarkPoint,
        t_u: None,
    };
    if !(delta0 > 0.0 && delta0 < 1.0) {
        return Ok(none);
    }
    let t_star = omega / (2.0 * delta0.sqrt().atanh());
    if !(t_star.is_finite() && t_star > 0.0) {
        return Ok(none);
    }
    let params = UdwParams::new(t_star, omega, delta0)?;
    let residual = EquilibriumElements::of(&params).rho23.abs();
    if residual > DARK_POINT_TOLERANCE {
        return Err(Error::Numerical(format!(
            "coherence at the dark point T* = {t_star} is {residual:e}"
        )));
    }
    Ok(CriticalPoint {
        kind: CriticalKind::CoherenceDarkPoint,
        t_u: Some(t_star),
    })
}

/// Minimum coherence increase past the dark point that counts as a revival.
pub const REVIVAL_MARGIN: f64 = 1e-6;

/// True when the coherence at `T* + ω/2` exceeds its value at the dark point `T*`
/// by at least `REVIVAL_MARGIN`. Errors if there is no dark point.
pub fn revival_check(omega: f64, delta0: f64) -> Result<bool> {
    let t_star = find_dark_point(omega, delta0)?
        .t_u
        .ok_or(Error::NoDarkPoint { omega, delta0 })?;
    let coherence_at = |t: f64| -> Result<f64> {
        Ok(l1_coherence(&udw_equilibrium_state(&UdwParams::new(
            t, omega, delta0,
        )?)?))
    };
    let at_dark = coherence_at(t_star)?;
    let later = coherence_at(t_star + 0.5 * omega)?;
    Ok(later - at_dark >= REVIVAL_MARGIN)
}

/// Interior local minima of a sampled curve whose value is at most `threshold`.
///
/// Used to read dark points off a sweep column for measures without a closed
/// form for the root. Returns the temperatures of the minimizing samples, so
/// the location is accurate to one grid cell.
pub fn dark_points_in_column(t_u: &[f64], values: &[f64], threshold: f64) -> Vec<f64> {
    assert_eq!(t_u.len(), values.len(), "column length mismatch");
    (1..values.len().saturating_sub(1))
        .filter(|&i| {
            values[i] <= threshold && values[i] <= values[i - 1] && values[i] < values[i + 1]
        })
        .map(|i| t_u[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn death_temperature_closed_form_delta_zero() {
        // At Δ0 = 0 the concurrence 2(|ρ23| − √(ρ11ρ44)) vanishes at γ² = 3/5.
        let expected = 1.0 / (2.0 * 0.6f64.sqrt().atanh());
        let t = find_death_temperature(1.0, 0.0).unwrap().t_u.unwrap();
        assert!((t - expected).abs() < 1e-9, "{t} vs {expected}");
        assert!((0.48..=0.50).contains(&t));
    }

    #[test]
    fn death_temperature_absent_cases() {
        assert_eq!(find_death_temperature(1.0, 1.0).unwrap().t_u, None);
        // Δ0 < −1 stays entangled at arbitrarily high temperature
        assert_eq!(find_death_temperature(1.0, -2.0).unwrap().t_u, None);
    }

    #[test]
    fn death_temperature_rejects_bad_domain() {
        assert!(find_death_temperature(0.0, 0.0).is_err());
        assert!(find_death_temperature(1.0, 1.5).is_err());
    }

    #[test]
    fn dark_point_values() {
        let p = find_dark_point(1.0, 0.5).unwrap();
        assert_eq!(p.kind, CriticalKind::CoherenceDarkPoint);
        // ω / (2 artanh √0.5) = 1 / ln(3 + 2√2) = 0.5672963...
        let t = p.t_u.unwrap();
        assert!((t - 1.0 / (3.0 + 2.0 * 2f64.sqrt()).ln()).abs() < 1e-14);
        assert!((t - 0.56735).abs() < 1e-4);
        assert_eq!(find_dark_point(1.0, -0.5).unwrap().t_u, None);
        assert_eq!(find_dark_point(1.0, 0.0).unwrap().t_u, None);
        assert_eq!(find_dark_point(1.0, 1.0).unwrap().t_u, None);
        let t2 = find_dark_point(2.0, 0.5).unwrap().t_u.unwrap();
        assert!((t2 - 2.0 * t).abs() < 1e-14);
    }

    #[test]
    fn dark_point_matches_numerical_root() {
        // Bisection on ρ23(T) = (Δ0 − γ²)/(2(3+γ²)), positive at high T.
        let rho23 = |t: f64| EquilibriumElements::of(&UdwParams::new(t, 1.0, 0.5).unwrap()).rho23;
        let (mut a, mut b) = (0.1, 2.0);
        assert!(rho23(a) < 0.0 && rho23(b) > 0.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if rho23(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        let t = find_dark_point(1.0, 0.5).unwrap().t_u.unwrap();
        assert!((0.5 * (a + b) - t).abs() < 1e-12);
    }

    #[test]
    fn revival_examples() {
        assert!(revival_check(1.0, 0.5).unwrap());
        assert!(revival_check(1.0, 0.9).unwrap());
        assert!(revival_check(3.0, 0.5).unwrap());
        assert!(matches!(
            revival_check(1.0, -0.5),
            Err(Error::NoDarkPoint { .. })
        ));
    }

    #[test]
    fn column_minima() {
        let t = [0.0, 1.0, 2.0, 3.0, 4.0];
        let v = [3.0, 1.0, 0.01, 1.0, 2.0];
        assert_eq!(dark_points_in_column(&t, &v, 0.1), vec![2.0]);
        assert!(dark_points_in_column(&t, &v, 0.001).is_empty());
        assert!(dark_points_in_column(&t, &[1.0, 0.5, 0.4, 0.3, 0.2], 1.0).is_empty());
    }
}
