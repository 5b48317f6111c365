//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::process::{Command, ExitCode};

use udw_core::states::reference;
use udw_core::sweep::uniform_grid;
use udw_core::{
    concurrence, find_dark_point, find_death_temperature, l1_coherence, lqu, lqu_bruteforce,
    measure_all, revival_check, udw_equilibrium_state, uin, uin_bruteforce, x_state_concurrence,
    DensityMatrix, Measure, MeasureReport, UdwParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn state(t_u: f64, omega: f64, delta0: f64) -> DensityMatrix {
    udw_equilibrium_state(&UdwParams::new(t_u, omega, delta0).unwrap()).unwrap()
}

fn report(t_u: f64, omega: f64, delta0: f64) -> MeasureReport {
    measure_all(&state(t_u, omega, delta0)).unwrap()
}

fn udw(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_udw"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "udw {}: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    Ok(out.stdout)
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn verdict(failures: Vec<String>, detail: String) -> Outcome {
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(failures.join("; "))
    }
}

fn death_temperature_anchor() -> Outcome {
    let out = String::from_utf8(udw(&["deathpoint", "--omega", "1", "--delta0", "0"])?).unwrap();
    let t: f64 = out
        .trim()
        .strip_prefix("t_u=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| format!("unexpected output {out:?}"))?;
    if (0.47..=0.51).contains(&t) {
        Ok(format!("T_U = {t}"))
    } else {
        Err(format!("T_U = {t} outside [0.47, 0.51]"))
    }
}

fn infinite_acceleration() -> Outcome {
    let mut failures = Vec::new();
    for delta0 in [-1.0, -0.5, 0.5, 1.0] {
        let r = report(1e3, 1.0, delta0);
        check(&mut failures, r.concurrence <= 1e-8, || {
            format!("delta0={delta0}: concurrence {:e} > 1e-8", r.concurrence)
        });
        check(
            &mut failures,
            (r.coherence_l1 - f64::abs(delta0) / 3.0).abs() <= 1e-6,
            || {
                format!(
                    "delta0={delta0}: coherence {} != {}",
                    r.coherence_l1,
                    f64::abs(delta0) / 3.0
                )
            },
        );
        check(&mut failures, r.lqu >= 1e-4, || {
            format!("delta0={delta0}: lqu {:e} < 1e-4", r.lqu)
        });
    }
    verdict(failures, "T_U=1e3, 4 curves".into())
}

fn concurrence_column(delta0: f64) -> Vec<f64> {
    uniform_grid(0.05, 3.0, 200)
        .into_iter()
        .map(|t| report(t, 1.0, delta0).concurrence)
        .collect()
}

fn separable_curve() -> Outcome {
    let worst = concurrence_column(1.0).into_iter().fold(0.0, f64::max);
    if worst <= 1e-10 {
        Ok(format!("max concurrence {worst:e}"))
    } else {
        Err(format!("max concurrence {worst:e} > 1e-10"))
    }
}

fn monotone_decay() -> Outcome {
    let mut failures = Vec::new();
    for delta0 in [-1.0, -0.5, 0.0, 0.5] {
        let column = concurrence_column(delta0);
        let worst_rise = column
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::NEG_INFINITY, f64::max);
        check(&mut failures, worst_rise <= 1e-9, || {
            format!("delta0={delta0}: concurrence rises by {worst_rise:e}")
        });
    }
    verdict(failures, "200-point grids, 4 curves".into())
}

fn revival() -> Outcome {
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for delta0 in [0.5, 0.9] {
        let revived = revival_check(1.0, delta0).map_err(|e| e.to_string())?;
        check(&mut failures, revived, || {
            format!("delta0={delta0}: no revival")
        });
        let t = find_dark_point(1.0, delta0)
            .map_err(|e| e.to_string())?
            .t_u
            .ok_or_else(|| format!("delta0={delta0}: no dark point"))?;
        let c = l1_coherence(&state(t, 1.0, delta0));
        check(&mut failures, c <= 1e-10, || {
            format!("delta0={delta0}: coherence {c:e} at T*={t}")
        });
        detail.push(format!("T*({delta0})={t:.6}"));
    }
    verdict(failures, detail.join(", "))
}

fn scaling_law() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for t in uniform_grid(0.05, 3.0, 20) {
        for delta0 in [-3.0, -1.0, 0.0, 0.5, 1.0] {
            let base = report(t, 1.0, delta0);
            for k in [2.0, 3.0, 10.0] {
                let scaled = report(k * t, k, delta0);
                for m in Measure::ALL {
                    worst = worst.max((scaled.get(m) - base.get(m)).abs());
                }
            }
        }
    }
    check(&mut failures, worst <= 1e-10, || {
        format!("measure deviation {worst:e} > 1e-10")
    });
    let death = |omega| find_death_temperature(omega, 0.0).ok().and_then(|p| p.t_u);
    match (death(1.0), death(3.0)) {
        (Some(t1), Some(t3)) => check(&mut failures, (t3 - 3.0 * t1).abs() <= 1e-5, || {
            format!("death temperature {t3} != 3 x {t1}")
        }),
        _ => failures.push("death temperature missing".into()),
    }
    verdict(failures, format!("max deviation {worst:e}"))
}

fn oracle_suites() -> Outcome {
    let mut rng = common::rng(2024);
    let (mut lqu_gap, mut uin_gap, mut pure_gap, mut x_gap) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..200 {
        let rho = common::random_state(&mut rng);
        let l = lqu(&rho).map_err(|e| e.to_string())?;
        let u = uin(&rho).map_err(|e| e.to_string())?;
        lqu_gap = lqu_gap.max((l - lqu_bruteforce(&rho, 10_000).map_err(|e| e.to_string())?).abs());
        uin_gap = uin_gap.max((u - uin_bruteforce(&rho, 10_000).map_err(|e| e.to_string())?).abs());

        let pure = common::random_pure_state(&mut rng);
        let expected = 2.0 * common::marginal_impurity(&pure);
        pure_gap = pure_gap.max((lqu(&pure).map_err(|e| e.to_string())? - expected).abs());
    }
    for t in uniform_grid(0.05, 3.0, 50) {
        for delta0 in uniform_grid(-3.0, 1.0, 21) {
            let rho = state(t, 1.0, delta0);
            let gap = concurrence(&rho).unwrap() - x_state_concurrence(&rho).unwrap();
            x_gap = x_gap.max(gap.abs());
        }
    }
    let mut failures = Vec::new();
    check(&mut failures, lqu_gap <= 2e-3, || {
        format!("lqu vs search {lqu_gap:e}")
    });
    check(&mut failures, uin_gap <= 2e-3, || {
        format!("uin vs search {uin_gap:e}")
    });
    check(&mut failures, pure_gap <= 1e-8, || {
        format!("pure-state lqu {pure_gap:e}")
    });
    check(&mut failures, x_gap <= 1e-10, || {
        format!("Wootters vs X-form {x_gap:e}")
    });
    verdict(
        failures,
        format!("lqu {lqu_gap:.1e}, uin {uin_gap:.1e}, pure {pure_gap:.1e}, x-form {x_gap:.1e}"),
    )
}

fn reference_states() -> Outcome {
    let mut failures = Vec::new();
    for (name, rho, expected) in [
        ("bell", reference::bell_phi_plus(), 1.0),
        ("mixed", reference::maximally_mixed(), 0.0),
    ] {
        let r = measure_all(&rho).map_err(|e| e.to_string())?;
        for m in Measure::ALL {
            check(&mut failures, (r.get(m) - expected).abs() <= 1e-10, || {
                format!("{name}: {m} = {}", r.get(m))
            });
        }
    }
    let hot = state(1e9, 1.0, 0.0);
    let gap = (hot.matrix() - reference::maximally_mixed().matrix()).max_abs();
    check(&mut failures, gap <= 1e-8, || {
        format!("udw(1e9,1,0) differs from I/4 by {gap:e}")
    });
    verdict(failures, format!("udw(1e9,1,0) - I/4 = {gap:e}"))
}

fn determinism() -> Outcome {
    let args = [
        "sweep",
        "--tu",
        "0.05:3:60",
        "--omega",
        "1,3,5",
        "--delta0",
        "-3,-1,0,0.5,1",
    ];
    let first = udw(&args)?;
    let second = udw(&args)?;
    let one = udw(&[&["--threads", "1"], &args[..]].concat())?;
    let eight = udw(&[&["--threads", "8"], &args[..]].concat())?;
    if first == second && one == eight && first == one {
        Ok(format!("{} bytes", first.len()))
    } else {
        Err("CSV bytes differ".into())
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("death temperature anchor", death_temperature_anchor),
        ("infinite acceleration", infinite_acceleration),
        ("separable curve has no entanglement", separable_curve),
        ("monotone entanglement decay", monotone_decay),
        ("coherence dark point and revival", revival),
        ("scaling law", scaling_law),
        ("oracle suites", oracle_suites),
        ("exact reference states", reference_states),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({reason})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
