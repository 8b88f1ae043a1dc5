//! The invariant suite: every closed-form identity cross-checked against
//! the exact two-level propagator and the full-space integrator, each with
//! a pinned tolerance. Exit code 0 only if every check passes.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ctsearch::closed_form::{self, angular_frequency};
use ctsearch::model::{build_restricted_instance, HamiltonianDense, SearchParams};
use ctsearch::{oracle, Trajectory, STEP_GUARD};

use crate::config::Resolved;
use crate::output::{Cell, Check, CommandOutput};
use crate::CliError;

const TOL_CLOSED_VS_2D: f64 = 1e-10;
const TOL_CLOSED_VS_RK4: f64 = 1e-6;
const TOL_ORACLE_AGREEMENT: f64 = 1e-6;
const TOL_RK4_DRIFT: f64 = 1e-8;
const TOL_2D_DRIFT: f64 = 1e-13;
const TOL_THETA_IDENTITY: f64 = 1e-9;
const TOL_THETA_BRANCH: f64 = 1e-12;
const TOL_AMP_PROB: f64 = 1e-12;
/// Global-error halving ratio must fall in [12, 20]: 4th-order signature.
const ORDER_RATIO_CENTER: f64 = 16.0;
const ORDER_RATIO_HALF_WIDTH: f64 = 4.0;

struct Worst {
    value: f64,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0 }
    }

    fn record(&mut self, v: f64) {
        if v > self.value {
            self.value = v;
        }
    }
}

pub fn run(config: &Resolved) -> Result<CommandOutput, CliError> {
    let grid = config
        .epsilon_grid
        .as_deref()
        .expect("validate config carries a grid");
    let energy = config.energy;
    let n = config.n;
    let eps_max = grid.last().copied().unwrap_or(1.0);
    // default to half the guard: the drift budget of 1e-8 is comfortable
    // there even for the stiffest grid point over a full 2 pi / omega run
    let dt = config
        .dt
        .unwrap_or(0.5 * STEP_GUARD / (energy * (1.0 + eps_max)));

    let mut checks = Vec::new();

    // --- closed form vs exact two-level propagator, randomized ----------
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst_2d = Worst::new();
    for _ in 0..1000 {
        let e = 0.25 + 3.75 * rng.random::<f64>();
        let eps = 10.0 * rng.random::<f64>();
        let x = 1e-3 + (1.0 - 2e-3) * rng.random::<f64>();
        let params = SearchParams::new(e, eps * e, n, Some(x))?;
        let dq = closed_form::derived_quantities(&params)?;
        let t = 3.0 * std::f64::consts::PI / dq.omega() * rng.random::<f64>();
        let times = [0.0, t.max(f64::MIN_POSITIVE)];
        let traj = oracle::propagate_effective_2d(&params, &times)?;
        let report = oracle::compare_to_closed_form(&params, &traj)?;
        worst_2d.record(report.max_abs_amplitude_error());
    }
    checks.push(Check {
        name: "closed_vs_effective2d_amplitude",
        worst: worst_2d.value,
        tolerance: TOL_CLOSED_VS_2D,
        pass: worst_2d.value <= TOL_CLOSED_VS_2D,
    });

    // --- closed form vs full-space RK4 over the mistuning grid -----------
    let mut worst_rk4 = Worst::new();
    let mut worst_pair = Worst::new();
    let mut worst_drift = Worst::new();
    let mut trajectories: Vec<(SearchParams, Trajectory)> = Vec::new();
    for &eps in grid {
        let params = SearchParams::new(energy, eps * energy, n, None)?;
        let dq = closed_form::derived_quantities(&params)?;
        let period = 2.0 * std::f64::consts::PI / dq.omega();
        let (w, s) = build_restricted_instance(&params, 0)?;
        let h = HamiltonianDense::build(&params, &w, &s)?;
        let traj = oracle::integrate_schrodinger_rk4(&h, &s, &w, period, dt)?;
        let report = oracle::compare_to_closed_form(&params, &traj)?;
        worst_rk4.record(report.max_probability_error());
        worst_drift.record(oracle::norm_drift(&traj)?);

        let two_level = oracle::propagate_effective_2d(&params, traj.times())?;
        let pair_err = traj
            .amplitudes()
            .iter()
            .zip(two_level.amplitudes())
            .map(|(a, b)| (a.norm_sqr() - b.norm_sqr()).abs())
            .fold(0.0, f64::max);
        worst_pair.record(pair_err);
        trajectories.push((params, two_level));
    }
    checks.push(Check {
        name: "closed_vs_rk4_probability",
        worst: worst_rk4.value,
        tolerance: TOL_CLOSED_VS_RK4,
        pass: worst_rk4.value <= TOL_CLOSED_VS_RK4,
    });
    checks.push(Check {
        name: "effective2d_vs_rk4_probability",
        worst: worst_pair.value,
        tolerance: TOL_ORACLE_AGREEMENT,
        pass: worst_pair.value <= TOL_ORACLE_AGREEMENT,
    });
    checks.push(Check {
        name: "rk4_norm_drift",
        worst: worst_drift.value,
        tolerance: TOL_RK4_DRIFT,
        pass: worst_drift.value <= TOL_RK4_DRIFT,
    });

    let mut worst_2d_drift = Worst::new();
    for (_, traj) in &trajectories {
        worst_2d_drift.record(oracle::norm_drift(traj)?);
    }
    checks.push(Check {
        name: "effective2d_norm_drift",
        worst: worst_2d_drift.value,
        tolerance: TOL_2D_DRIFT,
        pass: worst_2d_drift.value <= TOL_2D_DRIFT,
    });

    // --- mixing-angle identity and branch, randomized --------------------
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut worst_identity = Worst::new();
    let mut worst_branch = Worst::new();
    let mut worst_consistency = Worst::new();
    for _ in 0..10_000 {
        let x = (rng.random::<f64>()).clamp(1e-9, 1.0 - 1e-12);
        let eps = 10.0 * rng.random::<f64>();
        let e = 0.5 + 2.0 * rng.random::<f64>();
        let params = SearchParams::new(e, eps * e, n.max(2), Some(x))?;
        let dq = closed_form::derived_quantities(&params)?;
        let target = -x * (1.0 + eps) * e / (2.0 * angular_frequency(&params));
        worst_identity.record((dq.visibility() - target).abs());
        let below = std::f64::consts::FRAC_PI_2 - dq.theta();
        let above = dq.theta() - (std::f64::consts::FRAC_PI_2 + dq.phi());
        worst_branch.record(below.max(above).max(0.0));

        let t = 20.0 * rng.random::<f64>();
        let amp: Complex64 = closed_form::amplitude_with(&params, &dq, t);
        let prob = closed_form::probability_with(&params, &dq, t);
        worst_consistency.record((amp.norm_sqr() - prob).abs());
    }
    checks.push(Check {
        name: "theta_identity",
        worst: worst_identity.value,
        tolerance: TOL_THETA_IDENTITY,
        pass: worst_identity.value <= TOL_THETA_IDENTITY,
    });
    checks.push(Check {
        name: "theta_branch",
        worst: worst_branch.value,
        tolerance: TOL_THETA_BRANCH,
        pass: worst_branch.value <= TOL_THETA_BRANCH,
    });
    checks.push(Check {
        name: "amplitude_probability_consistency",
        worst: worst_consistency.value,
        tolerance: TOL_AMP_PROB,
        pass: worst_consistency.value <= TOL_AMP_PROB,
    });

    // --- convergence order: global amplitude error, dt vs dt/2 -----------
    {
        let params = SearchParams::new(energy, energy, n, None)?;
        let dq = closed_form::derived_quantities(&params)?;
        let period = 2.0 * std::f64::consts::PI / dq.omega();
        let (w, s) = build_restricted_instance(&params, 0)?;
        let h = HamiltonianDense::build(&params, &w, &s)?;
        let coarse = oracle::integrate_schrodinger_rk4(&h, &s, &w, period, dt)?;
        let fine = oracle::integrate_schrodinger_rk4(&h, &s, &w, period, dt / 2.0)?;
        let err_coarse = oracle::compare_to_closed_form(&params, &coarse)?
            .max_abs_amplitude_error();
        let err_fine = oracle::compare_to_closed_form(&params, &fine)?.max_abs_amplitude_error();
        let ratio = err_coarse / err_fine;
        checks.push(Check {
            name: "rk4_convergence_order",
            worst: (ratio - ORDER_RATIO_CENTER).abs(),
            tolerance: ORDER_RATIO_HALF_WIDTH,
            pass: (ratio - ORDER_RATIO_CENTER).abs() <= ORDER_RATIO_HALF_WIDTH,
        });
    }

    let rows = checks
        .iter()
        .map(|c| {
            vec![
                Cell::Text(c.name.to_string()),
                Cell::Float(c.worst),
                Cell::Float(c.tolerance),
                Cell::Text(if c.pass { "pass" } else { "fail" }.to_string()),
            ]
        })
        .collect();

    Ok(CommandOutput {
        config: config.clone(),
        columns: vec!["name", "worst", "tolerance", "pass"],
        rows,
        checks,
    })
}
