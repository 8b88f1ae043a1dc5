//! Brute-force evolutions that validate the closed form.
//!
//! Two independent routes:
//!
//! * [`propagate_effective_2d`] — exact eigendecomposition of the Hamiltonian
//!   restricted to the invariant plane span{|w>, |r>}, where
//!   |s> = x|w> + sqrt(1-x^2)|r>. Works at any dimension in O(1) per sample
//!   and uses none of the mixing-angle machinery.
//! * [`integrate_schrodinger_rk4`] — fixed-step fourth-order integration of
//!   d psi/dt = -i H psi on the full N-dimensional space. No renormalization
//!   is applied during the run: norm drift is evidence of integrator error
//!   and stays visible in the recorded trajectory.

use num_complex::Complex64;

use crate::closed_form::{self, DerivedQuantities};
use crate::error::{Error, Result};
use crate::model::{inner_slices, norm_of, HamiltonianDense, SearchParams, StateVector};

/// Hard ceiling on dt * (E + E') for the fixed-step integrator.
pub const STEP_GUARD: f64 = 0.05;

/// Which evolution produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationMethod {
    /// Exact two-level eigen-propagation.
    Effective2d,
    /// Full-space fixed-step RK4.
    Rk4Full,
}

impl PropagationMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            PropagationMethod::Effective2d => "effective-2d",
            PropagationMethod::Rk4Full => "rk4-full",
        }
    }
}

/// Sampled evolution: times, transition amplitudes <w|psi(t)> and state
/// norms, tagged with the method that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    amplitudes: Vec<Complex64>,
    norms: Vec<f64>,
    method: PropagationMethod,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn method(&self) -> PropagationMethod {
        self.method
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn validate_time_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    if times[0] != 0.0 || !times.iter().all(|t| t.is_finite()) {
        return Err(Error::InvalidTimeGrid);
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidTimeGrid);
    }
    Ok(())
}

/// Exact evolution of the transition amplitude on the invariant plane.
///
/// In the orthonormal basis {|w>, |r>} the Hamiltonian restricts to
///
///   [ E + E' x^2          E' x sqrt(1-x^2) ]
///   [ E' x sqrt(1-x^2)    E' (1 - x^2)     ]
///
/// which is diagonalized analytically; the initial state is (x, sqrt(1-x^2)).
/// When the off-diagonal coupling vanishes (x = 0, x = 1 or E' = 0) the
/// matrix is already diagonal and the amplitude is a pure phase times x.
pub fn propagate_effective_2d(params: &SearchParams, times: &[f64]) -> Result<Trajectory> {
    validate_time_grid(times)?;
    let x = params.overlap();
    let e = params.oracle_energy();
    let ep = params.driving_energy();
    let sx = ((1.0 - x) * (1.0 + x)).sqrt();

    let h00 = e + ep * x * x;
    let h11 = ep * (1.0 - x) * (1.0 + x);
    let h01 = ep * x * sx;

    let mut amplitudes = Vec::with_capacity(times.len());
    let mut norms = Vec::with_capacity(times.len());

    if h01 == 0.0 {
        // Diagonal restriction: |w> evolves by a phase, nothing transfers.
        for &t in times {
            amplitudes.push(x * Complex64::from_polar(1.0, -h00 * t));
            norms.push(1.0);
        }
        return Ok(Trajectory {
            times: times.to_vec(),
            amplitudes,
            norms,
            method: PropagationMethod::Effective2d,
        });
    }

    let mean = 0.5 * (h00 + h11);
    let half_gap = 0.5 * (h00 - h11);
    let delta = half_gap.hypot(h01);
    // Eigenvector components; the p = delta + half_gap form cancels for
    // negative half_gap, so rationalize there.
    let p = if half_gap >= 0.0 {
        delta + half_gap
    } else {
        h01 * h01 / (delta - half_gap)
    };
    let vnorm = p.hypot(h01);
    let (vp_w, vp_r) = (p / vnorm, h01 / vnorm);
    let (vm_w, vm_r) = (-h01 / vnorm, p / vnorm);

    let coeff_plus = vp_w * x + vp_r * sx;
    let coeff_minus = vm_w * x + vm_r * sx;
    let lambda_plus = mean + delta;
    let lambda_minus = mean - delta;

    for &t in times {
        let phase_plus = Complex64::from_polar(1.0, -lambda_plus * t);
        let phase_minus = Complex64::from_polar(1.0, -lambda_minus * t);
        let amp = phase_plus * (coeff_plus * vp_w) + phase_minus * (coeff_minus * vm_w);
        amplitudes.push(amp);
        let n_sq = (coeff_plus * phase_plus.norm()).powi(2)
            + (coeff_minus * phase_minus.norm()).powi(2);
        norms.push(n_sq.sqrt());
    }

    Ok(Trajectory {
        times: times.to_vec(),
        amplitudes,
        norms,
        method: PropagationMethod::Effective2d,
    })
}

/// Classic fixed-step RK4 for d psi/dt = -i H psi from psi(0) = s.
///
/// The requested `dt` is shrunk (never grown) so that an integer number of
/// steps lands exactly on `t_end`. The amplitude <w|psi> and the norm of psi
/// are recorded at every step, t = 0 included.
///
/// Preconditions: dt > 0, t_end >= 0, matching dimensions, and the step
/// guard dt * (E + E') <= [`STEP_GUARD`], with E + E' read off the trace of
/// the rank-2 Hamiltonian.
pub fn integrate_schrodinger_rk4(
    h: &HamiltonianDense,
    s: &StateVector,
    w: &StateVector,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    let n = h.dim();
    if s.dim() != n {
        return Err(Error::DimensionMismatch { left: s.dim(), right: n });
    }
    if w.dim() != n {
        return Err(Error::DimensionMismatch { left: w.dim(), right: n });
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::NonPositiveStep(dt));
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(Error::NegativeEndTime(t_end));
    }
    let energy_scale = h.trace().re;
    let product = dt * energy_scale;
    if product > STEP_GUARD * (1.0 + 1e-9) {
        return Err(Error::StepSizeTooLarge {
            product,
            limit: STEP_GUARD,
        });
    }

    let steps = ((t_end / dt) - 1e-9).ceil().max(0.0) as usize;
    let dt_eff = if steps > 0 { t_end / steps as f64 } else { dt };

    let mut psi: Vec<Complex64> = s.amplitudes().to_vec();
    let mut k1 = vec![Complex64::new(0.0, 0.0); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut stage = k1.clone();

    let mut times = Vec::with_capacity(steps + 1);
    let mut amplitudes = Vec::with_capacity(steps + 1);
    let mut norms = Vec::with_capacity(steps + 1);

    let record = |psi: &[Complex64], amplitudes: &mut Vec<Complex64>, norms: &mut Vec<f64>| {
        amplitudes.push(inner_slices(w.amplitudes(), psi));
        norms.push(norm_of(psi));
    };

    times.push(0.0);
    record(&psi, &mut amplitudes, &mut norms);

    for step in 1..=steps {
        rhs_into(h, &psi, &mut k1);

        for i in 0..n {
            stage[i] = psi[i] + 0.5 * dt_eff * k1[i];
        }
        rhs_into(h, &stage, &mut k2);

        for i in 0..n {
            stage[i] = psi[i] + 0.5 * dt_eff * k2[i];
        }
        rhs_into(h, &stage, &mut k3);

        for i in 0..n {
            stage[i] = psi[i] + dt_eff * k3[i];
        }
        rhs_into(h, &stage, &mut k4);

        let sixth = dt_eff / 6.0;
        for i in 0..n {
            psi[i] += sixth * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
        }

        times.push(step as f64 * dt_eff);
        record(&psi, &mut amplitudes, &mut norms);
    }

    Ok(Trajectory {
        times,
        amplitudes,
        norms,
        method: PropagationMethod::Rk4Full,
    })
}

/// Right-hand side -i H psi into a reusable buffer.
fn rhs_into(h: &HamiltonianDense, psi: &[Complex64], out: &mut [Complex64]) {
    h.apply_into(psi, out);
    for v in out.iter_mut() {
        *v = Complex64::new(v.im, -v.re); // multiply by -i
    }
}

/// Worst deviation of the recorded state norm from 1.
pub fn norm_drift(traj: &Trajectory) -> Result<f64> {
    if traj.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    Ok(traj
        .norms
        .iter()
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max))
}

/// Worst-case disagreement between a trajectory and the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    max_abs_amplitude_error: f64,
    max_probability_error: f64,
    at_time: f64,
}

impl ErrorReport {
    /// Largest |amp_trajectory - amp_closed_form| over the samples
    /// (complex difference, global phase included).
    pub fn max_abs_amplitude_error(&self) -> f64 {
        self.max_abs_amplitude_error
    }

    /// Largest | |amp|^2 - p_closed_form | over the samples.
    pub fn max_probability_error(&self) -> f64 {
        self.max_probability_error
    }

    /// Sample time of the worst amplitude error.
    pub fn at_time(&self) -> f64 {
        self.at_time
    }
}

/// Evaluate the closed form on the trajectory's own time grid and report the
/// worst amplitude and probability disagreements.
pub fn compare_to_closed_form(params: &SearchParams, traj: &Trajectory) -> Result<ErrorReport> {
    if traj.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let dq: DerivedQuantities = closed_form::derived_quantities(params)?;
    let mut report = ErrorReport {
        max_abs_amplitude_error: 0.0,
        max_probability_error: 0.0,
        at_time: traj.times[0],
    };
    for (i, &t) in traj.times.iter().enumerate() {
        let exact = closed_form::amplitude_with(params, &dq, t);
        let amp_err = (traj.amplitudes[i] - exact).norm();
        if amp_err > report.max_abs_amplitude_error {
            report.max_abs_amplitude_error = amp_err;
            report.at_time = t;
        }
        let prob = traj.amplitudes[i].norm_sqr();
        let prob_err = (prob - closed_form::probability_with(params, &dq, t)).abs();
        report.max_probability_error = report.max_probability_error.max(prob_err);
    }
    Ok(report)
}
