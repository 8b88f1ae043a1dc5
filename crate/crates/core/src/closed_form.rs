//! Analytic solution of the two-level dynamics.
//!
//! The total Hamiltonian drives a Rabi-type oscillation between |s> and |w>
//! at angular frequency (hbar = 1)
//!
//!   omega = E sqrt( ((1 - eps)/2)^2 + eps x^2 ),
//!
//! with transition amplitude
//!
//!   <w|psi(t)> = e^{-i(E+E')t/2} ( x cos(omega t) + i cos(2 theta - phi) sin(omega t) ),
//!
//! where tan(phi) = sqrt(1 - x^2)/x and theta is the mixing angle fixed by
//!
//!   tan(theta) = eps x sqrt(1-x^2) / ( (1-eps)/2 + eps x^2 - sqrt(((1-eps)/2)^2 + eps x^2) ).
//!
//! The global phase factor is carried explicitly so complex amplitudes match
//! the Schrodinger integrator exactly, not just in modulus.
//!
//! `cos(2 theta - phi)` is the visibility of the oscillating term; its square
//! is the peak success probability, which feeds the repeated-trial cost model
//! in [`peak`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::SearchParams;

/// Closed-form bundle: oscillation frequency, mixing angles and visibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    omega: f64,
    phi: f64,
    theta: f64,
    visibility: f64,
}

impl DerivedQuantities {
    /// Angular frequency of the probability oscillation (energy units).
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Initial-state polar angle, tan(phi) = sqrt(1-x^2)/x, in [0, pi/2].
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Mixing angle; increases from pi/2 towards pi/2 + phi as the driving
    /// strengthens.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// cos(2 theta - phi), the signed amplitude of the oscillating term.
    pub fn visibility(&self) -> f64 {
        self.visibility
    }
}

/// Oscillation frequency, defined for any real epsilon.
///
/// For epsilon < 0 the radicand is rewritten as ((1+eps)/2)^2 - eps(1-x^2),
/// a sum of non-negative terms, so the frequency stays real for all real
/// mistuning ratios.
pub fn angular_frequency(params: &SearchParams) -> f64 {
    let e = params.oracle_energy();
    let eps = params.epsilon();
    let x = params.overlap();
    let radicand = if eps >= 0.0 {
        let a = (1.0 - eps) / 2.0;
        a * a + eps * x * x
    } else {
        let b = (1.0 + eps) / 2.0;
        b * b - eps * (1.0 - x) * (1.0 + x)
    };
    e * radicand.sqrt()
}

/// Evaluate omega, phi, theta and the visibility for a valid instance.
///
/// Errors with [`Error::DegenerateOverlap`] when x = 0 (no transition can
/// occur, theta is undefined) and [`Error::NegativeEpsilon`] for epsilon < 0
/// (the mixing angle is constructed for non-negative driving only).
///
/// Limits built into the evaluation rather than special-cased: epsilon = 0
/// gives theta = pi/2 exactly, and x = 1 gives phi = 0, theta = pi/2.
pub fn derived_quantities(params: &SearchParams) -> Result<DerivedQuantities> {
    let x = params.overlap();
    if x == 0.0 {
        return Err(Error::DegenerateOverlap);
    }
    let eps = params.epsilon();
    if eps < 0.0 {
        return Err(Error::NegativeEpsilon(eps));
    }
    let e = params.oracle_energy();
    let sx = ((1.0 - x) * (1.0 + x)).sqrt(); // sqrt(1 - x^2) without cancellation near x = 1
    let phi = sx.atan2(x);

    let omega = angular_frequency(params);
    let r = omega / e;
    let a = (1.0 - eps) / 2.0;
    let b = eps * x * x;
    // The raw denominator (a + b) - r cancels catastrophically for small
    // eps; rationalizing gives -eps^2 x^2 (1-x^2) / (a + b + r), and the
    // positive denominator itself is rewritten for a < 0 where a + r would
    // cancel in turn.
    let denom_pos = if a >= 0.0 { a + b + r } else { b + b / (r - a) };
    // Common positive factor eps*x*sx dropped from both atan2 arguments.
    let q = -(eps * x * sx) / denom_pos;
    let theta = 1.0_f64.atan2(q);
    let visibility = (2.0 * theta - phi).cos();

    Ok(DerivedQuantities {
        omega,
        phi,
        theta,
        visibility,
    })
}

/// Transition amplitude <w|psi(t)> including the global phase e^{-i(E+E')t/2}.
///
/// At t = 0 this is exactly x + 0i. The value agrees with the Schrodinger
/// integrator in both modulus and phase.
pub fn amplitude_at(params: &SearchParams, t: f64) -> Result<Complex64> {
    let dq = derived_quantities(params)?;
    Ok(amplitude_with(params, &dq, t))
}

/// Amplitude from a precomputed [`DerivedQuantities`] bundle.
pub fn amplitude_with(params: &SearchParams, dq: &DerivedQuantities, t: f64) -> Complex64 {
    let mean_energy = 0.5 * (params.oracle_energy() + params.driving_energy());
    let phase = Complex64::from_polar(1.0, -mean_energy * t);
    let (sin_wt, cos_wt) = (dq.omega * t).sin_cos();
    phase * Complex64::new(params.overlap() * cos_wt, dq.visibility * sin_wt)
}

/// Success probability |<w|psi(t)>|^2 = x^2 cos^2(omega t) + vis^2 sin^2(omega t).
pub fn success_probability(params: &SearchParams, t: f64) -> Result<f64> {
    let dq = derived_quantities(params)?;
    Ok(probability_with(params, &dq, t))
}

/// Probability from a precomputed [`DerivedQuantities`] bundle.
pub fn probability_with(params: &SearchParams, dq: &DerivedQuantities, t: f64) -> f64 {
    let x = params.overlap();
    let (sin_wt, cos_wt) = (dq.omega * t).sin_cos();
    let p = x * x * cos_wt * cos_wt + dq.visibility * dq.visibility * sin_wt * sin_wt;
    p.clamp(0.0, 1.0)
}

/// First probability maximum and the repeated-trial cost built on it.
///
/// The model: independent trials, each evolving for `t_star` and measuring,
/// repeated until success. Expected trials = 1/p_max; expected total time =
/// t_star / p_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakReport {
    t_star: f64,
    p_max: f64,
    expected_trials: f64,
    expected_total_time: Option<f64>,
}

impl PeakReport {
    /// Time of the first probability maximum.
    pub fn t_star(&self) -> f64 {
        self.t_star
    }

    /// Peak success probability (the visibility squared for eps > 0).
    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    /// Expected number of trials, 1/p_max.
    pub fn expected_trials(&self) -> f64 {
        self.expected_trials
    }

    /// Expected total evolution time t_star/p_max over repeated trials.
    ///
    /// `None` when the driving is absent (eps = 0): the probability is flat
    /// in t, the optimal per-trial time is 0, and a "total time" of zero
    /// would hide the classical cost of the 1/x^2 expected trials. Callers
    /// should report the trial count instead.
    pub fn expected_total_time(&self) -> Option<f64> {
        self.expected_total_time
    }
}

/// Locate the first probability maximum.
///
/// For eps > 0 the maximum sits at the first time sin^2(omega t) = 1, i.e.
/// t_star = pi/(2 omega), with p_max = visibility^2 (which dominates x^2 for
/// eps > 0). For eps = 0 the probability is flat at x^2 and t_star = 0.
pub fn peak(params: &SearchParams) -> Result<PeakReport> {
    let dq = derived_quantities(params)?;
    let x = params.overlap();
    if params.epsilon() == 0.0 {
        let p_max = x * x;
        return Ok(PeakReport {
            t_star: 0.0,
            p_max,
            expected_trials: 1.0 / p_max,
            expected_total_time: None,
        });
    }
    let t_star = std::f64::consts::FRAC_PI_2 / dq.omega;
    let p_max = dq.visibility * dq.visibility;
    Ok(PeakReport {
        t_star,
        p_max,
        expected_trials: 1.0 / p_max,
        expected_total_time: Some(t_star / p_max),
    })
}

/// Large-N approximation to the visibility squared at x = 1/sqrt(N):
/// ((eps+1)/(eps-1))^2 / N. Diverges at eps = 1, where the exact value is 1.
pub fn asymptotic_visibility_sq(epsilon: f64, dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { got: dim, need: 2 });
    }
    if !epsilon.is_finite() {
        return Err(Error::NonFiniteEnergy(epsilon));
    }
    if epsilon == 1.0 {
        return Err(Error::AsymptoteAtUnity);
    }
    let ratio = (epsilon + 1.0) / (epsilon - 1.0);
    Ok(ratio * ratio / dim as f64)
}

/// Leading-order (sin theta, cos theta) at x = 1/sqrt(N) for large N.
///
/// For eps > 1: (eps/(eps-1) / sqrt(N), -1); for eps < 1: (1, eps/(eps-1) /
/// sqrt(N)). Intended for comparison against the exact angle; meaningful
/// when N is large (>= 100 recommended).
pub fn theta_asymptotics(epsilon: f64, dim: usize) -> Result<(f64, f64)> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { got: dim, need: 2 });
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::NegativeEpsilon(epsilon));
    }
    if epsilon == 1.0 {
        return Err(Error::AsymptoteAtUnity);
    }
    let scaled = epsilon / (epsilon - 1.0) / (dim as f64).sqrt();
    if epsilon > 1.0 {
        Ok((scaled, -1.0))
    } else {
        Ok((1.0, scaled))
    }
}

/// Expected total search time over an epsilon grid at fixed E, N, x.
///
/// One (epsilon, expected_total_time) pair per grid point; the time is
/// `None` at eps = 0 (see [`PeakReport::expected_total_time`]). Grid values
/// must be non-negative; degenerate instances propagate their error.
pub fn expected_total_time_curve(
    params_base: &SearchParams,
    epsilon_grid: &[f64],
) -> Result<Vec<(f64, Option<f64>)>> {
    let mut out = Vec::with_capacity(epsilon_grid.len());
    for &eps in epsilon_grid {
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::NegativeEpsilon(eps));
        }
        let params = params_base.with_epsilon(eps)?;
        let report = peak(&params)?;
        out.push((eps, report.expected_total_time()));
    }
    Ok(out)
}
