//! Haar-random initial states and the statistics of the overlap
//! x = |<w|s>|.
//!
//! Ground truth is the exact complex-Haar law: x^2 of a Haar state against a
//! fixed reference is Beta(1, N-1) distributed, so x has density
//!
//!   f(x) = 2 (N-1) x (1 - x^2)^(N-2)   on [0, 1],
//!
//! with CDF 1 - (1-x^2)^(N-1). The half-normal form sqrt(4N/pi) e^{-N x^2}
//! is carried alongside as a comparison curve only: it keeps the same
//! E[x^2] ~ 1/N scale but differs qualitatively at the origin (it is
//! positive at x = 0 where the exact density vanishes). Which of the two a
//! given large-N argument intends is for the caller to decide; both are
//! exposed and the Kolmogorov-Smirnov distance to each can be reported.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::StateVector;
use num_complex::Complex64;

/// Coefficient c in the sup-distance acceptance threshold c/sqrt(n) used by
/// the goodness-of-fit gates.
pub const KS_ACCEPTANCE_COEFFICIENT: f64 = 1.63;

/// Samples drawn per derived RNG stream; sampling is chunked so the result
/// depends only on (seed, chunk index), never on how chunks are scheduled.
const SAMPLES_PER_STREAM: u64 = 4096;

/// Which overlap law to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapLaw {
    /// Exact complex-Haar modulus law, 2(N-1) x (1-x^2)^(N-2).
    ExactHaar,
    /// Half-normal large-N form, sqrt(4N/pi) e^{-N x^2}, supported on
    /// [0, infinity).
    AsymptoticHalfNormal,
}

/// Seeded ensemble of overlap samples x = |<w|s>| at fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapSampleSet {
    dim: usize,
    samples: Vec<f64>,
    seed: u64,
}

impl OverlapSampleSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn count(&self) -> usize {
        self.samples.len()
    }

    /// Sample mean of x^2 (the exact Haar expectation is 1/N).
    pub fn mean_overlap_sq(&self) -> f64 {
        self.samples.iter().map(|x| x * x).sum::<f64>() / self.samples.len() as f64
    }

    /// Empirical median of x.
    pub fn median(&self) -> f64 {
        let mut sorted = self.samples.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        let n = sorted.len();
        if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        }
    }
}

/// Draw one Haar-random state: N independent standard complex Gaussian
/// components, normalized. Unitary invariance of the Gaussian vector makes
/// the result uniform on the unit sphere.
pub fn sample_haar_state(dim: usize, rng: &mut impl Rng) -> Result<StateVector> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { got: dim, need: 2 });
    }
    let mut amplitudes = Vec::with_capacity(dim);
    for _ in 0..dim {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        amplitudes.push(Complex64::new(re, im));
    }
    StateVector::from_unnormalized(amplitudes)
}

/// Derived stream for a worker/chunk index: the base seed keys the cipher,
/// the index selects the stream.
fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draw `count` Haar states and record x = |<w|s>| against the fixed marked
/// state w = e0.
///
/// Sampling is split into fixed-size chunks, one derived RNG stream per
/// chunk, merged in chunk order: identical (dim, count, seed) always
/// reproduce the identical sample list.
pub fn collect_overlaps(dim: usize, count: usize, seed: u64) -> Result<OverlapSampleSet> {
    if count < 1 {
        return Err(Error::TooFewSamples { got: count, need: 1 });
    }
    if dim < 2 {
        return Err(Error::DimensionTooSmall { got: dim, need: 2 });
    }
    let mut samples = Vec::with_capacity(count);
    let mut remaining = count;
    let mut chunk_index = 0u64;
    while remaining > 0 {
        let take = remaining.min(SAMPLES_PER_STREAM as usize);
        let mut rng = stream_rng(seed, chunk_index);
        for _ in 0..take {
            let s = sample_haar_state(dim, &mut rng)?;
            samples.push(s.amplitudes()[0].norm());
        }
        remaining -= take;
        chunk_index += 1;
    }
    Ok(OverlapSampleSet { dim, samples, seed })
}

/// Probability density of the overlap under the chosen law.
///
/// The exact law lives on [0, 1]; the half-normal form on [0, infinity).
pub fn overlap_pdf(dim: usize, x: f64, law: OverlapLaw) -> Result<f64> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { got: dim, need: 2 });
    }
    let n = dim as f64;
    match law {
        OverlapLaw::ExactHaar => {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::OverlapOutOfRange(x));
            }
            let one_minus_x_sq = (1.0 - x) * (1.0 + x);
            Ok(2.0 * (n - 1.0) * x * one_minus_x_sq.powf(n - 2.0))
        }
        OverlapLaw::AsymptoticHalfNormal => {
            if x.is_nan() || x < 0.0 {
                return Err(Error::OverlapOutOfRange(x));
            }
            Ok((4.0 * n / std::f64::consts::PI).sqrt() * (-n * x * x).exp())
        }
    }
}

/// Cumulative distribution of the overlap under the chosen law.
pub fn overlap_cdf(dim: usize, x: f64, law: OverlapLaw) -> Result<f64> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { got: dim, need: 2 });
    }
    let n = dim as f64;
    match law {
        OverlapLaw::ExactHaar => {
            if x <= 0.0 {
                return Ok(0.0);
            }
            if x >= 1.0 {
                return Ok(1.0);
            }
            let one_minus_x_sq = (1.0 - x) * (1.0 + x);
            Ok(1.0 - one_minus_x_sq.powf(n - 1.0))
        }
        OverlapLaw::AsymptoticHalfNormal => {
            if x <= 0.0 {
                return Ok(0.0);
            }
            Ok(erf(n.sqrt() * x))
        }
    }
}

/// Median of the exact law: sqrt(1 - 2^(-1/(N-1))).
pub fn exact_median(dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { got: dim, need: 2 });
    }
    let n = dim as f64;
    Ok((1.0 - 2f64.powf(-1.0 / (n - 1.0))).sqrt())
}

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of the sample
/// set and the chosen law. Requires at least 100 samples.
pub fn ks_statistic(set: &OverlapSampleSet, law: OverlapLaw) -> Result<f64> {
    if set.count() < 100 {
        return Err(Error::TooFewSamples {
            got: set.count(),
            need: 100,
        });
    }
    let mut sorted = set.samples.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut sup = 0.0_f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = overlap_cdf(set.dim, x, law)?;
        let below = (f - i as f64 / n).abs();
        let above = ((i + 1) as f64 / n - f).abs();
        sup = sup.max(below.max(above));
    }
    Ok(sup)
}

/// Error function via the Abramowitz-Stegun 7.1.26 rational approximation;
/// absolute error below 1.5e-7, ample for distribution comparisons.
fn erf(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    let t = 1.0 / (1.0 + 0.3275911 * x);
    let poly = t
        * (0.254829592
            + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
    sign * (1.0 - poly * (-x * x).exp())
}
