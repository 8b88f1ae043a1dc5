//! Overlap histogram of Haar-random states against the exact law and the
//! half-normal asymptotic form, with Kolmogorov-Smirnov summaries.

use ctsearch::stats::{self, OverlapLaw, KS_ACCEPTANCE_COEFFICIENT};

use crate::config::Resolved;
use crate::output::{Cell, Check, CommandOutput};
use crate::CliError;

const BINS: usize = 16;

pub fn run(config: &Resolved) -> Result<CommandOutput, CliError> {
    let n = config.n;
    let set = stats::collect_overlaps(n, config.samples, config.seed)?;

    // bin width 1/(4 sqrt(N)) over [0, 4/sqrt(N)]: 16 bins covering the
    // bulk; the exact law puts ~e^{-16} of its mass beyond the last edge
    let sqrt_n = (n as f64).sqrt();
    let width = 1.0 / (4.0 * sqrt_n);
    let mut counts = [0usize; BINS];
    for &x in set.samples() {
        let bin = (x / width) as usize;
        if bin < BINS {
            counts[bin] += 1;
        }
    }

    let mut rows = Vec::with_capacity(BINS);
    for (bin, &count) in counts.iter().enumerate() {
        let center = (bin as f64 + 0.5) * width;
        let empirical = count as f64 / (set.count() as f64 * width);
        rows.push(vec![
            Cell::Float(center),
            Cell::Float(empirical),
            Cell::Float(stats::overlap_pdf(n, center, OverlapLaw::ExactHaar)?),
            Cell::Float(stats::overlap_pdf(n, center, OverlapLaw::AsymptoticHalfNormal)?),
        ]);
    }

    let threshold = KS_ACCEPTANCE_COEFFICIENT / (set.count() as f64).sqrt();
    let d_exact = stats::ks_statistic(&set, OverlapLaw::ExactHaar)?;
    let d_asym = stats::ks_statistic(&set, OverlapLaw::AsymptoticHalfNormal)?;
    let mean_sq_err = (set.mean_overlap_sq() - 1.0 / n as f64).abs();
    // 3 standard errors of the Beta(1, N-1) second moment
    let nf = n as f64;
    let var = (nf - 1.0) / (nf * nf * (nf + 1.0));
    let mean_tol = 3.0 * (var / set.count() as f64).sqrt();

    // the half-normal row is comparative: it records how far the asymptotic
    // form sits from these samples and is expected to miss the gate
    let checks = vec![
        Check {
            name: "ks_exact_haar",
            worst: d_exact,
            tolerance: threshold,
            pass: d_exact <= threshold,
        },
        Check {
            name: "ks_asymptotic_half_normal",
            worst: d_asym,
            tolerance: threshold,
            pass: d_asym <= threshold,
        },
        Check {
            name: "mean_overlap_sq_error",
            worst: mean_sq_err,
            tolerance: mean_tol,
            pass: mean_sq_err <= mean_tol,
        },
    ];

    Ok(CommandOutput {
        config: config.clone(),
        columns: vec![
            "x_bin",
            "empirical_density",
            "exact_density",
            "asymptotic_density",
        ],
        rows,
        checks,
    })
}
