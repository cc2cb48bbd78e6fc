use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;

use super::LaurentPoly;
use crate::error::{Error, Result};

pub const DEFAULT_FIT_TOLERANCE: f64 = 1e-6;

/// Largest denominator accepted when rounding fitted coefficients.
pub const MAX_DENOMINATOR: i64 = 64;

/// Design matrices with `σ_min / σ_max` below this are rank deficient.
const RANK_EPS: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct FitReport {
    pub polynomial: LaurentPoly,
    /// Max over samples of `|p(θ) - value|` after rounding.
    pub residual: f64,
    /// Largest change any coefficient underwent when rounded (imaginary part included).
    pub max_rounding_shift: f64,
    /// `σ_max / σ_min` of the sample design matrix.
    pub condition: f64,
}

/// Least-squares fit of `Σ_{k=dmin}^{dmax} c_k e^{ikθ/2}` to the samples,
/// followed by rounding each `c_k` to the rational with the smallest
/// denominator (at most [`MAX_DENOMINATOR`]) within `tolerance`.
pub fn laurent_fit(
    samples: &[(f64, Complex64)],
    window: (i32, i32),
    tolerance: f64,
) -> Result<FitReport> {
    let (dmin, dmax) = window;
    assert!(dmin <= dmax, "empty degree window [{dmin}, {dmax}]");
    let width = (dmax - dmin + 1) as usize;
    if samples.len() < width {
        return Err(Error::IllConditioned {
            condition: f64::INFINITY,
        });
    }

    let design = DMatrix::from_fn(samples.len(), width, |r, c| {
        let k = (dmin + c as i32) as f64;
        Complex64::from_polar(1.0, k * samples[r].0 / 2.0)
    });
    let rhs = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));

    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if smin <= RANK_EPS * smax {
        return Err(Error::IllConditioned { condition });
    }
    let coeffs = svd
        .solve(&rhs, RANK_EPS * smax)
        .map_err(|_| Error::IllConditioned { condition })?;

    let mut polynomial = LaurentPoly::zero();
    let mut max_rounding_shift: f64 = 0.0;
    let mut rounded = DVector::<Complex64>::zeros(width);
    for (i, c) in coeffs.iter().enumerate() {
        let (r, shift) = rationalize(c.re, tolerance);
        let shift = shift.hypot(c.im);
        max_rounding_shift = max_rounding_shift.max(shift);
        rounded[i] = Complex64::new(*r.numer() as f64 / *r.denom() as f64, 0.0);
        polynomial.add_term(dmin + i as i32, r);
    }
    if max_rounding_shift > tolerance {
        return Err(Error::ResidualTooLarge {
            residual: max_rounding_shift,
            tolerance,
        });
    }

    let residual = (&design * &rounded - &rhs)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if residual > tolerance {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance,
        });
    }
    Ok(FitReport {
        polynomial,
        residual,
        max_rounding_shift,
        condition,
    })
}

/// Nearest rational with the smallest denominator `≤ MAX_DENOMINATOR` that
/// lies within `tolerance` of `value`; if none does, the overall nearest one.
/// Returns the rational and its distance from `value`.
pub fn rationalize(value: f64, tolerance: f64) -> (Rational64, f64) {
    let mut best = (Rational64::from_integer(value.round() as i64), f64::INFINITY);
    for den in 1..=MAX_DENOMINATOR {
        let num = (value * den as f64).round();
        let err = (value - num / den as f64).abs();
        if err <= tolerance {
            return (Rational64::new(num as i64, den), err);
        }
        if err < best.1 {
            best = (Rational64::new(num as i64, den), err);
        }
    }
    best
}
