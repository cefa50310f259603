//! Error function and complementary error function.
//!
//! Two regimes, split at `x = 2`:
//! - a scaled Maclaurin series with all-positive terms,
//!   `erf(x) = 2/sqrt(pi) * x * exp(-x^2) * sum_n (2x^2)^n / (2n+1)!!`,
//!   which avoids the cancellation of the alternating series;
//! - the classical continued fraction
//!   `sqrt(pi) * exp(x^2) * erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`
//!   evaluated with the modified Lentz algorithm.
//!
//! Absolute error is below 1e-13 on [0, 6] (the contract asks for 1e-12);
//! beyond that the true value is under 1e-16 and the continued fraction keeps
//! full relative accuracy until `exp(-x^2)` underflows to zero near x = 27.

use crate::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516_f64;
const SERIES_CUTOFF: f64 = 2.0;

/// Complementary error function. Errors on non-finite input.
pub fn erfc(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "erfc argument must be finite, got {x}"
        )));
    }
    Ok(erfc_raw(x))
}

/// Error function. Errors on non-finite input.
pub fn erf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "erf argument must be finite, got {x}"
        )));
    }
    Ok(erf_raw(x))
}

pub(crate) fn erfc_raw(x: f64) -> f64 {
    if x < 0.0 {
        // erfc(-x) = 2 - erfc(x)
        return 2.0 - erfc_raw(-x);
    }
    if x <= SERIES_CUTOFF {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

fn erf_raw(x: f64) -> f64 {
    let ax = x.abs();
    let magnitude = if ax <= SERIES_CUTOFF {
        erf_series(ax)
    } else {
        1.0 - erfc_cf(ax)
    };
    if x.is_sign_negative() {
        -magnitude
    } else {
        magnitude
    }
}

fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let two_x_sq = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut odd = 1.0;
    loop {
        odd += 2.0;
        term *= two_x_sq / odd;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * x * (-x * x).exp() * sum
}

fn erfc_cf(x: f64) -> f64 {
    // Modified Lentz on v = x + (1/2)/(x + 1/(x + (3/2)/(x + ...))),
    // partial numerators a_n = n/2, partial denominators b_n = x.
    const TINY: f64 = 1e-300;
    let mut value = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..=300 {
        let a = n as f64 * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        value *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (SQRT_PI * value)
}
