//! Adaptive Simpson quadrature with an absolute error budget.
//!
//! Each segment is accepted when the Richardson estimate
//! `|S(halves) - S(whole)| / 15` fits its share of the budget; the accepted
//! value carries the Richardson correction, so polynomials of degree <= 3 are
//! integrated exactly per panel. The interval starts pre-split four ways so a
//! deceptively symmetric first estimate cannot terminate the refinement.

use crate::{Error, Result};

/// Hard cap on the number of panels (spec'd refinement limit).
const MAX_PANELS: usize = 1 << 20;
const INITIAL_SPLIT: usize = 4;

/// Outcome of an adaptive quadrature: value, accumulated error estimate and
/// the number of integrand evaluations spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

struct Segment {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    budget: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    try_integrate(|x| Ok(f(x)), a, b, tol)
}

/// Integrate a fallible integrand over `[a, b]` to absolute tolerance `tol`.
/// Integrand errors abort the quadrature and are passed through.
pub fn try_integrate<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "quadrature bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(Error::Domain(format!(
            "quadrature bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "quadrature tolerance must be finite and > 0, got {tol}"
        )));
    }
    let mut evaluations = 0usize;
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            err_estimate: 0.0,
            evaluations,
        });
    }

    let mut eval = |x: f64| -> Result<f64> {
        evaluations += 1;
        let y = f(x)?;
        if !y.is_finite() {
            return Err(Error::Domain(format!(
                "integrand returned non-finite value {y} at x = {x}"
            )));
        }
        Ok(y)
    };

    // Pre-split into equal segments sharing endpoint evaluations.
    let mut knots = Vec::with_capacity(2 * INITIAL_SPLIT + 1);
    for i in 0..=(2 * INITIAL_SPLIT) {
        let x = a + (b - a) * (i as f64) / (2.0 * INITIAL_SPLIT as f64);
        knots.push((x, eval(x)?));
    }
    let mut stack: Vec<Segment> = Vec::new();
    for i in 0..INITIAL_SPLIT {
        let (xa, fa) = knots[2 * i];
        let (_, fm) = knots[2 * i + 1];
        let (xb, fb) = knots[2 * i + 2];
        stack.push(Segment {
            a: xa,
            b: xb,
            fa,
            fm,
            fb,
            whole: simpson(xa, xb, fa, fm, fb),
            budget: tol / INITIAL_SPLIT as f64,
        });
    }

    let mut value = 0.0;
    let mut err_estimate = 0.0;
    let mut panels = INITIAL_SPLIT;

    while let Some(seg) = stack.pop() {
        let m = 0.5 * (seg.a + seg.b);
        let lm = 0.5 * (seg.a + m);
        let rm = 0.5 * (m + seg.b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = simpson(seg.a, m, seg.fa, flm, seg.fm);
        let right = simpson(m, seg.b, seg.fm, frm, seg.fb);
        let delta = left + right - seg.whole;
        let splittable = lm > seg.a && rm > m && m > seg.a && seg.b > rm;
        if delta.abs() <= 15.0 * seg.budget || !splittable {
            value += left + right + delta / 15.0;
            err_estimate += delta.abs() / 15.0;
        } else {
            if panels >= MAX_PANELS {
                // Flush what is left at its current estimates and report.
                value += left + right + delta / 15.0;
                err_estimate += delta.abs() / 15.0;
                for rest in &stack {
                    value += rest.whole;
                    err_estimate += rest.budget.max(delta.abs() / 15.0);
                }
                return Err(Error::Quadrature {
                    requested: tol,
                    achieved: err_estimate,
                    value,
                    evaluations,
                });
            }
            panels += 1;
            stack.push(Segment {
                a: seg.a,
                b: m,
                fa: seg.fa,
                fm: flm,
                fb: seg.fm,
                whole: left,
                budget: seg.budget * 0.5,
            });
            stack.push(Segment {
                a: m,
                b: seg.b,
                fa: seg.fm,
                fm: frm,
                fb: seg.fb,
                whole: right,
                budget: seg.budget * 0.5,
            });
        }
    }

    if err_estimate > tol {
        // Only reachable through unsplittable segments (width at rounding).
        return Err(Error::Quadrature {
            requested: tol,
            achieved: err_estimate,
            value,
            evaluations,
        });
    }
    Ok(QuadratureResult {
        value,
        err_estimate,
        evaluations,
    })
}
