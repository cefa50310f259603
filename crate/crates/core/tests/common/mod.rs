//! Independent reference implementations used as oracles by the integration
//! suites. Deliberately slow and structurally different from the library
//! kernels: the erfc oracle pairs the alternating Maclaurin series (with
//! compensated summation) with a bottom-up truncated continued fraction,
//! the quadrature oracle is fixed-step composite Simpson, and the front
//! oracle is plain explicit Euler.

#![allow(dead_code)]

/// Alternating-series / bottom-up-fraction reference for erfc, good to a few
/// 1e-14 absolute over [0, 6] and fully accurate relative in the far tail.
pub fn erfc_oracle(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc_oracle(-x);
    }
    if x <= 3.0 {
        1.0 - erf_maclaurin(x)
    } else {
        erfc_fraction_bottom_up(x)
    }
}

/// erf by the alternating Maclaurin series
/// `2/sqrt(pi) sum_n (-1)^n x^(2n+1) / (n! (2n+1))` with Kahan compensation.
fn erf_maclaurin(x: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut term = x; // n = 0: x / (0! * 1)
    let mut n = 0u32;
    loop {
        let contribution = term / (2 * n + 1) as f64;
        let y = contribution - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        n += 1;
        term *= -x * x / n as f64;
        if (term / (2 * n + 1) as f64).abs() < 1e-18 {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * sum
}

/// Continued fraction for erfc evaluated bottom-up at fixed depth:
/// `sqrt(pi) exp(x^2) erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`.
fn erfc_fraction_bottom_up(x: f64) -> f64 {
    let mut tail = x;
    for k in (1..=300).rev() {
        tail = x + (k as f64 * 0.5) / tail;
    }
    (-x * x).exp() / (f64::sqrt(std::f64::consts::PI) * tail)
}

/// Fixed-step composite Simpson rule with `panels` panels (two subintervals
/// each). Brute-force reference for the adaptive quadrature.
pub fn simpson_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels > 0 && b >= a);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        let x1 = x0 + 0.5 * h;
        let x2 = a + (i + 1) as f64 * h;
        acc += h / 6.0 * (f(x0) + 4.0 * f(x1) + f(x2));
    }
    acc
}

/// Explicit Euler integration of `dx/dt = w0 - k0(x, t)` from a dry pore,
/// clamped to `[0, length]`. Reference path for the RK4 front driver.
pub fn euler_front<K: Fn(f64, f64) -> f64>(
    recession: K,
    w0: f64,
    length: f64,
    dt: f64,
    t_end: f64,
) -> f64 {
    let n = (t_end / dt).round() as usize;
    let mut x = 0.0f64;
    for k in 0..n {
        let t = k as f64 * dt;
        x = (x + dt * (w0 - recession(x, t))).clamp(0.0, length);
    }
    x
}

/// Deterministic xorshift-style generator for reproducible random sweeps
/// without pulling a dependency into every suite.
pub struct TinyRng(u64);

impl TinyRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut s = self.0;
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        self.0 = s;
        s
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}
