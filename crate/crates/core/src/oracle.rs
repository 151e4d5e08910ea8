//! Exact outgoing solution of the half-line problem.
//!
//! For subsonic motion every lab-frame point inside the causal cone receives
//! exactly one signal, emitted at the retarded time `t_e` solving
//! `t_e − X_s(t_e)/c = t − x/c`. The field there is `exp(iω t_e)`.

use num_complex::Complex;

use crate::asymptotics::{asymptotic_frequency, asymptotic_phase, leading_order_field};
use crate::error::{Error, Result};
use crate::motion::{check_time, Scenario};
use crate::scalar::Scalar;

/// Iteration budget of [`retarded_time`].
pub const MAX_ITERATIONS: usize = 200;

/// Once the bracket is narrower than this fraction of `t`, Newton steps take over.
const NEWTON_SWITCH: f64 = 1e-3;

/// Default residual tolerance in units of `1/ω`.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetardedTimeResult<T> {
    /// Emission time `t_e ∈ [0, t]`.
    pub t_e: T,
    /// `|t_e − X_s(t_e)/c − (t − x/c)|`.
    pub residual: T,
    pub iterations: usize,
}

/// Residual tolerance `10⁻¹²/ω`.
pub fn default_tolerance<T: Scalar>(scenario: &Scenario<T>) -> T {
    T::lit(DEFAULT_TOLERANCE) / scenario.omega()
}

/// Solves the retarded-time equation for a receiver at `(x, t)`.
///
/// Bisection on `[0, t]` brackets the root of the increasing map
/// `g(s) = s − X_s(s)/c − (t − x/c)`; once the bracket is small, guarded
/// Newton steps polish it.
pub fn retarded_time<T: Scalar>(
    scenario: &Scenario<T>,
    x: T,
    t: T,
    tol: T,
) -> Result<RetardedTimeResult<T>> {
    check_time(t)?;
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol.as_f64(),
            reason: "tolerance must be positive",
        });
    }
    let c = scenario.c();
    let offset = scenario.boundary_offset(x, t)?;
    let arrival = offset / c + scenario.position(t)? / c;
    let target = t - arrival;
    if target < T::zero() {
        return Err(Error::NotYetReached {
            x: x.as_f64(),
            t: t.as_f64(),
        });
    }

    let g = |s: T| -> Result<T> { Ok(s - scenario.position(s)? / c - target) };
    let slope = |s: T| -> Result<T> { Ok(T::one() - scenario.velocity(s)? / c) };
    let done = |t_e: T, residual: T, iterations: usize| RetardedTimeResult {
        t_e,
        residual: residual.abs(),
        iterations,
    };

    let (mut lo, mut hi) = (T::zero(), t);
    let g_lo = g(lo)?;
    if g_lo.abs() <= tol {
        return Ok(done(lo, g_lo, 0));
    }
    let g_hi = g(hi)?;
    if g_hi.abs() <= tol {
        return Ok(done(hi, g_hi, 0));
    }

    let half = T::lit(0.5);
    let switch = T::lit(NEWTON_SWITCH) * t;
    let mut guess = lo + (hi - lo) * half;
    let mut best = (guess, T::infinity());
    let mut iterations = 0;
    for iteration in 1..=MAX_ITERATIONS {
        iterations = iteration;
        let value = g(guess)?;
        if value.abs() < best.1.abs() {
            best = (guess, value);
        }
        if value.abs() <= tol {
            // One more guarded Newton step is nearly free and usually lands
            // within a few ulps.
            let polished = guess - value / slope(guess)?;
            if polished >= lo && polished <= hi {
                let refined = g(polished)?;
                if refined.abs() < value.abs() {
                    return Ok(done(polished, refined, iteration));
                }
            }
            return Ok(done(guess, value, iteration));
        }
        if value < T::zero() {
            lo = guess;
        } else {
            hi = guess;
        }
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        guess = if hi - lo < switch {
            let newton = guess - value / slope(guess)?;
            if newton > lo && newton < hi {
                newton
            } else {
                mid
            }
        } else {
            mid
        };
    }
    Err(Error::NoConvergence {
        iterations,
        residual: best.1.abs().as_f64(),
    })
}

/// Exact field `exp(iω t_e)`; zero where the signal has not yet arrived.
pub fn exact_field<T: Scalar>(scenario: &Scenario<T>, x: T, t: T) -> Result<Complex<T>> {
    match retarded_time(scenario, x, t, default_tolerance(scenario)) {
        Ok(r) => Ok(Complex::from_polar(T::one(), scenario.omega() * r.t_e)),
        Err(Error::NotYetReached { .. }) => Ok(Complex::new(T::zero(), T::zero())),
        Err(e) => Err(e),
    }
}

/// Unwrapped exact phase `ω t_e`.
pub fn exact_phase<T: Scalar>(scenario: &Scenario<T>, x: T, t: T) -> Result<T> {
    let r = retarded_time(scenario, x, t, default_tolerance(scenario))?;
    Ok(scenario.omega() * r.t_e)
}

/// Received angular frequency `ω / (1 − Ẋ_s(t_e)/c)`.
pub fn exact_instantaneous_frequency<T: Scalar>(scenario: &Scenario<T>, x: T, t: T) -> Result<T> {
    let r = retarded_time(scenario, x, t, default_tolerance(scenario))?;
    Ok(scenario.omega() / (T::one() - scenario.velocity(r.t_e)? / scenario.c()))
}

/// Maximum discrepancies between the asymptotic and exact fields over a
/// receiver window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareReport<T> {
    /// `max |AM − 1|`, i.e. modulus mismatch against the unit-modulus oracle.
    pub max_modulus_error: T,
    /// `max |φ_asymptotic − ω t_e|` in radians.
    pub max_phase_error: T,
    /// `max |ω_asymptotic − ω_exact| / ω_exact`.
    pub max_frequency_rel_error: T,
    pub samples: usize,
}

/// Samples both fields at `n` uniform times in `window` for a receiver at `x`.
///
/// Phases and frequencies are compared through their closed forms, so no
/// unwrapping or finite differencing enters the comparison.
pub fn compare_fields<T: Scalar>(
    scenario: &Scenario<T>,
    x: T,
    window: (T, T),
    n: usize,
    include_phase_shift: bool,
) -> Result<CompareReport<T>> {
    let (t_min, t_max) = window;
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    if !(t_max >= t_min) {
        return Err(Error::InvalidParameter {
            name: "t_max",
            value: t_max.as_f64(),
            reason: "window end must not precede its start",
        });
    }
    let step = (t_max - t_min) / T::from_usize_lossy(n - 1);
    let tol = default_tolerance(scenario);
    let mut report = CompareReport {
        max_modulus_error: T::zero(),
        max_phase_error: T::zero(),
        max_frequency_rel_error: T::zero(),
        samples: n,
    };
    for j in 0..n {
        let t = if j + 1 == n {
            t_max
        } else {
            t_min + step * T::from_usize_lossy(j)
        };
        let emission = retarded_time(scenario, x, t, tol)?;
        let exact_phase = scenario.omega() * emission.t_e;
        let exact_freq =
            scenario.omega() / (T::one() - scenario.velocity(emission.t_e)? / scenario.c());

        let sample = leading_order_field(scenario, x, t, include_phase_shift)?;
        let phase = asymptotic_phase(scenario, x, t, include_phase_shift)?;
        let freq = asymptotic_frequency(scenario, x, t, include_phase_shift)?;

        report.max_modulus_error = report
            .max_modulus_error
            .max((sample.value.norm() - T::one()).abs());
        report.max_phase_error = report.max_phase_error.max((phase - exact_phase).abs());
        report.max_frequency_rel_error = report
            .max_frequency_rel_error
            .max(((freq - exact_freq) / exact_freq).abs());
    }
    Ok(report)
}
