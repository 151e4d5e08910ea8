//! Leading-order multiple-scales solution for the radiated field, its
//! frequency/amplitude modulation factors and the classical Doppler limits.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::motion::{check_time, MotionProfile, Scenario};
use crate::scalar::Scalar;

/// Classical Doppler frequency `ω / (1 − β)` heard downstream of a uniformly
/// moving source.
pub fn classical_doppler<T: Scalar>(omega: T, beta: T) -> Result<T> {
    if !(beta < T::one()) {
        return Err(Error::DegenerateRatio {
            ratio: beta.as_f64(),
        });
    }
    Ok(omega / (T::one() - beta))
}

/// Outgoing root `k = 1/(1 − β̃)` of `−1 − 2β̃k + (1 − β̃²)k² = 0`.
pub fn wavenumber<T: Scalar>(beta_tilde: T) -> Result<T> {
    if !(beta_tilde < T::one()) {
        return Err(Error::DegenerateRatio {
            ratio: beta_tilde.as_f64(),
        });
    }
    Ok(T::one() / (T::one() - beta_tilde))
}

/// Decomposition of the leading-order field at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationFactors<T> {
    /// `FM(t) = 1/(1 − β − δα'(Ωt))`.
    pub fm: T,
    /// Real envelope `AM(x, t)`.
    pub am: T,
    /// Slowly accumulated phase `FM·ω·(δα'(Ωt) t − δΩ⁻¹α(Ωt))` in radians.
    pub phase_shift: T,
}

/// Complex field value at `(x, t)` together with its modulation factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub x: T,
    pub t: T,
    pub value: Complex<T>,
    pub factors: ModulationFactors<T>,
}

impl<T: Scalar> FieldSample<T> {
    /// `x ≤ ct`: the front launched at `t = 0` has passed the observer.
    pub fn is_causal(&self, c: T) -> bool {
        self.x <= c * self.t
    }
}

/// `s(η₁, τ₁) = (1 − β)τ₁ − δα(τ₁) + η₁` on the boundary (`η₁ = 0`).
pub(crate) fn boundary_characteristic<T: Scalar>(
    profile: &MotionProfile<T>,
    beta: T,
    delta: T,
    slow: T,
) -> Result<T> {
    Ok((T::one() - beta) * slow - delta * profile.alpha(slow)?)
}

/// `exp{−(δ/2)[α'(s₀ + η₁) − α'(s₀)]}`.
fn envelope<T: Scalar>(profile: &MotionProfile<T>, delta: T, s_boundary: T, eta1: T) -> Result<T> {
    if eta1 == T::zero() || delta == T::zero() {
        return Ok(T::one());
    }
    let jump = profile.alpha_prime(s_boundary + eta1)? - profile.alpha_prime(s_boundary)?;
    Ok((-delta / T::lit(2.0) * jump).exp())
}

/// Frequency modulation factor `FM(t)`.
pub fn fm_factor<T: Scalar>(scenario: &Scenario<T>, t: T) -> Result<T> {
    check_time(t)?;
    let beta_tilde = scenario.beta_tilde(scenario.motion().omega_m * t)?;
    Ok(T::one() / (T::one() - beta_tilde))
}

/// Amplitude modulation factor `AM(x, t)`; requires `x ≥ X_s(t)`.
pub fn am_factor<T: Scalar>(scenario: &Scenario<T>, x: T, t: T) -> Result<T> {
    let offset = scenario.boundary_offset(x, t)?;
    am_from_offset(scenario, offset, t)
}

fn am_from_offset<T: Scalar>(scenario: &Scenario<T>, offset: T, t: T) -> Result<T> {
    let slow = scenario.motion().omega_m * t;
    let eta1 = scenario.motion().omega_m * offset / scenario.c();
    let s0 = boundary_characteristic(scenario.profile(), scenario.beta(), scenario.delta(), slow)?;
    envelope(scenario.profile(), scenario.delta(), s0, eta1)
}

/// FM, AM and the time-dependent phase shift at `(x, t)`.
pub fn modulation_factors<T: Scalar>(
    scenario: &Scenario<T>,
    x: T,
    t: T,
) -> Result<ModulationFactors<T>> {
    let offset = scenario.boundary_offset(x, t)?;
    let fm = fm_factor(scenario, t)?;
    let am = am_from_offset(scenario, offset, t)?;
    Ok(ModulationFactors {
        fm,
        am,
        phase_shift: fm * scenario.omega() * shift_time(scenario, t)?,
    })
}

/// `δα'(Ωt) t − δΩ⁻¹α(Ωt)`, written with `δ/Ω = a/c` so that `Ω = 0` is harmless.
fn shift_time<T: Scalar>(scenario: &Scenario<T>, t: T) -> Result<T> {
    let motion = scenario.motion();
    let p = scenario.profile().eval_any(motion.omega_m * t)?;
    Ok(scenario.delta() * p.alpha_prime * t - motion.a / scenario.c() * p.alpha)
}

/// Leading-order field in the laboratory frame.
///
/// Inside the causal region `x ≤ ct` the value is
/// `AM · exp{i FM ω [t − x/c − shift]}`, where the shift term is dropped
/// unless `include_phase_shift` is set. Beyond the front the field is zero.
pub fn leading_order_field<T: Scalar>(
    scenario: &Scenario<T>,
    x: T,
    t: T,
    include_phase_shift: bool,
) -> Result<FieldSample<T>> {
    check_time(t)?;
    let factors = modulation_factors(scenario, x, t)?;
    let value = if x > scenario.c() * t {
        Complex::new(T::zero(), T::zero())
    } else {
        let phase = carrier_phase(scenario, &factors, x, t, include_phase_shift);
        Complex::from_polar(factors.am, phase)
    };
    Ok(FieldSample {
        x,
        t,
        value,
        factors,
    })
}

fn carrier_phase<T: Scalar>(
    scenario: &Scenario<T>,
    factors: &ModulationFactors<T>,
    x: T,
    t: T,
    shift: bool,
) -> T {
    let base = factors.fm * scenario.omega() * (t - x / scenario.c());
    if shift {
        base - factors.phase_shift
    } else {
        base
    }
}

/// Unwrapped phase of [`leading_order_field`] at `(x, t)`, whether or not the
/// point is causal.
pub fn asymptotic_phase<T: Scalar>(
    scenario: &Scenario<T>,
    x: T,
    t: T,
    include_phase_shift: bool,
) -> Result<T> {
    check_time(t)?;
    let factors = modulation_factors(scenario, x, t)?;
    Ok(carrier_phase(scenario, &factors, x, t, include_phase_shift))
}

/// Exact time derivative of [`asymptotic_phase`].
///
/// With `P(t) = t − x/c − S(δα't − δΩ⁻¹α)` and `FM' = δΩα''·FM²`, the
/// derivative is `ω(FM'·P + FM·P')`, where `P' = 1 − S·δΩα''t`.
pub fn asymptotic_frequency<T: Scalar>(
    scenario: &Scenario<T>,
    x: T,
    t: T,
    include_phase_shift: bool,
) -> Result<T> {
    check_time(t)?;
    scenario.boundary_offset(x, t)?;
    let omega_m = scenario.motion().omega_m;
    let delta = scenario.delta();
    let p = scenario.profile().eval_any(omega_m * t)?;
    let fm = T::one() / (T::one() - scenario.beta() - delta * p.alpha_prime);
    let fm_rate = delta * omega_m * p.alpha_pprime * fm * fm;
    let mut phase_time = t - x / scenario.c();
    let mut phase_time_rate = T::one();
    if include_phase_shift {
        phase_time = phase_time - shift_time(scenario, t)?;
        phase_time_rate = phase_time_rate - delta * omega_m * p.alpha_pprime * t;
    }
    Ok(scenario.omega() * (fm_rate * phase_time + fm * phase_time_rate))
}

/// Leading-order field in the co-moving frame at dimensionless distance
/// `eta = (x − X_s(t))ω/c` and time `tau = ωt`.
pub fn moving_frame_field<T: Scalar>(scenario: &Scenario<T>, eta: T, tau: T) -> Result<Complex<T>> {
    check_time(tau)?;
    if !(eta >= T::zero()) {
        return Err(Error::ObserverInsideBoundary {
            x: eta.as_f64(),
            t: tau.as_f64(),
            boundary: 0.0,
        });
    }
    let eps = scenario.epsilon();
    let slow = eps * tau;
    let s0 = boundary_characteristic(scenario.profile(), scenario.beta(), scenario.delta(), slow)?;
    let amplitude = envelope(scenario.profile(), scenario.delta(), s0, eps * eta)?;
    let k = wavenumber(scenario.beta_tilde(slow)?)?;
    Ok(Complex::from_polar(amplitude, tau - eta * k))
}
