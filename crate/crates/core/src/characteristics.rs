//! Characteristic-coordinate form of the leading-order problem for an
//! arbitrary boundary excitation `Ů(τ)`.
//!
//! The fast dependence splits into two d'Alembert families riding on
//! `θ₁ = η + (β̃ + 1)τ` and `θ₂ = η + (β̃ − 1)τ`. Each family carries a real
//! envelope obtained by integrating its transport equation along the slow
//! characteristics `s₁,₂(η₁, τ₁) = (1 ± β)τ₁ ± δα(τ₁) ∓ η₁`.
//!
//! The boundary data are shared equally between the families, so at `η = 0`
//! the two halves rebuild `Ů(τ)` and, with `β̃` frozen, the normal derivative
//! vanishes at leading order.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::motion::{check_time, Scenario};
use crate::scalar::Scalar;

/// Fast and slow coordinates of one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicCoords<T> {
    pub theta1: T,
    pub theta2: T,
    pub tau1: T,
    pub eta1: T,
}

/// Characteristic family of the transport problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `𝒢₀,₁` on `θ₁`; upper signs.
    Plus,
    /// `𝒢₀,₂` on `θ₂`; lower signs. This is the outgoing family.
    Minus,
}

impl Family {
    fn sign<T: Scalar>(self) -> T {
        match self {
            Family::Plus => T::one(),
            Family::Minus => -T::one(),
        }
    }
}

/// Envelope of one family at a slow point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportSolution<T> {
    pub family: Family,
    pub s_value: T,
    pub amplitude: T,
}

/// Maps `(η, τ)` to characteristic coordinates, with `β̃` frozen at the slow
/// time `ετ` of the point.
pub fn to_characteristic_coords<T: Scalar>(
    scenario: &Scenario<T>,
    eta: T,
    tau: T,
) -> Result<CharacteristicCoords<T>> {
    check_time(tau)?;
    check_eta(eta, tau)?;
    let eps = scenario.epsilon();
    let beta_tilde = scenario.beta_tilde(eps * tau)?;
    Ok(CharacteristicCoords {
        theta1: eta + (beta_tilde + T::one()) * tau,
        theta2: eta + (beta_tilde - T::one()) * tau,
        tau1: eps * tau,
        eta1: eps * eta,
    })
}

fn check_eta<T: Scalar>(eta: T, tau: T) -> Result<()> {
    if eta >= T::zero() {
        Ok(())
    } else {
        Err(Error::ObserverInsideBoundary {
            x: eta.as_f64(),
            t: tau.as_f64(),
            boundary: 0.0,
        })
    }
}

/// `s₁,₂(η₁, τ₁) = (1 ± β)τ₁ ± δα(τ₁) ∓ η₁`.
pub fn slow_characteristic<T: Scalar>(
    scenario: &Scenario<T>,
    family: Family,
    eta1: T,
    tau1: T,
) -> Result<T> {
    check_time(tau1)?;
    check_eta(eta1, tau1)?;
    let sign: T = family.sign();
    let alpha = scenario.profile().alpha(tau1)?;
    Ok((T::one() + sign * scenario.beta()) * tau1 + sign * scenario.delta() * alpha - sign * eta1)
}

/// Transport envelope `exp{−(δ/2)[α'(s(η₁,τ₁)) − α'(s(0,τ₁))]}` of `family`.
pub fn transport_amplitude<T: Scalar>(
    scenario: &Scenario<T>,
    family: Family,
    eta1: T,
    tau1: T,
) -> Result<TransportSolution<T>> {
    let s_value = slow_characteristic(scenario, family, eta1, tau1)?;
    let s_origin = slow_characteristic(scenario, family, T::zero(), tau1)?;
    let profile = scenario.profile();
    // The plus family runs toward negative s; the closed-form profiles extend there.
    let jump = profile.eval_any(s_value)?.alpha_prime - profile.eval_any(s_origin)?.alpha_prime;
    Ok(TransportSolution {
        family,
        s_value,
        amplitude: (-scenario.delta() / T::lit(2.0) * jump).exp(),
    })
}

/// Boundary excitation `Ů` with the interval on which it may be probed.
pub trait Excitation<T: Scalar> {
    /// Closed interval of admissible arguments.
    fn domain(&self) -> (T, T);

    fn value(&self, arg: T) -> Complex<T>;

    fn eval(&self, arg: T) -> Result<Complex<T>> {
        let (lo, hi) = self.domain();
        if arg >= lo && arg <= hi {
            Ok(self.value(arg))
        } else {
            Err(Error::ArgumentOutOfRange {
                arg: arg.as_f64(),
                min: lo.as_f64(),
                max: hi.as_f64(),
            })
        }
    }
}

/// Excitation backed by a closure.
pub struct FnExcitation<T, F> {
    f: F,
    lo: T,
    hi: T,
}

impl<T: Scalar, F: Fn(T) -> Complex<T>> FnExcitation<T, F> {
    pub fn new(f: F, lo: T, hi: T) -> Self {
        Self { f, lo, hi }
    }

    /// Defined on the whole real line.
    pub fn unbounded(f: F) -> Self {
        Self::new(f, T::neg_infinity(), T::infinity())
    }
}

impl<T: Scalar, F: Fn(T) -> Complex<T>> Excitation<T> for FnExcitation<T, F> {
    fn domain(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    fn value(&self, arg: T) -> Complex<T> {
        (self.f)(arg)
    }
}

impl<T: fmt::Debug, F> fmt::Debug for FnExcitation<T, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnExcitation")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish_non_exhaustive()
    }
}

/// Contribution `𝒢₀,ⱼ = ½ Ů(θⱼ/(β̃ ± 1)) · envelopeⱼ` of one family.
pub fn family_component<T: Scalar, E: Excitation<T> + ?Sized>(
    scenario: &Scenario<T>,
    excitation: &E,
    family: Family,
    eta: T,
    tau: T,
) -> Result<Complex<T>> {
    let coords = to_characteristic_coords(scenario, eta, tau)?;
    let beta_tilde = scenario.beta_tilde(coords.tau1)?;
    let fast_arg = match family {
        Family::Plus => coords.theta1 / (beta_tilde + T::one()),
        Family::Minus => coords.theta2 / (beta_tilde - T::one()),
    };
    let envelope = transport_amplitude(scenario, family, coords.eta1, coords.tau1)?.amplitude;
    Ok(excitation.eval(fast_arg)? * (envelope / T::lit(2.0)))
}

/// Leading-order field `𝒰₀ = 𝒢₀,₁(θ₁, η₁, τ₁) + 𝒢₀,₂(θ₂, η₁, τ₁)` for a
/// general boundary excitation.
pub fn general_excitation_field<T: Scalar, E: Excitation<T> + ?Sized>(
    scenario: &Scenario<T>,
    excitation: &E,
    eta: T,
    tau: T,
) -> Result<Complex<T>> {
    Ok(
        family_component(scenario, excitation, Family::Plus, eta, tau)?
            + family_component(scenario, excitation, Family::Minus, eta, tau)?,
    )
}
