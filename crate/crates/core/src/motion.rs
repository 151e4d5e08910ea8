//! Boundary trajectories `X_s(t) = v t + a α(Ω t)` and the subsonic validity
//! checks that keep the moving-frame wave equation hyperbolic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of uniform samples used to probe custom profiles.
pub const CUSTOM_PROFILE_SAMPLES: usize = 10_000;

/// Allowed deviation of `sup |α'|` from one for custom profiles.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Allowed `|α(0)|` for custom profiles.
pub const ORIGIN_TOLERANCE: f64 = 1e-12;

/// Above this `ε = Ω/ω` the slow/fast separation is poor and a warning is logged.
pub const EPSILON_WARNING_THRESHOLD: f64 = 0.3;

/// Homogeneous medium and the source's emitted angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams<T> {
    omega: T,
    c: T,
}

impl<T: Scalar> MediumParams<T> {
    pub fn new(omega: T, c: T) -> Result<Self> {
        if !(omega.is_finite() && omega > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: omega.as_f64(),
                reason: "emitted angular frequency must be positive and finite",
            });
        }
        if !(c.is_finite() && c > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c.as_f64(),
                reason: "phase speed must be positive and finite",
            });
        }
        Ok(Self { omega, c })
    }

    /// Emitted angular frequency `ω`.
    pub fn omega(&self) -> T {
        self.omega
    }

    /// Phase speed `c`.
    pub fn c(&self) -> T {
        self.c
    }
}

/// `α`, `α'` and `α''` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileValues<T> {
    pub alpha: T,
    pub alpha_prime: T,
    pub alpha_pprime: T,
}

/// Scalar function of the dimensionless profile argument.
pub type Evaluator<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// User-supplied profile. The evaluators must be safe to call concurrently;
/// `α''` is assumed continuous but this is not checked.
#[derive(Clone)]
pub struct CustomProfile<T> {
    alpha: Evaluator<T>,
    alpha_prime: Evaluator<T>,
    alpha_pprime: Evaluator<T>,
    horizon: T,
}

impl<T: Scalar> CustomProfile<T> {
    /// Builds a custom profile probed over `[0, horizon]` in profile-argument
    /// units. Fails unless `α(0) = 0`.
    pub fn new<A, D1, D2>(alpha: A, alpha_prime: D1, alpha_pprime: D2, horizon: T) -> Result<Self>
    where
        A: Fn(T) -> T + Send + Sync + 'static,
        D1: Fn(T) -> T + Send + Sync + 'static,
        D2: Fn(T) -> T + Send + Sync + 'static,
    {
        if !(horizon.is_finite() && horizon > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "horizon",
                value: horizon.as_f64(),
                reason: "custom profile horizon must be positive and finite",
            });
        }
        let profile = Self {
            alpha: Arc::new(alpha),
            alpha_prime: Arc::new(alpha_prime),
            alpha_pprime: Arc::new(alpha_pprime),
            horizon,
        };
        let origin = profile.eval_any(T::zero())?.alpha;
        if origin.abs() > T::lit(ORIGIN_TOLERANCE) {
            return Err(Error::InvalidNormalization {
                reason: "alpha(0) must vanish",
                value: origin.as_f64(),
            });
        }
        Ok(profile)
    }

    /// `α(𝔱) = Σ aₖ sin(fₖ 𝔱)` from `(aₖ, fₖ)` pairs. Normalization is left to
    /// the caller and verified by [`BoundaryMotion::validate`].
    pub fn harmonic_sum(terms: &[(T, T)], horizon: T) -> Result<Self> {
        for &(amp, freq) in terms {
            if !(amp.is_finite() && freq.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "harmonic_sum",
                    value: if amp.is_finite() {
                        freq.as_f64()
                    } else {
                        amp.as_f64()
                    },
                    reason: "harmonic amplitudes and frequencies must be finite",
                });
            }
        }
        let a: Arc<[(T, T)]> = terms.into();
        let b = Arc::clone(&a);
        let c = Arc::clone(&a);
        Self::new(
            move |s| {
                a.iter()
                    .fold(T::zero(), |acc, &(k, f)| acc + k * (f * s).sin())
            },
            move |s| {
                b.iter()
                    .fold(T::zero(), |acc, &(k, f)| acc + k * f * (f * s).cos())
            },
            move |s| {
                c.iter()
                    .fold(T::zero(), |acc, &(k, f)| acc - k * f * f * (f * s).sin())
            },
            horizon,
        )
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    fn eval_any(&self, arg: T) -> Result<ProfileValues<T>> {
        let values = ProfileValues {
            alpha: (self.alpha)(arg),
            alpha_prime: (self.alpha_prime)(arg),
            alpha_pprime: (self.alpha_pprime)(arg),
        };
        if values.alpha.is_finite()
            && values.alpha_prime.is_finite()
            && values.alpha_pprime.is_finite()
        {
            Ok(values)
        } else {
            Err(Error::ProfileEvaluation { arg: arg.as_f64() })
        }
    }

    /// Uniform probe grid over `[0, horizon]`.
    fn grid(&self) -> impl Iterator<Item = T> + '_ {
        let last = T::from_usize_lossy(CUSTOM_PROFILE_SAMPLES - 1);
        (0..CUSTOM_PROFILE_SAMPLES).map(move |i| self.horizon * T::from_usize_lossy(i) / last)
    }

    /// `max |α'|` over the probe grid.
    pub fn sampled_max_abs_derivative(&self) -> Result<T> {
        self.grid().try_fold(T::zero(), |acc, s| {
            Ok(acc.max(self.eval_any(s)?.alpha_prime.abs()))
        })
    }
}

impl<T> fmt::Debug for CustomProfile<T>
where
    T: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomProfile")
            .field("horizon", &self.horizon)
            .finish_non_exhaustive()
    }
}

/// Shape `α` of the non-uniform part of the boundary motion.
#[derive(Debug, Clone)]
pub enum MotionProfile<T> {
    /// `α ≡ 0`: uniform translation.
    Constant,
    /// `α(𝔱) = 1 − e^{−𝔱}`.
    Decelerating,
    /// `α(𝔱) = sin 𝔱`.
    Oscillatory,
    Custom(CustomProfile<T>),
}

impl<T: Scalar> MotionProfile<T> {
    /// `(α, α', α'')` at a non-negative argument.
    pub fn eval(&self, arg: T) -> Result<ProfileValues<T>> {
        if arg < T::zero() || arg.is_nan() {
            return Err(Error::NegativeTime { t: arg.as_f64() });
        }
        self.eval_any(arg)
    }

    /// Closed forms continued to negative arguments. The plus characteristic
    /// family of the transport problem probes `α'` there.
    pub(crate) fn eval_any(&self, arg: T) -> Result<ProfileValues<T>> {
        match self {
            MotionProfile::Constant => Ok(ProfileValues {
                alpha: T::zero(),
                alpha_prime: T::zero(),
                alpha_pprime: T::zero(),
            }),
            MotionProfile::Decelerating => {
                let decay = (-arg).exp();
                Ok(ProfileValues {
                    alpha: -(-arg).exp_m1(),
                    alpha_prime: decay,
                    alpha_pprime: -decay,
                })
            }
            MotionProfile::Oscillatory => {
                let (sin, cos) = arg.sin_cos();
                Ok(ProfileValues {
                    alpha: sin,
                    alpha_prime: cos,
                    alpha_pprime: -sin,
                })
            }
            MotionProfile::Custom(custom) => custom.eval_any(arg),
        }
    }

    pub(crate) fn alpha(&self, arg: T) -> Result<T> {
        Ok(self.eval_any(arg)?.alpha)
    }

    pub(crate) fn alpha_prime(&self, arg: T) -> Result<T> {
        Ok(self.eval_any(arg)?.alpha_prime)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MotionProfile::Constant => "constant",
            MotionProfile::Decelerating => "decelerating",
            MotionProfile::Oscillatory => "oscillatory",
            MotionProfile::Custom(_) => "custom",
        }
    }

    /// `sup_{𝔱 ≥ 0} |β + δ α'(𝔱)|`, in closed form for the built-in profiles and
    /// on the probe grid for custom ones.
    fn peak_speed_ratio(&self, beta: T, delta: T) -> Result<T> {
        Ok(match self {
            MotionProfile::Constant => beta.abs(),
            MotionProfile::Decelerating => (beta + delta).abs().max(beta.abs()),
            MotionProfile::Oscillatory => beta.abs() + delta.abs(),
            MotionProfile::Custom(custom) => custom.grid().try_fold(T::zero(), |acc, s| {
                Ok(acc.max((beta + delta * custom.eval_any(s)?.alpha_prime).abs()))
            })?,
        })
    }
}

/// Evaluates `(α, α', α'')` for `profile` at `arg ≥ 0`.
pub fn eval_profile<T: Scalar>(profile: &MotionProfile<T>, arg: T) -> Result<ProfileValues<T>> {
    profile.eval(arg)
}

pub(crate) fn check_time<T: Scalar>(t: T) -> Result<()> {
    if t >= T::zero() {
        Ok(())
    } else {
        Err(Error::NegativeTime { t: t.as_f64() })
    }
}

/// Trajectory `X_s(t) = v t + a α(Ω t)` of the emitting boundary.
#[derive(Debug, Clone)]
pub struct BoundaryMotion<T> {
    /// Mean velocity `v`.
    pub v: T,
    /// Excursion length scale `a`.
    pub a: T,
    /// Mechanical angular frequency `Ω`.
    pub omega_m: T,
    pub profile: MotionProfile<T>,
}

/// `β = v/c`, `δ = aΩ/c`, `ε = Ω/ω` for a motion that passed validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessGroup<T> {
    pub beta: T,
    pub delta: T,
    pub epsilon: T,
    /// `sup_t |Ẋ_s(t)|/c`.
    pub peak_speed_ratio: T,
}

impl<T: Scalar> DimensionlessGroup<T> {
    /// Whether `ε` is small enough for the asymptotics to be trusted.
    pub fn is_slowly_varying(&self) -> bool {
        self.epsilon <= T::lit(EPSILON_WARNING_THRESHOLD)
    }
}

impl<T: Scalar> BoundaryMotion<T> {
    pub fn new(v: T, a: T, omega_m: T, profile: MotionProfile<T>) -> Self {
        Self {
            v,
            a,
            omega_m,
            profile,
        }
    }

    /// Builds the motion realizing a dimensionless triple `(β, δ, ε)` in `medium`.
    pub fn from_dimensionless(
        beta: T,
        delta: T,
        epsilon: T,
        profile: MotionProfile<T>,
        medium: &MediumParams<T>,
    ) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon.as_f64(),
                reason: "dimensionless parameters need a positive epsilon to recover a",
            });
        }
        let omega_m = epsilon * medium.omega();
        Ok(Self::new(
            beta * medium.c(),
            delta * medium.c() / omega_m,
            omega_m,
            profile,
        ))
    }

    /// `X_s(t)`.
    pub fn position(&self, t: T) -> Result<T> {
        check_time(t)?;
        Ok(self.v * t + self.a * self.profile.alpha(self.omega_m * t)?)
    }

    /// `Ẋ_s(t) = v + aΩ α'(Ω t)`.
    pub fn velocity(&self, t: T) -> Result<T> {
        check_time(t)?;
        Ok(self.v + self.a * self.omega_m * self.profile.alpha_prime(self.omega_m * t)?)
    }

    /// Checks the subsonic and slow-motion constraints and returns `(β, δ, ε)`.
    pub fn validate(&self, medium: &MediumParams<T>) -> Result<DimensionlessGroup<T>> {
        for (name, value) in [("v", self.v), ("a", self.a)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: value.as_f64(),
                    reason: "must be finite",
                });
            }
        }
        if !(self.omega_m.is_finite() && self.omega_m >= T::zero()) {
            return Err(Error::InvalidParameter {
                name: "Omega",
                value: self.omega_m.as_f64(),
                reason: "mechanical frequency must be non-negative and finite",
            });
        }

        let beta = self.v / medium.c();
        let delta = self.a * self.omega_m / medium.c();
        let epsilon = self.omega_m / medium.omega();

        if epsilon >= T::one() {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon.as_f64(),
                reason: "mechanical frequency must be below the emitted frequency",
            });
        }
        if epsilon > T::lit(EPSILON_WARNING_THRESHOLD) {
            log::warn!(
                "epsilon = {} exceeds {}; the slowly-moving-boundary asymptotics are unreliable",
                epsilon,
                EPSILON_WARNING_THRESHOLD
            );
        }

        if let MotionProfile::Custom(custom) = &self.profile {
            let peak = custom.sampled_max_abs_derivative()?;
            if (peak - T::one()).abs() > T::lit(NORMALIZATION_TOLERANCE) {
                return Err(Error::InvalidNormalization {
                    reason: "max |alpha'| over the horizon must equal 1",
                    value: peak.as_f64(),
                });
            }
        }

        let peak_speed_ratio = self.profile.peak_speed_ratio(beta, delta)?;
        if delta >= T::one() - beta {
            return Err(Error::SupersonicMotion {
                reason: "delta >= 1 - beta",
                peak_speed_ratio: peak_speed_ratio.as_f64(),
            });
        }
        if peak_speed_ratio >= T::one() {
            return Err(Error::SupersonicMotion {
                reason: "instantaneous boundary speed reaches the phase speed",
                peak_speed_ratio: peak_speed_ratio.as_f64(),
            });
        }

        Ok(DimensionlessGroup {
            beta,
            delta,
            epsilon,
            peak_speed_ratio,
        })
    }
}

/// Validated pairing of a boundary motion with its medium. Every solver takes
/// one of these, so the subsonic checks run once per configuration.
#[derive(Debug, Clone)]
pub struct Scenario<T> {
    medium: MediumParams<T>,
    motion: BoundaryMotion<T>,
    group: DimensionlessGroup<T>,
}

impl<T: Scalar> Scenario<T> {
    pub fn new(motion: BoundaryMotion<T>, medium: MediumParams<T>) -> Result<Self> {
        let group = motion.validate(&medium)?;
        Ok(Self {
            medium,
            motion,
            group,
        })
    }

    /// Shorthand for a unit medium (`ω = c = 1`) driven at `(β, δ, ε)`.
    pub fn dimensionless(beta: T, delta: T, epsilon: T, profile: MotionProfile<T>) -> Result<Self> {
        let medium = MediumParams::new(T::one(), T::one())?;
        let motion = BoundaryMotion::from_dimensionless(beta, delta, epsilon, profile, &medium)?;
        Self::new(motion, medium)
    }

    pub fn medium(&self) -> &MediumParams<T> {
        &self.medium
    }

    pub fn motion(&self) -> &BoundaryMotion<T> {
        &self.motion
    }

    pub fn group(&self) -> &DimensionlessGroup<T> {
        &self.group
    }

    pub fn profile(&self) -> &MotionProfile<T> {
        &self.motion.profile
    }

    pub fn beta(&self) -> T {
        self.group.beta
    }

    pub fn delta(&self) -> T {
        self.group.delta
    }

    pub fn epsilon(&self) -> T {
        self.group.epsilon
    }

    pub fn omega(&self) -> T {
        self.medium.omega()
    }

    pub fn c(&self) -> T {
        self.medium.c()
    }

    pub fn position(&self, t: T) -> Result<T> {
        self.motion.position(t)
    }

    pub fn velocity(&self, t: T) -> Result<T> {
        self.motion.velocity(t)
    }

    /// `β̃ = β + δ α'(slow)`, the instantaneous boundary Mach number.
    pub fn beta_tilde(&self, slow_time: T) -> Result<T> {
        Ok(self.group.beta + self.group.delta * self.profile().alpha_prime(slow_time)?)
    }

    /// Distance `x − X_s(t)` from the boundary to a lab-frame observer.
    ///
    /// Observers a roundoff distance behind the boundary are snapped onto it.
    pub fn boundary_offset(&self, x: T, t: T) -> Result<T> {
        let boundary = self.position(t)?;
        let offset = x - boundary;
        if offset >= T::zero() {
            return Ok(offset);
        }
        let scale = self.c() / self.omega();
        let slack =
            (T::lit(1e-12) * scale).max(T::lit(8.0) * T::epsilon() * (boundary.abs() + scale));
        if -offset <= slack {
            Ok(T::zero())
        } else {
            Err(Error::ObserverInsideBoundary {
                x: x.as_f64(),
                t: t.as_f64(),
                boundary: boundary.as_f64(),
            })
        }
    }
}
