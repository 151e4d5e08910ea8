//! Harmonic waves radiated by a non-uniformly moving boundary.
//!
//! A source attached to the boundary `x = X_s(t) = vt + aα(Ωt)` of the
//! half-line emits `e^{iωt}`. For slowly varying motion (`ε = Ω/ω ≪ 1`) the
//! received field is a Doppler-shifted carrier whose frequency follows the
//! instantaneous boundary velocity and whose amplitude is modulated by the
//! boundary acceleration.
//!
//! * [`motion`]: trajectories, dimensionless groups, subsonic validation.
//! * [`asymptotics`]: leading-order field and the FM/AM factors.
//! * [`characteristics`]: characteristic-coordinate solution for arbitrary
//!   boundary excitations.
//! * [`oracle`]: exact retarded-time solution used to check the asymptotics.
//! * [`signal`]: receiver series, instantaneous frequency and spectra.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64`/`*32`
//! aliases below name the common instantiations.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod characteristics;
pub mod error;
pub mod motion;
pub mod oracle;
pub mod scalar;
pub mod signal;

pub use asymptotics::{FieldSample, ModulationFactors};
pub use characteristics::{CharacteristicCoords, Family, TransportSolution};
pub use error::{Error, ErrorKind, Result};
pub use motion::{
    BoundaryMotion, CustomProfile, DimensionlessGroup, MediumParams, MotionProfile, ProfileValues,
    Scenario,
};
pub use oracle::{CompareReport, RetardedTimeResult};
pub use scalar::Scalar;
pub use signal::{FieldSource, Peak, ReceiverSeries, Spectrum, Window};

pub type Medium64 = MediumParams<f64>;
pub type Motion64 = BoundaryMotion<f64>;
pub type Profile64 = MotionProfile<f64>;
pub type Scenario64 = Scenario<f64>;
pub type FieldSample64 = FieldSample<f64>;
pub type ReceiverSeries64 = ReceiverSeries<f64>;
pub type Spectrum64 = Spectrum<f64>;

pub type Medium32 = MediumParams<f32>;
pub type Motion32 = BoundaryMotion<f32>;
pub type Profile32 = MotionProfile<f32>;
pub type Scenario32 = Scenario<f32>;
pub type FieldSample32 = FieldSample<f32>;
pub type ReceiverSeries32 = ReceiverSeries<f32>;
pub type Spectrum32 = Spectrum<f32>;
