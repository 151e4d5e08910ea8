//! JSON run configuration and its resolution against command-line overrides.

use std::fs;
use std::path::{Path, PathBuf};

use doppler_core::{BoundaryMotion, CustomProfile, MediumParams, MotionProfile, Scenario, Window};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub medium: MediumConfig,
    pub motion: MotionConfig,
    pub receiver: ReceiverConfig,
    pub window: WindowConfig,
    pub phase_shift: bool,
    pub frame: Frame,
    pub source: Source,
    pub spectral_window: SpectralWindow,
    pub compare: CompareConfig,
    pub appendix: AppendixConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumConfig {
    pub omega: f64,
    pub c: f64,
}

impl Default for MediumConfig {
    fn default() -> Self {
        Self { omega: 1.0, c: 1.0 }
    }
}

/// Dimensional motion `X_s(t) = v t + a α(Ω t)`. The defaults realize
/// `β = 0`, `δ = −0.2`, `ε = 0.1` in the default unit medium.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MotionConfig {
    pub v: f64,
    pub a: f64,
    #[serde(rename = "Omega")]
    pub omega_m: f64,
    pub profile: ProfileConfig,
    /// Probe horizon of a custom profile, in units of `Ω t`.
    pub horizon: Option<f64>,
}

impl Default for MotionConfig {
    fn default() -> Self {
        Self {
            v: 0.0,
            a: -2.0,
            omega_m: 0.1,
            profile: ProfileConfig::Decelerating,
            horizon: None,
        }
    }
}

pub const DEFAULT_HORIZON: f64 = 100.0;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileConfig {
    Constant,
    #[default]
    Decelerating,
    Oscillatory,
    /// `α(s) = Σ aₖ sin(fₖ s)`, given as `[aₖ, fₖ]` pairs.
    HarmonicSum {
        terms: Vec<(f64, f64)>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReceiverConfig {
    pub x: f64,
}

impl Default for ReceiverConfig {
    fn default() -> Self {
        Self { x: 10.0 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self {
            t_min: 0.0,
            t_max: 200.0,
            samples: 2001,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    #[default]
    Lab,
    Moving,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    #[default]
    Asymptotic,
    Oracle,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SpectralWindow {
    #[default]
    Rect,
    Hann,
}

impl From<SpectralWindow> for Window {
    fn from(w: SpectralWindow) -> Self {
        match w {
            SpectralWindow::Rect => Window::Rectangular,
            SpectralWindow::Hann => Window::Hann,
        }
    }
}

/// Sweep for `compare`. Each row places the receiver at the fixed slow
/// coordinate `εωx/c = slow_x` and spans `fast_periods` carrier periods from
/// the arrival of the front, unless `--x` or the time flags pin them.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareConfig {
    pub eps_list: Vec<f64>,
    pub slow_x: f64,
    pub fast_periods: f64,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self {
            eps_list: vec![0.1, 0.05, 0.025],
            slow_x: 0.1,
            fast_periods: 20.0,
        }
    }
}

/// `(η₁, τ₁)` grid of `appendix-check`.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppendixConfig {
    pub eta1_max: f64,
    pub tau1_max: f64,
    pub points: usize,
}

impl Default for AppendixConfig {
    fn default() -> Self {
        Self {
            eta1_max: 2.0,
            tau1_max: 20.0,
            points: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BuiltinProfile {
    Constant,
    Decelerating,
    Oscillatory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub profile: Option<BuiltinProfile>,
    pub beta: Option<f64>,
    pub delta: Option<f64>,
    pub eps: Option<f64>,
    pub x: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub samples: Option<usize>,
    pub phase_shift: Option<Toggle>,
    pub frame: Option<Frame>,
    pub source: Option<Source>,
    pub window: Option<SpectralWindow>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })
    }
}

/// Fully resolved inputs of one invocation, with a validated scenario.
#[derive(Debug, Clone)]
pub struct Settings {
    pub scenario: Scenario<f64>,
    pub x: f64,
    pub x_pinned: bool,
    pub t_min: f64,
    pub t_max: f64,
    pub window_pinned: bool,
    pub samples: usize,
    pub phase_shift: bool,
    pub frame: Frame,
    pub source: Source,
    pub window: SpectralWindow,
    pub compare: CompareConfig,
    pub appendix: AppendixConfig,
}

impl Settings {
    pub fn resolve(config: RunConfig, overrides: &Overrides) -> Result<Self> {
        let medium = MediumParams::new(config.medium.omega, config.medium.c)?;
        let profile = match overrides.profile {
            Some(BuiltinProfile::Constant) => MotionProfile::Constant,
            Some(BuiltinProfile::Decelerating) => MotionProfile::Decelerating,
            Some(BuiltinProfile::Oscillatory) => MotionProfile::Oscillatory,
            None => build_profile(&config.motion)?,
        };
        let m = &config.motion;
        let motion =
            if overrides.beta.is_some() || overrides.delta.is_some() || overrides.eps.is_some() {
                let beta = overrides.beta.unwrap_or(m.v / medium.c());
                let delta = overrides.delta.unwrap_or(m.a * m.omega_m / medium.c());
                let eps = overrides.eps.unwrap_or(m.omega_m / medium.omega());
                BoundaryMotion::from_dimensionless(beta, delta, eps, profile, &medium)?
            } else {
                BoundaryMotion::new(m.v, m.a, m.omega_m, profile)
            };
        let scenario = Scenario::new(motion, medium)?;

        let samples = overrides.samples.unwrap_or(config.window.samples);
        let settings = Settings {
            scenario,
            x: overrides.x.unwrap_or(config.receiver.x),
            x_pinned: overrides.x.is_some(),
            t_min: overrides.t_min.unwrap_or(config.window.t_min),
            t_max: overrides.t_max.unwrap_or(config.window.t_max),
            window_pinned: overrides.t_min.is_some() || overrides.t_max.is_some(),
            samples,
            phase_shift: overrides
                .phase_shift
                .map_or(config.phase_shift, |t| t == Toggle::On),
            frame: overrides.frame.unwrap_or(config.frame),
            source: overrides.source.unwrap_or(config.source),
            window: overrides.window.unwrap_or(config.spectral_window),
            compare: config.compare,
            appendix: config.appendix,
        };
        settings.check_window()?;
        Ok(settings)
    }

    fn check_window(&self) -> Result<()> {
        let invalid = |name: &'static str, value: f64, reason: &'static str| {
            CliError::Core(doppler_core::Error::InvalidParameter {
                name,
                value,
                reason,
            })
        };
        if !self.x.is_finite() {
            return Err(invalid("x", self.x, "must be finite"));
        }
        if !(self.t_min.is_finite() && self.t_max.is_finite()) {
            return Err(invalid("t_max", self.t_max, "window bounds must be finite"));
        }
        if self.t_min < 0.0 {
            return Err(CliError::Core(doppler_core::Error::NegativeTime {
                t: self.t_min,
            }));
        }
        if self.t_max < self.t_min {
            return Err(invalid(
                "t_max",
                self.t_max,
                "window end must not precede its start",
            ));
        }
        if self.samples < 2 {
            return Err(CliError::Core(doppler_core::Error::TooFewSamples {
                needed: 2,
                got: self.samples,
            }));
        }
        Ok(())
    }

    /// `samples` uniform times from `t_min` to `t_max` inclusive.
    pub fn times(&self) -> Vec<f64> {
        linspace(self.t_min, self.t_max, self.samples)
    }
}

pub fn build_profile(motion: &MotionConfig) -> Result<MotionProfile<f64>> {
    Ok(match &motion.profile {
        ProfileConfig::Constant => MotionProfile::Constant,
        ProfileConfig::Decelerating => MotionProfile::Decelerating,
        ProfileConfig::Oscillatory => MotionProfile::Oscillatory,
        ProfileConfig::HarmonicSum { terms } => {
            let horizon = motion.horizon.unwrap_or(DEFAULT_HORIZON);
            MotionProfile::Custom(CustomProfile::harmonic_sum(terms, horizon)?)
        }
    })
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|j| if j + 1 == n { hi } else { lo + step * j as f64 })
        .collect()
}

/// `--out`, then `DOPPLER_LAB_OUT`, then `./out`.
pub fn output_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("DOPPLER_LAB_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig> {
        RunConfig::parse(text, Path::new("test.json"))
    }

    #[test]
    fn empty_config_takes_defaults() {
        let s = Settings::resolve(parse("{}").unwrap(), &Overrides::default()).unwrap();
        assert!((s.scenario.delta() + 0.2).abs() < 1e-15);
        assert_eq!(s.scenario.beta(), 0.0);
        assert!((s.scenario.epsilon() - 0.1).abs() < 1e-15);
        assert_eq!(s.samples, 2001);
        assert!(!s.phase_shift);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert_eq!(
            parse(r#"{"medium": {"omega": 1, "speed": 2}}"#)
                .unwrap_err()
                .code(),
            "CONFIG"
        );
        assert_eq!(parse(r#"{"extra": 1}"#).unwrap_err().code(), "CONFIG");
    }

    #[test]
    fn harmonic_sum_profile_parses() {
        let cfg = parse(r#"{"motion": {"v": 0, "a": 1, "Omega": 0.1, "profile": {"harmonic_sum": {"terms": [[0.5, 1.0], [0.25, 2.0]]}}}}"#).unwrap();
        assert_eq!(
            cfg.motion.profile,
            ProfileConfig::HarmonicSum {
                terms: vec![(0.5, 1.0), (0.25, 2.0)]
            }
        );
        assert_eq!(cfg.motion.omega_m, 0.1);
        Settings::resolve(cfg, &Overrides::default()).unwrap();
    }

    #[test]
    fn dimensionless_flags_override_motion() {
        let cfg = parse(r#"{"medium": {"omega": 2, "c": 3}}"#).unwrap();
        let o = Overrides {
            beta: Some(0.1),
            delta: Some(0.2),
            eps: Some(0.05),
            profile: Some(BuiltinProfile::Oscillatory),
            ..Overrides::default()
        };
        let s = Settings::resolve(cfg, &o).unwrap();
        assert!((s.scenario.beta() - 0.1).abs() < 1e-15);
        assert!((s.scenario.delta() - 0.2).abs() < 1e-15);
        assert!((s.scenario.epsilon() - 0.05).abs() < 1e-15);
        assert!((s.scenario.motion().v - 0.3).abs() < 1e-15);
    }

    #[test]
    fn supersonic_config_fails_validation() {
        let o = Overrides {
            beta: Some(0.0),
            delta: Some(1.0),
            ..Overrides::default()
        };
        assert_eq!(
            Settings::resolve(RunConfig::default(), &o)
                .unwrap_err()
                .code(),
            "SUPERSONIC"
        );
    }

    #[test]
    fn window_checks() {
        let neg = Overrides {
            t_min: Some(-1.0),
            ..Overrides::default()
        };
        assert_eq!(
            Settings::resolve(RunConfig::default(), &neg)
                .unwrap_err()
                .code(),
            "NEGATIVE_TIME"
        );
        let few = Overrides {
            samples: Some(1),
            ..Overrides::default()
        };
        assert_eq!(
            Settings::resolve(RunConfig::default(), &few)
                .unwrap_err()
                .code(),
            "TOO_FEW_SAMPLES"
        );
    }

    #[test]
    fn linspace_hits_both_ends() {
        let t = linspace(0.0, 200.0, 2001);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[2000], 200.0);
        assert!((t[1] - 0.1).abs() < 1e-15);
    }
}
