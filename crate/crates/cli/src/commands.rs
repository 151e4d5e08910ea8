//! Command bodies. Each one computes every artifact in memory first, so a
//! failure leaves the output directory untouched.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use doppler_core::asymptotics::{am_factor, fm_factor, leading_order_field};
use doppler_core::characteristics::transport_amplitude;
use doppler_core::oracle::{compare_fields, exact_field};
use doppler_core::signal::{instantaneous_frequency, sample_receiver, spectrum};
use doppler_core::{BoundaryMotion, Error, Family, FieldSource, Scenario};

use crate::config::{linspace, Frame, Settings, Source};
use crate::error::Result;
use crate::table::{format_number, Table};

pub const APPENDIX_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    pub fn new(name: impl Into<String>, contents: String) -> Self {
        Self {
            name: name.into(),
            contents,
        }
    }
}

/// Result of a command: files to write, text for stdout, and the exit status.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub report: String,
    pub status: u8,
}

impl Outcome {
    fn files(artifacts: Vec<Artifact>) -> Self {
        Self {
            artifacts,
            ..Self::default()
        }
    }
}

pub fn fm(settings: &Settings) -> Result<Outcome> {
    let mut table = Table::new(["t", "fm"]);
    for t in settings.times() {
        table.push_values(&[t, fm_factor(&settings.scenario, t)?]);
    }
    Ok(Outcome::files(vec![Artifact::new(
        "fm.csv",
        table.to_csv(),
    )]))
}

pub fn am(settings: &Settings) -> Result<Outcome> {
    let mut table = Table::new(["t", "am"]);
    for t in settings.times() {
        table.push_values(&[t, am_factor(&settings.scenario, settings.x, t)?]);
    }
    Ok(Outcome::files(vec![Artifact::new(
        "am.csv",
        table.to_csv(),
    )]))
}

/// Receiver waveform with its envelope, frequency factor and the stationary
/// reference `Re e^{iω(t − x/c)}`. In the moving frame `x` is the distance
/// ahead of the boundary.
pub fn field(settings: &Settings) -> Result<Outcome> {
    let sc = &settings.scenario;
    let mut table = Table::new(["t", "re_u", "im_u", "am", "fm", "re_ref"]);
    for t in settings.times() {
        let x = match settings.frame {
            Frame::Lab => settings.x,
            Frame::Moving => sc.position(t)? + settings.x,
        };
        if x > sc.c() * t {
            return Err(Error::NotYetReached { x, t }.into());
        }
        let sample = leading_order_field(sc, x, t, settings.phase_shift)?;
        let u = match settings.source {
            Source::Asymptotic => sample.value,
            Source::Oracle => exact_field(sc, x, t)?,
        };
        let reference = (sc.omega() * (t - x / sc.c())).cos();
        table.push_values(&[
            t,
            u.re,
            u.im,
            sample.factors.am,
            sample.factors.fm,
            reference,
        ]);
    }
    Ok(Outcome::files(vec![Artifact::new(
        "field.csv",
        table.to_csv(),
    )]))
}

/// Rebuilds the configured motion at a new `ε`, keeping `β`, `δ` and the profile.
pub fn at_epsilon(scenario: &Scenario<f64>, eps: f64) -> Result<Scenario<f64>> {
    let motion = BoundaryMotion::from_dimensionless(
        scenario.beta(),
        scenario.delta(),
        eps,
        scenario.profile().clone(),
        scenario.medium(),
    )?;
    Ok(Scenario::new(motion, *scenario.medium())?)
}

pub fn compare(settings: &Settings) -> Result<Outcome> {
    let base = &settings.scenario;
    let cfg = &settings.compare;
    if cfg.eps_list.is_empty() {
        return Err(Error::InvalidParameter {
            name: "eps_list",
            value: 0.0,
            reason: "at least one epsilon is required",
        }
        .into());
    }
    let scenarios = cfg
        .eps_list
        .iter()
        .map(|&eps| at_epsilon(base, eps))
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new([
        "epsilon",
        "x",
        "max_phase_error",
        "max_frequency_rel_error",
        "max_modulus_error",
    ]);
    for (eps, sc) in cfg.eps_list.iter().zip(&scenarios) {
        let (omega, c) = (sc.omega(), sc.c());
        let x = if settings.x_pinned {
            settings.x
        } else {
            cfg.slow_x * c / (eps * omega)
        };
        let window = if settings.window_pinned {
            (settings.t_min, settings.t_max)
        } else {
            let start = x.max(0.0) / c;
            (start, start + cfg.fast_periods * TAU / omega)
        };
        let report = compare_fields(sc, x, window, settings.samples, settings.phase_shift)?;
        table.push_values(&[
            *eps,
            x,
            report.max_phase_error,
            report.max_frequency_rel_error,
            report.max_modulus_error,
        ]);
    }

    let mut text = String::new();
    writeln!(
        text,
        "{:>12} {:>12} {:>16} {:>16} {:>16} {:>10}",
        "epsilon", "x", "phase_err", "freq_rel_err", "modulus_diag", "ratio"
    )
    .unwrap();
    let phase = table.column("max_phase_error").unwrap();
    for (k, row) in table.rows.iter().enumerate() {
        let ratio = if k == 0 {
            String::from("-")
        } else {
            format!("{:.4}", phase[k - 1].unwrap() / phase[k].unwrap())
        };
        let v: Vec<f64> = row.iter().map(|c| c.unwrap()).collect();
        writeln!(
            text,
            "{:>12.6} {:>12.6} {:>16.6e} {:>16.6e} {:>16.6e} {:>10}",
            v[0], v[1], v[2], v[3], v[4], ratio
        )
        .unwrap();
    }
    Ok(Outcome {
        artifacts: vec![Artifact::new("compare.csv", table.to_csv())],
        report: text,
        status: 0,
    })
}

/// DFT of the receiver series over `samples` points spaced `(t_max − t_min)/samples`,
/// so a window of whole modulation periods stays periodic.
pub fn spectrum_cmd(settings: &Settings) -> Result<Outcome> {
    let sc = &settings.scenario;
    let source = match settings.source {
        Source::Asymptotic => FieldSource::Asymptotic {
            include_phase_shift: settings.phase_shift,
        },
        Source::Oracle => FieldSource::Oracle,
    };
    let dt = (settings.t_max - settings.t_min) / settings.samples as f64;
    let series = sample_receiver(source, sc, settings.x, settings.t_min, dt, settings.samples)?;
    instantaneous_frequency(&series)?;
    let spec = spectrum(&series, settings.window.into())?;

    let mut bins = Table::new(["frequency", "magnitude"]);
    for (f, m) in spec.ascending() {
        bins.push_values(&[f, m]);
    }
    let mut peaks = Table::new(["rank", "bin", "frequency", "magnitude"]);
    let mut text = String::new();
    writeln!(text, "bin width {}", format_number(spec.bin_width)).unwrap();
    writeln!(
        text,
        "{:>5} {:>7} {:>14} {:>14}",
        "rank", "bin", "frequency", "magnitude"
    )
    .unwrap();
    for (rank, p) in spec.peaks.iter().enumerate() {
        peaks.push_values(&[(rank + 1) as f64, p.bin as f64, p.frequency, p.magnitude]);
        writeln!(
            text,
            "{:>5} {:>7} {:>14.6} {:>14.6e}",
            rank + 1,
            p.bin,
            p.frequency,
            p.magnitude
        )
        .unwrap();
    }
    Ok(Outcome {
        artifacts: vec![
            Artifact::new("spectrum.csv", bins.to_csv()),
            Artifact::new("peaks.csv", peaks.to_csv()),
        ],
        report: text,
        status: 0,
    })
}

/// Largest `|transport_amplitude(minus) − AM|` over the `(η₁, τ₁)` grid.
pub fn appendix_difference(
    sc: &Scenario<f64>,
    eta1_max: f64,
    tau1_max: f64,
    points: usize,
) -> Result<f64> {
    let eps = sc.epsilon();
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: eps,
            reason: "slow coordinates need a positive epsilon",
        }
        .into());
    }
    let scale = 1.0 / (eps * sc.omega());
    let mut worst = 0.0f64;
    for &tau1 in &linspace(0.0, tau1_max, points) {
        let t = tau1 * scale;
        let xb = sc.position(t)?;
        for &eta1 in &linspace(0.0, eta1_max, points) {
            let x = xb + eta1 * sc.c() * scale;
            let transport = transport_amplitude(sc, Family::Minus, eta1, tau1)?.amplitude;
            worst = worst.max((transport - am_factor(sc, x, t)?).abs());
        }
    }
    Ok(worst)
}

pub fn appendix_check(settings: &Settings) -> Result<Outcome> {
    let cfg = &settings.appendix;
    if cfg.points < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: cfg.points,
        }
        .into());
    }
    let worst = appendix_difference(&settings.scenario, cfg.eta1_max, cfg.tau1_max, cfg.points)?;
    let pass = worst < APPENDIX_TOLERANCE;
    let report = format!(
        "{} max |transport - AM| = {} over {}x{} grid (tolerance {})\n",
        if pass { "PASS" } else { "FAIL" },
        format_number(worst),
        cfg.points,
        cfg.points,
        format_number(APPENDIX_TOLERANCE)
    );
    Ok(Outcome {
        artifacts: Vec::new(),
        report,
        status: if pass { 0 } else { 1 },
    })
}
