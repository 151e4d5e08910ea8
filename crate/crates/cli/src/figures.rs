//! Fixed parameter sets of the four modulation figures.
//!
//! All figures use a unit medium (`ω = c = 1`), `ε = 0.1`, `β = 0` and
//! `ωt ∈ [0, 200]` sampled at 2001 points.

use doppler_core::asymptotics::{am_factor, fm_factor, leading_order_field};
use doppler_core::{Error, MotionProfile, Scenario};

use crate::commands::{Artifact, Outcome};
use crate::config::linspace;
use crate::error::{CliError, Result};
use crate::plot::{render, Panel, Series, Stroke};
use crate::table::Table;

pub const EPSILON: f64 = 0.1;
pub const T_MAX: f64 = 200.0;
pub const SAMPLES: usize = 2001;
/// `ωx/c` of the modulation-factor panels.
pub const AM_RECEIVER: f64 = 10.0;
/// `ωx/c` of the two waveform receivers.
pub const WAVE_RECEIVERS: [f64; 2] = [0.1, 10.0];

const STROKES: [Stroke; 3] = [Stroke::Solid, Stroke::Dashed, Stroke::Dotted];

pub fn times() -> Vec<f64> {
    linspace(0.0, T_MAX, SAMPLES)
}

fn scenario(delta: f64, profile: MotionProfile<f64>) -> Result<Scenario<f64>> {
    Ok(Scenario::dimensionless(0.0, delta, EPSILON, profile)?)
}

pub fn figure(id: u8) -> Result<Outcome> {
    let (table, svg) = match id {
        1 => modulation(
            "Figure 1: decelerating boundary",
            MotionProfile::Decelerating,
            [-0.2, -0.1, -0.05],
        )?,
        2 => waveform(
            "Figure 2: decelerating boundary, delta = -0.2",
            MotionProfile::Decelerating,
            -0.2,
        )?,
        3 => modulation(
            "Figure 3: oscillating boundary",
            MotionProfile::Oscillatory,
            [0.2, 0.1, 0.05],
        )?,
        4 => waveform(
            "Figure 4: oscillating boundary, delta = 0.2",
            MotionProfile::Oscillatory,
            0.2,
        )?,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown figure {id}; expected 1, 2, 3 or 4"
            )))
        }
    };
    Ok(Outcome {
        artifacts: vec![
            Artifact::new(format!("figure{id}.csv"), table.to_csv()),
            Artifact::new(format!("figure{id}.svg"), svg),
        ],
        report: String::new(),
        status: 0,
    })
}

/// FM for three values of `δ`, and AM at `ωx/c = 10`.
fn modulation(
    title: &str,
    profile: MotionProfile<f64>,
    deltas: [f64; 3],
) -> Result<(Table, String)> {
    let scenarios = deltas
        .iter()
        .map(|&d| scenario(d, profile.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec![String::from("omega_t")];
    header.extend(deltas.iter().map(|d| format!("fm_delta={d}")));
    header.extend(deltas.iter().map(|d| format!("am_delta={d}")));
    let mut table = Table::new(header);

    for t in times() {
        let mut row = vec![t];
        for sc in &scenarios {
            row.push(fm_factor(sc, t)?);
        }
        for sc in &scenarios {
            row.push(am_factor(sc, AM_RECEIVER, t)?);
        }
        table.push_values(&row);
    }

    let curves = |offset: usize| -> Vec<Series> {
        deltas
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let points = table
                    .rows
                    .iter()
                    .map(|r| Some((r[0]?, r[offset + k]?)))
                    .collect();
                Series::new(Some(&format!("delta = {d}")), STROKES[k], k, points)
            })
            .collect()
    };
    let panels = [
        Panel {
            title: "frequency modulation".into(),
            x_label: "omega t".into(),
            y_label: "FM".into(),
            x_range: Some((0.0, T_MAX)),
            series: curves(1),
        },
        Panel {
            title: format!("amplitude modulation, omega x / c = {AM_RECEIVER}"),
            x_label: "omega t".into(),
            y_label: "AM".into(),
            x_range: Some((0.0, T_MAX)),
            series: curves(1 + deltas.len()),
        },
    ];
    let svg = render(title, &panels);
    Ok((table, svg))
}

/// Waveform, envelope and stationary reference at both receivers. Cells are
/// empty where the receiver lies behind the boundary; before the front
/// arrives the waveform and reference are zero and the envelope is empty.
fn waveform(title: &str, profile: MotionProfile<f64>, delta: f64) -> Result<(Table, String)> {
    let sc = scenario(delta, profile)?;
    let mut header = vec![String::from("omega_t")];
    for x in WAVE_RECEIVERS {
        header.push(format!("re_u_x={x}"));
        header.push(format!("am_x={x}"));
        header.push(format!("re_ref_x={x}"));
    }
    let mut table = Table::new(header);

    for t in times() {
        let mut row = vec![Some(t)];
        for x in WAVE_RECEIVERS {
            match sc.boundary_offset(x, t) {
                Err(Error::ObserverInsideBoundary { .. }) => row.extend([None, None, None]),
                Err(e) => return Err(e.into()),
                Ok(_) if x > t => row.extend([Some(0.0), None, Some(0.0)]),
                Ok(_) => {
                    let sample = leading_order_field(&sc, x, t, false)?;
                    row.push(Some(sample.value.re));
                    row.push(Some(sample.factors.am));
                    row.push(Some((t - x).cos()));
                }
            }
        }
        table.push(row);
    }

    let panels: Vec<Panel> = WAVE_RECEIVERS
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let base = 1 + 3 * k;
            let column = |offset: usize, sign: f64| -> Vec<Option<(f64, f64)>> {
                table
                    .rows
                    .iter()
                    .map(|r| Some((r[0]?, sign * r[base + offset]?)))
                    .collect()
            };
            Panel {
                title: format!("receiver at omega x / c = {x}"),
                x_label: "omega t".into(),
                y_label: "Re u".into(),
                x_range: Some((0.0, T_MAX)),
                series: vec![
                    Series::new(Some("waveform"), Stroke::Solid, 0, column(0, 1.0)),
                    Series::new(Some("envelope"), Stroke::Dashed, 1, column(1, 1.0)),
                    Series::new(None, Stroke::Dashed, 1, column(1, -1.0)),
                    Series::new(Some("stationary"), Stroke::Dotted, 2, column(2, 1.0)),
                ],
            }
        })
        .collect();
    let svg = render(title, &panels);
    Ok((table, svg))
}
