//! Receiver time series, phase-unwrapping frequency estimates and spectra.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::asymptotics::leading_order_field;
use crate::error::{Error, Result};
use crate::motion::Scenario;
use crate::oracle::{default_tolerance, retarded_time};
use crate::scalar::Scalar;

/// Adjacent raw phase steps at or above this fraction of π are treated as aliased.
pub const ALIASING_FRACTION: f64 = 0.95;

/// Peaks below this fraction of the spectral maximum are ignored.
pub const PEAK_THRESHOLD: f64 = 0.01;

/// Minimum separation, in bins, between reported peaks.
pub const PEAK_MIN_SEPARATION: usize = 2;

/// Minimum series length accepted by [`spectrum`].
pub const MIN_SPECTRUM_SAMPLES: usize = 8;

/// Field model used to synthesize a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSource {
    Asymptotic { include_phase_shift: bool },
    Oracle,
}

impl FieldSource {
    pub fn name(&self) -> &'static str {
        match self {
            FieldSource::Asymptotic { .. } => "asymptotic",
            FieldSource::Oracle => "oracle",
        }
    }
}

/// Complex samples of the field at a fixed receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceiverSeries<T> {
    pub x: T,
    pub t0: T,
    pub dt: T,
    pub values: Vec<Complex<T>>,
    pub source: FieldSource,
}

impl<T: Scalar> ReceiverSeries<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, j: usize) -> T {
        self.t0 + self.dt * T::from_usize_lossy(j)
    }

    /// Complex conjugate of every sample.
    pub fn conjugate(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| v.conj()).collect(),
            ..self.clone()
        }
    }
}

/// Samples `source` at `x` for `t = t0 + j·dt`, `j < n`.
///
/// Every sample must lie inside the causal cone; a window reaching before the
/// wavefront is rejected instead of zero-padded.
pub fn sample_receiver<T: Scalar>(
    source: FieldSource,
    scenario: &Scenario<T>,
    x: T,
    t0: T,
    dt: T,
    n: usize,
) -> Result<ReceiverSeries<T>> {
    if !(dt > T::zero() && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt.as_f64(),
            reason: "sample interval must be positive and finite",
        });
    }
    if n == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let tol = default_tolerance(scenario);
    let values = (0..n)
        .map(|j| {
            let t = t0 + dt * T::from_usize_lossy(j);
            match source {
                FieldSource::Asymptotic {
                    include_phase_shift,
                } => {
                    if x > scenario.c() * t {
                        return Err(Error::NotYetReached {
                            x: x.as_f64(),
                            t: t.as_f64(),
                        });
                    }
                    Ok(leading_order_field(scenario, x, t, include_phase_shift)?.value)
                }
                FieldSource::Oracle => {
                    let r = retarded_time(scenario, x, t, tol)?;
                    Ok(Complex::from_polar(T::one(), scenario.omega() * r.t_e))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReceiverSeries {
        x,
        t0,
        dt,
        values,
        source,
    })
}

/// Angular frequency at each sample from the unwrapped phase: central
/// differences inside, one-sided differences at the ends.
pub fn instantaneous_frequency<T: Scalar>(series: &ReceiverSeries<T>) -> Result<Vec<T>> {
    let n = series.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    let limit = T::lit(ALIASING_FRACTION) * T::PI();
    let steps = series
        .values
        .windows(2)
        .enumerate()
        .map(|(index, pair)| {
            let step = (pair[1] * pair[0].conj()).arg();
            if step.abs() >= limit {
                Err(Error::AliasingSuspected {
                    index,
                    phase_step: step.as_f64(),
                })
            } else {
                Ok(step)
            }
        })
        .collect::<Result<Vec<T>>>()?;

    let dt = series.dt;
    let two_dt = dt + dt;
    let mut freq = Vec::with_capacity(n);
    freq.push(steps[0] / dt);
    freq.extend(steps.windows(2).map(|w| (w[0] + w[1]) / two_dt));
    freq.push(steps[n - 2] / dt);
    Ok(freq)
}

/// Taper applied before the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    Rectangular,
    Hann,
}

impl Window {
    fn weight<T: Scalar>(self, j: usize, n: usize) -> T {
        match self {
            Window::Rectangular => T::one(),
            Window::Hann => {
                let phase = T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(n);
                T::lit(0.5) - T::lit(0.5) * phase.cos()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak<T> {
    pub bin: usize,
    /// Signed angular frequency of the bin centre.
    pub frequency: T,
    pub magnitude: T,
}

/// DFT magnitudes of a series, in transform order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    /// Angular-frequency spacing `2π/(n·dt)`.
    pub bin_width: T,
    pub magnitudes: Vec<T>,
    /// Local maxima above the threshold, strongest first.
    pub peaks: Vec<Peak<T>>,
}

impl<T: Scalar> Spectrum<T> {
    /// Signed centre frequency of bin `k`; bins past the midpoint alias to
    /// negative frequencies.
    pub fn bin_frequency(&self, k: usize) -> T {
        bin_frequency(k, self.magnitudes.len(), self.bin_width)
    }

    /// `(frequency, magnitude)` pairs ordered by increasing frequency.
    pub fn ascending(&self) -> Vec<(T, T)> {
        let n = self.magnitudes.len();
        let split = n - n / 2;
        (split..n)
            .chain(0..split)
            .map(|k| (self.bin_frequency(k), self.magnitudes[k]))
            .collect()
    }

    /// Magnitude of the bin nearest to `frequency`.
    pub fn magnitude_at(&self, frequency: T) -> T {
        let n = self.magnitudes.len() as i64;
        let k = (frequency / self.bin_width)
            .round()
            .to_i64()
            .unwrap_or(0)
            .rem_euclid(n);
        self.magnitudes[k as usize]
    }
}

fn bin_frequency<T: Scalar>(k: usize, n: usize, width: T) -> T {
    if k <= (n - 1) / 2 {
        width * T::from_usize_lossy(k)
    } else {
        -(width * T::from_usize_lossy(n - k))
    }
}

/// Discrete Fourier transform `X_k = Σ_j w_j x_j e^{−2πijk/n}` of the series.
pub fn spectrum<T: Scalar>(series: &ReceiverSeries<T>, window: Window) -> Result<Spectrum<T>> {
    let n = series.len();
    if n < MIN_SPECTRUM_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_SPECTRUM_SAMPLES,
            got: n,
        });
    }
    let mut buffer: Vec<Complex<T>> = series
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| *v * window.weight::<T>(j, n))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    let magnitudes: Vec<T> = buffer.iter().map(|z| z.norm()).collect();
    let bin_width = T::TAU() / (T::from_usize_lossy(n) * series.dt);
    let peaks = detect_peaks(&magnitudes, bin_width);
    Ok(Spectrum {
        bin_width,
        magnitudes,
        peaks,
    })
}

/// Circular local maxima above [`PEAK_THRESHOLD`] of the global maximum, at
/// least [`PEAK_MIN_SEPARATION`] bins apart, strongest first.
pub fn detect_peaks<T: Scalar>(magnitudes: &[T], bin_width: T) -> Vec<Peak<T>> {
    let n = magnitudes.len();
    if n == 0 {
        return Vec::new();
    }
    let max = magnitudes.iter().copied().fold(T::zero(), T::max);
    if max <= T::zero() {
        return Vec::new();
    }
    let threshold = T::lit(PEAK_THRESHOLD) * max;
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&k| {
            let m = magnitudes[k];
            let prev = magnitudes[(k + n - 1) % n];
            let next = magnitudes[(k + 1) % n];
            m >= threshold && m > prev && m >= next
        })
        .collect();
    candidates.sort_by(|&a, &b| {
        magnitudes[b]
            .partial_cmp(&magnitudes[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });

    let mut accepted: Vec<usize> = Vec::new();
    for k in candidates {
        let clear = accepted.iter().all(|&q| {
            let d = k.abs_diff(q);
            d.min(n - d) >= PEAK_MIN_SEPARATION
        });
        if clear {
            accepted.push(k);
        }
    }
    accepted
        .into_iter()
        .map(|k| Peak {
            bin: k,
            frequency: bin_frequency(k, n, bin_width),
            magnitude: magnitudes[k],
        })
        .collect()
}
