//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::TAU;
use std::fs;
use std::panic;
use std::path::Path;
use std::process::Command;

use doppler_core::asymptotics::{am_factor, fm_factor, leading_order_field, wavenumber};
use doppler_core::oracle::{
    compare_fields, default_tolerance, exact_field, exact_instantaneous_frequency, retarded_time,
};
use doppler_core::signal::{sample_receiver, spectrum};
use doppler_core::{BoundaryMotion, FieldSource, MediumParams, MotionProfile, Scenario, Window};
use doppler_lab::commands::appendix_difference;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_doppler-lab");
const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

type Criterion = (u8, &'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn unit(beta: f64, delta: f64, eps: f64, profile: MotionProfile<f64>) -> Scenario<f64> {
    Scenario::dimensionless(beta, delta, eps, profile).unwrap()
}

fn random_profile(rng: &mut ChaCha8Rng) -> MotionProfile<f64> {
    if rng.gen_bool(0.5) {
        MotionProfile::Decelerating
    } else {
        MotionProfile::Oscillatory
    }
}

fn decelerating_limits() -> Verdict {
    let (beta, delta, eps) = (0.0, -0.2, 0.1);
    let s = unit(beta, delta, eps, MotionProfile::Decelerating);
    let t_late = 30.0 / eps;
    let fm0 = (fm_factor(&s, 0.0).unwrap() - 1.0 / (1.0 - beta - delta)).abs();
    let fm_late = (fm_factor(&s, t_late).unwrap() - 1.0 / (1.0 - beta)).abs();
    let mut am0: f64 = 0.0;
    let mut am_late: f64 = 0.0;
    for x in [0.1, 10.0] {
        let expected = (0.5 * delta * (1.0 - (-eps * x).exp())).exp();
        am0 = am0.max((am_factor(&s, x, 0.0).unwrap() - expected).abs());
        am_late = am_late.max((am_factor(&s, x, t_late).unwrap() - 1.0).abs());
    }
    Verdict::new(
        fm0 < 1e-12 && fm_late < 1e-6 && am0 < 1e-12 && am_late < 1e-6,
        format!("|FM(0)-1/(1-b-d)|={fm0:.2e}, |FM(30/e)-1/(1-b)|={fm_late:.2e}, |AM(x,0)-closed form|={am0:.2e}, |AM(x,30/e)-1|={am_late:.2e}"),
    )
}

fn classical_reduction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for beta in [-0.5, 0.0, 0.5] {
        let s = unit(beta, 0.0, 0.1, random_profile(&mut rng));
        for _ in 0..1000 {
            let t = rng.gen_range(0.0..100.0);
            let xb = s.position(t).unwrap();
            let x = xb + rng.gen_range(0.0..=1.0) * (t - xb);
            let classical = Complex::from_polar(1.0, (t - x) / (1.0 - beta));
            let exact = exact_field(&s, x, t).unwrap();
            for shift in [false, true] {
                let asym = leading_order_field(&s, x, t, shift).unwrap().value;
                worst = worst
                    .max((asym - exact).norm())
                    .max((asym - classical).norm());
            }
            worst = worst.max((exact - classical).norm());
        }
    }
    Verdict::new(
        worst < 1e-12,
        format!("max pairwise |difference| = {worst:.2e} over 3x1000 points"),
    )
}

fn dispersion_relation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let b: f64 = rng.gen_range(-0.9..0.9);
        let k = wavenumber(b).unwrap();
        worst = worst.max(((1.0 - b * b) * k * k - 2.0 * b * k - 1.0).abs());
    }
    let k_half = wavenumber(0.5).unwrap();
    Verdict::new(
        worst < 1e-12 && k_half == 2.0,
        format!("max residual = {worst:.2e}, k(0.5) = {k_half}"),
    )
}

fn column(csv: &str, name: &str) -> Vec<Option<f64>> {
    let mut lines = csv.lines();
    let k = lines
        .next()
        .unwrap()
        .split(',')
        .position(|h| h == name)
        .unwrap();
    lines
        .map(|l| l.split(',').nth(k).unwrap().parse().ok())
        .collect()
}

fn figure_regression() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let mut notes = Vec::new();
    let mut pass = true;
    for id in 1..=4 {
        let status = Command::new(BIN)
            .args(["figure", &id.to_string(), "--out"])
            .arg(dir.path())
            .output()
            .unwrap()
            .status;
        let name = format!("figure{id}.csv");
        let ours = fs::read(dir.path().join(&name)).unwrap_or_default();
        let golden = fs::read(Path::new(GOLDEN).join(&name)).unwrap();
        let same = status.success() && ours == golden;
        pass &= same && dir.path().join(format!("figure{id}.svg")).exists();
        notes.push(format!(
            "{name} {}",
            if same { "identical" } else { "differs" }
        ));
    }

    let fig3 = fs::read_to_string(dir.path().join("figure3.csv")).unwrap();
    let t: Vec<f64> = column(&fig3, "omega_t").into_iter().flatten().collect();
    let fm: Vec<f64> = column(&fig3, "fm_delta=0.2")
        .into_iter()
        .flatten()
        .collect();
    let max = fm.iter().cloned().fold(f64::MIN, f64::max);
    let min = fm.iter().cloned().fold(f64::MAX, f64::min);
    pass &= (max - 1.25).abs() < 1e-12 && (min - 1.0 / 1.2).abs() < 1e-6;
    let peaks: Vec<f64> = (1..fm.len() - 1)
        .filter(|&j| fm[j] >= fm[j - 1] && fm[j] > fm[j + 1])
        .map(|j| t[j])
        .chain(std::iter::once(t[0]))
        .collect();
    let mut peaks = peaks;
    peaks.sort_by(f64::total_cmp);
    let dt = t[1] - t[0];
    let period_ok = peaks
        .windows(2)
        .all(|p| ((p[1] - p[0]) - TAU / 0.1).abs() <= dt);
    pass &= period_ok && peaks.len() >= 3;

    let fig1 = fs::read_to_string(dir.path().join("figure1.csv")).unwrap();
    let mut monotone = true;
    for d in ["-0.2", "-0.1", "-0.05"] {
        for prefix in ["fm", "am"] {
            let v: Vec<f64> = column(&fig1, &format!("{prefix}_delta={d}"))
                .into_iter()
                .flatten()
                .collect();
            monotone &= v.windows(2).all(|w| w[1] >= w[0]) && (v[v.len() - 1] - 1.0).abs() < 1e-6;
        }
    }
    pass &= monotone;
    Verdict::new(
        pass,
        format!(
            "{}; oscillatory FM max {max:.15} min {min:.9}; period {} within one sample; decelerating monotone {monotone}",
            notes.join(", "),
            if period_ok { "matches" } else { "off" }
        ),
    )
}

fn appendix_identity() -> Verdict {
    let mut worst: f64 = 0.0;
    for profile in [MotionProfile::Decelerating, MotionProfile::Oscillatory] {
        for (beta, delta) in [(0.0, -0.2), (0.0, 0.2), (0.3, 0.25)] {
            let s = unit(beta, delta, 0.1, profile.clone());
            worst = worst.max(appendix_difference(&s, 2.0, 20.0, 100).unwrap());
        }
    }
    Verdict::new(
        worst < 1e-10,
        format!("max |transport - AM| = {worst:.2e} on 100x100 grids"),
    )
}

fn oracle_consistency() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut residual_ok = true;
    let mut worst_residual: f64 = 0.0;
    let mut worst_modulus: f64 = 0.0;
    let mut worst_freq: f64 = 0.0;
    for _ in 0..10_000 {
        let medium = MediumParams::new(rng.gen_range(0.5..5.0), rng.gen_range(0.5..3.0)).unwrap();
        let motion = BoundaryMotion::from_dimensionless(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.3..0.3),
            rng.gen_range(0.02..0.3),
            random_profile(&mut rng),
            &medium,
        )
        .unwrap();
        let s = Scenario::new(motion, medium).unwrap();
        let t = rng.gen_range(0.0..200.0) / s.omega();
        let xb = s.position(t).unwrap();
        let x = xb + rng.gen_range(0.0..=1.0) * (s.c() * t - xb);
        let r = retarded_time(&s, x, t, default_tolerance(&s)).unwrap();
        residual_ok &= r.residual < 1e-12 / s.omega();
        worst_residual = worst_residual.max(r.residual * s.omega());
        worst_modulus = worst_modulus.max((exact_field(&s, x, t).unwrap().norm() - 1.0).abs());
        let at_source = exact_instantaneous_frequency(&s, xb, t).unwrap();
        worst_freq = worst_freq.max((at_source - s.omega() * fm_factor(&s, t).unwrap()).abs());
    }

    let mut increasing = true;
    for profile in [MotionProfile::Decelerating, MotionProfile::Oscillatory] {
        let s = unit(0.2, 0.3, 0.1, profile);
        let x = 150.0;
        let mut last = f64::NEG_INFINITY;
        for j in 0..2000 {
            let te = retarded_time(&s, x, x + 0.1 * j as f64, 1e-12).unwrap().t_e;
            increasing &= te > last;
            last = te;
        }
    }
    Verdict::new(
        residual_ok && increasing && worst_modulus < 1e-15 && worst_freq < 1e-10,
        format!(
            "max omega*residual = {worst_residual:.2e}, t_e increasing {increasing}, max ||u|-1| = {worst_modulus:.2e}, max |omega_exact - omega FM| at boundary = {worst_freq:.2e}"
        ),
    )
}

fn epsilon_convergence() -> Verdict {
    let eps_list = [0.1, 0.05, 0.025];
    let mut phase = Vec::new();
    let mut freq = Vec::new();
    let mut phase_unshifted = Vec::new();
    for eps in eps_list {
        let s = unit(0.0, -0.2, eps, MotionProfile::Decelerating);
        let x = 0.1 / eps;
        let window = (x, x + 20.0 * TAU);
        let shifted = compare_fields(&s, x, window, 2001, true).unwrap();
        let plain = compare_fields(&s, x, window, 2001, false).unwrap();
        phase.push(shifted.max_phase_error);
        freq.push(shifted.max_frequency_rel_error);
        phase_unshifted.push(plain.max_phase_error);
    }
    let ratios: Vec<f64> = phase.windows(2).map(|p| p[0] / p[1]).collect();
    let ratio_ok = ratios.iter().all(|r| (1.5..=3.0).contains(r));
    let freq_ok = freq.iter().zip(eps_list).all(|(f, e)| *f <= 5.0 * e);
    Verdict::new(
        ratio_ok && freq_ok,
        format!(
            "phase errors [{}] ratios [{}] (need [1.5, 3]); freq rel errors [{}] (need <= 5 eps: {freq_ok}); without phase shift [{}]",
            list(&phase, "e"),
            list(&ratios, "f"),
            list(&freq, "e"),
            list(&phase_unshifted, "e")
        ),
    )
}

fn list(values: &[f64], style: &str) -> String {
    values
        .iter()
        .map(|v| {
            if style == "e" {
                format!("{v:.3e}")
            } else {
                format!("{v:.3}")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn spectral_sidebands() -> Verdict {
    let eps = 0.1;
    let s = unit(0.0, 0.2, eps, MotionProfile::Oscillatory);
    let n = 628;
    let dt = 5.0 * TAU / eps / n as f64;
    let x = 10.0;
    let series = sample_receiver(FieldSource::Oracle, &s, x, x, dt, n).unwrap();
    let spec = spectrum(&series, Window::Rectangular).unwrap();
    let omega_m = eps;

    let mut peaks = spec.peaks.clone();
    peaks.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    let spacing_ok = peaks.len() >= 3
        && peaks
            .windows(2)
            .all(|p| ((p[1].frequency - p[0].frequency) - omega_m).abs() <= spec.bin_width);

    let mut asymmetric = Vec::new();
    for p in &spec.peaks {
        let k = ((p.frequency - 1.0) / omega_m).round();
        if k <= 0.0 {
            continue;
        }
        let mirror = spec
            .peaks
            .iter()
            .find(|q| ((q.frequency - (1.0 - k * omega_m)).abs()) <= 0.5 * spec.bin_width);
        if let Some(q) = mirror {
            if p.magnitude != q.magnitude {
                asymmetric.push((k as i64, p.magnitude, q.magnitude));
            }
        }
    }
    asymmetric.sort_by_key(|a| a.0);
    let first = asymmetric
        .first()
        .map(|(k, hi, lo)| format!("k={k}: |X(w+k W)|={hi:.3} vs |X(w-k W)|={lo:.3}"))
        .unwrap_or_else(|| String::from("none"));
    Verdict::new(
        spacing_ok && !asymmetric.is_empty(),
        format!(
            "{} peaks, spacing = Omega within one bin {spacing_ok}; {} unequal mirror pairs, {first}",
            spec.peaks.len(),
            asymmetric.len()
        ),
    )
}

fn validation_gate() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("supersonic.json");
    fs::write(
        &config,
        r#"{"medium": {"omega": 1, "c": 1}, "motion": {"v": 0.5, "a": 5.0, "Omega": 0.1, "profile": "oscillatory"}}"#,
    )
    .unwrap();
    let mut cases: Vec<Vec<String>> = Vec::new();
    for cmd in ["fm", "am", "field", "compare", "spectrum", "appendix-check"] {
        for (beta, delta) in [("0", "1.0"), ("0.5", "0.5"), ("0.2", "0.9")] {
            cases.push(
                [
                    cmd,
                    "--profile",
                    "decelerating",
                    "--beta",
                    beta,
                    "--delta",
                    delta,
                ]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            );
        }
        cases.push(vec![
            cmd.to_string(),
            "--config".into(),
            config.display().to_string(),
        ]);
    }
    let mut failures = Vec::new();
    for (k, args) in cases.iter().enumerate() {
        let out = dir.path().join(format!("out{k}"));
        let output = Command::new(BIN)
            .args(args)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        let stderr = String::from_utf8_lossy(&output.stderr);
        let ok = output.status.code() == Some(2)
            && !out.exists()
            && stderr.contains("error[SUPERSONIC]");
        if !ok {
            failures.push(args.join(" "));
        }
    }
    Verdict::new(
        failures.is_empty(),
        format!(
            "{} rejected configurations, failures: {failures:?}",
            cases.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "decelerating limits", decelerating_limits),
        (2, "classical reduction", classical_reduction),
        (3, "dispersion relation", dispersion_relation),
        (4, "figure regression", figure_regression),
        (5, "appendix identity", appendix_identity),
        (6, "oracle self-consistency", oracle_consistency),
        (7, "epsilon convergence", epsilon_convergence),
        (8, "spectral sidebands", spectral_sidebands),
        (9, "validation gate", validation_gate),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let verdict =
            panic::catch_unwind(check).unwrap_or_else(|_| Verdict::new(false, "panicked"));
        println!(
            "{} criterion {id} ({name}): {}",
            if verdict.pass { "PASS" } else { "FAIL" },
            verdict.detail
        );
        if !verdict.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
