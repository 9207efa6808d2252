#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gauss_quad::GaussLegendre;

pub const BIN: &str = env!("CARGO_BIN_EXE_monopole-dirac");

pub fn cli(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn golden_path(figure: u8) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("fig{figure}.csv"))
}

/// ∫₀^∞ f(ρ) dρ for integrands decaying on the length `scale`: 40-point
/// Gauss–Legendre on geometrically growing panels from 10⁻³⁰·scale to
/// 200·scale, fine enough near the origin for integrable ρ^{-1+δ} behavior.
pub fn half_line<F: Fn(f64) -> f64>(scale: f64, f: F) -> f64 {
    let rule = GaussLegendre::new(40).expect("rule");
    let mut a = 0.0;
    let mut b = 1e-30 * scale;
    let mut sum = 0.0;
    while a < 200.0 * scale {
        sum += rule.integrate(a, b, &f);
        a = b;
        b = if b < scale { b * 4.0 } else { b + scale };
    }
    sum
}

/// Sixth-order central differences (f', f'').
pub fn derivatives<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> (f64, f64) {
    let v: Vec<f64> = (-3..=3).map(|k| f(x + k as f64 * h)).collect();
    let d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * h);
    let d2 = (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] - 27.0 * v[5]
        + 2.0 * v[6])
        / (180.0 * h * h);
    (d1, d2)
}

/// Sign changes of `f` on a fine grid over (0, 60/η], ignoring samples
/// below 10⁻⁹ of the largest magnitude.
pub fn interior_zeros<F: Fn(f64) -> f64>(eta: f64, f: F) -> usize {
    let samples: Vec<f64> = (1..=20000).map(|i| f(i as f64 * 60.0 / (eta * 20000.0))).collect();
    let peak = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut last = 0.0f64;
    let mut count = 0;
    for v in samples {
        if v.abs() <= 1e-9 * peak {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// ξ = √((m_j − dλ/ħ)² + (κc/ħ)²), straight from the definition.
pub fn xi(mj: f64, d: f64, lambda_m: f64, kappa: f64, hbar: f64, c: f64) -> f64 {
    let a = mj - d * lambda_m / hbar;
    let b = kappa * c / hbar;
    (a * a + b * b).sqrt()
}
