//! Frequency measurement from sampled signals, and the damped linear
//! oscillator behind the stationary/non-stationary oscillation series.

use std::f64::consts::PI;

use crate::equilibrium::{epicyclic_omega, equilibrium_angular_momentum};
use crate::error::{Error, Result};
use crate::ring_model::RingSystem;

pub const MIN_CROSSINGS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate {
    /// Angular frequency.
    pub omega: f64,
    pub std_error: f64,
    pub crossings: usize,
}

/// Angular frequency from the zero crossings of x − mean(x): crossing times
/// (linearly interpolated) are regressed on their index, the slope being half
/// a period.
pub fn measure_frequency(times: &[f64], values: &[f64]) -> Result<FrequencyEstimate> {
    if times.len() != values.len() {
        return Err(Error::Domain("times and values differ in length".into()));
    }
    let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
    let mut crossings = Vec::new();
    for k in 1..values.len() {
        let (a, b) = (values[k - 1] - mean, values[k] - mean);
        if a == 0.0 {
            if crossings.last() != Some(&times[k - 1]) {
                crossings.push(times[k - 1]);
            }
        } else if a * b < 0.0 {
            let t = times[k - 1] + (times[k] - times[k - 1]) * a / (a - b);
            crossings.push(t);
        }
    }
    let n = crossings.len();
    if n < MIN_CROSSINGS {
        return Err(Error::InsufficientCrossings { found: n, required: MIN_CROSSINGS });
    }
    let nf = n as f64;
    let kbar = (nf - 1.0) / 2.0;
    let tbar = crossings.iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (k, t) in crossings.iter().enumerate() {
        let dk = k as f64 - kbar;
        sxy += dk * (t - tbar);
        sxx += dk * dk;
    }
    let slope = sxy / sxx;
    let intercept = tbar - slope * kbar;
    let sse: f64 = crossings
        .iter()
        .enumerate()
        .map(|(k, t)| (t - intercept - slope * k as f64).powi(2))
        .sum();
    let slope_err = (sse / (nf - 2.0) / sxx).sqrt();
    Ok(FrequencyEstimate {
        omega: PI / slope,
        std_error: PI * slope_err / (slope * slope),
        crossings: n,
    })
}

/// x/x₀ against t/T for an undamped and a damped oscillator with the same
/// frequency, T = 2π/ω.
#[derive(Debug, Clone, PartialEq)]
pub struct DemoSeries {
    pub omega: f64,
    pub resistance: f64,
    pub t_over_period: Vec<f64>,
    pub stationary: Vec<f64>,
    pub damped: Vec<f64>,
}

/// ẍ = −ω²x − 2kẋ from x(0) = kick, ẋ(0) = 0, integrated with RK4 at T/512.
pub fn damped_oscillator(omega: f64, resistance: f64, periods: f64) -> Vec<(f64, f64)> {
    let period = 2.0 * PI / omega;
    let h = period / 512.0;
    let steps = (periods * 512.0).round() as usize;
    let f = |y: [f64; 2]| [y[1], -omega * omega * y[0] - 2.0 * resistance * y[1]];
    let mut y = [1.0, 0.0];
    let mut out = Vec::with_capacity(steps / 4 + 1);
    out.push((0.0, 1.0));
    for k in 1..=steps {
        let k1 = f(y);
        let k2 = f([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = f([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = f([y[0] + h * k3[0], y[1] + h * k3[1]]);
        for i in 0..2 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if k % 4 == 0 {
            out.push((k as f64 / 512.0, y[0]));
        }
    }
    out
}

/// Undamped and damped radial oscillations at the ring's epicyclic
/// frequency, normalised by the initial kick.
pub fn oscillation_demo(system: &RingSystem, resistance: f64, periods: f64) -> Result<DemoSeries> {
    if !(resistance >= 0.0) {
        return Err(Error::Domain(format!("resistance must be >= 0, got {resistance}")));
    }
    let l = equilibrium_angular_momentum(system)?;
    let omega = epicyclic_omega(system, l)?;
    let free = damped_oscillator(omega, 0.0, periods);
    let damped = damped_oscillator(omega, resistance, periods);
    Ok(DemoSeries {
        omega,
        resistance,
        t_over_period: free.iter().map(|p| p.0).collect(),
        stationary: free.iter().map(|p| p.1).collect(),
        damped: damped.iter().map(|p| p.1).collect(),
    })
}
