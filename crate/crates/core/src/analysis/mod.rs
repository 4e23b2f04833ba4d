//! Frequency-domain analysis of all-pole analog filters.
//!
//! Every closed form here has a direct numeric counterpart (complex
//! evaluation of `D(j omega)`, phase unwrapped along a sweep) and the tests
//! hold the two against each other.

pub mod expansion;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::{check_positive, AnalogPolynomialFilter};

pub use expansion::{
    closed_form_alphas, closed_form_alphas_for_row, closed_form_lambdas,
    closed_form_lambdas_for_row, group_delay_oracle, magnitude_squared_oracle, ClosedForm,
    GroupDelayExpansion, IndexDiagnostic, MagnitudeSquaredExpansion,
};

/// Substeps per decade used when a phase query has to walk up from a lower
/// frequency.
pub const UNWRAP_POINTS_PER_DECADE: f64 = 256.0;

/// Relative width at which bandwidth bisection stops.
pub const BANDWIDTH_TOLERANCE: f64 = 1e-9;

/// One point of the complex frequency response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexResponseSample {
    pub omega: f64,
    pub value: Complex64,
    pub magnitude: f64,
    /// Unwrapped phase in radians, zero at DC.
    pub phase: f64,
}

/// Tracks the continuous (unwrapped) phase of `H(j omega)` as the frequency
/// moves. Large jumps are walked in small geometric substeps and each step
/// takes the branch closest to the previous value.
#[derive(Debug, Clone)]
pub struct PhaseTracker<'a> {
    filter: &'a AnalogPolynomialFilter,
    omega: f64,
    phase: f64,
}

impl<'a> PhaseTracker<'a> {
    pub fn new(filter: &'a AnalogPolynomialFilter) -> Self {
        PhaseTracker {
            filter,
            omega: 0.0,
            phase: 0.0,
        }
    }

    /// Unwrapped phase of `H` at `omega`.
    pub fn phase_at(&mut self, omega: f64) -> Result<f64> {
        check_frequency(omega)?;
        if omega == self.omega {
            return Ok(self.phase);
        }
        if omega == 0.0 {
            self.omega = 0.0;
            self.phase = 0.0;
            return Ok(0.0);
        }
        // Below this the phase is linear in omega with slope of order n /
        // omega_n, so one hop from DC cannot alias.
        let floor = 1e-4 * self.filter.omega_n();
        if self.omega == 0.0 {
            let first = omega.min(floor);
            self.step_to(first)?;
        }
        let ratio = omega / self.omega;
        let substeps = (ratio.log10().abs() * UNWRAP_POINTS_PER_DECADE).ceil().max(1.0) as usize;
        let factor = ratio.powf(1.0 / substeps as f64);
        for _ in 1..substeps {
            self.step_to(self.omega * factor)?;
        }
        self.step_to(omega)?;
        Ok(self.phase)
    }

    fn step_to(&mut self, omega: f64) -> Result<()> {
        let value = self.filter.transfer_at(Complex64::new(0.0, omega))?;
        let principal = value.arg();
        self.phase = nearest_branch(principal, self.phase);
        self.omega = omega;
        Ok(())
    }
}

/// `principal + 2 pi k` closest to `reference`.
pub fn nearest_branch(principal: f64, reference: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    principal + tau * ((reference - principal) / tau).round()
}

fn check_frequency(omega: f64) -> Result<()> {
    if omega.is_finite() && omega >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeFrequency(omega))
    }
}

/// `H(j omega)` with unwrapped phase. A single query walks the phase up from
/// DC; use [`PhaseTracker`] or [`frequency_sweep`] for many points.
pub fn evaluate(filter: &AnalogPolynomialFilter, omega: f64) -> Result<ComplexResponseSample> {
    let mut tracker = PhaseTracker::new(filter);
    evaluate_with(filter, &mut tracker, omega)
}

fn evaluate_with(
    filter: &AnalogPolynomialFilter,
    tracker: &mut PhaseTracker<'_>,
    omega: f64,
) -> Result<ComplexResponseSample> {
    check_frequency(omega)?;
    let value = filter.transfer_at(Complex64::new(0.0, omega))?;
    let phase = tracker.phase_at(omega)?;
    Ok(ComplexResponseSample {
        omega,
        value,
        magnitude: value.norm(),
        phase,
    })
}

/// `10 log10(x^(2n) + kappa + 1)` with the oracle expansion.
pub fn attenuation_db(filter: &AnalogPolynomialFilter, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    let e = magnitude_squared_oracle(filter);
    Ok(10.0 * e.inverse_gain_squared(omega / filter.omega_n()).log10())
}

/// Frequency at which the attenuation reaches `target_db`, by bisection on
/// the monotone attenuation curve.
pub fn bandwidth_for_attenuation(filter: &AnalogPolynomialFilter, target_db: f64) -> Result<f64> {
    check_positive("target_db", target_db)?;
    let e = magnitude_squared_oracle(filter);
    let n = filter.n() as f64;
    let wn = filter.omega_n();
    // (x^(2n) + kappa + 1) - 10^(A/10), negative below the root.
    let excess = 1.0 - 10f64.powf(target_db / 10.0);
    let g = |x: f64| x.powi(2 * filter.n() as i32) + e.kappa(x) + excess;

    let mut lo = 0.0;
    let mut hi = 10f64.powf(target_db / (20.0 * n) + 1.0);
    debug_assert!(g(hi) > 0.0);
    while hi - lo > BANDWIDTH_TOLERANCE * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(wn * 0.5 * (lo + hi))
}

/// `d|H|/d omega = -|H|^3 (n/omega_n x^(2n-1) + d kappa / d omega)`.
pub fn magnitude_derivative(filter: &AnalogPolynomialFilter, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    let e = magnitude_squared_oracle(filter);
    let wn = filter.omega_n();
    let n = filter.n() as i32;
    let x = omega / wn;
    let gain = e.inverse_gain_squared(x).powf(-0.5);
    let kappa_slope = 0.5 * e.kappa_slope(x) / wn;
    Ok(-gain.powi(3) * (n as f64 / wn * x.powi(2 * n - 1) + kappa_slope))
}

/// Negative magnitude slope at the cutoff:
/// `(n + sum i alpha_i) / omega_n / (2 + sum alpha_i)^(3/2)`.
pub fn selectivity(filter: &AnalogPolynomialFilter) -> f64 {
    let e = magnitude_squared_oracle(filter);
    let weighted: f64 = e
        .alphas()
        .iter()
        .enumerate()
        .map(|(idx, a)| (idx + 1) as f64 * a)
        .sum();
    let total: f64 = e.alphas().iter().sum();
    (filter.n() as f64 + weighted) / filter.omega_n() / (2.0 + total).powf(1.5)
}

/// Limit of the phase and group delay at DC: `s`-coefficient over constant
/// term, which is `n zeta / omega_n` for a uniformly damped row.
pub fn delay_at_dc(filter: &AnalogPolynomialFilter) -> f64 {
    let d = filter.denom();
    let n = filter.n();
    d[n - 1] / d[n]
}

/// `tau_p = -phi(omega) / omega` with the unwrapped phase; DC returns the limit.
pub fn phase_delay(filter: &AnalogPolynomialFilter, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    if omega == 0.0 {
        return Ok(delay_at_dc(filter));
    }
    let phase = PhaseTracker::new(filter).phase_at(omega)?;
    Ok(-phase / omega)
}

/// Phase delay from the real and imaginary parts of the normalized
/// denominator, `arctan(Im D / Re D) / omega` with the quadrant and branch
/// resolved by walking up from DC.
pub fn phase_delay_arctan(filter: &AnalogPolynomialFilter, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    if omega == 0.0 {
        return Ok(delay_at_dc(filter));
    }
    let row = filter.normalized_row();
    let n = filter.n();
    let angle = |x: f64| {
        // Ascending index m has coefficient row[n - m].
        let (mut re, mut im) = (0.0, 0.0);
        for m in 0..=n {
            let term = row[n - m] * x.powi(m as i32);
            match m % 4 {
                0 => re += term,
                1 => im += term,
                2 => re -= term,
                _ => im -= term,
            }
        }
        im.atan2(re)
    };
    let x = omega / filter.omega_n();
    let start = x.min(1e-4);
    let substeps = ((x / start).log10() * UNWRAP_POINTS_PER_DECADE).ceil().max(1.0) as usize;
    let factor = (x / start).powf(1.0 / substeps as f64);
    let mut accumulated = nearest_branch(angle(start), 0.0);
    let mut xi = start;
    for k in 1..=substeps {
        xi = if k == substeps { x } else { xi * factor };
        accumulated = nearest_branch(angle(xi), accumulated);
    }
    Ok(accumulated / omega)
}

/// Group delay `|H|^2 * sum lambda_i x^(2i) / omega_n` with the closed-form
/// lambdas of the filter's normalized row.
pub fn group_delay(filter: &AnalogPolynomialFilter, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    let closed = closed_form_lambdas_for_row(&filter.normalized_row())?;
    Ok(group_delay_from(filter, &closed.expansion, omega))
}

fn group_delay_from(
    filter: &AnalogPolynomialFilter,
    lambdas: &GroupDelayExpansion,
    omega: f64,
) -> f64 {
    let x = omega / filter.omega_n();
    let mag = magnitude_squared_oracle(filter);
    lambdas.numerator(x) / mag.inverse_gain_squared(x) / filter.omega_n()
}

/// Log-spaced sweep description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
}

impl SweepSpec {
    pub const DEFAULT_POINTS: usize = 1000;

    /// 1000 points over `[omega_n / 100, 100 omega_n]`.
    pub fn around(omega_n: f64) -> Self {
        SweepSpec {
            omega_min: omega_n / 100.0,
            omega_max: omega_n * 100.0,
            points: Self::DEFAULT_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.omega_min.is_finite()
            && self.omega_max.is_finite()
            && self.omega_min > 0.0
            && self.omega_max > self.omega_min
            && self.points >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRange(format!(
                "need 0 < min < max and at least 2 points, got [{}, {}] with {} points",
                self.omega_min, self.omega_max, self.points
            )))
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        let (a, b) = (self.omega_min.ln(), self.omega_max.ln());
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| match k {
                0 => self.omega_min,
                k if k == self.points - 1 => self.omega_max,
                k => (a + (b - a) * k as f64 / last).exp(),
            })
            .collect()
    }
}

/// One row of a frequency sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub omega: f64,
    pub magnitude: f64,
    pub magnitude_db: f64,
    pub phase_rad: f64,
    pub phase_delay_s: f64,
    pub group_delay_s: f64,
}

/// Magnitude, unwrapped phase and both delays over a log-spaced grid.
pub fn frequency_sweep(filter: &AnalogPolynomialFilter, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let lambdas = closed_form_lambdas_for_row(&filter.normalized_row())?.expansion;
    let mut tracker = PhaseTracker::new(filter);
    spec.grid()
        .into_iter()
        .map(|omega| {
            let s = evaluate_with(filter, &mut tracker, omega)?;
            Ok(SweepRow {
                omega,
                magnitude: s.magnitude,
                magnitude_db: 20.0 * s.magnitude.log10(),
                phase_rad: s.phase,
                phase_delay_s: -s.phase / omega,
                group_delay_s: group_delay_from(filter, &lambdas, omega),
            })
        })
        .collect()
}
