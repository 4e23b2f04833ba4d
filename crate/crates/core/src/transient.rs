//! Step and impulse responses of analog prototypes, transient metrics and
//! numerically computed poles.
//!
//! The filter is realized in controllable companion form and integrated with
//! fixed-step classic RK4. Accuracy is checked by halving the step, not by
//! an adaptive scheme.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::{check_positive, AnalogPolynomialFilter};
use crate::roots::{self, horner};

/// Horizon multiplier: default horizon is `HORIZON_PER_ORDER * n / omega_n`.
pub const HORIZON_PER_ORDER: f64 = 30.0;
/// Default step is `DEFAULT_STEP / omega_n`.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Fraction of samples at the end of a step response that must be settled.
pub const SETTLED_TAIL_FRACTION: f64 = 0.1;
/// Band around the final value the settled tail must stay in.
pub const SETTLED_TAIL_BAND: f64 = 0.005;
/// Settling band for the settling time metric.
pub const SETTLING_BAND: f64 = 0.02;

/// `x' = A x + B u`, `y = C x + D u`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpaceRealization {
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
    pub c: DVector<f64>,
    pub d: f64,
}

impl StateSpaceRealization {
    /// `C (-A)^-1 B + D`.
    pub fn dc_gain(&self) -> Option<f64> {
        let minus_a = -self.a.clone();
        let x = minus_a.lu().solve(&self.b)?;
        Some(self.c.dot(&x) + self.d)
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }
}

/// Controllable companion realization of `omega_n^n / D(s)`.
///
/// The state is the chain `x_1, x_1', ..., x_1^(n-1)`; the last row of `A`
/// holds the negated denominator coefficients in ascending power order.
pub fn to_state_space(filter: &AnalogPolynomialFilter) -> StateSpaceRealization {
    let n = filter.n();
    let d = filter.denom();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n - 1 {
        a[(i, i + 1)] = 1.0;
    }
    for j in 0..n {
        a[(n - 1, j)] = -d[n - j];
    }
    let mut b = DVector::zeros(n);
    b[n - 1] = 1.0;
    let mut c = DVector::zeros(n);
    c[0] = filter.numerator();
    StateSpaceRealization { a, b, c, d: 0.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Step,
    Impulse,
}

/// Integration horizon and step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions {
    pub horizon: f64,
    pub dt: f64,
}

impl SimulationOptions {
    /// `30 n / omega_n` horizon with a `1e-3 / omega_n` step.
    pub fn for_filter(filter: &AnalogPolynomialFilter) -> Self {
        let wn = filter.omega_n();
        SimulationOptions {
            horizon: HORIZON_PER_ORDER * filter.n() as f64 / wn,
            dt: DEFAULT_STEP / wn,
        }
    }
}

/// Uniformly sampled simulation output, `t[k] = k dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub dt: f64,
    pub t: Vec<f64>,
    pub y: Vec<f64>,
    pub input_kind: InputKind,
}

impl SimulationResult {
    /// Wraps externally produced samples (for instance a digital filter
    /// output) so the same metric extraction applies.
    pub fn from_samples(dt: f64, y: Vec<f64>, input_kind: InputKind) -> Self {
        let t = (0..y.len()).map(|k| k as f64 * dt).collect();
        SimulationResult {
            dt,
            t,
            y,
            input_kind,
        }
    }

    /// Trapezoidal integral of the output.
    pub fn integral(&self) -> f64 {
        self.y
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]) * self.dt)
            .sum()
    }
}

/// Largest time step accepted for a filter: half the reciprocal of the
/// largest pole modulus.
pub fn step_limit(filter: &AnalogPolynomialFilter) -> Result<f64> {
    let radius = poles(filter)?
        .poles
        .iter()
        .map(|p| p.norm())
        .fold(0.0, f64::max);
    Ok(0.5 / radius)
}

/// Unit step response, zero initial state.
pub fn simulate_step(filter: &AnalogPolynomialFilter, options: SimulationOptions) -> Result<SimulationResult> {
    simulate(filter, options, InputKind::Step)
}

/// Unit impulse response: the impulse is injected as the initial state `B`
/// with zero input afterwards.
pub fn simulate_impulse(filter: &AnalogPolynomialFilter, options: SimulationOptions) -> Result<SimulationResult> {
    simulate(filter, options, InputKind::Impulse)
}

fn simulate(
    filter: &AnalogPolynomialFilter,
    options: SimulationOptions,
    kind: InputKind,
) -> Result<SimulationResult> {
    let SimulationOptions { horizon, dt } = options;
    check_positive("horizon", horizon)?;
    check_positive("dt", dt)?;
    let limit = step_limit(filter)?;
    if dt >= limit {
        return Err(Error::StepTooLarge { dt, limit });
    }

    let ss = to_state_space(filter);
    let n = ss.order();
    let steps = (horizon / dt).round() as usize;
    let input = match kind {
        InputKind::Step => 1.0,
        InputKind::Impulse => 0.0,
    };
    let forcing = &ss.b * input;
    let mut x = match kind {
        InputKind::Step => DVector::zeros(n),
        InputKind::Impulse => ss.b.clone(),
    };

    let mut y = Vec::with_capacity(steps + 1);
    y.push(ss.c.dot(&x));
    let (mut k1, mut k2, mut k3, mut k4) = (
        DVector::zeros(n),
        DVector::zeros(n),
        DVector::zeros(n),
        DVector::zeros(n),
    );
    let mut probe = DVector::zeros(n);
    let rhs = |out: &mut DVector<f64>, state: &DVector<f64>| {
        out.copy_from(&forcing);
        out.gemv(1.0, &ss.a, state, 1.0);
    };
    for _ in 0..steps {
        rhs(&mut k1, &x);
        probe.copy_from(&x);
        probe.axpy(0.5 * dt, &k1, 1.0);
        rhs(&mut k2, &probe);
        probe.copy_from(&x);
        probe.axpy(0.5 * dt, &k2, 1.0);
        rhs(&mut k3, &probe);
        probe.copy_from(&x);
        probe.axpy(dt, &k3, 1.0);
        rhs(&mut k4, &probe);
        x.axpy(dt / 6.0, &k1, 1.0);
        x.axpy(dt / 3.0, &k2, 1.0);
        x.axpy(dt / 3.0, &k3, 1.0);
        x.axpy(dt / 6.0, &k4, 1.0);
        y.push(ss.c.dot(&x));
    }
    Ok(SimulationResult::from_samples(dt, y, kind))
}

/// Step-response figures of merit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransientMetrics {
    pub overshoot_pct: f64,
    pub peak_time: f64,
    pub rise_time_10_90: f64,
    pub settling_time_2pct: f64,
    pub final_value: f64,
}

/// Overshoot, peak, rise and settling times of a unit step response.
///
/// Overshoot is measured against the unit reference, with the peak refined
/// by a parabola through the three samples around the discrete maximum.
pub fn transient_metrics(result: &SimulationResult) -> Result<TransientMetrics> {
    if result.input_kind != InputKind::Step {
        return Err(Error::Usage("transient metrics need a step response".into()));
    }
    let y = &result.y;
    let len = y.len();
    if len < 3 {
        return Err(Error::Unsettled { deviation: f64::INFINITY });
    }
    let tail_start = len - ((len as f64 * SETTLED_TAIL_FRACTION).ceil() as usize).max(1);
    let deviation = y[tail_start..]
        .iter()
        .map(|v| (v - 1.0).abs())
        .fold(0.0, f64::max);
    if deviation.is_nan() || deviation > SETTLED_TAIL_BAND {
        return Err(Error::Unsettled { deviation });
    }

    let dt = result.dt;
    let (imax, _) = y
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
    let (peak_time, peak) = if imax > 0 && imax + 1 < len {
        let (a, b, c) = (y[imax - 1], y[imax], y[imax + 1]);
        let denom = a - 2.0 * b + c;
        if denom < 0.0 {
            let offset = 0.5 * (a - c) / denom;
            (result.t[imax] + offset * dt, b - 0.25 * (a - c) * offset)
        } else {
            (result.t[imax], b)
        }
    } else {
        (result.t[imax], y[imax])
    };
    let overshoot_pct = (100.0 * (peak - 1.0)).max(0.0);

    let t10 = first_crossing(result, 0.1);
    let t90 = first_crossing(result, 0.9);
    let rise_time_10_90 = match (t10, t90) {
        (Some(a), Some(b)) => b - a,
        _ => return Err(Error::Unsettled { deviation }),
    };

    let settling_time_2pct = match y.iter().rposition(|v| (v - 1.0).abs() > SETTLING_BAND) {
        None => 0.0,
        Some(i) if i + 1 < len => {
            let (a, b) = (y[i] - 1.0, y[i + 1] - 1.0);
            let edge = SETTLING_BAND * a.signum();
            let frac = (a - edge) / (a - b);
            result.t[i] + frac.clamp(0.0, 1.0) * dt
        }
        Some(_) => return Err(Error::Unsettled { deviation }),
    };

    Ok(TransientMetrics {
        overshoot_pct,
        peak_time,
        rise_time_10_90,
        settling_time_2pct,
        final_value: y[len - 1],
    })
}

fn first_crossing(result: &SimulationResult, level: f64) -> Option<f64> {
    let y = &result.y;
    let i = y.iter().position(|&v| v >= level)?;
    if i == 0 {
        return Some(result.t[0]);
    }
    let frac = (level - y[i - 1]) / (y[i] - y[i - 1]);
    Some(result.t[i - 1] + frac * result.dt)
}

/// Numerically computed roots of the denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSet {
    pub poles: Vec<Complex64>,
}

impl PoleSet {
    /// Largest `|D(p)|` over the set.
    pub fn max_residual(&self, filter: &AnalogPolynomialFilter) -> f64 {
        self.poles
            .iter()
            .map(|&p| horner(filter.denom(), p).norm())
            .fold(0.0, f64::max)
    }

    /// Largest real part (stability margin, negative when stable).
    pub fn max_real_part(&self) -> f64 {
        self.poles.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// All `n` poles via Aberth–Ehrlich iteration polished by Newton steps.
pub fn poles(filter: &AnalogPolynomialFilter) -> Result<PoleSet> {
    Ok(PoleSet {
        poles: roots::polynomial_roots(filter.denom())?,
    })
}
