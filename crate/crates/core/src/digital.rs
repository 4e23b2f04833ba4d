//! Digitization by the bilinear transform, the direct binomial FIR kernel,
//! and streaming filtering in transposed direct form II.
//!
//! Oversampled high-order sections put all poles in a tight cluster near
//! `z = 1`, where `sum a` is many orders of magnitude below the individual
//! coefficients (about `1e-12` at `n = 10`, `fs = 100 fc`). Plain `f64`
//! arithmetic in the recursion then biases the steady state by percents, so
//! the delay line and every accumulation of coefficients is carried as an
//! unevaluated `hi + lo` pair. Coefficients themselves stay `f64`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::filter::{check_positive, AnalogPolynomialFilter};
use crate::poly::{add_scaled, multiply, power};
use crate::roots::{self, horner};
use crate::udb::{coefficient_row, DampingConstant, Order};

/// `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Wide {
    hi: f64,
    lo: f64,
}

impl Wide {
    fn renormalize(hi: f64, lo: f64) -> Wide {
        let s = hi + lo;
        Wide { hi: s, lo: lo - (s - hi) }
    }

    fn product(a: f64, b: f64) -> Wide {
        let p = a * b;
        Wide { hi: p, lo: a.mul_add(b, -p) }
    }

    fn add(self, other: Wide) -> Wide {
        let s = self.hi + other.hi;
        let bb = s - self.hi;
        let err = (self.hi - (s - bb)) + (other.hi - bb);
        Wide::renormalize(s, err + self.lo + other.lo)
    }

    fn scale(self, c: f64) -> Wide {
        let p = Wide::product(self.hi, c);
        Wide::renormalize(p.hi, p.lo + self.lo * c)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

fn accurate_sum(values: &[f64]) -> f64 {
    values
        .iter()
        .fold(Wide::default(), |acc, &v| acc.add(Wide { hi: v, lo: 0.0 }))
        .value()
}

/// Anything with `b` and `a` coefficient vectors in `z^-1` order.
pub trait Coefficients {
    fn b(&self) -> &[f64];
    fn a(&self) -> &[f64];
}

/// Recursive filter `H(z) = sum b_k z^-k / sum a_k z^-k` with `a[0] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitalIIR {
    b: Vec<f64>,
    a: Vec<f64>,
    sample_rate: f64,
}

impl DigitalIIR {
    /// Divides through by `a[0]`.
    pub fn new(b: Vec<f64>, a: Vec<f64>, sample_rate: f64) -> Result<Self> {
        check_positive("sample_rate", sample_rate)?;
        let lead = a.first().copied().unwrap_or(0.0);
        if lead == 0.0 || b.is_empty() || !a.iter().chain(&b).all(|c| c.is_finite()) {
            return Err(Error::InvalidRecord("need finite b and a with a[0] != 0".into()));
        }
        Ok(DigitalIIR {
            b: b.iter().map(|c| c / lead).collect(),
            a: a.iter().map(|c| c / lead).collect(),
            sample_rate,
        })
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    /// `sum b / sum a`, both sums compensated.
    pub fn dc_gain(&self) -> f64 {
        accurate_sum(&self.b) / accurate_sum(&self.a)
    }

    /// Roots of `a` read as a polynomial in `z`.
    pub fn poles(&self) -> Result<Vec<Complex64>> {
        roots::polynomial_roots(&self.a)
    }

    pub fn pole_moduli(&self) -> Result<Vec<f64>> {
        Ok(self.poles()?.iter().map(|p| p.norm()).collect())
    }

    pub fn is_stable(&self) -> Result<bool> {
        Ok(self.pole_moduli()?.iter().all(|&m| m < 1.0))
    }
}

impl Coefficients for DigitalIIR {
    fn b(&self) -> &[f64] {
        &self.b
    }
    fn a(&self) -> &[f64] {
        &self.a
    }
}

/// Bilinear substitution `s = K (z - 1) / (z + 1)`.
///
/// `K = omega_n / tan(omega_n / (2 fs))` with `prewarp`, else `K = 2 fs`.
/// The composition is done on the normalized row with `kappa = K / omega_n`:
/// `A(z) = sum C_i kappa^(n-i) (z-1)^(n-i) (z+1)^i`, `B(z) = (z+1)^n`.
/// `B` is then rescaled so that `sum b = sum a` holds to rounding.
///
/// A single section in `f64` stays usable up to roughly `fs = 100 fc` at
/// `n = 10`. Far beyond that the rounding of `a` alone can move poles
/// outside the unit circle (`n = 7` at `fs = 628 fc` already does).
pub fn bilinear_transform(filter: &AnalogPolynomialFilter, sample_rate: f64, prewarp: bool) -> Result<DigitalIIR> {
    check_positive("sample_rate", sample_rate)?;
    let wn = filter.omega_n();
    if wn >= std::f64::consts::PI * sample_rate {
        return Err(Error::AboveNyquist {
            omega_n: wn,
            sample_rate,
        });
    }
    let k = if prewarp {
        wn / (wn / (2.0 * sample_rate)).tan()
    } else {
        2.0 * sample_rate
    };
    let kappa = k / wn;
    let n = filter.n();
    let row = filter.normalized_row();

    let minus = [1.0, -1.0];
    let plus = [1.0, 1.0];
    let mut a = vec![0.0; n + 1];
    for (i, &c) in row.iter().enumerate() {
        let term = multiply(&power(&minus, n - i), &power(&plus, i));
        add_scaled(&mut a, &term, c * kappa.powi((n - i) as i32));
    }
    let lead = a[0];
    a.iter_mut().for_each(|c| *c /= lead);

    let binom = power(&plus, n);
    let scale = accurate_sum(&a) / 2f64.powi(n as i32);
    let b = binom.iter().map(|c| c * scale).collect();
    DigitalIIR::new(b, a, sample_rate)
}

/// `b(e^-jw) / a(e^-jw)` for `w` in radians per sample.
pub fn digital_frequency_response<F: Coefficients>(filter: &F, omega: f64) -> Result<Complex64> {
    if !(0.0..=std::f64::consts::PI).contains(&omega) {
        return Err(Error::InvalidRange(format!("digital frequency {omega} outside [0, pi]")));
    }
    let eval = |c: &[f64]| {
        let (re, im) = c.iter().enumerate().fold((Wide::default(), Wide::default()), |(re, im), (k, &v)| {
            let phase = k as f64 * omega;
            (re.add(Wide::product(v, phase.cos())), im.add(Wide::product(-v, phase.sin())))
        });
        Complex64::new(re.value(), im.value())
    };
    Ok(eval(filter.b()) / eval(filter.a()))
}

/// Binomial smoothing taps `C_i` of the damped row, optionally scaled to
/// unit sum.
#[derive(Debug, Clone, PartialEq)]
pub struct FIRKernel {
    pub taps: Vec<f64>,
    pub normalized: bool,
}

impl Coefficients for FIRKernel {
    fn b(&self) -> &[f64] {
        &self.taps
    }
    fn a(&self) -> &[f64] {
        &[1.0]
    }
}

pub fn fir_kernel(n: Order, zeta: DampingConstant, normalized: bool) -> FIRKernel {
    let row = coefficient_row(n, zeta);
    let total = row.expected_sum();
    let mut taps = row.into_values();
    if normalized {
        taps.iter_mut().for_each(|t| *t /= total);
    }
    FIRKernel { taps, normalized }
}

/// Delay line of a transposed direct form II section.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    delay: Vec<Wide>,
}

impl FilterState {
    pub fn for_filter<F: Coefficients>(filter: &F) -> Self {
        let len = filter.a().len().max(filter.b().len()) - 1;
        FilterState {
            delay: vec![Wide::default(); len],
        }
    }

    pub fn reset(&mut self) {
        self.delay.iter_mut().for_each(|d| *d = Wide::default());
    }

    pub fn len(&self) -> usize {
        self.delay.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delay.is_empty()
    }

    /// Delay-line contents rounded to `f64`.
    pub fn values(&self) -> Vec<f64> {
        self.delay.iter().map(|d| d.value()).collect()
    }
}

/// One output sample. `state` must come from [`FilterState::for_filter`]
/// on the same coefficients.
pub fn process_sample<F: Coefficients>(filter: &F, state: &mut FilterState, x: f64) -> f64 {
    let (b, a) = (filter.b(), filter.a());
    let coef = |c: &[f64], k: usize| c.get(k).copied().unwrap_or(0.0);
    let d = &mut state.delay;
    let y = Wide::product(b[0], x).add(d.first().copied().unwrap_or_default());
    let m = d.len();
    for k in 0..m {
        let next = if k + 1 < m { d[k + 1] } else { Wide::default() };
        d[k] = Wide::product(coef(b, k + 1), x)
            .add(y.scale(-coef(a, k + 1)))
            .add(next);
    }
    y.value()
}

/// Filters a whole signal from a zero state.
pub fn filter_signal<F: Coefficients>(filter: &F, input: &[f64]) -> Vec<f64> {
    let mut state = FilterState::for_filter(filter);
    input.iter().map(|&x| process_sample(filter, &mut state, x)).collect()
}

/// `|D(p)|` of the analog prototype at each analog pole mapped back from
/// `z`; used as a cross-check of the composition.
pub fn mapped_pole_residual(filter: &AnalogPolynomialFilter, iir: &DigitalIIR, prewarp: bool) -> Result<f64> {
    let fs = iir.sample_rate();
    let wn = filter.omega_n();
    let k = if prewarp { wn / (wn / (2.0 * fs)).tan() } else { 2.0 * fs };
    let scale = filter.denom().iter().fold(0.0, |acc, c| acc * wn + c.abs());
    Ok(iir
        .poles()?
        .iter()
        .map(|z| horner(filter.denom(), k * (z - 1.0) / (z + 1.0)).norm() / scale)
        .fold(0.0, f64::max))
}
