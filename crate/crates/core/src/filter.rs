use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::udb::{DampingConstant, Order};

/// Design family of an all-pole prototype.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    Butterworth,
    /// Uniformly damped with `zeta = 1`, i.e. `(s + omega_n)^n`.
    StandardBinomial,
    /// Uniformly damped with the five-percent constant (or an explicit override).
    FivePercentUdb,
}

impl ReferenceKind {
    pub const ALL: [ReferenceKind; 3] = [
        ReferenceKind::FivePercentUdb,
        ReferenceKind::Butterworth,
        ReferenceKind::StandardBinomial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReferenceKind::Butterworth => "butterworth",
            ReferenceKind::StandardBinomial => "binomial",
            ReferenceKind::FivePercentUdb => "udb",
        }
    }

    pub fn is_uniformly_damped(self) -> bool {
        !matches!(self, ReferenceKind::Butterworth)
    }
}

impl fmt::Display for ReferenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReferenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "udb" | "fp-udb" | "five_percent_udb" => Ok(ReferenceKind::FivePercentUdb),
            "butterworth" | "bw" => Ok(ReferenceKind::Butterworth),
            "binomial" | "standard_binomial" => Ok(ReferenceKind::StandardBinomial),
            other => Err(Error::Usage(format!("unknown filter kind '{other}'"))),
        }
    }
}

/// Unity DC gain all-pole analog low-pass `omega_n^n / D(s)`.
///
/// `denom[i]` is the coefficient of `s^(n-i)`. The polynomial is monic and
/// its constant term equals the numerator, so `H(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalogPolynomialFilter {
    order: Order,
    omega_n: f64,
    denom: Vec<f64>,
    kind: ReferenceKind,
    zeta: Option<DampingConstant>,
}

impl AnalogPolynomialFilter {
    /// Scales a normalized (`omega_n = 1`) monic row into a filter with cutoff
    /// `omega_n`: position `i` is multiplied by `omega_n^i`.
    pub fn denormalize(
        normalized: &[f64],
        omega_n: f64,
        kind: ReferenceKind,
        zeta: Option<DampingConstant>,
    ) -> Result<Self> {
        check_positive("omega_n", omega_n)?;
        let mut scale = 1.0;
        let denom = normalized
            .iter()
            .map(|&c| {
                let v = c * scale;
                scale *= omega_n;
                v
            })
            .collect();
        Self::from_denominator(denom, omega_n, kind, zeta)
    }

    /// Wraps an already denormalized denominator after validating it.
    pub fn from_denominator(
        denom: Vec<f64>,
        omega_n: f64,
        kind: ReferenceKind,
        zeta: Option<DampingConstant>,
    ) -> Result<Self> {
        check_positive("omega_n", omega_n)?;
        let order = Order::new(denom.len().saturating_sub(1))?;
        if denom[0] != 1.0 {
            return Err(Error::InvalidRecord(format!(
                "denominator must be monic, leading coefficient is {}",
                denom[0]
            )));
        }
        if let Some(&bad) = denom.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return Err(Error::InvalidRecord(format!(
                "denominator coefficients must be positive, found {bad}"
            )));
        }
        Ok(AnalogPolynomialFilter {
            order,
            omega_n,
            denom,
            kind,
            zeta,
        })
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn n(&self) -> usize {
        self.order.get()
    }

    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    pub fn denom(&self) -> &[f64] {
        &self.denom
    }

    /// Numerator constant, equal to the constant denominator term.
    pub fn numerator(&self) -> f64 {
        self.denom[self.n()]
    }

    pub fn kind(&self) -> ReferenceKind {
        self.kind
    }

    pub fn zeta(&self) -> Option<DampingConstant> {
        self.zeta
    }

    /// Denominator with `omega_n` scaled out: `denom[i] / omega_n^i`.
    pub fn normalized_row(&self) -> Vec<f64> {
        let mut scale = 1.0;
        self.denom
            .iter()
            .map(|&c| {
                let v = c / scale;
                scale *= self.omega_n;
                v
            })
            .collect()
    }

    /// `D(s)` by Horner's rule.
    pub fn denominator_at(&self, s: Complex64) -> Complex64 {
        crate::roots::horner(&self.denom, s)
    }

    /// `H(s) = omega_n^n / D(s)`.
    pub fn transfer_at(&self, s: Complex64) -> Result<Complex64> {
        let d = self.denominator_at(s);
        if d.norm() < 1e-300 {
            return Err(Error::DegenerateDenominator(s.im));
        }
        Ok(Complex64::new(self.numerator(), 0.0) / d)
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}
