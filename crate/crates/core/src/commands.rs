//! Subcommand bodies shared by the `udbf` binary and the examples. Each one
//! returns rendered text; the caller decides where it goes.

use serde::Serialize;

use crate::analysis::{frequency_sweep, SweepSpec};
use crate::compare::{compare, CompareOptions};
use crate::digital::bilinear_transform;
use crate::error::{Error, Result};
use crate::export::{sweep_csv, time_csv, CoefficientRecord, Format};
use crate::filter::{AnalogPolynomialFilter, ReferenceKind};
use crate::reference;
use crate::transient::{self, InputKind, SimulationOptions, TransientMetrics};
use crate::udb::{self, DampingConstant, Order};

/// Which design, at which cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub kind: ReferenceKind,
    pub n: usize,
    pub omega_n: Option<f64>,
    pub cutoff_hz: Option<f64>,
    pub zeta: Option<f64>,
}

impl FilterSpec {
    pub fn new(kind: ReferenceKind, n: usize, omega_n: f64) -> Self {
        FilterSpec {
            kind,
            n,
            omega_n: Some(omega_n),
            cutoff_hz: None,
            zeta: None,
        }
    }

    pub fn omega(&self) -> Result<f64> {
        match (self.omega_n, self.cutoff_hz) {
            (Some(w), None) => Ok(w),
            (None, Some(hz)) => Ok(2.0 * std::f64::consts::PI * hz),
            _ => Err(Error::Usage("give exactly one of --wn and --hz".into())),
        }
    }

    pub fn build(&self) -> Result<AnalogPolynomialFilter> {
        let n = Order::new(self.n)?;
        let wn = self.omega()?;
        match (self.kind, self.zeta) {
            (_, None) => reference::design(self.kind, n, wn),
            (ReferenceKind::FivePercentUdb, Some(z)) => udb::polynomial(n, wn, DampingConstant::new(z)?),
            (kind, Some(_)) => Err(Error::Usage(format!("--zeta only applies to udb designs, not {kind}"))),
        }
    }
}

/// Main output plus an optional summary that tabular formats cannot carry.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub summary: Option<String>,
}

impl Report {
    fn body(body: String) -> Self {
        Report { body, summary: None }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::InvalidRecord(e.to_string()))
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn cmd_design(spec: &FilterSpec, format: Format) -> Result<Report> {
    let filter = spec.build()?;
    let record = CoefficientRecord::analog(&filter);
    let body = match format {
        Format::Json => json(&record)?,
        Format::Csv => record.to_csv()?,
        Format::Text => {
            let mut out = format!("kind: {}\nn: {}\n", filter.kind(), filter.n());
            if let Some(z) = filter.zeta() {
                out += &format!("zeta: {}\n", z.get());
            }
            if filter.kind() == ReferenceKind::Butterworth {
                out += &format!("damping ratios: {}\n", join(&reference::damping_ratios(&filter)));
            }
            out += &format!(
                "omega_n: {}\nnormalized row: {}\nnumerator: {}\ndenominator: {}\n",
                filter.omega_n(),
                join(&filter.normalized_row()),
                filter.numerator(),
                join(filter.denom())
            );
            out
        }
    };
    Ok(Report::body(body))
}

pub fn cmd_analyze(spec: &FilterSpec, sweep: Option<SweepSpec>, format: Format) -> Result<Report> {
    let filter = spec.build()?;
    let sweep = sweep.unwrap_or_else(|| SweepSpec::around(filter.omega_n()));
    let rows = frequency_sweep(&filter, &sweep)?;
    let body = match format {
        Format::Json => json(&rows)?,
        Format::Csv | Format::Text => sweep_csv(&rows)?,
    };
    Ok(Report::body(body))
}

#[derive(Serialize)]
struct SimulationJson<'a> {
    input: InputKind,
    dt: f64,
    metrics: Option<TransientMetrics>,
    t: &'a [f64],
    y: &'a [f64],
}

fn metrics_text(m: &TransientMetrics) -> String {
    format!(
        "overshoot_pct: {}\npeak_time: {}\nrise_time_10_90: {}\nsettling_time_2pct: {}\nfinal_value: {}\n",
        m.overshoot_pct, m.peak_time, m.rise_time_10_90, m.settling_time_2pct, m.final_value
    )
}

pub fn cmd_simulate(
    spec: &FilterSpec,
    input: InputKind,
    horizon: Option<f64>,
    dt: Option<f64>,
    format: Format,
) -> Result<Report> {
    let filter = spec.build()?;
    let defaults = SimulationOptions::for_filter(&filter);
    let options = SimulationOptions {
        horizon: horizon.unwrap_or(defaults.horizon),
        dt: dt.unwrap_or(defaults.dt),
    };
    let result = match input {
        InputKind::Step => transient::simulate_step(&filter, options)?,
        InputKind::Impulse => transient::simulate_impulse(&filter, options)?,
    };
    let metrics = match input {
        InputKind::Step => Some(transient::transient_metrics(&result)?),
        InputKind::Impulse => None,
    };
    Ok(match format {
        Format::Json => Report::body(json(&SimulationJson {
            input,
            dt: result.dt,
            metrics,
            t: &result.t,
            y: &result.y,
        })?),
        Format::Csv => Report {
            body: time_csv(&result)?,
            summary: metrics.as_ref().map(metrics_text),
        },
        Format::Text => {
            let head = metrics.as_ref().map(metrics_text).unwrap_or_default();
            Report::body(format!("{head}\n{}", time_csv(&result)?))
        }
    })
}

pub fn cmd_digitize(spec: &FilterSpec, sample_rate: f64, prewarp: bool, format: Format) -> Result<Report> {
    let filter = spec.build()?;
    let iir = bilinear_transform(&filter, sample_rate, prewarp)?;
    let record = CoefficientRecord::digital(&filter, &iir)?;
    let body = match format {
        Format::Json => json(&record)?,
        Format::Csv => record.to_csv()?,
        Format::Text => format!(
            "kind: {}\nn: {}\nsample_rate: {}\nprewarp: {}\nb: {}\na: {}\ndc_gain: {}\npole_moduli: {}\nstable: {}\n",
            filter.kind(),
            filter.n(),
            sample_rate,
            prewarp,
            join(&record.b),
            join(&record.a),
            iir.dc_gain(),
            join(&record.pole_moduli),
            record.pole_moduli.iter().all(|&m| m < 1.0)
        ),
    };
    Ok(Report::body(body))
}

pub fn cmd_compare(options: &CompareOptions, format: Format) -> Result<Report> {
    let c = compare(options)?;
    Ok(match format {
        Format::Json => Report::body(json(&c)?),
        Format::Csv => Report {
            body: c.table_csv()?,
            summary: Some(c.summary_csv()?),
        },
        Format::Text => Report::body(format!("{}\n{}", c.summary_csv()?, c.table_csv()?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn udb_spec(n: usize) -> FilterSpec {
        FilterSpec::new(ReferenceKind::FivePercentUdb, n, 1.0)
    }

    #[test]
    fn spec_validation() {
        let mut s = udb_spec(3);
        s.cutoff_hz = Some(1.0);
        assert!(matches!(s.build(), Err(Error::Usage(_))));
        s.omega_n = None;
        assert!((s.omega().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-15);
        let mut bw = FilterSpec::new(ReferenceKind::Butterworth, 3, 1.0);
        bw.zeta = Some(0.5);
        assert!(bw.build().is_err());
        let mut custom = udb_spec(3);
        custom.zeta = Some(0.5);
        assert_eq!(custom.build().unwrap().denom()[1], 1.5);
        assert!(udb_spec(0).build().is_err());
    }

    #[test]
    fn design_output() {
        let text = cmd_design(&udb_spec(7), Format::Text).unwrap().body;
        assert!(text.contains("zeta: 0.8689"));
        let json = cmd_design(&FilterSpec::new(ReferenceKind::Butterworth, 2, 1.0), Format::Json).unwrap().body;
        let rec = CoefficientRecord::from_json(&json).unwrap();
        assert!((rec.a[1] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn simulate_output() {
        let r = cmd_simulate(&udb_spec(2), InputKind::Step, None, None, Format::Csv).unwrap();
        assert!(r.body.starts_with("t,y\n"));
        assert!(r.summary.unwrap().contains("overshoot_pct: 4.32"));
        let r = cmd_simulate(&udb_spec(2), InputKind::Impulse, Some(5.0), None, Format::Json).unwrap();
        assert!(r.body.contains("\"metrics\": null"));
        assert!(cmd_simulate(&udb_spec(4), InputKind::Step, Some(2.0), None, Format::Text).is_err());
    }
}
