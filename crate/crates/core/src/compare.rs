//! Noisy unit step through digitized UDB, Butterworth and binomial designs
//! of the same order and cutoff.
//!
//! Overshoot and rise time come from a noise-free run of the same digital
//! filters. Residual noise is the variance of `y - 1` over the second half
//! of the noisy run, which every design reaches settled.

use serde::Serialize;

use crate::digital::{bilinear_transform, filter_signal};
use crate::error::Result;
use crate::export::{csv_error, finish};
use crate::filter::{check_positive, ReferenceKind};
use crate::noise::NoiseSpec;
use crate::reference;
use crate::transient::{transient_metrics, InputKind, SimulationResult, HORIZON_PER_ORDER};
use crate::udb::Order;

/// Kinds in column order.
pub const COLUMNS: [ReferenceKind; 3] = [
    ReferenceKind::FivePercentUdb,
    ReferenceKind::Butterworth,
    ReferenceKind::StandardBinomial,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    pub n: Order,
    pub omega_n: f64,
    pub sample_rate: f64,
    pub horizon: f64,
    pub prewarp: bool,
    pub noise: NoiseSpec,
}

impl CompareOptions {
    /// `fs = 100 omega_n / 2 pi`, horizon `30 n / omega_n`.
    pub fn new(n: Order, omega_n: f64) -> Self {
        CompareOptions {
            n,
            omega_n,
            sample_rate: 100.0 * omega_n / (2.0 * std::f64::consts::PI),
            horizon: HORIZON_PER_ORDER * n.get() as f64 / omega_n,
            prewarp: true,
            noise: NoiseSpec::default(),
        }
    }
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions::new(Order::new(7).expect("7 is a valid order"), 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilterSummary {
    pub kind: ReferenceKind,
    pub overshoot_pct: f64,
    pub rise_time_10_90: f64,
    pub residual_noise_variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub n: usize,
    pub sample_rate: f64,
    pub seed: u64,
    pub sigma: f64,
    pub summaries: Vec<FilterSummary>,
    pub t: Vec<f64>,
    pub input: Vec<f64>,
    pub outputs: Vec<Vec<f64>>,
}

impl Comparison {
    pub fn summary(&self, kind: ReferenceKind) -> Option<&FilterSummary> {
        self.summaries.iter().find(|s| s.kind == kind)
    }

    /// `t,input,udb,butterworth,binomial`.
    pub fn table_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let mut header = vec!["t".to_string(), "input".to_string()];
        header.extend(COLUMNS.iter().map(|k| k.as_str().to_string()));
        w.write_record(&header).map_err(csv_error)?;
        for (k, t) in self.t.iter().enumerate() {
            let mut row = vec![t.to_string(), self.input[k].to_string()];
            row.extend(self.outputs.iter().map(|y| y[k].to_string()));
            w.write_record(&row).map_err(csv_error)?;
        }
        finish(w)
    }

    pub fn summary_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        for s in &self.summaries {
            w.serialize(s).map_err(csv_error)?;
        }
        finish(w)
    }
}

pub fn compare(options: &CompareOptions) -> Result<Comparison> {
    check_positive("horizon", options.horizon)?;
    options.noise.validate()?;
    let fs = options.sample_rate;
    let dt = 1.0 / fs;
    let len = (options.horizon * fs).round() as usize + 1;
    let input = options.noise.noisy_step(len);
    let clean = vec![1.0; len];
    let tail = len / 2;

    let mut summaries = Vec::with_capacity(COLUMNS.len());
    let mut outputs = Vec::with_capacity(COLUMNS.len());
    for kind in COLUMNS {
        let analog = reference::design(kind, options.n, options.omega_n)?;
        let iir = bilinear_transform(&analog, fs, options.prewarp)?;
        let step = SimulationResult::from_samples(dt, filter_signal(&iir, &clean), InputKind::Step);
        let metrics = transient_metrics(&step)?;
        let noisy = filter_signal(&iir, &input);
        let residual: Vec<f64> = noisy[tail..].iter().map(|y| y - 1.0).collect();
        let mean = residual.iter().sum::<f64>() / residual.len() as f64;
        let variance = residual.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / residual.len() as f64;
        summaries.push(FilterSummary {
            kind,
            overshoot_pct: metrics.overshoot_pct,
            rise_time_10_90: metrics.rise_time_10_90,
            residual_noise_variance: variance,
        });
        outputs.push(noisy);
    }
    Ok(Comparison {
        n: options.n.get(),
        sample_rate: fs,
        seed: options.noise.seed,
        sigma: options.noise.sigma,
        summaries,
        t: (0..len).map(|k| k as f64 * dt).collect(),
        input,
        outputs,
    })
}
