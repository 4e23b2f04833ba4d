//! Frequency-domain figures of a seventh-order design: a short log sweep,
//! the -3 dB bandwidth, selectivity and the delays at the origin.
//!
//! cargo run --example frequency_sweep [n]

use binomial_filters::analysis::{self, SweepSpec};
use binomial_filters::{five_percent_filter, Order};

fn main() -> binomial_filters::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let f = five_percent_filter(Order::new(n)?, 1.0)?;

    let spec = SweepSpec { omega_min: 0.01, omega_max: 100.0, points: 17 };
    println!("{:>10} {:>12} {:>12} {:>12} {:>12}", "omega", "|H| dB", "phase", "tau_p", "tau_g");
    for r in analysis::frequency_sweep(&f, &spec)? {
        println!(
            "{:>10.4} {:>12.4} {:>12.5} {:>12.5} {:>12.5}",
            r.omega, r.magnitude_db, r.phase_rad, r.phase_delay_s, r.group_delay_s
        );
    }

    println!();
    println!("-3.0103 dB bandwidth: {:.6} rad/s", analysis::bandwidth_for_attenuation(&f, 10.0 * 2f64.log10())?);
    println!("selectivity |dH/dw| at cutoff: {:.6}", analysis::selectivity(&f));
    println!("phase at cutoff: {:.6} (-n pi/4 = {:.6})", analysis::evaluate(&f, 1.0)?.phase, -(n as f64) * std::f64::consts::FRAC_PI_4);
    println!("delay at DC: {:.6} s", analysis::delay_at_dc(&f));
    Ok(())
}
