//! Step-response metrics of the three design families for n = 1..10, and
//! the first few samples of a step and an impulse response.
//!
//! cargo run --release --example step_response

use binomial_filters::reference::design;
use binomial_filters::transient::{simulate_impulse, simulate_step, transient_metrics, SimulationOptions};
use binomial_filters::{Order, ReferenceKind};

fn main() -> binomial_filters::Result<()> {
    println!("{:>3} {:>12} {:>10} {:>10} {:>10}", "n", "kind", "overshoot", "rise", "settle");
    for n in 1..=10 {
        for kind in ReferenceKind::ALL {
            let f = design(kind, Order::new(n)?, 1.0)?;
            let m = transient_metrics(&simulate_step(&f, SimulationOptions::for_filter(&f))?)?;
            println!(
                "{n:>3} {:>12} {:>9.3}% {:>10.4} {:>10.4}",
                kind.as_str(),
                m.overshoot_pct,
                m.rise_time_10_90,
                m.settling_time_2pct
            );
        }
    }

    let f = design(ReferenceKind::FivePercentUdb, Order::new(4)?, 1.0)?;
    let opts = SimulationOptions { horizon: 10.0, dt: 1e-3 };
    let step = simulate_step(&f, opts)?;
    let imp = simulate_impulse(&f, opts)?;
    println!("\n{:>6} {:>10} {:>10}", "t", "step", "impulse");
    for k in (0..=10_000).step_by(1000) {
        println!("{:>6.1} {:>10.6} {:>10.6}", step.t[k], step.y[k], imp.y[k]);
    }
    Ok(())
}
