//! Seeded noisy unit step through digitized five-percent, Butterworth and
//! binomial designs of order 7. Prints the summary and every 100th sample.
//!
//! cargo run --example noisy_step_compare [seed]

use binomial_filters::compare::{compare, CompareOptions, COLUMNS};
use binomial_filters::noise::NoiseSpec;

fn main() -> binomial_filters::Result<()> {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(42);
    let base = CompareOptions::default();
    let options = CompareOptions { noise: NoiseSpec { seed, ..base.noise }, ..base };
    let c = compare(&options)?;
    print!("{}", c.summary_csv()?);

    print!("\n{:>8} {:>8}", "t", "input");
    for k in COLUMNS {
        print!(" {:>11}", k.as_str());
    }
    println!();
    for i in (0..c.t.len()).step_by(100) {
        print!("{:>8.3} {:>8.4}", c.t[i], c.input[i]);
        for y in &c.outputs {
            print!(" {:>11.5}", y[i]);
        }
        println!();
    }
    Ok(())
}
