//! Pole locations of the five-percent designs for n = 1..10 at omega_n = 1,
//! with the largest real part and the root residual.
//!
//! cargo run --example pole_map

use binomial_filters::transient::poles;
use binomial_filters::{five_percent_filter, Order};

fn main() -> binomial_filters::Result<()> {
    for n in 1..=10 {
        let f = five_percent_filter(Order::new(n)?, 1.0)?;
        let set = poles(&f)?;
        let list: Vec<String> = set.poles.iter().map(|p| format!("{:.5}{:+.5}j", p.re, p.im)).collect();
        println!(
            "n={n:<2} max re {:.5}  residual {:.1e}  {}",
            set.max_real_part(),
            set.max_residual(&f),
            list.join(" ")
        );
    }
    Ok(())
}
