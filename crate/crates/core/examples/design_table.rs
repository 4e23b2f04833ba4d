//! Damping constants and normalized denominators for n = 1..10, next to the
//! Butterworth damping ratios and the standard binomial row.
//!
//! cargo run --example design_table

use binomial_filters::reference::{binomial_polynomial, butterworth_polynomial, damping_ratios};
use binomial_filters::udb::{coefficient_row, coefficient_sum};
use binomial_filters::{damping_constant, Order};

fn row(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>().join(" ")
}

fn main() -> binomial_filters::Result<()> {
    println!("{:>3} {:>9}  {:>9}  row", "n", "zeta_n", "sum");
    for n in 1..=10 {
        let order = Order::new(n)?;
        let zeta = damping_constant(order);
        let r = coefficient_row(order, zeta);
        println!("{n:>3} {:>9.6}  {:>9.4}  {}", zeta.get(), coefficient_sum(&r), row(r.values()));
    }

    println!("\nButterworth interior damping ratios");
    for n in 2..=6 {
        let f = butterworth_polynomial(Order::new(n)?, 1.0)?;
        println!("{n:>3}  {}", row(&damping_ratios(&f)));
    }

    println!("\nstandard binomial, n = 5: {}", row(binomial_polynomial(Order::new(5)?, 1.0)?.denom()));
    Ok(())
}
