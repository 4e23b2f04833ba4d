//! Closed-form |D(jx)|^2 and group-delay coefficients next to the
//! polynomial-product oracles, with the out-of-range index pairs the
//! closed-form limits produce for odd orders.
//!
//! cargo run --example expansions

use binomial_filters::analysis::{
    closed_form_alphas, closed_form_lambdas, group_delay_oracle, magnitude_squared_oracle,
};
use binomial_filters::{damping_constant, five_percent_filter, Order};

fn main() -> binomial_filters::Result<()> {
    for n in 2..=7 {
        let order = Order::new(n)?;
        let zeta = damping_constant(order);
        let f = five_percent_filter(order, 1.0)?;
        let alphas = closed_form_alphas(order, zeta)?;
        let lambdas = closed_form_lambdas(order, zeta)?;
        println!("n = {n}");
        println!("  alpha closed {:?}", alphas.expansion.alphas());
        println!("  alpha oracle {:?}", magnitude_squared_oracle(&f).alphas());
        println!("  lambda closed {:?}", lambdas.expansion.lambdas());
        println!("  lambda oracle {:?}", group_delay_oracle(&f).lambdas());
        for d in &alphas.diagnostics {
            println!("  skipped alpha pair: power {} r {} -> (j, k) = ({}, {})", d.power, d.r, d.j, d.k);
        }
    }
    Ok(())
}
