//! Analog and digital coefficient records as JSON and CSV, read back and
//! compared.
//!
//! cargo run --example export_records

use binomial_filters::digital::bilinear_transform;
use binomial_filters::export::CoefficientRecord;
use binomial_filters::{five_percent_filter, Order};

fn main() -> binomial_filters::Result<()> {
    let f = five_percent_filter(Order::new(3)?, 2.0)?;
    let analog = CoefficientRecord::analog(&f);
    println!("{}", analog.to_json()?);

    let iir = bilinear_transform(&f, 20.0, true)?;
    let digital = CoefficientRecord::digital(&f, &iir)?;
    let csv = digital.to_csv()?;
    print!("{csv}");

    let back = CoefficientRecord::from_csv(&csv)?;
    println!("csv round trip exact: {}", back == digital);
    println!("json round trip exact: {}", CoefficientRecord::from_json(&analog.to_json()?)?.to_analog()? == f);
    Ok(())
}
