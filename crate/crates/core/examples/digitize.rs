//! Bilinear IIR coefficients for a 50 Hz seventh-order design sampled at
//! 5 kHz, its pole audit and streamed step response, and the binomial FIR
//! smoother applied to a short noisy sequence.
//!
//! cargo run --example digitize

use std::f64::consts::PI;

use binomial_filters::digital::{
    bilinear_transform, digital_frequency_response, filter_signal, fir_kernel, process_sample, Coefficients,
    FilterState,
};
use binomial_filters::{damping_constant, five_percent_filter, Order};

fn main() -> binomial_filters::Result<()> {
    let wn = 2.0 * PI * 50.0;
    let fs = 5000.0;
    let n = Order::new(7)?;
    let f = five_percent_filter(n, wn)?;
    let iir = bilinear_transform(&f, fs, true)?;
    println!("b = {:?}", iir.b());
    println!("a = {:?}", iir.a());
    println!("dc gain {}  stable {}", iir.dc_gain(), iir.is_stable()?);
    println!("|H| at cutoff: {:.6}", digital_frequency_response(&iir, wn / fs)?.norm());

    let y = filter_signal(&iir, &vec![1.0; 1000]);
    let peak = y.iter().cloned().fold(0.0, f64::max);
    println!("streamed step: peak {peak:.6}, final {:.9}", y[999]);

    let kernel = fir_kernel(Order::new(4)?, damping_constant(Order::new(4)?), true);
    println!("\nFIR taps {:?}", kernel.taps);
    let mut state = FilterState::for_filter(&kernel);
    let signal = [1.0, 1.3, 0.8, 1.1, 0.9, 1.2, 1.0, 0.95];
    let smoothed: Vec<f64> = signal.iter().map(|&x| process_sample(&kernel, &mut state, x)).collect();
    println!("smoothed {smoothed:.4?}");
    Ok(())
}
