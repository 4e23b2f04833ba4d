//! Baseline denominators: Butterworth and the standard binomial `(s + omega_n)^n`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::filter::{AnalogPolynomialFilter, ReferenceKind};
use crate::poly::multiply;
use crate::udb::{self, DampingConstant, Order};

/// Butterworth denominator built from its pole factors.
///
/// Poles sit on the circle of radius `omega_n` at angles
/// `theta_k = pi (2k + n - 1) / (2n)`, `k = 1..n`. Each conjugate pair
/// contributes `s^2 - 2 cos(theta_k) s + 1`; odd orders add the real factor
/// `s + 1`. The normalized product is then scaled by `omega_n^i`.
pub fn butterworth_polynomial(n: Order, omega_n: f64) -> Result<AnalogPolynomialFilter> {
    let order = n.get();
    let mut poly = vec![1.0];
    for k in 1..=order / 2 {
        let theta = PI * (2 * k + order - 1) as f64 / (2 * order) as f64;
        poly = multiply(&poly, &[1.0, -2.0 * theta.cos(), 1.0]);
    }
    if order % 2 == 1 {
        poly = multiply(&poly, &[1.0, 1.0]);
    }
    AnalogPolynomialFilter::denormalize(&poly, omega_n, ReferenceKind::Butterworth, None)
}

/// `(s + omega_n)^n`, the uniformly damped polynomial with `zeta = 1`.
pub fn binomial_polynomial(n: Order, omega_n: f64) -> Result<AnalogPolynomialFilter> {
    let row = udb::coefficient_row(n, DampingConstant::UNDAMPED);
    AnalogPolynomialFilter::denormalize(
        row.values(),
        omega_n,
        ReferenceKind::StandardBinomial,
        Some(DampingConstant::UNDAMPED),
    )
}

/// Builds the prototype for any design family.
pub fn design(kind: ReferenceKind, n: Order, omega_n: f64) -> Result<AnalogPolynomialFilter> {
    match kind {
        ReferenceKind::Butterworth => butterworth_polynomial(n, omega_n),
        ReferenceKind::StandardBinomial => binomial_polynomial(n, omega_n),
        ReferenceKind::FivePercentUdb => udb::five_percent_filter(n, omega_n),
    }
}

/// Interior coefficients divided by their binomial coefficient, i.e. the
/// per-position damping a (possibly non-uniform) design applies.
pub fn damping_ratios(filter: &AnalogPolynomialFilter) -> Vec<f64> {
    let n = filter.order();
    let skeleton = udb::BinomialSkeleton::new(n);
    let row = filter.normalized_row();
    (1..n.get())
        .map(|i| row[i] / skeleton.values()[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{self, horner};
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn ord(n: usize) -> Order {
        Order::new(n).unwrap()
    }

    #[test]
    fn butterworth_low_orders() {
        let b1 = butterworth_polynomial(ord(1), 1.0).unwrap();
        assert_eq!(b1.denom(), &[1.0, 1.0]);
        let b2 = butterworth_polynomial(ord(2), 1.0).unwrap();
        assert_relative_eq!(b2.denom()[1], 2f64.sqrt(), max_relative = 1e-15);
        assert_eq!(format!("{:.2}", b2.denom()[1] / 2.0), "0.71");
        let b4 = butterworth_polynomial(ord(4), 1.0).unwrap();
        let r = damping_ratios(&b4);
        assert_eq!(format!("{:.2}", r[0]), "0.65");
        assert_eq!(format!("{:.2}", r[1]), "0.57");
    }

    #[test]
    fn butterworth_half_power_at_cutoff() {
        for n in 1..=10 {
            for wn in [1.0, 3.5] {
                let f = butterworth_polynomial(ord(n), wn).unwrap();
                let h = f.transfer_at(Complex64::new(0.0, wn)).unwrap();
                assert_relative_eq!(h.norm_sqr(), 0.5, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn low_order_butterworth_is_five_percent_udb() {
        for n in 1..=2 {
            let bw = butterworth_polynomial(ord(n), 1.0).unwrap();
            let udb = udb::five_percent_filter(ord(n), 1.0).unwrap();
            for (a, b) in bw.denom().iter().zip(udb.denom()) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_polynomial(ord(2), 1.0).unwrap().denom(), &[1.0, 2.0, 1.0]);
        assert_eq!(binomial_polynomial(ord(4), 1.0).unwrap().denom(), &[1.0, 4.0, 6.0, 4.0, 1.0]);
        assert_eq!(binomial_polynomial(ord(3), 2.0).unwrap().denom(), &[1.0, 6.0, 12.0, 8.0]);
    }

    #[test]
    fn binomial_roots_are_all_at_minus_cutoff() {
        for n in 1..=10 {
            for wn in [1.0, 2.0] {
                let f = binomial_polynomial(ord(n), wn).unwrap();
                let poles = roots::polynomial_roots(f.denom()).unwrap();
                assert_eq!(poles.len(), n);
                let scale: f64 = f.denom().iter().sum::<f64>() * wn.powi(n as i32);
                for p in poles {
                    assert!(horner(f.denom(), p).norm() < 1e-8 * scale.max(1.0), "n={n} p={p}");
                }
                // The exact multiple root itself has zero residual.
                assert_eq!(horner(f.denom(), Complex64::new(-wn, 0.0)).norm(), 0.0);
            }
        }
    }

    #[test]
    fn design_dispatch() {
        for kind in ReferenceKind::ALL {
            let f = design(kind, ord(3), 1.0).unwrap();
            assert_eq!(f.kind(), kind);
            assert_eq!(f.n(), 3);
        }
    }
}
