//! Damped binomial coefficients and the uniformly-damped binomial polynomial.
//!
//! A damped binomial row of order `n` is the ordinary Pascal row with every
//! interior entry (`0 < i < n`) multiplied by one damping constant `zeta`.
//! The boundary entries stay at 1, so the normalized polynomial
//! `sum_i C_i s^(n-i)` is monic with unit constant term and palindromic.
//!
//! The integer skeleton is kept apart from the damping so one skeleton can be
//! re-damped cheaply (five-percent, standard binomial, or any other value).

use crate::error::{Error, Result};
use crate::filter::{AnalogPolynomialFilter, ReferenceKind};

/// Orders up to this value build their binomial skeleton in exact integer
/// arithmetic. Larger orders use the floating point recurrence.
pub const EXACT_SKELETON_MAX_ORDER: usize = 24;

/// Relative tolerance used when comparing rows produced by different routes.
pub const ROW_TOLERANCE: f64 = 1e-12;

/// Filter / polynomial order, always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(usize);

impl Order {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(n));
        }
        Ok(Order(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Order {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Order::new(n)
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Uniform damping constant applied to the interior binomial coefficients.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DampingConstant(f64);

impl DampingConstant {
    /// Standard binomial (critically damped, all real poles).
    pub const UNDAMPED: DampingConstant = DampingConstant(1.0);

    pub fn new(zeta: f64) -> Result<Self> {
        if !(zeta.is_finite() && zeta > 0.0 && zeta <= 1.0) {
            return Err(Error::InvalidDamping(zeta));
        }
        Ok(DampingConstant(zeta))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// The five-percent uniform damping constant `sqrt(n(n-1) - (n-2)) / n`.
///
/// Equals 1 at `n = 1`, has its minimum `sqrt(2)/2` at `n = 2` and increases
/// monotonically towards 1 for larger orders.
pub fn damping_constant(n: Order) -> DampingConstant {
    let n = n.get() as f64;
    // n(n-1) - (n-2) = n^2 - 2n + 2 > 0 for every real n.
    DampingConstant((n * (n - 1.0) - (n - 2.0)).sqrt() / n)
}

/// Undamped binomial coefficients `n choose i` for one order.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialSkeleton {
    order: Order,
    values: Vec<f64>,
}

impl BinomialSkeleton {
    pub fn new(order: Order) -> Self {
        let n = order.get();
        let values = if n <= EXACT_SKELETON_MAX_ORDER {
            let mut c: u64 = 1;
            let mut row = Vec::with_capacity(n + 1);
            row.push(1.0);
            for i in 1..=n as u64 {
                // c * (n - i + 1) is divisible by i at every step.
                c = c * (n as u64 - i + 1) / i;
                row.push(c as f64);
            }
            row
        } else {
            let mut c = 1.0_f64;
            let mut row = Vec::with_capacity(n + 1);
            row.push(1.0);
            for i in 1..=n {
                c = c * (n - i + 1) as f64 / i as f64;
                row.push(c.round());
            }
            row
        };
        BinomialSkeleton { order, values }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Applies `zeta` to every interior entry.
    pub fn damp(&self, zeta: DampingConstant) -> CoefficientRow {
        let n = self.order.get();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &c)| if i == 0 || i == n { c } else { zeta.get() * c })
            .collect();
        CoefficientRow {
            order: self.order,
            zeta,
            values,
        }
    }
}

/// One row of damped binomial coefficients, `values[i]` is the coefficient of
/// `s^(n-i)` in the normalized polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    order: Order,
    zeta: DampingConstant,
    values: Vec<f64>,
}

impl CoefficientRow {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn zeta(&self) -> DampingConstant {
        self.zeta
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Same order, different damping.
    pub fn redamp(&self, zeta: DampingConstant) -> CoefficientRow {
        BinomialSkeleton::new(self.order).damp(zeta)
    }

    /// Closed-form coefficient sum `2 + (2^n - 2) zeta`.
    pub fn expected_sum(&self) -> f64 {
        let n = self.order.get() as i32;
        2.0 + (2f64.powi(n) - 2.0) * self.zeta.get()
    }
}

/// Damped binomial coefficient of index `i` in a row of order `n`.
pub fn damped_coefficient(n: Order, i: usize, zeta: DampingConstant) -> Result<f64> {
    let order = n.get();
    if i > order {
        return Err(Error::IndexOutOfRange { index: i, order });
    }
    // Multiplicative recurrence over the shorter side, no factorials.
    let k = i.min(order - i);
    let mut c = 1.0_f64;
    for j in 1..=k {
        c = c * (order - k + j) as f64 / j as f64;
    }
    if order <= EXACT_SKELETON_MAX_ORDER {
        c = c.round();
    }
    Ok(if i == 0 || i == order { c } else { zeta.get() * c })
}

/// Full damped row of order `n`.
pub fn coefficient_row(n: Order, zeta: DampingConstant) -> CoefficientRow {
    BinomialSkeleton::new(n).damp(zeta)
}

/// Builds the row of order `n + 1` from the row of order `n` with the damped
/// Pascal rule.
///
/// Interior entries of the new row are the plain sum of their two parents,
/// except that a parent sitting on the boundary of the old row carries no
/// damping yet and is multiplied by `zeta` on the way down. For `n = 1` both
/// parents of the single interior entry are boundaries.
pub fn pascal_next_row(row: &CoefficientRow) -> CoefficientRow {
    let n = row.order.get();
    let zeta = row.zeta.get();
    let old = &row.values;
    let weight = |j: usize| if j == 0 || j == n { zeta } else { 1.0 };

    let mut values = Vec::with_capacity(n + 2);
    values.push(1.0);
    for i in 1..=n {
        values.push(weight(i - 1) * old[i - 1] + weight(i) * old[i]);
    }
    values.push(1.0);

    CoefficientRow {
        order: Order(n + 1),
        zeta: row.zeta,
        values,
    }
}

/// Direct sum of the coefficients in a row.
pub fn coefficient_sum(row: &CoefficientRow) -> f64 {
    row.values.iter().sum()
}

/// Denominator `sum_i C_i s^(n-i) omega_n^i` of a unity DC gain filter.
pub fn polynomial(n: Order, omega_n: f64, zeta: DampingConstant) -> Result<AnalogPolynomialFilter> {
    let row = coefficient_row(n, zeta);
    AnalogPolynomialFilter::denormalize(
        row.values(),
        omega_n,
        ReferenceKind::FivePercentUdb,
        Some(zeta),
    )
}

/// Five-percent uniformly-damped binomial filter of order `n`.
pub fn five_percent_filter(n: Order, omega_n: f64) -> Result<AnalogPolynomialFilter> {
    polynomial(n, omega_n, damping_constant(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ord(n: usize) -> Order {
        Order::new(n).unwrap()
    }

    // Oracle: n! / (i! (n-i)!) in f64 via explicit factorials (valid for n <= 20).
    fn factorial_binomial(n: usize, i: usize) -> f64 {
        let fact = |m: usize| (1..=m).map(|k| k as f64).product::<f64>();
        fact(n) / (fact(i) * fact(n - i))
    }

    fn factorial_row(n: usize, zeta: f64) -> Vec<f64> {
        (0..=n)
            .map(|i| {
                let c = factorial_binomial(n, i);
                if i == 0 || i == n {
                    c
                } else {
                    zeta * c
                }
            })
            .collect()
    }

    fn rel_close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1e-300))
    }

    #[test]
    fn order_rejects_zero() {
        assert_eq!(Order::new(0), Err(Error::InvalidOrder(0)));
        assert!(DampingConstant::new(0.0).is_err());
        assert!(DampingConstant::new(1.01).is_err());
        assert!(DampingConstant::new(f64::NAN).is_err());
    }

    #[test]
    fn five_percent_damping_values() {
        assert_eq!(damping_constant(ord(1)).get(), 1.0);
        assert_relative_eq!(damping_constant(ord(2)).get(), 2f64.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(damping_constant(ord(5)).get(), 17f64.sqrt() / 5.0, max_relative = 1e-15);
        assert_relative_eq!(damping_constant(ord(10)).get(), 82f64.sqrt() / 10.0, max_relative = 1e-15);
        assert_relative_eq!(damping_constant(ord(10)).get(), 0.905539, epsilon = 1e-6);
    }

    #[test]
    fn damping_increases_from_order_two() {
        let lo = 2f64.sqrt() / 2.0;
        let mut prev = damping_constant(ord(2)).get();
        assert_relative_eq!(prev, lo, max_relative = 1e-15);
        for n in 3..=100 {
            let z = damping_constant(ord(n)).get();
            assert!(z > prev, "not increasing at n={n}");
            assert!(z > lo && z < 1.0);
            prev = z;
        }
    }

    #[test]
    fn damped_coefficient_cases() {
        let z = DampingConstant::new(0.3).unwrap();
        assert_eq!(damped_coefficient(ord(7), 0, z).unwrap(), 1.0);
        assert_eq!(damped_coefficient(ord(7), 7, z).unwrap(), 1.0);
        assert_eq!(damped_coefficient(ord(3), 1, DampingConstant::UNDAMPED).unwrap(), 3.0);
        let z4 = DampingConstant::new(10f64.sqrt() / 4.0).unwrap();
        assert_relative_eq!(damped_coefficient(ord(4), 2, z4).unwrap(), 4.743416, epsilon = 1e-6);
        assert_eq!(
            damped_coefficient(ord(3), 4, z),
            Err(Error::IndexOutOfRange { index: 4, order: 3 })
        );
    }

    #[test]
    fn rows_match_table_examples() {
        let z3 = DampingConstant::new(5f64.sqrt() / 3.0).unwrap();
        let row = coefficient_row(ord(3), z3);
        let s5 = 5f64.sqrt();
        assert!(rel_close(row.values(), &[1.0, s5, s5, 1.0], 1e-15));

        assert_eq!(coefficient_row(ord(1), DampingConstant::UNDAMPED).values(), &[1.0, 1.0]);

        let z6 = damping_constant(ord(6));
        assert_relative_eq!(z6.get(), 0.849837, epsilon = 1e-6);
        let expected: Vec<f64> = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0]
            .iter()
            .enumerate()
            .map(|(i, &c)| if i == 0 || i == 6 { c } else { c * z6.get() })
            .collect();
        assert!(rel_close(coefficient_row(ord(6), z6).values(), &expected, 1e-15));
    }

    #[test]
    fn pascal_rule_small_cases() {
        let z = DampingConstant::new(0.6).unwrap();
        let r1 = coefficient_row(ord(1), z);
        let r2 = pascal_next_row(&r1);
        assert!(rel_close(r2.values(), &[1.0, 1.2, 1.0], 1e-15));
        let r3 = pascal_next_row(&r2);
        assert!(rel_close(r3.values(), &[1.0, 1.8, 1.8, 1.0], 1e-15));
        let r4 = pascal_next_row(&r3);
        assert_relative_eq!(r4.values()[2], 6.0 * 0.6, max_relative = 1e-15);
    }

    #[test]
    fn pascal_chain_matches_factorial_formula() {
        for zeta in [None, Some(1.0), Some(0.5)] {
            let z_at = |n: usize| match zeta {
                Some(z) => DampingConstant::new(z).unwrap(),
                None => damping_constant(ord(n)),
            };
            // For the five-percent constant the rule runs at a fixed zeta per
            // target order, so chain up to each n separately.
            for target in 1..=20 {
                let z = z_at(target);
                let mut row = coefficient_row(ord(1), z);
                for _ in 1..target {
                    row = pascal_next_row(&row);
                }
                assert!(
                    rel_close(row.values(), &factorial_row(target, z.get()), ROW_TOLERANCE),
                    "n={target} zeta={}",
                    z.get()
                );
                assert!(rel_close(row.values(), coefficient_row(ord(target), z).values(), ROW_TOLERANCE));
            }
        }
    }

    #[test]
    fn undamped_rows_are_pascal_rows() {
        for n in 1..=30 {
            let row = coefficient_row(ord(n), DampingConstant::UNDAMPED);
            let mut pascal = vec![1.0_f64];
            for _ in 0..n {
                let mut next = vec![1.0; pascal.len() + 1];
                for i in 1..pascal.len() {
                    next[i] = pascal[i - 1] + pascal[i];
                }
                pascal = next;
            }
            assert_eq!(row.values(), pascal.as_slice(), "n={n}");
        }
    }

    #[test]
    fn skeleton_above_exact_limit_stays_consistent() {
        let s = BinomialSkeleton::new(ord(40));
        assert_eq!(s.values()[1], 40.0);
        assert_relative_eq!(s.values()[20], 137_846_528_820.0, max_relative = 1e-15);
        assert_relative_eq!(
            damped_coefficient(ord(40), 20, DampingConstant::UNDAMPED).unwrap(),
            137_846_528_820.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn coefficient_sums() {
        let z2 = damping_constant(ord(2));
        let row = coefficient_row(ord(2), z2);
        assert_relative_eq!(coefficient_sum(&row), 2.0 + 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(coefficient_sum(&row), 3.414214, epsilon = 1e-6);

        let z = DampingConstant::new(0.37).unwrap();
        assert_eq!(coefficient_sum(&coefficient_row(ord(1), z)), 2.0);

        let z5 = damping_constant(ord(5));
        let row5 = coefficient_row(ord(5), z5);
        // 0.824621 is zeta_5 rounded to six places.
        assert_relative_eq!(coefficient_sum(&row5), 2.0 + 30.0 * 0.824621, epsilon = 30.0 * 5e-7);
        assert_relative_eq!(coefficient_sum(&row5), row5.expected_sum(), max_relative = 1e-12);
    }

    #[test]
    fn polynomial_examples() {
        let z2 = damping_constant(ord(2));
        let p = polynomial(ord(2), 1.0, z2).unwrap();
        assert_relative_eq!(p.denom()[1], 1.41421, epsilon = 1e-5);
        let p = polynomial(ord(2), 2.0, z2).unwrap();
        assert_relative_eq!(p.denom()[0], 1.0);
        assert_relative_eq!(p.denom()[1], 2.82843, epsilon = 1e-5);
        assert_relative_eq!(p.denom()[2], 4.0);
        let p = polynomial(ord(1), 1.0, DampingConstant::UNDAMPED).unwrap();
        assert_eq!(p.denom(), &[1.0, 1.0]);
        assert!(polynomial(ord(2), 0.0, z2).is_err());
        assert!(polynomial(ord(2), -1.0, z2).is_err());
    }

    proptest! {
        #[test]
        fn rows_are_symmetric_and_sum_in_closed_form(n in 1usize..=20, zeta in 0.01f64..=1.0) {
            let row = coefficient_row(ord(n), DampingConstant::new(zeta).unwrap());
            let v = row.values();
            prop_assert_eq!(v[0], 1.0);
            prop_assert_eq!(v[n], 1.0);
            for i in 0..=n {
                prop_assert_eq!(v[i], v[n - i]);
                prop_assert!(v[i] > 0.0);
            }
            let sum = coefficient_sum(&row);
            prop_assert!((sum - row.expected_sum()).abs() <= ROW_TOLERANCE * sum);
        }

        #[test]
        fn denormalization_scales_each_position(n in 1usize..=20, zeta in 0.05f64..=1.0,
                                                idx in 0usize..3) {
            let wn = [0.1, 1.0, 250.0][idx];
            let z = DampingConstant::new(zeta).unwrap();
            let unit = polynomial(ord(n), 1.0, z).unwrap();
            let scaled = polynomial(ord(n), wn, z).unwrap();
            for i in 0..=n {
                let expect = unit.denom()[i] * wn.powi(i as i32);
                prop_assert!((scaled.denom()[i] - expect).abs() <= ROW_TOLERANCE * expect);
            }
            prop_assert_eq!(scaled.denom()[0], 1.0);
            prop_assert!((scaled.denom()[n] - wn.powi(n as i32)).abs() <= 1e-12 * wn.powi(n as i32));
        }
    }
}
