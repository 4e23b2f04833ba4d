//! Even-power expansions of `|D(j omega)|^2` and of the group delay numerator.
//!
//! With `x = omega / omega_n` and the normalized row `C_0..C_n` (all filters
//! here have `C_0 = C_n = 1`):
//!
//! ```text
//! |D(jx)|^2          = x^(2n) + sum_{i=1}^{n-1} alpha_i x^(2i) + 1
//! tau_g(x) * omega_n = |H(jx)|^2 * sum_{i=0}^{n-1} lambda_i x^(2i)
//! ```
//!
//! Two routes compute each set of coefficients. The oracle multiplies the
//! polynomials out (`D(s) D(-s)` and `Re D * Im D' - Im D * Re D'`) and is the
//! authoritative source. The closed forms are the double sums over damped
//! coefficient pairs `(j, k)` placed symmetrically about a centre index.

use crate::poly::{derivative, even_part, multiply, odd_part};
use crate::error::{Error, Result};
use crate::filter::AnalogPolynomialFilter;
use crate::udb::{self, DampingConstant, Order};

/// Interior coefficients of `|D(jx)|^2`; `alphas[i - 1]` multiplies `x^(2i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeSquaredExpansion {
    order: Order,
    alphas: Vec<f64>,
}

impl MagnitudeSquaredExpansion {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// `kappa(x) = sum alpha_i x^(2i)`.
    pub fn kappa(&self, x: f64) -> f64 {
        let x2 = x * x;
        let mut pow = x2;
        let mut acc = 0.0;
        for &a in &self.alphas {
            acc += a * pow;
            pow *= x2;
        }
        acc
    }

    /// `d kappa / dx = sum 2 i alpha_i x^(2i - 1)`.
    pub fn kappa_slope(&self, x: f64) -> f64 {
        self.alphas
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let i = (idx + 1) as i32;
                2.0 * i as f64 * a * x.powi(2 * i - 1)
            })
            .sum()
    }

    /// `|H(jx)|^-2 = x^(2n) + kappa(x) + 1`.
    pub fn inverse_gain_squared(&self, x: f64) -> f64 {
        x.powi(2 * self.order.get() as i32) + self.kappa(x) + 1.0
    }
}

/// Coefficients of the normalized group delay numerator; `lambdas[i]`
/// multiplies `x^(2i)` for `i = 0..n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupDelayExpansion {
    order: Order,
    lambdas: Vec<f64>,
}

impl GroupDelayExpansion {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// `sum lambda_i x^(2i)`.
    pub fn numerator(&self, x: f64) -> f64 {
        let x2 = x * x;
        self.lambdas.iter().rev().fold(0.0, |acc, &l| acc * x2 + l)
    }
}

/// A `(j, k)` pair requested by the closed-form upper limit that falls
/// outside `[0, n]`. Such a pair multiplies a coefficient of a power the
/// polynomial does not have, so it contributes zero; it is recorded rather
/// than silently dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexDiagnostic {
    /// Power index `i` of the `x^(2i)` term being assembled.
    pub power: usize,
    pub r: usize,
    pub j: isize,
    pub k: isize,
}

/// Closed-form expansion together with its index diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm<T> {
    pub expansion: T,
    pub diagnostics: Vec<IndexDiagnostic>,
}

/// Authoritative `alpha` coefficients from `D(s) D(-s)`.
pub fn magnitude_squared_oracle(filter: &AnalogPolynomialFilter) -> MagnitudeSquaredExpansion {
    let asc = ascending(&filter.normalized_row());
    let n = filter.n();
    // D(-s) flips the sign of odd powers.
    let mirrored: Vec<f64> = asc
        .iter()
        .enumerate()
        .map(|(m, &c)| if m % 2 == 1 { -c } else { c })
        .collect();
    let product = multiply(&asc, &mirrored);
    // At s = jx, s^(2u) = (-1)^u x^(2u).
    let alphas = (1..n)
        .map(|u| if u % 2 == 1 { -product[2 * u] } else { product[2 * u] })
        .collect();
    MagnitudeSquaredExpansion {
        order: filter.order(),
        alphas,
    }
}

/// Authoritative `lambda` coefficients from `Re D * Im D' - Im D * Re D'`.
pub fn group_delay_oracle(filter: &AnalogPolynomialFilter) -> GroupDelayExpansion {
    let asc = ascending(&filter.normalized_row());
    // D(jx) = R(x) + j I(x) with real polynomials R, I in x.
    let re: Vec<f64> = even_part(&asc)
        .into_iter()
        .enumerate()
        .map(|(m, c)| if m % 4 == 2 { -c } else { c })
        .collect();
    let im: Vec<f64> = odd_part(&asc)
        .into_iter()
        .enumerate()
        .map(|(m, c)| if m % 4 == 3 { -c } else { c })
        .collect();
    let lhs = multiply(&re, &derivative(&im));
    let rhs = multiply(&im, &derivative(&re));
    let len = lhs.len().max(rhs.len());
    let numerator: Vec<f64> = (0..len)
        .map(|m| lhs.get(m).copied().unwrap_or(0.0) - rhs.get(m).copied().unwrap_or(0.0))
        .collect();
    let lambdas = (0..filter.n())
        .map(|u| numerator.get(2 * u).copied().unwrap_or(0.0))
        .collect();
    GroupDelayExpansion {
        order: filter.order(),
        lambdas,
    }
}

/// Upper summation limit for the `alpha` double sum at power `i`, as written
/// for the closed form: `n - i` in the upper half (`i >= n/2` for even `n`,
/// `i >= (n-1)/2` for odd `n`), `i` otherwise.
///
/// For odd `n` at `i = (n-1)/2` this overshoots by one and reaches `k = n + 1`;
/// that pair is reported as a diagnostic.
pub fn alpha_upper_limit(n: usize, i: usize) -> usize {
    if upper_half(n, i) {
        n - i
    } else {
        i
    }
}

/// Upper summation limit for the `lambda` double sum at power `i`:
/// `n - i` in the upper half, `i + 1` otherwise.
pub fn lambda_upper_limit(n: usize, i: usize) -> usize {
    if upper_half(n, i) {
        n - i
    } else {
        i + 1
    }
}

fn upper_half(n: usize, i: usize) -> bool {
    if n.is_multiple_of(2) {
        2 * i >= n
    } else {
        2 * i + 1 >= n
    }
}

/// `alpha_t = C_t^2 + 2 sum_{r=1}^{rbar} (-1)^r C_{t-r} C_{t+r}` with
/// `t = n - i`, evaluated on an arbitrary normalized row.
pub fn closed_form_alphas_for_row(row: &[f64]) -> Result<ClosedForm<MagnitudeSquaredExpansion>> {
    let n = row.len().saturating_sub(1);
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let mut diagnostics = Vec::new();
    let mut alphas = Vec::with_capacity(n - 1);
    for i in 1..n {
        let t = (n - i) as isize;
        let mut acc = row[t as usize] * row[t as usize];
        for r in 1..=alpha_upper_limit(n, i) {
            let (j, k) = (t - r as isize, t + r as isize);
            let sign = if r % 2 == 1 { -1.0 } else { 1.0 };
            match pair(row, j, k) {
                Some(product) => acc += 2.0 * sign * product,
                None => diagnostics.push(IndexDiagnostic { power: i, r, j, k }),
            }
        }
        alphas.push(acc);
    }
    Ok(ClosedForm {
        expansion: MagnitudeSquaredExpansion {
            order: Order::new(n)?,
            alphas,
        },
        diagnostics,
    })
}

/// Closed-form `alpha` coefficients for the uniformly damped row `(n, zeta)`.
pub fn closed_form_alphas(
    n: Order,
    zeta: DampingConstant,
) -> Result<ClosedForm<MagnitudeSquaredExpansion>> {
    closed_form_alphas_for_row(udb::coefficient_row(n, zeta).values())
}

/// `lambda_t = sum_{r=1}^{rbar} (-1)^(r-1) (2r - 1) C_{t+1-r} C_{t+r}` with
/// `t = n - 1 - i`, for every power `i = 0..n-1`.
///
/// The `(2r - 1)` weight is the index distance `k - j`; it comes from
/// differentiating `x^j` and `x^k` in the phase derivative. The end terms
/// `i = 0` and `i = n - 1` reduce to `C_0 C_1 = C_{n-1} C_n`, which for a
/// uniformly damped row is `n zeta`.
pub fn closed_form_lambdas_for_row(row: &[f64]) -> Result<ClosedForm<GroupDelayExpansion>> {
    closed_form_lambdas_weighted(row, |r| (2 * r - 1) as f64)
}

/// Closed-form `lambda` coefficients for the uniformly damped row `(n, zeta)`.
pub fn closed_form_lambdas(
    n: Order,
    zeta: DampingConstant,
) -> Result<ClosedForm<GroupDelayExpansion>> {
    closed_form_lambdas_for_row(udb::coefficient_row(n, zeta).values())
}

/// The same double sum with unit weights on every pair. It disagrees with
/// the phase derivative for every order above 1 and is kept only so that
/// disagreement can be measured.
pub fn unweighted_lambdas_for_row(row: &[f64]) -> Result<ClosedForm<GroupDelayExpansion>> {
    closed_form_lambdas_weighted(row, |_| 1.0)
}

fn closed_form_lambdas_weighted(
    row: &[f64],
    weight: impl Fn(usize) -> f64,
) -> Result<ClosedForm<GroupDelayExpansion>> {
    let n = row.len().saturating_sub(1);
    let order = Order::new(n)?;
    let mut diagnostics = Vec::new();
    let mut lambdas = Vec::with_capacity(n);
    for i in 0..n {
        let t = (n - 1 - i) as isize;
        let mut acc = 0.0;
        for r in 1..=lambda_upper_limit(n, i) {
            let (j, k) = (t + 1 - r as isize, t + r as isize);
            let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
            match pair(row, j, k) {
                Some(product) => acc += sign * weight(r) * product,
                None => diagnostics.push(IndexDiagnostic { power: i, r, j, k }),
            }
        }
        lambdas.push(acc);
    }
    Ok(ClosedForm {
        expansion: GroupDelayExpansion { order, lambdas },
        diagnostics,
    })
}

fn pair(row: &[f64], j: isize, k: isize) -> Option<f64> {
    let n = row.len() as isize - 1;
    if j < 0 || k < 0 || j > n || k > n {
        return None;
    }
    Some(row[j as usize] * row[k as usize])
}

fn ascending(descending: &[f64]) -> Vec<f64> {
    descending.iter().rev().copied().collect()
}
