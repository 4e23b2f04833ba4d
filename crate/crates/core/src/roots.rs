//! All-roots polynomial solver (Aberth–Ehrlich simultaneous iteration with
//! Newton polishing) for real-coefficient polynomials.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 500;

/// Evaluates a polynomial given in descending powers.
#[inline]
pub fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and first derivative in one pass.
#[inline]
fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Rounding-error bound for evaluating `coeffs` at `z` by Horner's rule.
fn evaluation_bound(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut acc = 0.0;
    for &c in coeffs {
        acc = acc * r + c.abs();
    }
    4.0 * f64::EPSILON * coeffs.len() as f64 * acc
}

/// All complex roots of `coeffs[0] z^m + ... + coeffs[m]`.
///
/// Leading zeros are rejected; trailing zeros are returned as exact zero
/// roots. Roots of real polynomials are returned conjugate-symmetric.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let lead = coeffs.first().copied().unwrap_or(0.0);
    if lead == 0.0 || !coeffs.iter().all(|c| c.is_finite()) {
        return Err(Error::InvalidRecord(
            "polynomial must have a finite non-zero leading coefficient".into(),
        ));
    }
    let mut p: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let mut roots = Vec::with_capacity(p.len() - 1);
    while p.len() > 1 && *p.last().unwrap() == 0.0 {
        p.pop();
        roots.push(Complex64::new(0.0, 0.0));
    }
    let degree = p.len() - 1;
    match degree {
        0 => return Ok(roots),
        1 => {
            roots.push(Complex64::new(-p[1], 0.0));
            return Ok(roots);
        }
        _ => {}
    }

    let mut z = initial_guesses(&p);
    let mut converged = vec![false; degree];
    let mut iterations = 0;
    while converged.iter().any(|c| !c) {
        if iterations == MAX_ITERATIONS {
            return Err(Error::NoConvergence(MAX_ITERATIONS));
        }
        iterations += 1;
        for k in 0..degree {
            if converged[k] {
                continue;
            }
            let (v, dv) = horner_with_derivative(&p, z[k]);
            if v.norm() <= evaluation_bound(&p, z[k]) {
                converged[k] = true;
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                // dv vanished; nudge off the critical point.
                let nudge = Complex64::new(1e-8, 1e-8) * z[k].norm().max(1.0);
                z[k] += nudge;
                continue;
            }
            z[k] -= step;
        }
    }

    for root in z.iter_mut() {
        polish(&p, root);
    }
    roots.extend(conjugate_pairs(z));
    Ok(roots)
}

/// Newton steps on the original coefficients, accepted only while they
/// reduce the residual.
fn polish(p: &[f64], root: &mut Complex64) {
    for _ in 0..3 {
        let (v, dv) = horner_with_derivative(p, *root);
        if dv.norm() == 0.0 {
            return;
        }
        let candidate = *root - v / dv;
        if horner(p, candidate).norm() < v.norm() {
            *root = candidate;
        } else {
            return;
        }
    }
}

/// Starting points on a circle whose radius is the geometric mean of the root
/// moduli, rotated off the real axis so no start is a fixed point by symmetry.
fn initial_guesses(p: &[f64]) -> Vec<Complex64> {
    let degree = p.len() - 1;
    let radius = p[degree].abs().powf(1.0 / degree as f64).max(f64::MIN_POSITIVE);
    let centre = -p[1] / degree as f64;
    (0..degree)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / degree as f64 + 0.4;
            Complex64::new(centre, 0.0) + Complex64::from_polar(radius, angle)
        })
        .collect()
}

/// Snaps a near-conjugate-symmetric root set onto an exactly symmetric one.
fn conjugate_pairs(mut z: Vec<Complex64>) -> Vec<Complex64> {
    let scale = z.iter().map(|r| r.norm()).fold(0.0, f64::max).max(1.0);
    let real_tol = 1e-10 * scale;
    let mut out = Vec::with_capacity(z.len());
    z.sort_by(|a, b| b.im.total_cmp(&a.im));
    while let Some(first) = (!z.is_empty()).then(|| z.remove(0)) {
        if first.im.abs() <= real_tol {
            out.push(Complex64::new(first.re, 0.0));
            continue;
        }
        if first.im < 0.0 {
            // Unpaired lower half-plane root; keep as is.
            out.push(first);
            continue;
        }
        let target = first.conj();
        let partner = z
            .iter()
            .enumerate()
            .filter(|(_, w)| w.im < 0.0)
            .min_by(|(_, a), (_, b)| (*a - target).norm().total_cmp(&(*b - target).norm()))
            .map(|(i, _)| i);
        match partner {
            Some(i) => {
                let w = z.remove(i);
                let mean = Complex64::new((first.re + w.re) / 2.0, (first.im - w.im) / 2.0);
                out.push(mean);
                out.push(mean.conj());
            }
            None => out.push(first),
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(b.im.total_cmp(&a.im)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn contains(roots: &[Complex64], target: Complex64, tol: f64) -> bool {
        roots.iter().any(|r| (r - target).norm() < tol)
    }

    #[test]
    fn linear_and_quadratic() {
        let r = polynomial_roots(&[1.0, 1.0]).unwrap();
        assert_eq!(r, vec![Complex64::new(-1.0, 0.0)]);

        let r = polynomial_roots(&[1.0, 2f64.sqrt(), 1.0]).unwrap();
        let h = 2f64.sqrt() / 2.0;
        assert!(contains(&r, Complex64::new(-h, h), 1e-12));
        assert!(contains(&r, Complex64::new(-h, -h), 1e-12));
    }

    #[test]
    fn known_real_roots() {
        // (z - 1)(z - 2)(z - 3)(z + 4)
        let r = polynomial_roots(&[1.0, -2.0, -13.0, 38.0, -24.0]).unwrap();
        for t in [1.0, 2.0, 3.0, -4.0] {
            assert!(contains(&r, Complex64::new(t, 0.0), 1e-10), "{t} in {r:?}");
        }
    }

    #[test]
    fn zero_roots_and_scaling() {
        let r = polynomial_roots(&[2.0, -2.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(contains(&r, Complex64::new(1.0, 0.0), 1e-14));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(polynomial_roots(&[]).is_err());
        assert!(polynomial_roots(&[0.0, 1.0]).is_err());
        assert!(polynomial_roots(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let mut c = vec![0.0; 13];
        c[0] = 1.0;
        c[12] = -1.0;
        let r = polynomial_roots(&c).unwrap();
        for root in &r {
            assert_relative_eq!(root.norm(), 1.0, epsilon = 1e-12);
            assert!((root.powu(12) - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn output_is_conjugate_closed() {
        let c = [1.0, 3.1, 7.2, 9.4, 8.1, 4.0, 1.3];
        let r = polynomial_roots(&c).unwrap();
        for root in &r {
            assert!(r.iter().any(|w| (w - root.conj()).norm() < 1e-12));
            assert!(horner(&c, *root).norm() < 1e-10);
        }
    }
}
