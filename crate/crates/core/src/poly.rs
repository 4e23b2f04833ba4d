//! Small dense real polynomial helpers. Coefficient order is whatever the
//! caller uses consistently; `derivative`, `even_part` and `odd_part` assume
//! ascending powers.

pub fn multiply(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p^k` by repeated multiplication.
pub fn power(p: &[f64], k: usize) -> Vec<f64> {
    (0..k).fold(vec![1.0], |acc, _| multiply(&acc, p))
}

pub fn add_scaled(acc: &mut Vec<f64>, p: &[f64], scale: f64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (a, &c) in acc.iter_mut().zip(p) {
        *a += scale * c;
    }
}

pub fn derivative(asc: &[f64]) -> Vec<f64> {
    asc.iter()
        .enumerate()
        .skip(1)
        .map(|(m, &c)| m as f64 * c)
        .collect()
}

/// Even-power terms, odd positions zeroed.
pub fn even_part(asc: &[f64]) -> Vec<f64> {
    asc.iter()
        .enumerate()
        .map(|(m, &c)| if m % 2 == 0 { c } else { 0.0 })
        .collect()
}

/// Odd-power terms, even positions zeroed.
pub fn odd_part(asc: &[f64]) -> Vec<f64> {
    asc.iter()
        .enumerate()
        .map(|(m, &c)| if m % 2 == 1 { c } else { 0.0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        assert_eq!(multiply(&[1.0, 1.0], &[1.0, -1.0]), vec![1.0, 0.0, -1.0]);
        assert_eq!(power(&[1.0, 1.0], 3), vec![1.0, 3.0, 3.0, 1.0]);
        assert_eq!(derivative(&[5.0, 3.0, 2.0]), vec![3.0, 4.0]);
        assert_eq!(even_part(&[1.0, 2.0, 3.0]), vec![1.0, 0.0, 3.0]);
        assert_eq!(odd_part(&[1.0, 2.0, 3.0]), vec![0.0, 2.0, 0.0]);
        let mut acc = vec![1.0];
        add_scaled(&mut acc, &[1.0, 2.0], 2.0);
        assert_eq!(acc, vec![3.0, 4.0]);
    }
}
