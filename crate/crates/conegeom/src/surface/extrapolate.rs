//! Power-law limit extrapolation: fit `q(s) = L + c s^β` with β free.
//!
//! The error exponent of the surface-body quotient is body-dependent and
//! unknown, so β is fitted over a grid rather than assumed.

/// Returns `(L, beta, rms_residual)` of the best fit with `β ∈ [0.5, 4]`.
pub fn fit_power_limit(s: &[f64], q: &[f64]) -> (f64, f64, f64) {
    assert_eq!(s.len(), q.len());
    assert!(s.len() >= 3, "need at least 3 grid points");
    let mut best: Option<(f64, f64, f64)> = None;
    let mut beta = 0.5;
    while beta <= 4.0 + 1e-12 {
        let (l, _c, r2) = linear_fit(s, q, beta);
        if best.map_or(true, |(_, _, br)| r2 < br) {
            best = Some((l, beta, r2));
        }
        beta += 0.005;
    }
    let (l, beta, r2) = best.unwrap();
    (l, beta, (r2 / s.len() as f64).sqrt())
}

/// Least squares for (L, c) at fixed β; returns (L, c, sum of squared resid).
fn linear_fit(s: &[f64], q: &[f64], beta: f64) -> (f64, f64, f64) {
    let n = s.len() as f64;
    let xs: Vec<f64> = s.iter().map(|v| v.powf(beta)).collect();
    let sx: f64 = xs.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sy: f64 = q.iter().sum();
    let sxy: f64 = xs.iter().zip(q).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return (sy / n, 0.0, f64::INFINITY);
    }
    let l = (sy * sxx - sx * sxy) / det;
    let c = (n * sxy - sx * sy) / det;
    let r2: f64 = xs
        .iter()
        .zip(q)
        .map(|(x, y)| {
            let e = l + c * x - y;
            e * e
        })
        .sum();
    (l, c, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_law() {
        let s: Vec<f64> = (0..8).map(|j| 0.1 * 0.5f64.powi(j)).collect();
        let q: Vec<f64> = s.iter().map(|s| 3.0 + 0.7 * s.powf(1.5)).collect();
        let (l, beta, _) = fit_power_limit(&s, &q);
        assert!((l - 3.0).abs() < 1e-10, "L = {l}");
        assert!((beta - 1.5).abs() < 0.01, "beta = {beta}");
    }

    #[test]
    fn tolerates_higher_order_terms() {
        let s: Vec<f64> = (0..8).map(|j| 0.1 * 0.5f64.powi(j)).collect();
        let q: Vec<f64> = s
            .iter()
            .map(|s| 2.0 + 0.5 * s * s + 0.3 * s.powi(4))
            .collect();
        let (l, _, _) = fit_power_limit(&s, &q);
        assert!((l - 2.0).abs() < 1e-6, "L = {l}");
    }
}
