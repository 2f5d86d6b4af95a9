//! Summary statistics for sweeps.

/// Median of a non-empty sample; the mean of the two middle values for
/// even sizes.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty sample");
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// 95% Wilson score interval for `k` successes out of `n`.
pub fn wilson_interval(k: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

/// Least-squares line through `(ln x, ln y)`. Needs at least four points
/// with positive coordinates.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Option<Fit> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 4 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Some(Fit { slope, intercept, residual: (rss / n).sqrt(), points: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
        assert_eq!(mean(&[1.0, 2.0, 6.0]), 3.0);
    }

    #[test]
    fn wilson_reference_values() {
        // 5 of 10 gives [0.2366, 0.7634]; 0 of 20 gives [0, 0.1611].
        let (lo, hi) = wilson_interval(5, 10);
        assert!((lo - 0.236_6).abs() < 1e-4 && (hi - 0.763_4).abs() < 1e-4);
        let (lo, hi) = wilson_interval(0, 20);
        assert!(lo == 0.0 && (hi - 0.161_1).abs() < 1e-4);
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
    }

    #[test]
    fn fit_needs_four_points() {
        assert!(loglog_fit(&[1.0, 2.0, 4.0], &[1.0, 2.0, 4.0]).is_none());
        let f = loglog_fit(&[1.0, 2.0, 4.0, 8.0], &[3.0, 6.0, 12.0, 24.0]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12 && f.residual < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn recovers_power_laws(a in 0.1f64..3.0, c in 0.5f64..100.0) {
            let xs: Vec<f64> = (4..12).map(|k| 2f64.powi(k)).collect();
            let ys: Vec<f64> = xs.iter().map(|x| c * x.powf(a)).collect();
            let f = loglog_fit(&xs, &ys).unwrap();
            prop_assert!((f.slope - a).abs() < 1e-9);
        }

        #[test]
        fn wilson_contains_the_estimate(n in 1usize..2000, k in 0usize..2000) {
            let k = k.min(n);
            let (lo, hi) = wilson_interval(k, n);
            let p = k as f64 / n as f64;
            prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
        }
    }
}
