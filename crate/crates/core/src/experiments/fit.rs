use serde::Serialize;

use crate::error::{Error, Result};

/// `W ≈ c / N^alpha`, fitted on log-log axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

/// Least squares of `log W` against `log N`; `alpha` is minus the slope.
///
/// `r_squared` is 1 when the widths are all equal (nothing left to explain).
pub fn power_law_fit(n_values: &[f64], widths: &[f64]) -> Result<PowerLawFit> {
    if n_values.len() != widths.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} sizes but {} widths",
            n_values.len(),
            widths.len()
        )));
    }
    if n_values.len() < 3 {
        return Err(Error::InvalidArgument("power-law fit needs at least 3 points".into()));
    }
    if let Some(&w) = widths.iter().find(|&&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::NonPositiveWidth(w));
    }
    if let Some(&n) = n_values.iter().find(|&&n| !(n > 0.0 && n.is_finite())) {
        return Err(Error::InvalidArgument(format!("sizes must be positive, got {n}")));
    }
    let x: Vec<f64> = n_values.iter().map(|n| n.ln()).collect();
    let y: Vec<f64> = widths.iter().map(|w| w.ln()).collect();
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("power-law fit needs distinct sizes".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let ss_res: f64 = x
        .iter()
        .zip(&y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(PowerLawFit {
        alpha: -slope,
        prefactor: intercept.exp(),
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_inverse_square() {
        let n = [2.0, 3.0, 4.0, 5.0, 6.0];
        let w: Vec<f64> = n.iter().map(|x: &f64| 1.0 / (x * x)).collect();
        let fit = power_law_fit(&n, &w).unwrap();
        assert!((fit.alpha - 2.0).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
        assert!((fit.prefactor - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_widths() {
        let fit = power_law_fit(&[2.0, 3.0, 4.0], &[0.3; 3]).unwrap();
        assert!(fit.alpha.abs() < 1e-12);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            power_law_fit(&[2.0, 3.0, 4.0], &[0.3, 0.0, 0.1]),
            Err(Error::NonPositiveWidth(0.0))
        );
        assert!(power_law_fit(&[2.0, 3.0], &[0.3, 0.2]).is_err());
        assert!(power_law_fit(&[2.0, 3.0, 4.0], &[0.3, 0.2]).is_err());
        assert!(power_law_fit(&[2.0, 2.0, 2.0], &[0.3, 0.2, 0.1]).is_err());
    }
}
