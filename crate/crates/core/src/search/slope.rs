use std::ops::RangeInclusive;

use crate::canon::Configuration;
use crate::error::{Error, Result};
use crate::search::engine::{forb_exact, SearchOptions, Status};

/// Least-squares fit of `ln forb` against `ln m`. A finite-m trend, not an
/// asymptotic statement.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeReport {
    /// `(m, value, status)` per point.
    pub points: Vec<(usize, usize, Status)>,
    pub slope: f64,
    pub intercept: f64,
    /// Observed minus fitted `ln forb`, per point.
    pub residuals: Vec<f64>,
}

impl SlopeReport {
    pub fn to_text(&self) -> String {
        let mut out = String::from("finite-m trend, not an asymptotic claim\n");
        out.push_str("m,value,status,residual\n");
        for ((m, v, s), r) in self.points.iter().zip(&self.residuals) {
            out.push_str(&format!("{m},{v},{s},{r:.3}\n"));
        }
        out.push_str(&format!("slope {:.3}, intercept {:.3}\n", self.slope, self.intercept));
        out
    }
}

pub fn slope_estimate(
    family: &[Configuration],
    ms: RangeInclusive<usize>,
    opts: &SearchOptions,
) -> Result<SlopeReport> {
    let mut points = Vec::new();
    for m in ms {
        let r = forb_exact(m, family, opts)?;
        points.push((m, r.value, r.status));
    }
    fit(points)
}

fn fit(points: Vec<(usize, usize, Status)>) -> Result<SlopeReport> {
    if points.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "a slope needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(p) = points.iter().find(|p| p.1 == 0) {
        return Err(Error::InvalidParameter(format!(
            "forb is 0 at m = {}, no logarithm",
            p.0
        )));
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| (p.1 as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (intercept + slope * x)).collect();
    Ok(SlopeReport {
        points,
        slope,
        intercept,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonicalize;
    use crate::constructions::Block;

    #[test]
    fn constant_family_has_zero_slope() {
        let f = vec![canonicalize(&Block::Ones(1, 1).matrix().unwrap()).unwrap()];
        let r = slope_estimate(&f, 3..=6, &SearchOptions::default()).unwrap();
        assert!(r.slope.abs() < 1e-12);
        assert!(r.points.iter().all(|p| p.1 == 1));
    }

    #[test]
    fn quadratic_points() {
        let pts = (2..=6).map(|m| (m, m * m, Status::Exact)).collect();
        let r = fit(pts).unwrap();
        assert!((r.slope - 2.0).abs() < 1e-9);
        assert!(r.residuals.iter().all(|x| x.abs() < 1e-9));
    }

    #[test]
    fn too_few_points() {
        assert!(fit(vec![(3, 1, Status::Exact), (4, 1, Status::Exact)]).is_err());
    }
}
