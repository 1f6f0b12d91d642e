//! Sampled parametric plane curves.

use crate::error::{Error, Result};

/// An ordered list of `(parameter, point)` samples with strictly increasing
/// parameter. Used for evolved wavefronts and cotidal lines.
#[derive(Debug, Clone)]
pub struct ParametricCurve {
    samples: Vec<(f64, [f64; 2])>,
}

impl ParametricCurve {
    pub fn new(samples: Vec<(f64, [f64; 2])>) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::NumericalInput(format!(
                "parametric curve needs at least 3 samples, got {}",
                samples.len()
            )));
        }
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::NumericalInput(
                    "curve parameter must be strictly increasing".into(),
                ));
            }
        }
        if samples
            .iter()
            .any(|(t, p)| !t.is_finite() || !p[0].is_finite() || !p[1].is_finite())
        {
            return Err(Error::NumericalInput("non-finite curve sample".into()));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, [f64; 2])] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Polyline length of the sampled curve.
    pub fn polyline_length(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| {
                let dx = w[1].1[0] - w[0].1[0];
                let dy = w[1].1[1] - w[0].1[1];
                (dx * dx + dy * dy).sqrt()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn requires_three_increasing_samples() {
        assert!(ParametricCurve::new(vec![(0.0, [0.0, 0.0]), (1.0, [1.0, 0.0])]).is_err());
        assert!(ParametricCurve::new(vec![
            (0.0, [0.0, 0.0]),
            (0.0, [1.0, 0.0]),
            (1.0, [2.0, 0.0])
        ])
        .is_err());
        assert!(ParametricCurve::new(vec![
            (0.0, [0.0, 0.0]),
            (0.5, [1.0, 0.0]),
            (1.0, [2.0, 0.0])
        ])
        .is_ok());
    }

    #[test]
    fn polyline_length_of_unit_segment_chain() {
        let c = ParametricCurve::new(vec![
            (0.0, [0.0, 0.0]),
            (1.0, [1.0, 0.0]),
            (2.0, [1.0, 1.0]),
        ])
        .unwrap();
        assert!((c.polyline_length() - 2.0).abs() < 1e-15);
    }
}
