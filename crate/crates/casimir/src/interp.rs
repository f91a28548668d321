//! Monotone cubic interpolation (Fritsch-Carlson).
//!
//! Slopes are the weighted harmonic mean of adjacent secants, zeroed at
//! local extrema, with the usual shape-preserving one-sided endpoint rule.
//! The interpolant never overshoots the data, which is the property the
//! correction-coefficient tables need: they are smooth but not monotone.

use crate::error::{CasimirError, Result};

#[derive(Debug, Clone)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(CasimirError::InvalidInput(
                "interpolation needs matching columns with at least 2 points".into(),
            ));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CasimirError::InvalidInput(
                "interpolation abscissae must ascend strictly".into(),
            ));
        }
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let sec: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = sec[0];
            d[1] = sec[0];
        } else {
            for i in 1..n - 1 {
                if sec[i - 1] * sec[i] > 0.0 {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
                }
            }
            d[0] = edge_slope(h[0], h[1], sec[0], sec[1]);
            d[n - 1] = edge_slope(h[n - 2], h[n - 3], sec[n - 2], sec[n - 3]);
        }
        Ok(Pchip { x, y, d })
    }

    /// Hermite evaluation; clamps to the end values outside the range
    /// (range policy belongs to the caller).
    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        if xq <= self.x[0] {
            return self.y[0] + self.d[0] * (xq - self.x[0]);
        }
        if xq >= self.x[n - 1] {
            return self.y[n - 1] + self.d[n - 1] * (xq - self.x[n - 1]);
        }
        let i = match self
            .x
            .binary_search_by(|v| v.partial_cmp(&xq).expect("finite abscissae"))
        {
            Ok(k) => return self.y[k],
            Err(k) => k - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let s = (xq - self.x[i]) / h;
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (d0, d1) = (self.d[i], self.d[i + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        y0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + d0 * h * (s3 - 2.0 * s2 + s)
            + y1 * (-2.0 * s3 + 3.0 * s2)
            + d1 * h * (s3 - s2)
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }
}

/// Shape-preserving three-point endpoint slope. `h0`, `sec0` belong to the
/// boundary interval, `h1`, `sec1` to its neighbor.
fn edge_slope(h0: f64, h1: f64, sec0: f64, sec1: f64) -> f64 {
    let mut d = ((2.0 * h0 + h1) * sec0 - h0 * sec1) / (h0 + h1);
    if d * sec0 <= 0.0 {
        d = 0.0;
    } else if sec0 * sec1 < 0.0 && d.abs() > 3.0 * sec0.abs() {
        d = 3.0 * sec0;
    }
    d
}
