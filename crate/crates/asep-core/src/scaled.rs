use serde::{Deserialize, Serialize};

/// A real number held as `mantissa * exp(log_scale)`, for partition values
/// whose magnitude overflows `f64` long before the interesting lengths are
/// reached.  Canonical form keeps `|mantissa|` in `[1, e)` (or exactly 0), so
/// `log_scale` is always an integer count of e-folds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScaled {
    pub mantissa: f64,
    pub log_scale: f64,
}

impl LogScaled {
    pub fn new(mantissa: f64, log_scale: f64) -> Self {
        Self { mantissa, log_scale }.canonical()
    }

    pub fn zero() -> Self {
        Self { mantissa: 0.0, log_scale: 0.0 }
    }

    pub fn one() -> Self {
        Self { mantissa: 1.0, log_scale: 0.0 }
    }

    pub fn from_value(x: f64) -> Self {
        Self { mantissa: x, log_scale: 0.0 }.canonical()
    }

    /// From a plain value and a log offset already factored out of it.
    pub fn from_mantissa_log(mantissa: f64, log_scale: f64) -> Self {
        Self { mantissa, log_scale }.canonical()
    }

    fn canonical(mut self) -> Self {
        if self.mantissa == 0.0 {
            return Self { mantissa: 0.0, log_scale: 0.0 };
        }
        let shift = self.mantissa.abs().ln().floor();
        if shift != 0.0 {
            self.mantissa *= (-shift).exp();
            self.log_scale += shift;
        }
        self
    }

    /// The represented value; overflows to `inf`/0 outside f64 range.
    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn sign(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// Natural log of the absolute value (`-inf` for zero).
    pub fn ln_abs(&self) -> f64 {
        if self.mantissa == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mantissa.abs().ln() + self.log_scale
        }
    }

    pub fn mul(&self, other: &LogScaled) -> LogScaled {
        LogScaled {
            mantissa: self.mantissa * other.mantissa,
            log_scale: self.log_scale + other.log_scale,
        }
        .canonical()
    }

    pub fn times(&self, factor: f64) -> LogScaled {
        LogScaled { mantissa: self.mantissa * factor, log_scale: self.log_scale }.canonical()
    }

    /// `self / other` as a plain float; finite whenever the two magnitudes
    /// are within f64 range of each other.
    pub fn ratio_to(&self, other: &LogScaled) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        (self.mantissa / other.mantissa) * (self.log_scale - other.log_scale).exp()
    }

    /// Product of plain factors, renormalized as it goes.
    pub fn product_of(factors: impl IntoIterator<Item = f64>) -> LogScaled {
        let mut acc = LogScaled::one();
        for f in factors {
            acc = acc.times(f);
        }
        acc
    }
}
