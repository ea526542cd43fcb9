use crate::CoreError;

/// Truncated q-Pochhammer symbol `(z; q)_oo = prod_{i>=0} (1 - z q^i)`.
///
/// Factors are multiplied until `|z q^i| < tol`.  Since
/// `log prod_{j>=i} (1 - z q^j) = -sum_{j>=i} z q^j + O((z q^i)^2)`, the
/// dropped tail multiplies the result by `1 + O(tol / (1 - q))`, so `tol`
/// should be chosen a couple of orders below the accuracy target.
pub fn q_pochhammer(z: f64, q: f64, tol: f64) -> Result<f64, CoreError> {
    if !(0.0..1.0).contains(&q) {
        return Err(CoreError::Validation {
            field: "q",
            message: format!("infinite product requires 0 <= q < 1, got {q}"),
        });
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(CoreError::Validation {
            field: "tol",
            message: format!("truncation threshold must be positive, got {tol}"),
        });
    }
    if !z.is_finite() {
        return Err(CoreError::Validation {
            field: "z",
            message: format!("argument must be finite, got {z}"),
        });
    }
    let mut product = 1.0;
    let mut zq = z;
    while zq.abs() >= tol {
        product *= 1.0 - zq;
        zq *= q;
        if product == 0.0 {
            break;
        }
    }
    Ok(product)
}
