use asep_core::ModelParams;

use crate::transfer::HeightWeights;

/// Per-height step weights of the path representation with the flat colors
/// kept separate: `flat_occ[h]` weighs the particle-carrying flat step and
/// `flat_emp[h]` the hole-carrying one.  Diagonal steps are shared between
/// the two colors through the North/South encoding.
#[derive(Debug, Clone)]
pub struct ColoredWeights {
    pub up: Vec<f64>,
    pub down: Vec<f64>,
    pub flat_occ: Vec<f64>,
    pub flat_emp: Vec<f64>,
}

impl ColoredWeights {
    pub fn new(p: &ModelParams, cap: usize) -> Self {
        let q = p.q;
        let scale = 1.0 - q;
        let mut up = Vec::with_capacity(cap + 1);
        let mut down = Vec::with_capacity(cap + 1);
        let mut flat_occ = Vec::with_capacity(cap + 1);
        let mut flat_emp = Vec::with_capacity(cap + 1);
        for h in 0..=cap as i32 {
            up.push(scale * (1.0 - q.powi(h + 1)));
            down.push(scale * (1.0 - p.u * p.v * q.powi(h)));
            flat_occ.push(scale * (1.0 + p.v * q.powi(h)));
            flat_emp.push(scale * (1.0 + p.u * q.powi(h)));
        }
        Self { up, down, flat_occ, flat_emp }
    }

    pub fn cap(&self) -> usize {
        self.up.len() - 1
    }

    /// Collapses the colors for contraction over unobserved sites.
    pub fn summed(&self) -> HeightWeights {
        HeightWeights {
            up: self.up.clone(),
            down: self.down.clone(),
            flat: self
                .flat_occ
                .iter()
                .zip(&self.flat_emp)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Smallest `k` with `u v q^k = 1` (within `tol`), if one exists: at such
/// parameters every South step with lower endpoint `k` has weight zero, so
/// path heights are effectively capped at `k`.
pub fn finite_representation_order(p: &ModelParams, tol: f64) -> Option<usize> {
    let uv = p.u * p.v;
    if uv < 1.0 - tol {
        return None;
    }
    if (uv - 1.0).abs() <= tol {
        return Some(0);
    }
    if p.q <= 0.0 {
        return None;
    }
    let k = (uv.ln() / (1.0 / p.q).ln()).round();
    if k < 0.0 || k > 1e6 {
        return None;
    }
    let k = k as usize;
    if (uv * p.q.powi(k as i32) - 1.0).abs() <= tol {
        Some(k)
    } else {
        None
    }
}
