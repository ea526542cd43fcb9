use crate::CoreError;

/// Comparisons against phase boundaries use this tolerance on `u`, `v` and
/// `uv`.  Values within it are labeled `Boundary` / `ProductLine` rather than
/// silently binned into an open phase, because the limit theorems for the open
/// ASEP exclude the boundary cases explicitly.
pub const PHASE_TOL: f64 = 1e-12;

/// Parameters of the open ASEP on a segment of `n` sites: backward bias
/// `q in [0,1)`, entry rate `alpha` at site 1, exit rate `beta` at site `n`,
/// and the derived boundary fugacities
///
/// ```text
/// u = (1 - q)/alpha - 1,      v = (1 - q)/beta - 1,
/// ```
///
/// both in `(-1, oo)`, which govern the phase diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    pub u: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityPhase {
    HighDensity,
    LowDensity,
    MaximalCurrent,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Fan,
    Shock,
    ProductLine,
}

/// Joint phase label: density phase (`v > max(u,1)` high density,
/// `u > max(1,v)` low density, `max(u,v) < 1` maximal current) and region
/// (`uv < 1` fan, `uv > 1` shock, `uv = 1` product line).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    pub density_phase: DensityPhase,
    pub region: Region,
}

/// Weakly-asymmetric scaling: `u`, `v` are held fixed while the bias
/// approaches 1 as `q(n) = exp(-c_q * n^(-epsilon))`, with `alpha` and `beta`
/// recomputed from `u`, `v` at every `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WasepSpec {
    pub epsilon: f64,
    pub c_q: f64,
    pub u: f64,
    pub v: f64,
}

impl WasepSpec {
    pub fn new(epsilon: f64, c_q: f64, u: f64, v: f64) -> Result<Self, CoreError> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(CoreError::Validation {
                field: "epsilon",
                message: format!("must be a positive real, got {epsilon}"),
            });
        }
        if !(c_q > 0.0) || !c_q.is_finite() {
            return Err(CoreError::Validation {
                field: "c_q",
                message: format!("must be a positive real, got {c_q}"),
            });
        }
        if !(u > -1.0) || !u.is_finite() {
            return Err(CoreError::Validation {
                field: "u",
                message: format!("must exceed -1, got {u}"),
            });
        }
        if !(v > -1.0) || !v.is_finite() {
            return Err(CoreError::Validation {
                field: "v",
                message: format!("must exceed -1, got {v}"),
            });
        }
        Ok(Self { epsilon, c_q, u, v })
    }
}

/// Builds validated parameters, populating the derived fugacities.
pub fn make_params(n: usize, q: f64, alpha: f64, beta: f64) -> Result<ModelParams, CoreError> {
    if n == 0 {
        return Err(CoreError::Validation {
            field: "n",
            message: "segment length must be at least 1".into(),
        });
    }
    if !(0.0..1.0).contains(&q) {
        return Err(CoreError::Validation {
            field: "q",
            message: format!("backward bias must lie in [0, 1), got {q}"),
        });
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(CoreError::Validation {
            field: "alpha",
            message: format!("entry rate must be a positive real, got {alpha}"),
        });
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(CoreError::Validation {
            field: "beta",
            message: format!("exit rate must be a positive real, got {beta}"),
        });
    }
    let u = (1.0 - q) / alpha - 1.0;
    let v = (1.0 - q) / beta - 1.0;
    Ok(ModelParams { n, q, alpha, beta, u, v })
}

/// Parameters at segment length `n` under the weakly-asymmetric scaling.
pub fn wasep_params(spec: &WasepSpec, n: usize) -> Result<ModelParams, CoreError> {
    if n == 0 {
        return Err(CoreError::Validation {
            field: "n",
            message: "segment length must be at least 1".into(),
        });
    }
    let q = (-spec.c_q * (n as f64).powf(-spec.epsilon)).exp();
    let alpha = (1.0 - q) / (1.0 + spec.u);
    let beta = (1.0 - q) / (1.0 + spec.v);
    make_params(n, q, alpha, beta)
}

/// Labels the phase of the parameters.  The three density phases are mutually
/// exclusive by definition, so at most one of the defining margins can be
/// positive; a point within `PHASE_TOL` of every margin is `Boundary`.
pub fn classify_phase(p: &ModelParams) -> Phase {
    let (u, v) = (p.u, p.v);
    let high = v - u.max(1.0);
    let low = u - v.max(1.0);
    let max_current = 1.0 - u.max(v);

    let density_phase = if high > PHASE_TOL {
        DensityPhase::HighDensity
    } else if low > PHASE_TOL {
        DensityPhase::LowDensity
    } else if max_current > PHASE_TOL {
        DensityPhase::MaximalCurrent
    } else {
        DensityPhase::Boundary
    };

    let uv = u * v;
    let region = if (uv - 1.0).abs() <= PHASE_TOL {
        Region::ProductLine
    } else if uv > 1.0 {
        Region::Shock
    } else {
        Region::Fan
    };

    Phase { density_phase, region }
}

/// Density of the Bernoulli limit of the stationary measure on any fixed
/// window: `alpha/(1-q)` when the entry side is the bottleneck,
/// `1 - beta/(1-q)` when the exit side is, `1/2` when neither is.  `None` on
/// the excluded boundary cases (coexistence line and phase boundaries).
pub fn liggett_limit_density(p: &ModelParams) -> Option<f64> {
    let half = (1.0 - p.q) / 2.0;
    if p.alpha < p.beta.min(half) - PHASE_TOL {
        Some(p.alpha / (1.0 - p.q))
    } else if p.beta < p.alpha.min(half) - PHASE_TOL {
        Some(1.0 - p.beta / (1.0 - p.q))
    } else if p.alpha.min(p.beta) > half + PHASE_TOL {
        Some(0.5)
    } else {
        None
    }
}
