use asep_core::{CoreError, ModelParams};

/// One step of a bi-colored Motzkin path.  North raises the height by one,
/// South lowers it, and the two East colors keep it flat; the color carries
/// the occupancy of the corresponding lattice site (North and EastFilled
/// encode a particle, South and EastEmpty a hole).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    North,
    EastFilled,
    EastEmpty,
    South,
}

impl Step {
    pub fn height_change(self) -> i64 {
        match self {
            Step::North => 1,
            Step::South => -1,
            Step::EastFilled | Step::EastEmpty => 0,
        }
    }

    /// Occupancy of the site this step encodes.
    pub fn occupied(self) -> bool {
        matches!(self, Step::North | Step::EastFilled)
    }
}

/// A step sequence whose prefix heights never go below zero.  Closed paths
/// (ending back at height zero) form the path space behind the stationary
/// measure; open prefixes are allowed as a working form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSequence {
    steps: Vec<Step>,
}

impl StepSequence {
    pub fn new(steps: Vec<Step>) -> Result<Self, CoreError> {
        let mut h = 0i64;
        for (i, s) in steps.iter().enumerate() {
            h += s.height_change();
            if h < 0 {
                return Err(CoreError::Validation {
                    field: "steps",
                    message: format!("height drops below zero after step {}", i + 1),
                });
            }
        }
        Ok(Self { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Heights after each step (length `len() + 1`, starting at 0).
    pub fn heights(&self) -> Vec<i64> {
        let mut hs = Vec::with_capacity(self.steps.len() + 1);
        hs.push(0);
        let mut h = 0i64;
        for s in &self.steps {
            h += s.height_change();
            hs.push(h);
        }
        hs
    }

    /// Whether the path returns to height zero (membership in the closed
    /// path space of its length).
    pub fn is_closed(&self) -> bool {
        self.steps.iter().map(|s| s.height_change()).sum::<i64>() == 0
    }

    /// The particle configuration this path encodes, as a bit mask with
    /// site `i` at bit `i-1`.
    pub fn occupancy(&self) -> usize {
        let mut mask = 0usize;
        for (i, s) in self.steps.iter().enumerate() {
            if s.occupied() {
                mask |= 1 << i;
            }
        }
        mask
    }
}

/// Weight of a single step.  Diagonal steps are indexed by the height of
/// their lower endpoint (`h_base`): a North step from `h` and a South step
/// ending at `h` both read `h_base = h`.  East steps are indexed by the
/// height they travel at.  The filled flat color carries the exit-side
/// parameter `v` and the empty color the entry-side parameter `u`, the
/// pairing fixed by matching the stationary measure of the generator.
pub fn step_weight(step: Step, h_base: i64, p: &ModelParams) -> Result<f64, CoreError> {
    if h_base < 0 {
        return Err(CoreError::Validation {
            field: "h_base",
            message: format!("step height must be non-negative, got {h_base}"),
        });
    }
    let q = p.q;
    let scale = 1.0 - q;
    let h = h_base as i32;
    Ok(match step {
        Step::North => scale * (1.0 - q.powi(h + 1)),
        Step::South => scale * (1.0 - p.u * p.v * q.powi(h)),
        Step::EastFilled => scale * (1.0 + p.v * q.powi(h)),
        Step::EastEmpty => scale * (1.0 + p.u * q.powi(h)),
    })
}

/// Product of step weights along the path, with the base-height convention
/// of `step_weight`.
pub fn total_weight(omega: &StepSequence, p: &ModelParams) -> f64 {
    let mut h = 0i64;
    let mut product = 1.0;
    for s in omega.steps() {
        let base = match s {
            Step::North | Step::EastFilled | Step::EastEmpty => h,
            Step::South => h - 1,
        };
        product *= step_weight(*s, base, p).expect("prefix heights are non-negative");
        h += s.height_change();
    }
    product
}
