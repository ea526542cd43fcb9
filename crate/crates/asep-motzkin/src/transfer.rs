use asep_core::{CoreError, LogScaled};

/// Height-indexed step weights for a walk with increments in {-1, 0, +1}
/// above a hard wall at zero.  `up[h]` weighs the step `h -> h+1`, `down[h]`
/// the step `h+1 -> h` (indexed by the lower endpoint), and `flat[h]` the
/// step `h -> h` with any internal branching already summed.  All vectors
/// share the length `cap + 1`; `up[cap]` and `down[cap]` are never read.
#[derive(Debug, Clone)]
pub struct HeightWeights {
    pub up: Vec<f64>,
    pub down: Vec<f64>,
    pub flat: Vec<f64>,
}

impl HeightWeights {
    pub fn cap(&self) -> usize {
        self.flat.len() - 1
    }

    /// Weight of the step from `h` to `h_next`; zero outside `|dh| <= 1` or
    /// above the cap.
    pub fn step(&self, h: usize, h_next: usize) -> f64 {
        if h > self.cap() || h_next > self.cap() {
            return 0.0;
        }
        if h_next == h {
            self.flat[h]
        } else if h_next == h + 1 {
            self.up[h]
        } else if h_next + 1 == h {
            self.down[h_next]
        } else {
            0.0
        }
    }
}

/// Whether the endpoint of the walk is pinned back to height zero
/// (`Constraint`) or free (`Free`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Free,
    Constraint,
}

/// Forward and backward partial-sum tables of the height walk, one ragged
/// column per position, each column renormalized with its running log offset
/// so lengths in the thousands stay inside f64 range.  Probabilities are
/// only ever formed from same-column ratios.
#[derive(Debug, Clone)]
pub struct TransferTables {
    n: usize,
    h_max: usize,
    mode: Mode,
    weights: HeightWeights,
    forward: Vec<Vec<f64>>,
    forward_log: Vec<f64>,
    backward: Vec<Vec<f64>>,
    backward_log: Vec<f64>,
}

impl TransferTables {
    /// Builds both tables.  `h_max` caps the stored height range; ranges are
    /// additionally clipped by reachability (`h <= position`, and in
    /// Constraint mode `h <= n - position`).  Signed weights are accepted —
    /// summation stays correct — but sampling and marginals then refuse.
    pub fn build(
        n: usize,
        weights: HeightWeights,
        mode: Mode,
        h_max: usize,
    ) -> Result<Self, CoreError> {
        if weights.up.len() != weights.flat.len() || weights.down.len() != weights.flat.len() {
            return Err(CoreError::LengthMismatch {
                left: weights.flat.len(),
                right: weights.up.len().max(weights.down.len()),
            });
        }
        let h_max = h_max.min(weights.cap());
        let col_top = |i: usize| -> usize {
            match mode {
                Mode::Free => i.min(h_max),
                Mode::Constraint => i.min(n - i).min(h_max),
            }
        };

        let mut forward: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        let mut forward_log = Vec::with_capacity(n + 1);
        forward.push(vec![1.0]);
        forward_log.push(0.0);
        for i in 0..n {
            let prev = &forward[i];
            let prev_top = prev.len() - 1;
            let top = col_top(i + 1);
            let mut col = vec![0.0; top + 1];
            for h in 0..=prev_top.min(top) {
                col[h] += prev[h] * weights.flat[h];
            }
            for h in 0..=prev_top {
                if h + 1 <= top {
                    col[h + 1] += prev[h] * weights.up[h];
                }
                if h > 0 && h - 1 <= top {
                    col[h - 1] += prev[h] * weights.down[h - 1];
                }
            }
            let (scaled, log) = rescale(col);
            forward_log.push(forward_log[i] + log);
            forward.push(scaled);
        }

        let mut backward: Vec<Vec<f64>> = vec![Vec::new(); n + 1];
        let mut backward_log = vec![0.0; n + 1];
        backward[n] = match mode {
            Mode::Constraint => vec![1.0],
            Mode::Free => vec![1.0; col_top(n) + 1],
        };
        for i in (0..n).rev() {
            let next = &backward[i + 1];
            let next_top = next.len() - 1;
            let top = col_top(i);
            let mut col = vec![0.0; top + 1];
            for h in 0..=top {
                if h <= next_top {
                    col[h] += weights.flat[h] * next[h];
                }
                if h + 1 <= next_top {
                    col[h] += weights.up[h] * next[h + 1];
                }
                if h > 0 && h - 1 <= next_top {
                    col[h] += weights.down[h - 1] * next[h - 1];
                }
            }
            let (scaled, log) = rescale(col);
            backward_log[i] = backward_log[i + 1] + log;
            backward[i] = scaled;
        }

        Ok(Self { n, h_max, mode, weights, forward, forward_log, backward, backward_log })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h_max(&self) -> usize {
        self.h_max
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn weights(&self) -> &HeightWeights {
        &self.weights
    }

    /// Scaled forward column at a position together with its log offset:
    /// true values are `column * exp(log)`.
    pub fn forward_column(&self, position: usize) -> (&[f64], f64) {
        (&self.forward[position], self.forward_log[position])
    }

    pub fn backward_column(&self, position: usize) -> (&[f64], f64) {
        (&self.backward[position], self.backward_log[position])
    }

    /// Total weight of the walk space (the partition value).
    pub fn partition(&self) -> LogScaled {
        let (col, log) = self.forward_column(self.n);
        let total: f64 = match self.mode {
            Mode::Constraint => col[0],
            Mode::Free => col.iter().sum(),
        };
        LogScaled::from_mantissa_log(total, log)
    }

    /// Exact height distribution at a position, a same-column
    /// forward-times-backward ratio.  Refuses on signed weights.
    pub fn height_marginal(&self, position: usize) -> Result<Vec<f64>, CoreError> {
        if position > self.n {
            return Err(CoreError::InvalidInterval { a: position, b: position, len: self.n });
        }
        let f = &self.forward[position];
        let b = &self.backward[position];
        let mut probs: Vec<f64> = f
            .iter()
            .zip(b.iter().chain(std::iter::repeat(&0.0)))
            .map(|(x, y)| x * y)
            .collect();
        let total: f64 = probs.iter().sum();
        let min = probs.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(total > 0.0) || min < -1e-12 * total {
            return Err(CoreError::SignedMass { total, min_entry: min });
        }
        for p in &mut probs {
            *p = (*p / total).max(0.0);
        }
        Ok(probs)
    }

    /// Tail mass `P(height at position >= j)`.
    pub fn height_tail(&self, position: usize, j: usize) -> Result<f64, CoreError> {
        let marginal = self.height_marginal(position)?;
        Ok(marginal.iter().skip(j).sum())
    }

    /// Draws one height path (length `n + 1`, starting at 0) exactly from
    /// the normalized walk measure, returning the path and the log of its
    /// unnormalized weight.  `uniforms` must yield independent U(0,1) draws.
    pub fn sample_heights(
        &self,
        mut uniform: impl FnMut() -> f64,
    ) -> Result<(Vec<usize>, f64), CoreError> {
        let mut heights = Vec::with_capacity(self.n + 1);
        heights.push(0usize);
        let mut log_weight = 0.0;
        let mut h = 0usize;
        for i in 0..self.n {
            let next = &self.backward[i + 1];
            let next_top = next.len() - 1;
            let mut opts: [(usize, f64, f64); 3] = [(0, 0.0, 0.0); 3];
            let mut count = 0;
            for cand in [h.wrapping_sub(1), h, h + 1] {
                if cand == usize::MAX || cand > next_top {
                    continue;
                }
                let w = self.weights.step(h, cand);
                if w == 0.0 {
                    continue;
                }
                if w < 0.0 {
                    return Err(CoreError::SignedMass { total: w, min_entry: w });
                }
                opts[count] = (cand, w, w * next[cand]);
                count += 1;
            }
            let total: f64 = opts[..count].iter().map(|o| o.2).sum();
            if !(total > 0.0) {
                return Err(CoreError::Numerical { what: "path sampling", residual: total });
            }
            let mut draw = uniform() * total;
            let mut chosen = opts[count - 1];
            for o in &opts[..count] {
                if draw < o.2 {
                    chosen = *o;
                    break;
                }
                draw -= o.2;
            }
            log_weight += chosen.1.ln();
            h = chosen.0;
            heights.push(h);
        }
        Ok((heights, log_weight))
    }
}

fn rescale(mut col: Vec<f64>) -> (Vec<f64>, f64) {
    let max = col.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 || !max.is_finite() {
        return (col, 0.0);
    }
    for x in &mut col {
        *x /= max;
    }
    (col, max.ln())
}
