use asep_core::{CoreError, ModelParams};

/// Largest segment the exact path will enumerate (`2^20` states).
pub const MAX_EXACT_SITES: usize = 20;

/// Sparse rate matrix of the process over all `2^n` configurations, stored
/// row-compressed: state `s` has the outgoing transitions
/// `targets[offsets[s]..offsets[s+1]]` with matching positive rates, and the
/// diagonal entry is minus their sum.  Configuration bits follow the
/// site-`i` = bit-`i-1` convention of `ConfigDist`.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    n: usize,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    rates: Vec<f64>,
}

impl GeneratorMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_states(&self) -> usize {
        1usize << self.n
    }

    /// Outgoing (target, rate) pairs of one state.
    pub fn transitions(&self, state: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let lo = self.offsets[state] as usize;
        let hi = self.offsets[state + 1] as usize;
        self.targets[lo..hi]
            .iter()
            .zip(&self.rates[lo..hi])
            .map(|(t, r)| (*t as usize, *r))
    }

    /// Total exit rate of one state (minus the diagonal entry).
    pub fn exit_rate(&self, state: usize) -> f64 {
        let lo = self.offsets[state] as usize;
        let hi = self.offsets[state + 1] as usize;
        self.rates[lo..hi].iter().sum()
    }

    pub fn max_exit_rate(&self) -> f64 {
        (0..self.num_states()).map(|s| self.exit_rate(s)).fold(0.0, f64::max)
    }

    pub fn max_out_degree(&self) -> usize {
        self.offsets
            .windows(2)
            .map(|w| (w[1] - w[0]) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Writes the row vector `pi * L` into `out`.
    pub fn apply_left(&self, pi: &[f64], out: &mut [f64]) {
        assert_eq!(pi.len(), self.num_states());
        assert_eq!(out.len(), self.num_states());
        out.fill(0.0);
        for s in 0..self.num_states() {
            let mass = pi[s];
            if mass == 0.0 {
                continue;
            }
            let lo = self.offsets[s] as usize;
            let hi = self.offsets[s + 1] as usize;
            let mut exit = 0.0;
            for (t, r) in self.targets[lo..hi].iter().zip(&self.rates[lo..hi]) {
                out[*t as usize] += mass * r;
                exit += r;
            }
            out[s] -= mass * exit;
        }
    }
}

/// Enumerates every transition of the process on `1..=p.n`: a particle hops
/// right over a vacancy at rate 1 and left at rate `q`; site 1 fills at rate
/// `alpha` when empty; site `n` empties at rate `beta` when occupied.
pub fn build_generator(p: &ModelParams) -> Result<GeneratorMatrix, CoreError> {
    if p.n > MAX_EXACT_SITES {
        return Err(CoreError::Capacity {
            what: "exact generator",
            limit: MAX_EXACT_SITES,
            got: p.n,
        });
    }
    let n = p.n;
    let states = 1usize << n;
    let last_bit = 1usize << (n - 1);
    let mut offsets = Vec::with_capacity(states + 1);
    let mut targets = Vec::new();
    let mut rates = Vec::new();
    offsets.push(0u32);
    for s in 0..states {
        if s & 1 == 0 {
            targets.push((s | 1) as u32);
            rates.push(p.alpha);
        }
        if s & last_bit != 0 {
            targets.push((s & !last_bit) as u32);
            rates.push(p.beta);
        }
        for x in 0..n - 1 {
            let pair = s >> x & 0b11;
            if pair == 0b01 {
                targets.push((s ^ (0b11 << x)) as u32);
                rates.push(1.0);
            } else if pair == 0b10 && p.q > 0.0 {
                targets.push((s ^ (0b11 << x)) as u32);
                rates.push(p.q);
            }
        }
        offsets.push(targets.len() as u32);
    }
    Ok(GeneratorMatrix { n, offsets, targets, rates })
}
