use asep_core::{bernoulli_profile, ConfigDist, CoreError};

use crate::system::ShockSystem;

/// Bernoulli product measure with shocks at the strictly increasing sites
/// `x`: site `x_i` carries the shock density, sites strictly between `x_i`
/// and `x_{i+1}` carry the bulk density `rho[i + y]`, with the conventions
/// `x_0 = 0` and `x_{|x|+1} = n + 1`.  `y` shifts the whole ladder.
pub fn shock_measure(
    x: &[usize],
    y: usize,
    s: &ShockSystem,
    n: usize,
) -> Result<ConfigDist, CoreError> {
    for (idx, &site) in x.iter().enumerate() {
        let ok = site >= 1 && site <= n && (idx == 0 || x[idx - 1] < site);
        if !ok {
            return Err(CoreError::Validation {
                field: "x",
                message: format!(
                    "shock sites must be strictly increasing within 1..={n}; got {x:?}"
                ),
            });
        }
    }
    if x.len() + y > s.k {
        return Err(CoreError::Validation {
            field: "y",
            message: format!(
                "ladder shift must satisfy |x| + y <= k = {}; got |x| = {} and y = {y}",
                s.k,
                x.len()
            ),
        });
    }
    let mut probs = vec![0.0f64; n];
    for segment in 0..=x.len() {
        let lo = if segment == 0 { 0 } else { x[segment - 1] };
        let hi = if segment == x.len() { n + 1 } else { x[segment] };
        for site in lo + 1..hi {
            probs[site - 1] = s.rho[segment + y];
        }
        if segment < x.len() {
            probs[x[segment] - 1] = s.rho_star;
        }
    }
    bernoulli_profile(&probs)
}

const MAX_LOCATION_STATES: usize = 10_000_000;

/// Stationary law of the dual shock-location chain: an ordered tuple of
/// `shocks` positions in `1..=n` with weight proportional to the product of
/// `d[i]^{x_i}`.  States are stored in lexicographic order.
#[derive(Debug, Clone)]
pub struct ShockLocationDist {
    n: usize,
    shocks: usize,
    probs: Vec<f64>,
}

/// Visits every strictly increasing `m`-tuple from `1..=n` in lexicographic
/// order.
pub(crate) fn for_each_combination(n: usize, m: usize, mut f: impl FnMut(&[usize])) {
    if m == 0 {
        f(&[]);
        return;
    }
    if m > n {
        return;
    }
    let mut tuple: Vec<usize> = (1..=m).collect();
    loop {
        f(&tuple);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if tuple[i] < n - (m - 1 - i) {
                tuple[i] += 1;
                for j in i + 1..m {
                    tuple[j] = tuple[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 1..=k {
        acc = acc * ((n - k + i) as f64) / (i as f64);
    }
    acc
}

pub fn dual_stationary(
    n: usize,
    shock_count: usize,
    d: &[f64],
) -> Result<ShockLocationDist, CoreError> {
    if d.len() != shock_count {
        return Err(CoreError::LengthMismatch { left: shock_count, right: d.len() });
    }
    if shock_count > n {
        return Err(CoreError::Validation {
            field: "shock_count",
            message: format!("cannot place {shock_count} ordered shocks on {n} sites"),
        });
    }
    if d.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(CoreError::Validation {
            field: "d",
            message: format!("bias ratios must be positive and finite; got {d:?}"),
        });
    }
    let states = binomial(n, shock_count);
    if states > MAX_LOCATION_STATES as f64 {
        return Err(CoreError::Capacity {
            what: "shock location states",
            limit: MAX_LOCATION_STATES,
            got: if states > usize::MAX as f64 { usize::MAX } else { states as usize },
        });
    }
    let lnd: Vec<f64> = d.iter().map(|x| x.ln()).collect();
    let mut logs = Vec::with_capacity(states as usize);
    for_each_combination(n, shock_count, |tuple| {
        let lw: f64 = tuple.iter().zip(&lnd).map(|(&xi, &l)| xi as f64 * l).sum();
        logs.push(lw);
    });
    let peak = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut probs: Vec<f64> = logs.iter().map(|&l| (l - peak).exp()).collect();
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    Ok(ShockLocationDist { n, shocks: shock_count, probs })
}

impl ShockLocationDist {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shocks(&self) -> usize {
        self.shocks
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    /// The position tuple behind a lexicographic state index.
    pub fn positions(&self, mut index: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.shocks);
        let mut lo = 1usize;
        for rem in (1..=self.shocks).rev() {
            let mut a = lo;
            loop {
                let with_a = binomial(self.n - a, rem - 1).round() as usize;
                if index < with_a {
                    break;
                }
                index -= with_a;
                a += 1;
            }
            out.push(a);
            lo = a + 1;
        }
        out
    }

    /// Visits `(state index, positions)` for every state in order.
    pub fn for_each_state(&self, mut f: impl FnMut(usize, &[usize])) {
        let mut index = 0usize;
        for_each_combination(self.n, self.shocks, |tuple| {
            f(index, tuple);
            index += 1;
        });
    }

    /// `P(x_1 >= n - c)`: the chance the left-most shock sits within `c`
    /// sites of the right end.
    pub fn leftmost_tail(&self, c: usize) -> f64 {
        let threshold = self.n.saturating_sub(c);
        let mut acc = 0.0;
        self.for_each_state(|index, tuple| {
            if tuple.first().map_or(true, |&x1| x1 >= threshold) {
                acc += self.probs[index];
            }
        });
        acc
    }

    /// Mean position of the left-most shock.
    pub fn leftmost_mean(&self) -> f64 {
        let mut acc = 0.0;
        self.for_each_state(|index, tuple| {
            if let Some(&x1) = tuple.first() {
                acc += x1 as f64 * self.probs[index];
            }
        });
        acc
    }
}

/// Exact tail probability of the left-most dual shock position.
pub fn leftmost_shock_tail(
    n: usize,
    shock_count: usize,
    d: &[f64],
    c: usize,
) -> Result<f64, CoreError> {
    Ok(dual_stationary(n, shock_count, d)?.leftmost_tail(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::bulk_densities;
    use crate::system::tests::params_uv;
    use asep_core::bernoulli_product;

    #[test]
    fn low_density_single_shock_products() {
        let s = bulk_densities(&params_uv(3, 0.5, 2.0, 1.0), 1).unwrap();
        let m = shock_measure(&[2], 0, &s, 3).unwrap();
        assert!((m.prob(0b111) - 1.0 / 6.0).abs() < 1e-14);
        // Site 2 is forced occupied, so any configuration with a hole there
        // has no mass.
        assert_eq!(m.prob(0b101), 0.0);
        assert!((m.single_site_marginal(1).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert!((m.single_site_marginal(3).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn empty_shock_set_is_a_plain_bernoulli_product() {
        let s = bulk_densities(&params_uv(4, 0.5, 4.0, 1.0), 2).unwrap();
        for y in 0..=2usize {
            let m = shock_measure(&[], y, &s, 4).unwrap();
            let plain = bernoulli_product(s.rho[y], 4).unwrap();
            for c in 0..16 {
                assert!((m.prob(c) - plain.prob(c)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn invalid_shock_layouts_are_refused() {
        let s = bulk_densities(&params_uv(4, 0.5, 2.0, 1.0), 1).unwrap();
        assert!(shock_measure(&[0], 0, &s, 4).is_err());
        assert!(shock_measure(&[5], 0, &s, 4).is_err());
        assert!(shock_measure(&[2, 2], 0, &s, 4).is_err());
        assert!(shock_measure(&[3, 2], 0, &s, 4).is_err());
        assert!(shock_measure(&[2], 1, &s, 4).is_err());
        assert!(shock_measure(&[1], 0, &s, 4).is_ok());
    }

    #[test]
    fn single_shock_dual_weights() {
        let d = dual_stationary(3, 1, &[2.0]).unwrap();
        let want = [1.0 / 7.0, 2.0 / 7.0, 4.0 / 7.0];
        for (i, w) in want.iter().enumerate() {
            assert!((d.prob(i) - w).abs() < 1e-14);
            assert_eq!(d.positions(i), vec![i + 1]);
        }
    }

    #[test]
    fn unit_bias_is_uniform() {
        let d = dual_stationary(5, 1, &[1.0]).unwrap();
        for i in 0..5 {
            assert!((d.prob(i) - 0.2).abs() < 1e-14);
        }
        let d = dual_stationary(4, 2, &[1.0, 1.0]).unwrap();
        assert_eq!(d.len(), 6);
        for i in 0..6 {
            assert!((d.prob(i) - 1.0 / 6.0).abs() < 1e-14);
        }
    }

    #[test]
    fn enumeration_order_and_unranking_agree() {
        let d = dual_stationary(6, 3, &[1.1, 1.2, 1.3]).unwrap();
        d.for_each_state(|index, tuple| {
            assert_eq!(d.positions(index), tuple);
        });
        assert_eq!(d.len(), 20);
    }

    #[test]
    fn oversized_state_spaces_are_refused() {
        let d = vec![1.5; 10];
        let err = dual_stationary(50, 10, &d).unwrap_err();
        assert!(matches!(err, CoreError::Capacity { .. }));
    }

    #[test]
    fn leftmost_tail_values() {
        assert!((leftmost_shock_tail(3, 1, &[2.0], 0).unwrap() - 4.0 / 7.0).abs() < 1e-14);
        assert!((leftmost_shock_tail(3, 1, &[2.0], 2).unwrap() - 1.0).abs() < 1e-14);
        assert!((leftmost_shock_tail(8, 1, &[2.0], 7).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fixed_window_tail_approaches_its_limit_from_above() {
        // With bias d per site, the tail P(x_1 >= n - c) starts at 1 and
        // settles from above onto 1 - d^{-(c+1)} as n grows; the right-end
        // concentration shows up as the mean position tracking n.
        let limit = 1.0 - 2.0f64.powi(-5);
        let mut prev = f64::INFINITY;
        let mut prev_mean = 0.0;
        for n in [10usize, 20, 40] {
            let dist = dual_stationary(n, 1, &[2.0]).unwrap();
            let tail = dist.leftmost_tail(4);
            assert!(tail > limit && tail < prev, "n={n}: {tail}");
            prev = tail;
            let mean = dist.leftmost_mean();
            assert!(mean > prev_mean, "mean at n={n}");
            prev_mean = mean;
        }
    }

    #[test]
    fn dual_chain_detailed_balance() {
        use std::collections::HashMap;
        for (u, k) in [(2.0, 1usize), (4.0, 2)] {
            let s = bulk_densities(&params_uv(4, 0.5, u, 1.0), k).unwrap();
            let n = 6usize;
            let dist = dual_stationary(n, k, &s.d).unwrap();
            let mut rank: HashMap<Vec<usize>, usize> = HashMap::new();
            dist.for_each_state(|index, tuple| {
                rank.insert(tuple.to_vec(), index);
            });
            dist.for_each_state(|index, tuple| {
                for i in 0..k {
                    let blocked = if i + 1 < k { tuple[i] + 1 == tuple[i + 1] } else { tuple[i] == n };
                    if blocked {
                        continue;
                    }
                    let mut moved = tuple.to_vec();
                    moved[i] += 1;
                    let target = rank[&moved];
                    let (right, left) = dual_jump_rates(&s, i + 1).unwrap();
                    let flow = dist.prob(index) * right;
                    let back = dist.prob(target) * left;
                    assert!(
                        (flow - back).abs() <= 1e-13 * flow.abs().max(back.abs()),
                        "balance broken at {tuple:?} particle {i}"
                    );
                }
            });
        }
    }
}
