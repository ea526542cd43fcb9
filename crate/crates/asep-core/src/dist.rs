use std::io::Write;

use crate::CoreError;

/// Dense distributions are capped at this many sites (`2^24` entries);
/// larger marginals must go through the transfer-matrix path.
pub const MAX_DENSE_SITES: usize = 24;

/// Entries this far below zero (relative to the total mass) are treated as
/// round-off dust and clamped during normalization; anything more negative is
/// a genuinely signed weight vector and refuses to normalize.
const SIGNED_DUST_TOL: f64 = 1e-9;

/// A finitely-supported distribution over binary configurations of `len`
/// sites, stored densely: entry `m` is the weight of the configuration whose
/// site `i` holds a particle exactly when bit `i-1` of `m` is set (site 1 is
/// the lowest-order bit).
///
/// Signed weight vectors are permitted as an intermediate form (mixture
/// algebra produces them); `normalize` converts to a probability vector and
/// fails if the weights are not, up to round-off, a nonnegative vector with
/// positive total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDist {
    len: usize,
    weights: Vec<f64>,
    normalized: bool,
}

impl ConfigDist {
    /// Wraps a raw (possibly signed, unnormalized) weight vector.
    pub fn from_weights(len: usize, weights: Vec<f64>) -> Result<Self, CoreError> {
        if len == 0 || len > MAX_DENSE_SITES {
            return Err(CoreError::Capacity { what: "interval length", limit: MAX_DENSE_SITES, got: len });
        }
        if weights.len() != 1usize << len {
            return Err(CoreError::LengthMismatch { left: 1usize << len, right: weights.len() });
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(CoreError::Validation {
                field: "weights",
                message: "entries must be finite".into(),
            });
        }
        Ok(Self { len, weights, normalized: false })
    }

    /// Wraps and normalizes in one step.
    pub fn normalized_from_weights(len: usize, weights: Vec<f64>) -> Result<Self, CoreError> {
        let mut d = Self::from_weights(len, weights)?;
        d.normalize()?;
        Ok(d)
    }

    /// The point mass on a single configuration (given as a bit mask).
    pub fn point_mass(len: usize, config: usize) -> Result<Self, CoreError> {
        if len == 0 || len > MAX_DENSE_SITES {
            return Err(CoreError::Capacity { what: "interval length", limit: MAX_DENSE_SITES, got: len });
        }
        if config >= 1usize << len {
            return Err(CoreError::Validation {
                field: "config",
                message: format!("mask {config} does not fit in {len} sites"),
            });
        }
        let mut weights = vec![0.0; 1usize << len];
        weights[config] = 1.0;
        Ok(Self { len, weights, normalized: true })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight of one configuration (probability once normalized).
    pub fn prob(&self, config: usize) -> f64 {
        self.weights[config]
    }

    /// Scales the weights to total mass 1.  Small negative round-off dust is
    /// clamped to zero; hard negative entries or a nonpositive total are
    /// rejected.
    pub fn normalize(&mut self) -> Result<(), CoreError> {
        let total: f64 = self.weights.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            let min_entry = self.weights.iter().cloned().fold(f64::INFINITY, f64::min);
            return Err(CoreError::SignedMass { total, min_entry });
        }
        let min_entry = self.weights.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_entry < -SIGNED_DUST_TOL * total {
            return Err(CoreError::SignedMass { total, min_entry });
        }
        for w in &mut self.weights {
            *w = (*w / total).max(0.0);
        }
        // Clamping may have moved the sum off 1 by a sliver; rescale once more
        // so downstream equality checks see mass 1 to machine precision.
        let total: f64 = self.weights.iter().sum();
        for w in &mut self.weights {
            *w /= total;
        }
        self.normalized = true;
        Ok(())
    }

    /// P(site occupied) for a 1-based site index.
    pub fn single_site_marginal(&self, site: usize) -> Result<f64, CoreError> {
        if site == 0 || site > self.len {
            return Err(CoreError::InvalidInterval { a: site, b: site, len: self.len });
        }
        let bit = 1usize << (site - 1);
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|(m, _)| m & bit != 0)
            .map(|(_, w)| w)
            .sum())
    }

    /// Mean number of particles.
    pub fn expected_particles(&self) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(m, w)| m.count_ones() as f64 * w)
            .sum()
    }

    /// Writes `config,probability` rows, site 1 leftmost in the binary string,
    /// probabilities with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "config,probability")?;
        for (m, w) in self.weights.iter().enumerate() {
            writeln!(out, "{},{:.16e}", config_string(m, self.len), w)?;
        }
        Ok(())
    }
}

/// Binary-string form of a configuration mask, site 1 leftmost.
pub fn config_string(config: usize, len: usize) -> String {
    (0..len)
        .map(|i| if config >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a site-1-leftmost binary string back into a mask.
pub fn parse_config(s: &str) -> Result<(usize, usize), CoreError> {
    if s.is_empty() || s.len() > MAX_DENSE_SITES {
        return Err(CoreError::Capacity { what: "interval length", limit: MAX_DENSE_SITES, got: s.len() });
    }
    let mut mask = 0usize;
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => mask |= 1usize << i,
            '0' => {}
            _ => {
                return Err(CoreError::Validation {
                    field: "config",
                    message: format!("expected a binary string, got {s:?}"),
                })
            }
        }
    }
    Ok((mask, s.len()))
}

/// Half the L1 distance between two normalized distributions on the same
/// interval; lies in [0, 1].
pub fn tv_distance(a: &ConfigDist, b: &ConfigDist) -> Result<f64, CoreError> {
    if a.len != b.len {
        return Err(CoreError::LengthMismatch { left: a.len, right: b.len });
    }
    if !a.normalized || !b.normalized {
        return Err(CoreError::Validation {
            field: "distribution",
            message: "total variation requires normalized distributions".into(),
        });
    }
    let sum: f64 = a
        .weights
        .iter()
        .zip(&b.weights)
        .map(|(x, y)| (x - y).abs())
        .sum();
    Ok((sum / 2.0).min(1.0))
}

/// Marginal of `d` on the 1-based inclusive window `interval = (a, b)`.
pub fn project(d: &ConfigDist, interval: (usize, usize)) -> Result<ConfigDist, CoreError> {
    let (a, b) = interval;
    if a == 0 || a > b || b > d.len {
        return Err(CoreError::InvalidInterval { a, b, len: d.len });
    }
    let sub_len = b - a + 1;
    let mask = (1usize << sub_len) - 1;
    let mut weights = vec![0.0; 1usize << sub_len];
    for (m, w) in d.weights.iter().enumerate() {
        weights[m >> (a - 1) & mask] += w;
    }
    let mut out = ConfigDist { len: sub_len, weights, normalized: d.normalized };
    if d.normalized {
        // Projection preserves mass exactly up to addition order; renormalize
        // to keep the sum-to-one invariant tight.
        out.normalize()?;
    }
    Ok(out)
}

/// The product measure with P(site occupied) = `rho` at every site.
pub fn bernoulli_product(rho: f64, len: usize) -> Result<ConfigDist, CoreError> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(CoreError::Validation {
            field: "rho",
            message: format!("density must lie in [0, 1], got {rho}"),
        });
    }
    if len == 0 || len > MAX_DENSE_SITES {
        return Err(CoreError::Capacity { what: "interval length", limit: MAX_DENSE_SITES, got: len });
    }
    let mut weights = Vec::with_capacity(1usize << len);
    for m in 0..1usize << len {
        let ones = m.count_ones() as i32;
        weights.push(rho.powi(ones) * (1.0 - rho).powi(len as i32 - ones));
    }
    let mut d = ConfigDist { len, weights, normalized: true };
    d.normalize()?;
    Ok(d)
}

/// Product measure with a per-site density profile (site 1 first).
pub fn bernoulli_profile(rhos: &[f64]) -> Result<ConfigDist, CoreError> {
    let len = rhos.len();
    if len == 0 || len > MAX_DENSE_SITES {
        return Err(CoreError::Capacity { what: "interval length", limit: MAX_DENSE_SITES, got: len });
    }
    for (i, r) in rhos.iter().enumerate() {
        if !(0.0..=1.0).contains(r) {
            return Err(CoreError::Validation {
                field: "rho",
                message: format!("density at site {} must lie in [0, 1], got {r}", i + 1),
            });
        }
    }
    let mut weights = vec![1.0; 1usize << len];
    for (m, w) in weights.iter_mut().enumerate() {
        for (i, r) in rhos.iter().enumerate() {
            *w *= if m >> i & 1 == 1 { *r } else { 1.0 - *r };
        }
    }
    let mut d = ConfigDist { len, weights, normalized: true };
    d.normalize()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(len: usize, weights: &[f64]) -> ConfigDist {
        ConfigDist::normalized_from_weights(len, weights.to_vec()).unwrap()
    }

    #[test]
    fn tv_basic_cases() {
        let a = dist(2, &[0.25, 0.25, 0.25, 0.25]);
        assert_eq!(tv_distance(&a, &a).unwrap(), 0.0);

        let p = ConfigDist::point_mass(2, 0b01).unwrap();
        let r = ConfigDist::point_mass(2, 0b10).unwrap();
        assert_eq!(tv_distance(&p, &r).unwrap(), 1.0);

        let b1 = bernoulli_product(0.3, 1).unwrap();
        let b2 = bernoulli_product(0.8, 1).unwrap();
        assert!((tv_distance(&b1, &b2).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tv_rejects_mismatch() {
        let a = dist(2, &[1.0, 1.0, 1.0, 1.0]);
        let b = dist(1, &[1.0, 1.0]);
        assert!(tv_distance(&a, &b).is_err());
    }

    #[test]
    fn projection_full_interval_is_identity() {
        let a = dist(3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let p = project(&a, (1, 3)).unwrap();
        for m in 0..8 {
            assert!((p.prob(m) - a.prob(m)).abs() < 1e-15);
        }
    }

    #[test]
    fn projection_matches_hand_marginal() {
        // Stationary weights for two sites at q=0, alpha=beta=1, indexed
        // 00,10,01,11; occupied-site-2 mass is 1/5 + 1/5.
        let mu = dist(2, &[1.0, 2.0, 1.0, 1.0]);
        let site2 = project(&mu, (2, 2)).unwrap();
        assert!((site2.prob(1) - 0.4).abs() < 1e-15);

        let point = ConfigDist::point_mass(3, 0b101).unwrap();
        let left = project(&point, (1, 2)).unwrap();
        assert_eq!(left.prob(0b01), 1.0);
    }

    #[test]
    fn bernoulli_products() {
        let b = bernoulli_product(0.5, 2).unwrap();
        for m in 0..4 {
            assert!((b.prob(m) - 0.25).abs() < 1e-15);
        }
        let b = bernoulli_product(0.0, 3).unwrap();
        assert_eq!(b.prob(0), 1.0);
        let b = bernoulli_product(1.0 / 3.0, 1).unwrap();
        assert!((b.prob(1) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn profile_marginals() {
        let d = bernoulli_profile(&[0.1, 0.9, 0.5]).unwrap();
        assert!((d.single_site_marginal(1).unwrap() - 0.1).abs() < 1e-12);
        assert!((d.single_site_marginal(2).unwrap() - 0.9).abs() < 1e-12);
        assert!((d.single_site_marginal(3).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn signed_weights_refuse_to_normalize() {
        let mut d = ConfigDist::from_weights(1, vec![0.7, -0.3]).unwrap();
        assert!(matches!(d.normalize(), Err(CoreError::SignedMass { .. })));

        let mut d = ConfigDist::from_weights(1, vec![1.0, -1e-15]).unwrap();
        d.normalize().unwrap();
        assert_eq!(d.prob(1), 0.0);
    }

    #[test]
    fn config_strings_put_site_one_leftmost() {
        assert_eq!(config_string(0b001, 3), "100");
        assert_eq!(config_string(0b110, 3), "011");
        assert_eq!(parse_config("100").unwrap(), (0b001, 3));
        assert_eq!(parse_config("011").unwrap(), (0b110, 3));
        assert!(parse_config("01x").is_err());
    }

    #[test]
    fn csv_round_trip_text() {
        let d = dist(2, &[1.0, 2.0, 1.0, 1.0]);
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "config,probability");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("00,"));
        assert!(lines[2].starts_with("10,"));
        let p: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
        assert!((p - 0.4).abs() < 1e-15);
    }
}
