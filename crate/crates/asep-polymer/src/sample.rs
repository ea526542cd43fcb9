use asep_core::CoreError;
use asep_motzkin::TransferTables;
use rand::Rng;

/// One exact draw from the walk measure: heights at positions `0..=n` and
/// the log of the path's unnormalized weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PolymerSample {
    pub heights: Vec<usize>,
    pub log_weight: f64,
}

/// Draws a path exactly from the normalized measure the tables encode.
/// Deterministic given the generator state; distinct seeded streams sample
/// independently.
pub fn sample_path<R: Rng + ?Sized>(
    tables: &TransferTables,
    rng: &mut R,
) -> Result<PolymerSample, CoreError> {
    let (heights, log_weight) = tables.sample_heights(|| rng.gen::<f64>())?;
    Ok(PolymerSample { heights, log_weight })
}

/// Exact law of the height at one position.
pub fn height_marginal(tables: &TransferTables, position: usize) -> Result<Vec<f64>, CoreError> {
    tables.height_marginal(position)
}

/// Probability that the height at position `i` reaches at least `j` — the
/// delocalization event at that position.
pub fn event_prob_a(tables: &TransferTables, i: usize, j: usize) -> Result<f64, CoreError> {
    tables.height_tail(i, j)
}
