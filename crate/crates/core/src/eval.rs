//! Pair-counting agreement between a reference partition and a candidate.
//!
//! Every unordered vertex pair is a true positive when both partitions put it
//! in one community, a false positive when only the candidate does, a false
//! negative when only the reference does, and a true negative otherwise.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Largest input accepted by [`compare_partitions_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 2_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionComparison {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
    /// `tp / (tp + fp)`
    pub sp: f64,
    /// `tp / (tp + fn)`
    pub se: f64,
    /// `tp / (tp + fp + fn)`
    pub oq: f64,
    /// `(tp + tn) / all pairs`
    pub rand: f64,
}

/// Ratio with an empty denominator counted as perfect agreement.
fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

impl PartitionComparison {
    pub fn from_counts(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        PartitionComparison {
            tp,
            fp,
            fn_,
            tn,
            sp: ratio(tp, tp + fp),
            se: ratio(tp, tp + fn_),
            oq: ratio(tp, tp + fp + fn_),
            rand: ratio(tp + tn, tp + fp + fn_ + tn),
        }
    }

    pub fn total_pairs(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

fn check_inputs<A, B>(reference: &[A], candidate: &[B]) -> Result<()> {
    if reference.len() != candidate.len() {
        return Err(Error::MismatchedVertexSets(format!(
            "reference has {} vertices, candidate has {}",
            reference.len(),
            candidate.len()
        )));
    }
    if reference.len() < 2 {
        return Err(Error::Precondition("need at least two vertices".into()));
    }
    Ok(())
}

fn pairs(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Pair counts from the contingency table of community overlaps, in time
/// linear in the number of vertices.
pub fn compare_partitions<A, B>(reference: &[A], candidate: &[B]) -> Result<PartitionComparison>
where
    A: Eq + Hash,
    B: Eq + Hash,
{
    check_inputs(reference, candidate)?;
    let n = reference.len() as u64;
    let mut cells: HashMap<(&A, &B), u64> = HashMap::new();
    let mut rows: HashMap<&A, u64> = HashMap::new();
    let mut cols: HashMap<&B, u64> = HashMap::new();
    for (a, b) in reference.iter().zip(candidate) {
        *cells.entry((a, b)).or_default() += 1;
        *rows.entry(a).or_default() += 1;
        *cols.entry(b).or_default() += 1;
    }
    let tp: u64 = cells.values().map(|&c| pairs(c)).sum();
    let same_reference: u64 = rows.values().map(|&c| pairs(c)).sum();
    let same_candidate: u64 = cols.values().map(|&c| pairs(c)).sum();
    let fp = same_candidate - tp;
    let fn_ = same_reference - tp;
    let tn = pairs(n) - tp - fp - fn_;
    Ok(PartitionComparison::from_counts(tp, fp, fn_, tn))
}

/// All-pairs classification; quadratic, limited to [`BRUTEFORCE_LIMIT`] vertices.
pub fn compare_partitions_bruteforce<A, B>(
    reference: &[A],
    candidate: &[B],
) -> Result<PartitionComparison>
where
    A: Eq,
    B: Eq,
{
    check_inputs(reference, candidate)?;
    let n = reference.len();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::Precondition(format!(
            "brute-force comparison limited to {BRUTEFORCE_LIMIT} vertices, got {n}"
        )));
    }
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for u in 0..n {
        for v in (u + 1)..n {
            match (reference[u] == reference[v], candidate[u] == candidate[v]) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                (false, false) => tn += 1,
            }
        }
    }
    Ok(PartitionComparison::from_counts(tp, fp, fn_, tn))
}
