use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{ExactOperator, Operator, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityVerdict {
    /// All parts pairwise commute.
    pub separable: bool,
    /// 0-based index pairs whose bracket is nonzero.
    pub noncommuting_pairs: Vec<(usize, usize)>,
    /// Rational independence of the weights is assumed, not checked.
    pub assumes_rational_independence: bool,
}

/// Check that `whole = Σ cᵢ·partᵢ` with pairwise commuting parts.
pub fn separability_check(
    whole: &ExactOperator,
    parts: &[(Rational, ExactOperator)],
) -> Result<SeparabilityVerdict> {
    let pairs: Vec<_> = parts.iter().map(|(c, p)| (c.clone(), p)).collect();
    let sum = Operator::linear_combine(whole.n(), &pairs)?;
    if &sum != whole {
        return Err(Error::InvalidArgument(
            "weighted parts do not sum to the whole operator".into(),
        ));
    }
    let mut bad = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !parts[i].1.bracket(&parts[j].1)?.is_zero() {
                bad.push((i, j));
            }
        }
    }
    Ok(SeparabilityVerdict {
        separable: bad.is_empty(),
        noncommuting_pairs: bad,
        assumes_rational_independence: true,
    })
}
