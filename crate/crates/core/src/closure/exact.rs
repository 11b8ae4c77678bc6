use serde::{Deserialize, Serialize};

use super::basis::{ambient_dimension, lie_closure, ClosureOptions, ClosureStats, LieBasis};
use super::modular::{representable, Fp};
use crate::error::Result;
use crate::pauli::{ExactOperator, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ExactStrategy {
    /// Prime-field rank certificate first, rational elimination if it falls short.
    #[default]
    Auto,
    RationalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Full rank reached over `F_p`; rank over Q is at least rank over `F_p`.
    PrimeFieldCertificate,
    RationalElimination,
    FloatElimination,
}

#[derive(Debug, Clone)]
pub struct ExactClosure {
    pub basis: LieBasis<Rational>,
    pub stats: ClosureStats,
    pub method: Method,
    /// Dimension of the prime-field run, when one was made.
    pub modular_dimension: Option<usize>,
}

impl ExactClosure {
    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn universal(&self) -> bool {
        self.basis.is_full()
    }
}

/// Exact closure over Q.
///
/// Under [`ExactStrategy::Auto`] the worklist first runs over `F_p`. Reduction
/// mod p is a ring map on p-integral coefficients, so the prime-field span of
/// the bracket words has rank at most their rational rank; reaching `4^n − 1`
/// there settles the rational dimension too. Otherwise the rational kernel
/// decides.
pub fn exact_closure(
    generators: &[ExactOperator],
    options: &ClosureOptions,
    strategy: ExactStrategy,
) -> Result<ExactClosure> {
    let mut modular_dimension = None;
    let mut modular_stats = ClosureStats::default();
    if strategy == ExactStrategy::Auto && representable(generators) {
        let g: Vec<_> = generators.iter().map(|o| o.map_scalar(Fp::from_rational)).collect();
        let (b, stats) = lie_closure(&g, options)?;
        modular_dimension = Some(b.dimension());
        if b.dimension() as u128 == ambient_dimension(b.n()) {
            let basis = LieBasis::full(b.n(), generators.to_vec())?;
            return Ok(ExactClosure {
                basis,
                stats,
                method: Method::PrimeFieldCertificate,
                modular_dimension,
            });
        }
        modular_stats = stats;
    }
    let (basis, mut stats) = lie_closure(generators, options)?;
    stats.wall_ms += modular_stats.wall_ms;
    debug_assert!(modular_dimension.is_none_or(|d| d <= basis.dimension()));
    Ok(ExactClosure {
        basis,
        stats,
        method: Method::RationalElimination,
        modular_dimension,
    })
}
