use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Rational, Scalar};

pub const SAMPLE_MIN: i64 = 2;
pub const SAMPLE_MAX: i64 = 1_000_000;
const MAX_DRAWS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    User,
    Sampled,
}

/// Named coupling values with where each came from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientAssignment {
    values: BTreeMap<String, Rational>,
    provenance: BTreeMap<String, Provenance>,
    seed: Option<u64>,
}

/// Algebraic side conditions on sampled values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Nonzero(String),
    /// `a² ≠ b²`
    DistinctSquares(String, String),
    /// `a² ≠ k·b²`
    AvoidSquareRatio { a: String, b: String, ratio: i64 },
}

impl Constraint {
    pub fn holds(&self, c: &CoefficientAssignment) -> Result<bool> {
        Ok(match self {
            Constraint::Nonzero(s) => !c.get(s)?.is_zero(),
            Constraint::DistinctSquares(a, b) => c.get(a)?.square() != c.get(b)?.square(),
            Constraint::AvoidSquareRatio { a, b, ratio } => {
                c.get(a)?.square() != c.get(b)?.square().mul(&Rational::integer(*ratio))
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Constraint::Nonzero(s) => format!("{s} != 0"),
            Constraint::DistinctSquares(a, b) => format!("{a}^2 != {b}^2"),
            Constraint::AvoidSquareRatio { a, b, ratio } => format!("{a}^2 != {ratio}*{b}^2"),
        }
    }

    pub fn symbols(&self) -> Vec<&str> {
        match self {
            Constraint::Nonzero(s) => vec![s],
            Constraint::DistinctSquares(a, b) | Constraint::AvoidSquareRatio { a, b, .. } => {
                vec![a, b]
            }
        }
    }
}

/// `ω_A² ≠ ω_B²` for the even/odd mixer split.
pub fn even_odd_constraints() -> Vec<Constraint> {
    vec![Constraint::DistinctSquares("wA".into(), "wB".into())]
}

/// Hypotheses for separating `H_AB` and `H_BA`.
pub fn separation_constraints() -> Vec<Constraint> {
    vec![
        Constraint::Nonzero("gAB".into()),
        Constraint::Nonzero("gBA".into()),
        Constraint::DistinctSquares("gAB".into(), "gBA".into()),
        Constraint::AvoidSquareRatio {
            a: "gAB".into(),
            b: "gBA".into(),
            ratio: 4,
        },
    ]
}

impl CoefficientAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Rational)>) -> Self {
        let mut c = Self::new();
        for (k, v) in pairs {
            c.set(k, v);
        }
        c
    }

    pub fn set(&mut self, symbol: &str, value: Rational) {
        self.values.insert(symbol.to_string(), value);
        self.provenance.insert(symbol.to_string(), Provenance::User);
    }

    pub fn get(&self, symbol: &str) -> Result<&Rational> {
        self.values
            .get(symbol)
            .ok_or_else(|| Error::MissingCoefficient(symbol.to_string()))
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.values.contains_key(symbol)
    }

    pub fn provenance(&self, symbol: &str) -> Option<Provenance> {
        self.provenance.get(symbol).copied()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.values
    }

    pub fn require(&self, symbols: &[&str]) -> Result<()> {
        for s in symbols {
            self.get(s)?;
        }
        Ok(())
    }

    /// Overlay `other` on top of `self`.
    pub fn merged(&self, other: &CoefficientAssignment) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.values {
            out.values.insert(k.clone(), v.clone());
            out.provenance
                .insert(k.clone(), other.provenance.get(k).copied().unwrap_or(Provenance::User));
        }
        if other.seed.is_some() {
            out.seed = other.seed;
        }
        out
    }

    /// Rendered `symbol → "p/q"` map for reports.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }
}

fn draw(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(SAMPLE_MIN..=SAMPLE_MAX);
    let den = rng.gen_range(SAMPLE_MIN..=SAMPLE_MAX);
    Rational::new(num, den)
}

/// Generic random rationals `p/q` with `p, q` uniform in `[2, 10⁶]`.
///
/// `fixed` supplies user values that participate in constraint checks but are
/// never resampled. Symbols are drawn in sorted order so the result depends
/// only on `seed` and the symbol set.
pub fn sample_generic_coefficients(
    symbols: &[&str],
    seed: u64,
    constraints: &[Constraint],
    fixed: &CoefficientAssignment,
) -> Result<CoefficientAssignment> {
    let mut sorted: Vec<&str> = symbols.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let mut out = fixed.clone();
        for s in &sorted {
            out.values.insert(s.to_string(), draw(&mut rng));
            out.provenance.insert(s.to_string(), Provenance::Sampled);
        }
        out.seed = Some(seed);
        let mut ok = true;
        for c in constraints {
            if c.symbols().iter().any(|s| !out.contains(s)) {
                continue;
            }
            if !c.holds(&out)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(out);
        }
    }
    Err(Error::Unsatisfiable(MAX_DRAWS))
}
