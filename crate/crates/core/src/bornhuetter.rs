// SPDX-License-Identifier: Apache-2.0

//! Bornhuetter-Ferguson reserves on chain-ladder development factors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chainladder::{check_factors, project_ultimates, DevelopmentFactors, Reserves};
use crate::error::{Error, Result};
use crate::triangle::CumulativeTriangle;

/// Prior ultimate claims `mu_i`, keyed by 1-based accident year.
///
/// Priors are a fixed snapshot: impact functions treat them as constants
/// even when they were initialised from chain-ladder ultimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorUltimates {
    values: BTreeMap<usize, f64>,
}

impl PriorUltimates {
    pub fn new(values: BTreeMap<usize, f64>) -> Result<Self> {
        for (&year, &value) in &values {
            if year == 0 {
                return Err(Error::IndexOutOfRange {
                    what: "accident year",
                    index: 0,
                    max: usize::MAX,
                });
            }
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositivePrior { year, value });
            }
        }
        Ok(Self { values })
    }

    /// Priors for years `1..=values.len()`.
    pub fn from_vec(values: Vec<f64>) -> Result<Self> {
        Self::new(values.into_iter().enumerate().map(|(r, v)| (r + 1, v)).collect())
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.values.get(&i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().map(|(&i, &v)| (i, v))
    }

    /// Prior for year `i`; only year 1, which has no future development,
    /// may omit one.
    pub(crate) fn require(&self, i: usize) -> Result<Option<f64>> {
        match self.get(i) {
            Some(v) => Ok(Some(v)),
            None if i == 1 => Ok(None),
            None => Err(Error::MissingPrior(i)),
        }
    }

    pub(crate) fn check_years(&self, dim: usize) -> Result<()> {
        if let Some((&year, _)) = self.values.iter().next_back() {
            if year > dim {
                return Err(Error::IndexOutOfRange {
                    what: "prior accident year",
                    index: year,
                    max: dim,
                });
            }
        }
        Ok(())
    }
}

pub fn bf_reserves(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    priors: &PriorUltimates,
) -> Result<Reserves> {
    check_factors(cum, factors)?;
    priors.check_years(cum.dim())?;
    let mut by_year = Vec::with_capacity(cum.dim());
    for i in 1..=cum.dim() {
        let big_f = factors.to_ultimate(i);
        let r = match priors.require(i)? {
            Some(mu) => mu - mu / big_f,
            None => 0.0,
        };
        by_year.push(r);
    }
    let total = by_year.iter().sum();
    Ok(Reserves { by_year, total })
}

/// Priors equal to the chain-ladder ultimates.
pub fn default_priors(cum: &CumulativeTriangle, factors: &DevelopmentFactors) -> Result<PriorUltimates> {
    let ult = project_ultimates(cum, factors)?;
    let values = ult.into_iter().enumerate().map(|(r, v)| (r + 1, v)).collect();
    // Zero ultimates are possible on all-zero rows; they are rejected here.
    PriorUltimates::new(values)
}
