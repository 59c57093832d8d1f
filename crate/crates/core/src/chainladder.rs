// SPDX-License-Identifier: Apache-2.0

//! Chain-ladder point estimates and Mack prediction errors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle::{cumulate, CumulativeTriangle, IncrementalTriangle};

/// Volume-weighted development factors `f_1 .. f_{I-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevelopmentFactors {
    values: Vec<f64>,
}

impl DevelopmentFactors {
    /// Wraps externally supplied factors; each must be positive and finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(&v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NonPositive {
                what: "development factor",
                value: v,
            });
        }
        Ok(Self { values })
    }

    /// `f_j` for `1 <= j <= I-1`.
    pub fn get(&self, j: usize) -> f64 {
        self.values[j - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `f_from * ... * f_to`, or 1 when the range is empty.
    pub fn product(&self, from: usize, to: usize) -> f64 {
        (from..=to).map(|s| self.get(s)).product()
    }

    /// Age-to-ultimate factor `F_i = f_{I-i+1} * ... * f_{I-1}` of year `i`.
    pub fn to_ultimate(&self, i: usize) -> f64 {
        let dim = self.values.len() + 1;
        self.product(dim + 1 - i, dim - 1)
    }
}

/// Mack variance parameters `sigma^2_1 .. sigma^2_{I-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaEstimates {
    values: Vec<f64>,
}

impl SigmaEstimates {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(&v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::NonPositive {
                what: "variance parameter",
                value: v,
            });
        }
        Ok(Self { values })
    }

    /// `sigma^2_j` for `1 <= j <= I-1`.
    pub fn get(&self, j: usize) -> f64 {
        self.values[j - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reserves {
    /// `R_i` for `i = 1..=I` (index 0 is year 1).
    pub by_year: Vec<f64>,
    pub total: f64,
}

/// All chain-ladder and Mack outputs for one triangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MackSummary {
    pub factors: DevelopmentFactors,
    pub sigmas: SigmaEstimates,
    pub ultimates: Vec<f64>,
    pub reserves: Vec<f64>,
    pub total_reserve: f64,
    /// `mse(R_i)` for `i = 1..=I`; year 1 is 0.
    pub mse: Vec<f64>,
    pub mse_total: f64,
}

impl MackSummary {
    pub fn from_incremental(inc: &IncrementalTriangle) -> Result<Self> {
        Self::compute(&cumulate(inc))
    }

    pub fn compute(cum: &CumulativeTriangle) -> Result<Self> {
        let factors = estimate_development_factors(cum)?;
        let sigmas = estimate_sigmas(cum, &factors)?;
        let ultimates = project_ultimates(cum, &factors)?;
        let r = reserves(cum, &factors)?;
        let mse = (1..=cum.dim())
            .map(|i| mse_accident_year(cum, &factors, &sigmas, i))
            .collect::<Result<Vec<_>>>()?;
        let mse_total = mse_total(cum, &factors, &sigmas)?;
        Ok(Self {
            factors,
            sigmas,
            ultimates,
            reserves: r.by_year,
            total_reserve: r.total,
            mse,
            mse_total,
        })
    }

    pub fn rmse(&self, i: usize) -> f64 {
        self.mse[i - 1].sqrt()
    }

    pub fn rmse_total(&self) -> f64 {
        self.mse_total.sqrt()
    }
}

pub fn estimate_development_factors(cum: &CumulativeTriangle) -> Result<DevelopmentFactors> {
    let dim = cum.dim();
    let mut values = Vec::with_capacity(dim.saturating_sub(1));
    for j in 1..dim {
        let rows = dim - j;
        let den = cum.colsum(j, rows);
        if den == 0.0 {
            return Err(Error::ZeroDenominator { column: j, rows });
        }
        values.push(cum.colsum(j + 1, rows) / den);
    }
    Ok(DevelopmentFactors { values })
}

pub(crate) fn check_factors(cum: &CumulativeTriangle, factors: &DevelopmentFactors) -> Result<()> {
    let expected = cum.dim() - 1;
    if factors.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: factors.len(),
        });
    }
    Ok(())
}

fn check_sigmas(cum: &CumulativeTriangle, sigmas: &SigmaEstimates) -> Result<()> {
    let expected = cum.dim() - 1;
    if sigmas.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: sigmas.len(),
        });
    }
    Ok(())
}

/// `C_{i,I}` per accident year, index 0 being year 1.
pub fn project_ultimates(cum: &CumulativeTriangle, factors: &DevelopmentFactors) -> Result<Vec<f64>> {
    check_factors(cum, factors)?;
    Ok((1..=cum.dim())
        .map(|i| cum.latest(i) * factors.to_ultimate(i))
        .collect())
}

pub fn reserves(cum: &CumulativeTriangle, factors: &DevelopmentFactors) -> Result<Reserves> {
    let ult = project_ultimates(cum, factors)?;
    let by_year: Vec<f64> = ult.iter().enumerate().map(|(r, u)| u - cum.latest(r + 1)).collect();
    let total = by_year.iter().sum();
    Ok(Reserves { by_year, total })
}

pub fn estimate_sigmas(cum: &CumulativeTriangle, factors: &DevelopmentFactors) -> Result<SigmaEstimates> {
    check_factors(cum, factors)?;
    let dim = cum.dim();
    if dim < 4 {
        return Err(Error::UnsupportedDimension {
            what: "variance estimation",
            dim,
            min: 4,
        });
    }
    let mut values = Vec::with_capacity(dim - 1);
    for k in 1..=dim - 2 {
        let f = factors.get(k);
        let mut acc = 0.0;
        for i in 1..=dim - k {
            let c = cum.c(i, k);
            if c == 0.0 {
                return Err(Error::ZeroCumulative { row: i, column: k });
            }
            let d = cum.c(i, k + 1) / c - f;
            acc += c * d * d;
        }
        values.push(acc / (dim - k - 1) as f64);
    }
    let s3 = values[dim - 4];
    let s2 = values[dim - 3];
    let ratio = if s2 == 0.0 { 0.0 } else { s2 * s2 / s3 };
    values.push(ratio.min(s3.min(s2)));
    Ok(SigmaEstimates { values })
}

/// Process-variance sum of year `i`, without the leading `C_{i,I-i+1}`.
pub(crate) fn process_sum(factors: &DevelopmentFactors, sigmas: &SigmaEstimates, dim: usize, i: usize) -> f64 {
    let a = dim + 1 - i;
    (a..dim)
        .map(|j| {
            let head = factors.product(a, j - 1);
            let tail: f64 = (j + 1..dim).map(|s| factors.get(s).powi(2)).product();
            head * sigmas.get(j) * tail
        })
        .sum()
}

/// `sum_{s=I-i+1}^{I-1} (sigma^2_s / f_s^2) / S(s, I-s)`.
pub(crate) fn estimation_sum(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    sigmas: &SigmaEstimates,
    i: usize,
) -> f64 {
    let dim = cum.dim();
    (dim + 1 - i..dim)
        .map(|s| sigmas.get(s) / factors.get(s).powi(2) / cum.colsum(s, dim - s))
        .sum()
}

/// Plug-in Mack mean squared error of `R_i`; zero for `i = 1`.
pub fn mse_accident_year(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    sigmas: &SigmaEstimates,
    i: usize,
) -> Result<f64> {
    check_factors(cum, factors)?;
    check_sigmas(cum, sigmas)?;
    let dim = cum.dim();
    if i == 0 || i > dim {
        return Err(Error::IndexOutOfRange {
            what: "accident year",
            index: i,
            max: dim,
        });
    }
    if i == 1 {
        return Ok(0.0);
    }
    Ok(mse_unchecked(cum, factors, sigmas, i))
}

pub(crate) fn mse_unchecked(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    sigmas: &SigmaEstimates,
    i: usize,
) -> f64 {
    let dim = cum.dim();
    let c = cum.latest(i);
    let big_f = factors.to_ultimate(i);
    c * process_sum(factors, sigmas, dim, i) + (c * big_f).powi(2) * estimation_sum(cum, factors, sigmas, i)
}

pub fn mse_total(cum: &CumulativeTriangle, factors: &DevelopmentFactors, sigmas: &SigmaEstimates) -> Result<f64> {
    check_factors(cum, factors)?;
    check_sigmas(cum, sigmas)?;
    let dim = cum.dim();
    let ult = project_ultimates(cum, factors)?;
    let mut total = 0.0;
    for i in 2..=dim {
        let later: f64 = ult[i..].iter().sum();
        total +=
            mse_unchecked(cum, factors, sigmas, i) + ult[i - 1] * later * 2.0 * estimation_sum(cum, factors, sigmas, i);
    }
    Ok(total)
}
