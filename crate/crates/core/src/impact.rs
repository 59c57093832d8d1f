// SPDX-License-Identifier: Apache-2.0

//! Impact functions: `IF_{k,j}(T) = dT / dX_{k,j}` over the observed region.
//!
//! All reserve impacts are built from one indicator sum,
//!
//! ```text
//! ind_i(k,j) = sum_{s=I-i+1}^{I-1} dln f_s / dX_{k,j}
//! dln f_s / dX_{k,j} = 1{j <= s+1} / S(s+1, I-s) - 1{j <= s} / S(s, I-s),  k <= I-s
//! ```
//!
//! with `S(col, p) = C_{1,col} + ... + C_{p,col}`. MSE impacts treat the
//! variance parameters as constants. BF priors are frozen.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bornhuetter::PriorUltimates;
use crate::chainladder::{
    check_factors, estimation_sum, mse_unchecked, process_sum, DevelopmentFactors, SigmaEstimates,
};
use crate::error::{Error, Result};
use crate::triangle::{observed_cells, CellIndex, CumulativeTriangle, IncrementalTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    ReserveAy,
    ReserveTotal,
    BfAy,
    BfTotal,
    MseAy,
    MseTotal,
    RmseAy,
    RmseTotal,
    Quantile,
    /// Euler contributions `IF_{k,j} * X_{k,j}` of an order-one statistic.
    Marginal,
}

impl Statistic {
    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::ReserveAy => "reserve-ay",
            Statistic::ReserveTotal => "reserve-total",
            Statistic::BfAy => "bf-ay",
            Statistic::BfTotal => "bf-total",
            Statistic::MseAy => "mse-ay",
            Statistic::MseTotal => "mse-total",
            Statistic::RmseAy => "rmse-ay",
            Statistic::RmseTotal => "rmse-total",
            Statistic::Quantile => "quantile",
            Statistic::Marginal => "marginal",
        }
    }

    pub fn is_per_year(self) -> bool {
        matches!(
            self,
            Statistic::ReserveAy | Statistic::BfAy | Statistic::MseAy | Statistic::RmseAy
        )
    }

    /// Chain-ladder reserves scale linearly with the triangle. BF reserves
    /// with frozen priors do not, and neither do the MSE-based statistics.
    pub fn is_order_one(self) -> bool {
        matches!(self, Statistic::ReserveAy | Statistic::ReserveTotal)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Impact values on the observed region, stored row-major like the triangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactTriangle {
    pub statistic: Statistic,
    pub target: Option<usize>,
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl ImpactTriangle {
    pub fn from_fn(
        statistic: Statistic,
        target: Option<usize>,
        dim: usize,
        mut value: impl FnMut(usize, usize) -> f64,
    ) -> Self {
        let rows = (1..=dim)
            .map(|k| (1..=dim + 1 - k).map(|j| value(k, j)).collect())
            .collect();
        Self {
            statistic,
            target,
            dim,
            rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, k: usize, j: usize) -> Option<f64> {
        self.rows.get(k.wrapping_sub(1))?.get(j.wrapping_sub(1)).copied()
    }

    /// Value at an observed cell; panics outside the observed region.
    pub fn at(&self, k: usize, j: usize) -> f64 {
        self.rows[k - 1][j - 1]
    }

    pub fn cells(&self) -> impl Iterator<Item = (CellIndex, f64)> + '_ {
        observed_cells(self.dim).map(move |c| (c, self.at(c.i, c.j)))
    }

    pub fn sum(&self) -> f64 {
        self.rows.iter().flatten().sum()
    }

    /// Smallest and largest cell values.
    pub fn range(&self) -> (f64, f64) {
        self.rows
            .iter()
            .flatten()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    fn retag(self, statistic: Statistic) -> Self {
        Self { statistic, ..self }
    }
}

/// Cached column sums and projections shared by every impact formula.
pub(crate) struct Frame<'a> {
    pub cum: &'a CumulativeTriangle,
    pub factors: &'a DevelopmentFactors,
    pub dim: usize,
    /// `S(s, I-s)` at index `s-1`.
    pub den: Vec<f64>,
    /// `S(s+1, I-s)` at index `s-1`.
    pub num: Vec<f64>,
    /// `C_{i,I}` at index `i-1`.
    pub ult: Vec<f64>,
    /// `F_i` at index `i-1`.
    pub to_ult: Vec<f64>,
}

impl<'a> Frame<'a> {
    pub fn new(cum: &'a CumulativeTriangle, factors: &'a DevelopmentFactors) -> Result<Self> {
        check_factors(cum, factors)?;
        let dim = cum.dim();
        let den = (1..dim).map(|s| cum.colsum(s, dim - s)).collect::<Vec<_>>();
        if let Some(s) = den.iter().position(|&d| d == 0.0) {
            return Err(Error::ZeroDenominator {
                column: s + 1,
                rows: dim - s - 1,
            });
        }
        let num = (1..dim).map(|s| cum.colsum(s + 1, dim - s)).collect();
        let to_ult: Vec<f64> = (1..=dim).map(|i| factors.to_ultimate(i)).collect();
        let ult = (1..=dim).map(|i| cum.latest(i) * to_ult[i - 1]).collect();
        Ok(Self {
            cum,
            factors,
            dim,
            den,
            num,
            ult,
            to_ult,
        })
    }

    pub fn dlnf(&self, s: usize, k: usize, j: usize) -> f64 {
        if k > self.dim - s {
            return 0.0;
        }
        let mut v = 0.0;
        if j <= s + 1 {
            v += 1.0 / self.num[s - 1];
        }
        if j <= s {
            v -= 1.0 / self.den[s - 1];
        }
        v
    }

    /// `sum_{s=I-i+1}^{I-1} dln f_s / dX_{k,j}`, i.e. `dln F_i / dX_{k,j}`.
    pub fn ind(&self, i: usize, k: usize, j: usize) -> f64 {
        (self.dim + 1 - i..self.dim).map(|s| self.dlnf(s, k, j)).sum()
    }

    pub fn reserve_ay(&self, i: usize, k: usize, j: usize) -> f64 {
        if k > i {
            0.0
        } else if k == i {
            self.to_ult[i - 1] - 1.0
        } else {
            self.ult[i - 1] * self.ind(i, k, j)
        }
    }

    fn check_year(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim {
            return Err(Error::IndexOutOfRange {
                what: "accident year",
                index: i,
                max: self.dim,
            });
        }
        Ok(())
    }
}

fn check_cell(dim: usize, k: usize, j: usize) -> Result<()> {
    if k == 0 || k > dim {
        return Err(Error::IndexOutOfRange {
            what: "accident year",
            index: k,
            max: dim,
        });
    }
    if j == 0 || j > dim + 1 - k {
        return Err(Error::IndexOutOfRange {
            what: "development year",
            index: j,
            max: dim + 1 - k,
        });
    }
    Ok(())
}

/// `d ln f_s / dX_{k,j}`.
pub fn d_ln_f(cum: &CumulativeTriangle, s: usize, k: usize, j: usize) -> Result<f64> {
    let dim = cum.dim();
    if s == 0 || s >= dim {
        return Err(Error::IndexOutOfRange {
            what: "development factor",
            index: s,
            max: dim.saturating_sub(1),
        });
    }
    check_cell(dim, k, j)?;
    if k > dim - s {
        return Ok(0.0);
    }
    let mut v = 0.0;
    if j <= s + 1 {
        v += 1.0 / nonzero(cum.colsum(s + 1, dim - s), s + 1, dim - s)?;
    }
    if j <= s {
        v -= 1.0 / nonzero(cum.colsum(s, dim - s), s, dim - s)?;
    }
    Ok(v)
}

fn nonzero(v: f64, column: usize, rows: usize) -> Result<f64> {
    if v == 0.0 {
        Err(Error::ZeroDenominator { column, rows })
    } else {
        Ok(v)
    }
}

pub fn impact_reserve_ay(cum: &CumulativeTriangle, factors: &DevelopmentFactors, i: usize) -> Result<ImpactTriangle> {
    let fr = Frame::new(cum, factors)?;
    fr.check_year(i)?;
    Ok(ImpactTriangle::from_fn(
        Statistic::ReserveAy,
        Some(i),
        fr.dim,
        |k, j| fr.reserve_ay(i, k, j),
    ))
}

pub fn impact_reserve_total(cum: &CumulativeTriangle, factors: &DevelopmentFactors) -> Result<ImpactTriangle> {
    let fr = Frame::new(cum, factors)?;
    Ok(ImpactTriangle::from_fn(
        Statistic::ReserveTotal,
        None,
        fr.dim,
        |k, j| (1..=fr.dim).map(|i| fr.reserve_ay(i, k, j)).sum(),
    ))
}

fn bf_cell(fr: &Frame<'_>, mu: Option<f64>, i: usize, k: usize, j: usize) -> f64 {
    match mu {
        Some(mu) if k < i => mu * fr.ind(i, k, j) / fr.to_ult[i - 1],
        _ => 0.0,
    }
}

pub fn impact_bf_ay(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    priors: &PriorUltimates,
    i: usize,
) -> Result<ImpactTriangle> {
    let fr = Frame::new(cum, factors)?;
    fr.check_year(i)?;
    priors.check_years(fr.dim)?;
    let mu = priors.require(i)?;
    Ok(ImpactTriangle::from_fn(Statistic::BfAy, Some(i), fr.dim, |k, j| {
        bf_cell(&fr, mu, i, k, j)
    }))
}

pub fn impact_bf_total(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    priors: &PriorUltimates,
) -> Result<ImpactTriangle> {
    let fr = Frame::new(cum, factors)?;
    priors.check_years(fr.dim)?;
    let mus = (1..=fr.dim).map(|i| priors.require(i)).collect::<Result<Vec<_>>>()?;
    Ok(ImpactTriangle::from_fn(Statistic::BfTotal, None, fr.dim, |k, j| {
        (1..=fr.dim).map(|i| bf_cell(&fr, mus[i - 1], i, k, j)).sum()
    }))
}

/// Per-year constants of the MSE impact for year `i`.
struct MseYear {
    /// `P_i + 2 C F^2 E_i`, the flat value on row `k = i`.
    own_row: f64,
    /// `-2 C F sqrt(E_i)`, multiplying `IF(R_i)` on rows `k < i`.
    slope: f64,
}

fn mse_year(fr: &Frame<'_>, sigmas: &SigmaEstimates, i: usize) -> MseYear {
    let c = fr.cum.latest(i);
    let big_f = fr.to_ult[i - 1];
    let e = estimation_sum(fr.cum, fr.factors, sigmas, i);
    MseYear {
        own_row: process_sum(fr.factors, sigmas, fr.dim, i) + 2.0 * c * big_f * big_f * e,
        slope: -2.0 * c * big_f * e.sqrt(),
    }
}

fn mse_cell(fr: &Frame<'_>, m: &MseYear, i: usize, k: usize, j: usize) -> f64 {
    if i == 1 || k > i {
        0.0
    } else if k == i {
        m.own_row
    } else {
        m.slope * fr.reserve_ay(i, k, j)
    }
}

fn check_sigmas(fr: &Frame<'_>, sigmas: &SigmaEstimates) -> Result<()> {
    if sigmas.len() != fr.dim - 1 {
        return Err(Error::DimensionMismatch {
            expected: fr.dim - 1,
            got: sigmas.len(),
        });
    }
    Ok(())
}

pub fn impact_mse_ay(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    sigmas: &SigmaEstimates,
    i: usize,
) -> Result<ImpactTriangle> {
    let fr = Frame::new(cum, factors)?;
    fr.check_year(i)?;
    check_sigmas(&fr, sigmas)?;
    let m = mse_year(&fr, sigmas, i);
    Ok(ImpactTriangle::from_fn(Statistic::MseAy, Some(i), fr.dim, |k, j| {
        mse_cell(&fr, &m, i, k, j)
    }))
}

/// Maps MSE impacts to RMSE impacts via `v / (2 sqrt(mse))`.
pub fn impact_rmse(mse_value: f64, mse_impacts: &ImpactTriangle) -> Result<ImpactTriangle> {
    if mse_value == 0.0 {
        return Err(Error::UndefinedRmseImpact);
    }
    if !(mse_value > 0.0) {
        return Err(Error::NonPositive {
            what: "mean squared error",
            value: mse_value,
        });
    }
    let statistic = match mse_impacts.statistic {
        Statistic::MseAy => Statistic::RmseAy,
        Statistic::MseTotal => Statistic::RmseTotal,
        other => other,
    };
    let scale = 2.0 * mse_value.sqrt();
    Ok(ImpactTriangle {
        statistic,
        target: mse_impacts.target,
        dim: mse_impacts.dim,
        rows: mse_impacts
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v / scale).collect())
            .collect(),
    })
}

pub fn impact_mse_total(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    sigmas: &SigmaEstimates,
) -> Result<ImpactTriangle> {
    let fr = Frame::new(cum, factors)?;
    check_sigmas(&fr, sigmas)?;
    let dim = fr.dim;
    let years: Vec<MseYear> = (1..=dim).map(|i| mse_year(&fr, sigmas, i)).collect();
    // Cross term of year i is A_i * v_i with A_i = U_i * sum_{q>i} U_q and
    // v_i = 2 sum_r sigma^2_r / (S_r f_r^2).
    let later: Vec<f64> = (1..=dim).map(|i| fr.ult[i..].iter().sum()).collect();
    let sf2: Vec<f64> = (1..dim).map(|r| fr.den[r - 1] * factors.get(r).powi(2)).collect();
    let v: Vec<f64> = (1..=dim)
        .map(|i| (dim + 1 - i..dim).map(|r| 2.0 * sigmas.get(r) / sf2[r - 1]).sum())
        .collect();

    Ok(ImpactTriangle::from_fn(Statistic::MseTotal, None, dim, |k, j| {
        // dU_q / dX_{k,j} = IF(R_q) + 1{k = q}
        let du: Vec<f64> = (1..=dim)
            .map(|q| fr.reserve_ay(q, k, j) + if k == q { 1.0 } else { 0.0 })
            .collect();
        // d(S_r f_r^2) / dX_{k,j}
        let dsf2: Vec<f64> = (1..dim)
            .map(|r| {
                let f2 = factors.get(r).powi(2);
                let ds = if k <= dim - r && j <= r { 1.0 } else { 0.0 };
                f2 * ds + 2.0 * sf2[r - 1] * fr.dlnf(r, k, j)
            })
            .collect();
        let mut total = 0.0;
        for i in 2..=dim {
            let dv: f64 = (dim + 1 - i..dim)
                .map(|r| -2.0 * sigmas.get(r) * dsf2[r - 1] / sf2[r - 1].powi(2))
                .sum();
            let dlater: f64 = du[i..].iter().sum();
            let da = fr.ult[i - 1] * dlater + later[i - 1] * du[i - 1];
            total += mse_cell(&fr, &years[i - 1], i, k, j) + fr.ult[i - 1] * later[i - 1] * dv + v[i - 1] * da;
        }
        total
    }))
}

/// Cellwise `IF_{k,j} * X_{k,j}`; only defined for order-one statistics,
/// for which the cells sum to the statistic itself.
pub fn marginal_contributions(impacts: &ImpactTriangle, inc: &IncrementalTriangle) -> Result<ImpactTriangle> {
    if !impacts.statistic.is_order_one() {
        return Err(Error::NotOrderOneHomogeneous(impacts.statistic.to_string()));
    }
    if impacts.dim != inc.dim() {
        return Err(Error::DimensionMismatch {
            expected: impacts.dim,
            got: inc.dim(),
        });
    }
    let out = ImpactTriangle::from_fn(impacts.statistic, impacts.target, impacts.dim, |k, j| {
        impacts.at(k, j) * inc.x(k, j)
    });
    Ok(out.retag(Statistic::Marginal))
}

/// Plug-in `mse(R_i)` for every year, used to rescale MSE impacts.
pub(crate) fn mse_values(cum: &CumulativeTriangle, factors: &DevelopmentFactors, sigmas: &SigmaEstimates) -> Vec<f64> {
    (1..=cum.dim())
        .map(|i| {
            if i == 1 {
                0.0
            } else {
                mse_unchecked(cum, factors, sigmas, i)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bornhuetter::default_priors;
    use crate::chainladder::{estimate_development_factors, estimate_sigmas, reserves, MackSummary};
    use crate::data::belgian;
    use crate::synthetic::random_triangle;
    use crate::triangle::cumulate;

    fn belgian_parts() -> (CumulativeTriangle, DevelopmentFactors, SigmaEstimates) {
        let cum = cumulate(&belgian());
        let f = estimate_development_factors(&cum).unwrap();
        let s = estimate_sigmas(&cum, &f).unwrap();
        (cum, f, s)
    }

    fn near4(a: f64, b: f64) -> bool {
        (a - b).abs() <= 5e-5
    }

    #[test]
    fn d_ln_f_cases() {
        let (cum, _, _) = belgian_parts();
        assert_eq!(d_ln_f(&cum, 5, 6, 1).unwrap(), 0.0);
        let v = d_ln_f(&cum, 5, 2, 6).unwrap();
        assert_eq!(v, 1.0 / cum.column_partial_sum(6, 5).unwrap());
        assert!(v > 0.0);
        assert!(d_ln_f(&cum, 0, 1, 1).is_err());
        assert!(d_ln_f(&cum, 10, 1, 1).is_err());
        assert!(d_ln_f(&cum, 3, 3, 9).is_err());
    }

    #[test]
    fn belgian_year_eight_spots() {
        let (cum, f, _) = belgian_parts();
        let t = impact_reserve_ay(&cum, &f, 8).unwrap();
        assert!(near4(t.at(1, 1), -0.1762));
        assert!(near4(t.at(8, 1), 0.8037));
        assert!(near4(t.at(1, 10), 0.9748));
        assert!(near4(t.at(2, 4), 0.0932));
        assert_eq!(t.at(9, 1), 0.0);
        assert_eq!(t.at(9, 2), 0.0);
        assert_eq!(t.at(10, 1), 0.0);
        assert!((1..=3).all(|j| t.at(8, j) == t.at(8, 1)));
    }

    #[test]
    fn belgian_total_spots() {
        let (cum, f, _) = belgian_parts();
        let t = impact_reserve_total(&cum, &f).unwrap();
        assert!(near4(t.at(1, 1), -1.3875));
        assert!(near4(t.at(1, 10), 9.3050));
    }

    #[test]
    fn year_one_is_zero() {
        let (cum, f, s) = belgian_parts();
        assert!(impact_reserve_ay(&cum, &f, 1).unwrap().cells().all(|(_, v)| v == 0.0));
        assert!(impact_mse_ay(&cum, &f, &s, 1).unwrap().cells().all(|(_, v)| v == 0.0));
        assert!(impact_reserve_ay(&cum, &f, 11).is_err());
    }

    #[test]
    fn two_by_two_total_is_year_two() {
        let cum = CumulativeTriangle::new(vec![vec![10.0, 20.0], vec![7.0]]).unwrap();
        let f = estimate_development_factors(&cum).unwrap();
        assert_eq!(
            impact_reserve_total(&cum, &f).unwrap().rows(),
            impact_reserve_ay(&cum, &f, 2).unwrap().rows()
        );
        let pri = default_priors(&cum, &f).unwrap();
        assert_eq!(
            impact_bf_total(&cum, &f, &pri).unwrap().rows(),
            impact_bf_ay(&cum, &f, &pri, 2).unwrap().rows()
        );
    }

    #[test]
    fn belgian_rmse_year_eight_spots() {
        let (cum, f, s) = belgian_parts();
        let mse = mse_values(&cum, &f, &s)[7];
        let t = impact_rmse(mse, &impact_mse_ay(&cum, &f, &s, 8).unwrap()).unwrap();
        assert_eq!(t.statistic, Statistic::RmseAy);
        assert!(near4(t.at(1, 1), 0.0863));
        assert!(near4(t.at(8, 1), 0.0208));
        assert!(near4(t.at(1, 10), -0.4773));
        assert!(near4(t.at(7, 4), -0.0988));
    }

    #[test]
    fn mse_sign_opposes_reserve_sign() {
        let (cum, f, s) = belgian_parts();
        for i in 2..=10 {
            let r = impact_reserve_ay(&cum, &f, i).unwrap();
            let m = impact_mse_ay(&cum, &f, &s, i).unwrap();
            for (c, v) in r.cells() {
                if c.i < i && v != 0.0 {
                    assert_eq!(m.at(c.i, c.j).signum(), -v.signum());
                }
            }
        }
    }

    #[test]
    fn zero_sigmas_give_zero_mse_impacts() {
        let (cum, f, s) = belgian_parts();
        let zero = SigmaEstimates::new(vec![0.0; s.len()]).unwrap();
        assert!(impact_mse_ay(&cum, &f, &zero, 6)
            .unwrap()
            .cells()
            .all(|(_, v)| v == 0.0));
        assert!(impact_mse_total(&cum, &f, &zero)
            .unwrap()
            .cells()
            .all(|(_, v)| v == 0.0));
    }

    #[test]
    fn rmse_transform() {
        let t = ImpactTriangle::from_fn(Statistic::MseAy, Some(2), 2, |k, _| if k == 1 { 8.0 } else { 0.0 });
        let r = impact_rmse(4.0, &t).unwrap();
        assert_eq!(r.at(1, 1), 2.0);
        assert_eq!(r.at(2, 1), 0.0);
        assert_eq!(impact_rmse(0.0, &t), Err(Error::UndefinedRmseImpact));
    }

    #[test]
    fn belgian_total_rmse_first_column_positive() {
        let (cum, f, s) = belgian_parts();
        let summary = MackSummary::compute(&cum).unwrap();
        let t = impact_rmse(summary.mse_total, &impact_mse_total(&cum, &f, &s).unwrap()).unwrap();
        assert!((1..=10).all(|k| t.at(k, 1) > 0.0));
        assert!(t.at(1, 10) < 0.0);
    }

    #[test]
    fn bf_zero_on_and_below_own_row() {
        let (cum, f, _) = belgian_parts();
        let pri = default_priors(&cum, &f).unwrap();
        let t = impact_bf_ay(&cum, &f, &pri, 6).unwrap();
        assert!(t.cells().filter(|(c, _)| c.i >= 6).all(|(_, v)| v == 0.0));
        assert_eq!(impact_bf_total(&cum, &f, &pri).unwrap().at(10, 1), 0.0);
    }

    #[test]
    fn euler_on_reserves_and_refusal_elsewhere() {
        let inc = belgian();
        let (cum, f, s) = belgian_parts();
        let r = reserves(&cum, &f).unwrap();
        let m = marginal_contributions(&impact_reserve_total(&cum, &f).unwrap(), &inc).unwrap();
        assert_eq!(m.statistic, Statistic::Marginal);
        assert_eq!(m.sum().round(), 1_463_388_942.0);
        let m8 = marginal_contributions(&impact_reserve_ay(&cum, &f, 8).unwrap(), &inc).unwrap();
        assert_eq!(m8.sum().round(), 226_403_952.0);
        assert!((m8.sum() - r.by_year[7]).abs() <= 1e-10 * r.by_year[7]);

        let mse = impact_mse_ay(&cum, &f, &s, 8).unwrap();
        assert!(matches!(
            marginal_contributions(&mse, &inc),
            Err(Error::NotOrderOneHomogeneous(_))
        ));
        let pri = default_priors(&cum, &f).unwrap();
        let bf = impact_bf_total(&cum, &f, &pri).unwrap();
        assert!(marginal_contributions(&bf, &inc).is_err());
    }

    #[test]
    fn zero_cell_contributes_nothing() {
        let mut rows: Vec<Vec<f64>> = random_triangle(1, 5).rows().to_vec();
        rows[1][2] = 0.0;
        let inc = IncrementalTriangle::new(rows).unwrap();
        let cum = cumulate(&inc);
        let f = estimate_development_factors(&cum).unwrap();
        let m = marginal_contributions(&impact_reserve_total(&cum, &f).unwrap(), &inc).unwrap();
        assert_eq!(m.at(2, 3), 0.0);
    }
}
