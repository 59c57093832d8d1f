// SPDX-License-Identifier: Apache-2.0

//! Finite-difference oracle for the analytic impact triangles.
//!
//! Reserve impacts are compared directly against central differences of the
//! full chain-ladder recomputation. MSE impacts are checked component-wise:
//! each building block (`ln f_s`, `C_{n,r}`, `C_{i,I}`, `S_r f_r^2`) is
//! differentiated numerically, the MSE impact formulas are re-assembled from
//! those numeric pieces, and the result is compared with the analytic
//! triangle. Direct differences of the plug-in MSE estimator are reported
//! for information only; they differ by construction because the estimation
//! error term is substituted after differentiation.

use serde::{Deserialize, Serialize};

use crate::bornhuetter::{bf_reserves, PriorUltimates};
use crate::chainladder::{
    estimate_development_factors, estimate_sigmas, estimation_sum, mse_total, process_sum, reserves,
    DevelopmentFactors, SigmaEstimates,
};
use crate::error::{Error, Result};
use crate::impact::{
    impact_bf_ay, impact_bf_total, impact_mse_ay, impact_mse_total, impact_reserve_ay, impact_reserve_total, Frame,
    ImpactTriangle,
};
use crate::quantile::{fit_lognormal, impact_quantile, inv_std_normal_cdf};
use crate::triangle::{cumulate, observed_cells, CellIndex, IncrementalTriangle};

pub const DEFAULT_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdScheme {
    pub relative_step: f64,
    pub absolute_floor: f64,
}

impl Default for FdScheme {
    fn default() -> Self {
        Self {
            relative_step: 1e-6,
            absolute_floor: 1e-2,
        }
    }
}

impl FdScheme {
    pub fn step(&self, x: f64) -> f64 {
        (self.relative_step * x.abs()).max(self.absolute_floor)
    }
}

/// `max(|a|, |n|, 1e-12)`-normalised difference.
pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-12)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellComparison {
    /// What was compared, e.g. `reserve-ay[8]` or `dln_f[3]`.
    pub label: String,
    pub k: usize,
    pub j: usize,
    pub analytic: f64,
    pub numeric: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub tolerance: f64,
    pub cells: Vec<CellComparison>,
    pub worst: Option<CellComparison>,
    pub passed: bool,
    /// Comparisons that are reported but not part of the verdict.
    pub informational: Vec<CellComparison>,
}

impl VerificationReport {
    fn new(subject: impl Into<String>, tolerance: f64) -> Self {
        Self {
            subject: subject.into(),
            tolerance,
            cells: Vec::new(),
            worst: None,
            passed: true,
            informational: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, cell: CellIndex, analytic: f64, numeric: f64) {
        let c = CellComparison {
            label: label.into(),
            k: cell.i,
            j: cell.j,
            analytic,
            numeric,
            rel_error: relative_error(analytic, numeric),
        };
        // NaN errors must fail the report.
        if !(c.rel_error <= self.tolerance) {
            self.passed = false;
        }
        if self.worst.as_ref().is_none_or(|w| !(c.rel_error <= w.rel_error)) {
            self.worst = Some(c.clone());
        }
        self.cells.push(c);
    }

    fn note(&mut self, label: impl Into<String>, cell: CellIndex, analytic: f64, numeric: f64) {
        self.informational.push(CellComparison {
            label: label.into(),
            k: cell.i,
            j: cell.j,
            analytic,
            numeric,
            rel_error: relative_error(analytic, numeric),
        });
    }

    pub fn max_rel_error(&self) -> f64 {
        self.worst.as_ref().map_or(0.0, |w| w.rel_error)
    }
}

/// Central differences of a vector-valued functional at one cell; falls
/// back to a forward difference where `X - h` would be negative.
pub fn fd_gradient<F>(inc: &IncrementalTriangle, cell: CellIndex, scheme: &FdScheme, statistic: F) -> Result<Vec<f64>>
where
    F: Fn(&IncrementalTriangle) -> Result<Vec<f64>>,
{
    let x = inc.get(cell.i, cell.j).ok_or(Error::IndexOutOfRange {
        what: "observed cell row",
        index: cell.i,
        max: inc.dim(),
    })?;
    let h = scheme.step(x);
    let eval = |v: f64| -> Result<Vec<f64>> {
        statistic(&inc.with_value(cell, v)?).map_err(|e| Error::Evaluation(format!("{cell}: {e}")))
    };
    let up = eval(x + h)?;
    let (down, width) = if x - h < 0.0 {
        (eval(x)?, h)
    } else {
        (eval(x - h)?, 2.0 * h)
    };
    Ok(up.iter().zip(&down).map(|(a, b)| (a - b) / width).collect())
}

pub fn fd_derivative<F>(inc: &IncrementalTriangle, cell: CellIndex, scheme: &FdScheme, statistic: F) -> Result<f64>
where
    F: Fn(&IncrementalTriangle) -> Result<f64>,
{
    Ok(fd_gradient(inc, cell, scheme, |t| statistic(t).map(|v| vec![v]))?[0])
}

/// Which reserve statistic to verify. BF priors stay frozen under
/// perturbation.
#[derive(Debug, Clone, PartialEq)]
pub enum ReserveTarget {
    Total,
    Year(usize),
    BfTotal(PriorUltimates),
    BfYear(usize, PriorUltimates),
}

impl ReserveTarget {
    fn label(&self) -> String {
        match self {
            ReserveTarget::Total => "reserve-total".into(),
            ReserveTarget::Year(i) => format!("reserve-ay[{i}]"),
            ReserveTarget::BfTotal(_) => "bf-total".into(),
            ReserveTarget::BfYear(i, _) => format!("bf-ay[{i}]"),
        }
    }

    fn value(&self, inc: &IncrementalTriangle) -> Result<f64> {
        let cum = cumulate(inc);
        let f = estimate_development_factors(&cum)?;
        Ok(match self {
            ReserveTarget::Total => reserves(&cum, &f)?.total,
            ReserveTarget::Year(i) => reserves(&cum, &f)?.by_year[*i - 1],
            ReserveTarget::BfTotal(p) => bf_reserves(&cum, &f, p)?.total,
            ReserveTarget::BfYear(i, p) => bf_reserves(&cum, &f, p)?.by_year[*i - 1],
        })
    }

    fn analytic(&self, inc: &IncrementalTriangle) -> Result<ImpactTriangle> {
        let cum = cumulate(inc);
        let f = estimate_development_factors(&cum)?;
        match self {
            ReserveTarget::Total => impact_reserve_total(&cum, &f),
            ReserveTarget::Year(i) => impact_reserve_ay(&cum, &f, *i),
            ReserveTarget::BfTotal(p) => impact_bf_total(&cum, &f, p),
            ReserveTarget::BfYear(i, p) => impact_bf_ay(&cum, &f, p, *i),
        }
    }
}

pub fn verify_reserve_impacts(
    inc: &IncrementalTriangle,
    target: &ReserveTarget,
    scheme: &FdScheme,
    tolerance: f64,
) -> Result<VerificationReport> {
    let analytic = target.analytic(inc)?;
    let label = target.label();
    let mut report = VerificationReport::new(label.clone(), tolerance);
    for cell in observed_cells(inc.dim()) {
        let numeric = fd_derivative(inc, cell, scheme, |t| target.value(t))?;
        report.push(label.clone(), cell, analytic.at(cell.i, cell.j), numeric);
    }
    Ok(report)
}

/// Baseline quantities that the MSE formulas treat as values.
struct Baseline {
    dim: usize,
    factors: DevelopmentFactors,
    sigmas: SigmaEstimates,
    latest: Vec<f64>,
    ult: Vec<f64>,
    sf2: Vec<f64>,
    process: Vec<f64>,
    estimation: Vec<f64>,
}

impl Baseline {
    fn new(inc: &IncrementalTriangle) -> Result<Self> {
        let cum = cumulate(inc);
        let dim = cum.dim();
        let factors = estimate_development_factors(&cum)?;
        let sigmas = estimate_sigmas(&cum, &factors)?;
        let latest = (1..=dim).map(|i| cum.c(i, dim + 1 - i)).collect();
        let ult = (1..=dim)
            .map(|i| cum.c(i, dim + 1 - i) * factors.to_ultimate(i))
            .collect();
        let sf2 = (1..dim)
            .map(|r| cum.colsum(r, dim - r) * factors.get(r).powi(2))
            .collect();
        let process = (1..=dim).map(|i| process_sum(&factors, &sigmas, dim, i)).collect();
        let estimation = (1..=dim).map(|i| estimation_sum(&cum, &factors, &sigmas, i)).collect();
        Ok(Self {
            dim,
            factors,
            sigmas,
            latest,
            ult,
            sf2,
            process,
            estimation,
        })
    }
}

/// Layout of the component vector differentiated by the oracle.
struct Layout {
    dim: usize,
}

impl Layout {
    fn ln_f(&self, s: usize) -> usize {
        s - 1
    }
    fn c(&self, n: usize, r: usize) -> usize {
        // rows 1..n-1 hold sum_{m<n} (I - m + 1) cells
        let before: usize = (1..n).map(|m| self.dim + 1 - m).sum();
        self.dim - 1 + before + r - 1
    }
    fn ult(&self, i: usize) -> usize {
        self.dim - 1 + self.dim * (self.dim + 1) / 2 + i - 1
    }
    fn sf2(&self, r: usize) -> usize {
        self.dim - 1 + self.dim * (self.dim + 1) / 2 + self.dim + r - 1
    }
}

fn components(inc: &IncrementalTriangle) -> Result<Vec<f64>> {
    let cum = cumulate(inc);
    let dim = cum.dim();
    let f = estimate_development_factors(&cum)?;
    let mut out: Vec<f64> = f.as_slice().iter().map(|v| v.ln()).collect();
    out.extend(cum.rows().iter().flatten().copied());
    out.extend((1..=dim).map(|i| cum.c(i, dim + 1 - i) * f.to_ultimate(i)));
    out.extend((1..dim).map(|r| cum.colsum(r, dim - r) * f.get(r).powi(2)));
    Ok(out)
}

/// Per-year MSE impact in component form:
/// `P_i dC_i + 2 C F sqrt(E) (F sqrt(E) dC_i - C dF_i)`.
fn assemble_mse_ay(b: &Baseline, i: usize, d_latest: f64, d_ln_big_f: f64) -> f64 {
    if i == 1 {
        return 0.0;
    }
    let c = b.latest[i - 1];
    let big_f = b.factors.to_ultimate(i);
    let root_e = b.estimation[i - 1].sqrt();
    let d_big_f = big_f * d_ln_big_f;
    b.process[i - 1] * d_latest + 2.0 * c * big_f * root_e * (big_f * root_e * d_latest - c * d_big_f)
}

fn assemble_mse_total(b: &Baseline, d_ay: &[f64], d_ult: &[f64], d_sf2: &[f64]) -> f64 {
    let dim = b.dim;
    let mut total = 0.0;
    for i in 2..=dim {
        let later: f64 = b.ult[i..].iter().sum();
        let d_later: f64 = d_ult[i..].iter().sum();
        let v: f64 = (dim + 1 - i..dim).map(|r| 2.0 * b.sigmas.get(r) / b.sf2[r - 1]).sum();
        let dv: f64 = (dim + 1 - i..dim)
            .map(|r| -2.0 * b.sigmas.get(r) * d_sf2[r - 1] / b.sf2[r - 1].powi(2))
            .sum();
        let da = b.ult[i - 1] * d_later + later * d_ult[i - 1];
        total += d_ay[i - 1] + b.ult[i - 1] * later * dv + v * da;
    }
    total
}

/// Numeric components and the MSE impacts assembled from them, per cell.
struct Assembled {
    per_year: Vec<ImpactTriangle>,
    total: ImpactTriangle,
}

fn assemble_from_fd(
    inc: &IncrementalTriangle,
    b: &Baseline,
    scheme: &FdScheme,
    mut each: impl FnMut(CellIndex, &[f64]),
) -> Result<Assembled> {
    let dim = b.dim;
    let lay = Layout { dim };
    let mut per_year: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); dim]; dim];
    let mut total: Vec<Vec<f64>> = vec![Vec::new(); dim];
    for cell in observed_cells(dim) {
        let g = fd_gradient(inc, cell, scheme, components)?;
        each(cell, &g);
        let d_ay: Vec<f64> = (1..=dim)
            .map(|i| {
                let d_latest = g[lay.c(i, dim + 1 - i)];
                let d_ln_big_f: f64 = (dim + 1 - i..dim).map(|s| g[lay.ln_f(s)]).sum();
                assemble_mse_ay(b, i, d_latest, d_ln_big_f)
            })
            .collect();
        let d_ult: Vec<f64> = (1..=dim).map(|i| g[lay.ult(i)]).collect();
        let d_sf2: Vec<f64> = (1..dim).map(|r| g[lay.sf2(r)]).collect();
        total[cell.i - 1].push(assemble_mse_total(b, &d_ay, &d_ult, &d_sf2));
        for (i, v) in d_ay.into_iter().enumerate() {
            per_year[i][cell.i - 1].push(v);
        }
    }
    let wrap =
        |stat, target, rows: &Vec<Vec<f64>>| ImpactTriangle::from_fn(stat, target, dim, |k, j| rows[k - 1][j - 1]);
    Ok(Assembled {
        per_year: per_year
            .iter()
            .enumerate()
            .map(|(i, rows)| wrap(crate::impact::Statistic::MseAy, Some(i + 1), rows))
            .collect(),
        total: wrap(crate::impact::Statistic::MseTotal, None, &total),
    })
}

/// Plug-in MSE values with the variance parameters frozen at `sigmas`.
fn plug_in_mse(inc: &IncrementalTriangle, sigmas: &SigmaEstimates) -> Result<Vec<f64>> {
    let cum = cumulate(inc);
    let f = estimate_development_factors(&cum)?;
    let mut out = crate::impact::mse_values(&cum, &f, sigmas);
    out.push(mse_total(&cum, &f, sigmas)?);
    Ok(out)
}

pub fn verify_mse_components(
    inc: &IncrementalTriangle,
    scheme: &FdScheme,
    tolerance: f64,
) -> Result<VerificationReport> {
    let b = Baseline::new(inc)?;
    let dim = b.dim;
    let cum = cumulate(inc);
    let frame = Frame::new(&cum, &b.factors)?;
    let lay = Layout { dim };
    let mut report = VerificationReport::new("mse-components", tolerance);

    let assembled = assemble_from_fd(inc, &b, scheme, |cell, g| {
        let (k, j) = (cell.i, cell.j);
        for s in 1..dim {
            report.push(format!("dln_f[{s}]"), cell, frame.dlnf(s, k, j), g[lay.ln_f(s)]);
        }
        for n in 1..=dim {
            for r in 1..=dim + 1 - n {
                let exact = if k == n && j <= r { 1.0 } else { 0.0 };
                report.push(format!("dC[{n},{r}]"), cell, exact, g[lay.c(n, r)]);
            }
        }
        for i in 1..=dim {
            let exact = frame.reserve_ay(i, k, j) + if k == i { 1.0 } else { 0.0 };
            report.push(format!("dU[{i}]"), cell, exact, g[lay.ult(i)]);
        }
        for r in 1..dim {
            let f2 = b.factors.get(r).powi(2);
            let ds = if k <= dim - r && j <= r { 1.0 } else { 0.0 };
            let exact = f2 * ds + 2.0 * b.sf2[r - 1] * frame.dlnf(r, k, j);
            report.push(format!("dSf2[{r}]"), cell, exact, g[lay.sf2(r)]);
        }
    })?;

    for i in 2..=dim {
        let analytic = impact_mse_ay(&cum, &b.factors, &b.sigmas, i)?;
        for (cell, v) in analytic.cells() {
            report.push(
                format!("mse-ay[{i}]"),
                cell,
                v,
                assembled.per_year[i - 1].at(cell.i, cell.j),
            );
        }
    }
    let analytic_total = impact_mse_total(&cum, &b.factors, &b.sigmas)?;
    for (cell, v) in analytic_total.cells() {
        report.push("mse-total", cell, v, assembled.total.at(cell.i, cell.j));
    }

    // Direct differences of the plug-in estimator, for information.
    for cell in observed_cells(dim) {
        let g = fd_gradient(inc, cell, scheme, |t| plug_in_mse(t, &b.sigmas))?;
        report.note(
            format!("direct mse-ay[{dim}]"),
            cell,
            impact_mse_ay(&cum, &b.factors, &b.sigmas, dim)?.at(cell.i, cell.j),
            g[dim - 1],
        );
        report.note("direct mse-total", cell, analytic_total.at(cell.i, cell.j), g[dim]);
    }
    Ok(report)
}

/// Closed-form `q` quantile of the lognormal matched to `(reserve, mse)`.
fn quantile_map(reserve: f64, mse: f64, z: f64) -> Result<f64> {
    let fit = fit_lognormal(reserve, mse)?;
    Ok((fit.mu + fit.sigma2.sqrt() * z).exp())
}

/// Compares the analytic quantile impacts with the chain rule applied
/// numerically: `dQ/dR * IF(R) + dQ/dmse * IF(mse)`, where `IF(R)` is a
/// direct finite difference, `IF(mse)` is assembled from numeric
/// components, and the partials of the quantile map are differenced too.
pub fn verify_quantile_impacts(
    inc: &IncrementalTriangle,
    q: f64,
    scheme: &FdScheme,
    tolerance: f64,
) -> Result<VerificationReport> {
    let z = inv_std_normal_cdf(q)?;
    let b = Baseline::new(inc)?;
    let cum = cumulate(inc);
    let reserve = reserves(&cum, &b.factors)?.total;
    let mse = mse_total(&cum, &b.factors, &b.sigmas)?;
    let analytic = impact_quantile(&cum, &b.factors, &b.sigmas, q)?;

    let hr = 1e-6 * reserve;
    let hm = 1e-6 * mse;
    let dq_dr = (quantile_map(reserve + hr, mse, z)? - quantile_map(reserve - hr, mse, z)?) / (2.0 * hr);
    let dq_dm = (quantile_map(reserve, mse + hm, z)? - quantile_map(reserve, mse - hm, z)?) / (2.0 * hm);

    let assembled = assemble_from_fd(inc, &b, scheme, |_, _| {})?;
    let mut report = VerificationReport::new(format!("quantile[{q}]"), tolerance);
    for cell in observed_cells(b.dim) {
        let ir = fd_derivative(inc, cell, scheme, |t| {
            let c = cumulate(t);
            Ok(reserves(&c, &estimate_development_factors(&c)?)?.total)
        })?;
        let im = assembled.total.at(cell.i, cell.j);
        report.push("quantile", cell, analytic.at(cell.i, cell.j), dq_dr * ir + dq_dm * im);
    }
    Ok(report)
}
