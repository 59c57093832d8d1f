// SPDX-License-Identifier: Apache-2.0

//! Lognormal fit to total reserves and impact functions of its quantiles.

use serde::{Deserialize, Serialize};

use crate::chainladder::{mse_total, reserves, DevelopmentFactors, SigmaEstimates};
use crate::error::{Error, Result};
use crate::impact::{impact_mse_total, impact_reserve_total, ImpactTriangle, Statistic};
use crate::triangle::CumulativeTriangle;

/// Log-scale parameters of `LN(mu, sigma2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LognormalFit {
    pub mu: f64,
    pub sigma2: f64,
}

impl LognormalFit {
    pub fn mean(&self) -> f64 {
        (self.mu + 0.5 * self.sigma2).exp()
    }

    pub fn variance(&self) -> f64 {
        (2.0 * self.mu + self.sigma2).exp() * self.sigma2.exp_m1()
    }
}

/// Moment matching: mean `reserve`, variance `mse`.
pub fn fit_lognormal(reserve: f64, mse: f64) -> Result<LognormalFit> {
    if !(reserve > 0.0) {
        return Err(Error::NonPositive {
            what: "total reserve",
            value: reserve,
        });
    }
    if !(mse > 0.0) {
        return Err(Error::NonPositive {
            what: "mean squared error",
            value: mse,
        });
    }
    let sigma2 = (mse / (reserve * reserve)).ln_1p();
    Ok(LognormalFit {
        mu: reserve.ln() - 0.5 * sigma2,
        sigma2,
    })
}

// Wichura (1988), algorithm AS 241, PPND16.
#[allow(clippy::excessive_precision)]
const A: [f64; 8] = [
    3.387_132_872_796_366_6,
    1.331_416_678_917_843_8e2,
    1.971_590_950_306_551_4e3,
    1.373_169_376_550_946_1e4,
    4.592_195_393_154_987_1e4,
    6.726_577_092_700_870_1e4,
    3.343_057_558_358_812_8e4,
    2.509_080_928_730_122_7e3,
];
#[allow(clippy::excessive_precision)]
const B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_1e1,
    6.871_870_074_920_579_1e2,
    5.394_196_021_424_751_1e3,
    2.121_379_430_158_659_6e4,
    3.930_789_580_009_271_1e4,
    2.872_908_573_572_194_3e4,
    5.226_495_278_852_854_6e3,
];
#[allow(clippy::excessive_precision)]
const C: [f64; 8] = [
    1.423_437_110_749_683_6,
    4.630_337_846_156_545_3,
    5.769_497_221_460_691_4,
    3.647_848_324_763_204_6,
    1.270_458_252_452_368_4,
    2.417_807_251_774_506_1e-1,
    2.272_384_498_926_918_5e-2,
    7.745_450_142_783_414_1e-4,
];
#[allow(clippy::excessive_precision)]
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_8,
    1.676_384_830_183_803_8,
    6.897_673_349_851e-1,
    1.481_039_764_274_800_7e-1,
    1.519_866_656_361_645_7e-2,
    5.475_938_084_995_345e-4,
    1.050_750_071_644_416_8e-9,
];
#[allow(clippy::excessive_precision)]
const E: [f64; 8] = [
    6.657_904_643_501_103_8,
    5.463_784_911_164_114_4,
    1.784_826_539_917_291_3,
    2.965_605_718_285_048_9e-1,
    2.653_218_952_657_612_3e-2,
    1.242_660_947_388_078_4e-3,
    2.711_555_568_743_487_6e-5,
    2.010_334_399_292_288_1e-7,
];
#[allow(clippy::excessive_precision)]
const F: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_4e-1,
    1.369_298_809_227_358e-1,
    1.487_536_129_085_061_5e-2,
    7.868_691_311_456_132_6e-4,
    1.846_318_317_510_054_7e-5,
    1.421_511_758_316_445_9e-7,
    2.044_263_103_389_939_8e-15,
];

fn poly(c: &[f64; 8], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

/// Standard normal quantile `Phi^{-1}(q)`.
pub fn inv_std_normal_cdf(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidProbability(q));
    }
    let d = q - 0.5;
    if d.abs() <= 0.425 {
        let r = 0.180625 - d * d;
        return Ok(d * poly(&A, r) / poly(&B, r));
    }
    let tail = if d < 0.0 { q } else { 1.0 - q };
    let r = (-tail.ln()).sqrt();
    let x = if r <= 5.0 {
        let r = r - 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        let r = r - 5.0;
        poly(&E, r) / poly(&F, r)
    };
    Ok(if d < 0.0 { -x } else { x })
}

pub fn lognormal_quantile(fit: &LognormalFit, q: f64) -> Result<f64> {
    let z = inv_std_normal_cdf(q)?;
    Ok((fit.mu + fit.sigma2.sqrt() * z).exp())
}

/// Chain rule through `Q = exp(mu + sigma z)` given the impacts of the
/// total reserve and of its MSE.
pub fn quantile_impact_from_parts(
    reserve: f64,
    mse: f64,
    reserve_impacts: &ImpactTriangle,
    mse_impacts: &ImpactTriangle,
    q: f64,
) -> Result<ImpactTriangle> {
    if reserve_impacts.dim() != mse_impacts.dim() {
        return Err(Error::DimensionMismatch {
            expected: reserve_impacts.dim(),
            got: mse_impacts.dim(),
        });
    }
    let fit = fit_lognormal(reserve, mse)?;
    let z = inv_std_normal_cdf(q)?;
    let quant = (fit.mu + fit.sigma2.sqrt() * z).exp();
    let sigma = fit.sigma2.sqrt();
    let denom = 2.0 * reserve * (mse + reserve * reserve);
    Ok(ImpactTriangle::from_fn(
        Statistic::Quantile,
        None,
        reserve_impacts.dim(),
        |k, j| {
            let ir = reserve_impacts.at(k, j);
            let im = mse_impacts.at(k, j);
            // half the derivative of sigma2
            let g = (im * reserve - 2.0 * mse * ir) / denom;
            let d_mu = ir / reserve - g;
            let d_sigma = g / sigma;
            (d_mu + z * d_sigma) * quant
        },
    ))
}

/// Impacts on the `q` quantile of the lognormal fitted to total reserves.
pub fn impact_quantile(
    cum: &CumulativeTriangle,
    factors: &DevelopmentFactors,
    sigmas: &SigmaEstimates,
    q: f64,
) -> Result<ImpactTriangle> {
    let reserve = reserves(cum, factors)?.total;
    let mse = mse_total(cum, factors, sigmas)?;
    if mse == 0.0 {
        return Err(Error::NonPositive {
            what: "mean squared error",
            value: mse,
        });
    }
    let ir = impact_reserve_total(cum, factors)?;
    let im = impact_mse_total(cum, factors, sigmas)?;
    quantile_impact_from_parts(reserve, mse, &ir, &im, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainladder::MackSummary;
    use crate::data::belgian;
    use crate::triangle::cumulate;

    /// `Phi` through the Taylor series of erf, accurate far below 1e-12
    /// on the range used here.
    fn phi(x: f64) -> f64 {
        let t = x / std::f64::consts::SQRT_2;
        let mut term = t;
        let mut sum = t;
        let mut n = 0.0;
        while term.abs() > 1e-18 * sum.abs().max(1e-300) {
            n += 1.0;
            term *= -t * t / n;
            sum += term / (2.0 * n + 1.0);
        }
        0.5 + sum / std::f64::consts::PI.sqrt()
    }

    fn bisect(q: f64) -> f64 {
        let (mut lo, mut hi) = (-8.0, 8.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if phi(mid) < q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn matches_bisection_oracle() {
        let mut q = 0.001;
        while q < 0.9995 {
            let a = inv_std_normal_cdf(q).unwrap();
            assert!((a - bisect(q)).abs() < 1e-9, "q={q}");
            q += 0.00731;
        }
        assert!((inv_std_normal_cdf(0.995).unwrap() - 2.575829304).abs() < 1e-8);
        assert!((bisect(0.995) - 2.575829304).abs() < 1e-8);
    }

    #[test]
    fn symmetry_and_centre() {
        assert_eq!(inv_std_normal_cdf(0.5).unwrap(), 0.0);
        for q in [1e-4, 0.02, 0.125, 0.3, 0.44] {
            let a = inv_std_normal_cdf(q).unwrap();
            let b = inv_std_normal_cdf(1.0 - q).unwrap();
            assert!((a + b).abs() < 1e-9 * a.abs().max(1.0));
        }
        assert!(inv_std_normal_cdf(1e-300).unwrap() < -37.0);
    }

    #[test]
    fn rejects_bad_probability() {
        for q in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(inv_std_normal_cdf(q), Err(Error::InvalidProbability(_))));
        }
    }

    #[test]
    fn fit_examples() {
        let fit = fit_lognormal(2.0, 4.0).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!((fit.sigma2 - ln2).abs() < 1e-15);
        assert!((fit.mu - (ln2 - ln2 / 2.0)).abs() < 1e-15);

        let tiny = fit_lognormal(1.0, 1e-15).unwrap();
        assert!(tiny.sigma2.abs() < 1e-12 && tiny.mu.abs() < 1e-12);
        let med = lognormal_quantile(&tiny, 0.9).unwrap();
        assert!((med - tiny.mu.exp()).abs() < 1e-6);

        assert!(fit_lognormal(0.0, 1.0).is_err());
        assert!(fit_lognormal(1.0, 0.0).is_err());
    }

    #[test]
    fn moment_round_trip() {
        for (r, m) in [(1.0, 0.3), (1.463e9, 2.07e15), (50.0, 9000.0)] {
            let fit = fit_lognormal(r, m).unwrap();
            assert!((fit.mean() - r).abs() <= 1e-12 * r);
            assert!((fit.variance() - m).abs() <= 1e-12 * m);
        }
    }

    #[test]
    fn median_and_tail() {
        let fit = fit_lognormal(3.0, 2.0).unwrap();
        assert_eq!(lognormal_quantile(&fit, 0.5).unwrap(), fit.mu.exp());
        let s = MackSummary::from_incremental(&belgian()).unwrap();
        let fit = fit_lognormal(s.total_reserve, s.mse_total).unwrap();
        assert!(lognormal_quantile(&fit, 0.995).unwrap() > s.total_reserve);
    }

    #[test]
    fn zero_inputs_give_zero_impact() {
        let z = ImpactTriangle::from_fn(Statistic::ReserveTotal, None, 3, |_, _| 0.0);
        let t = quantile_impact_from_parts(10.0, 4.0, &z, &z, 0.9).unwrap();
        assert!(t.cells().all(|(_, v)| v == 0.0));
    }

    #[test]
    fn median_impact_is_location_only() {
        let cum = cumulate(&belgian());
        let s = MackSummary::compute(&cum).unwrap();
        let ir = impact_reserve_total(&cum, &s.factors).unwrap();
        let im = impact_mse_total(&cum, &s.factors, &s.sigmas).unwrap();
        let t = quantile_impact_from_parts(s.total_reserve, s.mse_total, &ir, &im, 0.5).unwrap();
        let fit = fit_lognormal(s.total_reserve, s.mse_total).unwrap();
        let r = s.total_reserve;
        let m = s.mse_total;
        for (c, v) in t.cells() {
            let (a, b) = (ir.at(c.i, c.j), im.at(c.i, c.j));
            let d_mu = a / r - (b * r - 2.0 * m * a) / (2.0 * r * (m + r * r));
            let expect = d_mu * fit.mu.exp();
            assert!((v - expect).abs() <= 1e-12 * expect.abs().max(1e-12));
        }
    }

    #[test]
    fn impacts_monotone_in_level() {
        let cum = cumulate(&belgian());
        let s = MackSummary::compute(&cum).unwrap();
        let qs = [0.6, 0.75, 0.9, 0.99, 0.995];
        let tri: Vec<_> = qs
            .iter()
            .map(|&q| impact_quantile(&cum, &s.factors, &s.sigmas, q).unwrap())
            .collect();
        // Each cell is (a + b z) exp(mu + sigma z); on this grid the factor
        // is positive, so signs never flip back once they flip.
        for (c, _) in tri[0].cells() {
            let signs: Vec<f64> = tri.iter().map(|t| t.at(c.i, c.j).signum()).collect();
            let flips = signs.windows(2).filter(|w| w[0] != w[1]).count();
            assert!(flips <= 1, "{c}: {signs:?}");
        }
    }
}
