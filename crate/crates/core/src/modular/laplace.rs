//! Laplace transforms of positive measures on `[1, ∞)` and their `t → 0⁺`
//! behaviour, temperedness, and the boundary limit of `e^{tH}v`.
//!
//! Integrals over unbounded support are done in `u = ln x` on the log scale:
//! the integrand is rescaled by its maximum so transforms as large as
//! `e^{10⁶}` stay representable through [`log_laplace`].

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fit::fit_line;
use crate::quadrature::tanh_sinh;
use crate::scalar::{lit, Real};

/// Dyadic exponents `k` of the sample points `t = 2^{−k}`.
pub const DYADIC_RANGE: std::ops::RangeInclusive<i32> = 4..=24;

/// Largest moment index searched by the temperedness test.
pub const MAX_MOMENT: u32 = 50;

const LOG_DROP: f64 = 45.0;
const PANEL_TOL: f64 = 1e-12;

/// Positive measure on `[1, ∞)` (or on a bounded grid).
#[derive(Debug, Clone, PartialEq)]
pub enum TailMeasure<T> {
    /// Density `x^{−s}` on `[1, ∞)`.
    PowerTail { s: T },
    /// Piecewise-linear density through `(grid[i], density[i])`, zero outside.
    GridDensity { grid: Vec<T>, density: Vec<T> },
    /// Density `e^{c√x}` on `[1, ∞)`.
    StretchedExp { c: T },
}

impl<T: Real> TailMeasure<T> {
    pub fn power_tail(s: T) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::Invalid(format!("power-tail exponent {s}")));
        }
        Ok(TailMeasure::PowerTail { s })
    }

    pub fn stretched_exp(c: T) -> Result<Self> {
        if !(c > T::zero() && c.is_finite()) {
            return Err(Error::Invalid(format!("stretched-exponential rate {c} must be positive")));
        }
        Ok(TailMeasure::StretchedExp { c })
    }

    pub fn grid_density(grid: Vec<T>, density: Vec<T>) -> Result<Self> {
        if grid.len() != density.len() {
            return Err(Error::Shape(format!("{} grid points vs {} density values", grid.len(), density.len())));
        }
        if grid.len() < 2 {
            return Err(Error::Invalid("grid needs at least two points".into()));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) || !grid.iter().all(|g| g.is_finite()) {
            return Err(Error::Invalid("grid must be finite and strictly increasing".into()));
        }
        if grid[0] < T::zero() {
            return Err(Error::Invalid("grid must lie in [0, inf)".into()));
        }
        if density.iter().any(|d| !(*d >= T::zero() && d.is_finite())) {
            return Err(Error::Invalid("density values must be finite and non-negative".into()));
        }
        Ok(TailMeasure::GridDensity { grid, density })
    }

    pub fn has_finite_mass(&self) -> bool {
        match self {
            TailMeasure::PowerTail { s } => *s > T::one(),
            TailMeasure::GridDensity { .. } => true,
            TailMeasure::StretchedExp { .. } => false,
        }
    }
}

impl<T: Real> FromStr for TailMeasure<T> {
    type Err = Error;

    /// `power:<s>` or `stretched:<c>`.
    fn from_str(text: &str) -> Result<Self> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("measure '{text}' is not of the form kind:value")))?;
        let value: f64 = arg.trim().parse().map_err(|_| Error::Invalid(format!("bad measure parameter '{arg}'")))?;
        match kind.trim() {
            "power" => Self::power_tail(lit(value)),
            "stretched" => Self::stretched_exp(lit(value)),
            other => Err(Error::Invalid(format!("unknown measure kind '{other}'"))),
        }
    }
}

/// `ln ∫ (tx)^p e^{−tx} dμ(x)`.
fn log_integral<T: Real>(mu: &TailMeasure<T>, t: T, p: T) -> Result<T> {
    if !(t >= T::zero()) || !t.is_finite() {
        return Err(Error::Invalid(format!("Laplace variable t = {t} must be non-negative")));
    }
    if t == T::zero() && !mu.has_finite_mass() {
        return Err(Error::DivergentIntegral("infinite total mass at t = 0".into()));
    }
    match mu {
        TailMeasure::GridDensity { grid, density } => grid_integral(grid, density, t, p),
        TailMeasure::PowerTail { s } => log_scale_integral(t, T::one() - *s + p, T::zero(), p),
        TailMeasure::StretchedExp { c } => log_scale_integral(t, T::one() + p, *c, p),
    }
}

fn grid_integral<T: Real>(grid: &[T], density: &[T], t: T, p: T) -> Result<T> {
    let mut total = T::zero();
    for (g, d) in grid.windows(2).zip(density.windows(2)) {
        let (x0, x1, d0, d1) = (g[0], g[1], d[0], d[1]);
        let slope = (d1 - d0) / (x1 - x0);
        let f = |x: T| {
            let rho = d0 + slope * (x - x0);
            let w = if p == T::zero() { T::one() } else { (t * x).powf(p) };
            w * (-t * x).exp() * rho
        };
        total = total + tanh_sinh(f, x0, x1, lit(PANEL_TOL), T::min_positive_value())?;
    }
    Ok(total.ln())
}

// ln ∫₀^∞ exp(g(u)) du,  g(u) = −t e^u + a u + c e^{u/2} + p ln t
fn log_scale_integral<T: Real>(t: T, a: T, c: T, p: T) -> Result<T> {
    let ln_t = if p == T::zero() { T::zero() } else { t.ln() };
    let g = |u: T| -t * u.exp() + a * u + c * (u * lit(0.5)).exp() + p * ln_t;

    let u_star = if t == T::zero() {
        if a >= T::zero() {
            return Err(Error::DivergentIntegral(format!("log-slope {a} at t = 0")));
        }
        T::zero()
    } else if c == T::zero() {
        if a > T::zero() {
            (a / t).ln().max(T::zero())
        } else {
            T::zero()
        }
    } else {
        let y = (c * lit(0.5) + (c * c * lit(0.25) + lit::<T>(4.0) * t * a).sqrt()) / (t + t);
        (y.ln() + y.ln()).max(T::zero())
    };
    let g_star = g(u_star);
    // g(u* + v) − g(u*) without cancellation between the large terms
    let big_t = t * u_star.exp();
    let big_c = c * (u_star * lit(0.5)).exp();
    let h = |v: T| -big_t * v.exp_m1() + a * v + big_c * (v * lit(0.5)).exp_m1();
    let curv = -big_t + big_c * lit(0.25);
    let sigma = if curv < T::zero() { (-curv).sqrt().recip().min(T::one()) } else { T::one() };

    let drop: T = lit(LOG_DROP);
    let mut reach = T::one();
    while h(reach) > -drop {
        reach = reach + reach;
        if reach > lit(1e5) {
            return Err(Error::DivergentIntegral("integrand does not decay".into()));
        }
    }
    let (lo, hi) = (-u_star, reach);

    let mut cuts = vec![lo, hi];
    for k in -8..=8 {
        cuts.push(sigma * lit(f64::from(k)));
    }
    let near_end = (sigma * lit(8.0) + lit(64.0)).min(hi);
    let mut v = lo + T::one();
    while v < near_end {
        cuts.push(v);
        v = v + T::one();
    }
    let mut width = T::one();
    let mut v = near_end;
    while v < hi {
        cuts.push(v);
        width = width + width;
        v = v + width;
    }
    cuts.retain(|&x| x >= lo && x <= hi);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() <= T::epsilon() * lit(64.0) * (T::one() + y.abs()));

    let mut sum = T::zero();
    for w in cuts.windows(2) {
        sum = sum + tanh_sinh(|v| h(v).exp(), w[0], w[1], lit(PANEL_TOL), T::epsilon() * T::epsilon())?;
    }
    if !(sum > T::zero()) {
        return Err(Error::Quadrature("vanishing integral".into()));
    }
    Ok(g_star + sum.ln())
}

/// `ln 𝓛(μ)(t)`.
pub fn log_laplace<T: Real>(mu: &TailMeasure<T>, t: T) -> Result<T> {
    log_integral(mu, t, T::zero())
}

/// `𝓛(μ)(t) = ∫ e^{−tx} dμ(x)`, `t ≥ 0` (t = 0 only for finite measures).
pub fn laplace<T: Real>(mu: &TailMeasure<T>, t: T) -> Result<T> {
    let v = log_laplace(mu, t)?.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Quadrature(format!("Laplace transform at t = {t} overflows; use log_laplace")))
    }
}

/// `−t 𝓛′(t) = ∫ tx e^{−tx} dμ(x)`.
pub fn laplace_moment<T: Real>(mu: &TailMeasure<T>, t: T) -> Result<T> {
    Ok(log_integral(mu, t, T::one())?.exp())
}

/// Small-t regime of `𝓛(μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime<T> {
    /// `𝓛(0⁺)` finite.
    Finite,
    /// `𝓛(t) ~ C |log t|`.
    Log,
    /// `𝓛(t) ~ C t^{exponent}`, exponent < 0.
    Power(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReport<T> {
    pub regime: Regime<T>,
    pub fitted_constant: T,
    pub residual: T,
}

fn dyadic<T: Real>(k: i32) -> T {
    lit(2f64.powi(-k))
}

/// Classifies `𝓛(μ)(t)` as `t → 0⁺` from the grid `t = 2^{−k}`, `k = 4..=24`.
///
/// The regime is read off the log-log slope of `M(t) = −t𝓛′(t)`, which has the
/// same leading power as `𝓛` but no additive constant: `M ~ p C t^{−p}` in the
/// power case and `M → C` in the logarithmic case.
pub fn laplace_asymptotics<T: Real>(mu: &TailMeasure<T>) -> Result<AsymptoticReport<T>> {
    if let TailMeasure::StretchedExp { .. } = mu {
        return Err(Error::Fit("transform grows faster than any power of 1/t".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in DYADIC_RANGE {
        let t = dyadic::<T>(k);
        xs.push(t.ln());
        ys.push(log_integral(mu, t, T::one())?);
    }
    let n = xs.len();
    let p = -(ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    let half = n / 2;
    let fit = fit_line(&xs[half..], &ys[half..])?;
    if fit.rms_residual > lit(0.05) {
        return Err(Error::Fit(format!("log-log residual {} too large", fit.rms_residual)));
    }
    let band: T = lit(0.02);
    let t_min = dyadic::<T>(*DYADIC_RANGE.end());
    let (regime, fitted_constant) = if p > band {
        (Regime::Power(-p), (ys[n - 1] + p * xs[n - 1]).exp() / p)
    } else if p >= -band {
        (Regime::Log, ys[n - 1].exp())
    } else if mu.has_finite_mass() {
        (Regime::Finite, laplace(mu, T::zero())?)
    } else {
        (Regime::Finite, laplace(mu, t_min)?)
    };
    Ok(AsymptoticReport { regime, fitted_constant, residual: fit.rms_residual })
}

/// Outcome of the two temperedness criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperednessReport<T> {
    /// Moment criterion: `∫(1+x²)^{−n} dμ < ∞` for some `n ≤ 50`.
    pub is_tempered: bool,
    /// Smallest such n.
    pub n_star: Option<u32>,
    /// Growth criterion `𝓛(t) ≤ C t^{−N}`.
    pub growth_tempered: bool,
    /// Fitted growth exponent N.
    pub big_n_star: Option<T>,
    pub agree: bool,
}

// asymptotic slope in u = ln x of u ↦ x (1+x²)^{−n} ρ(x)
fn moment_log_slope<T: Real>(mu: &TailMeasure<T>, n: u32) -> T {
    let (u1, u2): (T, T) = (lit(200.0), lit(201.0));
    let nf: T = lit(f64::from(n));
    let log_rho = |u: T| match mu {
        TailMeasure::PowerTail { s } => -*s * u,
        TailMeasure::StretchedExp { c } => *c * (u * lit(0.5)).exp(),
        TailMeasure::GridDensity { .. } => T::neg_infinity(),
    };
    // ln(1 + e^{2u}) = 2u + ln(1 + e^{−2u})
    let g = |u: T| u + log_rho(u) - nf * (u + u + (-(u + u)).exp().ln_1p());
    g(u2) - g(u1)
}

/// Smallest n ≤ 50 with a finite `(1+x²)^{−n}` moment.
pub fn moment_index<T: Real>(mu: &TailMeasure<T>) -> Option<u32> {
    if let TailMeasure::GridDensity { .. } = mu {
        return Some(0);
    }
    (0..=MAX_MOMENT).find(|&n| moment_log_slope(mu, n) < T::zero())
}

// local exponents σ_k = −Δ ln 𝓛 / Δ ln t on consecutive dyadic points
fn growth_slopes<T: Real>(mu: &TailMeasure<T>) -> Result<Vec<T>> {
    let logs = DYADIC_RANGE.map(|k| log_laplace(mu, dyadic::<T>(k))).collect::<Result<Vec<T>>>()?;
    let ln2: T = T::LN_2();
    Ok(logs.windows(2).map(|w| (w[1] - w[0]) / ln2).collect())
}

fn growth_verdict<T: Real>(slopes: &[T]) -> (bool, T) {
    let last = slopes[slopes.len() - 1];
    let earlier = slopes[slopes.len() - 5];
    let ok = last <= lit(f64::from(MAX_MOMENT)) && (last - earlier).abs() < lit(0.5);
    (ok, last.max(T::zero()))
}

/// Moment-based and growth-based temperedness verdicts.
pub fn temperedness_test<T: Real>(mu: &TailMeasure<T>) -> Result<TemperednessReport<T>> {
    let n_star = moment_index(mu);
    let slopes = growth_slopes(mu).map_err(|e| Error::Inconclusive(format!("growth test failed: {e}")))?;
    let (growth_tempered, big_n) = growth_verdict(&slopes);
    let is_tempered = n_star.is_some();
    Ok(TemperednessReport {
        is_tempered,
        n_star,
        growth_tempered,
        big_n_star: growth_tempered.then_some(big_n),
        agree: is_tempered == growth_tempered,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionLimit<T> {
    pub exists: bool,
    /// Exponent N in `‖e^{tH}v‖ ≤ C (b − t)^{−N}`.
    pub fitted_n: T,
}

/// Boundary behaviour of `e^{tH}v`, `v(λ) = e^{−bλ}`, as `t ↑ b`.
///
/// Uses `‖e^{tH}v‖² = 𝓛(μ)(2(b − t))` on `2(b − t) = 2^{−k}`.
pub fn distribution_limit_check<T: Real>(mu: &TailMeasure<T>, b: T) -> Result<DistributionLimit<T>> {
    if !(b > T::zero() && b.is_finite()) {
        return Err(Error::Invalid(format!("b = {b} must be positive")));
    }
    let slopes = growth_slopes(mu).map_err(|e| Error::Fit(format!("{e}")))?;
    let (exists, big_n) = growth_verdict(&slopes);
    let last = slopes[slopes.len() - 1];
    let fitted_n = if exists { big_n } else { last } * lit(0.5);
    Ok(DistributionLimit { exists, fitted_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn power(s: f64) -> TailMeasure<f64> {
        TailMeasure::power_tail(s).unwrap()
    }

    #[test]
    fn closed_forms() {
        // ∫₁^∞ e^{−x} dx
        assert_relative_eq!(laplace(&power(0.0), 1.0).unwrap(), (-1f64).exp(), max_relative = 1e-10);
        assert_relative_eq!(laplace(&power(2.0), 0.0).unwrap(), 1.0, max_relative = 1e-10);
        // ∫₁^∞ x^{−1} e^{−tx} dx = E₁(t); E₁(1) from mpmath
        assert_relative_eq!(laplace(&power(1.0), 1.0).unwrap(), 0.219_383_934_395_520_3, max_relative = 1e-10);
        // PowerTail(0): e^{−t}/t
        let t = 1e-5;
        assert_relative_eq!(laplace(&power(0.0), t).unwrap(), (-t).exp() / t, max_relative = 1e-10);
        // PowerTail(1/2) at t = 0.01: t^{-1/2} Γ(1/2, t), mpmath
        assert_relative_eq!(laplace(&power(0.5), 0.01).unwrap(), 15.731_185_223_248_4, max_relative = 1e-9);
    }

    #[test]
    fn grid_density_matches_exponential_integral() {
        // constant density 1 on [1, 3]: (e^{−t} − e^{−3t})/t
        let mu = TailMeasure::grid_density(vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 1.0]).unwrap();
        let t: f64 = 0.7;
        let want = ((-t).exp() - (-3.0 * t).exp()) / t;
        assert_relative_eq!(laplace(&mu, t).unwrap(), want, max_relative = 1e-12);
        assert_relative_eq!(laplace(&mu, 0.0).unwrap(), 2.0, max_relative = 1e-12);
        assert!(TailMeasure::grid_density(vec![1.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(TailMeasure::grid_density(vec![1.0, 2.0], vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn stretched_exponential_saddle() {
        // ln 𝓛 ≈ c²/(4t) + ½ ln(π c²/t³) for small t
        let mu = TailMeasure::stretched_exp(1.0).unwrap();
        let t: f64 = 1e-3;
        let lead = 1.0 / (4.0 * t) + 0.5 * (PI / (t * t * t)).ln();
        let got = log_laplace(&mu, t).unwrap();
        assert!((got - lead).abs() < 1e-2, "{got} vs {lead}");
        assert!(matches!(laplace(&mu, 1e-6), Err(Error::Quadrature(_))));
        assert!(log_laplace(&mu, 2f64.powi(-24)).unwrap().is_finite());
    }

    #[test]
    fn divergence_and_domain() {
        assert!(matches!(laplace(&power(1.0), 0.0), Err(Error::DivergentIntegral(_))));
        assert!(matches!(laplace(&power(0.5), 0.0), Err(Error::DivergentIntegral(_))));
        assert!(matches!(laplace(&power(0.5), -1.0), Err(Error::Invalid(_))));
        assert!(TailMeasure::<f64>::stretched_exp(0.0).is_err());
    }

    #[test]
    fn parse_measures() {
        assert_eq!("power:0.5".parse::<TailMeasure<f64>>().unwrap(), power(0.5));
        assert_eq!("stretched:2".parse::<TailMeasure<f64>>().unwrap(), TailMeasure::StretchedExp { c: 2.0 });
        assert!("gauss:1".parse::<TailMeasure<f64>>().is_err());
        assert!("power".parse::<TailMeasure<f64>>().is_err());
    }

    #[test]
    fn asymptotic_regimes() {
        let r = laplace_asymptotics(&power(1.0)).unwrap();
        assert_eq!(r.regime, Regime::Log);
        assert!((r.fitted_constant - 1.0).abs() < 1e-2);

        let r = laplace_asymptotics(&power(0.5)).unwrap();
        match r.regime {
            Regime::Power(e) => assert!((e + 0.5).abs() < 1e-6),
            other => panic!("{other:?}"),
        }
        assert!((r.fitted_constant - PI.sqrt()).abs() < 1e-6);

        let r = laplace_asymptotics(&power(2.0)).unwrap();
        assert_eq!(r.regime, Regime::Finite);
        assert_relative_eq!(r.fitted_constant, 1.0, max_relative = 1e-9);

        let r = laplace_asymptotics(&power(0.0)).unwrap();
        match r.regime {
            Regime::Power(e) => assert!((e + 1.0).abs() < 1e-6),
            other => panic!("{other:?}"),
        }
        assert!((r.fitted_constant - 1.0).abs() < 1e-6);

        assert!(matches!(laplace_asymptotics(&TailMeasure::stretched_exp(1.0).unwrap()), Err(Error::Fit(_))));
    }

    #[test]
    fn temperedness_examples() {
        let r = temperedness_test(&power(0.0)).unwrap();
        assert!(r.is_tempered && r.growth_tempered && r.agree);
        assert_eq!(r.n_star, Some(1));
        assert!((r.big_n_star.unwrap() - 1.0).abs() < 1e-3);

        let r = temperedness_test(&power(3.0)).unwrap();
        assert_eq!(r.n_star, Some(0));
        assert!(r.big_n_star.unwrap() < 1e-3);

        let r = temperedness_test(&TailMeasure::stretched_exp(1.0).unwrap()).unwrap();
        assert!(!r.is_tempered && !r.growth_tempered && r.agree);
        assert_eq!(r.big_n_star, None);

        let mu = TailMeasure::grid_density(vec![1.0, 5.0], vec![2.0, 0.0]).unwrap();
        let r = temperedness_test(&mu).unwrap();
        assert!(r.agree && r.is_tempered);
    }

    #[test]
    fn distribution_limits() {
        let d = distribution_limit_check(&power(0.0), 1.0).unwrap();
        assert!(d.exists);
        assert!((d.fitted_n - 0.5).abs() < 1e-3);
        let d = distribution_limit_check(&power(3.0), 1.0).unwrap();
        assert!(d.exists && d.fitted_n.abs() < 1e-3);
        let d = distribution_limit_check(&TailMeasure::stretched_exp(1.0).unwrap(), 1.0).unwrap();
        assert!(!d.exists);
        assert!(distribution_limit_check(&power(0.0), 0.0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn laplace_decreases_in_t(s in -1.0f64..3.0, t in 1e-3f64..5.0, dt in 1e-3f64..1.0) {
            let mu = power(s);
            proptest::prop_assert!(laplace(&mu, t + dt).unwrap() < laplace(&mu, t).unwrap());
        }
    }
}
