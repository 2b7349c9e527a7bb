//! Spherical and χ-spherical functions of the real rank-one groups.
//!
//! With root multiplicities `(m_α, m_{α/2})` the spherical function on the
//! Cartan subgroup is `φ_λ(a_t) = ₂F₁(ρ+λ, ρ−λ; c; −sinh²(t/2))`, and its
//! continuation to imaginary time is `φ_λ(a_{it}) = ₂F₁(ρ+λ, ρ−λ; c; sin²(t/2))`
//! for `|t| < π`.

use num_complex::{Complex, Complex64};
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::fit_line;
use crate::linalg::hermitian_min_eigenvalue;
use crate::scalar::{lit, real, Real};
use crate::special::{f21, f21_with_complement, gamma, gamma_real, rgamma, HypParams};

/// Real simple Lie algebras of real rank one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RankOneAlgebra {
    /// `so(1,n)`, n ≥ 2.
    So1n(u32),
    /// `su(1,n)`, n ≥ 1.
    Su1n(u32),
    /// `sp(1,n) = u(1,n;ℍ)`, n ≥ 1.
    Sp1n(u32),
    /// `f₄₍₋₂₀₎`.
    F4_20,
}

impl std::fmt::Display for RankOneAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankOneAlgebra::So1n(n) => write!(f, "so(1,{n})"),
            RankOneAlgebra::Su1n(n) => write!(f, "su(1,{n})"),
            RankOneAlgebra::Sp1n(n) => write!(f, "sp(1,{n})"),
            RankOneAlgebra::F4_20 => write!(f, "f4(-20)"),
        }
    }
}

impl std::str::FromStr for RankOneAlgebra {
    type Err = Error;

    /// Parses `so(1,n)`, `su(1,n)`, `sp(1,n)` and `f4(-20)` (also `so1n:3` style).
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if t == "f4(-20)" || t == "f4" || t == "f4_20" {
            return Ok(RankOneAlgebra::F4_20);
        }
        let (head, tail) = if let Some(rest) = t.strip_suffix(')') {
            let (h, args) =
                rest.split_once("(1,").ok_or_else(|| Error::Invalid(format!("unrecognized algebra '{s}'")))?;
            (h.to_string(), args.to_string())
        } else if let Some((h, n)) = t.split_once(':') {
            (h.trim_end_matches("1n").to_string(), n.to_string())
        } else {
            return Err(Error::Invalid(format!("unrecognized algebra '{s}'")));
        };
        let n: u32 = tail.parse().map_err(|_| Error::Invalid(format!("bad rank parameter in '{s}'")))?;
        let alg = match head.as_str() {
            "so" => RankOneAlgebra::So1n(n),
            "su" => RankOneAlgebra::Su1n(n),
            "sp" | "u_h" => RankOneAlgebra::Sp1n(n),
            _ => return Err(Error::Invalid(format!("unrecognized algebra '{s}'"))),
        };
        root_data(alg)?;
        Ok(alg)
    }
}

/// Root multiplicities and the constants derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootData {
    pub m_alpha: u32,
    pub m_half: u32,
    /// ρ = (2 m_α + m_{α/2}) / 4
    pub rho: Rational64,
    /// c = (m_{α/2} + m_α + 1) / 2
    pub c: Rational64,
    /// Endpoint of the real positivity interval.
    pub s0: Rational64,
}

impl RootData {
    pub fn new(m_alpha: u32, m_half: u32) -> Result<Self> {
        if m_alpha == 0 {
            return Err(Error::Invalid("m_alpha must be positive".into()));
        }
        let (ma, mh) = (i64::from(m_alpha), i64::from(m_half));
        let rho = Rational64::new(2 * ma + mh, 4);
        let s0 = if m_half == 0 { rho } else { Rational64::new(2 + mh, 4) };
        Ok(Self { m_alpha, m_half, rho, c: Rational64::new(mh + ma + 1, 2), s0 })
    }

    pub fn rho_as<T: Real>(&self) -> T {
        ratio(self.rho)
    }

    pub fn c_as<T: Real>(&self) -> T {
        ratio(self.c)
    }

    pub fn s0_as<T: Real>(&self) -> T {
        ratio(self.s0)
    }
}

fn ratio<T: Real>(r: Rational64) -> T {
    lit(r.to_f64().unwrap())
}

pub fn root_data(alg: RankOneAlgebra) -> Result<RootData> {
    match alg {
        RankOneAlgebra::So1n(n) if n >= 2 => RootData::new(n - 1, 0),
        RankOneAlgebra::Su1n(n) if n >= 1 => RootData::new(1, 2 * (n - 1)),
        RankOneAlgebra::Sp1n(n) if n >= 1 => RootData::new(3, 4 * (n - 1)),
        RankOneAlgebra::F4_20 => RootData::new(7, 8),
        other => Err(Error::Invalid(format!("{other:?}: rank parameter out of range"))),
    }
}

/// Spectral parameter λ together with the root data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalParam<T> {
    pub lambda: Complex<T>,
    pub data: RootData,
}

impl<T: Real> SphericalParam<T> {
    pub fn new(alg: RankOneAlgebra, lambda: Complex<T>) -> Result<Self> {
        Ok(Self { lambda, data: root_data(alg)? })
    }

    fn hyp(&self) -> HypParams<T> {
        let rho = real::<T>(self.data.rho_as());
        HypParams { alpha: rho + self.lambda, beta: rho - self.lambda, gamma: real(self.data.c_as()) }
    }

    /// λ = ±ρ, where φ_λ ≡ 1.
    pub fn is_trivial(&self) -> bool {
        let rho = real::<T>(self.data.rho_as());
        self.lambda == rho || self.lambda == -rho
    }
}

/// Leading behaviour of `φ_λ(a_{it})` as `t → π⁻`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticForm<T> {
    /// `cos(t/2)^power · φ_λ(a_{it}) → limit_value`, `power = m_α − 1 ≥ 1`.
    PowerPrefactor { power: u32, limit_value: Complex<T> },
    /// `φ_λ(a_{it}) ~ coefficient · (−log(π − t))`.
    LogRate(Complex<T>),
    /// λ = ±ρ.
    Constant,
}

fn kostant_tol<T: Real>() -> T {
    T::epsilon().sqrt() * lit(1e-4)
}

/// Kostant's criterion: φ_λ is positive definite iff
/// `λ ∈ iℝ ∪ [−s₀, s₀] ∪ {±ρ}`.
pub fn kostant_positive<T: Real>(p: &SphericalParam<T>) -> bool {
    let tol = kostant_tol::<T>().max(T::epsilon() * lit(16.0));
    let l = p.lambda;
    if l.re.abs() <= tol {
        return true;
    }
    if l.im.abs() > tol {
        return false;
    }
    let s0: T = p.data.s0_as();
    let rho: T = p.data.rho_as();
    l.re.abs() <= s0 + tol || (l.re.abs() - rho).abs() <= tol
}

/// `φ_λ(a_t)` for real t.
pub fn spherical<T: Real>(p: &SphericalParam<T>, t: T) -> Result<Complex<T>> {
    let sh = (t * lit(0.5)).sinh();
    let ch = (t * lit(0.5)).cosh();
    f21_with_complement(&p.hyp(), real(-sh * sh), real(ch * ch))
}

/// `φ_λ(a_{it})` for `|t| < π`.
pub fn spherical_imaginary_time<T: Real>(p: &SphericalParam<T>, t: T) -> Result<Complex<T>> {
    let pi = T::PI();
    if !(t.abs() < pi) {
        return Err(Error::Domain(format!("|t| = {} must be below pi", t.abs())));
    }
    let half = t.abs() * lit(0.5);
    let (s, c) = (half.sin(), half.cos());
    imaginary_time_from_trig(p, s, c)
}

/// `φ_λ(a_{i(π−ε)})` for `0 < ε < 2π`, computed without forming `π − ε`.
pub fn spherical_near_boundary<T: Real>(p: &SphericalParam<T>, eps: T) -> Result<Complex<T>> {
    let two_pi = T::PI() + T::PI();
    if !(eps > T::zero() && eps < two_pi) {
        return Err(Error::Domain(format!("boundary offset {eps} outside (0, 2pi)")));
    }
    let half = eps * lit(0.5);
    // sin((π−ε)/2) = cos(ε/2), cos((π−ε)/2) = sin(ε/2)
    imaginary_time_from_trig(p, half.cos(), half.sin())
}

fn imaginary_time_from_trig<T: Real>(p: &SphericalParam<T>, s: T, c: T) -> Result<Complex<T>> {
    if p.is_trivial() {
        return Ok(Complex::one());
    }
    let z = real::<T>(s * s);
    let w = real::<T>(c * c);
    if w.re > lit(0.25) {
        return f21_with_complement(&p.hyp(), z, w);
    }
    // Euler form: cos^{-2b}(t/2) ₂F₁(a−λ, a+λ; c; sin²(t/2)),
    // a = (2 + m_{α/2})/4, b = (m_α − 1)/2
    let a = real::<T>(lit(f64::from(2 + p.data.m_half) / 4.0));
    let b: T = lit((f64::from(p.data.m_alpha) - 1.0) / 2.0);
    let euler = HypParams { alpha: a - p.lambda, beta: a + p.lambda, gamma: real(p.data.c_as()) };
    let inner = f21_with_complement(&euler, z, w)?;
    Ok(inner * c.powf(-(b + b)))
}

/// Boundary behaviour of `φ_λ(a_{it})` at `t → π`.
pub fn boundary_asymptotics<T: Real>(p: &SphericalParam<T>) -> Result<AsymptoticForm<T>> {
    if p.is_trivial() {
        return Ok(AsymptoticForm::Constant);
    }
    let rho = real::<T>(p.data.rho_as());
    let denom = rgamma(rho - p.lambda) * rgamma(rho + p.lambda);
    if p.data.m_alpha > 1 {
        let b = real::<T>(lit((f64::from(p.data.m_alpha) - 1.0) / 2.0));
        let limit_value = gamma(real::<T>(p.data.c_as()))? * gamma(b)? * denom;
        Ok(AsymptoticForm::PowerPrefactor { power: p.data.m_alpha - 1, limit_value })
    } else {
        let g = gamma_real::<T>(T::one() + lit(f64::from(p.data.m_half) / 2.0))?;
        Ok(AsymptoticForm::LogRate(denom * (g + g)))
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::Invalid("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn chi_params<T: Real>(ell: T, lambda: Complex<T>, n: u32) -> HypParams<T> {
    let nf: T = lit(f64::from(n));
    let base = real::<T>((nf - ell) * lit(0.5));
    HypParams { alpha: base + lambda * lit::<T>(0.5), beta: base - lambda * lit::<T>(0.5), gamma: real(nf) }
}

/// χ-spherical function of `su(1,n)` with character parameter ℓ, real time t:
/// `cosh(t/2)^{−ℓ} ₂F₁((n−ℓ+λ)/2, (n−ℓ−λ)/2; n; −sinh²(t/2))`.
pub fn chi_spherical<T: Real>(ell: T, lambda: Complex<T>, n: u32, t: T) -> Result<Complex<T>> {
    check_n(n)?;
    let (sh, ch) = ((t * lit(0.5)).sinh(), (t * lit(0.5)).cosh());
    let f = f21_with_complement(&chi_params(ell, lambda, n), real(-sh * sh), real(ch * ch))?;
    Ok(f * ch.powf(-ell))
}

/// Imaginary-time χ-spherical function:
/// `cos(t/2)^{−ℓ} ₂F₁((n−ℓ+λ)/2, (n−ℓ−λ)/2; n; sin²(t/2))`, `|t| < π`.
pub fn chi_spherical_imaginary_time<T: Real>(ell: T, lambda: Complex<T>, n: u32, t: T) -> Result<Complex<T>> {
    check_n(n)?;
    if !(t.abs() < T::PI()) {
        return Err(Error::Domain(format!("|t| = {} must be below pi", t.abs())));
    }
    let half = t.abs() * lit(0.5);
    chi_from_trig(ell, lambda, n, half.sin(), half.cos())
}

/// χ-spherical function at imaginary time `π − ε`.
pub fn chi_spherical_near_boundary<T: Real>(ell: T, lambda: Complex<T>, n: u32, eps: T) -> Result<Complex<T>> {
    check_n(n)?;
    if !(eps > T::zero() && eps < T::PI() + T::PI()) {
        return Err(Error::Domain(format!("boundary offset {eps} outside (0, 2pi)")));
    }
    let half = eps * lit(0.5);
    chi_from_trig(ell, lambda, n, half.cos(), half.sin())
}

fn chi_from_trig<T: Real>(ell: T, lambda: Complex<T>, n: u32, s: T, c: T) -> Result<Complex<T>> {
    let f = f21_with_complement(&chi_params(ell, lambda, n), real(s * s), real(c * c))?;
    Ok(f * c.powf(-ell))
}

/// `lim_{t→π⁻} cos(t/2)^{|ℓ|} φ_{ℓ,λ}(exp ith)`
/// `= Γ(|ℓ|)(n−1)! / (Γ((n+|ℓ|−λ)/2) Γ((n+|ℓ|+λ)/2))`.
pub fn chi_boundary_asymptotics<T: Real>(ell: T, lambda: Complex<T>, n: u32) -> Result<Complex<T>> {
    check_n(n)?;
    if ell == T::zero() {
        return Err(Error::Invalid("the character parameter must be non-zero".into()));
    }
    let l = ell.abs();
    let nf: T = lit(f64::from(n));
    let base = real::<T>((nf + l) * lit(0.5));
    let half = lambda * lit::<T>(0.5);
    Ok(real::<T>(gamma_real(l)? * gamma_real(nf)?) * rgamma(base - half) * rgamma(base + half))
}

/// Fitted exponent N in `‖e^{it∂U(h)}v‖ ~ (π/2 − t)^{−N}` as `t → π/2`.
///
/// Uses `‖e^{it∂U(h)}v‖² = φ_λ(a_{2it})` on `t = π/2 − 2^{−k}`, `k = 6..=20`.
pub fn growth_exponent_fit<T: Real>(p: &SphericalParam<T>) -> Result<T> {
    if p.is_trivial() {
        return Ok(T::zero());
    }
    let mut xs = Vec::with_capacity(15);
    let mut ys = Vec::with_capacity(15);
    for k in 6..=20 {
        // π − 2t = 2^{1−k}
        let eps: T = lit(2f64.powi(1 - k));
        let phi = spherical_near_boundary(p, eps)?;
        let norm = phi.norm().sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::Fit(format!("norm {norm} at k = {k} has no logarithm")));
        }
        xs.push(lit::<T>(f64::from(k) * std::f64::consts::LN_2));
        ys.push(norm.ln());
    }
    let fit = fit_line(&xs, &ys)?;
    if fit.rms_residual > lit(0.1) {
        return Err(Error::Fit(format!("RMS residual {} exceeds 0.1", fit.rms_residual)));
    }
    Ok(fit.slope)
}

/// Gram matrix `[φ_λ(a_{t_j − t_i})]_{i,j}`.
pub fn gram_matrix<T: Real>(p: &SphericalParam<T>, ts: &[T]) -> Result<Vec<Vec<Complex<T>>>> {
    ts.iter().map(|&ti| ts.iter().map(|&tj| spherical(p, tj - ti)).collect()).collect()
}

/// Minimum eigenvalue of the Hermitian part of the Gram matrix of φ_λ on A.
pub fn gram_min_eigenvalue(p: &SphericalParam<f64>, ts: &[f64]) -> Result<f64> {
    let g: Vec<Vec<Complex64>> = gram_matrix(p, ts)?;
    hermitian_min_eigenvalue(&g)
}

/// Direct evaluation of `φ_λ(a_{it})` by ₂F₁ at `sin²(t/2)`, bypassing the Euler form.
pub fn spherical_imaginary_time_direct<T: Real>(p: &SphericalParam<T>, t: T) -> Result<Complex<T>> {
    let s = (t * lit(0.5)).sin();
    f21(&p.hyp(), real(s * s))
}

impl<T: Real> AsymptoticForm<T> {
    /// Leading term at imaginary time `π − ε`.
    pub fn leading(&self, eps: T) -> Complex<T> {
        let c = (eps * lit(0.5)).sin();
        match *self {
            AsymptoticForm::PowerPrefactor { power, limit_value } => limit_value * c.powi(-(power as i32)),
            AsymptoticForm::LogRate(k) => k * (-eps.ln()),
            AsymptoticForm::Constant => Complex::one(),
        }
    }
}
