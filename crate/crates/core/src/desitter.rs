//! de Sitter space `dSⁿ = {x₀² − 𝐱² = −1}` in `ℝ^{1,n}`, its crown
//! `Ξ = 𝕊ⁿ_ℂ ∩ (ℝ^{1,n} + iV₊)`, the δ-function, the wedge and the
//! complexified boost flow.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::C64;

/// Absolute tolerance for `β(x) = −1`.
pub const ON_SHELL_TOL: f64 = 1e-10;
/// Agreement required between the two δ formulas.
pub const DELTA_TOL: f64 = 1e-9;

/// `β(x) = x₀² − x₁² − ⋯ − x_n²` on real vectors.
pub fn beta_real<T: Real>(x: &[T]) -> T {
    bilinear_real(x, x)
}

pub fn bilinear_real<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).enumerate().fold(T::zero(), |acc, (k, (&a, &b))| if k == 0 { acc + a * b } else { acc - a * b })
}

/// Complex-bilinear extension of β.
pub fn beta<T: Real>(z: &[Complex<T>]) -> Complex<T> {
    z.iter().enumerate().fold(Complex::zero(), |acc, (k, &c)| if k == 0 { acc + c * c } else { acc - c * c })
}

fn re_part<T: Real>(z: &[Complex<T>]) -> Vec<T> {
    z.iter().map(|c| c.re).collect()
}

fn im_part<T: Real>(z: &[Complex<T>]) -> Vec<T> {
    z.iter().map(|c| c.im).collect()
}

/// `v ∈ V₊`: `v₀ > 0` and `β(v) > 0`.
pub fn in_future_cone<T: Real>(v: &[T]) -> bool {
    !v.is_empty() && v[0] > T::zero() && beta_real(v) > T::zero()
}

pub fn on_shell<T: Real>(x: &[T]) -> bool {
    x.len() >= 2 && (beta_real(x) + T::one()).abs() <= lit(ON_SHELL_TOL)
}

/// Membership in the crown with the default on-shell tolerance.
pub fn in_crown<T: Real>(z: &[Complex<T>]) -> bool {
    if z.len() < 2 {
        return false;
    }
    let b = beta(z);
    (b + T::one()).norm() <= lit(ON_SHELL_TOL) && in_future_cone(&im_part(z))
}

/// δ(z) from `arccos √β(Im z)` and `arccos √(1 + β(Re z))`, which must agree.
pub fn delta<T: Real>(z: &[Complex<T>]) -> Result<T> {
    let im = im_part(z);
    if !in_future_cone(&im) {
        return Err(Error::Domain("Im z is not in the open future cone".into()));
    }
    let clamp = |v: T| v.max(T::zero()).min(T::one());
    let a = clamp(beta_real(&im));
    let b = clamp(T::one() + beta_real(&re_part(z)));
    // compared before the arccos, whose slope is infinite at 1
    if (a - b).abs() > lit(DELTA_TOL) {
        return Err(Error::FormulaMismatch(format!("beta(Im z) = {a}, 1 + beta(Re z) = {b}")));
    }
    Ok(a.sqrt().acos())
}

/// The boost generator in the coordinate plane `(0, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoostGenerator {
    k: usize,
}

impl BoostGenerator {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Invalid(format!("boost plane (0, {k}) needs 1 <= k <= {n}")));
        }
        Ok(Self { k })
    }

    /// The plane `(0, 1)`.
    pub fn standard() -> Self {
        Self { k: 1 }
    }

    pub fn index(self) -> usize {
        self.k
    }

    /// `h·x`, swapping `x₀` and `x_k` and killing the rest.
    pub fn apply<T: Real>(self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); x.len()];
        out[0] = x[self.k];
        out[self.k] = x[0];
        out
    }
}

/// `exp(t h)` applied to `v` for complex `t`: `(cosh t, sinh t)` in the plane.
///
/// For `t = is` this is `(cos s·z₀ + i sin s·z_k, i sin s·z₀ + cos s·z_k, …)`.
pub fn modular_flow<T: Real>(t: Complex<T>, v: &[Complex<T>], plane: BoostGenerator) -> Vec<Complex<T>> {
    let (ch, sh) = (t.cosh(), t.sinh());
    let k = plane.k;
    let mut out = v.to_vec();
    out[0] = ch * v[0] + sh * v[k];
    out[k] = sh * v[0] + ch * v[k];
    out
}

pub fn complexify<T: Real>(x: &[T]) -> Vec<Complex<T>> {
    x.iter().map(|&r| Complex::new(r, T::zero())).collect()
}

/// Closed-form wedge `x_k > |x₀|`.
pub fn in_wedge<T: Real>(x: &[T], plane: BoostGenerator) -> bool {
    x[plane.k] > x[0].abs()
}

/// Positivity region of the boost field: `X = h·x` lies in the open future cone.
pub fn wedge_positivity_region<T: Real>(x: &[T], plane: BoostGenerator) -> Result<bool> {
    if !on_shell(x) {
        return Err(Error::OffShell(format!("beta(x) = {}", beta_real(x))));
    }
    let field = plane.apply(x);
    debug_assert!(bilinear_real(x, &field).abs() <= lit::<T>(1e-9) * (T::one() + beta_real(&field).abs()));
    Ok(in_future_cone(&field))
}

/// `τ̄_h(z) = (−z̄₀, −z̄_k, z̄_j …)` for the plane `(0, k)`.
pub fn tau_h_bar<T: Real>(z: &[Complex<T>], plane: BoostGenerator) -> Vec<Complex<T>> {
    z.iter().enumerate().map(|(j, c)| if j == 0 || j == plane.k { -c.conj() } else { c.conj() }).collect()
}

pub fn tau_h_bar_fixed<T: Real>(z: &[Complex<T>], plane: BoostGenerator) -> bool {
    let img = tau_h_bar(z, plane);
    z.iter().zip(&img).all(|(a, b)| (*a - *b).norm() <= lit(1e-12))
}

/// `arccos(cos t · λ)`, the value of δ along the flow through a fixed point.
pub fn delta_on_broken_line<T: Real>(lambda: T, t: T) -> T {
    (t.cos() * lambda).max(-T::one()).min(T::one()).acos()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeReport<T> {
    /// `√(x₀² − x₁²)`.
    pub lambda: T,
    /// Difference quotient of `t ↦ π/2 − δ(α_{it}z)` just below `π/2`.
    pub fitted_slope: T,
    /// Largest deviation of δ(α_{it}z) from `arccos(λ cos t)` on a grid in `[0, π/2)`.
    pub formula_error: T,
}

/// Slope of δ along the flow through a τ̄_h-fixed crown point `(ix₀, ix₁, x₂, …)`.
pub fn boundary_slope_check<T: Real>(z: &[Complex<T>]) -> Result<SlopeReport<T>> {
    let plane = BoostGenerator::standard();
    if z.len() < 2 {
        return Err(Error::Invalid("need at least two coordinates".into()));
    }
    if !tau_h_bar_fixed(z, plane) {
        return Err(Error::Invalid("point is not fixed by the conjugation".into()));
    }
    let (x0, x1) = (z[0].im, z[1].im);
    let lambda_sq = x0 * x0 - x1 * x1;
    if !(lambda_sq > T::zero()) {
        return Err(Error::Degenerate(format!("x0^2 - x1^2 = {lambda_sq}")));
    }
    if !in_crown(z) {
        return Err(Error::Domain("point is not in the crown".into()));
    }
    let lambda = lambda_sq.sqrt();
    let delta_at = |t: T| delta(&modular_flow(Complex::new(T::zero(), t), z, plane));

    let mut formula_error = T::zero();
    let grid = 16;
    for j in 0..grid {
        let t = T::FRAC_PI_2() * lit(j as f64 / grid as f64);
        let err = (delta_at(t)? - delta_on_broken_line(lambda, t)).abs();
        formula_error = formula_error.max(err);
    }
    if formula_error > lit(DELTA_TOL) {
        return Err(Error::FormulaMismatch(format!("delta along the flow off by {formula_error}")));
    }

    // π/2 − δ is odd about t = π/2, so the one-sided quotient is second order
    let h: T = lit::<T>(1e-3).max(T::epsilon().cbrt());
    let f = |t: T| -> Result<T> { Ok(T::FRAC_PI_2() - delta_at(t)?) };
    let near = f(T::FRAC_PI_2() - h)?;
    let far = f(T::FRAC_PI_2() - h - h)?;
    let fitted_slope = (far - near) / h;
    Ok(SlopeReport { lambda, fitted_slope, formula_error })
}

/// `exp(is h_k)·ie₀ = i cos s·e₀ − sin s·e_k` in dimension `n`.
pub fn rotated_base_point<T: Real>(n: usize, s: T, plane: BoostGenerator) -> Vec<Complex<T>> {
    let mut z = vec![Complex::zero(); n + 1];
    z[0] = Complex::new(T::zero(), s.cos());
    z[plane.k] = Complex::new(-s.sin(), T::zero());
    z
}

/// Random element of `SO(1,n)_e` as a product of boosts and spatial rotations.
pub fn random_lorentz<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let dim = n + 1;
    let mut g = DMatrix::<f64>::identity(dim, dim);
    for _ in 0..2 * n {
        let mut step = DMatrix::<f64>::identity(dim, dim);
        let k = rng.gen_range(1..=n);
        let a: f64 = rng.gen_range(-1.5..1.5);
        step[(0, 0)] = a.cosh();
        step[(k, k)] = a.cosh();
        step[(0, k)] = a.sinh();
        step[(k, 0)] = a.sinh();
        g = step * g;
        if n >= 2 {
            let i = rng.gen_range(1..=n);
            let j = (i % n) + 1;
            let th = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let mut rot = DMatrix::<f64>::identity(dim, dim);
            rot[(i, i)] = th.cos();
            rot[(j, j)] = th.cos();
            rot[(i, j)] = -th.sin();
            rot[(j, i)] = th.sin();
            g = rot * g;
        }
    }
    g
}

pub fn apply_lorentz(g: &DMatrix<f64>, z: &[C64]) -> Vec<C64> {
    (0..g.nrows()).map(|r| (0..g.ncols()).fold(C64::zero(), |acc, c| acc + z[c] * g[(r, c)])).collect()
}

/// Random point of dSⁿ: `x₀` uniform in `[−3, 3]`, 𝐱 uniform on the sphere of radius `√(1 + x₀²)`.
pub fn sample_on_shell<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let x0: f64 = rng.gen_range(-3.0..3.0);
    let dir: Vec<f64> = loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if r > 1e-3 && r <= 1.0 {
            break v.into_iter().map(|a| a / r).collect();
        }
    };
    let radius = (1.0 + x0 * x0).sqrt();
    std::iter::once(x0).chain(dir.into_iter().map(|a| a * radius)).collect()
}

/// Random point of the wedge `x₁ > |x₀|` on dSⁿ.
pub fn sample_wedge<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let x = sample_on_shell(n, rng);
        if in_wedge(&x, BoostGenerator::standard()) {
            return x;
        }
    }
}

/// Point cloud as CSV: `re_j, im_j` per coordinate, then δ (empty off the crown) and flags.
pub fn write_point_cloud<W: Write>(out: W, points: &[Vec<C64>]) -> Result<()> {
    let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(out);
    let dim = points.first().map_or(0, Vec::len);
    let mut header: Vec<String> = (0..dim).flat_map(|j| [format!("re{j}"), format!("im{j}")]).collect();
    header.extend(["delta", "in_crown", "wedge", "tau_fixed"].map(String::from));
    w.write_record(&header).map_err(io)?;
    let plane = BoostGenerator::standard();
    for z in points {
        if z.len() != dim {
            return Err(Error::Shape("points of different dimensions".into()));
        }
        let mut row: Vec<String> = z.iter().flat_map(|c| [c.re.to_string(), c.im.to_string()]).collect();
        let crown = in_crown(z);
        row.push(if crown { delta(z).map(|d| d.to_string()).unwrap_or_default() } else { String::new() });
        row.push(crown.to_string());
        let real: Vec<f64> = re_part(z);
        let wedge = z.iter().all(|c| c.im == 0.0) && on_shell(&real) && in_wedge(&real, plane);
        row.push(wedge.to_string());
        row.push(tau_h_bar_fixed(z, plane).to_string());
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
    Ok(())
}
