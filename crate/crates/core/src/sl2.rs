//! Positive-energy representation of the Möbius group on the reproducing-kernel
//! space of weight `s` over the upper half-plane.
//!
//! The kernel is `Q(z, w) = ((z − w̄)/2i)^{−s}` with `s` even, and `Q_w = Q(·, w)`.
//! Points on the real line stand for the boundary (distribution) vectors `Q_x`.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh;
use crate::scalar::{lit, real, Real};
use crate::special::gamma_real;

/// Even positive weight `s ∈ {2, 4, 6, …}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight(u32);

impl Weight {
    pub fn new(s: u32) -> Result<Self> {
        if s == 0 || s % 2 == 1 {
            return Err(Error::Invalid(format!("weight s = {s} must be a positive even integer")));
        }
        Ok(Self(s))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `(−1)^{s/2} = e^{πis/2}`.
    pub fn sign<T: Real>(self) -> T {
        if (self.0 / 2).is_multiple_of(2) {
            T::one()
        } else {
            -T::one()
        }
    }
}

/// `g = (a b; c d)` with `ad − bc = 1`, acting by `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> Moebius<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a * d - b * c;
        let tol = lit::<T>(1e-12).max(T::epsilon() * lit(64.0));
        if !((det - T::one()).abs() <= tol) {
            return Err(Error::Invalid(format!("determinant {det} differs from 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    /// `exp(t h)` with `h = ½ diag(1, −1)`; acts by `z ↦ e^t z`.
    pub fn boost(t: T) -> Self {
        let e = (t * lit(0.5)).exp();
        Self { a: e, b: T::zero(), c: T::zero(), d: e.recip() }
    }

    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    pub fn translation(b: T) -> Self {
        Self { a: T::one(), b, c: T::zero(), d: T::one() }
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Conjugation by `diag(1, −1)`: `(a, −b; −c, d)`.
    pub fn tau_h(&self) -> Self {
        Self { a: self.a, b: -self.b, c: -self.c, d: self.d }
    }

    pub fn apply(&self, z: Complex<T>) -> Complex<T> {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    fn denominator(&self, z: Complex<T>) -> Complex<T> {
        z * self.c + self.d
    }
}

/// One term `coeff · Q_point`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTerm<T> {
    pub coeff: Complex<T>,
    pub point: Complex<T>,
}

impl<T: Real> KernelTerm<T> {
    pub fn is_boundary(&self) -> bool {
        self.point.im == T::zero()
    }
}

/// Finite combination `Σ cⱼ Q_{wⱼ}` with `Im wⱼ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelVector<T> {
    weight: Weight,
    terms: Vec<KernelTerm<T>>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    re: f64,
    im: f64,
    w_re: f64,
    w_im: f64,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    s: u32,
    terms: Vec<TermJson>,
}

impl<T: Real> KernelVector<T> {
    pub fn new(weight: Weight, terms: Vec<KernelTerm<T>>) -> Result<Self> {
        for t in &terms {
            let finite = [t.coeff.re, t.coeff.im, t.point.re, t.point.im].iter().all(|v| v.is_finite());
            if !finite {
                return Err(Error::Invalid("non-finite kernel term".into()));
            }
            if t.point.im < T::zero() {
                return Err(Error::Invalid(format!("point {} lies below the real axis", t.point)));
            }
        }
        Ok(Self { weight, terms })
    }

    /// `Q_w`.
    pub fn kernel(weight: Weight, w: Complex<T>) -> Result<Self> {
        Self::new(weight, vec![KernelTerm { coeff: Complex::one(), point: w }])
    }

    /// Boundary vector `Q_x`, x real.
    pub fn boundary(weight: Weight, x: T) -> Result<Self> {
        Self::kernel(weight, real(x))
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn terms(&self) -> &[KernelTerm<T>] {
        &self.terms
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            weight: self.weight,
            terms: self.terms.iter().map(|t| KernelTerm { coeff: t.coeff * c, point: t.point }).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::Shape("kernel vectors of different weights".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self { weight: self.weight, terms })
    }

    /// The holomorphic function `z ↦ Σ cⱼ Q(z, wⱼ)`.
    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.terms.iter().try_fold(Complex::zero(), |acc, t| Ok(acc + t.coeff * kernel_q(z, t.point, self.weight)?))
    }

    pub fn to_json(&self) -> String {
        let doc = VectorJson {
            s: self.weight.get(),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    re: t.coeff.re.to_f64().unwrap(),
                    im: t.coeff.im.to_f64().unwrap(),
                    w_re: t.point.re.to_f64().unwrap(),
                    w_im: t.point.im.to_f64().unwrap(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("kernel vector serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: VectorJson =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("kernel vector JSON: {e}")))?;
        let terms = doc
            .terms
            .into_iter()
            .map(|t| KernelTerm {
                coeff: Complex::new(lit(t.re), lit(t.im)),
                point: Complex::new(lit(t.w_re), lit(t.w_im)),
            })
            .collect();
        Self::new(Weight::new(doc.s)?, terms)
    }
}

/// `Q(z, w) = ((z − w̄)/2i)^{−s}`.
pub fn kernel_q<T: Real>(z: Complex<T>, w: Complex<T>, s: Weight) -> Result<Complex<T>> {
    let two_i = Complex::new(T::zero(), lit(2.0));
    let base = (z - w.conj()) / two_i;
    if base.is_zero() {
        return Err(Error::Pole(format!("kernel at z = conj(w) = {z}")));
    }
    Ok(base.powi(-(s.get() as i32)))
}

/// `⟨u, v⟩ = Σᵢⱼ conj(cᵢ) c′ⱼ Q(wᵢ, w′ⱼ)`.
pub fn inner_kv<T: Real>(u: &KernelVector<T>, v: &KernelVector<T>) -> Result<Complex<T>> {
    if u.weight != v.weight {
        return Err(Error::Shape("kernel vectors of different weights".into()));
    }
    let mut acc = Complex::zero();
    for a in &u.terms {
        for b in &v.terms {
            if a.is_boundary() && b.is_boundary() && a.point.re == b.point.re {
                return Err(Error::UndefinedPairing(format!("{}", a.point.re)));
            }
            acc = acc + a.coeff.conj() * b.coeff * kernel_q(a.point, b.point, u.weight)?;
        }
    }
    Ok(acc)
}

/// `U_s(g)`: `Q_z ↦ conj((cz+d)^{−s}) Q_{g.z}` inside, `Q_x ↦ (cx+d)^{−s} Q_{g.x}` on ℝ.
pub fn act<T: Real>(g: &Moebius<T>, v: &KernelVector<T>) -> Result<KernelVector<T>> {
    let s = v.weight.get() as i32;
    let terms = v
        .terms
        .iter()
        .map(|t| {
            let den = g.denominator(t.point);
            if t.is_boundary() {
                if den.re == T::zero() {
                    return Err(Error::Infinity(format!("{} maps to infinity", t.point.re)));
                }
                let x = t.point.re;
                let gx = (g.a * x + g.b) / den.re;
                Ok(KernelTerm { coeff: t.coeff * den.re.powi(-s), point: real(gx) })
            } else {
                let mut p = g.apply(t.point);
                if p.im < T::zero() {
                    p.im = T::zero();
                }
                Ok(KernelTerm { coeff: t.coeff * den.powi(-s).conj(), point: p })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    KernelVector::new(v.weight, terms)
}

/// `J(Σ cⱼ Q_{wⱼ}) = Σ e^{πis/2} conj(cⱼ) Q_{−w̄ⱼ}`.
pub fn j_conjugation<T: Real>(v: &KernelVector<T>) -> KernelVector<T> {
    let sign: T = v.weight.sign();
    KernelVector {
        weight: v.weight,
        terms: v.terms.iter().map(|t| KernelTerm { coeff: t.coeff.conj() * sign, point: -t.point.conj() }).collect(),
    }
}

/// `(JF)(z) = e^{πis/2} conj(F(−z̄))`, evaluated pointwise.
pub fn j_pointwise<T: Real>(v: &KernelVector<T>, z: Complex<T>) -> Result<Complex<T>> {
    let sign: T = v.weight.sign();
    Ok(v.evaluate(-z.conj())?.conj() * sign)
}

/// Holomorphic continuation `ζ ↦ U_s(exp ζh) Q_i = e^{sζ/2} Q_{i e^{ζ̄}}`, `|Im ζ| ≤ π/2`.
///
/// At `ζ = ∓iπ/2` the point reaches the real axis: `e^{∓isπ/4} Q_{∓1}`.
pub fn boost_continuation<T: Real>(s: Weight, zeta: Complex<T>) -> Result<KernelVector<T>> {
    let half_pi = T::FRAC_PI_2();
    let slack = T::epsilon() * lit(16.0);
    if !(zeta.im.abs() <= half_pi + slack) || !zeta.re.is_finite() {
        return Err(Error::Strip(format!("|Im zeta| = {} exceeds pi/2", zeta.im.abs())));
    }
    let coeff = (zeta * lit::<T>(f64::from(s.get()) * 0.5)).exp();
    let mut point = Complex::<T>::i() * zeta.conj().exp();
    if point.im.abs() <= slack * point.norm() {
        point.im = T::zero();
    }
    KernelVector::new(s, vec![KernelTerm { coeff, point }])
}

/// Continued value and closed form of `F(t) = ⟨Q_w, U_s(exp th) Q_x⟩` at `t = πi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularRelation<T> {
    /// `F(πi)` obtained by integrating along `t = iθ`, `θ ∈ [0, π]`.
    pub continued: Complex<T>,
    /// `(−1)^{s/2} Q(w, −x)`.
    pub closed_form: Complex<T>,
}

/// Continues `F(t) = e^{st/2} Q(w, e^t x)` from `t = 0` to `t = πi` by
/// integrating `F′ = F·(s/2 + s e^t x/(w − e^t x))` along the imaginary axis.
pub fn continue_boost_pairing<T: Real>(x: T, s: Weight, w: Complex<T>) -> Result<ModularRelation<T>> {
    if !(x > T::zero() && x.is_finite()) {
        return Err(Error::Invalid(format!("x = {x} must be positive")));
    }
    if !(w.im > T::zero()) {
        return Err(Error::Invalid(format!("test point {w} must lie in the upper half-plane")));
    }
    // nearest point of the arc {e^{iθ}x : θ ∈ [0, π]} to w is at arg w
    let clearance = (w.norm() - x).abs();
    if clearance < lit::<T>(1e-6) * T::one().max(x) {
        return Err(Error::PathSingularity(format!("arc of radius {x} passes within {clearance} of {w}")));
    }
    let sf: T = lit(f64::from(s.get()));
    let i = Complex::<T>::i();
    // dF/dθ = i F (s/2 + s e^{iθ}x/(w − e^{iθ}x))
    let rhs = |theta: T, f: Complex<T>| {
        let ex = (i * theta).exp() * x;
        i * f * (real::<T>(sf * lit(0.5)) + ex * sf / (w - ex))
    };
    let f0 = kernel_q(w, real(x), s)?;
    let continued = integrate_ode(rhs, f0, T::zero(), T::PI(), lit(1e-13))?;
    let closed_form = kernel_q(w, real(-x), s)? * s.sign::<T>();
    Ok(ModularRelation { continued, closed_form })
}

/// `Δ^{1/2} Q_x = (−1)^{s/2} Q_{−x}` tested through `⟨Q_w, ·⟩`.
pub fn modular_relation_check<T: Real>(x: T, s: Weight, w: Complex<T>, tol: T) -> Result<bool> {
    let r = continue_boost_pairing(x, s, w)?;
    Ok((r.continued - r.closed_form).norm() <= tol * T::one().max(r.closed_form.norm()))
}

// Dormand–Prince 5(4) with step-size control on a scalar complex ODE.
fn integrate_ode<T: Real, F: Fn(T, Complex<T>) -> Complex<T>>(
    f: F,
    y0: Complex<T>,
    t0: T,
    t1: T,
    rel_tol: T,
) -> Result<Complex<T>> {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] =
        [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];
    let mut t = t0;
    let mut y = y0;
    let mut h = (t1 - t0) * lit(1e-3);
    let min_h = (t1 - t0) * lit(1e-14);
    let mut steps = 0usize;
    while t < t1 {
        if t + h > t1 {
            h = t1 - t;
        }
        let mut k = [Complex::<T>::zero(); 7];
        k[0] = f(t, y);
        for stage in 0..6 {
            let mut acc = y;
            for (j, kj) in k.iter().enumerate().take(stage + 1) {
                acc = acc + *kj * (h * lit(A[stage][j]));
            }
            k[stage + 1] = f(t + h * lit(C[stage]), acc);
        }
        let mut y5 = y;
        let mut y4 = y;
        for j in 0..7 {
            y5 = y5 + k[j] * (h * lit(B5[j]));
            y4 = y4 + k[j] * (h * lit(B4[j]));
        }
        let err = (y5 - y4).norm();
        let scale = rel_tol * y.norm().max(y5.norm()).max(T::min_positive_value());
        if !err.is_finite() {
            return Err(Error::PathSingularity("non-finite derivative on the path".into()));
        }
        if err <= scale {
            t = t + h;
            y = y5;
        }
        // step halving on rejection, cautious growth on acceptance
        let factor = if err == T::zero() {
            lit(2.0)
        } else {
            (lit::<T>(0.9) * (scale / err).powf(lit(0.2))).max(lit(0.5)).min(lit(2.0))
        };
        h = h * factor;
        if h < min_h {
            return Err(Error::PathSingularity("step size underflow along the path".into()));
        }
        steps += 1;
        if steps > 1_000_000 {
            return Err(Error::Convergence("continuation exceeded the step budget".into()));
        }
    }
    Ok(y)
}

/// Fourier image of `p ↦ e^{iup}` with `Im u > 0`, which is `Q_{−ū}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCheck<T> {
    pub vector: KernelVector<T>,
    /// Largest relative deviation between quadrature and `Q(z, −ū)` at the test points.
    pub residual: T,
}

/// `𝓕(f)(z) = 2^s Γ(s)^{−1} ∫₀^∞ e^{izp} f(p) p^{s−1} dp` for `f(p) = e^{iup}`.
pub fn fourier_from_density<T: Real>(u: Complex<T>, s: Weight) -> Result<FourierCheck<T>> {
    if !(u.im > T::zero()) {
        return Err(Error::Invalid(format!("Im u = {} must be positive", u.im)));
    }
    let vector = KernelVector::kernel(s, -u.conj())?;
    let tests =
        [Complex::new(T::zero(), T::one()), Complex::new(T::one(), lit(2.0)), Complex::new(lit(-0.5), lit(0.7))];
    let mut residual = T::zero();
    for z in tests {
        let q = fourier_quadrature(z + u, s)?;
        let want = vector.evaluate(z)?;
        residual = residual.max((q - want).norm() / want.norm());
    }
    Ok(FourierCheck { vector, residual })
}

// 2^s Γ(s)^{−1} ∫₀^∞ e^{iζp} p^{s−1} dp, Im ζ > 0
fn fourier_quadrature<T: Real>(zeta: Complex<T>, s: Weight) -> Result<Complex<T>> {
    let sf: T = lit(f64::from(s.get()));
    let decay = zeta.im;
    // peak of p^{s−1} e^{−decay p} sits at (s−1)/decay; go 60 e-folds past it
    let upper = ((sf - T::one()) + lit(60.0) + (sf - T::one()) * (T::one() + sf / decay).ln()) / decay;
    let panel = (decay.recip()).min(T::PI() / zeta.re.abs().max(lit(1e-3)));
    let n = (upper / panel).ceil().to_usize().unwrap_or(1).clamp(1, 100_000);
    let width = upper / lit(n as f64);
    let i = Complex::<T>::i();
    let integrand = |p: T| (i * zeta * p).exp() * p.powf(sf - T::one());
    let (mut re, mut im) = (T::zero(), T::zero());
    for k in 0..n {
        let a = width * lit(k as f64);
        let b = a + width;
        re = re + tanh_sinh(|p| integrand(p).re, a, b, lit(1e-13), T::epsilon() * T::epsilon())?;
        im = im + tanh_sinh(|p| integrand(p).im, a, b, lit(1e-13), T::epsilon() * T::epsilon())?;
    }
    let scale = lit::<T>(2.0).powf(sf) / gamma_real(sf)?;
    Ok(Complex::new(re, im) * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn w(s: u32) -> Weight {
        Weight::new(s).unwrap()
    }

    #[test]
    fn weights() {
        assert!(Weight::new(0).is_err());
        assert!(Weight::new(3).is_err());
        assert_eq!(w(2).sign::<f64>(), -1.0);
        assert_eq!(w(4).sign::<f64>(), 1.0);
    }

    #[test]
    fn moebius_basics() {
        assert!(Moebius::new(1.0, 1.0, 0.0, 2.0).is_err());
        let g = Moebius::<f64>::new(2.0, 1.0, 3.0, 2.0).unwrap();
        let h = g.compose(&g.inverse());
        assert!((h.a - 1.0).abs() < 1e-15 && h.b.abs() < 1e-15 && h.c.abs() < 1e-15);
        let z = C::new(0.3, 0.8);
        assert!((Moebius::boost(0.7).apply(z) - z * 0.7f64.exp()).norm() < 1e-15);
    }

    #[test]
    fn kernel_values() {
        let i = C::new(0.0, 1.0);
        for s in [2, 4, 6] {
            assert!((kernel_q(i, i, w(s)).unwrap() - 1.0).norm() < 1e-15);
        }
        let q = kernel_q(i * 2.0, i, w(2)).unwrap();
        assert!((q - 4.0 / 9.0).norm() < 1e-15);
        let (z, u) = (C::new(0.3, 1.2), C::new(-1.0, 0.4));
        assert!((kernel_q(z, u, w(4)).unwrap() - kernel_q(u, z, w(4)).unwrap().conj()).norm() < 1e-14);
        assert!(matches!(kernel_q(C::new(1.0, 0.0), C::new(1.0, 0.0), w(2)), Err(Error::Pole(_))));
    }

    #[test]
    fn pairings() {
        let i = C::new(0.0, 1.0);
        let qi = KernelVector::kernel(w(2), i).unwrap();
        assert!((inner_kv(&qi, &qi).unwrap() - 1.0).norm() < 1e-15);
        let (a, b) = (C::new(0.5, 0.3), C::new(-2.0, 1.5));
        let qa = KernelVector::kernel(w(4), a).unwrap();
        let qb = KernelVector::kernel(w(4), b).unwrap();
        assert!((inner_kv(&qa, &qb).unwrap() - kernel_q(a, b, w(4)).unwrap()).norm() < 1e-14);
        let q2i = KernelVector::kernel(w(2), i * 2.0).unwrap();
        let q0 = KernelVector::boundary(w(2), 0.0).unwrap();
        assert!((inner_kv(&q2i, &q0).unwrap() - 1.0).norm() < 1e-15);
        assert!(matches!(inner_kv(&q0, &q0), Err(Error::UndefinedPairing(_))));
        let q1 = KernelVector::boundary(w(2), 1.0).unwrap();
        assert!(inner_kv(&q0, &q1).is_ok());
        assert!(KernelVector::kernel(w(2), C::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn action_examples() {
        let i = C::new(0.0, 1.0);
        let qi = KernelVector::kernel(w(2), i).unwrap();
        assert_eq!(act(&Moebius::identity(), &qi).unwrap(), qi);
        let t = 0.8;
        let moved = act(&Moebius::boost(t), &qi).unwrap();
        let want = KernelVector::kernel(w(2), i * t.exp()).unwrap().scale(C::new((t).exp(), 0.0));
        assert!((moved.terms()[0].coeff - want.terms()[0].coeff).norm() < 1e-14);
        assert!((moved.terms()[0].point - want.terms()[0].point).norm() < 1e-14);
        let qx = KernelVector::boundary(w(2), 1.0).unwrap();
        let g = Moebius::new(1.0, 0.0, -1.0, 1.0).unwrap();
        assert!(matches!(act(&g, &qx), Err(Error::Infinity(_))));
        let moved = act(&Moebius::boost(t), &qx).unwrap();
        assert!(moved.terms()[0].is_boundary());
        assert!((moved.terms()[0].point.re - t.exp()).abs() < 1e-14);
    }

    #[test]
    fn boost_continuation_values() {
        let i = C::new(0.0, 1.0);
        let v = boost_continuation(w(2), C::zero()).unwrap();
        assert_eq!(v.terms()[0].point, i);
        assert_eq!(v.terms()[0].coeff, C::one());
        let v = boost_continuation(w(2), C::new(0.0, -PI / 2.0)).unwrap();
        assert!(v.terms()[0].is_boundary());
        assert!((v.terms()[0].point - C::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((v.terms()[0].coeff - C::new(0.0, -1.0)).norm() < 1e-15);
        let v = boost_continuation(w(2), C::new(0.0, PI / 2.0)).unwrap();
        assert!((v.terms()[0].point - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!((v.terms()[0].coeff - C::new(0.0, 1.0)).norm() < 1e-15);
        assert!(matches!(boost_continuation(w(2), C::new(0.0, 1.6)), Err(Error::Strip(_))));
    }

    #[test]
    fn boost_continuation_matches_pairing() {
        // ⟨Q_{2i}, U(exp ζh)Q_i⟩ = e^{sζ/2} Q(2i, e^ζ i) continued from real ζ
        let s = w(2);
        let probe = KernelVector::kernel(s, C::new(0.0, 2.0)).unwrap();
        for theta in [-PI / 4.0, -1.0, 0.5, PI / 2.0 - 1e-3] {
            let zeta = C::new(0.0, theta);
            let v = boost_continuation(s, zeta).unwrap();
            let paired = inner_kv(&probe, &v).unwrap();
            let two_i = C::new(0.0, 2.0);
            let scalar = (zeta * 1.0).exp() * ((two_i + C::i() * zeta.exp()) / two_i).powi(-2);
            assert!((paired - scalar).norm() < 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn modular_relation_examples() {
        assert!(modular_relation_check(1.0, w(2), C::new(0.0, 3.0), 1e-10).unwrap());
        assert!(modular_relation_check(1.0, w(4), C::new(2.0, 2.0), 1e-10).unwrap());
        let r = continue_boost_pairing(1.0, w(2), C::new(0.0, 3.0)).unwrap();
        let flipped = r.closed_form * -1.0;
        assert!((r.continued - flipped).norm() > 1e-3);
        assert!(matches!(modular_relation_check(1.0, w(2), C::new(0.6, 0.8), 1e-10), Err(Error::PathSingularity(_))));
        assert!(modular_relation_check(1.0, w(2), C::new(0.0, -1.0), 1e-10).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let s = w(2);
        let qx = KernelVector::boundary(s, 0.7).unwrap();
        let j = j_conjugation(&qx);
        assert_eq!(j.terms()[0].point, C::new(-0.7, 0.0));
        assert_eq!(j.terms()[0].coeff, C::new(-1.0, 0.0));
        let qi = KernelVector::kernel(s, C::new(0.0, 1.0)).unwrap();
        let jq = j_conjugation(&qi);
        for z in [C::new(0.3, 0.4), C::new(-2.0, 1.0), C::new(5.0, 0.01)] {
            let a = jq.evaluate(z).unwrap();
            let b = j_pointwise(&qi, z).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn fourier_examples() {
        let f = fourier_from_density(C::new(0.0, 1.0), w(2)).unwrap();
        assert_eq!(f.vector.terms()[0].point, C::new(0.0, 1.0));
        assert!(f.residual < 1e-8, "{}", f.residual);
        let f = fourier_from_density(C::new(1.0, 1.0), w(4)).unwrap();
        assert_eq!(f.vector.terms()[0].point, C::new(-1.0, 1.0));
        assert!(f.residual < 1e-8, "{}", f.residual);
        assert!(fourier_from_density(C::new(1.0, 0.0), w(2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = KernelVector::new(
            w(4),
            vec![
                KernelTerm { coeff: C::new(1.0, -0.5), point: C::new(0.2, 1.0) },
                KernelTerm { coeff: C::new(0.0, 2.0), point: C::new(-3.0, 0.0) },
            ],
        )
        .unwrap();
        let text = v.to_json();
        assert!(text.contains("\"w_re\""));
        assert_eq!(KernelVector::<f64>::from_json(&text).unwrap(), v);
        assert!(KernelVector::<f64>::from_json(r#"{"s":3,"terms":[]}"#).is_err());
    }
}
