//! Finite spectral models `L²(ℝ, μ)` with `μ` a symmetric sum of point masses.
//!
//! The one-parameter group acts by `(U_z f)(λ) = e^{izλ} f(λ)`, the conjugation
//! by `(Jf)(λ) = conj(f(−λ))`, and the modular operator is `Δ = e^{−2πH}`.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Default relative tolerance of the finite-model checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Symmetric point-mass measure `Σ wᵢ δ_{λᵢ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpectralModel<T> {
    points: Vec<T>,
    weights: Vec<T>,
}

/// A function on the support of a [`DiscreteSpectralModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector<T> {
    pub values: Vec<Complex<T>>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    points: Vec<f64>,
    weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl<T: Real> DiscreteSpectralModel<T> {
    /// Builds a model from unsorted `(point, weight)` data.
    ///
    /// The point set must be closed under negation with matching weights.
    pub fn new(points: Vec<T>, weights: Vec<T>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::Shape(format!("{} points vs {} weights", points.len(), weights.len())));
        }
        if points.is_empty() {
            return Err(Error::Invalid("empty model".into()));
        }
        if points.iter().chain(&weights).any(|v| !v.is_finite()) {
            return Err(Error::Invalid("non-finite point or weight".into()));
        }
        if weights.iter().any(|&w| w <= T::zero()) {
            return Err(Error::Invalid("weights must be positive".into()));
        }
        let mut pairs: Vec<(T, T)> = points.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid("repeated spectral point".into()));
        }
        let m = pairs.len();
        let tol = T::epsilon() * lit(16.0);
        for i in 0..m {
            let (p, w) = pairs[i];
            let (q, v) = pairs[m - 1 - i];
            let scale = T::one().max(p.abs());
            if (p + q).abs() > tol * scale {
                return Err(Error::Invalid(format!("point set is not symmetric at {p}")));
            }
            if (w - v).abs() > tol * w.max(v) {
                return Err(Error::Invalid(format!("weights differ at {p} and {q}")));
            }
        }
        // snap the mirror half so that negation is exact
        for i in 0..m / 2 {
            pairs[m - 1 - i].0 = -pairs[i].0;
            pairs[m - 1 - i].1 = pairs[i].1;
        }
        if m % 2 == 1 {
            pairs[m / 2].0 = T::zero();
        }
        let (points, weights) = pairs.into_iter().unzip();
        Ok(Self { points, weights })
    }

    /// Builds a model from the positive half; each `λ > 0` is mirrored to `−λ`.
    pub fn from_positive_half(points: &[T], weights: &[T], zero_weight: Option<T>) -> Result<Self> {
        let mut p = Vec::new();
        let mut w = Vec::new();
        for (&x, &v) in points.iter().zip(weights) {
            if x <= T::zero() {
                return Err(Error::Invalid(format!("{x} is not positive")));
            }
            p.extend([x, -x]);
            w.extend([v, v]);
        }
        if let Some(z) = zero_weight {
            p.push(T::zero());
            w.push(z);
        }
        Self::new(p, w)
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of `−λᵢ`.
    pub fn mirror(&self, i: usize) -> usize {
        self.points.len() - 1 - i
    }

    fn check(&self, f: &SpectralVector<T>) -> Result<()> {
        if f.values.len() != self.len() {
            return Err(Error::Shape(format!(
                "vector of length {} on a model with {} points",
                f.values.len(),
                self.len()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = ModelJson {
            points: self.points.iter().map(|p| p.to_f64().unwrap()).collect(),
            weights: self.weights.iter().map(|w| w.to_f64().unwrap()).collect(),
        };
        serde_json::to_string(&doc).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("model JSON: {e}")))?;
        Self::new(doc.points.into_iter().map(lit).collect(), doc.weights.into_iter().map(lit).collect())
    }
}

impl<T: Real> SpectralVector<T> {
    pub fn new(values: Vec<Complex<T>>) -> Result<Self> {
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Invalid("non-finite vector entry".into()));
        }
        Ok(Self { values })
    }

    pub fn zeros(len: usize) -> Self {
        Self { values: vec![Complex::zero(); len] }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { values: self.values.iter().map(|&v| v * c).collect() }
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn to_json(&self) -> String {
        let doc = VectorJson {
            re: self.values.iter().map(|v| v.re.to_f64().unwrap()).collect(),
            im: self.values.iter().map(|v| v.im.to_f64().unwrap()).collect(),
        };
        serde_json::to_string(&doc).expect("vector serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: VectorJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("vector JSON: {e}")))?;
        if doc.re.len() != doc.im.len() {
            return Err(Error::Shape(format!("{} real vs {} imaginary parts", doc.re.len(), doc.im.len())));
        }
        Self::new(doc.re.into_iter().zip(doc.im).map(|(r, i)| Complex::new(lit(r), lit(i))).collect())
    }
}

/// `⟨f, g⟩ = Σ wᵢ conj(fᵢ) gᵢ`.
pub fn inner<T: Real>(
    m: &DiscreteSpectralModel<T>,
    f: &SpectralVector<T>,
    g: &SpectralVector<T>,
) -> Result<Complex<T>> {
    m.check(f)?;
    m.check(g)?;
    Ok(m.weights
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .fold(Complex::zero(), |acc, (&w, (a, b))| acc + a.conj() * b * w))
}

pub fn norm<T: Real>(m: &DiscreteSpectralModel<T>, f: &SpectralVector<T>) -> Result<T> {
    Ok(inner(m, f, f)?.re.max(T::zero()).sqrt())
}

/// `(U_z f)(λ) = e^{izλ} f(λ)` for complex z.
pub fn flow<T: Real>(m: &DiscreteSpectralModel<T>, f: &SpectralVector<T>, z: Complex<T>) -> Result<SpectralVector<T>> {
    m.check(f)?;
    let i = Complex::<T>::i();
    Ok(SpectralVector { values: m.points.iter().zip(&f.values).map(|(&l, &v)| (i * z * l).exp() * v).collect() })
}

/// Modular group `Δ^{it} f = e^{−2πitλ} f`.
pub fn modular_group<T: Real>(m: &DiscreteSpectralModel<T>, f: &SpectralVector<T>, t: T) -> Result<SpectralVector<T>> {
    let two_pi = T::PI() + T::PI();
    flow(m, f, Complex::new(-two_pi * t, T::zero()))
}

/// `(Jf)(λ) = conj(f(−λ))`.
pub fn conj_j<T: Real>(m: &DiscreteSpectralModel<T>, f: &SpectralVector<T>) -> Result<SpectralVector<T>> {
    m.check(f)?;
    Ok(SpectralVector { values: (0..m.len()).map(|i| f.values[m.mirror(i)].conj()).collect() })
}

/// KMS relation `conj(η(−λ)) = e^{−πλ} η(λ)` at every point, to `tol·(1 + |η(λ)|)`.
pub fn kms_check<T: Real>(m: &DiscreteSpectralModel<T>, eta: &SpectralVector<T>, tol: T) -> Result<bool> {
    m.check(eta)?;
    let pi = T::PI();
    Ok((0..m.len()).all(|i| {
        let l = m.points[i];
        let e = eta.values[i];
        let lhs = eta.values[m.mirror(i)].conj();
        (lhs - e * (-pi * l).exp()).norm() <= tol * (T::one() + e.norm())
    }))
}

/// `v = U(πi/2) η`, which is J-fixed when η satisfies the KMS relation.
pub fn kms_midpoint<T: Real>(
    m: &DiscreteSpectralModel<T>,
    eta: &SpectralVector<T>,
    tol: T,
) -> Result<SpectralVector<T>> {
    if !kms_check(m, eta, tol)? {
        return Err(Error::KmsViolation("vector fails the KMS relation".into()));
    }
    flow(m, eta, Complex::new(T::zero(), T::FRAC_PI_2()))
}

/// Checks that KMS for both η and Jη forces η to vanish off λ = 0.
///
/// Returns `true` when a premise fails (vacuous) or when every `|η(λ)|`, `λ ≠ 0`,
/// is within the bound `3·tol·(1 + ‖η‖∞)/(1 − e^{−2π|λ|})` implied by the two
/// approximate premises.
pub fn double_kms_collapse<T: Real>(m: &DiscreteSpectralModel<T>, eta: &SpectralVector<T>, tol: T) -> Result<bool> {
    if !kms_check(m, eta, tol)? || !kms_check(m, &conj_j(m, eta)?, tol)? {
        return Ok(true);
    }
    let sup = eta.sup_norm();
    let two_pi = T::PI() + T::PI();
    Ok(m.points.iter().zip(&eta.values).all(|(&l, v)| {
        l == T::zero() || {
            let bound = lit::<T>(3.0) * tol * (T::one() + sup) / (T::one() - (-two_pi * l.abs()).exp());
            v.norm() <= bound
        }
    }))
}

/// Membership in the standard subspace `V = Fix(J Δ^{1/2})`:
/// `e^{πλ} conj(f(−λ)) = f(λ)`, compared at the scale `e^{πλ}·tol·(1 + |f(λ)|)`
/// of the operator `JΔ^{1/2}` at λ.
pub fn standard_subspace_test<T: Real>(m: &DiscreteSpectralModel<T>, f: &SpectralVector<T>, tol: T) -> Result<bool> {
    m.check(f)?;
    let pi = T::PI();
    Ok((0..m.len()).all(|i| {
        let l = m.points[i];
        let e = f.values[i];
        let tf = f.values[m.mirror(i)].conj() * (pi * l).exp();
        (tf - e).norm() <= tol * (T::one() + e.norm()) * (pi * l).exp()
    }))
}
