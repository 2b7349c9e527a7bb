//! Matrix models of `sl₂(ℝ)` and `so(1,n)`: Euler elements, 3-gradings,
//! the involutions `θ`, `τ_h`, `τ = θτ_h`, the set `Ω_p` and the rotation
//! `ζ = e^{−(πi/2) ad h}`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for membership and structural identities.
pub const LIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    Sl2,
    So1n(usize),
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Sl2 => write!(f, "sl(2)"),
            Algebra::So1n(n) => write!(f, "so(1,{n})"),
        }
    }
}

impl Algebra {
    pub fn matrix_size(self) -> usize {
        match self {
            Algebra::Sl2 => 2,
            Algebra::So1n(n) => n + 1,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Algebra::Sl2 => 3,
            Algebra::So1n(n) => n * (n + 1) / 2,
        }
    }

    /// Frobenius-orthogonal basis: `e, f, H = diag(1, −1)` for `sl₂`;
    /// boosts `B_k` then rotations `R_ij` for `so(1,n)`.
    pub fn basis(self) -> Vec<DMatrix<f64>> {
        match self {
            Algebra::Sl2 => vec![
                DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]),
                DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]),
                DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            ],
            Algebra::So1n(n) => {
                let m = n + 1;
                let mut out = Vec::with_capacity(self.dim());
                for k in 1..=n {
                    out.push(boost_matrix(n, k));
                }
                for i in 1..=n {
                    for j in i + 1..=n {
                        let mut r = DMatrix::zeros(m, m);
                        r[(i, j)] = -1.0;
                        r[(j, i)] = 1.0;
                        out.push(r);
                    }
                }
                out
            }
        }
    }

    pub fn contains(self, x: &DMatrix<f64>) -> bool {
        let m = self.matrix_size();
        if x.shape() != (m, m) {
            return false;
        }
        let scale = 1.0 + x.norm();
        match self {
            Algebra::Sl2 => x.trace().abs() <= 1e-12 * scale,
            Algebra::So1n(_) => {
                let eta = minkowski_metric(m);
                (x.transpose() * &eta + &eta * x).norm() <= 1e-12 * scale
            }
        }
    }

    /// Coordinates in [`Algebra::basis`].
    pub fn coordinates(self, x: &DMatrix<f64>) -> DVector<f64> {
        let basis = self.basis();
        DVector::from_iterator(basis.len(), basis.iter().map(|b| b.dot(x) / b.norm_squared()))
    }

    pub fn from_coordinates(self, c: &DVector<f64>) -> DMatrix<f64> {
        let m = self.matrix_size();
        self.basis().iter().zip(c.iter()).fold(DMatrix::zeros(m, m), |acc, (b, &ci)| acc + b * ci)
    }

    /// Matrix of `ad x` in [`Algebra::basis`].
    pub fn ad(self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let basis = self.basis();
        let d = basis.len();
        let mut out = DMatrix::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            out.set_column(j, &self.coordinates(&bracket(x, b)));
        }
        out
    }
}

/// `diag(1, −1, …, −1)`.
pub fn minkowski_metric(m: usize) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_iterator(m, (0..m).map(|i| if i == 0 { 1.0 } else { -1.0 })))
}

/// Boost generator in the plane `(0, k)` of `so(1,n)`.
pub fn boost_matrix(n: usize, k: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(n + 1, n + 1);
    b[(0, k)] = 1.0;
    b[(k, 0)] = 1.0;
    b
}

/// `h = ½ diag(1, −1)`.
pub fn sl2_euler() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5])
}

pub fn bracket(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

/// An element of one of the matrix algebras.
#[derive(Debug, Clone, PartialEq)]
pub struct MatElem {
    entries: DMatrix<f64>,
    algebra: Algebra,
}

impl MatElem {
    pub fn new(algebra: Algebra, entries: DMatrix<f64>) -> Result<Self> {
        if !algebra.contains(&entries) {
            return Err(Error::Invalid(format!("matrix is not in {algebra}")));
        }
        Ok(Self { entries, algebra })
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn ad(&self) -> DMatrix<f64> {
        self.algebra.ad(&self.entries)
    }

    pub fn scale(&self, t: f64) -> Self {
        Self { entries: &self.entries * t, algebra: self.algebra }
    }
}

/// `(ad h)³ = ad h` with `ad h ≠ 0`.
pub fn is_euler(h: &MatElem) -> bool {
    let a = h.ad();
    let norm = a.norm();
    norm > LIE_TOL && (&a * &a * &a - &a).norm() <= LIE_TOL * norm.max(1.0).powi(3)
}

/// Bases of `g₁`, `g₀`, `g₋₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grading {
    pub plus: Vec<DMatrix<f64>>,
    pub zero: Vec<DMatrix<f64>>,
    pub minus: Vec<DMatrix<f64>>,
}

impl Grading {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.plus.len(), self.zero.len(), self.minus.len())
    }

    pub fn part(&self, degree: i32) -> &[DMatrix<f64>] {
        match degree {
            1 => &self.plus,
            0 => &self.zero,
            -1 => &self.minus,
            _ => &[],
        }
    }
}

// orthonormal basis of ker m
fn null_space(m: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    // the thin SVD of a wide matrix drops part of the kernel; pad to square
    let (r, c) = m.shape();
    let square = if r < c { m.clone().resize_vertically(c, 0.0) } else { m.clone() };
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    svd.singular_values.iter().enumerate().filter(|(_, &s)| s <= tol).map(|(i, _)| v_t.row(i).transpose()).collect()
}

fn rank(vectors: &[DVector<f64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = DMatrix::from_columns(vectors);
    m.svd(false, false).singular_values.iter().filter(|&&s| s > tol).count()
}

/// Eigenspaces of `ad h` for the eigenvalues `1, 0, −1`.
pub fn grading(h: &MatElem) -> Result<Grading> {
    if !is_euler(h) {
        return Err(Error::NotEuler);
    }
    let a = h.ad();
    let d = a.nrows();
    let alg = h.algebra;
    let space = |lambda: f64| {
        let shifted = &a - DMatrix::identity(d, d) * lambda;
        null_space(&shifted, 1e-9).iter().map(|v| alg.from_coordinates(v)).collect::<Vec<_>>()
    };
    let g = Grading { plus: space(1.0), zero: space(0.0), minus: space(-1.0) };
    let (p, z, m) = g.dims();
    if p + z + m != alg.dim() {
        return Err(Error::NotEuler);
    }
    Ok(g)
}

/// Cartan involution `θ(x) = −xᵀ`; on `so(1,n)` this is `ηxη`.
pub fn theta(x: &DMatrix<f64>) -> DMatrix<f64> {
    -x.transpose()
}

/// The involutions attached to an Euler element `h` with `θ(h) = −h`.
#[derive(Debug, Clone)]
pub struct Involutions {
    algebra: Algebra,
    // τ_h = 1 − 2(ad h)² in coordinates
    tau_h: DMatrix<f64>,
}

impl Involutions {
    pub fn theta(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        theta(x)
    }

    /// `+1` on `g₀`, `−1` on `g_{±1}`.
    pub fn tau_h(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        self.algebra.from_coordinates(&(&self.tau_h * self.algebra.coordinates(x)))
    }

    /// `τ = θ ∘ τ_h`.
    pub fn tau(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        theta(&self.tau_h(x))
    }

    pub fn tau_h_matrix(&self) -> &DMatrix<f64> {
        &self.tau_h
    }
}

pub fn involutions(h: &MatElem) -> Result<Involutions> {
    if !is_euler(h) {
        return Err(Error::NotEuler);
    }
    let a = h.ad();
    let d = a.nrows();
    Ok(Involutions { algebra: h.algebra, tau_h: DMatrix::identity(d, d) - &a * &a * 2.0 })
}

/// `e^{z ad x}` in coordinates, for complex `z`.
pub fn exp_ad(x: &MatElem, z: Complex64) -> DMatrix<Complex64> {
    x.ad().map(|v| Complex64::new(v, 0.0) * z).exp()
}

/// Largest modulus of an eigenvalue of `ad x`.
pub fn ad_spectral_radius(x: &MatElem) -> f64 {
    x.ad().complex_eigenvalues().iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `x ∈ Ω_p`: `x ∈ p` and `Spec(ad x) ⊆ (−π/2, π/2)`.
pub fn omega_p_member(x: &MatElem) -> Result<bool> {
    let e = x.entries();
    if (theta(e) + e).norm() > 1e-12 * (1.0 + e.norm()) {
        return Err(Error::NotInP(format!("|theta(x) + x| = {}", (theta(e) + e).norm())));
    }
    Ok(ad_spectral_radius(x) < FRAC_PI_2)
}

/// Real bases of the fixed-point spaces `h = g^τ`, `q = g^{−τ}`, `k = g^θ`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub h: Vec<DVector<f64>>,
    pub q: Vec<DVector<f64>>,
    pub k: Vec<DVector<f64>>,
    pub p: Vec<DVector<f64>>,
}

fn eigenspace(m: &DMatrix<f64>, lambda: f64) -> Vec<DVector<f64>> {
    let d = m.nrows();
    null_space(&(m - DMatrix::identity(d, d) * lambda), 1e-9)
}

fn theta_matrix(alg: Algebra) -> DMatrix<f64> {
    let basis = alg.basis();
    let d = basis.len();
    let mut out = DMatrix::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        out.set_column(j, &alg.coordinates(&theta(b)));
    }
    out
}

/// Coordinate bases of `h`, `q`, `k`, `p` for the involutions of `h`.
pub fn decomposition(h: &MatElem) -> Result<Decomposition> {
    let inv = involutions(h)?;
    let th = theta_matrix(h.algebra);
    let tau = &th * inv.tau_h_matrix();
    Ok(Decomposition {
        h: eigenspace(&tau, 1.0),
        q: eigenspace(&tau, -1.0),
        k: eigenspace(&th, 1.0),
        p: eigenspace(&th, -1.0),
    })
}

// basis of span(a) ∩ span(b)
fn intersection(a: &[DVector<f64>], b: &[DVector<f64>]) -> Vec<DVector<f64>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve Σ αᵢ aᵢ − Σ βⱼ bⱼ = 0
    let mut cols: Vec<DVector<f64>> = a.to_vec();
    cols.extend(b.iter().map(|v| -v));
    let m = DMatrix::from_columns(&cols);
    null_space(&m, 1e-9)
        .into_iter()
        .map(|c| a.iter().enumerate().fold(DVector::zeros(a[0].len()), |acc, (i, v)| acc + v * c[i]))
        .collect()
}

/// Outcome of applying `ζ = e^{−(πi/2) ad h}` to `h_k + i q_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaReport {
    pub dim_h: usize,
    pub image_rank: usize,
    /// Largest imaginary part of an image vector.
    pub max_imaginary: f64,
    /// Largest distance of an image vector from `h`.
    pub max_outside_h: f64,
}

impl ZetaReport {
    pub fn holds(&self) -> bool {
        self.image_rank == self.dim_h && self.max_imaginary <= 1e-9 && self.max_outside_h <= 1e-9
    }
}

pub fn zeta_map(h: &MatElem) -> Result<ZetaReport> {
    let dec = decomposition(h)?;
    let zeta = exp_ad(h, Complex64::new(0.0, -FRAC_PI_2));
    let h_k = intersection(&dec.h, &dec.k);
    let q_k = intersection(&dec.q, &dec.k);
    let inputs = h_k
        .iter()
        .map(|v| v.map(|x| Complex64::new(x, 0.0)))
        .chain(q_k.iter().map(|v| v.map(|x| Complex64::new(0.0, x))));
    let inv = involutions(h)?;
    let th = theta_matrix(h.algebra);
    let tau = &th * inv.tau_h_matrix();
    let mut images = Vec::new();
    let mut max_imaginary: f64 = 0.0;
    let mut max_outside_h: f64 = 0.0;
    for v in inputs {
        let w = &zeta * v;
        let scale = w.norm().max(1e-300);
        max_imaginary = max_imaginary.max(w.map(|c| c.im).norm() / scale);
        let re = w.map(|c| c.re);
        max_outside_h = max_outside_h.max((&tau * &re - &re).norm() / scale);
        images.push(re);
    }
    Ok(ZetaReport { dim_h: dec.h.len(), image_rank: rank(&images, 1e-9), max_imaginary, max_outside_h })
}

/// `ζ(h_k + i q_k) = h`.
pub fn zeta_map_check(h: &MatElem) -> Result<bool> {
    Ok(zeta_map(h)?.holds())
}

/// `e^{πi ad h}` compared with the grading form of `τ_h`.
pub fn tau_h_exponential_error(h: &MatElem) -> Result<f64> {
    let inv = involutions(h)?;
    let e = exp_ad(h, Complex64::new(0.0, PI));
    let diff = e - inv.tau_h_matrix().map(|v| Complex64::new(v, 0.0));
    Ok(diff.norm())
}

pub fn subspace_rank(vectors: &[DVector<f64>]) -> usize {
    rank(vectors, 1e-9)
}
