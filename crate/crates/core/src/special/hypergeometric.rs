use num_complex::Complex;
use num_traits::{One, Zero};

use super::gamma::{digamma, gamma, gamma_real, rgamma};
use crate::error::{Error, Result};
use crate::scalar::{integer_distance, is_finite_c, is_nonpositive_integer, lit, real, Real};

const SWITCH_RADIUS: f64 = 0.75;
const MAX_TERMS: usize = 100_000;

/// Parameters (α, β; γ) of ₂F₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
}

impl<T: Real> HypParams<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>, gamma: Complex<T>) -> Result<Self> {
        if is_nonpositive_integer(gamma) {
            return Err(Error::Pole(format!("gamma = {} is a non-positive integer", gamma.re)));
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn real(alpha: T, beta: T, gamma: T) -> Result<Self> {
        Self::new(real(alpha), real(beta), real(gamma))
    }

    /// γ − α − β.
    pub fn excess(&self) -> Complex<T> {
        self.gamma - self.alpha - self.beta
    }

    /// Parameters (γ−α, γ−β; γ) of the Euler transform.
    pub fn euler(&self) -> Self {
        Self { alpha: self.gamma - self.alpha, beta: self.gamma - self.beta, gamma: self.gamma }
    }
}

/// Behaviour of ₂F₁(α, β; γ; t) as t → 1⁻.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitClass<T> {
    /// Converges to the value.
    Finite(Complex<T>),
    /// Behaves like `coefficient · (−log(1−t))`.
    LogDivergent(Complex<T>),
    /// Behaves like `coefficient · (1−t)^exponent`, `Re exponent < 0`.
    PowerDivergent { exponent: Complex<T>, coefficient: Complex<T> },
}

impl<T: Real> LimitClass<T> {
    /// Leading term evaluated at `1 − t = one_minus_t`.
    pub fn leading(&self, one_minus_t: T) -> Complex<T> {
        match *self {
            LimitClass::Finite(v) => v,
            LimitClass::LogDivergent(c) => c * (-one_minus_t.ln()),
            LimitClass::PowerDivergent { exponent, coefficient } => coefficient * real(one_minus_t).powc(exponent),
        }
    }
}

/// ₂F₁(α, β; γ; z) on the plane slit along [1, ∞).
pub fn f21<T: Real>(p: &HypParams<T>, z: Complex<T>) -> Result<Complex<T>> {
    f21_with_complement(p, z, Complex::<T>::one() - z)
}

/// Same as [`f21`], with `1 − z` supplied by the caller.
///
/// Near z = 1 the value depends on `1 − z` to full relative precision; pass it
/// directly when it is available in closed form (e.g. `cos²(t/2)`).
pub fn f21_with_complement<T: Real>(p: &HypParams<T>, z: Complex<T>, one_minus_z: Complex<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(p.gamma) {
        return Err(Error::Pole(format!("gamma = {}", p.gamma.re)));
    }
    if !is_finite_c(z) || !is_finite_c(one_minus_z) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == T::zero() && z.re >= T::one() {
        return Err(Error::Domain(format!("z = {} lies on the cut [1, inf)", z.re)));
    }
    // canonical order makes the result exactly symmetric in (alpha, beta)
    let (a, b) = if (p.beta.re, p.beta.im) < (p.alpha.re, p.alpha.im) { (p.beta, p.alpha) } else { (p.alpha, p.beta) };
    evaluate(a, b, p.gamma, z, one_minus_z, true)
}

fn evaluate<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    z: Complex<T>,
    w: Complex<T>,
    allow_pfaff: bool,
) -> Result<Complex<T>> {
    if z.is_zero() {
        return Ok(Complex::one());
    }
    if let Some(n) = degree(a, b) {
        return Ok(terminating(a, b, c, z, n));
    }
    let r0: T = lit(SWITCH_RADIUS);
    if z.norm() <= r0 {
        return series(a, b, c, z);
    }
    if w.norm() <= r0 {
        return near_one(a, b, c, z, w);
    }
    if allow_pfaff && z.re < lit(0.5) {
        // F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)), with 1 - z/(z-1) = 1/(1-z)
        let inner = evaluate(a, c - b, c, -z / w, w.inv(), false)?;
        return Ok(w.powc(-a) * inner);
    }
    if z.norm() < T::one() {
        return series(a, b, c, z);
    }
    Err(Error::Convergence(format!("no expansion covers z = {z}")))
}

fn degree<T: Real>(a: Complex<T>, b: Complex<T>) -> Option<usize> {
    let deg = |x: Complex<T>| is_nonpositive_integer(x).then(|| (-x.re).to_usize().unwrap_or(usize::MAX));
    match (deg(a), deg(b)) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (m, n) => m.or(n),
    }
}

fn terminating<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, z: Complex<T>, n: usize) -> Complex<T> {
    let mut term = Complex::<T>::one();
    let mut sum = term;
    for k in 0..n {
        let k = lit::<T>(k as f64);
        term = term * (a + k) * (b + k) / ((c + k) * (k + T::one())) * z;
        sum = sum + term;
    }
    sum
}

// Accumulates terms until three in a row fall below half an ulp of the sum.
struct Accumulator<T> {
    sum: Complex<T>,
    small: u32,
}

impl<T: Real> Accumulator<T> {
    fn new(first: Complex<T>) -> Self {
        Self { sum: first, small: 0 }
    }

    fn push(&mut self, term: Complex<T>) -> bool {
        self.sum = self.sum + term;
        if term.norm() <= T::epsilon() * lit(0.5) * self.sum.norm() {
            self.small += 1;
        } else {
            self.small = 0;
        }
        self.small >= 3 || term.is_zero()
    }

    fn finish(self, what: &str) -> Result<Complex<T>> {
        if is_finite_c(self.sum) {
            Ok(self.sum)
        } else {
            Err(Error::Convergence(format!("{what}: non-finite partial sum")))
        }
    }
}

fn series<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let mut term = Complex::<T>::one();
    let mut acc = Accumulator::new(term);
    for k in 0..MAX_TERMS {
        let k = lit::<T>(k as f64);
        term = term * (a + k) * (b + k) / ((c + k) * (k + T::one())) * z;
        if acc.push(term) {
            return acc.finish("hypergeometric series");
        }
    }
    Err(Error::Convergence(format!("series at z = {z} exceeded {MAX_TERMS} terms")))
}

// Expansion in w = 1 - z, |w| <= r0.
fn near_one<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, z: Complex<T>, w: Complex<T>) -> Result<Complex<T>> {
    if let Some(n) = degree(a, b) {
        return Ok(terminating(a, b, c, z, n));
    }
    let s = c - a - b;
    if s.re < T::zero() {
        let inner = near_one(c - a, c - b, c, z, w)?;
        return Ok(w.powc(s) * inner);
    }
    let (m, dist) = integer_distance(s);
    if dist <= T::epsilon().sqrt() {
        return if m == 0 { near_one_log(a, b, c, w) } else { near_one_integer(a, b, c, w, m as usize) };
    }
    let gc = gamma(c)?;
    let first = gc * gamma(s)? * rgamma(c - a) * rgamma(c - b);
    let second = gc * gamma(-s)? * rgamma(a) * rgamma(b);
    let f1 = series(a, b, Complex::<T>::one() - s, w)?;
    let f2 = series(c - a, c - b, Complex::<T>::one() + s, w)?;
    Ok(first * f1 + w.powc(s) * second * f2)
}

// c = a + b
fn near_one_log<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, w: Complex<T>) -> Result<Complex<T>> {
    let pref = gamma(c)? * rgamma(a) * rgamma(b);
    let ln_w = w.ln();
    let mut psi_n1 = real::<T>(-lit::<T>(0.577_215_664_901_532_9));
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut t = Complex::<T>::one();
    let mut acc = Accumulator::new(t * (psi_n1 * lit::<T>(2.0) - psi_a - psi_b - ln_w));
    for n in 0..MAX_TERMS {
        let nf = lit::<T>(n as f64);
        let n1 = nf + T::one();
        t = t * (a + nf) * (b + nf) / (n1 * n1) * w;
        psi_n1 = psi_n1 + n1.recip();
        psi_a = psi_a + (a + nf).inv();
        psi_b = psi_b + (b + nf).inv();
        if acc.push(t * (psi_n1 * lit::<T>(2.0) - psi_a - psi_b - ln_w)) {
            return Ok(pref * acc.finish("logarithmic expansion")?);
        }
    }
    Err(Error::Convergence("logarithmic expansion exceeded term budget".into()))
}

// c = a + b + m, m >= 1
fn near_one_integer<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    w: Complex<T>,
    m: usize,
) -> Result<Complex<T>> {
    let one = Complex::<T>::one();
    let mf = lit::<T>(m as f64);
    let gc = gamma(c)?;

    let mut finite = Complex::<T>::zero();
    let mut t = one;
    for n in 0..m {
        finite = finite + t;
        let nf = lit::<T>(n as f64);
        t = t * (a + nf) * (b + nf) / ((nf + T::one()) * (nf + T::one() - mf)) * w;
    }
    let finite = finite * gc * gamma_real(mf)? * rgamma(a + mf) * rgamma(b + mf);

    let ln_w = w.ln();
    let euler = lit::<T>(0.577_215_664_901_532_9);
    let mut psi_n1 = real::<T>(-euler);
    let mut psi_nm1 = real::<T>(digamma(real(mf + T::one()))?.re);
    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    let mut t = real::<T>(gamma_real(mf + T::one())?.recip());
    let bracket = |p1: Complex<T>, pm: Complex<T>, pa: Complex<T>, pb: Complex<T>| ln_w - p1 - pm + pa + pb;
    let mut acc = Accumulator::new(t * bracket(psi_n1, psi_nm1, psi_a, psi_b));
    let mut done = false;
    for n in 0..MAX_TERMS {
        let nf = lit::<T>(n as f64);
        t = t * (a + mf + nf) * (b + mf + nf) / ((nf + T::one()) * (nf + mf + T::one())) * w;
        psi_n1 = psi_n1 + (nf + T::one()).recip();
        psi_nm1 = psi_nm1 + (nf + mf + T::one()).recip();
        psi_a = psi_a + (a + mf + nf).inv();
        psi_b = psi_b + (b + mf + nf).inv();
        if acc.push(t * bracket(psi_n1, psi_nm1, psi_a, psi_b)) {
            done = true;
            break;
        }
    }
    if !done {
        return Err(Error::Convergence("integer-excess expansion exceeded term budget".into()));
    }
    let tail = acc.finish("integer-excess expansion")?;
    let sign = (-w).powi(m as i32);
    Ok(finite - sign * gc * rgamma(a) * rgamma(b) * tail)
}

/// Classifies the limit of ₂F₁(α, β; γ; t) as t → 1⁻.
pub fn f21_limit_z1<T: Real>(p: &HypParams<T>) -> Result<LimitClass<T>> {
    if is_nonpositive_integer(p.gamma) {
        return Err(Error::Pole(format!("gamma = {}", p.gamma.re)));
    }
    let (a, b, c) = (p.alpha, p.beta, p.gamma);
    if let Some(n) = degree(a, b) {
        return Ok(LimitClass::Finite(terminating(a, b, c, Complex::one(), n)));
    }
    let s = p.excess();
    let tol = T::epsilon() * lit(64.0) * (T::one() + a.norm() + b.norm() + c.norm());
    if s.norm() <= tol {
        Ok(LimitClass::LogDivergent(gamma(c)? * rgamma(a) * rgamma(b)))
    } else if s.re > tol {
        Ok(LimitClass::Finite(gamma(c)? * gamma(s)? * rgamma(c - a) * rgamma(c - b)))
    } else if s.re < -tol {
        Ok(LimitClass::PowerDivergent { exponent: s, coefficient: gamma(c)? * gamma(-s)? * rgamma(a) * rgamma(b) })
    } else {
        Err(Error::Unclassified(format!("Re(gamma - alpha - beta) = 0 with gamma - alpha - beta = {s}")))
    }
}
