use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_nonpositive_integer, lit, real, Real};

const LANCZOS_G: f64 = 7.0;

const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Γ(z). Lanczos (g = 7, 9 terms) on `Re z >= 1/2`, reflection below.
pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Gamma at z = {}", z.re)));
    }
    Ok(gamma_unchecked(z))
}

/// Γ on the real line.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    gamma(real(x)).map(|g| g.re)
}

/// 1/Γ(z), entire; exactly zero at the poles of Γ.
pub fn rgamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if is_nonpositive_integer(z) {
        Complex::zero()
    } else {
        gamma_unchecked(z).inv()
    }
}

fn gamma_unchecked<T: Real>(z: Complex<T>) -> Complex<T> {
    let pi = T::PI();
    if z.re < lit(0.5) {
        let s = (z * pi).sin();
        return real::<T>(pi) / (s * gamma_unchecked(Complex::<T>::one() - z));
    }
    let z = z - T::one();
    let mut acc = real::<T>(lit(LANCZOS_COEF[0]));
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + real::<T>(lit(c)) / (z + lit::<T>(i as f64));
    }
    let t = z + lit::<T>(LANCZOS_G + 0.5);
    let sqrt_two_pi = (pi + pi).sqrt();
    (t.ln() * (z + lit::<T>(0.5)) - t).exp() * acc * sqrt_two_pi
}

// Bernoulli terms B_{2k}/(2k) of the asymptotic digamma series.
const DIGAMMA_ASYMPTOTIC: [f64; 7] =
    [1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0];

/// Complex digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at z = {}", z.re)));
    }
    Ok(digamma_unchecked(z))
}

fn digamma_unchecked<T: Real>(z: Complex<T>) -> Complex<T> {
    let pi = T::PI();
    if z.re < lit(0.5) {
        let pz = z * pi;
        let cot = pz.cos() / pz.sin();
        return digamma_unchecked(Complex::<T>::one() - z) - cot * pi;
    }
    let mut z = z;
    let mut acc = Complex::<T>::zero();
    while z.re < lit(10.0) {
        acc = acc - z.inv();
        z = z + T::one();
    }
    let inv2 = (z * z).inv();
    let mut pow = inv2;
    let mut series = Complex::<T>::zero();
    for &c in DIGAMMA_ASYMPTOTIC.iter() {
        series = series + pow * lit::<T>(c);
        pow = pow * inv2;
    }
    acc + z.ln() - (z * lit::<T>(2.0)).inv() - series
}
