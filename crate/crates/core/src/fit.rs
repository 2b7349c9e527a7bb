//! Ordinary least-squares line fits.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Fitted line `y = slope·x + intercept` and its RMS residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit<T> {
    pub slope: T,
    pub intercept: T,
    pub rms_residual: T,
}

impl<T: Real> LineFit<T> {
    pub fn eval(&self, x: T) -> T {
        self.slope * x + self.intercept
    }
}

pub fn fit_line<T: Real>(xs: &[T], ys: &[T]) -> Result<LineFit<T>> {
    if xs.len() != ys.len() {
        return Err(Error::Shape(format!("{} abscissae vs {} ordinates", xs.len(), ys.len())));
    }
    if xs.len() < 2 {
        return Err(Error::Fit("need at least two points".into()));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::Fit("non-finite sample".into()));
    }
    let n = T::from_usize(xs.len()).unwrap();
    let mx = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let my = ys.iter().fold(T::zero(), |a, &y| a + y) / n;
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
    }
    if sxx <= T::zero() {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss = xs.iter().zip(ys).fold(T::zero(), |a, (&x, &y)| {
        let r = y - (slope * x + intercept);
        a + r * r
    });
    Ok(LineFit { slope, intercept, rms_residual: (ss / n).sqrt() })
}
