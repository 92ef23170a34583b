//! Thin wrapper around rustfft for forward DFTs.

use crate::Complex64;
use rustfft::FftPlanner;

/// Unnormalized forward DFT: `out[k] = Σ_j data[j] e^{-2πi jk/N}`.
pub(crate) fn dft_forward(mut data: Vec<Complex64>) -> Vec<Complex64> {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(data.len());
    fft.process(&mut data);
    data
}

/// Fourier coefficients `(1/N) Σ_j x_j e^{-ik θ_j}` of samples on the uniform
/// angle grid `θ_j = 2πj/N`, for `k = 0..=kmax`.
pub(crate) fn fourier_coeffs(samples: &[Complex64], kmax: usize) -> Vec<Complex64> {
    let n = samples.len();
    let spec = dft_forward(samples.to_vec());
    let scale = 1.0 / n as f64;
    (0..=kmax.min(n - 1)).map(|k| spec[k] * scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode() {
        let n = 16;
        let samples: Vec<Complex64> = (0..n)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                Complex64::new((3.0 * t).cos(), 0.0)
            })
            .collect();
        let c = fourier_coeffs(&samples, 5);
        assert!((c[3] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!(c[2].norm() < 1e-12);
    }
}
