//! Discrete Fourier transform: a direct O(N^2) evaluation and the recursive
//! radix-2 FFT.
//!
//! Convention: the forward transform is unnormalized,
//! `X[k] = sum_j x[j] * exp(-2 pi i k j / N)`, and the inverse carries the
//! `1/N` factor. Parseval therefore reads `sum |X|^2 = N * sum |x|^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, domain};
use crate::rng::Rng;

pub type ComplexVector = Vec<Complex64>;

/// Direct evaluation of the forward transform.
pub fn dft_naive(x: &[Complex64]) -> Result<ComplexVector> {
    let n = x.len();
    if n == 0 {
        return Err(domain("DFT of an empty vector"));
    }
    Ok((0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| {
                    // Reduce k*j mod n before scaling to keep the angle exact.
                    let angle = -2.0 * PI * ((k * j) % n) as f64 / n as f64;
                    v * Complex64::from_polar(1.0, angle)
                })
                .sum()
        })
        .collect())
}

/// Recursive even/odd split. `x.len()` must be a power of two.
pub fn fft_recursive(x: &[Complex64]) -> Result<ComplexVector> {
    if !x.len().is_power_of_two() {
        return Err(domain(format!(
            "FFT length {} is not a power of two",
            x.len()
        )));
    }
    Ok(fft_rec(x))
}

fn fft_rec(x: &[Complex64]) -> ComplexVector {
    let n = x.len();
    if n == 1 {
        return x.to_vec();
    }
    let m = n / 2;
    let even: ComplexVector = x.iter().step_by(2).copied().collect();
    let odd: ComplexVector = x.iter().skip(1).step_by(2).copied().collect();
    let top = fft_rec(&even);
    let bottom = fft_rec(&odd);

    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..m {
        let twiddle = Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64);
        let z = twiddle * bottom[k];
        y[k] = top[k] + z;
        y[k + m] = top[k] - z;
    }
    y
}

/// Inverse of [`fft_recursive`], including the `1/N` factor.
pub fn ifft_recursive(spectrum: &[Complex64]) -> Result<ComplexVector> {
    let conj: ComplexVector = spectrum.iter().map(Complex64::conj).collect();
    let n = spectrum.len() as f64;
    Ok(fft_recursive(&conj)?
        .into_iter()
        .map(|v| v.conj() / n)
        .collect())
}

/// Samples with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_signal(n: usize, rng: &mut Rng) -> ComplexVector {
    (0..n)
        .map(|_| Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0))
        .collect()
}

pub fn energy(x: &[Complex64]) -> f64 {
    x.iter().map(Complex64::norm_sqr).sum()
}
