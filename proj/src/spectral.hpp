#pragma once

#include <complex>
#include <vector>

namespace vp {

using cplx = std::complex<double>;

// forward transform, X_n = sum_j x_j exp(-2 pi i j n / N)
std::vector<cplx> fft(const std::vector<cplx>& x);
// inverse transform including the 1/N factor
std::vector<cplx> ifft(const std::vector<cplx>& X);

// signed frequency of index i on an n-point grid (Nyquist counted positive)
inline int freq_of(int i, int n) { return i <= n / 2 ? i : i - n; }

// derivative of a 2pi-periodic sampled function; Nyquist mode dropped
std::vector<double> spectral_derivative(const std::vector<double>& f);
std::vector<cplx> spectral_derivative(const std::vector<cplx>& f);

// Hilbert transform on the circle, multiplier i*sign(n)
std::vector<double> hilbert(const std::vector<double>& f);

// solves (d/dtheta - H) u = f on modes |n| >= 2; modes 0, +-1 of u are set to zero.
// returns the largest modulus of the dropped modes of f through *dropped when given.
std::vector<double> inverse_dtheta_minus_hilbert(const std::vector<double>& f, double* dropped = nullptr);

// largest |coefficient| of f on modes 0 and +-1 (coefficients normalised by 1/N)
double low_mode_content(const std::vector<double>& f);
double mode_pm1_content(const std::vector<double>& f);

// weights w_k such that sum_j w_{(i-j) mod n} f_j approximates
// (1/2pi) int log|2 sin((t_i - s)/2)| f(s) ds on the uniform grid
std::vector<double> log_sine_weights(int n);

// trigonometric interpolation from len(f) samples to n_out samples
std::vector<cplx> trig_resample(const std::vector<cplx>& f, int n_out);
std::vector<double> trig_resample(const std::vector<double>& f, int n_out);

// product of two real periodic fields, computed on a 3/2 padded grid
std::vector<double> dealiased_product(const std::vector<double>& a, const std::vector<double>& b);

// Fourier coefficients c_n (normalised) on an n-point grid
std::vector<cplx> fourier_coefficients(const std::vector<cplx>& f);

}  // namespace vp
