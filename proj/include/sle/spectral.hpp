#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sle/grids.hpp"

namespace sle {

// Forward transform, FFT bin order: out_k = sum_j in_j exp(-2 pi i j k / n).
// With x_j = a + j dx this equals sum_j psi_j exp(-i omega_l (x_j - a)) for
// the mode l carried by bin k.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in);

// Inverse of dft (includes the 1/n factor).
std::vector<std::complex<double>> idft(std::span<const std::complex<double>> in);

// d/dx of the trigonometric interpolant, sampled on the grid.
std::vector<std::complex<double>> spectral_derivative(
    const XGrid& grid, std::span<const std::complex<double>> values);

// Trigonometric interpolant evaluated at x_j + delta for all j, given the
// dft spectrum. Used for the half-cell shifts of the Wigner transform.
std::vector<std::complex<double>> shifted_samples(
    const XGrid& grid, std::span<const std::complex<double>> spectrum,
    double delta);

}  // namespace sle
