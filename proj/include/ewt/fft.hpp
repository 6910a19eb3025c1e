#pragma once

// Discrete Fourier transforms.
//
// Convention: the forward transform is unnormalized,
//   X[k] = sum_t x[t] exp(-2 pi i k t / K),
// and the inverse carries the 1/K factor. Spectra are stored with DC at
// index 0; `fftshift` produces a DC-centered view.

#include "ewt/core.hpp"

#include <span>
#include <vector>

namespace ewt {

std::vector<Complex> dft1(std::span<const double> signal);
std::vector<Complex> dft1(std::span<const Complex> signal);
std::vector<Complex> idft1(std::span<const Complex> spectrum);

/// Real part of idft1; throws NumericalError if the imaginary residue
/// exceeds `tolerance` times the largest output magnitude (floored at 1).
std::vector<double> idft1_real(std::span<const Complex> spectrum, double tolerance = 1e-10);

ComplexPlane dft2(const Image& image);
ComplexPlane dft2(const RealMatrix& values);
ComplexMatrix dft2(const ComplexMatrix& values);
ComplexMatrix idft2(const ComplexPlane& plane);
ComplexMatrix idft2(const ComplexMatrix& values);
RealMatrix idft2_real(const ComplexMatrix& values, double tolerance = 1e-10);

/// Moves DC to (rows/2, cols/2), or back when the plane is already centered.
ComplexPlane fftshift(const ComplexPlane& plane);

}  // namespace ewt
