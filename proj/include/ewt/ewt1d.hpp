#pragma once

// Adaptive 1D filter bank on a boundary set and the 1D empirical wavelet
// transform built from it.
//
// Band 0 is the scaling (lowpass) window, bands 1..N-1 are the detail
// windows. The last band has no upper transition: it stays at 1 up to pi
// and beyond, which is what the 2D radial banks need for the corners of
// the Fourier plane.

#include "ewt/boundaries.hpp"
#include "ewt/core.hpp"

#include <span>
#include <vector>

namespace ewt {

/// Meyer transition polynomial x^4 (35 - 84x + 70x^2 - 20x^3), clamped to [0, 1].
double beta(double x);

/// 0.99 * min_n (w^{n+1} - w^n) / (w^{n+1} + w^n), n = 1..N-1.
double choose_gamma(const BoundarySet& boundaries);

/// Throws InvalidArgument when gamma is outside (0, 1) or two consecutive
/// transition intervals [(1 - gamma) w^n, (1 + gamma) w^n] overlap.
void check_transitions(const BoundarySet& boundaries, double gamma);

/// Value of window `band` at radial frequency `abs_omega` >= 0.
double band_window(const BoundarySet& boundaries, double gamma, std::size_t band, double abs_omega);

struct FilterBank1D {
    std::size_t length = 0;
    double gamma = 0.0;
    BoundarySet boundaries = BoundarySet::uniform(1);
    std::vector<std::vector<double>> masks;  // one per band, DFT bin order

    std::size_t bands() const noexcept { return masks.size(); }
};

/// Masks sampled on the DFT bins of a length-K transform.
FilterBank1D build_bank_1d(const BoundarySet& boundaries, double gamma, std::size_t length);

/// Masks sampled on an arbitrary list of |omega| values.
FilterBank1D build_bank_on_axis(const BoundarySet& boundaries, double gamma, std::span<const double> abs_omega);

/// Max over bins of |sum_n mask_n^2 - 1|.
double frame_deviation(const FilterBank1D& bank);

struct EwtCoeffs1D {
    std::vector<std::vector<double>> bands;  // band 0 = approximation
};

EwtCoeffs1D ewt1d_forward(const Signal1D& signal, const FilterBank1D& bank);
Signal1D ewt1d_inverse(const EwtCoeffs1D& coeffs, const FilterBank1D& bank);

/// Filters one real sequence by one mask: Re idft(dft(x) * mask).
std::vector<double> filter_real(std::span<const double> x, std::span<const double> mask);

}  // namespace ewt
