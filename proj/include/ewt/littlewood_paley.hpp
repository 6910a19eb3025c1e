#pragma once

// Isotropic 2D EWT: annular masks in |omega| with radii detected on the
// angle-averaged pseudo-polar spectrum.

#include "ewt/boundaries.hpp"
#include "ewt/filter_bank_2d.hpp"

namespace ewt {

/// Radial masks W_n(sqrt(w1^2 + w2^2)); the last ring keeps the corners
/// where |omega| > pi. Labels are (n, 0).
FilterBank2D lp_bank(const BoundarySet& boundaries, double gamma, std::size_t rows, std::size_t cols);

SubbandSet lp_forward(const RealMatrix& image, const FilterBank2D& bank);
RealMatrix lp_inverse(const SubbandSet& subbands, const FilterBank2D& bank);

/// Angle-averaged pseudo-polar magnitude of the centered even square crop,
/// as a spectrum over omega = pi j / N, j = 0..N.
Spectrum1D radial_profile(const RealMatrix& image);

/// Radial boundary detection on `radial_profile`.
Detection lp_detect(const RealMatrix& image, std::size_t bands, const DetectConfig& cfg);

}  // namespace ewt
