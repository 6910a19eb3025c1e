#pragma once

// Generic 2D Fourier-domain filter banks and the multiplicative
// analysis/synthesis pair shared by every 2D transform.
//
// Masks are real, stored in DFT order (DC at (0, 0)) and exactly even:
// each bin is evaluated at the canonical member of {k, -k}, so the
// Nyquist rows and columns of even-sized grids stay symmetric too.

#include "ewt/core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ewt {

enum class BankKind { tensor, littlewood_paley, curvelet_I, curvelet_II };

std::string to_string(BankKind kind);

/// (n, m): scale and angle (curvelet), row and column band (tensor), or (n, 0).
struct SubbandLabel {
    std::size_t n = 0;
    std::size_t m = 0;

    friend bool operator==(const SubbandLabel&, const SubbandLabel&) = default;
};

struct FilterBank2D {
    BankKind kind = BankKind::littlewood_paley;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<RealMatrix> masks;
    std::vector<SubbandLabel> labels;

    std::size_t size() const noexcept { return masks.size(); }
};

struct SubbandSet {
    std::vector<RealMatrix> planes;
    std::vector<SubbandLabel> labels;
};

/// Fills a rows x cols mask from f(w1, w2), w1 along rows, w2 along columns,
/// both in (-pi, pi].
RealMatrix symmetric_mask(std::size_t rows, std::size_t cols, const std::function<double(double, double)>& f);

/// Pointwise sum of squared masks.
RealMatrix frame_sum(const FilterBank2D& bank);
/// max |frame_sum - 1|.
double frame_deviation(const FilterBank2D& bank);

/// Subband k = Re idft2(dft2(f) * mask_k).
SubbandSet analyze(const RealMatrix& image, const FilterBank2D& bank);
/// Re idft2(sum_k dft2(s_k) * mask_k).
RealMatrix synthesize(const SubbandSet& subbands, const FilterBank2D& bank);

}  // namespace ewt
