#include "ewt/littlewood_paley.hpp"

#include "ewt/ewt1d.hpp"
#include "ewt/pseudopolar.hpp"

#include <algorithm>
#include <cmath>

namespace ewt {

FilterBank2D lp_bank(const BoundarySet& boundaries, double gamma, std::size_t rows, std::size_t cols)
{
    if (rows < 4 || cols < 4) {
        throw InvalidArgument("Littlewood-Paley bank needs at least 4x4 bins");
    }
    check_transitions(boundaries, gamma);
    FilterBank2D bank;
    bank.kind = BankKind::littlewood_paley;
    bank.rows = rows;
    bank.cols = cols;
    for (std::size_t n = 0; n < boundaries.bands(); ++n) {
        bank.masks.push_back(symmetric_mask(rows, cols, [&](double w1, double w2) {
            return band_window(boundaries, gamma, n, std::hypot(w1, w2));
        }));
        bank.labels.push_back({n, 0});
    }
    return bank;
}

SubbandSet lp_forward(const RealMatrix& image, const FilterBank2D& bank) { return analyze(image, bank); }

RealMatrix lp_inverse(const SubbandSet& subbands, const FilterBank2D& bank) { return synthesize(subbands, bank); }

Spectrum1D radial_profile(const RealMatrix& image)
{
    const RealMatrix square = centered_square_crop(image);
    const PPGrid grid(square.rows());
    return Spectrum1D(radial_mean_spectrum(ppfft(square, grid)));
}

Detection lp_detect(const RealMatrix& image, std::size_t bands, const DetectConfig& cfg)
{
    DetectConfig c = cfg;
    c.bands = bands;
    Detection d = [&] {
        try {
            return detect_boundaries(radial_profile(image), c);
        } catch (const DetectionError& e) {
            throw DetectionError(std::string("radial: ") + e.what());
        }
    }();
    // A flat image still shows sidelobe peaks on the pseudo-polar lines; those are not modes.
    if (!image.empty()) {
        const auto [lo, hi] = std::minmax_element(image.values().begin(), image.values().end());
        if (*hi - *lo <= 1e-12 * std::max(1.0, std::max(std::abs(*lo), std::abs(*hi)))) {
            d.warnings.push_back("degenerate_constant_image");
        }
    }
    return d;
}

}  // namespace ewt
