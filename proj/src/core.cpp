#include "ewt/core.hpp"

#include <algorithm>
#include <cmath>

namespace ewt {

FormatError::FormatError(const std::string& what, std::uint64_t offset)
    : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset)
{
}

Signal1D::Signal1D(std::vector<double> samples) : samples_(std::move(samples))
{
    if (samples_.size() < 2) {
        throw InvalidArgument("signal needs at least 2 samples");
    }
    if (!all_finite(samples_)) {
        throw InvalidArgument("signal contains non-finite samples");
    }
}

Image::Image(RealMatrix pixels) : pixels_(std::move(pixels))
{
    if (pixels_.rows() == 0 || pixels_.cols() == 0 || pixels_.size() < 4) {
        throw InvalidArgument("image needs at least 4 pixels");
    }
    if (!all_finite(pixels_.values())) {
        throw InvalidArgument("image contains non-finite pixels");
    }
}

Image::Image(std::size_t rows, std::size_t cols, std::vector<double> pixels)
    : Image(RealMatrix(rows, cols, std::move(pixels)))
{
}

double bin_frequency(std::size_t k, std::size_t n)
{
    // 2k <= n keeps the Nyquist bin of even lengths at +pi.
    if (2 * k <= n) {
        return 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    }
    return -2.0 * kPi * static_cast<double>(n - k) / static_cast<double>(n);
}

bool all_finite(std::span<const double> values)
{
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double sum_of_squares(std::span<const double> values)
{
    double acc = 0.0;
    for (double v : values) {
        acc += v * v;
    }
    return acc;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw InvalidArgument("size mismatch in max_abs_difference");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace ewt
