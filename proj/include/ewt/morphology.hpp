#pragma once

// Flat grayscale morphology on 1D sequences. The window of half-width h
// covers indices [x-h, x+h] clipped to the valid range; no padding value
// is invented at the edges.

#include <cstddef>
#include <span>
#include <vector>

namespace ewt::morphology {

struct StructuringWindow {
    std::size_t half_width = 0;

    std::size_t width() const noexcept { return 2 * half_width + 1; }
};

std::vector<double> dilate(std::span<const double> f, StructuringWindow w);
std::vector<double> erode(std::span<const double> f, StructuringWindow w);

/// dilate(erode(f)): removes peaks narrower than the window.
std::vector<double> opening(std::span<const double> f, StructuringWindow w);
/// erode(dilate(f)): fills holes narrower than the window.
std::vector<double> closing(std::span<const double> f, StructuringWindow w);

}  // namespace ewt::morphology
